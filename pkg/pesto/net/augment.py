import numpy as np

from pesto.util import ArgumentError, ShapeError


def gaussian_noise(batch, std, rng):
    """Additive input noise; stands in for image augmentation policies.  """
    if std < 0:
        raise ArgumentError('Noise standard deviation must not be negative.')
    if not std:
        return batch
    return batch + rng.normal(0.0, std, size=batch.shape)


def mixup(batch, targets, alpha, rng, lam=None, partners=None):
    """
    Mixes each sample `i` with a partner `j` drawn by permuting the batch:
    `x̃ = λ xᵢ + (1 - λ) xⱼ` and likewise for the probability rows `targets`,
    with one `λ ~ Beta(alpha, alpha)` per batch.

    `alpha = 0` returns the inputs untouched.  `lam` and `partners` pin the
    mixing coefficient and the partner indices.
    """
    if alpha < 0:
        raise ArgumentError('MixUp alpha must not be negative.')
    if alpha == 0 and lam is None:
        return batch, targets
    if batch.shape[0] != targets.shape[0]:
        raise ShapeError('Batch and targets differ in length.')
    if lam is None:
        lam = rng.beta(alpha, alpha)
    if partners is None:
        partners = rng.permutation(batch.shape[0])
    mixed_batch = lam * batch + (1 - lam) * batch[partners]
    mixed_targets = lam * targets + (1 - lam) * targets[partners]
    return mixed_batch, mixed_targets
