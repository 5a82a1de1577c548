import numpy as np

from pesto.log import log
from pesto.util import ArgumentError
from pesto.data.dataset import LabeledDataset


def synth_gaussian(
        num_classes, per_class, dim, center_scale=1.0, noise_std=0.05,
        seed=0, test_fraction=0.2):
    """
    A Gaussian mixture with class centers uniform in
    `[-center_scale, center_scale] ** dim`.  Each class is split into
    train and test samples by `test_fraction`.  Returns `(train, test)`.
    """
    if min(num_classes, per_class, dim) < 1:
        raise ArgumentError('Class count, size and dimension must be >= 1.')
    if center_scale <= 0 or noise_std < 0:
        raise ArgumentError('Invalid center scale or noise level.')
    if not 0 <= test_fraction < 1:
        raise ArgumentError('Test fraction must lie in [0, 1).')
    rng = np.random.default_rng(seed)
    centers = rng.uniform(-center_scale, center_scale, (num_classes, dim))
    noise = rng.normal(0.0, noise_std, (num_classes, per_class, dim))
    samples = centers[:, None, :] + noise
    num_test = int(round(per_class * test_fraction))
    labels = np.repeat(np.arange(num_classes), per_class).reshape(
        num_classes, per_class)
    train = LabeledDataset(
        samples[:, num_test:].reshape(-1, dim),
        labels[:, num_test:].ravel(), split='train')
    test = LabeledDataset(
        samples[:, :num_test].reshape(-1, dim),
        labels[:, :num_test].ravel(), split='test')
    log.debug(
        'Generated {} train and {} test samples of {} classes.'
        .format(len(train), len(test), num_classes))
    return train, test
