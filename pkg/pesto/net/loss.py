import numpy as np

from pesto.util import ShapeError, ArgumentError


def log_softmax(logits, temperature=1.0):
    z = logits / temperature
    z = z - z.max(axis=1, keepdims=True)
    return z - np.log(np.exp(z).sum(axis=1, keepdims=True))


def softmax(logits, temperature=1.0):
    return np.exp(log_softmax(logits, temperature))


def one_hot(targets, num_classes):
    targets = np.asarray(targets)
    if targets.size and (targets.min() < 0 or targets.max() >= num_classes):
        raise ArgumentError(
            'Targets must be class ids in [0, {}), received range [{}, {}].'
            .format(num_classes, targets.min(), targets.max()))
    encoded = np.zeros((targets.shape[0], num_classes))
    encoded[np.arange(targets.shape[0]), targets] = 1.0
    return encoded


def as_soft_targets(targets, num_classes):
    """Accepts class ids or probability rows; returns probability rows.  """
    targets = np.asarray(targets)
    if targets.ndim == 1:
        return one_hot(targets.astype(np.int64), num_classes)
    if targets.ndim != 2 or targets.shape[1] != num_classes:
        raise ShapeError(
            'Soft targets must have shape (n, {}), received {}.'
            .format(num_classes, targets.shape))
    sums = targets.sum(axis=1)
    if not np.allclose(sums, 1.0, atol=1e-9):
        raise ArgumentError('Soft target rows must sum to 1.')
    return targets.astype(np.float64)


def cross_entropy(logits, targets, class_weights=None):
    """
    Class-weighted cross-entropy averaged over the batch.

    Per sample, `ℓᵢ = -Σ_c w_c tᵢ_c log pᵢ_c` with `t` the (soft) targets and
    `w` the class weights (all ones when omitted).  Returns the loss and its
    gradient with respect to `logits`.
    """
    n, num_classes = logits.shape
    targets = as_soft_targets(targets, num_classes)
    if class_weights is None:
        weighted = targets
    else:
        class_weights = np.asarray(class_weights, dtype=np.float64)
        if class_weights.shape != (num_classes, ):
            raise ShapeError(
                'Expecting {} class weights, received {}.'
                .format(num_classes, class_weights.shape))
        weighted = targets * class_weights
    log_probs = log_softmax(logits)
    loss = -(weighted * log_probs).sum() / n
    mass = weighted.sum(axis=1, keepdims=True)
    gradient = (mass * np.exp(log_probs) - weighted) / n
    return loss, gradient


def distillation(old_logits, new_logits, temperature=2.0):
    """
    KL divergence from the temperature-softened old distribution to the new
    one, averaged over the batch, over the columns of `old_logits` only.

    Returns the loss and its gradient w.r.t. the corresponding columns of
    `new_logits`.
    """
    if temperature <= 0:
        raise ArgumentError('Temperature must be positive.')
    n, old_units = old_logits.shape
    new_logits = new_logits[:, :old_units]
    old_log_probs = log_softmax(old_logits, temperature)
    new_log_probs = log_softmax(new_logits, temperature)
    old_probs = np.exp(old_log_probs)
    loss = (old_probs * (old_log_probs - new_log_probs)).sum() / n
    gradient = (np.exp(new_log_probs) - old_probs) / (temperature * n)
    return loss, gradient


def class_weights(counts):
    """
    Inverse-frequency weights `total / (present · count_c)`, 0 for absent
    classes, so that balanced present classes all weigh 1.
    """
    counts = np.asarray(counts, dtype=np.float64)
    if counts.ndim != 1 or np.any(counts < 0):
        raise ArgumentError('Counts must be a vector of non-negative values.')
    present = counts > 0
    if not present.any():
        raise ArgumentError('At least one class must have samples.')
    weights = np.zeros_like(counts)
    weights[present] = counts.sum() / (present.sum() * counts[present])
    return weights
