import numpy as np

from pesto.log import log
from pesto.util import ArgumentError, DegenerateInputError, ShapeError
from pesto.assign.hungarian import hungarian
from pesto.cluster.kmeans import kmeans, pairwise_distances


def confidence_scores(distances):
    """
    Confidence of each row's nearest cluster under a Gaussian kernel.

    Each row of `distances` is turned into a softmax over
    `-d ** 2 / (2 * sigma ** 2)`, where `sigma` is the population
    standard deviation of every entry; the confidence is the row maximum.
    Returns `(confidences, sigma)`.
    """
    distances = np.asarray(distances, dtype=np.float64)
    if distances.ndim != 2:
        raise ShapeError('Distance matrix must be 2-dimensional.')
    if distances.shape[1] < 2:
        raise ArgumentError(
            'Confidence needs at least 2 clusters, got {}.'
            .format(distances.shape[1]))
    sigma = float(np.std(distances))
    if sigma == 0:
        raise DegenerateInputError(
            'All distances are equal, confidence is undefined.')
    logits = -distances ** 2 / (2 * sigma ** 2)
    shifted = logits - logits.max(axis=1, keepdims=True)
    # the row maximum has a shifted logit of exactly 0
    confidences = 1.0 / np.exp(shifted).sum(axis=1)
    return confidences, sigma


class PseudoLabelSet(object):
    def __init__(
            self, pseudo_labels, confidences, sigma, alpha, centers=None):
        super().__init__()
        self.pseudo_labels = np.asarray(pseudo_labels, dtype=np.int64)
        self.confidences = np.asarray(confidences, dtype=np.float64)
        self.sigma = sigma
        self.alpha = alpha
        self.centers = centers
        self.selected = self.confidences >= alpha

    def __len__(self):
        return len(self.pseudo_labels)

    @property
    def num_selected(self):
        return int(self.selected.sum())

    @property
    def selected_fraction(self):
        if not len(self):
            return 0.0
        return self.num_selected / len(self)

    def relabel(self, permutation):
        """Renames cluster `j` to `permutation[j]`.  """
        permutation = np.asarray(permutation, dtype=np.int64)
        centers = self.centers
        if centers is not None:
            centers = np.empty_like(self.centers)
            centers[permutation] = self.centers
        return self.__class__(
            permutation[self.pseudo_labels], self.confidences,
            self.sigma, self.alpha, centers)

    def __repr__(self):
        return '<{} n={} selected={:.1%} sigma={:.4g}>'.format(
            self.__class__.__name__, len(self),
            self.selected_fraction, self.sigma)


def generate_pseudo_labels(
        embeddings, k, alpha, rng=None, max_iter=100, n_init=10):
    if not 0 < alpha < 1:
        raise ArgumentError(
            'Confidence threshold must lie in (0, 1), got {}.'.format(alpha))
    result = kmeans(embeddings, k, max_iter, n_init, rng)
    confidences, sigma = confidence_scores(result.distances)
    labels = PseudoLabelSet(
        result.assignments, confidences, sigma, alpha, result.centers)
    log.debug(
        'Pseudo-labels: {} of {} samples above confidence {}.'
        .format(labels.num_selected, len(labels), alpha))
    return labels


def align_clusters(prev_centers, new_centers):
    """
    Permutation `p` such that new cluster `j` is renamed `p[j]`, matching
    each new center to a previous one with minimum total distance.
    """
    prev_centers = np.asarray(prev_centers, dtype=np.float64)
    new_centers = np.asarray(new_centers, dtype=np.float64)
    if prev_centers.shape != new_centers.shape:
        raise ShapeError(
            'Cannot align {} centers with {} centers.'
            .format(prev_centers.shape, new_centers.shape))
    cost = pairwise_distances(new_centers, prev_centers)
    permutation = np.empty(len(new_centers), dtype=np.int64)
    for new, prev in hungarian(cost):
        permutation[new] = prev
    return permutation
