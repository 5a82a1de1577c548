"""
Accuracy and clustering-agreement metrics.

`top1_static` scores predictions through the frozen encoding table, while
`cluster_accuracy` re-matches predicted units to classes on the evaluated
data itself; the latter is never lower and tolerates confusion between
tasks that the former penalizes.
"""
import numpy as np
from sklearn.metrics import cluster as cluster_metrics

from pesto.util import ArgumentError, ShapeError
from pesto.assign import hungarian, encode_predictions


def _labelings(u, v, minimum=1):
    u = np.asarray(u, dtype=np.int64).ravel()
    v = np.asarray(v, dtype=np.int64).ravel()
    if u.shape != v.shape:
        raise ShapeError(
            'Labelings differ in length: {} and {}.'.format(len(u), len(v)))
    if len(u) < minimum:
        raise ArgumentError(
            'Expecting at least {} labels, received {}.'
            .format(minimum, len(u)))
    return u, v


def contingency(u, v):
    """
    Counts of co-occurrence, rows indexed by the distinct values of `u` and
    columns by those of `v` (both ascending).  Returns the matrix and the
    two value arrays.
    """
    table = cluster_metrics.contingency_matrix(u, v).astype(np.int64)
    return table, np.unique(u), np.unique(v)


def top1_static(predictions, table, truth):
    predictions, truth = _labelings(predictions, truth, 0)
    if not len(truth):
        return 0.0
    encoded = encode_predictions(table, predictions)
    return 100.0 * float(np.sum(encoded == truth)) / len(truth)


def cluster_accuracy(predictions, truth):
    predictions, truth = _labelings(predictions, truth, 0)
    if not len(truth):
        return 0.0
    table, _, _ = contingency(predictions, truth)
    matched = sum(table[i, j] for i, j in hungarian(table, 'maximize'))
    return 100.0 * float(matched) / len(truth)


def nmi(u, v):
    """
    Mutual information normalized by the geometric mean of entropies.
    Two constant labelings agree perfectly; a constant labeling against a
    varying one scores 0.
    """
    u, v = _labelings(u, v)
    score = cluster_metrics.normalized_mutual_info_score(
        u, v, average_method='geometric')
    return min(1.0, max(0.0, float(score)))


def ari(u, v):
    u, v = _labelings(u, v, 2)
    return float(cluster_metrics.adjusted_rand_score(u, v))
