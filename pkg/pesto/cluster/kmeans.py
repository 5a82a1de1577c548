import collections

import numpy as np

from pesto.log import log
from pesto.util import ArgumentError, NumericalError


KMeansResult = collections.namedtuple(
    'KMeansResult',
    ['centers', 'assignments', 'inertia', 'iterations_run', 'distances'])


def pairwise_distances(points, centers):
    """Euclidean distances, shape `(len(points), len(centers))`.  """
    return np.linalg.norm(points[:, None, :] - centers[None, :, :], axis=2)


def _plusplus(points, k, rng):
    n = points.shape[0]
    indices = [int(rng.integers(n))]
    closest = np.sum((points - points[indices[0]]) ** 2, axis=1)
    for _ in range(1, k):
        total = closest.sum()
        if total > 0:
            index = int(rng.choice(n, p=closest / total))
        else:
            # every point coincides with a chosen center
            index = int(rng.integers(n))
        indices.append(index)
        closest = np.minimum(
            closest, np.sum((points - points[index]) ** 2, axis=1))
    return points[indices].copy()


def _update_centers(points, assignments, distances, k):
    centers = np.empty((k, points.shape[1]))
    counts = np.bincount(assignments, minlength=k)
    own = distances[np.arange(points.shape[0]), assignments]
    # farthest points first, for re-seeding empty clusters
    farthest = list(np.argsort(-own, kind='stable'))
    for j in range(k):
        if counts[j]:
            centers[j] = points[assignments == j].mean(axis=0)
            continue
        index = farthest.pop(0)
        log.debug('Re-seeding empty cluster {} at point {}.'.format(j, index))
        centers[j] = points[index]
    return centers


def _lloyd(points, centers, max_iter):
    k = centers.shape[0]
    assignments = None
    previous = np.inf
    iterations = 0
    while True:
        distances = pairwise_distances(points, centers)
        # ties go to the lowest cluster index
        new_assignments = np.argmin(distances, axis=1)
        inertia = float(np.sum(np.min(distances, axis=1) ** 2))
        if inertia > previous + 1e-9 * max(1.0, previous):
            raise NumericalError(
                'Lloyd iteration {} increased inertia from {!r} to {!r}.'
                .format(iterations, previous, inertia))
        previous = inertia
        converged = assignments is not None and np.array_equal(
            assignments, new_assignments)
        assignments = new_assignments
        if converged or iterations >= max_iter:
            break
        centers = _update_centers(points, assignments, distances, k)
        iterations += 1
    return KMeansResult(centers, assignments, inertia, iterations, distances)


def kmeans(embeddings, k, max_iter=100, n_init=10, rng=None):
    """
    Lloyd's algorithm with k-means++ seeding, keeping the restart of lowest
    inertia (earliest restart on ties).
    """
    points = np.asarray(embeddings, dtype=np.float64)
    if points.ndim != 2:
        raise ArgumentError('Embeddings must be a matrix.')
    n = points.shape[0]
    if not 1 <= k <= n:
        raise ArgumentError(
            'Cannot form {} clusters from {} points.'.format(k, n))
    if max_iter < 1 or n_init < 1:
        raise ArgumentError('max_iter and n_init must be positive.')
    if rng is None:
        rng = np.random.default_rng()
    best = None
    for restart in range(n_init):
        result = _lloyd(points, _plusplus(points, k, rng), max_iter)
        log.debug(
            'KMeans restart {}: inertia {:.6g} after {} iterations.'
            .format(restart, result.inertia, result.iterations_run))
        if best is None or result.inertia < best.inertia:
            best = result
    return best
