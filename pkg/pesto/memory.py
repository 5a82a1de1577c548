import json
import collections

import numpy as np

from pesto.log import log
from pesto.util import ArgumentError, ShapeError, FormatError


def herding_select(samples, embeddings, count):
    """
    Greedy herding: picks, one at a time, the sample that keeps the mean
    embedding of those chosen closest to the mean of all embeddings.
    Returns indices in selection order.  `samples` only fixes the number
    of candidates.
    """
    embeddings = np.asarray(embeddings, dtype=np.float64)
    n = len(embeddings)
    if samples is not None and len(samples) != n:
        raise ShapeError(
            'Received {} samples but {} embeddings.'
            .format(len(samples), n))
    if not 0 <= count <= n:
        raise ArgumentError(
            'Cannot select {} exemplars from {} samples.'.format(count, n))
    mean = embeddings.mean(axis=0) if n else None
    chosen = []
    available = np.ones(n, dtype=bool)
    running = np.zeros(embeddings.shape[1:])
    for step in range(1, count + 1):
        candidates = (running[None, :] + embeddings) / step
        gaps = np.linalg.norm(mean[None, :] - candidates, axis=1)
        gaps[~available] = np.inf
        # ties go to the lowest index
        index = int(np.argmin(gaps))
        chosen.append(index)
        available[index] = False
        running += embeddings[index]
    return np.asarray(chosen, dtype=np.int64)


def quotas(budget, class_ids):
    """Even split of `budget`, the remainder going to the lowest ids.  """
    class_ids = sorted(class_ids)
    if not class_ids:
        return {}
    share, remainder = divmod(budget, len(class_ids))
    return {c: share + (i < remainder) for i, c in enumerate(class_ids)}


class ExemplarMemory(object):
    """
    Fixed-budget rehearsal store.  Exemplars of each id (a classifier unit)
    are kept in herding order so shrinking keeps a prefix.
    """
    format_name = 'pesto-memory'

    def __init__(self, budget):
        super().__init__()
        if budget < 0:
            raise ArgumentError('Memory budget must be non-negative.')
        self.budget = int(budget)
        self.per_class = collections.OrderedDict()

    def __len__(self):
        return sum(len(v) for v in self.per_class.values())

    @property
    def class_ids(self):
        return list(self.per_class)

    def rebalance(self, new_class_ids, their_samples, their_embeddings):
        new_class_ids = [int(c) for c in new_class_ids]
        if not len(new_class_ids) == len(their_samples) == len(
                their_embeddings):
            raise ShapeError(
                'Expecting samples and embeddings for each new class.')
        for c in new_class_ids:
            if c in self.per_class:
                raise ArgumentError(
                    'Class {} already has exemplars.'.format(c))
        limits = quotas(self.budget, self.class_ids + new_class_ids)
        for c, exemplars in self.per_class.items():
            self.per_class[c] = exemplars[:limits[c]]
        for c, samples, embeddings in zip(
                new_class_ids, their_samples, their_embeddings):
            samples = np.asarray(samples, dtype=np.float64)
            count = min(limits[c], len(samples))
            order = herding_select(samples, embeddings, count)
            self.per_class[c] = samples[order]
        log.debug(
            'Memory holds {} exemplars of {} classes, budget {}.'
            .format(len(self), len(self.per_class), self.budget))
        return self

    def contents(self, input_dim=None):
        """All exemplars as `(samples, class_ids)`.  """
        arrays = [v for v in self.per_class.values() if len(v)]
        if not arrays:
            return np.empty((0, input_dim or 0)), np.empty(0, dtype=np.int64)
        labels = [
            np.full(len(v), c, dtype=np.int64)
            for c, v in self.per_class.items()]
        return np.concatenate(arrays), np.concatenate(labels)

    def save(self, path):
        arrays = {
            'class{}'.format(c): v for c, v in self.per_class.items()}
        arrays['__meta__'] = np.array(json.dumps({
            'format': self.format_name,
            'budget': self.budget,
            'order': self.class_ids,
        }, sort_keys=True))
        with open(path, 'wb') as f:
            np.savez(f, **arrays)

    @classmethod
    def load(cls, path):
        try:
            with np.load(path, allow_pickle=False) as data:
                meta = json.loads(str(data['__meta__']))
                if meta.get('format') != cls.format_name:
                    raise FormatError('Not a memory checkpoint.', path)
                memory = cls(meta['budget'])
                for c in meta['order']:
                    memory.per_class[int(c)] = np.array(
                        data['class{}'.format(c)])
        except FormatError:
            raise
        except (OSError, KeyError, ValueError) as e:
            raise FormatError(
                'Unable to read memory checkpoint: {}'.format(e), path)
        return memory


def rebalance(memory, new_class_ids, their_samples, their_embeddings):
    return memory.rebalance(new_class_ids, their_samples, their_embeddings)
