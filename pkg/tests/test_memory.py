from common import TestCase

import os
import tempfile

import numpy as np

from pesto.util import ArgumentError, FormatError
from pesto.memory import herding_select, quotas, ExemplarMemory


def greedy_oracle(embeddings, count):
    mean = [sum(col) / len(embeddings) for col in zip(*embeddings)]
    chosen, objectives = [], []
    for _ in range(count):
        best, best_gap = None, None
        for i, e in enumerate(embeddings):
            if i in chosen:
                continue
            picked = [embeddings[j] for j in chosen] + [e]
            center = [sum(col) / len(picked) for col in zip(*picked)]
            gap = sum((m - c) ** 2 for m, c in zip(mean, center)) ** 0.5
            if best_gap is None or gap < best_gap:
                best, best_gap = i, gap
        chosen.append(best)
        objectives.append(best_gap)
    return chosen, objectives


class TestHerding(TestCase):
    def test_mean_first(self):
        embeddings = np.array([[0.0, 0.0], [2.0, 0.0], [1.0, 0.0]])
        self.assertEqual(herding_select(None, embeddings, 1).tolist(), [2])

    def test_all(self):
        embeddings = np.random.default_rng(0).normal(size=(6, 3))
        order = herding_select(embeddings, embeddings, 6)
        self.assertEqual(sorted(order.tolist()), list(range(6)))
        self.assertArrayEqual(
            order[:3], herding_select(embeddings, embeddings, 3))

    def test_oracle(self):
        rng = np.random.default_rng(1)
        for _ in range(100):
            embeddings = rng.normal(size=(8, 2))
            expected, objectives = greedy_oracle(embeddings.tolist(), 3)
            order = herding_select(None, embeddings, 3)
            self.assertEqual(order.tolist(), expected)
            mean = embeddings.mean(axis=0)
            for step, objective in enumerate(objectives, 1):
                center = embeddings[order[:step]].mean(axis=0)
                self.assertAlmostEqual(
                    np.linalg.norm(mean - center), objective)

    def test_too_many(self):
        with self.assertRaises(ArgumentError):
            herding_select(None, np.zeros((2, 2)), 3)


class TestMemory(TestCase):
    def test_quotas(self):
        self.assertEqual(quotas(10, [2, 0, 1]), {0: 4, 1: 3, 2: 3})
        shares = quotas(2000, range(100))
        self.assertEqual(set(shares.values()), {20})
        self.assertEqual(quotas(5, []), {})

    def _class(self, rng, n, offset):
        samples = rng.normal(offset, 1.0, (n, 3))
        return samples, samples * 2

    def test_rebalance_keeps_prefix(self):
        rng = np.random.default_rng(2)
        memory = ExemplarMemory(12)
        first = [self._class(rng, 20, i) for i in range(2)]
        memory.rebalance(
            [0, 1], [s for s, _ in first], [e for _, e in first])
        self.assertEqual(len(memory), 12)
        before = {c: v.copy() for c, v in memory.per_class.items()}
        second = [self._class(rng, 20, i) for i in range(2, 4)]
        memory.rebalance(
            [2, 3], [s for s, _ in second], [e for _, e in second])
        self.assertEqual(memory.class_ids, [0, 1, 2, 3])
        self.assertEqual(len(memory), 12)
        for c in (0, 1):
            self.assertArrayEqual(memory.per_class[c], before[c][:3])
        samples, ids = memory.contents()
        self.assertEqual(samples.shape, (12, 3))
        self.assertArrayEqual(ids, np.repeat([0, 1, 2, 3], 3))

    def test_small_class(self):
        memory = ExemplarMemory(10)
        samples = np.ones((2, 3))
        memory.rebalance([0], [samples], [samples])
        self.assertEqual(len(memory), 2)

    def test_duplicate(self):
        memory = ExemplarMemory(4)
        memory.rebalance([0], [np.ones((3, 2))], [np.ones((3, 2))])
        with self.assertRaises(ArgumentError):
            memory.rebalance([0], [np.ones((3, 2))], [np.ones((3, 2))])

    def test_empty_contents(self):
        samples, ids = ExemplarMemory(4).contents(5)
        self.assertEqual(samples.shape, (0, 5))
        self.assertEqual(len(ids), 0)

    def test_save_load(self):
        rng = np.random.default_rng(3)
        memory = ExemplarMemory(6)
        data = [self._class(rng, 5, i) for i in (3, 1)]
        memory.rebalance([3, 1], [s for s, _ in data], [e for _, e in data])
        with tempfile.TemporaryDirectory() as d:
            path = os.path.join(d, 'memory.npz')
            memory.save(path)
            loaded = ExemplarMemory.load(path)
            self.assertEqual(loaded.budget, 6)
            self.assertEqual(loaded.class_ids, [3, 1])
            for c in (3, 1):
                self.assertArrayEqual(loaded.per_class[c], memory.per_class[c])
            with open(path, 'wb') as f:
                f.write(b'not an archive')
            with self.assertRaises(FormatError):
                ExemplarMemory.load(path)
