from common import TestCase

import os
import json
import itertools
import tempfile

import numpy as np

from pesto.util import ArgumentError, ConsistencyError, FormatError
from pesto.assign import (
    hungarian, assignment_cost, EncodingTable, identity_encoding,
    extend_encoding, encode_predictions)


def brute_force(cost):
    rows, cols = cost.shape
    if rows > cols:
        return brute_force(cost.T)
    return min(
        sum(cost[i, j] for i, j in enumerate(perm))
        for perm in itertools.permutations(range(cols), rows))


class TestHungarian(TestCase):
    def test_identity(self):
        cost = 1 - np.eye(4)
        pairs = hungarian(cost)
        self.assertEqual(pairs, [(i, i) for i in range(4)])
        self.assertEqual(assignment_cost(cost, pairs), 0)

    def test_single(self):
        self.assertEqual(hungarian([[3.5]]), [(0, 0)])

    def test_brute_force(self):
        rng = np.random.default_rng(0)
        for _ in range(500):
            rows, cols = rng.integers(1, 8, 2)
            cost = rng.uniform(-10, 10, (rows, cols))
            if rng.random() < 0.3:
                cost = np.round(cost)
            pairs = hungarian(cost)
            self.assertEqual(len(pairs), min(rows, cols))
            self.assertEqual(len({j for _, j in pairs}), len(pairs))
            self.assertAlmostEqual(
                assignment_cost(cost, pairs), brute_force(cost), places=9)

    def test_maximize(self):
        cost = np.array([[5.0, 1.0], [0.0, 4.0]])
        self.assertEqual(hungarian(cost, 'maximize'), [(0, 0), (1, 1)])
        self.assertEqual(hungarian(cost), [(0, 1), (1, 0)])

    def test_lexicographic_ties(self):
        self.assertEqual(hungarian(np.zeros((3, 3))), [(0, 0), (1, 1), (2, 2)])
        cost = np.array([[1.0, 0.0, 0.0], [0.0, 0.0, 1.0], [0.0, 1.0, 0.0]])
        # (1, 0, 2) and (2, 1, 0) are both optimal
        self.assertEqual(hungarian(cost), [(0, 1), (1, 0), (2, 2)])
        pairs = hungarian(np.ones((3, 3)) - np.eye(3)[::-1])
        self.assertEqual(pairs, [(0, 2), (1, 1), (2, 0)])

    def test_lexicographic_against_enumeration(self):
        rng = np.random.default_rng(1)
        for _ in range(200):
            n = int(rng.integers(2, 6))
            cost = rng.integers(0, 3, (n, n)).astype(float)
            best = brute_force(cost)
            expected = min(
                perm for perm in itertools.permutations(range(n))
                if sum(cost[i, j] for i, j in enumerate(perm)) == best)
            columns = tuple(j for _, j in hungarian(cost))
            self.assertEqual(columns, expected)

    def test_non_finite(self):
        with self.assertRaises(ArgumentError):
            hungarian([[np.nan, 1.0]])
        with self.assertRaises(ArgumentError):
            hungarian([[1.0]], 'median')


class TestEncoding(TestCase):
    def test_diagonal_contingency(self):
        table = extend_encoding(
            EncodingTable(), np.diag([5, 7, 3]), [0, 1, 2], [4, 8, 6])
        self.assertEqual(table.entries, {0: 4, 1: 8, 2: 6})
        self.assertArrayEqual(
            encode_predictions(table, [2, 0, 1]), [6, 4, 8])

    def test_agreement(self):
        table = extend_encoding(
            EncodingTable(), [[5, 1], [0, 4]], [0, 1], [0, 1])
        self.assertEqual(table.entries, {0: 0, 1: 1})

    def test_append_only(self):
        table = identity_encoding(EncodingTable(), [0, 1], [3, 5])
        with self.assertRaises(ConsistencyError):
            extend_encoding(table, np.eye(2), [1, 2], [6, 7])
        with self.assertRaises(ConsistencyError):
            identity_encoding(table, [2], [3])
        extended = extend_encoding(table, np.eye(2), [2, 3], [6, 7])
        self.assertTrue(table.is_extended_by(extended))
        self.assertEqual(table.entries, {0: 3, 1: 5})
        self.assertEqual(extended.task_boundaries, [[0, 1], [2, 3]])

    def test_lookup(self):
        table = EncodingTable({0: 7, 1: 3})
        self.assertArrayEqual(encode_predictions(table, [1, 0, 1]), [3, 7, 3])
        with self.assertRaises(ConsistencyError):
            encode_predictions(table, [2])

    def test_identity_table(self):
        table = identity_encoding(EncodingTable(), range(4), range(4))
        predictions = np.array([3, 1, 1, 0, 2])
        self.assertArrayEqual(
            encode_predictions(table, predictions), predictions)

    def test_json(self):
        table = identity_encoding(EncodingTable(), [0, 1], [3, 5])
        table = extend_encoding(table, np.eye(2), [2, 3], [6, 7])
        with tempfile.TemporaryDirectory() as d:
            path = os.path.join(d, 'encoding.json')
            table.save(path)
            self.assertEqual(EncodingTable.load(path), table)
            with open(path, 'w') as f:
                json.dump({'entries': [[0, 1]]}, f)
            with self.assertRaises(FormatError):
                EncodingTable.load(path)
