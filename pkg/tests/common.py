import os
import sys
import unittest

import numpy as np

sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))


class TestCase(unittest.TestCase):
    def assertEqual(self, *args, msg=None):
        for first, second in zip(args, args[1:]):
            super().assertEqual(first, second, msg)

    def assertObjectEqual(self, x, y):
        self.assertEqual(x.__class__, y.__class__)
        self.assertEqual(
            getattr(x, '__dict__', None), getattr(y, '__dict__', None))

    def assertArrayEqual(self, x, y):
        np.testing.assert_array_equal(x, y)

    def assertAllClose(self, x, y, rtol=1e-7, atol=0.0):
        np.testing.assert_allclose(x, y, rtol=rtol, atol=atol)


def random_model(input_dim=5, hidden=(4, ), embedding=3, out_units=4, seed=0):
    from pesto.net import NetworkSpec, Model
    rng = np.random.default_rng(seed)
    spec = NetworkSpec(input_dim, hidden, embedding)
    model = Model.initialize(spec, rng, out_units)
    # non-zero biases exercise their gradients
    for name, value in list(model.parameters()):
        if name.endswith('biases'):
            model.set_parameter(name, rng.normal(0, 0.1, value.shape))
    return model


def blobs(centers, per_center, std, seed=0):
    """Samples around `centers` with their center index as label.  """
    rng = np.random.default_rng(seed)
    centers = np.asarray(centers, dtype=np.float64)
    points = np.concatenate([
        c + rng.normal(0, std, (per_center, len(c))) for c in centers])
    labels = np.repeat(np.arange(len(centers)), per_center)
    return points, labels
