import numpy as np

from pesto.util import ShapeError, ArgumentError


def relu(x):
    return np.maximum(x, 0.0)


def relu_gradient(preactivation, gradient):
    return gradient * (preactivation > 0)


activations = {
    'relu': (relu, relu_gradient),
}


class Dense(object):
    """
    A fully-connected layer computing `x · Wᵀ + b`.

    Weights are stored as `(out_units, in_units)` so that each output unit
    owns one row, which is what classifier growth and weight alignment
    operate on.
    """
    def __init__(self, weights, biases):
        super().__init__()
        weights = np.asarray(weights, dtype=np.float64)
        biases = np.asarray(biases, dtype=np.float64)
        if weights.ndim != 2 or biases.shape != (weights.shape[0], ):
            raise ShapeError(
                'Weights of shape {} and biases of shape {} do not form '
                'a dense layer.'.format(weights.shape, biases.shape))
        self.weights = weights
        self.biases = biases

    @staticmethod
    def init_weights(in_units, out_units, rng):
        # He-style uniform: Var = 2 / fan_in
        bound = np.sqrt(6.0 / max(in_units, 1))
        return rng.uniform(-bound, bound, size=(out_units, in_units))

    @classmethod
    def initialize(cls, in_units, out_units, rng):
        if in_units < 1 or out_units < 0:
            raise ArgumentError(
                'Invalid dense layer size {} -> {}.'
                .format(in_units, out_units))
        weights = cls.init_weights(in_units, out_units, rng)
        return cls(weights, np.zeros(out_units))

    @property
    def in_units(self):
        return self.weights.shape[1]

    @property
    def out_units(self):
        return self.weights.shape[0]

    @property
    def macs(self):
        return self.in_units * self.out_units

    def forward(self, x):
        if x.shape[-1] != self.in_units:
            raise ShapeError(
                'Expecting {} input features, received {}.'
                .format(self.in_units, x.shape[-1]))
        return x @ self.weights.T + self.biases

    def backward(self, x, gradient):
        """
        Returns gradients w.r.t. the input, weights and biases, given the
        input `x` of the forward pass and the output `gradient`.
        """
        weights_gradient = gradient.T @ x
        biases_gradient = gradient.sum(axis=0)
        input_gradient = gradient @ self.weights
        return input_gradient, weights_gradient, biases_gradient

    def grow(self, out_units, rng):
        if out_units < 1:
            raise ArgumentError(
                'Number of units to add must be positive, received {}.'
                .format(out_units))
        rows = self.init_weights(self.in_units, out_units, rng)
        self.weights = np.concatenate([self.weights, rows], axis=0)
        self.biases = np.concatenate([self.biases, np.zeros(out_units)])

    def copy(self):
        return self.__class__(self.weights.copy(), self.biases.copy())
