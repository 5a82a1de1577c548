import bisect

import numpy as np

from pesto.util import ArgumentError


def step_decay(learning_rate, decay_factor, decay_epochs, epoch):
    """Learning rate at `epoch` (0-based) of a step schedule.  """
    return learning_rate * decay_factor ** bisect.bisect_right(
        list(decay_epochs), epoch)


class MomentumOptimizer(object):
    """
    SGD with momentum: `v ← μ v + g`, `θ ← θ - η v`.

    Velocities are keyed by parameter name; a parameter whose shape changes
    (the classifier after growth) keeps the velocity of its existing rows and
    starts the new rows at zero.
    """
    def __init__(self, learning_rate, momentum=0.0):
        super().__init__()
        if learning_rate < 0:
            raise ArgumentError('Learning rate must not be negative.')
        if not 0 <= momentum < 1:
            raise ArgumentError('Momentum must be in [0, 1).')
        self.learning_rate = learning_rate
        self.momentum = momentum
        self.velocities = {}

    def _velocity(self, name, shape):
        velocity = self.velocities.get(name)
        if velocity is None:
            return np.zeros(shape)
        if velocity.shape == shape:
            return velocity
        resized = np.zeros(shape)
        rows = min(shape[0], velocity.shape[0])
        resized[:rows] = velocity[:rows]
        return resized

    def apply(self, model, gradients):
        for name, value in list(model.parameters()):
            gradient = gradients[name]
            velocity = self._velocity(name, value.shape)
            velocity = self.momentum * velocity + gradient
            self.velocities[name] = velocity
            if self.learning_rate:
                model.set_parameter(
                    name, value - self.learning_rate * velocity)
