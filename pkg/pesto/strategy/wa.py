import numpy as np

from pesto.log import log
from pesto.util import ArgumentError, NumericalError
from pesto.strategy.base import StrategyBase


def weight_align(model, old_unit_count):
    """
    Scales the new-class rows of the classifier, biases included, so that
    their mean norm equals that of the old-class rows.  Old rows are left
    untouched.
    """
    weights = model.classifier.weights
    if not 0 < old_unit_count < weights.shape[0]:
        raise ArgumentError(
            'Cannot align {} old units out of {}.'
            .format(old_unit_count, weights.shape[0]))
    norms = np.linalg.norm(weights, axis=1)
    old_norm = norms[:old_unit_count].mean()
    new_norm = norms[old_unit_count:].mean()
    if new_norm == 0 or old_norm == 0:
        raise NumericalError(
            'Cannot align weights with mean norms old {} and new {}.'
            .format(old_norm, new_norm))
    gamma = old_norm / new_norm
    model.classifier.weights[old_unit_count:] *= gamma
    model.classifier.biases[old_unit_count:] *= gamma
    log.debug('Weight alignment factor {:.4f}.'.format(gamma))
    return model


class WA(StrategyBase):
    """Replay followed by weight alignment once the task is trained.  """
    kind = 'wa'
    default_mixup = False
    default_class_weights = False

    def after_task(self, model, old_units):
        if not 0 < old_units < model.out_units:
            return model
        return weight_align(model, old_units)
