import collections

import numpy as np

from pesto.util import ArgumentError, NumericalError
from pesto.net.loss import cross_entropy, distillation
from pesto.net.optimizer import MomentumOptimizer


_train_config_fields = collections.OrderedDict([
    ('epochs', 60),
    ('batch_size', 64),
    ('lr', 0.1),
    ('momentum', 0.9),
    ('lr_decay_factor', 0.1),
    ('lr_decay_epochs', (30, 45)),
    ('mixup_alpha', 0.0),
    ('class_weighting', False),
    ('distill_temperature', 2.0),
    ('distill_weight', 1.0),
    ('rng_seed', 0),
    ('noise_std', 0.0),
])


class TrainConfig(collections.namedtuple(
        'TrainConfig', list(_train_config_fields),
        defaults=list(_train_config_fields.values()))):
    __slots__ = ()

    def validate(self):
        if self.epochs < 0 or self.batch_size < 1:
            raise ArgumentError(
                'Invalid epochs {} or batch size {}.'
                .format(self.epochs, self.batch_size))
        if not self.lr > 0:
            raise ArgumentError('Learning rate must be positive.')
        if not 0 <= self.momentum < 1:
            raise ArgumentError('Momentum must be in [0, 1).')
        decay = list(self.lr_decay_epochs)
        if any(b <= a for a, b in zip(decay, decay[1:])):
            raise ArgumentError('Decay epochs must be strictly increasing.')
        if decay and decay[-1] >= self.epochs:
            raise ArgumentError('Decay epochs must precede the last epoch.')
        if self.mixup_alpha < 0 or self.distill_weight < 0:
            raise ArgumentError('MixUp alpha and distill weight must be >= 0.')
        if not self.distill_temperature > 0:
            raise ArgumentError('Distillation temperature must be positive.')
        return self


def compute_loss(model, batch, targets, old_model=None, cfg=None,
                 class_weights=None):
    """
    Evaluates `CE_w(logits, targets) + distill_weight · KD` and returns
    `(loss, gradients)` without touching the parameters.
    """
    cfg = cfg or TrainConfig()
    _, logits, cache = model.forward(batch, cache=True)
    loss, logits_gradient = cross_entropy(logits, targets, class_weights)
    if old_model is not None and cfg.distill_weight and old_model.out_units:
        _, old_logits = old_model.forward(batch)
        kd_loss, kd_gradient = distillation(
            old_logits, logits, cfg.distill_temperature)
        loss += cfg.distill_weight * kd_loss
        logits_gradient[:, :old_model.out_units] += \
            cfg.distill_weight * kd_gradient
    if not np.isfinite(loss):
        raise NumericalError(
            'Non-finite loss {} on a batch of {} samples; largest absolute '
            'logit is {:.4g}.'.format(
                loss, logits.shape[0], np.abs(logits).max(initial=0)))
    return loss, model.backward(cache, logits_gradient)


def train_step(model, batch, targets, old_model=None, cfg=None,
               class_weights=None, optimizer=None):
    """
    One SGD-with-momentum step on `batch`; returns the scalar loss computed
    before the update.  Without an `optimizer`, a fresh one is built from
    `cfg`, i.e. a plain SGD step.
    """
    cfg = cfg or TrainConfig()
    if optimizer is None:
        optimizer = MomentumOptimizer(cfg.lr, cfg.momentum)
    loss, gradients = compute_loss(
        model, batch, targets, old_model, cfg, class_weights)
    optimizer.apply(model, gradients)
    return loss
