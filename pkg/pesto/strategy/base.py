import time
import collections

import numpy as np

from pesto.log import log
from pesto.util import ArgumentError, Change
from pesto.net import (
    MomentumOptimizer, step_decay, one_hot, class_weights, mixup,
    gaussian_noise, train_step)


class StrategySpec(collections.namedtuple(
        'StrategySpec', [
            'kind', 'use_mixup', 'use_class_weights',
            'distill_temperature', 'distill_weight'])):
    __slots__ = ()

    @classmethod
    def create(cls, kind, mixup=None, class_weights=None,
               temperature=2.0, weight=None):
        """
        Fills unspecified switches with the defaults of `kind`: MixUp and
        class weighting for replay and icarl, neither for wa; distillation
        only for icarl.
        """
        from pesto.strategy import strategy_class
        strategy = strategy_class(kind)
        if mixup is None:
            mixup = strategy.default_mixup
        if class_weights is None:
            class_weights = strategy.default_class_weights
        if weight is None:
            weight = strategy.default_distill_weight
        spec = cls(kind, bool(mixup), bool(class_weights),
                   float(temperature), float(weight))
        return spec.validate()

    def validate(self):
        if not self.distill_temperature > 0:
            raise ArgumentError('Distillation temperature must be positive.')
        if self.distill_weight < 0:
            raise ArgumentError('Distillation weight must not be negative.')
        return self

    def asdict(self):
        return dict(self._asdict())


class StrategyBase(object):
    """
    Training on a task's samples together with the rehearsal memory.

    Subclasses choose the defaults of their `StrategySpec` and may hook
    `before_task` (snapshotting what the loss needs) and `after_task`
    (post-training corrections).
    """
    kind = None
    default_mixup = True
    default_class_weights = True
    default_distill_weight = 0.0

    def __init__(self, spec):
        super().__init__()
        self.spec = spec
        self.samples_trained = 0

    def __repr__(self):
        return '<{} {}>'.format(self.__class__.__name__, self.spec.asdict())

    def train_config(self, cfg):
        return cfg._replace(
            mixup_alpha=cfg.mixup_alpha if self.spec.use_mixup else 0.0,
            class_weighting=self.spec.use_class_weights,
            distill_temperature=self.spec.distill_temperature,
            distill_weight=self.spec.distill_weight)

    def before_task(self, model):
        """Called before the classifier grows; returns the frozen model.  """
        return None

    def after_task(self, model, old_units):
        return model

    def _weights(self, cfg, targets, out_units):
        if not cfg.class_weighting:
            return None
        return class_weights(np.bincount(targets, minlength=out_units))

    def train(self, model, samples, targets, memory, cfg,
              old_units=0, rng=None, relabel=None, old_model=None,
              task_id=None):
        """
        Trains `model` for `cfg.epochs` on `(samples, targets)` plus the
        memory contents, `targets` being classifier unit ids.

        `relabel(model, epoch)` is consulted at the start of every epoch;
        when it returns a new `(samples, targets)` pair, training continues
        on that set instead.
        """
        cfg = self.train_config(cfg).validate()
        if rng is None:
            rng = np.random.default_rng(cfg.rng_seed)
        input_dim = model.spec.input_dim
        if memory is not None:
            memory_x, memory_y = memory.contents(input_dim)
        else:
            memory_x = np.empty((0, input_dim))
            memory_y = np.empty(0, dtype=np.int64)
        if samples is None:
            samples = np.empty((0, input_dim))
            targets = np.empty(0, dtype=np.int64)
        optimizer = MomentumOptimizer(cfg.lr, cfg.momentum)
        change = Change()
        prefix = '' if task_id is None else 'task {} '.format(task_id)
        for epoch in range(cfg.epochs):
            if relabel is not None:
                update = relabel(model, epoch)
                if update is not None:
                    samples, targets = update
            x = np.concatenate([samples, memory_x])
            y = np.concatenate([
                np.asarray(targets, dtype=np.int64), memory_y])
            if not len(x):
                log.warn(
                    '{}epoch {}: nothing to train on, skipped.'
                    .format(prefix, epoch))
                continue
            optimizer.learning_rate = step_decay(
                cfg.lr, cfg.lr_decay_factor, cfg.lr_decay_epochs, epoch)
            weights = self._weights(cfg, y, model.out_units)
            order = rng.permutation(len(x))
            tic = time.perf_counter()
            for start in range(0, len(x), cfg.batch_size):
                index = order[start:start + cfg.batch_size]
                batch = gaussian_noise(x[index], cfg.noise_std, rng)
                batch_targets = one_hot(y[index], model.out_units)
                batch, batch_targets = mixup(
                    batch, batch_targets, cfg.mixup_alpha, rng)
                loss = train_step(
                    model, batch, batch_targets, old_model, cfg, weights,
                    optimizer)
                moving_loss = change.moving_metrics('loss', loss, std=False)
            self.samples_trained += len(x)
            rate = len(x) / max(time.perf_counter() - tic, 1e-9)
            log.info(
                '{}epoch {}/{} | lr: {:.4g} | loss: {:.4f} | {:.0f} samples/s'
                .format(prefix, epoch + 1, cfg.epochs,
                        optimizer.learning_rate, moving_loss, rate),
                update=True)
        return self.after_task(model, old_units)


def run_task_training(model, samples, targets, memory, spec, cfg, **kwargs):
    from pesto.strategy import create_strategy
    return create_strategy(spec).train(
        model, samples, targets, memory, cfg, **kwargs)
