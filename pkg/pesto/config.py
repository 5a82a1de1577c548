import os

from pesto.log import log
from pesto.parse import ConfigBase
from pesto.util import ConfigError, PestoError
from pesto.net import NetworkSpec, TrainConfig
from pesto.strategy import StrategySpec


class Config(ConfigBase):
    """
    Run configuration: `system.yaml` defaults merged with user files and
    `key=value` overrides.  The typed views below turn subtrees into the
    records the toolkit consumes, reporting violations as `ConfigError`.
    """
    def __init__(self):
        merge_hook = {
            'system.log': self._setup_log_level,
        }
        super().__init__(merge_hook)
        self._init_system_config()

    def _init_system_config(self):
        root = os.path.dirname(__file__)
        self.yaml_update(os.path.join(root, 'system.yaml'), schema=True)

    def _setup_log_level(self):
        level = log.environ_level()
        if level is None:
            level = self.get('system.log.level', 'info')
        try:
            log.level = level
        except ValueError as e:
            raise ConfigError(str(e))
        log.frame = self.get('system.log.frame', False)

    @staticmethod
    def _view(func, *args, **kwargs):
        try:
            return func(*args, **kwargs)
        except (PestoError, TypeError, ValueError) as e:
            if isinstance(e, ConfigError):
                raise
            raise ConfigError('Invalid configuration: {}'.format(e))

    def network_spec(self, input_dim):
        model = self.model
        return self._view(
            NetworkSpec, input_dim, model.hidden or (), model.embedding,
            model.activation)

    def strategy_spec(self):
        strategy = self.strategy
        return self._view(
            StrategySpec.create, strategy.type, strategy.mixup,
            strategy.class_weights, strategy.distill.temperature,
            strategy.distill.weight)

    def train_config(self):
        """
        Training hyperparameters; the strategy-dependent switches are filled
        in by the strategy itself.
        """
        train = self.train
        spec = self.strategy_spec()

        def create():
            return TrainConfig(
                epochs=int(train.epochs),
                batch_size=int(train.batch_size),
                lr=float(train.learning_rate),
                momentum=float(train.momentum),
                lr_decay_factor=float(train.decay_factor),
                lr_decay_epochs=tuple(train.decay_epochs or ()),
                mixup_alpha=float(train.mixup_alpha),
                class_weighting=spec.use_class_weights,
                distill_temperature=spec.distill_temperature,
                distill_weight=spec.distill_weight,
                rng_seed=int(self.system.seed),
                noise_std=float(train.augment.noise_std),
            ).validate()
        return self._view(create)

    def pseudo_settings(self):
        """Returns `(alpha, tau, max_iter, n_init)`.  """
        pseudo = self.pseudo
        alpha, tau = pseudo.alpha, pseudo.tau
        if not isinstance(alpha, (int, float)) or not 0 < alpha < 1:
            raise ConfigError(
                'pseudo.alpha must lie in (0, 1), found {!r}.'.format(alpha))
        if tau is not None and (not isinstance(tau, int) or tau < 1):
            raise ConfigError(
                'pseudo.tau must be a positive integer or null, found {!r}.'
                .format(tau))
        kmeans = pseudo.kmeans
        if kmeans.max_iter < 1 or kmeans.n_init < 1:
            raise ConfigError('pseudo.kmeans settings must be positive.')
        return alpha, tau, int(kmeans.max_iter), int(kmeans.n_init)

    def stream_settings(self):
        stream = self.stream
        if stream.base < 0 or stream.increment < 1:
            raise ConfigError(
                'Invalid stream setting Base{} Inc{}.'
                .format(stream.base, stream.increment))
        return stream.base, stream.increment, stream.seed
