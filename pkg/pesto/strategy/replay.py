from pesto.strategy.base import StrategyBase


class Replay(StrategyBase):
    """Cross-entropy on new samples and exemplars alike.  """
    kind = 'replay'
