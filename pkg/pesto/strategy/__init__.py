from pesto.util import ArgumentError
from pesto.strategy.base import (
    StrategySpec, StrategyBase, run_task_training)
from pesto.strategy.replay import Replay
from pesto.strategy.icarl import ICaRL
from pesto.strategy.wa import WA, weight_align


# FOSTER-style two-model strategies would register here
strategies = {cls.kind: cls for cls in (Replay, ICaRL, WA)}


def strategy_class(kind):
    try:
        return strategies[kind]
    except KeyError:
        raise ArgumentError(
            'Unknown strategy {!r}, expecting one of {}.'
            .format(kind, ', '.join(sorted(strategies))))


def create_strategy(spec):
    return strategy_class(spec.kind)(spec)


__all__ = [
    StrategySpec, StrategyBase, run_task_training,
    Replay, ICaRL, WA, weight_align,
    strategies, strategy_class, create_strategy,
]
