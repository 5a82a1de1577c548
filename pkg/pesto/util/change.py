import collections

import numpy as np


class Change(object):
    """Moving statistics of named training metrics over recent steps.  """
    def __init__(self, window=100):
        super().__init__()
        self._window = window
        self._history = {}

    def moving_metrics(self, name, value, std=True):
        history = self._history.setdefault(
            name, collections.deque(maxlen=self._window))
        history.append(float(value))
        mean = float(np.mean(history))
        if not std:
            return mean
        return mean, float(np.std(history))

    def reset(self, name=None):
        if name is None:
            self._history.clear()
        else:
            self._history.pop(name, None)
