import os
import sys
import atexit
import shutil
import inspect
import itertools
import collections

from termcolor import colored

if os.name == 'nt':
    import colorama
    colorama.init()


_Level = collections.namedtuple('_Level', ['rank', 'color', 'sign'])


class Logger(object):
    """
    Console logger.  `update=True` rewrites the current line in place,
    which is how per-epoch training progress is shown; the next regular
    message closes the line with a tick.
    """
    _levels = collections.OrderedDict([
        ('debug', _Level(0, 'white', '·')),
        ('info', _Level(1, 'blue', '-')),
        ('key', _Level(2, 'green', '*')),
        ('warn', _Level(3, 'yellow', '!')),
        ('error', _Level(4, 'red', '‼')),
        ('off', _Level(5, None, '')),
    ])
    _spinner = itertools.cycle('⠋⠙⠹⠸⠼⠴⠦⠧⠇⠏')
    _tick = '⣿'
    env_level = 'ICPL_LOG'

    def __init__(self, stream=None):
        super().__init__()
        self.stream = stream or sys.stdout
        self.frame = False
        self.color = 'color' in os.environ.get('TERM', '')
        self._level = 'info'
        self._pending = None
        self.level = self.environ_level() or 'info'

    @classmethod
    def environ_level(cls):
        """The level named by `$ICPL_LOG`, which overrides configuration.  """
        level = os.environ.get(cls.env_level, '').strip().lower()
        return level if level in cls._levels else None

    @property
    def level(self):
        return self._level

    @level.setter
    def level(self, value):
        if value not in self._levels:
            raise ValueError('Unrecognized log level {!r}.'.format(value))
        self._level = value

    def is_enabled(self, level):
        return self._levels[level].rank >= self._levels[self._level].rank

    def _paint(self, text, level):
        color = self._levels[level].color
        if not self.color or color is None:
            return text
        return colored(text, color)

    @staticmethod
    def _caller():
        frame = inspect.currentframe()
        while frame.f_code.co_filename == __file__:
            frame = frame.f_back
        name = os.path.splitext(os.path.basename(frame.f_code.co_filename))[0]
        return '{}:{}#{}'.format(name, frame.f_code.co_name, frame.f_lineno)

    def _close_update(self):
        if self._pending is None:
            return ''
        tick = self._paint(self._tick, self._pending)
        self._pending = None
        return '\r{}\n'.format(tick)

    def log(self, text, level='info', update=False):
        if not self.is_enabled(level):
            return
        sign = next(self._spinner) if update else self._levels[level].sign
        if self.frame:
            sign = self._caller()
        line = '{} {}'.format(self._paint(sign, level), text)
        if update:
            width = shutil.get_terminal_size((80, 24)).columns - 1
            line = '\r' + line.ljust(width)[:width]
            print(line, end='', file=self.stream, flush=True)
            self._pending = level
            return
        print(self._close_update() + line, file=self.stream)

    def debug(self, text, update=False):
        self.log(text, 'debug', update)

    def info(self, text, update=False):
        self.log(text, 'info', update)

    def key(self, text, update=False):
        self.log(text, 'key', update)

    def warn(self, text, update=False):
        self.log(text, 'warn', update)

    def error(self, text, update=False):
        self.log(text, 'error', update)

    def exit(self):
        if self._pending is not None:
            print(self._close_update(), end='', file=self.stream)


log = Logger()
atexit.register(log.exit)
