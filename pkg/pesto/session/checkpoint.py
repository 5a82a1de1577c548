import os
import re
import glob

from pesto.log import log
from pesto.util import PestoError
from pesto.net import Model
from pesto.memory import ExemplarMemory


class CheckpointNotFoundError(PestoError, FileNotFoundError):
    pass


class CheckpointHandler(object):
    """
    Model and memory snapshots of a run, under `<run_dir>/checkpoints/`
    as `task-<key>.npz` and `memory-<key>.npz`.  Keys are task ids, or
    `abort` for the state of a failed run.
    """
    _directory_name = 'checkpoints'
    _model_basename = 'task'
    _memory_basename = 'memory'
    _checkpoint_latest = 'latest'

    def __init__(self, run_dir):
        super().__init__()
        self.directory = os.path.join(run_dir, self._directory_name)

    def _path(self, basename, key):
        return os.path.join(
            self.directory, '{}-{}.npz'.format(basename, key))

    def list_tasks(self):
        files = glob.glob(os.path.join(
            self.directory, self._model_basename + '-*.npz'))
        tasks = []
        for f in files:
            found = re.findall(
                self._model_basename + r'-(\d+)\.npz$', os.path.basename(f))
            if found:
                tasks.append(int(found[0]))
        return sorted(tasks)

    def save(self, key, model, memory=None):
        os.makedirs(self.directory, exist_ok=True)
        path = self._path(self._model_basename, key)
        log.debug('Saving checkpoint {!r}...'.format(path))
        model.save(path)
        if memory is not None:
            memory.save(self._path(self._memory_basename, key))
        return path

    def load(self, key=_checkpoint_latest):
        if key == self._checkpoint_latest:
            tasks = self.list_tasks()
            if not tasks:
                raise CheckpointNotFoundError(
                    'No task checkpoint found in {!r}.'.format(self.directory))
            key = tasks[-1]
        path = self._path(self._model_basename, key)
        if not os.path.exists(path):
            raise CheckpointNotFoundError(
                'Checkpoint {!r} not found.'.format(path))
        log.info('Loading checkpoint from {!r}...'.format(path))
        model = Model.load(path)
        memory = None
        memory_path = self._path(self._memory_basename, key)
        if os.path.exists(memory_path):
            memory = ExemplarMemory.load(memory_path)
        return key, model, memory
