import numpy as np

from pesto.log import log
from pesto.util import ArgumentError, HiddenLabelError


class Task(object):
    """
    The training and test samples of one group of classes.

    Labels of an unlabeled task are hidden: `labels` refuses to return
    them, and only evaluation code may call `reveal_labels`.
    """
    def __init__(self, task_id, classes, samples, labels,
                 test_samples, test_labels, labeled):
        super().__init__()
        self.task_id = task_id
        self.classes = [int(c) for c in classes]
        self.samples = samples
        self._labels = labels
        self.test_samples = test_samples
        self.test_labels = test_labels
        self.labeled = labeled

    def __repr__(self):
        return '<Task {} classes={} train={} test={} {}>'.format(
            self.task_id, self.classes, len(self.samples),
            len(self.test_samples), 'labeled' if self.labeled else 'hidden')

    @property
    def labels(self):
        if not self.labeled:
            raise HiddenLabelError(
                'Labels of task {} are hidden from training.'
                .format(self.task_id))
        return self._labels

    def reveal_labels(self):
        return self._labels


class TaskStream(object):
    def __init__(self, tasks, class_order, base, increment, seed):
        super().__init__()
        self.tasks = tasks
        self.class_order = class_order
        self.base = base
        self.increment = increment
        self.seed = seed

    def __len__(self):
        return len(self.tasks)

    def __iter__(self):
        return iter(self.tasks)

    def __getitem__(self, index):
        return self.tasks[index]

    @property
    def task_sizes(self):
        return [len(t.classes) for t in self.tasks]

    def seen_classes(self, task_index):
        """Classes of tasks `0..task_index`, in stream order.  """
        classes = []
        for task in self.tasks[:task_index + 1]:
            classes += task.classes
        return classes

    def union_test_set(self, task_index):
        tasks = self.tasks[:task_index + 1]
        samples = np.concatenate([t.test_samples for t in tasks])
        labels = np.concatenate([t.test_labels for t in tasks])
        return samples, labels

    def signature(self):
        return {
            'class_order': [int(c) for c in self.class_order],
            'task_sizes': self.task_sizes,
            'base': self.base,
            'increment': self.increment,
            'seed': self.seed,
        }


def build_stream(train, test, base, increment, seed, supervised=False):
    """
    Shuffles the classes with `seed`, then forms a first task of `base`
    classes (`increment` if `base` is 0) followed by tasks of `increment`
    classes.  Only the first task is labeled unless `supervised`.
    """
    classes = np.union1d(train.classes, test.classes)
    if increment < 1 or base < 0:
        raise ArgumentError(
            'Invalid Base{} Inc{} setting.'.format(base, increment))
    first = base or increment
    if first > len(classes):
        raise ArgumentError(
            'The first task needs {} classes, the dataset has {}.'
            .format(first, len(classes)))
    order = np.random.default_rng(seed).permutation(classes)
    groups = [order[:first]]
    for start in range(first, len(order), increment):
        groups.append(order[start:start + increment])
    if len(groups[-1]) < (increment if len(groups) > 1 else first):
        log.warn(
            'Dropping {} leftover classes that do not fill a task.'
            .format(len(groups[-1])))
        groups.pop()
    tasks = []
    for index, group in enumerate(groups):
        train_mask = np.isin(train.labels, group)
        test_mask = np.isin(test.labels, group)
        tasks.append(Task(
            index + 1, group,
            train.samples[train_mask], train.labels[train_mask],
            test.samples[test_mask], test.labels[test_mask],
            labeled=supervised or index == 0))
    log.debug(
        'Stream of {} tasks, class order {}.'
        .format(len(tasks), order.tolist()))
    return TaskStream(tasks, order, base, increment, seed)
