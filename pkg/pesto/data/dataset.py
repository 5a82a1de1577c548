import numpy as np

from pesto.util import ShapeError, ArgumentError, NumericalError


class LabeledDataset(object):
    def __init__(self, samples, labels, class_names=None, split='train'):
        super().__init__()
        samples = np.asarray(samples, dtype=np.float64)
        labels = np.asarray(labels, dtype=np.int64)
        if samples.ndim == 1 and not samples.size:
            samples = samples.reshape(0, 0)
        if samples.ndim != 2 or labels.shape != (samples.shape[0], ):
            raise ShapeError(
                'Samples of shape {} do not match labels of shape {}.'
                .format(samples.shape, labels.shape))
        if not np.all(np.isfinite(samples)):
            raise NumericalError('Samples contain non-finite features.')
        if labels.size and labels.min() < 0:
            raise ArgumentError('Class ids must not be negative.')
        if split not in ('train', 'test'):
            raise ArgumentError('Unknown split {!r}.'.format(split))
        self.samples = samples
        self.labels = labels
        self.class_names = class_names
        self.split = split

    def __len__(self):
        return len(self.labels)

    def __repr__(self):
        return '<{} {} samples × {} features, {} classes, {}>'.format(
            self.__class__.__name__, len(self), self.dim,
            self.num_classes, self.split)

    @property
    def dim(self):
        return self.samples.shape[1]

    @property
    def num_classes(self):
        if self.class_names is not None:
            return len(self.class_names)
        return int(self.labels.max()) + 1 if self.labels.size else 0

    @property
    def classes(self):
        return np.unique(self.labels)

    def subset(self, class_ids):
        mask = np.isin(self.labels, list(class_ids))
        return self.__class__(
            self.samples[mask], self.labels[mask], self.class_names,
            self.split)

    def transformed(self, func):
        return self.__class__(
            func(self.samples), self.labels, self.class_names, self.split)


class Standardizer(object):
    """Per-feature standardization fitted on one split, reused on others.  """
    def __init__(self, mean, std):
        super().__init__()
        self.mean = mean
        self.std = std

    @classmethod
    def fit(cls, samples):
        std = samples.std(axis=0)
        # constant features are only centered
        std[std == 0] = 1.0
        return cls(samples.mean(axis=0), std)

    def __call__(self, samples):
        return (samples - self.mean) / self.std
