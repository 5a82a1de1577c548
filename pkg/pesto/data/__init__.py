import os

from pesto.log import log
from pesto.util import ConfigError
from pesto.data.dataset import LabeledDataset, Standardizer
from pesto.data.synth import synth_gaussian
from pesto.data.csvfile import load_csv, save_csv
from pesto.data.idx import load_idx
from pesto.data.cifar import load_cifar100_binary


def _paths(config, *keys):
    paths = []
    for key in keys:
        path = config.dataset.path.get(key)
        if path is None:
            raise ConfigError(
                'Dataset type {!r} requires dataset.path.{}.'
                .format(config.dataset.type, key))
        paths.append(os.path.expanduser(path))
    return paths


def load_dataset(config):
    """Returns the `(train, test)` datasets described by `config.dataset`.  """
    dataset = config.dataset
    kind = dataset.type
    if kind == 'gaussian':
        train, test = synth_gaussian(
            dataset.num_classes, dataset.per_class, dataset.dim,
            dataset.center_scale, dataset.noise_std, dataset.seed,
            dataset.test_fraction)
    elif kind == 'csv':
        train_path, test_path = _paths(config, 'train', 'test')
        train = load_csv(train_path, dataset.label_column, 'train')
        test = load_csv(test_path, dataset.label_column, 'test')
    elif kind == 'idx':
        paths = _paths(
            config, 'train', 'train_labels', 'test', 'test_labels')
        train = load_idx(paths[0], paths[1], 'train')
        test = load_idx(paths[2], paths[3], 'test')
    elif kind == 'cifar100':
        train_path, test_path = _paths(config, 'train', 'test')
        train = load_cifar100_binary(train_path, 'train')
        test = load_cifar100_binary(test_path, 'test')
    else:
        raise ConfigError('Unknown dataset type {!r}.'.format(kind))
    if dataset.standardize:
        standardize = Standardizer.fit(train.samples)
        train = train.transformed(standardize)
        test = test.transformed(standardize)
    log.info('Training set: {!r}.'.format(train))
    log.info('Test set: {!r}.'.format(test))
    return train, test


__all__ = [
    LabeledDataset, Standardizer, synth_gaussian, load_csv, save_csv,
    load_idx, load_cifar100_binary, load_dataset,
]
