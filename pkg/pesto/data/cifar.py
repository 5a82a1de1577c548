import numpy as np

from pesto.util import FormatError
from pesto.data.dataset import LabeledDataset


record_size = 3074
num_classes = 100


def load_cifar100_binary(path, split='train'):
    """
    Reads CIFAR-100 binary records: a coarse and a fine label byte followed
    by 3072 pixel bytes (red, green then blue planes, row-major).  The fine
    label is kept and pixels are scaled to [0, 1].
    """
    raw = np.fromfile(path, dtype=np.uint8)
    if raw.size % record_size:
        offset = raw.size - raw.size % record_size
        raise FormatError(
            'File size {} is not a multiple of {}-byte records.'
            .format(raw.size, record_size), path, offset)
    records = raw.reshape(-1, record_size)
    labels = records[:, 1].astype(np.int64)
    samples = records[:, 2:].astype(np.float64) / 255.0
    return LabeledDataset(
        samples, labels, class_names=[str(i) for i in range(num_classes)],
        split=split)
