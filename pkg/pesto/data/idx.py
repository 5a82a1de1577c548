import numpy as np

from pesto.util import FormatError
from pesto.data.dataset import LabeledDataset


_image_magic = 0x00000803
_label_magic = 0x00000801


def _read_idx(path, magic, ndim):
    raw = np.fromfile(path, dtype=np.uint8)
    header = 4 + 4 * ndim
    if raw.size < header:
        raise FormatError('Truncated IDX header.', path, raw.size)
    found = int.from_bytes(raw[:4].tobytes(), 'big')
    if found != magic:
        raise FormatError(
            'Bad magic number {:#010x}, expecting {:#010x}.'
            .format(found, magic), path, 0)
    dims = np.frombuffer(raw[4:header].tobytes(), dtype='>u4').astype(int)
    size = int(np.prod(dims))
    if raw.size - header != size:
        raise FormatError(
            'Expecting {} data bytes, found {}.'
            .format(size, raw.size - header), path, header)
    return raw[header:].reshape(dims)


def load_idx(path_images, path_labels, split='train'):
    """Reads an IDX image file (flattened, scaled to [0, 1]) with labels.  """
    images = _read_idx(path_images, _image_magic, 3)
    labels = _read_idx(path_labels, _label_magic, 1)
    if images.shape[0] != labels.shape[0]:
        raise FormatError(
            '{} images but {} labels.'.format(images.shape[0], len(labels)),
            path_labels, 4)
    features = int(np.prod(images.shape[1:]))
    samples = images.reshape(images.shape[0], features) / 255.0
    return LabeledDataset(samples, labels.astype(np.int64), split=split)
