import csv

import numpy as np

from pesto.util import ParseError
from pesto.data.dataset import LabeledDataset


def load_csv(path, label_column='label', split='train'):
    """
    Reads a comma-separated table with a header line; `label_column` holds
    integer class ids and every other column is a feature.
    """
    with open(path, 'r', newline='') as f:
        reader = csv.reader(f)
        try:
            header = next(reader)
        except StopIteration:
            raise ParseError('Missing header.', path, 1)
        if label_column not in header:
            raise ParseError(
                'No label column named {!r}.'.format(label_column), path, 1)
        label_index = header.index(label_column)
        rows, labels = [], []
        for row in reader:
            line = reader.line_num
            if not row:
                continue
            if len(row) != len(header):
                raise ParseError(
                    'Expecting {} cells, found {}.'
                    .format(len(header), len(row)), path, line)
            try:
                labels.append(int(row[label_index]))
                features = [
                    float(v) for i, v in enumerate(row) if i != label_index]
            except ValueError as e:
                raise ParseError(str(e), path, line)
            if not all(np.isfinite(features)):
                raise ParseError('Non-finite feature.', path, line)
            rows.append(features)
    samples = np.asarray(rows, dtype=np.float64).reshape(
        len(rows), len(header) - 1)
    return LabeledDataset(samples, labels, split=split)


def save_csv(dataset, path, label_column='label'):
    header = ['x{}'.format(i) for i in range(dataset.dim)] + [label_column]
    with open(path, 'w', newline='') as f:
        writer = csv.writer(f)
        writer.writerow(header)
        for sample, label in zip(dataset.samples, dataset.labels):
            writer.writerow([repr(float(v)) for v in sample] + [int(label)])
