import json

import numpy as np

from pesto.log import log
from pesto.util import ConsistencyError, ShapeError, FormatError
from pesto.assign.hungarian import hungarian


class EncodingTable(object):
    """
    Append-only, injective map from classifier output units to
    ground-truth class ids, with the units each task appended.
    """
    def __init__(self, entries=None, task_boundaries=None):
        super().__init__()
        self._entries = {}
        self._classes = set()
        self.task_boundaries = []
        if entries:
            for boundary in task_boundaries or [list(entries)]:
                self._append({u: entries[u] for u in boundary})

    def __len__(self):
        return len(self._entries)

    def __contains__(self, unit):
        return unit in self._entries

    def __getitem__(self, unit):
        return self._entries[unit]

    def __eq__(self, other):
        return (
            isinstance(other, EncodingTable) and
            self.entries == other.entries and
            self.task_boundaries == other.task_boundaries)

    @property
    def entries(self):
        return dict(self._entries)

    def _append(self, mapping):
        for unit, cls in mapping.items():
            if unit in self._entries:
                raise ConsistencyError(
                    'Unit {} is already encoded as class {}; encodings are '
                    'never modified.'.format(unit, self._entries[unit]))
            if cls in self._classes:
                raise ConsistencyError(
                    'Class {} is already encoded by another unit.'
                    .format(cls))
        if len(set(mapping.values())) != len(mapping):
            raise ConsistencyError('Two new units map to the same class.')
        for unit, cls in mapping.items():
            self._entries[int(unit)] = int(cls)
            self._classes.add(int(cls))
        self.task_boundaries.append([int(u) for u in mapping])

    def copy(self):
        table = EncodingTable()
        table._entries = dict(self._entries)
        table._classes = set(self._classes)
        table.task_boundaries = [list(b) for b in self.task_boundaries]
        return table

    def extended(self, mapping):
        """Returns a new table with `mapping` appended as one task.  """
        table = self.copy()
        table._append(dict(mapping))
        return table

    def is_extended_by(self, other):
        """Whether `other` keeps every entry and boundary of this table.  """
        head = other.task_boundaries[:len(self.task_boundaries)]
        return head == self.task_boundaries and all(
            other._entries.get(u) == c for u, c in self._entries.items())

    def asdict(self):
        return {
            'entries': [[u, c] for u, c in self._entries.items()],
            'task_boundaries': [list(b) for b in self.task_boundaries],
        }

    def to_json(self):
        return json.dumps(self.asdict(), indent=2, sort_keys=True) + '\n'

    def save(self, path):
        with open(path, 'w') as f:
            f.write(self.to_json())

    @classmethod
    def from_dict(cls, data):
        try:
            entries = {int(u): int(c) for u, c in data['entries']}
            boundaries = [[int(u) for u in b] for b in data['task_boundaries']]
        except (KeyError, TypeError, ValueError) as e:
            raise FormatError('Malformed encoding table: {}'.format(e))
        if sorted(u for b in boundaries for u in b) != sorted(entries):
            raise FormatError('Task boundaries do not cover the entries.')
        table = cls()
        for boundary in boundaries:
            table._append({u: entries[u] for u in boundary})
        return table

    @classmethod
    def load(cls, path):
        with open(path, 'r') as f:
            try:
                data = json.load(f)
            except ValueError as e:
                raise FormatError('Invalid JSON: {}'.format(e), path)
        return cls.from_dict(data)


def identity_encoding(table, unit_ids, class_ids):
    """Appends `unit_ids[i] -> class_ids[i]`, for tasks with real labels.  """
    if len(unit_ids) != len(class_ids):
        raise ShapeError('Units and classes differ in number.')
    return table.extended(zip(unit_ids, class_ids))


def extend_encoding(table, contingency, new_unit_ids, new_class_ids):
    """
    Matches new units to new classes by maximum agreement.

    `contingency[i][j]` counts the task's training samples put in unit
    `new_unit_ids[i]` whose true class is `new_class_ids[j]`.
    """
    contingency = np.asarray(contingency, dtype=np.float64)
    expected = (len(new_unit_ids), len(new_class_ids))
    if contingency.shape != expected:
        raise ShapeError(
            'Contingency shape {} does not match {} units × {} classes.'
            .format(contingency.shape, *expected))
    for unit in new_unit_ids:
        if unit in table:
            raise ConsistencyError(
                'Unit {} is already encoded; encodings are never modified.'
                .format(unit))
    pairs = hungarian(contingency, 'maximize')
    mapping = [(new_unit_ids[i], new_class_ids[j]) for i, j in pairs]
    agreement = sum(contingency[i, j] for i, j in pairs)
    log.debug(
        'Encoding {} new units, agreement {:.0f} of {:.0f} samples.'
        .format(len(mapping), agreement, contingency.sum()))
    return table.extended(mapping)


def encode_predictions(table, predictions):
    predictions = np.asarray(predictions, dtype=np.int64)
    if not predictions.size:
        return predictions.copy()
    units = set(np.unique(predictions).tolist())
    unknown = sorted(u for u in units if u not in table)
    if unknown:
        raise ConsistencyError(
            'Predicted units {} have no encoding.'.format(unknown))
    lookup = np.full(max(units) + 1, -1, dtype=np.int64)
    for unit in units:
        lookup[unit] = table[unit]
    return lookup[predictions]
