import os
import copy
import collections.abc

import yaml

from pesto.util import ConfigError, recursive_apply, flatten_keys


def _expand(mapping):
    """Turns `{'a.b': 1}` into `{'a': {'b': 1}}`, merging shared prefixes.  """
    expanded = {}
    for key, value in mapping.items():
        *parents, leaf = str(key).split('.')
        node = expanded
        for parent in parents:
            child = node.get(parent)
            if not isinstance(child, dict):
                child = node[parent] = {}
            node = child
        if isinstance(node.get(leaf), dict) and isinstance(value, dict):
            _DotDict._merge(node[leaf], value)
        else:
            node[leaf] = value
    return expanded


class _DotDict(collections.abc.MutableMapping):
    """
    A nested mapping addressed by dot paths, `d['a.b']`, or attributes,
    `d.a.b`.  Sub-mappings returned by lookups are views sharing storage.
    """
    def __init__(self, data, normalize=True):
        if not isinstance(data, collections.abc.Mapping):
            raise TypeError(
                'Cannot construct {!r} from data of type {!r}'.format(
                    self.__class__, type(data)))
        super().__init__()
        self.set('_mapping', self._normalize(data) if normalize else data)

    @staticmethod
    def _normalize(value):
        return recursive_apply(
            value, {collections.abc.Mapping: _expand})

    def asdict(self):
        return copy.deepcopy(self._mapping)

    @classmethod
    def _merge(cls, into, other):
        for key, value in other.items():
            if isinstance(into.get(key), dict) and isinstance(value, dict):
                cls._merge(into[key], value)
            else:
                into[key] = copy.deepcopy(value)

    def merge(self, other):
        if isinstance(other, _DotDict):
            other = other._mapping
        self._merge(self._mapping, self._normalize(other))

    def _resolve(self, path, create=False):
        """The mapping holding the last key of `path`, and that key.  """
        if not isinstance(path, str):
            raise KeyError('Key path {!r} is not a string'.format(path))
        *parents, leaf = path.split('.')
        node = self._mapping
        for parent in parents:
            if create and node.get(parent) is None:
                node[parent] = {}
            node = node.get(parent) if isinstance(node, dict) else None
            if not isinstance(node, dict):
                raise KeyError(
                    'Key path {!r} cannot be resolved.'.format(path))
        return node, leaf

    def __getitem__(self, path):
        node, key = self._resolve(path)
        value = node[key]
        if isinstance(value, dict):
            return _DotDict(value, normalize=False)
        return value

    def __getattr__(self, key):
        if key.startswith('_'):
            raise AttributeError(key)
        try:
            return self[key]
        except KeyError as e:
            raise AttributeError(str(e))

    def __setitem__(self, path, value):
        node, key = self._resolve(path, create=True)
        node[key] = value._mapping if isinstance(value, _DotDict) else value
    __setattr__ = __setitem__

    def set(self, key, value):
        # plain attribute assignment, bypassing the mapping
        super().__setattr__(key, value)

    def __delitem__(self, path):
        node, key = self._resolve(path)
        del node[key]

    def __contains__(self, path):
        try:
            node, key = self._resolve(path)
        except KeyError:
            return False
        return key in node

    def __iter__(self):
        return iter(self._mapping)

    def __len__(self):
        return len(self._mapping)


yaml.add_representer(
    _DotDict, yaml.representer.SafeRepresenter.represent_dict,
    Dumper=yaml.SafeDumper)


class ConfigBase(_DotDict):
    """
    A dot-path addressable configuration.

    The first mapping merged with `schema=True` defines the set of
    recognized key paths; subsequent merges are validated against it so that
    misspelt keys are rejected rather than silently ignored.
    """
    def __init__(self, merge_hook=None):
        super().__init__({})
        self.set('_merge_hook', merge_hook or {})
        self.set('_schema', None)

    def _validate(self, dictionary):
        if self._schema is None:
            return
        for path in flatten_keys(self._normalize(dictionary)):
            if path in self._schema:
                continue
            # a leaf may replace a whole known subtree, e.g. `pseudo.tau`
            # set to null, or a known mapping may be emptied
            if any(s.startswith(path + '.') for s in self._schema):
                continue
            raise ConfigError(
                'Unrecognized configuration key {!r}.'.format(path))

    def merge(self, dictionary, schema=False):
        if schema:
            super().merge(dictionary)
            self.set('_schema', set(flatten_keys(self._mapping)))
        else:
            self._validate(dictionary)
            super().merge(dictionary)
        normalized = _DotDict(dictionary)
        for key, func in self._merge_hook.items():
            if key in normalized:
                func()

    @staticmethod
    def _load(file):
        try:
            with open(file, 'r') as f:
                dictionary = yaml.safe_load(f)
        except FileNotFoundError:
            raise ConfigError(
                'Configuration file {!r} not found.'.format(file))
        except yaml.YAMLError as e:
            raise ConfigError(
                'Unable to parse configuration file {!r}: {}'.format(file, e))
        if dictionary is None:
            return {}
        if not isinstance(dictionary, collections.abc.Mapping):
            raise ConfigError(
                'Configuration file {!r} does not hold a mapping.'
                .format(file))
        return dictionary

    def yaml_update(self, file, schema=False):
        """Merges a YAML (or JSON) file, honouring `_import` first.  """
        dictionary = self._load(file)
        imports = dictionary.pop('_import', None)
        for i in ([imports] if isinstance(imports, str) else imports or []):
            if not os.path.isabs(i):
                i = os.path.join(os.path.dirname(file), i)
            self.yaml_update(i, schema)
        self.merge(dictionary, schema)

    def override_update(self, key, value):
        if isinstance(value, str):
            try:
                value = yaml.safe_load(value)
            except yaml.YAMLError as e:
                raise ConfigError(
                    'Unable to parse override {}={!r}: {}'
                    .format(key, value, e))
        self.merge({key: value})

    def to_yaml(self, file=None):
        kwargs = {
            'explicit_start': True, 'width': 70, 'indent': 4,
            'default_flow_style': False, 'sort_keys': True}
        text = yaml.safe_dump(self._mapping, **kwargs)
        if file is not None:
            with open(file, 'w') as f:
                f.write(text)
        return text
