import collections.abc


def recursive_apply(obj, apply_funcs):
    """
    Rebuilds a nested structure of mappings, lists and tuples bottom-up,
    applying `apply_funcs[cls]` to every node that is an instance of `cls`.
    """
    if isinstance(obj, collections.abc.Mapping):
        obj = {k: recursive_apply(v, apply_funcs) for k, v in obj.items()}
    elif isinstance(obj, (tuple, list)):
        obj = obj.__class__(recursive_apply(v, apply_funcs) for v in obj)
    for cls, func in apply_funcs.items():
        if isinstance(obj, cls):
            return func(obj)
    return obj


def flatten_keys(mapping, prefix=''):
    """Yields the dot paths of all leaves in a nested mapping.  """
    for key, value in mapping.items():
        path = '{}.{}'.format(prefix, key) if prefix else str(key)
        if isinstance(value, collections.abc.Mapping) and value:
            yield from flatten_keys(value, path)
        else:
            yield path
