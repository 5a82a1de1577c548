from pesto.util.common import (
    PestoError, ShapeError, ArgumentError, NumericalError,
    DegenerateInputError, ConsistencyError, HiddenLabelError,
    ComparisonError, ConfigError, ParseError, FormatError)
from pesto.util.change import Change
from pesto.util.format import Percent, Table
from pesto.util.collections import recursive_apply, flatten_keys


__all__ = [
    PestoError, ShapeError, ArgumentError, NumericalError,
    DegenerateInputError, ConsistencyError, HiddenLabelError,
    ComparisonError, ConfigError, ParseError, FormatError,
    Change, Percent, Table, recursive_apply, flatten_keys,
]
