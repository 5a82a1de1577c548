class PestoError(Exception):
    """Base class of every error raised by the toolkit.  """


class ShapeError(PestoError, ValueError):
    """Incorrect shape.  """


class ArgumentError(PestoError, ValueError):
    """An argument falls outside its documented domain.  """


class NumericalError(PestoError, ArithmeticError):
    """A computation produced non-finite or degenerate values.  """


class DegenerateInputError(NumericalError):
    """Input carries no usable spread, e.g. an all-equal distance matrix.  """


class ConsistencyError(PestoError):
    """An append-only or injective structure would be violated.  """


class HiddenLabelError(PestoError):
    """Ground-truth labels of an unlabelled task were requested.  """


class ComparisonError(PestoError):
    """Runs cannot be compared with each other.  """


class ConfigError(PestoError, KeyError):
    """Invalid or unknown configuration.  """

    def __str__(self):
        return str(self.args[0]) if self.args else ''


class ParseError(PestoError, ValueError):
    """Malformed text input, positioned by line.  """

    def __init__(self, message, path=None, line=None):
        super().__init__(message)
        self.path = path
        self.line = line

    def __str__(self):
        where = []
        if self.path is not None:
            where.append(str(self.path))
        if self.line is not None:
            where.append('line {}'.format(self.line))
        prefix = ':'.join(where)
        if not prefix:
            return self.args[0]
        return '{}: {}'.format(prefix, self.args[0])


class FormatError(PestoError, ValueError):
    """Malformed binary input, positioned by byte offset.  """

    def __init__(self, message, path=None, offset=None):
        super().__init__(message)
        self.path = path
        self.offset = offset

    def __str__(self):
        text = self.args[0]
        if self.offset is not None:
            text = '{} (at byte {})'.format(text, self.offset)
        if self.path is not None:
            text = '{}: {}'.format(self.path, text)
        return text
