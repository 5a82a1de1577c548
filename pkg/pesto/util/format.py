import collections.abc


class Percent(float):
    """A value already in percent, printed with two decimals.  """
    def __format__(self, _):
        return '{:.2f}%'.format(float(self))


def format_cell(value):
    if value is None:
        return ''
    if isinstance(value, Percent):
        return format(value)
    if isinstance(value, bool):
        return 'yes' if value else 'no'
    if isinstance(value, int):
        return '{:,}'.format(value)
    if isinstance(value, float):
        return '{:.2f}'.format(value)
    return str(value)


class Table(collections.abc.Sequence):
    """
    Rows under fixed headers, printed as a ruled text table or written as
    CSV.  `table[row, header]` addresses a single cell.
    """
    def __init__(self, headers):
        super().__init__()
        self._headers = list(headers)
        self._rows = []
        # a rule is drawn above the row at each recorded index
        self._rules = set()

    def __getitem__(self, index):
        if isinstance(index, tuple):
            row, header = index
            return self._rows[row][self._headers.index(header)]
        return self._rows[index]

    def __len__(self):
        return len(self._rows)

    @property
    def headers(self):
        return list(self._headers)

    def add_row(self, row):
        if isinstance(row, collections.abc.Mapping):
            row = [row.get(h) for h in self._headers]
        if len(row) != len(self._headers):
            raise ValueError(
                'Row {!r} does not have one value per header {!r}.'
                .format(row, self._headers))
        self._rows.append(list(row))

    def add_rows(self, rows):
        for row in rows:
            self.add_row(row)

    def add_rule(self):
        if self._rows:
            self._rules.add(len(self._rows))

    def format(self):
        cells = [self._headers] + [
            [format_cell(v) for v in row] for row in self._rows]
        widths = [max(len(c) for c in column) for column in zip(*cells)]
        rule = '+-{}-+'.format('-+-'.join('-' * w for w in widths))

        def line(row):
            padded = (c.ljust(w) for c, w in zip(row, widths))
            return '| {} |'.format(' | '.join(padded))

        lines = [rule, line(cells[0]), rule]
        for index, row in enumerate(cells[1:]):
            if index in self._rules:
                lines.append(rule)
            lines.append(line(row))
        if self._rows:
            lines.append(rule)
        return '\n'.join(lines)

    def csv(self):
        def cell(value):
            if value is None:
                return ''
            if isinstance(value, float):
                return repr(float(value))
            return str(value)
        lines = [','.join(self._headers)]
        lines += [','.join(cell(v) for v in row) for row in self._rows]
        return '\n'.join(lines) + '\n'
