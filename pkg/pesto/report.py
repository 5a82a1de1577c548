import os
import json
import collections

import numpy as np

from pesto.log import log
from pesto.util import Table, Percent, ComparisonError, FormatError


class MetricsReport(object):
    """
    Everything a run measures: accuracies after each task, pseudo-label
    statistics at each regeneration and compute accounting.

    Accuracies are stored rounded to two decimals; `average_accuracy` is
    the mean of the stored values so it can be recomputed from the file.
    """
    format_version = 1
    _precision = 2

    def __init__(self, meta=None):
        super().__init__()
        self.meta = dict(meta or {})
        self.tasks = []
        self.regenerations = []
        self.compute = {}

    def add_task(self, task_id, top1, cluster_accuracy, classes, num_test):
        self.tasks.append({
            'task_id': int(task_id),
            'top1': round(float(top1), self._precision),
            'cluster_accuracy': round(
                float(cluster_accuracy), self._precision),
            'classes': [int(c) for c in classes],
            'num_test': int(num_test),
        })

    def add_regeneration(
            self, task_id, epoch, num_samples, num_selected, nmi, ari):
        self.regenerations.append({
            'task_id': int(task_id),
            'epoch': int(epoch),
            'num_samples': int(num_samples),
            'num_selected': int(num_selected),
            'selected_fraction':
                num_selected / num_samples if num_samples else 0.0,
            'nmi': float(nmi),
            'ari': float(ari),
        })

    @property
    def per_task_top1(self):
        return [t['top1'] for t in self.tasks]

    @property
    def cluster_accuracy(self):
        return [t['cluster_accuracy'] for t in self.tasks]

    @property
    def final_accuracy(self):
        if not self.tasks:
            return None
        return self.per_task_top1[-1]

    @property
    def average_accuracy(self):
        if not self.tasks:
            return None
        return float(np.mean(self.per_task_top1))

    def _trace(self, key, task_id=None):
        return [
            r[key] for r in self.regenerations
            if task_id is None or r['task_id'] == task_id]

    @property
    def nmi_trace(self):
        return self._trace('nmi')

    @property
    def ari_trace(self):
        return self._trace('ari')

    @property
    def selected_fraction(self):
        return self._trace('selected_fraction')

    def skipped_percent(self, task_id=None):
        """
        Percentage of clustered samples left out of training, pooled over
        the regenerations of `task_id` (or of the whole run).
        """
        total = sum(self._trace('num_samples', task_id))
        if not total:
            return 0.0
        selected = sum(self._trace('num_selected', task_id))
        return 100.0 * (1 - selected / total)

    def asdict(self):
        skipped = {
            str(t): round(self.skipped_percent(t), self._precision)
            for t in sorted({r['task_id'] for r in self.regenerations})}
        return {
            'format': 'pesto-report',
            'version': self.format_version,
            'meta': self.meta,
            'tasks': self.tasks,
            'final_accuracy': self.final_accuracy,
            'average_accuracy': self.average_accuracy,
            'regenerations': self.regenerations,
            'skipped_percent': {
                'tasks': skipped,
                'overall': round(self.skipped_percent(), self._precision),
            },
            'compute': self.compute,
        }

    def to_json(self):
        return json.dumps(self.asdict(), indent=2, sort_keys=True) + '\n'

    def save(self, path):
        with open(path, 'w') as f:
            f.write(self.to_json())

    @classmethod
    def from_dict(cls, data):
        if data.get('format') != 'pesto-report':
            raise FormatError('Not a pesto report.')
        if data.get('version') != cls.format_version:
            raise FormatError(
                'Unsupported report version {!r}.'.format(data.get('version')))
        report = cls(data.get('meta'))
        try:
            report.tasks = [dict(t) for t in data['tasks']]
            report.regenerations = [dict(r) for r in data['regenerations']]
        except (KeyError, TypeError) as e:
            raise FormatError('Malformed report: {}'.format(e))
        report.compute = dict(data.get('compute') or {})
        return report

    @classmethod
    def load(cls, path):
        try:
            with open(path, 'r') as f:
                data = json.load(f)
        except ValueError as e:
            raise FormatError('Invalid JSON: {}'.format(e), path)
        try:
            return cls.from_dict(data)
        except FormatError as e:
            e.path = path
            raise e

    def curve(self):
        table = Table(['task_id', 'top1', 'cluster_accuracy'])
        for t in self.tasks:
            table.add_row(t)
        return table

    def save_curve(self, path):
        with open(path, 'w') as f:
            f.write(self.curve().csv())

    def summary(self):
        table = Table(
            ['task', 'classes', 'top1', 'cluster acc', 'skipped'])
        tasks_with_labels = {r['task_id'] for r in self.regenerations}
        for t in self.tasks:
            skipped = None
            if t['task_id'] in tasks_with_labels:
                skipped = Percent(self.skipped_percent(t['task_id']))
            table.add_row([
                t['task_id'], len(t['classes']), Percent(t['top1']),
                Percent(t['cluster_accuracy']), skipped])
        return table


def _stream_signature(report):
    stream = report.meta.get('stream', {})
    return stream.get('class_order'), stream.get('task_sizes')


def _mean_std(values):
    values = np.asarray(values, dtype=np.float64)
    std = float(np.std(values, ddof=1)) if len(values) > 1 else 0.0
    return float(np.mean(values)), std


def _pm(values):
    return '{:.2f} ± {:.2f}'.format(*_mean_std(values))


def compare_reports(reports, names=None, baseline=None):
    """
    Tabulates final and average accuracies of `reports`.

    Degradation of each run is measured against `baseline` when given,
    otherwise against the mean of the supervised runs of the same
    strategy, if any.  Runs sharing a variant that differ only in seed
    are summarized by a mean ± std row.
    """
    if not reports:
        raise ComparisonError('No reports to compare.')
    names = names or ['run{}'.format(i) for i in range(len(reports))]
    signature = _stream_signature(baseline or reports[0])
    for name, report in zip(names, reports):
        if _stream_signature(report) != signature:
            raise ComparisonError(
                'Run {!r} uses a different class partition.'.format(name))
    supervised = collections.defaultdict(list)
    for report in reports:
        if report.meta.get('supervised'):
            supervised[report.meta.get('strategy')].append(
                report.final_accuracy)

    def degradation(report):
        if baseline is not None:
            return baseline.final_accuracy - report.final_accuracy
        reference = supervised.get(report.meta.get('strategy'))
        if not reference or report.meta.get('supervised'):
            return None
        return float(np.mean(reference)) - report.final_accuracy

    headers = [
        'run', 'strategy', 'supervised', 'seed',
        'final', 'average', 'degradation']
    table = Table(headers)
    groups = collections.OrderedDict()
    for name, report in zip(names, reports):
        meta = report.meta
        row = {
            'run': name,
            'strategy': meta.get('strategy'),
            'supervised': bool(meta.get('supervised')),
            'seed': meta.get('seed'),
            'final': report.final_accuracy,
            'average': report.average_accuracy,
            'degradation': degradation(report),
        }
        table.add_row(row)
        groups.setdefault(meta.get('variant'), []).append(row)
    summaries = [rows for rows in groups.values() if len(rows) > 1]
    if summaries:
        table.add_rule()
    for rows in summaries:
        drops = [r['degradation'] for r in rows]
        table.add_row({
            'run': 'mean of {}'.format(len(rows)),
            'strategy': rows[0]['strategy'],
            'supervised': rows[0]['supervised'],
            'final': _pm([r['final'] for r in rows]),
            'average': _pm([r['average'] for r in rows]),
            'degradation': None if None in drops else _pm(drops),
        })
    return table


def load_run_reports(run_dirs):
    reports = []
    for run_dir in run_dirs:
        path = os.path.join(run_dir, 'report.json')
        log.debug('Loading report {!r}.'.format(path))
        reports.append(MetricsReport.load(path))
    return reports
