from common import TestCase

import os
import tempfile

from pesto.util import ComparisonError, FormatError
from pesto.report import MetricsReport, compare_reports


stream = {'class_order': [2, 0, 1, 3], 'task_sizes': [2, 2]}


def make_report(top1, supervised=False, seed=0, variant='a',
                strategy='wa', order=None):
    meta = {
        'strategy': strategy, 'supervised': supervised, 'seed': seed,
        'variant': variant,
        'stream': dict(stream, class_order=order or stream['class_order']),
    }
    report = MetricsReport(meta)
    for task_id, value in enumerate(top1, 1):
        report.add_task(task_id, value, value, [0, 1], 10)
    return report


class TestMetricsReport(TestCase):
    def test_rounding(self):
        report = make_report([90.004, 70.333333])
        self.assertEqual(report.per_task_top1, [90.0, 70.33])
        self.assertEqual(report.final_accuracy, 70.33)
        self.assertAlmostEqual(report.average_accuracy, 80.165)

    def test_empty(self):
        report = MetricsReport()
        self.assertIsNone(report.final_accuracy)
        self.assertEqual(report.skipped_percent(), 0.0)

    def test_regenerations(self):
        report = make_report([100.0, 50.0])
        report.add_regeneration(2, 0, 100, 60, 0.5, 0.4)
        report.add_regeneration(2, 10, 100, 80, 0.7, 0.6)
        self.assertEqual(report.selected_fraction, [0.6, 0.8])
        self.assertEqual(report.nmi_trace, [0.5, 0.7])
        self.assertAlmostEqual(report.skipped_percent(2), 30.0)
        self.assertEqual(report.skipped_percent(1), 0.0)
        self.assertEqual(report.asdict()['skipped_percent']['tasks'],
                         {'2': 30.0})

    def test_save_load(self):
        report = make_report([100.0, 50.0])
        report.add_regeneration(2, 0, 100, 60, 0.5, 0.4)
        report.compute = {'total_gflops': 1.5}
        with tempfile.TemporaryDirectory() as d:
            path = os.path.join(d, 'report.json')
            report.save(path)
            loaded = MetricsReport.load(path)
            self.assertEqual(loaded.to_json(), report.to_json())
            with open(path, 'w') as f:
                f.write('{"format": "other"}')
            with self.assertRaises(FormatError):
                MetricsReport.load(path)

    def test_curve(self):
        report = make_report([100.0, 50.0])
        self.assertEqual(
            report.curve().csv().splitlines()[0],
            'task_id,top1,cluster_accuracy')
        self.assertEqual(len(report.summary()), 2)


class TestCompare(TestCase):
    def test_single(self):
        table = compare_reports([make_report([80.0, 60.0])], ['only'])
        self.assertEqual(len(table), 1)
        self.assertEqual(table[0, 'final'], 60.0)
        self.assertEqual(table[0, 'average'], 70.0)
        self.assertIsNone(table[0, 'degradation'])

    def test_degradation(self):
        reports = [
            make_report([80.0, 70.0], supervised=True, variant='s'),
            make_report([80.0, 55.5], variant='u'),
        ]
        table = compare_reports(reports)
        self.assertIsNone(table[0, 'degradation'])
        self.assertAlmostEqual(table[1, 'degradation'], 14.5)

    def test_baseline(self):
        table = compare_reports(
            [make_report([60.0])], baseline=make_report([65.0]))
        self.assertEqual(table[0, 'degradation'], 5.0)

    def test_seeds(self):
        reports = [
            make_report([value], seed=s)
            for s, value in enumerate([50.0, 52.0, 54.0])]
        table = compare_reports(reports)
        self.assertEqual(len(table), 4)
        self.assertEqual(table[3, 'run'], 'mean of 3')
        self.assertEqual(table[3, 'final'], '52.00 ± 2.00')

    def test_incompatible(self):
        reports = [
            make_report([50.0]), make_report([50.0], order=[0, 1, 2, 3])]
        with self.assertRaises(ComparisonError):
            compare_reports(reports)
        with self.assertRaises(ComparisonError):
            compare_reports([])
