import os
import sys

import yaml
from docopt import docopt

from pesto.log import log
from pesto.util import PestoError, ConfigError

_root = os.path.dirname(__file__)


def meta():
    meta_file = os.path.join(_root, 'meta.yaml')
    with open(meta_file, 'r') as f:
        meta_dict = yaml.safe_load(f)
    meta_dict['__root__'] = _root
    meta_dict['__executable__'] = os.path.basename(sys.argv[0])
    return meta_dict


class CLI(object):
    _DOC = """
{__pesto__} {__version__} ({__date__})
{__description__}"""
    _USAGE = """
Usage:
    {__executable__} gen-data [--config=<path>] [--out=<dir>] [--set=<kv>]...
    {__executable__} run --config=<path> [--out=<dir>] [--set=<kv>]...
            [--seed=<n>]
    {__executable__} eval <run_dir>
    {__executable__} flops [--config=<path>] [--set=<kv>]...
    {__executable__} report <run_dir>... [--baseline=<dir>] [--out=<dir>]
    {__executable__} (-h | --help)
    {__executable__} --version

Commands:
{commands}

Options:
    --config=<path>   A YAML or JSON configuration file.
    --out=<dir>       Output directory.
    --set=<kv>        Overrides a configuration key, "<dot_key_path>=<yaml>",
                      e.g. "pseudo.tau=null".
    --seed=<n>        Shorthand for --set system.seed=<n>.
    --baseline=<dir>  Run to measure the degradation of other runs against.

The environment variable ICPL_LOG (debug, info, key, warn, error, off)
overrides the configured log level.
"""

    def __init__(self):
        super().__init__()
        self.config = None

    def doc(self):
        return self._DOC.format(**meta())

    def commands(self):
        prefix = 'cli_'
        commands = {}
        for method in dir(self):
            if not method.startswith(prefix):
                continue
            name = method[len(prefix):].replace('_', '-')
            commands[name] = getattr(self, method)
        return commands

    def usage(self):
        usage_meta = meta()
        commands = self.commands()
        name_len = max(len(name) for name in commands)
        descriptions = []
        for name, func in sorted(commands.items()):
            doc = func.__doc__ or ''
            doc = '{}{:{l}} {}'.format(' ' * 4, name, doc.strip(), l=name_len)
            descriptions.append(doc)
        usage_meta['commands'] = '\n'.join(descriptions)
        return self.doc() + self._USAGE.format(**usage_meta)

    def _load_config(self, args):
        from pesto.config import Config
        config = Config()
        path = args.get('--config')
        if path:
            config.yaml_update(path)
            log.key('Using config {!r}...'.format(path))
        for each in args.get('--set') or []:
            if '=' not in each:
                raise ConfigError(
                    'Override {!r} is not of the form key=value.'.format(each))
            key, value = each.strip().split('=', 1)
            config.override_update(key, value)
            log.key('Overriding config with {!r}...'.format(each))
        seed = args.get('--seed')
        if seed is not None:
            config.override_update('system.seed', seed)
        self.config = config
        return config

    def cli_gen_data(self, args):
        """Writes a synthetic Gaussian dataset as train.csv and test.csv.  """
        from pesto.data import synth_gaussian, save_csv
        dataset = self._load_config(args).dataset
        out = args.get('--out') or '.'
        train, test = synth_gaussian(
            dataset.num_classes, dataset.per_class, dataset.dim,
            dataset.center_scale, dataset.noise_std, dataset.seed,
            dataset.test_fraction)
        os.makedirs(out, exist_ok=True)
        for name, data in (('train', train), ('test', test)):
            path = os.path.join(out, name + '.csv')
            save_csv(data, path, dataset.label_column)
            log.info('Written {} samples to {!r}.'.format(len(data), path))

    def _run_dir(self, config):
        return os.path.join('runs', '{}-{}-seed{}'.format(
            config.dataset.name, config.strategy.type, config.system.seed))

    def cli_run(self, args):
        """Trains through the task stream and writes the run artifacts.  """
        from pesto.session import build_session
        config = self._load_config(args)
        out = args.get('--out') or self._run_dir(config)
        session = build_session(config, out)
        report = session.run()
        print(report.summary().format())
        log.key('Artifacts written to {!r}.'.format(out))

    def cli_eval(self, args):
        """Re-evaluates the final checkpoint of a run, writing eval.json.  """
        from pesto.session import evaluate_run
        evaluate_run(args['<run_dir>'][0])

    def cli_flops(self, args):
        """Estimates supervised and pseudo-labelled training compute.  """
        from pesto.estimate import FlopsModel
        config = self._load_config(args)
        try:
            model = FlopsModel.from_config(config.flops)
        except (TypeError, ValueError) as e:
            raise ConfigError('Invalid flops settings: {}'.format(e))
        print(model.table().format())

    def cli_report(self, args):
        """Compares the reports of runs, writing comparison.csv.  """
        from pesto.report import (
            MetricsReport, compare_reports, load_run_reports)
        run_dirs = args['<run_dir>']
        reports = load_run_reports(run_dirs)
        baseline = args.get('--baseline')
        if baseline:
            baseline = MetricsReport.load(
                os.path.join(baseline, 'report.json'))
        names = [os.path.basename(os.path.normpath(d)) for d in run_dirs]
        table = compare_reports(reports, names, baseline)
        print(table.format())
        out = args.get('--out') or '.'
        os.makedirs(out, exist_ok=True)
        path = os.path.join(out, 'comparison.csv')
        with open(path, 'w') as f:
            f.write(table.csv())
        log.info('Comparison saved in {!r}.'.format(path))

    def main(self, argv=None):
        """Returns the exit status.  """
        args = docopt(
            self.usage(), argv=argv, version=meta()['__version__'])
        commands = self.commands()
        command = next(name for name in commands if args.get(name))
        try:
            commands[command](args)
        except PestoError as e:
            log.error('{}: {}'.format(e.__class__.__name__, e))
            return 1
        except KeyboardInterrupt:
            log.error('Interrupted.')
            return 130
        return 0
