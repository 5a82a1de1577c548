from common import TestCase

import os
import tempfile
import unittest.mock

import yaml

from pesto.log import log
from pesto.util import ConfigError
from pesto.parse import _DotDict, ConfigBase
from pesto.config import Config


root = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))


class TestDotDict(TestCase):
    def setUp(self):
        self.data = {'seed': 7, 'train': {'epochs': 60}}
        self.d = _DotDict(self.data)

    def test_rejects_non_mapping(self):
        with self.assertRaises(TypeError):
            _DotDict([('seed', 7)])

    def test_dotted_keys_expand(self):
        d = _DotDict({'pseudo.settings': {'alpha.value': 0.85}})
        self.assertDictEqual(
            d.asdict(), {'pseudo': {'settings': {'alpha': {'value': 0.85}}}})

    def test_shared_prefixes_merge(self):
        d = _DotDict({'train.epochs': 5, 'train.batch_size': 16})
        self.assertDictEqual(
            d.asdict(), {'train': {'epochs': 5, 'batch_size': 16}})

    def test_merge_is_deep(self):
        self.d.merge({'seed': 3, 'train': {'momentum': 0.9}})
        self.assertDictEqual(
            self.d.asdict(),
            {'seed': 3, 'train': {'epochs': 60, 'momentum': 0.9}})

    def test_merge_dotted(self):
        self.d.merge({'train.epochs': 2})
        self.assertEqual(self.d['train.epochs'], 2)
        self.assertEqual(self.d.seed, 7)

    def test_lookup(self):
        self.assertEqual(self.d.train.epochs, 60)
        self.assertEqual(self.d['train']['epochs'], 60)
        self.assertEqual(self.d['train.epochs'], 60)
        with self.assertRaises(AttributeError):
            self.d.missing
        with self.assertRaises(KeyError):
            self.d['train.missing']

    def test_views_share_storage(self):
        train = self.d.train
        train.epochs = 4
        self.assertEqual(self.d['train.epochs'], 4)
        self.d['train.batch_size'] = 32
        self.assertEqual(train.batch_size, 32)

    def test_set_creates_parents(self):
        self.d['memory.budget'] = 40
        self.assertEqual(self.d.memory.budget, 40)

    def test_delete(self):
        del self.d['train.epochs']
        self.assertNotIn('train.epochs', self.d)
        self.assertIn('train', self.d)

    def test_contains(self):
        self.assertIn('train.epochs', self.d)
        self.assertNotIn('train.decay', self.d)
        self.assertNotIn('seed.value', self.d)

    def test_source_is_not_mutated(self):
        self.d.train.epochs = 1
        self.assertEqual(self.data['train']['epochs'], 60)

    def test_iteration(self):
        self.assertListEqual(sorted(self.d), ['seed', 'train'])
        self.assertEqual(len(self.d), 2)


class TestConfigBase(TestCase):
    def setUp(self):
        self.config = ConfigBase()
        self.config.merge({'a': {'b': 1, 'c': None}}, schema=True)

    def test_hook(self):
        def hook():
            raise NotImplementedError
        self.config.set('_merge_hook', {'a.b': hook})
        with self.assertRaises(NotImplementedError):
            self.config.merge({'a.b': 1})

    def test_schema(self):
        self.config.merge({'a.c': [1, 2]})
        self.assertEqual(self.config.a.c, [1, 2])
        with self.assertRaises(ConfigError):
            self.config.merge({'a.d': 1})

    def test_override_update(self):
        self.config.override_update('a.b', '[3, 4]')
        self.assertEqual(self.config.a.b, [3, 4])
        self.config.override_update('a.c', 'null')
        self.assertIsNone(self.config.a.c)

    def test_yaml_export(self):
        self.assertDictEqual(
            yaml.safe_load(self.config.to_yaml()), self.config._mapping)


class TestConfig(TestCase):
    def setUp(self):
        self.level = log.level
        self.config = Config()

    def tearDown(self):
        log.level = self.level

    def test_system(self):
        self.assertIn('system.seed', self.config)
        self.assertEqual(self.config.pseudo.alpha, 0.85)
        self.assertEqual(self.config.memory.budget, 2000)

    def test_import(self):
        self.config.yaml_update(
            os.path.join(root, 'experiments', 'gaussian10_wa.yaml'))
        self.assertEqual(self.config.strategy.type, 'wa')
        self.assertEqual(self.config.memory.budget, 200)
        self.assertEqual(self.config.train.learning_rate, 0.05)

    def test_json(self):
        self.config.yaml_update(os.path.join(root, 'experiments', 'tiny.json'))
        self.assertEqual(self.config.pseudo.tau, 2)
        self.assertEqual(self.config.model.hidden, [16])

    def test_missing_file(self):
        with self.assertRaises(ConfigError):
            self.config.yaml_update('no/such/file.yaml')

    def test_unknown_key(self):
        with self.assertRaises(ConfigError):
            self.config.override_update('pseudo.alpah', '0.5')
        with self.assertRaises(ConfigError):
            self.config.override_update('dataset.path.extra', 'x.csv')
        with tempfile.TemporaryDirectory() as d:
            path = os.path.join(d, 'bad.yaml')
            with open(path, 'w') as f:
                f.write('memory:\n    budjet: 10\n')
            with self.assertRaises(ConfigError):
                self.config.yaml_update(path)

    def test_views(self):
        spec = self.config.network_spec(16)
        self.assertEqual(spec.input_dim, 16)
        self.assertEqual(spec.embedding_dim, 32)
        self.assertEqual(self.config.strategy_spec().kind, 'wa')
        cfg = self.config.train_config()
        self.assertEqual(cfg.lr_decay_epochs, (30, 45))
        self.assertFalse(cfg.class_weighting)
        self.assertEqual(
            self.config.pseudo_settings(), (0.85, 10, 100, 10))
        self.assertEqual(self.config.stream_settings(), (4, 2, 1993))

    def test_invalid_views(self):
        self.config.override_update('pseudo.alpha', '1.5')
        with self.assertRaises(ConfigError):
            self.config.pseudo_settings()
        self.config.override_update('strategy.type', 'foster')
        with self.assertRaises(ConfigError):
            self.config.strategy_spec()
        self.config.override_update('strategy.type', 'icarl')
        self.config.override_update('train.decay_epochs', '[70]')
        with self.assertRaises(ConfigError):
            self.config.train_config()

    def test_round_trip(self):
        self.config.override_update('system.seed', '7')
        with tempfile.TemporaryDirectory() as d:
            path = os.path.join(d, 'config.yaml')
            self.config.to_yaml(path)
            other = Config()
            other.yaml_update(path)
        self.assertDictEqual(other._mapping, self.config._mapping)

    def test_log_level(self):
        self.config.override_update('system.log.level', 'warn')
        self.assertEqual(log.level, 'warn')
        with unittest.mock.patch.dict(os.environ, {'ICPL_LOG': 'debug'}):
            self.config.override_update('system.log.level', 'error')
            self.assertEqual(log.level, 'debug')
        with self.assertRaises(ConfigError):
            self.config.override_update('system.log.level', 'loud')
