from common import TestCase, random_model, blobs

import numpy as np

from pesto.util import ArgumentError, NumericalError
from pesto.net import TrainConfig, compute_loss, cross_entropy, one_hot
from pesto.memory import ExemplarMemory
from pesto.strategy import (
    StrategySpec, ICaRL, WA, Replay, weight_align, strategy_class,
    create_strategy, run_task_training)


def row_norms(model):
    return np.linalg.norm(model.classifier.weights, axis=1)


class TestWeightAlign(TestCase):
    def _model(self, old_scale, new_scale):
        model = random_model(embedding=3, out_units=4)
        weights = np.zeros((4, 3))
        weights[:2, 0] = old_scale
        weights[2:, 1] = new_scale
        model.classifier.weights = weights
        model.classifier.biases = np.array([0.1, 0.2, 0.3, 0.4])
        return model

    def test_equal_norms(self):
        model = self._model(1.0, 1.0)
        before = model.classifier.weights.copy()
        weight_align(model, 2)
        self.assertAllClose(model.classifier.weights, before)
        self.assertAllClose(model.classifier.biases, [0.1, 0.2, 0.3, 0.4])

    def test_halved(self):
        model = self._model(1.0, 2.0)
        weight_align(model, 2)
        self.assertAllClose(row_norms(model), [1.0, 1.0, 1.0, 1.0])
        self.assertAllClose(model.classifier.biases, [0.1, 0.2, 0.15, 0.2])

    def test_random_models(self):
        inputs = np.random.default_rng(100).normal(size=(100, 5))
        for seed in range(20):
            model = random_model(out_units=5, seed=seed)
            old_weights = model.classifier.weights[:3].copy()
            old_biases = model.classifier.biases[:3].copy()
            _, logits = model.forward(inputs)
            before = np.argmax(logits[:, 3:], axis=1)
            weight_align(model, 3)
            self.assertArrayEqual(model.classifier.weights[:3], old_weights)
            self.assertArrayEqual(model.classifier.biases[:3], old_biases)
            norms = row_norms(model)
            self.assertLess(abs(norms[:3].mean() - norms[3:].mean()), 1e-9)
            _, logits = model.forward(inputs)
            self.assertArrayEqual(np.argmax(logits[:, 3:], axis=1), before)

    def test_errors(self):
        with self.assertRaises(ArgumentError):
            weight_align(self._model(1.0, 1.0), 0)
        with self.assertRaises(ArgumentError):
            weight_align(self._model(1.0, 1.0), 4)
        with self.assertRaises(NumericalError):
            weight_align(self._model(1.0, 0.0), 2)


class TestSpec(TestCase):
    def test_defaults(self):
        wa = StrategySpec.create('wa')
        self.assertEqual(wa.use_mixup, wa.use_class_weights, False)
        self.assertEqual(wa.distill_weight, 0.0)
        icarl = StrategySpec.create('icarl')
        self.assertEqual(icarl.use_mixup, icarl.use_class_weights, True)
        self.assertEqual(icarl.distill_weight, 1.0)
        replay = StrategySpec.create('replay', mixup=False)
        self.assertFalse(replay.use_mixup)
        self.assertTrue(replay.use_class_weights)

    def test_registry(self):
        self.assertIs(strategy_class('wa'), WA)
        self.assertIsInstance(
            create_strategy(StrategySpec.create('replay')), Replay)
        with self.assertRaises(ArgumentError):
            strategy_class('foster')
        with self.assertRaises(ArgumentError):
            StrategySpec.create('icarl', temperature=0)

    def test_train_config(self):
        strategy = create_strategy(StrategySpec.create('wa'))
        cfg = strategy.train_config(TrainConfig(mixup_alpha=0.4))
        self.assertEqual(cfg.mixup_alpha, 0.0)
        self.assertFalse(cfg.class_weighting)
        self.assertEqual(cfg.distill_weight, 0.0)


class TestTraining(TestCase):
    def _config(self, **kwargs):
        options = dict(
            epochs=30, batch_size=8, lr=0.1, lr_decay_epochs=(),
            rng_seed=0)
        options.update(kwargs)
        return TrainConfig(**options)

    def test_separable(self):
        samples, labels = blobs([[3.0, 3.0], [-3.0, -3.0]], 20, 0.1)
        model = random_model(input_dim=2, hidden=(8, ), embedding=4,
                             out_units=2)
        spec = StrategySpec.create('replay', mixup=False)
        run_task_training(model, samples, labels, None, spec,
                          self._config(lr=0.05))
        self.assertArrayEqual(model.predict(samples), labels)

    def test_icarl_initial_distillation(self):
        model = random_model(out_units=4)
        strategy = create_strategy(StrategySpec.create('icarl'))
        old_model = strategy.before_task(model)
        model.grow_classifier(2, np.random.default_rng(1))
        batch = np.random.default_rng(2).normal(size=(6, 5))
        targets = one_hot(np.array([0, 1, 2, 3, 4, 5]), 6)
        cfg = strategy.train_config(self._config())
        loss, _ = compute_loss(model, batch, targets, old_model, cfg)
        _, logits = model.forward(batch)
        expected, _ = cross_entropy(logits, targets)
        self.assertAlmostEqual(loss, expected)

    def test_icarl_without_units(self):
        model = random_model(out_units=0)
        strategy = create_strategy(StrategySpec.create('icarl'))
        self.assertIsNone(strategy.before_task(model))

    def test_wa_aligns_after_task(self):
        rng = np.random.default_rng(3)
        samples, labels = blobs(rng.normal(0, 3, (4, 5)), 10, 0.2)
        model = random_model(out_units=4)
        spec = StrategySpec.create('wa')
        run_task_training(model, samples, labels, None, spec,
                          self._config(epochs=3), old_units=2)
        norms = row_norms(model)
        self.assertAlmostEqual(norms[:2].mean(), norms[2:].mean())

    def test_relabel_and_memory(self):
        rng = np.random.default_rng(4)
        samples, labels = blobs([[1.0] * 5, [-1.0] * 5], 6, 0.1)
        memory = ExemplarMemory(4)
        memory.rebalance([0, 1], [samples[:6], samples[6:]],
                         [samples[:6], samples[6:]])
        calls = []

        def relabel(model, epoch):
            calls.append(epoch)
            if epoch == 0:
                return samples, rng.integers(0, 2, len(samples))

        model = random_model(out_units=2)
        strategy = create_strategy(StrategySpec.create('replay'))
        strategy.train(model, None, None, memory, self._config(epochs=3),
                       relabel=relabel)
        self.assertEqual(calls, [0, 1, 2])
        self.assertEqual(strategy.samples_trained, 3 * (12 + 4))

    def _after_second_task(self, kind, base, second, seed):
        model = base.copy()
        strategy = create_strategy(StrategySpec.create(kind, mixup=False))
        old_model = strategy.before_task(model)
        model.grow_classifier(2, np.random.default_rng(seed))
        # no memory, so nothing of the first task is rehearsed
        strategy.train(
            model, second[0], second[1], None,
            self._config(epochs=20, rng_seed=seed),
            old_units=2, old_model=old_model)
        return model

    def test_distillation_reduces_forgetting(self):
        retained = {'replay': [], 'icarl': []}
        for seed in range(5):
            centers = np.random.default_rng(seed).normal(0, 3, (4, 5))
            samples, labels = blobs(centers, 20, 0.3, seed)
            test, test_labels = blobs(centers[:2], 10, 0.3, seed + 100)
            base = random_model(
                input_dim=5, hidden=(8, ), embedding=4, out_units=2,
                seed=seed)
            run_task_training(
                base, samples[:40], labels[:40], None,
                StrategySpec.create('replay', mixup=False),
                self._config(epochs=20, rng_seed=seed))
            second = (samples[40:], labels[40:])
            for kind, accuracies in retained.items():
                model = self._after_second_task(kind, base, second, seed)
                accuracies.append(
                    np.mean(model.predict(test) == test_labels))
        self.assertGreaterEqual(
            np.mean(retained['icarl']), np.mean(retained['replay']),
            msg=str(retained))
