import os
import time
import hashlib

import numpy as np
import yaml

from pesto.log import log
from pesto.net import Model
from pesto.data import load_dataset
from pesto.task import build_stream
from pesto.memory import ExemplarMemory
from pesto.strategy import create_strategy
from pesto.cluster import generate_pseudo_labels, align_clusters
from pesto.assign import EncodingTable, identity_encoding, extend_encoding
from pesto.metrics import top1_static, cluster_accuracy, nmi, ari
from pesto.report import MetricsReport
from pesto.estimate import estimate_run
from pesto.session.checkpoint import CheckpointHandler


def config_variant(config):
    """Fingerprint of a configuration, ignoring `system.seed`.  """
    mapping = config.asdict()
    mapping['system'].pop('seed', None)
    mapping['system'].pop('log', None)
    text = yaml.safe_dump(mapping, sort_keys=True)
    return hashlib.sha1(text.encode('utf-8')).hexdigest()[:10]


class IncrementalSession(object):
    """
    Trains one model through a task stream.

    The first task (every task, for supervised reference runs) is trained
    on its labels.  Later tasks are trained on confidence-selected
    pseudo-labels, regenerated every `tau` epochs from the current
    embeddings, and receive their encoding entries from the final
    pseudo-labels once the task is trained.
    """
    def __init__(self, config, stream, out_dir=None):
        super().__init__()
        self.config = config
        self.stream = stream
        self.out_dir = out_dir
        self.checkpoint = CheckpointHandler(out_dir) if out_dir else None
        self.strategy_spec = config.strategy_spec()
        self.train_config = config.train_config()
        self.alpha, self.tau, self.max_iter, self.n_init = \
            config.pseudo_settings()
        seeds = np.random.SeedSequence(config.system.seed).spawn(3)
        self.init_rng, self.train_rng, self.cluster_rng = [
            np.random.default_rng(s) for s in seeds]
        self.model = None
        self.encoding = EncodingTable()
        self.memory = ExemplarMemory(config.memory.budget)
        self.report = MetricsReport(self._meta())
        self.samples_trained = 0
        self.regenerations = []
        self._timings = []

    def _meta(self):
        config = self.config
        return {
            'dataset': config.dataset.name,
            'strategy': self.strategy_spec.kind,
            'strategy_spec': self.strategy_spec.asdict(),
            'supervised': bool(config.stream.supervised),
            'seed': int(config.system.seed),
            'alpha': self.alpha,
            'tau': self.tau,
            'memory_budget': int(config.memory.budget),
            'epochs': self.train_config.epochs,
            'stream': self.stream.signature(),
            'variant': config_variant(config),
        }

    def _initialize_model(self, task):
        spec = self.config.network_spec(task.samples.shape[1])
        self.model = Model.initialize(spec, self.init_rng)
        log.info(
            'Network {} with {} multiply-accumulates per sample.'
            .format(list(spec.widths), self.model.macs()))

    def _due(self, epoch):
        if self.tau is None:
            return epoch == 0
        return epoch % self.tau == 0

    def _train(self, strategy, task, samples, targets, old_units, old_model,
               relabel=None):
        strategy.train(
            self.model, samples, targets, self.memory, self.train_config,
            old_units=old_units, rng=self.train_rng, relabel=relabel,
            old_model=old_model, task_id=task.task_id)
        self.samples_trained += strategy.samples_trained

    def _remember(self, unit_ids, groups):
        embeddings = [self.model.embed(g) for g in groups]
        self.memory.rebalance(unit_ids, groups, embeddings)

    def _labeled_task(self, task):
        strategy = create_strategy(self.strategy_spec)
        old_units = self.model.out_units
        old_model = strategy.before_task(self.model)
        k = len(task.classes)
        self.model.grow_classifier(k, self.init_rng)
        unit_ids = list(range(old_units, old_units + k))
        units = dict(zip(task.classes, unit_ids))
        targets = np.array([units[c] for c in task.labels], dtype=np.int64)
        self._train(
            strategy, task, task.samples, targets, old_units, old_model)
        self.encoding = identity_encoding(
            self.encoding, unit_ids, task.classes)
        self._remember(
            unit_ids, [task.samples[task.labels == c] for c in task.classes])

    def _pseudo_labels(self, task, previous, epoch):
        embeddings = self.model.embed(task.samples)
        k = len(task.classes)
        labels = generate_pseudo_labels(
            embeddings, k, self.alpha, self.cluster_rng,
            self.max_iter, self.n_init)
        if previous is not None:
            labels = labels.relabel(
                align_clusters(previous.centers, labels.centers))
        self.regenerations.append(
            (len(labels), k, self.max_iter * self.n_init))
        self._record_regeneration(task, labels, epoch)
        return labels

    def _record_regeneration(self, task, labels, epoch):
        # hidden labels serve evaluation only
        truth = task.reveal_labels()[labels.selected]
        predicted = labels.pseudo_labels[labels.selected]
        if len(truth) >= 2:
            mutual, rand = nmi(predicted, truth), ari(predicted, truth)
        else:
            mutual = rand = 0.0
        self.report.add_regeneration(
            task.task_id, epoch, len(labels), labels.num_selected,
            mutual, rand)
        log.debug(
            'Task {} epoch {}: {:.1%} selected, NMI {:.4f}, ARI {:.4f}.'
            .format(task.task_id, epoch, labels.selected_fraction,
                    mutual, rand))

    def _unlabeled_task(self, task):
        strategy = create_strategy(self.strategy_spec)
        old_units = self.model.out_units
        old_model = strategy.before_task(self.model)
        k = len(task.classes)
        self.model.grow_classifier(k, self.init_rng)
        unit_ids = list(range(old_units, old_units + k))
        state = {'labels': None}

        def relabel(model, epoch):
            if not self._due(epoch):
                return None
            labels = self._pseudo_labels(task, state['labels'], epoch)
            state['labels'] = labels
            return (
                task.samples[labels.selected],
                old_units + labels.pseudo_labels[labels.selected])

        self._train(
            strategy, task, None, None, old_units, old_model, relabel)
        if state['labels'] is None:
            # no epoch was trained
            relabel(self.model, 0)
        labels = state['labels']
        self.encoding = extend_encoding(
            self.encoding, self._contingency(task, labels), unit_ids,
            task.classes)
        selected = task.samples[labels.selected]
        units = labels.pseudo_labels[labels.selected]
        self._remember(unit_ids, [selected[units == j] for j in range(k)])

    def _contingency(self, task, labels):
        # hidden labels serve encoding only
        truth = task.reveal_labels()
        columns = {c: j for j, c in enumerate(task.classes)}
        table = np.zeros((len(task.classes), len(task.classes)))
        np.add.at(
            table, (labels.pseudo_labels, [columns[c] for c in truth]), 1)
        return table

    def _evaluate(self, index):
        task = self.stream[index]
        samples, truth = self.stream.union_test_set(index)
        predictions = self.model.predict(samples)
        top1 = top1_static(predictions, self.encoding, truth)
        cacc = cluster_accuracy(predictions, truth)
        self.report.add_task(
            task.task_id, top1, cacc, self.stream.seen_classes(index),
            len(truth))
        log.key(
            'Task {}: top-1 {:.2f}%, cluster accuracy {:.2f}% on {} test '
            'samples.'.format(task.task_id, top1, cacc, len(truth)))

    def _save(self, key):
        if not self.out_dir:
            return
        if self.model is not None:
            self.checkpoint.save(key, self.model, self.memory)
        self.encoding.save(os.path.join(self.out_dir, 'encoding.json'))
        self.report.compute = self._compute()
        self.report.save(os.path.join(self.out_dir, 'report.json'))
        self.report.save_curve(os.path.join(self.out_dir, 'curve.csv'))
        with open(os.path.join(self.out_dir, 'timing.log'), 'w') as f:
            for task_id, seconds in self._timings:
                f.write('task {}: {:.3f}s\n'.format(task_id, seconds))

    def _compute(self):
        if self.model is None:
            return {}
        return estimate_run(
            self.model.macs(), self.samples_trained, self.regenerations,
            self.model.spec.embedding_dim)

    def run(self):
        if self.out_dir:
            os.makedirs(self.out_dir, exist_ok=True)
            self.config.to_yaml(os.path.join(self.out_dir, 'config.yaml'))
        try:
            for index, task in enumerate(self.stream):
                log.info('Starting {!r}.'.format(task))
                tic = time.perf_counter()
                if self.model is None:
                    self._initialize_model(task)
                if task.labeled:
                    self._labeled_task(task)
                else:
                    self._unlabeled_task(task)
                self._evaluate(index)
                self._timings.append(
                    (task.task_id, time.perf_counter() - tic))
                self._save(task.task_id)
        except Exception:
            log.error('Run aborted, saving the partial state.')
            self._save('abort')
            raise
        log.key(
            'Final accuracy {:.2f}%, average accuracy {:.2f}%.'
            .format(self.report.final_accuracy,
                    self.report.average_accuracy))
        return self.report


def build_session(config, out_dir=None):
    train, test = load_dataset(config)
    base, increment, seed = config.stream_settings()
    stream = build_stream(
        train, test, base, increment, seed, config.stream.supervised)
    return IncrementalSession(config, stream, out_dir)


def run_incremental(stream, config, out_dir=None):
    return IncrementalSession(config, stream, out_dir).run()
