"""
Analytical compute-cost model of training with pseudo-labels.

All costs are in GFLOPs.  A supervised run pays for training only, an
unsupervised one also for regenerating pseudo-labels (an inference pass
over the task's samples plus KMeans) a number of times per task.
"""
import collections

from pesto.util import ArgumentError, Percent, Table


def _check(**values):
    for name, value in values.items():
        if value is None or value < 0:
            raise ArgumentError(
                '{} must be non-negative, received {!r}.'.format(name, value))


def kmeans_gflops(iterations, samples, dim, clusters):
    _check(iterations=iterations, samples=samples, dim=dim, clusters=clusters)
    return iterations * samples * dim * clusters / 1e9


def pseudo_label_gflops(inference_gflops, samples, kmeans):
    _check(inference_gflops=inference_gflops, samples=samples, kmeans=kmeans)
    return inference_gflops * samples + kmeans


def supervised_gflops(samples, epochs, training_gflops):
    _check(samples=samples, epochs=epochs, training_gflops=training_gflops)
    return samples * epochs * training_gflops


def unsupervised_gflops(
        samples, epochs, training_gflops, recompute_count, pseudo_label):
    _check(samples=samples, epochs=epochs, training_gflops=training_gflops,
           recompute_count=recompute_count, pseudo_label=pseudo_label)
    return samples * epochs * training_gflops + recompute_count * pseudo_label


def literal_recompute_count(epochs, tau):
    """`1 + floor(epochs / tau)`, or a single computation without `tau`.  """
    if tau is None:
        return 1
    if tau < 1:
        raise ArgumentError('tau must be a positive integer.')
    return 1 + epochs // tau


def forward_gflops(macs):
    """A multiply-accumulate counts as two floating-point operations.  """
    return 2 * macs / 1e9


def training_gflops(macs):
    """Forward plus backward, taken as three forward passes.  """
    return 3 * forward_gflops(macs)


_flops_fields = [
    'kmeans_iterations', 'samples', 'embedding_dim', 'clusters',
    'inference_gflops', 'training_gflops', 'epochs', 'tau',
    'supervised_samples', 'unsupervised_samples', 'recompute_count']


class FlopsModel(collections.namedtuple('FlopsModel', _flops_fields)):
    __slots__ = ()

    @classmethod
    def from_config(cls, flops):
        return cls(**{k: flops[k] for k in _flops_fields}).validate()

    def validate(self):
        _check(**{
            k: v for k, v in self._asdict().items()
            if k not in ('tau', 'recompute_count')})
        if self.tau is not None and self.tau < 1:
            raise ArgumentError('tau must be a positive integer or null.')
        if self.recompute_count is not None and self.recompute_count < 1:
            raise ArgumentError('The recompute count must be at least 1.')
        return self

    @property
    def kmeans(self):
        return kmeans_gflops(
            self.kmeans_iterations, self.samples, self.embedding_dim,
            self.clusters)

    @property
    def pseudo_label(self):
        return pseudo_label_gflops(
            self.inference_gflops, self.samples, self.kmeans)

    @property
    def supervised(self):
        return supervised_gflops(
            self.supervised_samples, self.epochs, self.training_gflops)

    @property
    def literal_recompute_count(self):
        return literal_recompute_count(self.epochs, self.tau)

    def recompute_counts(self):
        """The literal count, then the explicit one if it differs.  """
        counts = [self.literal_recompute_count]
        if self.recompute_count not in (None, counts[0]):
            counts.append(self.recompute_count)
        return counts

    def unsupervised(self, recompute_count):
        return unsupervised_gflops(
            self.unsupervised_samples, self.epochs, self.training_gflops,
            recompute_count, self.pseudo_label)

    def reduction(self, recompute_count):
        """Percentage saved by the unsupervised run.  """
        if not self.supervised:
            return 0.0
        unsupervised = self.unsupervised(recompute_count)
        return 100.0 * (1 - unsupervised / self.supervised)

    def pseudo_label_share(self, recompute_count):
        total = self.unsupervised(recompute_count)
        if not total:
            return 0.0
        return 100.0 * recompute_count * self.pseudo_label / total

    def table(self):
        table = Table(['quantity', 'recomputations', 'GFLOPs', 'percent'])
        table.add_rows([
            ['kmeans', None, self.kmeans, None],
            ['pseudo-labels', None, self.pseudo_label, None],
            ['supervised', None, self.supervised, None],
        ])
        table.add_rule()
        for count in self.recompute_counts():
            table.add_rows([
                ['unsupervised', count, self.unsupervised(count), None],
                ['reduction', count, None, Percent(self.reduction(count))],
                ['pseudo-label share', count, None,
                 Percent(self.pseudo_label_share(count))],
            ])
        return table


def estimate_run(macs, sample_epochs, regenerations, embedding_dim):
    """
    Compute estimate of a finished run from the network's per-sample
    multiply-accumulates.  `regenerations` lists, for each pseudo-label
    computation, `(samples, clusters, kmeans_iterations)`.
    """
    training = sample_epochs * training_gflops(macs)
    pseudo = 0.0
    for samples, clusters, iterations in regenerations:
        kmeans = kmeans_gflops(iterations, samples, embedding_dim, clusters)
        pseudo += pseudo_label_gflops(forward_gflops(macs), samples, kmeans)
    total = training + pseudo
    return {
        'macs_per_sample': int(macs),
        'sample_epochs': int(sample_epochs),
        'regenerations': len(regenerations),
        'training_gflops': training,
        'pseudo_label_gflops': pseudo,
        'total_gflops': total,
        'pseudo_label_share': 100.0 * pseudo / total if total else 0.0,
    }
