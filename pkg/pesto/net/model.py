import json
import collections

import numpy as np

from pesto.log import log
from pesto.util import ShapeError, ArgumentError, FormatError
from pesto.net.layers import Dense, activations


class NetworkSpec(collections.namedtuple(
        'NetworkSpec', ['input_dim', 'hidden_dims', 'embedding_dim',
                        'activation'])):
    """Feature extractor shape; `embedding_dim` is its output width.  """
    __slots__ = ()

    def __new__(cls, input_dim, hidden_dims=(), embedding_dim=None,
                activation='relu'):
        hidden_dims = tuple(int(h) for h in hidden_dims)
        if embedding_dim is None:
            raise ArgumentError('An embedding dimension is required.')
        spec = super().__new__(
            cls, int(input_dim), hidden_dims, int(embedding_dim), activation)
        if any(d < 1 for d in spec.widths):
            raise ArgumentError(
                'All network widths must be positive, received {}.'
                .format(spec.widths))
        if activation not in activations:
            raise ArgumentError(
                'Unrecognized activation {!r}.'.format(activation))
        return spec

    @property
    def widths(self):
        return (self.input_dim, ) + self.hidden_dims + (self.embedding_dim, )

    def asdict(self):
        return {
            'input_dim': self.input_dim,
            'hidden_dims': list(self.hidden_dims),
            'embedding_dim': self.embedding_dim,
            'activation': self.activation,
        }


class ForwardCache(object):
    """Intermediate values of a forward pass kept for backpropagation.  """
    def __init__(self, inputs, preactivations, embeddings):
        super().__init__()
        self.inputs = inputs
        self.preactivations = preactivations
        self.embeddings = embeddings


class Model(object):
    """
    A feed-forward feature extractor followed by a growable linear
    classifier.  All arithmetic is carried out in float64.
    """
    checkpoint_version = 1

    def __init__(self, spec, layers, classifier):
        super().__init__()
        self.spec = spec
        self.layers = list(layers)
        self.classifier = classifier
        if classifier.in_units != spec.embedding_dim:
            raise ShapeError(
                'Classifier input width {} differs from embedding width {}.'
                .format(classifier.in_units, spec.embedding_dim))
        self._activate, self._activate_gradient = activations[spec.activation]

    @classmethod
    def initialize(cls, spec, rng, out_units=0):
        widths = spec.widths
        layers = [
            Dense.initialize(i, o, rng) for i, o in zip(widths, widths[1:])]
        classifier = Dense.initialize(spec.embedding_dim, out_units, rng)
        return cls(spec, layers, classifier)

    @property
    def out_units(self):
        return self.classifier.out_units

    def named_layers(self):
        for i, layer in enumerate(self.layers):
            yield 'layer{}'.format(i), layer
        yield 'classifier', self.classifier

    def parameters(self):
        """Yields `(name, array)` for every trainable parameter.  """
        for name, layer in self.named_layers():
            yield '{}.weights'.format(name), layer.weights
            yield '{}.biases'.format(name), layer.biases

    def set_parameter(self, name, value):
        layer_name, attr = name.split('.')
        layer = dict(self.named_layers())[layer_name]
        setattr(layer, attr, value)

    def _check_batch(self, batch):
        batch = np.asarray(batch, dtype=np.float64)
        if batch.ndim != 2 or batch.shape[1] != self.spec.input_dim:
            raise ShapeError(
                'Expecting a batch of shape (n, {}), received {}.'
                .format(self.spec.input_dim, batch.shape))
        return batch

    def embed(self, batch, cache=False):
        x = self._check_batch(batch)
        inputs, preactivations = [], []
        for layer in self.layers:
            inputs.append(x)
            z = layer.forward(x)
            preactivations.append(z)
            x = self._activate(z)
        if cache:
            return x, ForwardCache(inputs, preactivations, x)
        return x

    def forward(self, batch, cache=False):
        """
        Returns `(embeddings, logits)` for a batch of shape `(n, input_dim)`,
        and additionally the `ForwardCache` if `cache` is set.
        """
        embeddings, forward_cache = self.embed(batch, cache=True)
        logits = self.classifier.forward(embeddings)
        if cache:
            return embeddings, logits, forward_cache
        return embeddings, logits

    def backward(self, forward_cache, logits_gradient):
        """Backpropagates `∂L/∂logits` into gradients keyed by name.  """
        gradients = {}
        gradient, w, b = self.classifier.backward(
            forward_cache.embeddings, logits_gradient)
        gradients['classifier.weights'] = w
        gradients['classifier.biases'] = b
        iterer = reversed(list(enumerate(self.layers)))
        for i, layer in iterer:
            gradient = self._activate_gradient(
                forward_cache.preactivations[i], gradient)
            gradient, w, b = layer.backward(forward_cache.inputs[i], gradient)
            gradients['layer{}.weights'.format(i)] = w
            gradients['layer{}.biases'.format(i)] = b
        return gradients

    def predict(self, batch):
        """Returns the arg-max output unit for each sample.  """
        _, logits = self.forward(batch)
        if logits.shape[1] == 0:
            raise ShapeError('The classifier has no output units yet.')
        return np.argmax(logits, axis=1)

    def grow_classifier(self, new_classes, rng):
        """Appends `new_classes` freshly initialized output units.  """
        if new_classes < 1:
            raise ArgumentError(
                'The classifier must grow by at least one unit, '
                'received {}.'.format(new_classes))
        previous = self.out_units
        self.classifier.grow(new_classes, rng)
        log.debug(
            'Classifier grown from {} to {} units.'
            .format(previous, self.out_units))
        return self

    def copy(self):
        return self.__class__(
            self.spec, [l.copy() for l in self.layers],
            self.classifier.copy())

    def macs(self):
        """Multiply-accumulates of one forward pass of one sample.  """
        return sum(layer.macs for _, layer in self.named_layers())

    def save(self, path):
        meta = {
            'format': 'pesto-model',
            'version': self.checkpoint_version,
            'spec': self.spec.asdict(),
            'parameters': [name for name, _ in self.parameters()],
        }
        arrays = dict(self.parameters())
        with open(path, 'wb') as f:
            np.savez(f, __meta__=np.array(json.dumps(meta, sort_keys=True)),
                     **arrays)

    @classmethod
    def load(cls, path):
        with np.load(path, allow_pickle=False) as data:
            try:
                meta = json.loads(str(data['__meta__']))
            except KeyError:
                raise FormatError('Missing model metadata.', path)
            if meta.get('format') != 'pesto-model':
                raise FormatError('Not a model checkpoint.', path)
            if meta.get('version') != cls.checkpoint_version:
                raise FormatError(
                    'Unsupported checkpoint version {!r}.'
                    .format(meta.get('version')), path)
            spec = meta['spec']
            spec = NetworkSpec(
                spec['input_dim'], spec['hidden_dims'],
                spec['embedding_dim'], spec['activation'])
            num_layers = len(spec.widths) - 1
            layers = [
                Dense(data['layer{}.weights'.format(i)],
                      data['layer{}.biases'.format(i)])
                for i in range(num_layers)]
            classifier = Dense(
                data['classifier.weights'], data['classifier.biases'])
        return cls(spec, layers, classifier)
