from pesto.net.layers import Dense
from pesto.net.model import NetworkSpec, Model
from pesto.net.loss import (
    softmax, log_softmax, one_hot, cross_entropy, distillation, class_weights)
from pesto.net.optimizer import MomentumOptimizer, step_decay
from pesto.net.augment import mixup, gaussian_noise
from pesto.net.train import TrainConfig, compute_loss, train_step


__all__ = [
    Dense, NetworkSpec, Model,
    softmax, log_softmax, one_hot, cross_entropy, distillation, class_weights,
    MomentumOptimizer, step_decay, mixup, gaussian_noise,
    TrainConfig, compute_loss, train_step,
]
