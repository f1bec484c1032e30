# Copyright 2026 The py-spam-graph Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""L2-regularized logistic regression trained by full-batch gradient descent."""

from __future__ import annotations

import dataclasses
import logging
import math
from typing import Any

import numpy as np
from scipy import special

from py_spam_graph.models import model


@dataclasses.dataclass(frozen=True)
class LogRegModel:
  weights: np.ndarray
  bias: float

  def to_dict(self) -> dict[str, Any]:
    return {'bias': self.bias, 'weights': [float(w) for w in self.weights]}

  @classmethod
  def from_dict(cls, data: dict[str, Any]) -> LogRegModel:
    return cls(np.array(data['weights'], dtype=np.float64), float(data['bias']))


def logreg_loss(
    weights: np.ndarray, bias: float, x: np.ndarray, y: np.ndarray, l2: float
) -> float:
  """Mean logistic loss plus l2 / 2 * |weights|^2."""
  margin = x @ weights + bias
  # log(1 + e^m) - y * m is the logistic loss written on the margin
  data_loss = np.mean(np.logaddexp(0.0, margin) - y * margin)
  return float(data_loss + 0.5 * l2 * weights @ weights)


def logreg_gradient(
    weights: np.ndarray, bias: float, x: np.ndarray, y: np.ndarray, l2: float
) -> tuple[np.ndarray, float]:
  """Gradient of logreg_loss with respect to (weights, bias)."""
  residual = special.expit(x @ weights + bias) - y
  return x.T @ residual / len(y) + l2 * weights, float(residual.mean())


def train_logreg(
    x,
    y,
    lr: float = 0.1,
    epochs: int = 200,
    l2: float = 1e-4,
    seed: int = 0,
) -> LogRegModel:
  """Gradient descent from zero weights and the log-odds bias.

  seed is accepted for a uniform training signature; the descent itself is
  deterministic.

  Raises:
    EmptyData: No rows.
    SingleClass: One class only.
  """
  del seed
  x, y = model.check_training_data(x, y)
  prevalence = float(y.mean())
  weights = np.zeros(x.shape[1])
  bias = math.log(prevalence / (1 - prevalence))
  for epoch in range(epochs):
    grad_w, grad_b = logreg_gradient(weights, bias, x, y, l2)
    weights = weights - lr * grad_w
    bias = bias - lr * grad_b
    if epoch % 50 == 0:
      logging.debug(
          'LR epoch %d: loss %.6f', epoch, logreg_loss(weights, bias, x, y, l2)
      )
  return LogRegModel(weights=weights, bias=bias)


def predict_logreg(m: LogRegModel, x) -> np.ndarray:
  x = model.check_dimension(x, len(m.weights))
  return special.expit(x @ m.weights + m.bias)


class LogisticRegressionClassifier(model.Classifier):

  kind = model.ModelKind.LOGREG

  def __init__(
      self,
      lr: float = 0.1,
      epochs: int = 200,
      l2: float = 1e-4,
      seed: int = 0,
  ) -> None:
    self.lr = lr
    self.epochs = epochs
    self.l2 = l2
    self.seed = seed
    self.model: LogRegModel | None = None

  def fit(self, x, y) -> LogisticRegressionClassifier:
    self.model = train_logreg(x, y, self.lr, self.epochs, self.l2, self.seed)
    return self

  def predict_proba(self, x) -> np.ndarray:
    return predict_logreg(self.model, x)

  def to_dict(self) -> dict[str, Any]:
    return {
        'kind': self.kind.value,
        'config': {
            'epochs': self.epochs,
            'l2': self.l2,
            'lr': self.lr,
            'seed': self.seed,
        },
        'model': self.model.to_dict(),
    }
