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

"""Gaussian naive Bayes."""

from __future__ import annotations

import dataclasses
from typing import Any

import numpy as np
from scipy import special

from py_spam_graph.dataset import dataset
from py_spam_graph.models import model

VARIANCE_FLOOR = 1e-9


@dataclasses.dataclass(frozen=True)
class NaiveBayesModel:
  """Per-class feature means and variances plus class log priors.

  Row k of means and variances belongs to class k.
  """

  means: np.ndarray
  variances: np.ndarray
  log_priors: np.ndarray

  def to_dict(self) -> dict[str, Any]:
    return {
        'log_priors': self.log_priors.tolist(),
        'means': self.means.tolist(),
        'variances': self.variances.tolist(),
    }


def train_naive_bayes(x, y) -> NaiveBayesModel:
  """Fit class-conditional independent Gaussians.

  Raises:
    EmptyData: No rows.
    SingleClass: One class only.
  """
  x, y = model.check_training_data(x, y)
  means, variances, priors = [], [], []
  for label in dataset.LABELS:
    rows = x[y == label]
    means.append(rows.mean(axis=0))
    variances.append(np.maximum(rows.var(axis=0), VARIANCE_FLOOR))
    priors.append(len(rows) / len(x))
  return NaiveBayesModel(
      means=np.array(means),
      variances=np.array(variances),
      log_priors=np.log(priors),
  )


def joint_log_likelihood(m: NaiveBayesModel, x) -> np.ndarray:
  """log P(class) + log p(x | class), shape (rows, 2)."""
  x = model.check_dimension(x, m.means.shape[1])
  diff = x[:, None, :] - m.means[None, :, :]
  log_density = -0.5 * (
      np.log(2 * np.pi * m.variances)[None, :, :] + diff**2 / m.variances
  ).sum(axis=2)
  return log_density + m.log_priors[None, :]


def posterior_naive_bayes(m: NaiveBayesModel, x) -> np.ndarray:
  """Class posteriors, shape (rows, 2), rows summing to 1."""
  joint = joint_log_likelihood(m, x)
  return np.exp(joint - special.logsumexp(joint, axis=1, keepdims=True))


class NaiveBayesClassifier(model.Classifier):

  kind = model.ModelKind.NAIVE_BAYES

  def __init__(self, seed: int = 0) -> None:
    del seed  # no random draws
    self.model: NaiveBayesModel | None = None

  def fit(self, x, y) -> NaiveBayesClassifier:
    self.model = train_naive_bayes(x, y)
    return self

  def predict_proba(self, x) -> np.ndarray:
    return posterior_naive_bayes(self.model, x)[:, dataset.SPAM]

  def predict(self, x) -> np.ndarray:
    """Maximum posterior class; ties go to class 0."""
    return np.argmax(joint_log_likelihood(self.model, x), axis=1)

  def to_dict(self) -> dict[str, Any]:
    return {'kind': self.kind.value, 'model': self.model.to_dict()}
