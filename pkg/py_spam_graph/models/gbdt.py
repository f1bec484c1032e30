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

"""Gradient boosted decision trees on the logistic loss."""

from __future__ import annotations

from collections.abc import Iterator
import dataclasses
import logging
import math
from typing import Any

import numpy as np
from scipy import special

from py_spam_graph.models import model
from py_spam_graph.models import tree
from py_spam_graph.util import errors
from py_spam_graph.util import json_dataclass

MAX_SEED = 2**64
PREVALENCE_EPS = 1e-6


@dataclasses.dataclass
class TrainConfig(json_dataclass.DataClassJsonMixIn):
  """The config of GBDT training.

  Attributes:
    learning_rate (float): Shrinkage of every tree, in (0, 1].
    max_depth (int): Maximum tree depth.
    num_rounds (int): Number of trees.
    lambda_l2 (float): L2 penalty on leaf weights.
    min_child_cover (float): Minimum hessian sum of a child.
    seed (int): Recorded for reproducibility; exact greedy training draws
      no random numbers.
  """

  learning_rate: float = 0.1
  max_depth: int = 6
  num_rounds: int = 200
  lambda_l2: float = 1.0
  min_child_cover: float = 1.0
  seed: int = 0

  def __post_init__(self) -> None:
    if not 0 < self.learning_rate <= 1:
      raise errors.ConfigInvalid('learning_rate must be in (0, 1]')
    if self.max_depth < 1:
      raise errors.ConfigInvalid('max_depth must be >= 1')
    if self.num_rounds < 0:
      raise errors.ConfigInvalid('num_rounds must be >= 0')
    if self.lambda_l2 < 0 or self.min_child_cover < 0:
      raise errors.ConfigInvalid('lambda_l2 and min_child_cover must be >= 0')
    if not 0 <= self.seed < MAX_SEED:
      raise errors.ConfigInvalid('seed must be a 64-bit unsigned integer')


@dataclasses.dataclass(frozen=True)
class GBDTModel:
  """A trained ensemble; the margin is base_score + lr * sum of trees."""

  trees: tuple[tree.RegressionTree, ...]
  base_score: float
  learning_rate: float
  lambda_l2: float
  n_features: int

  def to_dict(self) -> dict[str, Any]:
    return {
        'base_score': self.base_score,
        'learning_rate': self.learning_rate,
        'lambda_l2': self.lambda_l2,
        'n_features': self.n_features,
        'trees': [t.to_dict() for t in self.trees],
    }

  @classmethod
  def from_dict(cls, data: dict[str, Any]) -> GBDTModel:
    return cls(
        trees=tuple(tree.RegressionTree.from_dict(t) for t in data['trees']),
        base_score=float(data['base_score']),
        learning_rate=float(data['learning_rate']),
        lambda_l2=float(data['lambda_l2']),
        n_features=int(data['n_features']),
    )


def logloss_grad_hess(p, y):
  """Gradient and hessian of the logistic loss with respect to the logit.

  Args:
    p: Predicted probabilities in (0, 1), scalar or array.
    y: 0/1 labels of the same shape.

  Returns:
    (g, h) = (p - y, p * (1 - p)).
  """
  return p - y, p * (1 - p)


def logloss(p: np.ndarray, y: np.ndarray) -> float:
  p = np.clip(p, 1e-15, 1 - 1e-15)
  return float(-np.mean(y * np.log(p) + (1 - y) * np.log1p(-p)))


def train_gbdt(
    x, y, cfg: TrainConfig, allow_single_class: bool = False
) -> GBDTModel:
  """Newton boosting with exact greedy trees.

  Args:
    x: Training rows.
    y: 0/1 labels.
    cfg: The training config.
    allow_single_class: Train on one-class labels, with the prevalence
      clipped to [1e-6, 1 - 1e-6] for the base score.

  Returns:
    GBDTModel: The trained model.

  Raises:
    EmptyData: No rows or no feature columns.
    SingleClass: One class only and allow_single_class is False.
  """
  if allow_single_class:
    x = np.asarray(x, dtype=np.float64).reshape(len(y), -1)
    y = np.asarray(y, dtype=np.int64)
    if len(x) == 0:
      raise errors.EmptyData('training needs at least one row')
  else:
    x, y = model.check_training_data(x, y)
  if x.shape[1] == 0:
    raise errors.EmptyData('training needs at least one feature column')

  prevalence = min(max(float(y.mean()), PREVALENCE_EPS), 1 - PREVALENCE_EPS)
  base_score = math.log(prevalence / (1 - prevalence))
  params = tree.GrowParams(
      max_depth=cfg.max_depth,
      lambda_l2=cfg.lambda_l2,
      min_child_cover=cfg.min_child_cover,
  )
  sorted_rows = tree.presort(x)
  margin = np.full(len(x), base_score)
  trees = []
  logging.info(
      'Training GBDT: %d rows x %d features, %d rounds, depth %d, lr %g',
      x.shape[0],
      x.shape[1],
      cfg.num_rounds,
      cfg.max_depth,
      cfg.learning_rate,
  )
  for round_index in range(cfg.num_rounds):
    p = special.expit(margin)
    g, h = logloss_grad_hess(p, y)
    t = tree.grow_tree(x, sorted_rows, g, h, params)
    trees.append(t)
    margin = margin + cfg.learning_rate * t.predict(x)
    logging.debug(
        'Round %d: %d nodes, train logloss %.6f',
        round_index,
        t.node_count,
        logloss(special.expit(margin), y),
    )
  return GBDTModel(
      trees=tuple(trees),
      base_score=base_score,
      learning_rate=cfg.learning_rate,
      lambda_l2=cfg.lambda_l2,
      n_features=x.shape[1],
  )


def staged_margin(m: GBDTModel, x) -> Iterator[np.ndarray]:
  """The margin after 0, 1, ..., len(m.trees) trees."""
  x = model.check_dimension(x, m.n_features)
  margin = np.full(len(x), m.base_score)
  yield margin
  for t in m.trees:
    margin = margin + m.learning_rate * t.predict(x)
    yield margin


def predict_margin(m: GBDTModel, x) -> np.ndarray:
  x = model.check_dimension(x, m.n_features)
  margin = np.full(len(x), m.base_score)
  for t in m.trees:
    margin += m.learning_rate * t.predict(x)
  return margin


def predict_gbdt(m: GBDTModel, x):
  """Probability of class 1; a float for one row, an array for a matrix.

  Raises:
    DimensionMismatch: x does not have m.n_features columns.
  """
  probability = special.expit(predict_margin(m, x))
  if np.ndim(x) == 1:
    return float(probability[0])
  return probability


class GBDTClassifier(model.Classifier):
  """GBDT behind the Classifier interface."""

  kind = model.ModelKind.GBDT

  def __init__(self, config: TrainConfig | None = None, **options) -> None:
    self.config = config or TrainConfig(**options)
    self.model: GBDTModel | None = None

  def fit(self, x, y) -> GBDTClassifier:
    self.model = train_gbdt(x, y, self.config)
    return self

  def predict_proba(self, x) -> np.ndarray:
    return special.expit(predict_margin(self.model, x))

  def to_dict(self) -> dict[str, Any]:
    return {
        'kind': self.kind.value,
        'config': self.config.to_dict(),
        'model': self.model.to_dict(),
    }
