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


"""Random forest baseline on scikit-learn's RandomForestClassifier."""

from __future__ import annotations

import dataclasses
import logging
from typing import Any, Optional

import numpy as np
from sklearn import ensemble

from py_spam_graph.models import model
from py_spam_graph.util import errors
from py_spam_graph.util import json_dataclass


@dataclasses.dataclass
class ForestConfig(json_dataclass.DataClassJsonMixIn):
  """The config of random forest training.

  Attributes:
    n_trees (int): Number of bootstrap trees.
    max_depth (int | None): Tree depth limit, None for fully grown trees.
    min_samples_leaf (int): Minimum rows per leaf.
    seed (int): Seed of the bootstrap and column draws.
  """

  n_trees: int = 100
  max_depth: Optional[int] = None
  min_samples_leaf: int = 1
  seed: int = 0

  def __post_init__(self) -> None:
    if self.n_trees < 1:
      raise errors.ConfigInvalid('n_trees must be >= 1')
    if self.max_depth is not None and self.max_depth < 1:
      raise errors.ConfigInvalid('max_depth must be >= 1 or None')
    if self.min_samples_leaf < 1:
      raise errors.ConfigInvalid('min_samples_leaf must be >= 1')
    if self.seed < 0:
      raise errors.ConfigInvalid('seed must be >= 0')

  @property
  def random_state(self) -> int:
    """The seed folded into the 32-bit range scikit-learn accepts."""
    return int(np.random.SeedSequence(self.seed).generate_state(1)[0])


def train_random_forest(
    x, y, cfg: ForestConfig
) -> ensemble.RandomForestClassifier:
  """Bagged trees with sqrt(d) columns drawn per split.

  Raises:
    EmptyData: No rows or no columns.
    SingleClass: One class only.
  """
  x, y = model.check_training_data(x, y)
  if x.shape[1] == 0:
    raise errors.EmptyData('training needs at least one feature column')
  logging.info(
      'Training random forest: %d trees on %d rows x %d features',
      cfg.n_trees,
      *x.shape,
  )
  forest = ensemble.RandomForestClassifier(
      n_estimators=cfg.n_trees,
      max_depth=cfg.max_depth,
      min_samples_leaf=cfg.min_samples_leaf,
      max_features='sqrt',
      random_state=cfg.random_state,
  )
  return forest.fit(x, y)


def predict_random_forest(
    forest: ensemble.RandomForestClassifier, x
) -> np.ndarray:
  """Mean spam share of the leaves every row lands in."""
  x = model.check_dimension(x, forest.n_features_in_)
  spam_column = list(forest.classes_).index(1)
  return forest.predict_proba(x)[:, spam_column]


class RandomForestClassifier(model.Classifier):

  kind = model.ModelKind.RANDOM_FOREST

  def __init__(self, config: ForestConfig | None = None, **options) -> None:
    self.config = config or ForestConfig(**options)
    self.forest: ensemble.RandomForestClassifier | None = None

  def fit(self, x, y) -> RandomForestClassifier:
    self.forest = train_random_forest(x, y, self.config)
    return self

  def predict_proba(self, x) -> np.ndarray:
    return predict_random_forest(self.forest, x)

  def to_dict(self) -> dict[str, Any]:
    """The config and fitted shape; the trees are rebuilt by refitting."""
    return {
        'kind': self.kind.value,
        'config': self.config.to_dict(),
        'n_features': int(self.forest.n_features_in_),
        'node_counts': [
            int(e.tree_.node_count) for e in self.forest.estimators_
        ],
    }
