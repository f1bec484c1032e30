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

"""Parent abstract class for classifiers."""

from __future__ import annotations

import abc
import enum
import importlib
import logging
from typing import Any

import numpy as np

from py_spam_graph.dataset import dataset
from py_spam_graph.util import errors
from py_spam_graph.util import util

DECISION_THRESHOLD = 0.5


class ModelKind(util.LowerEnum):
  GBDT = enum.auto()
  RANDOM_FOREST = enum.auto()
  LOGREG = enum.auto()
  NAIVE_BAYES = enum.auto()


MODEL_CLASSES = {
    ModelKind.GBDT: ('gbdt', 'GBDTClassifier'),
    ModelKind.RANDOM_FOREST: ('random_forest', 'RandomForestClassifier'),
    ModelKind.LOGREG: ('logreg', 'LogisticRegressionClassifier'),
    ModelKind.NAIVE_BAYES: ('naive_bayes', 'NaiveBayesClassifier'),
}


def check_training_data(x, y) -> tuple[np.ndarray, np.ndarray]:
  """Validate a training set and return it as (float64 matrix, int labels).

  Raises:
    EmptyData: No rows.
    LengthMismatch: x and y have different row counts.
    SingleClass: Only one class is present.
  """
  x = np.asarray(x, dtype=np.float64)
  y = np.asarray(y, dtype=np.int64)
  if x.ndim == 1:
    x = x.reshape(-1, 1)
  if len(x) == 0:
    raise errors.EmptyData('training needs at least one row')
  if len(x) != len(y):
    raise errors.LengthMismatch(f'{len(x)} rows but {len(y)} labels')
  if set(np.unique(y)) != set(dataset.LABELS):
    raise errors.SingleClass(
        f'training labels must contain both classes, got {np.unique(y)}'
    )
  return x, y


def check_dimension(x, n_features: int) -> np.ndarray:
  """x as a float64 matrix with n_features columns.

  Raises:
    DimensionMismatch: x has another column count.
  """
  x = np.asarray(x, dtype=np.float64)
  if x.ndim == 1:
    x = x.reshape(1, -1)
  if x.shape[1] != n_features:
    raise errors.DimensionMismatch(
        f'expected {n_features} features, got {x.shape[1]}'
    )
  return x


class Classifier(abc.ABC):
  """A binary classifier with a scikit-learn shaped interface."""

  kind: ModelKind

  @abc.abstractmethod
  def fit(self, x, y) -> Classifier:
    """Train on rows x with 0/1 labels y."""

  @abc.abstractmethod
  def predict_proba(self, x) -> np.ndarray:
    """The probability of class 1 for every row."""

  def predict(self, x) -> np.ndarray:
    return (self.predict_proba(x) >= DECISION_THRESHOLD).astype(np.int64)

  @abc.abstractmethod
  def to_dict(self) -> dict[str, Any]:
    """A JSON-ready description of the trained model."""


def select(kind: str | ModelKind, **options: Any) -> Classifier:
  """The select function for classifiers.

  Args:
    kind (str | ModelKind): The classifier to build.
    **options: Keyword arguments of the classifier constructor.

  Returns:
    (Classifier): The untrained classifier.
  """
  kind = ModelKind.get(kind)
  module_name, class_name = MODEL_CLASSES[kind]
  model_module = importlib.import_module(
      name=f'py_spam_graph.models.{module_name}'
  )
  logging.debug('Selecting classifier %s', kind.value)
  return getattr(model_module, class_name)(**options)
