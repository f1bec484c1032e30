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


"""Classifier registry unit test."""

import numpy as np
from py_spam_graph.models import gbdt
from py_spam_graph.models import logreg
from py_spam_graph.models import model
from py_spam_graph.models import naive_bayes
from py_spam_graph.models import random_forest
from py_spam_graph.util import errors
import pytest


@pytest.mark.parametrize(
    'kind,cls',
    [
        ('gbdt', gbdt.GBDTClassifier),
        ('RANDOM_FOREST', random_forest.RandomForestClassifier),
        (model.ModelKind.LOGREG, logreg.LogisticRegressionClassifier),
        ('naive_bayes', naive_bayes.NaiveBayesClassifier),
    ],
)
def test_select(kind, cls) -> None:
  assert isinstance(model.select(kind), cls)


def test_select_unknown() -> None:
  with pytest.raises(ValueError):
    model.select('svm')


def test_select_passes_options() -> None:
  classifier = model.select('random_forest', n_trees=7)
  assert classifier.config.n_trees == 7


def test_check_training_data() -> None:
  x, y = model.check_training_data([1.0, 2.0, 3.0], [0, 1, 0])
  assert x.shape == (3, 1)
  assert y.dtype == np.int64


@pytest.mark.parametrize(
    'x,y,error',
    [
        (np.zeros((0, 2)), [], errors.EmptyData),
        (np.zeros((3, 2)), [0, 1], errors.LengthMismatch),
        (np.zeros((3, 2)), [1, 1, 1], errors.SingleClass),
    ],
)
def test_check_training_data_errors(x, y, error) -> None:
  with pytest.raises(error):
    model.check_training_data(x, y)


def test_check_dimension() -> None:
  assert model.check_dimension([1.0, 2.0], 2).shape == (1, 2)
  with pytest.raises(errors.DimensionMismatch):
    model.check_dimension(np.zeros((2, 3)), 2)


def test_predict_threshold() -> None:

  class Fixed(model.Classifier):
    kind = model.ModelKind.GBDT

    def fit(self, x, y):
      return self

    def predict_proba(self, x):
      return np.array([0.2, 0.5, 0.7])

    def to_dict(self):
      return {}

  np.testing.assert_array_equal(Fixed().predict(None), [0, 1, 1])
