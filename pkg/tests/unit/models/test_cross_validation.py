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


"""Cross validation and grid search unit test."""

import numpy as np
from py_spam_graph.models import cross_validation
from py_spam_graph.models import gbdt
from py_spam_graph.models import naive_bayes
from py_spam_graph.util import errors
import pytest

SMALL_GRID = {'learning_rate': [0.1, 0.3], 'max_depth': [1, 2]}
BASE = gbdt.TrainConfig(num_rounds=10)


def blobs(rows=60, seed=0):
  rng = np.random.default_rng(seed)
  y = (np.arange(rows) % 3 == 0).astype(np.int64)
  x = rng.normal(size=(rows, 3)) + np.outer(y, [2.5, 0.0, 0.0])
  return x, y


class TestStratifiedFolds:

  def test_partition_and_balance(self) -> None:
    _, y = blobs()
    folds = cross_validation.stratified_folds(y, 5, seed=1)
    assert len(folds) == 5
    test_rows = np.concatenate([test for _, test in folds])
    assert sorted(test_rows) == list(range(len(y)))
    for train, test in folds:
      assert not set(train) & set(test)
      assert y[test].sum() == 4

  def test_seeded(self) -> None:
    _, y = blobs()
    first = cross_validation.stratified_folds(y, 5, seed=7)
    second = cross_validation.stratified_folds(y, 5, seed=7)
    other = cross_validation.stratified_folds(y, 5, seed=8)
    assert all(np.array_equal(a[1], b[1]) for a, b in zip(first, second))
    assert not all(np.array_equal(a[1], b[1]) for a, b in zip(first, other))

  def test_large_seed(self) -> None:
    _, y = blobs()
    assert len(cross_validation.stratified_folds(y, 2, seed=2**64 - 1)) == 2

  def test_too_few_members(self) -> None:
    y = np.array([0] * 10 + [1] * 3)
    with pytest.raises(errors.InsufficientClassCount):
      cross_validation.stratified_folds(y, 5, seed=0)

  def test_k_below_two(self) -> None:
    with pytest.raises(errors.ConfigInvalid):
      cross_validation.stratified_folds(np.array([0, 1, 0, 1]), 1, seed=0)


def test_cross_val_predict_is_out_of_fold() -> None:
  x, y = blobs()
  folds = cross_validation.stratified_folds(y, 3, seed=0)
  predictions = cross_validation.cross_val_predict(
      naive_bayes.NaiveBayesClassifier, x, y, folds
  )
  assert predictions.shape == y.shape
  for train, test in folds:
    fitted = naive_bayes.NaiveBayesClassifier().fit(x[train], y[train])
    np.testing.assert_array_equal(predictions[test], fitted.predict(x[test]))


class TestGridSearch:

  def test_every_cell_scored(self) -> None:
    x, y = blobs()
    result = cross_validation.grid_search_cv(
        x, y, SMALL_GRID, k=3, seed=2, base_config=BASE
    )
    assert len(result.cells) == 4
    assert all(len(cell.fold_scores) == 3 for cell in result.cells)
    best = result.best_cell
    assert best.mean_average_accuracy == max(
        cell.mean_average_accuracy for cell in result.cells
    )
    assert result.best.num_rounds == BASE.num_rounds

  def test_tie_prefers_shallow_then_slow(self) -> None:
    x, y = blobs()
    grid = {'learning_rate': [0.3, 0.1], 'max_depth': [2, 1]}
    result = cross_validation.grid_search_cv(
        x, y, grid, k=3, seed=2, base_config=gbdt.TrainConfig(num_rounds=0)
    )
    assert result.best.max_depth == 1
    assert result.best.learning_rate == 0.1

  def test_workers_do_not_change_result(self) -> None:
    x, y = blobs(seed=3)
    serial = cross_validation.grid_search_cv(
        x, y, SMALL_GRID, k=3, seed=4, base_config=BASE
    )
    threaded = cross_validation.grid_search_cv(
        x, y, SMALL_GRID, k=3, seed=4, base_config=BASE, workers=3
    )
    assert serial.to_dict() == threaded.to_dict()

  def test_insufficient_class_count(self) -> None:
    x, y = blobs(rows=9)
    with pytest.raises(errors.InsufficientClassCount):
      cross_validation.grid_search_cv(x, y, SMALL_GRID, k=5)


def test_compare_models() -> None:
  x, y = blobs(rows=90)
  reports = cross_validation.compare_models(
      x,
      y,
      k=3,
      seed=1,
      options={
          'gbdt': {'config': BASE},
          'random_forest': {'n_trees': 10},
          'logreg': {'epochs': 100},
      },
  )
  assert set(reports) == {'gbdt', 'random_forest', 'logreg', 'naive_bayes'}
  for report in reports.values():
    assert report.average_accuracy > 0.7
