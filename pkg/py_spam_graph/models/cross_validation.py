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

"""Stratified k-fold grid search and model comparison."""

from __future__ import annotations

from collections.abc import Callable, Mapping, Sequence
from concurrent import futures
import dataclasses
import logging
from typing import Any, Optional

import numpy as np
from sklearn import model_selection

from py_spam_graph.dataset import dataset
from py_spam_graph.models import gbdt
from py_spam_graph.models import metrics
from py_spam_graph.models import model
from py_spam_graph.util import errors
from py_spam_graph.util import json_dataclass

DEFAULT_GRID = {'learning_rate': [0.1, 0.3], 'max_depth': [3, 6]}
SKLEARN_SEED_MOD = 2**32


@dataclasses.dataclass(frozen=True)
class GridCell(json_dataclass.DataClassJsonMixIn):
  learning_rate: float
  max_depth: int
  mean_average_accuracy: float
  fold_scores: list[float]


@dataclasses.dataclass(frozen=True)
class GridSearchResult(json_dataclass.DataClassJsonMixIn):
  """The winning config plus the score of every grid cell."""

  best: gbdt.TrainConfig
  cells: list[GridCell]
  folds: int
  seed: int

  @property
  def best_cell(self) -> GridCell:
    return next(
        cell
        for cell in self.cells
        if cell.learning_rate == self.best.learning_rate
        and cell.max_depth == self.best.max_depth
    )


def stratified_folds(
    y, k: int, seed: int
) -> list[tuple[np.ndarray, np.ndarray]]:
  """(train rows, test rows) of k stratified folds, shuffled from seed.

  Raises:
    ConfigInvalid: k < 2.
    InsufficientClassCount: A class has fewer than k members.
  """
  y = np.asarray(y, dtype=np.int64)
  if k < 2:
    raise errors.ConfigInvalid('cross validation needs k >= 2')
  counts = {label: int(np.sum(y == label)) for label in dataset.LABELS}
  if min(counts.values()) < k:
    raise errors.InsufficientClassCount(
        f'class counts {counts} cannot fill {k} stratified folds'
    )
  splitter = model_selection.StratifiedKFold(
      n_splits=k, shuffle=True, random_state=seed % SKLEARN_SEED_MOD
  )
  return list(splitter.split(np.zeros(len(y)), y))


def cross_val_predict(
    make_classifier: Callable[[], model.Classifier],
    x: np.ndarray,
    y: np.ndarray,
    folds: Sequence[tuple[np.ndarray, np.ndarray]],
) -> np.ndarray:
  """Out-of-fold predicted labels for every row."""
  predictions = np.zeros(len(y), dtype=np.int64)
  for train_rows, test_rows in folds:
    classifier = make_classifier().fit(x[train_rows], y[train_rows])
    predictions[test_rows] = classifier.predict(x[test_rows])
  return predictions


def _score_cell(
    x: np.ndarray,
    y: np.ndarray,
    folds: Sequence[tuple[np.ndarray, np.ndarray]],
    config: gbdt.TrainConfig,
) -> GridCell:
  scores = []
  for train_rows, test_rows in folds:
    m = gbdt.train_gbdt(x[train_rows], y[train_rows], config)
    predicted = (gbdt.predict_gbdt(m, x[test_rows]) >= 0.5).astype(np.int64)
    scores.append(metrics.evaluate(y[test_rows], predicted).average_accuracy)
  logging.info(
      'Grid cell lr=%g depth=%d: mean average accuracy %.4f',
      config.learning_rate,
      config.max_depth,
      float(np.mean(scores)),
  )
  return GridCell(
      learning_rate=config.learning_rate,
      max_depth=config.max_depth,
      mean_average_accuracy=float(np.mean(scores)),
      fold_scores=[float(score) for score in scores],
  )


def grid_search_cv(
    x,
    y,
    grid: Optional[Mapping[str, Sequence[Any]]] = None,
    k: int = 5,
    seed: int = 0,
    base_config: Optional[gbdt.TrainConfig] = None,
    workers: int = 1,
) -> GridSearchResult:
  """Pick learning_rate and max_depth by stratified k-fold CV of the GBDT.

  The best cell has the highest mean average accuracy; ties go to the
  smaller max_depth, then the smaller learning_rate. Every cell sees the
  same folds, so results do not depend on workers.

  Args:
    x: Training rows.
    y: 0/1 labels.
    grid: {'learning_rate': [...], 'max_depth': [...]}.
    k: Number of folds.
    seed: Seed of the fold assignment.
    base_config: Values of every other TrainConfig field.
    workers: Threads scoring grid cells.

  Returns:
    GridSearchResult: The best config and every cell's scores.

  Raises:
    InsufficientClassCount: A class has fewer than k members.
    SingleClass: Only one class is present.
  """
  x, y = model.check_training_data(x, y)
  grid = DEFAULT_GRID if grid is None else grid
  base_config = base_config or gbdt.TrainConfig(seed=seed)
  folds = stratified_folds(y, k, seed)
  configs = [
      dataclasses.replace(
          base_config,
          learning_rate=float(params['learning_rate']),
          max_depth=int(params['max_depth']),
      )
      for params in model_selection.ParameterGrid(dict(grid))
  ]
  logging.info('Grid search: %d cells x %d folds', len(configs), k)
  if workers > 1:
    with futures.ThreadPoolExecutor(max_workers=workers) as executor:
      cells = list(
          executor.map(lambda c: _score_cell(x, y, folds, c), configs)
      )
  else:
    cells = [_score_cell(x, y, folds, config) for config in configs]

  best_index = min(
      range(len(cells)),
      key=lambda i: (
          -cells[i].mean_average_accuracy,
          cells[i].max_depth,
          cells[i].learning_rate,
      ),
  )
  return GridSearchResult(
      best=configs[best_index], cells=cells, folds=k, seed=seed
  )


def compare_models(
    x,
    y,
    k: int = 5,
    seed: int = 0,
    kinds: Sequence[str | model.ModelKind] = tuple(model.ModelKind),
    options: Optional[Mapping[str, Mapping[str, Any]]] = None,
) -> dict[str, metrics.EvalReport]:
  """Pooled out-of-fold EvalReport of every classifier on the same folds.

  Args:
    x: Rows.
    y: 0/1 labels.
    k: Number of folds.
    seed: Seed of the folds and of every classifier.
    kinds: The classifiers to compare.
    options: Constructor keyword arguments per kind value.

  Returns:
    EvalReport per kind value.
  """
  x, y = model.check_training_data(x, y)
  folds = stratified_folds(y, k, seed)
  options = options or {}
  reports = {}
  for kind in kinds:
    kind = model.ModelKind.get(kind)
    kind_options = dict(options.get(kind.value, {}))
    if kind is model.ModelKind.GBDT:
      kind_options.setdefault('config', gbdt.TrainConfig(seed=seed))
    else:
      kind_options.setdefault('seed', seed)
    predictions = cross_val_predict(
        lambda: model.select(kind, **kind_options), x, y, folds
    )
    reports[kind.value] = metrics.evaluate(y, predictions)
    logging.info(
        'Model %s: average accuracy %.4f, macro F1 %.4f',
        kind.value,
        reports[kind.value].average_accuracy,
        reports[kind.value].macro_f1,
    )
  return reports
