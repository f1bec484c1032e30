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

"""Path-dependent TreeSHAP for the boosted ensembles.

The recursion follows every root-to-leaf path once per tree and carries the
Shapley path weights for all rows at the same time: the zero fractions (the
cover share of each branch) are shared by every row and the one fractions
are 0/1 vectors saying which rows take the branch.
"""

from __future__ import annotations

import logging

import numpy as np

from py_spam_graph.models import gbdt
from py_spam_graph.models import tree as tree_lib
from py_spam_graph.util import errors


class _Path:
  """The unique features on the current path with their fractions."""

  def __init__(self) -> None:
    self.features: list[int] = []
    self.zeros: list[float] = []
    self.ones: list[np.ndarray] = []
    self.weights: list[np.ndarray] = []

  def copy(self) -> _Path:
    path = _Path()
    path.features = list(self.features)
    path.zeros = list(self.zeros)
    path.ones = list(self.ones)
    path.weights = list(self.weights)
    return path

  def __len__(self) -> int:
    return len(self.features)

  def extend(
      self, zero: float, one: np.ndarray, feature: int, n_rows: int
  ) -> None:
    depth = len(self)
    self.features.append(feature)
    self.zeros.append(zero)
    self.ones.append(one)
    self.weights.append(np.ones(n_rows) if depth == 0 else np.zeros(n_rows))
    for i in range(depth - 1, -1, -1):
      self.weights[i + 1] = (
          self.weights[i + 1] + one * self.weights[i] * (i + 1) / (depth + 1)
      )
      self.weights[i] = zero * self.weights[i] * (depth - i) / (depth + 1)

  def unwind(self, index: int) -> None:
    """Remove the feature at index as if it had never been added."""
    last = len(self) - 1
    one, zero = self.ones[index], self.zeros[index]
    has_one = one != 0
    safe_one = np.where(has_one, one, 1.0)
    carry = self.weights[last]
    for j in range(last - 1, -1, -1):
      old = self.weights[j]
      from_one = carry * (last + 1) / ((j + 1) * safe_one)
      from_zero = old * (last + 1) / (zero * (last - j))
      self.weights[j] = np.where(has_one, from_one, from_zero)
      carry = old - self.weights[j] * zero * (last - j) / (last + 1)
    del self.features[index]
    del self.zeros[index]
    del self.ones[index]
    del self.weights[last]

  def unwound_sum(self, index: int) -> np.ndarray:
    """Total path weight with the feature at index removed."""
    last = len(self) - 1
    one, zero = self.ones[index], self.zeros[index]
    has_one = one != 0
    safe_one = np.where(has_one, one, 1.0)
    carry = self.weights[last]
    total_one = np.zeros_like(carry)
    total_zero = np.zeros_like(carry)
    for j in range(last - 1, -1, -1):
      step = carry * (last + 1) / ((j + 1) * safe_one)
      total_one = total_one + step
      carry = self.weights[j] - step * zero * (last - j) / (last + 1)
      total_zero = total_zero + (
          (self.weights[j] / zero) * (last + 1) / (last - j)
      )
    return np.where(has_one, total_one, total_zero)

  def find(self, feature: int) -> int:
    for i in range(1, len(self)):
      if self.features[i] == feature:
        return i
    return -1


def _tree_shap_rows(
    t: tree_lib.RegressionTree, x: np.ndarray, phi: np.ndarray, scale: float
) -> None:
  """Add scale * SHAP values of tree t for every row of x into phi."""
  n_rows = len(x)

  def recurse(
      node: int, parent: _Path, zero: float, one: np.ndarray, feature: int
  ) -> None:
    path = parent.copy()
    path.extend(zero, one, feature, n_rows)
    if t.is_leaf(node):
      for i in range(1, len(path)):
        weight = path.unwound_sum(i)
        phi[:, path.features[i]] += (
            weight * (path.ones[i] - path.zeros[i]) * t.value[node] * scale
        )
      return

    split = int(t.feature[node])
    goes_left = x[:, split] < t.threshold[node]
    incoming_zero, incoming_one = 1.0, np.ones(n_rows)
    previous = path.find(split)
    if previous >= 0:
      incoming_zero, incoming_one = path.zeros[previous], path.ones[previous]
      path.unwind(previous)
    for child, takes in (
        (t.children_left[node], goes_left),
        (t.children_right[node], ~goes_left),
    ):
      recurse(
          int(child),
          path,
          incoming_zero * t.cover[child] / t.cover[node],
          incoming_one * takes,
          split,
      )

  recurse(0, _Path(), 1.0, np.ones(n_rows), -1)


def tree_expected_value(t: tree_lib.RegressionTree) -> float:
  """Cover-weighted mean leaf value."""
  leaves = t.children_left == tree_lib.LEAF
  return float(np.sum(t.value[leaves] * t.cover[leaves]) / t.cover[0])


def expected_value(m: gbdt.GBDTModel) -> float:
  """The SHAP base value: base_score plus lr times every tree's expectation."""
  return m.base_score + m.learning_rate * sum(
      tree_expected_value(t) for t in m.trees
  )


def shap_values(m: gbdt.GBDTModel, x) -> np.ndarray:
  """SHAP values of the margin for every row, shape (rows, features).

  Each row satisfies sum(phi) + expected_value(m) == predict_margin(m, row).

  Raises:
    DimensionMismatch: x does not have m.n_features columns.
  """
  x = np.asarray(x, dtype=np.float64)
  if x.ndim != 2 or x.shape[1] != m.n_features:
    raise errors.DimensionMismatch(
        f'expected rows of {m.n_features} features, got shape {x.shape}'
    )
  phi = np.zeros_like(x)
  for t in m.trees:
    if t.node_count > 1:
      _tree_shap_rows(t, x, phi, m.learning_rate)
  logging.debug('Computed SHAP values for %d rows', len(x))
  return phi


def tree_shap(m: gbdt.GBDTModel, x) -> np.ndarray:
  """SHAP values of one row.

  Raises:
    DimensionMismatch: x does not have m.n_features values.
  """
  x = np.asarray(x, dtype=np.float64)
  if x.ndim != 1 or len(x) != m.n_features:
    raise errors.DimensionMismatch(
        f'expected {m.n_features} features, got shape {x.shape}'
    )
  return shap_values(m, x.reshape(1, -1))[0]
