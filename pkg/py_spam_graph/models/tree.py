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

"""Regression trees grown by exact greedy split search.

The trees store their nodes in parallel arrays: children_left and
children_right hold child node ids (-1 at leaves), feature and threshold the
split (`x[feature] < threshold` goes left), value the node weight and cover
the summed hessian of the training rows that reached the node.
"""

from __future__ import annotations

import dataclasses
from typing import Any, Optional

import numpy as np

LEAF = -1


@dataclasses.dataclass(frozen=True)
class GrowParams:
  """Split search parameters.

  Attributes:
    max_depth (int): Nodes at this depth become leaves; the root is depth 0.
    lambda_l2 (float): L2 penalty on leaf weights.
    min_child_cover (float): Minimum hessian sum of either child.
  """

  max_depth: int
  lambda_l2: float = 1.0
  min_child_cover: float = 1.0


@dataclasses.dataclass(frozen=True)
class RegressionTree:
  children_left: np.ndarray
  children_right: np.ndarray
  feature: np.ndarray
  threshold: np.ndarray
  value: np.ndarray
  cover: np.ndarray

  @property
  def node_count(self) -> int:
    return len(self.value)

  def is_leaf(self, node: int) -> bool:
    return self.children_left[node] == LEAF

  def used_features(self) -> set[int]:
    return {int(f) for f in self.feature[self.children_left != LEAF]}

  def max_depth(self, node: int = 0) -> int:
    if self.is_leaf(node):
      return 0
    return 1 + max(
        self.max_depth(self.children_left[node]),
        self.max_depth(self.children_right[node]),
    )

  def apply(self, x: np.ndarray) -> np.ndarray:
    """The leaf id every row of x lands in."""
    rows = np.arange(len(x))
    node = np.zeros(len(x), dtype=np.int64)
    while True:
      internal = self.children_left[node] != LEAF
      if not internal.any():
        return node
      column = np.maximum(self.feature[node], 0)
      goes_left = x[rows, column] < self.threshold[node]
      child = np.where(
          goes_left, self.children_left[node], self.children_right[node]
      )
      node = np.where(internal, child, node)

  def predict(self, x: np.ndarray) -> np.ndarray:
    return self.value[self.apply(x)]

  def to_dict(self, node: int = 0) -> dict[str, Any]:
    """The subtree at node as nested objects."""
    if self.is_leaf(node):
      return {'cover': float(self.cover[node]), 'leaf': float(self.value[node])}
    return {
        'cover': float(self.cover[node]),
        'feature': int(self.feature[node]),
        'threshold': float(self.threshold[node]),
        'value': float(self.value[node]),
        'left': self.to_dict(int(self.children_left[node])),
        'right': self.to_dict(int(self.children_right[node])),
    }

  @classmethod
  def from_dict(cls, data: dict[str, Any]) -> RegressionTree:
    builder = _TreeBuilder()

    def visit(node_data: dict[str, Any]) -> int:
      if 'leaf' in node_data:
        return builder.add(node_data['leaf'], node_data['cover'])
      node = builder.add(node_data['value'], node_data['cover'])
      left = visit(node_data['left'])
      right = visit(node_data['right'])
      builder.set_split(
          node, node_data['feature'], node_data['threshold'], left, right
      )
      return node

    visit(data)
    return builder.build()


class _TreeBuilder:
  """Collects nodes in preorder."""

  def __init__(self) -> None:
    self.children_left: list[int] = []
    self.children_right: list[int] = []
    self.feature: list[int] = []
    self.threshold: list[float] = []
    self.value: list[float] = []
    self.cover: list[float] = []

  def add(self, value: float, cover: float) -> int:
    self.children_left.append(LEAF)
    self.children_right.append(LEAF)
    self.feature.append(LEAF)
    self.threshold.append(0.0)
    self.value.append(float(value))
    self.cover.append(float(cover))
    return len(self.value) - 1

  def set_split(
      self, node: int, feature: int, threshold: float, left: int, right: int
  ) -> None:
    self.feature[node] = int(feature)
    self.threshold[node] = float(threshold)
    self.children_left[node] = left
    self.children_right[node] = right

  def build(self) -> RegressionTree:
    return RegressionTree(
        children_left=np.array(self.children_left, dtype=np.int64),
        children_right=np.array(self.children_right, dtype=np.int64),
        feature=np.array(self.feature, dtype=np.int64),
        threshold=np.array(self.threshold, dtype=np.float64),
        value=np.array(self.value, dtype=np.float64),
        cover=np.array(self.cover, dtype=np.float64),
    )


def presort(x: np.ndarray) -> np.ndarray:
  """Row ids sorted by every column, shape (rows, columns)."""
  return np.argsort(x, axis=0, kind='stable')


def _best_split(
    x: np.ndarray,
    sorted_rows: np.ndarray,
    g: np.ndarray,
    h: np.ndarray,
    params: GrowParams,
) -> Optional[tuple[int, float]]:
  """(feature, threshold) of the best positive-gain split, or None.

  Exact ties go to the smallest feature index, then the smallest threshold.
  """
  sub = sorted_rows
  xs = np.take_along_axis(x, sub, axis=0)
  gs, hs = g[sub], h[sub]
  g_cum, h_cum = np.cumsum(gs, axis=0), np.cumsum(hs, axis=0)
  g_left, h_left = g_cum[:-1], h_cum[:-1]
  g_right, h_right = g_cum[-1] - g_left, h_cum[-1] - h_left
  g_total, h_total = g_cum[-1, 0], h_cum[-1, 0]
  lam = params.lambda_l2

  valid = (
      (xs[1:] > xs[:-1])
      & (h_left >= params.min_child_cover)
      & (h_right >= params.min_child_cover)
  )
  with np.errstate(divide='ignore', invalid='ignore'):
    gain = 0.5 * (
        g_left**2 / (h_left + lam)
        + g_right**2 / (h_right + lam)
        - g_total**2 / (h_total + lam)
    )
  gain = np.where(valid & np.isfinite(gain), gain, -np.inf)
  flat = gain.T.ravel()
  best = int(np.argmax(flat))
  if not flat[best] > 0:
    return None

  column, pos = divmod(best, len(sub) - 1)
  low, high = xs[pos, column], xs[pos + 1, column]
  threshold = (low + high) / 2.0
  if not low < threshold <= high:
    threshold = high
  return int(column), float(threshold)


def grow_tree(
    x: np.ndarray,
    sorted_rows: np.ndarray,
    g: np.ndarray,
    h: np.ndarray,
    params: GrowParams,
) -> RegressionTree:
  """Grow one tree on the rows in sorted_rows.

  Args:
    x: The full training matrix.
    sorted_rows: presort output for the rows to fit.
    g: Gradient of every row of x.
    h: Hessian of every row of x.
    params: Depth, penalty and cover limits.

  Returns:
    RegressionTree: Leaf weights are -G / (H + lambda_l2).
  """
  n_features = x.shape[1]
  builder = _TreeBuilder()

  def grow(rows: np.ndarray, depth: int) -> int:
    node_rows = rows[:, 0]
    g_sum, h_sum = g[node_rows].sum(), h[node_rows].sum()
    node = builder.add(-g_sum / (h_sum + params.lambda_l2), h_sum)
    if depth >= params.max_depth or len(rows) < 2:
      return node
    split = _best_split(x, rows, g, h, params)
    if split is None:
      return node

    feature, threshold = split
    goes_left = (x[:, feature] < threshold)[rows]
    left_rows = rows.T[goes_left.T].reshape(n_features, -1).T
    right_rows = rows.T[~goes_left.T].reshape(n_features, -1).T
    left = grow(left_rows, depth + 1)
    right = grow(right_rows, depth + 1)
    builder.set_split(node, feature, threshold, left, right)
    return node

  grow(sorted_rows, 0)
  return builder.build()
