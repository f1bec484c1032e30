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


"""TreeSHAP unit test."""

import itertools
import math

import numpy as np
from py_spam_graph.models import gbdt
from py_spam_graph.models import tree
from py_spam_graph.selection import tree_shap
from py_spam_graph.util import errors
import pytest


def stump_model():
  builder = tree._TreeBuilder()
  root = builder.add(0.0, 2.0)
  left = builder.add(0.0, 1.0)
  right = builder.add(1.0, 1.0)
  builder.set_split(root, 0, 0.5, left, right)
  return gbdt.GBDTModel(
      trees=(builder.build(),),
      base_score=0.0,
      learning_rate=1.0,
      lambda_l2=1.0,
      n_features=3,
  )


def conditional_expectation(t, x, coalition, node=0):
  """Cover-weighted expectation of t with features outside coalition unknown."""
  if t.is_leaf(node):
    return t.value[node]
  left = t.children_left[node]
  right = t.children_right[node]
  f = t.feature[node]
  if f in coalition:
    child = left if x[f] < t.threshold[node] else right
    return conditional_expectation(t, x, coalition, child)
  return (
      t.cover[left] * conditional_expectation(t, x, coalition, left)
      + t.cover[right] * conditional_expectation(t, x, coalition, right)
  ) / t.cover[node]


def brute_force_shap(m, x):
  n = m.n_features

  def value(coalition):
    return m.learning_rate * sum(
        conditional_expectation(t, x, coalition) for t in m.trees
    )

  phi = np.zeros(n)
  for i in range(n):
    others = [j for j in range(n) if j != i]
    for size in range(n):
      weight = (
          math.factorial(size) * math.factorial(n - size - 1)
          / math.factorial(n)
      )
      for subset in itertools.combinations(others, size):
        coalition = set(subset)
        phi[i] += weight * (value(coalition | {i}) - value(coalition))
  return phi


def random_ensemble(rng):
  n_features = int(rng.integers(2, 7))
  rows = 60
  x = rng.normal(size=(rows, n_features))
  x[:, 0] = np.round(x[:, 0])
  y = (x[:, 0] + rng.normal(scale=0.8, size=rows) > 0).astype(np.int64)
  if y.min() == y.max():
    y[0] = 1 - y[0]
  cfg = gbdt.TrainConfig(
      num_rounds=int(rng.integers(1, 6)),
      max_depth=int(rng.integers(1, 4)),
      learning_rate=0.3,
      min_child_cover=0.5,
  )
  return gbdt.train_gbdt(x, y, cfg), x


def test_stump() -> None:
  m = stump_model()
  phi = tree_shap.tree_shap(m, [1.0, 7.0, -2.0])
  assert tree_shap.expected_value(m) == pytest.approx(0.5)
  np.testing.assert_allclose(phi, [0.5, 0.0, 0.0], atol=1e-12)


def test_stump_left() -> None:
  phi = tree_shap.tree_shap(stump_model(), [0.0, 0.0, 0.0])
  np.testing.assert_allclose(phi, [-0.5, 0.0, 0.0], atol=1e-12)


def test_unused_features_get_zero() -> None:
  rng = np.random.default_rng(5)
  x = rng.normal(size=(80, 4))
  x[:, 3] = 0.0
  y = (x[:, 0] > 0).astype(np.int64)
  m = gbdt.train_gbdt(x, y, gbdt.TrainConfig(num_rounds=5, max_depth=2))
  phi = tree_shap.shap_values(m, x)
  unused = set(range(4)) - set().union(*(t.used_features() for t in m.trees))
  assert 3 in unused
  for j in unused:
    assert np.all(phi[:, j] == 0.0)


@pytest.mark.parametrize('seed', range(100))
def test_matches_subset_enumeration(seed: int) -> None:
  rng = np.random.default_rng(seed)
  m, x = random_ensemble(rng)
  for row in x[:4]:
    np.testing.assert_allclose(
        tree_shap.tree_shap(m, row), brute_force_shap(m, row), atol=1e-9
    )


@pytest.mark.parametrize('seed', range(10))
def test_local_accuracy(seed: int) -> None:
  rng = np.random.default_rng(1000 + seed)
  m, x = random_ensemble(rng)
  phi = tree_shap.shap_values(m, x)
  np.testing.assert_allclose(
      phi.sum(axis=1) + tree_shap.expected_value(m),
      gbdt.predict_margin(m, x),
      atol=1e-9,
  )


def test_rows_match_single_row() -> None:
  m, x = random_ensemble(np.random.default_rng(77))
  phi = tree_shap.shap_values(m, x[:6])
  for i in range(6):
    np.testing.assert_allclose(phi[i], tree_shap.tree_shap(m, x[i]), atol=1e-12)


def test_dimension_mismatch() -> None:
  with pytest.raises(errors.DimensionMismatch):
    tree_shap.tree_shap(stump_model(), [1.0, 2.0])
  with pytest.raises(errors.DimensionMismatch):
    tree_shap.shap_values(stump_model(), np.zeros((2, 4)))
