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


"""GBDT unit test."""

import json
import math

import numpy as np
from py_spam_graph.models import gbdt
from py_spam_graph.models import model
from py_spam_graph.util import errors
import pytest
from scipy import special


def separable(rows=100, seed=0):
  rng = np.random.default_rng(seed)
  x = rng.normal(size=(rows, 3))
  y = (x[:, 1] > 0.2).astype(np.int64)
  return x, y


def margin_loss(m, y):
  p = special.expit(m)
  return -(y * math.log(p) + (1 - y) * math.log(1 - p))


@pytest.mark.parametrize('y', [0, 1])
@pytest.mark.parametrize('m', [-3.0, -0.4, 0.0, 1.7])
def test_grad_hess_finite_differences(m: float, y: int) -> None:
  eps = 1e-5
  g, h = gbdt.logloss_grad_hess(special.expit(m), y)
  numeric_g = (margin_loss(m + eps, y) - margin_loss(m - eps, y)) / (2 * eps)
  numeric_h = (
      margin_loss(m + eps, y) - 2 * margin_loss(m, y) + margin_loss(m - eps, y)
  ) / eps**2
  assert g == pytest.approx(numeric_g, abs=1e-7)
  assert h == pytest.approx(numeric_h, abs=1e-4)


def test_zero_rounds_predicts_prevalence() -> None:
  x, y = separable()
  m = gbdt.train_gbdt(x, y, gbdt.TrainConfig(num_rounds=0))
  np.testing.assert_allclose(gbdt.predict_gbdt(m, x), y.mean())


def test_fits_separable_data() -> None:
  x, y = separable()
  m = gbdt.train_gbdt(x, y, gbdt.TrainConfig(num_rounds=50, max_depth=2))
  predicted = (gbdt.predict_gbdt(m, x) >= model.DECISION_THRESHOLD)
  assert np.mean(predicted == y) == 1.0
  assert all(t.used_features() <= {1} for t in m.trees[:5])


def xor_quadrants(rows=400, seed=0):
  rng = np.random.default_rng(seed)
  x = rng.uniform(-1.0, 1.0, size=(rows, 2))
  x = x[np.abs(x).min(axis=1) >= 0.05]
  y = ((x[:, 0] > 0) ^ (x[:, 1] > 0)).astype(np.int64)
  return x, y


@pytest.mark.parametrize('seed', [0, 1])
def test_fits_xor(seed: int) -> None:
  x, y = xor_quadrants(seed=seed)
  cfg = gbdt.TrainConfig(max_depth=2, num_rounds=50, learning_rate=0.3)
  m = gbdt.train_gbdt(x, y, cfg)
  predicted = gbdt.predict_gbdt(m, x) >= model.DECISION_THRESHOLD
  assert np.mean(predicted == y) == 1.0


def test_symmetric_xor_has_no_split() -> None:
  x = np.array([[0.0, 0.0], [0.0, 1.0], [1.0, 0.0], [1.0, 1.0]])
  y = np.array([0, 1, 1, 0])
  cfg = gbdt.TrainConfig(
      max_depth=2, num_rounds=5, lambda_l2=0.0, min_child_cover=0.0
  )
  m = gbdt.train_gbdt(x, y, cfg)
  assert all(t.node_count == 1 for t in m.trees)
  np.testing.assert_allclose(gbdt.predict_gbdt(m, x), 0.5)


@pytest.mark.parametrize('max_depth', [1, 3, 6])
def test_loss_never_increases(max_depth: int) -> None:
  x, y = separable(seed=1)
  y[:10] = 1 - y[:10]
  m = gbdt.train_gbdt(
      x, y, gbdt.TrainConfig(num_rounds=40, max_depth=max_depth)
  )
  losses = [
      gbdt.logloss(special.expit(s), y) for s in gbdt.staged_margin(m, x)
  ]
  assert len(losses) == 41
  assert all(b <= a + 1e-12 for a, b in zip(losses, losses[1:]))
  assert losses[-1] < losses[0]


@pytest.mark.parametrize(
    'transform', [np.exp, lambda v: v**3, lambda v: 5.0 * v - 2.0]
)
def test_invariant_to_monotone_transform(transform) -> None:
  x, y = separable(seed=4)
  y[:8] = 1 - y[:8]
  cfg = gbdt.TrainConfig(num_rounds=20, max_depth=3)
  m = gbdt.train_gbdt(x, y, cfg)
  moved = x.copy()
  moved[:, 1] = transform(moved[:, 1])
  m_moved = gbdt.train_gbdt(moved, y, cfg)
  np.testing.assert_allclose(
      gbdt.predict_gbdt(m_moved, moved), gbdt.predict_gbdt(m, x), atol=1e-12
  )
  for t, t_moved in zip(m.trees, m_moved.trees):
    np.testing.assert_array_equal(t_moved.feature, t.feature)


def test_staged_margin_ends_at_prediction() -> None:
  x, y = separable(seed=2)
  m = gbdt.train_gbdt(x, y, gbdt.TrainConfig(num_rounds=5))
  *_, last = gbdt.staged_margin(m, x)
  np.testing.assert_allclose(last, gbdt.predict_margin(m, x))


def test_deterministic() -> None:
  x, y = separable(seed=3)
  cfg = gbdt.TrainConfig(num_rounds=10)
  first = gbdt.train_gbdt(x, y, cfg)
  second = gbdt.train_gbdt(x, y, cfg)
  assert first.to_dict() == second.to_dict()


def test_single_row_returns_float() -> None:
  x, y = separable()
  m = gbdt.train_gbdt(x, y, gbdt.TrainConfig(num_rounds=3))
  assert isinstance(gbdt.predict_gbdt(m, x[0]), float)


def test_dimension_mismatch() -> None:
  x, y = separable()
  m = gbdt.train_gbdt(x, y, gbdt.TrainConfig(num_rounds=1))
  with pytest.raises(errors.DimensionMismatch):
    gbdt.predict_gbdt(m, np.zeros((2, 4)))


def test_single_class() -> None:
  x, _ = separable()
  with pytest.raises(errors.SingleClass):
    gbdt.train_gbdt(x, np.ones(len(x)), gbdt.TrainConfig(num_rounds=1))


def test_single_class_allowed() -> None:
  x, _ = separable()
  m = gbdt.train_gbdt(
      x, np.ones(len(x)), gbdt.TrainConfig(num_rounds=3),
      allow_single_class=True,
  )
  assert m.base_score == pytest.approx(math.log((1 - 1e-6) / 1e-6))
  assert np.all(gbdt.predict_gbdt(m, x) > 0.99)


@pytest.mark.parametrize('x', [np.zeros((0, 2)), np.zeros((4, 0))])
def test_empty(x) -> None:
  with pytest.raises(errors.EmptyData):
    gbdt.train_gbdt(x, [0, 1, 0, 1][: len(x)], gbdt.TrainConfig())


def test_save_and_load() -> None:
  x, y = separable(seed=4)
  m = gbdt.train_gbdt(x, y, gbdt.TrainConfig(num_rounds=8))
  loaded = gbdt.GBDTModel.from_dict(json.loads(json.dumps(m.to_dict())))
  np.testing.assert_array_equal(
      gbdt.predict_margin(loaded, x), gbdt.predict_margin(m, x)
  )
  assert loaded.n_features == 3


def test_classifier_interface() -> None:
  x, y = separable(seed=5)
  classifier = gbdt.GBDTClassifier(num_rounds=20).fit(x, y)
  assert classifier.predict(x).dtype == np.int64
  assert classifier.to_dict()['kind'] == 'gbdt'
  assert classifier.to_dict()['config']['num_rounds'] == 20


@pytest.mark.parametrize(
    'options',
    [
        {'learning_rate': 0.0},
        {'learning_rate': 1.5},
        {'max_depth': 0},
        {'num_rounds': -1},
        {'lambda_l2': -1.0},
        {'seed': -1},
        {'seed': gbdt.MAX_SEED},
    ],
)
def test_invalid_config(options) -> None:
  with pytest.raises(errors.ConfigInvalid):
    gbdt.TrainConfig(**options)
