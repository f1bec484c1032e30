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


"""Feature selection unit test."""

import numpy as np
from py_spam_graph.features import table
from py_spam_graph.models import gbdt
from py_spam_graph.selection import selection
from py_spam_graph.util import errors
import pytest

TRAIN = gbdt.TrainConfig(num_rounds=20, max_depth=3)


def planted_table(rows=120, seed=0):
  """f2 decides the label, f0 follows it loosely, f1 and f3 are noise."""
  rng = np.random.default_rng(seed)
  labels = np.arange(rows) % 2
  values = np.column_stack([
      labels + rng.normal(scale=2.0, size=rows),
      rng.normal(size=rows),
      labels * 4.0 + rng.normal(scale=0.1, size=rows),
      rng.normal(size=rows),
  ])
  return table.FeatureTable(
      names=('f0', 'f1', 'f2', 'f3'),
      ids=tuple(f'u{i}' for i in range(rows)),
      values=values,
      labels=labels,
  )


def test_top_k_ties_keep_column_order() -> None:
  scores = np.array([1.0, 2.0, 1.0, 2.0])
  assert selection.top_k(scores, ['a', 'b', 'c', 'd'], 3) == ['b', 'd', 'a']


def test_top_k_larger_than_columns() -> None:
  assert selection.top_k(np.zeros(2), ['a', 'b'], 15) == ['a', 'b']


def test_intersect_keeps_shap_order() -> None:
  assert selection.intersect(['c', 'a', 'b'], ['b', 'c', 'z']) == ['c', 'b']


def test_shap_select_planted() -> None:
  t = planted_table()
  m = gbdt.train_gbdt(t.values, t.labels, TRAIN)
  assert selection.shap_select(m, t, k=1) == ['f2']
  assert sorted(selection.shap_select(m, t, k=10)) == list(t.names)


def test_shap_select_single_feature_model() -> None:
  t = planted_table()
  only = table.FeatureTable(('f2',), t.ids, t.values[:, [2]], t.labels)
  m = gbdt.train_gbdt(only.values, only.labels, TRAIN)
  assert selection.shap_select(m, only) == ['f2']


def test_shap_ranking_follows_permutation() -> None:
  t = planted_table(seed=4)
  order = [3, 2, 0, 1]
  permuted = table.FeatureTable(
      tuple(t.names[j] for j in order), t.ids, t.values[:, order], t.labels
  )
  m = gbdt.train_gbdt(t.values, t.labels, TRAIN)
  mp = gbdt.train_gbdt(permuted.values, permuted.labels, TRAIN)
  assert selection.shap_select(m, t, k=2)[0] == 'f2'
  assert selection.shap_select(mp, permuted, k=2)[0] == 'f2'


class TestSelectFeatures:

  def test_intersection(self) -> None:
    cfg = selection.SelectionConfig(k=2, paper_faithful_features=False)
    report, pretrained = selection.select_features(planted_table(), cfg, TRAIN)
    assert len(pretrained.trees) == TRAIN.num_rounds
    assert report.shap_set[0] == 'f2'
    assert report.correlation_set[0] == 'f2'
    assert not report.paper_faithful
    assert set(report.selected) <= set(report.shap_set)
    assert set(report.selected) <= set(report.correlation_set)
    assert report.features['f2'].selected
    assert report.features['f2'].in_s1 and report.features['f2'].in_s2
    assert report.census['total'] == 4

  def test_default_is_intersection(self) -> None:
    report, _ = selection.select_features(
        planted_table(), selection.SelectionConfig(k=2), TRAIN
    )
    assert not report.paper_faithful
    assert report.selected == selection.intersect(
        report.shap_set, report.correlation_set
    )
    assert set(report.selected) <= set(report.shap_set)
    assert set(report.selected) <= set(report.correlation_set)

  def test_explicit_features(self) -> None:
    cfg = selection.SelectionConfig(features=['f3', 'f1'])
    report, _ = selection.select_features(planted_table(), cfg, TRAIN)
    assert report.selected == ['f3', 'f1']
    assert report.features['f3'].selected

  def test_reference_list_needs_its_columns(self) -> None:
    with pytest.raises(errors.ConfigInvalid):
      selection.select_features(
          planted_table(),
          selection.SelectionConfig(paper_faithful_features=True),
          TRAIN,
      )

  def test_report_serializes(self) -> None:
    cfg = selection.SelectionConfig(paper_faithful_features=False)
    report, _ = selection.select_features(planted_table(), cfg, TRAIN)
    data = report.to_dict()
    assert data['selected'] == report.selected
    assert set(data['features']['f0']) == {
        'mean_abs_shap', 'pearson_r', 'in_s1', 'in_s2', 'selected'
    }

  def test_no_labels(self) -> None:
    t = planted_table()
    with pytest.raises(errors.NoLabels):
      selection.select_features(
          table.FeatureTable(t.names, t.ids, t.values),
          selection.SelectionConfig(),
      )


def test_reference_list_is_table_columns() -> None:
  assert len(selection.REFERENCE_FEATURES) == 16
  assert set(selection.REFERENCE_FEATURES) <= set(table.FEATURE_NAMES)


@pytest.mark.parametrize(
    'options', [{'threshold': 1.5}, {'k': 0}, {'redundancy_threshold': -0.1}]
)
def test_invalid_config(options) -> None:
  with pytest.raises(errors.ConfigInvalid):
    selection.SelectionConfig(**options)
