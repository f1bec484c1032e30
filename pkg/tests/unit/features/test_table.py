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

"""Feature table unit test."""

import datetime

import numpy as np
from py_spam_graph.dataset import dataset
from py_spam_graph.features import metadata
from py_spam_graph.features import table
from py_spam_graph.features import text
from py_spam_graph.graph import centrality
from py_spam_graph.graph import graph
from py_spam_graph.util import errors
import pytest

SNAPSHOT = datetime.date(2020, 6, 1)


def make_dataset():
  users = (
      dataset.UserRecord(
          'a', friends_count=4, followers_count=2, verified=True, label=1
      ),
      dataset.UserRecord('b', statuses_count=10, label=0),
      dataset.UserRecord('c', description='abc', label=0),
      dataset.UserRecord('d'),
  )
  return dataset.Dataset(
      users=users,
      tweets=dataset.TweetCorpus({'a': ['buy now #x', 'buy now']}),
      edges=(
          ('a', 'b'), ('b', 'c'), ('c', 'a'), ('a', 'c'), ('d', 'a'), ('x', 'b')
      ),
      snapshot_date=SNAPSHOT,
      lexicon=dataset.SpamLexicon(frozenset({'buy'})),
  )


class TestBuildFeatureTable:

  @pytest.fixture(scope='class', autouse=True)
  def setup_table(self):
    d = make_dataset()
    g = graph.build_graph(d.edges, extra_nodes=d.user_ids)
    TestBuildFeatureTable.d = d
    TestBuildFeatureTable.cent = centrality.compute_centralities(g)
    TestBuildFeatureTable.table = table.build_feature_table(
        d,
        self.cent,
        metadata.compute_all_metadata(d),
        text.compute_all_text(d),
    )
    yield

  def test_shape(self) -> None:
    assert len(table.FEATURE_NAMES) == 26
    assert self.table.names == table.FEATURE_NAMES
    assert self.table.ids == ('a', 'b', 'c')
    assert self.table.values.shape == (3, 26)
    np.testing.assert_array_equal(self.table.labels, [1, 0, 0])

  def test_blocks(self) -> None:
    assert self.table.column('ff_ratio')[0] == 2.0
    assert self.table.column('verified')[0] == 1.0
    assert self.table.column('hashtag_count')[0] == 1.0
    assert self.table.column('unigram_spam_freq')[0] == pytest.approx(0.5)
    assert self.table.column('degree_centrality')[0] == pytest.approx(
        self.cent.row('a')['degree_centrality']
    )
    assert self.table.column('statuses_count')[1] == 10.0

  def test_columns_order(self) -> None:
    values = self.table.columns(['verified', 'ff_ratio'])
    np.testing.assert_array_equal(values[0], [1.0, 2.0])
    with pytest.raises(errors.DimensionMismatch):
      self.table.columns(['nope'])

  def test_unlabeled_rows(self) -> None:
    users = [self.d.get_user('d'), self.d.get_user('a')]
    t = table.build_feature_table(
        self.d,
        self.cent,
        metadata.compute_all_metadata(self.d, users),
        text.compute_all_text(self.d, users),
        users=users,
    )
    assert t.ids == ('d', 'a')
    assert not t.has_labels

  def test_missing_block(self) -> None:
    with pytest.raises(errors.MissingUser, match='text features'):
      table.build_feature_table(
          self.d, self.cent, metadata.compute_all_metadata(self.d), {}
      )

  def test_csv_round_trip(self, tmp_path) -> None:
    path = str(tmp_path / 'features.csv')
    table.write_feature_table(path, self.table)
    header = (tmp_path / 'features.csv').read_text().splitlines()[0]
    assert header.startswith('id,ff_ratio,')
    assert header.endswith(',label')
    loaded = table.read_feature_table(path)
    assert loaded.names == self.table.names
    assert loaded.ids == self.table.ids
    np.testing.assert_array_equal(loaded.values, self.table.values)
    np.testing.assert_array_equal(loaded.labels, self.table.labels)


def test_non_finite_rejected() -> None:
  with pytest.raises(errors.NonFinite):
    table.FeatureTable(('f',), ('u',), np.array([[np.nan]]))


def test_label_length() -> None:
  with pytest.raises(errors.LengthMismatch):
    table.FeatureTable(('f',), ('u',), np.zeros((1, 1)), np.array([0, 1]))
