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

"""Skip-gram training unit test."""

import itertools

import numpy as np
from py_spam_graph.embedding import node2vec
from py_spam_graph.embedding import skipgram
from py_spam_graph.graph import graph
from py_spam_graph.util import errors
import pytest


def test_context_pairs() -> None:
  walks = node2vec.WalkSet(walks=((0, 1, 2), (3,)), node_count=4)
  pairs = {tuple(pair) for pair in skipgram.context_pairs(walks, window=1)}
  assert pairs == {(0, 1), (1, 0), (1, 2), (2, 1)}
  pairs = skipgram.context_pairs(walks, window=5)
  assert len(pairs) == 6


def test_negative_table_follows_frequency() -> None:
  walks = node2vec.WalkSet(walks=((0, 0, 0, 1), (2,)), node_count=4)
  table = skipgram.negative_table(walks)
  n = len(table)
  mass = table.prob / n
  for column in range(n):
    mass[table.alias[column]] += (1.0 - table.prob[column]) / n
  weights = np.array([3.0, 1.0, 1.0, 0.0]) ** 0.75
  np.testing.assert_allclose(mass, weights / weights.sum())


class TestTrainSkipgram:

  @pytest.fixture(scope='class', autouse=True)
  def setup_barbell(self):
    left = [f'a{i}' for i in range(10)]
    right = [f'b{i}' for i in range(10)]
    edges = [
        (u, v)
        for clique in (left, right)
        for u, v in itertools.combinations(clique, 2)
    ]
    g = graph.build_graph(edges + [('a0', 'b0')])
    TestTrainSkipgram.cfg = node2vec.Node2VecConfig(dimensions=32, seed=5)
    TestTrainSkipgram.walks = node2vec.generate_walks(g, self.cfg)
    TestTrainSkipgram.result = skipgram.train_skipgram(self.walks, self.cfg)
    yield

  def test_shape(self) -> None:
    assert self.result.vectors.shape == (20, 32)
    assert self.result.vectors.dtype == np.float64
    assert len(self.result.epoch_losses) == self.cfg.epochs

  def test_loss_decreases(self) -> None:
    assert self.result.epoch_losses[-1] < self.result.epoch_losses[0]
    assert all(np.isfinite(self.result.epoch_losses))

  def test_deterministic(self) -> None:
    again = skipgram.train_skipgram(self.walks, self.cfg)
    np.testing.assert_array_equal(again.vectors, self.result.vectors)
    assert again.epoch_losses == self.result.epoch_losses


def test_untrained_node_keeps_initial_range() -> None:
  walks = node2vec.WalkSet(walks=((0, 1), (1, 0), (2,)), node_count=3)
  cfg = node2vec.Node2VecConfig(dimensions=8)
  vectors = skipgram.train_skipgram(walks, cfg).vectors
  assert np.all(np.abs(vectors[2]) <= 0.5 / 8)


def test_empty_walks() -> None:
  with pytest.raises(errors.EmptyWalks):
    skipgram.train_skipgram(
        node2vec.WalkSet(walks=(), node_count=0), node2vec.Node2VecConfig()
    )


def sgd_step(w_in, w_out, centers, contexts, lr):
  """One update without negatives on copies of the weights."""
  w_in, w_out = w_in.copy(), w_out.copy()
  negatives = np.zeros((len(centers), 0), dtype=np.int64)
  skipgram._sgd_step(
      w_in, w_out, np.array(centers), np.array(contexts), negatives, lr
  )
  return w_in, w_out


def test_minibatch_uses_weights_from_before_the_batch() -> None:
  rng = np.random.default_rng(2)
  w_in = (0.3 * rng.normal(size=(3, 4))).astype(np.float32)
  w_out = (0.3 * rng.normal(size=(3, 4))).astype(np.float32)

  batched = sgd_step(w_in, w_out, [0, 0], [1, 1], 0.05)
  doubled = sgd_step(w_in, w_out, [0], [1], 0.1)
  np.testing.assert_allclose(batched[0], doubled[0], rtol=1e-6)
  np.testing.assert_allclose(batched[1], doubled[1], rtol=1e-6)

  sequential = sgd_step(*sgd_step(w_in, w_out, [0], [1], 0.05), [0], [1], 0.05)
  assert not np.allclose(sequential[0], batched[0], rtol=0, atol=1e-9)


def test_batch_size_changes_the_updates() -> None:
  walks = node2vec.WalkSet(
      walks=((0, 1, 2, 3), (3, 2, 1, 0), (1, 3, 0, 2)), node_count=4
  )
  per_pair = node2vec.Node2VecConfig(dimensions=8, batch_size=1, seed=3)
  batched = node2vec.Node2VecConfig(dimensions=8, batch_size=512, seed=3)
  first = skipgram.train_skipgram(walks, per_pair).vectors
  again = skipgram.train_skipgram(walks, per_pair).vectors
  np.testing.assert_array_equal(first, again)
  other = skipgram.train_skipgram(walks, batched).vectors
  assert not np.array_equal(first, other)
