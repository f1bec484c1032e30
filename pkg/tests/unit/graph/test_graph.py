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

"""Follower graph unit test."""

import numpy as np
from py_spam_graph.graph import graph
from py_spam_graph.util import errors
import pytest


def test_single_edge() -> None:
  g = graph.build_graph([('a', 'b')])
  assert g.nodes == ('a', 'b')
  assert g.out_adj[g.index('a')] == (g.index('b'),)
  assert g.in_adj[g.index('b')] == (g.index('a'),)


def test_two_cycle() -> None:
  g = graph.build_graph([('a', 'b'), ('b', 'a')])
  assert g.has_edge(0, 1) and g.has_edge(1, 0)
  assert g.edge_count == 2


def test_index_is_lexicographic() -> None:
  g = graph.build_graph([('zed', 'amy'), ('bob', 'zed')], extra_nodes=['cat'])
  assert g.nodes == ('amy', 'bob', 'cat', 'zed')
  assert g.out_adj[g.index('cat')] == ()


def test_duplicates_collapse() -> None:
  g = graph.build_graph([('a', 'b'), ('a', 'b')])
  assert g.edge_count == 1


def test_self_loop() -> None:
  with pytest.raises(errors.SelfLoop):
    graph.build_graph([('a', 'b'), ('c', 'c')])


def test_adjacency_consistent() -> None:
  rng = np.random.default_rng(3)
  ids = [f'n{i}' for i in range(60)]
  edges = set()
  while len(edges) < 1000:
    a, b = rng.choice(ids, size=2, replace=False)
    edges.add((str(a), str(b)))
  g = graph.build_graph(sorted(edges))
  assert g.edge_count == 1000
  for u in range(g.n):
    assert list(g.out_adj[u]) == sorted(g.out_adj[u])
    for v in range(g.n):
      assert (v in g.out_adj[u]) == (u in g.in_adj[v])


def test_reverse() -> None:
  g = graph.build_graph([('a', 'b'), ('b', 'c')])
  r = graph.reverse(g)
  assert r.edges() == [(1, 0), (2, 1)]
  assert graph.reverse(r) == g


def test_undirected_adj() -> None:
  g = graph.build_graph([('a', 'b'), ('b', 'a'), ('c', 'a')])
  assert g.undirected_adj() == ((1, 2), (0,), (0,))


def test_adjacency_matrix() -> None:
  g = graph.build_graph([('a', 'b'), ('b', 'c')])
  np.testing.assert_array_equal(
      g.adjacency_matrix().toarray(), [[0, 1, 0], [0, 0, 1], [0, 0, 0]]
  )
