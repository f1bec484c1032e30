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

"""The directed follower graph.

An edge (a, b) means account a follows account b and is stored as a -> b.
Node indices follow the lexicographic order of the ids, so every structure
built from the graph is independent of input order.
"""

from __future__ import annotations

from collections.abc import Iterable
import dataclasses
import logging

import numpy as np
from scipy import sparse

from py_spam_graph.util import errors


@dataclasses.dataclass(frozen=True)
class SocialGraph:
  """Directed graph with sorted, mutually consistent adjacency lists.

  Attributes:
    nodes (tuple[str, ...]): The node ids, sorted.
    out_adj (tuple[tuple[int, ...], ...]): Successor indices per node.
    in_adj (tuple[tuple[int, ...], ...]): Predecessor indices per node.
  """

  nodes: tuple[str, ...]
  out_adj: tuple[tuple[int, ...], ...]
  in_adj: tuple[tuple[int, ...], ...]

  def __post_init__(self) -> None:
    object.__setattr__(
        self, '_index', {node: i for i, node in enumerate(self.nodes)}
    )

  @property
  def n(self) -> int:
    return len(self.nodes)

  @property
  def edge_count(self) -> int:
    return sum(len(succ) for succ in self.out_adj)

  def index(self, node_id: str) -> int:
    return self._index[node_id]

  def has_node(self, node_id: str) -> bool:
    return node_id in self._index

  def has_edge(self, u: int, v: int) -> bool:
    return v in self.out_adj[u]

  def out_degree(self) -> np.ndarray:
    return np.array([len(succ) for succ in self.out_adj], dtype=np.float64)

  def in_degree(self) -> np.ndarray:
    return np.array([len(pred) for pred in self.in_adj], dtype=np.float64)

  def edges(self) -> list[tuple[int, int]]:
    return [(u, v) for u, succ in enumerate(self.out_adj) for v in succ]

  def undirected_adj(self) -> tuple[tuple[int, ...], ...]:
    """Sorted neighbor lists of the undirected view (either direction)."""
    return tuple(
        tuple(sorted(set(succ) | set(pred)))
        for succ, pred in zip(self.out_adj, self.in_adj)
    )

  def adjacency_matrix(self) -> sparse.csr_matrix:
    """A with A[u, v] = 1 for every edge u -> v."""
    edges = self.edges()
    rows = np.array([u for u, _ in edges], dtype=np.int64)
    cols = np.array([v for _, v in edges], dtype=np.int64)
    data = np.ones(len(edges), dtype=np.float64)
    return sparse.csr_matrix((data, (rows, cols)), shape=(self.n, self.n))


def _from_index_edges(
    nodes: tuple[str, ...], index_edges: Iterable[tuple[int, int]]
) -> SocialGraph:
  out_sets: list[set[int]] = [set() for _ in nodes]
  in_sets: list[set[int]] = [set() for _ in nodes]
  for u, v in index_edges:
    out_sets[u].add(v)
    in_sets[v].add(u)
  return SocialGraph(
      nodes=nodes,
      out_adj=tuple(tuple(sorted(s)) for s in out_sets),
      in_adj=tuple(tuple(sorted(s)) for s in in_sets),
  )


def build_graph(
    edges: Iterable[tuple[str, str]], extra_nodes: Iterable[str] = ()
) -> SocialGraph:
  """Build the follower graph.

  Args:
    edges: (follower, followed) pairs, already free of self-loops.
    extra_nodes: Ids to add as nodes even without edges (isolated users).

  Returns:
    SocialGraph: The graph; duplicate edges collapse into one.

  Raises:
    SelfLoop: An edge has the same id on both ends.
  """
  edges = list(edges)
  ids = {node for edge in edges for node in edge}
  ids.update(extra_nodes)
  nodes = tuple(sorted(ids))
  index = {node: i for i, node in enumerate(nodes)}

  index_edges = []
  for line_no, (a, b) in enumerate(edges, start=1):
    if a == b:
      raise errors.SelfLoop(a, line_no)
    index_edges.append((index[a], index[b]))

  g = _from_index_edges(nodes, index_edges)
  logging.info('Built graph with %d nodes and %d edges', g.n, g.edge_count)
  return g


def reverse(g: SocialGraph) -> SocialGraph:
  """The graph with every edge direction flipped."""
  return SocialGraph(nodes=g.nodes, out_adj=g.in_adj, in_adj=g.out_adj)


def relabel(g: SocialGraph, mapping: dict[str, str]) -> SocialGraph:
  """The same graph with node ids renamed through mapping."""
  return build_graph(
      [(mapping[g.nodes[u]], mapping[g.nodes[v]]) for u, v in g.edges()],
      extra_nodes=[mapping[node] for node in g.nodes],
  )
