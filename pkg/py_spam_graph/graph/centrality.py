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

"""The five centralities of the follower graph."""

from __future__ import annotations

import collections
from concurrent import futures
import dataclasses
import enum
import logging

import numpy as np

from py_spam_graph.data_logger import data_logger
from py_spam_graph.graph import graph
from py_spam_graph.util import errors
from py_spam_graph.util import util

EIGEN_TOL = 1e-8
EIGEN_MAX_ITERS = 1000

CENTRALITY_HEADERS = (
    'id',
    'degree',
    'betweenness',
    'in_eig',
    'out_eig',
    'pagerank',
)


class Direction(util.LowerEnum):
  IN = enum.auto()
  OUT = enum.auto()


@dataclasses.dataclass(frozen=True)
class CentralityTable:
  """Per-node centralities, rows in graph node order."""

  ids: tuple[str, ...]
  degree: np.ndarray
  betweenness: np.ndarray
  in_eigenvector: np.ndarray
  out_eigenvector: np.ndarray
  pagerank: np.ndarray

  def __post_init__(self) -> None:
    object.__setattr__(
        self, '_index', {node_id: i for i, node_id in enumerate(self.ids)}
    )

  def has_node(self, node_id: str) -> bool:
    return node_id in self._index

  def row(self, node_id: str) -> dict[str, float]:
    i = self._index[node_id]
    return {
        'degree_centrality': float(self.degree[i]),
        'betweenness_centrality': float(self.betweenness[i]),
        'in_eig_centrality': float(self.in_eigenvector[i]),
        'out_eig_centrality': float(self.out_eigenvector[i]),
        'pagerank_centrality': float(self.pagerank[i]),
    }

  def as_dict(self) -> dict[str, dict[str, float]]:
    return {node_id: self.row(node_id) for node_id in self.ids}


def degree_centrality(g: graph.SocialGraph) -> np.ndarray:
  """(in_degree + out_degree) / (n - 1) per node.

  Raises:
    GraphTooSmall: The graph has fewer than 2 nodes.
  """
  if g.n < 2:
    raise errors.GraphTooSmall(f'degree centrality needs n >= 2, got {g.n}')
  return (g.in_degree() + g.out_degree()) / (g.n - 1)


def _single_source_dependency(g: graph.SocialGraph, s: int) -> np.ndarray:
  """Brandes dependency of every node on shortest paths from s."""
  stack = []
  preds: list[list[int]] = [[] for _ in range(g.n)]
  sigma = np.zeros(g.n)
  sigma[s] = 1.0
  dist = np.full(g.n, -1, dtype=np.int64)
  dist[s] = 0
  queue = collections.deque([s])
  while queue:
    v = queue.popleft()
    stack.append(v)
    for w in g.out_adj[v]:
      if dist[w] < 0:
        queue.append(w)
        dist[w] = dist[v] + 1
      if dist[w] == dist[v] + 1:
        sigma[w] += sigma[v]
        preds[w].append(v)

  # stack pops in order of non-increasing distance from s
  delta = np.zeros(g.n)
  while stack:
    w = stack.pop()
    for v in preds[w]:
      delta[v] += sigma[v] / sigma[w] * (1.0 + delta[w])
  delta[s] = 0.0
  return delta


def betweenness_centrality(
    g: graph.SocialGraph, workers: int = 1
) -> np.ndarray:
  """Shortest-path betweenness over directed unweighted paths.

  Endpoints are excluded and the result is normalized by (n-1)(n-2).
  Sources may run in parallel; the per-source dependencies are summed in
  source order so the result does not depend on scheduling.

  Raises:
    GraphTooSmall: The graph has fewer than 3 nodes.
  """
  if g.n < 3:
    raise errors.GraphTooSmall(f'betweenness needs n >= 3, got {g.n}')

  sources = range(g.n)
  if workers > 1:
    with futures.ThreadPoolExecutor(max_workers=workers) as executor:
      dependencies = list(
          executor.map(lambda s: _single_source_dependency(g, s), sources)
      )
  else:
    dependencies = [_single_source_dependency(g, s) for s in sources]

  total = np.zeros(g.n)
  for dependency in dependencies:
    total += dependency
  return total / ((g.n - 1) * (g.n - 2))


def eigenvector_centrality(
    g: graph.SocialGraph,
    direction: Direction | str = Direction.IN,
    tol: float = EIGEN_TOL,
    max_iters: int = EIGEN_MAX_ITERS,
) -> np.ndarray:
  """Eigenvector centrality by power iteration.

  In: a node scores from the nodes that point at it (x <- A^T x).
  Out is In on the reversed graph.

  Raises:
    NotConverged: The iteration vanished or did not settle in max_iters.
  """
  direction = Direction.get(direction)
  if direction is Direction.OUT:
    return eigenvector_centrality(
        graph.reverse(g), Direction.IN, tol=tol, max_iters=max_iters
    )

  a_transpose = g.adjacency_matrix().T.tocsr()
  x = np.full(g.n, 1.0 / np.sqrt(g.n))
  for iteration in range(1, max_iters + 1):
    x_next = a_transpose @ x
    norm = np.linalg.norm(x_next)
    if norm == 0.0:
      logging.error('Eigenvector iteration vanished at step %d', iteration)
      raise errors.NotConverged('eigenvector centrality', max_iters)
    x_next /= norm
    if np.max(np.abs(x_next - x)) < tol:
      logging.debug('Eigenvector converged after %d steps', iteration)
      return x_next / np.linalg.norm(x_next)
    x = x_next
  raise errors.NotConverged('eigenvector centrality', max_iters)


def pagerank(
    g: graph.SocialGraph,
    damping: float = 0.85,
    tol: float = 1e-10,
    max_iters: int = 200,
) -> np.ndarray:
  """PageRank with uniform teleport; dangling mass is spread uniformly.

  Raises:
    NotConverged: The L1 change is still >= tol after max_iters.
  """
  n = g.n
  if n < 1:
    raise errors.GraphTooSmall('pagerank needs at least one node')

  out_degree = g.out_degree()
  dangling = out_degree == 0
  inv_out = np.divide(
      1.0, out_degree, out=np.zeros(n), where=~dangling
  )
  a_transpose = g.adjacency_matrix().T.tocsr()

  x = np.full(n, 1.0 / n)
  for iteration in range(1, max_iters + 1):
    spread = a_transpose @ (x * inv_out)
    dangling_mass = x[dangling].sum()
    x_next = damping * (spread + dangling_mass / n) + (1.0 - damping) / n
    x_next /= x_next.sum()
    change = np.abs(x_next - x).sum()
    x = x_next
    if change < tol:
      logging.debug('PageRank converged after %d steps', iteration)
      return x
  raise errors.NotConverged('pagerank', max_iters)


def compute_centralities(
    g: graph.SocialGraph, workers: int = 1, damping: float = 0.85
) -> CentralityTable:
  """All five centralities of g."""
  logging.info('Computing centralities on %d nodes', g.n)
  return CentralityTable(
      ids=g.nodes,
      degree=degree_centrality(g),
      betweenness=betweenness_centrality(g, workers=workers),
      in_eigenvector=eigenvector_centrality(g, Direction.IN),
      out_eigenvector=eigenvector_centrality(g, Direction.OUT),
      pagerank=pagerank(g, damping=damping),
  )


def write_centralities(path: str, table: CentralityTable) -> None:
  """Write centralities.csv with 17 significant digits."""
  data_logger.write_rows(
      path,
      CENTRALITY_HEADERS,
      (
          (
              node_id,
              float(table.degree[i]),
              float(table.betweenness[i]),
              float(table.in_eigenvector[i]),
              float(table.out_eigenvector[i]),
              float(table.pagerank[i]),
          )
          for i, node_id in enumerate(table.ids)
      ),
  )


def read_centralities(path: str) -> CentralityTable:
  headers, rows = data_logger.read_rows(path)
  if tuple(headers) != CENTRALITY_HEADERS:
    raise errors.MalformedLine(1, path, 'unexpected centrality header')
  columns = list(zip(*rows)) if rows else [()] * len(CENTRALITY_HEADERS)
  values = [np.array(col, dtype=np.float64) for col in columns[1:]]
  return CentralityTable(tuple(columns[0]), *values)
