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

"""Node2Vec: biased second-order random walks over the follower graph.

Walks run on the undirected view of the graph. The first step from a node is
uniform over its neighbors; every later step is drawn from an alias table of
the (prev, cur) edge whose weights come from transition_weight.
"""

from __future__ import annotations

from concurrent import futures
import dataclasses
import logging
import pathlib

import numpy as np

from py_spam_graph.embedding import alias
from py_spam_graph.graph import graph
from py_spam_graph.util import errors
from py_spam_graph.util import json_dataclass

MAX_SEED = 2**64


@dataclasses.dataclass
class Node2VecConfig(json_dataclass.DataClassJsonMixIn):
  """The config for walk generation and skip-gram training.

  Attributes:
    dimensions (int): Embedding length.
    walk_length (int): Maximum nodes per walk.
    walks_per_node (int): Walks started from every node.
    return_p (float): Return parameter p.
    in_out_q (float): In-out parameter q.
    window (int): Context window on each side of the center node.
    negatives_per_positive (int): Negative samples per (center, context).
    epochs (int): Passes over all pairs.
    initial_lr (float): Learning rate at the first pair; it decays linearly
      to initial_lr / 100.
    batch_size (int): Pairs per SGD update; 1 is plain sequential SGD.
    seed (int): Seed of every random draw, 64-bit unsigned.
    workers (int): Threads for walk generation; results do not depend on it.
  """

  dimensions: int = 100
  walk_length: int = 25
  walks_per_node: int = 10
  return_p: float = 0.3
  in_out_q: float = 1.0
  window: int = 10
  negatives_per_positive: int = 5
  epochs: int = 5
  initial_lr: float = 0.025
  batch_size: int = 512
  seed: int = 0
  workers: int = 1

  def __post_init__(self) -> None:
    checks = {
        'dimensions >= 1': self.dimensions >= 1,
        'walk_length >= 2': self.walk_length >= 2,
        'walks_per_node >= 1': self.walks_per_node >= 1,
        'return_p > 0': self.return_p > 0,
        'in_out_q > 0': self.in_out_q > 0,
        'window >= 1': self.window >= 1,
        'negatives_per_positive >= 0': self.negatives_per_positive >= 0,
        'epochs >= 1': self.epochs >= 1,
        'initial_lr > 0': self.initial_lr > 0,
        'batch_size >= 1': self.batch_size >= 1,
        'workers >= 1': self.workers >= 1,
        '0 <= seed < 2**64': 0 <= self.seed < MAX_SEED,
    }
    failed = [name for name, ok in checks.items() if not ok]
    if failed:
      raise errors.ConfigInvalid(f'Node2VecConfig requires {", ".join(failed)}')


@dataclasses.dataclass(frozen=True)
class WalkGraph:
  """The undirected view of a SocialGraph that walks run on."""

  neighbors: tuple[tuple[int, ...], ...]
  neighbor_sets: tuple[frozenset[int], ...]

  @classmethod
  def from_graph(cls, g: graph.SocialGraph) -> WalkGraph:
    neighbors = g.undirected_adj()
    return cls(neighbors, tuple(frozenset(nbrs) for nbrs in neighbors))

  @property
  def n(self) -> int:
    return len(self.neighbors)

  def is_edge(self, u: int, v: int) -> bool:
    return v in self.neighbor_sets[u]


@dataclasses.dataclass(frozen=True)
class WalkSet:
  """Walks as node-index sequences, node-major then walk-index order."""

  walks: tuple[tuple[int, ...], ...]
  node_count: int

  def __len__(self) -> int:
    return len(self.walks)


@dataclasses.dataclass(frozen=True)
class EmbeddingMatrix:
  """One real vector per node, rows in graph node order."""

  ids: tuple[str, ...]
  vectors: np.ndarray

  def __post_init__(self) -> None:
    if self.vectors.shape[0] != len(self.ids):
      raise errors.DimensionMismatch(
          f'{self.vectors.shape[0]} rows for {len(self.ids)} ids'
      )
    object.__setattr__(
        self, '_index', {node_id: i for i, node_id in enumerate(self.ids)}
    )

  @property
  def dimensions(self) -> int:
    return self.vectors.shape[1]

  def has_node(self, node_id: str) -> bool:
    return node_id in self._index

  def vector(self, node_id: str) -> np.ndarray:
    if node_id not in self._index:
      raise errors.MissingEmbedding(node_id)
    return self.vectors[self._index[node_id]]


def _as_walk_graph(g: graph.SocialGraph | WalkGraph) -> WalkGraph:
  if isinstance(g, WalkGraph):
    return g
  return WalkGraph.from_graph(g)


def transition_weight(
    prev: int,
    cur: int,
    nxt: int,
    g: graph.SocialGraph | WalkGraph,
    p: float,
    q: float,
) -> float:
  """Unnormalized second-order weight of stepping cur -> nxt after prev.

  Args:
    prev: The node visited before cur.
    cur: The current node.
    nxt: The candidate next node, a neighbor of cur.
    g: The graph; walks use its undirected view.
    p: The return parameter.
    q: The in-out parameter.

  Returns:
    1/p when returning to prev, 1 when nxt is a neighbor of prev, 1/q
    otherwise.

  Raises:
    NotAnEdge: cur and nxt are not adjacent.
  """
  walk_graph = _as_walk_graph(g)
  if not walk_graph.is_edge(cur, nxt):
    raise errors.NotAnEdge(f'{cur} and {nxt} are not adjacent')
  if nxt == prev:
    return 1.0 / p
  if walk_graph.is_edge(prev, nxt):
    return 1.0
  return 1.0 / q


def edge_alias_tables(
    walk_graph: WalkGraph, p: float, q: float
) -> dict[tuple[int, int], alias.AliasTable]:
  """Alias tables over the neighbors of cur for every (prev, cur) step."""
  tables = {}
  for prev in range(walk_graph.n):
    for cur in walk_graph.neighbors[prev]:
      weights = [
          transition_weight(prev, cur, nxt, walk_graph, p, q)
          for nxt in walk_graph.neighbors[cur]
      ]
      tables[(prev, cur)] = alias.create_alias_table(weights)
  return tables


def _walk_rng(seed: int, node: int, walk_index: int) -> np.random.Generator:
  return np.random.default_rng([seed, node, walk_index])


def node2vec_walk(
    walk_graph: WalkGraph,
    tables: dict[tuple[int, int], alias.AliasTable],
    start_node: int,
    walk_length: int,
    rng: np.random.Generator,
) -> tuple[int, ...]:
  """One walk of at most walk_length nodes from start_node."""
  walk = [start_node]
  uniforms = rng.random((walk_length, 2))
  while len(walk) < walk_length:
    cur = walk[-1]
    cur_nbrs = walk_graph.neighbors[cur]
    if not cur_nbrs:
      break
    u_column, u_accept = uniforms[len(walk)]
    if len(walk) == 1:
      index = min(int(u_column * len(cur_nbrs)), len(cur_nbrs) - 1)
      walk.append(cur_nbrs[index])
    else:
      table = tables[(walk[-2], cur)]
      walk.append(cur_nbrs[table.draw(u_column, u_accept)])
  return tuple(walk)


def generate_walks(g: graph.SocialGraph, cfg: Node2VecConfig) -> WalkSet:
  """walks_per_node walks from every node of g.

  Each walk has its own random stream seeded by (seed, node, walk_index), so
  serial and threaded runs give the same WalkSet.
  """
  if g.n == 0:
    raise errors.GraphTooSmall('cannot walk an empty graph')
  walk_graph = WalkGraph.from_graph(g)
  tables = edge_alias_tables(walk_graph, cfg.return_p, cfg.in_out_q)
  logging.info(
      'Generating %d walks per node on %d nodes (%d alias tables)',
      cfg.walks_per_node,
      g.n,
      len(tables),
  )

  def walks_from(node: int) -> list[tuple[int, ...]]:
    return [
        node2vec_walk(
            walk_graph,
            tables,
            node,
            cfg.walk_length,
            _walk_rng(cfg.seed, node, walk_index),
        )
        for walk_index in range(cfg.walks_per_node)
    ]

  if cfg.workers > 1:
    with futures.ThreadPoolExecutor(max_workers=cfg.workers) as executor:
      per_node = list(executor.map(walks_from, range(g.n)))
  else:
    per_node = [walks_from(node) for node in range(g.n)]

  walks = tuple(walk for node_walks in per_node for walk in node_walks)
  return WalkSet(walks=walks, node_count=g.n)


def embed(g: graph.SocialGraph, cfg: Node2VecConfig) -> EmbeddingMatrix:
  """Node2Vec embedding of every node of g."""
  # Imported here: skipgram imports this module for the config and types.
  # pylint: disable-next=g-import-not-at-top
  from py_spam_graph.embedding import skipgram

  walks = generate_walks(g, cfg)
  result = skipgram.train_skipgram(walks, cfg)
  return EmbeddingMatrix(ids=g.nodes, vectors=result.vectors)


def write_embeddings(path: str, emb: EmbeddingMatrix) -> None:
  """Word2vec text format: `<count> <dim>` then `<id> v1 ... vd`."""
  lines = [f'{len(emb.ids)} {emb.dimensions}']
  for node_id, row in zip(emb.ids, emb.vectors):
    lines.append(' '.join([node_id] + ['%.17g' % value for value in row]))
  pathlib.Path(path).write_text('\n'.join(lines) + '\n', encoding='utf-8')


def read_embeddings(path: str) -> EmbeddingMatrix:
  with open(path, encoding='utf-8') as file:
    header = file.readline().split()
    if len(header) != 2:
      raise errors.MalformedLine(1, path, 'expected `<count> <dim>`')
    count, dim = int(header[0]), int(header[1])
    ids, rows = [], []
    for line_no, line in enumerate(file, start=2):
      parts = line.split()
      if len(parts) != dim + 1:
        raise errors.MalformedLine(line_no, path, f'expected {dim} values')
      ids.append(parts[0])
      rows.append([float(value) for value in parts[1:]])
  if len(ids) != count:
    raise errors.MalformedLine(1, path, f'header says {count} rows')
  vectors = np.array(rows, dtype=np.float64).reshape(count, dim)
  return EmbeddingMatrix(ids=tuple(ids), vectors=vectors)
