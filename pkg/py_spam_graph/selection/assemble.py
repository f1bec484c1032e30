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

"""Selected features, standardized, followed by the node embedding."""

from __future__ import annotations

from collections.abc import Sequence
import dataclasses
from typing import Optional

import numpy as np

from py_spam_graph.data_logger import data_logger
from py_spam_graph.embedding import node2vec
from py_spam_graph.features import table
from py_spam_graph.util import errors
from py_spam_graph.util import json_dataclass


@dataclasses.dataclass(frozen=True)
class Standardizer(json_dataclass.DataClassJsonMixIn):
  """Training means and standard deviations of the selected features.

  A constant column keeps scale 1 so it maps to 0.
  """

  names: list[str]
  means: list[float]
  scales: list[float]

  @classmethod
  def fit(cls, t: table.FeatureTable, names: Sequence[str]) -> Standardizer:
    values = t.columns(names)
    means = values.mean(axis=0) if len(values) else np.zeros(len(names))
    stds = values.std(axis=0) if len(values) else np.ones(len(names))
    scales = np.where(stds > 0, stds, 1.0)
    return cls(list(names), means.tolist(), scales.tolist())

  def transform(self, t: table.FeatureTable) -> np.ndarray:
    values = t.columns(self.names)
    return (values - np.array(self.means)) / np.array(self.scales)


@dataclasses.dataclass(frozen=True)
class AssembledVectors:
  """W = standardized selected features followed by the embedding.

  Attributes:
    ids (tuple[str, ...]): User id of every row.
    names (tuple[str, ...]): Selected feature names then v1..vd.
    values (np.ndarray): The (rows, columns) matrix.
    labels (np.ndarray | None): 0/1 labels when the table had them.
    standardizer (Standardizer): The statistics used for the features.
  """

  ids: tuple[str, ...]
  names: tuple[str, ...]
  values: np.ndarray
  labels: Optional[np.ndarray]
  standardizer: Standardizer

  @property
  def dimensions(self) -> int:
    return self.values.shape[1]


def embedding_names(dimensions: int) -> list[str]:
  return [f'v{i}' for i in range(1, dimensions + 1)]


def assemble(
    t: table.FeatureTable,
    selected: Sequence[str],
    emb: node2vec.EmbeddingMatrix,
    standardizer: Optional[Standardizer] = None,
) -> AssembledVectors:
  """Build W for every row of t.

  Args:
    t: The feature table.
    selected: Feature names in selection order.
    emb: The node embeddings.
    standardizer: Stored training statistics; fitted on t when None.

  Returns:
    AssembledVectors: Rows of length len(selected) + emb.dimensions.

  Raises:
    MissingEmbedding: A user of t has no embedding row.
  """
  for user_id in t.ids:
    if not emb.has_node(user_id):
      raise errors.MissingEmbedding(user_id)
  standardizer = standardizer or Standardizer.fit(t, selected)
  if list(standardizer.names) != list(selected):
    raise errors.DimensionMismatch('standardizer was fitted on other features')
  features = standardizer.transform(t)
  vectors = np.array(
      [emb.vector(user_id) for user_id in t.ids], dtype=np.float64
  ).reshape(len(t.ids), emb.dimensions)
  return AssembledVectors(
      ids=t.ids,
      names=tuple(selected) + tuple(embedding_names(emb.dimensions)),
      values=np.hstack([features, vectors]),
      labels=t.labels,
      standardizer=standardizer,
  )


def write_assembled(path: str, vectors: AssembledVectors) -> None:
  """assembled.csv: `id,<features>,v1..vd[,label]`."""
  headers = [table.ID_HEADER, *vectors.names]
  if vectors.labels is not None:
    headers.append(table.LABEL_HEADER)
  logger = data_logger.DataLogger(path, headers)
  for i, user_id in enumerate(vectors.ids):
    row = [user_id, *(float(value) for value in vectors.values[i])]
    if vectors.labels is not None:
      row.append(int(vectors.labels[i]))
    logger.add_row(row)
  logger.flush_data()
