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

"""The per-user feature table every selection and model stage reads."""

from __future__ import annotations

from collections.abc import Mapping, Sequence
import dataclasses
import logging
from typing import Optional

import numpy as np

from py_spam_graph.data_logger import data_logger
from py_spam_graph.dataset import dataset
from py_spam_graph.features import metadata
from py_spam_graph.features import text
from py_spam_graph.graph import centrality
from py_spam_graph.util import errors

CENTRALITY_FEATURE_NAMES = (
    'degree_centrality',
    'betweenness_centrality',
    'in_eig_centrality',
    'out_eig_centrality',
    'pagerank_centrality',
)
RAW_FEATURE_NAMES = dataset.COUNT_FIELDS + dataset.BOOL_FIELDS

FEATURE_BLOCKS = {
    'metadata': metadata.METADATA_FEATURE_NAMES,
    'text': text.TEXT_FEATURE_NAMES,
    'centrality': CENTRALITY_FEATURE_NAMES,
    'raw': RAW_FEATURE_NAMES,
}
FEATURE_NAMES = tuple(
    name for names in FEATURE_BLOCKS.values() for name in names
)
ID_HEADER = 'id'
LABEL_HEADER = 'label'


@dataclasses.dataclass(frozen=True)
class FeatureTable:
  """Named feature columns, one row per user.

  Attributes:
    names (tuple[str, ...]): Column names in table order.
    ids (tuple[str, ...]): User id of every row.
    values (np.ndarray): (rows, columns) float64 matrix.
    labels (np.ndarray | None): 0/1 label per row, None for unlabeled rows.
  """

  names: tuple[str, ...]
  ids: tuple[str, ...]
  values: np.ndarray
  labels: Optional[np.ndarray] = None

  def __post_init__(self) -> None:
    if self.values.shape != (len(self.ids), len(self.names)):
      raise errors.DimensionMismatch(
          f'values {self.values.shape} for {len(self.ids)} ids and'
          f' {len(self.names)} names'
      )
    if self.labels is not None and len(self.labels) != len(self.ids):
      raise errors.LengthMismatch(
          f'{len(self.labels)} labels for {len(self.ids)} rows'
      )
    if not np.all(np.isfinite(self.values)):
      raise errors.NonFinite('feature table contains NaN or Inf')

  @property
  def has_labels(self) -> bool:
    return self.labels is not None

  def column(self, name: str) -> np.ndarray:
    return self.values[:, self.names.index(name)]

  def columns(self, names: Sequence[str]) -> np.ndarray:
    """The named columns, in the order of names."""
    missing = [name for name in names if name not in self.names]
    if missing:
      raise errors.DimensionMismatch(f'unknown feature columns {missing}')
    return self.values[:, [self.names.index(name) for name in names]]


def user_row(
    user: dataset.UserRecord,
    cent: centrality.CentralityTable,
    meta: metadata.MetadataFeatures,
    text_features: text.TextFeatures,
) -> list[float]:
  """The FEATURE_NAMES values of one user, booleans as 0/1."""
  cent_row = cent.row(user.id)
  return (
      meta.as_row()
      + text_features.as_row()
      + [cent_row[name] for name in CENTRALITY_FEATURE_NAMES]
      + [float(getattr(user, name)) for name in RAW_FEATURE_NAMES]
  )


def build_feature_table(
    d: dataset.Dataset,
    cent: centrality.CentralityTable,
    meta: Mapping[str, metadata.MetadataFeatures],
    text_features: Mapping[str, text.TextFeatures],
    users: Optional[Sequence[dataset.UserRecord]] = None,
) -> FeatureTable:
  """One row per user, the labeled users of d unless users is given.

  Args:
    d: The dataset.
    cent: Centralities of the full graph.
    meta: Metadata features by user id.
    text_features: Text features by user id.
    users: The rows to build; defaults to d.labeled_users.

  Returns:
    FeatureTable: The table; labels are set when every row is labeled.

  Raises:
    MissingUser: A user lacks one of the input blocks.
  """
  users = d.labeled_users if users is None else list(users)
  rows = []
  for user in users:
    if not cent.has_node(user.id):
      raise errors.MissingUser(user.id, 'centralities')
    if user.id not in meta:
      raise errors.MissingUser(user.id, 'metadata features')
    if user.id not in text_features:
      raise errors.MissingUser(user.id, 'text features')
    rows.append(user_row(user, cent, meta[user.id], text_features[user.id]))

  labels = None
  if users and all(user.is_labeled for user in users):
    labels = np.array([user.label for user in users], dtype=np.int64)
  width = len(FEATURE_NAMES)
  values = np.array(rows, dtype=np.float64).reshape(len(users), width)
  logging.info('Built feature table: %d rows x %d columns', len(users), width)
  return FeatureTable(
      names=FEATURE_NAMES,
      ids=tuple(user.id for user in users),
      values=values,
      labels=labels,
  )


def write_feature_table(path: str, table: FeatureTable) -> None:
  """features.csv: `id,<names>[,label]` with 17 significant digits."""
  headers = [ID_HEADER, *table.names]
  if table.has_labels:
    headers.append(LABEL_HEADER)
  logger = data_logger.DataLogger(path, headers)
  for i, user_id in enumerate(table.ids):
    row = [user_id, *(float(value) for value in table.values[i])]
    if table.has_labels:
      row.append(int(table.labels[i]))
    logger.add_row(row)
  logger.flush_data()


def read_feature_table(path: str) -> FeatureTable:
  headers, rows = data_logger.read_rows(path)
  if not headers or headers[0] != ID_HEADER:
    raise errors.MalformedLine(1, path, 'expected an `id` first column')
  has_labels = headers[-1] == LABEL_HEADER
  names = tuple(headers[1:-1] if has_labels else headers[1:])
  ids, values, labels = [], [], []
  for line_no, row in enumerate(rows, start=2):
    if len(row) != len(headers):
      raise errors.MalformedLine(
          line_no, path, f'expected {len(headers)} cells'
      )
    try:
      values.append([float(cell) for cell in row[1 : 1 + len(names)]])
      if has_labels:
        labels.append(int(row[-1]))
    except ValueError as e:
      raise errors.MalformedLine(line_no, path, str(e)) from e
    ids.append(row[0])
  return FeatureTable(
      names=names,
      ids=tuple(ids),
      values=np.array(values, dtype=np.float64).reshape(len(ids), len(names)),
      labels=np.array(labels, dtype=np.int64) if has_labels else None,
  )
