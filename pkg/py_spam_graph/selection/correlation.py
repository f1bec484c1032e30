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

"""Feature to label correlation and feature to feature redundancy."""

from __future__ import annotations

from collections.abc import Sequence
import dataclasses
import itertools
import logging

import numpy as np
from scipy import stats

from py_spam_graph.features import table
from py_spam_graph.util import errors

CORRELATION_THRESHOLD = 0.1
REDUNDANCY_THRESHOLD = 0.9


@dataclasses.dataclass(frozen=True)
class Correlation:
  """Pearson r; degenerate is set when a vector is constant and r is 0."""

  r: float
  degenerate: bool = False

  def __float__(self) -> float:
    return self.r


def pearson(x, y) -> Correlation:
  """Sample Pearson correlation of x and y.

  Raises:
    LengthMismatch: Lengths differ or are below 2.
  """
  x = np.asarray(x, dtype=np.float64)
  y = np.asarray(y, dtype=np.float64)
  if len(x) != len(y) or len(x) < 2:
    raise errors.LengthMismatch(
        f'pearson needs two equal lengths >= 2, got {len(x)} and {len(y)}'
    )
  if np.all(x == x[0]) or np.all(y == y[0]):
    return Correlation(0.0, degenerate=True)
  return Correlation(float(stats.pearsonr(x, y).statistic))


def pearson_correlation(x, y) -> float:
  return pearson(x, y).r


def label_correlations(t: table.FeatureTable) -> dict[str, float]:
  """Pearson r of every column with the label.

  Raises:
    NoLabels: The table has no labels.
  """
  if not t.has_labels:
    raise errors.NoLabels('correlation selection needs a labeled table')
  correlations = {}
  for name in t.names:
    result = pearson(t.column(name), t.labels)
    if result.degenerate:
      logging.debug('Feature %s is constant, correlation set to 0', name)
    correlations[name] = result.r
  return correlations


def correlation_select(
    t: table.FeatureTable, threshold: float = CORRELATION_THRESHOLD
) -> list[str]:
  """Features with |r| >= threshold, by descending |r| then column order.

  Raises:
    NoLabels: The table has no labels.
  """
  correlations = label_correlations(t)
  chosen = [name for name in t.names if abs(correlations[name]) >= threshold]
  return sorted(chosen, key=lambda name: -abs(correlations[name]))


def redundant_pairs(
    t: table.FeatureTable,
    names: Sequence[str],
    threshold: float = REDUNDANCY_THRESHOLD,
) -> list[tuple[str, str, float]]:
  """Pairs of names whose columns have |r| >= threshold."""
  pairs = []
  for first, second in itertools.combinations(names, 2):
    r = pearson_correlation(t.column(first), t.column(second))
    if abs(r) >= threshold:
      pairs.append((first, second, r))
  return pairs
