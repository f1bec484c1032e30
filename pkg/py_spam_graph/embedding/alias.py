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

"""Alias tables for O(1) sampling from a fixed categorical distribution."""

from __future__ import annotations

import dataclasses

import numpy as np


@dataclasses.dataclass(frozen=True)
class AliasTable:
  """Vose alias table.

  Attributes:
    prob (np.ndarray): Probability of keeping the drawn column.
    alias (np.ndarray): The outcome taken when the column is rejected.
  """

  prob: np.ndarray
  alias: np.ndarray

  def __len__(self) -> int:
    return len(self.prob)

  def draw(self, u_column: float, u_accept: float) -> int:
    """One outcome from two uniforms in [0, 1)."""
    column = min(int(u_column * len(self.prob)), len(self.prob) - 1)
    if u_accept < self.prob[column]:
      return column
    return int(self.alias[column])

  def sample(self, rng: np.random.Generator, size: int) -> np.ndarray:
    """Vectorized draws."""
    columns = rng.integers(0, len(self.prob), size=size)
    accept = rng.random(size) < self.prob[columns]
    return np.where(accept, columns, self.alias[columns])


def create_alias_table(weights) -> AliasTable:
  """Build the alias table of the distribution proportional to weights.

  Args:
    weights: Non-negative, unnormalized weights with a positive sum.

  Returns:
    AliasTable: The table.
  """
  weights = np.asarray(weights, dtype=np.float64)
  if weights.ndim != 1 or len(weights) == 0:
    raise ValueError('weights must be a non-empty vector')
  total = weights.sum()
  if total <= 0 or np.any(weights < 0):
    raise ValueError('weights must be non-negative with a positive sum')

  n = len(weights)
  norm_prob = weights * n / total
  prob = np.zeros(n)
  alias = np.zeros(n, dtype=np.int64)
  small = [i for i, p in enumerate(norm_prob) if p < 1.0]
  large = [i for i, p in enumerate(norm_prob) if p >= 1.0]
  while small and large:
    small_index, large_index = small.pop(), large.pop()
    prob[small_index] = norm_prob[small_index]
    alias[small_index] = large_index
    norm_prob[large_index] -= 1.0 - norm_prob[small_index]
    if norm_prob[large_index] < 1.0:
      small.append(large_index)
    else:
      large.append(large_index)
  # leftovers are 1 up to rounding
  for i in large + small:
    prob[i] = 1.0
    alias[i] = i
  return AliasTable(prob=prob, alias=alias)
