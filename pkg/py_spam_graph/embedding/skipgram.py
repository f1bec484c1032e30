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

"""Skip-gram with negative sampling over node2vec walks."""

from __future__ import annotations

import dataclasses
import logging

import numpy as np
from scipy import special

from py_spam_graph.embedding import alias
from py_spam_graph.embedding import node2vec
from py_spam_graph.util import errors

NEGATIVE_POWER = 0.75
MIN_LR_FRACTION = 0.01


@dataclasses.dataclass(frozen=True)
class SkipGramResult:
  """Trained center vectors plus the mean loss of every epoch."""

  vectors: np.ndarray
  epoch_losses: tuple[float, ...]


def walk_matrix(walks: node2vec.WalkSet) -> np.ndarray:
  """Walks padded with -1 into a (walk count, longest walk) array."""
  longest = max(len(walk) for walk in walks.walks)
  padded = np.full((len(walks), longest), -1, dtype=np.int64)
  for row, walk in enumerate(walks.walks):
    padded[row, : len(walk)] = walk
  return padded


def context_pairs(walks: node2vec.WalkSet, window: int) -> np.ndarray:
  """Every (center, context) pair at distance 1..window inside a walk.

  Returns:
    An int64 array of shape (pair count, 2).
  """
  padded = walk_matrix(walks)
  pairs = []
  for offset in range(1, min(window, padded.shape[1] - 1) + 1):
    left, right = padded[:, :-offset], padded[:, offset:]
    valid = (left >= 0) & (right >= 0)
    left, right = left[valid], right[valid]
    pairs.append(np.stack([left, right], axis=1))
    pairs.append(np.stack([right, left], axis=1))
  if not pairs:
    return np.zeros((0, 2), dtype=np.int64)
  return np.concatenate(pairs)


def negative_table(walks: node2vec.WalkSet) -> alias.AliasTable:
  """Alias table over nodes with weight proportional to frequency^0.75."""
  counts = np.bincount(
      walk_matrix(walks).ravel() + 1, minlength=walks.node_count + 1
  )[1:]
  return alias.create_alias_table(counts.astype(np.float64) ** NEGATIVE_POWER)


def _sgd_step(
    w_in: np.ndarray,
    w_out: np.ndarray,
    centers: np.ndarray,
    contexts: np.ndarray,
    negatives: np.ndarray,
    lr: float,
) -> float:
  """One minibatch update. Returns the summed loss before the update."""
  v_center = w_in[centers]
  u_context = w_out[contexts]
  u_negative = w_out[negatives]

  pos_score = np.einsum('bd,bd->b', v_center, u_context)
  neg_score = np.einsum('bd,bkd->bk', v_center, u_negative)
  loss = (
      np.logaddexp(0.0, -pos_score).sum()
      + np.logaddexp(0.0, neg_score).sum()
  )

  pos_grad = (lr * (1.0 - special.expit(pos_score))).astype(np.float32)
  neg_grad = (-lr * special.expit(neg_score)).astype(np.float32)

  center_grad = pos_grad[:, None] * u_context
  center_grad += np.einsum('bk,bkd->bd', neg_grad, u_negative)
  np.add.at(w_out, contexts, pos_grad[:, None] * v_center)
  if negatives.shape[1]:
    np.add.at(
        w_out,
        negatives.ravel(),
        (neg_grad[:, :, None] * v_center[:, None, :]).reshape(
            -1, w_in.shape[1]
        ),
    )
  np.add.at(w_in, centers, center_grad)
  return float(loss)


def train_skipgram(
    walks: node2vec.WalkSet, cfg: node2vec.Node2VecConfig
) -> SkipGramResult:
  """Learn one vector per node from the co-occurrences in walks.

  Updates are minibatch SGD, not one step per (center, context) pair:
  pairs are shuffled every epoch and consumed in minibatches of
  cfg.batch_size, and every minibatch computes its gradients from the
  weights as they stood before it. Rows repeated inside a minibatch get
  their gradients summed. The learning rate decays linearly from
  cfg.initial_lr to cfg.initial_lr / 100 over all pairs of all epochs.

  Args:
    walks: The walks, node indices in [0, walks.node_count).
    cfg: Dimensions, window, negatives, epochs, learning rate and seed.

  Returns:
    SkipGramResult: The center vectors as float64 and the epoch losses.

  Raises:
    EmptyWalks: walks has no walk.
    NonFinite: An epoch produced NaN or infinite weights.
  """
  if not len(walks) or walks.node_count == 0:
    raise errors.EmptyWalks('skip-gram needs at least one walk')

  rng = np.random.default_rng(cfg.seed)
  dim = cfg.dimensions
  w_in = rng.uniform(-0.5 / dim, 0.5 / dim, size=(walks.node_count, dim))
  w_in = w_in.astype(np.float32)
  w_out = np.zeros((walks.node_count, dim), dtype=np.float32)

  pairs = context_pairs(walks, cfg.window)
  sampler = negative_table(walks)
  total = max(len(pairs) * cfg.epochs, 1)
  logging.info(
      'Training skip-gram: %d nodes, %d pairs, %d epochs',
      walks.node_count,
      len(pairs),
      cfg.epochs,
  )

  epoch_losses = []
  processed = 0
  for epoch in range(cfg.epochs):
    order = rng.permutation(len(pairs))
    epoch_loss = 0.0
    for start in range(0, len(pairs), cfg.batch_size):
      batch = pairs[order[start : start + cfg.batch_size]]
      lr = cfg.initial_lr * max(
          MIN_LR_FRACTION, 1.0 - (1.0 - MIN_LR_FRACTION) * processed / total
      )
      negatives = sampler.sample(
          rng, len(batch) * cfg.negatives_per_positive
      ).reshape(len(batch), cfg.negatives_per_positive)
      epoch_loss += _sgd_step(
          w_in, w_out, batch[:, 0], batch[:, 1], negatives, lr
      )
      processed += len(batch)

    if not (np.all(np.isfinite(w_in)) and np.all(np.isfinite(w_out))):
      raise errors.NonFinite(
          f'skip-gram weights are not finite after epoch {epoch}'
      )
    mean_loss = epoch_loss / max(len(pairs), 1)
    if not np.isfinite(mean_loss):
      raise errors.NonFinite(
          f'skip-gram loss is not finite after epoch {epoch}'
      )
    epoch_losses.append(mean_loss)
    logging.debug('Epoch %d: mean loss %.6f', epoch, mean_loss)

  return SkipGramResult(
      vectors=w_in.astype(np.float64), epoch_losses=tuple(epoch_losses)
  )
