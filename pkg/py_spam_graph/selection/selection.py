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

"""SHAP channel, correlation channel and their intersection."""

from __future__ import annotations

from collections.abc import Sequence
import dataclasses
import logging
from typing import Optional

import numpy as np

from py_spam_graph.features import table
from py_spam_graph.models import gbdt
from py_spam_graph.selection import correlation
from py_spam_graph.selection import tree_shap
from py_spam_graph.util import errors
from py_spam_graph.util import json_dataclass

SHAP_TOP_K = 15

# The sixteen features the published pipeline selected, as table columns.
REFERENCE_FEATURES = (
    'favourites_count',
    'geo_enabled',
    'profile_use_background_image',
    'profile_background_tile',
    'verified',
    'lexical_diversity',
    'unigram_spam_freq',
    'tweet_similarity',
    'ff_ratio',
    'account_age_days',
    'name_similarity',
    'hashtag_count',
    'user_mention_count',
    'degree_centrality',
    'in_eig_centrality',
    'out_eig_centrality',
)


@dataclasses.dataclass
class SelectionConfig(json_dataclass.DataClassJsonMixIn):
  """The config of feature selection.

  Attributes:
    threshold (float): Minimum |r| with the label for the correlation set.
    k (int): Size of the SHAP set.
    paper_faithful_features (bool): Select REFERENCE_FEATURES instead
      of the intersection; both channels are still computed and reported.
      Off by default, switched on by --paper-mode.
    features (list[str]): Explicit selection, overrides everything else.
    redundancy_threshold (float): |r| from which selected pairs are reported.
  """

  threshold: float = correlation.CORRELATION_THRESHOLD
  k: int = SHAP_TOP_K
  paper_faithful_features: bool = False
  features: list[str] = dataclasses.field(default_factory=list)
  redundancy_threshold: float = correlation.REDUNDANCY_THRESHOLD

  def __post_init__(self) -> None:
    if not 0 <= self.threshold <= 1:
      raise errors.ConfigInvalid('threshold must be in [0, 1]')
    if self.k < 1:
      raise errors.ConfigInvalid('k must be >= 1')
    if not 0 <= self.redundancy_threshold <= 1:
      raise errors.ConfigInvalid('redundancy_threshold must be in [0, 1]')


@dataclasses.dataclass(frozen=True)
class FeatureScore(json_dataclass.DataClassJsonMixIn):
  mean_abs_shap: float
  pearson_r: float
  in_s1: bool
  in_s2: bool
  selected: bool


@dataclasses.dataclass(frozen=True)
class RedundantPair(json_dataclass.DataClassJsonMixIn):
  first: str
  second: str
  r: float


@dataclasses.dataclass(frozen=True)
class SelectionReport(json_dataclass.DataClassJsonMixIn):
  """What both channels chose and why.

  Attributes:
    shap_set (list[str]): Top-k features by mean |SHAP|, descending.
    correlation_set (list[str]): Features with |r| >= threshold, descending.
    selected (list[str]): The chosen features in selection order.
    features (dict[str, FeatureScore]): Scores of every table column.
    redundant_pairs (list[RedundantPair]): Highly correlated selected pairs;
      reported only.
    census (dict[str, int]): Column count per feature block and in total.
    paper_faithful (bool): selected is a fixed list, not the intersection.
  """

  shap_set: list[str]
  correlation_set: list[str]
  selected: list[str]
  features: dict[str, FeatureScore]
  redundant_pairs: list[RedundantPair]
  census: dict[str, int]
  paper_faithful: bool = False


def mean_abs_shap(m: gbdt.GBDTModel, t: table.FeatureTable) -> np.ndarray:
  return np.abs(tree_shap.shap_values(m, t.values)).mean(axis=0)


def shap_select(
    m: gbdt.GBDTModel, t: table.FeatureTable, k: int = SHAP_TOP_K
) -> list[str]:
  """Top-k columns by mean |SHAP| over the rows of t.

  Ties keep table column order.
  """
  return top_k(mean_abs_shap(m, t), t.names, k)


def top_k(scores: np.ndarray, names: Sequence[str], k: int) -> list[str]:
  ranked = sorted(range(len(names)), key=lambda j: (-scores[j], j))
  return [names[j] for j in ranked[:k]]


def intersect(
    shap_set: Sequence[str], correlation_set: Sequence[str]
) -> list[str]:
  """Names in both sets, in SHAP rank order."""
  chosen = set(correlation_set)
  return [name for name in shap_set if name in chosen]


def column_census(names: Sequence[str]) -> dict[str, int]:
  census = {
      block: sum(name in block_names for name in names)
      for block, block_names in table.FEATURE_BLOCKS.items()
  }
  census['total'] = len(names)
  return census


def select_features(
    t: table.FeatureTable,
    cfg: SelectionConfig,
    train_config: Optional[gbdt.TrainConfig] = None,
) -> tuple[SelectionReport, gbdt.GBDTModel]:
  """Pretrain a GBDT on t, run both channels and choose the features.

  Args:
    t: The labeled feature table.
    cfg: The selection config.
    train_config: Config of the pretrained GBDT explained by SHAP.

  Returns:
    The SelectionReport and the pretrained model.

  Raises:
    NoLabels: t has no labels.
    ConfigInvalid: A fixed feature is not a column of t.
  """
  if not t.has_labels:
    raise errors.NoLabels('feature selection needs a labeled table')
  train_config = train_config or gbdt.TrainConfig()
  pretrained = gbdt.train_gbdt(t.values, t.labels, train_config)

  scores = mean_abs_shap(pretrained, t)
  shap_set = top_k(scores, t.names, cfg.k)
  correlations = correlation.label_correlations(t)
  correlation_set = correlation.correlation_select(t, cfg.threshold)

  paper_faithful = False
  if cfg.features:
    selected = list(cfg.features)
  elif cfg.paper_faithful_features:
    selected = list(REFERENCE_FEATURES)
    paper_faithful = True
  else:
    selected = intersect(shap_set, correlation_set)
  unknown = [name for name in selected if name not in t.names]
  if unknown:
    raise errors.ConfigInvalid(f'selected features {unknown} are not columns')

  logging.info(
      'Selected %d features (|S1|=%d, |S2|=%d, fixed list: %s)',
      len(selected),
      len(shap_set),
      len(correlation_set),
      paper_faithful,
  )
  features = {
      name: FeatureScore(
          mean_abs_shap=float(scores[j]),
          pearson_r=correlations[name],
          in_s1=name in shap_set,
          in_s2=name in correlation_set,
          selected=name in selected,
      )
      for j, name in enumerate(t.names)
  }
  pairs = [
      RedundantPair(first, second, r)
      for first, second, r in correlation.redundant_pairs(
          t, selected, cfg.redundancy_threshold
      )
  ]
  report = SelectionReport(
      shap_set=shap_set,
      correlation_set=correlation_set,
      selected=selected,
      features=features,
      redundant_pairs=pairs,
      census=column_census(t.names),
      paper_faithful=paper_faithful,
  )
  return report, pretrained
