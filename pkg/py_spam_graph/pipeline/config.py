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

"""The layered pipeline config: defaults < config file < command-line flags."""

from __future__ import annotations

import dataclasses
import datetime
import json
import logging
import pathlib
from typing import Any, Optional

from py_spam_graph.embedding import node2vec
from py_spam_graph.models import cross_validation
from py_spam_graph.models import gbdt
from py_spam_graph.selection import selection
from py_spam_graph.synth import synth
from py_spam_graph.util import errors
from py_spam_graph.util import json_dataclass

DEFAULT_SEED = 42
REFERENCE_MAX_DEPTH = 15
REFERENCE_LEARNING_RATE = 0.1


@dataclasses.dataclass
class PathsConfig(json_dataclass.DataClassJsonMixIn):
  """Where the stages read and write.

  Attributes:
    data_dir (str): Folder of users.jsonl, tweets.jsonl, edges.tsv,
      labels.csv and lexicon.txt.
    output_dir (str): Folder of every artifact the stages write.
    lexicon_path (str): Overrides data_dir/lexicon.txt when set.
  """

  data_dir: str = 'data'
  output_dir: str = 'out'
  lexicon_path: str = ''

  def resolve(self, base: pathlib.Path) -> PathsConfig:
    """Paths made absolute against base."""

    def absolute(path: str) -> str:
      if not path:
        return path
      return str(base / path) if not pathlib.Path(path).is_absolute() else path

    return PathsConfig(
        data_dir=absolute(self.data_dir),
        output_dir=absolute(self.output_dir),
        lexicon_path=absolute(self.lexicon_path),
    )


@dataclasses.dataclass
class PipelineConfig(json_dataclass.DataClassJsonMixIn):
  """The config of every pipeline stage.

  Attributes:
    paths (PathsConfig): Input and output locations.
    snapshot_date (datetime.date): Collection date used for account ages.
    seed (int): Seed of every stochastic stage; it overrides stage seeds.
    node2vec (Node2VecConfig): Walk and skip-gram settings.
    train (TrainConfig): GBDT settings outside the grid.
    selection (SelectionConfig): Feature selection settings.
    synth (SynthConfig): Synthetic dataset settings.
    grid (dict[str, list]): learning_rate and max_depth values to search.
    cv_folds (int): Folds of grid search and model comparison.
    workers (int): Threads for betweenness and grid cells.
    damping (float): PageRank damping factor.
    compare_models (bool): Also cross validate every registered classifier.
  """

  paths: PathsConfig = dataclasses.field(default_factory=PathsConfig)
  snapshot_date: datetime.date = json_dataclass.date_field(
      datetime.date(2020, 6, 1)
  )
  seed: int = DEFAULT_SEED
  node2vec: node2vec.Node2VecConfig = dataclasses.field(
      default_factory=node2vec.Node2VecConfig
  )
  train: gbdt.TrainConfig = dataclasses.field(default_factory=gbdt.TrainConfig)
  selection: selection.SelectionConfig = dataclasses.field(
      default_factory=selection.SelectionConfig
  )
  synth: synth.SynthConfig = dataclasses.field(
      default_factory=synth.SynthConfig
  )
  grid: dict[str, list[Any]] = dataclasses.field(
      default_factory=lambda: {
          key: list(values)
          for key, values in cross_validation.DEFAULT_GRID.items()
      }
  )
  cv_folds: int = 5
  workers: int = 1
  damping: float = 0.85
  compare_models: bool = True

  def __post_init__(self) -> None:
    if set(self.grid) != {'learning_rate', 'max_depth'} or not all(
        self.grid.values()
    ):
      raise errors.ConfigInvalid(
          'grid needs non-empty learning_rate and max_depth lists'
      )
    if self.cv_folds < 2:
      raise errors.ConfigInvalid('cv_folds must be >= 2')
    if self.workers < 1:
      raise errors.ConfigInvalid('workers must be >= 1')
    if not 0 < self.damping < 1:
      raise errors.ConfigInvalid('damping must be in (0, 1)')
    if not 0 <= self.seed < gbdt.MAX_SEED:
      raise errors.ConfigInvalid('seed must be a 64-bit unsigned integer')


def propagate_seed(cfg: PipelineConfig, seed: int) -> PipelineConfig:
  """cfg with seed set on the pipeline and on every stochastic stage."""
  return dataclasses.replace(
      cfg,
      seed=seed,
      node2vec=dataclasses.replace(cfg.node2vec, seed=seed),
      train=dataclasses.replace(cfg.train, seed=seed),
      synth=dataclasses.replace(cfg.synth, seed=seed),
  )


def apply_paper_mode(cfg: PipelineConfig) -> PipelineConfig:
  """Fixed settings: depth 15 at rate 0.1, k=15, |r| >= 0.1, fixed features."""
  return dataclasses.replace(
      cfg,
      train=dataclasses.replace(
          cfg.train,
          max_depth=REFERENCE_MAX_DEPTH,
          learning_rate=REFERENCE_LEARNING_RATE,
      ),
      selection=dataclasses.replace(
          cfg.selection,
          k=selection.SHAP_TOP_K,
          threshold=0.1,
          paper_faithful_features=True,
      ),
      grid={
          'learning_rate': [REFERENCE_LEARNING_RATE],
          'max_depth': [REFERENCE_MAX_DEPTH],
      },
  )


def load_config(
    path: Optional[str] = None,
    seed: Optional[int] = None,
    paper_mode: bool = False,
) -> PipelineConfig:
  """Build the config from defaults, an optional JSON file and flag values.

  Relative paths in a config file are resolved against the file's folder.

  Args:
    path: The JSON config file, or None for defaults only.
    seed: The --seed flag.
    paper_mode: The --paper-mode flag.

  Returns:
    PipelineConfig: The merged config.

  Raises:
    ConfigInvalid: The file is missing, unreadable or has invalid values.
  """
  cfg = PipelineConfig()
  if path is not None:
    config_file = pathlib.Path(path)
    if not config_file.is_file():
      raise errors.ConfigInvalid(f'config file {path} does not exist')
    try:
      data = json.loads(config_file.read_text(encoding='utf-8'))
      cfg = PipelineConfig.from_dict(data)
    except (ValueError, TypeError, KeyError) as e:
      raise errors.ConfigInvalid(f'{path}: {e}') from e
    cfg = dataclasses.replace(
        cfg, paths=cfg.paths.resolve(config_file.resolve().parent)
    )
    logging.info('Loaded config %s', path)

  cfg = propagate_seed(cfg, cfg.seed if seed is None else seed)
  if paper_mode:
    cfg = apply_paper_mode(cfg)
  return cfg
