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

"""The pipeline stages behind the CLI commands.

Stages talk to each other through files in the output folder only, so each
one can run on its own and every artifact is rewritten byte-identically on a
rerun with the same config.
"""

from __future__ import annotations

import dataclasses
import json
import logging
import pathlib
import time
from typing import Any, Iterable, Optional, Sequence

import numpy as np

from py_spam_graph.data_logger import data_logger
from py_spam_graph.dataset import dataset
from py_spam_graph.dataset import dataset_io
from py_spam_graph.embedding import node2vec
from py_spam_graph.features import metadata
from py_spam_graph.features import table
from py_spam_graph.features import text
from py_spam_graph.graph import centrality
from py_spam_graph.graph import graph
from py_spam_graph.models import cross_validation
from py_spam_graph.models import gbdt
from py_spam_graph.models import metrics
from py_spam_graph.models import model
from py_spam_graph.pipeline import config
from py_spam_graph.selection import assemble
from py_spam_graph.selection import selection
from py_spam_graph.synth import synth
from py_spam_graph.util import errors
from py_spam_graph.util import json_dataclass

FEATURES_FILE = 'features.csv'
CENTRALITIES_FILE = 'centralities.csv'
EMBEDDINGS_FILE = 'embeddings.txt'
ASSEMBLED_FILE = 'assembled.csv'
MODEL_FILE = 'model.json'
SELECTION_FILE = 'selection.json'
METRICS_FILE = 'metrics.json'
CV_FILE = 'cv.json'
COMPARISON_FILE = 'comparison.json'
SCORES_FILE = 'scores.csv'
SCORE_HEADERS = ('id', 'probability_spam', 'predicted_label')


@dataclasses.dataclass(frozen=True)
class MetricsReport(metrics.EvalReport):
  """Out-of-fold metrics of the chosen config plus the final model's fit.

  The inherited fields score the pooled test-fold predictions of the grid
  search winner.

  Attributes:
    training (EvalReport | None): The final model on its own training rows.
    dimensions (int): Length of the assembled vectors.
    folds (int): Number of cross validation folds.
  """

  training: Optional[metrics.EvalReport] = None
  dimensions: int = 0
  folds: int = 0


@dataclasses.dataclass(frozen=True)
class ModelBundle:
  """Everything scoring needs: the ensemble, its inputs and their scaling.

  Attributes:
    gbdt_model (GBDTModel): The final trained ensemble.
    train_config (TrainConfig): The config it was trained with.
    selected (list[str]): Selected feature names in vector order.
    standardizer (Standardizer): Training statistics of the selected
      features.
    embedding_dimensions (int): Number of embedding columns.
  """

  gbdt_model: gbdt.GBDTModel
  train_config: gbdt.TrainConfig
  selected: list[str]
  standardizer: assemble.Standardizer
  embedding_dimensions: int

  def to_dict(self) -> dict[str, Any]:
    return {
        'gbdt': self.gbdt_model.to_dict(),
        'train_config': self.train_config.to_dict(),
        'selected': list(self.selected),
        'standardizer': self.standardizer.to_dict(),
        'embedding_dimensions': self.embedding_dimensions,
        'decision_threshold': model.DECISION_THRESHOLD,
    }

  @classmethod
  def from_dict(cls, data: dict[str, Any]) -> ModelBundle:
    return cls(
        gbdt_model=gbdt.GBDTModel.from_dict(data['gbdt']),
        train_config=gbdt.TrainConfig.from_dict(data['train_config']),
        selected=list(data['selected']),
        standardizer=assemble.Standardizer.from_dict(data['standardizer']),
        embedding_dimensions=int(data['embedding_dimensions']),
    )


def write_json(path: pathlib.Path, data: Any) -> None:
  text_data = json.dumps(data, indent=2, sort_keys=True, ensure_ascii=False)
  path.write_text(text_data + '\n', encoding='utf-8')


def write_model(path: pathlib.Path, bundle: ModelBundle) -> None:
  write_json(path, bundle.to_dict())


def read_model(path: pathlib.Path) -> ModelBundle:
  require_file(path)
  try:
    return ModelBundle.from_dict(json.loads(path.read_text(encoding='utf-8')))
  except (ValueError, KeyError, TypeError) as e:
    raise errors.ConfigInvalid(f'{path}: unreadable model ({e})') from e


def require_file(path: pathlib.Path) -> None:
  if not path.is_file():
    raise errors.ConfigInvalid(f'required file {path} does not exist')


def output_dir(cfg: config.PipelineConfig) -> pathlib.Path:
  out = pathlib.Path(cfg.paths.output_dir)
  out.mkdir(parents=True, exist_ok=True)
  return out


def load_validated_dataset(cfg: config.PipelineConfig) -> dataset.Dataset:
  """Load the dataset folder and reject it on blocking validation issues.

  Raises:
    ValidationFailed: Tweets of unknown users.
    ConfigInvalid: users.jsonl or edges.tsv is missing.
  """
  root = pathlib.Path(cfg.paths.data_dir)
  for name in (dataset_io.USERS_FILE, dataset_io.EDGES_FILE):
    require_file(root / name)
  d = dataset_io.load_dataset(
      str(root), cfg.snapshot_date, cfg.paths.lexicon_path or None
  )
  report = dataset.validate_dataset(d)
  for issue in report.issues:
    if not issue.is_blocking:
      logging.warning('Validation: %s', issue)
  if not report.accepted:
    blocking = ', '.join(str(issue) for issue in report.blocking_issues[:5])
    logging.error(
        'Dataset rejected with %d blocking issues', len(report.blocking_issues)
    )
    raise errors.ValidationFailed(f'dataset rejected: {blocking}')
  return d


def run_synth(cfg: config.PipelineConfig) -> dataset.Dataset:
  """Write a synthetic dataset into paths.data_dir, which must exist."""
  synth_config = dataclasses.replace(cfg.synth, snapshot_date=cfg.snapshot_date)
  d = synth.generate_files(synth_config, cfg.paths.data_dir)
  logging.info(
      'Wrote synthetic dataset with %d users to %s',
      len(d.users),
      cfg.paths.data_dir,
  )
  return d


def run_featurize(cfg: config.PipelineConfig) -> table.FeatureTable:
  """Write features.csv, centralities.csv and embeddings.txt.

  Every user of users.jsonl is a graph node, so isolated users still get
  centralities and an embedding row. The feature table holds the labeled
  users.

  Returns:
    FeatureTable: The table written to features.csv.
  """
  start = time.monotonic()
  out = output_dir(cfg)
  d = load_validated_dataset(cfg)

  g = graph.build_graph(d.edges, extra_nodes=d.user_ids)
  cent = centrality.compute_centralities(
      g, workers=cfg.workers, damping=cfg.damping
  )
  emb = node2vec.embed(g, cfg.node2vec)

  meta = metadata.compute_all_metadata(d)
  text_features = text.compute_all_text(d)
  t = table.build_feature_table(d, cent, meta, text_features)

  table.write_feature_table(str(out / FEATURES_FILE), t)
  centrality.write_centralities(str(out / CENTRALITIES_FILE), cent)
  node2vec.write_embeddings(str(out / EMBEDDINGS_FILE), emb)
  logging.info(
      'Featurized %d labeled users in %.1f s',
      len(t.ids),
      time.monotonic() - start,
  )
  return t


def run_select_train_eval(cfg: config.PipelineConfig) -> MetricsReport:
  """Select features, assemble vectors, grid search, train and evaluate.

  Returns:
    MetricsReport: The content of metrics.json.

  Raises:
    SingleClass: The labels have one class.
    InsufficientClassCount: A class is smaller than cv_folds.
  """
  start = time.monotonic()
  out = output_dir(cfg)
  require_file(out / FEATURES_FILE)
  require_file(out / EMBEDDINGS_FILE)
  t = table.read_feature_table(str(out / FEATURES_FILE))
  emb = node2vec.read_embeddings(str(out / EMBEDDINGS_FILE))

  report, _ = selection.select_features(t, cfg.selection, cfg.train)
  vectors = assemble.assemble(t, report.selected, emb)
  assemble.write_assembled(str(out / ASSEMBLED_FILE), vectors)
  logging.info('Assembled %d-dimensional vectors', vectors.dimensions)

  x, y = vectors.values, vectors.labels
  search = cross_validation.grid_search_cv(
      x,
      y,
      grid=cfg.grid,
      k=cfg.cv_folds,
      seed=cfg.seed,
      base_config=cfg.train,
      workers=cfg.workers,
  )
  best = search.best
  logging.info(
      'Best cell: learning_rate=%g max_depth=%d',
      best.learning_rate,
      best.max_depth,
  )
  folds = cross_validation.stratified_folds(y, cfg.cv_folds, cfg.seed)
  oof = cross_validation.cross_val_predict(
      lambda: gbdt.GBDTClassifier(best), x, y, folds
  )
  cv_report = metrics.evaluate(y, oof)

  final = gbdt.train_gbdt(x, y, best)
  fitted = (gbdt.predict_gbdt(final, x) >= model.DECISION_THRESHOLD).astype(
      np.int64
  )
  report_fields = {
      field.name: getattr(cv_report, field.name)
      for field in dataclasses.fields(metrics.EvalReport)
  }
  result = MetricsReport(
      **report_fields,
      training=metrics.evaluate(y, fitted),
      dimensions=vectors.dimensions,
      folds=cfg.cv_folds,
  )

  write_model(
      out / MODEL_FILE,
      ModelBundle(
          gbdt_model=final,
          train_config=best,
          selected=list(report.selected),
          standardizer=vectors.standardizer,
          embedding_dimensions=emb.dimensions,
      ),
  )
  json_dataclass.dump(report, str(out / SELECTION_FILE))
  json_dataclass.dump(result, str(out / METRICS_FILE))
  json_dataclass.dump(search, str(out / CV_FILE))
  if cfg.compare_models:
    comparison = cross_validation.compare_models(
        x,
        y,
        k=cfg.cv_folds,
        seed=cfg.seed,
        options={model.ModelKind.GBDT.value: {'config': best}},
    )
    write_json(
        out / COMPARISON_FILE,
        {kind: r.to_dict() for kind, r in comparison.items()},
    )
  logging.info(
      'CV average accuracy %.4f, macro F1 %.4f (%.1f s)',
      result.average_accuracy,
      result.macro_f1,
      time.monotonic() - start,
  )
  return result


def scorable_users(
    d: dataset.Dataset,
    emb: node2vec.EmbeddingMatrix,
    user_ids: Sequence[str],
) -> list[dataset.UserRecord]:
  """The records of user_ids, checked for graph presence.

  Raises:
    UnscorableUser: An id is not in users.jsonl, has no follower edge or has
      no embedding row.
  """
  users = {user.id: user for user in d.users}
  connected = {node for edge in d.edges for node in edge}
  records = []
  for user_id in user_ids:
    if user_id not in users:
      raise errors.UnscorableUser(user_id, 'not in the users file')
    if user_id not in connected:
      raise errors.UnscorableUser(user_id, 'no follower edges')
    if not emb.has_node(user_id):
      raise errors.UnscorableUser(user_id, 'no embedding, rerun featurize')
    records.append(users[user_id])
  return records


def run_score(
    cfg: config.PipelineConfig, user_ids: Optional[Iterable[str]] = None
) -> dict[str, float]:
  """Write scores.csv for user_ids.

  By default every user of users.jsonl with a follower edge is scored.

  Scoring reuses centralities.csv and embeddings.txt from featurize and the
  stored standardization of model.json.

  Returns:
    Probability of spam by user id.
  """
  out = output_dir(cfg)
  bundle = read_model(out / MODEL_FILE)
  require_file(out / CENTRALITIES_FILE)
  require_file(out / EMBEDDINGS_FILE)
  cent = centrality.read_centralities(str(out / CENTRALITIES_FILE))
  emb = node2vec.read_embeddings(str(out / EMBEDDINGS_FILE))
  if emb.dimensions != bundle.embedding_dimensions:
    raise errors.DimensionMismatch(
        f'model expects {bundle.embedding_dimensions} embedding dimensions,'
        f' embeddings.txt has {emb.dimensions}'
    )

  d = load_validated_dataset(cfg)
  if user_ids is None:
    connected = {node for edge in d.edges for node in edge}
    ids = [user_id for user_id in d.user_ids if user_id in connected]
    if len(ids) < len(d.users):
      logging.warning(
          'Skipping %d users without follower edges', len(d.users) - len(ids)
      )
  else:
    ids = list(user_ids)
  users = scorable_users(d, emb, ids)
  t = table.build_feature_table(
      d,
      cent,
      metadata.compute_all_metadata(d, users),
      text.compute_all_text(d, users),
      users=users,
  )
  vectors = assemble.assemble(t, bundle.selected, emb, bundle.standardizer)
  probabilities = np.atleast_1d(
      gbdt.predict_gbdt(bundle.gbdt_model, vectors.values)
  )
  predicted = (probabilities >= model.DECISION_THRESHOLD).astype(np.int64)
  data_logger.write_rows(
      str(out / SCORES_FILE),
      SCORE_HEADERS,
      zip(vectors.ids, probabilities.tolist(), predicted.tolist()),
  )
  logging.info('Scored %d users', len(vectors.ids))
  return dict(zip(vectors.ids, probabilities.tolist()))
