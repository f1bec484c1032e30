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

"""The py-spam-graph command line.

  py-spam-graph synth --config cfg.json
  py-spam-graph featurize --config cfg.json --seed 7
  py-spam-graph select-train-eval --config cfg.json --paper-mode
  py-spam-graph score --config cfg.json --users u0001 u0002

Exit codes: 0 success, 2 input or config error, 3 numeric non-convergence,
4 degenerate labels, 5 scoring reference error.
"""

from __future__ import annotations

import argparse
import logging
import pathlib
import sys
from typing import Callable, Optional, Sequence

from py_spam_graph.logger import logger
from py_spam_graph.models import gbdt
from py_spam_graph.pipeline import config
from py_spam_graph.pipeline import pipeline
from py_spam_graph.util import errors


def _seed(value: str) -> int:
  try:
    seed = int(value)
  except ValueError as e:
    raise argparse.ArgumentTypeError(f'{value!r} is not an integer') from e
  if not 0 <= seed < gbdt.MAX_SEED:
    raise argparse.ArgumentTypeError('seed must be a 64-bit unsigned integer')
  return seed


def _score_ids(args: argparse.Namespace) -> Optional[list[str]]:
  if not args.users and not args.users_file:
    return None
  ids = list(args.users or [])
  if args.users_file:
    path = pathlib.Path(args.users_file)
    if not path.is_file():
      raise errors.ConfigInvalid(f'users file {path} does not exist')
    lines = path.read_text(encoding='utf-8').splitlines()
    ids.extend(line.strip() for line in lines if line.strip())
  return ids


def cmd_synth(cfg: config.PipelineConfig, args: argparse.Namespace) -> None:
  del args
  pipeline.run_synth(cfg)


def cmd_featurize(cfg: config.PipelineConfig, args: argparse.Namespace) -> None:
  del args
  pipeline.run_featurize(cfg)


def cmd_select_train_eval(
    cfg: config.PipelineConfig, args: argparse.Namespace
) -> None:
  del args
  pipeline.run_select_train_eval(cfg)


def cmd_score(cfg: config.PipelineConfig, args: argparse.Namespace) -> None:
  pipeline.run_score(cfg, _score_ids(args))


COMMANDS: dict[
    str, Callable[[config.PipelineConfig, argparse.Namespace], None]
] = {
    'synth': cmd_synth,
    'featurize': cmd_featurize,
    'select-train-eval': cmd_select_train_eval,
    'score': cmd_score,
}


def build_parser() -> argparse.ArgumentParser:
  common = argparse.ArgumentParser(add_help=False)
  common.add_argument('--config', help='JSON pipeline config file')
  common.add_argument(
      '--seed', type=_seed, help='seed of every stochastic stage'
  )
  common.add_argument(
      '--paper-mode',
      action='store_true',
      help='depth 15 trees, k=15, |r| >= 0.1 and the fixed feature list',
  )
  common.add_argument('--log-dir', help='also write a DEBUG log file here')
  common.add_argument(
      '--verbose', action='store_true', help='DEBUG logging on stderr'
  )

  parser = argparse.ArgumentParser(
      prog='py-spam-graph',
      description='Graph and text features for spam account detection.',
  )
  commands = parser.add_subparsers(dest='command', required=True)
  commands.add_parser(
      'synth', parents=[common], help='write a synthetic dataset'
  )
  commands.add_parser(
      'featurize',
      parents=[common],
      help='write features.csv, centralities.csv and embeddings.txt',
  )
  commands.add_parser(
      'select-train-eval',
      parents=[common],
      help='select features, cross validate and train the final model',
  )
  score = commands.add_parser(
      'score', parents=[common], help='write scores.csv with model.json'
  )
  score.add_argument('--users', nargs='+', help='user ids to score')
  score.add_argument('--users-file', help='file with one user id per line')
  return parser


def run(argv: Optional[Sequence[str]] = None) -> int:
  """Parse argv, run one command and return its exit code."""
  args = build_parser().parse_args(argv)
  logger.setup_pyspamgraph_logger(args.log_dir, verbose=args.verbose)
  try:
    cfg = config.load_config(args.config, args.seed, args.paper_mode)
    logging.info('Running %s', args.command)
    COMMANDS[args.command](cfg, args)
  except errors.SpamGraphError as e:
    logging.debug('%s failed', args.command, exc_info=True)
    print(f'{e.error_code.error} error: {e}', file=sys.stderr)
    return e.exit_code
  except OSError as e:
    print(f'INPUT error: {e}', file=sys.stderr)
    return errors.EXIT_INPUT
  return errors.EXIT_OK


def main() -> None:
  sys.exit(run())
