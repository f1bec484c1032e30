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

"""The logger for py_spam_graph."""

from __future__ import annotations

import datetime
import logging
import pathlib

LOGGER_FORMATTER = (
    '%(asctime)s -%(levelname)1.1s- %(filename)s:%(lineno)d : %(message)s'
)
LOGGER_DATAFMT = '%Y_%m_%d_%H_%M_%S'
_HANDLER_NAME = 'py_spam_graph'


def setup_pyspamgraph_logger(
    log_dir: str | None = None, verbose: bool = False
) -> None:
  """Setup the logger for py-spam-graph.

  Args:
    log_dir: If set, a DEBUG file log named by the run timestamp is written
      in this folder.
    verbose: Lower the stderr handler to DEBUG.
  """

  logger = logging.getLogger()
  formatter = logging.Formatter(LOGGER_FORMATTER, datefmt=LOGGER_DATAFMT)
  logger.setLevel(logging.DEBUG)

  names = {handler.get_name() for handler in logger.handlers}

  if f'{_HANDLER_NAME}.stream' not in names:
    sh = logging.StreamHandler()
    sh.set_name(f'{_HANDLER_NAME}.stream')
    sh.setLevel(logging.DEBUG if verbose else logging.INFO)
    sh.setFormatter(formatter)
    logger.addHandler(sh)

  if log_dir and f'{_HANDLER_NAME}.file' not in names:
    pathlib.Path(log_dir).mkdir(parents=True, exist_ok=True)
    time_txt = datetime.datetime.now().strftime(LOGGER_DATAFMT)
    log_name = pathlib.Path(log_dir, f'{time_txt}.log')

    fh = logging.FileHandler(log_name, 'a', encoding='utf-8')
    fh.set_name(f'{_HANDLER_NAME}.file')
    fh.setLevel(logging.DEBUG)
    fh.setFormatter(formatter)
    logger.addHandler(fh)
