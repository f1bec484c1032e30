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

"""The data logger that writes the CSV artifacts."""

from __future__ import annotations

from collections.abc import Iterable, Sequence
import csv
import logging
import pathlib
from typing import Any

FLOAT_FORMAT = '%.17g'


def format_value(value: Any) -> str:
  """Format one cell; floats keep 17 significant digits."""
  if isinstance(value, bool):
    return str(int(value))
  if isinstance(value, float):
    return FLOAT_FORMAT % value
  if hasattr(value, 'dtype') and value.dtype.kind == 'f':
    return FLOAT_FORMAT % float(value)
  return str(value)


class DataLogger(object):
  """The DataLogger class provides a interface to writing CSV rows."""

  def __init__(self, path: str, headers: Sequence[str]) -> None:
    """The constructor for the DataLogger class.

    The file is truncated and the header row written immediately.

    Args:
      path (str): The path of the CSV file.
      headers (Sequence[str]): The headers for this data logger.
    """
    self.path = pathlib.Path(path)
    self.path.parent.mkdir(parents=True, exist_ok=True)
    logging.debug('Creating data file %s', self.path)

    self.headers = list(headers)
    self.buffer: list[Iterable[Any]] = []
    with open(self.path, 'w', newline='', encoding='utf-8') as data_csv:
      csv.writer(data_csv, lineterminator='\n').writerow(self.headers)

  def clean_data(self) -> None:
    self.buffer = []

  def add_row(self, row: Sequence[Any]) -> None:
    if len(row) != len(self.headers):
      raise ValueError(
          f'Row has {len(row)} values but {len(self.headers)} headers.'
      )
    self.buffer.append([format_value(item) for item in row])

  def flush_data(self) -> None:
    self.write_csv(self.buffer)
    self.clean_data()

  def write_csv(self, txtdata: list[Iterable[Any]]) -> None:
    """Append the rows to the file.

    Args:
      txtdata (list[Iterable[Any]]): The rows in the order of the headers.
    """
    with open(self.path, 'a', newline='', encoding='utf-8') as data_csv:
      writer = csv.writer(data_csv, lineterminator='\n')
      writer.writerows(txtdata)
    logging.debug('Write %d rows to %s', len(txtdata), self.path)


def write_rows(
    path: str, headers: Sequence[str], rows: Iterable[Sequence[Any]]
) -> None:
  """Write a whole CSV file in one call."""
  data_logger = DataLogger(path, headers)
  for row in rows:
    data_logger.add_row(row)
  data_logger.flush_data()


def read_rows(path: str) -> tuple[list[str], list[list[str]]]:
  """Read a CSV file written by DataLogger.

  Returns:
    The header and the rows as strings.
  """
  with open(path, newline='', encoding='utf-8') as data_csv:
    reader = csv.reader(data_csv)
    try:
      headers = next(reader)
    except StopIteration:
      return [], []
    return headers, [row for row in reader]
