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

"""Json_dataclass."""

import dataclasses
import datetime
import pathlib
from typing import Any

import dataclasses_json


class DataClassJsonMixIn(dataclasses_json.DataClassJsonMixin):
  dataclass_json_config = dataclasses_json.config(
      letter_case=dataclasses_json.LetterCase.SNAKE,
      undefined=dataclasses_json.Undefined.EXCLUDE,
  )['dataclasses_json']


def date_field(default: datetime.date | None = None) -> Any:
  """A dataclass field stored as an ISO-8601 calendar date in JSON."""
  metadata = dataclasses_json.config(
      encoder=lambda value: value.isoformat() if value else None,
      decoder=lambda value: (
          datetime.date.fromisoformat(value)
          if isinstance(value, str)
          else value
      ),
  )
  return dataclasses.field(default=default, metadata=metadata)


def dump(obj: dataclasses_json.DataClassJsonMixin, path: str) -> None:
  """Write the dataclass to a JSON file with a stable layout.

  Args:
    obj: The dataclass instance.
    path: The output path.
  """
  text = obj.to_json(indent=2, sort_keys=True, ensure_ascii=False)
  pathlib.Path(path).write_text(text + '\n', encoding='utf-8')


def load(cls, path: str):
  """Read a dataclass of type cls from a JSON file."""
  return cls.from_json(pathlib.Path(path).read_text(encoding='utf-8'))
