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

"""util."""

from __future__ import annotations

import enum
import logging
from typing import TypeVar, overload

KEYTYPE = TypeVar('KEYTYPE', bound='str')
VALUETYPE = TypeVar('VALUETYPE')
ENUMINPUTTYPE = TypeVar('ENUMINPUTTYPE', bound='SpamGraphEnum')


class SpamGraphEnum(enum.Enum):
  """The enum class that used in py-spam-graph."""

  @overload
  @classmethod
  def get(cls: VALUETYPE, attr: str) -> VALUETYPE:
    ...

  @overload
  @classmethod
  def get(cls, attr: ENUMINPUTTYPE) -> ENUMINPUTTYPE:
    ...

  @classmethod
  def get(cls, attr):
    if isinstance(attr, cls):
      return attr

    if isinstance(attr, str):
      for member in cls:
        if attr.upper() in (member.name, str(member.value).upper()):
          return member

    raise ValueError(
        f'Invalid attribute {attr} for {cls.__name__}, The attr that is'
        f' available: {list(cls.__members__.keys())}'
    )


class LowerEnum(str, SpamGraphEnum):
  """The enum class whose values are the lower-case member names."""

  @staticmethod
  def _generate_next_value_(name, start, count, last_values):
    return name.lower()


def get_from_dict(
    dict_in: dict[KEYTYPE, VALUETYPE], key_in: KEYTYPE
) -> VALUETYPE:
  """The helper function of get item in the dict."""

  try:
    val = dict_in[key_in]
  except KeyError:
    logging.exception(
        'Key %s not found in dict, You can use %s',
        key_in,
        sorted(dict_in.keys()),
    )
    raise
  return val

