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

"""Engineered profile metadata features."""

from __future__ import annotations

import collections
import dataclasses
import datetime
import difflib

from scipy import stats

from py_spam_graph.dataset import dataset
from py_spam_graph.util import errors
from py_spam_graph.util import json_dataclass


@dataclasses.dataclass(frozen=True)
class MetadataFeatures(json_dataclass.DataClassJsonMixIn):
  """The six metadata features of one account.

  Attributes:
    ff_ratio (float): Friends per follower.
    name_similarity (float): Gestalt similarity of user and screen name.
    account_age_days (int): Days between creation and snapshot, at least 1.
    activity_ratio (float): Statuses per day of account age.
    fav_status_ratio (float): Favourites per status.
    entropy_per_length (float): Description entropy in bits per character.
  """

  ff_ratio: float
  name_similarity: float
  account_age_days: int
  activity_ratio: float
  fav_status_ratio: float
  entropy_per_length: float

  def as_row(self) -> list[float]:
    return [float(getattr(self, name)) for name in METADATA_FEATURE_NAMES]


METADATA_FEATURE_NAMES = tuple(
    field.name for field in dataclasses.fields(MetadataFeatures)
)


def ff_ratio(friends_count: int, followers_count: int) -> float:
  return friends_count / max(followers_count, 1)


def name_similarity(user_name: str, screen_name: str) -> float:
  """Ratcliff-Obershelp ratio 2*M/T of the lowercased names.

  difflib matches in one orientation only, so the ratio of both argument
  orders is averaged to keep the result symmetric.
  """
  a, b = user_name.lower(), screen_name.lower()
  if not a and not b:
    return 1.0
  if not a or not b:
    return 0.0
  forward = difflib.SequenceMatcher(None, a, b, autojunk=False).ratio()
  backward = difflib.SequenceMatcher(None, b, a, autojunk=False).ratio()
  return (forward + backward) / 2.0


def account_age_days(
    created_at: datetime.date, snapshot_date: datetime.date
) -> int:
  """Calendar days from created_at to snapshot_date, floored at 1.

  Raises:
    FutureCreation: created_at is after snapshot_date.
  """
  if created_at > snapshot_date:
    raise errors.FutureCreation(
        f'created {created_at.isoformat()} after snapshot'
        f' {snapshot_date.isoformat()}'
    )
  return max((snapshot_date - created_at).days, 1)


def activity_ratio(statuses_count: int, age_days: int) -> float:
  return statuses_count / age_days


def fav_status_ratio(favourites_count: int, statuses_count: int) -> float:
  return favourites_count / max(statuses_count, 1)


def entropy_per_length(description: str) -> float:
  """Shannon entropy of the character distribution divided by length."""
  if not description:
    return 0.0
  counts = list(collections.Counter(description).values())
  return float(stats.entropy(counts, base=2)) / len(description)


def compute_metadata_features(
    user: dataset.UserRecord, snapshot_date: datetime.date
) -> MetadataFeatures:
  """All six features of one user.

  Raises:
    FutureCreation: The account was created after snapshot_date.
  """
  try:
    age = account_age_days(user.created_at, snapshot_date)
  except errors.FutureCreation as e:
    raise errors.FutureCreation(f'user {user.id}: {e}') from e
  return MetadataFeatures(
      ff_ratio=ff_ratio(user.friends_count, user.followers_count),
      name_similarity=name_similarity(user.user_name, user.screen_name),
      account_age_days=age,
      activity_ratio=activity_ratio(user.statuses_count, age),
      fav_status_ratio=fav_status_ratio(
          user.favourites_count, user.statuses_count
      ),
      entropy_per_length=entropy_per_length(user.description),
  )


def compute_all_metadata(
    d: dataset.Dataset, users=None
) -> dict[str, MetadataFeatures]:
  """Metadata features keyed by user id, for users or every labeled user."""
  users = d.labeled_users if users is None else users
  return {
      user.id: compute_metadata_features(user, d.snapshot_date)
      for user in users
  }
