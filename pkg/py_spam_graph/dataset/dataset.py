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

"""Domain types of py-spam-graph and cross-file validation.

A Dataset bundles the account metadata, the per-user tweets, the follower
edge list and the spam lexicon. Every type is immutable after construction so
it can be shared read-only by parallel workers.
"""

from __future__ import annotations

from collections.abc import Iterator, Mapping, Sequence
import dataclasses
import datetime
import logging
from typing import Optional

from py_spam_graph.util import json_dataclass
from py_spam_graph.util import util

GENUINE = 0
SPAM = 1
LABELS = (GENUINE, SPAM)


@dataclasses.dataclass(frozen=True)
class UserRecord(json_dataclass.DataClassJsonMixIn):
  """One account's metadata plus its optional label.

  Attributes:
    id (str): The account identifier, non-empty and unique in a dataset.
    user_name (str): The display name.
    screen_name (str): The handle.
    statuses_count (int): Number of statuses posted.
    followers_count (int): Number of followers.
    friends_count (int): Number of followed accounts.
    favourites_count (int): Number of liked statuses.
    verified (bool): Verified badge.
    geo_enabled (bool): Geo tagging enabled.
    profile_use_background_image (bool): Profile uses a background image.
    profile_background_tile (bool): Profile background is tiled.
    default_profile (bool): Profile left at defaults.
    description (str): Profile description, may be empty.
    created_at (datetime.date): Account creation date (UTC).
    label (int | None): 0 = Genuine, 1 = Spam, None = unlabeled.
  """

  id: str
  user_name: str = ''
  screen_name: str = ''
  statuses_count: int = 0
  followers_count: int = 0
  friends_count: int = 0
  favourites_count: int = 0
  verified: bool = False
  geo_enabled: bool = False
  profile_use_background_image: bool = False
  profile_background_tile: bool = False
  default_profile: bool = False
  description: str = ''
  created_at: datetime.date = json_dataclass.date_field(
      datetime.date(1970, 1, 1)
  )
  label: Optional[int] = None

  @property
  def is_labeled(self) -> bool:
    return self.label is not None


COUNT_FIELDS = (
    'statuses_count',
    'followers_count',
    'friends_count',
    'favourites_count',
)
BOOL_FIELDS = (
    'verified',
    'geo_enabled',
    'profile_use_background_image',
    'profile_background_tile',
    'default_profile',
)


class TweetCorpus(Mapping[str, tuple[str, ...]]):
  """Read-only map from user id to the ordered tweets of that user."""

  def __init__(self, tweets: Mapping[str, Sequence[str]] | None = None):
    self._tweets = {
        user_id: tuple(texts) for user_id, texts in (tweets or {}).items()
    }

  def __getitem__(self, user_id: str) -> tuple[str, ...]:
    return self._tweets[user_id]

  def __iter__(self) -> Iterator[str]:
    return iter(self._tweets)

  def __len__(self) -> int:
    return len(self._tweets)

  def get_tweets(self, user_id: str) -> tuple[str, ...]:
    """The tweets of user_id; users without tweets get an empty tuple."""
    return self._tweets.get(user_id, ())

  def __eq__(self, other) -> bool:
    if not isinstance(other, TweetCorpus):
      return NotImplemented
    return list(self._tweets.items()) == list(other._tweets.items())

  def __repr__(self) -> str:
    return f'TweetCorpus({len(self)} users)'


@dataclasses.dataclass(frozen=True)
class SpamLexicon:
  """Known spam unigrams and bigrams, all lower case."""

  unigrams: frozenset[str] = frozenset()
  bigrams: frozenset[tuple[str, str]] = frozenset()

  def __len__(self) -> int:
    return len(self.unigrams) + len(self.bigrams)


@dataclasses.dataclass(frozen=True)
class Dataset:
  """Users, tweets, follower edges and the lexicon of one snapshot.

  Attributes:
    users (tuple[UserRecord, ...]): The accounts in file order.
    tweets (TweetCorpus): The tweets per user id.
    edges (tuple[tuple[str, str], ...]): (follower_id, followed_id) pairs.
    snapshot_date (datetime.date): The date the data was collected.
    lexicon (SpamLexicon): The spam n-gram lexicon.
  """

  users: tuple[UserRecord, ...]
  tweets: TweetCorpus
  edges: tuple[tuple[str, str], ...]
  snapshot_date: datetime.date
  lexicon: SpamLexicon = SpamLexicon()

  @property
  def labeled_users(self) -> list[UserRecord]:
    return [user for user in self.users if user.is_labeled]

  @property
  def user_ids(self) -> list[str]:
    return [user.id for user in self.users]

  def get_user(self, user_id: str) -> UserRecord:
    return util.get_from_dict({user.id: user for user in self.users}, user_id)


class IssueKind(str, util.SpamGraphEnum):
  UNKNOWN_TWEET_USER = 'UnknownTweetUser'
  LABELED_USER_NOT_IN_GRAPH = 'LabeledUserNotInGraph'


@dataclasses.dataclass(frozen=True)
class Issue:
  kind: IssueKind
  user_id: str

  @property
  def is_blocking(self) -> bool:
    return self.kind is IssueKind.UNKNOWN_TWEET_USER

  def __str__(self) -> str:
    return f'{self.kind.value}({self.user_id!r})'


def UnknownTweetUser(user_id: str) -> Issue:  # pylint: disable=invalid-name
  return Issue(IssueKind.UNKNOWN_TWEET_USER, user_id)


# pylint: disable-next=invalid-name
def LabeledUserNotInGraph(user_id: str) -> Issue:
  return Issue(IssueKind.LABELED_USER_NOT_IN_GRAPH, user_id)


@dataclasses.dataclass(frozen=True)
class ValidationReport:
  """The result of validate_dataset.

  Labeled users absent from the edge list are kept as isolated graph nodes,
  so they are reported but do not reject the dataset.
  """

  issues: tuple[Issue, ...]
  class_counts: dict[int, int]

  @property
  def accepted(self) -> bool:
    return not any(issue.is_blocking for issue in self.issues)

  @property
  def blocking_issues(self) -> list[Issue]:
    return [issue for issue in self.issues if issue.is_blocking]


def validate_dataset(d: Dataset) -> ValidationReport:
  """Check the cross-file consistency of a dataset.

  Args:
    d (Dataset): The dataset.

  Returns:
    ValidationReport: The issues found and the label class counts.
  """
  user_ids = set(d.user_ids)
  graph_nodes = {node for edge in d.edges for node in edge}

  issues: list[Issue] = []
  for user in d.users:
    if user.is_labeled and user.id not in graph_nodes:
      issues.append(LabeledUserNotInGraph(user.id))
  for user_id in d.tweets:
    if user_id not in user_ids:
      issues.append(UnknownTweetUser(user_id))

  class_counts = {label: 0 for label in LABELS}
  for user in d.labeled_users:
    class_counts[user.label] += 1
  class_counts = {label: n for label, n in class_counts.items() if n}

  report = ValidationReport(tuple(issues), class_counts)
  logging.info(
      'Validated dataset: %d users, %d edges, class counts %s, %d issues',
      len(d.users),
      len(d.edges),
      class_counts,
      len(issues),
  )
  for issue in report.blocking_issues:
    logging.error('Blocking dataset issue: %s', issue)
  return report
