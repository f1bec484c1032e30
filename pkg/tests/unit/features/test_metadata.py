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

"""Metadata features unit test."""

import datetime
import math

from py_spam_graph.dataset import dataset
from py_spam_graph.features import metadata
from py_spam_graph.util import errors
import pytest


@pytest.mark.parametrize(
    'friends, followers, expected', [(100, 50, 2.0), (10, 0, 10.0), (0, 7, 0.0)]
)
def test_ff_ratio(friends, followers, expected) -> None:
  assert metadata.ff_ratio(friends, followers) == expected


class TestNameSimilarity:

  @pytest.mark.parametrize(
      'a, b, expected',
      [
          ('abc', 'abc', 1.0),
          ('abcd', 'bcde', 0.75),
          ('apple', 'applet', 10 / 11),
          ('Alice', 'ALICE', 1.0),
          ('', '', 1.0),
          ('abc', '', 0.0),
      ],
  )
  def test_examples(self, a, b, expected) -> None:
    assert metadata.name_similarity(a, b) == pytest.approx(expected, abs=1e-12)

  @pytest.mark.parametrize(
      'a, b', [('tweetbot99', 'bot_tweet'), ('ab', 'ba'), ('spam', 'maps')]
  )
  def test_symmetric_and_bounded(self, a, b) -> None:
    forward = metadata.name_similarity(a, b)
    assert forward == metadata.name_similarity(b, a)
    assert 0.0 <= forward < 1.0


class TestAccountAge:

  def test_year(self) -> None:
    assert (
        metadata.account_age_days(
            datetime.date(2020, 1, 1), datetime.date(2020, 12, 31)
        )
        == 365
    )

  def test_same_day(self) -> None:
    day = datetime.date(2020, 6, 1)
    assert metadata.account_age_days(day, day) == 1

  def test_future(self) -> None:
    with pytest.raises(errors.FutureCreation):
      metadata.account_age_days(
          datetime.date(2020, 6, 2), datetime.date(2020, 6, 1)
      )


@pytest.mark.parametrize(
    'statuses, age, expected', [(730, 365, 2.0), (0, 100, 0.0), (5, 2, 2.5)]
)
def test_activity_ratio(statuses, age, expected) -> None:
  assert metadata.activity_ratio(statuses, age) == expected


@pytest.mark.parametrize(
    'favourites, statuses, expected', [(50, 100, 0.5), (3, 0, 3.0), (0, 9, 0.0)]
)
def test_fav_status_ratio(favourites, statuses, expected) -> None:
  assert metadata.fav_status_ratio(favourites, statuses) == expected


class TestEntropy:

  @pytest.mark.parametrize(
      'text, expected', [('aaaa', 0.0), ('ab', 0.5), ('aabb', 0.25), ('', 0.0)]
  )
  def test_examples(self, text, expected) -> None:
    assert metadata.entropy_per_length(text) == pytest.approx(
        expected, abs=1e-12
    )

  @pytest.mark.parametrize('text', ['hello world', 'Spam spam SPAM!', 'éèê'])
  def test_bounds(self, text) -> None:
    value = metadata.entropy_per_length(text)
    assert 0.0 <= value <= math.log2(len(text)) / len(text) + 1e-12


def test_compute_metadata_features() -> None:
  user = dataset.UserRecord(
      'u1',
      user_name='abcd',
      screen_name='bcde',
      statuses_count=730,
      followers_count=50,
      friends_count=100,
      favourites_count=365,
      description='ab',
      created_at=datetime.date(2019, 6, 2),
  )
  features = metadata.compute_metadata_features(user, datetime.date(2020, 6, 1))
  assert features.account_age_days == 365
  assert features.as_row() == pytest.approx([2.0, 0.75, 365.0, 2.0, 0.5, 0.5])


def test_future_creation_names_user() -> None:
  user = dataset.UserRecord('late', created_at=datetime.date(2021, 1, 1))
  with pytest.raises(errors.FutureCreation, match='late'):
    metadata.compute_metadata_features(user, datetime.date(2020, 6, 1))
