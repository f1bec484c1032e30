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

"""Synthetic labeled datasets with planted spam signal.

Spam accounts follow each other densely inside a few communities, tweet
perturbed copies of a handful of templates seeded with lexicon words, and
get profiles shaped like the spam side of every metadata feature. With
planted_effects off every account is drawn from the genuine process and the
labels carry no signal.
"""

from __future__ import annotations

import dataclasses
import datetime
import logging
import pathlib

import numpy as np

from py_spam_graph.dataset import dataset
from py_spam_graph.dataset import dataset_io
from py_spam_graph.util import errors
from py_spam_graph.util import json_dataclass

MAX_SEED = 2**64
MIN_USERS = 10

SPAM_UNIGRAMS = (
    'bonus',
    'cash',
    'cheap',
    'deal',
    'discount',
    'free',
    'giveaway',
    'money',
    'offer',
    'prize',
    'promo',
    'win',
)
SPAM_BIGRAMS = (
    ('act', 'now'),
    ('buy', 'now'),
    ('click', 'here'),
    ('free', 'gift'),
    ('limited', 'offer'),
    ('follow', 'back'),
)
SPAM_LEXICON = dataset.SpamLexicon(
    frozenset(SPAM_UNIGRAMS), frozenset(SPAM_BIGRAMS)
)

_CONSONANTS = 'bcdfghjklmnprstvz'
_VOWELS = 'aeiou'
_HANDLE_CHARS = 'abcdefghijklmnopqrstuvwxyz0123456789'


@dataclasses.dataclass
class SynthConfig(json_dataclass.DataClassJsonMixIn):
  """The config of the synthetic generator.

  Attributes:
    n_genuine (int): Genuine accounts.
    n_spam (int): Spam accounts.
    tweets_per_user (list[int]): Inclusive [min, max] tweets per account.
    spam_community_count (int): Communities the spam accounts split into.
    intra_spam_edge_prob (float): Follow probability inside a community.
    cross_edge_prob (float): Follow probability between spam and genuine.
    genuine_edge_prob (float): Follow probability of every other pair.
    spam_template_count (int): Templates spam tweets are copied from.
    vocab_size (int): Size of the pseudo-word vocabulary.
    seed (int): Seed of every draw.
    planted_effects (bool): Give spam accounts class-specific behavior.
    snapshot_date (datetime.date): The collection date of the dataset.
  """

  n_genuine: int = 1500
  n_spam: int = 500
  tweets_per_user: list[int] = dataclasses.field(
      default_factory=lambda: [5, 20]
  )
  spam_community_count: int = 5
  intra_spam_edge_prob: float = 0.2
  cross_edge_prob: float = 0.002
  genuine_edge_prob: float = 0.004
  spam_template_count: int = 8
  vocab_size: int = 2000
  seed: int = 42
  planted_effects: bool = True
  snapshot_date: datetime.date = json_dataclass.date_field(
      datetime.date(2020, 6, 1)
  )

  def __post_init__(self) -> None:
    problems = []
    if self.n_genuine < 0 or self.n_spam < 0:
      problems.append('user counts must be >= 0')
    if self.n_genuine + self.n_spam < MIN_USERS:
      problems.append(f'n_genuine + n_spam must be >= {MIN_USERS}')
    if (
        len(self.tweets_per_user) != 2
        or self.tweets_per_user[0] < 0
        or self.tweets_per_user[0] > self.tweets_per_user[1]
    ):
      problems.append('tweets_per_user must be [min, max] with 0 <= min <= max')
    for name in (
        'intra_spam_edge_prob',
        'cross_edge_prob',
        'genuine_edge_prob',
    ):
      if not 0 <= getattr(self, name) <= 1:
        problems.append(f'{name} must be in [0, 1]')
    if self.spam_community_count < 1 or self.spam_template_count < 1:
      problems.append(
          'spam_community_count and spam_template_count must be >= 1'
      )
    if self.vocab_size < MIN_USERS:
      problems.append(f'vocab_size must be >= {MIN_USERS}')
    if not 0 <= self.seed < MAX_SEED:
      problems.append('seed must be a 64-bit unsigned integer')
    if problems:
      raise errors.ConfigInvalid('; '.join(problems))


def community_sizes(n_spam: int, count: int) -> list[int]:
  """Spam community sizes in the ratio count : count - 1 : ... : 1.

  Unequal sizes keep the leading eigenvalues of the communities apart, so
  eigenvector centrality converges on the generated graph.
  """
  weights = np.arange(count, 0, -1)
  sizes = n_spam * weights // weights.sum()
  sizes[: n_spam - sizes.sum()] += 1
  return sizes.tolist()


def make_vocabulary(rng: np.random.Generator, size: int) -> list[str]:
  """size distinct pseudo-words that collide with no lexicon entry."""
  reserved = set(SPAM_UNIGRAMS)
  reserved.update(word for pair in SPAM_BIGRAMS for word in pair)
  words: dict[str, None] = {}
  while len(words) < size:
    syllables = int(rng.integers(2, 4))
    word = ''.join(
        _CONSONANTS[rng.integers(len(_CONSONANTS))]
        + _VOWELS[rng.integers(len(_VOWELS))]
        for _ in range(syllables)
    )
    if word not in reserved:
      words[word] = None
  return list(words)


class _Generator:
  """Holds the random stream and vocabulary of one generate call."""

  def __init__(self, cfg: SynthConfig) -> None:
    self.cfg = cfg
    self.rng = np.random.default_rng(cfg.seed)
    self.vocab = make_vocabulary(self.rng, cfg.vocab_size)
    zipf = 1.0 / np.arange(1, len(self.vocab) + 1)
    self.word_prob = zipf / zipf.sum()

  def words(self, count: int) -> list[str]:
    picks = self.rng.choice(len(self.vocab), size=count, p=self.word_prob)
    return [self.vocab[i] for i in picks]

  def uniform_words(self, count: int) -> list[str]:
    picks = self.rng.integers(len(self.vocab), size=count)
    return [self.vocab[i] for i in picks]

  def handle(self, length: int) -> str:
    return ''.join(
        _HANDLE_CHARS[i]
        for i in self.rng.integers(len(_HANDLE_CHARS), size=length)
    )

  def tweet_count(self) -> int:
    low, high = self.cfg.tweets_per_user
    return int(self.rng.integers(low, high + 1))

  def genuine_profile(self, user_id: str) -> dataset.UserRecord:
    rng = self.rng
    first, last = self.uniform_words(2)
    age = int(rng.integers(365, 4000))
    followers = int(rng.lognormal(5.0, 1.0))
    friends = int(followers * rng.lognormal(0.0, 0.5))
    statuses = int(age * rng.uniform(0.2, 3.0))
    return dataset.UserRecord(
        id=user_id,
        user_name=f'{first.title()} {last.title()}',
        screen_name=f'{first}{last}{rng.integers(100)}'
        if rng.random() < 0.5
        else f'{first}_{last}',
        statuses_count=statuses,
        followers_count=followers,
        friends_count=friends,
        favourites_count=int(statuses * rng.uniform(0.5, 2.0)),
        verified=bool(rng.random() < 0.15),
        geo_enabled=bool(rng.random() < 0.5),
        profile_use_background_image=bool(rng.random() < 0.8),
        profile_background_tile=bool(rng.random() < 0.3),
        default_profile=bool(rng.random() < 0.2),
        description=' '.join(self.words(int(rng.integers(5, 16)))),
        created_at=self.cfg.snapshot_date - datetime.timedelta(days=age),
    )

  def spam_profile(self, user_id: str) -> dataset.UserRecord:
    rng = self.rng
    age = int(rng.integers(1, 400))
    statuses = int(age * rng.uniform(5.0, 40.0))
    if rng.random() < 0.4:
      description = ''
    else:
      picks = rng.integers(len(SPAM_UNIGRAMS), size=int(rng.integers(1, 4)))
      description = ' '.join(SPAM_UNIGRAMS[i] for i in picks)
    return dataset.UserRecord(
        id=user_id,
        user_name=self.uniform_words(1)[0].title(),
        screen_name=self.handle(10),
        statuses_count=statuses,
        followers_count=int(rng.lognormal(3.0, 1.0)),
        friends_count=int(rng.lognormal(6.5, 0.7)),
        favourites_count=int(statuses * rng.uniform(0.0, 0.1)),
        verified=False,
        geo_enabled=bool(rng.random() < 0.1),
        profile_use_background_image=bool(rng.random() < 0.3),
        profile_background_tile=bool(rng.random() < 0.05),
        default_profile=bool(rng.random() < 0.8),
        description=description,
        created_at=self.cfg.snapshot_date - datetime.timedelta(days=age),
    )

  def genuine_tweets(self) -> list[str]:
    tweets = []
    for _ in range(self.tweet_count()):
      tokens = self.words(int(self.rng.integers(6, 15)))
      if self.rng.random() < 0.15:
        tokens.append('#' + self.words(1)[0])
      if self.rng.random() < 0.2:
        tokens.insert(0, '@' + self.uniform_words(1)[0])
      tweets.append(' '.join(tokens))
    return tweets

  def spam_templates(self) -> list[list[str]]:
    templates = []
    for _ in range(self.cfg.spam_template_count):
      tokens = self.uniform_words(int(self.rng.integers(5, 9)))
      for word in self.rng.choice(SPAM_UNIGRAMS, size=3, replace=False):
        tokens.insert(int(self.rng.integers(len(tokens) + 1)), str(word))
      bigram = SPAM_BIGRAMS[self.rng.integers(len(SPAM_BIGRAMS))]
      position = int(self.rng.integers(len(tokens) + 1))
      tokens[position:position] = list(bigram)
      templates.append(tokens)
    return templates

  def spam_tweets(self, templates: list[list[str]]) -> list[str]:
    own = [templates[i] for i in self.rng.integers(len(templates), size=2)]
    tweets = []
    for _ in range(self.tweet_count()):
      tokens = list(own[int(self.rng.integers(2))])
      for i in range(len(tokens)):
        if self.rng.random() < 0.1:
          tokens[i] = self.uniform_words(1)[0]
      for _ in range(int(self.rng.integers(1, 4))):
        tokens.append('#' + self.uniform_words(1)[0])
      if self.rng.random() < 0.6:
        tokens.insert(0, '@' + self.handle(8))
      if self.rng.random() < 0.5:
        tokens.append('https://spam.example/' + self.handle(6))
      tweets.append(' '.join(tokens))
    return tweets

  def edges(self, labels: np.ndarray) -> list[tuple[int, int]]:
    """Follower edges as index pairs, sorted, no self-loops or duplicates."""
    cfg = self.cfg
    n = len(labels)
    prob = np.full((n, n), cfg.genuine_edge_prob)
    if cfg.planted_effects:
      spam = labels == dataset.SPAM
      community = np.full(n, -1)
      community[spam] = np.repeat(
          np.arange(cfg.spam_community_count),
          community_sizes(int(spam.sum()), cfg.spam_community_count),
      )
      same = (community[:, None] == community[None, :]) & spam[:, None]
      prob[spam[:, None] != spam[None, :]] = cfg.cross_edge_prob
      prob[same] = cfg.intra_spam_edge_prob
    adjacency = self.rng.random((n, n)) < prob
    np.fill_diagonal(adjacency, False)

    # every account needs a graph presence
    touched = adjacency.any(axis=0) | adjacency.any(axis=1)
    for i in np.flatnonzero(~touched):
      j = int(self.rng.integers(n - 1))
      adjacency[i, j if j < i else j + 1] = True
    followers, followed = np.nonzero(adjacency)
    return list(zip(followers.tolist(), followed.tolist()))


def generate(cfg: SynthConfig) -> dataset.Dataset:
  """A labeled dataset drawn from cfg.

  Raises:
    ConfigInvalid: Raised by SynthConfig for invalid fields.
  """
  gen = _Generator(cfg)
  n = cfg.n_genuine + cfg.n_spam
  labels = gen.rng.permutation(
      np.array([dataset.GENUINE] * cfg.n_genuine + [dataset.SPAM] * cfg.n_spam)
  )
  width = len(str(n))
  ids = [f'u{i:0{width}d}' for i in range(n)]
  templates = gen.spam_templates()

  users, tweets = [], {}
  for user_id, label in zip(ids, labels):
    planted_spam = cfg.planted_effects and label == dataset.SPAM
    if planted_spam:
      profile = gen.spam_profile(user_id)
    else:
      profile = gen.genuine_profile(user_id)
    users.append(dataclasses.replace(profile, label=int(label)))
    tweets[user_id] = (
        gen.spam_tweets(templates) if planted_spam else gen.genuine_tweets()
    )
  edges = [(ids[u], ids[v]) for u, v in gen.edges(labels)]
  logging.info(
      'Generated %d genuine and %d spam users with %d edges (planted: %s)',
      cfg.n_genuine,
      cfg.n_spam,
      len(edges),
      cfg.planted_effects,
  )
  return dataset.Dataset(
      users=tuple(users),
      tweets=dataset.TweetCorpus(tweets),
      edges=tuple(edges),
      snapshot_date=cfg.snapshot_date,
      lexicon=SPAM_LEXICON,
  )


def generate_files(cfg: SynthConfig, folder: str) -> dataset.Dataset:
  """Generate and write users, tweets, edges, labels and lexicon files.

  Raises:
    ConfigInvalid: folder does not exist.
  """
  if not pathlib.Path(folder).is_dir():
    raise errors.ConfigInvalid(f'output directory {folder} does not exist')
  d = generate(cfg)
  dataset_io.write_dataset(folder, d, separate_labels=True)
  return d
