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

"""Features computed from the tweets of one user."""

from __future__ import annotations

from collections.abc import Sequence
import dataclasses
import re
import unicodedata

import numpy as np
from sklearn.feature_extraction import text as sk_text
from sklearn.metrics import pairwise

from py_spam_graph.dataset import dataset
from py_spam_graph.util import json_dataclass

TOP_SIMILARITIES = 200
MARKER_RE = re.compile(r'[#@]\w+')
MARKERS = ('#', '@')
URL_PREFIXES = ('http://', 'https://')


@dataclasses.dataclass(frozen=True)
class TextFeatures(json_dataclass.DataClassJsonMixIn):
  tweet_similarity: float
  lexical_diversity: float
  hashtag_count: int
  user_mention_count: int
  unigram_spam_freq: float
  bigram_spam_freq: float

  def as_row(self) -> list[float]:
    return [float(getattr(self, name)) for name in TEXT_FEATURE_NAMES]


TEXT_FEATURE_NAMES = tuple(
    field.name for field in dataclasses.fields(TextFeatures)
)


def _is_punctuation(char: str) -> bool:
  return unicodedata.category(char)[0] in ('P', 'S')


def _strip_token(token: str) -> str:
  end = len(token)
  while end and _is_punctuation(token[end - 1]):
    end -= 1
  start = 0
  while start < end and _is_punctuation(token[start]):
    if token[start] in MARKERS:
      break
    start += 1
  return token[start:end]


def tokenize(text: str) -> list[str]:
  """Lowercased whitespace tokens without URLs or edge punctuation.

  A leading # or @ survives so that hashtags and mentions stay recognizable.
  """
  tokens = []
  for raw in text.lower().split():
    if raw.startswith(URL_PREFIXES):
      continue
    token = _strip_token(raw)
    if token and not token.startswith(URL_PREFIXES):
      tokens.append(token)
  return tokens


def is_marker(token: str) -> bool:
  return MARKER_RE.fullmatch(token) is not None


def content_tokens(text: str) -> list[str]:
  """Tokens of text other than hashtags and mentions."""
  return [token for token in tokenize(text) if not token.startswith(MARKERS)]


@dataclasses.dataclass(frozen=True)
class TfIdfModel:
  """Smoothed tf-idf fitted on one corpus, idf = ln((1+N)/(1+df)) + 1.

  Attributes:
    vocabulary (dict[str, int]): Token to column index.
    idf (np.ndarray): The idf of every column.
    vectorizer (TfidfVectorizer): The fitted vectorizer.
  """

  vocabulary: dict[str, int]
  idf: np.ndarray
  vectorizer: sk_text.TfidfVectorizer

  @classmethod
  def fit(cls, documents: Sequence[str]) -> TfIdfModel:
    """Fit on documents.

    Raises:
      ValueError: No document has a content token.
    """
    vectorizer = sk_text.TfidfVectorizer(
        tokenizer=content_tokens,
        lowercase=False,
        token_pattern=None,
        smooth_idf=True,
        norm='l2',
    )
    vectorizer.fit(documents)
    return cls(dict(vectorizer.vocabulary_), vectorizer.idf_, vectorizer)

  def transform(self, documents: Sequence[str]):
    """L2-normalized sparse tf-idf rows of documents."""
    return self.vectorizer.transform(documents)


def tweet_similarity(tweets: Sequence[str]) -> float:
  """Mean of the largest pairwise cosine similarities between tweets."""
  if len(tweets) < 2:
    return 0.0
  try:
    model = TfIdfModel.fit(tweets)
  except ValueError:
    # every tweet is empty after dropping markers and URLs
    return 0.0
  similarities = pairwise.cosine_similarity(model.transform(tweets))
  upper = similarities[np.triu_indices(len(tweets), k=1)]
  if len(upper) > TOP_SIMILARITIES:
    upper = np.partition(upper, -TOP_SIMILARITIES)[-TOP_SIMILARITIES:]
  return float(np.clip(upper.mean(), 0.0, 1.0))


def lexical_diversity(tweets: Sequence[str]) -> float:
  """Type-token ratio over the content tokens of all tweets."""
  tokens = [token for tweet in tweets for token in content_tokens(tweet)]
  if not tokens:
    return 0.0
  return len(set(tokens)) / len(tokens)


def count_markers(tweets: Sequence[str]) -> tuple[int, int]:
  """(hashtag count, mention count) over all tweets.

  A marker is # or @ followed by word characters; bare markers and markers
  followed by punctuation do not count.
  """
  hashtags = mentions = 0
  for tweet in tweets:
    for token in tokenize(tweet):
      if not is_marker(token):
        continue
      if token.startswith('#'):
        hashtags += 1
      else:
        mentions += 1
  return hashtags, mentions


def spam_word_freq(
    tweets: Sequence[str], lexicon: dataset.SpamLexicon
) -> tuple[float, float]:
  """Share of content tokens and of within-tweet bigrams in the lexicon."""
  token_count = unigram_hits = pair_count = bigram_hits = 0
  for tweet in tweets:
    tokens = content_tokens(tweet)
    token_count += len(tokens)
    unigram_hits += sum(token in lexicon.unigrams for token in tokens)
    pairs = list(zip(tokens, tokens[1:]))
    pair_count += len(pairs)
    bigram_hits += sum(pair in lexicon.bigrams for pair in pairs)
  return unigram_hits / max(token_count, 1), bigram_hits / max(pair_count, 1)


def compute_text_features(
    tweets: Sequence[str], lexicon: dataset.SpamLexicon
) -> TextFeatures:
  hashtags, mentions = count_markers(tweets)
  unigram_freq, bigram_freq = spam_word_freq(tweets, lexicon)
  return TextFeatures(
      tweet_similarity=tweet_similarity(tweets),
      lexical_diversity=lexical_diversity(tweets),
      hashtag_count=hashtags,
      user_mention_count=mentions,
      unigram_spam_freq=unigram_freq,
      bigram_spam_freq=bigram_freq,
  )


def compute_all_text(
    d: dataset.Dataset, users=None
) -> dict[str, TextFeatures]:
  """Text features keyed by user id, for users or every labeled user."""
  users = d.labeled_users if users is None else users
  return {
      user.id: compute_text_features(d.tweets.get_tweets(user.id), d.lexicon)
      for user in users
  }
