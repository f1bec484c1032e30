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

"""Readers and writers for the dataset files.

users.jsonl and tweets.jsonl hold one JSON object per line, edges.tsv holds
one `follower<TAB>followed` pair per line, lexicon.txt one lower-case entry
per line and labels.csv an `id,label` table. All files are UTF-8.
"""

from __future__ import annotations

from collections.abc import Iterable, Iterator
import dataclasses
import datetime
import json
import logging
import pathlib
from typing import Any

from py_spam_graph.data_logger import data_logger
from py_spam_graph.dataset import dataset
from py_spam_graph.util import errors

USERS_FILE = 'users.jsonl'
TWEETS_FILE = 'tweets.jsonl'
EDGES_FILE = 'edges.tsv'
LEXICON_FILE = 'lexicon.txt'
LABELS_FILE = 'labels.csv'

_TWITTER_DATE_FORMAT = '%a %b %d %H:%M:%S %z %Y'
_TRUE_STRINGS = ('true', '1', 'yes')
_FALSE_STRINGS = ('false', '0', 'no', '')


def _lines(path: str) -> Iterator[tuple[int, str]]:
  with open(path, encoding='utf-8') as file:
    for line_no, line in enumerate(file, start=1):
      yield line_no, line.rstrip('\n').rstrip('\r')


def _json_lines(path: str) -> Iterator[tuple[int, dict[str, Any]]]:
  for line_no, line in _lines(path):
    if not line.strip():
      continue
    try:
      obj = json.loads(line)
    except json.JSONDecodeError as e:
      raise errors.MalformedLine(line_no, path, str(e)) from None
    if not isinstance(obj, dict):
      raise errors.MalformedLine(line_no, path, 'expected a JSON object')
    yield line_no, obj


def parse_date(value: Any) -> datetime.date:
  """Parse an ISO date, an ISO timestamp or the Twitter API timestamp."""
  if not isinstance(value, str) or not value:
    raise ValueError(f'not a date string: {value!r}')
  try:
    return datetime.date.fromisoformat(value)
  except ValueError:
    pass
  try:
    stamp = datetime.datetime.fromisoformat(value.replace('Z', '+00:00'))
  except ValueError:
    stamp = datetime.datetime.strptime(value, _TWITTER_DATE_FORMAT)
  if stamp.tzinfo is not None:
    stamp = stamp.astimezone(datetime.timezone.utc)
  return stamp.date()


def _as_count(value: Any, name: str, line_no: int, path: str) -> int:
  if value is None:
    return 0
  if isinstance(value, bool) or not isinstance(value, (int, float, str)):
    raise errors.MalformedLine(line_no, path, f'{name} is not a count')
  try:
    count = int(value)
  except ValueError:
    raise errors.MalformedLine(
        line_no, path, f'{name} is not a count'
    ) from None
  if count < 0 or count != float(value):
    raise errors.MalformedLine(line_no, path, f'{name} must be a count >= 0')
  return count


def _as_bool(value: Any, name: str, line_no: int, path: str) -> bool:
  if value is None:
    return False
  if isinstance(value, bool):
    return value
  if isinstance(value, int) and value in (0, 1):
    return bool(value)
  if isinstance(value, str) and value.lower() in _TRUE_STRINGS:
    return True
  if isinstance(value, str) and value.lower() in _FALSE_STRINGS:
    return False
  raise errors.MalformedLine(line_no, path, f'{name} is not a boolean')


def _as_label(value: Any, line_no: int, path: str) -> int | None:
  if value is None or value == '':
    return None
  try:
    label = int(value)
  except (TypeError, ValueError):
    label = -1
  if isinstance(value, bool) or label not in dataset.LABELS:
    raise errors.MalformedLine(line_no, path, f'label {value!r} not in {{0,1}}')
  return label


def parse_users_file(
    path: str, snapshot_date: datetime.date
) -> list[dataset.UserRecord]:
  """Parse users.jsonl.

  Unknown fields are ignored; missing booleans default to false, missing
  counts to 0 and a missing description to "".

  Args:
    path (str): The users file.
    snapshot_date (datetime.date): The collection date.

  Returns:
    list[UserRecord]: The records in file order.

  Raises:
    MalformedLine: A line is not a JSON object or a field has a bad type.
    DuplicateId: Two lines share an id.
    InvalidDate: created_at is unparseable or after snapshot_date.
  """
  users: list[dataset.UserRecord] = []
  seen: set[str] = set()
  for line_no, obj in _json_lines(path):
    raw_id = obj.get('id')
    if raw_id is None or isinstance(raw_id, (bool, dict, list)):
      raise errors.MalformedLine(line_no, path, 'missing id')
    user_id = str(raw_id)
    if not user_id:
      raise errors.MalformedLine(line_no, path, 'empty id')
    if user_id in seen:
      raise errors.DuplicateId(user_id)
    seen.add(user_id)

    try:
      created_at = parse_date(obj.get('created_at'))
    except ValueError as e:
      raise errors.InvalidDate(user_id, str(e)) from None
    if created_at > snapshot_date:
      raise errors.InvalidDate(
          user_id, f'{created_at} is after the snapshot {snapshot_date}'
      )

    fields: dict[str, Any] = {
        'id': user_id,
        'user_name': str(obj.get('user_name') or ''),
        'screen_name': str(obj.get('screen_name') or ''),
        'description': str(obj.get('description') or ''),
        'created_at': created_at,
        'label': _as_label(obj.get('label'), line_no, path),
    }
    for name in dataset.COUNT_FIELDS:
      fields[name] = _as_count(obj.get(name), name, line_no, path)
    for name in dataset.BOOL_FIELDS:
      fields[name] = _as_bool(obj.get(name), name, line_no, path)
    users.append(dataset.UserRecord(**fields))

  logging.info('Parsed %d users from %s', len(users), path)
  return users


def parse_edges_file(path: str) -> list[tuple[str, str]]:
  """Parse edges.tsv into deduplicated (follower, followed) pairs.

  Blank lines and lines starting with `#` are skipped.

  Raises:
    MalformedLine: A line does not hold exactly two non-empty ids.
    SelfLoop: A line has the same id on both sides.
  """
  edges: dict[tuple[str, str], None] = {}
  for line_no, line in _lines(path):
    if not line.strip() or line.startswith('#'):
      continue
    parts = line.split('\t')
    if len(parts) != 2 or not all(part.strip() for part in parts):
      raise errors.MalformedLine(line_no, path, 'expected ID1<TAB>ID2')
    follower, followed = (part.strip() for part in parts)
    if follower == followed:
      raise errors.SelfLoop(follower, line_no)
    edges.setdefault((follower, followed))

  logging.info('Parsed %d edges from %s', len(edges), path)
  return list(edges)


def parse_tweets_file(path: str) -> dataset.TweetCorpus:
  """Parse tweets.jsonl; repeated user_id lines are concatenated in order.

  The optional `retweet_counts` key is accepted and ignored.
  """
  tweets: dict[str, list[str]] = {}
  for line_no, obj in _json_lines(path):
    user_id = obj.get('user_id')
    texts = obj.get('tweets', [])
    if user_id is None or user_id == '' or not isinstance(texts, list):
      raise errors.MalformedLine(line_no, path, 'expected user_id and tweets')
    if not all(isinstance(text, str) for text in texts):
      raise errors.MalformedLine(line_no, path, 'tweets must be strings')
    tweets.setdefault(str(user_id), []).extend(texts)

  logging.info('Parsed tweets of %d users from %s', len(tweets), path)
  return dataset.TweetCorpus(tweets)


def parse_lexicon_file(path: str) -> dataset.SpamLexicon:
  """Parse lexicon.txt; an entry of two space separated tokens is a bigram."""
  unigrams: set[str] = set()
  bigrams: set[tuple[str, str]] = set()
  for line_no, line in _lines(path):
    entry = line.strip().lower()
    if not entry or entry.startswith('#'):
      continue
    tokens = entry.split()
    if len(tokens) == 1:
      unigrams.add(tokens[0])
    elif len(tokens) == 2:
      bigrams.add((tokens[0], tokens[1]))
    else:
      raise errors.MalformedLine(line_no, path, 'expected 1 or 2 tokens')
  return dataset.SpamLexicon(frozenset(unigrams), frozenset(bigrams))


def parse_labels_file(path: str) -> dict[str, int]:
  """Parse labels.csv (`id,label` header)."""
  headers, rows = data_logger.read_rows(path)
  if headers[:2] != ['id', 'label']:
    raise errors.MalformedLine(1, path, 'expected header id,label')
  labels: dict[str, int] = {}
  for line_no, row in enumerate(rows, start=2):
    if len(row) != 2 or not row[0]:
      raise errors.MalformedLine(line_no, path, 'expected id,label')
    if row[0] in labels:
      raise errors.DuplicateId(row[0])
    label = _as_label(row[1], line_no, path)
    if label is None:
      raise errors.MalformedLine(line_no, path, 'missing label')
    labels[row[0]] = label
  return labels


def apply_labels(
    users: Iterable[dataset.UserRecord], labels: dict[str, int]
) -> list[dataset.UserRecord]:
  """Overlay labels.csv onto the records; every label id must be a user."""
  users = list(users)
  known = {user.id for user in users}
  unknown = sorted(set(labels) - known)
  if unknown:
    raise errors.MissingUser(unknown[0], 'user record for its label')
  return [
      dataclasses.replace(user, label=labels[user.id])
      if user.id in labels
      else user
      for user in users
  ]


def load_dataset(
    folder: str,
    snapshot_date: datetime.date,
    lexicon_path: str | None = None,
) -> dataset.Dataset:
  """Load the dataset files from one folder.

  tweets.jsonl, lexicon.txt and labels.csv are optional.

  Args:
    folder (str): The folder holding the dataset files.
    snapshot_date (datetime.date): The collection date.
    lexicon_path (str | None): Overrides folder/lexicon.txt.

  Returns:
    Dataset: The parsed dataset.
  """
  root = pathlib.Path(folder)
  users = parse_users_file(str(root / USERS_FILE), snapshot_date)
  if (root / LABELS_FILE).exists():
    users = apply_labels(users, parse_labels_file(str(root / LABELS_FILE)))

  tweets = dataset.TweetCorpus()
  if (root / TWEETS_FILE).exists():
    tweets = parse_tweets_file(str(root / TWEETS_FILE))

  lexicon_file = root / LEXICON_FILE
  if lexicon_path:
    lexicon_file = pathlib.Path(lexicon_path)
  lexicon = dataset.SpamLexicon()
  if lexicon_file.exists():
    lexicon = parse_lexicon_file(str(lexicon_file))

  return dataset.Dataset(
      users=tuple(users),
      tweets=tweets,
      edges=tuple(parse_edges_file(str(root / EDGES_FILE))),
      snapshot_date=snapshot_date,
      lexicon=lexicon,
  )


def user_to_json(user: dataset.UserRecord) -> str:
  obj = user.to_dict(encode_json=True)
  if obj['label'] is None:
    del obj['label']
  return json.dumps(obj, sort_keys=True, ensure_ascii=False)


def write_users_file(path: str, users: Iterable[dataset.UserRecord]) -> None:
  with open(path, 'w', encoding='utf-8', newline='\n') as file:
    for user in users:
      file.write(user_to_json(user) + '\n')


def write_tweets_file(path: str, tweets: dataset.TweetCorpus) -> None:
  with open(path, 'w', encoding='utf-8', newline='\n') as file:
    for user_id, texts in tweets.items():
      obj = {'tweets': list(texts), 'user_id': user_id}
      file.write(json.dumps(obj, sort_keys=True, ensure_ascii=False) + '\n')


def write_edges_file(path: str, edges: Iterable[tuple[str, str]]) -> None:
  with open(path, 'w', encoding='utf-8', newline='\n') as file:
    for follower, followed in edges:
      file.write(f'{follower}\t{followed}\n')


def write_lexicon_file(path: str, lexicon: dataset.SpamLexicon) -> None:
  entries = sorted(lexicon.unigrams) + sorted(
      ' '.join(pair) for pair in lexicon.bigrams
  )
  pathlib.Path(path).write_text(
      ''.join(f'{entry}\n' for entry in entries), encoding='utf-8'
  )


def write_labels_file(path: str, users: Iterable[dataset.UserRecord]) -> None:
  """labels.csv with the labeled users in record order."""
  data_logger.write_rows(
      path,
      ('id', 'label'),
      ((user.id, user.label) for user in users if user.is_labeled),
  )


def write_dataset(
    folder: str, d: dataset.Dataset, separate_labels: bool = False
) -> None:
  """Write the dataset in its canonical file form.

  Args:
    folder (str): The output folder, created when missing.
    d (dataset.Dataset): The dataset.
    separate_labels (bool): Write labels to labels.csv instead of inline.
  """
  root = pathlib.Path(folder)
  root.mkdir(parents=True, exist_ok=True)
  users = d.users
  if separate_labels:
    write_labels_file(str(root / LABELS_FILE), d.users)
    users = [dataclasses.replace(user, label=None) for user in d.users]
  write_users_file(str(root / USERS_FILE), users)
  write_tweets_file(str(root / TWEETS_FILE), d.tweets)
  write_edges_file(str(root / EDGES_FILE), d.edges)
  write_lexicon_file(str(root / LEXICON_FILE), d.lexicon)
