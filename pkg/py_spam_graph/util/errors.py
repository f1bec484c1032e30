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

"""Error codes and exceptions for py-spam-graph.

Every exception carries an ErrorCode. The code is the process exit code the
CLI returns when the exception escapes a command.
"""

from __future__ import annotations

import dataclasses


@dataclasses.dataclass(frozen=True)
class ErrorCode:
  """Error Code holder for py-spam-graph."""

  error: str
  code: int
  description: str

  def __str__(self):
    return f'Error {self.code}: {self.error} - {self.description}'


class SpamGraphErrorCodes:
  """Py-Spam-Graph error codes and utility methods."""

  def __init__(self, error_codes: dict[str, tuple[int, str]]) -> None:
    self.unknown_err = ErrorCode('UNKNOWN', 1, 'Unexpected failure')
    self._error_codes = {
        error: ErrorCode(error, code, description)
        for error, (code, description) in error_codes.items()
    }

  def get_error(self, error: str) -> ErrorCode:
    """Get error code details from the error name."""
    return self._error_codes.get(error, self.unknown_err)


EXIT_OK = 0
EXIT_INPUT = 2
EXIT_NUMERIC = 3
EXIT_LABELS = 4
EXIT_SCORING = 5

ERROR_CODES = SpamGraphErrorCodes({
    'INPUT': (EXIT_INPUT, 'Invalid input data or configuration'),
    'NUMERIC': (EXIT_NUMERIC, 'Numeric iteration did not converge'),
    'LABELS': (EXIT_LABELS, 'Degenerate class labels'),
    'SCORING': (EXIT_SCORING, 'Scoring reference error'),
})


class SpamGraphError(Exception):
  """Base class of every py-spam-graph error."""

  category = 'UNKNOWN'

  @property
  def error_code(self) -> ErrorCode:
    return ERROR_CODES.get_error(self.category)

  @property
  def exit_code(self) -> int:
    return self.error_code.code


class InputError(SpamGraphError):
  category = 'INPUT'


class NumericError(SpamGraphError):
  category = 'NUMERIC'


class LabelError(SpamGraphError):
  category = 'LABELS'


class ScoringError(SpamGraphError):
  category = 'SCORING'


class MalformedLine(InputError):

  def __init__(self, line_no: int, path: str = '', detail: str = '') -> None:
    self.line_no = line_no
    self.path = path
    super().__init__(f'{path}:{line_no}: malformed line {detail}'.rstrip())


class DuplicateId(InputError):

  def __init__(self, user_id: str) -> None:
    self.user_id = user_id
    super().__init__(f'Duplicate user id: {user_id}')


class InvalidDate(InputError):

  def __init__(self, user_id: str, detail: str = '') -> None:
    self.user_id = user_id
    super().__init__(f'Invalid created_at for user {user_id} {detail}'.rstrip())


class SelfLoop(InputError):

  def __init__(self, node_id: str, line_no: int) -> None:
    self.node_id = node_id
    self.line_no = line_no
    super().__init__(f'Self-loop on {node_id} at line {line_no}')


class FutureCreation(InputError):
  """An account creation date lies after the snapshot date."""


class ConfigInvalid(InputError):
  """A configuration value is out of range."""


class ValidationFailed(InputError):
  """The dataset was rejected by validation."""


class MissingUser(InputError):

  def __init__(self, user_id: str, block: str = '') -> None:
    self.user_id = user_id
    super().__init__(f'User {user_id} is missing the {block} block'.rstrip())


class MissingEmbedding(InputError):

  def __init__(self, user_id: str) -> None:
    self.user_id = user_id
    super().__init__(f'User {user_id} has no embedding row')


class LengthMismatch(InputError):
  """Two vectors that must align have different lengths."""


class DimensionMismatch(InputError):
  """A row does not have the model's feature count."""


class NotAnEdge(InputError):
  """A walk step uses a pair of nodes that are not adjacent."""


class GraphTooSmall(InputError):
  """The graph has too few nodes for the normalization."""


class EmptyWalks(InputError):
  """Skip-gram training got no walks."""


class EmptyData(InputError):
  """Training got no rows."""


class NoLabels(InputError):
  """Label-based selection got a table without labels."""


class NotConverged(NumericError):

  def __init__(self, what: str, max_iters: int) -> None:
    self.max_iters = max_iters
    super().__init__(f'{what} did not converge in {max_iters} iterations')


class NonFinite(NumericError):
  """Training produced NaN or infinite values."""


class SingleClass(LabelError):
  """Training labels contain one class only."""


class InsufficientClassCount(LabelError):
  """A class has fewer members than the number of folds."""


class DegenerateEval(LabelError):
  """A class is absent from y_true, its recall is undefined."""


class UnscorableUser(ScoringError):

  def __init__(self, user_id: str, reason: str) -> None:
    self.user_id = user_id
    super().__init__(f'Cannot score user {user_id}: {reason}')
