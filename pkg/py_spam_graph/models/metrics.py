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

"""Per-class recall, macro recall and macro F1."""

from __future__ import annotations

import dataclasses

import numpy as np
from sklearn import metrics as sk_metrics

from py_spam_graph.dataset import dataset
from py_spam_graph.util import errors
from py_spam_graph.util import json_dataclass


@dataclasses.dataclass(frozen=True)
class EvalReport(json_dataclass.DataClassJsonMixIn):
  """Binary classification metrics.

  Attributes:
    confusion (list[list[int]]): counts[true][predicted] for classes 0, 1.
    recall_class0 (float): Recall of the genuine class.
    recall_class1 (float): Recall of the spam class.
    average_accuracy (float): Mean of the two recalls.
    macro_f1 (float): Mean of the two per-class F1 scores.
    f1_class0 (float): F1 of the genuine class.
    f1_class1 (float): F1 of the spam class.
  """

  confusion: list[list[int]]
  recall_class0: float
  recall_class1: float
  average_accuracy: float
  macro_f1: float
  f1_class0: float = 0.0
  f1_class1: float = 0.0


def evaluate(y_true, y_pred) -> EvalReport:
  """Score predicted labels against true labels.

  Raises:
    LengthMismatch: Different lengths.
    ValueError: A label other than 0 or 1.
    DegenerateEval: A class is absent from y_true.
  """
  y_true = np.asarray(y_true, dtype=np.int64)
  y_pred = np.asarray(y_pred, dtype=np.int64)
  if len(y_true) != len(y_pred):
    raise errors.LengthMismatch(
        f'{len(y_true)} true labels but {len(y_pred)} predictions'
    )
  for values in (y_true, y_pred):
    if not set(np.unique(values)) <= set(dataset.LABELS):
      raise ValueError(f'labels must be 0 or 1, got {np.unique(values)}')
  missing = [label for label in dataset.LABELS if label not in y_true]
  if missing:
    raise errors.DegenerateEval(f'class {missing} absent from y_true')

  confusion = sk_metrics.confusion_matrix(
      y_true, y_pred, labels=list(dataset.LABELS)
  )
  recall = confusion.diagonal() / confusion.sum(axis=1)
  f1 = sk_metrics.f1_score(
      y_true,
      y_pred,
      labels=list(dataset.LABELS),
      average=None,
      zero_division=0,
  )
  return EvalReport(
      confusion=confusion.tolist(),
      recall_class0=float(recall[dataset.GENUINE]),
      recall_class1=float(recall[dataset.SPAM]),
      average_accuracy=float((recall[0] + recall[1]) / 2),
      macro_f1=float((f1[0] + f1[1]) / 2),
      f1_class0=float(f1[dataset.GENUINE]),
      f1_class1=float(f1[dataset.SPAM]),
  )
