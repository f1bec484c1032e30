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

"""End-to-end demo: synthesize a dataset, featurize, train and score it."""

import pathlib
import sys

from py_spam_graph import cli

DEMO_DIR = pathlib.Path(__file__).parent
CONFIG = str(DEMO_DIR / 'pipeline_config.json')

(DEMO_DIR / 'data').mkdir(exist_ok=True)

for command in ('synth', 'featurize', 'select-train-eval', 'score'):
  print(f'== {command}')
  code = cli.run([command, '--config', CONFIG])
  if code:
    sys.exit(code)

print((DEMO_DIR / 'out' / 'metrics.json').read_text(encoding='utf-8'))
