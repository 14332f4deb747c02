# -*- coding:utf-8 -*-
#
# Copyright (C) 2026 The seriate Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Logic for tracing solver progress.

Activated via `seriate --trace ...` or `SERIATE_TRACE=1 seriate ...`.
"""

import logging
import os

# Env var to implicitly turn on tracing.
SERIATE_TRACE = 'SERIATE_TRACE'

logger = logging.getLogger('seriate')
logger.addHandler(logging.NullHandler())

_TRACE = os.environ.get(SERIATE_TRACE) == '1'
_HANDLER = None


def IsTrace():
  return _TRACE


def SetTrace(enabled=True):
  global _TRACE, _HANDLER
  _TRACE = enabled
  if enabled and _HANDLER is None:
    _HANDLER = logging.StreamHandler()
    _HANDLER.setFormatter(logging.Formatter(': %(message)s'))
    logger.addHandler(_HANDLER)
    logger.setLevel(logging.DEBUG)


def Trace(fmt, *args):
  if IsTrace():
    logger.debug(fmt, *args)


if _TRACE:
  SetTrace()
