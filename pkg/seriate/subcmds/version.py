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

from __future__ import print_function

import platform
import sys

import numpy
import scipy

import seriate
from seriate.command import Command


class Version(Command):
  common = False
  helpSummary = "Display the version of seriate"
  helpUsage = """
%prog
"""

  def Execute(self, opt, args):
    print('seriate version %s' % seriate.__version__)
    print('numpy %s' % numpy.__version__)
    print('scipy %s' % scipy.__version__)
    print('Python %s' % sys.version)
    uname = platform.uname()
    print('OS %s %s (%s)' % (uname.system, uname.release, uname.version))
    print('CPU %s (%s)' %
          (uname.machine, uname.processor if uname.processor else 'unknown'))
