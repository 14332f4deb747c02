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

import json

from seriate import matrix_io
from seriate import metrics
from seriate.command import Command
from seriate.core import as_similarity


class Evaluate(Command):
  common = True
  helpSummary = "Score an ordering of a similarity matrix"
  helpUsage = """
%prog [options] <matrix> <ordering>
"""
  helpDescription = """
'%prog' prints, as JSON, the 2-SUM objective of the ordering, its double
sum form, and the number of R-matrix violations of the reordered matrix.
With --truth it adds Kendall's tau and Spearman's rho against the
reference ordering, both oriented (the better of the reference and its
reversal) and raw.
"""

  def _Options(self, p):
    p.add_option('--truth',
                 dest='truth', metavar='FILE',
                 help='reference ordering')
    p.add_option('--report',
                 dest='report', metavar='FILE',
                 help='also write the JSON report to FILE')

  def ValidateOptions(self, opt, args):
    if len(args) != 2:
      self.Usage()

  def Execute(self, opt, args):
    A = as_similarity(matrix_io.read_matrix(args[0]))
    p = matrix_io.read_permutation(args[1])
    truth = matrix_io.read_permutation(opt.truth) if opt.truth else None
    report = metrics.evaluate(A, p, truth)
    report['r_violation_density'] = metrics.r_violation_density(A, p)
    print(json.dumps(report, indent=2, sort_keys=True))
    if opt.report:
      matrix_io.write_report(opt.report, report)
    return 0
