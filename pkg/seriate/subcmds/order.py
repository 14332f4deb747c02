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

import time

from seriate import event_log
from seriate import matrix_io
from seriate import metrics
from seriate import relax_qp
from seriate.command import SolverCommand
from seriate.constraints import build_constraints, load_constraints
from seriate.core import as_similarity
from seriate.spectral import AUTO, DENSE, ITERATIVE, spectral_order
from seriate.trace import Trace

SPECTRAL = 'spectral'
QP = 'qp'
QP_SEMI = 'qp_semi'
METHODS = (SPECTRAL, QP, QP_SEMI)


class Order(SolverCommand):
  common = True
  helpSummary = "Order the items of a similarity matrix"
  helpUsage = """
%prog [options] <matrix> --out <ordering>
"""
  helpDescription = """
'%prog' reads a square, symmetric, nonnegative similarity matrix and
writes the ordering of its items, one 1-based index per line, together
with a JSON report holding the 2-SUM objective, the number of R-matrix
violations of the reordered matrix, timings, the seed and the solver
configuration.

The matrix is read as CSV (one row per line) unless the file name ends in
.mtx, in which case it is read as a MatrixMarket coordinate file.

# Methods

 spectral   sort the Fiedler vector of the Laplacian
 qp         solve the regularized convex relaxation and round it
 qp_semi    as qp, under the ordering constraints of --constraints

A constraint file holds one constraint per line, `ord i j` (item i before
item j) or `dist i j a b` (a <= pos(i) - pos(j) <= b); '#' starts a
comment.

Solver defaults can be kept in ~/.seriateconfig or in the file named by
$SERIATE_CONFIG, for example:

  [solver]
      mu-fraction = 0.5
  [rounding]
      samples = 200

Exit status is 1 when the input is disconnected, the constraints are
infeasible or a solver fails, and 2 on usage and file errors.
"""

  def _Options(self, p):
    p.add_option('-m', '--method',
                 dest='method', choices=METHODS, default=SPECTRAL,
                 help='ordering method: %s (default spectral)'
                 % ', '.join(METHODS))
    p.add_option('-c', '--constraints',
                 dest='constraints', metavar='FILE',
                 help='ordering constraints for qp_semi')
    p.add_option('-o', '--out',
                 dest='out', metavar='FILE',
                 help='write the ordering to FILE')
    p.add_option('--report',
                 dest='report', metavar='FILE',
                 help='write the JSON report to FILE (default <out>.json)')
    p.add_option('--truth',
                 dest='truth', metavar='FILE',
                 help='reference ordering; adds rank correlations to the report')
    p.add_option('--eigensolver',
                 dest='eigensolver', choices=(AUTO, DENSE, ITERATIVE),
                 default=AUTO,
                 help='Fiedler vector solver: auto, dense or iterative')
    self._SolverOptions(p)

  def ValidateOptions(self, opt, args):
    if len(args) != 1:
      self.Usage()
    if not opt.out:
      self.OptionParser.error('--out is required')
    if opt.method == QP_SEMI and not opt.constraints:
      self.OptionParser.error('qp_semi needs --constraints')
    if opt.constraints and opt.method != QP_SEMI:
      self.OptionParser.error('--constraints only applies to qp_semi')
    if opt.method == QP_SEMI and opt.algorithm == relax_qp.FRANK_WOLFE:
      self.OptionParser.error('frank_wolfe does not support constraints')
    self.ValidateSolverOptions(opt)
    if not opt.report:
      opt.report = opt.out + '.json'

  def Execute(self, opt, args):
    A = as_similarity(matrix_io.read_matrix(args[0]))
    n = A.shape[0]
    report = {'matrix': args[0], 'n': n, 'method': opt.method,
              'seed': opt.seed}

    start = time.time()
    if opt.method == SPECTRAL:
      p = spectral_order(A, method=opt.eigensolver, seed=opt.seed)
    else:
      C = None
      if opt.method == QP_SEMI:
        specs = load_constraints(opt.constraints)
        C = build_constraints(n, specs)
        report['constraints'] = C.ToDict()
      cfg = self.SolverConfig(opt)
      ev = self.event_log.Add(opt.method, event_log.TASK_SOLVE, start)
      try:
        p, solver = relax_qp.solve(A, C, cfg)
      except Exception:
        self.event_log.FinishEvent(ev, time.time(), False)
        raise
      self.event_log.FinishEvent(ev, time.time(), True)
      report['solver'] = solver.ToDict()
      if C is not None:
        report['constraints_violated'] = C.spec_violations(p)
    report['wall_time'] = time.time() - start

    truth = matrix_io.read_permutation(opt.truth) if opt.truth else None
    report.update(metrics.evaluate(A, p, truth))
    Trace('order: objective %g, %d R-violations', report['objective'],
          report['r_violations'])

    matrix_io.write_permutation(opt.out, p)
    matrix_io.write_report(opt.report, report)
    print('%s: %d items ordered, objective %g, %d R-violations' % (
        opt.method, n, report['objective'], report['r_violations']))
    return 0
