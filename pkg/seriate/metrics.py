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

"""Rank correlations and R-matrix audits of orderings."""

import scipy.stats

from seriate.core import Permutation, is_r_matrix, reorder, two_sum_objective
from seriate.error import DimensionMismatchError


def _as_permutation(p):
  return p if isinstance(p, Permutation) else Permutation(p)


def _pair(p, q):
  p, q = _as_permutation(p), _as_permutation(q)
  if p.n != q.n:
    raise DimensionMismatchError('cannot compare orderings of %d and %d items'
                                 % (p.n, q.n))
  return p, q


def _oriented(stat, p, q, orient):
  if p.n < 2:
    return 1.0
  val = stat(p.positions(), q.positions())
  if orient:
    val = max(val, stat(p.positions(), q.reversed().positions()))
  return float(val)


def _tau(a, b):
  return scipy.stats.kendalltau(a, b)[0]


def _rho(a, b):
  return scipy.stats.spearmanr(a, b)[0]


def kendall_tau(p, q, orient=False):
  """Kendall's tau between the item positions of two orderings.

  With `orient`, q is also compared reversed and the larger value kept.
  """
  p, q = _pair(p, q)
  return _oriented(_tau, p, q, orient)


def spearman_rho(p, q, orient=False):
  p, q = _pair(p, q)
  return _oriented(_rho, p, q, orient)


def comparison_count(n):
  """Number of monotonicity comparisons audited by is_r_matrix."""
  return max(0, (n - 1) * (n - 2))


def r_violation_density(A, p=None):
  """Fraction of R-matrix comparisons violated by A (reordered by p)."""
  if p is not None:
    A = reorder(A, p)
  total = comparison_count(A.shape[0])
  if total == 0:
    return 0.0
  return is_r_matrix(A)[1] / float(total)


def evaluate(A, candidate, truth=None, y=None):
  """Scores an ordering of A.

  Returns:
    dict with the 2-SUM objective, its double-sum form, the R-violation
    count of the reordered matrix and, when `truth` is given, oriented and
    raw rank correlations.
  """
  candidate = _as_permutation(candidate)
  if candidate.n != A.shape[0]:
    raise DimensionMismatchError('ordering has %d items, matrix has %d'
                                 % (candidate.n, A.shape[0]))
  obj = two_sum_objective(A, candidate, y)
  report = {
      'objective': obj,
      'objective_sum': 2.0 * obj,
      'r_violations': is_r_matrix(reorder(A, candidate))[1],
  }
  if truth is not None:
    truth = _as_permutation(truth)
    report['tau'] = kendall_tau(truth, candidate, orient=True)
    report['rho'] = spearman_rho(truth, candidate, orient=True)
    report['tau_raw'] = kendall_tau(truth, candidate)
    report['rho_raw'] = spearman_rho(truth, candidate)
  return report
