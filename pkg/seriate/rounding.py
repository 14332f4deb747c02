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

"""Turning doubly stochastic matrices into orderings."""

import warnings

import numpy as np

from seriate.core import Permutation, as_similarity, default_weights, laplacian
from seriate.error import DimensionMismatchError
from seriate.error import InvalidParameterError
from seriate.error import NoConvergenceError
from seriate.error import SupportWarning
from seriate.trace import Trace

DEFAULT_SAMPLES = 100


def sinkhorn(M, max_iters=10000, tol=1e-8, monitor=None):
  """Alternately scales rows and columns of M to unit sums.

  Args:
    M: nonnegative square matrix; zeros are accepted with a SupportWarning.
    max_iters: sweep cap, one sweep being a row then a column scaling.
    tol: largest allowed deviation of any row or column sum from 1.
    monitor: optional callable(sweep, half, matrix) invoked after every
      scaling step, `half` being 'rows' or 'cols'.

  Raises:
    NoConvergenceError: the zero pattern has no support, or the sweep cap
      was reached.
  """
  M = np.array(M, dtype=float)
  if M.ndim != 2 or M.shape[0] != M.shape[1]:
    raise DimensionMismatchError('sinkhorn needs a square matrix')
  if np.any(M < 0) or not np.all(np.isfinite(M)):
    raise InvalidParameterError('sinkhorn needs finite nonnegative entries')
  if np.any(M == 0):
    warnings.warn('matrix has zero entries; scaling converges only with total '
                  'support', SupportWarning, stacklevel=2)
  if np.any(M.sum(axis=1) == 0) or np.any(M.sum(axis=0) == 0):
    raise NoConvergenceError('matrix has an all-zero row or column')

  for sweep in range(1, max_iters + 1):
    M /= M.sum(axis=1)[:, None]
    if monitor:
      monitor(sweep, 'rows', M)
    M /= M.sum(axis=0)[None, :]
    if monitor:
      monitor(sweep, 'cols', M)
    if np.abs(M.sum(axis=1) - 1.0).max() <= tol:
      Trace('sinkhorn: converged after %d sweeps', sweep)
      return M
  raise NoConvergenceError('row sums still off by %.3g after %d sweeps'
                           % (np.abs(M.sum(axis=1) - 1.0).max(), max_iters))


def _better(a, b, rtol=1e-9):
  """Lexicographic (violations, objective) order with a float tolerance."""
  if a[0] != b[0]:
    return a[0] < b[0]
  return a[1] < b[1] - rtol * max(1.0, abs(b[1]))


def monotone_vector(rng, n):
  """n sorted uniforms on [0, 1], redrawn until strictly increasing."""
  while True:
    v = np.sort(rng.uniform(size=n))
    if n < 2 or np.all(np.diff(v) > 0):
      return v


def sample_permutations(S, A, k=DEFAULT_SAMPLES, seed=0, y=None,
                        constraints=None, candidates=()):
  """Rounds S by sorting S v for k random monotone vectors v.

  Each draw uses its own child of SeedSequence(seed), so the first k draws
  are the same whatever the total count.  A draw and its reversal are both
  scored; the reversal only wins when strictly better.  Candidates rank by
  the objective, or by (violated constraint columns, objective) when
  `constraints` is given.  Earlier draws win ties.  Permutations in
  `candidates` are scored first, ahead of the draws, and are left out of
  the trace.

  Returns:
    (best, objective, trace): the best Permutation, its 2-SUM objective
    under `y` and the per-draw objectives.
  """
  if k < 1:
    raise InvalidParameterError('need at least one sample, got %d' % k)
  S = np.asarray(S, dtype=float)
  A = as_similarity(A)
  n = S.shape[0]
  if A.shape[0] != n or S.shape != (n, n):
    raise DimensionMismatchError('rounding matrix is %s, similarity is %s'
                                 % (S.shape, A.shape))
  y = default_weights(n) if y is None else np.asarray(y, dtype=float)
  L = laplacian(A)

  def score(p):
    z = p.apply(y)
    obj = max(float(z.dot(L.dot(z))), 0.0)
    bad = constraints.violations(p) if constraints is not None else 0
    return (bad, obj)

  best = None
  for p in candidates:
    key = score(p)
    if best is None or _better(key, best[1]):
      best = (p, key)
  trace = []
  for child in np.random.SeedSequence(seed).spawn(k):
    rng = np.random.default_rng(child)
    p = Permutation.from_scores(S.dot(monotone_vector(rng, n)))
    key = score(p)
    rev = p.reversed()
    rkey = score(rev)
    if _better(rkey, key):
      p, key = rev, rkey
    trace.append(key[1])
    if best is None or _better(key, best[1]):
      best = (p, key)
  Trace('rounding: best objective %g over %d draws', best[1][1], k)
  return best[0], best[1][1], trace
