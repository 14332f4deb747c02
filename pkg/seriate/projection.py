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

"""Euclidean projection on constrained doubly stochastic matrices.

Solves

  minimize    1/2 ||Pi - Pi0||_F^2
  subject to  Pi 1 = 1,  Pi' 1 = 1,  Pi >= 0,  D' Pi g + delta <= 0

on the dual.  With multipliers Z >= 0 (for Pi >= 0), x (rows), y (columns)
and z >= 0 (for D), stationarity of the Lagrangian gives

  Pi = Pi0 + Z - x 1' - 1 y' - D z g'

The block method is block coordinate ascent over Z, x, y, z, every block
having a closed-form maximizer when D has full column rank.  The lbfgs
method eliminates Z, which leaves a concave dual in (x, y, z) with a
Lipschitz gradient made of the primal residuals, and maximizes it with
L-BFGS-B under z >= 0.  It does not care about the rank of D.
"""

import warnings

import numpy as np
import scipy.linalg
import scipy.optimize
import scipy.sparse as sp

from seriate.constraints import build_constraints
from seriate.core import default_weights
from seriate.error import ConvergenceFailureError
from seriate.error import DimensionMismatchError
from seriate.error import GapNotReachedWarning
from seriate.error import InfeasibleConstraintsError
from seriate.error import InvalidParameterError
from seriate.error import RankDeficientError
from seriate.trace import Trace

AUTO = 'auto'
BLOCK = 'block'
COORDINATE = 'coordinate'
LBFGS = 'lbfgs'
METHODS = (AUTO, BLOCK, COORDINATE, LBFGS)

# L-BFGS-B is restarted with a fresh memory after a failed line search.
_LBFGS_RESTARTS = 5


class ProjectionConfig(object):
  """Stopping rule and dual method of the projection.

  tol bounds the relative primal-dual gap, feas_tol the row/column sum and
  constraint residuals of the reconstructed primal point.  max_iters caps
  block sweeps or L-BFGS-B iterations.  'auto' runs the block method when
  D has full column rank and lbfgs otherwise; 'coordinate' is the block
  method with cyclic single-coordinate z steps.
  """

  def __init__(self, tol=1e-7, feas_tol=1e-8, max_iters=10000,
               method=AUTO, z_steps=2):
    if method not in METHODS:
      raise InvalidParameterError('unknown projection method %r' % (method,))
    self.tol = tol
    self.feas_tol = feas_tol
    self.max_iters = max_iters
    self.method = method
    self.z_steps = z_steps

  def ToDict(self):
    return {
        'tol': self.tol,
        'feas_tol': self.feas_tol,
        'max_iters': self.max_iters,
        'method': self.method,
    }


class ProjectionState(object):
  """Dual variables and diagnostics of one projection.

  Passing a state back as `warm_start` resumes the ascent from x, y, z.
  """

  def __init__(self, x, y, z):
    self.x = x
    self.y = y
    self.z = z
    self.method = None
    self.gap = np.inf
    self.primal = np.inf
    self.dual = -np.inf
    self.residual = np.inf
    self.sweeps = 0
    self.converged = False

  def __repr__(self):
    return ('ProjectionState(method=%s, gap=%.3g, residual=%.3g, sweeps=%d, '
            'converged=%s)' % (self.method, self.gap, self.residual,
                               self.sweeps, self.converged))


class _ZBlock(object):
  """Maximizer of the dual in z: min 1/2 |g|^2 z'Gz - h'z over z >= 0."""

  def __init__(self, D, g, exact, steps):
    self.G = D.T.dot(D)
    self.gg = g.dot(g)
    self.steps = steps
    self.exact = exact
    if self.exact:
      self.chol = scipy.linalg.cholesky(self.G, lower=True)
      self.A = np.sqrt(self.gg) * self.chol.T
    self.diag = self.gg * np.diag(self.G)

  def update(self, z, h):
    if self.exact:
      b = scipy.linalg.solve_triangular(self.chol, h, lower=True)
      z, _ = scipy.optimize.nnls(self.A, b / np.sqrt(self.gg),
                                 maxiter=50 * len(h))
      return z
    # Cyclic exact minimization over single coordinates; valid for any rank.
    z = z.copy()
    Gz = self.G.dot(z)
    for _ in range(self.steps):
      for k in range(z.size):
        new = max(0.0, z[k] + (h[k] - self.gg * Gz[k]) / self.diag[k])
        if new != z[k]:
          Gz += (new - z[k]) * self.G[:, k]
          z[k] = new
    return z


def _residual(P, D, delta, g):
  rows = np.abs(P.sum(axis=1) - 1.0).max()
  cols = np.abs(P.sum(axis=0) - 1.0).max()
  cons = max(0.0, (D.T.dot(P.dot(g)) + delta).max())
  return max(rows, cols, cons)


def _measure(P, P0, x, y, z, D, delta, g):
  """(primal, dual, gap, residual) at the primal point P rebuilt from x, y, z."""
  M = P - P0
  primal = 0.5 * np.sum(M * M)
  dual = (-0.5 * np.sum(M * M) - np.sum(M * P0) - x.sum() - y.sum()
          + delta.dot(z))
  return primal, dual, primal - dual, _residual(P, D, delta, g)


def _done(config, gap, primal, res):
  return abs(gap) <= config.tol * max(1.0, primal) and res <= config.feas_tol


def _block_ascent(P0, D, delta, g, config, state, exact):
  n = P0.shape[0]
  zblock = _ZBlock(D, g, exact, config.z_steps)
  x, y, z = state.x, state.y, state.z
  ones = np.ones(n)
  sg = g.sum()
  P0g = P0.dot(g)
  P0r = P0.sum(axis=1)
  P0c = P0.sum(axis=0)
  best = None

  for sweep in range(1, config.max_iters + 1):
    Dz = D.dot(z)
    # Z, x, y, z in this order.
    Z = np.maximum(0.0, x[:, None] + y[None, :] + np.outer(Dz, g) - P0)
    x = (P0r + Z.sum(axis=1) - (y.sum() + 1.0) * ones - Dz * sg) / n
    y = (P0c + Z.sum(axis=0) - (x.sum() + 1.0) * ones - g * Dz.sum()) / n
    Vg = P0g + Z.dot(g) - x * sg - ones * y.dot(g)
    z = zblock.update(z, D.T.dot(Vg) + delta)

    Dz = D.dot(z)
    P = np.maximum(0.0, P0 - x[:, None] - y[None, :] - np.outer(Dz, g))
    primal, dual, gap, res = _measure(P, P0, x, y, z, D, delta, g)
    state.sweeps = sweep
    if best is None or res < best[1] or (res <= config.feas_tol and gap < best[2]):
      best = (P, res, gap, primal, dual)
    if _done(config, gap, primal, res):
      state.converged = True
      best = (P, res, gap, primal, dual)
      break

  P, state.residual, state.gap, state.primal, state.dual = best
  state.x, state.y, state.z = x, y, z
  return P


def _lbfgs_ascent(P0, D, delta, g, config, state):
  n = P0.shape[0]
  gn = np.linalg.norm(g)
  # z is carried as s = |g| z so that every block has unit scale.
  gh = g / gn
  dh = delta / gn

  def primal_point(v):
    x, y, s = v[:n], v[n:2 * n], v[2 * n:]
    return np.maximum(0.0, P0 - x[:, None] - y[None, :] -
                      np.outer(D.dot(s), gh))

  def negated_dual(v):
    x, y, s = v[:n], v[n:2 * n], v[2 * n:]
    P = primal_point(v)
    val = 0.5 * np.sum(P * P) + x.sum() + y.sum() - dh.dot(s)
    grad = np.concatenate([1.0 - P.sum(axis=1), 1.0 - P.sum(axis=0),
                           -(D.T.dot(P.dot(gh)) + dh)])
    return val, grad

  v = np.concatenate([state.x, state.y, state.z * gn])
  bounds = [(None, None)] * (2 * n) + [(0.0, None)] * D.shape[1]
  x, y, z = state.x, state.y, state.z
  P = primal_point(v)
  used = 0
  for _ in range(_LBFGS_RESTARTS):
    left = config.max_iters - used
    if left <= 0:
      break
    res = scipy.optimize.minimize(
        negated_dual, v, jac=True, method='L-BFGS-B', bounds=bounds,
        options={'maxiter': left, 'gtol': config.feas_tol / max(gn, 1.0),
                 'ftol': 0.0, 'maxcor': 20})
    v = res.x
    used += max(int(res.nit), 1)
    x, y, z = v[:n], v[n:2 * n], v[2 * n:] / gn
    P = primal_point(v)
    state.primal, state.dual, state.gap, state.residual = _measure(
        P, P0, x, y, z, D, delta, g)
    if _done(config, state.gap, state.primal, state.residual):
      state.converged = True
      break
  state.sweeps = used
  state.x, state.y, state.z = x, y, z
  return P


def project_doubly_stochastic(P0, constraints=None, g=None, config=None,
                              warm_start=None):
  """Projects P0 on doubly stochastic matrices satisfying `constraints`.

  Args:
    P0: n x n matrix.
    constraints: ConstraintSet; defaults to the symmetry column alone.
    g: weight vector defining positions, defaults to (1, ..., n).
    config: ProjectionConfig.
    warm_start: ProjectionState of an earlier projection with the same
      constraints.

  Returns:
    (Pi, state): the reconstructed primal point and the dual state.  When
    the iteration cap is reached first, a GapNotReachedWarning is emitted
    and state.converged is False.

  Raises:
    RankDeficientError: config.method is 'block' and D is rank deficient.
  """
  config = config or ProjectionConfig()
  P0 = np.asarray(P0, dtype=float)
  n = P0.shape[0]
  if P0.shape != (n, n):
    raise DimensionMismatchError('projection needs a square matrix')
  if constraints is None:
    constraints = build_constraints(n)
  if constraints.n != n:
    raise DimensionMismatchError('constraints are for n=%d, matrix has n=%d'
                                 % (constraints.n, n))
  g = default_weights(n) if g is None else np.asarray(g, dtype=float)
  D, delta = constraints.D, constraints.delta

  method = config.method
  if method in (AUTO, BLOCK):
    rank = np.linalg.matrix_rank(D)
    full = rank == D.shape[1]
    if method == BLOCK and not full:
      raise RankDeficientError(
          'constraint matrix D (%d x %d) has rank %d; the closed-form z '
          'update needs full column rank' % (D.shape + (rank,)))
    method = BLOCK if full else LBFGS

  if warm_start is not None:
    x, y, z = warm_start.x.copy(), warm_start.y.copy(), warm_start.z.copy()
  else:
    x, y, z = np.zeros(n), np.zeros(n), np.zeros(D.shape[1])
  state = ProjectionState(x, y, z)
  state.method = method

  if method == LBFGS:
    P = _lbfgs_ascent(P0, D, delta, g, config, state)
  else:
    P = _block_ascent(P0, D, delta, g, config, state, method == BLOCK)

  Trace('projection: %s, %d iterations, gap %.3g, residual %.3g', method,
        state.sweeps, state.gap, state.residual)
  if not state.converged:
    warnings.warn('projection stopped after %d iterations with gap %.3g and '
                  'residual %.3g' % (state.sweeps, state.gap, state.residual),
                  GapNotReachedWarning, stacklevel=2)
  return P, state


def linear_minimizer(C, constraints=None, g=None):
  """Minimizes <C, Pi> over the constrained doubly stochastic set.

  Solved as a linear program with HiGHS, which also settles whether the
  set is empty.

  Raises:
    InfeasibleConstraintsError: no doubly stochastic matrix satisfies the
      constraints.
    ConvergenceFailureError: the LP solver stopped without an answer.
  """
  C = np.asarray(C, dtype=float)
  n = C.shape[0]
  if C.shape != (n, n):
    raise DimensionMismatchError('cost matrix must be square')
  if constraints is None:
    constraints = build_constraints(n)
  g = default_weights(n) if g is None else np.asarray(g, dtype=float)
  eye = sp.identity(n, format='csr')
  ones = sp.csr_matrix(np.ones((1, n)))
  A_eq = sp.vstack([sp.kron(eye, ones), sp.kron(ones, eye)], format='csr')
  A_ub = sp.kron(sp.csr_matrix(constraints.D.T), sp.csr_matrix(g[None, :]),
                 format='csr')
  res = scipy.optimize.linprog(C.ravel(), A_ub=A_ub, b_ub=-constraints.delta,
                               A_eq=A_eq, b_eq=np.ones(2 * n),
                               bounds=(0, None), method='highs')
  if res.status == 2:
    raise InfeasibleConstraintsError(
        'no doubly stochastic matrix satisfies the %d constraint columns'
        % constraints.num_columns)
  if res.status != 0:
    raise ConvergenceFailureError('linear program failed: %s' % res.message)
  return np.maximum(res.x.reshape(n, n), 0.0)


def is_doubly_stochastic(P, tol=1e-8):
  """Row and column sums within tol of 1 and entries >= -tol."""
  P = np.asarray(P, dtype=float)
  if P.ndim != 2 or P.shape[0] != P.shape[1]:
    return False
  return bool(np.all(P >= -tol) and
              np.abs(P.sum(axis=1) - 1).max() <= tol and
              np.abs(P.sum(axis=0) - 1).max() <= tol)
