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

"""Convex QP relaxation of 2-SUM over doubly stochastic matrices.

The relaxed problem is

  minimize  1/p Tr(Y' Pi' L Pi Y) - mu/p ||P Pi||_F^2

over doubly stochastic Pi (plus the ordering constraints of a
ConstraintSet), where P = I - 11'/n and the columns of Y are increasing
perturbations of g = (1, ..., n).  The objective stays convex on the
polytope as long as mu <= lambda_2(L) lambda_1(YY').
"""

import time
import warnings

import numpy as np
import scipy.linalg
import scipy.optimize
import scipy.sparse as sp

from seriate import projection
from seriate import rounding
from seriate import spectral
from seriate.constraints import build_constraints
from seriate.core import Permutation, as_similarity, default_weights, laplacian
from seriate.error import DimensionMismatchError
from seriate.error import DisconnectedGraphError
from seriate.error import GapNotReachedWarning
from seriate.error import InfeasibleConstraintsError
from seriate.error import InfeasibleMuError
from seriate.error import InvalidParameterError
from seriate.error import MultiplicityWarning
from seriate.trace import Trace

FRANK_WOLFE = 'frank_wolfe'
APG = 'accelerated_projected_gradient'
ALGORITHMS = (FRANK_WOLFE, APG)

# Eigenvalues below this fraction of the largest one are treated as zero.
_EIG_RTOL = 1e-10


class EnsembleWeights(object):
  """Columns of Y: strictly increasing perturbations of g."""

  def __init__(self, Y, noise_scale, seed):
    self.Y = Y
    self.noise_scale = noise_scale
    self.seed = seed
    w = np.linalg.eigvalsh(Y.dot(Y.T))
    lam = w[0] if w[0] > _EIG_RTOL * max(w[-1], 1.0) else 0.0
    self.gram_min_eig = float(lam)
    self.gram_max_eig = float(w[-1])

  @property
  def p(self):
    return self.Y.shape[1]

  @property
  def n(self):
    return self.Y.shape[0]


def build_y(n, p, noise_scale=0.5, seed=0):
  """Draws Y with column j = sort(g + noise_scale * u_j), u_j ~ U[-1, 1]^n."""
  if p < 1:
    raise InvalidParameterError('need at least one column in Y, got p=%d' % p)
  if noise_scale < 0:
    raise InvalidParameterError('noise_scale must be nonnegative')
  rng = np.random.default_rng(seed)
  g = default_weights(n)
  Y = np.empty((n, p))
  for j in range(p):
    while True:
      col = np.sort(g + noise_scale * rng.uniform(-1.0, 1.0, size=n))
      if np.all(np.diff(col) > 0):
        break
    Y[:, j] = col
  return EnsembleWeights(Y, noise_scale, seed)


def _dense(L):
  return L.toarray() if sp.issparse(L) else np.asarray(L, dtype=float)


def _weights(Y):
  return Y.Y if isinstance(Y, EnsembleWeights) else np.atleast_2d(
      np.asarray(Y, dtype=float).T).T


def fiedler_value(L):
  w = scipy.linalg.eigvalsh(_dense(L))
  if w.size < 2:
    return 0.0
  return float(w[1]) if w[1] > _EIG_RTOL * max(w[-1], 1.0) else 0.0


def mu_bound(L, Y):
  """lambda_2(L) * lambda_1(YY'), the largest mu keeping the QP convex."""
  Y = _weights(Y)
  w = np.linalg.eigvalsh(Y.dot(Y.T))
  lam1 = w[0] if w[0] > _EIG_RTOL * max(w[-1], 1.0) else 0.0
  return fiedler_value(L) * float(lam1)


def _centered(Pi):
  return Pi - Pi.mean(axis=0)[None, :]


def relaxed_objective(Pi, L, Y, mu):
  Y = _weights(Y)
  Pi = np.asarray(Pi, dtype=float)
  if Pi.shape[1] != Y.shape[0]:
    raise DimensionMismatchError('Pi is %s but Y has %d rows'
                                 % (Pi.shape, Y.shape[0]))
  p = Y.shape[1]
  PY = Pi.dot(Y)
  quad = np.sum(PY * L.dot(PY))
  C = _centered(Pi)
  return float((quad - mu * np.sum(C * C)) / p)


def relaxed_gradient(Pi, L, Y, mu):
  """(2/p) (L Pi YY' - mu P Pi)."""
  Y = _weights(Y)
  Pi = np.asarray(Pi, dtype=float)
  p = Y.shape[1]
  K = Y.dot(Y.T)
  return (2.0 / p) * (np.asarray(L.dot(Pi.dot(K))) - mu * _centered(Pi))


class _Quadratic(object):
  """Objective, gradient and curvature with YY' formed once."""

  def __init__(self, L, Y, mu):
    self.L = L
    self.K = Y.dot(Y.T)
    self.p = Y.shape[1]
    self.mu = mu

  def value(self, Pi):
    C = _centered(Pi)
    return float((np.sum(self.L.dot(Pi) * Pi.dot(self.K)) -
                  self.mu * np.sum(C * C)) / self.p)

  def grad(self, Pi):
    return (2.0 / self.p) * (np.asarray(self.L.dot(Pi.dot(self.K))) -
                             self.mu * _centered(Pi))

  def curvature(self, d):
    """Coefficient of t^2 in f(Pi + t d)."""
    C = _centered(d)
    return float((np.sum(self.L.dot(d) * d.dot(self.K)) -
                  self.mu * np.sum(C * C)) / self.p)

  def lipschitz(self):
    lam_l = scipy.linalg.eigvalsh(_dense(self.L))[-1]
    lam_k = np.linalg.eigvalsh(self.K)[-1]
    return (2.0 / self.p) * (lam_l * lam_k + self.mu)


class SolverConfig(object):
  """Knobs of the relaxed solvers."""

  def __init__(self, algorithm=APG, mu_fraction=0.9, max_iters=300,
               tolerance=1e-6, projection_tol=1e-7,
               projection_max_iters=500, projection_method=projection.LBFGS,
               seed=0, p_cols=None, noise_scale=0.5,
               samples=rounding.DEFAULT_SAMPLES):
    if algorithm not in ALGORITHMS:
      raise InvalidParameterError('unknown algorithm %r' % (algorithm,))
    if not 0.0 <= mu_fraction <= 1.0:
      raise InvalidParameterError('mu_fraction must lie in [0, 1]')
    if projection_method not in projection.METHODS:
      raise InvalidParameterError('unknown projection method %r'
                                  % (projection_method,))
    self.algorithm = algorithm
    self.mu_fraction = mu_fraction
    self.max_iters = max_iters
    self.tolerance = tolerance
    self.projection_tol = projection_tol
    self.projection_max_iters = projection_max_iters
    self.projection_method = projection_method
    self.seed = seed
    self.p_cols = p_cols
    self.noise_scale = noise_scale
    self.samples = samples

  def projection(self):
    return projection.ProjectionConfig(
        tol=self.projection_tol,
        feas_tol=max(self.projection_tol * 0.1, 1e-10),
        max_iters=self.projection_max_iters,
        method=self.projection_method)

  def ToDict(self):
    return {
        'algorithm': self.algorithm,
        'mu_fraction': self.mu_fraction,
        'max_iters': self.max_iters,
        'tolerance': self.tolerance,
        'projection_tol': self.projection_tol,
        'projection_max_iters': self.projection_max_iters,
        'projection_method': self.projection_method,
        'seed': self.seed,
        'p_cols': self.p_cols,
        'noise_scale': self.noise_scale,
        'samples': self.samples,
    }


class SolverReport(object):
  """Outcome of a relaxed solve, optionally with its rounding."""

  def __init__(self, solution, objective_trace, final_gap, iterations,
               wall_time, seed, algorithm, mu, converged=False,
               gap_trace=None, projection_failures=0, config=None,
               restarts=0, constraint_columns=None):
    self.solution = solution
    self.objective_trace = objective_trace
    self.final_gap = final_gap
    self.iterations = iterations
    self.wall_time = wall_time
    self.seed = seed
    self.algorithm = algorithm
    self.mu = mu
    self.converged = converged
    self.gap_trace = gap_trace or []
    self.projection_failures = projection_failures
    self.config = config
    self.restarts = restarts
    self.constraint_columns = constraint_columns
    self.permutation = None
    self.rounded_objective = None
    self.rounding_trace = None

  def ToDict(self):
    d = {
        'algorithm': self.algorithm,
        'mu': self.mu,
        'iterations': self.iterations,
        'converged': self.converged,
        'final_gap': self.final_gap,
        'initial_objective': self.objective_trace[0] if self.objective_trace else None,
        'final_objective': self.objective_trace[-1] if self.objective_trace else None,
        'projection_failures': self.projection_failures,
        'restarts': self.restarts,
        'constraint_columns': self.constraint_columns,
        'wall_time': self.wall_time,
        'seed': self.seed,
    }
    if self.config is not None:
      d['config'] = self.config.ToDict()
    if self.permutation is not None:
      d['rounded_objective'] = self.rounded_objective
      d['rounding_samples'] = len(self.rounding_trace)
    return d


def _check_mu(L, Y, mu):
  bound = mu_bound(L, Y)
  if mu < 0 or mu > bound * (1.0 + 1e-9) + 1e-12:
    raise InfeasibleMuError(mu, bound)
  return bound


def barycenter(n):
  return np.full((n, n), 1.0 / n)


def prepare_constraints(n, constraints=None):
  """Checks constraints for contradictions and drops implied columns.

  Order columns are checked for cycles; sets with other columns go
  through a feasibility LP as well.

  Returns:
    (constraints, working): the full set, the symmetry column alone when
    None is given, and the reduced set the solvers iterate on.

  Raises:
    InfeasibleConstraintsError: no doubly stochastic matrix satisfies
      the constraints.
  """
  if constraints is None:
    constraints = build_constraints(n)
  if constraints.n != n:
    raise DimensionMismatchError('constraints are for n=%d, problem has n=%d'
                                 % (constraints.n, n))
  pair = constraints.contradiction()
  if pair is not None:
    raise InfeasibleConstraintsError(
        'the ordering constraints put item %d before item %d and item %d '
        'before item %d' % (pair[0], pair[1], pair[1], pair[0]))
  working = constraints.reduced()
  if working.has_distance_columns():
    projection.linear_minimizer(np.zeros((n, n)), working)
  Trace('constraints: %d columns, %d kept', constraints.num_columns,
        working.num_columns)
  return constraints, working


def _feasible(S, constraints, g, tol=1e-9):
  return constraints.residuals(S.dot(g)).max() <= tol


def linear_oracle(G, constraints, g=None):
  """argmin <G, S> over the constrained doubly stochastic set.

  A linear assignment solves it whenever the assigned permutation already
  meets the constraints; otherwise the LP is solved.

  Returns:
    (S, used_lp)
  """
  n = G.shape[0]
  g = default_weights(n) if g is None else g
  rows, cols = scipy.optimize.linear_sum_assignment(G)
  S = np.zeros((n, n))
  S[rows, cols] = 1.0
  if _feasible(S, constraints, g):
    return S, False
  return projection.linear_minimizer(G, constraints, g), True


def start_vertex(L, constraints):
  """Permutation matrix of the spectral order, oriented to be feasible.

  When neither orientation meets the constraints, the feasible vertex
  with the largest overlap with the spectral permutation matrix is used.

  Returns:
    (Pi, p): the start and its Permutation, p being None when the start
    is not a permutation matrix.
  """
  Ld = _dense(L)
  n = Ld.shape[0]
  try:
    with warnings.catch_warnings():
      warnings.simplefilter('ignore', MultiplicityWarning)
      order = spectral.spectral_order(np.diag(np.diag(Ld)) - Ld)
  except DisconnectedGraphError:
    order = Permutation.identity(n)
  for p in (order, order.reversed()):
    if constraints.is_satisfied(p):
      return p.as_matrix(), p
  return projection.linear_minimizer(-order.as_matrix(), constraints), None


def frank_wolfe_solve(L, Y, mu, constraints=None, config=None, start=None):
  """Conditional gradient over the constrained Birkhoff polytope.

  The linear minimization oracle is exact (see linear_oracle); steps use
  exact line search on the quadratic.  The symmetry column is always
  enforced, otherwise the barycenter, where the gradient vanishes, would
  be optimal.  Iterates start from `start`, by default start_vertex().

  Raises:
    InfeasibleMuError: mu exceeds mu_bound(L, Y).
    InfeasibleConstraintsError: the constraints contradict each other.
  """
  config = config or SolverConfig(algorithm=FRANK_WOLFE)
  Y = _weights(Y)
  n = Y.shape[0]
  _check_mu(L, Y, mu)
  constraints, working = prepare_constraints(n, constraints)
  g = default_weights(n)
  begin = time.time()
  f = _Quadratic(L, Y, mu)
  if start is None:
    start, _ = start_vertex(L, constraints)
  Pi = np.array(start, dtype=float)
  val = f.value(Pi)
  trace = [val]
  gaps = []
  lps = 0
  converged = False
  it = 0
  for it in range(1, config.max_iters + 1):
    G = f.grad(Pi)
    S, used_lp = linear_oracle(G, working, g)
    lps += used_lp
    d = S - Pi
    slope = float(np.sum(G * d))
    gap = -slope
    gaps.append(gap)
    if gap <= config.tolerance * max(1.0, abs(val)):
      converged = True
      break
    a = f.curvature(d)
    step = 1.0 if a <= 0 else min(1.0, -slope / (2.0 * a))
    Pi = Pi + step * d
    val = f.value(Pi)
    trace.append(val)
  Trace('frank-wolfe: %d iterations, gap %.3g, %d LP oracles', it,
        gaps[-1] if gaps else 0, lps)
  return SolverReport(Pi, trace, gaps[-1] if gaps else 0.0, it,
                      time.time() - begin, config.seed, FRANK_WOLFE, mu,
                      converged=converged, gap_trace=gaps, config=config,
                      constraint_columns=working.num_columns)


def apg_solve(L, Y, mu, constraints=None, config=None):
  """Accelerated projected gradient with adaptive restart.

  Starts from the projection of the barycenter.  Every step projects on
  the constrained doubly stochastic set, warm starting the projection
  duals from the previous step.  The momentum is dropped when it points
  against the step just taken, and when the objective increases, in which
  case the step is redone from the last iterate.  final_gap is the
  relative size of the last step.

  Raises:
    InfeasibleMuError: mu exceeds mu_bound(L, Y).
    InfeasibleConstraintsError: the constraints contradict each other.
  """
  config = config or SolverConfig()
  Y = _weights(Y)
  n = Y.shape[0]
  _check_mu(L, Y, mu)
  _, working = prepare_constraints(n, constraints)
  pcfg = config.projection()
  begin = time.time()
  f = _Quadratic(L, Y, mu)
  lip = max(f.lipschitz(), 1e-12)
  failures = [0]

  def project(M, state):
    with warnings.catch_warnings():
      warnings.simplefilter('ignore', GapNotReachedWarning)
      P, state = projection.project_doubly_stochastic(
          M, working, config=pcfg, warm_start=state)
    if not state.converged:
      failures[0] += 1
    return P, state

  Pi, state = project(barycenter(n), None)
  val = f.value(Pi)
  trace = [val]
  V = Pi
  t = 1.0
  change = np.inf
  converged = False
  restarts = 0
  it = 0
  for it in range(1, config.max_iters + 1):
    nxt, nstate = project(V - f.grad(V) / lip, state)
    nval = f.value(nxt)
    if nval > val + 1e-12 * max(1.0, abs(val)):
      restarts += 1
      t = 1.0
      nxt, nstate = project(Pi - f.grad(Pi) / lip, nstate)
      nval = f.value(nxt)
    elif np.sum((V - nxt) * (nxt - Pi)) > 0:
      restarts += 1
      t = 1.0
    tn = 0.5 * (1.0 + np.sqrt(1.0 + 4.0 * t * t))
    V = nxt + ((t - 1.0) / tn) * (nxt - Pi)
    change = np.linalg.norm(nxt - Pi) / max(1.0, np.linalg.norm(Pi))
    Pi, state, t = nxt, nstate, tn
    val = nval
    trace.append(val)
    if change <= config.tolerance:
      converged = True
      break
  Trace('apg: %d iterations, %d restarts, step %.3g, %d inexact projections',
        it, restarts, change, failures[0])
  return SolverReport(Pi, trace, float(change), it, time.time() - begin,
                      config.seed, APG, mu, converged=converged,
                      projection_failures=failures[0], config=config,
                      restarts=restarts,
                      constraint_columns=working.num_columns)


def solve(A, constraints=None, config=None, Y=None):
  """Relaxes, solves and rounds the seriation problem for A.

  Frank-Wolfe starts from start_vertex(), and that ordering is scored
  along with the rounding draws.

  Returns:
    (Permutation, SolverReport) with the rounding recorded in the report.
  """
  config = config or SolverConfig()
  A = as_similarity(A)
  n = A.shape[0]
  L = laplacian(A)
  if Y is None:
    Y = build_y(n, config.p_cols or 4 * n, config.noise_scale, config.seed)
  bound = mu_bound(L, Y)
  mu = config.mu_fraction * bound
  Trace('solve: n=%d, mu=%g (bound %g)', n, mu, bound)
  candidates = ()
  if config.algorithm == FRANK_WOLFE:
    full = constraints if constraints is not None else build_constraints(n)
    start, first = start_vertex(L, full)
    report = frank_wolfe_solve(L, Y, mu, full, config, start=start)
    if first is not None:
      candidates = (first,)
  else:
    report = apg_solve(L, Y, mu, constraints, config)
  best, obj, trace = rounding.sample_permutations(
      report.solution, A, k=config.samples, seed=config.seed,
      constraints=constraints, candidates=candidates)
  report.permutation = best
  report.rounded_objective = obj
  report.rounding_trace = trace
  return best, report
