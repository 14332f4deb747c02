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

"""Fiedler vectors and spectral seriation."""

import warnings

import numpy as np
import scipy.linalg
import scipy.sparse as sp
import scipy.sparse.linalg as spla

from seriate.core import Permutation, as_similarity, laplacian
from seriate.error import ConvergenceFailureError
from seriate.error import DisconnectedGraphError
from seriate.error import InvalidParameterError
from seriate.error import MultiplicityWarning
from seriate.trace import Trace

DENSE = 'dense'
ITERATIVE = 'iterative'
AUTO = 'auto'

# Largest problem solved with a full eigendecomposition under AUTO.
DENSE_LIMIT = 2000

# Fiedler values below this mean the graph is disconnected.
CONNECTIVITY_TOL = 1e-10

# Relative gap between the second and third eigenvalue considered degenerate.
MULTIPLICITY_TOL = 1e-8


class FiedlerResult(object):
  """Second-smallest Laplacian eigenpair of a similarity matrix."""

  def __init__(self, value, vector, method, next_value=None,
               multiplicity_warning=False):
    self.value = value
    self.vector = vector
    self.method = method
    self.next_value = next_value
    self.multiplicity_warning = multiplicity_warning

  def __repr__(self):
    return 'FiedlerResult(value=%g, method=%s)' % (self.value, self.method)


def _normalize_sign(v):
  v = v - v.mean()
  v = v / np.linalg.norm(v)
  big = np.abs(v) > 1e-12 * np.abs(v).max()
  first = np.argmax(big)
  if v[first] > 0:
    v = -v
  return v


def _dense_pair(L):
  L = L.toarray() if sp.issparse(L) else L
  w, V = scipy.linalg.eigh(L)
  nxt = w[2] if w.size > 2 else None
  return w[1], V[:, 1], nxt, w[-1]


def _power_estimate(L, rng, iters=20):
  """Upper estimate of the largest Laplacian eigenvalue."""
  n = L.shape[0]
  x = rng.standard_normal(n)
  lam = 0.0
  for _ in range(iters):
    y = L.dot(x)
    nrm = np.linalg.norm(y)
    if nrm == 0:
      return 0.0
    lam = x.dot(y) / x.dot(x)
    x = y / nrm
  deg_bound = 2.0 * np.abs(L.diagonal()).max()
  # Power iteration under-estimates; pad and cap at the degree bound.
  return min(1.05 * lam + 1e-12, deg_bound) if lam > 0 else deg_bound


def _iterative_pair(L, seed, maxiter):
  n = L.shape[0]
  L = sp.csr_matrix(L)
  rng = np.random.default_rng(seed)
  sigma = _power_estimate(L, rng)
  ones = np.ones(n) / np.sqrt(n)

  def deflate(x):
    return x - ones * ones.dot(x)

  def matvec(x):
    x = deflate(np.ravel(x))
    return deflate(sigma * x - L.dot(x))

  op = spla.LinearOperator((n, n), matvec=matvec, dtype=float)
  k = 2 if n > 3 else 1
  v0 = deflate(rng.standard_normal(n))
  try:
    theta, V = spla.eigsh(op, k=k, which='LA', v0=v0, maxiter=maxiter, tol=0)
  except spla.ArpackNoConvergence as e:
    raise ConvergenceFailureError(
        'Lanczos iteration did not converge in %d iterations (%d of %d '
        'eigenpairs found)' % (maxiter, len(e.eigenvalues), k))
  top = np.argsort(theta)[::-1]
  value = sigma - theta[top[0]]
  nxt = sigma - theta[top[1]] if k > 1 else None
  Trace('fiedler: lanczos shift %g, value %g', sigma, value)
  return value, V[:, top[0]], nxt, sigma


def fiedler(A, method=AUTO, seed=0, maxiter=None):
  """Computes the Fiedler value and vector of A.

  Args:
    A: similarity matrix, dense or sparse.
    method: 'dense', 'iterative' or 'auto' (dense up to DENSE_LIMIT).
    seed: seeds the Lanczos start vector and the shift estimate.
    maxiter: iteration cap of the iterative method.

  Returns:
    FiedlerResult with a unit vector orthogonal to 1 whose first nonzero
    coordinate is negative.

  Raises:
    DisconnectedGraphError: the Fiedler value is below CONNECTIVITY_TOL.
    ConvergenceFailureError: the iterative method exceeded `maxiter`.
  """
  A = as_similarity(A)
  n = A.shape[0]
  if n < 2:
    raise InvalidParameterError('the Fiedler vector needs n >= 2')
  if method == AUTO:
    method = DENSE if n <= DENSE_LIMIT else ITERATIVE
  L = laplacian(A)
  if method == DENSE:
    value, vec, nxt, top = _dense_pair(L)
  elif method == ITERATIVE:
    value, vec, nxt, top = _iterative_pair(L, seed, maxiter or 20 * n)
  else:
    raise InvalidParameterError('unknown eigensolver %r' % (method,))

  if value < CONNECTIVITY_TOL:
    raise DisconnectedGraphError(value)

  degenerate = (nxt is not None and
                nxt - value <= MULTIPLICITY_TOL * max(1.0, abs(top)))
  return FiedlerResult(float(value), _normalize_sign(vec), method,
                       next_value=None if nxt is None else float(nxt),
                       multiplicity_warning=bool(degenerate))


def spectral_order(A, method=AUTO, seed=0):
  """Orders items by ascending Fiedler vector (stable on ties).

  Emits a MultiplicityWarning when the Fiedler value is degenerate or the
  vector has repeated values; the ordering is then one of several.
  """
  A = as_similarity(A)
  if A.shape[0] == 1:
    return Permutation.identity(1)
  res = fiedler(A, method=method, seed=seed)
  v = res.vector
  gaps = np.diff(np.sort(v))
  ties = bool(np.any(gaps <= 1e-10))
  if res.multiplicity_warning or ties:
    warnings.warn('Fiedler %s; spectral order is not unique' % (
        'value is repeated' if res.multiplicity_warning
        else 'vector has repeated values'), MultiplicityWarning, stacklevel=2)
  return Permutation.from_scores(v)
