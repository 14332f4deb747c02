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

"""Combinatorial structures behind seriation.

A similarity matrix is any square, symmetric, nonnegative numpy array or
scipy.sparse matrix; `as_similarity` validates one.  Orderings are
`Permutation` objects and are 1-based on every public interface.

The 2-SUM objective is always the quadratic form (Pi y)' L_A (Pi y), which
equals half of sum_ij A_ij (y_pi(i) - y_pi(j))^2.
"""

import itertools

import numpy as np
import scipy.sparse as sp

from seriate.error import DimensionMismatchError
from seriate.error import InvalidParameterError
from seriate.error import InvalidPermutationError
from seriate.error import InvalidSimilarityError
from seriate.error import NotUnimodalError


class Permutation(object):
  """A bijection on {1..n}.

  `order[k]` is the item placed at position k + 1.  `positions()[i]` is the
  position of item i + 1, which is pi(i) in the matrix notation where the
  permutation matrix has Pi[i, pi(i)] = 1.
  """

  def __init__(self, order):
    arr = np.asarray(order)
    if arr.ndim != 1:
      raise InvalidPermutationError('ordering must be one dimensional')
    if arr.size and not np.all(np.equal(np.mod(arr, 1), 0)):
      raise InvalidPermutationError('ordering has non-integer entries')
    arr = arr.astype(np.intp)
    if not np.array_equal(np.sort(arr), np.arange(1, arr.size + 1)):
      raise InvalidPermutationError(
          'ordering of length %d is not a bijection on 1..%d'
          % (arr.size, arr.size))
    self._index = arr - 1
    self._index.setflags(write=False)

  @classmethod
  def identity(cls, n):
    return cls(np.arange(1, n + 1))

  @classmethod
  def from_index(cls, index):
    """Builds a permutation from a 0-based item order."""
    return cls(np.asarray(index) + 1)

  @classmethod
  def from_positions(cls, positions):
    """Builds a permutation from 1-based positions pi(1..n)."""
    pos = np.asarray(positions, dtype=np.intp)
    p = cls(pos)
    return p.inverse()

  @classmethod
  def from_scores(cls, scores):
    """Sorts items by ascending score, ties kept in index order."""
    return cls.from_index(np.argsort(np.asarray(scores), kind='stable'))

  @classmethod
  def from_matrix(cls, P, tol=1e-8):
    P = np.asarray(P, dtype=float)
    n = P.shape[0]
    if P.shape != (n, n):
      raise InvalidPermutationError('permutation matrix must be square')
    rows, cols = np.nonzero(np.abs(P - 1.0) <= tol)
    if (rows.size != n or not np.array_equal(np.sort(rows), np.arange(n))
        or np.abs(P).sum() - n > n * tol):
      raise InvalidPermutationError('matrix is not a permutation matrix')
    pos = np.empty(n, dtype=np.intp)
    pos[rows] = cols
    return cls.from_positions(pos + 1)

  @property
  def n(self):
    return self._index.size

  @property
  def order(self):
    """1-based items in position order."""
    return self._index + 1

  @property
  def index(self):
    """0-based items in position order."""
    return self._index

  def positions(self, base=1):
    pos = np.empty(self.n, dtype=np.intp)
    pos[self._index] = np.arange(self.n)
    return pos + base

  def inverse(self):
    return Permutation(self.positions())

  def reversed(self):
    return Permutation(self.order[::-1])

  def compose(self, other):
    """Permutation whose matrix is self.as_matrix() @ other.as_matrix()."""
    if other.n != self.n:
      raise DimensionMismatchError(
          'cannot compose permutations of size %d and %d' % (self.n, other.n))
    pos = other.positions(base=0)[self.positions(base=0)]
    return Permutation.from_positions(pos + 1)

  def apply(self, y):
    """Returns Pi y, the weight of each item under this ordering."""
    y = np.asarray(y)
    if y.shape[0] != self.n:
      raise DimensionMismatchError(
          'weight vector has length %d, expected %d' % (y.shape[0], self.n))
    return y[self.positions(base=0)]

  def as_matrix(self):
    P = np.zeros((self.n, self.n))
    P[np.arange(self.n), self.positions(base=0)] = 1.0
    return P

  def is_identity(self):
    return bool(np.array_equal(self._index, np.arange(self.n)))

  def tolist(self):
    return [int(i) for i in self.order]

  def __len__(self):
    return self.n

  def __iter__(self):
    return iter(self.tolist())

  def __eq__(self, other):
    if not isinstance(other, Permutation):
      return NotImplemented
    return np.array_equal(self._index, other._index)

  def __ne__(self, other):
    r = self.__eq__(other)
    if r is NotImplemented:
      return r
    return not r

  def __hash__(self):
    return hash(tuple(self.tolist()))

  def __repr__(self):
    return 'Permutation(%s)' % self.tolist()


class CutMatrix(object):
  """weight * CUT(u, v): the square block [u, v] x [u, v] (1-based)."""

  def __init__(self, u, v, weight=1.0):
    if not 1 <= u <= v:
      raise InvalidParameterError('CUT(%d, %d) is not a valid interval' % (u, v))
    if weight < 0:
      raise InvalidParameterError('CUT weight must be nonnegative')
    self.u = int(u)
    self.v = int(v)
    self.weight = weight

  def toarray(self, n):
    if self.v > n:
      raise DimensionMismatchError('CUT(%d, %d) does not fit in n=%d'
                                   % (self.u, self.v, n))
    M = np.zeros((n, n), dtype=np.result_type(self.weight, float))
    M[self.u - 1:self.v, self.u - 1:self.v] = self.weight
    return M

  def __eq__(self, other):
    if not isinstance(other, CutMatrix):
      return NotImplemented
    return (self.u, self.v, self.weight) == (other.u, other.v, other.weight)

  def __repr__(self):
    return '%r*CUT(%d, %d)' % (self.weight, self.u, self.v)


class CutDecomposition(object):
  """A conic combination of CUT matrices."""

  def __init__(self, n, terms, residual_norm=0.0):
    self.n = n
    self.terms = list(terms)
    self.residual_norm = residual_norm

  def toarray(self):
    M = np.zeros((self.n, self.n))
    for t in self.terms:
      M[t.u - 1:t.v, t.u - 1:t.v] += t.weight
    return M

  def __len__(self):
    return len(self.terms)

  def __repr__(self):
    return 'CutDecomposition(%s)' % ' + '.join(repr(t) for t in self.terms)


def _entries(A):
  if sp.issparse(A):
    return A
  return np.asarray(A)


def as_similarity(A, tol=1e-10):
  """Validates A as a similarity matrix.

  Returns:
    A float numpy array, or a csr matrix for sparse input.

  Raises:
    InvalidSimilarityError: A is not square, symmetric and nonnegative.
  """
  if sp.issparse(A):
    A = sp.csr_matrix(A, dtype=float)
    if A.shape[0] != A.shape[1]:
      raise InvalidSimilarityError('similarity matrix must be square, got %s'
                                   % (A.shape,))
    if A.nnz and A.data.min() < -tol:
      raise InvalidSimilarityError('similarity matrix has negative entries')
    if A.nnz and abs(A - A.T).max() > tol * max(1.0, abs(A).max()):
      raise InvalidSimilarityError('similarity matrix is not symmetric')
    return A
  A = np.asarray(A, dtype=float)
  if A.ndim != 2 or A.shape[0] != A.shape[1]:
    raise InvalidSimilarityError('similarity matrix must be square, got %s'
                                 % (A.shape,))
  if not np.all(np.isfinite(A)):
    raise InvalidSimilarityError('similarity matrix has non-finite entries')
  if A.size and A.min() < -tol:
    raise InvalidSimilarityError('similarity matrix has negative entries')
  if not np.allclose(A, A.T, rtol=0, atol=tol * max(1.0, np.abs(A).max(initial=0))):
    raise InvalidSimilarityError('similarity matrix is not symmetric')
  return A


def default_weights(n):
  """The weight vector g = (1, ..., n)."""
  return np.arange(1, n + 1, dtype=float)


def laplacian(A):
  """diag(A 1) - A, sparse when A is sparse."""
  A = _entries(A)
  if sp.issparse(A):
    deg = np.asarray(A.sum(axis=1)).ravel()
    return (sp.diags(deg) - A).tocsr()
  A = np.asarray(A, dtype=float)
  return np.diag(A.sum(axis=1)) - A


def two_sum_objective(A, p, y=None):
  """Returns (Pi y)' L_A (Pi y).

  Args:
    A: similarity matrix.
    p: Permutation, or None for the identity.
    y: weight vector, defaults to (1, ..., n).
  """
  A = _entries(A)
  n = A.shape[0]
  if y is None:
    y = default_weights(n)
  y = np.asarray(y, dtype=float)
  if y.shape != (n,):
    raise DimensionMismatchError('weight vector has length %d, expected %d'
                                 % (y.size, n))
  if p is not None:
    if p.n != n:
      raise DimensionMismatchError('permutation has size %d, expected %d'
                                   % (p.n, n))
    y = p.apply(y)
  L = laplacian(A)
  val = float(y.dot(L.dot(y)))
  return max(val, 0.0)


def variance_objective(y, u, v):
  """(v - u + 1)^2 * var(y[u..v]), the 2-SUM value of CUT(u, v)."""
  seg = np.asarray(y, dtype=float)[u - 1:v]
  return float(seg.size ** 2 * np.var(seg))


def switch_delta(A, y, j):
  """Change of the 2-SUM objective when y_j and y_j+1 are swapped (1-based).

  Only pairs involving another index i contribute:
    sum_i (A_i,j+1 - A_i,j) (y_j+1 - y_j) (2 y_i - y_j - y_j+1).
  """
  A = np.asarray(_entries(A).todense() if sp.issparse(A) else A, dtype=float)
  y = np.asarray(y, dtype=float)
  a, b = j - 1, j
  mask = np.ones(y.size, dtype=bool)
  mask[[a, b]] = False
  dA = A[mask, b] - A[mask, a]
  return float(np.sum(dA * (y[b] - y[a]) * (2 * y[mask] - y[a] - y[b])))


def reorder(A, p):
  """Returns Pi' A Pi, the matrix with rows and columns in `p` order."""
  A = _entries(A)
  idx = p.index
  if sp.issparse(A):
    return A.tocsr()[idx][:, idx]
  return A[np.ix_(idx, idx)]


def _monotonicity_violations(A, strict, tol):
  n = A.shape[0]
  if n < 3:
    return 0
  i, j = np.tril_indices(n, k=-1)
  # Row direction: A[i, j] <= A[i, j + 1] while (i, j + 1) stays below the
  # diagonal.  Column direction: A[i + 1, j] <= A[i, j].
  row = j + 1 < i
  lo, hi = A[i[row], j[row]], A[i[row], j[row] + 1]
  col = i + 1 < n
  lo = np.concatenate([lo, A[i[col] + 1, j[col]]])
  hi = np.concatenate([hi, A[i[col], j[col]]])
  if strict:
    bad = lo >= hi - tol
  else:
    bad = lo > hi + tol
  return int(np.count_nonzero(bad))


def is_r_matrix(A, strict=False, tol=0.0):
  """Checks the Robinson property of a symmetric matrix.

  Entries must not increase moving away from the diagonal.  Only
  comparisons strictly below the diagonal are counted, so the diagonal
  never produces violations.

  Returns:
    (is_r, violation_count)
  """
  A = _entries(A)
  if sp.issparse(A):
    A = A.toarray()
  A = np.asarray(A, dtype=float)
  count = _monotonicity_violations(A, strict, tol)
  return count == 0, count


def is_unimodal(a, strict=False):
  """True when `a` rises (weakly) then falls (weakly)."""
  d = np.diff(np.asarray(a, dtype=float))
  if strict and np.any(d == 0):
    return False
  neg = np.nonzero(d < 0)[0]
  if neg.size == 0:
    return True
  return not np.any(d[neg[0]:] > 0)


def is_q_matrix(A):
  A = np.asarray(_entries(A).toarray() if sp.issparse(A) else A)
  if A.ndim != 2:
    return False
  return all(is_unimodal(A[:, c]) for c in range(A.shape[1]))


def is_p_matrix(A):
  A = np.asarray(_entries(A).toarray() if sp.issparse(A) else A)
  if A.ndim != 2 or not np.all((A == 0) | (A == 1)):
    return False
  for c in range(A.shape[1]):
    ones = np.nonzero(A[:, c])[0]
    if ones.size and ones[-1] - ones[0] + 1 != ones.size:
      return False
  return True


def circular_product(A, B, chunk=64):
  """(A o B)_ij = sum_k min(A_ik, B_kj)."""
  A = np.asarray(A)
  B = np.asarray(B)
  if A.ndim != 2 or B.ndim != 2 or A.shape[1] != B.shape[0]:
    raise DimensionMismatchError('cannot form circular product of %s and %s'
                                 % (A.shape, B.shape))
  out = np.empty((A.shape[0], B.shape[1]), dtype=np.result_type(A, B))
  for s in range(0, A.shape[0], chunk):
    block = A[s:s + chunk]
    out[s:s + chunk] = np.minimum(block[:, :, None], B[None, :, :]).sum(axis=1)
  return out


def cut_decomposition(a):
  """Decomposes a o a' for a nonnegative unimodal vector `a`.

  Repeatedly takes the maximal interval I where `a` attains its maximum,
  emits (max a - max of a outside I) * CUT(I), and lowers a on I to that
  second value.  Integer input gives an exact integer decomposition.

  Raises:
    NotUnimodalError: `a` is not unimodal.
  """
  a = np.array(a)
  if a.ndim != 1:
    raise DimensionMismatchError('cut_decomposition expects a vector')
  if a.size and a.min() < 0:
    raise InvalidParameterError('cut_decomposition expects nonnegative entries')
  if not is_unimodal(a):
    raise NotUnimodalError('vector %s is not unimodal' % (a.tolist(),))
  n = a.size
  terms = []
  work = a.copy()
  while work.size and work.max() > 0:
    top = work.max()
    idx = np.nonzero(work == top)[0]
    if idx[-1] - idx[0] + 1 != idx.size:
      raise NotUnimodalError('argmax set of %s is not an interval'
                             % (work.tolist(),))
    rest = np.delete(work, idx)
    below = rest.max() if rest.size else 0
    terms.append(CutMatrix(idx[0] + 1, idx[-1] + 1, top - below))
    work[idx] = below
  dec = CutDecomposition(n, terms)
  target = np.minimum.outer(a, a)
  dec.residual_norm = float(np.linalg.norm(dec.toarray() - target))
  return dec


def square_similarity(C):
  """Returns C o C' as a similarity matrix.

  Binary input (dense or sparse) uses the ordinary product, which agrees
  with the circular product on {0, 1} entries.
  """
  if sp.issparse(C):
    C = sp.csr_matrix(C)
    return (C @ C.T).tocsr()
  C = np.asarray(C)
  if np.all((C == 0) | (C == 1)):
    return C.astype(float) @ C.T.astype(float)
  return circular_product(C, C.T).astype(float)


def exhaustive_two_sum(A, y=None, tol=1e-9, chunk=5040):
  """Minimizes the 2-SUM objective by enumerating all n! orderings.

  Returns:
    (best_value, minimizers) where minimizers lists every Permutation
    within `tol` (relative) of the optimum.
  """
  A = _entries(A)
  if sp.issparse(A):
    A = A.toarray()
  n = A.shape[0]
  if n > 10:
    raise InvalidParameterError('exhaustive search is limited to n <= 10')
  y = default_weights(n) if y is None else np.asarray(y, dtype=float)
  L = laplacian(A)
  perms = itertools.permutations(range(n))
  values = []
  positions = []
  while True:
    batch = np.array(list(itertools.islice(perms, chunk)), dtype=np.intp)
    if batch.size == 0:
      break
    Z = y[batch]
    values.append(np.einsum('ki,ij,kj->k', Z, L, Z))
    positions.append(batch)
  values = np.concatenate(values)
  positions = np.concatenate(positions)
  best = float(values.min())
  hits = np.nonzero(values <= best + tol * max(1.0, abs(best)))[0]
  return best, [Permutation.from_positions(positions[k] + 1) for k in hits]
