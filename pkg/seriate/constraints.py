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

"""Semi-supervised ordering constraints.

Constraints act on the position vector x = Pi g of an ordering, where x_i
is the (1-based, possibly fractional) position of item i.  Each column d of
D with offset delta encodes d' x + delta <= 0.
"""

import numpy as np
import scipy.sparse as sp
from scipy.sparse.csgraph import shortest_path

from seriate.error import ConstraintFormatError
from seriate.error import InvalidParameterError

ORDER = 'ord'
DISTANCE = 'dist'


class OrderSpec(object):
  """Item i must come strictly before item j (1-based)."""
  kind = ORDER

  def __init__(self, i, j):
    self.i = int(i)
    self.j = int(j)

  def columns(self, n):
    d = np.zeros(n)
    d[self.i - 1] = 1.0
    d[self.j - 1] = -1.0
    return [(d, 1.0)]

  def items(self):
    return (self.i, self.j)

  def __str__(self):
    return '%s %d %d' % (ORDER, self.i, self.j)

  def __eq__(self, other):
    return isinstance(other, OrderSpec) and self.items() == other.items()

  def __hash__(self):
    return hash((ORDER, self.i, self.j))

  __repr__ = __str__


class DistanceSpec(object):
  """a <= position(i) - position(j) <= b."""
  kind = DISTANCE

  def __init__(self, i, j, a, b):
    self.i = int(i)
    self.j = int(j)
    self.a = float(a)
    self.b = float(b)

  def columns(self, n):
    lo = np.zeros(n)
    lo[self.j - 1] = 1.0
    lo[self.i - 1] = -1.0
    return [(lo, self.a), (-lo, -self.b)]

  def items(self):
    return (self.i, self.j)

  def __str__(self):
    return '%s %d %d %g %g' % (DISTANCE, self.i, self.j, self.a, self.b)

  def __eq__(self, other):
    return (isinstance(other, DistanceSpec) and
            (self.i, self.j, self.a, self.b) == (other.i, other.j, other.a, other.b))

  def __hash__(self):
    return hash((DISTANCE, self.i, self.j, self.a, self.b))

  __repr__ = __str__


class ConstraintSet(object):
  """Materialized (D, delta) pair; column 0 is always e_1 - e_n."""

  def __init__(self, n, specs, D, delta):
    self.n = n
    self.specs = list(specs)
    self.D = D
    self.delta = delta

  @property
  def num_columns(self):
    return self.D.shape[1]

  def residuals(self, x):
    """D' x + delta; feasible positions give nonpositive entries."""
    return self.D.T.dot(np.asarray(x, dtype=float)) + self.delta

  def violations(self, p, tol=1e-9):
    """Number of constraint columns violated by a Permutation."""
    r = self.residuals(p.positions())
    return int(np.count_nonzero(r > tol))

  def is_satisfied(self, p, tol=1e-9):
    return self.violations(p, tol) == 0

  def spec_violations(self, p):
    """Number of user specs (symmetry column excluded) broken by p."""
    pos = p.positions()
    bad = 0
    for s in self.specs:
      r = np.array([d.dot(pos) + off for d, off in s.columns(self.n)])
      if np.any(r > 1e-9):
        bad += 1
    return bad

  def order_edges(self):
    """(column, u, v) for every column reading x_u + 1 <= x_v (0-based)."""
    edges = []
    for c in range(self.num_columns):
      col = self.D[:, c]
      nz = np.nonzero(col)[0]
      if (self.delta[c] == 1.0 and nz.size == 2 and
          sorted(col[nz].tolist()) == [-1.0, 1.0]):
        u, v = (nz if col[nz[0]] > 0 else nz[::-1]).tolist()
        edges.append((c, u, v))
    return edges

  def _reach(self, edges):
    E = sp.csr_matrix((np.ones(len(edges)),
                       ([u for _, u, _ in edges], [v for _, _, v in edges])),
                      shape=(self.n, self.n))
    R = np.isfinite(shortest_path(E, directed=True, unweighted=True))
    np.fill_diagonal(R, False)
    return R

  def contradiction(self):
    """A pair (i, j) of 1-based items each required before the other.

    Returns None when the order columns are acyclic.  Distance columns are
    not examined here.
    """
    edges = self.order_edges()
    if not edges:
      return None
    R = self._reach(edges)
    both = np.argwhere(R & R.T)
    if both.size == 0:
      return None
    return int(both[0][0]) + 1, int(both[0][1]) + 1

  def has_distance_columns(self):
    return len(self.order_edges()) < self.num_columns

  def essential_columns(self):
    """Indices of the columns left once implied order columns are dropped.

    An order column u -> v is implied when another chain of order columns
    leads from u to v, since a chain of k >= 2 unit steps forces a gap of
    k.  Duplicates keep their first copy.  The kept columns describe the
    same feasible set.  The order columns must be acyclic.
    """
    edges = self.order_edges()
    order_cols = set(c for c, _, _ in edges)
    keep = [c for c in range(self.num_columns) if c not in order_cols]
    if edges:
      R = self._reach(edges)
      A = np.zeros((self.n, self.n))
      for _, u, v in edges:
        A[u, v] = 1.0
      implied = A.dot(R.astype(float)) > 0
      seen = set()
      for c, u, v in edges:
        if not implied[u, v] and (u, v) not in seen:
          seen.add((u, v))
          keep.append(c)
    return sorted(keep)

  def reduced(self):
    """ConstraintSet with the essential columns only.

    Column 0 is dropped too when a chain of order columns implies it.
    """
    keep = self.essential_columns()
    return ConstraintSet(self.n, self.specs, self.D[:, keep],
                         self.delta[keep])

  def column_rank(self):
    return int(np.linalg.matrix_rank(self.D))

  def has_full_rank(self):
    return self.column_rank() == self.num_columns

  def ToDict(self):
    return {
        'n': self.n,
        'constraints': [str(s) for s in self.specs],
    }

  def __len__(self):
    return len(self.specs)


def _check(spec, n):
  for k in spec.items():
    if not 1 <= k <= n:
      raise InvalidParameterError('constraint "%s": index %d out of range 1..%d'
                                  % (spec, k, n))
  if spec.i == spec.j:
    raise InvalidParameterError('constraint "%s" relates an item to itself'
                                % (spec,))
  if spec.kind == DISTANCE and spec.a > spec.b:
    raise InvalidParameterError('constraint "%s" has a > b' % (spec,))


def build_constraints(n, specs=()):
  """Materializes order/distance specs as a ConstraintSet.

  Contradictory specs are accepted; infeasibility surfaces at solve time.
  """
  if n < 2:
    raise InvalidParameterError('constraints need n >= 2')
  specs = list(specs)
  sym = np.zeros(n)
  sym[0] = 1.0
  sym[-1] = -1.0
  cols = [sym]
  offs = [1.0]
  for s in specs:
    _check(s, n)
    for d, off in s.columns(n):
      cols.append(d)
      offs.append(off)
  return ConstraintSet(n, specs, np.column_stack(cols), np.array(offs))


def parse_constraint(line):
  """Parses one `ord i j` or `dist i j a b` line; None for blanks."""
  line = line.split('#', 1)[0].strip()
  if not line:
    return None
  parts = line.split()
  if parts[0] == ORDER and len(parts) == 3:
    return OrderSpec(int(parts[1]), int(parts[2]))
  if parts[0] == DISTANCE and len(parts) == 5:
    return DistanceSpec(int(parts[1]), int(parts[2]),
                        float(parts[3]), float(parts[4]))
  raise ValueError(line)


def load_constraints(path):
  """Reads a constraint file into a list of specs."""
  specs = []
  with open(path) as fd:
    for lineno, line in enumerate(fd, 1):
      try:
        s = parse_constraint(line)
      except ValueError:
        raise ConstraintFormatError(path, lineno, line)
      if s is not None:
        specs.append(s)
  return specs


def save_constraints(path, specs):
  with open(path, 'w') as fd:
    for s in specs:
      fd.write('%s\n' % (s,))
