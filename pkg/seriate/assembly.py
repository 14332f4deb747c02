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

"""Divide and conquer ordering of shotgun reads.

1. Order each connected component of the read graph spectrally.
2. Cut that order into windows and reorder every window spectrally; each
   connected piece of a window becomes a contig.
3. Audit contigs: a contig is good when the density of R-matrix violations
   of its similarity block stays under a threshold.
4. Order contigs on their summed similarity, spectrally and with the QP
   relaxation under mate-pair distance constraints.
5. Orient contigs greedily on the similarity of their facing ends and
   concatenate them.
"""

import warnings

import numpy as np
import scipy.sparse as sp
from scipy.sparse.csgraph import connected_components

from seriate import relax_qp
from seriate.constraints import DistanceSpec, build_constraints
from seriate.core import Permutation, two_sum_objective
from seriate.datasets import read_similarity
from seriate.error import InfeasibleConstraintsError
from seriate.error import MultiplicityWarning
from seriate.metrics import r_violation_density
from seriate.spectral import spectral_order
from seriate.trace import Trace
from seriate.worker import RunPool


class AssemblyConfig(object):

  def __init__(self, contig_size=100, audit_threshold=0.05, end_window=10,
               solver=None, jobs=1, seed=0):
    self.contig_size = contig_size
    self.audit_threshold = audit_threshold
    self.end_window = end_window
    self.solver = solver or relax_qp.SolverConfig(seed=seed, max_iters=200)
    self.jobs = jobs
    self.seed = seed

  def ToDict(self):
    return {
        'contig_size': self.contig_size,
        'audit_threshold': self.audit_threshold,
        'end_window': self.end_window,
        'solver': self.solver.ToDict(),
        'jobs': self.jobs,
        'seed': self.seed,
    }


class Contig(object):
  """Ordered reads (0-based) with the result of their R-matrix audit."""

  def __init__(self, reads, violation_density, good):
    self.reads = list(reads)
    self.violation_density = violation_density
    self.good = good

  def __len__(self):
    return len(self.reads)

  def reversed(self):
    return Contig(self.reads[::-1], self.violation_density, self.good)

  def __repr__(self):
    return 'Contig(%d reads, %s)' % (len(self.reads),
                                     'good' if self.good else 'bad')


def _components(A):
  n, labels = connected_components(A, directed=False)
  return [np.nonzero(labels == c)[0] for c in range(n)]


def _order_block(A):
  with warnings.catch_warnings():
    warnings.simplefilter('ignore', MultiplicityWarning)
    return spectral_order(A).index


def _window_contigs(args):
  """Splits one window into connected pieces and orders each spectrally."""
  A, reads, threshold = args
  out = []
  for comp in _components(A):
    sub = A[comp][:, comp]
    local = comp[_order_block(sub)] if comp.size > 1 else comp
    dens = r_violation_density(A[local][:, local].toarray())
    out.append(Contig(reads[local], dens, dens <= threshold))
  return out


def _contig_similarity(A, contigs):
  n = A.shape[0]
  rows = np.concatenate([c.reads for c in contigs])
  cols = np.concatenate([np.full(len(c), k) for k, c in enumerate(contigs)])
  M = sp.csr_matrix((np.ones(rows.size), (rows, cols)),
                    shape=(n, len(contigs)))
  S = (M.T @ A @ M).toarray()
  np.fill_diagonal(S, 0.0)
  return 0.5 * (S + S.T)


def _mate_constraints(R, contigs, reads_per_contig):
  """Distance constraints between contigs implied by mate pairs."""
  owner = {}
  for k, c in enumerate(contigs):
    for r in c.reads:
      owner[r] = k
  if not R.mate_pairs or not owner:
    return []
  bp_per_contig = reads_per_contig * R.genome_length / float(len(R))
  votes = {}
  for i, j, gap in R.mate_pairs:
    a, b = owner.get(i - 1), owner.get(j - 1)
    if a is None or b is None or a == b:
      continue
    votes.setdefault((a, b), []).append(gap / bp_per_contig)
  specs = []
  for (a, b), est in sorted(votes.items()):
    rev = votes.get((b, a), [])
    if len(rev) > len(est) or (len(rev) == len(est) and b < a):
      continue
    mid = float(np.median(est))
    lo = max(1.0, np.floor(mid) - 1.0)
    hi = max(lo, np.ceil(mid) + 1.0)
    # b sits lo..hi contigs after a.
    specs.append(DistanceSpec(b + 1, a + 1, lo, hi))
  return specs


def _order_contigs(S, specs, config):
  """Returns (order, used_qp) for the contig similarity S."""
  m = S.shape[0]
  if m <= 2 or not np.any(S):
    return np.arange(m), False
  comps = _components(sp.csr_matrix(S))
  if len(comps) > 1:
    order = np.concatenate([c[_order_block(S[np.ix_(c, c)])] if c.size > 1 else c
                            for c in comps])
    return order, False
  spec_p = Permutation.from_index(_order_block(S))
  if not specs:
    return spec_p.index, False
  C = build_constraints(m, specs)
  scale = S.max()
  candidates = [spec_p, spec_p.reversed()]
  try:
    qp_p, report = relax_qp.solve(S / scale, C, config.solver)
  except InfeasibleConstraintsError as e:
    Trace('assembly: contig QP abandoned: %s', e)
    return spec_p.index, False
  Trace('assembly: contig QP %d iterations, rounded objective %g',
        report.iterations, report.rounded_objective)
  candidates.insert(0, qp_p)

  def key(p):
    return (C.spec_violations(p), two_sum_objective(S, p))

  best = min(candidates, key=key)
  return best.index, True


def _facing(A, left, right, w):
  a = left.reads[-w:]
  b = right.reads[:w]
  return float(A[a][:, b].sum())


def _orient(A, contigs, w):
  if len(contigs) < 2:
    return contigs
  first, second = contigs[0], contigs[1]
  best = max(((f, s) for f in (first, first.reversed())
              for s in (second, second.reversed())),
             key=lambda fs: _facing(A, fs[0], fs[1], w))
  out = list(best)
  for c in contigs[2:]:
    prev = out[-1]
    rc = c.reversed()
    out.append(c if _facing(A, prev, c, w) >= _facing(A, prev, rc, w) else rc)
  return out



def _insertion_costs(A, seq, r):
  """2-SUM increase of inserting read r into each gap of seq.

  Gap g puts r at position g and shifts the reads from position g on by
  one.  Returns (gaps, costs) over the gaps spanned by r's neighbors, or
  None when r shares nothing with seq.
  """
  pos = np.full(A.shape[0], -1, dtype=np.intp)
  pos[seq] = np.arange(len(seq))
  row = A.getrow(r)
  nb, w = row.indices, row.data
  keep = (pos[nb] >= 0) & (w > 0)
  nb, w = nb[keep], w[keep]
  if nb.size == 0:
    return None
  p = pos[nb]
  gaps = np.arange(p.min(), p.max() + 2)
  shifted = p[None, :] + (p[None, :] >= gaps[:, None])
  own = ((gaps[:, None] - shifted) ** 2).dot(w)
  # Pairs straddling gap g move one step apart.
  B = A[seq][:, seq].tocoo()
  up = B.row < B.col
  a, b, v = B.row[up], B.col[up], B.data[up]
  diff = np.zeros(len(seq) + 2)
  np.add.at(diff, a + 1, v * (2.0 * (b - a) + 1.0))
  np.add.at(diff, b + 1, -v * (2.0 * (b - a) + 1.0))
  cross = np.cumsum(diff)[gaps]
  return gaps, own + cross


def _reinsert(A, seq, reads):
  """Places reads into seq one at a time at their cheapest gap.

  Reads are taken by decreasing similarity to seq, ties by index.

  Returns:
    (seq, placed, unplaced): the extended sequence, the reads inserted and
    the reads sharing no similarity with any placed read.
  """
  seq = list(seq)
  reads = list(reads)
  if not reads:
    return seq, [], []
  weight = np.asarray(A[reads][:, seq].sum(axis=1)).ravel() if seq else np.zeros(len(reads))
  pending = [r for _, r in sorted(zip(-weight, reads))]
  placed = []
  while pending:
    for k, r in enumerate(pending):
      found = _insertion_costs(A, seq, r)
      if found is not None:
        break
    else:
      break
    gaps, costs = found
    seq.insert(int(gaps[np.argmin(costs)]), r)
    placed.append(r)
    del pending[k]
  return seq, placed, sorted(pending)


def _regroup(seq, contigs, placed):
  """Contigs over seq; a placed read joins the contig of its predecessor."""
  owner = {}
  for k, c in enumerate(contigs):
    for r in c.reads:
      owner[r] = k
  extra = set(placed)
  prev = None
  for r in seq:
    if r in extra:
      owner[r] = prev
    prev = owner[r]
  first = next(owner[r] for r in seq if owner[r] is not None)
  groups = [[] for _ in contigs]
  for r in seq:
    groups[first if owner[r] is None else owner[r]].append(r)
  return [Contig(g, c.violation_density, c.good)
          for g, c in zip(groups, contigs)]



def assemble(R, config=None):
  """Orders the reads of a ReadSet.

  Contigs failing the R-matrix audit are broken up: only good contigs are
  ordered (with the mate-pair distance constraints between them), then
  the reads of bad contigs and stray single reads are inserted one by one
  where they raise the 2-SUM objective least and join the contig on their
  left.  When every contig is bad the least violated one is kept.

  Returns:
    (order, contigs, report): a Permutation of all reads (reads sharing
    nothing with the placed ones last), the oriented contigs in final
    order and a dict describing the run.
  """
  config = config or AssemblyConfig()
  A = sp.csr_matrix(read_similarity(R), dtype=float)
  n = A.shape[0]
  if n == 1:
    return Permutation.identity(1), [Contig([0], 0.0, True)], {
        'reads': 1, 'components': 1, 'contigs': 1, 'bad_contigs': 0,
        'reinserted': 0, 'unplaced': [], 'used_qp': False, 'constraints': 0}

  loose = []
  windows = []
  comps = _components(A)
  for comp in comps:
    if comp.size == 1:
      loose.append(int(comp[0]))
      continue
    order = comp[_order_block(A[comp][:, comp])]
    for s in range(0, order.size, config.contig_size):
      w = order[s:s + config.contig_size]
      windows.append((A[w][:, w], w, config.audit_threshold))

  found = []
  for part in RunPool(_window_contigs, windows, config.jobs):
    found.extend(part)
  loose.extend(int(c.reads[0]) for c in found if len(c) == 1)
  found = [c for c in found if len(c) > 1]
  contigs = [c for c in found if c.good]
  bad = [c for c in found if not c.good]
  if not contigs and bad:
    seed = min(range(len(bad)), key=lambda k: bad[k].violation_density)
    contigs = [bad.pop(seed)]
  Trace('assembly: %d components, %d contigs, %d bad', len(comps),
        len(found), len(bad))

  specs = _mate_constraints(R, contigs, config.contig_size)
  # The first contig must precede the last one; index contigs along the mates.
  if sum(s.i < s.j for s in specs) > sum(s.i > s.j for s in specs):
    contigs = contigs[::-1]
    specs = _mate_constraints(R, contigs, config.contig_size)
  S = _contig_similarity(A, contigs) if contigs else np.zeros((0, 0))
  order, used_qp = _order_contigs(S, specs, config)
  contigs = _orient(A, [contigs[k] for k in order], config.end_window)

  seq = [r for c in contigs for r in c.reads]
  pool = [r for c in bad for r in c.reads] + loose
  seq, placed, unplaced = _reinsert(A, seq, pool)
  if placed:
    contigs = _regroup(seq, contigs, placed)
  Trace('assembly: %d reads reinserted, %d unplaced', len(placed),
        len(unplaced))

  report = {
      'reads': n,
      'components': len(comps),
      'contigs': len(contigs),
      'bad_contigs': len(bad),
      'reinserted': len(placed),
      'unplaced': [r + 1 for r in unplaced],
      'used_qp': used_qp,
      'constraints': len(specs),
  }
  return Permutation.from_index(seq + unplaced), contigs, report
