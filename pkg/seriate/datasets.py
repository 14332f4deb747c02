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

"""Generators and loaders for seriation experiments.

Every generator is a pure function of its seed.  Generators that shuffle
their output return the truth as the Permutation that puts the shuffled
items back in their generating order.
"""

import csv
import math
import warnings

import numpy as np
import scipy.sparse as sp

from seriate.constraints import OrderSpec
from seriate.core import CutMatrix, Permutation, reorder, square_similarity
from seriate.error import InvalidParameterError
from seriate.error import IsolatedRowWarning
from seriate.error import MatrixFormatError
from seriate.trace import Trace

BASES = 'ACGT'


def _shuffle(A, rng):
  """Randomly relabels the items of A; returns (shuffled, truth)."""
  n = A.shape[0]
  s = rng.permutation(n)
  truth = Permutation.from_index(np.argsort(s, kind='stable'))
  return reorder(A, Permutation.from_index(s)), truth


class MarkovChainSpec(object):
  """Gaussian chain X_i+1 = b_i X_i + eps_i with eps_i ~ N(0, sigma_i^2).

  samples == 0 selects the exact model covariance.
  """

  def __init__(self, n, b, sigma, samples=0, seed=0):
    b = np.asarray(b, dtype=float)
    sigma = np.asarray(sigma, dtype=float)
    if b.shape != (n - 1,) or sigma.shape != (n - 1,):
      raise InvalidParameterError('a chain of %d variables needs %d '
                                  'coefficients and noise levels' % (n, n - 1))
    if np.any(sigma <= 0):
      raise InvalidParameterError('noise levels sigma_i must be positive')
    if samples == 1 or samples < 0:
      raise InvalidParameterError('need 0 (exact) or at least 2 samples, got %d'
                                  % samples)
    self.n = n
    self.b = b
    self.sigma = sigma
    self.samples = samples
    self.seed = seed


def random_markov_spec(n, samples=0, seed=0):
  rng = np.random.default_rng(seed)
  b = rng.uniform(0.6, 0.95, size=n - 1)
  sigma = rng.uniform(0.3, 1.0, size=n - 1)
  return MarkovChainSpec(n, b, sigma, samples=samples, seed=seed)


def _exact_correlation(spec):
  n = spec.n
  var = np.empty(n)
  var[0] = 1.0
  for i in range(n - 1):
    var[i + 1] = spec.b[i] ** 2 * var[i] + spec.sigma[i] ** 2
  edge = np.abs(spec.b) * np.sqrt(var[:-1] / var[1:])
  R = np.eye(n)
  for i in range(n):
    acc = 1.0
    for j in range(i + 1, n):
      acc *= edge[j - 1]
      R[i, j] = R[j, i] = acc
  return R


def _sampled_correlation(spec):
  rng = np.random.default_rng(spec.seed)
  X = np.empty((spec.samples, spec.n))
  X[:, 0] = rng.standard_normal(spec.samples)
  for i in range(spec.n - 1):
    X[:, i + 1] = (spec.b[i] * X[:, i] +
                   spec.sigma[i] * rng.standard_normal(spec.samples))
  return np.abs(np.corrcoef(X, rowvar=False))


def markov_similarity(spec, permute_seed=0):
  """|corr(X_i, X_j)| of a Markov chain, randomly relabeled.

  Returns:
    (A, truth)
  """
  if spec.samples == 0:
    A = _exact_correlation(spec)
  else:
    A = _sampled_correlation(spec)
  A = 0.5 * (A + A.T)
  return _shuffle(A, np.random.default_rng(permute_seed))


def connectivity_threshold(n, eps=0.0):
  """(1 + eps) log(n) / n, above which random pair samples connect."""
  return (1.0 + eps) * math.log(n) / n


def constraint_regime(n, p, eps=0.0):
  """Where sampling probability p sits against the connectivity threshold.

  Returns:
    dict with the threshold, whether p exceeds it and the expected number
    of sampled pairs.
  """
  threshold = connectivity_threshold(n, eps) if n > 1 else 0.0
  return {
      'threshold': threshold,
      'above_threshold': bool(n > 1 and p > threshold),
      'expected_pairs': p * n * (n - 1) / 2.0,
  }


def sample_order_constraints(truth, p, error_rate=0.0, seed=0):
  """Samples pairwise order constraints from an Erdos-Renyi graph.

  Each unordered pair is kept with probability p and oriented as in
  `truth`, then flipped with probability error_rate.  When `truth` puts
  item n before item 1 its reversal is used instead, so that error-free
  constraints never contradict the symmetry-breaking column.
  constraint_regime(n, p) tells whether p is above the connectivity
  threshold.
  """
  if not 0.0 <= p <= 1.0 or not 0.0 <= error_rate <= 1.0:
    raise InvalidParameterError('p and error_rate must lie in [0, 1]')
  n = truth.n
  rng = np.random.default_rng(seed)
  if n > 1 and truth.positions()[0] > truth.positions()[-1]:
    truth = truth.reversed()
  pos = truth.positions()
  i, j = np.triu_indices(n, k=1)
  keep = rng.random(i.size) < p
  flip = rng.random(i.size) < error_rate
  specs = []
  for a, b, f in zip(i[keep] + 1, j[keep] + 1, flip[keep]):
    first, second = (a, b) if pos[a - 1] < pos[b - 1] else (b, a)
    if f:
      first, second = second, first
    specs.append(OrderSpec(first, second))
  regime = constraint_regime(n, p)
  Trace('constraints: %d of %d pairs, p=%g %s the connectivity threshold %g',
        len(specs), i.size, p,
        'above' if regime['above_threshold'] else 'below',
        regime['threshold'])
  return specs


def synthetic_pre_r(n, num_cuts, noise_scale=0.0, seed=0, strict=None):
  """Random conic sum of CUT matrices, optionally noisy, then shuffled.

  With `strict` (default when num_cuts >= n - 1) the sum also holds every
  CUT(1, v) and CUT(u, n) with a positive weight, which makes the
  unshuffled matrix a strict R-matrix.

  Returns:
    (A, truth)
  """
  if n < 1 or num_cuts < 0 or noise_scale < 0:
    raise InvalidParameterError('invalid synthetic pre-R parameters')
  if strict is None:
    strict = num_cuts >= n - 1
  rng = np.random.default_rng(seed)
  cuts = []
  if strict:
    cuts.extend(CutMatrix(1, v, rng.uniform(0.5, 1.5)) for v in range(1, n + 1))
    cuts.extend(CutMatrix(u, n, rng.uniform(0.5, 1.5)) for u in range(2, n + 1))
  for _ in range(num_cuts):
    u, v = np.sort(rng.integers(1, n + 1, size=2))
    cuts.append(CutMatrix(u, v, rng.uniform(0.5, 1.5)))
  A = np.zeros((n, n))
  for c in cuts:
    A[c.u - 1:c.v, c.u - 1:c.v] += c.weight
  if noise_scale > 0:
    E = np.abs(rng.normal(scale=noise_scale, size=(n, n)))
    E = np.triu(E, 1)
    A += E + E.T
  return _shuffle(A, rng)


def synthetic_c1p(rows=59, cols=70, flip_rate=0.1, seed=0):
  """Noisy binary matrix whose unshuffled rows have consecutive ones.

  Each column holds one interval of ones.  Every one is cleared with
  probability flip_rate and as many zeros, in expectation, are set.  Rows
  left empty get one of their original ones back.

  Returns:
    (C, truth) with C shuffled by rows.
  """
  rng = np.random.default_rng(seed)
  C = np.zeros((rows, cols), dtype=np.int64)
  centers = np.sort(rng.uniform(0, rows, size=cols))
  centers[0], centers[-1] = 0, rows - 1
  for c in range(cols):
    half = rng.integers(1, max(2, rows // 8) + 1)
    lo = max(0, int(centers[c]) - half)
    hi = min(rows, int(centers[c]) + half + 1)
    C[lo:hi, c] = 1
  # Stretch the nearest interval over rows no column covers.
  for r in range(rows):
    if not C[r].any():
      c = int(np.argmin(np.abs(centers - r)))
      ones = np.nonzero(C[:, c])[0]
      C[min(ones[0], r):max(ones[-1], r) + 1, c] = 1
  clean = C.copy()
  ones = C == 1
  on_rate = flip_rate * ones.sum() / max(1, (~ones).sum())
  off = ones & (rng.random(C.shape) < flip_rate)
  on = ~ones & (rng.random(C.shape) < on_rate)
  C[off] = 0
  C[on] = 1
  for r in np.nonzero(C.sum(axis=1) == 0)[0]:
    C[r, rng.choice(np.nonzero(clean[r])[0])] = 1
  s = rng.permutation(rows)
  truth = Permutation.from_index(np.argsort(s, kind='stable'))
  return C[s], truth


def _parse_cell(cell):
  try:
    return float(cell)
  except ValueError:
    return None


def load_binary_matrix(path):
  """Reads a 0/1 CSV (rows are observations, columns are features).

  A non-numeric first row is taken as a header and a non-numeric first
  column as row labels.  All-zero rows are accepted with a warning.

  Raises:
    MatrixFormatError: ragged rows or entries other than 0 and 1.
  """
  with open(path, newline='') as fd:
    rows = [r for r in csv.reader(fd) if r and any(c.strip() for c in r)]
  if not rows:
    raise MatrixFormatError('%s: no data' % path)
  if any(_parse_cell(c) is None for c in rows[0][1:]):
    rows = rows[1:]
  if rows and all(_parse_cell(r[0]) is None for r in rows):
    rows = [r[1:] for r in rows]
  width = len(rows[0])
  data = []
  for lineno, r in enumerate(rows, 1):
    if len(r) != width:
      raise MatrixFormatError('%s: row %d has %d entries, expected %d'
                              % (path, lineno, len(r), width))
    vals = [_parse_cell(c) for c in r]
    if any(v not in (0.0, 1.0) for v in vals):
      raise MatrixFormatError('%s: row %d has a non-binary entry' % (path, lineno))
    data.append(vals)
  C = np.array(data, dtype=np.int64)
  empty = np.nonzero(C.sum(axis=1) == 0)[0]
  if empty.size:
    warnings.warn('%s: rows %s are all zero and disconnect the similarity graph'
                  % (path, ', '.join(str(i + 1) for i in empty)),
                  IsolatedRowWarning, stacklevel=2)
  return C


def random_genome(length, k=16, seed=0, max_tries=100):
  """Random A/C/G/T string whose k-mers are all distinct."""
  rng = np.random.default_rng(seed)
  for _ in range(max_tries):
    codes = rng.integers(0, 4, size=length)
    if length < k or np.unique(_kmer_codes(codes, k)).size == length - k + 1:
      return ''.join(BASES[c] for c in codes)
  raise InvalidParameterError('could not draw a repeat-free genome of %d bp '
                              'with k=%d' % (length, k))


def plant_repeat(genome, repeat_length, seed=0):
  """Copies a random segment of `genome` over a disjoint segment."""
  G = len(genome)
  if 2 * repeat_length > G:
    raise InvalidParameterError('repeat of %d bp does not fit twice in %d bp'
                                % (repeat_length, G))
  rng = np.random.default_rng(seed)
  src = int(rng.integers(0, G - 2 * repeat_length + 1))
  dst = int(rng.integers(src + repeat_length, G - repeat_length + 1))
  seg = genome[src:src + repeat_length]
  return genome[:dst] + seg + genome[dst + repeat_length:]


def read_fasta(path):
  """Reads a single-sequence FASTA-like file."""
  seq = []
  with open(path) as fd:
    for line in fd:
      line = line.strip()
      if not line or line.startswith('>') or line.startswith(';'):
        continue
      seq.append(line.upper())
  genome = ''.join(seq)
  bad = set(genome) - set(BASES)
  if bad:
    raise InvalidParameterError('%s: unexpected symbols %s'
                                % (path, ''.join(sorted(bad))))
  return genome


def _encode(seq):
  lut = np.zeros(256, dtype=np.int64)
  for i, c in enumerate(BASES):
    lut[ord(c)] = i
  return lut[np.frombuffer(seq.encode('ascii'), dtype=np.uint8)]


def _kmer_codes(codes, k):
  if codes.size < k:
    return np.zeros(0, dtype=np.int64)
  win = np.lib.stride_tricks.sliding_window_view(codes, k)
  return win.dot(4 ** np.arange(k - 1, -1, -1, dtype=np.int64))


class ReadSet(object):
  """Simulated reads with their k-mer incidence matrix C (reads x k-mers)."""

  def __init__(self, reads, mate_pairs, k, C, genome_length):
    self.reads = reads
    self.mate_pairs = mate_pairs
    self.k = k
    self.C = C
    self.genome_length = genome_length

  def __len__(self):
    return len(self.reads)

  @property
  def read_length(self):
    return len(self.reads[0][0]) if self.reads else 0

  def positions(self):
    return np.array([p for _, p in self.reads])

  def truth(self):
    """Reads sorted by their true start position."""
    return Permutation.from_scores(self.positions())


def _incidence(sequences, k):
  cols = []
  ptr = [0]
  for s in sequences:
    km = np.unique(_kmer_codes(_encode(s), k))
    cols.append(km)
    ptr.append(ptr[-1] + km.size)
  allk = np.concatenate(cols) if cols else np.zeros(0, dtype=np.int64)
  _, ids = np.unique(allk, return_inverse=True)
  data = np.ones(ids.size, dtype=np.int64)
  C = sp.csr_matrix((data, ids, np.array(ptr)),
                    shape=(len(sequences), int(ids.max()) + 1 if ids.size else 0))
  return C


def _starts(rng, G, L, m, gap, k):
  """Distinct read starts whose consecutive k-mer overlaps never break."""
  hi = G - L - gap
  half = m // 2 if gap else m
  if hi + 1 < half or half < 1:
    raise InvalidParameterError('cannot place %d distinct reads of %d bp on '
                                '%d bp' % (m, L, G))
  for _ in range(1000):
    first = rng.choice(hi + 1, size=half, replace=False)
    if gap:
      starts = np.concatenate([first, first + gap])
      if np.unique(starts).size != starts.size:
        continue
    else:
      starts = first
    srt = np.sort(starts)
    if half == 1 and not gap:
      return starts
    if np.all(np.diff(srt) <= L - k):
      return starts
  raise InvalidParameterError('coverage too low to connect the reads; '
                              'raise coverage or read length')


def simulate_reads(genome_length_bp, read_length_bp, coverage, mate_gap_bp=0,
                   k=16, seed=0, genome=None):
  """Samples error-free reads uniformly from a genome.

  Read starts are distinct and redrawn until every pair of neighboring
  reads shares a k-mer.  With mate_gap_bp > 0 reads come in pairs whose
  starts are mate_gap_bp apart.  Reads are returned in random order.

  Returns:
    ReadSet
  """
  if read_length_bp <= k or coverage < 1 or genome_length_bp < read_length_bp:
    raise InvalidParameterError('need read_length > k, coverage >= 1 and a '
                                'genome at least one read long')
  if mate_gap_bp < 0:
    raise InvalidParameterError('mate gap must be nonnegative')
  rng = np.random.default_rng(seed)
  if genome is None:
    genome = random_genome(genome_length_bp, k, seed=rng.integers(2 ** 32))
  G, L = len(genome), read_length_bp
  m = max(1, int(math.ceil(coverage * G / float(L))))
  if mate_gap_bp:
    m += m % 2
  starts = _starts(rng, G, L, m, mate_gap_bp, k)
  order = rng.permutation(starts.size)
  starts = starts[order]
  reads = [(genome[s:s + L], int(s)) for s in starts]
  mates = []
  if mate_gap_bp:
    half = starts.size // 2
    slot = np.empty(starts.size, dtype=np.intp)
    slot[order] = np.arange(starts.size)
    for a in range(half):
      mates.append((int(slot[a]) + 1, int(slot[a + half]) + 1, mate_gap_bp))
  C = _incidence([r for r, _ in reads], k)
  return ReadSet(reads, mates, k, C, G)


def read_similarity(R):
  """Shared k-mer counts C C' between reads (sparse)."""
  return square_similarity(R.C)
