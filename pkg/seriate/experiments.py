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

"""Seeded experiment runs and their tabular results.

An experiment is a list of runs.  Run i gets the seed derived from the
master seed and i, so any single run can be replayed alone.  Each run
yields one row per method (and constraint fraction, noise regime or Y
width).  Results go to an output directory:

  runs.csv        one row per (run, method, ...)
  aggregates.csv  median, mean and stdev of every metric per group
  run.json        configuration, master seed and run seeds
"""

from __future__ import print_function

import csv
import json
import math
import os
import time
import warnings

import numpy as np

from seriate import relax_qp
from seriate.assembly import AssemblyConfig, assemble
from seriate.constraints import build_constraints
from seriate.core import Permutation, square_similarity
from seriate.datasets import constraint_regime
from seriate.datasets import load_binary_matrix
from seriate.datasets import markov_similarity
from seriate.datasets import plant_repeat
from seriate.datasets import random_genome
from seriate.datasets import random_markov_spec
from seriate.datasets import read_similarity
from seriate.datasets import sample_order_constraints
from seriate.datasets import simulate_reads
from seriate.datasets import synthetic_c1p
from seriate.datasets import synthetic_pre_r
from seriate.error import AggregateMismatchError
from seriate.error import DatasetMissingError
from seriate.error import InvalidParameterError
from seriate.error import MultiplicityWarning
from seriate.error import PropertyModeWarning
from seriate.error import SeriateError
from seriate.metrics import evaluate
from seriate.spectral import spectral_order
from seriate.trace import Trace
from seriate.worker import RunPool

MARKOV = 'markov'
ARCHEO = 'archeo'
DNA = 'dna'
YGEN = 'ygen'
EXPERIMENTS = (MARKOV, ARCHEO, DNA, YGEN)

DATA_DIR_ENV = 'SERIATE_DATA_DIR'
MUNSINGEN_FILE = 'munsingen.csv'

# Constraint fractions of the semi-supervised rows.
MARKOV_FRACTIONS = (0.002, 0.046, 0.543, 1.0)
ARCHEO_FRACTIONS = (0.001, 0.475)

# Markov noise regimes: name -> number of samples (0 is the exact model).
NOISE_REGIMES = (('none', 0), ('within', 6000), ('large', 60))
DNA_REGIMES = ('clean', 'repeat')

YGEN_RATIOS = (0.2, 1.0, 2.0, 5.0)

SPECTRAL = 'spectral'
QP_REG = 'qp_reg'
QP_SEMI = 'qp_semi'
FIEDLER_QP = 'spectral+qp'

OK = 'ok'

KEY_FIELDS = ('method', 'regime', 'fraction', 'p_ratio')
METRICS = ('tau', 'rho', 'objective', 'r_violations')
RUN_FIELDS = (('experiment', 'run', 'seed') + KEY_FIELDS + METRICS +
              ('mu', 'threshold', 'wall_time', 'status'))
STATS = ('median', 'mean', 'stdev')
AGGREGATE_FIELDS = (('experiment',) + KEY_FIELDS + ('count',) +
                    tuple('%s_%s' % (m, s) for m in METRICS for s in STATS))

RUNS_CSV = 'runs.csv'
AGGREGATES_CSV = 'aggregates.csv'
RUN_JSON = 'run.json'


def run_seed(master, index):
  """Seed of run `index`, derived from the master seed by counter."""
  ss = np.random.SeedSequence([int(master), int(index)])
  return int(ss.generate_state(1, dtype=np.uint32)[0])


def _sub(seed, k):
  return run_seed(seed, k)


class ExperimentConfig(object):
  """Everything a run needs; plain data so it pickles to workers."""

  def __init__(self, name, runs=20, seed=0, n=30, regimes=None,
               fractions=None, error_rate=0.0, solver=None, data_dir=None,
               p_ratios=YGEN_RATIOS, genome_length=10000, read_length=100,
               coverage=20, mate_gap=1000, k=16, repeat_length=300,
               genome=None, contig_size=100):
    if name not in EXPERIMENTS:
      raise InvalidParameterError('unknown experiment %r' % (name,))
    if runs < 1:
      raise InvalidParameterError('need at least one run')
    self.name = name
    self.runs = runs
    self.seed = seed
    self.n = n
    if regimes is None:
      if name == MARKOV:
        regimes = [r for r, _ in NOISE_REGIMES]
      elif name == DNA:
        regimes = list(DNA_REGIMES)
      else:
        regimes = []
    self.regimes = list(regimes)
    if fractions is None:
      fractions = {MARKOV: MARKOV_FRACTIONS,
                   ARCHEO: ARCHEO_FRACTIONS}.get(name, ())
    self.fractions = list(fractions)
    self.error_rate = error_rate
    self.solver = solver or relax_qp.SolverConfig()
    self.data_dir = data_dir
    self.p_ratios = list(p_ratios)
    self.genome_length = genome_length
    self.read_length = read_length
    self.coverage = coverage
    self.mate_gap = mate_gap
    self.k = k
    self.repeat_length = repeat_length
    self.genome = genome
    self.contig_size = contig_size
    self.munsingen = None

  def ToDict(self):
    d = {
        'name': self.name,
        'runs': self.runs,
        'seed': self.seed,
        'solver': self.solver.ToDict(),
    }
    if self.name in (MARKOV, YGEN):
      d['n'] = self.n
    if self.name in (MARKOV, DNA):
      d['regimes'] = self.regimes
    if self.name in (MARKOV, ARCHEO):
      d['fractions'] = self.fractions
      d['error_rate'] = self.error_rate
    if self.name == ARCHEO:
      d['data'] = self.munsingen or 'synthetic'
    if self.name == YGEN:
      d['p_ratios'] = self.p_ratios
    if self.name == DNA:
      d.update(genome_length=self.genome_length,
               read_length=self.read_length, coverage=self.coverage,
               mate_gap=self.mate_gap, k=self.k,
               repeat_length=self.repeat_length,
               contig_size=self.contig_size)
    return d


def _row(cfg, run, seed, method, regime='', fraction='', p_ratio=''):
  return {
      'experiment': cfg.name,
      'run': run,
      'seed': seed,
      'method': method,
      'regime': regime,
      'fraction': fraction,
      'p_ratio': p_ratio,
      'tau': float('nan'),
      'rho': float('nan'),
      'objective': float('nan'),
      'r_violations': float('nan'),
      'mu': '',
      'threshold': '',
      'wall_time': 0.0,
      'status': OK,
  }


def _measure(row, func, A, truth):
  """Runs func() and scores the Permutation it returns into row.

  func may also return (Permutation, SolverReport), whose mu is recorded.
  """
  start = time.time()
  try:
    with warnings.catch_warnings():
      warnings.simplefilter('ignore', MultiplicityWarning)
      p = func()
  except SeriateError as e:
    row['status'] = '%s: %s' % (type(e).__name__, e)
    Trace('%s run %s: %s', row['experiment'], row['run'], row['status'])
    return row
  row['wall_time'] = time.time() - start
  if isinstance(p, tuple):
    p, report = p
    row['mu'] = report.mu
  row.update({k: v for k, v in evaluate(A, p, truth).items() if k in METRICS})
  return row


def _solver(cfg, seed, **overrides):
  d = cfg.solver.ToDict()
  d['seed'] = seed
  d.update(overrides)
  return relax_qp.SolverConfig(**d)


def _semi_rows(cfg, run, seed, A, truth, regime=''):
  """Spectral, unconstrained QP and one QP per constraint fraction."""
  n = A.shape[0]
  rows = [_measure(_row(cfg, run, seed, SPECTRAL, regime),
                   lambda: spectral_order(A), A, truth)]
  scfg = _solver(cfg, _sub(seed, 1), algorithm=relax_qp.APG)
  rows.append(_measure(_row(cfg, run, seed, QP_REG, regime, 0.0),
                       lambda: relax_qp.solve(A, None, scfg), A, truth))
  for j, frac in enumerate(cfg.fractions):
    specs = sample_order_constraints(truth, frac, cfg.error_rate,
                                     seed=_sub(seed, 10 + j))
    C = build_constraints(n, specs)
    row = _row(cfg, run, seed, QP_SEMI, regime, frac)
    row['threshold'] = constraint_regime(n, frac)['threshold']
    rows.append(_measure(row, lambda: relax_qp.solve(A, C, scfg), A, truth))
  return rows


def _markov_run(cfg, run, seed):
  rows = []
  samples = dict(NOISE_REGIMES)
  for regime in cfg.regimes:
    spec = random_markov_spec(cfg.n, samples=samples[regime],
                              seed=_sub(seed, 2))
    A, truth = markov_similarity(spec, permute_seed=_sub(seed, 3))
    rows.extend(_semi_rows(cfg, run, seed, A, truth, regime))
  return rows


def _archeo_data(cfg, seed):
  if cfg.munsingen:
    C = load_binary_matrix(cfg.munsingen)
    # Rows are stored in the reference (manual) order.
    return C, Permutation.identity(C.shape[0])
  return synthetic_c1p(seed=_sub(seed, 4))


def _archeo_run(cfg, run, seed):
  C, truth = _archeo_data(cfg, seed)
  A = square_similarity(C)
  A = np.asarray(A.toarray() if hasattr(A, 'toarray') else A, dtype=float)
  return _semi_rows(cfg, run, seed, A, truth,
                    'munsingen' if cfg.munsingen else 'synthetic')


def _dna_run(cfg, run, seed):
  rows = []
  base = cfg.genome or random_genome(cfg.genome_length, cfg.k,
                                     seed=_sub(seed, 5))
  for regime in cfg.regimes:
    genome = base
    if regime == 'repeat':
      genome = plant_repeat(base, cfg.repeat_length, seed=_sub(seed, 6))
    R = simulate_reads(len(genome), cfg.read_length, cfg.coverage,
                       mate_gap_bp=cfg.mate_gap, k=cfg.k, seed=_sub(seed, 7),
                       genome=genome)
    A = read_similarity(R)
    truth = R.truth()
    rows.append(_measure(_row(cfg, run, seed, SPECTRAL, regime),
                         lambda: spectral_order(A), A, truth))
    acfg = AssemblyConfig(contig_size=cfg.contig_size,
                          solver=_solver(cfg, _sub(seed, 8), max_iters=200),
                          seed=seed)
    rows.append(_measure(_row(cfg, run, seed, FIEDLER_QP, regime),
                         lambda: assemble(R, acfg)[0], A, truth))
  return rows


def _ygen_run(cfg, run, seed):
  A, truth = synthetic_pre_r(cfg.n, cfg.n, noise_scale=0.5, seed=_sub(seed, 9))
  rows = []
  for ratio in cfg.p_ratios:
    p = max(1, int(round(ratio * cfg.n)))
    scfg = _solver(cfg, _sub(seed, 11), algorithm=relax_qp.APG, p_cols=p)
    rows.append(_measure(_row(cfg, run, seed, QP_REG, p_ratio=ratio),
                         lambda: relax_qp.solve(A, None, scfg), A, truth))
  return rows


_RUNNERS = {
    MARKOV: _markov_run,
    ARCHEO: _archeo_run,
    DNA: _dna_run,
    YGEN: _ygen_run,
}


def RunOne(task):
  """Worker entry point: task is (config, run index, seed)."""
  cfg, run, seed = task
  start = time.time()
  rows = _RUNNERS[cfg.name](cfg, run, seed)
  return rows, start, time.time()


def prepare(cfg):
  """Resolves the archeology dataset; warns when falling back."""
  if cfg.name != ARCHEO:
    return cfg
  data_dir = cfg.data_dir or os.environ.get(DATA_DIR_ENV)
  path = os.path.join(data_dir, MUNSINGEN_FILE) if data_dir else None
  if path and os.path.exists(path):
    cfg.munsingen = path
    return cfg
  if data_dir and not os.path.isdir(data_dir):
    raise DatasetMissingError('data directory %s does not exist' % data_dir)
  warnings.warn('%s not found under %s; running on synthetic consecutive-ones '
                'matrices instead' % (MUNSINGEN_FILE,
                                      data_dir or '$%s' % DATA_DIR_ENV),
                PropertyModeWarning, stacklevel=2)
  return cfg


def _fmt(v):
  if v is None:
    return ''
  if isinstance(v, float):
    return '%.17g' % v
  if isinstance(v, (np.floating,)):
    return '%.17g' % float(v)
  return str(v)


def _stats(values):
  vals = np.array([v for v in values if not math.isnan(v)], dtype=float)
  if vals.size == 0:
    return float('nan'), float('nan'), float('nan')
  sd = float(np.std(vals, ddof=1)) if vals.size > 1 else 0.0
  return float(np.median(vals)), float(np.mean(vals)), sd


def aggregate(rows):
  """Groups successful rows by (method, regime, fraction, p_ratio).

  Returns:
    list of dicts with AGGREGATE_FIELDS keys, in first-seen group order.
  """
  groups = {}
  order = []
  for r in rows:
    if r['status'] != OK:
      continue
    key = (r['experiment'],) + tuple(_fmt(r[k]) for k in KEY_FIELDS)
    if key not in groups:
      groups[key] = []
      order.append(key)
    groups[key].append(r)
  out = []
  for key in order:
    g = groups[key]
    agg = dict(zip(('experiment',) + KEY_FIELDS, key))
    agg['count'] = len(g)
    for m in METRICS:
      med, mean, sd = _stats(float(r[m]) for r in g)
      agg['%s_median' % m] = med
      agg['%s_mean' % m] = mean
      agg['%s_stdev' % m] = sd
    out.append(agg)
  return out


def _write_csv(path, fields, rows):
  with open(path, 'w', newline='') as fd:
    w = csv.DictWriter(fd, fieldnames=fields)
    w.writeheader()
    for r in rows:
      w.writerow({k: _fmt(r[k]) for k in fields})


def _read_csv(path):
  with open(path, newline='') as fd:
    return list(csv.DictReader(fd))


def write_results(out_dir, cfg, rows, seeds):
  if not os.path.isdir(out_dir):
    os.makedirs(out_dir)
  _write_csv(os.path.join(out_dir, RUNS_CSV), RUN_FIELDS, rows)
  _write_csv(os.path.join(out_dir, AGGREGATES_CSV), AGGREGATE_FIELDS,
             aggregate(rows))
  meta = {
      'config': cfg.ToDict(),
      'master_seed': cfg.seed,
      'run_seeds': seeds,
      'rows': len(rows),
      'failed_rows': sum(r['status'] != OK for r in rows),
  }
  with open(os.path.join(out_dir, RUN_JSON), 'w') as fd:
    json.dump(meta, fd, indent=2, sort_keys=True)
    fd.write('\n')


def _same(a, b):
  a, b = float(a), float(b)
  if math.isnan(a) or math.isnan(b):
    return math.isnan(a) and math.isnan(b)
  return abs(a - b) <= 1e-9 * max(1.0, abs(a), abs(b))


def load_results(out_dir):
  """Loads runs.csv and aggregates.csv and re-audits the aggregates.

  Returns:
    (rows, aggregates) as lists of dicts of strings.

  Raises:
    AggregateMismatchError: aggregates.csv does not follow from runs.csv.
  """
  rows = _read_csv(os.path.join(out_dir, RUNS_CSV))
  stored = _read_csv(os.path.join(out_dir, AGGREGATES_CSV))
  fresh = aggregate(rows)
  if len(fresh) != len(stored):
    raise AggregateMismatchError('%s: %d groups stored, %d recomputed'
                                 % (out_dir, len(stored), len(fresh)))
  for s, f in zip(stored, fresh):
    for k in ('experiment',) + KEY_FIELDS:
      if s[k] != f[k]:
        raise AggregateMismatchError('%s: group %s stored as %s'
                                     % (out_dir, f[k], s[k]))
    if int(s['count']) != f['count']:
      raise AggregateMismatchError('%s: count of %s is %s, recomputed %d'
                                   % (out_dir, f['method'], s['count'],
                                      f['count']))
    for k in AGGREGATE_FIELDS[len(KEY_FIELDS) + 2:]:
      if not _same(s[k], f[k]):
        raise AggregateMismatchError('%s: %s of %s is %s, recomputed %r'
                                     % (out_dir, k, f['method'], s[k], f[k]))
  return rows, stored


def run_experiment(cfg, jobs=1, callback=None):
  """Runs every seed of cfg, in parallel up to `jobs`.

  Args:
    cfg: ExperimentConfig, already prepared.
    jobs: worker processes.
    callback: optional callable(run, seed, rows, start, finish) invoked in
      run order.

  Returns:
    (rows, seeds)
  """
  seeds = [run_seed(cfg.seed, i) for i in range(cfg.runs)]
  tasks = [(cfg, i, s) for i, s in enumerate(seeds)]

  def done(i, result):
    if callback:
      rows, start, finish = result
      callback(i, seeds[i], rows, start, finish)

  rows = []
  for result in RunPool(RunOne, tasks, jobs, callback=done):
    rows.extend(result[0])
  return rows, seeds
