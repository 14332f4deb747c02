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

"""Unittests for the experiments.py module."""

from __future__ import print_function

import csv
import json
import os
import shutil
import tempfile
import unittest
import warnings

import numpy as np

from seriate import core
from seriate import datasets
from seriate import error
from seriate import experiments
from seriate import metrics
from seriate import relax_qp
from seriate import spectral
from seriate.core import Permutation


def fixture(*paths):
  """Return a path relative to tests/fixtures.
  """
  return os.path.join(os.path.dirname(__file__), 'fixtures', *paths)


def _quick_solver():
  return relax_qp.SolverConfig(max_iters=20, samples=5)


def _scores(rows):
  return [(r['method'], r['p_ratio'], r['fraction'], r['tau'], r['objective'])
          for r in rows]


class SeedTest(unittest.TestCase):

  def test_run_seed(self):
    self.assertEqual(experiments.run_seed(7, 3), experiments.run_seed(7, 3))
    seeds = [experiments.run_seed(7, i) for i in range(20)]
    self.assertEqual(len(set(seeds)), 20)
    self.assertNotEqual(experiments.run_seed(7, 0), experiments.run_seed(8, 0))

  def test_config_validation(self):
    with self.assertRaises(error.InvalidParameterError):
      experiments.ExperimentConfig('netflix')
    with self.assertRaises(error.InvalidParameterError):
      experiments.ExperimentConfig(experiments.YGEN, runs=0)

  def test_config_defaults(self):
    cfg = experiments.ExperimentConfig(experiments.MARKOV)
    self.assertEqual(cfg.regimes, ['none', 'within', 'large'])
    self.assertEqual(cfg.fractions, list(experiments.MARKOV_FRACTIONS))
    d = cfg.ToDict()
    self.assertIn('fractions', d)
    self.assertNotIn('p_ratios', d)


class RunTest(unittest.TestCase):
  """Tests small experiment runs."""

  def test_ygen(self):
    cfg = experiments.ExperimentConfig(experiments.YGEN, runs=2, seed=1, n=8,
                                       p_ratios=(0.5, 1.0),
                                       solver=_quick_solver())
    seen = []
    rows, seeds = experiments.run_experiment(
        cfg, callback=lambda run, seed, r, start, finish: seen.append(run))
    self.assertEqual(len(rows), 4)
    self.assertEqual(seen, [0, 1])
    self.assertEqual(seeds, [experiments.run_seed(1, 0),
                             experiments.run_seed(1, 1)])
    for r in rows:
      self.assertEqual(r['status'], experiments.OK)
      self.assertEqual(r['method'], experiments.QP_REG)
      self.assertLessEqual(abs(r['tau']), 1.0)

  def test_ygen_beats_random_orders(self):
    cfg = experiments.ExperimentConfig(experiments.YGEN, runs=1, seed=3, n=8,
                                       p_ratios=(0.5, 2.0),
                                       solver=relax_qp.SolverConfig(
                                           max_iters=300, samples=20))
    rows, seeds = experiments.run_experiment(cfg)
    self.assertEqual(rows[0]['mu'], 0.0)
    self.assertGreater(rows[1]['mu'], 0.0)
    A, truth = datasets.synthetic_pre_r(8, 8, noise_scale=0.5,
                                        seed=experiments._sub(seeds[0], 9))
    rng = np.random.default_rng(0)
    objs = []
    taus = []
    for _ in range(200):
      p = Permutation.from_index(rng.permutation(8))
      objs.append(core.two_sum_objective(A, p))
      taus.append(metrics.kendall_tau(p, truth, orient=True))
    for r in rows:
      self.assertEqual(r['status'], experiments.OK)
      self.assertLess(r['objective'], np.mean(objs))
    self.assertGreater(np.mean([r['tau'] for r in rows]), np.mean(taus))

  def test_ygen_is_deterministic(self):
    cfg = experiments.ExperimentConfig(experiments.YGEN, runs=1, seed=4, n=7,
                                       p_ratios=(1.0,), solver=_quick_solver())
    a, _ = experiments.run_experiment(cfg)
    b, _ = experiments.run_experiment(cfg)
    self.assertEqual(_scores(a), _scores(b))

  def test_single_run_replays(self):
    cfg = experiments.ExperimentConfig(experiments.YGEN, runs=2, seed=4, n=7,
                                       p_ratios=(1.0,), solver=_quick_solver())
    rows, seeds = experiments.run_experiment(cfg)
    replay, _, _ = experiments.RunOne((cfg, 1, seeds[1]))
    self.assertEqual(_scores(replay), _scores(rows[1:]))

  def test_markov(self):
    cfg = experiments.ExperimentConfig(experiments.MARKOV, runs=1, seed=2, n=8,
                                       regimes=['none'], fractions=[1.0],
                                       solver=_quick_solver())
    rows, _ = experiments.run_experiment(cfg)
    self.assertEqual([r['method'] for r in rows],
                     [experiments.SPECTRAL, experiments.QP_REG,
                      experiments.QP_SEMI])
    self.assertEqual(rows[2]['fraction'], 1.0)
    for r in rows:
      self.assertEqual(r['status'], experiments.OK)
    self.assertAlmostEqual(rows[0]['tau'], 1.0)
    self.assertAlmostEqual(rows[2]['tau'], 1.0)
    self.assertAlmostEqual(rows[2]['threshold'], np.log(8) / 8)
    self.assertGreater(rows[1]['mu'], 0.0)
    self.assertEqual(rows[0]['mu'], '')


class ResultsTest(unittest.TestCase):
  """Tests the result files and their audit."""

  def setUp(self):
    self.tempdir = tempfile.mkdtemp(prefix='seriate_tests')
    self.out = os.path.join(self.tempdir, 'out')
    self.cfg = experiments.ExperimentConfig(experiments.YGEN, runs=2, n=6,
                                            p_ratios=(1.0,),
                                            solver=_quick_solver())
    self.rows = []
    for run, tau in enumerate((0.5, 1.0)):
      r = experiments._row(self.cfg, run, 100 + run, experiments.QP_REG,
                           p_ratio=1.0)
      r.update(tau=tau, rho=tau, objective=10.0 + run, r_violations=run)
      self.rows.append(r)
    failed = experiments._row(self.cfg, 2, 102, experiments.QP_REG,
                              p_ratio=1.0)
    failed['status'] = 'NoConvergenceError: sweep cap'
    self.rows.append(failed)

  def tearDown(self):
    shutil.rmtree(self.tempdir, ignore_errors=True)

  def test_aggregate(self):
    agg = experiments.aggregate(self.rows)
    self.assertEqual(len(agg), 1)
    self.assertEqual(agg[0]['count'], 2)
    self.assertAlmostEqual(agg[0]['tau_median'], 0.75)
    self.assertAlmostEqual(agg[0]['objective_mean'], 10.5)
    self.assertAlmostEqual(agg[0]['tau_stdev'], 0.5 ** 0.5 / 2)

  def test_round_trip(self):
    experiments.write_results(self.out, self.cfg, self.rows, [100, 101, 102])
    rows, agg = experiments.load_results(self.out)
    self.assertEqual(len(rows), 3)
    self.assertEqual(agg[0]['count'], '2')
    with open(os.path.join(self.out, experiments.RUN_JSON)) as fd:
      meta = json.load(fd)
    self.assertEqual(meta['run_seeds'], [100, 101, 102])
    self.assertEqual(meta['failed_rows'], 1)
    self.assertEqual(meta['config']['name'], experiments.YGEN)

  def test_tampered_aggregates(self):
    experiments.write_results(self.out, self.cfg, self.rows, [100, 101, 102])
    path = os.path.join(self.out, experiments.AGGREGATES_CSV)
    with open(path, newline='') as fd:
      stored = list(csv.DictReader(fd))
    stored[0]['tau_mean'] = '0.9'
    with open(path, 'w', newline='') as fd:
      w = csv.DictWriter(fd, fieldnames=experiments.AGGREGATE_FIELDS)
      w.writeheader()
      w.writerows(stored)
    with self.assertRaises(error.AggregateMismatchError):
      experiments.load_results(self.out)


class PrepareTest(unittest.TestCase):
  """Tests locating the archeology dataset."""

  def setUp(self):
    self.tempdir = tempfile.mkdtemp(prefix='seriate_tests')

  def tearDown(self):
    shutil.rmtree(self.tempdir, ignore_errors=True)

  def test_missing_directory(self):
    cfg = experiments.ExperimentConfig(
        experiments.ARCHEO, data_dir=os.path.join(self.tempdir, 'nope'))
    with self.assertRaises(error.DatasetMissingError):
      experiments.prepare(cfg)

  def test_synthetic_fallback(self):
    cfg = experiments.ExperimentConfig(experiments.ARCHEO,
                                       data_dir=self.tempdir)
    with warnings.catch_warnings(record=True) as caught:
      warnings.simplefilter('always')
      experiments.prepare(cfg)
    self.assertIsNone(cfg.munsingen)
    self.assertTrue(any(issubclass(w.category, error.PropertyModeWarning)
                        for w in caught))
    self.assertEqual(cfg.ToDict()['data'], 'synthetic')

  def test_found(self):
    shutil.copy(fixture('binary.csv'),
                os.path.join(self.tempdir, experiments.MUNSINGEN_FILE))
    cfg = experiments.ExperimentConfig(experiments.ARCHEO,
                                       data_dir=self.tempdir)
    experiments.prepare(cfg)
    self.assertEqual(cfg.munsingen,
                     os.path.join(self.tempdir, experiments.MUNSINGEN_FILE))

  def test_other_experiments_untouched(self):
    cfg = experiments.ExperimentConfig(experiments.YGEN)
    self.assertIs(experiments.prepare(cfg), cfg)


def _column(rows, key, **match):
  return [r[key] for r in rows
          if all(r[k] == v for k, v in match.items())]


class EndToEndTest(unittest.TestCase):
  """Headline results on reduced trial counts."""

  def test_spectral_exact_on_noiseless_chains(self):
    for seed in range(20):
      spec = datasets.random_markov_spec(30, samples=0, seed=seed)
      A, truth = datasets.markov_similarity(spec, permute_seed=seed + 100)
      p = spectral.spectral_order(A)
      self.assertAlmostEqual(metrics.kendall_tau(p, truth, orient=True), 1.0)

  def test_constraints_lift_noisy_chains(self):
    cfg = experiments.ExperimentConfig(
        experiments.MARKOV, runs=5, seed=11, n=30, regimes=['large'],
        fractions=[0.002, 0.543, 1.0],
        solver=relax_qp.SolverConfig(max_iters=100, samples=50))
    rows, _ = experiments.run_experiment(cfg)
    self.assertEqual(len(rows), 25)
    for r in rows:
      self.assertEqual(r['status'], experiments.OK)
    full = _column(rows, 'tau', method=experiments.QP_SEMI, fraction=1.0)
    half = _column(rows, 'tau', method=experiments.QP_SEMI, fraction=0.543)
    sparse = _column(rows, 'tau', method=experiments.QP_SEMI, fraction=0.002)
    np.testing.assert_allclose(full, 1.0)
    self.assertGreaterEqual(np.median(half), 0.9)
    self.assertGreaterEqual(np.median(half), np.median(sparse))

  def test_spectral_exact_on_clean_reads(self):
    for seed in range(3):
      R = datasets.simulate_reads(1500, 100, 6, k=16, seed=seed)
      A = datasets.read_similarity(R).toarray()
      with warnings.catch_warnings():
        warnings.simplefilter('ignore', error.MultiplicityWarning)
        p = spectral.spectral_order(A)
      self.assertAlmostEqual(
          metrics.kendall_tau(p, R.truth(), orient=True), 1.0)

  def test_dna_pipeline(self):
    cfg = experiments.ExperimentConfig(
        experiments.DNA, runs=1, seed=5, genome_length=1500, read_length=100,
        coverage=6, mate_gap=300, k=16, repeat_length=150, contig_size=30,
        solver=relax_qp.SolverConfig(max_iters=100, samples=10))
    rows, _ = experiments.run_experiment(cfg)
    self.assertEqual([(r['regime'], r['method']) for r in rows],
                     [('clean', experiments.SPECTRAL),
                      ('clean', experiments.FIEDLER_QP),
                      ('repeat', experiments.SPECTRAL),
                      ('repeat', experiments.FIEDLER_QP)])
    for r in rows:
      self.assertEqual(r['status'], experiments.OK)
      self.assertLessEqual(abs(r['tau']), 1.0)

  def test_more_columns_lower_objective(self):
    cfg = experiments.ExperimentConfig(
        experiments.YGEN, runs=5, seed=6, n=10, p_ratios=(0.2, 5.0),
        solver=relax_qp.SolverConfig(max_iters=300, samples=20))
    rows, _ = experiments.run_experiment(cfg)
    narrow = _column(rows, 'objective', p_ratio=0.2)
    wide = _column(rows, 'objective', p_ratio=5.0)
    self.assertEqual(len(narrow), 5)
    self.assertLessEqual(np.mean(wide), np.mean(narrow))
