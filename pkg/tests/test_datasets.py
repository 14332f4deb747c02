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

"""Unittests for the datasets.py module."""

from __future__ import print_function

import os
import tempfile
import unittest
import warnings

import numpy as np

from seriate import core
from seriate import datasets
from seriate import error
from seriate.constraints import build_constraints
from seriate.core import Permutation


def fixture(*paths):
  """Return a path relative to tests/fixtures.
  """
  return os.path.join(os.path.dirname(__file__), 'fixtures', *paths)


class MarkovTest(unittest.TestCase):
  """Tests the Gaussian Markov chain similarities."""

  def test_exact_is_strict_r_in_chain_order(self):
    spec = datasets.random_markov_spec(10, seed=1)
    A, truth = datasets.markov_similarity(spec, permute_seed=2)
    B = core.reorder(A, truth)
    self.assertTrue(core.is_r_matrix(B, strict=True)[0])
    np.testing.assert_allclose(np.diag(B), 1.0)
    np.testing.assert_allclose(A, A.T)

  def test_sampled_is_close_to_exact(self):
    exact = datasets.random_markov_spec(6, seed=3)
    sampled = datasets.MarkovChainSpec(6, exact.b, exact.sigma, samples=20000,
                                       seed=4)
    A, truth = datasets.markov_similarity(exact, permute_seed=5)
    B, truth2 = datasets.markov_similarity(sampled, permute_seed=5)
    self.assertEqual(truth, truth2)
    self.assertLess(np.abs(A - B).max(), 0.05)

  def test_invalid(self):
    with self.assertRaises(error.InvalidParameterError):
      datasets.MarkovChainSpec(3, [0.5, 0.5], [1.0, -1.0])
    with self.assertRaises(error.InvalidParameterError):
      datasets.MarkovChainSpec(3, [0.5, 0.5], [1.0, 1.0], samples=1)


class ConstraintSamplingTest(unittest.TestCase):
  """Tests sampled pairwise order constraints."""

  def test_all_pairs_agree_with_truth(self):
    truth = Permutation([3, 1, 4, 2, 5])
    specs = datasets.sample_order_constraints(truth, 1.0, seed=0)
    self.assertEqual(len(specs), 10)
    pos = truth.positions()
    for s in specs:
      self.assertLess(pos[s.i - 1], pos[s.j - 1])
    self.assertEqual(build_constraints(5, specs).violations(truth), 0)

  def test_reversed_truth_stays_feasible(self):
    truth = Permutation([5, 2, 4, 1, 3])
    specs = datasets.sample_order_constraints(truth, 1.0, seed=0)
    self.assertEqual(build_constraints(5, specs).violations(truth.reversed()), 0)

  def test_errors_flip(self):
    truth = Permutation.identity(6)
    specs = datasets.sample_order_constraints(truth, 1.0, error_rate=1.0)
    self.assertTrue(all(s.i > s.j for s in specs))

  def test_empty(self):
    self.assertEqual(
        datasets.sample_order_constraints(Permutation.identity(5), 0.0), [])

  def test_deterministic(self):
    truth = Permutation.identity(20)
    a = datasets.sample_order_constraints(truth, 0.2, seed=7)
    b = datasets.sample_order_constraints(truth, 0.2, seed=7)
    self.assertEqual(a, b)

  def test_connectivity_threshold(self):
    self.assertAlmostEqual(datasets.connectivity_threshold(100),
                           np.log(100) / 100)

  def test_constraint_regime(self):
    above = datasets.constraint_regime(100, 0.1)
    self.assertAlmostEqual(above['threshold'], np.log(100) / 100)
    self.assertTrue(above['above_threshold'])
    self.assertAlmostEqual(above['expected_pairs'], 495.0)
    self.assertFalse(datasets.constraint_regime(100, 0.01)['above_threshold'])
    self.assertFalse(datasets.constraint_regime(1, 1.0)['above_threshold'])

  def test_invalid(self):
    with self.assertRaises(error.InvalidParameterError):
      datasets.sample_order_constraints(Permutation.identity(3), 1.5)


class SyntheticTest(unittest.TestCase):
  """Tests the synthetic pre-R and consecutive-ones generators."""

  def test_pre_r_strict(self):
    A, truth = datasets.synthetic_pre_r(12, 12, seed=1)
    self.assertTrue(core.is_r_matrix(core.reorder(A, truth), strict=True)[0])

  def test_pre_r_weak(self):
    A, truth = datasets.synthetic_pre_r(12, 3, seed=1)
    self.assertTrue(core.is_r_matrix(core.reorder(A, truth))[0])

  def test_pre_r_noise_keeps_symmetry(self):
    A, _ = datasets.synthetic_pre_r(10, 10, noise_scale=0.3, seed=2)
    np.testing.assert_allclose(A, A.T)
    self.assertGreaterEqual(A.min(), 0)

  def test_c1p(self):
    C, truth = datasets.synthetic_c1p(rows=20, cols=15, flip_rate=0.0, seed=3)
    self.assertEqual(C.shape, (20, 15))
    self.assertTrue(core.is_p_matrix(C[truth.index]))
    self.assertTrue(np.all(C.sum(axis=1) > 0))

  def test_c1p_noisy_rows_not_empty(self):
    C, _ = datasets.synthetic_c1p(rows=20, cols=15, flip_rate=0.5, seed=3)
    self.assertTrue(np.all(C.sum(axis=1) > 0))


class BinaryMatrixTest(unittest.TestCase):
  """Tests load_binary_matrix."""

  def test_header_and_labels(self):
    C = datasets.load_binary_matrix(fixture('binary.csv'))
    np.testing.assert_array_equal(C, [[1, 1, 0], [0, 1, 1], [0, 0, 1]])

  def test_nonbinary(self):
    with self.assertRaises(error.MatrixFormatError):
      datasets.load_binary_matrix(fixture('nonbinary.csv'))

  def test_ragged(self):
    with self.assertRaises(error.MatrixFormatError):
      datasets.load_binary_matrix(fixture('ragged.csv'))

  def test_connected_rows_do_not_warn(self):
    with warnings.catch_warnings(record=True) as caught:
      warnings.simplefilter('always')
      C = datasets.load_binary_matrix(fixture('path4.csv'))
    self.assertEqual(C.shape, (4, 4))
    self.assertFalse(caught)

  def test_empty_row_warns(self):
    with tempfile.TemporaryDirectory() as tempdir:
      path = os.path.join(tempdir, 'empty.csv')
      with open(path, 'w') as fd:
        fd.write('1,1\n0,0\n0,1\n')
      with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter('always')
        C = datasets.load_binary_matrix(path)
    self.assertEqual(C.shape, (3, 2))
    self.assertTrue(any(issubclass(w.category, error.IsolatedRowWarning)
                        for w in caught))


class GenomeTest(unittest.TestCase):
  """Tests genomes and simulated reads."""

  def test_random_genome_is_repeat_free(self):
    g = datasets.random_genome(500, k=10, seed=1)
    self.assertEqual(len(g), 500)
    kmers = [g[i:i + 10] for i in range(491)]
    self.assertEqual(len(set(kmers)), len(kmers))

  def test_plant_repeat(self):
    g = datasets.random_genome(400, k=10, seed=2)
    r = datasets.plant_repeat(g, 50, seed=3)
    self.assertEqual(len(r), 400)
    kmers = [r[i:i + 10] for i in range(391)]
    self.assertLess(len(set(kmers)), len(kmers))

  def test_plant_repeat_too_long(self):
    with self.assertRaises(error.InvalidParameterError):
      datasets.plant_repeat('ACGT' * 10, 30)

  def test_read_fasta(self):
    self.assertEqual(datasets.read_fasta(fixture('genome.fa')),
                     'ACGTTGCAACGTAC')

  def test_simulate_reads(self):
    R = datasets.simulate_reads(600, 60, 8, k=12, seed=4)
    self.assertEqual(len(R), 80)
    self.assertEqual(R.read_length, 60)
    self.assertEqual(R.C.shape[0], 80)
    self.assertEqual(len(set(R.positions().tolist())), 80)
    A = datasets.read_similarity(R)
    self.assertEqual(A.shape, (80, 80))
    # Shared k-mers fall with the distance between read starts.
    B = core.reorder(A.toarray(), R.truth())
    self.assertTrue(core.is_r_matrix(B)[0])

  def test_mate_pairs(self):
    R = datasets.simulate_reads(800, 60, 10, mate_gap_bp=200, k=12, seed=5)
    self.assertEqual(len(R) % 2, 0)
    self.assertEqual(len(R.mate_pairs), len(R) // 2)
    pos = R.positions()
    for i, j, gap in R.mate_pairs:
      self.assertEqual(pos[j - 1] - pos[i - 1], 200)
      self.assertEqual(gap, 200)

  def test_simulate_invalid(self):
    with self.assertRaises(error.InvalidParameterError):
      datasets.simulate_reads(600, 10, 8, k=12)
