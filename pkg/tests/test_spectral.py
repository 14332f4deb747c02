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

"""Unittests for the spectral.py module."""

from __future__ import print_function

import unittest
import warnings

import numpy as np
import scipy.sparse as sp

from seriate import core
from seriate import datasets
from seriate import error
from seriate import spectral


def path_graph(n):
  return np.eye(n, k=1) + np.eye(n, k=-1)


class FiedlerTest(unittest.TestCase):
  """Tests the Fiedler pair."""

  def test_path_value(self):
    res = spectral.fiedler(path_graph(4))
    self.assertAlmostEqual(res.value, 2 - np.sqrt(2), places=10)
    self.assertEqual(res.method, spectral.DENSE)

  def test_vector_normalization(self):
    res = spectral.fiedler(path_graph(6))
    v = res.vector
    self.assertAlmostEqual(np.linalg.norm(v), 1.0, places=10)
    self.assertAlmostEqual(v.sum(), 0.0, places=10)
    self.assertLess(v[0], 0)

  def test_iterative_matches_dense(self):
    A = path_graph(40) + 0.01 * np.ones((40, 40))
    np.fill_diagonal(A, 0)
    dense = spectral.fiedler(A, method=spectral.DENSE)
    lanczos = spectral.fiedler(sp.csr_matrix(A), method=spectral.ITERATIVE,
                               seed=1)
    self.assertEqual(lanczos.method, spectral.ITERATIVE)
    self.assertAlmostEqual(lanczos.value, dense.value, places=6)
    self.assertGreater(abs(lanczos.vector.dot(dense.vector)), 1 - 1e-6)

  def test_disconnected(self):
    A = np.zeros((4, 4))
    A[0, 1] = A[1, 0] = 1
    A[2, 3] = A[3, 2] = 1
    with self.assertRaises(error.DisconnectedGraphError):
      spectral.fiedler(A)

  def test_repeated_value(self):
    K = np.ones((4, 4)) - np.eye(4)
    res = spectral.fiedler(K)
    self.assertTrue(res.multiplicity_warning)

  def test_unknown_method(self):
    with self.assertRaises(error.InvalidParameterError):
      spectral.fiedler(path_graph(3), method='qr')

  def test_too_small(self):
    with self.assertRaises(error.InvalidParameterError):
      spectral.fiedler(np.zeros((1, 1)))


class SpectralOrderTest(unittest.TestCase):
  """Tests ordering by the Fiedler vector."""

  def test_path_is_identity(self):
    self.assertTrue(spectral.spectral_order(path_graph(5)).is_identity())

  def test_recovers_pre_r(self):
    A, truth = datasets.synthetic_pre_r(25, 25, seed=4)
    p = spectral.spectral_order(A)
    self.assertTrue(core.is_r_matrix(core.reorder(A, p))[0])
    self.assertTrue(p == truth or p == truth.reversed())

  def test_sparse_input(self):
    A, _ = datasets.synthetic_pre_r(12, 12, seed=2)
    self.assertEqual(spectral.spectral_order(sp.csr_matrix(A)),
                     spectral.spectral_order(A))

  def test_single_item(self):
    self.assertTrue(spectral.spectral_order(np.zeros((1, 1))).is_identity())

  def test_multiplicity_warning(self):
    K = np.ones((4, 4)) - np.eye(4)
    with warnings.catch_warnings(record=True) as caught:
      warnings.simplefilter('always')
      p = spectral.spectral_order(K)
    self.assertEqual(p.n, 4)
    self.assertTrue(any(issubclass(w.category, error.MultiplicityWarning)
                        for w in caught))
