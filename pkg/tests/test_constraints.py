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

"""Unittests for the constraints.py module."""

from __future__ import print_function

import itertools
import os
import shutil
import tempfile
import unittest

import numpy as np

from seriate import constraints
from seriate import error
from seriate.constraints import DistanceSpec, OrderSpec
from seriate.core import Permutation


def fixture(*paths):
  """Return a path relative to tests/fixtures.
  """
  return os.path.join(os.path.dirname(__file__), 'fixtures', *paths)


class BuildConstraintsTest(unittest.TestCase):
  """Tests the (D, delta) materialization."""

  def test_symmetry_column_only(self):
    cs = constraints.build_constraints(4)
    self.assertEqual(cs.D.shape, (4, 1))
    np.testing.assert_array_equal(cs.D[:, 0], [1, 0, 0, -1])
    np.testing.assert_array_equal(cs.delta, [1])
    self.assertEqual(len(cs), 0)

  def test_order_column(self):
    cs = constraints.build_constraints(4, [OrderSpec(1, 3)])
    self.assertEqual(cs.num_columns, 2)
    np.testing.assert_array_equal(cs.D[:, 1], [1, 0, -1, 0])
    self.assertEqual(cs.delta[1], 1)

  def test_violations(self):
    cs = constraints.build_constraints(4, [OrderSpec(1, 3)])
    ident = Permutation.identity(4)
    self.assertEqual(cs.violations(ident), 0)
    self.assertTrue(cs.is_satisfied(ident))
    rev = ident.reversed()
    self.assertEqual(cs.violations(rev), 2)
    self.assertEqual(cs.spec_violations(rev), 1)

  def test_order_is_strict(self):
    cs = constraints.build_constraints(3, [OrderSpec(3, 1)])
    # Item 3 right before item 1 is enough.
    self.assertEqual(cs.spec_violations(Permutation([2, 3, 1])), 0)
    self.assertEqual(cs.spec_violations(Permutation([1, 2, 3])), 1)

  def test_distance_bounds(self):
    cs = constraints.build_constraints(5, [DistanceSpec(4, 2, 1, 2)])
    self.assertEqual(cs.num_columns, 3)
    self.assertEqual(cs.spec_violations(Permutation([1, 2, 3, 4, 5])), 0)
    self.assertEqual(cs.spec_violations(Permutation([2, 1, 3, 5, 4])), 1)
    self.assertEqual(cs.spec_violations(Permutation([1, 4, 2, 3, 5])), 1)

  def test_rank(self):
    cs = constraints.build_constraints(4, [OrderSpec(1, 2)])
    self.assertTrue(cs.has_full_rank())
    cs = constraints.build_constraints(4, [OrderSpec(1, 2), OrderSpec(2, 1)])
    self.assertEqual(cs.column_rank(), 2)
    self.assertFalse(cs.has_full_rank())

  def test_invalid_specs(self):
    for spec in (OrderSpec(1, 1), OrderSpec(0, 2), OrderSpec(1, 5),
                 DistanceSpec(1, 2, 3, 1)):
      with self.assertRaises(error.InvalidParameterError):
        constraints.build_constraints(4, [spec])

  def test_too_small(self):
    with self.assertRaises(error.InvalidParameterError):
      constraints.build_constraints(1)

  def test_to_dict(self):
    cs = constraints.build_constraints(4, [OrderSpec(1, 3)])
    self.assertEqual(cs.ToDict(), {'n': 4, 'constraints': ['ord 1 3']})


class ConstraintGraphTest(unittest.TestCase):
  """Tests the order-column graph: cycles and implied columns."""

  def test_order_edges(self):
    cs = constraints.build_constraints(
        4, [OrderSpec(2, 3), DistanceSpec(4, 1, 2, 3)])
    self.assertEqual(cs.order_edges(), [(0, 0, 3), (1, 1, 2)])
    self.assertTrue(cs.has_distance_columns())
    self.assertFalse(constraints.build_constraints(
        4, [OrderSpec(2, 3)]).has_distance_columns())

  def test_contradiction(self):
    cs = constraints.build_constraints(4, [OrderSpec(2, 3), OrderSpec(3, 2)])
    self.assertEqual(set(cs.contradiction()), {2, 3})
    cs = constraints.build_constraints(4, [OrderSpec(4, 1)])
    self.assertEqual(set(cs.contradiction()), {1, 4})
    cs = constraints.build_constraints(4, [OrderSpec(2, 3), OrderSpec(3, 4)])
    self.assertIsNone(cs.contradiction())

  def test_full_order_reduces_to_chain(self):
    n = 5
    specs = [OrderSpec(i, j) for i in range(1, n + 1)
             for j in range(i + 1, n + 1)]
    full = constraints.build_constraints(n, specs)
    small = full.reduced()
    self.assertEqual(small.num_columns, n - 1)
    self.assertTrue(small.has_full_rank())
    for ix in itertools.permutations(range(n)):
      p = Permutation.from_index(ix)
      self.assertEqual(small.is_satisfied(p), full.is_satisfied(p))

  def test_duplicates_dropped(self):
    cs = constraints.build_constraints(4, [OrderSpec(1, 3), OrderSpec(1, 3)])
    self.assertEqual(cs.essential_columns(), [0, 1])

  def test_distance_columns_kept(self):
    cs = constraints.build_constraints(
        5, [OrderSpec(1, 2), OrderSpec(2, 5), DistanceSpec(4, 3, 2, 3)])
    self.assertEqual(cs.essential_columns(), [1, 2, 3, 4])
    self.assertEqual(cs.reduced().specs, cs.specs)


class ConstraintFileTest(unittest.TestCase):
  """Tests reading and writing constraint files."""

  def setUp(self):
    self.tempdir = tempfile.mkdtemp(prefix='seriate_tests')

  def tearDown(self):
    shutil.rmtree(self.tempdir)

  def test_parse(self):
    self.assertEqual(constraints.parse_constraint('ord 2 5'), OrderSpec(2, 5))
    self.assertEqual(constraints.parse_constraint(' dist 1 2 0.5 3 # x'),
                     DistanceSpec(1, 2, 0.5, 3))
    self.assertIsNone(constraints.parse_constraint('   # nothing'))
    with self.assertRaises(ValueError):
      constraints.parse_constraint('ord 1')

  def test_load(self):
    specs = constraints.load_constraints(fixture('constraints.txt'))
    self.assertEqual(specs, [OrderSpec(1, 3), DistanceSpec(4, 2, 1, 3)])

  def test_load_bad_line(self):
    with self.assertRaises(error.ConstraintFormatError) as ctx:
      constraints.load_constraints(fixture('bad_constraints.txt'))
    self.assertEqual(ctx.exception.lineno, 2)
    self.assertIn('after 2 4', str(ctx.exception))

  def test_save(self):
    path = os.path.join(self.tempdir, 'c.txt')
    specs = [OrderSpec(3, 1), DistanceSpec(2, 4, 1, 2.5)]
    constraints.save_constraints(path, specs)
    with open(path) as fd:
      self.assertEqual(fd.read(), 'ord 3 1\ndist 2 4 1 2.5\n')
    self.assertEqual(constraints.load_constraints(path), specs)
