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

"""Reading and writing similarity matrices, orderings and reports.

Dense matrices are CSV files, one row per line.  Sparse symmetric matrices
use the MatrixMarket coordinate format (*.mtx).  Orderings hold one 1-based
item index per line.
"""

from __future__ import print_function

import csv
import json
import os

import numpy as np
import scipy.io
import scipy.sparse as sp

from seriate.core import Permutation
from seriate.error import InvalidPermutationError
from seriate.error import MatrixFormatError
from seriate.trace import Trace

MTX_SUFFIXES = ('.mtx', '.mm')


def _is_mtx(path):
  return os.path.splitext(path)[1].lower() in MTX_SUFFIXES


def read_dense_csv(path):
  try:
    with open(path, newline='') as fd:
      rows = [r for r in csv.reader(fd) if r and any(c.strip() for c in r)]
  except IOError as e:
    raise MatrixFormatError('cannot read %s: %s' % (path, e.strerror or e))
  if not rows:
    raise MatrixFormatError('%s: no data' % path)
  width = len(rows[0])
  data = []
  for lineno, r in enumerate(rows, 1):
    if len(r) != width:
      raise MatrixFormatError('%s: row %d has %d entries, expected %d'
                              % (path, lineno, len(r), width))
    try:
      data.append([float(c) for c in r])
    except ValueError:
      raise MatrixFormatError('%s: row %d is not numeric' % (path, lineno))
  return np.array(data)


def write_dense_csv(path, A):
  if sp.issparse(A):
    A = A.toarray()
  with open(path, 'w', newline='') as fd:
    w = csv.writer(fd)
    for row in np.asarray(A):
      w.writerow(['%.17g' % v for v in row])


def read_matrix(path):
  """Loads a square similarity matrix from a CSV or MatrixMarket file.

  Returns:
    ndarray for CSV input, csr_matrix for MatrixMarket input.

  Raises:
    MatrixFormatError: the file is missing, malformed or not square.
  """
  Trace('reading matrix %s', path)
  if _is_mtx(path):
    try:
      A = scipy.io.mmread(path)
    except (IOError, OSError) as e:
      raise MatrixFormatError('cannot read %s: %s' % (path, e))
    except ValueError as e:
      raise MatrixFormatError('%s: %s' % (path, e))
    A = sp.csr_matrix(A, dtype=float)
  else:
    A = read_dense_csv(path)
  if A.ndim != 2 or A.shape[0] != A.shape[1]:
    raise MatrixFormatError('%s: matrix is %s, expected square'
                            % (path, 'x'.join(str(d) for d in A.shape)))
  return A


def write_matrix(path, A):
  if _is_mtx(path):
    # Symmetric MatrixMarket files hold the lower triangle only.
    A = sp.tril(sp.coo_matrix(A, dtype=float)).tocoo()
    scipy.io.mmwrite(path, A, symmetry='symmetric')
  else:
    write_dense_csv(path, A)


def read_permutation(path):
  """Reads one 1-based index per line; '#' starts a comment."""
  order = []
  try:
    with open(path) as fd:
      for lineno, line in enumerate(fd, 1):
        line = line.split('#', 1)[0].strip()
        if not line:
          continue
        try:
          order.append(int(line))
        except ValueError:
          raise MatrixFormatError('%s:%d: not an index: %r'
                                  % (path, lineno, line))
  except IOError as e:
    raise MatrixFormatError('cannot read %s: %s' % (path, e.strerror or e))
  try:
    return Permutation(order)
  except InvalidPermutationError as e:
    raise MatrixFormatError('%s: %s' % (path, e))


def write_permutation(path, p):
  with open(path, 'w') as fd:
    for i in p.order:
      print(int(i), file=fd)


def _jsonable(o):
  if isinstance(o, np.integer):
    return int(o)
  if isinstance(o, np.floating):
    return float(o)
  if isinstance(o, np.ndarray):
    return o.tolist()
  if isinstance(o, Permutation):
    return o.tolist()
  raise TypeError('%s is not JSON serializable' % type(o).__name__)


def write_report(path, report):
  with open(path, 'w') as fd:
    json.dump(report, fd, indent=2, sort_keys=True, default=_jsonable)
    fd.write('\n')


def read_report(path):
  with open(path) as fd:
    return json.load(fd)
