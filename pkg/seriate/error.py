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


class SeriateError(Exception):
  """Base class of every error raised by seriate.
  """

  def __init__(self, reason=None):
    super(SeriateError, self).__init__()
    self.reason = reason

  def __str__(self):
    if self.reason is None:
      return self.__class__.__name__
    return self.reason


class InvalidParameterError(SeriateError):
  """A parameter is outside of its documented range.
  """


class DimensionMismatchError(SeriateError):
  """Two operands do not have compatible shapes.
  """


class InvalidSimilarityError(SeriateError):
  """A similarity matrix is not square, symmetric and nonnegative.
  """


class InvalidPermutationError(SeriateError):
  """An ordering is not a bijection on 1..n.
  """


class NotUnimodalError(SeriateError):
  """A vector handed to the CUT decomposition is not unimodal.
  """


class DisconnectedGraphError(SeriateError):
  """The similarity graph has more than one connected component.
  """

  def __init__(self, value):
    super(DisconnectedGraphError, self).__init__(
        'similarity graph is disconnected (Fiedler value %.3g); '
        'split connected components first' % value)
    self.value = value


class ConvergenceFailureError(SeriateError):
  """An iterative solver exceeded its iteration cap or gave up.
  """


class RankDeficientError(SeriateError):
  """The constraint matrix D does not have full column rank.
  """


class InfeasibleMuError(SeriateError):
  """The regularization weight breaks convexity of the relaxation.
  """

  def __init__(self, mu, bound):
    super(InfeasibleMuError, self).__init__(
        'mu=%g exceeds the convexity bound %g' % (mu, bound))
    self.mu = mu
    self.bound = bound


class InfeasibleConstraintsError(SeriateError):
  """The ordering constraints admit no doubly stochastic solution.
  """


class NoConvergenceError(SeriateError):
  """Sinkhorn scaling did not reach doubly stochastic sums.
  """


class MatrixFormatError(SeriateError):
  """A matrix file could not be parsed.
  """


class ConstraintFormatError(SeriateError):
  """A constraint file line could not be parsed.
  """

  def __init__(self, path, lineno, line):
    super(ConstraintFormatError, self).__init__(
        '%s:%d: cannot parse constraint %r' % (path, lineno, line.strip()))
    self.path = path
    self.lineno = lineno


class DatasetMissingError(SeriateError):
  """A bundled dataset is not available under SERIATE_DATA_DIR.
  """


class AggregateMismatchError(SeriateError):
  """Stored experiment aggregates disagree with the per-run rows.
  """


class MultiplicityWarning(UserWarning):
  """The Fiedler value is (nearly) repeated or the vector has ties."""


class GapNotReachedWarning(UserWarning):
  """The projection stopped at its sweep cap above the gap tolerance."""


class IsolatedRowWarning(UserWarning):
  """A binary data matrix has an all-zero row."""


class SupportWarning(UserWarning):
  """Sinkhorn input has zero entries; convergence relies on total support."""


class PropertyModeWarning(UserWarning):
  """An experiment substituted synthetic data for a missing dataset."""
