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

import optparse
import os
import sys

from seriate import relax_qp
from seriate.config import SeriateConfig
from seriate.event_log import EventLog

# optparse exits with this status on usage errors; I/O errors share it.
EXIT_USAGE = 2
EXIT_FAILURE = 1


class Command(object):
  """Base class for any command line action in seriate.
  """

  common = False
  event_log = EventLog()
  config = None
  _optparse = None

  def ReadEnvironmentOptions(self, opts):
    """ Set options from environment variables. """

    env_options = self._RegisteredEnvironmentOptions()

    for env_key, opt_key in env_options.items():
      # Get the user-set option value if any
      opt_value = getattr(opts, opt_key)

      # If the value is set, it means the user has passed it as a command
      # line option, and we should use that.  Otherwise we can try to set it
      # with the value from the corresponding environment variable.
      if opt_value is not None:
        continue

      env_value = os.environ.get(env_key)
      if env_value is not None:
        setattr(opts, opt_key, env_value)

    return opts

  @property
  def OptionParser(self):
    if self._optparse is None:
      try:
        me = 'seriate %s' % self.NAME
        usage = self.helpUsage.strip().replace('%prog', me)
      except AttributeError:
        usage = 'seriate %s' % self.NAME
      epilog = 'Run `seriate help %s` to view the detailed manual.' % self.NAME
      self._optparse = optparse.OptionParser(usage=usage, epilog=epilog)
      self._Options(self._optparse)
    return self._optparse

  def _Options(self, p):
    """Initialize the option parser.
    """

  def _RegisteredEnvironmentOptions(self):
    """Get options that can be set from environment variables.

    Return a dictionary mapping environment variable name
    to option key name that it can override.

    Example: {'SERIATE_JOBS': 'jobs'}

    Note: This does not work properly for options that are explicitly
    set to None by the user, or options that are defined with a
    default value other than None.
    """
    return {}

  def Usage(self):
    """Display usage and terminate.
    """
    self.OptionParser.print_usage()
    sys.exit(EXIT_USAGE)

  def ValidateOptions(self, opt, args):
    """Validate the user options & arguments before executing.

    This is meant to help break the code up into logical steps.  Some tips:
    * Use self.OptionParser.error to display CLI related errors.
    * Adjust opt member defaults as makes sense.
    * Adjust the args list, but do so inplace so the caller sees updates.
    * Try to avoid updating self state.  Leave that to Execute.
    """

  def Execute(self, opt, args):
    """Perform the action, after option parsing is complete.
    """
    raise NotImplementedError

  @property
  def Config(self):
    if self.config is None:
      self.config = SeriateConfig.ForUser()
    return self.config


class SolverCommand(Command):
  """A command that runs the relaxed solvers and takes their knobs."""

  def _SolverOptions(self, p):
    g = p.add_option_group('Solver options')
    g.add_option('--algorithm',
                 dest='algorithm', choices=relax_qp.ALGORITHMS,
                 help='relaxed solver: %s' % ', '.join(relax_qp.ALGORITHMS))
    g.add_option('--mu-frac',
                 dest='mu_fraction', type='float',
                 help='fraction of the convexity bound used as mu')
    g.add_option('--p-cols',
                 dest='p_cols', type='int',
                 help='columns of the perturbed weight matrix Y (default 4n)')
    g.add_option('--max-iters',
                 dest='max_iters', type='int',
                 help='solver iteration cap')
    g.add_option('--samples',
                 dest='samples', type='int',
                 help='permutations sampled when rounding')
    g.add_option('--seed',
                 dest='seed', type='int', default=0,
                 help='random seed (default 0)')

  def SolverConfig(self, opt, **overrides):
    """Builds a SolverConfig from flags, then the configuration file."""
    kwargs = self.Config.SolverOverrides()
    for field in ('algorithm', 'mu_fraction', 'p_cols', 'max_iters',
                  'samples'):
      v = getattr(opt, field, None)
      if v is not None:
        kwargs[field] = v
    kwargs['seed'] = opt.seed
    kwargs.update(overrides)
    return relax_qp.SolverConfig(**kwargs)

  def ValidateSolverOptions(self, opt):
    if opt.mu_fraction is not None and not 0.0 <= opt.mu_fraction <= 1.0:
      self.OptionParser.error('--mu-frac must lie in [0, 1]')
    for name in ('p_cols', 'max_iters', 'samples'):
      v = getattr(opt, name)
      if v is not None and v < 1:
        self.OptionParser.error('--%s must be positive'
                                % name.replace('_', '-'))
