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

"""Persistent defaults for seriate commands.

The file is INI-style:

  [solver]
      algorithm = frank_wolfe
      mu-fraction = 0.5

  [experiment]
      runs = 20

and keys are looked up as `section.name`.
"""

import configparser
import os

from seriate.trace import Trace

CONFIG_ENV = 'SERIATE_CONFIG'

# Keys read by the commands, mapped to SolverConfig fields.
SOLVER_KEYS = {
    'solver.algorithm': ('algorithm', 'string'),
    'solver.mu-fraction': ('mu_fraction', 'float'),
    'solver.max-iters': ('max_iters', 'int'),
    'solver.tolerance': ('tolerance', 'float'),
    'solver.projection-tol': ('projection_tol', 'float'),
    'solver.projection-max-iters': ('projection_max_iters', 'int'),
    'solver.projection-method': ('projection_method', 'string'),
    'solver.p-cols': ('p_cols', 'int'),
    'solver.noise-scale': ('noise_scale', 'float'),
    'rounding.samples': ('samples', 'int'),
}


def _key(name):
  parts = name.split('.')
  if len(parts) < 2:
    return name.lower()
  return '.'.join(p.strip().lower() for p in parts)


class SeriateConfig(object):
  _ForUser = None

  _USER_CONFIG = '~/.seriateconfig'

  @classmethod
  def ForUser(cls):
    """The user's configuration, chained to $SERIATE_CONFIG when set."""
    if cls._ForUser is None:
      user = cls(configfile=os.path.expanduser(cls._USER_CONFIG))
      env = os.environ.get(CONFIG_ENV)
      if env:
        user = cls(configfile=os.path.expanduser(env), defaults=user)
      cls._ForUser = user
    return cls._ForUser

  def __init__(self, configfile, defaults=None):
    self.file = configfile
    self.defaults = defaults
    self._cache_dict = None

  def Has(self, name, include_defaults=True):
    """Return true if this configuration file has the key.
    """
    if _key(name) in self._cache:
      return True
    if include_defaults and self.defaults:
      return self.defaults.Has(name, include_defaults=True)
    return False

  def GetString(self, name):
    """Get the value for a key, or None if it is not defined.

       This configuration file is used first; if the key is not defined
       the defaults are searched.
    """
    try:
      v = self._cache[_key(name)]
    except KeyError:
      if self.defaults:
        return self.defaults.GetString(name)
      return None
    if not v:
      return None
    return v

  def GetInt(self, name):
    """Returns an integer, or None if undefined or not an integer."""
    v = self.GetString(name)
    if v is None:
      return None
    try:
      return int(v.strip(), 0)
    except ValueError:
      return None

  def GetFloat(self, name):
    v = self.GetString(name)
    if v is None:
      return None
    try:
      return float(v.strip())
    except ValueError:
      return None

  def GetBoolean(self, name):
    """Returns a boolean from the configuration file.
       None : The value was not defined, or is not a boolean.
       True : The value was set to true or yes.
       False: The value was set to false or no.
    """
    v = self.GetString(name)
    if v is None:
      return None
    v = v.lower()
    if v in ('true', 'yes', 'on', '1'):
      return True
    if v in ('false', 'no', 'off', '0'):
      return False
    return None

  def Get(self, name, kind):
    return {
        'string': self.GetString,
        'int': self.GetInt,
        'float': self.GetFloat,
        'bool': self.GetBoolean,
    }[kind](name)

  def SolverOverrides(self):
    """SolverConfig keyword arguments defined in this configuration."""
    out = {}
    for key, (field, kind) in SOLVER_KEYS.items():
      v = self.Get(key, kind)
      if v is not None:
        out[field] = v
    return out

  @property
  def _cache(self):
    if self._cache_dict is None:
      self._cache_dict = self._Read()
    return self._cache_dict

  def _Read(self):
    d = {}
    if not os.path.exists(self.file):
      return d
    Trace('parsing %s', self.file)
    parser = configparser.ConfigParser(interpolation=None,
                                       allow_no_value=True)
    try:
      parser.read(self.file)
    except configparser.Error as e:
      Trace('ignoring unreadable %s: %s', self.file, e)
      return d
    for section in parser.sections():
      for name, value in parser.items(section):
        d[_key('%s.%s' % (section, name))] = value
    return d
