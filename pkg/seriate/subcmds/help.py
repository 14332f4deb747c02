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

from __future__ import print_function
import re
import sys
import textwrap

from seriate.command import Command, EXIT_USAGE
from seriate.subcmds import all_commands


class Help(Command):
  common = False
  helpSummary = "Display detailed help on a command"
  helpUsage = """
%prog [--all|command]
"""
  helpDescription = """
Displays detailed usage information about a command.
"""

  def _PrintCommands(self, commandNames):
    """Helper to display |commandNames| summaries."""
    maxlen = 0
    for name in commandNames:
      maxlen = max(maxlen, len(name))
    fmt = '  %%-%ds  %%s' % maxlen

    for name in commandNames:
      command = all_commands[name]()
      try:
        summary = command.helpSummary.strip()
      except AttributeError:
        summary = ''
      print(fmt % (name, summary))

  def _PrintAllCommands(self):
    print('usage: seriate COMMAND [ARGS]')
    print('The complete list of recognized seriate commands are:')
    self._PrintCommands(sorted(all_commands))
    print("See 'seriate help <command>' for more information on a "
          'specific command.')

  def _PrintCommonCommands(self):
    print('usage: seriate COMMAND [ARGS]')
    print('The most commonly used seriate commands are:')
    self._PrintCommands(sorted(name for name, command in all_commands.items()
                               if command.common))
    print(
        "See 'seriate help <command>' for more information on a specific "
        "command.\n"
        "See 'seriate help --all' for a complete list of recognized commands.")

  def _PrintSection(self, cmd, heading, bodyAttr, header_prefix=''):
    body = getattr(cmd, bodyAttr, None)
    if not body:
      return
    print()
    print('%s%s' % (header_prefix, heading))
    print()
    body = body.strip().replace('%prog', 'seriate %s' % cmd.NAME)
    md_hdr = re.compile(r'^\n?#+ (.+)$')
    for para in body.split('\n\n'):
      if para.startswith(' '):
        print(para)
        print()
        continue
      m = md_hdr.match(para)
      if m:
        print('%s%s' % (header_prefix, m.group(1)))
        print()
        continue
      print(textwrap.fill(' '.join(para.split()), width=78))
      print()

  def _PrintCommandHelp(self, cmd, header_prefix=''):
    self._PrintSection(cmd, 'Summary', 'helpSummary', header_prefix)
    cmd.OptionParser.print_help()
    self._PrintSection(cmd, 'Description', 'helpDescription', header_prefix)

  def _PrintAllCommandHelp(self):
    for name in sorted(all_commands):
      cmd = all_commands[name]()
      self._PrintCommandHelp(cmd, header_prefix='[%s] ' % (name,))

  def _Options(self, p):
    p.add_option('-a', '--all',
                 dest='show_all', action='store_true',
                 help='show the complete list of commands')
    p.add_option('--help-all',
                 dest='show_all_help', action='store_true',
                 help='show the --help of all commands')

  def Execute(self, opt, args):
    if len(args) == 0:
      if opt.show_all_help:
        self._PrintAllCommandHelp()
      elif opt.show_all:
        self._PrintAllCommands()
      else:
        self._PrintCommonCommands()

    elif len(args) == 1:
      name = args[0]

      try:
        cmd = all_commands[name]()
      except KeyError:
        print("seriate: '%s' is not a seriate command." % name,
              file=sys.stderr)
        sys.exit(EXIT_USAGE)

      self._PrintCommandHelp(cmd)

    else:
      self._PrintCommandHelp(self)
