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

from seriate import datasets
from seriate import matrix_io
from seriate.command import Command
from seriate.constraints import save_constraints

PRE_R = 'pre-r'
MARKOV = 'markov'
KINDS = (PRE_R, MARKOV)


class Generate(Command):
  common = False
  helpSummary = "Write a synthetic similarity matrix and its true order"
  helpUsage = """
%prog [options] {pre-r|markov} --out <matrix> --truth <ordering>
"""
  helpDescription = """
'%prog' writes a randomly relabeled similarity matrix together with the
ordering that puts its items back in generating order.

 pre-r    conic sum of CUT matrices (strict Robinson profile when
          --cuts >= n - 1) with optional symmetric noise
 markov   absolute correlations of a Gaussian Markov chain, exact
          (--samples 0) or estimated from samples

With --constraints, pairwise order constraints sampled from the true
order (each pair kept with probability --p-frac) are written as well.
The matrix is written as MatrixMarket when the file name ends in .mtx.
"""

  def _Options(self, p):
    p.add_option('-o', '--out',
                 dest='out', metavar='FILE',
                 help='matrix file to write')
    p.add_option('--truth',
                 dest='truth', metavar='FILE',
                 help='true ordering file to write')
    p.add_option('-n', '--size',
                 dest='n', type='int', default=30,
                 help='number of items (default 30)')
    p.add_option('--cuts',
                 dest='cuts', type='int',
                 help='number of random CUT terms (pre-r, default n)')
    p.add_option('--noise',
                 dest='noise', type='float', default=0.0,
                 help='scale of the symmetric noise (pre-r)')
    p.add_option('--samples',
                 dest='samples', type='int', default=0,
                 help='chain samples, 0 for the exact model (markov)')
    p.add_option('--seed',
                 dest='seed', type='int', default=0,
                 help='random seed (default 0)')
    p.add_option('--constraints',
                 dest='constraints', metavar='FILE',
                 help='also write sampled order constraints to FILE')
    p.add_option('--p-frac',
                 dest='p_frac', type='float', default=0.1,
                 help='fraction of pairs kept as constraints')
    p.add_option('--error-rate',
                 dest='error_rate', type='float', default=0.0,
                 help='probability of flipping a sampled constraint')

  def ValidateOptions(self, opt, args):
    if len(args) != 1 or args[0] not in KINDS:
      self.Usage()
    if not opt.out or not opt.truth:
      self.OptionParser.error('--out and --truth are required')
    if opt.n < 2:
      self.OptionParser.error('--size must be at least 2')
    if opt.cuts is None:
      opt.cuts = opt.n

  def Execute(self, opt, args):
    if args[0] == PRE_R:
      A, truth = datasets.synthetic_pre_r(opt.n, opt.cuts,
                                          noise_scale=opt.noise,
                                          seed=opt.seed)
    else:
      spec = datasets.random_markov_spec(opt.n, samples=opt.samples,
                                         seed=opt.seed)
      A, truth = datasets.markov_similarity(spec, permute_seed=opt.seed + 1)
    matrix_io.write_matrix(opt.out, A)
    matrix_io.write_permutation(opt.truth, truth)
    if opt.constraints:
      specs = datasets.sample_order_constraints(truth, opt.p_frac,
                                                opt.error_rate,
                                                seed=opt.seed + 2)
      save_constraints(opt.constraints, specs)
    print('%s: wrote %d x %d matrix to %s' % (args[0], opt.n, opt.n, opt.out))
    return 0
