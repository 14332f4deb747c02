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

import os

from seriate import experiments
from seriate.command import SolverCommand
from seriate.datasets import read_fasta
from seriate.progress import Progress


def _floats(value):
  return [float(v) for v in value.split(',') if v.strip()]


class Experiment(SolverCommand):
  common = True
  helpSummary = "Run a seeded experiment and tabulate its results"
  helpUsage = """
%prog [options] {markov|archeo|dna|ygen} --out <dir>
"""
  helpDescription = """
'%prog' runs one of the experiments over a series of seeds and writes
runs.csv (one row per run and method), aggregates.csv (median, mean and
standard deviation of Kendall's tau, Spearman's rho, the 2-SUM objective
and the R-matrix violation count per method) and run.json (configuration
and seeds) under the output directory.

Run seeds are derived from --seed and the run index, so every row can be
replayed alone.  Rows are written in run order whatever --jobs is.

# Experiments

 markov   Gaussian Markov chains; spectral, unconstrained QP and QP with
          a fraction of the true pairwise orders, under three noise
          regimes (none, within, large)
 archeo   grave x artifact matrix munsingen.csv under $SERIATE_DATA_DIR
          (rows in reference order); without it, synthetic noisy
          consecutive-ones matrices are used and a notice is printed
 dna      simulated shotgun reads on a repeat-free genome and on one
          with a planted repeat; spectral against the contig pipeline
          with mate-pair constraints
 ygen     objective of the rounded QP solution as the width p of the
          perturbed weight matrix grows
"""

  def _Options(self, p):
    p.add_option('-o', '--out',
                 dest='out', metavar='DIR',
                 help='output directory')
    p.add_option('-r', '--runs',
                 dest='runs', type='int',
                 help='number of seeded runs (default 20)')
    p.add_option('-j', '--jobs',
                 dest='jobs', type='int',
                 help='parallel runs (default 1, or $SERIATE_JOBS)')
    p.add_option('--p-frac',
                 dest='fractions', metavar='F1,F2,...',
                 help='constraint fractions (markov, archeo)')
    p.add_option('--error-rate',
                 dest='error_rate', type='float', default=0.0,
                 help='probability of flipping a sampled constraint')
    p.add_option('--noise',
                 dest='noise', action='append', metavar='REGIME',
                 help='markov noise regime: none, within or large; dna '
                 'regime: clean or repeat (repeatable)')
    p.add_option('-n', '--size',
                 dest='n', type='int', default=30,
                 help='number of variables (markov, ygen)')
    p.add_option('--p-ratios',
                 dest='p_ratios', metavar='R1,R2,...',
                 help='Y widths p/n to sweep (ygen)')
    p.add_option('--data-dir',
                 dest='data_dir', metavar='DIR',
                 help='dataset directory (default $SERIATE_DATA_DIR)')
    p.add_option('--genome',
                 dest='genome', metavar='FASTA',
                 help='genome to sample reads from (dna)')
    p.add_option('--genome-length',
                 dest='genome_length', type='int', default=10000,
                 help='random genome length in bp (dna)')
    p.add_option('--coverage',
                 dest='coverage', type='float', default=20,
                 help='read coverage (dna)')
    self._SolverOptions(p)

  def _RegisteredEnvironmentOptions(self):
    return {'SERIATE_JOBS': 'jobs',
            experiments.DATA_DIR_ENV: 'data_dir'}

  def ValidateOptions(self, opt, args):
    if len(args) != 1:
      self.Usage()
    if args[0] not in experiments.EXPERIMENTS:
      self.OptionParser.error('unknown experiment %r; choose one of %s'
                              % (args[0], ', '.join(experiments.EXPERIMENTS)))
    if not opt.out:
      self.OptionParser.error('--out is required')
    if opt.runs is None:
      opt.runs = self.Config.GetInt('experiment.runs') or 20
    if opt.jobs is None:
      opt.jobs = self.Config.GetInt('experiment.jobs') or 1
    try:
      opt.jobs = int(opt.jobs)
    except ValueError:
      self.OptionParser.error('--jobs must be an integer')
    if opt.runs < 1 or opt.jobs < 1:
      self.OptionParser.error('--runs and --jobs must be positive')
    if not 0.0 <= opt.error_rate <= 1.0:
      self.OptionParser.error('--error-rate must lie in [0, 1]')
    try:
      if opt.fractions is not None:
        opt.fractions = _floats(opt.fractions)
      if opt.p_ratios is not None:
        opt.p_ratios = _floats(opt.p_ratios)
    except ValueError:
      self.OptionParser.error('--p-frac and --p-ratios take comma separated '
                              'numbers')
    if opt.fractions and not all(0.0 <= f <= 1.0 for f in opt.fractions):
      self.OptionParser.error('--p-frac values must lie in [0, 1]')
    regimes = {experiments.MARKOV: [r for r, _ in experiments.NOISE_REGIMES],
               experiments.DNA: list(experiments.DNA_REGIMES)}.get(args[0])
    if opt.noise and (regimes is None or
                      any(r not in regimes for r in opt.noise)):
      self.OptionParser.error('--noise takes %s for %s'
                              % (', '.join(regimes or ['nothing']), args[0]))
    self.ValidateSolverOptions(opt)

  def Execute(self, opt, args):
    kwargs = dict(runs=opt.runs, seed=opt.seed, n=opt.n,
                  regimes=opt.noise, fractions=opt.fractions,
                  error_rate=opt.error_rate, solver=self.SolverConfig(opt),
                  data_dir=opt.data_dir, genome_length=opt.genome_length,
                  coverage=opt.coverage)
    if opt.p_ratios:
      kwargs['p_ratios'] = opt.p_ratios
    if opt.genome:
      kwargs['genome'] = read_fasta(opt.genome)
    # Warns with PropertyModeWarning when archeo falls back to synthetic data.
    cfg = experiments.prepare(experiments.ExperimentConfig(args[0], **kwargs))

    pm = Progress('Running %s' % cfg.name, cfg.runs, units=' runs')

    def done(run, seed, rows, start, finish):
      ok = all(r['status'] == experiments.OK for r in rows)
      self.event_log.AddRun(cfg.name, seed, start, finish, ok, run=run,
                            rows=len(rows))
      pm.update(msg='seed %d' % seed)

    rows, seeds = experiments.run_experiment(cfg, opt.jobs, callback=done)
    pm.end()
    experiments.write_results(opt.out, cfg, rows, seeds)
    experiments.load_results(opt.out)

    failed = sum(r['status'] != experiments.OK for r in rows)
    print('%s: %d runs, %d rows (%d failed) written to %s' % (
        cfg.name, cfg.runs, len(rows), failed, os.path.abspath(opt.out)))
    return 0
