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

import multiprocessing
import signal
import sys


class WorkerKeyboardInterrupt(Exception):
  """ Keyboard interrupt exception for worker processes. """
  pass


def InitWorker():
  signal.signal(signal.SIGINT, signal.SIG_IGN)


def DoWorkWrapper(args):
  """ A wrapper around the work function.

  Catch the KeyboardInterrupt exceptions here and re-raise them as a different,
  ``Exception``-based exception to stop it flooding the console with stacktraces
  and making the parent hang indefinitely.

  """
  func, item = args
  try:
    return func(item)
  except KeyboardInterrupt:
    print('%s: Worker interrupted' % (func.__name__,), file=sys.stderr)
    raise WorkerKeyboardInterrupt()


def RunPool(func, items, jobs=1, callback=None):
  """Applies a picklable module-level `func` to every item.

  Results come back in input order whatever the completion order.  With
  jobs <= 1 the work runs in this process.

  Args:
    func: function of one argument.
    items: iterable of arguments.
    jobs: number of worker processes.
    callback: optional callable(index, result) run in the parent as each
      result arrives.

  Returns:
    List of results.
  """
  items = list(items)
  results = []
  if jobs is None or jobs <= 1 or len(items) <= 1:
    for i, item in enumerate(items):
      r = func(item)
      results.append(r)
      if callback:
        callback(i, r)
    return results

  pool = multiprocessing.Pool(min(jobs, len(items)), InitWorker)
  try:
    results_it = pool.imap(DoWorkWrapper, [(func, it) for it in items])
    pool.close()
    for i, r in enumerate(results_it):
      results.append(r)
      if callback:
        callback(i, r)
  except (KeyboardInterrupt, WorkerKeyboardInterrupt):
    # Catch KeyboardInterrupt raised inside and outside of workers
    print('Interrupted - terminating the pool', file=sys.stderr)
    pool.terminate()
    raise
  except Exception as e:
    print('Got an error, terminating the pool: %s: %s' %
          (type(e).__name__, e),
          file=sys.stderr)
    pool.terminate()
    raise
  finally:
    pool.join()
  return results
