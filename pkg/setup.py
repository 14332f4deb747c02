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

from setuptools import setup, find_packages
with open("README.md", "r") as fh:
    long_description = fh.read()

setup(
  name="seriate",
  version="1.0.0",
  packages=find_packages(exclude=["tests"]),

  author="seriate contributors",
  description="Seriation of pairwise similarity data by spectral ordering and convex relaxations of 2-SUM.",
  long_description=long_description,
  long_description_content_type="text/markdown",
  license="Apache",
  keywords="seriation ordering fiedler 2-sum doubly-stochastic",
  # https://pypi.org/classifiers/
  classifiers=[
      'Development Status :: 4 - Beta',
      'Environment :: Console',
      'Intended Audience :: Science/Research',
      'License :: OSI Approved :: Apache Software License',
      'Natural Language :: English',
      'Operating System :: OS Independent',
      'Programming Language :: Python :: 3',
      'Topic :: Scientific/Engineering :: Mathematics',
  ],
  python_requires='>=3.7',
  install_requires=[
      'numpy>=1.20',
      'scipy>=1.6',
  ],
  entry_points={
    'console_scripts': [
      'seriate = seriate.main:main',
    ],
  }
)
