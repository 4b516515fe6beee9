"""
radicsum
========

The ``radicsum`` package implements a two-term closed form for the sum of the
r'th roots of the first n natural numbers, brute-force oracles for all sums
involved, and the numerical machinery to check the factorial and
hyperfactorial formulas derived from it.
"""
from radicsum.version import __version__
