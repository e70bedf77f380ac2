"""Exact-arithmetic toolkit for local constants of modular forms.

Kernels: cyclotomic field arithmetic over exact rationals, truncated p-adic
arithmetic in ramified-over-unramified towers (the valuation oracle), unit
characters and Gauss sums / epsilon factors, GL(2) local Whittaker-newform
valuation tables, cusp combinatorics on X0(N), and the resulting global
Fourier-coefficient bounds and Manin-constant divisibility reports.
"""

__version__ = "0.1.0"
