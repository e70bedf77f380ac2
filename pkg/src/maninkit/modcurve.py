"""Cusp combinatorics of X_0(N) and its mod-p fiber components.

Cusps are classed by a denominator L | N; each class carries a width and
a count, and reduces mod p to a component indexed by the pair
(val_p(L), val_p(N/L)).  The component knows its ramification index and
different valuation, and the two combine into the threshold that decides
when a weight-k form stays integral along the cusp.
"""

from dataclasses import dataclass
from math import gcd

from sympy import divisors, totient

from .padic import ExtRational
from fractions import Fraction

__all__ = [
    "CuspClass", "Component", "width", "cusp_count", "component_of_cusp",
    "ram_index", "different_val", "integrality_threshold", "cusp_number",
    "cusp_table",
]


def _check_divisor(N, L):
    if N < 1 or L < 1 or N % L:
        raise ValueError("the denominator must be a positive divisor of N")


def _val(p, n):
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


@dataclass(frozen=True, slots=True)
class CuspClass:
    """A class of cusps on X_0(N), keyed by its denominator L | N."""

    N: int
    L: int

    def __post_init__(self):
        _check_divisor(self.N, self.L)

    def width(self):
        return width(self.N, self.L)

    def count(self):
        return cusp_count(self.N, self.L)

    def component(self, p):
        return component_of_cusp(p, self.N, self.L)


@dataclass(frozen=True, slots=True)
class Component:
    """Component of the mod-p fiber, indexed by an exponent pair."""

    p: int
    a: int
    b: int

    def __post_init__(self):
        if self.a < 0 or self.b < 0:
            raise ValueError("component exponents are nonnegative")


def width(N, L):
    """Width of the cusps of denominator L on X_0(N)."""
    _check_divisor(N, L)
    return N // gcd(L * L, N)


def cusp_count(N, L):
    """Number of cusps of denominator L on X_0(N)."""
    _check_divisor(N, L)
    return int(totient(gcd(L, N // L)))


def component_of_cusp(p, N, L):
    """The fiber component a cusp of denominator L reduces to mod p."""
    _check_divisor(N, L)
    return Component(p, _val(p, L), _val(p, N // L))


def _as_pair(comp):
    if isinstance(comp, Component):
        return comp.a, comp.b
    a, b = comp
    return a, b


def ram_index(p, comp):
    """Ramification index of the (a, b) component over the base."""
    a, b = _as_pair(comp)
    m = min(a, b)
    return p ** (m - 1) * (p - 1) if m else 1


def different_val(p, comp):
    """Valuation (in t-adic units on the component) of the different."""
    a, b = _as_pair(comp)
    if a == 0:
        return b
    if b == 0:
        return 0
    return p ** (min(a, b) - 1) * (p * b - b - 1)


def integrality_threshold(p, valN, valL):
    """Largest valuation drop a weight-2 form may show at the cusp class
    (valL, valN) and still extend over the component integrally."""
    if not 0 <= valL <= valN:
        raise ValueError("need 0 <= valL <= valN")
    if valL == 0:
        return ExtRational(-valN)
    if valL == valN:
        return ExtRational(0)
    return ExtRational(-(valN - valL) + Fraction(1, p - 1))


def cusp_number(N):
    """Total number of cusps of X_0(N)."""
    if N < 1:
        raise ValueError("N must be positive")
    return sum(cusp_count(N, L) for L in divisors(N))


def cusp_table(N, p=None):
    """Rows (L, width, count, component, ram index, different valuation)
    for every denominator; the component entries need a chosen p."""
    rows = []
    for L in divisors(N):
        row = {"L": L, "width": width(N, L), "count": cusp_count(N, L)}
        if p is not None:
            comp = component_of_cusp(p, N, L)
            row["component"] = (comp.a, comp.b)
            row["ram_index"] = ram_index(p, comp)
            row["different"] = different_val(p, comp)
        rows.append(row)
    return rows
