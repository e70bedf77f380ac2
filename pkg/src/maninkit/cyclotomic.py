"""Exact arithmetic in cyclotomic fields Q(zeta_M).

CycNum stores an element of Q(zeta_M) as its phi(M) coordinates in the power
basis modulo the M-th cyclotomic polynomial, so equality testing is
canonical.  ScaledCyclotomic additionally carries a symbolic half-integer
power of a prime power q: Gauss sums and epsilon factors of odd conductor
live in q**(1/2) * Q(zeta), and the half power is materialized exactly (via
quadratic Gauss sums) only when an equality test needs it.

Everything here is exact.  The only floating point is cyc_complex_embed,
and the root-of-unity detector uses it solely to pick a candidate exponent
that is then verified exactly.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm

import mpmath
import numpy as np
from sympy import divisors, factorint

__all__ = [
    "CycNum",
    "ScaledCyclotomic",
    "cyc_arith",
    "cyc_complex_embed",
    "cyc_from_root",
    "cyc_is_root_of_unity",
    "cyclotomic_polynomial",
    "from_terms",
    "phi",
    "sqrt_prime",
    "sqrt_prime_power",
    "zeta",
]

_PHI_POLY: dict[int, tuple[int, ...]] = {}
_ZETA_CACHE: dict[tuple[int, int], "CycNum"] = {}
_SQRT_CACHE: dict[int, "CycNum"] = {}


def _exact_div_int(num, den):
    # exact division of integer polynomials (low degree first), den monic
    num = list(num)
    dn = len(den) - 1
    nz = [(j, den[j]) for j in range(dn) if den[j]]
    q = [0] * (len(num) - dn)
    for i in range(len(q) - 1, -1, -1):
        c = num[i + dn]
        if c:
            q[i] = c
            num[i + dn] = 0
            for j, dc in nz:
                num[i + j] -= c * dc
    if any(num):
        raise ArithmeticError("polynomial division was not exact")
    return q


def cyclotomic_polynomial(M):
    """Coefficients of Phi_M (low degree first, integer, monic).

    Built by iterated exact division of x^M - 1 by Phi_d over the proper
    divisors d of M; results are cached.
    """
    pol = _PHI_POLY.get(M)
    if pol is None:
        if M < 1:
            raise ValueError("modulus must be positive")
        if M == 1:
            pol = (-1, 1)
        else:
            cur = [-1] + [0] * (M - 1) + [1]
            for d in divisors(M)[:-1]:
                cur = _exact_div_int(cur, cyclotomic_polynomial(d))
            pol = tuple(cur)
        _PHI_POLY[M] = pol
    return pol


def phi(M):
    """Euler phi, read off as deg Phi_M."""
    return len(cyclotomic_polynomial(M)) - 1


def _reduce_mod_phi(coeffs, M):
    # reduce a low-first coefficient list modulo Phi_M; length becomes phi(M)
    pol = cyclotomic_polynomial(M)
    deg = len(pol) - 1
    c = list(coeffs)
    if len(c) < deg:
        c.extend([0] * (deg - len(c)))
    nz = [(j, -pol[j]) for j in range(deg) if pol[j]]
    for i in range(len(c) - 1, deg - 1, -1):
        ci = c[i]
        if ci:
            c[i] = 0
            base = i - deg
            for j, mc in nz:
                c[base + j] += ci * mc
    del c[deg:]
    return c


def _norm(x):
    if isinstance(x, bool):
        raise TypeError("bool is not a coefficient")
    if isinstance(x, int):
        return x
    if isinstance(x, Fraction):
        return int(x) if x.denominator == 1 else x
    raise TypeError(f"exact rational coefficient required, got {type(x).__name__}")


def _convolve(a, b):
    # product of two low-first coefficient lists; numpy int64 fast path
    if all(isinstance(x, int) for x in a) and all(isinstance(x, int) for x in b):
        ma = max((abs(x) for x in a), default=0)
        mb = max((abs(x) for x in b), default=0)
        if ma and mb and ma * mb * min(len(a), len(b)) < 2**62:
            out = np.convolve(np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64))
            return out.tolist()
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] += x * y
    return out


def _poly_divmod(num, den):
    # quotient/remainder over Q, den not necessarily monic
    num = [Fraction(x) for x in num]
    den = [Fraction(x) for x in den]
    while den and den[-1] == 0:
        den.pop()
    if not den:
        raise ZeroDivisionError("polynomial division by zero")
    dn = len(den) - 1
    if len(num) <= dn:
        return [], num
    inv_lead = 1 / den[-1]
    q = [Fraction(0)] * (len(num) - dn)
    for i in range(len(q) - 1, -1, -1):
        c = num[i + dn] * inv_lead
        if c:
            q[i] = c
            for j, dc in enumerate(den):
                num[i + j] -= c * dc
    while num and num[-1] == 0:
        num.pop()
    return q, num


class CycNum:
    """An element of Q(zeta_M): modulus M plus phi(M) exact coordinates."""

    __slots__ = ("M", "c")

    def __init__(self, M, coeffs):
        coeffs = [_norm(x) for x in coeffs]
        if len(coeffs) > phi(M):
            coeffs = _reduce_mod_phi(coeffs, M)
        elif len(coeffs) < phi(M):
            coeffs = coeffs + [0] * (phi(M) - len(coeffs))
        object.__setattr__(self, "M", M)
        object.__setattr__(self, "c", tuple(_norm(Fraction(x)) for x in coeffs))

    def __setattr__(self, *a):
        raise AttributeError("CycNum is immutable")

    @classmethod
    def _make(cls, M, reduced):
        self = object.__new__(cls)
        object.__setattr__(self, "M", M)
        object.__setattr__(self, "c", tuple(reduced))
        return self

    # -- predicates ----------------------------------------------------

    def is_zero(self):
        return not any(self.c)

    def is_algebraic_integer(self):
        # Z[zeta_M] is the full ring of integers, so this test is exact
        return all(isinstance(x, int) for x in self.c)

    def rational_value(self):
        """The element as a Fraction if it is rational, else None."""
        if any(self.c[1:]):
            return None
        return Fraction(self.c[0])

    # -- modulus plumbing ----------------------------------------------

    def to_modulus(self, M2):
        if M2 == self.M:
            return self
        if M2 % self.M:
            raise ValueError("new modulus must be a multiple of the old one")
        k = M2 // self.M
        return from_terms(M2, {i * k: co for i, co in enumerate(self.c) if co})

    def _aligned(self, other):
        if self.M == other.M:
            return self, other
        L = lcm(self.M, other.M)
        return self.to_modulus(L), other.to_modulus(L)

    # -- arithmetic ----------------------------------------------------

    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = self._aligned(other)
        return CycNum._make(a.M, [_norm(Fraction(x) + Fraction(y)) for x, y in zip(a.c, b.c)])

    __radd__ = __add__

    def __neg__(self):
        return CycNum._make(self.M, [-x for x in self.c])

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return -(self - other)

    def __mul__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = self._aligned(other)
        prod = _convolve(list(a.c), list(b.c))
        return CycNum._make(a.M, [_norm(Fraction(x)) for x in _reduce_mod_phi(prod, a.M)])

    __rmul__ = __mul__

    def inv(self):
        """Multiplicative inverse via extended Euclid against Phi_M."""
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        r0 = list(cyclotomic_polynomial(self.M))
        r1 = list(self.c)
        while r1 and r1[-1] == 0:
            r1.pop()
        t0, t1 = [], [Fraction(1)]
        while len(r1) > 1:
            q, r = _poly_divmod(r0, r1)
            r0, r1 = r1, r
            qt = _convolve(q, t1) if q and t1 else []
            nt = [Fraction(x) for x in t0] + [Fraction(0)] * max(0, len(qt) - len(t0))
            for i, x in enumerate(qt):
                nt[i] -= x
            t0, t1 = t1, nt
        if not r1:
            raise ArithmeticError("element shares a factor with Phi_M")
        c = Fraction(r1[0])
        return CycNum(self.M, [Fraction(x) / c for x in t1])

    def __truediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        r = other.rational_value()
        if r is not None:
            if r == 0:
                raise ZeroDivisionError("division by zero")
            return CycNum._make(self.M, [_norm(Fraction(x) / r) for x in self.c])
        return self * other.inv()

    def __rtruediv__(self, other):
        return _coerce(other) / self

    def __pow__(self, n):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inv() ** (-n)
        out = CycNum._make(self.M, (1,) + (0,) * (phi(self.M) - 1))
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base if n > 1 else base
            n >>= 1
        return out

    # -- structure maps ------------------------------------------------

    def galois(self, u):
        """Apply the automorphism zeta_M -> zeta_M^u (u coprime to M)."""
        if gcd(u, self.M) != 1:
            raise ValueError("galois exponent must be coprime to the modulus")
        return from_terms(self.M, {(i * u) % self.M: co for i, co in enumerate(self.c) if co})

    def conj(self):
        return self.galois(-1 % self.M if self.M > 1 else 1)

    # -- comparisons ---------------------------------------------------

    def __eq__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = self._aligned(other)
        return a.c == b.c

    def __ne__(self, other):
        eq = self.__eq__(other)
        return eq if eq is NotImplemented else not eq

    __hash__ = None  # no canonical cross-modulus form, so no hashing

    # -- output --------------------------------------------------------

    def embed(self, digits=30):
        """Complex value at zeta_M = exp(2 pi i / M) to roughly `digits`."""
        with mpmath.workdps(digits + 10):
            total = mpmath.mpc(0)
            for i, co in enumerate(self.c):
                if co:
                    f = Fraction(co)
                    w = mpmath.mpf(f.numerator) / f.denominator
                    total += w * mpmath.expjpi(mpmath.mpf(2 * i) / self.M)
        return total

    def __repr__(self):
        return f"CycNum({self.M}, {list(self.c)!r})"


def _coerce(x):
    if isinstance(x, CycNum):
        return x
    if isinstance(x, bool):
        return NotImplemented
    if isinstance(x, (int, Fraction)):
        return CycNum._make(1, (_norm(x),))
    return NotImplemented


def from_terms(M, terms):
    """Build sum of coeff * zeta_M^exp from an {exp: coeff} mapping."""
    dense = [0] * max(M, 1)
    for e, co in terms.items():
        dense[e % M] = dense[e % M] + co
    return CycNum(M, dense)


def zeta(M, j=1):
    """zeta_M^j, reduced modulo Phi_M."""
    key = (M, j % M)
    z = _ZETA_CACHE.get(key)
    if z is None:
        z = from_terms(M, {key[1]: 1})
        _ZETA_CACHE[key] = z
    return z


# spec-facing functional aliases ------------------------------------------


def cyc_from_root(M, j):
    if M < 1:
        raise ValueError("modulus must be positive")
    return zeta(M, j)


def cyc_arith(a, b, op):
    a, b = _coerce(a), _coerce(b)
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown op {op!r}")


def cyc_complex_embed(a, digits=30):
    return _coerce(a).embed(digits)


def cyc_is_root_of_unity(a):
    """(order, exponent) with a = zeta_order^exponent, or None.

    Exact: a root of unity in Q(zeta_M) is alpha = +-zeta_M^j, i.e. a power
    of zeta_cap with cap = M (M even) or 2M (M odd).  We first test the two
    exact necessary conditions (algebraic integer, a * conj(a) == 1), which
    together are also sufficient here (all archimedean absolute values are 1
    since the Galois group commutes with conjugation), then locate the
    exponent by a numerically guided guess verified exactly, falling back to
    an exhaustive scan.
    """
    a = _coerce(a)
    if a.is_zero() or not a.is_algebraic_integer():
        return None
    r = a.rational_value()
    if r is not None:
        if r == 1:
            return (1, 0)
        if r == -1:
            return (2, 1)
        return None
    if a * a.conj() != 1:
        return None
    M = a.M
    cap = M if M % 2 == 0 else 2 * M

    def power_of_cap(j):
        j %= cap
        if cap == M:
            return zeta(M, j)
        # cap == 2M with M odd: zeta_2M = -zeta_M^((M+1)/2)
        val = zeta(M, (j * ((M + 1) // 2)) % M)
        return -val if j % 2 else val

    z = a.embed(25)
    guess = int(mpmath.nint(mpmath.arg(z) / (2 * mpmath.pi) * cap))
    for j in range(guess - 2, guess + 3):
        if a == power_of_cap(j):
            g = gcd(j % cap, cap)
            return (cap // g, ((j % cap) // g) % (cap // g))
    for j in range(cap):  # exhaustive fallback; guaranteed to hit by the above
        if a == power_of_cap(j):
            g = gcd(j, cap)
            return (cap // g, (j // g) % (cap // g))
    raise AssertionError("unit of modulus one did not match any root of unity")


# exact square roots -------------------------------------------------------


def _legendre(a, p):
    t = pow(a % p, (p - 1) // 2, p)
    return -1 if t == p - 1 else t


def sqrt_prime(p):
    """sqrt(p) as an exact cyclotomic number.

    sqrt(2) = zeta_8 + zeta_8^-1; for odd p the quadratic Gauss sum
    g = sum_a (a|p) zeta_p^a satisfies g = sqrt(p) for p = 1 mod 4 and
    g = i sqrt(p) for p = 3 mod 4.
    """
    got = _SQRT_CACHE.get(p)
    if got is not None:
        return got
    if p == 2:
        out = zeta(8, 1) + zeta(8, 7)
    else:
        g = from_terms(p, {a: _legendre(a, p) for a in range(1, p)})
        out = g if p % 4 == 1 else -zeta(4, 1) * g
    _SQRT_CACHE[p] = out
    return out


def sqrt_prime_power(q):
    """sqrt(q) for a prime power q, exactly."""
    fac = factorint(q)
    if len(fac) != 1:
        raise ValueError("prime power required")
    ((p, f),) = fac.items()
    out = CycNum(1, [p ** (f // 2)])
    if f % 2:
        out = out * sqrt_prime(p)
    return out


class ScaledCyclotomic:
    """unit * qbase**qexp with unit cyclotomic and qexp a half-integer."""

    __slots__ = ("unit", "qbase", "qexp")

    def __init__(self, unit, qbase, qexp=0):
        unit = _coerce(unit)
        if unit is NotImplemented:
            raise TypeError("unit must be cyclotomic or exact rational")
        qexp = Fraction(qexp)
        if qexp.denominator not in (1, 2):
            raise ValueError("scale exponent must be a half-integer")
        if unit.is_zero():
            qexp = Fraction(0)
        object.__setattr__(self, "unit", unit)
        object.__setattr__(self, "qbase", qbase)
        object.__setattr__(self, "qexp", qexp)

    def __setattr__(self, *a):
        raise AttributeError("ScaledCyclotomic is immutable")

    def is_zero(self):
        return self.unit.is_zero()

    def as_cyc(self):
        """Materialize into a plain CycNum (half powers become sqrt values)."""
        m = self.qexp.numerator // self.qexp.denominator
        out = self.unit * (Fraction(self.qbase) ** m)
        if self.qexp - m:
            out = out * sqrt_prime_power(self.qbase)
        return out

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, CycNum)):
            other = ScaledCyclotomic(other, self.qbase, 0)
        if not isinstance(other, ScaledCyclotomic):
            return NotImplemented
        if self.is_zero() or other.is_zero():
            return self.is_zero() and other.is_zero()
        if self.qbase == other.qbase:
            d = self.qexp - other.qexp
            if d.denominator == 1:
                return self.unit * (Fraction(self.qbase) ** d) == other.unit
        return self.as_cyc() == other.as_cyc()

    def __ne__(self, other):
        eq = self.__eq__(other)
        return eq if eq is NotImplemented else not eq

    __hash__ = None

    def __neg__(self):
        return ScaledCyclotomic(-self.unit, self.qbase, self.qexp)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, CycNum)):
            return ScaledCyclotomic(self.unit * other, self.qbase, self.qexp)
        if not isinstance(other, ScaledCyclotomic):
            return NotImplemented
        if self.is_zero() or other.is_zero():
            return ScaledCyclotomic(0, self.qbase, 0)
        if self.qbase == other.qbase:
            return ScaledCyclotomic(self.unit * other.unit, self.qbase, self.qexp + other.qexp)
        if other.qexp == 0:
            return ScaledCyclotomic(self.unit * other.unit, self.qbase, self.qexp)
        if self.qexp == 0:
            return ScaledCyclotomic(self.unit * other.unit, other.qbase, other.qexp)
        raise ValueError("cannot mix two different scale bases")

    __rmul__ = __mul__

    def inv(self):
        return ScaledCyclotomic(self.unit.inv(), self.qbase, -self.qexp)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction, CycNum)):
            return ScaledCyclotomic(self.unit / other, self.qbase, self.qexp)
        if isinstance(other, ScaledCyclotomic):
            return self * other.inv()
        return NotImplemented

    def __pow__(self, n):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inv() ** (-n)
        out = ScaledCyclotomic(1, self.qbase, 0)
        for _ in range(n):
            out = out * self
        return out

    def __add__(self, other):
        if isinstance(other, (int, Fraction, CycNum)):
            other = ScaledCyclotomic(other, self.qbase, 0)
        if not isinstance(other, ScaledCyclotomic):
            return NotImplemented
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        if self.qbase == other.qbase and (self.qexp - other.qexp).denominator == 1:
            base = min(self.qexp, other.qexp)
            u = self.unit * Fraction(self.qbase) ** (self.qexp - base)
            v = other.unit * Fraction(other.qbase) ** (other.qexp - base)
            return ScaledCyclotomic(u + v, self.qbase, base)
        if self.qbase != other.qbase:
            raise ValueError("cannot mix two different scale bases")
        return ScaledCyclotomic(self.as_cyc() + other.as_cyc(), self.qbase, 0)

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, ScaledCyclotomic):
            return self + (-other)
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + ScaledCyclotomic(-other, self.qbase, 0)

    def embed(self, digits=30):
        with mpmath.workdps(digits + 10):
            scale = mpmath.power(mpmath.mpf(self.qbase), mpmath.mpf(self.qexp.numerator) / self.qexp.denominator)
        return self.unit.embed(digits) * scale

    def __repr__(self):
        return f"ScaledCyclotomic({self.unit!r}, qbase={self.qbase}, qexp={self.qexp})"
