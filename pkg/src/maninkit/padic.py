"""Truncated p-adic arithmetic in towers over Q_p, plus exact valuations.

A context fixes the compositum of the unramified extension of degree f
(F_p[u]/(g) with g the lexicographically least monic irreducible polynomial,
coefficients compared low-degree-first, lifted to integer coefficients) and
the totally ramified layer Q_p(zeta_{p^k}) presented by the Eisenstein
polynomial E(t) = Phi_{p^k}(1 + t), which has E(0) = p exactly.  Elements
are f x e coordinate grids of residues mod p^B in the basis u^i t^j.

Valuations are computed by repeated exact division by t, rewriting
p/t = -(t^(e-1) + a_(e-1) t^(e-2) + ... + a_1) from E.  Each division can
consume one base-p digit of certainty; the counter is tracked and the
routine reports +infinity with a "not proven" flag rather than overstating
precision.

This module is the independent oracle against which the cyclotomic-side
Gauss sum and different computations are tested, so it deliberately shares
nothing with them except the embedding map itself.
"""

from __future__ import annotations

import os
from fractions import Fraction
from functools import total_ordering
from math import gcd

from sympy import Poly, Symbol, factorint, isprime

from .cyclotomic import CycNum, cyclotomic_polynomial

__all__ = [
    "INF",
    "ExtRational",
    "FiniteField",
    "PadicContext",
    "PadicElement",
    "context_new",
    "embed_cyc",
    "embed_root",
    "poly_eval",
    "teichmuller",
    "valuation",
    "valuation_ex",
]

DEFAULT_PRECISION = 64


@total_ordering
class ExtRational:
    """An exact rational or +infinity; the universal valuation type."""

    __slots__ = ("v",)

    def __init__(self, value=0):
        if isinstance(value, ExtRational):
            v = value.v
        elif value is None:
            v = None
        elif isinstance(value, str):
            v = None if value == "inf" else Fraction(value)
        else:
            v = Fraction(value)
        object.__setattr__(self, "v", v)

    def __setattr__(self, *a):
        raise AttributeError("ExtRational is immutable")

    @property
    def is_infinite(self):
        return self.v is None

    def __bool__(self):
        return self.is_infinite or self.v != 0

    def __add__(self, other):
        other = ExtRational(other)
        if self.is_infinite or other.is_infinite:
            return INF
        return ExtRational(self.v + other.v)

    __radd__ = __add__

    def __neg__(self):
        if self.is_infinite:
            raise ArithmeticError("cannot negate +infinity")
        return ExtRational(-self.v)

    def __sub__(self, other):
        return self + (-ExtRational(other))

    def __rsub__(self, other):
        return ExtRational(other) + (-self)

    def __mul__(self, other):
        other = ExtRational(other)
        if self.is_infinite or other.is_infinite:
            if (self.is_infinite and other == 0) or (other.is_infinite and self == 0):
                raise ArithmeticError("0 * infinity is undefined")
            if (self.is_infinite and other < 0) or (other.is_infinite and self < 0):
                raise ArithmeticError("negative multiple of +infinity")
            return INF
        return ExtRational(self.v * other.v)

    __rmul__ = __mul__

    def __eq__(self, other):
        try:
            other = ExtRational(other)
        except (TypeError, ValueError):
            return NotImplemented
        return self.v == other.v

    def __lt__(self, other):
        other = ExtRational(other)
        if self.is_infinite:
            return False
        if other.is_infinite:
            return True
        return self.v < other.v

    def __hash__(self):
        return hash(self.v)

    def to_str(self):
        if self.is_infinite:
            return "inf"
        return f"{self.v.numerator}/{self.v.denominator}"

    def __repr__(self):
        return "ExtRational(inf)" if self.is_infinite else f"ExtRational({self.v})"


INF = ExtRational(None)


class FiniteField:
    """F_{p^f} as F_p[u]/(g); elements are int codes sum(c_i * p^i).

    The generator choice here (least code of full multiplicative order) is
    the single point of determinism shared by the character and p-adic
    modules: the distinguished multiplicative character sends the generator
    to zeta_{p^f - 1}, and the embedding sends zeta_{p^f - 1} to the
    Teichmueller lift of the same generator.
    """

    def __init__(self, p, f):
        self.p, self.f, self.q = p, f, p**f
        self.g = self._least_irreducible(p, f)
        self._exp = None
        self._log = None

    @staticmethod
    def _least_irreducible(p, f):
        if f == 1:
            return (0, 1)  # u = 0: the prime field itself
        x = Symbol("x")
        # enumerate monic degree-f polynomials, low-degree coefficient first
        for code in range(p**f):
            coeffs = [(code // p**i) % p for i in range(f)] + [1]
            if Poly(list(reversed(coeffs)), x, modulus=p).is_irreducible:
                return tuple(coeffs)
        raise AssertionError("no irreducible polynomial found")

    def decode(self, a):
        return [(a // self.p**i) % self.p for i in range(self.f)]

    def encode(self, coeffs):
        return sum((c % self.p) * self.p**i for i, c in enumerate(coeffs))

    def add(self, a, b):
        return self.encode([x + y for x, y in zip(self.decode(a), self.decode(b))])

    def mul(self, a, b):
        p, f = self.p, self.f
        ca, cb = self.decode(a), self.decode(b)
        out = [0] * (2 * f - 1)
        for i, x in enumerate(ca):
            if x:
                for j, y in enumerate(cb):
                    out[i + j] += x * y
        for i in range(len(out) - 1, f - 1, -1):
            c = out[i] % p
            if c:
                for j in range(f):
                    out[i - f + j] -= c * self.g[j]
            out[i] = 0
        return self.encode(out[:f])

    def pow(self, a, n):
        if a == 0:
            return 0 if n else 1
        n %= self.q - 1
        out, base = 1, a
        while n:
            if n & 1:
                out = self.mul(out, base)
            base = self.mul(base, base)
            n >>= 1
        return out

    def order(self, a):
        if a == 0:
            raise ValueError("zero has no multiplicative order")
        n = self.q - 1
        for r in factorint(n):
            while n % r == 0 and self.pow(a, n // r) == 1:
                n //= r
        return n

    _GEN_CACHE: dict[tuple[int, int], int] = {}

    @property
    def generator(self):
        got = FiniteField._GEN_CACHE.get((self.p, self.f))
        if got is None:
            got = next(a for a in range(1, self.q) if self.order(a) == self.q - 1)
            FiniteField._GEN_CACHE[(self.p, self.f)] = got
        return got

    def tables(self):
        """(exp, log): exp[i] = generator**i, log[a] = i."""
        if self._exp is None:
            exp = [1]
            g = self.generator
            for _ in range(self.q - 2):
                exp.append(self.mul(exp[-1], g))
            self._exp = exp
            self._log = {a: i for i, a in enumerate(exp)}
        return self._exp, self._log

    def trace(self, a):
        t, x = 0, a
        for _ in range(self.f):
            t = self.add(t, x)
            x = self.pow(x, self.p)
        assert t < self.p
        return t


class PadicContext:
    """Immutable description of the working ring and precision."""

    def __init__(self, p, f, k, B):
        if not isprime(p):
            raise ValueError(f"{p} is not prime")
        if f < 1 or k < 0 or B < 8:
            raise ValueError("need f >= 1, k >= 0, B >= 8")
        self.p, self.f, self.k, self.B = p, f, k, B
        self.pB = p**B
        self.ff = FiniteField(p, f)
        self.g = self.ff.g  # integer lift; any monic lift presents the same ring
        if k == 0:
            self.e = 1
            self.E = None
        else:
            pol = cyclotomic_polynomial(p**k)
            deg = len(pol) - 1
            # E(t) = Phi_{p^k}(1 + t); E[0] = Phi_{p^k}(1) = p exactly
            E = [0] * (deg + 1)
            for i, c in enumerate(pol):
                if c:
                    binom = 1
                    for j in range(i + 1):
                        E[j] += c * binom
                        binom = binom * (i - j) // (j + 1)
            self.e = deg
            self.E = tuple(E)
            assert self.E[0] == p and self.E[-1] == 1
        self._roots: dict[tuple[int, int], "PadicElement"] = {}
        self._teich: dict[int, "PadicElement"] = {}
        self._onet: dict[int, "PadicElement"] = {}

    def zero(self):
        return PadicElement(self, [0] * (self.f * self.e))

    def one(self):
        c = [0] * (self.f * self.e)
        c[0] = 1
        return PadicElement(self, c)

    def from_int(self, n):
        c = [0] * (self.f * self.e)
        c[0] = n % self.pB
        return PadicElement(self, c)

    def __repr__(self):
        return f"PadicContext(p={self.p}, f={self.f}, k={self.k}, B={self.B})"


class PadicElement:
    """Coordinates c[i*e + j] of u^i t^j, residues mod p^B."""

    __slots__ = ("ctx", "c", "lost")

    def __init__(self, ctx, coords, lost=0):
        pB = ctx.pB
        object.__setattr__(self, "ctx", ctx)
        object.__setattr__(self, "c", tuple(x % pB for x in coords))
        object.__setattr__(self, "lost", lost)

    def __setattr__(self, *a):
        raise AttributeError("PadicElement is immutable")

    def _check(self, other):
        if isinstance(other, int):
            other = self.ctx.from_int(other)
        if not isinstance(other, PadicElement) or other.ctx is not self.ctx:
            raise TypeError("operands must share a context")
        return other

    def __add__(self, other):
        other = self._check(other)
        return PadicElement(self.ctx, [a + b for a, b in zip(self.c, other.c)],
                            max(self.lost, other.lost))

    __radd__ = __add__

    def __neg__(self):
        return PadicElement(self.ctx, [-a for a in self.c], self.lost)

    def __sub__(self, other):
        return self + (-self._check(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._check(other)
        ctx = self.ctx
        f, e, pB = ctx.f, ctx.e, ctx.pB
        F, Edim = 2 * f - 1, 2 * e - 1
        grid = [0] * (F * Edim)  # index i*Edim + j
        for i in range(f):
            for j in range(e):
                a = self.c[i * e + j]
                if a:
                    for i2 in range(f):
                        for j2 in range(e):
                            b = other.c[i2 * e + j2]
                            if b:
                                grid[(i + i2) * Edim + (j + j2)] += a * b
        # reduce t-degree by E (integer coefficients: rows stay independent)
        if e > 1:
            E = ctx.E
            for i in range(F):
                row = grid[i * Edim:(i + 1) * Edim]
                for j in range(Edim - 1, e - 1, -1):
                    cj = row[j]
                    if cj:
                        row[j] = 0
                        for m in range(e):
                            row[j - e + m] -= cj * E[m]
                grid[i * Edim:(i + 1) * Edim] = [x % pB for x in row]
        # reduce u-degree by g (again integer coefficients)
        g = ctx.g
        for i in range(F - 1, f - 1, -1):
            for j in range(e):
                cij = grid[i * Edim + j]
                if cij:
                    grid[i * Edim + j] = 0
                    for m in range(f):
                        grid[(i - f + m) * Edim + j] -= cij * g[m]
        out = [grid[i * Edim + j] for i in range(f) for j in range(e)]
        return PadicElement(ctx, out, max(self.lost, other.lost))

    __rmul__ = __mul__

    def __pow__(self, n):
        if n < 0:
            raise ValueError("negative powers are not supported")
        out, base = self.ctx.one(), self
        while n:
            if n & 1:
                out = out * base
            base = base * base if n > 1 else base
            n >>= 1
        return out

    def __eq__(self, other):
        try:
            other = self._check(other)
        except TypeError:
            return NotImplemented
        return self.c == other.c

    __hash__ = None

    def scale(self, n):
        """Multiply every coordinate by an integer."""
        return PadicElement(self.ctx, [x * n for x in self.c], self.lost)

    def __repr__(self):
        return f"PadicElement({self.ctx!r}, {list(self.c)!r})"


def context_new(p, f, k, B=None):
    """Build a context; B defaults to MANIN_PRECISION or 64 digits."""
    if B is None:
        B = int(os.environ.get("MANIN_PRECISION", DEFAULT_PRECISION))
    return PadicContext(p, f, k, B)


def teichmuller(ctx, code):
    """Teichmueller lift of the residue-field element with the given code.

    Fixed point of x -> x^(p^f); the iteration gains at least one digit per
    step, and we simply run it to stability mod p^B.
    """
    code = code % ctx.ff.q if ctx.f > 1 else code % ctx.p
    got = ctx._teich.get(code)
    if got is not None:
        return got
    coords = [0] * (ctx.f * ctx.e)
    for i, d in enumerate(ctx.ff.decode(code)):
        coords[i * ctx.e] = d
    x = PadicElement(ctx, coords)
    for _ in range(ctx.B + 2):
        nxt = x ** (ctx.p**ctx.f)
        if nxt == x:
            break
        x = nxt
    else:
        raise AssertionError("Teichmueller iteration failed to stabilize")
    ctx._teich[code] = x
    return x


def _one_plus_t_power(ctx, n):
    """(1 + t)^n mod E, cached; exponents live mod p^k."""
    if ctx.k == 0:
        return ctx.one()
    n %= ctx.p**ctx.k
    got = ctx._onet.get(n)
    if got is None:
        base_coords = [0] * (ctx.f * ctx.e)
        base_coords[0] = 1
        if ctx.e > 1:
            base_coords[1] = 1
        got = PadicElement(ctx, base_coords) ** n
        ctx._onet[n] = got
    return got


def embed_root(ctx, M, j=1):
    """The fixed embedding of zeta_M^j, for M | p^k (p^f - 1)."""
    j %= M
    got = ctx._roots.get((M, j))
    if got is not None:
        return got
    p = ctx.p
    m = 0
    M1 = M
    while M1 % p == 0:
        M1 //= p
        m += 1
    if m > ctx.k or (ctx.ff.q - 1) % M1 != 0:
        raise ValueError(f"zeta_{M} does not live in this context")
    # zeta_M = zeta_{p^m}^{c1} * zeta_{M1}^{c2} with c1*M1 + c2*p^m = 1
    pm = p**m
    c1 = pow(M1, -1, pm) if pm > 1 else 0
    c2 = pow(pm, -1, M1) if M1 > 1 else 0
    out = ctx.one()
    if pm > 1:
        out = out * _one_plus_t_power(ctx, p ** (ctx.k - m) * (j * c1 % pm))
    if M1 > 1:
        zt = teichmuller(ctx, ctx.ff.generator)
        out = out * zt ** (((ctx.ff.q - 1) // M1) * (j * c2 % M1))
    ctx._roots[(M, j)] = out
    return out


def embed_cyc(ctx, a):
    """Ring homomorphism Q(zeta_M) -> context extending embed_root."""
    if not isinstance(a, CycNum):
        a = CycNum(1, [a])
    den = 1
    for co in a.c:
        if isinstance(co, Fraction):
            den = den * co.denominator // gcd(den, co.denominator)
    if den % ctx.p == 0:
        raise ValueError("denominator is divisible by p; rescale first")
    z = embed_root(ctx, a.M, 1)
    out = ctx.zero()
    power = ctx.one()
    inv_den = pow(den, -1, ctx.pB)
    for i, co in enumerate(a.c):
        if i:
            power = power * z
        if co:
            out = out + power.scale(int(co * den) * inv_den)
    return out


def poly_eval(ctx, int_coeffs, x):
    """Evaluate an integer-coefficient polynomial at a context element."""
    out = ctx.zero()
    for c in reversed(list(int_coeffs)):
        out = out * x + ctx.from_int(c)
    return out


def valuation_ex(x):
    """(valuation, proven) with valuation in units val_p(p) = 1.

    The second component is False when the element could not be
    distinguished from 0 at the working precision, in which case the first
    is +infinity meaning "at least B - lost digits".
    """
    ctx = x.ctx
    p, e, B = ctx.p, ctx.e, ctx.B
    coords = list(x.c)
    lost = x.lost
    if ctx.k == 0:
        cert = B - lost
        if cert < 1 or all(c % p**cert == 0 for c in coords):
            return INF, False
        v = min(_int_val(c, p, cert) for c in coords if c % p**cert)
        return ExtRational(v), True
    f = ctx.f
    E = ctx.E
    tval = 0
    while True:
        cert = B - lost
        if cert < 1 or all(c % p**cert == 0 for c in coords):
            return INF, False
        c0 = [coords[i * e] for i in range(f)]
        if any(c % p for c in c0):
            return ExtRational(Fraction(tval, e)), True
        # divide by t: shift t-coordinates down and push c0/p through p/t
        quot = [c // p for c in c0]  # exact: each c is divisible by p
        new = [0] * (f * e)
        for i in range(f):
            for j in range(e - 1):
                new[i * e + j] = coords[i * e + j + 1] - quot[i] * E[j + 1]
            new[i * e + e - 1] = -quot[i] * E[e]
        coords = [c % ctx.pB for c in new]
        lost += 1
        tval += 1


def _int_val(c, p, cap):
    c = c % p**cap
    if c == 0:
        return None
    v = 0
    while c % p == 0:
        c //= p
        v += 1
    return v


def valuation(x):
    return valuation_ex(x)[0]
