"""Characters of Q_p^x and of finite residue fields, with exact values.

Unit groups (Z/p^n)^x are presented by fixed generators: for odd p the
least primitive root mod p^2 (which generates at every level), for p = 2
the pair (-1, 5).  A multiplicative character is stored as exponent data
against these generators plus its value at the uniformizer p, so every
evaluation is an exact root of unity (a CycNum), never a float.

Residue-field characters are powers of the distinguished generator
character omega, normalized so that omega sends the least generator of
F_{p^f}^x to zeta_{p^f - 1}; this is the same generator whose Teichmueller
lift receives zeta_{p^f - 1} under the p-adic embedding, which is what
makes digit-sum valuations and embedded Gauss sums agree.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm

from sympy import isprime

from .cyclotomic import CycNum, from_terms, zeta
from .padic import FiniteField

__all__ = [
    "FiniteFieldChar",
    "LocalChar",
    "at_level",
    "char_eval",
    "char_eval_exp",
    "char_group",
    "char_mul",
    "char_inv",
    "char_order",
    "chars_of_conductor",
    "conductor_exp",
    "digit_sum_s",
    "psi_eval",
    "q2_quadratic",
    "trivial_char",
    "unit_dlog",
]

_PRIMITIVE_ROOT: dict[int, int] = {}
_DLOG: dict[tuple[int, int], dict[int, tuple[int, ...]]] = {}


def _primitive_root(p):
    """Least primitive root mod p^2; generates (Z/p^n)^x for every n >= 1."""
    got = _PRIMITIVE_ROOT.get(p)
    if got is None:
        m = p * p
        phi = p * (p - 1)
        primes = [r for r in range(2, phi + 1) if phi % r == 0 and isprime(r)]
        g = 2
        while not all(pow(g, phi // r, m) != 1 for r in primes):
            g += 1
        _PRIMITIVE_ROOT[p] = got = g
    return got


def char_group(p, n):
    """Generators and orders of (Z/p^n)^x under the fixed presentation."""
    if n < 0:
        raise ValueError("level must be >= 0")
    if n == 0 or (p == 2 and n == 1):
        return []
    if p == 2:
        if n == 2:
            return [(3, 2)]
        return [(2**n - 1, 2), (5, 2 ** (n - 2))]
    return [(_primitive_root(p) % p**n, (p - 1) * p ** (n - 1))]


def unit_dlog(p, n, u):
    """Exponents of the unit u against char_group(p, n), via cached tables."""
    gens = char_group(p, n)
    if not gens:
        return ()
    m = p**n
    u %= m
    if gcd(u, m) != 1:
        raise ValueError(f"{u} is not a unit mod {p}^{n}")
    table = _DLOG.get((p, n))
    if table is None:
        table = {}
        if p == 2 and n >= 3:
            x = 1
            for b in range(2 ** (n - 2)):
                table[x] = (0, b)
                table[(-x) % m] = (1, b)
                x = x * 5 % m
        else:
            g = gens[0][0]
            x = 1
            for e in range(gens[0][1]):
                table[x] = (e,)
                x = x * g % m
        _DLOG[(p, n)] = table
    return table[u]


class LocalChar:
    """A character of Q_p^x: unit-part exponents at a level, value at p."""

    __slots__ = ("p", "n", "exps", "pi_value")

    def __init__(self, p, n, exps=(), pi_value=1):
        gens = char_group(p, n)
        if len(exps) != len(gens):
            raise ValueError(f"need {len(gens)} exponents at level {n}")
        if pi_value not in (1, -1):
            raise ValueError("pi_value must be +1 or -1")
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "exps",
                           tuple(e % o for e, (_, o) in zip(exps, gens)))
        object.__setattr__(self, "pi_value", pi_value)

    def __setattr__(self, *a):
        raise AttributeError("LocalChar is immutable")

    def __eq__(self, other):
        if not isinstance(other, LocalChar):
            return NotImplemented
        if self.p != other.p:
            return False
        n = max(self.n, other.n)
        a, b = at_level(self, n), at_level(other, n)
        return a.exps == b.exps and a.pi_value == b.pi_value

    def __hash__(self):
        a = at_level(self, conductor_exp(self)) if self.n else self
        return hash((self.p, a.n, a.exps, a.pi_value))

    def __repr__(self):
        return (f"LocalChar(p={self.p}, n={self.n}, exps={self.exps}, "
                f"pi_value={self.pi_value})")

    # conveniences used all over the bound tables
    def __call__(self, x):
        return char_eval(self, x)

    @property
    def conductor(self):
        return conductor_exp(self)

    def is_trivial(self):
        return conductor_exp(self) == 0 and self.pi_value == 1


def trivial_char(p, pi_value=1):
    return LocalChar(p, 0, (), pi_value)


def at_level(chi, n2):
    """The same character presented at a higher (or equal) level."""
    if n2 < chi.n:
        if conductor_exp(chi) > n2:
            raise ValueError("cannot lower below the conductor")
        return at_level(_shrink(chi), n2) if chi.n > n2 else chi
    if n2 == chi.n:
        return chi
    p = chi.p
    old = char_group(p, chi.n)
    new = char_group(p, n2)
    if not old:
        return LocalChar(p, n2, (0,) * len(new), chi.pi_value)
    if p == 2 and chi.n == 2:
        return LocalChar(p, n2, (chi.exps[0], 0), chi.pi_value)
    scale = new[-1][1] // old[-1][1]
    exps = list(chi.exps)
    exps[-1] *= scale
    return LocalChar(p, n2, tuple(exps), chi.pi_value)


def _shrink(chi):
    """Present at the conductor level (no information loss)."""
    a = conductor_exp(chi)
    if a == chi.n:
        return chi
    for exps in _exponent_space(chi.p, a):
        cand = LocalChar(chi.p, a, exps, chi.pi_value)
        if at_level(cand, chi.n).exps == chi.exps:
            return cand
    raise AssertionError("no matching lower-level presentation")


def _exponent_space(p, n):
    gens = char_group(p, n)
    if not gens:
        yield ()
    elif len(gens) == 1:
        for e in range(gens[0][1]):
            yield (e,)
    else:
        for e1 in range(gens[0][1]):
            for e2 in range(gens[1][1]):
                yield (e1, e2)


def conductor_exp(chi):
    """Least a >= 0 with chi trivial on units congruent to 1 mod p^a."""
    p, n = chi.p, chi.n
    gens = char_group(p, n)
    if all(e == 0 for e in chi.exps):
        return 0
    m = p**n
    for a in range(n, 0, -1):
        # is chi trivial on 1 + p^(a-1) Z_p?  test every residue
        step = p ** (a - 1)
        for u in range(1 + step, m, step):
            if gcd(u, p) == 1 and _pair(chi, unit_dlog(p, n, u))[0] != 0:
                break
        else:
            continue
        return a
    return 0


def _pair(chi, dlog, order=None):
    """Exponent of the value as a fraction of the full torus: j/M in [0,1)."""
    gens = char_group(chi.p, chi.n)
    M = 1
    for _, o in gens:
        M = lcm(M, o)
    j = 0
    for e, d, (_, o) in zip(chi.exps, dlog, gens):
        j += e * d * (M // o)
    return j % M, M


def char_eval_exp(chi, x):
    """chi(x) as (j, M) meaning zeta_M^j, folding in the value at p."""
    p = chi.p
    x = Fraction(x)
    if x == 0:
        raise ZeroDivisionError("characters are not defined at 0")
    v = 0
    num, den = x.numerator, x.denominator
    while num % p == 0:
        num //= p
        v += 1
    while den % p == 0:
        den //= p
        v -= 1
    if chi.n == 0:
        j, M = 0, 1
    else:
        u = num * pow(den, -1, p**chi.n)
        j, M = _pair(chi, unit_dlog(p, chi.n, u))
    if chi.pi_value == -1 and v % 2:
        j, M = (j * 2 + M) % (2 * M), 2 * M
    g = gcd(j, M) or M
    return j // g, M // g


def char_eval(chi, x):
    j, M = char_eval_exp(chi, x)
    return zeta(M, j)


def char_mul(a, b):
    if a.p != b.p:
        raise ValueError("characters live over different primes")
    n = max(a.n, b.n)
    a, b = at_level(a, n), at_level(b, n)
    exps = tuple(x + y for x, y in zip(a.exps, b.exps))
    return LocalChar(a.p, n, exps, a.pi_value * b.pi_value)


def char_inv(a):
    return LocalChar(a.p, a.n, tuple(-e for e in a.exps), a.pi_value)


def char_order(chi):
    gens = char_group(chi.p, chi.n)
    out = 1 if chi.pi_value == 1 else 2
    for e, (_, o) in zip(chi.exps, gens):
        out = lcm(out, o // gcd(e, o))
    return out


def chars_of_conductor(p, a):
    """All unit-part characters with conductor exponent exactly a (pi -> 1)."""
    if a == 0:
        return [trivial_char(p)]
    out = []
    for exps in _exponent_space(p, a):
        chi = LocalChar(p, a, exps)
        if conductor_exp(chi) == a:
            out.append(chi)
    return out


_Q2_RAMIFIED = {"b2": (1, 0), "b3": (0, 1), "b2b3": (1, 1)}


def q2_quadratic(label):
    """The eight quadratic characters of Q_2^x by label.

    Labels multiply: "b0" is the unramified quadratic (value -1 at 2),
    "b2" has conductor 4, "b3" and "b2b3" have conductor 8.  A label like
    "b0b2b3" means the product.
    """
    s = label
    pi_value = 1
    if s in ("1", ""):
        return trivial_char(2)
    if s.startswith("b0"):
        pi_value = -1
        s = s[2:]
    if s == "":
        return trivial_char(2, pi_value)
    if s not in _Q2_RAMIFIED:
        raise ValueError(f"unknown quadratic character label {label!r}")
    e = _Q2_RAMIFIED[s]
    chi = LocalChar(2, 3, e, pi_value)
    return _shrink(chi)


def psi_eval(p, x):
    """The standard additive character of Q_p: exp(2 pi i {x}_p).

    Only the p-part of the denominator matters; the value is an exact
    p-power root of unity.
    """
    x = Fraction(x)
    den = x.denominator
    m = 0
    while den % p == 0:
        den //= p
        m += 1
    if m == 0:
        return CycNum(1, [1])
    r = x.numerator * pow(den, -1, p**m) % p**m
    return zeta(p**m, r)


def psi_eval_exp(p, x):
    """Like psi_eval but returning (r, p^m) with value zeta_{p^m}^r."""
    x = Fraction(x)
    den = x.denominator
    m = 0
    while den % p == 0:
        den //= p
        m += 1
    if m == 0:
        return 0, 1
    return x.numerator * pow(den, -1, p**m) % p**m, p**m


class FiniteFieldChar:
    """omega^(-alpha) on F_{p^f}^x, with omega(generator) = zeta_{q-1}."""

    __slots__ = ("p", "f", "alpha", "ff")

    def __init__(self, p, f, alpha):
        ff = FiniteField(p, f)
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "f", f)
        object.__setattr__(self, "alpha", alpha % (ff.q - 1))
        object.__setattr__(self, "ff", ff)

    def __setattr__(self, *a):
        raise AttributeError("FiniteFieldChar is immutable")

    def eval_exp(self, code):
        """(j, q-1) with value zeta_{q-1}^j; code must be a nonzero element."""
        if code == 0:
            raise ZeroDivisionError("multiplicative character at 0")
        _, log = self.ff.tables()
        j = -self.alpha * log[code]
        return j % (self.ff.q - 1), self.ff.q - 1

    def __call__(self, code):
        j, M = self.eval_exp(code)
        return zeta(M, j)

    def is_trivial(self):
        return self.alpha == 0

    def order(self):
        q1 = self.ff.q - 1
        return q1 // gcd(self.alpha, q1)

    def __eq__(self, other):
        if not isinstance(other, FiniteFieldChar):
            return NotImplemented
        return (self.p, self.f, self.alpha) == (other.p, other.f, other.alpha)

    def __hash__(self):
        return hash((self.p, self.f, self.alpha))

    def __repr__(self):
        return f"FiniteFieldChar(p={self.p}, f={self.f}, alpha={self.alpha})"


def digit_sum_s(p, alpha, f):
    """Base-p digit sum of alpha reduced mod p^f - 1 (0 for the zero class).

    This is the quantity whose ratio by (p - 1) is the valuation of the
    Gauss sum attached to omega^(-alpha).
    """
    q1 = p**f - 1
    alpha %= q1
    return sum((alpha // p**i) % p for i in range(f))
