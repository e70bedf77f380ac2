"""Denominator bounds for Fourier coefficients at cusps, and what they
say about the Manin constant.

Everything here is global: the inputs are a level N (kept in factored
form), a weight, and a cusp denominator L | N.  The local machinery
(`whittaker.bound_T1` / `bound_T2`) supplies one-prime estimates that
`localglobal_combine` turns into a valuation bound for a_f(r; cusp);
`newform_cusp_bound` / `weight2_bound` are the closed forms those scans
are checked against.  `manin_report` assembles the per-prime divisibility
statement c | deg * 2^d2 * 3^d3.
"""

from dataclasses import dataclass, field
from fractions import Fraction

from sympy import factorint, isprime

from .modcurve import integrality_threshold
from .padic import INF, ExtRational
from .reps import Q2_LABELS, conductor, twist_conductor, twist_minimal_range
from .characters import q2_quadratic
from .whittaker import boundary_value, bound_T1, bound_T2, is_vanishing

HALF = Fraction(1, 2)


# ---------------------------------------------------------------------------
# factored integers


@dataclass(frozen=True, slots=True)
class FactoredInt:
    """A positive integer together with its prime factorization.

    `pairs` is a sorted tuple of (prime, exponent).  Keeping the
    factorization explicit means valuations are lookups, and the CLI can
    take levels like 2^5*3 without ever factoring anything large.
    """

    pairs: tuple
    value: int

    def __post_init__(self):
        n = 1
        last = 0
        for p, e in self.pairs:
            if not (isinstance(p, int) and isinstance(e, int)):
                raise ValueError("factor pairs must be integer (prime, exponent)")
            if p <= last:
                raise ValueError("primes must be distinct and sorted")
            if not isprime(p):
                raise ValueError(f"{p} is not prime")
            if e < 1:
                raise ValueError("exponents must be >= 1")
            n *= p ** e
            last = p
        if n != self.value:
            raise ValueError("factorization does not match value")

    @classmethod
    def from_int(cls, n):
        if n < 1:
            raise ValueError("need a positive integer")
        fac = factorint(n)
        return cls(tuple(sorted(fac.items())), n)

    @classmethod
    def parse(cls, text):
        """Accept '2^5*3', '96', or '2**5 * 3'."""
        if isinstance(text, FactoredInt):
            return text
        if isinstance(text, int):
            return cls.from_int(text)
        s = text.replace(" ", "").replace("**", "^")
        if not s:
            raise ValueError("empty integer expression")
        if "*" not in s and "^" not in s:
            return cls.from_int(int(s))
        fac = {}
        for part in s.split("*"):
            if "^" in part:
                base, _, exp = part.partition("^")
                p, e = int(base), int(exp)
            else:
                p, e = int(part), 1
            if e < 0:
                raise ValueError("negative exponent")
            fac[p] = fac.get(p, 0) + e
        n = 1
        for p, e in fac.items():
            n *= p ** e
        # re-factor: tolerates composite or repeated parts like 4*6
        return cls.from_int(n)

    def val(self, p):
        for q, e in self.pairs:
            if q == p:
                return e
        return 0

    def primes(self):
        return tuple(p for p, _ in self.pairs)

    def __int__(self):
        return self.value

    def __str__(self):
        if not self.pairs:
            return "1"
        return "*".join(f"{p}^{e}" if e > 1 else str(p) for p, e in self.pairs)


def _factored(x):
    if isinstance(x, FactoredInt):
        return x
    if isinstance(x, int):
        return FactoredInt.from_int(x)
    return FactoredInt.parse(x)


# ---------------------------------------------------------------------------
# closed-form valuation bounds at a cusp of denominator p^valL


def _check_cusp_args(p, valN, valL):
    if not isprime(p):
        raise ValueError(f"{p} is not prime")
    if valN < 0 or not 0 <= valL <= valN:
        raise ValueError("need 0 <= valL <= valN")


def newform_cusp_bound(p, k, valN, valL):
    """val_p of any Fourier coefficient of a weight-k newform of level N
    at a cusp with denominator exactly p^valL (p-part), bounded below.

    The -(k/2) * val_p(width) term carries the whole k-dependence; the
    correction on top of it depends only on g = min(valL, valN - valL)
    except for the extra Q_2 cases, where a 2-adic character sum can be
    evaluated further.
    """
    _check_cusp_args(p, valN, valL)
    if k < 2 or k % 2:
        raise ValueError("weight must be an even integer >= 2")
    g = min(valL, valN - valL)
    main = -Fraction(k, 2) * max(valN - 2 * valL, 0)
    if g == 0:
        extra = Fraction(0)
    elif g == 1 and valN > 2:
        extra = Fraction(0)
    elif valL == 1 and valN == 2:
        extra = -HALF
    else:
        extra = 1 - Fraction(g, 2)
    if p == 2:
        if 2 * valL == valN and valL == 1:
            extra = max(extra, Fraction(0))
        elif 2 * valL == valN and 2 <= valL <= 4:
            extra = max(extra, Fraction(k, 2))
        elif 2 * valL == valN and valL > 4:
            extra = max(extra, Fraction(k, 2) + 1 - Fraction(valN, 4))
        if g == 3 and valN > 6:
            extra = max(extra, Fraction(0))
    return ExtRational(main + extra)


def weight2_bound(p, valN, valL):
    """Weight-2 specialization, written in the -val_p(N/L) normalization
    that matches elliptic-curve tables.  Must agree with
    newform_cusp_bound(p, 2, ...) everywhere -- asserted, as a check that
    the two case lists really are the same function.
    """
    _check_cusp_args(p, valN, valL)
    g = min(valL, valN - valL)
    main = Fraction(-(valN - valL))
    if valL in (0, valN):
        extra = Fraction(0)
    elif valL == 1 and valN == 2:
        extra = max(HALF, Fraction(1, p - 1))
    elif g == 1 and valN > 2:
        extra = Fraction(1)
    elif p == 2 and 2 * valL == valN and 2 <= valL <= 4:
        extra = 1 + Fraction(valN, 2)
    elif p == 2 and 2 * valL == valN and valL > 4:
        extra = 2 + Fraction(valN, 4)
    elif p == 2 and g == 3 and valN > 6:
        extra = Fraction(3)
    else:
        extra = 1 + Fraction(g, 2)
    out = ExtRational(main + extra)
    # same function as the general-weight bound at k = 2; if this ever
    # trips, one of the two case lists is wrong
    assert out == newform_cusp_bound(p, 2, valN, valL), (p, valN, valL)
    return out


@dataclass(frozen=True, slots=True)
class BoundReport:
    """weight2/newform bounds for one prime, all cusp denominators 0..valN.

    bounds[valL] is the lower bound; `sharp` collects flags (valL -> bool)
    filled in by whoever compares against measured data.  `core` adds the
    width term back, which is the quantity symmetric under
    valL <-> valN - valL.
    """

    p: int
    k: int
    val_n: int
    bounds: tuple
    sharp: dict = field(default_factory=dict, compare=False)

    @classmethod
    def build(cls, p, val_n, k=2):
        bounds = tuple(newform_cusp_bound(p, k, val_n, l) for l in range(val_n + 1))
        return cls(p, k, val_n, bounds)

    def core(self, valL):
        width = max(self.val_n - 2 * valL, 0)
        return self.bounds[valL] + ExtRational(Fraction(self.k, 2) * width)


# ---------------------------------------------------------------------------
# local-global: rebuild the cusp bound from one local representation


def _pi0_options(rep):
    """Possible minimal-twist conductors for a supercuspidal; [None] when
    the notion does not apply.  Unknown pi0 means we must take the worst
    case over the candidates, since each candidate gives a valid bound
    for the representations realizing it.
    """
    if rep.kind == "1b":
        floor = min(twist_conductor(rep, q2_quadratic(lab))[0] for lab in Q2_LABELS)
        return [floor]
    if rep.kind == "1a":
        a = conductor(rep)
        if rep.p != 2:
            return [a]
        return sorted(twist_minimal_range(a))
    return [None]


def localglobal_combine(rep, k, valN, valL, sigma_val=None):
    """Lower bound for val_p(a_f(r; cusp)) assembled from the local table:
    a scan over the p-adic valuation tau of the coefficient index, each
    row contributing k*tau/2 plus the Whittaker bound on the matching
    coset cell (t, ell) = (tau - max(valN, 2 valL), valL), on top of the
    global width term.

    Should dominate newform_cusp_bound whenever rep is admissible for
    (p, valN) -- that closed form is the max over representation types of
    exactly these scans.
    """
    p = rep.p
    _check_cusp_args(p, valN, valL)
    if k < 2 or k % 2:
        raise ValueError("weight must be an even integer >= 2")
    a = conductor(rep)
    if a != valN:
        raise ValueError(f"conductor {a} does not match valN={valN}")
    if a < 1:
        raise ValueError("need a ramified representation (valN >= 1)")
    if sigma_val is None:
        # unitary tempered-range default for the principal-series kinds
        # that carry a Satake parameter
        sigma_val = Fraction(k - 1, 2) if rep.kind in ("4", "5") else Fraction(0)
    width_term = ExtRational(-Fraction(k, 2) * max(valN - 2 * valL, 0))
    shift = max(valN, 2 * valL)
    tau_stop = 2 * valN + 2 * k + 4

    if a == 1:
        best = INF
        for tau in range(tau_stop + 1):
            w = boundary_value(rep, tau - shift, valL)
            if w.is_zero():
                continue
            best = min(best, ExtRational(Fraction(k * tau, 2)) + w.valuation)
        return width_term + best

    best = None
    for pi0 in _pi0_options(rep):
        cur = INF
        for tau in range(tau_stop + 1):
            t = tau - shift
            if is_vanishing(rep, pi0, t, valL):
                continue
            if p == 2:
                b = bound_T2(rep, pi0, t, valL, sigma_val=sigma_val)
            else:
                b = bound_T1(rep, t, valL, sigma_val=sigma_val)
            if b.is_infinite:
                continue
            cur = min(cur, ExtRational(Fraction(k * tau, 2)) + b)
        best = cur if best is None else min(best, cur)
    return width_term + best


# ---------------------------------------------------------------------------
# integrality of the weight-2 bound against the Kodaira-Spencer threshold


@dataclass(frozen=True, slots=True)
class IntegralityWitness:
    ok: bool
    margins: tuple  # (valL, bound - threshold) pairs

    def __bool__(self):
        return self.ok


def integrality_check(p, valN, k=2):
    """Do the cusp bounds clear the threshold that makes the relevant
    differential integral at every cusp?  Returns the margin table as a
    witness; a negative margin anywhere means no.
    """
    _check_cusp_args(p, valN, 0)
    margins = []
    ok = True
    for valL in range(valN + 1):
        if k == 2:
            b = weight2_bound(p, valN, valL)
        else:
            b = newform_cusp_bound(p, k, valN, valL)
        m = b - integrality_threshold(p, valN, valL)
        margins.append((valL, m))
        if m < ExtRational(0):
            ok = False
    return IntegralityWitness(ok, tuple(margins))


# ---------------------------------------------------------------------------
# rational singularities of the minimal regular model (sufficient test)


def rational_singularity(p, N):
    """'rational' when the fiber at p of the minimal regular model over
    Z[1/2N']-type bases is known to have rational singularities,
    'unknown' otherwise.  The test is sufficient only: 'unknown' is not a
    counterexample.
    """
    if not isprime(p):
        raise ValueError(f"{p} is not prime")
    N = _factored(N)
    if p >= 5:
        return "rational"
    if N.val(p) <= 2:
        return "rational"
    if p == 3 and any(q % 3 == 2 for q in N.primes()):
        return "rational"
    if p == 2 and any(q % 4 == 3 for q in N.primes()):
        return "rational"
    return "unknown"


# ---------------------------------------------------------------------------
# the divisibility report for the Manin constant


@dataclass(frozen=True, slots=True)
class ReportRow:
    prime: int
    val_n: int
    val_deg: int
    correction: int
    bound: int            # val_p(c) <= val_deg + correction
    singularities: str    # advisory only, never used to tighten
    eliminated: bool      # additive prime contributing nothing


@dataclass(frozen=True, slots=True)
class ManinReport:
    N: FactoredInt
    deg: FactoredInt
    family: str
    rows: tuple

    def row(self, p):
        for r in self.rows:
            if r.prime == p:
                return r
        return None

    def divides(self):
        """The integer c is proven to divide: deg times the 2,3-corrections."""
        n = self.deg.value
        for r in self.rows:
            n *= r.prime ** r.correction
        return n


def _correction(p, N, family):
    if family == "X1":
        return 0
    v = N.val(p)
    if p == 2 and v >= 3 and not any(q % 4 == 3 for q in N.primes()):
        return 1
    if p == 3 and v >= 3 and not any(q % 3 == 2 for q in N.primes()):
        return 1
    return 0


def manin_report(N, deg, family="X0"):
    """Per-prime divisibility bound val_p(c) <= val_p(deg) + correction,
    where c is the Manin constant of a strong parametrization of degree
    `deg` and level N.  family='X1' uses the everywhere-unramified
    normalization, where no correction is ever needed.
    """
    N = _factored(N)
    deg = _factored(deg)
    fam = str(family).upper().replace("_", "")
    if fam not in ("X0", "X1"):
        raise ValueError("family must be 'X0' or 'X1'")
    rows = []
    for p in sorted(set(N.primes()) | set(deg.primes())):
        v_n = N.val(p)
        vdeg = deg.val(p)
        corr = _correction(p, N, fam)
        rows.append(ReportRow(
            prime=p,
            val_n=v_n,
            val_deg=vdeg,
            correction=corr,
            bound=vdeg + corr,
            singularities=rational_singularity(p, N),
            eliminated=(v_n >= 2 and vdeg == 0 and corr == 0),
        ))
    return ManinReport(N, deg, fam, tuple(rows))
