"""Local GL(2) representation descriptors with trivial central character.

Kinds (every descriptor carries its prime p):

* "1a" -- dihedral supercuspidal induced from a quadratic extension,
  described by whether the extension is ramified, the conductor exponent
  of the inducing character, and the valuation of the discriminant;
* "1b" -- one of the sixteen exceptional supercuspidals of Q_2: the two
  base representations of conductor exponent 3 and 7 and their eight
  quadratic twists each;
* "2"  -- unramified twist of Steinberg (conductor exponent 1);
* "3"  -- ramified quadratic twist of Steinberg;
* "4"  -- principal series mu|.|^sigma + mu|.|^-sigma with mu ramified
  quadratic;
* "5"  -- principal series mu|.|^sigma + mu^-1|.|^-sigma with mu ramified,
  mu^2 nontrivial.

Epsilon factors and L-factors of twists are returned as exact symbolic
data in X = q^(1/2 - s), with the q^sigma dependence kept as a formal
exponent; supercuspidal epsilon scalars are not derivable from GL(1) data
and are handled by the explicit tables in the Whittaker layer.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .characters import (
    LocalChar,
    char_inv,
    char_mul,
    char_order,
    chars_of_conductor,
    conductor_exp,
    q2_quadratic,
    trivial_char,
)
from .cyclotomic import CycNum, ScaledCyclotomic
from .gauss import eps_factor

__all__ = [
    "EpsLData",
    "EulerTag",
    "RepDescriptor",
    "admissible_types",
    "conductor",
    "eps_L_data",
    "parse_rep",
    "twist_conductor",
    "twist_minimal_range",
    "type1a",
    "type1b",
    "type1b_enumerate",
    "type2",
    "type3",
    "type4",
    "type5",
]

Q2_LABELS = ["1", "b0", "b2", "b0b2", "b3", "b0b3", "b2b3", "b0b2b3"]

# conductor exponents of the sixteen exceptional supercuspidals of Q_2:
# quadratic twists of the two bases, keyed by twist label
_TYPE1B_COND_3 = {"1": 3, "b0": 3, "b2": 4, "b0b2": 4,
                  "b3": 6, "b0b3": 6, "b2b3": 6, "b0b2b3": 6}
_TYPE1B_COND_7 = {lab: 7 for lab in Q2_LABELS}


@dataclass(frozen=True, slots=True)
class RepDescriptor:
    kind: str
    p: int
    # 1a: (ramified induction?, a(xi), discriminant valuation d)
    ram: bool = False
    a_xi: int = 0
    d: int = 0
    # 1b: base conductor exponent (3 or 7) and twist label
    base: int = 0
    twist: str = "1"
    # 2: sign mu(p); 3/4/5: the ramified character mu
    sign: int = 1
    mu: LocalChar | None = None

    def __repr__(self):
        bits = [f"kind={self.kind}", f"p={self.p}"]
        if self.kind == "1a":
            bits += [f"ram={self.ram}", f"a_xi={self.a_xi}", f"d={self.d}"]
        elif self.kind == "1b":
            bits += [f"base=pi{self.base}", f"twist={self.twist}"]
        elif self.kind == "2":
            bits.append(f"sign={self.sign}")
        else:
            bits.append(f"mu={self.mu!r}")
        return "RepDescriptor(" + ", ".join(bits) + ")"


def type1a(p, ram, a_xi, d=None):
    """Dihedral supercuspidal data.

    For an unramified quadratic extension d = 0 and the residue degree is
    2; for ramified ones d is 1 for odd p and 2 or 3 for p = 2.
    """
    if a_xi < 1:
        raise ValueError("inducing character must be ramified")
    if not ram:
        if d not in (None, 0):
            raise ValueError("unramified induction has d = 0")
        return RepDescriptor("1a", p, ram=False, a_xi=a_xi, d=0)
    if p == 2:
        if d not in (2, 3):
            raise ValueError("ramified quadratic over Q_2 has d in {2, 3}")
    else:
        if d not in (None, 1):
            raise ValueError("tame ramified quadratic has d = 1")
        d = 1
    return RepDescriptor("1a", p, ram=True, a_xi=a_xi, d=d)


def type1b(base, twist="1"):
    if base not in (3, 7):
        raise ValueError("exceptional bases have conductor exponent 3 or 7")
    if twist not in Q2_LABELS:
        raise ValueError(f"unknown quadratic twist label {twist!r}")
    return RepDescriptor("1b", 2, base=base, twist=twist)


def type1b_enumerate():
    """All sixteen exceptional supercuspidals of Q_2."""
    return [type1b(b, lab) for b in (3, 7) for lab in Q2_LABELS]


def type2(p, sign=1):
    if sign not in (1, -1):
        raise ValueError("Steinberg twist sign must be +1 or -1")
    return RepDescriptor("2", p, sign=sign)


def _require_ramified(mu):
    if conductor_exp(mu) == 0:
        raise ValueError("mu must be ramified")


def type3(p, mu=None):
    if mu is None:
        if p == 2:
            raise ValueError("over Q_2 the quadratic mu must be given")
        mu = LocalChar(p, 1, ((p - 1) // 2,))
    _require_ramified(mu)
    if mu.p != p or char_order(mu) != 2:
        raise ValueError("Steinberg twist needs a ramified quadratic mu")
    return RepDescriptor("3", p, mu=mu)


def type4(p, mu=None):
    if mu is None:
        if p == 2:
            raise ValueError("over Q_2 the quadratic mu must be given")
        mu = LocalChar(p, 1, ((p - 1) // 2,))
    _require_ramified(mu)
    if mu.p != p or char_order(mu) != 2:
        raise ValueError("this principal-series kind needs mu quadratic")
    return RepDescriptor("4", p, mu=mu)


def type5(p, mu):
    _require_ramified(mu)
    if mu.p != p:
        raise ValueError("prime mismatch")
    if char_order(LocalChar(mu.p, mu.n, mu.exps)) <= 2:
        raise ValueError("this principal-series kind needs mu^2 nontrivial")
    return RepDescriptor("5", p, mu=mu)


def conductor(rep):
    """Conductor exponent a(pi)."""
    if rep.kind == "1a":
        f_e = 1 if rep.ram else 2
        return f_e * rep.a_xi + rep.d
    if rep.kind == "1b":
        table = _TYPE1B_COND_3 if rep.base == 3 else _TYPE1B_COND_7
        return table[rep.twist]
    if rep.kind == "2":
        return 1
    return 2 * conductor_exp(rep.mu)


def twist_conductor(rep, chi):
    """(value-or-bound for a(chi x pi), is_exact).

    Principal-series and Steinberg kinds are computed exactly from GL(1)
    conductors.  For supercuspidals the standard bound
    max(a(pi), 2 a(chi)) is exact unless 2 a(chi) = a(pi) and some twist
    of pi has strictly smaller conductor (only possible over Q_2 with
    a(pi) even >= 4); quadratic twists of the exceptional Q_2
    representations come from the fixed table.
    """
    a_chi = conductor_exp(chi)
    a_pi = conductor(rep)
    if rep.kind == "2":
        return (1 if a_chi == 0 else 2 * a_chi), True
    if rep.kind == "3":
        am = conductor_exp(char_mul(chi, rep.mu))
        return (1 if am == 0 else 2 * am), True
    if rep.kind in ("4", "5"):
        return (conductor_exp(char_mul(chi, rep.mu))
                + conductor_exp(char_mul(chi, char_inv(rep.mu)))), True
    if rep.kind == "1b" and char_order(chi) <= 2 and chi.p == 2:
        # fold the twist into the label
        lab = _mul_label(rep.twist, _label_of_quadratic(chi))
        table = _TYPE1B_COND_3 if rep.base == 3 else _TYPE1B_COND_7
        return table[lab], True
    if 2 * a_chi != a_pi:
        return max(a_pi, 2 * a_chi), True
    exact = rep.p != 2 or twist_minimal_range(a_pi) == {a_pi}
    return a_pi, exact


def _label_of_quadratic(chi):
    for lab in Q2_LABELS:
        if q2_quadratic(lab) == chi:
            return lab
    raise ValueError("not one of the eight quadratic characters of Q_2")


def _mul_label(a, b):
    out = []
    for part in ("b0", "b2", "b3"):
        if (part in a) != (part in b):
            out.append(part)
    return "".join(out) or "1"


def twist_minimal_range(a):
    """Possible minimal conductor exponents among twists, Q_2 supercuspidal.

    For odd a or a = 2 the representation is already twist-minimal; very
    even-conductor representations can drop far under quadratic twisting,
    but from a = 8 on only by one or two steps.
    """
    if a < 2:
        raise ValueError("supercuspidals of Q_2 have conductor exponent >= 2")
    if a % 2 == 1 or a == 2:
        return {a}
    if a >= 8:
        return {a - 2, a - 1}
    return set(range(2, a))


@dataclass(frozen=True, slots=True)
class EulerTag:
    """One factor 1/(1 - unit q^qexp (q^sigma)^sexp X) of an L-function."""

    unit: CycNum
    qexp: Fraction
    sexp: int


@dataclass(frozen=True, slots=True)
class EpsLData:
    """Exact epsilon/L data of a twist chi x pi in X = q^(1/2 - s).

    eps(s) = scalar * X^xexp * (q^sigma)^sexp; L(s) = prod over tags.
    A None scalar means the exact root-of-unity part is not derivable from
    GL(1) inputs (supercuspidal kinds).
    """

    L: tuple[EulerTag, ...]
    scalar: ScaledCyclotomic | None
    xexp: int
    sexp: int


_ONE = CycNum(1, [1])


def _st_L(nu):
    """L-factor tag of nu St: only for unramified nu, pole at nu(p)/q."""
    if conductor_exp(nu) != 0:
        return ()
    return (EulerTag(_ONE * nu.pi_value, Fraction(-1), 0),)


def _ps_L(nu, s_sign):
    """L-factor tag of the unramified character nu |.|^(s_sign * sigma).

    |p|^sigma = q^-sigma, so the +sigma component carries (q^sigma)^-1.
    """
    if conductor_exp(nu) != 0:
        return ()
    return (EulerTag(_ONE * nu.pi_value, Fraction(-1, 2), -s_sign),)


def eps_L_data(rep, chi=None):
    """Epsilon and L data of chi x pi for a character chi of Q_p^x."""
    if chi is None:
        chi = trivial_char(rep.p)
    p = rep.p
    if rep.kind in ("1a", "1b"):
        return EpsLData((), None, 0, 0)
    if rep.kind == "2":
        nu = char_mul(chi, trivial_char(p, rep.sign))
        if conductor_exp(nu) == 0:
            # eps(s, nu St) = -nu(p) X
            return EpsLData(_st_L(nu),
                            ScaledCyclotomic(-_ONE * nu.pi_value, p, 0), 1, 0)
        e = eps_factor(nu)
        return EpsLData((), e * e, 2 * conductor_exp(nu), 0)
    if rep.kind == "3":
        nu = char_mul(chi, rep.mu)
        if conductor_exp(nu) == 0:
            return EpsLData(_st_L(nu),
                            ScaledCyclotomic(-_ONE * nu.pi_value, p, 0), 1, 0)
        e = eps_factor(nu)
        return EpsLData((), e * e, 2 * conductor_exp(nu), 0)
    # principal series: chi mu |.|^sigma + chi mu' |.|^-sigma
    mu2 = rep.mu if rep.kind == "4" else char_inv(rep.mu)
    nu1, nu2 = char_mul(chi, rep.mu), char_mul(chi, mu2)
    a1, a2 = conductor_exp(nu1), conductor_exp(nu2)
    L = _ps_L(nu1, 1) + _ps_L(nu2, -1)
    scalar = eps_factor(nu1) * eps_factor(nu2)
    return EpsLData(L, scalar, a1 + a2, a2 - a1)


def admissible_types(p, val_n):
    """Kinds that occur with trivial central character at val_p(N) = val_n."""
    if val_n < 0:
        raise ValueError("valuation must be >= 0")
    out = set()
    if val_n == 1:
        out.add("2")
    if val_n >= 2:
        out.add("1a")
    if p == 2 and val_n in (3, 4, 6, 7):
        out.add("1b")
    # mu ramified quadratic: a(mu) = 1 for odd p; 2 or 3 over Q_2
    quad_a = {1} if p != 2 else {2, 3}
    if val_n % 2 == 0 and val_n // 2 in quad_a:
        out.add("3")
        out.add("4")
    # mu^2 nontrivial: a(mu) >= 1 (p >= 5), >= 2 (p = 3), >= 4 (p = 2)
    min_a5 = 1 if p >= 5 else (2 if p == 3 else 4)
    if val_n % 2 == 0 and val_n // 2 >= min_a5:
        out.add("5")
    return out


def parse_rep(spec):
    """Parse a descriptor string like "type3:p=2,mu=b2" or "type1b:pi7*b0b2".

    mu specs: a quadratic label over Q_2 (b2, b3, b2b3), "quad" for the
    tame quadratic at odd p, or "l<level>e<exp>" for the character with a
    single exponent at the given level.
    """
    kind, _, rest = spec.partition(":")
    kind = kind.strip().lower()
    if kind == "type1b":
        base, _, tw = rest.strip().partition("*")
        if base not in ("pi3", "pi7"):
            raise ValueError(f"unknown exceptional base {base!r}")
        return type1b(int(base[2]), tw or "1")
    kv = {}
    if rest.strip():
        for item in rest.split(","):
            k, _, v = item.partition("=")
            kv[k.strip()] = v.strip()
    p = int(kv.get("p", 2))
    if kind == "type1a":
        return type1a(p, bool(int(kv.get("ram", 0))), int(kv.get("axi", 1)),
                      int(kv["d"]) if "d" in kv else None)
    if kind == "type2":
        return type2(p, int(kv.get("sign", 1)))
    if kind in ("type3", "type4", "type5"):
        mu = _parse_mu(p, kv.get("mu"))
        return {"type3": type3, "type4": type4}[kind](p, mu) \
            if kind != "type5" else type5(p, mu)
    raise ValueError(f"unknown representation kind {kind!r}")


def _parse_mu(p, s):
    if s is None or s == "quad":
        if p == 2:
            raise ValueError("over Q_2 give mu explicitly (b2, b3, b2b3)")
        return None
    if s.startswith("b"):
        return q2_quadratic(s)
    if s.startswith("l"):
        lev, _, exp = s[1:].partition("e")
        n = int(lev)
        gens = 1 if p != 2 or n < 3 else 2
        exps = (int(exp),) if gens == 1 else (0, int(exp))
        return LocalChar(p, n, exps)
    raise ValueError(f"cannot parse mu spec {s!r}")
