"""Valuations of Whittaker newform values on GL(2, Q_p) coset cells.

A cell is indexed by (t, ell, v): a diagonal power t, a depth ell in
[0, a] for a representation of conductor exponent a, and a unit v.  The
value at a cell expands over unit characters chi of conductor <= ell,
and for the representation kinds with explicit coefficient tables the
coefficients are exact scaled cyclotomic numbers.  On top of that sit
the two lower-bound tables (odd p and p = 2), support/vanishing
criteria, and an independent cross-check of the local functional
equation against brute-force Gauss sums.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm

from .characters import (LocalChar, char_eval, char_inv, char_mul,
                         char_order, chars_of_conductor, conductor_exp,
                         trivial_char)
from .cyclotomic import ScaledCyclotomic
from .gauss import _embedding_valuation, eps_factor, gauss_bruteforce
from .padic import INF, ExtRational
from .reps import conductor, twist_conductor, twist_minimal_range

HALF = Fraction(1, 2)

__all__ = [
    "CosetIndex", "WhittakerVal", "chars_up_to", "atkin_lehner_reflect",
    "boundary_value", "is_vanishing", "coeff_c", "assemble_W",
    "bound_T1", "bound_T2", "verify_basic_identity",
]


@dataclass(frozen=True, slots=True)
class CosetIndex:
    """Index of one coset cell: diagonal power, depth, unit parameter."""

    t: int
    ell: int
    v: int = 1


@dataclass(frozen=True, slots=True)
class WhittakerVal:
    """A Whittaker (or coefficient) value: valuation plus what's known.

    When `exact` is set and no flag is raised, it is the value and
    `valuation` is its exact valuation.  `unit_ambiguous` means the true
    value is `exact` times an undetermined root of unity -- exactly a
    sign when `sign_only`.  `is_lower_bound` means only valuation >=
    `valuation` is claimed (then `exact` is None);
    `cancellation_possible` marks bounds where a cancellation could push
    the true valuation higher.  `candidates` lists the possible exact
    values when a small sign enumeration pins them down.
    """

    valuation: ExtRational
    exact: ScaledCyclotomic | None = None
    unit_ambiguous: bool = False
    sign_only: bool = False
    cancellation_possible: bool = False
    is_lower_bound: bool = False
    candidates: tuple = ()

    def is_zero(self):
        return self.valuation.is_infinite and not self.is_lower_bound


def _val_cyc(value, p):
    """Exact p-adic valuation of a cyclotomic number."""
    if value.is_zero():
        return INF
    v = _embedding_valuation(value, p)
    if v is None:  # pragma: no cover - sizes in this module stay small
        raise RuntimeError("p-adic valuation did not stabilize")
    return v


def _val_sc(x, p):
    if x.is_zero():
        return INF
    if x.qbase == p:
        return _val_cyc(x.unit, p) + ExtRational(x.qexp)
    return _val_cyc(x.as_cyc(), p)


def _zero(p):
    return WhittakerVal(INF, ScaledCyclotomic(0, p, 0))


def _exact_wv(x, p, ambiguous=False, sign_only=False):
    return WhittakerVal(_val_sc(x, p), x, unit_ambiguous=ambiguous,
                        sign_only=sign_only and ambiguous)


def chars_up_to(p, ell):
    """The unit characters with conductor exponent at most ell."""
    out = [trivial_char(p)]
    for j in range(1, ell + 1):
        out.extend(chars_of_conductor(p, j))
    return out


def atkin_lehner_reflect(t, ell, a):
    """Index of the reflected cell at depth a - ell.

    The Whittaker values at a cell and at its reflection (with v
    negated) agree up to a sign times a p-power root of unity which may
    depend on v, so only valuations transport across the reflection.
    """
    if not 0 <= ell <= a:
        raise ValueError("need 0 <= ell <= a")
    return t + 2 * ell - a, a - ell


def boundary_value(rep, t, ell):
    """Whittaker value on the boundary columns ell = 0 and ell = a.

    There the value does not depend on v and equals a sign times a
    p-power root of unity times an explicit power of q, so the support
    and valuation are pinned down but not the unit.
    """
    p = rep.p
    a = conductor(rep)
    if ell not in (0, a):
        raise ValueError("boundary cells have ell = 0 or ell = a(pi)")
    if a == 1:
        if t + ell >= -1:
            e = -(1 + t + ell)
            return WhittakerVal(ExtRational(e), ScaledCyclotomic(1, p, e),
                                unit_ambiguous=True)
        return _zero(p)
    if t + ell == -a:
        return WhittakerVal(ExtRational(0), ScaledCyclotomic(1, p, 0),
                            unit_ambiguous=True)
    return _zero(p)


def is_vanishing(rep, pi0_conductor, t, ell):
    """True when the support criteria force W = 0 on the whole cell.

    `pi0_conductor` is the least conductor exponent among the twists of
    the representation; pass None when unknown and the criteria that
    need it are skipped (it is filled in automatically whenever the
    twist-minimal range is a single point).
    """
    p = rep.p
    a = conductor(rep)
    if a < 2:
        raise ValueError("support criteria need conductor exponent >= 2")
    if not 0 <= ell <= a:
        raise ValueError("need 0 <= ell <= a")
    supercuspidal = rep.kind in ("1a", "1b")
    if pi0_conductor is None and supercuspidal:
        if p != 2 or twist_minimal_range(a) == {a}:
            pi0_conductor = a
    m = max(a, 2 * ell)
    if t < -m:
        return True
    if t > -m and 2 * ell != a:
        return True
    if supercuspidal:
        if pi0_conductor is not None and t > -pi0_conductor:
            return True
        if p != 2 and t != -m:
            return True
    if p == 2 and 2 * ell == a:
        if supercuspidal and pi0_conductor is not None:
            if pi0_conductor <= a - 1 and t <= -a:
                return True
            if pi0_conductor <= a - 2 and t <= -a + 1:
                return True
        if rep.kind in ("3", "4") and t <= -a + 1:
            return True
        if rep.kind == "5" and t <= -a + 2:
            return True
    return False


def coeff_c(rep, t, ell, chi, sigma_val=Fraction(0)):
    """Coefficient of chi(v) in the unit-direction expansion of W.

    Defined for the kinds with explicit coefficient tables (supercuspidal
    with known epsilon shape, and the three ramified-quadratic non-cuspidal
    kinds); needs 1 <= ell <= a/2 and chi trivial at p with conductor
    exponent <= ell.  The ramified-quadratic kinds must be normalized so
    mu(p) = 1.  `sigma_val` is |val_p(q^sigma)| for the kinds carrying
    the extra unramified parameter; rows where only that modulus enters
    come back with exact valuations or honest lower bounds.
    """
    p = rep.p
    a = conductor(rep)
    sigma_val = Fraction(sigma_val)
    if sigma_val < 0:
        raise ValueError("sigma_val is the modulus of a valuation")
    if rep.kind in ("1b", "2"):
        raise ValueError("no coefficient table for this kind")
    if ell < 1 or 2 * ell > a:
        raise ValueError("need 1 <= ell <= a/2")
    if chi.p != p:
        raise ValueError("chi lives over the wrong prime")
    if chi.pi_value != 1:
        raise ValueError("chi must be trivial at p")
    if conductor_exp(chi) > ell:
        raise ValueError("need a(chi) <= ell")
    if rep.kind == "1a":
        return _c_supercuspidal(rep, t, ell, chi, a)
    if rep.mu.pi_value != 1:
        raise ValueError("normalize the twist so mu(p) = 1")
    if rep.kind == "3":
        return _c_special(rep, t, ell, chi, a)
    if rep.kind == "4":
        return _c_selfdual_ps(rep, t, ell, chi, a, sigma_val)
    return _c_general_ps(rep, t, ell, chi, a, sigma_val)


def _c_supercuspidal(rep, t, ell, chi, a):
    p = q = rep.p
    a_chi = conductor_exp(chi)
    if a_chi == 0:
        if ell == 1 and t == -a:
            # -eps(1/2, pi) / (q - 1) with eps(1/2, pi) = +-1
            x = ScaledCyclotomic(-Fraction(1, q - 1), p, 0)
            return WhittakerVal(ExtRational(0), x, unit_ambiguous=True,
                                sign_only=True)
        return _zero(p)
    if a_chi < ell:
        return _zero(p)
    if a == 2:
        # ell = 1, odd p; the two Gauss-sum units contribute digit sums
        # the descriptor does not know, so only a bound survives
        if t != -2:
            return _zero(p)
        return WhittakerVal(ExtRational(-HALF + Fraction(1, p - 1)), None,
                            is_lower_bound=True)
    if 2 * ell < a:
        if t != -a:
            return _zero(p)
        if ell == 1:
            return WhittakerVal(ExtRational(Fraction(1, p - 1)), None,
                                is_lower_bound=True)
        x = (ScaledCyclotomic(Fraction(1, q - 1), p, 1 - Fraction(ell, 2))
             * eps_factor(chi))
        return WhittakerVal(ExtRational(1 - Fraction(ell, 2)), x,
                            unit_ambiguous=True,
                            sign_only=char_order(chi) <= 2)
    # central column ell = a/2, a > 2
    tw, exact = twist_conductor(rep, chi)
    val = ExtRational(1 - Fraction(a, 4))
    if exact:
        if t != -tw:
            return _zero(p)
        x = (ScaledCyclotomic(Fraction(1, q - 1), p, 1 - Fraction(ell, 2))
             * eps_factor(chi))
        return WhittakerVal(val, x, unit_ambiguous=True,
                            sign_only=char_order(chi) <= 2)
    # the twisted conductor can drop, so the support is only windowed;
    # inside the window the true valuation is this or infinite
    if -tw <= t <= -max(2, min(twist_minimal_range(a))):
        return WhittakerVal(val, None, is_lower_bound=True)
    return _zero(p)


def _c_special(rep, t, ell, chi, a):
    p = q = rep.p
    mu = rep.mu
    a_chi = conductor_exp(chi)
    if a_chi == 0:
        if ell == 1 and t == -a:
            x = ScaledCyclotomic(-Fraction(1, q - 1) * char_eval(mu, -1), p, 0)
            return _exact_wv(x, p)
        return _zero(p)
    if chi == mu:
        if ell != conductor_exp(mu):
            return _zero(p)
        if t == -2:
            x = (ScaledCyclotomic(Fraction(1, q - 1), p, -Fraction(ell, 2))
                 * eps_factor(mu))
            return _exact_wv(x, p)
        if t >= -1:
            x = (ScaledCyclotomic(-Fraction(q + 1), p,
                                  -(t + 2 + Fraction(ell, 2)))
                 * eps_factor(mu))
            return _exact_wv(x, p)
        return _zero(p)
    if a_chi != ell:
        return _zero(p)
    if t != -2 * conductor_exp(char_mul(chi, mu)):
        return _zero(p)
    e = eps_factor(char_mul(char_inv(chi), mu))
    x = (ScaledCyclotomic(Fraction(1, q - 1), p, 1 - Fraction(ell, 2))
         * e * e * eps_factor(chi))
    return _exact_wv(x, p)


def _c_selfdual_ps(rep, t, ell, chi, a, sigma_val):
    p = q = rep.p
    mu = rep.mu
    a_chi = conductor_exp(chi)
    if chi == mu:
        if ell != conductor_exp(mu):
            return _zero(p)
        if t == -2:
            x = (ScaledCyclotomic(Fraction(1, q - 1), p, -Fraction(ell, 2))
                 * eps_factor(mu))
            return _exact_wv(x, p)
        if t == -1:
            # -q^(-(ell+1)/2) eps (q^-sigma + q^sigma)
            base = (ScaledCyclotomic(1, p, -Fraction(ell + 1, 2))
                    * eps_factor(mu))
            return _sym_sigma_row(base, t, p, sigma_val)
        if t >= 0:
            # the sigma-sum has extreme exponents +-(t+2), each hit once
            base = (ScaledCyclotomic(1, p, -Fraction(t + ell + 2, 2))
                    * eps_factor(mu))
            return _sym_sigma_row(base, t, p, sigma_val)
        return _zero(p)
    if a_chi == 0:
        if ell == 1 and t == -a:
            x = ScaledCyclotomic(-Fraction(1, q - 1) * char_eval(mu, -1), p, 0)
            return _exact_wv(x, p)
        return _zero(p)
    if a_chi != ell:
        return _zero(p)
    if t != -2 * conductor_exp(char_mul(chi, mu)):
        return _zero(p)
    e = eps_factor(char_mul(char_inv(chi), mu))
    x = (ScaledCyclotomic(Fraction(1, q - 1), p, 1 - Fraction(ell, 2))
         * e * e * eps_factor(chi))
    return _exact_wv(x, p)


def _sym_sigma_row(base, t, p, sigma_val):
    """Row whose sigma-part is a symmetric sum with unique extremes.

    The extreme exponents +-(t+2) each occur once, so for sigma_val > 0
    the valuation is exact whichever sign val_p(q^sigma) carries; at
    sigma_val = 0 the sum of units can cancel and only a bound remains.
    """
    bval = _val_sc(base, p)
    if sigma_val:
        return WhittakerVal(bval + ExtRational(-(t + 2) * sigma_val), None)
    return WhittakerVal(bval, None, is_lower_bound=True,
                        cancellation_possible=True)


def _c_general_ps(rep, t, ell, chi, a, sigma_val):
    p = q = rep.p
    mu = rep.mu
    mu_inv = char_inv(mu)
    a_mu = conductor_exp(mu)
    a_mu2 = conductor_exp(char_mul(mu, mu))
    a_chi = conductor_exp(chi)
    if a_chi == 0:
        if ell == 1 and t == -a:
            x = ScaledCyclotomic(-Fraction(1, q - 1) * char_eval(mu, -1), p, 0)
            return _exact_wv(x, p)
        return _zero(p)
    if chi == mu or chi == mu_inv:
        if ell != a_mu:
            return _zero(p)
        # eps(1/2, mu^(-2s)) eps(1/2, mu^s) for chi = mu^s
        other = char_mul(mu_inv, mu_inv) if chi == mu else char_mul(mu, mu)
        eps_pair = eps_factor(other) * eps_factor(chi)
        if t == -a_mu2 - 1:
            unit = (ScaledCyclotomic(-Fraction(1, q - 1), p,
                                     -Fraction(ell - 1, 2)) * eps_pair)
            return _asym_sigma_row(unit, a_mu2 - 1, p, sigma_val)
        if t >= -a_mu2:
            unit = (ScaledCyclotomic(1, p, -Fraction(t + ell + a_mu2, 2))
                    * eps_pair)
            return _asym_sigma_row(unit, t + 2 * a_mu2, p, sigma_val)
        return _zero(p)
    if a_chi != ell:
        return _zero(p)
    am = conductor_exp(char_mul(chi, mu))
    am_inv = conductor_exp(char_mul(chi, mu_inv))
    if t != -am - am_inv:
        return _zero(p)
    chi_inv = char_inv(chi)
    unit = (ScaledCyclotomic(Fraction(1, q - 1), p, 1 - Fraction(ell, 2))
            * eps_factor(char_mul(chi_inv, mu_inv))
            * eps_factor(char_mul(chi_inv, mu))
            * eps_factor(chi))
    return _asym_sigma_row(unit, am_inv - am, p, sigma_val)


def _asym_sigma_row(unit, k, p, sigma_val):
    """Row of shape unit * q^(-sigma k): exact for k = 0, else the
    valuation is exact at sigma_val = 0 and a lower bound otherwise
    (the sign of val_p(q^sigma) is not part of the data)."""
    if k == 0:
        return _exact_wv(unit, p)
    base = _val_sc(unit, p)
    if sigma_val == 0:
        return WhittakerVal(base, None)
    return WhittakerVal(base + ExtRational(-abs(k) * sigma_val), None,
                        is_lower_bound=True)


def _blur_unit(wv, p):
    """Push a value through multiplication by an unknown root of unity."""
    if wv.is_zero():
        return wv
    if wv.exact is None:
        return WhittakerVal(wv.valuation, None,
                            cancellation_possible=wv.cancellation_possible,
                            is_lower_bound=wv.is_lower_bound)
    return WhittakerVal(wv.valuation, wv.exact, unit_ambiguous=True)


def assemble_W(rep, t, ell, v, sigma_val=Fraction(0)):
    """The Whittaker value at the cell (t, ell, v).

    Inside 1 <= ell <= a/2 this sums the coefficient table against the
    characters evaluated at v; above the middle it reflects first (which
    costs an undetermined root of unity); on the boundary it uses the
    closed form.  Exact values are returned whenever every contributing
    coefficient is exact; sign-only ambiguities are enumerated, and
    otherwise an ultrametric bound is reported.
    """
    p = rep.p
    a = conductor(rep)
    if not 0 <= ell <= a:
        raise ValueError("need 0 <= ell <= a")
    if gcd(v, p) != 1:
        raise ValueError("v must be a unit at p")
    if ell in (0, a):
        return boundary_value(rep, t, ell)
    if 2 * ell > a:
        t2, ell2 = atkin_lehner_reflect(t, ell, a)
        return _blur_unit(assemble_W(rep, t2, ell2, -v, sigma_val), p)
    terms = []
    for chi in chars_up_to(p, ell):
        c = coeff_c(rep, t, ell, chi, sigma_val)
        if not c.is_zero():
            terms.append((c, char_eval(chi, v)))
    if not terms:
        return _zero(p)
    summable = all(c.exact is not None and not c.is_lower_bound
                   and (not c.unit_ambiguous or c.sign_only)
                   for c, _ in terms)
    if summable:
        fixed = ScaledCyclotomic(0, p, 0)
        flex = []
        for c, chi_v in terms:
            x = c.exact * chi_v
            if c.unit_ambiguous:
                flex.append(x)
            else:
                fixed = fixed + x
        if len(flex) <= 10:
            sums = []
            for mask in range(1 << len(flex)):
                s = fixed
                for i, x in enumerate(flex):
                    s = s + (-x if mask >> i & 1 else x)
                sums.append(s)
            vals = [_val_sc(s, p) for s in sums]
            vmin = min(vals)
            if all(val == vmin for val in vals):
                if not flex:
                    return WhittakerVal(vmin, sums[0])
                return WhittakerVal(vmin, sums[0], unit_ambiguous=True,
                                    sign_only=(len(flex) == 1
                                               and fixed.is_zero()),
                                    candidates=tuple(sums))
            return WhittakerVal(vmin, None, is_lower_bound=True,
                                cancellation_possible=True)
    stated = [c.valuation for c, _ in terms]
    vmin = min(stated)
    achievers = [c for c, _ in terms if c.valuation == vmin]
    if len(achievers) == 1 and not achievers[0].is_lower_bound:
        # unique strict minimum with exact valuation: ultrametric equality
        return WhittakerVal(vmin, None)
    return WhittakerVal(vmin, None, is_lower_bound=True,
                        cancellation_possible=True)


def bound_T1(rep, t, ell, v=1, f_res=1, sigma_val=Fraction(0)):
    """Valuation lower bound for odd p, uniform in v (v is ignored).

    `f_res` scales the residue-degree-linear parts; `sigma_val` is
    |val_p(q^sigma)| for the kinds carrying the extra parameter.
    """
    p = rep.p
    if p == 2:
        raise ValueError("this bound table is for odd p")
    a = conductor(rep)
    if a < 2:
        raise ValueError("needs conductor exponent >= 2")
    if not 0 <= ell <= a:
        raise ValueError("need 0 <= ell <= a")
    f = Fraction(f_res)
    sigma_val = Fraction(sigma_val)
    m = max(a, 2 * ell)
    if t < -m:
        return INF
    if t > -m and 2 * ell != a:
        return INF
    if rep.kind == "1a" and t != -m:
        # odd-p supercuspidals are twist-minimal, so off-corner cells vanish
        return INF
    rows = []
    if ell in (0, a):
        rows.append(ExtRational(0))
    if a > 2 and ell in (1, a - 1):
        rows.append(ExtRational(0))
    if ell not in (0, 1, a - 1, a) and 2 * ell != a:
        rows.append(ExtRational(f * (1 - Fraction(min(ell, a - ell), 2))))
    if a == 2 and ell == 1 and t == -2:
        rows.append(ExtRational(-f + min(f / 2, HALF + Fraction(1, p - 1))))
    if 2 * ell == a:
        extra = HALF + Fraction(1, p - 1)
        if rep.kind == "1a":
            if a == 2:
                rows.append(ExtRational(-f + extra))
            elif t == -a:
                rows.append(ExtRational(f * (1 - Fraction(a, 4))))
        elif rep.kind == "3":
            # over odd p this kind always has a = 2
            rows.append(ExtRational(-Fraction(t + 4, 2) * f
                                    + min(-f * Fraction(t + 1, 2), extra)))
        elif rep.kind == "4":
            rows.append(ExtRational(-f - (t + 2) * sigma_val
                                    + min(-f * Fraction(t + 1, 2), extra)))
        elif rep.kind == "5":
            if a == 2:
                rows.append(ExtRational(-f * Fraction(t + 4, 2) + extra
                                        - (t + 2) * sigma_val))
            else:
                rows.append(ExtRational(
                    -f * Fraction(max(t + a, Fraction(a, 2) - 2), 2)
                    - (t + a) * sigma_val))
    if not rows:
        raise RuntimeError("no bound row applies; the table is incomplete")
    return max(rows)


def bound_T2(rep, pi0_conductor, t, ell, sigma_val=Fraction(0)):
    """Valuation lower bound over Q_2, uniform in v.

    `pi0_conductor` is the least conductor exponent among twists (for
    the supercuspidal kinds; None when unknown).  The central-column
    rows are per-kind; several of them are sharp equalities, including
    genuine infinities where the support analysis kills the cell.
    """
    p = rep.p
    if p != 2:
        raise ValueError("this bound table is for p = 2")
    a = conductor(rep)
    if a < 2:
        raise ValueError("needs conductor exponent >= 2")
    if not 0 <= ell <= a:
        raise ValueError("need 0 <= ell <= a")
    sigma_val = Fraction(sigma_val)
    supercuspidal = rep.kind in ("1a", "1b")
    if pi0_conductor is None and supercuspidal \
            and twist_minimal_range(a) == {a}:
        pi0_conductor = a
    m = max(a, 2 * ell)
    if t < -m:
        return INF
    if t > -m and 2 * ell != a:
        return INF
    if supercuspidal and pi0_conductor is not None and t > -pi0_conductor:
        return INF
    rows = []
    if ell in (0, 1, a - 1, a):
        rows.append(ExtRational(0))
    elif 2 * ell != a:
        rows.append(ExtRational(1 - Fraction(min(ell, a - ell), 2)))
    if a > 6 and ell in (3, a - 3):
        rows.append(ExtRational(0))
    if 2 * ell == a and a > 2:
        if supercuspidal:
            rows.append(ExtRational(1 - Fraction(a, 4)))
            if t == -a + 1 and a in (6, 8):
                rows.append(ExtRational(0))
        elif rep.kind == "3":
            if t >= -2:
                off = Fraction(3) if a == 4 else Fraction(7, 2)
                rows.append(ExtRational(-(t + off)))
            elif a == 6 and t == -4:
                rows.append(ExtRational(-HALF))
            else:
                rows.append(INF)
        elif rep.kind == "4":
            if t >= -2:
                off = Fraction(4) if a == 4 else Fraction(5)
                rows.append(ExtRational(-Fraction(t + off, 2)
                                        - (t + 2) * sigma_val))
            elif a == 6 and t == -4:
                rows.append(ExtRational(-HALF))
            else:
                rows.append(INF)
        elif rep.kind == "5":
            if 2 * t >= -a:
                rows.append(ExtRational(Fraction(1 - t - a, 2)
                                        - (t + a - 2) * sigma_val))
            elif t >= -a + 2:
                rows.append(ExtRational(Fraction(4 - a, 4)
                                        - (t + a - 2) * sigma_val))
            else:
                rows.append(INF)
    if not rows:
        raise RuntimeError("no bound row applies; the table is incomplete")
    return max(rows)


_GAUSS_CACHE = {}


def _gauss_at(chi, ell, p):
    """Brute-force Gauss sum at x = p^(-ell), cached; the oracle side."""
    key = (chi, ell)
    if key not in _GAUSS_CACHE:
        _GAUSS_CACHE[key] = gauss_bruteforce(
            chi, Fraction(1, p ** ell), want_valuation=False).value
    return _GAUSS_CACHE[key]


def _eps_half_twist(rep, chi):
    """eps(1/2) of the chi-twist for the ramified-quadratic special kind."""
    nu = char_mul(chi, rep.mu)
    if conductor_exp(nu) == 0:
        # twist sits on the Steinberg line: -nu(p) q^(1/2-s) with nu(p) = 1
        return ScaledCyclotomic(-1, rep.p, 0)
    e = eps_factor(nu)
    return e * e


def verify_basic_identity(rep, ell, chi):
    """Cross-check the local functional equation at one (ell, chi).

    Implemented for the ramified-quadratic special kind, where every
    coefficient is exact.  Up to the middle column the coefficient table
    is compared against brute-force Gauss sums monomial by monomial
    (with the L-factor geometry cleared); above the middle the
    coefficients are only defined jointly, so the identity-solved values
    are compared per v against the reflected assembled values and the
    ratio must be a sign times a p-power root of unity.  That joint
    verdict is shared by every chi at the same ell.
    """
    if rep.kind != "3":
        raise ValueError("identity check needs the ramified-quadratic "
                         "special kind")
    mu = rep.mu
    if mu.pi_value != 1:
        raise ValueError("normalize the twist so mu(p) = 1")
    p = rep.p
    a = conductor(rep)
    if not 0 <= ell <= a:
        raise ValueError("need 0 <= ell <= a(pi)")
    if chi.p != p or chi.pi_value != 1:
        raise ValueError("chi must be a unit character over the same prime")
    if conductor_exp(chi) > ell:
        raise ValueError("need a(chi) <= ell")
    if ell == 0:
        return _identity_boundary(rep, a, p)
    if 2 * ell <= a:
        return _identity_low(rep, ell, chi, a)
    return _identity_high(rep, ell, a)


def _identity_boundary(rep, a, p):
    # the right side is the unit average of psi, which is exactly 1, so
    # the solved support is the single cell t = -a at valuation 0
    if ScaledCyclotomic(_gauss_at(trivial_char(p), 0, p), p, 0) != 1:
        return False
    for t in range(-a - 3, 4):
        w = boundary_value(rep, t, 0)
        if t == -a:
            if w.valuation != ExtRational(0):
                return False
        elif not w.is_zero():
            return False
    return True


def _identity_low(rep, ell, chi, a):
    p = rep.p
    mu = rep.mu
    G = ScaledCyclotomic(_gauss_at(char_inv(chi), ell, p), p, 0)
    a_chi = conductor_exp(chi)
    if chi == mu:
        if ell != conductor_exp(mu):
            # both sides vanish; the Gauss sum is the oracle for that
            return G.is_zero() and _all_zero(rep, ell, chi, range(-2 * a, 3))
        # both L-factors are nontrivial; clearing them forces the tail
        # to be geometric with ratio 1/q and the two leading terms to
        # telescope against the Gauss sum
        c2 = coeff_c(rep, -2, ell, chi).exact
        c1 = coeff_c(rep, -1, ell, chi).exact
        qfac = ScaledCyclotomic(1, p, 1)
        if c2 * qfac != G:
            return False
        if (c2 / qfac) - c1 != G:
            return False
        for t in range(-1, 3):
            if coeff_c(rep, t, ell, chi).exact / qfac \
                    != coeff_c(rep, t + 1, ell, chi).exact:
                return False
        return _all_zero(rep, ell, chi, range(-2 * a, -2))
    # chi != mu: both L-factors are 1 and each side is a single monomial
    if (a_chi == 0 and ell > 1) or 0 < a_chi < ell:
        if not G.is_zero():
            return False
        return _all_zero(rep, ell, chi, range(-2 * a, 3))
    t0 = -a if a_chi == 0 else -2 * conductor_exp(char_mul(chi, mu))
    c = coeff_c(rep, t0, ell, chi).exact
    if _eps_half_twist(rep, chi) * c != G:
        return False
    return _all_zero(rep, ell, chi, (t for t in range(-2 * a, 3) if t != t0))


def _all_zero(rep, ell, chi, ts):
    return all(coeff_c(rep, t, ell, chi).is_zero() for t in ts)


_IDENTITY_HIGH_CACHE = {}


def _identity_high(rep, ell, a):
    key = (rep, ell)
    if key not in _IDENTITY_HIGH_CACHE:
        _IDENTITY_HIGH_CACHE[key] = _identity_high_check(rep, ell, a)
    return _IDENTITY_HIGH_CACHE[key]


def _identity_high_check(rep, ell, a):
    p = rep.p
    mu = rep.mu
    t0 = -2 * ell
    # solved from the identity: only characters of conductor exactly ell
    # survive, one monomial each at t = -2 ell, with coefficient
    # eps(1/2, (chi mu)^-1)^2 * GaussSum(p^-ell, chi^-1)
    sol = []
    for chi in chars_of_conductor(p, ell):
        e = eps_factor(char_inv(char_mul(chi, mu)))
        sol.append((chi, e * e * _gauss_at(char_inv(chi), ell, p)))
    for v in (u for u in range(1, p ** ell) if u % p):
        for dt in range(-2, 3):
            A = ScaledCyclotomic(0, p, 0)
            if dt == 0:
                for chi, c in sol:
                    A = A + c * char_eval(chi, v)
            B = _reflected_value(rep, t0 + dt, ell, v, a)
            if A.is_zero() != B.is_zero():
                return False
            if not A.is_zero() and not _unit_ratio_ok(A, B, p):
                return False
    return True


def _reflected_value(rep, t, ell, v, a):
    """Exact assembled value at the reflected cell (times an unknown
    sign and p-power root of unity relative to the original cell)."""
    t2, ell2 = atkin_lehner_reflect(t, ell, a)
    if ell2 == 0:
        w = boundary_value(rep, t2, 0)
        if w.is_zero():
            return ScaledCyclotomic(0, rep.p, 0)
        return ScaledCyclotomic(1, rep.p, 0)
    out = ScaledCyclotomic(0, rep.p, 0)
    for chi in chars_up_to(rep.p, ell2):
        c = coeff_c(rep, t2, ell2, chi)
        if not c.is_zero():
            out = out + c.exact * char_eval(chi, -v)
    return out


def _unit_ratio_ok(A, B, p):
    """True when A = B times a sign times a p-power root of unity."""
    a2 = (A * A).as_cyc()
    b2 = (B * B).as_cyc()
    M = lcm(a2.M, b2.M)
    pk = 1
    while M % (pk * p) == 0:
        pk *= p
    return a2 ** pk == b2 ** pk
