"""Representation descriptors: conductors, twists, admissible kinds."""

from fractions import Fraction

import pytest

from maninkit.characters import LocalChar, char_inv, q2_quadratic, trivial_char
from maninkit.cyclotomic import CycNum, ScaledCyclotomic, zeta
from maninkit.gauss import eps_factor
from maninkit.reps import (
    admissible_types,
    conductor,
    eps_L_data,
    parse_rep,
    twist_conductor,
    twist_minimal_range,
    type1a,
    type1b,
    type1b_enumerate,
    type2,
    type3,
    type4,
    type5,
)


def test_conductors():
    assert conductor(type2(7)) == 1
    assert conductor(type3(3)) == 2
    assert conductor(type3(2, q2_quadratic("b2"))) == 4
    assert conductor(type3(2, q2_quadratic("b2b3"))) == 6
    assert conductor(type4(5)) == 2
    assert conductor(type5(5, LocalChar(5, 1, (1,)))) == 2
    assert conductor(type5(3, LocalChar(3, 2, (1,)))) == 4
    assert conductor(type1a(3, False, 1)) == 2    # unramified induction: 2 a(xi)
    assert conductor(type1a(3, False, 2)) == 4
    assert conductor(type1a(3, True, 1)) == 2     # tame: a(xi) + 1
    assert conductor(type1a(2, False, 1)) == 2
    assert conductor(type1a(2, True, 1, 2)) == 3
    assert conductor(type1a(2, True, 2, 3)) == 5


def test_constructor_validation():
    with pytest.raises(ValueError):
        type2(3, sign=0)
    with pytest.raises(ValueError):
        type3(2)                       # Q_2 needs mu spelled out
    with pytest.raises(ValueError):
        type3(3, trivial_char(3))      # mu must be ramified
    with pytest.raises(ValueError):
        type3(5, LocalChar(5, 1, (1,)))  # order 4, not quadratic
    with pytest.raises(ValueError):
        type5(5, LocalChar(5, 1, (2,)))  # quadratic, needs order > 2
    with pytest.raises(ValueError):
        type5(2, q2_quadratic("b2b3"))
    with pytest.raises(ValueError):
        type1a(3, True, 1, d=2)        # tame discriminant is 1
    with pytest.raises(ValueError):
        type1a(2, True, 1, d=1)
    with pytest.raises(ValueError):
        type1b(5)


def test_type1b_family():
    reps = type1b_enumerate()
    assert len(reps) == 16
    conds = sorted(conductor(r) for r in reps)
    assert conds == [3, 3, 4, 4, 6, 6, 6, 6] + [7] * 8
    # twisting permutes the family and matches the table
    r = type1b(3, "1")
    assert twist_conductor(r, q2_quadratic("b2")) == (4, True)
    assert twist_conductor(r, q2_quadratic("b0b3")) == (6, True)
    assert twist_conductor(r, trivial_char(2, -1)) == (3, True)
    r7 = type1b(7, "b2b3")
    for lab in ("1", "b2", "b3", "b0b2b3"):
        assert twist_conductor(r7, q2_quadratic(lab)) == (7, True)


def test_twist_conductor_rules():
    b2, b3 = q2_quadratic("b2"), q2_quadratic("b3")
    r = type3(2, b2)
    assert twist_conductor(r, b2) == (1, True)       # chi mu unramified: Steinberg
    assert twist_conductor(r, b3) == (6, True)       # a(b2 b3) = 3
    assert twist_conductor(type2(3), LocalChar(3, 1, (1,))) == (2, True)
    assert twist_conductor(type2(3), trivial_char(3, -1)) == (1, True)
    mu = LocalChar(5, 1, (1,))
    r5 = type5(5, mu)
    assert twist_conductor(r5, char_inv(mu)) == (1, True)   # 0 + a(mu^-2)
    assert twist_conductor(r5, mu) == (1, True)             # a(mu^2) + 0
    # supercuspidal bound: exact unless 2 a(chi) hits a(pi) and the
    # conductor could actually drop (Q_2 only, even a >= 4)
    r1a = type1a(3, False, 2)  # a = 4
    assert twist_conductor(r1a, LocalChar(3, 1, (1,))) == (4, True)
    assert twist_conductor(r1a, LocalChar(3, 2, (1,))) == (4, True)
    assert twist_conductor(r1a, LocalChar(3, 3, (1,))) == (6, True)
    r2a4 = type1a(2, False, 2)  # a = 4 over Q_2: a twist may drop to 2 or 3
    assert twist_conductor(r2a4, LocalChar(2, 2, (1,))) == (4, False)
    r2a6 = type1a(2, True, 3, 3)  # a = 6, same story
    assert twist_conductor(r2a6, q2_quadratic("b3")) == (6, False)


def test_twist_minimal_range():
    assert twist_minimal_range(2) == {2}
    assert twist_minimal_range(3) == {3}
    assert twist_minimal_range(5) == {5}
    assert twist_minimal_range(4) == {2, 3}
    assert twist_minimal_range(6) == {2, 3, 4, 5}
    assert twist_minimal_range(8) == {6, 7}
    assert twist_minimal_range(12) == {10, 11}
    with pytest.raises(ValueError):
        twist_minimal_range(1)


def test_admissible_types():
    assert admissible_types(2, 1) == {"2"}
    assert admissible_types(2, 2) == {"1a"}
    assert admissible_types(2, 3) == {"1a", "1b"}
    assert admissible_types(2, 4) == {"1a", "1b", "3", "4"}
    assert admissible_types(2, 5) == {"1a"}
    assert admissible_types(2, 6) == {"1a", "1b", "3", "4"}
    assert admissible_types(2, 7) == {"1a", "1b"}
    assert admissible_types(2, 8) == {"1a", "5"}
    assert admissible_types(3, 2) == {"1a", "3", "4"}
    assert admissible_types(3, 4) == {"1a", "5"}
    assert admissible_types(5, 2) == {"1a", "3", "4", "5"}
    assert admissible_types(7, 1) == {"2"}
    assert admissible_types(7, 3) == {"1a"}


def test_eps_L_structure():
    one = CycNum(1, [1])
    # plain Steinberg: L pole at 1/q, eps = -X
    d = eps_L_data(type2(3))
    assert len(d.L) == 1 and d.L[0].qexp == -1 and d.L[0].unit == one
    assert d.scalar == -1 and d.xexp == 1 and d.sexp == 0
    d = eps_L_data(type2(3, -1))
    assert d.L[0].unit == -1 and d.scalar == ScaledCyclotomic(one, 3, 0)
    # ramified Steinberg twist: no L, eps(chi mu)^2 X^(2 a)
    b2 = q2_quadratic("b2")
    d = eps_L_data(type3(2, b2))
    assert d.L == () and d.xexp == 4
    assert d.scalar == eps_factor(b2) * eps_factor(b2)
    # aligning twist turns it back into Steinberg
    d = eps_L_data(type3(2, b2), b2)
    assert len(d.L) == 1 and d.scalar == -1 and d.xexp == 1
    # principal series with mu quadratic: chi = mu row has trivial eps
    d = eps_L_data(type4(3), LocalChar(3, 1, (1,)))
    assert d.xexp == 0 and d.scalar == 1
    assert sorted(t.sexp for t in d.L) == [-1, 1]
    assert all(t.qexp == Fraction(-1, 2) for t in d.L)
    # mu^2 nontrivial: the unbalanced twist keeps one L factor; the
    # chi = mu^-1 twist leaves the +sigma component unramified, so its
    # pole sits at q^(-sigma-s)
    mu = LocalChar(5, 1, (1,))
    d = eps_L_data(type5(5, mu), char_inv(mu))
    assert len(d.L) == 1 and d.L[0].sexp == -1
    assert d.xexp == 1 and d.sexp == 1
    d = eps_L_data(type5(5, mu), mu)
    assert d.xexp == 1 and d.sexp == -1
    assert len(d.L) == 1 and d.L[0].sexp == 1
    # supercuspidal kinds have no GL(1)-derivable scalar
    d = eps_L_data(type1b(3, "1"), b2)
    assert d.L == () and d.scalar is None


def test_parse_roundtrip():
    r = parse_rep("type3:p=2,mu=b2")
    assert r.kind == "3" and conductor(r) == 4
    r = parse_rep("type1b:pi7*b0b2")
    assert r.kind == "1b" and r.base == 7 and r.twist == "b0b2"
    r = parse_rep("type1b:pi3")
    assert r.twist == "1" and conductor(r) == 3
    r = parse_rep("type5:p=5,mu=l1e1")
    assert conductor(r) == 2
    r = parse_rep("type2:p=7,sign=-1")
    assert r.sign == -1
    r = parse_rep("type3:p=3")
    assert conductor(r) == 2
    r = parse_rep("type1a:p=2,ram=1,axi=2,d=3")
    assert conductor(r) == 5
    for bad in ["type9:", "type1b:pi5", "type3:p=2"]:
        with pytest.raises(ValueError):
            parse_rep(bad)
