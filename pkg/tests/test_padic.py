"""Truncated p-adic arithmetic: contexts, embeddings, exact valuations."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from sympy import Symbol, cyclotomic_poly, expand

from maninkit.cyclotomic import CycNum, from_terms, zeta
from maninkit.padic import (
    INF,
    ExtRational,
    FiniteField,
    context_new,
    embed_cyc,
    embed_root,
    poly_eval,
    teichmuller,
    valuation,
    valuation_ex,
)


def XR(x):
    return ExtRational(x)


def test_ext_rational_basics():
    assert XR("3/2") == Fraction(3, 2) == XR(Fraction(3, 2))
    assert XR("inf") == INF and INF.is_infinite
    assert XR(5).to_str() == "5/1" and XR("-7/4").to_str() == "-7/4"
    assert ExtRational(XR("inf")).is_infinite
    # round-trips
    for s in ["0/1", "5/3", "-2/1", "inf"]:
        assert XR(s).to_str() == s
    # ordering: +inf tops everything
    assert XR(10**9) < INF and not INF < INF
    assert min(INF, XR(0)) == 0
    assert sorted([INF, XR(1), XR("-1/2")]) == [XR("-1/2"), XR(1), INF]
    # arithmetic
    assert XR("1/2") + XR("1/3") == Fraction(5, 6)
    assert INF + XR(-100) == INF and XR(3) + INF == INF
    assert XR("1/2") * 4 == 2
    assert INF * 2 == INF
    with pytest.raises(ArithmeticError):
        INF * 0
    with pytest.raises(ArithmeticError):
        -INF
    assert XR(3) - 1 == 2 and (1 - XR(3)) == -2


@given(st.fractions(min_value=-50, max_value=50, max_denominator=12),
       st.fractions(min_value=-50, max_value=50, max_denominator=12))
@settings(max_examples=60, deadline=None)
def test_ext_rational_respects_fraction_arith(a, b):
    assert XR(a) + XR(b) == a + b
    assert XR(a) * XR(b) == a * b
    assert (XR(a) < XR(b)) == (a < b)


def test_context_construction():
    ctx = context_new(3, 1, 1, 20)
    assert (ctx.e, ctx.E) == (2, (3, 3, 1))  # t^2 + 3t + 3
    ctx = context_new(2, 1, 3, 20)
    assert (ctx.e, ctx.E) == (4, (2, 4, 6, 4, 1))
    ctx = context_new(5, 2, 0, 20)
    assert ctx.e == 1 and ctx.E is None
    with pytest.raises(ValueError):
        context_new(4, 1, 0, 20)  # not prime
    with pytest.raises(ValueError):
        context_new(3, 0, 0, 20)
    with pytest.raises(ValueError):
        context_new(3, 1, 0, 4)  # precision floor


@pytest.mark.parametrize("p,k", [(2, 1), (2, 3), (3, 2), (5, 1), (7, 1)])
def test_eisenstein_polynomial_matches_shifted_cyclotomic(p, k):
    # oracle: expand Phi_{p^k}(1 + t) symbolically
    t = Symbol("t")
    ref = expand(cyclotomic_poly(p**k, 1 + t))
    ctx = context_new(p, 1, k, 12)
    for j, c in enumerate(ctx.E):
        assert ref.coeff(t, j) == c
    assert ctx.E[0] == p  # Eisenstein constant term is exactly p


def test_finite_field_tables():
    # least irreducible polynomials, low-degree coefficient compared first
    assert FiniteField(2, 2).g == (1, 1, 1)      # u^2 + u + 1
    assert FiniteField(3, 2).g == (1, 0, 1)      # u^2 + 1
    assert FiniteField(5, 2).g == (2, 0, 1)      # u^2 + 2
    assert FiniteField(7, 2).g == (1, 0, 1)
    assert FiniteField(7, 1).g == (0, 1)         # prime field: u = 0
    for p, f in [(2, 2), (3, 2), (5, 2), (7, 1), (13, 1)]:
        ff = FiniteField(p, f)
        g0 = ff.generator
        assert ff.order(g0) == ff.q - 1
        # nothing smaller generates
        assert all(ff.order(a) < ff.q - 1 for a in range(1, g0))
        exp, log = ff.tables()
        assert len(exp) == ff.q - 1 and len(log) == ff.q - 1
        assert all(log[exp[i]] == i for i in range(ff.q - 1))
        assert exp[1] == g0
        # trace lands in the prime field and is nontrivial
        traces = {ff.trace(a) for a in range(ff.q)}
        assert traces == set(range(p))


def test_finite_field_ring_axioms():
    ff = FiniteField(3, 2)
    els = range(ff.q)
    for a in els:
        for b in els:
            assert ff.mul(a, b) == ff.mul(b, a)
            assert ff.add(a, b) == ff.add(b, a)
    for a in [2, 5, 7]:
        for b in [1, 4, 8]:
            for c in [3, 6]:
                assert ff.mul(a, ff.mul(b, c)) == ff.mul(ff.mul(a, b), c)
                assert ff.mul(a, ff.add(b, c)) == ff.add(ff.mul(a, b), ff.mul(a, c))


def test_teichmuller_values():
    ctx = context_new(5, 1, 0, 20)
    t2 = teichmuller(ctx, 2)
    assert t2.c[0] % 5**4 == 182          # the canonical fourth root of unity over Q_5
    assert t2 ** 5 == t2                  # fixed point
    assert valuation_ex(t2 * t2 + 1)[0] == INF  # t2^2 = -1 to working precision
    # the Teichmueller lift of the field generator has exact order q - 1
    for p, f in [(3, 2), (7, 1)]:
        ctx = context_new(p, f, 0, 16)
        z = teichmuller(ctx, ctx.ff.generator)
        q = p**f
        assert valuation_ex(z ** (q - 1) - 1)[0] == INF
        for r in {r for r in range(2, q) if (q - 1) % r == 0 and all(r % d for d in range(2, r))}:
            assert valuation(z ** ((q - 1) // r) - 1) == 0


def test_integer_valuations_match_exact():
    # default precision: a valuation of v costs e*v digits to certify,
    # and 2^13 inside the zeta_8 tower needs 52 of the 64
    cases = [(context_new(3, 1, 1), 3), (context_new(2, 1, 3), 2),
             (context_new(5, 2, 0), 5)]
    for ctx, p in cases:
        for m in [1, -1, 2, 6, 7, 90, 1024, 9999, -8192, 59049]:
            v = 0
            mm = abs(m)
            while mm % p == 0:
                mm //= p
                v += 1
            got, proven = valuation_ex(ctx.from_int(m))
            assert proven and got == v


def test_ramified_valuations():
    ctx = context_new(3, 1, 1, 24)
    x = embed_cyc(ctx, zeta(3, 1) - zeta(3, 2))
    assert valuation(x) == Fraction(1, 2)
    assert valuation(embed_root(ctx, 3, 1) - 1) == Fraction(1, 2)
    assert valuation(x * x) == 1
    assert valuation(x ** 5) == Fraction(5, 2)

    ctx = context_new(2, 1, 3, 24)
    z8 = embed_root(ctx, 8, 1)
    assert valuation(z8) == 0
    assert valuation(z8 - 1) == Fraction(1, 4)
    assert valuation(z8 + z8 ** 7) == Fraction(1, 2)   # sqrt(2)
    assert valuation(z8 - z8 ** 3) == Fraction(1, 2)

    # unramified roots of unity are units, and stay units after small shifts
    ctx = context_new(5, 2, 0, 24)
    z24 = embed_root(ctx, 24, 1)
    assert valuation(z24) == 0
    assert valuation_ex(z24 ** 24 - 1)[0] == INF
    assert valuation(z24 ** 8 - 1) == 0  # zeta_3 - 1 is a unit above p = 5


def test_division_by_t_costs_one_digit():
    ctx = context_new(3, 1, 1, 12)
    x = embed_root(ctx, 3, 1) - 1               # valuation 1/2
    assert valuation_ex(x ** 8)[0] == 4
    # B digits certify t-valuations up to B - 1, and no further
    assert valuation_ex(x ** 11)[0] == Fraction(11, 2)
    v, proven = valuation_ex(x ** 12)
    assert v == INF and not proven
    v, proven = valuation_ex(ctx.zero())
    assert v == INF and not proven
    v, proven = valuation_ex(ctx.from_int(3**12))
    assert v == INF and not proven


def test_poly_eval_kills_eisenstein():
    for p, k in [(3, 1), (2, 3), (5, 1)]:
        ctx = context_new(p, 1, k, 16)
        coords = [0] * ctx.e
        coords[1] = 1
        t = type(ctx.zero())(ctx, coords)
        assert valuation_ex(poly_eval(ctx, ctx.E, t))[0] == INF
        assert poly_eval(ctx, [1, 2, 1], t) == (t + 1) * (t + 1)


def test_embedding_rejections():
    ctx = context_new(3, 1, 1, 16)
    with pytest.raises(ValueError):
        embed_root(ctx, 5)         # zeta_5 not in Q_3(zeta_3)
    with pytest.raises(ValueError):
        embed_root(ctx, 9)         # needs k = 2
    with pytest.raises(ValueError):
        embed_cyc(ctx, CycNum(3, [Fraction(1, 3), 0]))


@pytest.mark.parametrize("p,f,k,M", [(3, 1, 1, 6), (2, 1, 3, 8), (5, 2, 0, 24)])
def test_embedding_is_multiplicative_on_roots(p, f, k, M):
    ctx = context_new(p, f, k, 20)
    for i in range(M):
        for j in [0, 1, M - 1, M // 2]:
            lhs = embed_root(ctx, M, i) * embed_root(ctx, M, j)
            assert lhs == embed_root(ctx, M, i + j)


@given(st.integers(-9, 9), st.integers(-9, 9), st.integers(-9, 9),
       st.integers(-9, 9), st.integers(-9, 9), st.integers(-9, 9))
@settings(max_examples=40, deadline=None)
def test_embedding_is_a_ring_map(a0, a1, a2, b0, b1, b2):
    ctx = context_new(3, 1, 1, 20)
    a = from_terms(6, {0: a0, 1: a1, 2: a2})
    b = from_terms(6, {0: b0, 1: b1, 5: b2})
    ea, eb = embed_cyc(ctx, a), embed_cyc(ctx, b)
    assert embed_cyc(ctx, a + b) == ea + eb
    assert embed_cyc(ctx, a * b) == ea * eb


@given(st.integers(0, 5), st.integers(0, 3), st.integers(1, 80), st.integers(1, 80))
@settings(max_examples=40, deadline=None)
def test_valuation_is_additive_when_proven(i, j, m, n):
    ctx = context_new(2, 1, 2, 24)
    zc = embed_root(ctx, 4, 1)
    x = (zc - 1) ** i * ctx.from_int(m)
    y = (zc + 1) ** j * ctx.from_int(n)
    vx, okx = valuation_ex(x)
    vy, oky = valuation_ex(y)
    vxy, okxy = valuation_ex(x * y)
    if okx and oky and okxy:
        assert vxy == vx + vy


def test_precision_env_override(monkeypatch):
    monkeypatch.setenv("MANIN_PRECISION", "17")
    assert context_new(3, 1, 0).B == 17
    monkeypatch.delenv("MANIN_PRECISION")
    assert context_new(3, 1, 0).B == 64
    assert context_new(3, 1, 0, 33).B == 33  # explicit wins
