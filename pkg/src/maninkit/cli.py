"""Command-line front end: bound tables, divisibility reports, dataset
verification, and a built-in selftest.

Datasets are JSON-lines, one measured valuation per line; rationals
travel as "num/den" strings and never as floats.  Exit codes: 0 success,
1 verification failure, 2 input error.  The env var MANIN_PRECISION
raises the working p-adic precision for the embedding oracles.
"""

import json
import sys
from dataclasses import dataclass
from fractions import Fraction
from importlib import resources

import click

from .characters import (FiniteFieldChar, LocalChar, chars_of_conductor,
                         conductor_exp, q2_quadratic, trivial_char)
from .gauss import (eps_factor, eps_valuation, finite_field_gauss,
                    gauss_bruteforce, stickelberger_val)
from .manin import (FactoredInt, integrality_check, localglobal_combine,
                    manin_report, newform_cusp_bound, weight2_bound)
from .modcurve import (component_of_cusp, cusp_count, cusp_number, cusp_table,
                       different_val, integrality_threshold, width)
from .padic import INF, ExtRational
from .reps import (admissible_types, conductor, parse_rep, type1a, type1b,
                   type2, type3, type4, type5)
from .whittaker import assemble_W, bound_T2, chars_up_to, verify_basic_identity

HALF = Fraction(1, 2)


def _fmt(x):
    """Exact rational for humans: '-3/2', '4', 'inf'."""
    s = x.to_str() if isinstance(x, ExtRational) else str(Fraction(x))
    if s.endswith("/1"):
        s = s[:-2]
    return s


def _val_int(n, p):
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def _approx(unit, digits=10):
    z = complex(unit.embed(digits))
    return f"{z.real:.6g}{z.imag:+.6g}i"


# ---------------------------------------------------------------------------
# measured datasets


@dataclass(frozen=True, slots=True)
class MeasuredRecord:
    """One measured Fourier-coefficient valuation at a cusp 1/p^valL."""

    label: str
    N: int
    k: int
    p: int
    valL: int
    measured: ExtRational

    def __post_init__(self):
        if self.N < 1:
            raise ValueError("N must be positive")
        if self.k < 2 or self.k % 2:
            raise ValueError("k must be an even positive integer")
        if self.p < 2:
            raise ValueError("p must be prime")
        if not 0 <= self.valL <= _val_int(self.N, self.p):
            raise ValueError("valL exceeds val_p(N)")

    @classmethod
    def from_json_line(cls, line):
        obj = json.loads(line)
        if not isinstance(obj, dict):
            raise ValueError("record must be a JSON object")
        try:
            label = str(obj["label"])
            n = int(obj["N"])
            k = int(obj["k"])
            p = int(obj["p"])
            raw_l = obj["valL"]
            measured = ExtRational(str(obj["measured"]))
        except KeyError as exc:
            raise ValueError(f"missing field {exc}") from None
        if isinstance(raw_l, str) and "/" in raw_l:
            # a cusp written as a fraction a/L: only val_p(L) matters
            den = int(raw_l.split("/", 1)[1])
            val_l = _val_int(den, p)
        else:
            val_l = int(raw_l)
        return cls(label, n, k, p, val_l, measured)

    def to_json_line(self):
        return json.dumps({
            "label": self.label, "N": self.N, "k": self.k, "p": self.p,
            "valL": self.valL, "measured": self.measured.to_str(),
        })


def parse_dataset(lines):
    """(records, malformed): malformed lines are reported, never fatal."""
    records, malformed = [], []
    for i, line in enumerate(lines, 1):
        if not line.strip():
            continue
        try:
            records.append(MeasuredRecord.from_json_line(line))
        except (ValueError, json.JSONDecodeError) as exc:
            malformed.append((i, str(exc)))
    return records, malformed


@dataclass(frozen=True, slots=True)
class VerifyReport:
    rows: tuple
    group_issues: tuple
    malformed: tuple

    @property
    def n_pass(self):
        return sum(r["status"] != "FAIL" for r in self.rows)

    @property
    def n_sharp(self):
        return sum(r["status"] == "SHARP" for r in self.rows)

    @property
    def n_fail(self):
        return len(self.rows) - self.n_pass

    @property
    def ok(self):
        return self.n_fail == 0 and not self.group_issues


def verify_dataset(records, malformed=()):
    """Measured valuation >= the proven bound, record by record.

    A record is SHARP when it meets the bound exactly.  Records sharing
    (label, p, valL) must agree: the minimum valuation over coefficients
    depends only on the form and the cusp denominator, so two cusps with
    the same denominator cannot give different minima.
    """
    rows = []
    groups = {}
    for rec in records:
        val_n = _val_int(rec.N, rec.p)
        if rec.k == 2:
            bound = weight2_bound(rec.p, val_n, rec.valL)
        else:
            bound = newform_cusp_bound(rec.p, rec.k, val_n, rec.valL)
        if rec.measured < bound:
            status = "FAIL"
        elif rec.measured == bound:
            status = "SHARP"
        else:
            status = "PASS"
        rows.append({
            "label": rec.label, "N": rec.N, "k": rec.k, "p": rec.p,
            "valL": rec.valL, "measured": rec.measured.to_str(),
            "bound": bound.to_str(), "status": status,
        })
        groups.setdefault((rec.label, rec.p, rec.valL), []).append(rec.measured)
    issues = []
    for key, vals in groups.items():
        if len(vals) > 1 and any(v != vals[0] for v in vals):
            issues.append({
                "label": key[0], "p": key[1], "valL": key[2],
                "values": sorted(v.to_str() for v in vals),
                "reason": "minimum valuation must not depend on the cusp numerator",
            })
    return VerifyReport(tuple(rows), tuple(issues), tuple(malformed))


def bundled_dataset(name):
    """Lines of a packaged table ('table1' or 'table2')."""
    text = resources.files("maninkit").joinpath(f"data/{name}.jsonl").read_text()
    return text.splitlines()


# ---------------------------------------------------------------------------
# bound tables


def emit_bound_table(N, k, p):
    """One row per cusp denominator valuation at p, with the modular-curve
    combinatorics alongside the bound and its integrality margin."""
    N = N if isinstance(N, FactoredInt) else FactoredInt.parse(N)
    val_n = N.val(p)
    rows = []
    for val_l in range(val_n + 1):
        big_l = p ** val_l
        comp = component_of_cusp(p, N.value, big_l)
        thr = integrality_threshold(p, val_n, val_l)
        if k == 2:
            bound = weight2_bound(p, val_n, val_l)
        else:
            bound = newform_cusp_bound(p, k, val_n, val_l)
        rows.append({
            "valL": val_l,
            "width": width(N.value, big_l),
            "cusps": cusp_count(N.value, big_l),
            "component": [comp.a, comp.b],
            "different": different_val(p, comp),
            "threshold": thr.to_str(),
            "bound": bound.to_str(),
            "margin": (bound - thr).to_str(),
        })
    return rows


def _render_bound_table(n, k, p, rows):
    head = f"level {n}  weight {k}  p = {p}"
    cols = ["valL", "width", "cusps", "component", "different",
            "threshold", "bound", "margin"]
    table = [cols]
    for r in rows:
        table.append([str(r["valL"]), str(r["width"]), str(r["cusps"]),
                      "(%d,%d)" % tuple(r["component"]), str(r["different"]),
                      _fmt(ExtRational(r["threshold"])),
                      _fmt(ExtRational(r["bound"])),
                      _fmt(ExtRational(r["margin"]))])
    widths = [max(len(row[i]) for row in table) for i in range(len(cols))]
    lines = [head]
    for row in table:
        lines.append("  ".join(c.rjust(w) for c, w in zip(row, widths)))
    return "\n".join(lines)


# ---------------------------------------------------------------------------
# selftest


def _sample_reps(p, val_n):
    out = []
    for kind in sorted(admissible_types(p, val_n)):
        if kind == "2":
            out += [type2(p, 1), type2(p, -1)]
        elif kind == "1a":
            if val_n % 2 == 0:
                out.append(type1a(p, False, val_n // 2))
            if p != 2 and val_n >= 2:
                out.append(type1a(p, True, val_n - 1))
            if p == 2:
                for d in (2, 3):
                    if val_n - d >= 1:
                        out.append(type1a(2, True, val_n - d, d))
        elif kind == "1b":
            cond3 = {"1": 3, "b2": 4, "b3": 6, "b2b3": 6}
            out += [type1b(3, lab) for lab, c in cond3.items() if c == val_n]
            if val_n == 7:
                out.append(type1b(7, "1"))
        elif kind in ("3", "4"):
            mk = type3 if kind == "3" else type4
            if p != 2:
                out.append(mk(p))
            else:
                mus = {4: ["b2"], 6: ["b3", "b2b3"]}.get(val_n, [])
                out += [mk(2, q2_quadratic(m)) for m in mus]
        elif kind == "5":
            m = val_n // 2
            out.append(type5(p, LocalChar(p, m, (0, 1) if p == 2 else (1,))))
    return out


def _check_bundled_tables():
    bad = []
    total = 0
    for name in ("table1", "table2"):
        lines = bundled_dataset(name)
        records, malformed = parse_dataset(lines)
        for i, msg in malformed:
            bad.append(f"{name}:{i} malformed: {msg}")
        report = verify_dataset(records)
        total += len(report.rows)
        for r in report.rows:
            if r["status"] != "SHARP":
                bad.append(f"{name} {r['label']} p={r['p']} valL={r['valL']}: "
                           f"measured {r['measured']} vs bound {r['bound']} "
                           f"({r['status']})")
        for line, rec in zip(lines, records):
            if json.loads(rec.to_json_line()) != json.loads(line):
                bad.append(f"{name}: round-trip changed {rec.label}")
    return bad or f"{total} records, all sharp"


def _check_bounds_agree(quick):
    ps = (2, 3, 5) if quick else (2, 3, 5, 7, 11, 13)
    n = 0
    for p in ps:
        for vn in range(11):
            for vl in range(vn + 1):
                b = weight2_bound(p, vn, vl)   # asserts the k=2 match itself
                w1 = max(vn - 2 * vl, 0)
                w2 = max(vn - 2 * (vn - vl), 0)
                sym = weight2_bound(p, vn, vn - vl)
                if b + ExtRational(w1) != sym + ExtRational(w2):
                    return [f"symmetry broken at p={p} ({vn},{vl})"]
                n += 1
    return f"{n} cells, symmetric"


def _check_integrality(quick):
    ps = (2, 3) if quick else (2, 3, 5, 7, 11, 13)
    for p in ps:
        for vn in range(11):
            w = integrality_check(p, vn)
            if not w.ok:
                return [f"threshold missed at p={p} valN={vn}: {w.margins}"]
    return "all margins nonnegative"


def _check_threshold_vs_different(quick):
    ps = (2, 3, 5) if quick else (2, 3, 5, 7, 11, 13)
    n = 0
    for p in ps:
        for a in range(0, 11):
            for b in range(0, 11 - a):
                comp = component_of_cusp(p, p ** (a + b), p ** a)
                d = different_val(p, comp)
                e = p ** (min(a, b) - 1) * (p - 1) if min(a, b) >= 1 else 1
                if integrality_threshold(p, a + b, a) != ExtRational(Fraction(-d, e)):
                    return [f"-d/e mismatch at p={p} ({a},{b})"]
                n += 1
    return f"{n} components"


def _check_eps_quadratic():
    from .cyclotomic import zeta
    want = [("b2", zeta(4, 1)), ("b3", zeta(4, 0)), ("b2b3", zeta(4, 1))]
    for lab, value in want:
        if eps_factor(q2_quadratic(lab)) != value:
            return [f"eps(1/2, {lab}) off"]
    return "i, 1, i"


def _check_stickelberger(quick):
    grid = [(2, 1), (3, 1)] if quick else [(2, 1), (3, 1), (2, 2), (5, 1)]
    n = 0
    for p, f in grid:
        q = p ** f
        for alpha in range(q - 1):
            chi = FiniteFieldChar(p, f, alpha)
            got = finite_field_gauss(chi).valuation
            if got != stickelberger_val(chi):
                return [f"digit-sum valuation off at p={p} f={f} alpha={alpha}"]
            n += 1
    return f"{n} characters"


def _check_dominance(quick):
    ps = (2, 3) if quick else (2, 3, 5, 7)
    top = 4 if quick else 6
    n = 0
    for p in ps:
        for vn in range(1, top + 1):
            for rep in _sample_reps(p, vn):
                for vl in range(vn + 1):
                    lg = localglobal_combine(rep, 2, vn, vl)
                    nb = newform_cusp_bound(p, 2, vn, vl)
                    if not lg >= nb:
                        return [f"dominance broken: {rep} valL={vl}: "
                                f"{_fmt(lg)} < {_fmt(nb)}"]
                    n += 1
    return f"{n} cells"


def _check_middle_column_table():
    # the exactly-solved middle-column valuations for the three ramified
    # quadratic twists of the dyadic special representation
    for lab in ("b2", "b3", "b2b3"):
        rep = type3(2, q2_quadratic(lab))
        a = conductor(rep)
        for t in range(-6, 5):
            w = assemble_W(rep, t, a // 2, 1)
            b = bound_T2(rep, None, t, a // 2)
            if w.is_zero() != b.is_infinite or (not w.is_zero() and w.valuation != b):
                return [f"middle column off: {lab} t={t}"]
    return "3 twists, t in [-6, 4]"


def _check_basic_identity():
    rep = type3(2, q2_quadratic("b2"))
    n = 0
    for ell in range(0, 5):
        for chi in chars_up_to(2, ell):
            if not verify_basic_identity(rep, ell, chi):
                return [f"identity fails at ell={ell}"]
            n += 1
    return f"{n} (ell, chi) pairs"


SELFTEST_CHECKS = [
    ("bundled-tables", lambda q: _check_bundled_tables()),
    ("bounds-and-symmetry", _check_bounds_agree),
    ("integrality", _check_integrality),
    ("threshold-vs-different", _check_threshold_vs_different),
    ("eps-quadratic-q2", lambda q: _check_eps_quadratic()),
    ("stickelberger", _check_stickelberger),
    ("local-global-dominance", _check_dominance),
    ("middle-column-table", lambda q: None if q else _check_middle_column_table()),
    ("basic-identity", lambda q: None if q else _check_basic_identity()),
]


def run_selftest(quick=False, echo=print):
    """0 when every check passes; failures carry a diff-style detail."""
    failures = 0
    for name, fn in SELFTEST_CHECKS:
        result = fn(quick)
        if result is None:
            echo(f"skip {name}")
            continue
        if isinstance(result, list):
            failures += 1
            for line in result:
                echo(f"FAIL {name}: {line}")
        else:
            echo(f"ok   {name} ({result})")
    return 1 if failures else 0


# ---------------------------------------------------------------------------
# click wiring


@click.group()
def main():
    """Exact bounds for newform coefficients at cusps, and friends."""


def _parse_or_usage(text):
    try:
        return FactoredInt.parse(text)
    except (ValueError, TypeError) as exc:
        raise click.UsageError(f"bad integer {text!r}: {exc}")


@main.command()
@click.option("--N", "n_text", required=True, help="level, e.g. 32 or 2^5*3")
@click.option("--k", default=2, show_default=True, help="even weight")
@click.option("--p", "p_opt", type=int, default=None,
              help="prime (default: each prime dividing N)")
@click.option("--json", "as_json", is_flag=True)
def bound(n_text, k, p_opt, as_json):
    """Cusp-by-cusp valuation bound table at one prime."""
    n = _parse_or_usage(n_text)
    if k < 2 or k % 2:
        raise click.UsageError("weight must be an even integer >= 2")
    ps = [p_opt] if p_opt else list(n.primes()) or [2]
    out = []
    for p in ps:
        try:
            rows = emit_bound_table(n, k, p)
        except ValueError as exc:
            raise click.UsageError(str(exc))
        out.append({"N": str(n), "k": k, "p": p, "rows": rows})
    if as_json:
        click.echo(json.dumps(out if len(out) > 1 else out[0]))
    else:
        for block in out:
            click.echo(_render_bound_table(block["N"], k, block["p"],
                                           block["rows"]))


@main.command()
@click.option("--N", "n_text", required=True, help="level, e.g. 2^5*3")
@click.option("--deg", "deg_text", required=True, help="modular degree")
@click.option("--family", default="x0", show_default=True,
              help="x0 or x1 parametrization")
@click.option("--json", "as_json", is_flag=True)
def manin(n_text, deg_text, family, as_json):
    """Per-prime divisibility bound for the Manin constant."""
    n = _parse_or_usage(n_text)
    deg = _parse_or_usage(deg_text)
    try:
        report = manin_report(n, deg, family=family)
    except ValueError as exc:
        raise click.UsageError(str(exc))
    if as_json:
        click.echo(json.dumps({
            "N": str(n), "deg": str(deg), "family": report.family,
            "divides": report.divides(),
            "rows": [{
                "p": r.prime, "val_N": r.val_n, "val_deg": r.val_deg,
                "correction": r.correction, "bound": r.bound,
                "singularities": r.singularities, "eliminated": r.eliminated,
            } for r in report.rows],
        }))
        return
    click.echo(f"N = {n}  deg = {deg}  family = {report.family}")
    for r in report.rows:
        note = " [additive prime eliminated]" if r.eliminated else ""
        click.echo(f"  p={r.prime}: val_p(N)={r.val_n} val_p(deg)={r.val_deg} "
                   f"correction={r.correction} -> val_p(c) <= {r.bound} "
                   f"(singularities: {r.singularities}){note}")
    click.echo(f"c divides {report.divides()}")


def _parse_char(p, spec):
    s = spec.strip().lower()
    if s.startswith("b") or s == "1":
        if p not in (None, 2):
            raise click.UsageError("quadratic labels are for p = 2")
        try:
            return 2, q2_quadratic("1" if s == "1" else s)
        except (KeyError, ValueError):
            raise click.UsageError(f"unknown quadratic label {spec!r}")
    if s in ("triv", "trivial"):
        if p is None:
            raise click.UsageError("--p is required for a trivial character")
        return p, trivial_char(p)
    if s.startswith("l") and "e" in s:
        if p is None:
            raise click.UsageError("--p is required for l<level>e<exp> characters")
        lev_s, _, exp_s = s[1:].partition("e")
        try:
            lev, exp = int(lev_s), int(exp_s)
        except ValueError:
            raise click.UsageError(f"bad character spec {spec!r}")
        exps = (0, exp) if p == 2 and lev >= 3 else (exp,)
        return p, LocalChar(p, lev, exps)
    raise click.UsageError(f"bad character spec {spec!r} "
                           "(try b2, b0b3, triv, or l2e1)")


@main.command()
@click.option("--chi", "chi_spec", required=True,
              help="character: b2 / b0b3 / l2e1 / triv")
@click.option("--p", type=int, default=None, help="prime (implied 2 for b labels)")
@click.option("--x", "x_text", default=None,
              help="argument of the Gauss average (default 1/p^a)")
@click.option("--json", "as_json", is_flag=True)
def gauss(chi_spec, p, x_text, as_json):
    """Gauss sum and epsilon factor of a unit character."""
    p, chi = _parse_char(p, chi_spec)
    a = conductor_exp(chi)
    if x_text is None:
        x = Fraction(1, p ** a) if a else Fraction(1)
    else:
        try:
            x = Fraction(x_text)
        except (ValueError, ZeroDivisionError):
            raise click.UsageError(f"bad rational {x_text!r}")
    g = gauss_bruteforce(chi, x, want_valuation=True)
    eps = eps_factor(chi)
    payload = {
        "p": p, "conductor_exp": a, "x": str(x),
        "value_approx": None if g.value is None else _approx(g.value),
        "valuation": None if g.valuation is None else g.valuation.to_str(),
        "provenance": g.provenance,
        "eps_half": {
            "unit_approx": _approx(eps.unit),
            "q_exponent": str(eps.qexp),
            "valuation": eps_valuation(chi).to_str(),
        },
    }
    if as_json:
        click.echo(json.dumps(payload))
        return
    click.echo(f"chi: p={p}, conductor exponent {a}")
    click.echo(f"G({x}, chi) ~ {payload['value_approx']}   "
               f"valuation {_fmt(g.valuation) if g.valuation is not None else '?'}"
               f"   [{g.provenance}]")
    click.echo(f"eps(1/2, chi) ~ {payload['eps_half']['unit_approx']} "
               f"* {p}^{payload['eps_half']['q_exponent']}   "
               f"valuation {_fmt(eps_valuation(chi))}")


@main.command()
@click.option("--N", "n_text", required=True, help="level")
@click.option("--p", type=int, default=None, help="annotate the fiber at p")
@click.option("--json", "as_json", is_flag=True)
def cusps(n_text, p, as_json):
    """Cusps of X_0(N) by denominator, with widths and components."""
    n = _parse_or_usage(n_text)
    try:
        rows = cusp_table(n.value, p)
    except ValueError as exc:
        raise click.UsageError(str(exc))
    if as_json:
        click.echo(json.dumps({"N": n.value, "p": p, "total": cusp_number(n.value),
                               "rows": rows}))
        return
    click.echo(f"X_0({n.value}): {cusp_number(n.value)} cusps")
    for r in rows:
        extra = ""
        if p is not None:
            extra = (f"  component=({r['component'][0]},{r['component'][1]})"
                     f" ram={r['ram_index']} different={r['different']}")
        click.echo(f"  L={r['L']}: width={r['width']} count={r['count']}{extra}")


@main.command()
@click.option("--rep", "rep_spec", required=True,
              help="e.g. type3:p=2,mu=b2 or type1a:p=3,ram=1,axi=2,d=1")
@click.option("--t", required=True, type=int)
@click.option("--ell", required=True, type=int)
@click.option("--v", default=1, show_default=True, help="unit-coset index")
@click.option("--sigma", "sigma_text", default="0", show_default=True,
              help="valuation of the Satake parameter")
@click.option("--exact", is_flag=True, help="fail unless the value is exact")
@click.option("--json", "as_json", is_flag=True)
def whittaker(rep_spec, t, ell, v, sigma_text, exact, as_json):
    """Valuation of the newform Whittaker value on one coset cell."""
    try:
        rep = parse_rep(rep_spec)
        sigma = Fraction(sigma_text)
        w = assemble_W(rep, t, ell, v, sigma_val=sigma)
    except (ValueError, ZeroDivisionError) as exc:
        raise click.UsageError(str(exc))
    payload = {
        "rep": rep_spec, "conductor_exp": conductor(rep),
        "t": t, "ell": ell, "v": v,
        "zero": w.is_zero(),
        "valuation": w.valuation.to_str(),
        "lower_bound_only": w.is_lower_bound,
        "exact_value": None if w.exact is None else _approx(w.exact),
        "candidates": [_approx(c) for c in w.candidates],
        "unit_ambiguous": w.unit_ambiguous,
        "sign_only": w.sign_only,
        "cancellation_possible": w.cancellation_possible,
    }
    if as_json:
        click.echo(json.dumps(payload))
    else:
        if w.is_zero():
            click.echo("W = 0 on this cell")
        else:
            kind = "lower bound" if w.is_lower_bound else "exact valuation"
            click.echo(f"valuation {_fmt(w.valuation)} ({kind})")
            if len(w.candidates) > 1:
                click.echo("value is one of " + ", ".join(payload["candidates"]))
            elif w.exact is not None:
                click.echo(f"value ~ {payload['exact_value']}")
    if exact and not w.is_zero() and w.exact is None and not w.candidates:
        sys.exit(1)


@main.command()
@click.argument("dataset", type=click.File("r"))
@click.option("--json", "as_json", is_flag=True)
def verify(dataset, as_json):
    """Check measured coefficient valuations in a JSONL file."""
    records, malformed = parse_dataset(dataset)
    if not records:
        raise click.UsageError("no parseable records in the dataset")
    report = verify_dataset(records, malformed)
    if as_json:
        click.echo(json.dumps({
            "rows": list(report.rows),
            "group_issues": list(report.group_issues),
            "malformed": [{"line": i, "error": m} for i, m in report.malformed],
            "pass": report.n_pass, "sharp": report.n_sharp,
            "fail": report.n_fail, "ok": report.ok,
        }))
    else:
        for r in report.rows:
            click.echo(f"{r['status']:5s} {r['label']} p={r['p']} "
                       f"valL={r['valL']}: measured {_fmt(ExtRational(r['measured']))}, "
                       f"bound {_fmt(ExtRational(r['bound']))}")
        for g in report.group_issues:
            click.echo(f"GROUP {g['label']} p={g['p']} valL={g['valL']}: "
                       f"inconsistent minima {g['values']}")
        for i, msg in report.malformed:
            click.echo(f"line {i}: malformed record ({msg})")
        click.echo(f"{report.n_pass} pass ({report.n_sharp} sharp), "
                   f"{report.n_fail} fail, {len(report.malformed)} malformed")
    if not report.ok:
        sys.exit(1)
    if report.malformed:
        sys.exit(2)


@main.command()
@click.option("--quick", is_flag=True, help="small grids only")
def selftest(quick):
    """Re-derive the bundled tables and the module invariants."""
    status = run_selftest(quick=quick, echo=click.echo)
    if status:
        sys.exit(status)


if __name__ == "__main__":
    main()
