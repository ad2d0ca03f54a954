"""Knot polynomials from the rank-1 and rank-2 constructions, with rewritings
into symmetric variables and a suite of consistency checks."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources

from .knotdiag import BraidError, KnotEntry, LongDiagram, lookup, parse_braid_word
from .nichols import (build_rank1, build_rank1_generic, build_rank2_root_of_unity)
from .polyring import LaurentPoly, degree_span, parse
from .rmatrix import RigidRMatrix, build_rho_left, build_rho_right, build_rigid
from .statesum import check_scalar, contract
from .ydmod import (build_Yn, find_coinvariants, quotient_by_coinvariants,
                    regular_left_module)


class SymmetryError(ValueError):
    """Input lacks the symmetry a rewriting requires."""


class FormError(ValueError):
    """Leading-term reduction left a residue that is not expressible."""


FAMILIES = ("ado", "jones", "lambda", "vn")


# ---------------------------------------------------------------- R-matrices


@lru_cache(maxsize=None)
def rigid_rmatrix(family: str, param: int, gauge=1) -> RigidRMatrix:
    """The rigid quadruple for a family and its integer parameter.

    ``gauge`` fixes q21 (rank 2 at roots of unity) or g (the Y_n modules);
    ``None`` keeps it symbolic.
    """
    if param < 1:
        raise ValueError("parameter must be positive")
    if family == "ado":
        r = build_rho_left(regular_left_module(build_rank1(param)))
    elif family == "jones":
        q = LaurentPoly.var("q")
        H = build_rank1_generic(param, t=q ** (1 - param), q=q)
        M = regular_left_module(H)
        gens = [w for w in find_coinvariants(M) if len(w) == param]
        M = quotient_by_coinvariants(M, gens, keep_below=param)
        if M.dim != param:
            raise RuntimeError(f"quotient has dimension {M.dim}, expected {param}")
        r = build_rho_left(M)
    elif family == "lambda":
        r = build_rho_left(regular_left_module(build_rank2_root_of_unity(param, gauge=gauge)))
    elif family == "vn":
        r = build_rho_right(build_Yn(param, gauge=gauge))
    else:
        raise ValueError(f"unknown family {family!r}")
    return build_rigid(r)


# ---------------------------------------------------------------- results


@dataclass
class InvariantResult:
    knot: str
    family: str
    param: int
    polynomial: LaurentPoly
    form: LaurentPoly | None = None
    form_name: str = ""
    checks: list = field(default_factory=list)
    meta: dict = field(default_factory=dict)

    def check(self, name: str, ok: bool, detail: str = "") -> None:
        self.checks.append((name, bool(ok), detail))

    @property
    def passed(self) -> bool:
        return all(ok for _, ok, _ in self.checks)

    def to_json(self) -> str:
        return json.dumps({
            "knot": self.knot, "invariant": self.family,
            "params": {"N" if self.family in ("ado", "lambda") else "n": self.param},
            "scalar": self.polynomial.to_json(), "text": self.polynomial.to_string(),
            "form": None if self.form is None else {"name": self.form_name,
                                                    "text": self.form.to_string()},
            "checks": [{"name": n, "ok": ok, "detail": d} for n, ok, d in self.checks],
            "scalar_check": self.meta.get("scalar_check"),
            "runtime_ms": self.meta.get("runtime_ms"),
        })


def resolve_knot(knot) -> KnotEntry:
    """Accept a KnotEntry, a table name, or an inline braid word."""
    if isinstance(knot, KnotEntry):
        return knot
    try:
        return lookup(knot)
    except KeyError:
        try:
            b = parse_braid_word(knot)
        except BraidError:
            raise KeyError(f"unknown knot {knot!r}") from None
        return KnotEntry(f"braid[{b.text()}]", b, -1)


_CACHE: dict = {}


def compute(knot, family: str, param: int, gauge=1, full_matrix: bool = False,
            diagram: LongDiagram | None = None) -> InvariantResult:
    """Scalar state sum for a knot; results are memoized per process."""
    entry = resolve_knot(knot)
    key = (entry.name, entry.braid, family, param, gauge, full_matrix,
           None if diagram is None else diagram.slices)
    if key in _CACHE:
        return _CACHE[key]
    R = rigid_rmatrix(family, param, gauge)
    d = diagram if diagram is not None else entry.diagram()
    res = contract(d, R, "all" if full_matrix else "first")
    poly = res.scalar
    if family == "vn":
        poly = s_to_q(poly)
    out = InvariantResult(entry.name, family, param, poly,
                          meta={"runtime_ms": round(res.runtime_ms, 1),
                                "crossings": d.crossings, "width": d.max_width})
    if full_matrix:
        chk = check_scalar(res)
        out.meta["scalar_check"] = {"off_diag_zero": chk.off_diag_zero,
                                    "diag_constant": chk.diag_constant}
        out.check("scalar_matrix", chk.scalar, chk.detail)
    if gauge is None:
        out.check("gauge_free", not ({"q21", "g"} & poly.variables()))
    _CACHE[key] = out
    return out


def s_to_q(p: LaurentPoly) -> LaurentPoly:
    """Rewrite s = q^(1/2) as q when only even powers of s occur."""
    if "s" not in p.variables() or any(e % 2 for e in p.exponents("s")):
        return p
    out = LaurentPoly.zero(p.ring)
    for exps, c in p.items():
        e = dict(exps)
        k = e.pop("s", 0)
        if k:
            e["q"] = e.get("q", 0) + k // 2
        out = out + LaurentPoly.monomial(e, c, p.ring)
    return out


def compute_ado(knot, N: int, **kw) -> InvariantResult:
    if N < 1:
        raise ValueError("N must be positive")
    return compute(knot, "ado", N, **kw)


def compute_colored_jones(knot, n: int, **kw) -> InvariantResult:
    if n < 1:
        raise ValueError("n must be positive")
    return compute(knot, "jones", n, **kw)


def compute_lambda(knot, N: int, form: bool = True, **kw) -> InvariantResult:
    res = compute(knot, "lambda", N, **kw)
    if N == 2 and form and res.form is None:
        try:
            res.form = rewrite_uv(res.polynomial)
            res.form_name = "uv"
        except (SymmetryError, FormError) as exc:
            res.check("uv_form", False, str(exc))
    return res


def compute_vn(knot, n: int, form: bool = True, **kw) -> InvariantResult:
    res = compute(knot, "vn", n, **kw)
    if n == 2 and form and res.form is None:
        try:
            res.form = rewrite_uq(res.polynomial)
            res.form_name = "uq"
        except (SymmetryError, FormError) as exc:
            res.check("uq_form", False, str(exc))
    return res


# ---------------------------------------------------------------- rewritings


def _bracket(x: LaurentPoly) -> LaurentPoly:
    return x + x.inverse_unit()


def uv_polys(s: str = "t1", t: str = "t2") -> tuple:
    """The invariant generators u and v as Laurent polynomials in (s, t)."""
    S, T = LaurentPoly.var(s), LaurentPoly.var(t)
    u = _bracket(S) + _bracket(T) - _bracket(S * T) - 2
    v = _bracket(S * S * T) + _bracket(S * T * T) - _bracket(S * T.inverse_unit()) - 2
    return u, v


def lambda_symmetries(s: str = "t1", t: str = "t2") -> list:
    """The three involutions generating the order-12 symmetry group."""
    S, T = LaurentPoly.var(s), LaurentPoly.var(t)
    return [
        ("swap", {s: T, t: S}),
        ("weyl", {s: S, t: -(S * T).inverse_unit()}),
        ("inverse", {s: S.inverse_unit(), t: T.inverse_unit()}),
    ]


def _apply(p: LaurentPoly, binding: dict) -> LaurentPoly:
    # simultaneous substitution through fresh names
    tmp = {k: LaurentPoly.var(f"_{k}") for k in binding}
    return p.substitute(tmp).substitute({f"_{k}": v for k, v in binding.items()})


def expand_uv(form: LaurentPoly, s: str = "t1", t: str = "t2") -> LaurentPoly:
    u, v = uv_polys(s, t)
    return form.substitute({"u": u, "v": v})


def rewrite_uv(p: LaurentPoly, s: str = "t1", t: str = "t2", check: bool = True) -> LaurentPoly:
    """Express a polynomial invariant under the order-12 group in u and v.

    Monomials s^i t^j are ordered by (2i + j, i); the leading monomial of
    u^a v^b is s^(a+2b) t^(a+b) with coefficient (-1)^a.
    """
    if check:
        for name, b in lambda_symmetries(s, t):
            if _apply(p, b) != p:
                raise SymmetryError(f"not invariant under the {name} involution")
    u, v = uv_polys(s, t)
    rest = p
    out = LaurentPoly.zero()
    powers: dict = {}

    def uv_pow(a, b):
        key = (a, b)
        if key not in powers:
            powers[key] = (u ** a) * (v ** b)
        return powers[key]

    guard = 0
    while rest:
        guard += 1
        if guard > 10000:
            raise FormError("reduction did not terminate")
        best = None
        for exps, c in rest.items():
            i, j = exps.get(s, 0), exps.get(t, 0)
            if set(exps) - {s, t}:
                raise FormError(f"unexpected variables {set(exps) - {s, t}}")
            k = (2 * i + j, i)
            if best is None or k > best[0]:
                best = (k, i, j, c)
        _, i, j, c = best
        b, a = i - j, 2 * j - i
        if a < 0 or b < 0:
            raise FormError(f"residue {rest.to_string()} has leading monomial outside the uv cone")
        coeff = c if a % 2 == 0 else -c
        out = out + LaurentPoly.monomial({"u": a, "v": b}, coeff)
        rest = rest - uv_pow(a, b) * coeff
    return out


def rewrite_uq(p: LaurentPoly, t: str = "t", q: str = "q", check: bool = True) -> LaurentPoly:
    """Express a t <-> 1/t symmetric polynomial in u = t + 1/t - q - 1/q."""
    p = s_to_q(p)
    T = LaurentPoly.var(t)
    if check and _apply(p, {t: T.inverse_unit()}) != p:
        raise SymmetryError("not invariant under t -> 1/t")
    u = T + T.inverse_unit() - LaurentPoly.var(q) - LaurentPoly.var(q) ** -1
    rest = p
    out = LaurentPoly.zero()
    while rest and t in rest.variables():
        k = rest.degree(t)
        if k <= 0:
            raise FormError(f"residue {rest.to_string()} is not symmetric")
        c = rest.coefficient(t, k)
        out = out + c * LaurentPoly.monomial({"u": k})
        rest = rest - c * u ** k
    return out + rest


def expand_uq(form: LaurentPoly, t: str = "t", q: str = "q") -> LaurentPoly:
    T, Q = LaurentPoly.var(t), LaurentPoly.var(q)
    return form.substitute({"u": T + T.inverse_unit() - Q - Q.inverse_unit()})


# ---------------------------------------------------------------- goldens


@lru_cache(maxsize=None)
def golden_values() -> dict:
    """Reference values keyed by family then knot name, parsed to polynomials."""
    raw = _golden_raw()
    return {fam: {k: parse(v) for k, v in raw[fam].items()} for fam in ("lambda_uv", "v2_uq")}


@lru_cache(maxsize=None)
def _golden_raw() -> dict:
    return json.loads(resources.files(__package__).joinpath("data/golden.json").read_text())


def golden_knot(family: str, name: str) -> str:
    """Table knot whose diagram carries the chirality of a reference entry."""
    return _golden_raw().get(family.split("_")[0] + "_knot", {}).get(name, name)


# ---------------------------------------------------------------- checks


@dataclass
class CheckReport:
    name: str
    items: list = field(default_factory=list)

    def record(self, check: str, ok: bool, detail: str = "") -> bool:
        self.items.append((check, bool(ok), detail))
        return bool(ok)

    @property
    def passed(self) -> bool:
        return all(ok for _, ok, _ in self.items)

    def lines(self) -> list:
        return [f"{'PASS' if ok else 'FAIL'} {self.name}: {c}" + (f" ({d})" if d else "")
                for c, ok, d in self.items]


def lambda_swap_symmetric(p: LaurentPoly) -> bool:
    return _apply(p, {"t1": LaurentPoly.var("t2"), "t2": LaurentPoly.var("t1")}) == p


def lambda_group_invariant(p: LaurentPoly) -> bool:
    return all(_apply(p, b) == p for _, b in lambda_symmetries())


def duality_lambda_vn(lam: LaurentPoly, v2: LaurentPoly) -> bool:
    """Lambda_{-1}(-t, -1/t) equals V_2(t, -1)."""
    t = LaurentPoly.var("t")
    left = lam.substitute({"t1": -t, "t2": -t.inverse_unit()})
    right = s_to_q(v2).substitute({"q": -1})
    return left == right


def duality_ado_jones(ado: LaurentPoly, jones: LaurentPoly, N: int, n: int) -> bool:
    """ADO_w(w^(1-n)) equals J_n(w) for w a primitive N-th root of unity."""
    ring = N if N >= 3 else 0
    w = LaurentPoly.root(N) if N >= 3 else LaurentPoly.const(1 if N == 1 else -1)
    left = ado.change_ring(ring).substitute({"t": w ** (1 - n)})
    right = jones.change_ring(ring).substitute({"q": w})
    return left == right


def genus_degree(v2: LaurentPoly) -> int:
    return degree_span(s_to_q(v2), "t")


def mirror_rule(v2: LaurentPoly, v2_mirror: LaurentPoly) -> bool:
    """V_2 of the mirror equals V_2 with q inverted."""
    q = LaurentPoly.var("q")
    return s_to_q(v2_mirror) == s_to_q(v2).substitute({"q": q.inverse_unit()})


def run_checks(knot, lam=None, v2=None, alex=None) -> CheckReport:
    """Named checks on whichever of Lambda_{-1}, V_2 and Delta are supplied."""
    entry = resolve_knot(knot)
    rep = CheckReport(entry.name)
    if lam is not None:
        rep.record("lambda_swap_symmetry", lambda_swap_symmetric(lam))
        rep.record("lambda_order12_invariance", lambda_group_invariant(lam))
    if v2 is not None:
        q = s_to_q(v2)
        t = LaurentPoly.var("t")
        rep.record("v2_t_inversion_symmetry", _apply(q, {"t": t.inverse_unit()}) == q)
        try:
            form = rewrite_uq(q)
            rep.record("v2_uq_roundtrip", expand_uq(form) == q)
            rep.record("v2_u0_is_1", form.substitute({"u": 0}) == LaurentPoly.const(1))
        except (SymmetryError, FormError) as exc:
            rep.record("v2_uq_form", False, str(exc))
        if entry.genus >= 0:
            deg = genus_degree(q)
            rep.record("v2_genus_degree", deg == 4 * entry.genus,
                       f"deg_t={deg}, 4g={4 * entry.genus}")
        if alex is not None:
            rep.record("v2_at_q1_is_alexander_squared",
                       q.substitute({"q": 1}) == alex * alex)
    if lam is not None and v2 is not None:
        rep.record("duality_lambda_v2", duality_lambda_vn(lam, v2))
    return rep
