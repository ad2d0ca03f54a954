"""Finite-dimensional Nichols algebras of diagonal type with scaling automorphisms.

Elements are dictionaries mapping basis words (tuples of generator indices
1..rank) to LaurentPoly coefficients.  ``AlgebraElement`` wraps such a
dictionary together with its algebra for the public API; the structure maps
below work on the raw dictionaries because the R-matrix builders call them in
tight loops.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from itertools import product as iproduct

from .polyring import LaurentPoly

Word = tuple
Vec = dict  # Word -> LaurentPoly
Tensor = dict  # (Word, Word) -> LaurentPoly


def _add_into(out: dict, key, c: LaurentPoly) -> None:
    v = out.get(key)
    v = c if v is None else v + c
    if v:
        out[key] = v
    else:
        out.pop(key, None)


def alternating_words(max_len: int) -> list[Word]:
    """Alternating words in 1, 2 ordered by length, then 1-initial first."""
    words = [()]
    for n in range(1, max_len + 1):
        for first in (1, 2):
            words.append(tuple(first if i % 2 == 0 else 3 - first for i in range(n)))
    return words


@dataclass
class DiagonalBraiding:
    """q_entries[i][j] is the braiding scalar of x_{i+1} past x_{j+1}."""

    rank: int
    q_entries: list

    def __post_init__(self):
        for row in self.q_entries:
            for q in row:
                if not q.is_unit():
                    raise ValueError(f"braiding scalar {q} is not invertible")
        self._cache = {}

    def pairing(self, a: tuple, b: tuple) -> LaurentPoly:
        """q^{(a, b)} = prod q_ij^{a_i b_j} for multidegrees a, b."""
        key = (a, b)
        v = self._cache.get(key)
        if v is None:
            ring = self.q_entries[0][0].ring
            v = LaurentPoly.const(1, ring)
            for i in range(self.rank):
                for j in range(self.rank):
                    e = a[i] * b[j]
                    if e:
                        v = v * self.q_entries[i][j] ** e
            self._cache[key] = v
        return v


@dataclass
class NicholsAlgebra:
    """A Nichols algebra (or a degree truncation of one) with automorphism phi_t."""

    braiding: DiagonalBraiding
    automorphism_scalars: list
    basis: list
    kind: str
    order: int  # root-of-unity order N, or the truncation degree for generic kinds
    ring: int
    relation_coeff: LaurentPoly | None = None
    params: dict = field(default_factory=dict)

    def __post_init__(self):
        self.rank = self.braiding.rank
        self.index = {w: i for i, w in enumerate(self.basis)}
        self.one = LaurentPoly.const(1, self.ring)
        self._cop = {}
        self._anti = {}
        self._mul = {}
        self._tpow = {}

    # -- words and degrees
    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def finite(self) -> bool:
        return self.kind in ("rank1", "rank2")

    @property
    def max_degree(self) -> int:
        return max(len(w) for w in self.basis)

    def degree(self, w: Word) -> tuple:
        if self.rank == 1:
            return (len(w),)
        c = w.count(1)
        return (c, len(w) - c)

    def reduce_word(self, w: Word) -> Vec:
        """Normal form of a product of generators."""
        if w in self.index:
            return {w: self.one}
        if self.rank == 1:
            return {}
        for a, b in zip(w, w[1:]):
            if a == b:
                return {}
        n = len(w)
        if self.kind == "rank2" and n == 2 * self.order and w[0] == 2:
            return {w[1:] + w[:1]: self.relation_coeff}
        return {}

    def mul_words(self, u: Word, v: Word) -> Vec:
        key = (u, v)
        r = self._mul.get(key)
        if r is None:
            r = self.reduce_word(u + v)
            self._mul[key] = r
        return r

    def multiply(self, a: Vec, b: Vec) -> Vec:
        out: Vec = {}
        for u, cu in a.items():
            for v, cv in b.items():
                for w, c in self.mul_words(u, v).items():
                    _add_into(out, w, cu * cv * c)
        return out

    def pair(self, u: Word, v: Word) -> LaurentPoly:
        return self.braiding.pairing(self.degree(u), self.degree(v))

    def tpow(self, w: Word) -> LaurentPoly:
        """Scalar by which phi_t acts on the word w."""
        d = self.degree(w)
        v = self._tpow.get(d)
        if v is None:
            v = self.one
            for ti, e in zip(self.automorphism_scalars, d):
                if e:
                    v = v * ti ** e
            self._tpow[d] = v
        return v

    # -- structure maps on basis words
    def coproduct_word(self, w: Word) -> Tensor:
        r = self._cop.get(w)
        if r is not None:
            return r
        if not w:
            r = {((), ()): self.one}
        else:
            i, rest = w[:1], w[1:]
            prev = self.coproduct_word(rest)
            r = {}
            for (c, d), coef in prev.items():
                # (x_i (x) 1)(c (x) d) and (1 (x) x_i)(c (x) d)
                for cw, cc in self.mul_words(i, c).items():
                    _add_into(r, (cw, d), coef * cc)
                q = self.pair(i, c)
                for dw, dc in self.mul_words(i, d).items():
                    _add_into(r, (c, dw), coef * dc * q)
        self._cop[w] = r
        return r

    def antipode_word(self, w: Word) -> Vec:
        r = self._anti.get(w)
        if r is not None:
            return r
        if not w:
            r = {(): self.one}
        else:
            cop = self.coproduct_word(w)
            lead = cop.get((w, ()))
            if lead != self.one:
                raise ArithmeticError("word does not appear with coefficient 1 in its coproduct")
            r = {}
            for (a, b), c in cop.items():
                if a == w and not b:
                    continue
                for sw, sc in self.antipode_word(a).items():
                    for pw, pc in self.mul_words(sw, b).items():
                        _add_into(r, pw, -(c * sc * pc))
        self._anti[w] = r
        return r

    # -- structure maps on elements
    def coproduct(self, a: Vec) -> Tensor:
        out: Tensor = {}
        for w, c in a.items():
            for k, v in self.coproduct_word(w).items():
                _add_into(out, k, c * v)
        return out

    def iterated_coproduct(self, a: Vec) -> dict:
        """(Delta (x) id) Delta a, as a map (w1, w2, w3) -> coefficient."""
        out: dict = {}
        for (u, v), c in self.coproduct(a).items():
            for (u1, u2), c2 in self.coproduct_word(u).items():
                _add_into(out, (u1, u2, v), c * c2)
        return out

    def antipode(self, a: Vec) -> Vec:
        out: Vec = {}
        for w, c in a.items():
            for k, v in self.antipode_word(w).items():
                _add_into(out, k, c * v)
        return out

    def apply_automorphism(self, a: Vec) -> Vec:
        return {w: c * self.tpow(w) for w, c in a.items()}

    def counit(self, a: Vec) -> LaurentPoly:
        return a.get((), LaurentPoly.zero(self.ring))

    def braid_tensor(self, a: Vec, b: Vec) -> Tensor:
        """tau(a (x) b) = q^{(deg a, deg b)} b (x) a, extended bilinearly."""
        out: Tensor = {}
        for u, cu in a.items():
            for v, cv in b.items():
                _add_into(out, (v, u), cu * cv * self.pair(u, v))
        return out

    def element(self, terms) -> "AlgebraElement":
        return AlgebraElement(self, dict(terms))

    def gen(self, *letters: int) -> "AlgebraElement":
        return AlgebraElement(self, self.reduce_word(tuple(letters)))

    def to_json(self) -> str:
        """Product, coproduct and antipode tables on the basis."""
        def vec(v):
            return {"".join(map(str, w)) or "1": str(c) for w, c in v.items()}

        def ten(t):
            return [["".join(map(str, a)) or "1", "".join(map(str, b)) or "1", str(c)]
                    for (a, b), c in t.items()]

        data = {
            "kind": self.kind,
            "order": self.order,
            "basis": ["".join(map(str, w)) or "1" for w in self.basis],
            "product": {f"{''.join(map(str, u)) or '1'}*{''.join(map(str, v)) or '1'}":
                        vec(self.mul_words(u, v)) for u in self.basis for v in self.basis},
            "coproduct": {"".join(map(str, w)) or "1": ten(self.coproduct_word(w)) for w in self.basis},
            "antipode": {"".join(map(str, w)) or "1": vec(self.antipode_word(w)) for w in self.basis},
        }
        return json.dumps(data, indent=1, sort_keys=True)


@dataclass
class AlgebraElement:
    algebra: NicholsAlgebra
    terms: dict

    def _same(self, other):
        if other.algebra is not self.algebra:
            raise ValueError("elements of different algebras")

    def __add__(self, other):
        self._same(other)
        out = dict(self.terms)
        for w, c in other.terms.items():
            _add_into(out, w, c)
        return AlgebraElement(self.algebra, out)

    def __mul__(self, other):
        if isinstance(other, AlgebraElement):
            self._same(other)
            return AlgebraElement(self.algebra, self.algebra.multiply(self.terms, other.terms))
        return AlgebraElement(self.algebra, {w: c * other for w, c in self.terms.items() if c * other})

    def __rmul__(self, other):
        return self * other

    def __eq__(self, other):
        return isinstance(other, AlgebraElement) and self.terms == other.terms

    def coproduct(self) -> Tensor:
        return self.algebra.coproduct(self.terms)

    def antipode(self) -> "AlgebraElement":
        return AlgebraElement(self.algebra, self.algebra.antipode(self.terms))

    def phi(self) -> "AlgebraElement":
        return AlgebraElement(self.algebra, self.algebra.apply_automorphism(self.terms))


# ---------------------------------------------------------------- builders


def _scalar(ring: int, value) -> LaurentPoly:
    return value if isinstance(value, LaurentPoly) else LaurentPoly.const(value, ring)


def build_rank1(N: int, t: LaurentPoly | None = None) -> NicholsAlgebra:
    """F[x]/(x^N) with q a primitive N-th root of unity.

    For N <= 2 the root of unity is the integer 1 or -1 and coefficients stay
    in Z; for N >= 3 they live in Z[w]/Phi_N.
    """
    if N < 1:
        raise ValueError("N must be positive")
    ring = N if N >= 3 else 0
    q = LaurentPoly.root(N) if N >= 3 else LaurentPoly.const(1 if N == 1 else -1)
    t = t if t is not None else LaurentPoly.var("t", ring)
    basis = [(1,) * k for k in range(N)] if N > 1 else [()]
    return NicholsAlgebra(DiagonalBraiding(1, [[q]]), [t], basis, "rank1", N, ring,
                          params={"q": q, "t": t})


def build_rank1_generic(max_degree: int, t: LaurentPoly | None = None,
                        q: LaurentPoly | None = None) -> NicholsAlgebra:
    """Degree truncation of F[x] with symbolic q (no relations below max_degree)."""
    q = q if q is not None else LaurentPoly.var("q")
    t = t if t is not None else LaurentPoly.var("t")
    basis = [(1,) * k for k in range(max_degree + 1)]
    return NicholsAlgebra(DiagonalBraiding(1, [[q]]), [t], basis, "rank1_generic",
                          max_degree, 0, params={"q": q, "t": t})


def build_rank2_root_of_unity(N: int, gauge: LaurentPoly | int | None = None,
                              t1: LaurentPoly | None = None,
                              t2: LaurentPoly | None = None) -> NicholsAlgebra:
    """The 4N-dimensional rank-2 Nichols algebra with q_11 = q_22 = -1, q_12 q_21 = w."""
    if N < 1:
        raise ValueError("N must be positive")
    ring = N if N >= 3 else 0
    w = LaurentPoly.root(N) if N >= 3 else LaurentPoly.const(1 if N == 1 else -1)
    q21 = LaurentPoly.var("q21", ring) if gauge is None else _scalar(ring, gauge)
    q12 = w * q21.inverse_unit()
    m1 = LaurentPoly.const(-1, ring)
    t1 = t1 if t1 is not None else LaurentPoly.var("t1", ring)
    t2 = t2 if t2 is not None else LaurentPoly.var("t2", ring)
    basis = [wd for wd in alternating_words(2 * N) if not (len(wd) == 2 * N and wd[0] == 2)]
    rel = -((-q21) ** N)
    return NicholsAlgebra(DiagonalBraiding(2, [[m1, q12], [q21, m1]]), [t1, t2], basis,
                          "rank2", N, ring, relation_coeff=rel,
                          params={"q12": q12, "q21": q21, "q": w, "t1": t1, "t2": t2})


def build_rank2_generic_truncated(max_degree: int, t1: LaurentPoly | None = None,
                                  t2: LaurentPoly | None = None,
                                  gauge: LaurentPoly | int | None = None) -> NicholsAlgebra:
    """Alternating words up to max_degree with q = s^2, q_21 = g, q_12 = s^2 g^-1."""
    s = LaurentPoly.var("s")
    g = LaurentPoly.var("g") if gauge is None else _scalar(0, gauge)
    q12 = s * s * g.inverse_unit()
    m1 = LaurentPoly.const(-1)
    t1 = t1 if t1 is not None else LaurentPoly.var("t1")
    t2 = t2 if t2 is not None else LaurentPoly.var("t2")
    return NicholsAlgebra(DiagonalBraiding(2, [[m1, q12], [g, m1]]), [t1, t2],
                          alternating_words(max_degree), "rank2_generic", max_degree, 0,
                          params={"q12": q12, "q21": g, "q": s * s, "t1": t1, "t2": t2})


# ---------------------------------------------------------------- axiom checks


def _tensor_mul(H: NicholsAlgebra, x: Tensor, y: Tensor) -> Tensor:
    """Braided product on H (x) H."""
    out: Tensor = {}
    for (a, b), c1 in x.items():
        for (c, d), c2 in y.items():
            q = H.pair(b, c)
            for ac, k1 in H.mul_words(a, c).items():
                for bd, k2 in H.mul_words(b, d).items():
                    _add_into(out, (ac, bd), c1 * c2 * q * k1 * k2)
    return out


@dataclass
class Report:
    name: str
    checks: dict = field(default_factory=dict)
    witnesses: dict = field(default_factory=dict)

    def record(self, check: str, ok: bool, witness=None) -> None:
        prev = self.checks.get(check, True)
        self.checks[check] = prev and ok
        if not ok and check not in self.witnesses:
            self.witnesses[check] = witness

    @property
    def passed(self) -> bool:
        return all(self.checks.values())

    def summary(self) -> str:
        lines = [f"{self.name}: {'PASS' if self.passed else 'FAIL'}"]
        for k, v in self.checks.items():
            lines.append(f"  {k}: {'ok' if v else 'FAILED ' + repr(self.witnesses.get(k))}")
        return "\n".join(lines)


def verify_hopf_axioms(H: NicholsAlgebra, words: list | None = None) -> Report:
    """Check every Hopf axiom and phi-compatibility on basis words and pairs.

    For truncated generic algebras pass ``words`` of degree low enough that
    products stay inside the truncation.
    """
    rep = Report(f"hopf[{H.kind},{H.order}]")
    B = words if words is not None else list(H.basis)
    one = {(): H.one}
    if words is not None:
        limit = H.max_degree
        pairs = [(u, v) for u in B for v in B if len(u) + len(v) <= limit]
        triples = [(u, v, w) for u in B for v in B for w in B if len(u) + len(v) + len(w) <= limit]
    else:
        pairs = list(iproduct(B, B))
        triples = list(iproduct(B, B, B))

    # associativity
    for u, v, w in triples:
        left = H.multiply(H.mul_words(u, v), {w: H.one})
        right = H.multiply({u: H.one}, H.mul_words(v, w))
        rep.record("associativity", left == right, (u, v, w))
    for w in B:
        x = {w: H.one}
        rep.record("unitality", H.multiply(one, x) == x and H.multiply(x, one) == x, w)
        cop = H.coproduct_word(w)
        # coassociativity
        left: dict = {}
        right: dict = {}
        for (a, b), c in cop.items():
            for (a1, a2), c1 in H.coproduct_word(a).items():
                _add_into(left, (a1, a2, b), c * c1)
            for (b1, b2), c2 in H.coproduct_word(b).items():
                _add_into(right, (a, b1, b2), c * c2)
        rep.record("coassociativity", left == right, w)
        # counitality
        l1: Vec = {}
        r1: Vec = {}
        for (a, b), c in cop.items():
            if not a:
                _add_into(l1, b, c)
            if not b:
                _add_into(r1, a, c)
        rep.record("counitality", l1 == x and r1 == x, w)
        # antipode
        eps = one if not w else {}
        s1: Vec = {}
        s2: Vec = {}
        for (a, b), c in cop.items():
            for k, v in H.multiply(H.antipode_word(a), {b: c}).items():
                _add_into(s1, k, v)
            for k, v in H.multiply({a: c}, H.antipode_word(b)).items():
                _add_into(s2, k, v)
        rep.record("antipode", s1 == eps and s2 == eps, w)
        # Delta S = (S (x) S) tau Delta
        lhs = H.coproduct(H.antipode_word(w))
        rhs: Tensor = {}
        for (a, b), c in cop.items():
            q = H.pair(a, b)
            for sb, cb in H.antipode_word(b).items():
                for sa, ca in H.antipode_word(a).items():
                    _add_into(rhs, (sb, sa), c * q * cb * ca)
        rep.record("antipode_anticomultiplicative", lhs == rhs, w)
        # phi compatibility
        phx = H.apply_automorphism(x)
        rep.record("phi_counit", H.counit(phx) == H.counit(x), w)
        rep.record("phi_antipode", H.antipode(phx) == H.apply_automorphism(H.antipode_word(w)), w)
        phd = {(a, b): c * H.tpow(a) * H.tpow(b) for (a, b), c in cop.items()}
        rep.record("phi_coproduct", H.coproduct(phx) == phd, w)
    rep.record("phi_unit", H.apply_automorphism(one) == one, ())
    for u, v in pairs:
        prod = H.mul_words(u, v)
        # Delta nabla = braided product of coproducts
        rep.record("compatibility", H.coproduct(prod) == _tensor_mul(H, H.coproduct_word(u), H.coproduct_word(v)),
                   (u, v))
        # S nabla = nabla tau (S (x) S)
        rhs = H.multiply(H.antipode_word(v), H.antipode_word(u))
        rhs = {k: c * H.pair(u, v) for k, c in rhs.items()}
        rep.record("antipode_antimultiplicative", H.antipode(prod) == rhs, (u, v))
        phi_prod = H.apply_automorphism(prod)
        rep.record("phi_product", phi_prod == H.multiply(H.apply_automorphism({u: H.one}),
                                                         H.apply_automorphism({v: H.one})), (u, v))
    return rep
