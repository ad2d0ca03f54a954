"""Yetter-Drinfel'd modules with automorphism over the Nichols algebras.

A module is stored by its basis vectors (elements of the host algebra), an
action table and a coaction table, all in module coordinates.  The left
modules here are the regular module and its quotients; the right modules
are the regular module and the submodules Y_n of the generic rank-2 algebra.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .nichols import NicholsAlgebra, Report, _add_into, build_rank2_generic_truncated
from .polyring import LaurentPoly


class ConstructionError(RuntimeError):
    pass


def _sphi(H: NicholsAlgebra, w) -> dict:
    """S(phi(w)) for a basis word."""
    tw = H.tpow(w)
    return {k: c * tw for k, c in H.antipode_word(w).items()}


def left_coaction(H: NicholsAlgebra, a: dict) -> dict:
    """delta_L a = sum q^{(a2, a3)} a1 S(phi(a3)) (x) a2."""
    out: dict = {}
    for (a1, a2, a3), c in H.iterated_coproduct(a).items():
        q = H.pair(a2, a3)
        for w, cw in H.multiply({a1: c * q}, _sphi(H, a3)).items():
            _add_into(out, (w, a2), cw)
    return out


def right_action(H: NicholsAlgebra, a: dict, h: dict) -> dict:
    """lambda_R(a (x) h) = sum q^{(a, h1)} S(phi(h1)) a h2."""
    out: dict = {}
    for aw, ac in a.items():
        for hw, hc in h.items():
            for (h1, h2), c in H.coproduct_word(hw).items():
                q = H.pair(aw, h1)
                left = H.multiply(_sphi(H, h1), {aw: ac * hc * c * q})
                for w, cw in H.multiply(left, {h2: H.one}).items():
                    _add_into(out, w, cw)
    return out


@dataclass
class YDModule:
    """Finite YD module: basis vectors, action and coaction in module coordinates.

    ``coaction[i]`` lists (word, j, coeff): for a left module the term
    word (x) b_j of delta(b_i), for a right module the term b_j (x) word.
    ``act(i, word)`` returns {j: coeff}.
    """

    side: str
    algebra: NicholsAlgebra
    vectors: list
    degrees: list
    coaction: list
    action_fn: object = None
    action_words: list = field(default_factory=list)
    name: str = ""

    def __post_init__(self):
        self._act = {}
        H = self.algebra
        self.phi = [H.tpow(self._word_of_degree(d)) for d in self.degrees]

    def _word_of_degree(self, d):
        if self.algebra.rank == 1:
            return (1,) * d[0]
        # any word with this multidegree gives the same phi scalar
        return (1,) * d[0] + (2,) * d[1]

    @property
    def dim(self) -> int:
        return len(self.vectors)

    def act(self, i: int, word) -> dict:
        key = (i, word)
        r = self._act.get(key)
        if r is None:
            r = self.action_fn(i, word)
            self._act[key] = r
        return r

    def pair(self, i: int, j: int) -> LaurentPoly:
        return self.algebra.braiding.pairing(self.degrees[i], self.degrees[j])

    def to_json(self) -> str:
        def w(x):
            return "".join(map(str, x)) or "1"
        data = {
            "side": self.side,
            "name": self.name,
            "dim": self.dim,
            "coaction": [[[w(h), j, str(c)] for h, j, c in row] for row in self.coaction],
            "action": {f"{i}|{w(h)}": {str(j): str(c) for j, c in self.act(i, h).items()}
                       for i in range(self.dim) for h in self.action_words},
        }
        return json.dumps(data, indent=1)


def _coords_words(words_index: dict, vec: dict) -> dict:
    out = {}
    for w, c in vec.items():
        j = words_index.get(w)
        if j is None:
            raise ConstructionError(f"word {w} lies outside the module")
        out[j] = c
    return out


def regular_left_module(H: NicholsAlgebra) -> YDModule:
    """H acting on itself by multiplication with the coaction delta_L."""
    idx = H.index
    coaction = []
    for w in H.basis:
        row = [(h, idx[m], c) for (h, m), c in left_coaction(H, {w: H.one}).items()]
        coaction.append(row)

    def act(i, word):
        return _coords_words(idx, H.mul_words(word, H.basis[i]))

    M = YDModule("left", H, [{w: H.one} for w in H.basis], [H.degree(w) for w in H.basis],
                 coaction, act, list(H.basis), name=f"regular-left[{H.kind},{H.order}]")
    return M


def regular_right_module(H: NicholsAlgebra) -> YDModule:
    """H with the action lambda_R and the coaction Delta."""
    idx = H.index
    coaction = []
    for w in H.basis:
        coaction.append([(h, idx[m], c) for (m, h), c in H.coproduct_word(w).items()])

    def act(i, word):
        return _coords_words(idx, right_action(H, {H.basis[i]: H.one}, {word: H.one}))

    return YDModule("right", H, [{w: H.one} for w in H.basis], [H.degree(w) for w in H.basis],
                    coaction, act, list(H.basis), name=f"regular-right[{H.kind},{H.order}]")


def find_coinvariants(M: YDModule) -> list:
    """Basis words w of positive degree with delta_L w = 1 (x) w."""
    H = M.algebra
    out = []
    for i, vec in enumerate(M.vectors):
        if not any(M.degrees[i]):
            continue
        row = M.coaction[i]
        if len(row) == 1 and row[0][0] == () and row[0][1] == i and row[0][2] == H.one:
            out.append(next(iter(vec)))
    return out


def quotient_by_coinvariants(M: YDModule, generators: list, keep_below: int | None = None) -> YDModule:
    """Quotient of a regular left module by the left ideal generated by coinvariants.

    The ideal must be spanned by basis words (true for the rank-1 case).  When
    the host is a degree truncation, ``keep_below`` bounds which words are
    meaningful; by default every word outside the ideal is kept.
    """
    H = M.algebra
    ideal = set()
    for g in generators:
        row = M.coaction[H.index[g]]
        if not (len(row) == 1 and row[0][0] == ()):
            raise ConstructionError(f"{g} is not coinvariant")
        for h in H.basis:
            prod = H.mul_words(h, g)
            if len(prod) > 1:
                raise ConstructionError("ideal is not spanned by words")
            ideal.update(prod)
    # words above the truncation would also have been products h*g
    if generators:
        top = min(len(g) for g in generators)
        ideal.update(w for w in H.basis if len(w) >= top and H.rank == 1)
    keep = [w for w in H.basis if w not in ideal]
    if keep_below is not None:
        keep = [w for w in keep if len(w) < keep_below]
    kidx = {w: i for i, w in enumerate(keep)}
    coaction = []
    for w in keep:
        row = []
        for h, j, c in M.coaction[H.index[w]]:
            m = H.basis[j]
            if m in kidx:
                row.append((h, kidx[m], c))
            elif m not in ideal:
                raise ConstructionError("coaction leaves the quotient")
        coaction.append(row)

    def act(i, word):
        out = {}
        for w, c in H.mul_words(word, keep[i]).items():
            if w in kidx:
                out[kidx[w]] = c
        return out

    return YDModule("left", H, [{w: H.one} for w in keep], [H.degree(w) for w in keep],
                    coaction, act, [w for w in H.basis if w not in ideal],
                    name=f"quotient[{H.kind},{len(keep)}]")


# ---------------------------------------------------------------- Y_n


def yn_parameters(n: int) -> dict:
    """t1 = s^-n t^-1 and t2 = s^-n t, so that t1 t2 q^n = 1 with q = s^2."""
    s = LaurentPoly.var("s")
    t = LaurentPoly.var("t")
    return {"t1": s ** (-n) * t ** -1, "t2": s ** (-n) * t}


def build_Yn(n: int, bind: bool = True, gauge=None, truncation: int | None = None) -> YDModule:
    """The 4n-dimensional right YD submodule Y_n of the generic rank-2 algebra.

    Basis: alternating words of degree < 2n, then v = (x1x2)^n + alpha (x2x1)^n
    with alpha = t2 (-q12)^n.  With ``bind=False`` the automorphism scalars
    stay free and closure is expected to fail.  The host truncation defaults
    to 2n + 1, enough for the generator actions; identity checks that
    multiply module vectors by algebra words need a larger one.
    """
    if n < 1:
        raise ValueError("n must be positive")
    params = yn_parameters(n) if bind else {}
    H = build_rank2_generic_truncated(truncation or 2 * n + 1, params.get("t1"), params.get("t2"), gauge)
    q12 = H.params["q12"]
    t2 = H.automorphism_scalars[1]
    alpha = t2 * (-q12) ** n
    top1 = (1, 2) * n
    top2 = (2, 1) * n
    words = [w for w in H.basis if len(w) < 2 * n]
    vectors = [{w: H.one} for w in words] + [{top1: H.one, top2: alpha}]
    widx = {w: i for i, w in enumerate(words)}
    vpos = len(words)

    def coords(vec: dict) -> dict:
        out = {}
        for w, c in vec.items():
            if w in widx:
                out[widx[w]] = c
            elif w == top1:
                out[vpos] = c
            elif w == top2:
                continue
            else:
                raise ConstructionError(f"word {w} lies outside Y_{n}")
        c1 = vec.get(top1, LaurentPoly.zero())
        c2 = vec.get(top2, LaurentPoly.zero())
        if c2 != c1 * alpha:
            raise ConstructionError(f"degree-{2 * n} component is not a multiple of v")
        return {k: c for k, c in out.items() if c}

    gen_action = {}
    for i, vec in enumerate(vectors):
        for k in (1, 2):
            gen_action[(i, k)] = coords(right_action(H, vec, {(k,): H.one}))

    def act(i, word):
        cur = {i: H.one}
        for k in word:
            nxt: dict = {}
            for j, c in cur.items():
                for m, cm in gen_action[(j, k)].items():
                    _add_into(nxt, m, c * cm)
            cur = nxt
        return cur

    coaction = []
    for vec in vectors:
        grouped: dict = {}
        for (a, b), c in H.coproduct(vec).items():
            grouped.setdefault(b, {})
            _add_into(grouped[b], a, c)
        row = []
        for h, first in grouped.items():
            for j, c in coords(first).items():
                row.append((h, j, c))
        coaction.append(row)

    degrees = [H.degree(w) for w in words] + [(n, n)]
    M = YDModule("right", H, vectors, degrees, coaction, act,
                 [w for w in H.basis if len(w) <= 2 * n], name=f"Y_{n}")
    M.params = {"n": n, "alpha": alpha, **params}
    return M


# ---------------------------------------------------------------- axiom checks


def _apply_action(M: YDModule, vec: dict, word) -> dict:
    out: dict = {}
    for i, c in vec.items():
        for j, cj in M.act(i, word).items():
            _add_into(out, j, c * cj)
    return out


def _act_elem(M: YDModule, i: int, h: dict) -> dict:
    out: dict = {}
    for w, c in h.items():
        for j, cj in M.act(i, w).items():
            _add_into(out, j, c * cj)
    return out


def verify_yd_axioms(M: YDModule, words: list | None = None) -> Report:
    """Module, comodule and YD compatibility identities on the full module basis.

    ``words`` lists the algebra words used as test elements; products that
    would exceed a truncated host are skipped.
    """
    H = M.algebra
    rep = Report(f"yd[{M.name}]")
    W = words if words is not None else list(M.action_words)
    limit = H.max_degree if not H.finite else None

    def fits(*ws):
        return limit is None or sum(len(w) for w in ws) <= limit

    for i in range(M.dim):
        rep.record("unit_action", M.act(i, ()) == {i: H.one}, i)
        row = M.coaction[i]
        counit = {}
        for h, j, c in row:
            if not h:
                _add_into(counit, j, c)
        rep.record("counit_coaction", counit == {i: H.one}, i)
        # coassociativity of the coaction
        lhs: dict = {}
        rhs: dict = {}
        for h, j, c in row:
            for h2, k, c2 in M.coaction[j]:
                key = (h, h2, k) if M.side == "left" else (h2, h, k)
                _add_into(lhs, key, c * c2)
            for (a, b), cc in H.coproduct_word(h).items():
                _add_into(rhs, (a, b, j), c * cc)
        rep.record("coassociative_coaction", lhs == rhs, i)
        for h in W:
            for g in W:
                if not fits(h, g):
                    continue
                # module axiom
                if M.side == "left":
                    lhs = _apply_action(M, M.act(i, g), h)
                    rhs = _act_elem(M, i, H.mul_words(h, g))
                else:
                    lhs = _apply_action(M, M.act(i, h), g)
                    rhs = _act_elem(M, i, H.mul_words(h, g))
                rep.record("associative_action", lhs == rhs, (i, h, g))
        for h in W:
            if limit is not None and sum(M.degrees[i]) + len(h) > limit:
                continue
            ok, wit = (_check_dyl if M.side == "left" else _check_dyr)(M, i, h)
            rep.record("yd_compatibility", ok, wit)
    return rep


def _check_dyl(M: YDModule, i: int, h) -> tuple:
    H = M.algebra
    lhs: dict = {}
    for (h1, h2), c in H.coproduct_word(h).items():
        q1 = H.braiding.pairing(H.degree(h2), M.degrees[i])
        ph2 = H.tpow(h2)
        for j, cj in M.act(i, h1).items():
            for a, k, ck in M.coaction[j]:
                q2 = H.braiding.pairing(M.degrees[k], H.degree(h2))
                for w, cw in H.mul_words(a, h2).items():
                    _add_into(lhs, (w, k), c * q1 * cj * ck * q2 * ph2 * cw)
    rhs: dict = {}
    for a, j, cj in M.coaction[i]:
        for (h1, h2), c in H.coproduct_word(h).items():
            q = H.pair(h2, a)
            for w, cw in H.mul_words(h1, a).items():
                for k, ck in M.act(j, h2).items():
                    _add_into(rhs, (w, k), cj * c * q * cw * ck)
    return lhs == rhs, (i, h)


def _check_dyr(M: YDModule, i: int, h) -> tuple:
    H = M.algebra
    lhs: dict = {}
    for (h1, h2), c in H.coproduct_word(h).items():
        q1 = H.braiding.pairing(M.degrees[i], H.degree(h1))
        ph1 = H.tpow(h1)
        for j, cj in M.act(i, h2).items():
            for b, k, ck in M.coaction[j]:
                q2 = H.braiding.pairing(H.degree(h1), M.degrees[k])
                for w, cw in H.mul_words(h1, b).items():
                    _add_into(lhs, (k, w), c * q1 * ph1 * cj * ck * q2 * cw)
    rhs: dict = {}
    for b, j, cj in M.coaction[i]:
        for (h1, h2), c in H.coproduct_word(h).items():
            q = H.braiding.pairing(H.degree(b), H.degree(h1))
            for k, ck in M.act(j, h1).items():
                for w, cw in H.mul_words(b, h2).items():
                    _add_into(rhs, (k, w), cj * c * q * ck * cw)
    return lhs == rhs, (i, h)
