"""R-matrices from Yetter-Drinfel'd modules, partial transposes and exact inverses.

Operators on V (x) V are sparse maps ``{(i, j): {(k, l): coeff}}`` sending
b_i (x) b_j to sum coeff * b_k (x) b_l.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .nichols import Report, _add_into
from .polyring import LaurentPoly, UnitRequiredError
from .ydmod import YDModule


class NotRigidError(ArithmeticError):
    pass


class RingEscapeError(ArithmeticError):
    pass


@dataclass
class RMatrix:
    dim: int
    entries: dict
    ring: int = 0
    degrees: list | None = None
    name: str = ""

    def nonzero_count(self) -> int:
        return sum(len(row) for row in self.entries.values())

    def apply(self, vec: dict) -> dict:
        out: dict = {}
        for key, c in vec.items():
            for k2, c2 in self.entries.get(key, {}).items():
                _add_into(out, k2, c * c2)
        return out

    def entry(self, src: tuple, dst: tuple) -> LaurentPoly:
        return self.entries.get(src, {}).get(dst, LaurentPoly.zero(self.ring))

    def compose(self, other: "RMatrix") -> "RMatrix":
        """self after other."""
        out = {}
        for src, row in other.entries.items():
            v = self.apply(row)
            if v:
                out[src] = v
        return RMatrix(self.dim, out, self.ring, self.degrees)

    def substitute(self, bindings) -> "RMatrix":
        out = {}
        for src, row in self.entries.items():
            r = {}
            for dst, c in row.items():
                c2 = c.substitute(bindings)
                if c2:
                    r[dst] = c2
            if r:
                out[src] = r
        return RMatrix(self.dim, out, self.ring, self.degrees, self.name)

    def is_identity(self) -> bool:
        one = LaurentPoly.const(1, self.ring)
        for i in range(self.dim):
            for j in range(self.dim):
                if self.entries.get((i, j), {}) != {(i, j): one}:
                    return False
        return len(self.entries) == self.dim * self.dim

    def to_json(self) -> str:
        rows = []
        for (i, j), row in sorted(self.entries.items()):
            for (k, l), c in sorted(row.items()):
                rows.append({"in": [i, j], "out": [k, l], "coeff": c.to_json()})
        return json.dumps({"name": self.name, "dim": self.dim, "entries": rows})


def identity(dim: int, ring: int = 0) -> RMatrix:
    one = LaurentPoly.const(1, ring)
    return RMatrix(dim, {(i, j): {(i, j): one} for i in range(dim) for j in range(dim)}, ring)


def build_rho_left(M: YDModule) -> RMatrix:
    """rho_L(a (x) b) = sum t^{deg b} q^{(deg a_0, deg b)} a_{-1} b (x) a_0."""
    H = M.algebra
    d = M.dim
    entries = {}
    for i in range(d):
        for j in range(d):
            row: dict = {}
            for h, k, c in M.coaction[i]:
                q = M.pair(k, j) * M.phi[j]
                for m, cm in M.act(j, h).items():
                    _add_into(row, (m, k), c * q * cm)
            if row:
                entries[(i, j)] = row
    return RMatrix(d, entries, H.ring, list(M.degrees), f"rho_L[{M.name}]")


def build_rho_right(M: YDModule) -> RMatrix:
    """rho_R(a (x) b) = sum q^{(deg a, deg b_0)} t^{deg b_0} b_0 (x) lambda_R(a (x) b_1)."""
    H = M.algebra
    d = M.dim
    entries = {}
    for i in range(d):
        for j in range(d):
            row: dict = {}
            for h, k, c in M.coaction[j]:
                q = M.pair(i, k) * M.phi[k]
                for m, cm in M.act(i, h).items():
                    _add_into(row, (k, m), c * q * cm)
            if row:
                entries[(i, j)] = row
    return RMatrix(d, entries, H.ring, list(M.degrees), f"rho_R[{M.name}]")


def check_grading(r: RMatrix) -> bool:
    deg = r.degrees
    if deg is None:
        return True
    for (i, j), row in r.entries.items():
        src = tuple(a + b for a, b in zip(deg[i], deg[j]))
        for (k, l) in row:
            if tuple(a + b for a, b in zip(deg[k], deg[l])) != src:
                return False
    return True


def _apply_left(r: RMatrix, vec: dict) -> dict:
    out: dict = {}
    for (a, b, c), x in vec.items():
        for (k, l), y in r.entries.get((a, b), {}).items():
            _add_into(out, (k, l, c), x * y)
    return out


def _apply_right(r: RMatrix, vec: dict) -> dict:
    out: dict = {}
    for (a, b, c), x in vec.items():
        for (k, l), y in r.entries.get((b, c), {}).items():
            _add_into(out, (a, k, l), x * y)
    return out


def check_yang_baxter(r: RMatrix) -> Report:
    """(r (x) 1)(1 (x) r)(r (x) 1) = (1 (x) r)(r (x) 1)(1 (x) r) on every basis triple."""
    rep = Report(f"yang-baxter[{r.name}]")
    one = LaurentPoly.const(1, r.ring)
    d = r.dim
    for a in range(d):
        for b in range(d):
            for c in range(d):
                v = {(a, b, c): one}
                lhs = _apply_left(r, _apply_right(r, _apply_left(r, v)))
                rhs = _apply_right(r, _apply_left(r, _apply_right(r, v)))
                rep.record("braid_relation", lhs == rhs, (a, b, c))
                if lhs != rhs:
                    return rep
    return rep


def partial_transpose(f: RMatrix) -> RMatrix:
    """The entry (a, b) -> (c, d) is the coefficient of a (x) c in f(b (x) d)."""
    out: dict = {}
    for (b, d), row in f.entries.items():
        for (a, c), x in row.items():
            out.setdefault((a, b), {})[(c, d)] = x
    return RMatrix(f.dim, out, f.ring, f.degrees, f"~{f.name}")


def untranspose(g: RMatrix) -> RMatrix:
    """Inverse of partial_transpose."""
    out: dict = {}
    for (a, b), row in g.entries.items():
        for (c, d), x in row.items():
            out.setdefault((b, d), {})[(a, c)] = x
    return RMatrix(g.dim, out, g.ring, g.degrees, g.name.lstrip("~"))


# ---------------------------------------------------------------- inversion


def _blocks(entries: dict) -> list:
    """Connected components of the bipartite support graph: (rows, cols)."""
    parent: dict = {}

    def find(x):
        while parent.setdefault(x, x) != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for src, row in entries.items():
        for dst in row:
            ra, rb = find(("r", src)), find(("c", dst))
            if ra != rb:
                parent[ra] = rb
        find(("r", src))
    groups: dict = {}
    for node in list(parent):
        groups.setdefault(find(node), []).append(node)
    out = []
    for nodes in groups.values():
        rows = sorted(n[1] for n in nodes if n[0] == "r")
        cols = sorted(n[1] for n in nodes if n[0] == "c")
        out.append((rows, cols))
    return out


def _bareiss_inverse(mat: list) -> tuple:
    """Fraction-free Gauss-Jordan on [A | I]; returns (det, adj) with A adj = det I."""
    n = len(mat)
    one = LaurentPoly.const(1)
    zero = LaurentPoly.zero()
    aug = [list(row) + [one if i == j else zero for j in range(n)] for i, row in enumerate(mat)]
    prev = one
    sign = 1
    for k in range(n):
        piv = None
        best = None
        for r in range(k, n):
            if aug[r][k]:
                size = len(aug[r][k].terms)
                if best is None or size < best:
                    piv, best = r, size
        if piv is None:
            raise NotRigidError("singular block")
        if piv != k:
            aug[k], aug[piv] = aug[piv], aug[k]
            sign = -sign
        pk = aug[k][k]
        rowk = aug[k]
        for i in range(n):
            if i == k:
                continue
            ri = aug[i]
            f = ri[k]
            if f:
                for j in range(2 * n):
                    if j == k:
                        continue
                    v = pk * ri[j] - f * rowk[j]
                    ri[j] = v.divexact(prev) if prev != one else v
            else:
                for j in range(2 * n):
                    if ri[j] and prev != one:
                        ri[j] = (pk * ri[j]).divexact(prev)
                    elif ri[j]:
                        ri[j] = pk * ri[j]
            ri[k] = zero
        prev = pk
    det = prev * sign
    adj = [[aug[i][n + j] * sign for j in range(n)] for i in range(n)]
    return det, adj


def invert(m: RMatrix, check: bool = True) -> RMatrix:
    """Exact inverse, block by block over the support graph.

    Coefficients in Z[w]/Phi_N are lifted to Z[w] for elimination and reduced
    afterwards; the determinant of every block must reduce to a unit.
    """
    ring = m.ring
    inv: dict = {}
    det_total = LaurentPoly.const(1, ring)
    for rows, cols in _blocks(m.entries):
        if len(rows) != len(cols):
            raise NotRigidError("non-square block")
        ci = {c: i for i, c in enumerate(cols)}
        zero = LaurentPoly.zero()
        # matrix acting on column vectors: A[col][row] = entry(row -> col)
        A = [[zero] * len(rows) for _ in cols]
        for ri, src in enumerate(rows):
            for dst, x in m.entries[src].items():
                A[ci[dst]][ri] = x.change_ring(0) if ring else x
        det, adj = _bareiss_inverse(A)
        if ring:
            det = det.change_ring(ring)
        try:
            dinv = det.inverse_unit()
        except UnitRequiredError:
            raise RingEscapeError(f"block determinant {det} is not a unit") from None
        det_total = det_total * det
        # inverse acting on column vectors is adj/det: entry(col -> row) = adj[row][col]
        for r_i, src in enumerate(rows):
            for c_i, dst in enumerate(cols):
                x = adj[r_i][c_i]
                if ring:
                    x = x.change_ring(ring)
                if x:
                    inv.setdefault(dst, {})[src] = x * dinv
    out = RMatrix(m.dim, inv, ring, m.degrees, f"{m.name}^-1")
    out.source_det = det_total
    if check and not out.compose(m).is_identity():
        raise ArithmeticError("inverse verification failed")
    return out


def determinant(m: RMatrix) -> LaurentPoly:
    return invert(m).source_det


@dataclass
class RigidRMatrix:
    """The operators used at the eight oriented crossing types."""

    r_pos: RMatrix
    r_neg: RMatrix
    rt_inv: RMatrix
    rtinv_inv: RMatrix
    dets: dict = field(default_factory=dict)

    @property
    def dim(self) -> int:
        return self.r_pos.dim

    @property
    def ring(self) -> int:
        return self.r_pos.ring

    def substitute(self, bindings) -> "RigidRMatrix":
        return RigidRMatrix(self.r_pos.substitute(bindings), self.r_neg.substitute(bindings),
                            self.rt_inv.substitute(bindings), self.rtinv_inv.substitute(bindings),
                            {k: v.substitute(bindings) for k, v in self.dets.items()})


def build_rigid(r: RMatrix, check: bool = True) -> RigidRMatrix:
    """r, r^-1, (r~)^-1 and ((r^-1)~)^-1, each verified by composition."""
    r_neg = invert(r, check)
    rt = partial_transpose(r)
    rt_inv = invert(rt, check)
    rneg_t = partial_transpose(r_neg)
    rtinv_inv = invert(rneg_t, check)
    dets = {
        "r": r_neg.source_det,
        "r_inv": r_neg.source_det.inverse_unit(),
        "rt": rt_inv.source_det,
        "rt_inv": rt_inv.source_det.inverse_unit(),
        "rtinv": rtinv_inv.source_det,
        "rtinv_inv": rtinv_inv.source_det.inverse_unit(),
    }
    return RigidRMatrix(r, r_neg, rt_inv, rtinv_inv, dets)


def rotate_180(r: RMatrix) -> RMatrix:
    """(i, j) -> (k, l) becomes (l, k) -> (j, i)."""
    out: dict = {}
    for (i, j), row in r.entries.items():
        for (k, l), x in row.items():
            out.setdefault((l, k), {})[(j, i)] = x
    return RMatrix(r.dim, out, r.ring, r.degrees, f"rot180({r.name})")
