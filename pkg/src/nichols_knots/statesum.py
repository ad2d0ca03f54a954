"""State sums of long knot diagrams by frontier contraction.

The frontier maps tuples of basis labels (one per strand cut by the sweep
line) to amplitudes.  Crossings re-weight two adjacent labels, leftward cups
insert an equal pair summed over the basis, and leftward caps keep only equal
pairs.  Polynomial arithmetic runs on python-flint; every weight table is made
polynomial by a monomial shift that is tracked globally and undone at the end.
"""

from __future__ import annotations

import itertools
import json
import time
from dataclasses import dataclass, field

from .knotdiag import CrossingKind, LongDiagram, trace, validate
from .polyring import LaurentPoly, pack, var_index
from .rmatrix import RigidRMatrix


class DiagramRejected(ValueError):
    pass


class FrontierOverflowError(RuntimeError):
    pass


# ---------------------------------------------------------------- weights


@dataclass
class CrossingWeights:
    """Weights of one oriented crossing type as a table over its four edges.

    ``table[(bl, br)][(tl, tr)]`` is the weight of the labelling with bottom
    labels (bl, br) and top labels (tl, tr).
    """

    kind: CrossingKind
    operator: str
    table: dict

    def weight(self, bl: int, br: int, tl: int, tr: int) -> LaurentPoly | None:
        return self.table.get((bl, br), {}).get((tl, tr))


def crossing_weights(kind: CrossingKind, R: RigidRMatrix) -> CrossingWeights:
    """Select the operator and index arrangement for an oriented crossing.

    With P the strand from bottom-left to top-right and Q the other one:

    * both up:        entry (BL, BR) -> (TL, TR) of r^{+-1}
    * P down, Q up:   entry (BR, TR) -> (BL, TL) of r^{+-1}
    * both down:      entry (TR, TL) -> (BR, BL) of r^{+-1}
    * P up, Q down:   entry (BL, BR) -> (TL, TR) of ((r^-1)~)^-1 when
      positive and of (r~)^-1 when negative.
    """
    positive = kind.sign > 0
    pat = kind.pattern
    if pat == "mixed":
        name = "rtinv_inv" if positive else "rt_inv"
    else:
        name = "r_pos" if positive else "r_neg"
    op = getattr(R, name)
    table: dict = {}
    for (i, j), row in op.entries.items():
        for (k, l), c in row.items():
            if pat in ("up", "mixed"):
                src, dst = (i, j), (k, l)
            elif pat == "left":
                # BR=i, TR=j, BL=k, TL=l
                src, dst = (k, i), (l, j)
            else:
                # TR=i, TL=j, BR=k, BL=l
                src, dst = (l, k), (j, i)
            table.setdefault(src, {})[dst] = c
    return CrossingWeights(kind, name, table)


# ---------------------------------------------------------------- backends


class LaurentBackend:
    """Pure-Python arithmetic on LaurentPoly; slow but dependency free."""

    name = "python"

    def __init__(self, ring: int):
        self.ring = ring

    def one(self):
        return LaurentPoly.const(1, self.ring)

    def table(self, weights: dict):
        return {src: list(row.items()) for src, row in weights.items()}, None

    def finish(self, value, shift) -> LaurentPoly:
        return value


class FlintBackend:
    """Multivariate integer polynomials from python-flint.

    A cyclotomic root w is treated as a free variable and reduced when the
    result is converted back.
    """

    name = "flint"

    def __init__(self, ring: int, names: list):
        import flint

        self.ring = ring
        self.names = sorted(set(names)) or ["_"]
        self.pos = {n: i for i, n in enumerate(self.names)}
        self.ctx = flint.fmpz_mpoly_ctx.get(tuple(self.names), "lex")
        self.shift = [0] * len(self.names)

    def one(self):
        return self.ctx.from_dict({(0,) * len(self.names): 1})

    def table(self, weights: dict):
        nv = len(self.names)
        low = [0] * nv
        for row in weights.values():
            for c in row.values():
                for exps, _ in c.items():
                    for n, e in exps.items():
                        i = self.pos[n]
                        if e < low[i]:
                            low[i] = e
        out = {}
        for src, row in weights.items():
            conv = []
            for dst, c in row.items():
                d = {}
                for exps, coeff in c.items():
                    key = [-x for x in low]
                    for n, e in exps.items():
                        key[self.pos[n]] += e
                    d[tuple(key)] = coeff
                conv.append((dst, self.ctx.from_dict(d)))
            out[src] = conv
        return out, low

    def finish(self, value, shift) -> LaurentPoly:
        terms = {}
        for exps, c in value.to_dict().items():
            key = pack({var_index(n): int(e) + s for n, e, s in zip(self.names, exps, shift) if n != "_"})
            terms[key] = terms.get(key, 0) + int(c)
        return LaurentPoly(terms, self.ring)


def _make_backend(kind: str, R: RigidRMatrix):
    if kind == "python":
        return LaurentBackend(R.ring)
    names = set()
    for op in (R.r_pos, R.r_neg, R.rt_inv, R.rtinv_inv):
        for row in op.entries.values():
            for c in row.values():
                for exps, _ in c.items():
                    names.update(exps)
    try:
        return FlintBackend(R.ring, sorted(names))
    except ImportError:
        if kind == "flint":
            raise
        return LaurentBackend(R.ring)


# ---------------------------------------------------------------- contraction


@dataclass
class StateSumResult:
    dim: int
    matrix: dict
    columns: list
    runtime_ms: float = 0.0
    peak_states: int = 0
    meta: dict = field(default_factory=dict)

    @property
    def scalar(self) -> LaurentPoly:
        return self.entry(0, 0)

    def entry(self, out: int, inp: int) -> LaurentPoly:
        return self.matrix.get((out, inp), LaurentPoly.zero(self.meta.get("ring", 0)))

    def column(self, inp: int) -> dict:
        return {o: c for (o, i), c in self.matrix.items() if i == inp}

    def to_json(self, knot: str = "", invariant: str = "", params: dict | None = None) -> str:
        chk = check_scalar(self) if len(self.columns) == self.dim else None
        return json.dumps({
            "knot": knot, "invariant": invariant, "params": params or {},
            "scalar": self.scalar.to_json(),
            "scalar_check": None if chk is None else
            {"off_diag_zero": chk.off_diag_zero, "diag_constant": chk.diag_constant},
            "runtime_ms": round(self.runtime_ms, 1),
        })


def _tables_for(d: LongDiagram, R: RigidRMatrix, backend) -> dict:
    tables = {}
    for kind in d.crossing_kinds():
        if kind not in tables:
            w = crossing_weights(kind, R)
            tables[kind] = backend.table(w.table)
    return tables


def contract(d: LongDiagram, R: RigidRMatrix, columns="first", backend: str = "auto",
             max_width: int = 12, require_balanced: bool = True) -> StateSumResult:
    """Evaluate the state sum column by column.

    ``columns`` is ``"first"`` (the unit column only), ``"all"`` or an
    explicit list of input labels.
    """
    problems = validate(d, require_normal=True, require_balanced=require_balanced)
    if problems:
        raise DiagramRejected("; ".join(problems))
    if d.max_width > max_width:
        raise FrontierOverflowError(f"frontier width {d.max_width} exceeds cap {max_width}")
    dim = R.dim
    if columns == "first":
        cols = [0]
    elif columns == "all":
        cols = list(range(dim))
    else:
        cols = list(columns)
    start = time.perf_counter()
    be = _make_backend(backend, R)
    tables = _tables_for(d, R, be)
    matrix = {}
    peak = 0
    for a in cols:
        out, shift, pk = _sweep(d, tables, be, dim, a)
        peak = max(peak, pk)
        for (label,), value in out.items():
            if value:
                p = be.finish(value, shift)
                if p:
                    matrix[(label, a)] = p
    ms = (time.perf_counter() - start) * 1000
    return StateSumResult(dim, matrix, cols, ms, peak,
                          {"ring": R.ring, "backend": be.name, "crossings": d.crossings,
                           "max_width": d.max_width})


def _sweep(d: LongDiagram, tables: dict, be, dim: int, label: int):
    frontier = {(label,): be.one()}
    shift = None
    peak = 1
    for s, kind in zip(d.slices, d.kinds):
        p = s.pos
        new: dict = {}
        if s.op == "cup":
            for st, amp in frontier.items():
                head, tail = st[:p], st[p:]
                for a in range(dim):
                    new[head + (a, a) + tail] = amp
        elif s.op == "cap":
            for st, amp in frontier.items():
                if st[p] == st[p + 1]:
                    key = st[:p] + st[p + 2:]
                    prev = new.get(key)
                    new[key] = amp if prev is None else prev + amp
        else:
            table, low = tables[kind]
            if low is not None:
                shift = list(low) if shift is None else [x + y for x, y in zip(shift, low)]
            for st, amp in frontier.items():
                row = table.get((st[p], st[p + 1]))
                if not row:
                    continue
                head, tail = st[:p], st[p + 2:]
                for pair, c in row:
                    key = head + pair + tail
                    prev = new.get(key)
                    new[key] = amp * c if prev is None else prev + amp * c
            new = {k: v for k, v in new.items() if v}
        frontier = new
        peak = max(peak, len(frontier))
    if shift is None:
        shift = [0] * len(getattr(be, "names", []))
    return frontier, shift, peak


# ---------------------------------------------------------------- oracle


def brute_force(d: LongDiagram, R: RigidRMatrix, columns="all") -> StateSumResult:
    """Direct sum over every labelling of the edges.

    Segments joined through a cup or cap form one edge and share a label.
    """
    problems = validate(d)
    if problems:
        raise DiagramRejected("; ".join(problems))
    t = trace(d.slices)
    nseg = len(t.segments)
    parent = list(range(nseg))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    slots: dict = {}
    for sid, (bot, top) in enumerate(t.segments):
        if len(bot) == 2:
            slots[(bot[0], "top", bot[1])] = sid
        if len(top) == 2:
            slots[(top[0], "bottom", top[1])] = sid
    crossings = []
    for k, s in enumerate(d.slices):
        if s.op == "cross":
            crossings.append((k, slots[(k, "bottom", "L")], slots[(k, "bottom", "R")],
                              slots[(k, "top", "L")], slots[(k, "top", "R")]))
        elif s.op == "cup":
            parent[find(slots[(k, "top", "L")])] = find(slots[(k, "top", "R")])
        else:
            parent[find(slots[(k, "bottom", "L")])] = find(slots[(k, "bottom", "R")])
    roots = sorted({find(x) for x in range(nseg)})
    ridx = {r: i for i, r in enumerate(roots)}
    edge = [ridx[find(x)] for x in range(nseg)]
    in_edge = edge[0]
    out_seg = next(i for i, (b, tp) in enumerate(t.segments) if tp == ("out",))
    out_edge = edge[out_seg]
    weights = {k: crossing_weights(kind, R) for k, kind in t.kinds.items()}
    dim = R.dim
    cols = list(range(dim)) if columns == "all" else ([0] if columns == "first" else list(columns))
    free = [e for e in range(len(roots)) if e != in_edge]
    start = time.perf_counter()
    matrix: dict = {}
    zero = LaurentPoly.zero(R.ring)
    for a in cols:
        for labels in itertools.product(range(dim), repeat=len(free)):
            lab = [0] * len(roots)
            lab[in_edge] = a
            for e, x in zip(free, labels):
                lab[e] = x
            if out_edge == in_edge and lab[out_edge] != a:
                continue
            w = LaurentPoly.const(1, R.ring)
            for k, bl, br, tl, tr in crossings:
                c = weights[k].weight(lab[edge[bl]], lab[edge[br]], lab[edge[tl]], lab[edge[tr]])
                if c is None:
                    w = zero
                    break
                w = w * c
            if w:
                key = (lab[out_edge], a)
                matrix[key] = matrix.get(key, zero) + w
    matrix = {k: v for k, v in matrix.items() if v}
    return StateSumResult(dim, matrix, cols, (time.perf_counter() - start) * 1000, 0,
                          {"ring": R.ring, "backend": "enumeration"})


# ---------------------------------------------------------------- scalar check


@dataclass
class ScalarCheck:
    off_diag_zero: bool
    diag_constant: bool
    max_off_diag_terms: int
    detail: str = ""

    @property
    def scalar(self) -> bool:
        return self.off_diag_zero and self.diag_constant


def check_scalar(res: StateSumResult) -> ScalarCheck:
    """Report whether the computed columns form a multiple of the identity."""
    off = [c for (o, i), c in res.matrix.items() if o != i]
    diag = [res.entry(i, i) for i in res.columns]
    const = all(x == diag[0] for x in diag)
    worst = max((len(c.terms) for c in off), default=0)
    detail = "" if not off else f"{len(off)} nonzero off-diagonal entries"
    return ScalarCheck(not off, const, worst, detail)
