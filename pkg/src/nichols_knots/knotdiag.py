"""Long knot diagrams as sequences of horizontal slices.

A diagram is swept from bottom to top.  The frontier is the ordered list of
strands cut by a horizontal line; it starts with the single in-edge and ends
with the single out-edge.  Slices are

* ``cup``   at position p: two new strands appear at p, p+1 (a local minimum),
* ``cap``   at position p: strands p, p+1 are joined (a local maximum),
* ``cross`` at position p: strands p, p+1 cross.

At a crossing the strand running from bottom-left to top-right is called P
and the one from bottom-right to top-left is called Q; ``over`` names the
overstrand.  Orientations are not stored in the slices: they are recovered by
tracing the knot from the in-edge.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field, replace
from importlib import resources


class DiagramError(ValueError):
    pass


class BraidError(ValueError):
    pass


# ---------------------------------------------------------------- braid words


@dataclass(frozen=True)
class BraidWord:
    width: int
    letters: tuple

    def __post_init__(self):
        if self.width < 1:
            raise BraidError("braid width must be positive")
        for x in self.letters:
            if x == 0 or abs(x) > self.width - 1:
                raise BraidError(f"generator {x} out of range for width {self.width}")

    def permutation(self) -> list:
        """Position reached at the top by the strand starting at each bottom position."""
        perm = list(range(self.width))
        for x in self.letters:
            i = abs(x) - 1
            perm[i], perm[i + 1] = perm[i + 1], perm[i]
        # perm[pos] is the strand now at pos; invert to strand -> pos
        out = [0] * self.width
        for pos, strand in enumerate(perm):
            out[strand] = pos
        return out

    def components(self) -> int:
        perm = self.permutation()
        seen = set()
        count = 0
        for s in range(self.width):
            if s in seen:
                continue
            count += 1
            while s not in seen:
                seen.add(s)
                s = perm[s]
        return count

    def mirror(self) -> "BraidWord":
        return BraidWord(self.width, tuple(-x for x in self.letters))

    def rotate(self, k: int) -> "BraidWord":
        """Cyclic conjugate starting at letter k."""
        if not self.letters:
            return self
        k %= len(self.letters)
        return BraidWord(self.width, self.letters[k:] + self.letters[:k])

    def flip(self) -> "BraidWord":
        """Conjugate by the half twist: generator i becomes width - i."""
        return BraidWord(self.width, tuple((self.width - abs(x)) * (1 if x > 0 else -1)
                                           for x in self.letters))

    def text(self) -> str:
        return " ".join(str(x) for x in self.letters)


_SIGMA = re.compile(r"^(?:s|σ|sigma)?(-?\d+)(?:\^(-?\d+))?$")


def parse_braid_word(text: str, width: int | None = None) -> BraidWord:
    """Parse whitespace/comma separated signed generators.

    Tokens are integers such as ``1`` or ``-2``; ``s1^3`` or ``σ2^-1`` denote
    powers.  When ``width`` is omitted it is one more than the largest index.
    The closure must be a knot.
    """
    letters: list = []
    for tok in re.split(r"[\s,]+", text.strip()):
        if not tok:
            continue
        m = _SIGMA.match(tok)
        if not m:
            raise BraidError(f"cannot parse braid token {tok!r}")
        gen = int(m.group(1))
        power = int(m.group(2)) if m.group(2) else 1
        if gen == 0:
            raise BraidError("generator 0 is not allowed")
        sign = 1 if power > 0 else -1
        letters.extend([gen * sign] * abs(power))
    if width is None:
        width = max((abs(x) for x in letters), default=0) + 1
    b = BraidWord(width, tuple(letters))
    if b.components() != 1:
        raise BraidError(f"closure has {b.components()} components, not a knot")
    return b


# ---------------------------------------------------------------- slices


@dataclass(frozen=True)
class CrossingKind:
    """Oriented crossing: directions of P and Q and which one is over."""

    p_up: bool
    q_up: bool
    over: str

    @property
    def sign(self) -> int:
        p = (1, 1) if self.p_up else (-1, -1)
        q = (-1, 1) if self.q_up else (1, -1)
        o, u = (p, q) if self.over == "P" else (q, p)
        return 1 if o[0] * u[1] - o[1] * u[0] > 0 else -1

    @property
    def pattern(self) -> str:
        """Which of the four index arrangements supplies the weight."""
        return {(True, True): "up", (False, True): "left", (False, False): "down",
                (True, False): "mixed"}[(self.p_up, self.q_up)]


ALL_KINDS = tuple(CrossingKind(p, q, o) for p in (True, False) for q in (True, False)
                  for o in ("P", "Q"))


@dataclass(frozen=True)
class Slice:
    op: str
    pos: int
    over: str | None = None

    def __post_init__(self):
        if self.op not in ("cup", "cap", "cross"):
            raise DiagramError(f"unknown slice {self.op}")
        if (self.op == "cross") != (self.over in ("P", "Q")):
            raise DiagramError("crossings need over in {'P','Q'}; extrema none")


def cup(p: int) -> Slice:
    return Slice("cup", p)


def cap(p: int) -> Slice:
    return Slice("cap", p)


def cross(p: int, over: str) -> Slice:
    return Slice("cross", p, over)


# ---------------------------------------------------------------- tracing


@dataclass
class Trace:
    """Result of following the knot from the in-edge.

    ``segments`` holds for every segment its (bottom, top) attachment; an
    attachment is ``("in",)``, ``("out",)`` or ``(slice_index, slot)``.
    ``up[seg]`` is the traversal direction.  ``frontiers[k]`` lists the
    segment ids cut just below slice k (the last entry is the final frontier).
    """

    segments: list
    up: list
    frontiers: list
    kinds: dict
    extrema: dict
    order: list


def trace(slices) -> Trace:
    segments: list = []

    def new_seg(bottom):
        segments.append([bottom, None])
        return len(segments) - 1

    frontier = [new_seg(("in",))]
    frontiers = []
    for k, s in enumerate(slices):
        frontiers.append(list(frontier))
        p = s.pos
        if s.op == "cup":
            if not 0 <= p <= len(frontier):
                raise DiagramError(f"slice {k}: cup position {p} out of range")
            a, b = new_seg((k, "L")), new_seg((k, "R"))
            frontier[p:p] = [a, b]
        else:
            if not 0 <= p < len(frontier) - 1:
                raise DiagramError(f"slice {k}: position {p} out of range")
            a, b = frontier[p], frontier[p + 1]
            segments[a][1] = (k, "L")
            segments[b][1] = (k, "R")
            if s.op == "cap":
                del frontier[p:p + 2]
            else:
                frontier[p:p + 2] = [new_seg((k, "L")), new_seg((k, "R"))]
    frontiers.append(list(frontier))
    if len(frontier) != 1:
        raise DiagramError(f"final frontier has width {len(frontier)}")
    segments[frontier[0]][1] = ("out",)

    # slot lookup: which segment sits at (slice, side, bottom/top)
    below: dict = {}
    above: dict = {}
    for sid, (bot, top) in enumerate(segments):
        if len(top) == 2:
            below[top] = sid
        if len(bot) == 2:
            above[bot] = sid

    up = [None] * len(segments)
    order = []
    seg, going_up = 0, True
    while True:
        if up[seg] is not None:
            raise DiagramError("trace revisits a segment")
        up[seg] = going_up
        order.append(seg)
        end = segments[seg][1] if going_up else segments[seg][0]
        if end == ("out",):
            if not going_up:
                raise DiagramError("out-edge reached downward")
            break
        if end == ("in",):
            raise DiagramError("in-edge reached from above")
        k, side = end
        s = slices[k]
        other = "R" if side == "L" else "L"
        if s.op == "cross":
            # BL -> TR and BR -> TL moving up; reversed moving down
            seg = above[(k, other)] if going_up else below[(k, other)]
        elif s.op == "cap":
            seg = below[(k, other)]
            going_up = False
        else:
            seg = above[(k, other)]
            going_up = True
    if any(u is None for u in up):
        raise DiagramError("diagram has more than one component")

    kinds = {}
    extrema = {}
    for k, s in enumerate(slices):
        if s.op == "cross":
            p_up = up[below[(k, "L")]]
            q_up = up[below[(k, "R")]]
            kinds[k] = CrossingKind(p_up, q_up, s.over)
        elif s.op == "cup":
            l_up, r_up = up[above[(k, "L")]], up[above[(k, "R")]]
            if l_up == r_up:
                raise DiagramError("inconsistent cup orientation")
            extrema[k] = "leftward" if l_up else "rightward"
        else:
            l_up, r_up = up[below[(k, "L")]], up[below[(k, "R")]]
            if l_up == r_up:
                raise DiagramError("inconsistent cap orientation")
            extrema[k] = "leftward" if not l_up else "rightward"
    return Trace([tuple(x) for x in segments], up, frontiers, kinds, extrema, order)


# ---------------------------------------------------------------- diagrams


@dataclass(frozen=True)
class LongDiagram:
    slices: tuple
    name: str = ""
    kinds: tuple = field(default=(), compare=False)
    positive: int = field(default=0, compare=False)
    negative: int = field(default=0, compare=False)
    normal: bool = field(default=True, compare=False)
    max_width: int = field(default=1, compare=False)

    @classmethod
    def from_slices(cls, slices, name: str = "") -> "LongDiagram":
        slices = tuple(slices)
        t = trace(slices)
        kinds = tuple(t.kinds.get(k) for k in range(len(slices)))
        pos = sum(1 for k in kinds if k is not None and k.sign > 0)
        neg = sum(1 for k in kinds if k is not None and k.sign < 0)
        normal = all(v == "leftward" for v in t.extrema.values())
        width = max(len(f) for f in t.frontiers)
        return cls(slices, name, kinds, pos, neg, normal, width)

    @property
    def writhe(self) -> int:
        return self.positive - self.negative

    @property
    def crossings(self) -> int:
        return self.positive + self.negative

    @property
    def balanced(self) -> bool:
        return self.positive == self.negative

    def crossing_kinds(self) -> list:
        return [k for k in self.kinds if k is not None]

    def then(self, other: "LongDiagram", name: str = "") -> "LongDiagram":
        """Stack ``other`` on top: the long-knot connected sum."""
        return LongDiagram.from_slices(self.slices + other.slices, name or f"{self.name}#{other.name}")

    def to_json(self) -> str:
        return json.dumps({"name": self.name,
                           "slices": [[s.op, s.pos] + ([s.over] if s.over else []) for s in self.slices],
                           "positive": self.positive, "negative": self.negative})


def validate(d: LongDiagram, require_normal: bool = True, require_balanced: bool = True) -> list:
    """List of violated structural invariants (empty when the diagram is fine)."""
    problems = []
    try:
        t = trace(d.slices)
    except DiagramError as exc:
        return [f"malformed: {exc}"]
    if require_normal and any(v != "leftward" for v in t.extrema.values()):
        problems.append("rightward extremum present")
    kinds = [k for k in t.kinds.values()]
    pos = sum(1 for k in kinds if k.sign > 0)
    if require_balanced and 2 * pos != len(kinds):
        problems.append(f"unbalanced: {pos} positive, {len(kinds) - pos} negative")
    return problems


def normalize_extrema(d: LongDiagram) -> LongDiagram:
    """Replace every rightward extremum by a crossing and a leftward extremum.

    A rightward cap becomes a crossing whose upward strand P is over (a
    negative crossing) followed by a leftward cap.  A rightward cup becomes a
    leftward cup followed by a crossing whose downward strand Q is over (a
    positive crossing).
    """
    t = trace(d.slices)
    out = []
    for k, s in enumerate(d.slices):
        if t.extrema.get(k) == "rightward":
            if s.op == "cap":
                out += [cross(s.pos, "P"), cap(s.pos)]
            else:
                out += [cup(s.pos), cross(s.pos, "Q")]
        else:
            out.append(s)
    return LongDiagram.from_slices(out, d.name)


def kink(sign: int) -> list:
    """Slices of a curl on a single upward strand with net writhe 2*sign.

    Both curls are already normal and keep the frontier width at most 3.
    """
    if sign < 0:
        return [cup(1), cross(0, "Q"), cross(1, "P"), cap(1)]
    return [cup(0), cross(0, "Q"), cross(1, "P"), cap(0)]


def balance_writhe(d: LongDiagram, where: str = "bottom") -> LongDiagram:
    """Add curls on the open strand until positive and negative counts agree.

    Every normal curl changes the writhe by exactly 2; a normal long diagram
    always has even writhe, so this terminates in |writhe|/2 curls.
    """
    e = d.writhe
    if e == 0:
        return d
    if e % 2:
        raise DiagramError("normal diagram with odd writhe")
    extra = []
    for _ in range(abs(e) // 2):
        extra += kink(-1 if e > 0 else 1)
    slices = tuple(extra) + d.slices if where == "bottom" else d.slices + tuple(extra)
    out = LongDiagram.from_slices(slices, d.name)
    assert out.balanced and out.normal
    return out


def braid_to_long_diagram(b: BraidWord, normalize: bool = True, lazy: bool = True,
                          name: str = "") -> LongDiagram:
    """Close strands 2..n of the braid to the right, leaving strand 1 open.

    The returning arc of strand k is nested inside that of strand k-1.  With
    ``lazy`` the arcs are opened just before the first generator that needs
    them and closed just after the last one, which keeps the frontier narrow.
    """
    n = b.width
    letters = list(b.letters)
    slices: list = []
    opened = 1
    if not lazy:
        for k in range(2, n + 1):
            slices.append(cup(k - 1))
        opened = n
    for idx, x in enumerate(letters):
        i = abs(x)
        while opened < i + 1:
            opened += 1
            slices.append(cup(opened - 1))
        # positive generator: strand from bottom-left passes over
        slices.append(cross(i - 1, "P" if x > 0 else "Q"))
        if lazy:
            need = max((abs(y) for y in letters[idx + 1:]), default=0) + 1
            while opened > max(need, 1):
                slices.append(cap(opened - 1))
                opened -= 1
    while opened > 1:
        slices.append(cap(opened - 1))
        opened -= 1
    d = LongDiagram.from_slices(slices, name)
    return normalize_extrema(d) if normalize else d


def plat_from_conway(seq) -> BraidWord:
    """Four-strand plat word of the rational knot with Conway notation ``seq``.

    Odd-length sequences give sigma_2^{a1} sigma_1^{-a2} sigma_2^{a3} ...; an
    even-length sequence is first rewritten with a_k = (a_k - 1) + 1/1.
    """
    seq = list(seq)
    if not seq or any(a <= 0 for a in seq):
        raise BraidError("Conway notation needs positive entries")
    if len(seq) % 2 == 0:
        seq = seq[:-1] + [seq[-1] - 1, 1] if seq[-1] > 1 else seq[:-2] + [seq[-2] + 1]
    letters = []
    for k, a in enumerate(seq):
        letters += [2] * a if k % 2 == 0 else [-1] * a
    return BraidWord(4, tuple(letters))


def plat_to_long_diagram(b: BraidWord, normalize: bool = True, name: str = "") -> LongDiagram:
    """Plat closure of an even-width braid, cut open at the first bottom arc.

    The strand entering at the first bottom arc is the in-edge; the other end
    of that arc runs up the far left as the out-edge.  Remaining bottom arcs
    are cups and all top arcs are caps.
    """
    if b.width % 2:
        raise BraidError("plat closure needs an even number of strands")
    m = b.width // 2
    slices = [cup(0)]
    for k in range(1, m):
        slices.append(cup(2 * k + 1))
    for x in b.letters:
        slices.append(cross(abs(x), "P" if x > 0 else "Q"))
    for k in range(m - 1, -1, -1):
        slices.append(cap(2 * k + 1))
    d = LongDiagram.from_slices(slices, name)
    return normalize_extrema(d) if normalize else d


def prepare(b: BraidWord, name: str = "", where: str = "bottom", lazy: bool = True) -> LongDiagram:
    """Braid word to a balanced normal long diagram."""
    return balance_writhe(braid_to_long_diagram(b, True, lazy, name), where)


def width_profile(d: LongDiagram) -> list:
    """Frontier width just below each crossing."""
    t = trace(d.slices)
    return [len(t.frontiers[k]) for k, s in enumerate(d.slices) if s.op == "cross"]


def best_conjugate(b: BraidWord) -> BraidWord:
    """Cyclic rotation (possibly flipped) minimizing the summed crossing width."""
    best = None
    for base in (b, b.flip()):
        for k in range(max(len(base.letters), 1)):
            c = base.rotate(k)
            prof = width_profile(braid_to_long_diagram(c))
            cost = (max(prof, default=0), sum(8 ** w for w in prof))
            if best is None or cost < best[0]:
                best = (cost, c)
    return best[1]


# ---------------------------------------------------------------- knot table


@dataclass(frozen=True)
class KnotEntry:
    name: str
    braid: BraidWord
    genus: int
    mirror: bool = False
    pd: tuple | None = None
    source: str = ""
    plat: BraidWord | None = None

    def diagram(self, where: str = "bottom", conjugate: bool = True,
                style: str = "auto") -> LongDiagram:
        """Balanced normal diagram from the braid closure or the stored plat.

        ``style="auto"`` picks whichever has the narrower frontier.
        """
        if style in ("auto", "plat") and self.plat is not None:
            p = balance_writhe(plat_to_long_diagram(self.plat, True, self.name), where)
            if style == "plat":
                return p
        elif style == "plat":
            raise DiagramError(f"no plat stored for {self.name}")
        b = best_conjugate(self.braid) if conjugate else self.braid
        d = prepare(b, self.name, where)
        if style == "auto" and self.plat is not None and p.max_width < d.max_width:
            return p
        return d


UNKNOT = KnotEntry("unknot", BraidWord(1, ()), 0, False, None, "trivial")


def _load_table() -> list:
    text = resources.files(__package__).joinpath("data/knots.jsonl").read_text()
    out = [UNKNOT]
    for line in text.splitlines():
        line = line.strip()
        if not line:
            continue
        rec = json.loads(line)
        b = BraidWord(rec["width"], tuple(rec["word"]))
        if b.components() != 1:
            raise BraidError(f"table entry {rec['name']} is not a knot")
        out.append(KnotEntry(rec["name"], b, rec["genus"], rec.get("mirror", False),
                             tuple(map(tuple, rec["pd"])) if rec.get("pd") else None,
                             rec.get("source", ""),
                             BraidWord(4, tuple(rec["plat"])) if rec.get("plat") else None))
    return out


_TABLE: list | None = None


def builtin_knot_table() -> list:
    global _TABLE
    if _TABLE is None:
        _TABLE = _load_table()
    return list(_TABLE)


def mirror_entry(e: KnotEntry) -> KnotEntry:
    name = e.name[1:] if e.mirror and e.name.startswith("m") else "m" + e.name
    return replace(e, name=name, braid=e.braid.mirror(), mirror=not e.mirror,
                   plat=e.plat.mirror() if e.plat else None)


def lookup(name: str) -> KnotEntry:
    """Table entry by name; a leading ``m`` requests the mirror image."""
    key = name.strip()
    table = {e.name: e for e in builtin_knot_table()}
    if key in table:
        return table[key]
    if key.startswith("m") and key[1:] in table:
        return mirror_entry(table[key[1:]])
    raise KeyError(f"unknown knot {name!r}")
