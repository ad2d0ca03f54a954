"""Exact multivariate Laurent polynomials over Z and over cyclotomic integers.

Monomials are packed into a single Python integer: the exponent of the
variable with global index ``i`` occupies the balanced base-2**16 digit ``i``.
Multiplying monomials is then integer addition, and integer order on packed
keys is lexicographic order with the highest-index variable most significant.

Index 0 is reserved for the distinguished root of unity ``w``.  In the ring
``Z[w]/Phi_N`` its exponent is kept below ``deg Phi_N``; in the integer ring
``w`` behaves like any other variable, which is what fraction-free
elimination uses to work in the lifted ring.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Mapping

_BITS = 16
_BASE = 1 << _BITS
_HALF = 1 << (_BITS - 1)
_MASK = _BASE - 1

ROOT = "w"


class RingMismatchError(ValueError):
    pass


class UnitRequiredError(ValueError):
    pass


class DivisionError(ArithmeticError):
    pass


class UndefinedDegreeError(ValueError):
    pass


# ---------------------------------------------------------------- variables

_names: list[str] = [ROOT]
_index: dict[str, int] = {ROOT: 0}


def var_index(name: str) -> int:
    idx = _index.get(name)
    if idx is None:
        if not re.fullmatch(r"[A-Za-z_][A-Za-z_0-9]*", name):
            raise ValueError(f"bad variable name {name!r}")
        idx = len(_names)
        _names.append(name)
        _index[name] = idx
    return idx


def var_name(idx: int) -> str:
    return _names[idx]


def pack(exps: Mapping[int, int]) -> int:
    key = 0
    for idx, e in exps.items():
        if not -_HALF < e < _HALF:
            raise OverflowError("exponent out of range")
        key += e << (_BITS * idx)
    return key


def unpack(key: int) -> dict[int, int]:
    out = {}
    idx = 0
    while key:
        d = ((key + _HALF) & _MASK) - _HALF
        if d:
            out[idx] = d
        key = (key - d) >> _BITS
        idx += 1
    return out


def _w_digit(key: int) -> int:
    return ((key + _HALF) & _MASK) - _HALF


# ---------------------------------------------------------------- cyclotomic data


@lru_cache(maxsize=None)
def cyclotomic_poly(n: int) -> tuple[int, ...]:
    """Integer coefficients of Phi_n, lowest degree first."""
    if n < 1:
        raise ValueError("order must be positive")
    # x^n - 1 divided by Phi_d for all proper divisors d
    num = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            num = _poly_divexact(num, list(cyclotomic_poly(d)))
    return tuple(num)


def _poly_divexact(a: list[int], b: list[int]) -> list[int]:
    a = a[:]
    q = [0] * (len(a) - len(b) + 1)
    for i in range(len(q) - 1, -1, -1):
        c = a[i + len(b) - 1] // b[-1]
        q[i] = c
        for j, bj in enumerate(b):
            a[i + j] -= c * bj
    assert not any(a), "inexact division"
    return q


@lru_cache(maxsize=None)
def _root_power(n: int, k: int) -> tuple[int, ...]:
    """w^k reduced modulo Phi_n, as coefficients of 1, w, ..., w^(deg-1)."""
    phi = cyclotomic_poly(n)
    deg = len(phi) - 1
    k %= n
    vec = [0] * deg
    if k < deg:
        vec[k] = 1
        return tuple(vec)
    prev = _root_power(n, k - 1)
    # multiply by w and reduce the overflow with the monic Phi_n
    top = prev[-1]
    vec = [0] + list(prev[:-1])
    for j in range(deg):
        vec[j] -= top * phi[j]
    return tuple(vec)


@dataclass(frozen=True)
class CycInt:
    """Element of Z[w]/Phi_N stored by its canonical residue."""

    order: int
    coeffs: tuple[int, ...]

    def __post_init__(self):
        deg = len(cyclotomic_poly(self.order)) - 1
        if len(self.coeffs) != deg:
            raise ValueError("coefficient vector has wrong length")

    @classmethod
    def from_int(cls, n: int, order: int) -> "CycInt":
        deg = len(cyclotomic_poly(order)) - 1
        return cls(order, (n,) + (0,) * (deg - 1))

    @classmethod
    def root(cls, order: int, k: int = 1) -> "CycInt":
        return cls(order, _root_power(order, k))

    @classmethod
    def from_list(cls, vals: Iterable[int], order: int) -> "CycInt":
        out = [0] * (len(cyclotomic_poly(order)) - 1)
        for k, c in enumerate(vals):
            if c:
                for j, r in enumerate(_root_power(order, k)):
                    out[j] += c * r
        return cls(order, tuple(out))

    def _check(self, other: "CycInt") -> None:
        if self.order != other.order:
            raise RingMismatchError("different cyclotomic orders")

    def __add__(self, other):
        if isinstance(other, int):
            other = CycInt.from_int(other, self.order)
        self._check(other)
        return CycInt(self.order, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return CycInt(self.order, tuple(-a for a in self.coeffs))

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return CycInt(self.order, tuple(other * a for a in self.coeffs))
        self._check(other)
        prod = [0] * (2 * len(self.coeffs))
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    prod[i + j] += a * b
        return CycInt.from_list(prod, self.order)

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def to_int(self) -> int:
        """Project to Z; exact for orders 1 and 2, where w is 1 or -1."""
        if self.order not in (1, 2):
            raise ValueError("only orders 1 and 2 are isomorphic to Z")
        return self.coeffs[0]


# ---------------------------------------------------------------- polynomials


class LaurentPoly:
    """Immutable Laurent polynomial; ``ring`` is 0 for Z or N for Z[w]/Phi_N."""

    __slots__ = ("terms", "ring", "_hash")

    def __init__(self, terms: dict[int, int] | None = None, ring: int = 0, _canon: bool = False):
        self.ring = ring
        self._hash = None
        terms = terms or {}
        if _canon:
            self.terms = terms
        else:
            self.terms = _canonical(terms, ring)

    # construction helpers
    @classmethod
    def zero(cls, ring: int = 0) -> "LaurentPoly":
        return cls({}, ring, True)

    @classmethod
    def const(cls, c: int, ring: int = 0) -> "LaurentPoly":
        return cls({0: c} if c else {}, ring, True)

    @classmethod
    def var(cls, name: str, ring: int = 0) -> "LaurentPoly":
        return cls({pack({var_index(name): 1}): 1}, ring)

    @classmethod
    def monomial(cls, exps: Mapping[str, int], coeff: int = 1, ring: int = 0) -> "LaurentPoly":
        return cls({pack({var_index(k): e for k, e in exps.items() if e}): coeff}, ring)

    @classmethod
    def root(cls, ring: int, k: int = 1) -> "LaurentPoly":
        return cls({pack({0: k}): 1}, ring)

    def _coerce(self, other) -> "LaurentPoly":
        if isinstance(other, LaurentPoly):
            if other.ring != self.ring:
                raise RingMismatchError(f"ring {self.ring} vs {other.ring}")
            return other
        if isinstance(other, int):
            return LaurentPoly.const(other, self.ring)
        return NotImplemented

    # arithmetic
    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if not other.terms:
            return self
        if not self.terms:
            return other
        out = dict(self.terms)
        for k, c in other.terms.items():
            v = out.get(k, 0) + c
            if v:
                out[k] = v
            else:
                del out[k]
        return LaurentPoly(out, self.ring, True)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly({k: -c for k, c in self.terms.items()}, self.ring, True)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            if not other:
                return LaurentPoly.zero(self.ring)
            return LaurentPoly({k: c * other for k, c in self.terms.items()}, self.ring, True)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b = self.terms, other.terms
        if len(a) < len(b):
            a, b = b, a
        out: dict[int, int] = {}
        get = out.get
        for kb, cb in b.items():
            for ka, ca in a.items():
                k = ka + kb
                out[k] = get(k, 0) + ca * cb
        if self.ring:
            return LaurentPoly(out, self.ring)
        return LaurentPoly({k: c for k, c in out.items() if c}, 0, True)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse_unit() ** (-n)
        result = LaurentPoly.const(1, self.ring)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, int):
            other = LaurentPoly.const(other, self.ring)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.ring == other.ring and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self.terms.items())))
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    def __repr__(self):
        return f"LaurentPoly({self.to_string()!r})"

    def __str__(self):
        return self.to_string()

    # inspection
    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def is_unit(self) -> bool:
        """A monomial whose coefficient is +-1 (times a power of w)."""
        if len(self.terms) != 1:
            if self.ring and self.terms:
                # +-w^k * m may appear with several w terms for some N
                m = self.split_root()
                return m is not None
            return False
        (c,) = self.terms.values()
        return c in (1, -1)

    def split_root(self):
        """Write self as (CycInt scalar) * monomial if possible; returns (scalar, key)."""
        base = None
        coeffs = {}
        for k, c in self.terms.items():
            wd = _w_digit(k) if self.ring else 0
            rest = k - wd
            if base is None:
                base = rest
            elif rest != base:
                return None
            coeffs[wd] = c
        if base is None:
            return None
        n = self.ring or 0
        if not n:
            return (coeffs.get(0, 0), base)
        vals = [coeffs.get(i, 0) for i in range(max(coeffs) + 1)]
        return (CycInt.from_list(vals, n), base)

    def inverse_unit(self) -> "LaurentPoly":
        if len(self.terms) == 1:
            ((k, c),) = self.terms.items()
            if c not in (1, -1):
                raise UnitRequiredError(f"{self} is not a unit")
            return LaurentPoly({-k: c}, self.ring)
        if self.ring:
            # +-w^k m with w^k expressed in several terms: search the unit group
            sp = self.split_root()
            if sp is not None:
                scal, key = sp
                n = self.ring
                for j in range(n):
                    for sign in (1, -1):
                        if CycInt.root(n, j) * sign == scal:
                            return LaurentPoly({pack({0: -j}) - key: sign}, n)
        raise UnitRequiredError(f"{self} is not a unit")

    def variables(self) -> set[str]:
        out = set()
        for k in self.terms:
            for idx in unpack(k):
                out.add(_names[idx])
        if self.ring:
            out.discard(ROOT)
        return out

    def exponents(self, name: str) -> list[int]:
        idx = var_index(name)
        return [unpack(k).get(idx, 0) for k in self.terms]

    def degree(self, name: str) -> int:
        if not self.terms:
            raise UndefinedDegreeError("zero polynomial")
        return max(self.exponents(name))

    def low_degree(self, name: str) -> int:
        if not self.terms:
            raise UndefinedDegreeError("zero polynomial")
        return min(self.exponents(name))

    def coefficient(self, name: str, e: int) -> "LaurentPoly":
        """Coefficient of name^e as a polynomial in the other variables."""
        idx = var_index(name)
        shift = e << (_BITS * idx)
        out = {}
        for k, c in self.terms.items():
            if unpack(k).get(idx, 0) == e:
                out[k - shift] = c
        return LaurentPoly(out, self.ring, True)

    def constant_term(self):
        return self.terms.get(0, 0)

    def items(self):
        """Yield (exponent dict by name, coefficient) pairs."""
        for k, c in self.terms.items():
            yield {_names[i]: e for i, e in unpack(k).items()}, c

    # substitution
    def substitute(self, bindings: Mapping[str, "LaurentPoly | int"]) -> "LaurentPoly":
        """Apply the ring map sending each bound variable to its image."""
        ring = self.ring
        idx_map = {}
        for name, img in bindings.items():
            if isinstance(img, int):
                img = LaurentPoly.const(img, ring)
            if img.ring != ring:
                img = img.change_ring(ring)
            idx_map[var_index(name)] = img
        cache: dict[tuple[int, int], LaurentPoly] = {}

        def power(idx, e):
            p = cache.get((idx, e))
            if p is None:
                img = idx_map[idx]
                if e < 0:
                    try:
                        p = img.inverse_unit() ** (-e)
                    except UnitRequiredError:
                        raise UnitRequiredError(
                            f"image of {_names[idx]} must be invertible") from None
                else:
                    p = img ** e
                cache[(idx, e)] = p
            return p

        acc: dict[int, int] = {}
        parts = []
        for k, c in self.terms.items():
            exps = unpack(k)
            fixed = 0
            factor = None
            for idx, e in exps.items():
                if idx in idx_map:
                    p = power(idx, e)
                    factor = p if factor is None else factor * p
                else:
                    fixed += e << (_BITS * idx)
            if factor is None:
                acc[fixed] = acc.get(fixed, 0) + c
            else:
                parts.append(LaurentPoly({fk + fixed: fc * c for fk, fc in factor.terms.items()}, ring))
        result = LaurentPoly(acc, ring)
        for p in parts:
            result = result + p
        return result

    def change_ring(self, ring: int) -> "LaurentPoly":
        """Retag coefficients; going to Z lifts w to a free variable."""
        return LaurentPoly(dict(self.terms), ring)

    def shift(self, exps: Mapping[str, int]) -> "LaurentPoly":
        key = pack({var_index(k): e for k, e in exps.items()})
        return LaurentPoly({k + key: c for k, c in self.terms.items()}, self.ring)

    # exact division in the integer ring
    def divexact(self, other: "LaurentPoly") -> "LaurentPoly":
        """Exact quotient; raises DivisionError when other does not divide self."""
        if self.ring:
            raise DivisionError("exact division is only supported over Z")
        if not other.terms:
            raise ZeroDivisionError
        if not self.terms:
            return self
        if len(other.terms) == 1:
            ((kb, cb),) = other.terms.items()
            out = {}
            for k, c in self.terms.items():
                q, r = divmod(c, cb)
                if r:
                    raise DivisionError("coefficient not divisible")
                out[k - kb] = q
            return LaurentPoly(out, 0, True)
        bkeys = sorted(other.terms)
        lead_b = bkeys[-1]
        lc_b = other.terms[lead_b]
        low_bound = min(self.terms) - bkeys[0]
        rem = dict(self.terms)
        quot = {}
        while rem:
            lead = max(rem)
            qk = lead - lead_b
            if qk < low_bound:
                raise DivisionError("not divisible")
            qc, r = divmod(rem[lead], lc_b)
            if r:
                raise DivisionError("coefficient not divisible")
            quot[qk] = qc
            for bk, bc in other.terms.items():
                k = qk + bk
                v = rem.get(k, 0) - qc * bc
                if v:
                    rem[k] = v
                else:
                    rem.pop(k, None)
        return LaurentPoly(quot, 0, True)

    # text and json
    def _sorted_terms(self):
        rows = []
        for k, c in self.terms.items():
            exps = sorted(((_names[i], e) for i, e in unpack(k).items()))
            total = sum(abs(e) for _, e in exps)
            rows.append(((total, exps), exps, c))
        rows.sort(key=lambda r: r[0])
        return [(exps, c) for _, exps, c in rows]

    def to_string(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for exps, c in self._sorted_terms():
            mono = "*".join(n if e == 1 else f"{n}^{e}" for n, e in exps)
            if not mono:
                body = str(abs(c))
            elif abs(c) == 1:
                body = mono
            else:
                body = f"{abs(c)}*{mono}"
            sign = "-" if c < 0 else "+"
            parts.append((sign, body))
        first_sign, first = parts[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    def to_json(self) -> dict:
        ring = "Z" if not self.ring else f"Z[w,{self.ring}]"
        if not self.ring:
            terms = [{"coeff": c, "exps": dict(exps)} for exps, c in self._sorted_terms()]
            return {"ring": ring, "terms": terms}
        grouped: dict[int, dict[int, int]] = {}
        for k, c in self.terms.items():
            wd = _w_digit(k)
            grouped.setdefault(k - wd, {})[wd] = c
        deg = len(cyclotomic_poly(self.ring)) - 1
        rows = []
        for base, cs in grouped.items():
            exps = sorted((_names[i], e) for i, e in unpack(base).items())
            rows.append(({"coeff": [cs.get(i, 0) for i in range(deg)], "exps": dict(exps)},
                         (sum(abs(e) for _, e in exps), exps)))
        rows.sort(key=lambda r: r[1])
        return {"ring": ring, "terms": [r[0] for r in rows]}

    @classmethod
    def from_json(cls, data) -> "LaurentPoly":
        if isinstance(data, str):
            data = json.loads(data)
        tag = data["ring"]
        ring = 0 if tag == "Z" else int(tag.split(",")[1].rstrip("]"))
        out: dict[int, int] = {}
        for t in data["terms"]:
            base = pack({var_index(n): e for n, e in t["exps"].items()})
            cs = t["coeff"]
            if isinstance(cs, int):
                out[base] = out.get(base, 0) + cs
            else:
                for j, c in enumerate(cs):
                    if c:
                        k = base + j
                        out[k] = out.get(k, 0) + c
        return cls(out, ring)


def _canonical(terms: dict[int, int], ring: int) -> dict[int, int]:
    if not ring:
        return {k: c for k, c in terms.items() if c}
    phi = cyclotomic_poly(ring)
    deg = len(phi) - 1
    out: dict[int, int] = {}
    for k, c in terms.items():
        if not c:
            continue
        wd = _w_digit(k)
        if 0 <= wd < deg:
            out[k] = out.get(k, 0) + c
            continue
        base = k - wd
        for j, r in enumerate(_root_power(ring, wd)):
            if r:
                kk = base + j
                out[kk] = out.get(kk, 0) + c * r
    return {k: c for k, c in out.items() if c}


# ---------------------------------------------------------------- parsing

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\*\*|[-+*^()/]))")


def parse(text: str, ring: int = 0) -> LaurentPoly:
    """Parse a polynomial expression such as ``2u(1+2u)(-1+6u)v - t^-1``.

    Juxtaposition means multiplication; ``^`` and ``**`` take an optionally
    signed integer exponent.  ``w`` denotes the root of unity when ``ring`` is
    cyclotomic.
    """
    text = text.replace("−", "-")
    tokens = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ValueError(f"cannot parse {text[pos:]!r}")
        pos = m.end()
        num, name, op = m.groups()
        if num is not None:
            tokens.append(("num", int(num)))
        elif name is not None:
            tokens.append(("var", name))
        else:
            tokens.append(("op", "^" if op == "**" else op))
    tokens.append(("end", None))
    i = 0

    def peek():
        return tokens[i]

    def take():
        nonlocal i
        i += 1
        return tokens[i - 1]

    def expr():
        sign = 1
        if peek() in (("op", "-"), ("op", "+")):
            sign = -1 if take()[1] == "-" else 1
        acc = term() * sign
        while peek() in (("op", "-"), ("op", "+")):
            op = take()[1]
            t = term()
            acc = acc + t if op == "+" else acc - t
        return acc

    def term():
        acc = factor()
        while True:
            tok = peek()
            if tok == ("op", "*"):
                take()
                acc = acc * factor()
            elif tok[0] in ("num", "var") or tok == ("op", "("):
                acc = acc * factor()
            else:
                return acc

    def factor():
        base = atom()
        if peek() == ("op", "^"):
            take()
            sign = 1
            if peek() in (("op", "-"), ("op", "+")):
                sign = -1 if take()[1] == "-" else 1
            if peek() == ("op", "("):
                take()
                s2 = 1
                if peek() in (("op", "-"), ("op", "+")):
                    s2 = -1 if take()[1] == "-" else 1
                kind, val = take()
                if kind != "num" or take() != ("op", ")"):
                    raise ValueError("bad exponent")
                sign *= s2
            else:
                kind, val = take()
                if kind != "num":
                    raise ValueError("bad exponent")
            return base ** (sign * val)
        return base

    def atom():
        kind, val = take()
        if kind == "num":
            return LaurentPoly.const(val, ring)
        if kind == "var":
            if val == ROOT and ring:
                return LaurentPoly.root(ring)
            return LaurentPoly.var(val, ring)
        if val == "(":
            e = expr()
            if take() != ("op", ")"):
                raise ValueError("unbalanced parentheses")
            return e
        raise ValueError(f"unexpected token {val!r}")

    result = expr()
    if peek()[0] != "end":
        raise ValueError(f"trailing input in {text!r}")
    return result


def P(text: str, ring: int = 0) -> LaurentPoly:
    return parse(text, ring)


# ---------------------------------------------------------------- q-combinatorics


def poly_add(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    return a + b


def poly_mul(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    return a * b


def poly_substitute(p: LaurentPoly, bindings) -> LaurentPoly:
    return p.substitute(bindings)


def q_pochhammer(x: LaurentPoly, q: LaurentPoly, n: int) -> LaurentPoly:
    """(x; q)_n = prod_{i<n} (1 - x q^i)."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    out = LaurentPoly.const(1, x.ring)
    qi = LaurentPoly.const(1, x.ring)
    for _ in range(n):
        out = out * (1 - x * qi)
        qi = qi * q
    return out


@lru_cache(maxsize=None)
def _qbinom_table(k: int, qname: str, ring: int) -> tuple[LaurentPoly, ...]:
    if k == 0:
        return (LaurentPoly.const(1, ring),)
    prev = _qbinom_table(k - 1, qname, ring)
    q = LaurentPoly.var(qname, ring) if not (ring and qname == ROOT) else LaurentPoly.root(ring)
    row = [LaurentPoly.const(1, ring)]
    qm = LaurentPoly.const(1, ring)
    for m in range(1, k):
        qm = qm * q
        row.append(prev[m - 1] + qm * prev[m])
    row.append(LaurentPoly.const(1, ring))
    return tuple(row)


def q_binomial(k: int, m: int, q_var: str = "q", ring: int = 0) -> LaurentPoly:
    """Gaussian binomial [k m]_q via Pascal's rule; zero when m > k."""
    if m < 0 or k < 0 or m > k:
        return LaurentPoly.zero(ring)
    return _qbinom_table(k, q_var, ring)[m]


def q_multinomial(k: int, m: int, n: int, q_var: str = "q", ring: int = 0) -> LaurentPoly:
    """[k; m, n]_q = [k m+n]_q [m+n n]_q; zero when m + n > k."""
    if m < 0 or n < 0 or m + n > k:
        return LaurentPoly.zero(ring)
    return q_binomial(k, m + n, q_var, ring) * q_binomial(m + n, n, q_var, ring)


def degree_span(p: LaurentPoly, var: str) -> int:
    if not p.terms:
        raise UndefinedDegreeError("zero polynomial has no degree")
    es = p.exponents(var)
    return max(es) - min(es)
