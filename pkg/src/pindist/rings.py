"""Finite valuation rings (chain rings) in two constructive families.

gr — Galois rings GR(p^k, m) = Z_{p^k}[x]/(f), where f is the monic degree-m
lift of the canonical irreducible over Z/p (coefficients reused verbatim as
integers below p^k).  Unramified mixed characteristic; m = 1 gives Z_{p^k}
and k = 1 gives F_{p^m}.

ec — equal characteristic rings F_{p^m}[t]/(t^k), truncated polynomials over
the field with canonical modulus.

Both families have residue field F_q with q = p^m, uniformizer of nilpotency
degree r = k, and order q^r.  Ramified mixed-characteristic quotients have no
representation here; the spec-string parser only accepts gr/ec.

Elements enumerate in ascending numeric order of their coefficient vector
(first coefficient least significant), so element(0) = 0, element(1) = 1, and
serialized data sorts the same way everywhere.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import CapacityError, MismatchError, NotAUnitError
from .fields import (
    FieldElement,
    FieldParams,
    _digits,
    _poly_mod,
    _poly_mul,
    find_irreducible,
    is_prime,
)

GALOIS = "gr"
EQUALCHAR = "ec"

DEFAULT_ENUM_CAP = 10**6
TABLE_CAP = 4096

_TABLE_CACHE: dict[tuple, "RingTables"] = {}


class RingSpec:
    """Parameters of a finite valuation ring of order q^r (q = p^m, r = k)."""

    __slots__ = ("family", "p", "k", "m", "q", "r", "order", "field", "modulus")

    def __init__(self, family: str, p: int, k: int, m: int):
        if family not in (GALOIS, EQUALCHAR):
            raise ValueError(f"unknown ring family {family!r} (expected 'gr' or 'ec')")
        if not is_prime(p) or p < 3:
            raise ValueError(f"p must be an odd prime, got {p}")
        if k < 1 or m < 1:
            raise ValueError(f"k and m must be positive, got k={k}, m={m}")
        self.family = family
        self.p = p
        self.k = k
        self.m = m
        self.q = p**m
        self.r = k
        self.order = self.q**k
        self.field = FieldParams(p, m)
        if family == GALOIS:
            # canonical lift: same integer coefficients, read modulo p^k
            self.modulus = tuple(int(c) for c in find_irreducible(p, m))
        else:
            self.modulus = None

    @classmethod
    def galois(cls, p: int, k: int, m: int = 1) -> "RingSpec":
        return cls(GALOIS, p, k, m)

    @classmethod
    def equalchar(cls, p: int, k: int, m: int = 1) -> "RingSpec":
        return cls(EQUALCHAR, p, k, m)

    def __eq__(self, other) -> bool:
        return isinstance(other, RingSpec) and (
            (self.family, self.p, self.k, self.m) == (other.family, other.p, other.k, other.m)
        )

    def __hash__(self) -> int:
        return hash((self.family, self.p, self.k, self.m))

    def __repr__(self) -> str:
        return f"RingSpec({self.spec_string()})"

    def spec_string(self) -> str:
        return f"{self.family}:p={self.p},k={self.k},m={self.m}"

    @property
    def residue_field(self) -> FieldParams:
        return self.field

    # -- element construction -------------------------------------------------

    @property
    def zero(self) -> "RingElement":
        return self.element(0)

    @property
    def one(self) -> "RingElement":
        return self.element(1)

    def from_int(self, n: int) -> "RingElement":
        """Image of the integer n under the canonical map Z -> R."""
        if self.family == GALOIS:
            return RingElement(self, (n % self.p**self.k,) + (0,) * (self.m - 1))
        const = self.field.from_int(n)
        return RingElement(self, (const,) + (self.field.zero,) * (self.k - 1))

    def from_coeffs(self, coeffs: Sequence) -> "RingElement":
        if self.family == GALOIS:
            pk = self.p**self.k
            return RingElement(self, tuple(int(c) % pk for c in coeffs))
        fixed = []
        for c in coeffs:
            if isinstance(c, FieldElement):
                fixed.append(c)
            else:
                fixed.append(self.field.from_coeffs(c))
        return RingElement(self, tuple(fixed))

    def element(self, index: int) -> "RingElement":
        """The index-th element in enumeration order."""
        if not 0 <= index < self.order:
            raise ValueError(f"index {index} out of range for a ring of order {self.order}")
        if self.family == GALOIS:
            return RingElement(self, tuple(_digits(index, self.p**self.k, self.m)))
        digits = _digits(index, self.q, self.k)
        return RingElement(self, tuple(self.field.element(d) for d in digits))

    def elements(self, cap: int = DEFAULT_ENUM_CAP) -> list["RingElement"]:
        """All q^r elements, ascending by index; raises past the cap."""
        if self.order > cap:
            raise CapacityError(
                f"enumeration of {self.spec_string()} has {self.order} elements, cap is {cap}"
            )
        return [self.element(i) for i in range(self.order)]

    def random_element(self, rng: random.Random) -> "RingElement":
        """Uniform draw; deterministic given the stream state."""
        return self.element(rng.randrange(self.order))

    def uniformizer(self) -> "RingElement":
        """p for gr, t for ec; the zero element when r = 1 (fields)."""
        if self.family == GALOIS:
            return self.from_int(self.p)
        if self.k == 1:
            return self.zero
        coeffs = [self.field.zero] * self.k
        coeffs[1] = self.field.one
        return RingElement(self, tuple(coeffs))

    # -- arithmetic ------------------------------------------------------------

    def _check_pair(self, a: "RingElement", b: "RingElement") -> None:
        if a.spec != self or b.spec != self:
            raise MismatchError(
                f"mixed rings: {a.spec.spec_string()} vs {b.spec.spec_string()}"
            )

    def add(self, a: "RingElement", b: "RingElement") -> "RingElement":
        self._check_pair(a, b)
        if self.family == GALOIS:
            pk = self.p**self.k
            return RingElement(self, tuple((x + y) % pk for x, y in zip(a.coeffs, b.coeffs)))
        return RingElement(self, tuple(x + y for x, y in zip(a.coeffs, b.coeffs)))

    def neg(self, a: "RingElement") -> "RingElement":
        if self.family == GALOIS:
            pk = self.p**self.k
            return RingElement(self, tuple((-x) % pk for x in a.coeffs))
        return RingElement(self, tuple(-x for x in a.coeffs))

    def sub(self, a: "RingElement", b: "RingElement") -> "RingElement":
        return self.add(a, self.neg(b))

    def mul(self, a: "RingElement", b: "RingElement") -> "RingElement":
        self._check_pair(a, b)
        if self.family == GALOIS:
            pk = self.p**self.k
            prod = _poly_mul(a.coeffs, b.coeffs, pk)
            red = _poly_mod(prod, self.modulus, pk)
            return RingElement(self, tuple(red) + (0,) * (self.m - len(red)))
        out = [self.field.zero] * self.k
        for i, ai in enumerate(a.coeffs):
            if not ai:
                continue
            for j in range(self.k - i):
                bj = b.coeffs[j]
                if bj:
                    out[i + j] = out[i + j] + ai * bj
        return RingElement(self, tuple(out))

    def valuation(self, a: "RingElement") -> int:
        """Largest i with a in the ideal (pi^i); valuation(0) = r."""
        if self.family == GALOIS:
            best = self.k
            for c in a.coeffs:
                if c:
                    v = 0
                    while c % self.p == 0:
                        c //= self.p
                        v += 1
                    if v < best:
                        best = v
                        if best == 0:
                            break
            return best
        for i, c in enumerate(a.coeffs):
            if c:
                return i
        return self.k

    def is_unit(self, a: "RingElement") -> bool:
        return self.valuation(a) == 0

    def residue(self, a: "RingElement") -> FieldElement:
        """Image in the residue field F_{p^m}."""
        if self.family == GALOIS:
            return FieldElement(self.field, tuple(c % self.p for c in a.coeffs))
        return a.coeffs[0]

    def inv_unit(self, a: "RingElement") -> "RingElement":
        """Inverse of a unit.

        gr lifts the residue-field inverse by Newton iteration
        b <- b(2 - ab), doubling precision each step; ec solves the
        truncated power series directly.
        """
        if not self.is_unit(a):
            raise NotAUnitError(f"{a!r} is not a unit (valuation > 0)")
        if self.family == GALOIS:
            res_inv = self.residue(a).inverse()
            b = RingElement(self, tuple(res_inv.coeffs))
            two = self.from_int(2)
            for _ in range((self.k - 1).bit_length()):
                b = self.mul(b, self.sub(two, self.mul(a, b)))
            assert self.mul(a, b) == self.one
            return b
        inv0 = a.coeffs[0].inverse()
        out = [inv0]
        for n in range(1, self.k):
            acc = self.field.zero
            for i in range(1, n + 1):
                if a.coeffs[i]:
                    acc = acc + a.coeffs[i] * out[n - i]
            out.append(-(inv0 * acc))
        return RingElement(self, tuple(out))

    # -- serialization ---------------------------------------------------------

    def parse_element(self, text: str) -> "RingElement":
        text = text.strip()
        if text.startswith("(") and text.endswith(")"):
            text = text[1:-1]
        parts = [t.strip() for t in text.split(",")]
        if self.family == GALOIS:
            pk = self.p**self.k
            try:
                coeffs = [int(t) for t in parts]
            except ValueError:
                raise ValueError(f"bad element {text!r} for {self.spec_string()}") from None
            if len(coeffs) != self.m or any(not 0 <= c < pk for c in coeffs):
                raise ValueError(f"bad element {text!r} for {self.spec_string()}")
            return RingElement(self, tuple(coeffs))
        if len(parts) != self.k:
            raise ValueError(f"bad element {text!r} for {self.spec_string()}")
        coeffs = [self.field.parse_element(t.replace(";", ",")) for t in parts]
        return RingElement(self, tuple(coeffs))

    def tables(self, cap: int = TABLE_CAP) -> "RingTables":
        """Cached full operation tables; only for rings within the table cap."""
        if self.order > cap:
            raise CapacityError(
                f"operation tables for {self.spec_string()} need order <= {cap}, "
                f"got {self.order}"
            )
        key = (self.family, self.p, self.k, self.m)
        tab = _TABLE_CACHE.get(key)
        if tab is None:
            tab = _build_tables(self)
            _TABLE_CACHE[key] = tab
        return tab


def parse_ring_spec(text: str) -> RingSpec:
    """Parse "gr:p=<p>,k=<k>,m=<m>" or "ec:p=<p>,k=<k>,m=<m>"."""
    head, sep, rest = text.partition(":")
    if not sep or head not in (GALOIS, EQUALCHAR):
        raise ValueError(
            f"bad ring spec {text!r}: expected 'gr:' or 'ec:' prefix "
            "(ramified families are not representable)"
        )
    params = {}
    for item in rest.split(","):
        key, eq, value = item.partition("=")
        if not eq or key not in ("p", "k", "m") or key in params:
            raise ValueError(f"bad ring spec {text!r}: token {item!r}")
        try:
            params[key] = int(value)
        except ValueError:
            raise ValueError(f"bad ring spec {text!r}: token {item!r}") from None
    if set(params) != {"p", "k", "m"}:
        raise ValueError(f"bad ring spec {text!r}: need p, k and m")
    return RingSpec(head, params["p"], params["k"], params["m"])


class RingElement:
    """An element of a chain ring.

    Payload per family: gr stores m integers in [0, p^k); ec stores k residue
    field elements (t-adic digits).  Representations are canonical, so equal
    elements always carry identical coefficient tuples.
    """

    __slots__ = ("spec", "coeffs")

    def __init__(self, spec: RingSpec, coeffs: tuple):
        if spec.family == GALOIS:
            if len(coeffs) != spec.m:
                raise ValueError(f"expected {spec.m} coefficients, got {len(coeffs)}")
            pk = spec.p**spec.k
            if any(not 0 <= c < pk for c in coeffs):
                raise ValueError(f"coefficients out of range [0, {pk}): {coeffs}")
        else:
            if len(coeffs) != spec.k:
                raise ValueError(f"expected {spec.k} coefficients, got {len(coeffs)}")
            if any(not isinstance(c, FieldElement) or c.field != spec.field for c in coeffs):
                raise ValueError("equal-characteristic coefficients must be residue field elements")
        self.spec = spec
        self.coeffs = coeffs

    @property
    def index(self) -> int:
        if self.spec.family == GALOIS:
            base = self.spec.p**self.spec.k
            out = 0
            for c in reversed(self.coeffs):
                out = out * base + c
            return out
        out = 0
        for c in reversed(self.coeffs):
            out = out * self.spec.q + c.index
        return out

    def __bool__(self) -> bool:
        return any(bool(c) for c in self.coeffs)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, RingElement)
            and self.spec == other.spec
            and self.coeffs == other.coeffs
        )

    def __hash__(self) -> int:
        return hash((self.spec, self.coeffs))

    def __add__(self, other: "RingElement") -> "RingElement":
        return self.spec.add(self, other)

    def __sub__(self, other: "RingElement") -> "RingElement":
        return self.spec.sub(self, other)

    def __neg__(self) -> "RingElement":
        return self.spec.neg(self)

    def __mul__(self, other: "RingElement") -> "RingElement":
        return self.spec.mul(self, other)

    @property
    def valuation(self) -> int:
        return self.spec.valuation(self)

    def is_unit(self) -> bool:
        return self.spec.is_unit(self)

    def inverse(self) -> "RingElement":
        return self.spec.inv_unit(self)

    def residue(self) -> FieldElement:
        return self.spec.residue(self)

    def serialize(self) -> str:
        if self.spec.family == GALOIS:
            return ",".join(str(c) for c in self.coeffs)
        return ",".join(";".join(str(x) for x in c.coeffs) for c in self.coeffs)

    def __repr__(self) -> str:
        return f"RingElement({self.spec.spec_string()}, [{self.serialize()}])"


@dataclass(frozen=True)
class RingTables:
    """Dense numpy lookup tables over element indices for one ring."""

    order: int
    add: np.ndarray
    neg: np.ndarray
    mul: np.ndarray
    val: np.ndarray


def _build_tables(spec: RingSpec) -> RingTables:
    n = spec.order
    if spec.family == GALOIS and spec.m == 1:
        pk = spec.p**spec.k
        idx = np.arange(n, dtype=np.int64)
        add = (idx[:, None] + idx[None, :]) % pk
        mul = (idx[:, None] * idx[None, :]) % pk
        neg = (-idx) % pk
    else:
        elems = spec.elements(cap=max(TABLE_CAP, n))
        add = np.empty((n, n), dtype=np.int64)
        mul = np.empty((n, n), dtype=np.int64)
        neg = np.empty(n, dtype=np.int64)
        for i, a in enumerate(elems):
            neg[i] = spec.neg(a).index
            for j in range(i, n):
                b = elems[j]
                s = spec.add(a, b).index
                t = spec.mul(a, b).index
                add[i, j] = add[j, i] = s
                mul[i, j] = mul[j, i] = t
    val = np.array([spec.valuation(spec.element(i)) for i in range(n)], dtype=np.int64)
    return RingTables(
        order=n,
        add=np.ascontiguousarray(add, dtype=np.int32),
        neg=np.ascontiguousarray(neg, dtype=np.int32),
        mul=np.ascontiguousarray(mul, dtype=np.int32),
        val=np.ascontiguousarray(val, dtype=np.int32),
    )


def normalize_subset(elements: Iterable[RingElement]) -> tuple[RingElement, ...]:
    """Validate and canonically order a subset of one ring.

    Rejects empty input, mixed rings, and duplicates; sorts by element index.
    """
    elems = list(elements)
    if not elems:
        raise ValueError("subset must be nonempty")
    spec = elems[0].spec
    seen = set()
    for e in elems:
        if not isinstance(e, RingElement):
            raise TypeError(f"expected RingElement, got {type(e).__name__}")
        if e.spec != spec:
            raise MismatchError("subset mixes elements of different rings")
        if e.index in seen:
            raise ValueError(f"duplicate element {e.serialize()} in subset")
        seen.add(e.index)
    return tuple(sorted(elems, key=lambda e: e.index))


def _split_top_level(text: str) -> list[str]:
    parts, depth, cur = [], 0, []
    for ch in text:
        if ch == "(":
            depth += 1
            cur.append(ch)
        elif ch == ")":
            depth -= 1
            if depth < 0:
                raise ValueError(f"unbalanced parentheses in {text!r}")
            cur.append(ch)
        elif ch == "," and depth == 0:
            parts.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    if depth != 0:
        raise ValueError(f"unbalanced parentheses in {text!r}")
    parts.append("".join(cur))
    return parts


def parse_subset(spec: RingSpec, text: str, cap: int = DEFAULT_ENUM_CAP) -> tuple[RingElement, ...]:
    """Parse a comma-separated element list, or "all" for the whole ring.

    Elements whose own serialization contains commas (m > 1, or ec rings)
    must be wrapped in parentheses: "(1,2),(0,1)".
    """
    text = text.strip()
    if text == "all":
        return tuple(spec.elements(cap=cap))
    parts = [t for t in _split_top_level(text) if t.strip()]
    if not parts:
        raise ValueError("subset must be nonempty")
    return normalize_subset(spec.parse_element(t) for t in parts)


def serialize_subset(elements: Sequence[RingElement]) -> str:
    out = []
    for e in elements:
        s = e.serialize()
        out.append(f"({s})" if "," in s else s)
    return ",".join(out)
