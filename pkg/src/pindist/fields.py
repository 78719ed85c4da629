"""Arithmetic in the finite fields F_{p^m}, p an odd prime.

Elements are vectors of m coefficients over Z/p, reduced modulo a canonical
irreducible polynomial.  The canonical modulus for (p, m) is the monic
irreducible of degree m whose coefficient vector (c_0, ..., c_{m-1}) has the
smallest numeric value sum(c_i * p**i).  Pinning the modulus this way keeps
serialized elements portable across runs and machines.

Polynomials appear throughout as ascending coefficient sequences, so
(1, 0, 1) is 1 + x^2, and serialize as comma-separated lists ("1,0,1").
Element enumeration follows the same numeric order: the i-th element of
F_{p^m} has the base-p digits of i as its coefficients, constant term first.

p = 2 is rejected: everything downstream needs 2 to be a unit.
"""

from __future__ import annotations

import functools
from typing import Iterable, Sequence

from .errors import MismatchError, NotAUnitError


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def _digits(value: int, base: int, width: int) -> list[int]:
    out = []
    for _ in range(width):
        out.append(value % base)
        value //= base
    return out


def _prime_divisors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


# ---------------------------------------------------------------------------
# Polynomial helpers.  Coefficient lists in ascending powers, trimmed so the
# zero polynomial is [].  _poly_mul and _poly_mod only need a modulus n >= 2
# (and a monic divisor); the division-based helpers need n prime.
# ---------------------------------------------------------------------------


def _trim(c: list[int]) -> list[int]:
    while c and c[-1] == 0:
        c.pop()
    return c


def _poly_sub(a: Sequence[int], b: Sequence[int], n: int) -> list[int]:
    width = max(len(a), len(b))
    out = [((a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)) % n for i in range(width)]
    return _trim(out)


def _poly_mul(a: Sequence[int], b: Sequence[int], n: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % n
    return _trim(out)


def _poly_mod(a: Sequence[int], b: Sequence[int], n: int) -> list[int]:
    """Remainder of a modulo b; b must be monic."""
    a = [c % n for c in a]
    db = len(b) - 1
    for top in range(len(a) - 1, db - 1, -1):
        c = a[top]
        if c:
            a[top] = 0
            for i in range(db):
                a[top - db + i] = (a[top - db + i] - c * b[i]) % n
    return _trim(a[:db])


def _poly_divmod(a: Sequence[int], b: Sequence[int], p: int) -> tuple[list[int], list[int]]:
    a = _trim([c % p for c in a])
    b = _trim([c % p for c in b])
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    inv_lead = pow(b[-1], p - 2, p)
    q = [0] * max(len(a) - len(b) + 1, 0)
    r = list(a)
    db = len(b) - 1
    while r and len(r) - 1 >= db:
        shift = len(r) - 1 - db
        c = (r[-1] * inv_lead) % p
        q[shift] = c
        for i in range(len(b)):
            r[shift + i] = (r[shift + i] - c * b[i]) % p
        _trim(r)
    return _trim(q), r


def _poly_gcd(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    a, b = _trim([c % p for c in a]), _trim([c % p for c in b])
    while b:
        _, r = _poly_divmod(a, b, p)
        a, b = b, r
    if a:
        inv = pow(a[-1], p - 2, p)
        a = [(c * inv) % p for c in a]
    return a


def _poly_powmod(base: Sequence[int], exp: int, modulus: Sequence[int], p: int) -> list[int]:
    result = [1]
    base = _poly_mod(base, modulus, p)
    while exp:
        if exp & 1:
            result = _poly_mod(_poly_mul(result, base, p), modulus, p)
        base = _poly_mod(_poly_mul(base, base, p), modulus, p)
        exp >>= 1
    return result


def _poly_invmod(a: Sequence[int], modulus: Sequence[int], p: int) -> list[int]:
    """Inverse of a modulo a monic irreducible modulus (extended Euclid)."""
    r0, s0 = _trim([c % p for c in modulus]), []
    r1, s1 = _poly_mod(a, modulus, p), [1]
    if not r1:
        raise NotAUnitError("0 has no multiplicative inverse")
    while r1:
        q, r = _poly_divmod(r0, r1, p)
        r0, r1 = r1, r
        s0, s1 = s1, _poly_sub(s0, _poly_mul(q, s1, p), p)
    if len(r0) != 1:
        raise NotAUnitError("element shares a factor with the modulus")
    inv_lead = pow(r0[0], p - 2, p)
    return [(c * inv_lead) % p for c in s0]


# ---------------------------------------------------------------------------
# Irreducibility and the canonical modulus.
# ---------------------------------------------------------------------------


def is_irreducible(f: Sequence[int], p: int) -> bool:
    """Rabin test for a monic polynomial over Z/p.

    f is irreducible of degree m iff x^(p^m) == x (mod f) and, for every
    prime l dividing m, gcd(x^(p^(m/l)) - x, f) = 1.
    """
    if not is_prime(p):
        raise ValueError(f"p must be prime, got {p}")
    f = _trim([c % p for c in f])
    if not f or f[-1] != 1:
        raise ValueError("irreducibility test requires a monic polynomial")
    m = len(f) - 1
    if m < 1:
        raise ValueError("irreducibility is only defined for degree >= 1")
    x = [0, 1]
    if _poly_sub(_poly_powmod(x, p**m, f, p), x, p):
        return False
    for ell in _prime_divisors(m):
        g = _poly_sub(_poly_powmod(x, p ** (m // ell), f, p), x, p)
        if len(_poly_gcd(g, f, p)) != 1:
            return False
    return True


@functools.lru_cache(maxsize=None)
def find_irreducible(p: int, m: int) -> tuple[int, ...]:
    """Smallest monic irreducible of degree m over Z/p.

    Candidates x^m + c_{m-1} x^{m-1} + ... + c_0 are scanned with
    (c_0, ..., c_{m-1}) as an ascending base-p counter, so the result is
    deterministic and the same on every machine.
    """
    if not is_prime(p) or p < 3:
        raise ValueError(f"p must be an odd prime, got {p}")
    if m < 1:
        raise ValueError(f"degree must be positive, got {m}")
    for value in range(p**m):
        coeffs = _digits(value, p, m) + [1]
        if is_irreducible(coeffs, p):
            return tuple(coeffs)
    raise AssertionError("no irreducible found; unreachable for prime p")


# ---------------------------------------------------------------------------
# Field parameters and elements.
# ---------------------------------------------------------------------------


class FieldParams:
    """The field F_{p^m} with its canonical modulus.

    Instances with equal (p, m) are interchangeable; the modulus is always
    find_irreducible(p, m).
    """

    __slots__ = ("p", "m", "q", "modulus")

    def __init__(self, p: int, m: int):
        if not is_prime(p) or p < 3:
            raise ValueError(f"p must be an odd prime, got {p}")
        if m < 1:
            raise ValueError(f"m must be positive, got {m}")
        self.p = p
        self.m = m
        self.q = p**m
        self.modulus = find_irreducible(p, m)

    def __eq__(self, other) -> bool:
        return isinstance(other, FieldParams) and (self.p, self.m) == (other.p, other.m)

    def __hash__(self) -> int:
        return hash(("fq", self.p, self.m))

    def __repr__(self) -> str:
        return f"FieldParams(p={self.p}, m={self.m})"

    def spec_string(self) -> str:
        return f"fq:p={self.p},m={self.m}"

    @property
    def zero(self) -> "FieldElement":
        return FieldElement(self, (0,) * self.m)

    @property
    def one(self) -> "FieldElement":
        return FieldElement(self, (1,) + (0,) * (self.m - 1))

    def from_coeffs(self, coeffs: Iterable[int]) -> "FieldElement":
        return FieldElement(self, tuple(c % self.p for c in coeffs))

    def from_int(self, n: int) -> "FieldElement":
        """Image of the integer n (constant polynomial n mod p)."""
        return FieldElement(self, (n % self.p,) + (0,) * (self.m - 1))

    def element(self, index: int) -> "FieldElement":
        if not 0 <= index < self.q:
            raise ValueError(f"index {index} out of range for a field of order {self.q}")
        return FieldElement(self, tuple(_digits(index, self.p, self.m)))

    def elements(self) -> list["FieldElement"]:
        """All q elements, ascending by index; element(0) = 0, element(1) = 1."""
        return [self.element(i) for i in range(self.q)]

    def parse_element(self, text: str) -> "FieldElement":
        parts = [t.strip() for t in text.split(",")]
        try:
            coeffs = [int(t) for t in parts]
        except ValueError:
            raise ValueError(f"bad field element {text!r}") from None
        if len(coeffs) != self.m or any(not 0 <= c < self.p for c in coeffs):
            raise ValueError(f"bad field element {text!r} for {self.spec_string()}")
        return FieldElement(self, tuple(coeffs))


def parse_field_spec(text: str) -> FieldParams:
    """Parse a field spec string of the form "fq:p=<p>,m=<m>"."""
    head, _, rest = text.partition(":")
    if head != "fq":
        raise ValueError(f"bad field spec {text!r}: expected 'fq:' prefix")
    params = {}
    for item in rest.split(","):
        key, eq, value = item.partition("=")
        if not eq or key not in ("p", "m") or key in params:
            raise ValueError(f"bad field spec {text!r}: token {item!r}")
        try:
            params[key] = int(value)
        except ValueError:
            raise ValueError(f"bad field spec {text!r}: token {item!r}") from None
    if set(params) != {"p", "m"}:
        raise ValueError(f"bad field spec {text!r}: need p and m")
    return FieldParams(params["p"], params["m"])


class FieldElement:
    """An element of F_{p^m}, stored as m coefficients in [0, p)."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field: FieldParams, coeffs: Sequence[int]):
        coeffs = tuple(coeffs)
        if len(coeffs) != field.m:
            raise ValueError(f"expected {field.m} coefficients, got {len(coeffs)}")
        if any(not 0 <= c < field.p for c in coeffs):
            raise ValueError(f"coefficients out of range [0, {field.p}): {coeffs}")
        self.field = field
        self.coeffs = coeffs

    def _check(self, other: "FieldElement") -> None:
        if not isinstance(other, FieldElement):
            raise TypeError(f"expected FieldElement, got {type(other).__name__}")
        if other.field != self.field:
            raise MismatchError(f"mixed fields: {self.field!r} vs {other.field!r}")

    @property
    def index(self) -> int:
        p = self.field.p
        out = 0
        for c in reversed(self.coeffs):
            out = out * p + c
        return out

    def __bool__(self) -> bool:
        return any(self.coeffs)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, FieldElement)
            and self.field == other.field
            and self.coeffs == other.coeffs
        )

    def __hash__(self) -> int:
        return hash((self.field, self.coeffs))

    def __add__(self, other: "FieldElement") -> "FieldElement":
        self._check(other)
        p = self.field.p
        return FieldElement(self.field, tuple((a + b) % p for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: "FieldElement") -> "FieldElement":
        self._check(other)
        p = self.field.p
        return FieldElement(self.field, tuple((a - b) % p for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> "FieldElement":
        p = self.field.p
        return FieldElement(self.field, tuple((-a) % p for a in self.coeffs))

    def __mul__(self, other: "FieldElement") -> "FieldElement":
        self._check(other)
        f = self.field
        prod = _poly_mul(self.coeffs, other.coeffs, f.p)
        red = _poly_mod(prod, f.modulus, f.p)
        return FieldElement(f, tuple(red) + (0,) * (f.m - len(red)))

    def __pow__(self, exp: int) -> "FieldElement":
        if exp < 0:
            return self.inverse() ** (-exp)
        result = self.field.one
        base = self
        while exp:
            if exp & 1:
                result = result * base
            base = base * base
            exp >>= 1
        return result

    def inverse(self) -> "FieldElement":
        """Multiplicative inverse, by extended polynomial gcd."""
        if not self:
            raise NotAUnitError("0 has no multiplicative inverse")
        f = self.field
        inv = _poly_invmod(self.coeffs, f.modulus, f.p)
        return FieldElement(f, tuple(inv) + (0,) * (f.m - len(inv)))

    def serialize(self) -> str:
        return ",".join(str(c) for c in self.coeffs)

    def __repr__(self) -> str:
        return f"FieldElement({self.field.spec_string()}, [{self.serialize()}])"
