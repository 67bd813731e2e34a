"""Exact arithmetic in Z_{p^k}, its unit group, and 2x2 matrices over Z_p.

Everything here is a small immutable value type: residues carry their
modulus, matrices and vectors carry the prime they live over, and all
operations reduce eagerly to the least non-negative representative.
Mixing values over different moduli is a programming error and raises
``MixedModulusError`` instead of coercing.

Supported range: the modulus p^k must stay below 2**31 so that products
of two reduced values fit comfortably in native integers before Python
would even need big ints; constructors reject anything larger.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import gcd
from typing import Iterator

MAX_MODULUS = 2**31


class MixedModulusError(ValueError):
    """Arithmetic between values over different moduli."""


class SingularMatrixError(ZeroDivisionError):
    """Inversion of a matrix with zero determinant."""


@lru_cache(maxsize=None)
def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


@dataclass(frozen=True, order=True)
class Modulus:
    """A prime power p^k, the order of the cyclic group Z_{p^k}."""

    p: int
    k: int

    def __post_init__(self):
        if not is_prime(self.p):
            raise ValueError(f"p={self.p} is not prime")
        if self.k < 1:
            raise ValueError(f"exponent k={self.k} must be >= 1")
        if self.p**self.k >= MAX_MODULUS:
            raise ValueError(f"{self.p}^{self.k} exceeds the supported range (< 2^31)")

    @property
    def n(self) -> int:
        return self.p**self.k


@dataclass(frozen=True)
class Residue:
    """An element of Z_{p^k}, stored as its least non-negative representative."""

    value: int
    modulus: Modulus

    def __post_init__(self):
        if not 0 <= self.value < self.modulus.n:
            object.__setattr__(self, "value", self.value % self.modulus.n)

    def _check(self, other: "Residue") -> None:
        if self.modulus != other.modulus:
            raise MixedModulusError(f"{self.modulus} vs {other.modulus}")

    def __add__(self, other: "Residue") -> "Residue":
        self._check(other)
        return Residue((self.value + other.value) % self.modulus.n, self.modulus)

    def __sub__(self, other: "Residue") -> "Residue":
        self._check(other)
        return Residue((self.value - other.value) % self.modulus.n, self.modulus)

    def __mul__(self, other: "Residue") -> "Residue":
        self._check(other)
        return Residue((self.value * other.value) % self.modulus.n, self.modulus)

    def __neg__(self) -> "Residue":
        return Residue(-self.value % self.modulus.n, self.modulus)

    def __int__(self) -> int:
        return self.value

    def is_unit(self) -> bool:
        return gcd(self.value, self.modulus.p) == 1


@dataclass(frozen=True)
class Unit:
    """An invertible residue; these are exactly the automorphisms of Z_{p^k}."""

    residue: Residue

    def __post_init__(self):
        if not self.residue.is_unit():
            raise ValueError(f"{self.residue.value} is divisible by {self.residue.modulus.p}")

    @property
    def value(self) -> int:
        return self.residue.value

    @property
    def modulus(self) -> Modulus:
        return self.residue.modulus

    def __mul__(self, other: "Unit") -> "Unit":
        return Unit(self.residue * other.residue)

    def __neg__(self) -> "Unit":
        return Unit(-self.residue)

    def inverse(self) -> "Unit":
        n = self.modulus.n
        return Unit(Residue(pow(self.value, -1, n), self.modulus))

    def apply(self, x: Residue) -> Residue:
        return self.residue * x


def unit_group(m: Modulus) -> list[Unit]:
    """All units of Z_{p^k} in ascending order; size p^k - p^(k-1)."""
    return [Unit(Residue(v, m)) for v in range(1, m.n) if v % m.p != 0]


# -- square roots in the field Z_p -------------------------------------------


@lru_cache(maxsize=None)
def _sqrt_table(p: int) -> dict[int, int]:
    """Map each square x to its least root; built by squaring 0..p-1."""
    table: dict[int, int] = {}
    for r in range(p):
        table.setdefault(r * r % p, r)
    return table


def sqrt_mod_prime(x: int, p: int) -> tuple[int, ...]:
    """Square roots of x in Z_p for an odd prime p.

    Returns () when x is a non-square, (0,) when x = 0, and the pair
    (r, p - r) with r < p - r otherwise.  The first entry is the
    canonical root: determinism matters downstream, any fixed choice
    of root works mathematically.
    """
    if not is_prime(p) or p == 2:
        raise ValueError(f"modulus {p} is not an odd prime")
    x %= p
    r = _sqrt_table(p).get(x)
    if r is None:
        return ()
    if x == 0:
        return (0,)
    return (r, p - r)


def sqrt_residue(x: Residue) -> tuple[Residue, ...]:
    """Square roots of a residue over an odd prime modulus (k = 1)."""
    m = x.modulus
    if m.k != 1:
        raise ValueError("square roots are only provided over the field Z_p")
    return tuple(Residue(r, m) for r in sqrt_mod_prime(x.value, m.p))


def is_square_mod(x: int, p: int) -> bool:
    return x % p in _sqrt_table(p)


# -- 2x2 matrices and vectors over Z_p ----------------------------------------


@lru_cache(maxsize=None)
def _check_mat_prime(p: int) -> None:
    if not is_prime(p):
        raise ValueError(f"matrix modulus {p} is not prime")


@dataclass(frozen=True, order=True)
class Vec2:
    """A vector in Z_p^2; ordering is lexicographic by (x, y)."""

    x: int
    y: int
    p: int

    def __post_init__(self):
        _check_mat_prime(self.p)
        object.__setattr__(self, "x", self.x % self.p)
        object.__setattr__(self, "y", self.y % self.p)

    def _check(self, other: "Vec2") -> None:
        if self.p != other.p:
            raise MixedModulusError(f"p={self.p} vs p={other.p}")

    def __add__(self, other: "Vec2") -> "Vec2":
        self._check(other)
        return Vec2(self.x + other.x, self.y + other.y, self.p)

    def __sub__(self, other: "Vec2") -> "Vec2":
        self._check(other)
        return Vec2(self.x - other.x, self.y - other.y, self.p)

    def __neg__(self) -> "Vec2":
        return Vec2(-self.x, -self.y, self.p)

    def smul(self, t: int) -> "Vec2":
        return Vec2(t * self.x, t * self.y, self.p)

    def is_zero(self) -> bool:
        return self.x == 0 and self.y == 0

    def entries(self) -> tuple[int, int]:
        return (self.x, self.y)


@dataclass(frozen=True, order=True)
class Mat2:
    """A 2x2 matrix ((a, b), (c, d)) over Z_p, row-major.

    Ordering is lexicographic by entries, which is the canonical order
    used whenever a deterministic representative has to be picked.
    """

    a: int
    b: int
    c: int
    d: int
    p: int

    def __post_init__(self):
        _check_mat_prime(self.p)
        for f in ("a", "b", "c", "d"):
            object.__setattr__(self, f, getattr(self, f) % self.p)

    @classmethod
    def from_rows(cls, rows, p: int) -> "Mat2":
        (a, b), (c, d) = rows
        return cls(a, b, c, d, p)

    @classmethod
    def identity(cls, p: int) -> "Mat2":
        return cls(1, 0, 0, 1, p)

    @classmethod
    def zero(cls, p: int) -> "Mat2":
        return cls(0, 0, 0, 0, p)

    @classmethod
    def scalar(cls, t: int, p: int) -> "Mat2":
        return cls(t, 0, 0, t, p)

    @classmethod
    def diag(cls, a: int, d: int, p: int) -> "Mat2":
        return cls(a, 0, 0, d, p)

    def _check(self, other: "Mat2") -> None:
        if self.p != other.p:
            raise MixedModulusError(f"p={self.p} vs p={other.p}")

    def __matmul__(self, other: "Mat2") -> "Mat2":
        self._check(other)
        p = self.p
        return Mat2(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
            p,
        )

    def __add__(self, other: "Mat2") -> "Mat2":
        self._check(other)
        return Mat2(self.a + other.a, self.b + other.b, self.c + other.c, self.d + other.d, self.p)

    def __sub__(self, other: "Mat2") -> "Mat2":
        self._check(other)
        return Mat2(self.a - other.a, self.b - other.b, self.c - other.c, self.d - other.d, self.p)

    def __neg__(self) -> "Mat2":
        return Mat2(-self.a, -self.b, -self.c, -self.d, self.p)

    def smul(self, t: int) -> "Mat2":
        return Mat2(t * self.a, t * self.b, t * self.c, t * self.d, self.p)

    def det(self) -> int:
        return (self.a * self.d - self.b * self.c) % self.p

    def tr(self) -> int:
        return (self.a + self.d) % self.p

    def rank(self) -> int:
        if self.det() != 0:
            return 2
        if self.a or self.b or self.c or self.d:
            return 1
        return 0

    def is_invertible(self) -> bool:
        return self.det() != 0

    def is_scalar(self) -> bool:
        return self.b == 0 and self.c == 0 and self.a == self.d

    def inv(self) -> "Mat2":
        det = self.det()
        if det == 0:
            raise SingularMatrixError(f"{self} has determinant 0")
        di = pow(det, -1, self.p)
        return Mat2(di * self.d, -di * self.b, -di * self.c, di * self.a, self.p)

    def square(self) -> "Mat2":
        return self @ self

    def matvec(self, v: Vec2) -> Vec2:
        if self.p != v.p:
            raise MixedModulusError(f"p={self.p} vs p={v.p}")
        return Vec2(self.a * v.x + self.b * v.y, self.c * v.x + self.d * v.y, self.p)

    def entries(self) -> tuple[int, int, int, int]:
        return (self.a, self.b, self.c, self.d)

    def rows(self) -> tuple[tuple[int, int], tuple[int, int]]:
        return ((self.a, self.b), (self.c, self.d))


def all_vectors(p: int) -> list[Vec2]:
    return [Vec2(x, y, p) for x in range(p) for y in range(p)]


def all_matrices(p: int) -> Iterator[Mat2]:
    for a in range(p):
        for b in range(p):
            for c in range(p):
                for d in range(p):
                    yield Mat2(a, b, c, d, p)


def gl2(p: int) -> list[Mat2]:
    """All invertible 2x2 matrices over Z_p; |GL(2,p)| = (p^2-1)(p^2-p)."""
    return [m for m in all_matrices(p) if m.det() != 0]


def image_and_cosets(m: Mat2) -> tuple[list[Vec2], list[Vec2]]:
    """Basis of Im(M) and a full transversal of Z_p^2 / Im(M).

    The transversal has p^(2-rank) entries, starts with the zero vector
    and is otherwise ordered deterministically: for rank one it consists
    of the multiples t*w of the lexicographically least vector w outside
    the image, in order of t.
    """
    p = m.p
    zero = Vec2(0, 0, p)
    rank = m.rank()
    col1 = Vec2(m.a, m.c, p)
    col2 = Vec2(m.b, m.d, p)
    if rank == 2:
        return [col1, col2], [zero]
    if rank == 0:
        return [], all_vectors(p)
    basis = col1 if not col1.is_zero() else col2
    w = vector_outside_line(basis)
    return [basis], [w.smul(t) for t in range(p)]


def in_line(v: Vec2, direction: Vec2) -> bool:
    """Whether v lies on the line spanned by a non-zero direction vector."""
    return (v.x * direction.y - v.y * direction.x) % v.p == 0


def vector_outside_line(direction: Vec2) -> Vec2:
    """Lexicographically least vector not on the given line."""
    for v in all_vectors(direction.p):
        if not in_line(v, direction):
            return v
    raise ValueError("direction vector is zero")
