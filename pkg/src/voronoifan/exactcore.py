"""Exact value types: quadratic forms, symmetric lattice points, integer
vectors, unimodular maps, and the pairing between forms and lattice points.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

from . import linalg


class DimensionError(ValueError):
    pass


class NotPositiveDefinite(ValueError):
    pass


def _frac_rows(rows) -> tuple[tuple[Fraction, ...], ...]:
    return tuple(tuple(Fraction(v) for v in row) for row in rows)


def parse_matrix(text: str) -> list[list[Fraction]]:
    """Parse ``"2,1;1,2"`` (rows by ``;``, entries by ``,``, rationals as ``p/q``)."""
    rows = [r for r in text.replace(" ", "").split(";") if r]
    if not rows:
        raise ValueError(f"empty matrix: {text!r}")
    out = [[Fraction(v) for v in r.split(",")] for r in rows]
    if any(len(r) != len(out[0]) for r in out):
        raise ValueError(f"ragged matrix: {text!r}")
    return out


def format_rational(v) -> str:
    v = Fraction(v)
    return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"


@dataclass(frozen=True)
class QuadForm:
    """Rational symmetric Gram matrix G with q(x) = x^T G x."""

    gram: tuple[tuple[Fraction, ...], ...]

    def __init__(self, gram):
        rows = _frac_rows(gram)
        n = len(rows)
        if n < 1 or any(len(r) != n for r in rows):
            raise DimensionError("Gram matrix must be square with g >= 1")
        for i in range(n):
            for j in range(i):
                if rows[i][j] != rows[j][i]:
                    raise ValueError("Gram matrix is not symmetric")
        object.__setattr__(self, "gram", rows)

    @classmethod
    def parse(cls, text: str) -> "QuadForm":
        return cls(parse_matrix(text))

    @property
    def g(self) -> int:
        return len(self.gram)

    def __call__(self, x: Sequence[int]) -> Fraction:
        return self.bilinear(x, x)

    def bilinear(self, x, y) -> Fraction:
        G = self.gram
        return sum((x[i] * sum(G[i][j] * y[j] for j in range(len(y))) for i in range(len(x))),
                   Fraction(0))

    def scaled(self, c) -> "QuadForm":
        c = Fraction(c)
        return QuadForm([[c * v for v in row] for row in self.gram])

    def __add__(self, other: "QuadForm") -> "QuadForm":
        if other.g != self.g:
            raise DimensionError("dimension mismatch")
        return QuadForm([[a + b for a, b in zip(r, s)] for r, s in zip(self.gram, other.gram)])

    def is_integral(self) -> bool:
        return all(v.denominator == 1 for row in self.gram for v in row)

    def integer_gram(self) -> list[list[int]]:
        if not self.is_integral():
            raise ValueError("Gram matrix is not integral")
        return [[int(v) for v in row] for row in self.gram]

    def det(self) -> Fraction:
        return linalg.det(self.gram)

    def rows(self) -> list[list[Fraction]]:
        return [list(r) for r in self.gram]

    def __str__(self) -> str:
        return ";".join(",".join(format_rational(v) for v in row) for row in self.gram)


def sym_coords_index(g: int) -> list[tuple[int, int]]:
    """Coordinate order on symmetric matrices: (1,1),(1,2),...,(1,g),(2,2),..."""
    return [(i, j) for i in range(g) for j in range(i, g)]


def _as_int(v) -> int:
    f = Fraction(v)
    if f.denominator != 1:
        raise ValueError(f"non-integer entry {v}")
    return int(f)


@dataclass(frozen=True)
class SymLatticePoint:
    """Symmetric integer matrix, an element of the lattice of integral bilinear forms."""

    entries: tuple[tuple[int, ...], ...]
    primitive_root: bool | None = field(default=None, compare=False)

    def __init__(self, entries, primitive_root: bool | None = None):
        rows = tuple(tuple(_as_int(v) for v in row) for row in entries)
        n = len(rows)
        if n < 1 or any(len(r) != n for r in rows):
            raise DimensionError("matrix must be square")
        for i in range(n):
            for j in range(i):
                if rows[i][j] != rows[j][i]:
                    raise ValueError("matrix is not symmetric")
        object.__setattr__(self, "entries", rows)
        object.__setattr__(self, "primitive_root", primitive_root)

    @classmethod
    def from_coords(cls, g: int, coords: Sequence[int]) -> "SymLatticePoint":
        m = [[0] * g for _ in range(g)]
        for (i, j), v in zip(sym_coords_index(g), coords):
            m[i][j] = m[j][i] = int(v)
        return cls(m)

    @classmethod
    def parse(cls, text: str) -> "SymLatticePoint":
        rows = parse_matrix(text)
        if any(v.denominator != 1 for r in rows for v in r):
            raise ValueError("lattice point entries must be integers")
        return cls(rows)

    @property
    def g(self) -> int:
        return len(self.entries)

    def coords(self) -> tuple[int, ...]:
        return tuple(self.entries[i][j] for i, j in sym_coords_index(self.g))

    def as_form(self) -> QuadForm:
        return QuadForm(self.entries)

    def __str__(self) -> str:
        return ";".join(",".join(str(v) for v in row) for row in self.entries)


class IntVector(tuple):
    """Integer coordinate vector."""

    def __new__(cls, coords: Iterable[int]):
        return super().__new__(cls, (int(c) for c in coords))

    @property
    def primitive(self) -> bool:
        d = 0
        for c in self:
            d = gcd(d, c)
        return d == 1

    def canonical_sign(self) -> "IntVector":
        """The representative of {x, -x} whose first nonzero coordinate is positive."""
        for c in self:
            if c:
                return self if c > 0 else IntVector(-v for v in self)
        return self


@dataclass(frozen=True)
class UnimodularMap:
    matrix: tuple[tuple[int, ...], ...]

    def __init__(self, matrix):
        rows = tuple(tuple(int(v) for v in r) for r in matrix)
        if not rows or any(len(r) != len(rows) for r in rows):
            raise DimensionError("unimodular map must be square")
        if abs(linalg.int_det(rows)) != 1:
            raise ValueError("determinant is not +-1")
        object.__setattr__(self, "matrix", rows)

    @classmethod
    def identity(cls, g: int) -> "UnimodularMap":
        return cls([[int(i == j) for j in range(g)] for i in range(g)])

    @property
    def g(self) -> int:
        return len(self.matrix)

    def __matmul__(self, other: "UnimodularMap") -> "UnimodularMap":
        return UnimodularMap(linalg.matmul(self.matrix, other.matrix))

    def inverse(self) -> "UnimodularMap":
        inv = linalg.inverse(self.matrix)
        return UnimodularMap([[int(v) for v in row] for row in inv])

    def apply(self, x: Sequence[int]) -> IntVector:
        return IntVector(sum(a * b for a, b in zip(row, x)) for row in self.matrix)


def _entries(m):
    if isinstance(m, QuadForm):
        return m.gram
    if isinstance(m, SymLatticePoint):
        return m.entries
    return m


def pair(q, b) -> Fraction:
    """The duality pairing sum_ij G_ij B_ij, so that pair(q, x x^T) = q(x)."""
    G, B = _entries(q), _entries(b)
    if len(G) != len(B):
        raise DimensionError(f"dimension mismatch: {len(G)} vs {len(B)}")
    return sum((Fraction(G[i][j]) * B[i][j] for i in range(len(G)) for j in range(len(G))),
               Fraction(0))


def rank1(x: Sequence[int]) -> SymLatticePoint:
    """The rank-one lattice point x x^T."""
    x = IntVector(x)
    if not any(x):
        raise ValueError("rank1 of the zero vector")
    return SymLatticePoint([[a * b for b in x] for a in x], primitive_root=x.primitive)


def transform(q: QuadForm, u) -> QuadForm:
    """The form with Gram U^T G U, i.e. x -> q(U x)."""
    U = u.matrix if isinstance(u, UnimodularMap) else u
    if len(U) != q.g:
        raise DimensionError("dimension mismatch")
    return QuadForm(linalg.matmul(linalg.transpose(U), linalg.matmul(q.gram, U)))


def conjugate_point(b: SymLatticePoint, u) -> SymLatticePoint:
    """U B U^T; adjoint to :func:`transform` under :func:`pair`."""
    U = u.matrix if isinstance(u, UnimodularMap) else u
    return SymLatticePoint(linalg.matmul(U, linalg.matmul(b.entries, linalg.transpose(U))))


@dataclass(frozen=True)
class Definiteness:
    kind: str  # "positive-definite" | "positive-semidefinite" | "indefinite"
    rank: int
    form: QuadForm = field(repr=False, compare=False)

    @property
    def positive_definite(self) -> bool:
        return self.kind == "positive-definite"

    @property
    def positive_semidefinite(self) -> bool:
        return self.kind != "indefinite"

    def kernel(self) -> list[list[Fraction]]:
        """Rational basis of the radical."""
        return linalg.nullspace(self.form.gram)


def definiteness(q) -> Definiteness:
    """Classify by symmetric elimination with diagonal pivoting (exact LDL^T)."""
    form = q if isinstance(q, QuadForm) else QuadForm(_entries(q))
    a = [list(r) for r in form.gram]
    n = len(a)
    active = list(range(n))
    r = 0
    while active:
        p = max(active, key=lambda i: (a[i][i], -i))
        d = a[p][p]
        if d < 0:
            return Definiteness("indefinite", r, form)
        if d == 0:
            # all remaining diagonals are zero: PSD only if the block vanishes
            if any(a[i][j] for i in active for j in active):
                return Definiteness("indefinite", r, form)
            break
        active.remove(p)
        for i in active:
            f = a[i][p] / d
            if f:
                for j in active:
                    a[i][j] -= f * a[p][j]
        r += 1
    if r == n:
        return Definiteness("positive-definite", n, form)
    return Definiteness("positive-semidefinite", r, form)


def leading_minors(q: QuadForm) -> list[Fraction]:
    return [linalg.det([row[:k] for row in q.gram[:k]]) for k in range(1, q.g + 1)]


def require_positive_definite(q: QuadForm) -> None:
    if not definiteness(q).positive_definite:
        raise NotPositiveDefinite(f"form {q} is not positive definite")
