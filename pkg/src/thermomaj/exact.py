"""Exact rational scalars, vectors, permutations and small dense matrices.

Everything here computes over arbitrary-precision rationals
(`fractions.Fraction`); no floating point enters any primary computation.
Vectors are tuples of fractions and matrices are tuples of row tuples, so
all values are immutable, hashable and safe to share between threads.

Permutations use one-line image notation: ``Perm((2, 3, 1))`` maps
1 -> 2, 2 -> 3, 3 -> 1.  The permutation matrix acts by

    apply_permutation(s, x)[j] == x[s(j)]          (1-based j)

and composition satisfies

    perm_matrix(compose(s, t)) == mat_mul(perm_matrix(t), perm_matrix(s)).
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations as _lex_permutations
from typing import Iterable, Iterator

from .errors import DimensionError, ParseError

Vec = tuple[Fraction, ...]
Mat = tuple[Vec, ...]

ZERO = Fraction(0)
ONE = Fraction(1)


def rat_parse(text: str) -> Fraction:
    """Parse an integer, a fraction ``p/q`` or a terminating decimal, exactly.

    Decimal strings are converted via their exact decimal expansion
    ("0.5" -> 1/2), never through binary floating point.
    """
    if not isinstance(text, str) or not text.strip():
        raise ParseError(f"not a rational literal: {text!r}")
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"not a rational literal: {text!r}") from exc


def as_rational(value: int | str | Fraction) -> Fraction:
    """Coerce an exact input (int, Fraction, or literal string) to Fraction.

    Floats are rejected: binary floats are almost never the decimal the
    caller had in mind, so exact decimals must be passed as strings.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return rat_parse(value)
    raise ParseError(f"refusing inexact value of type {type(value).__name__}: {value!r}")


def vec(values: Iterable[int | str | Fraction]) -> Vec:
    """Coerce an iterable of exact values to a rational vector."""
    return tuple(as_rational(v) for v in values)


def parse_vector(text: str) -> Vec:
    """Parse a comma-separated vector such as ``"4,2,1"`` or ``"1/3,2/3"``."""
    parts = [p for p in text.split(",")]
    if not parts or any(not p.strip() for p in parts):
        raise ParseError(f"not a vector literal: {text!r}")
    return tuple(rat_parse(p) for p in parts)


def format_vector(v: Vec) -> str:
    return ",".join(str(q) for q in v)


def total(v: Vec) -> Fraction:
    """Sum of entries (the trace of the state it represents)."""
    return sum(v, ZERO)


def one_norm(v: Vec) -> Fraction:
    return sum((abs(q) for q in v), ZERO)


def dot(u: Vec, v: Vec) -> Fraction:
    if len(u) != len(v):
        raise DimensionError(f"dot of lengths {len(u)} and {len(v)}")
    return sum((a * b for a, b in zip(u, v)), ZERO)


def vec_add(u: Vec, v: Vec) -> Vec:
    if len(u) != len(v):
        raise DimensionError(f"add of lengths {len(u)} and {len(v)}")
    return tuple(a + b for a, b in zip(u, v))


def vec_sub(u: Vec, v: Vec) -> Vec:
    if len(u) != len(v):
        raise DimensionError(f"sub of lengths {len(u)} and {len(v)}")
    return tuple(a - b for a, b in zip(u, v))


def vec_scale(c: Fraction | int, v: Vec) -> Vec:
    c = Fraction(c)
    return tuple(c * q for q in v)


def basis_vector(n: int, k: int) -> Vec:
    """Standard basis vector e_k of length n (1-based k)."""
    if not 1 <= k <= n:
        raise DimensionError(f"basis index {k} out of range 1..{n}")
    return tuple(ONE if i == k - 1 else ZERO for i in range(n))


@dataclass(frozen=True)
class Perm:
    """A permutation of {1, ..., n} in one-line image notation."""

    image: tuple[int, ...]

    def __post_init__(self) -> None:
        n = len(self.image)
        if sorted(self.image) != list(range(1, n + 1)):
            raise ParseError(f"not a permutation of 1..{n}: {self.image}")

    @property
    def n(self) -> int:
        return len(self.image)

    def __call__(self, j: int) -> int:
        return self.image[j - 1]

    def inverse(self) -> "Perm":
        inv = [0] * self.n
        for j, img in enumerate(self.image, start=1):
            inv[img - 1] = j
        return Perm(tuple(inv))

    def __str__(self) -> str:
        return ",".join(str(j) for j in self.image)

    @staticmethod
    def identity(n: int) -> "Perm":
        return Perm(tuple(range(1, n + 1)))

    @staticmethod
    def parse(text: str) -> "Perm":
        try:
            image = tuple(int(p.strip()) for p in text.split(","))
        except ValueError as exc:
            raise ParseError(f"not a permutation literal: {text!r}") from exc
        return Perm(image)


def compose(s: Perm, t: Perm) -> Perm:
    """The composition s∘t, i.e. i -> s(t(i))."""
    if s.n != t.n:
        raise DimensionError(f"composing permutations of sizes {s.n} and {t.n}")
    return Perm(tuple(s(t(i)) for i in range(1, s.n + 1)))


def apply_permutation(s: Perm, v: Vec) -> Vec:
    """Apply the permutation matrix of s: result[j] = v[s(j)]."""
    if s.n != len(v):
        raise DimensionError(f"permutation of size {s.n} applied to vector of length {len(v)}")
    return tuple(v[s(j) - 1] for j in range(1, s.n + 1))


def perm_matrix(s: Perm) -> Mat:
    """The matrix with entry 1 at (i, s(i)) for every i (1-based)."""
    n = s.n
    return tuple(
        tuple(ONE if k == s(j) else ZERO for k in range(1, n + 1)) for j in range(1, n + 1)
    )


def all_perms(n: int) -> Iterator[Perm]:
    """All permutations of {1..n} in lexicographic one-line order."""
    for image in _lex_permutations(range(1, n + 1)):
        yield Perm(image)


def mat(rows: Iterable[Iterable[int | str | Fraction]]) -> Mat:
    out = tuple(vec(row) for row in rows)
    if out and any(len(r) != len(out[0]) for r in out):
        raise DimensionError("ragged matrix rows")
    return out


def identity_mat(n: int) -> Mat:
    return tuple(tuple(ONE if i == j else ZERO for j in range(n)) for i in range(n))


def mat_vec(a: Mat, v: Vec) -> Vec:
    if not a or len(a[0]) != len(v):
        raise DimensionError(f"matrix of width {len(a[0]) if a else 0} times vector of length {len(v)}")
    return tuple(dot(row, v) for row in a)


def mat_mul(a: Mat, b: Mat) -> Mat:
    if not a or not b or len(a[0]) != len(b):
        raise DimensionError("incompatible matrix product")
    cols = tuple(zip(*b))
    return tuple(tuple(dot(row, col) for col in cols) for row in a)


def format_matrix(a: Mat) -> list[list[str]]:
    """Row-major rational strings, the wire format used by the CLI."""
    return [[str(q) for q in row] for row in a]


def enumeration_limit(default: int) -> int:
    """Size cap for exhaustive enumerations; THERMO_MAX_N overrides it."""
    env = os.environ.get("THERMO_MAX_N")
    if env is None:
        return default
    try:
        return int(env)
    except ValueError as exc:
        raise ParseError(f"THERMO_MAX_N is not an integer: {env!r}") from exc
