"""Exact arithmetic over prime fields and small dense linear algebra mod p.

All values are immutable and fully reduced into [0, p).  Matrices stay small
(a few dozen rows at most), so elimination runs on int64 numpy buffers with
per-step reduction.  Moduli are capped below 2**31 so that any product of two
residues fits in 64 bits.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Sequence

import numpy as np

__all__ = [
    "MAX_MODULUS",
    "FieldElement",
    "FieldMatrix",
    "FieldVector",
    "is_prime",
    "require_prime_modulus",
]

MAX_MODULUS = 2**31


@lru_cache(maxsize=None)
def is_prime(p: int) -> bool:
    """Trial-division primality check, restricted to 0 <= p < 2**31."""
    if p < 2 or p >= MAX_MODULUS:
        return False
    if p < 4:
        return True
    if p % 2 == 0:
        return False
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


def require_prime_modulus(p: int) -> int:
    p = int(p)
    if not is_prime(p):
        raise ValueError(f"modulus must be a prime below 2**31, got {p}")
    return p


def _check_same_modulus(a, b) -> int:
    if a.modulus != b.modulus:
        raise ValueError(f"modulus mismatch: {a.modulus} vs {b.modulus}")
    return a.modulus


@dataclass(frozen=True, slots=True)
class FieldElement:
    """A fully reduced residue modulo a prime."""

    value: int
    modulus: int

    def __post_init__(self):
        p = require_prime_modulus(self.modulus)
        object.__setattr__(self, "modulus", p)
        object.__setattr__(self, "value", int(self.value) % p)

    def _coerce(self, other) -> "FieldElement":
        if isinstance(other, FieldElement):
            _check_same_modulus(self, other)
            return other
        if isinstance(other, int):
            return FieldElement(other, self.modulus)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return FieldElement(self.value + other.value, self.modulus)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return FieldElement(self.value - other.value, self.modulus)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return FieldElement(other.value - self.value, self.modulus)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return FieldElement(self.value * other.value, self.modulus)

    __rmul__ = __mul__

    def __neg__(self):
        return FieldElement(-self.value, self.modulus)

    def inverse(self) -> "FieldElement":
        if self.value == 0:
            raise ZeroDivisionError(f"0 is not invertible mod {self.modulus}")
        return FieldElement(pow(self.value, -1, self.modulus), self.modulus)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __int__(self) -> int:
        return self.value

    def __bool__(self) -> bool:
        return self.value != 0


@dataclass(frozen=True, slots=True)
class FieldVector:
    """A vector over Z_p with one shared modulus."""

    entries: tuple[int, ...]
    modulus: int

    def __post_init__(self):
        p = require_prime_modulus(self.modulus)
        object.__setattr__(self, "modulus", p)
        object.__setattr__(self, "entries", tuple(int(v) % p for v in self.entries))

    @classmethod
    def zeros(cls, n: int, p: int) -> "FieldVector":
        return cls((0,) * n, p)

    @classmethod
    def unit(cls, n: int, j: int, p: int, scale: int = 1) -> "FieldVector":
        if not 0 <= j < n:
            raise ValueError(f"unit index {j} out of range for length {n}")
        return cls(tuple(scale if i == j else 0 for i in range(n)), p)

    def __len__(self) -> int:
        return len(self.entries)

    def __getitem__(self, j: int) -> FieldElement:
        return FieldElement(self.entries[j], self.modulus)

    def __iter__(self) -> Iterator[FieldElement]:
        for v in self.entries:
            yield FieldElement(v, self.modulus)

    def __add__(self, other: "FieldVector") -> "FieldVector":
        p = _check_same_modulus(self, other)
        if len(self) != len(other):
            raise ValueError("vector length mismatch")
        return FieldVector(tuple(a + b for a, b in zip(self.entries, other.entries)), p)

    def __sub__(self, other: "FieldVector") -> "FieldVector":
        p = _check_same_modulus(self, other)
        if len(self) != len(other):
            raise ValueError("vector length mismatch")
        return FieldVector(tuple(a - b for a, b in zip(self.entries, other.entries)), p)

    def __neg__(self) -> "FieldVector":
        return FieldVector(tuple(-a for a in self.entries), self.modulus)

    def scale(self, c: int) -> "FieldVector":
        return FieldVector(tuple(c * a for a in self.entries), self.modulus)

    def dot(self, other: "FieldVector") -> FieldElement:
        p = _check_same_modulus(self, other)
        if len(self) != len(other):
            raise ValueError("vector length mismatch")
        return FieldElement(sum(a * b % p for a, b in zip(self.entries, other.entries)), p)

    @property
    def is_zero(self) -> bool:
        return not any(self.entries)


@dataclass(frozen=True)
class FieldMatrix:
    """A dense row-major matrix over Z_p."""

    entries: tuple[tuple[int, ...], ...]
    modulus: int

    def __post_init__(self):
        p = require_prime_modulus(self.modulus)
        object.__setattr__(self, "modulus", p)
        rows = tuple(tuple(int(v) % p for v in row) for row in self.entries)
        if rows and any(len(r) != len(rows[0]) for r in rows):
            raise ValueError("ragged rows")
        object.__setattr__(self, "entries", rows)

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], p: int) -> "FieldMatrix":
        return cls(tuple(tuple(row) for row in rows), p)

    @classmethod
    def zeros(cls, rows: int, cols: int, p: int) -> "FieldMatrix":
        return cls(tuple((0,) * cols for _ in range(rows)), p)

    @classmethod
    def identity(cls, n: int, p: int) -> "FieldMatrix":
        return cls(tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n)), p)

    @classmethod
    def from_blocks(cls, grid: Sequence[Sequence["FieldMatrix"]]) -> "FieldMatrix":
        p = grid[0][0].modulus
        rows: list[tuple[int, ...]] = []
        for band in grid:
            if any(m.modulus != p for m in band):
                raise ValueError("modulus mismatch between blocks")
            height = band[0].rows
            if any(m.rows != height for m in band):
                raise ValueError("block heights differ within a band")
            for i in range(height):
                row: tuple[int, ...] = ()
                for m in band:
                    row += m.entries[i]
                rows.append(row)
        return cls(tuple(rows), p)

    @property
    def rows(self) -> int:
        return len(self.entries)

    @property
    def cols(self) -> int:
        return len(self.entries[0]) if self.entries else 0

    def entry(self, i: int, j: int) -> FieldElement:
        return FieldElement(self.entries[i][j], self.modulus)

    def row(self, i: int) -> FieldVector:
        return FieldVector(self.entries[i], self.modulus)

    def to_array(self) -> np.ndarray:
        return np.array(self.entries, dtype=np.int64).reshape(self.rows, self.cols)

    def matvec(self, v: FieldVector) -> FieldVector:
        p = _check_same_modulus(self, v)
        if len(v) != self.cols:
            raise ValueError("dimension mismatch")
        out = tuple(sum(a * x % p for a, x in zip(row, v.entries)) for row in self.entries)
        return FieldVector(out, p)

    def transpose(self) -> "FieldMatrix":
        return FieldMatrix(tuple(zip(*self.entries)) if self.entries else (), self.modulus)

    def is_antisymmetric(self) -> bool:
        """True when the matrix is square with M^T = -M and zero diagonal."""
        if self.rows != self.cols:
            return False
        p = self.modulus
        for i in range(self.rows):
            if self.entries[i][i] != 0:
                return False
            for j in range(i + 1, self.cols):
                if (self.entries[i][j] + self.entries[j][i]) % p != 0:
                    return False
        return True

    def determinant(self) -> FieldElement:
        """Determinant by pivoted Gaussian elimination over Z_p."""
        if self.rows != self.cols:
            raise ValueError("determinant requires a square matrix")
        p = self.modulus
        n = self.rows
        if n == 0:
            return FieldElement(1, p)
        m = self.to_array()
        det = 1
        for i in range(n):
            piv = None
            for r in range(i, n):
                if m[r, i]:
                    piv = r
                    break
            if piv is None:
                return FieldElement(0, p)
            if piv != i:
                m[[i, piv]] = m[[piv, i]]
                det = -det % p
            v = int(m[i, i])
            det = det * v % p
            inv = pow(v, -1, p)
            for r in range(i + 1, n):
                f = int(m[r, i])
                if f:
                    m[r, i:] = (m[r, i:] - (f * inv % p) * m[i, i:]) % p
        return FieldElement(det, p)

    def _rref(self) -> tuple[np.ndarray, list[int]]:
        p = self.modulus
        a = self.to_array()
        nrows, ncols = a.shape
        pivots: list[int] = []
        r = 0
        for c in range(ncols):
            if r >= nrows:
                break
            piv = None
            for i in range(r, nrows):
                if a[i, c]:
                    piv = i
                    break
            if piv is None:
                continue
            if piv != r:
                a[[r, piv]] = a[[piv, r]]
            inv = pow(int(a[r, c]), -1, p)
            a[r] = a[r] * inv % p
            for i in range(nrows):
                if i != r and a[i, c]:
                    a[i] = (a[i] - int(a[i, c]) * a[r]) % p
            pivots.append(c)
            r += 1
        return a, pivots

    def rank(self) -> int:
        return len(self._rref()[1])

    def kernel_basis(self) -> list[FieldVector]:
        """Canonical basis of the right null space, empty iff injective.

        One basis vector per free column of the reduced row echelon form,
        ordered by free column index, so repeated runs agree entry for entry.
        """
        p = self.modulus
        rref, pivots = self._rref()
        free = [c for c in range(self.cols) if c not in pivots]
        basis = []
        for f in free:
            v = [0] * self.cols
            v[f] = 1
            for i, c in enumerate(pivots):
                v[c] = int(-rref[i, f]) % p
            basis.append(FieldVector(tuple(v), p))
        return basis

    def to_json_dict(self) -> dict:
        return {"p": self.modulus, "entries": [list(row) for row in self.entries]}
