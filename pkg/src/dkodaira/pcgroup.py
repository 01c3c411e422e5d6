"""Engine for finite class-2 central extensions of (Z_p)^{2n} by Z_p.

A descriptor holds a prime p, an anti-symmetric commutator matrix A of even
size 2n, and a power vector eps of length 2n.  Together they present a group
on generators x_0, ..., x_{2n-1} and a central z with

    [x_j, x_k] = z^(A[j][k]),    x_j^p = z^(eps[j]),    z^p = 1.

Elements are kept in the collected normal form

    x_0^(t_0) x_1^(t_1) ... x_{2n-1}^(t_{2n-1}) z^s,

so equality is a tuple comparison.  Multiplying two normal forms moves every
generator of the right factor left past the higher-indexed generators of the
left factor, and each swap of x_j past x_k with j > k deposits A[j][k] onto
the central exponent; a p-overflow in coordinate j deposits eps[j].

When det A != 0 the group is extra-special of order p^(2n+1).  The two
standard isomorphism types arise from the block matrix with [r_j, t_j] =
z^(-1) by taking eps = 0 (exponent p, the matrix Heisenberg group) or
eps = e_{2n-2} + e_{2n-1} (exponent p^2, odd p).
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from enum import Enum
from typing import Iterator, Sequence

import numpy as np

from .zpfield import FieldMatrix, FieldVector, require_prime_modulus

__all__ = [
    "DEFAULT_CLOSURE_CAP",
    "ClosureResult",
    "DescriptorMismatchError",
    "ExtraSpecialClass",
    "GroupDescriptor",
    "GroupElement",
    "HeisMatrix",
    "SpanClosure",
    "UnsupportedClassificationError",
    "center_rank",
    "classify_extra_special",
    "commutator",
    "heis_oracle_check",
    "paired_antisymmetric_matrix",
    "span_closure",
    "standard_commutator_matrix",
    "subgroup_closure",
]

DEFAULT_CLOSURE_CAP = 2_000_000


class DescriptorMismatchError(ValueError):
    """Raised when elements bound to different descriptors are combined."""


class UnsupportedClassificationError(ValueError):
    """Raised when the exponent classification is asked about p = 2."""


def paired_antisymmetric_matrix(values: Sequence[int], p: int) -> FieldMatrix:
    """Block-diagonal anti-symmetric matrix with blocks ((0, v), (-v, 0))."""
    b = len(values)
    rows = [[0] * (2 * b) for _ in range(2 * b)]
    for j, v in enumerate(values):
        rows[2 * j][2 * j + 1] = v % p
        rows[2 * j + 1][2 * j] = -v % p
    return FieldMatrix.from_rows(rows, p)


def standard_commutator_matrix(b: int, p: int) -> FieldMatrix:
    """The pairing of the standard presentation: [x_{2j}, x_{2j+1}] = z^(-1)."""
    return paired_antisymmetric_matrix([-1] * b, p)


class GroupDescriptor:
    """Presentation data (p, A, eps) for one central extension."""

    __slots__ = ("matrix", "epsilon", "p", "rank", "_rows", "_eps", "_hash")

    def __init__(self, matrix: FieldMatrix, epsilon: FieldVector):
        if matrix.modulus != epsilon.modulus:
            raise ValueError("commutator matrix and power vector must share one modulus")
        if not matrix.is_antisymmetric():
            raise ValueError("commutator matrix must be anti-symmetric with zero diagonal")
        rank = matrix.rows
        if rank <= 0 or rank % 2:
            raise ValueError(f"rank must be a positive even integer, got {rank}")
        if len(epsilon) != rank:
            raise ValueError("power vector length must equal the rank")
        self.matrix = matrix
        self.epsilon = epsilon
        self.p = matrix.modulus
        self.rank = rank
        self._rows = matrix.entries
        self._eps = epsilon.entries
        self._hash = hash((self.p, self._rows, self._eps))

    @classmethod
    def exponent_p(cls, b: int, p: int) -> "GroupDescriptor":
        """Extra-special group of order p^(2b+1), exponent p for odd p."""
        p = require_prime_modulus(p)
        if b < 1:
            raise ValueError("b must be positive")
        return cls(standard_commutator_matrix(b, p), FieldVector.zeros(2 * b, p))

    @classmethod
    def exponent_p_squared(cls, b: int, p: int) -> "GroupDescriptor":
        """Extra-special group of order p^(2b+1), exponent p^2 for odd p."""
        p = require_prime_modulus(p)
        if b < 1:
            raise ValueError("b must be positive")
        eps = [0] * (2 * b)
        eps[-2] = eps[-1] = 1
        return cls(standard_commutator_matrix(b, p), FieldVector(tuple(eps), p))

    @property
    def order(self) -> int:
        return self.p ** (self.rank + 1)

    def identity(self) -> "GroupElement":
        return GroupElement(self, (0,) * self.rank, 0)

    def generator(self, j: int) -> "GroupElement":
        if not 0 <= j < self.rank:
            raise ValueError(f"generator index {j} out of range for rank {self.rank}")
        return GroupElement(self, tuple(1 if i == j else 0 for i in range(self.rank)), 0)

    def central(self, c: int = 1) -> "GroupElement":
        return GroupElement(self, (0,) * self.rank, c % self.p)

    def element(self, t: Sequence[int], s: int) -> "GroupElement":
        t = tuple(int(v) % self.p for v in t)
        if len(t) != self.rank:
            raise ValueError(f"exponent vector must have length {self.rank}")
        return GroupElement(self, t, int(s) % self.p)

    def iter_elements(self) -> Iterator["GroupElement"]:
        if self.order > 10**6:
            raise ValueError(f"refusing to enumerate a group of order {self.order}")
        for t in itertools.product(range(self.p), repeat=self.rank):
            for s in range(self.p):
                yield GroupElement(self, t, s)

    def __eq__(self, other) -> bool:
        if self is other:
            return True
        if not isinstance(other, GroupDescriptor):
            return NotImplemented
        return self.p == other.p and self._rows == other._rows and self._eps == other._eps

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"GroupDescriptor(p={self.p}, rank={self.rank}, order={self.order})"

    def to_json_dict(self) -> dict:
        return {
            "p": self.p,
            "rank": self.rank,
            "A": [list(row) for row in self._rows],
            "epsilon": list(self._eps),
        }

    @classmethod
    def from_json_dict(cls, data: dict) -> "GroupDescriptor":
        try:
            p = int(data["p"])
            rank = int(data["rank"])
            rows = data["A"]
            eps = data["epsilon"]
        except (KeyError, TypeError, ValueError) as exc:
            raise ValueError(f"descriptor object needs integer 'p', 'rank', 'A', 'epsilon': {exc}")
        matrix = FieldMatrix.from_rows(rows, p)
        if matrix.rows != rank:
            raise ValueError(f"declared rank {rank} does not match matrix size {matrix.rows}")
        return cls(matrix, FieldVector(tuple(eps), p))


class GroupElement:
    """A collected normal form bound to one descriptor."""

    __slots__ = ("descriptor", "t", "s", "_key")

    def __init__(self, descriptor: GroupDescriptor, t: tuple[int, ...], s: int):
        self.descriptor = descriptor
        self.t = t
        self.s = s
        key = s
        p = descriptor.p
        for v in t:
            key = key * p + v
        self._key = key

    def _require_same(self, other: "GroupElement") -> GroupDescriptor:
        d = self.descriptor
        if other.descriptor is not d and other.descriptor != d:
            raise DescriptorMismatchError("elements belong to different groups")
        return d

    def __mul__(self, other: "GroupElement") -> "GroupElement":
        d = self._require_same(other)
        p = d.p
        rows = d._rows
        eps = d._eps
        t1 = self.t
        t2 = other.t
        s = self.s + other.s
        t = list(t1)
        for j in range(d.rank):
            v = t[j] + t2[j]
            if v >= p:
                v -= p
                if eps[j]:
                    s += eps[j]
            t[j] = v
        for j in range(1, d.rank):
            a = t1[j]
            if a:
                row = rows[j]
                acc = 0
                for k in range(j):
                    c = t2[k]
                    if c and row[k]:
                        acc += row[k] * c
                if acc:
                    s += a * acc
        return GroupElement(d, tuple(t), s % p)

    def inverse(self) -> "GroupElement":
        d = self.descriptor
        p = d.p
        tinv = tuple(-v % p for v in self.t)
        # The collection cost of cancelling the word fixes the z-exponent.
        cost = GroupElement(d, self.t, 0) * GroupElement(d, tinv, 0)
        return GroupElement(d, tinv, (-self.s - cost.s) % p)

    def __pow__(self, k: int) -> "GroupElement":
        if k < 0:
            return self.inverse() ** (-k)
        acc = self.descriptor.identity()
        base = self
        while k:
            if k & 1:
                acc = acc * base
            k >>= 1
            if k:
                base = base * base
        return acc

    def commutator(self, other: "GroupElement") -> "GroupElement":
        return self * other * self.inverse() * other.inverse()

    @property
    def is_identity(self) -> bool:
        return self.s == 0 and not any(self.t)

    def order(self) -> int:
        """Least k >= 1 with g^k = 1; always divides p^2 here."""
        if self.is_identity:
            return 1
        p = self.descriptor.p
        gp = self**p
        if gp.is_identity:
            return p
        if not (gp**p).is_identity:
            raise ArithmeticError("element order does not divide p^2")
        return p * p

    def __eq__(self, other) -> bool:
        if not isinstance(other, GroupElement):
            return NotImplemented
        return self._key == other._key and (
            self.descriptor is other.descriptor or self.descriptor == other.descriptor
        )

    def __hash__(self) -> int:
        return hash(self._key)

    def __repr__(self) -> str:
        return f"GroupElement(t={self.t}, s={self.s})"

    def to_json_dict(self) -> dict:
        return {"t": list(self.t), "s": self.s}

    @classmethod
    def from_json_dict(cls, descriptor: GroupDescriptor, data: dict) -> "GroupElement":
        try:
            t = [int(v) for v in data["t"]]
            s = int(data["s"])
        except (KeyError, TypeError, ValueError) as exc:
            raise ValueError(f"element object needs integer arrays 't' and 's': {exc}")
        return descriptor.element(t, s)


def commutator(g: GroupElement, h: GroupElement) -> GroupElement:
    return g.commutator(h)


def center_rank(descriptor: GroupDescriptor) -> tuple[int, bool]:
    """Order of the center and whether it is exactly the cyclic group <z>.

    An element is central iff its exponent vector lies in the kernel of the
    commutator matrix, so the center has order p^(1 + dim ker A).
    """
    kdim = len(descriptor.matrix.kernel_basis())
    return descriptor.p ** (1 + kdim), kdim == 0


class ExtraSpecialClass(Enum):
    NOT_EXTRA_SPECIAL = "NotExtraSpecial"
    EXPONENT_P = "ExtraSpecialExponentP"
    EXPONENT_P_SQUARED = "ExtraSpecialExponentPSquared"


def classify_extra_special(descriptor: GroupDescriptor) -> ExtraSpecialClass:
    """Descriptor-level classification for odd p.

    det A = 0 means the center is bigger than <z>, so not extra-special.
    Otherwise eps = 0 gives exponent p and eps != 0 gives exponent p^2; the
    descriptors produced in this package always use the canonical eps, so no
    generator rescaling is attempted.
    """
    if descriptor.p == 2:
        raise UnsupportedClassificationError(
            "exponent classification needs odd p; the p = 2 types are separated "
            "by counting order-4 elements, which this package does not do"
        )
    if descriptor.matrix.determinant().value == 0:
        return ExtraSpecialClass.NOT_EXTRA_SPECIAL
    if any(descriptor._eps):
        return ExtraSpecialClass.EXPONENT_P_SQUARED
    return ExtraSpecialClass.EXPONENT_P


@dataclass(frozen=True)
class SpanClosure:
    """Subgroup size read off from the abelianized span of the generators."""

    dim: int
    contains_z: bool
    order: int


def span_closure(gens: Sequence[GroupElement]) -> SpanClosure:
    """Order of <gens> without enumeration.

    The subgroup H projects onto the span W of the generator exponent
    vectors, and H meets <z> in the subgroup generated by pairwise
    commutators of a lifted basis of W, their p-th powers, and the central
    residue left over when a dependent generator is rewritten in that basis.
    Since p is prime, any non-trivial such value already puts z inside H, and
    then |H| = p^(dim W + 1).
    """
    if not gens:
        raise ValueError("at least one generator is required")
    d = gens[0].descriptor
    p = d.p
    basis: dict[int, GroupElement] = {}
    contains_z = False
    for g in gens:
        if g.descriptor is not d and g.descriptor != d:
            raise DescriptorMismatchError("generators belong to different groups")
        x = g
        while True:
            lead = next((i for i, v in enumerate(x.t) if v), None)
            if lead is None:
                if x.s:
                    contains_z = True
                break
            pivot = basis.get(lead)
            if pivot is None:
                basis[lead] = x ** pow(x.t[lead], -1, p)
                break
            x = (pivot ** (p - x.t[lead])) * x
    if not contains_z:
        lifted = [basis[c] for c in sorted(basis)]
        for h in lifted:
            if not (h**p).is_identity:
                contains_z = True
                break
        if not contains_z:
            for a, b in itertools.combinations(lifted, 2):
                if not a.commutator(b).is_identity:
                    contains_z = True
                    break
    dim = len(basis)
    return SpanClosure(dim, contains_z, p ** (dim + (1 if contains_z else 0)))


@dataclass(frozen=True)
class ClosureResult:
    """Breadth-first closure outcome plus the span shortcut prediction."""

    order: int | None
    elements: frozenset | None
    overflowed: bool
    partial_count: int | None
    span_dim: int
    contains_z: bool
    span_order: int


def subgroup_closure(
    gens: Sequence[GroupElement],
    cap: int = DEFAULT_CLOSURE_CAP,
    keep_elements: bool = True,
) -> ClosureResult:
    """Enumerate <gens> by breadth-first search, stopping at `cap` elements.

    The result also carries the span shortcut, which for these class-2
    groups predicts the order without enumeration.
    """
    span = span_closure(gens)
    d = gens[0].descriptor
    muls: list[GroupElement] = []
    seen_muls: set[GroupElement] = set()
    for g in gens:
        for m in (g, g.inverse()):
            if not m.is_identity and m not in seen_muls:
                seen_muls.add(m)
                muls.append(m)
    identity = d.identity()
    elements: set[GroupElement] = {identity}
    frontier = [identity]
    overflowed = False
    while frontier and not overflowed:
        nxt: list[GroupElement] = []
        for a in frontier:
            for m in muls:
                c = a * m
                if c not in elements:
                    if len(elements) >= cap:
                        overflowed = True
                        break
                    elements.add(c)
                    nxt.append(c)
            if overflowed:
                break
        frontier = nxt
    if overflowed:
        return ClosureResult(None, None, True, len(elements), span.dim, span.contains_z, span.order)
    return ClosureResult(
        len(elements),
        frozenset(elements) if keep_elements else None,
        False,
        None,
        span.dim,
        span.contains_z,
        span.order,
    )


@dataclass(frozen=True)
class HeisMatrix:
    """Upper-unitriangular (b+2)x(b+2) matrix with top row x, right column y.

    Written as triples, the matrix product reads
    (x, y, z) * (x', y', z') = (x + x', y + y', z + z' + x . y').
    """

    x: tuple[int, ...]
    y: tuple[int, ...]
    z: int
    modulus: int

    @classmethod
    def identity(cls, b: int, p: int) -> "HeisMatrix":
        return cls((0,) * b, (0,) * b, 0, p)

    def __mul__(self, other: "HeisMatrix") -> "HeisMatrix":
        p = self.modulus
        if other.modulus != p or len(other.x) != len(self.x):
            raise ValueError("incompatible matrices")
        cross = sum(a * b % p for a, b in zip(self.x, other.y)) % p
        return HeisMatrix(
            tuple((a + b) % p for a, b in zip(self.x, other.x)),
            tuple((a + b) % p for a, b in zip(self.y, other.y)),
            (self.z + other.z + cross) % p,
            p,
        )

    def as_array(self) -> np.ndarray:
        b = len(self.x)
        m = np.eye(b + 2, dtype=np.int64)
        m[0, 1 : b + 1] = self.x
        m[1 : b + 1, b + 1] = self.y
        m[0, b + 1] = self.z
        return m


def _heis_image(g: GroupElement, b: int) -> HeisMatrix:
    """Image of a normal form under x_{2j} -> (y = e_j), x_{2j+1} -> (x = e_j)."""
    p = g.descriptor.p
    zero = (0,) * b
    acc = HeisMatrix(zero, zero, 0, p)
    for j in range(b):
        r = g.t[2 * j]
        t = g.t[2 * j + 1]
        if r:
            acc = acc * HeisMatrix(zero, tuple(r if i == j else 0 for i in range(b)), 0, p)
        if t:
            acc = acc * HeisMatrix(tuple(t if i == j else 0 for i in range(b)), zero, 0, p)
    if g.s:
        acc = acc * HeisMatrix(zero, zero, g.s, p)
    return acc


def heis_oracle_check(
    b: int,
    p: int,
    samples: int = 10_000,
    seed: int = 0,
    descriptor: GroupDescriptor | None = None,
) -> bool:
    """Cross-check collected multiplication against the matrix model.

    Maps x_{2j} to the matrix with y = e_j, x_{2j+1} to the matrix with
    x = e_j, and z to the matrix with z = 1, then tests that the map turns
    group multiplication into matrix multiplication.  Exhaustive over all
    pairs when the group has at most 3^5 elements, sampled otherwise.  The
    model matches the exponent-p descriptor; any corruption of the pairing
    matrix (or a non-zero power vector) makes some pair disagree.
    """
    p = require_prime_modulus(p)
    desc = descriptor if descriptor is not None else GroupDescriptor.exponent_p(b, p)
    if desc.rank != 2 * b or desc.p != p:
        raise ValueError("descriptor shape does not match (b, p)")
    if desc.order <= 243:
        elems = list(desc.iter_elements())
        images = {g: _heis_image(g, b) for g in elems}
        for g in elems:
            img_g = images[g]
            for h in elems:
                if images[g * h] != img_g * images[h]:
                    return False
        return True
    rng = random.Random(seed)

    def rand_elem() -> GroupElement:
        t = tuple(rng.randrange(p) for _ in range(desc.rank))
        return GroupElement(desc, t, rng.randrange(p))

    for _ in range(samples):
        g = rand_elem()
        h = rand_elem()
        if _heis_image(g * h, b) != _heis_image(g, b) * _heis_image(h, b):
            return False
    return True
