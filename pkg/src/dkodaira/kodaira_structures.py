"""Diagonal double Kodaira structures: verification and constructions.

A structure of type (b, n) on a finite group is an ordered tuple of 4b+1
elements r_{1j}, t_{1j}, r_{2j}, t_{2j} (j = 1..b) and z with o(z) = n that
generates the group and satisfies a fixed relation catalog.  Two verifiers
are provided:

* `verify_full` evaluates the general relation catalog literally, including
  the conjugation corrections that matter when z is not central;
* `verify_class2` evaluates the simplified catalog that is equivalent
  whenever every commutator of the ambient group is central (always the case
  for descriptors built by `pcgroup`).

Relation identifiers (the `relation_id` strings attached to violations):

    surface.1, surface.2            the two long surface relations
    r1j.r2k.lt / .eq / .gt          [r_{1j}, r_{2k}] cases j<k, j=k, j>k
    r1j.t2k.lt / .eq / .gt          [r_{1j}, t_{2k}] cases
    t1j.r2k.lt / .eq / .gt          [t_{1j}, r_{2k}] cases
    t1j.t2k.lt / .eq / .gt          [t_{1j}, t_{2k}] cases
    r1j.z, t1j.z                    conjugation of z by first-half elements
    central.r1j / .t1j / .r2j / .t2j   centrality of z (simplified catalog)
    r1j.r2k, r1j.t2k, t1j.r2k, t1j.t2k  cross pairings (simplified catalog)

Concrete indices are appended in brackets, e.g. "r1j.t2k.eq[j=1,k=1]".
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from enum import Enum
from typing import Iterator

from .pcgroup import (
    DEFAULT_CLOSURE_CAP,
    GroupDescriptor,
    GroupElement,
    center_rank,
    paired_antisymmetric_matrix,
    span_closure,
    subgroup_closure,
)
from .zpfield import FieldMatrix, FieldVector, require_prime_modulus

__all__ = [
    "KodairaStructure",
    "LambdaMuChoice",
    "Strength",
    "VerificationReport",
    "Violation",
    "build_omega",
    "class2_pairing",
    "class2_pairing_check",
    "construct_nonstrong",
    "construct_strong",
    "enumerate_lambda_mu",
    "involution_dual",
    "relation_violations_class2",
    "relation_violations_full",
    "select_lambda_mu",
    "structure_from_json_dict",
    "structure_to_json_dict",
    "report_to_json_dict",
    "verify_class2",
    "verify_full",
]


@dataclass(frozen=True)
class KodairaStructure:
    """An ordered 4b+1 tuple of group elements with a declared type (b, n)."""

    descriptor: GroupDescriptor
    b: int
    n: int
    r1: tuple[GroupElement, ...]
    t1: tuple[GroupElement, ...]
    r2: tuple[GroupElement, ...]
    t2: tuple[GroupElement, ...]
    z: GroupElement

    def __post_init__(self):
        if self.b < 2:
            raise ValueError("structures need b >= 2")
        if self.n < 2:
            raise ValueError("structures need n >= 2")
        for family in (self.r1, self.t1, self.r2, self.t2):
            if len(family) != self.b:
                raise ValueError(f"each generator family must have length b = {self.b}")
        for g in self.tuple_elements():
            if g.descriptor != self.descriptor:
                raise ValueError("all elements must be bound to the structure descriptor")

    def tuple_elements(self) -> tuple[GroupElement, ...]:
        """All 4b+1 elements, interleaved (r11, t11, ..., r2b, t2b, z)."""
        out: list[GroupElement] = []
        for r, t in ((self.r1, self.t1), (self.r2, self.t2)):
            for j in range(self.b):
                out.append(r[j])
                out.append(t[j])
        out.append(self.z)
        return tuple(out)


class Strength(Enum):
    STRONG = "Strong"
    NON_STRONG = "NonStrong"
    UNKNOWN = "Unknown"


@dataclass(frozen=True)
class Violation:
    relation_id: str
    lhs: GroupElement
    rhs: GroupElement


@dataclass(frozen=True)
class VerificationReport:
    passed: bool
    violations: tuple[Violation, ...]
    strength: Strength
    k1_order: int | None
    k2_order: int | None
    z_order: int
    expected_z_order: int
    generates: bool
    diagnostics: tuple[str, ...] = ()


def _relations_full(s: KodairaStructure) -> Iterator[tuple[str, GroupElement, GroupElement]]:
    b = s.b
    z = s.z
    zi = z.inverse()
    r1, t1, r2, t2 = s.r1, s.t1, s.r2, s.t2
    e = s.descriptor.identity()

    acc = e
    for j in reversed(range(b)):
        acc = acc * r1[j].inverse().commutator(t1[j].inverse()) * t1[j].inverse()
    for j in range(b):
        acc = acc * t1[j]
    yield "surface.1", acc, z

    acc = e
    for j in range(b):
        acc = acc * r2[j].inverse().commutator(t2[j]) * t2[j]
    for j in reversed(range(b)):
        acc = acc * t2[j].inverse()
    yield "surface.2", acc, zi

    for j in range(b):
        J = j + 1
        for k in range(b):
            K = k + 1
            if j < k:
                yield f"r1j.r2k.lt[j={J},k={K}]", r1[j].commutator(r2[k]), e
                yield f"r1j.t2k.lt[j={J},k={K}]", r1[j].commutator(t2[k]), e
                yield f"t1j.r2k.lt[j={J},k={K}]", t1[j].commutator(r2[k]), e
                yield f"t1j.t2k.lt[j={J},k={K}]", t1[j].commutator(t2[k]), e
            elif j == k:
                yield f"r1j.r2k.eq[j={J}]", r1[j].commutator(r2[j]), e
                yield f"r1j.t2k.eq[j={J},k={K}]", r1[j].commutator(t2[j]), zi
                yield (
                    f"t1j.r2k.eq[j={J},k={K}]",
                    t1[j].commutator(r2[j]),
                    t2[j].inverse() * z * t2[j],
                )
                yield (
                    f"t1j.t2k.eq[j={J},k={K}]",
                    t1[j].commutator(t2[j]),
                    t2[j].inverse().commutator(z),
                )
            else:
                yield (
                    f"r1j.r2k.gt[j={J},k={K}]",
                    r1[j].commutator(r2[k]),
                    zi * r2[k] * r2[j].inverse() * z * r2[j] * r2[k].inverse(),
                )
                yield (
                    f"r1j.t2k.gt[j={J},k={K}]",
                    r1[j].commutator(t2[k]),
                    zi.commutator(t2[k]),
                )
                yield (
                    f"t1j.r2k.gt[j={J},k={K}]",
                    t1[j].commutator(r2[k]),
                    t2[j].inverse().commutator(z),
                )
                yield (
                    f"t1j.t2k.gt[j={J},k={K}]",
                    t1[j].commutator(t2[k]),
                    t2[j].inverse() * z * t2[j] * zi * t2[k] * z
                    * t2[j].inverse() * zi * t2[j] * t2[k].inverse(),
                )
        yield f"r1j.z[j={J}]", r1[j].commutator(z), r2[j].inverse().commutator(z)
        yield f"t1j.z[j={J}]", t1[j].commutator(z), t2[j].inverse().commutator(z)


def _relations_class2(s: KodairaStructure) -> Iterator[tuple[str, GroupElement, GroupElement]]:
    b = s.b
    z = s.z
    zi = z.inverse()
    r1, t1, r2, t2 = s.r1, s.t1, s.r2, s.t2
    e = s.descriptor.identity()

    for j in range(b):
        J = j + 1
        yield f"central.r1j[j={J}]", r1[j].commutator(z), e
        yield f"central.t1j[j={J}]", t1[j].commutator(z), e
        yield f"central.r2j[j={J}]", r2[j].commutator(z), e
        yield f"central.t2j[j={J}]", t2[j].commutator(z), e

    acc = e
    for j in reversed(range(b)):
        acc = acc * r1[j].inverse().commutator(t1[j].inverse())
    yield "surface.1", acc, z

    acc = e
    for j in range(b):
        acc = acc * r2[j].inverse().commutator(t2[j])
    yield "surface.2", acc, zi

    for j in range(b):
        J = j + 1
        for k in range(b):
            K = k + 1
            yield f"r1j.r2k[j={J},k={K}]", r1[j].commutator(r2[k]), e
            yield f"r1j.t2k[j={J},k={K}]", r1[j].commutator(t2[k]), zi if j == k else e
            yield f"t1j.r2k[j={J},k={K}]", t1[j].commutator(r2[k]), z if j == k else e
            yield f"t1j.t2k[j={J},k={K}]", t1[j].commutator(t2[k]), e


def _collect_violations(relations) -> tuple[Violation, ...]:
    return tuple(Violation(rid, lhs, rhs) for rid, lhs, rhs in relations if lhs != rhs)


def relation_violations_full(s: KodairaStructure) -> tuple[Violation, ...]:
    """Violated relations of the general catalog, by literal group arithmetic."""
    return _collect_violations(_relations_full(s))


def relation_violations_class2(s: KodairaStructure) -> tuple[Violation, ...]:
    """Violated relations of the simplified catalog for class-2 groups."""
    return _collect_violations(_relations_class2(s))


def _subgroup_order(gens, cap: int) -> int | None:
    try:
        return span_closure(gens).order
    except Exception:
        result = subgroup_closure(gens, cap=cap, keep_elements=False)
        return result.order


def _finalize(s: KodairaStructure, violations: tuple[Violation, ...], cap: int) -> VerificationReport:
    z_order = s.z.order()
    group_order = s.descriptor.order
    full = _subgroup_order(list(s.tuple_elements()), cap)
    generates = full == group_order
    k1 = _subgroup_order([*s.r1, *s.t1, s.z], cap)
    k2 = _subgroup_order([*s.r2, *s.t2, s.z], cap)
    diagnostics: tuple[str, ...] = ()
    if k1 is None or k2 is None:
        strength = Strength.UNKNOWN
        diagnostics = ("closure-overflow",)
    elif k1 == k2 == group_order:
        strength = Strength.STRONG
    else:
        strength = Strength.NON_STRONG
    passed = not violations and z_order == s.n and generates
    return VerificationReport(
        passed=passed,
        violations=violations,
        strength=strength,
        k1_order=k1,
        k2_order=k2,
        z_order=z_order,
        expected_z_order=s.n,
        generates=generates,
        diagnostics=diagnostics,
    )


def verify_full(s: KodairaStructure, cap: int = DEFAULT_CLOSURE_CAP) -> VerificationReport:
    """Check the general relation catalog plus o(z) = n and generation."""
    return _finalize(s, relation_violations_full(s), cap)


def verify_class2(s: KodairaStructure, cap: int = DEFAULT_CLOSURE_CAP) -> VerificationReport:
    """Check the simplified catalog; equivalent to `verify_full` in class 2."""
    return _finalize(s, relation_violations_class2(s), cap)


def involution_dual(s: KodairaStructure) -> KodairaStructure:
    """Swap the two halves of the tuple: z -> z^-1, t_{1j} <-> t_{2,b+1-j}^-1,
    r_{1j} <-> r_{2,b+1-j}.  Self-inverse, and it exchanges K_1 with K_2."""
    b = s.b
    return KodairaStructure(
        descriptor=s.descriptor,
        b=b,
        n=s.n,
        r1=tuple(s.r2[b - 1 - j] for j in range(b)),
        t1=tuple(s.t2[b - 1 - j].inverse() for j in range(b)),
        r2=tuple(s.r1[b - 1 - j] for j in range(b)),
        t2=tuple(s.t1[b - 1 - j].inverse() for j in range(b)),
        z=s.z.inverse(),
    )


def _standard_descriptor(b: int, p: int, variant: str) -> GroupDescriptor:
    v = variant.upper()
    if v == "H":
        return GroupDescriptor.exponent_p(b, p)
    if v == "G":
        return GroupDescriptor.exponent_p_squared(b, p)
    raise ValueError(f"variant must be 'H' or 'G', got {variant!r}")


def construct_strong(b: int, p: int, variant: str = "H") -> KodairaStructure:
    """Strong structure of type (b, p) on an extra-special group of order
    p^(2b+1); requires p | b+1.

    Both tuple halves are the same standard generators, so each surface
    relation evaluates to z^(-b) = z resp. z^b = z^(-1), which is exactly the
    divisibility condition.
    """
    p = require_prime_modulus(p)
    if b < 2:
        raise ValueError("b must be at least 2")
    if (b + 1) % p:
        raise ValueError(f"the strong construction needs p | b+1; got b={b}, p={p}")
    desc = _standard_descriptor(b, p, variant)
    r = tuple(desc.generator(2 * j) for j in range(b))
    t = tuple(desc.generator(2 * j + 1) for j in range(b))
    return KodairaStructure(desc, b, p, r, t, r, t, desc.central(1))


@dataclass(frozen=True)
class LambdaMuChoice:
    """Weight vectors with non-zero entries, unit sums, and lam*mu != 1."""

    lam: FieldVector
    mu: FieldVector

    def __post_init__(self):
        p = self.lam.modulus
        if self.mu.modulus != p:
            raise ValueError("weight vectors must share one modulus")
        if len(self.lam) != len(self.mu) or len(self.lam) < 2:
            raise ValueError("weight vectors must have equal length >= 2")
        lam, mu = self.lam.entries, self.mu.entries
        if not all(lam) or not all(mu):
            raise ValueError("weight entries must be non-zero")
        if sum(lam) % p != 1 or sum(mu) % p != 1:
            raise ValueError("weights must sum to 1")
        if any(a * c % p == 1 for a, c in zip(lam, mu)):
            raise ValueError("componentwise products must avoid 1")

    @property
    def modulus(self) -> int:
        return self.lam.modulus


def _weight_vectors(b: int, p: int) -> Iterator[tuple[int, ...]]:
    # Free entries scan ascending residues; the last entry is forced by the
    # unit-sum condition and must stay non-zero.
    for prefix in itertools.product(range(1, p), repeat=b - 1):
        last = (1 - sum(prefix)) % p
        if last:
            yield prefix + (last,)


def _mu_vectors_for(lam: tuple[int, ...], b: int, p: int) -> Iterator[tuple[int, ...]]:
    for prefix in itertools.product(range(1, p), repeat=b - 1):
        if any(prefix[j] * lam[j] % p == 1 for j in range(b - 1)):
            continue
        last = (1 - sum(prefix)) % p
        if last and last * lam[b - 1] % p != 1:
            yield prefix + (last,)


def select_lambda_mu(b: int, p: int) -> LambdaMuChoice | None:
    """First valid weight pair in ascending scan order, or None.

    For p <= 3 no valid pair exists: mod 2 the only non-zero residue has
    product 1 with itself, and mod 3 non-zero x, y with xy != 1 force
    y = -x, which makes the unit sums impossible.
    """
    p = require_prime_modulus(p)
    if b < 2:
        raise ValueError("b must be at least 2")
    if p <= 3:
        return None
    for lam in _weight_vectors(b, p):
        for mu in _mu_vectors_for(lam, b, p):
            return LambdaMuChoice(FieldVector(lam, p), FieldVector(mu, p))
    return None


def enumerate_lambda_mu(b: int, p: int) -> list[LambdaMuChoice]:
    """Every valid weight pair, in scan order.  Bounded to p^(2b) <= 10^6."""
    p = require_prime_modulus(p)
    if b < 2:
        raise ValueError("b must be at least 2")
    if p ** (2 * b) > 10**6:
        raise ValueError(f"enumeration is limited to p^(2b) <= 10^6, got p={p}, b={b}")
    out = []
    for lam in _weight_vectors(b, p):
        for mu in _mu_vectors_for(lam, b, p):
            out.append(LambdaMuChoice(FieldVector(lam, p), FieldVector(mu, p)))
    return out


def build_omega(lam: FieldVector, mu: FieldVector) -> FieldMatrix:
    """The 4b x 4b anti-symmetric block matrix ((L, J), (J, M)).

    L and M pair each (r, t) couple of one half with weight lam_j resp.
    mu_j; J pairs the halves with weight -1.  Its determinant is the square
    of the product of (1 - lam_j mu_j), so valid weight choices make it
    non-singular.  Weight vectors are taken as-is, so degenerate inputs are
    allowed for building singular matrices on purpose.
    """
    p = lam.modulus
    if mu.modulus != p:
        raise ValueError("weight vectors must share one modulus")
    if len(lam) != len(mu):
        raise ValueError("weight vectors must have equal length")
    b = len(lam)
    mat_l = paired_antisymmetric_matrix(lam.entries, p)
    mat_m = paired_antisymmetric_matrix(mu.entries, p)
    mat_j = paired_antisymmetric_matrix([-1] * b, p)
    return FieldMatrix.from_blocks([[mat_l, mat_j], [mat_j, mat_m]])


def construct_nonstrong(b: int, p: int, variant: str = "H") -> KodairaStructure:
    """Non-strong structure of type (b, p) on an extra-special group of order
    p^(4b+1); requires p >= 5.

    Generators 0..2b-1 of the underlying descriptor carry the first half of
    the tuple interleaved as (r_{11}, t_{11}, ..., r_{1b}, t_{1b}), and
    generators 2b..4b-1 the second half, so the weight blocks of the pairing
    matrix land exactly on the tuple couples.  Both subgroups K_1 and K_2
    then have order p^(2b+1) and index p^(2b).
    """
    p = require_prime_modulus(p)
    if b < 2:
        raise ValueError("b must be at least 2")
    if p < 5:
        raise ValueError(
            "the non-strong construction needs p >= 5; no valid weight vectors exist below"
        )
    choice = select_lambda_mu(b, p)
    if choice is None:
        raise ValueError(f"no weight vectors found for b={b}, p={p}")
    omega = build_omega(choice.lam, choice.mu)
    rank = 4 * b
    v = variant.upper()
    if v == "H":
        eps = FieldVector.zeros(rank, p)
    elif v == "G":
        raw = [0] * rank
        raw[-2] = raw[-1] = 1
        eps = FieldVector(tuple(raw), p)
    else:
        raise ValueError(f"variant must be 'H' or 'G', got {variant!r}")
    desc = GroupDescriptor(omega, eps)
    r1 = tuple(desc.generator(2 * j) for j in range(b))
    t1 = tuple(desc.generator(2 * j + 1) for j in range(b))
    r2 = tuple(desc.generator(2 * b + 2 * j) for j in range(b))
    t2 = tuple(desc.generator(2 * b + 2 * j + 1) for j in range(b))
    return KodairaStructure(desc, b, p, r1, t1, r2, t2, desc.central(1))


def class2_pairing(s: KodairaStructure) -> FieldMatrix:
    """Commutator pairing matrix of the 4b non-central tuple elements.

    Entry (i, j) is the exponent c with [u_i, u_j] = z^c, for the tuple
    order (r_{11}, t_{11}, ..., r_{1b}, t_{1b}, r_{21}, ..., t_{2b}).  Needs
    a descriptor with center of order p and a z that is a non-trivial
    central element, otherwise the exponents are not defined.
    """
    desc = s.descriptor
    order, _ = center_rank(desc)
    if order != desc.p:
        raise ValueError(f"pairing reduction needs a center of order p, got order {order}")
    z = s.z
    if any(z.t) or z.s == 0:
        raise ValueError("pairing reduction needs z to be a non-trivial central element")
    zeta_inv = pow(z.s, -1, desc.p)
    elems = s.tuple_elements()[:-1]
    rows = []
    for u in elems:
        row = []
        for v in elems:
            c = u.commutator(v)
            if any(c.t):
                raise ValueError("commutator is not central; pairing undefined")
            row.append(c.s * zeta_inv % desc.p)
        rows.append(row)
    return FieldMatrix.from_rows(rows, desc.p)


def class2_pairing_check(s: KodairaStructure) -> bool:
    """Decide the simplified relation set from the pairing matrix alone.

    Checks the cross-half pairings against the Kronecker pattern and the two
    diagonal exponent sums against the surface relations.  Returns False
    when the pairing matrix is undefined for the tuple.
    """
    try:
        pairing = class2_pairing(s)
    except ValueError:
        return False
    b = s.b
    p = s.descriptor.p
    m = pairing.entries

    def idx(half: int, kind: int, j: int) -> int:
        # kind 0 = r, 1 = t
        return 2 * b * half + 2 * j + kind

    for j in range(b):
        for k in range(b):
            delta = 1 if j == k else 0
            if m[idx(0, 0, j)][idx(1, 0, k)] != 0:
                return False
            if m[idx(0, 1, j)][idx(1, 1, k)] != 0:
                return False
            if m[idx(0, 0, j)][idx(1, 1, k)] != -delta % p:
                return False
            if m[idx(0, 1, j)][idx(1, 0, k)] != delta:
                return False
    if sum(m[idx(0, 0, j)][idx(0, 1, j)] for j in range(b)) % p != 1:
        return False
    if sum(m[idx(1, 0, j)][idx(1, 1, j)] for j in range(b)) % p != 1:
        return False
    return True


def structure_to_json_dict(s: KodairaStructure) -> dict:
    return {
        "descriptor": s.descriptor.to_json_dict(),
        "b": s.b,
        "n": s.n,
        "r1": [g.to_json_dict() for g in s.r1],
        "t1": [g.to_json_dict() for g in s.t1],
        "r2": [g.to_json_dict() for g in s.r2],
        "t2": [g.to_json_dict() for g in s.t2],
        "z": s.z.to_json_dict(),
    }


def structure_from_json_dict(data: dict) -> KodairaStructure:
    try:
        desc = GroupDescriptor.from_json_dict(data["descriptor"])
        b = int(data["b"])
        n = int(data["n"])
        families = {
            key: tuple(GroupElement.from_json_dict(desc, item) for item in data[key])
            for key in ("r1", "t1", "r2", "t2")
        }
        z = GroupElement.from_json_dict(desc, data["z"])
    except (KeyError, TypeError) as exc:
        raise ValueError(f"structure object is missing or mistypes a field: {exc}")
    return KodairaStructure(desc, b, n, families["r1"], families["t1"], families["r2"], families["t2"], z)


def report_to_json_dict(report: VerificationReport) -> dict:
    return {
        "passed": report.passed,
        "violations": [
            {
                "relation": v.relation_id,
                "lhs": v.lhs.to_json_dict(),
                "rhs": v.rhs.to_json_dict(),
            }
            for v in report.violations
        ],
        "strength": report.strength.value,
        "k1_order": report.k1_order,
        "k2_order": report.k2_order,
        "z_order": report.z_order,
        "expected_z_order": report.expected_z_order,
        "generates": report.generates,
        "diagnostics": list(report.diagnostics),
    }
