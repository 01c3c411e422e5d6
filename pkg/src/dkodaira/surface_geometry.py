"""Exact numerical invariants of diagonal double Kodaira fibrations.

For a structure of type (b, n) on a group of order |G| with subgroup indices
m_1, m_2, the associated fibred surface has

    c_1^2 = |G| (2b-2) (4b-4 + 4f - f^2)        with f = 1 - 1/n,
    c_2   = |G| (2b-2) (2b-2 + f),
    sigma = (c_1^2 - 2 c_2) / 3,
    slope = c_1^2 / c_2 = 2 + (2f - f^2) / (2b-2 + f),

base genera b_i = 1 + m_i (b-1), and fibre genera from
2 g_i - 2 = (|G| / m_i) (2b-2 + f).  Everything here is big-integer or
Fraction arithmetic; a combination that fails to produce integers where
integers are required is rejected as inconsistent input.

The slope feasibility test inverts the slope identity: nu = 2 + s forces
(2bs - s - 1) n^2 - s n + 1 = 0, so s is attainable in type (b, n) only if
the discriminant (s+2)^2 - 8bs is the square of a rational and the quadratic
has an integer root n >= 2.  Chaining with s < 1 gives the exact bound
(s-6)^2 > 32, the polynomial form of s < 6 - 4*sqrt(2).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt
from typing import Iterable, NamedTuple

from .zpfield import is_prime

__all__ = [
    "FeasibilityVerdict",
    "FeasibleSlope",
    "FibrationData",
    "KappaRow",
    "SlopeRow",
    "SlopeTable",
    "SurfaceInvariants",
    "compute_invariants",
    "distinct_prime_factors",
    "feasibility_check",
    "feasibility_scan",
    "invariants_for",
    "kappa_lower_bound_table",
    "omega_prime_factors",
    "rational_sqrt",
    "slope_table",
]


@dataclass(frozen=True)
class FibrationData:
    """Order, type, and subgroup indices behind one fibred surface."""

    group_order: int
    b: int
    n: int
    m1: int
    m2: int

    def __post_init__(self):
        if self.group_order < 1:
            raise ValueError("group order must be positive")
        if self.b < 2:
            raise ValueError("b must be at least 2")
        if self.n < 1:
            raise ValueError("n must be at least 1")
        for m in (self.m1, self.m2):
            if m < 1 or self.group_order % m:
                raise ValueError(f"subgroup index {m} must divide the group order")


@dataclass(frozen=True)
class SurfaceInvariants:
    c1sq: int
    c2: int
    sigma: int
    slope: Fraction
    b1: int
    b2: int
    g1: int
    g2: int
    frak_n: Fraction

    def to_json_dict(self) -> dict:
        return {
            "c1sq": self.c1sq,
            "c2": self.c2,
            "sigma": self.sigma,
            "slope": str(self.slope),
            "b1": self.b1,
            "b2": self.b2,
            "g1": self.g1,
            "g2": self.g2,
            "frak_n": str(self.frak_n),
        }


def _as_int(value: Fraction, what: str) -> int:
    if value.denominator != 1:
        raise ValueError(f"{what} = {value} is not an integer; inconsistent input data")
    return value.numerator


def compute_invariants(data: FibrationData, allow_formal_n1: bool = False) -> SurfaceInvariants:
    """Exact invariants for the given data; n = 1 only behind the formal flag.

    The degenerate n = 1 row (branching quantity 0, sigma = 0, slope = 2) is
    useful for checking the formulas but does not correspond to a structure,
    which needs n >= 2.
    """
    if data.n == 1 and not allow_formal_n1:
        raise ValueError("n must be at least 2; pass allow_formal_n1=True for the formal row")
    order = data.group_order
    b = data.b
    f = 1 - Fraction(1, data.n)
    c1sq = _as_int(order * (2 * b - 2) * (4 * b - 4 + 4 * f - f * f), "c1^2")
    c2 = _as_int(order * (2 * b - 2) * (2 * b - 2 + f), "c2")
    sigma = _as_int(Fraction(c1sq - 2 * c2, 3), "sigma")
    slope = Fraction(c1sq, c2)
    b1 = 1 + data.m1 * (b - 1)
    b2 = 1 + data.m2 * (b - 1)
    genera = []
    for m in (data.m1, data.m2):
        doubled = _as_int(Fraction(order, m) * (2 * b - 2 + f), "2g - 2")
        if doubled % 2:
            raise ValueError(f"2g - 2 = {doubled} is odd; inconsistent input data")
        genera.append(doubled // 2 + 1)
    return SurfaceInvariants(c1sq, c2, sigma, slope, b1, b2, genera[0], genera[1], f)


def invariants_for(group_order: int, b: int, n: int, m1: int, m2: int) -> SurfaceInvariants:
    return compute_invariants(FibrationData(group_order, b, n, m1, m2))


class SlopeRow(NamedTuple):
    p: int
    slope: Fraction
    sigma: int


@dataclass(frozen=True)
class SlopeTable:
    """Slope and signature of the non-strong family over a fixed b."""

    b: int
    rows: tuple[SlopeRow, ...]
    strictly_decreasing_from_7: bool

    def to_json_dict(self) -> dict:
        return {
            "b": self.b,
            "rows": [
                {"p": r.p, "slope": str(r.slope), "sigma": r.sigma} for r in self.rows
            ],
            "strictly_decreasing_from_7": self.strictly_decreasing_from_7,
        }


def slope_table(b: int, primes: Iterable[int]) -> SlopeTable:
    """One row per prime p: the surface on the group of order p^(4b+1) with
    n = p and both subgroup indices p^(2b)."""
    ps = sorted(set(int(p) for p in primes))
    for p in ps:
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
    rows = []
    for p in ps:
        inv = invariants_for(p ** (4 * b + 1), b, p, p ** (2 * b), p ** (2 * b))
        rows.append(SlopeRow(p, inv.slope, inv.sigma))
    tail = [r.slope for r in rows if r.p >= 7]
    decreasing = all(a > b_ for a, b_ in zip(tail, tail[1:]))
    return SlopeTable(b, tuple(rows), decreasing)


def rational_sqrt(q: Fraction) -> Fraction | None:
    """Exact square root of a non-negative rational, or None."""
    if q < 0:
        return None
    num, den = q.numerator, q.denominator
    rn, rd = isqrt(num), isqrt(den)
    if rn * rn != num or rd * rd != den:
        return None
    return Fraction(rn, rd)


def _primitive_quadratic(a: Fraction, b: Fraction, c: Fraction) -> tuple[int, int, int]:
    scale = a.denominator
    for q in (b, c):
        scale = scale * q.denominator // gcd(scale, q.denominator)
    ints = [int(q * scale) for q in (a, b, c)]
    g = 0
    for v in ints:
        g = gcd(g, v)
    if g:
        ints = [v // g for v in ints]
    lead = next((v for v in ints if v), 0)
    if lead < 0:
        ints = [-v for v in ints]
    return tuple(ints)  # type: ignore[return-value]


@dataclass(frozen=True)
class FeasibilityVerdict:
    """Whether slope 2 + s is attainable by a type-(b, n) surface."""

    b: int
    s: Fraction
    feasible: bool
    admissible_n: tuple[int, ...]
    discriminant: Fraction
    quadratic: tuple[int, int, int]
    within_slope_bound: bool

    def to_json_dict(self) -> dict:
        return {
            "b": self.b,
            "s": str(self.s),
            "feasible": self.feasible,
            "admissible_n": list(self.admissible_n),
            "discriminant": str(self.discriminant),
            "quadratic": list(self.quadratic),
            "within_slope_bound": self.within_slope_bound,
        }


def feasibility_check(b: int, s: Fraction) -> FeasibilityVerdict:
    """Exact feasibility of slope excess s > 0 at base genus b."""
    s = Fraction(s)
    if s <= 0:
        raise ValueError("the slope excess s must be positive")
    if b < 2:
        raise ValueError("b must be at least 2")
    a = 2 * b * s - s - 1
    disc = (s + 2) ** 2 - 8 * b * s
    root = rational_sqrt(disc)
    admissible: list[int] = []
    if root is not None:
        if a == 0:
            # Linear case: -s n + 1 = 0.
            candidates = [Fraction(1, 1) / s]
        else:
            candidates = [(s + root) / (2 * a), (s - root) / (2 * a)]
        for cand in candidates:
            if cand.denominator == 1 and cand >= 2:
                n = int(cand)
                if n not in admissible:
                    admissible.append(n)
    admissible.sort()
    within = s < 1 and (s - 6) ** 2 > 32
    return FeasibilityVerdict(
        b=b,
        s=s,
        feasible=root is not None and bool(admissible),
        admissible_n=tuple(admissible),
        discriminant=disc,
        quadratic=_primitive_quadratic(a, -s, Fraction(1)),
        within_slope_bound=within,
    )


class FeasibleSlope(NamedTuple):
    b: int
    s: Fraction
    n: int


def feasibility_scan(b_max: int, denominator_max: int) -> list[FeasibleSlope]:
    """All feasible (b, s, n) with 2 <= b <= b_max and s = u/v in lowest
    terms, 0 < s < 1, v <= denominator_max.

    Every emitted row is re-checked against the exact slope bound
    ((s-6)^2 > 32 with s < 1); a violation would falsify the feasibility
    analysis, so it is treated as an internal error.
    """
    if b_max < 2 or denominator_max < 2:
        raise ValueError("need b_max >= 2 and denominator_max >= 2")
    rows: list[FeasibleSlope] = []
    for den in range(2, denominator_max + 1):
        for num in range(1, den):
            if gcd(num, den) != 1:
                continue
            s = Fraction(num, den)
            for b in range(2, b_max + 1):
                verdict = feasibility_check(b, s)
                if verdict.feasible:
                    if not verdict.within_slope_bound:
                        raise RuntimeError(
                            f"feasible s={s} escaped the exact slope bound; impossible"
                        )
                    rows.extend(FeasibleSlope(b, s, n) for n in verdict.admissible_n)
    rows.sort()
    return rows


def distinct_prime_factors(m: int) -> list[int]:
    """Distinct prime factors by trial division; inputs up to 2^63."""
    m = int(m)
    if m < 1 or m >= 2**63:
        raise ValueError("input must satisfy 1 <= m < 2^63")
    out = []
    d = 2
    while d * d <= m:
        if m % d == 0:
            out.append(d)
            while m % d == 0:
                m //= d
        d += 1 if d == 2 else 2
    if m > 1:
        out.append(m)
    return out


def omega_prime_factors(m: int) -> int:
    """Number of distinct prime factors of m (0 for m = 1)."""
    return len(distinct_prime_factors(m))


class KappaRow(NamedTuple):
    b: int
    omega: int
    witnesses: tuple[tuple[int, int], ...]  # (prime, signature)


def kappa_lower_bound_table(b_min: int, b_max: int) -> list[KappaRow]:
    """For each b, the primes p | b+1 and the signature of the strong-type
    surface on the group of order p^(2b+1) with n = p and m_1 = m_2 = 1.

    Each prime certifies one fibration over a fixed genus-b curve, and the
    signatures are pairwise distinct (the signature grows strictly with p at
    fixed b), so the number of fibrations is at least the number of primes.
    """
    if b_min < 2 or b_max < b_min:
        raise ValueError("need 2 <= b_min <= b_max")
    rows = []
    for b in range(b_min, b_max + 1):
        primes = distinct_prime_factors(b + 1)
        witnesses = []
        for p in primes:
            inv = invariants_for(p ** (2 * b + 1), b, p, 1, 1)
            witnesses.append((p, inv.sigma))
        rows.append(KappaRow(b, len(primes), tuple(witnesses)))
    return rows
