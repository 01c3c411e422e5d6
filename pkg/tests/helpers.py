"""Shared helpers for the test suite: random data and independent oracles."""

from __future__ import annotations

import random

from dkodaira import FieldMatrix, GroupDescriptor, KodairaStructure


def random_element(desc: GroupDescriptor, rng: random.Random):
    t = [rng.randrange(desc.p) for _ in range(desc.rank)]
    return desc.element(t, rng.randrange(desc.p))


def random_structure(desc: GroupDescriptor, b: int, n: int, rng: random.Random, central_z=False):
    elems = [random_element(desc, rng) for _ in range(4 * b)]
    if central_z:
        z = desc.central(rng.randrange(1, desc.p))
    else:
        z = random_element(desc, rng)
    return KodairaStructure(
        desc,
        b,
        n,
        tuple(elems[0:b]),
        tuple(elems[b : 2 * b]),
        tuple(elems[2 * b : 3 * b]),
        tuple(elems[3 * b : 4 * b]),
        z,
    )


def transplant(s: KodairaStructure, desc: GroupDescriptor) -> KodairaStructure:
    """Rebind all tuple elements, exponent for exponent, to a new descriptor."""
    f = lambda g: desc.element(g.t, g.s)
    return KodairaStructure(
        desc,
        s.b,
        s.n,
        tuple(map(f, s.r1)),
        tuple(map(f, s.t1)),
        tuple(map(f, s.r2)),
        tuple(map(f, s.t2)),
        f(s.z),
    )


def cofactor_det(rows: list[list[int]], p: int) -> int:
    """Determinant by Laplace expansion along the first row; test oracle only."""
    n = len(rows)
    if n == 0:
        return 1 % p
    if n == 1:
        return rows[0][0] % p
    total = 0
    for j in range(n):
        a = rows[0][j]
        if a % p == 0:
            continue
        minor = [[rows[i][k] for k in range(n) if k != j] for i in range(1, n)]
        sign = 1 if j % 2 == 0 else -1
        total += sign * a * cofactor_det(minor, p)
    return total % p


def random_antisymmetric(rank: int, p: int, rng: random.Random) -> FieldMatrix:
    rows = [[0] * rank for _ in range(rank)]
    for i in range(rank):
        for j in range(i + 1, rank):
            v = rng.randrange(p)
            rows[i][j] = v
            rows[j][i] = -v % p
    return FieldMatrix.from_rows(rows, p)


def random_nonsingular_antisymmetric(rank: int, p: int, rng: random.Random) -> FieldMatrix:
    while True:
        m = random_antisymmetric(rank, p, rng)
        if m.determinant().value:
            return m


def random_singular_antisymmetric(rank: int, p: int, rng: random.Random) -> FieldMatrix:
    """u v^T - v u^T has rank at most 2, hence is singular for rank >= 3."""
    assert rank >= 3
    u = [rng.randrange(p) for _ in range(rank)]
    v = [rng.randrange(p) for _ in range(rank)]
    rows = [[(u[i] * v[j] - v[i] * u[j]) % p for j in range(rank)] for i in range(rank)]
    m = FieldMatrix.from_rows(rows, p)
    assert m.determinant().value == 0
    return m
