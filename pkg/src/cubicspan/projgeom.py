"""Points, lines and planes of P^3 over a finite field.

Points and planes are 4-tuples of element codes whose first nonzero entry is
1. A line is the pair of rows of its 2x4 basis in reduced row-echelon form,
which is unique per line and therefore usable as a dict key.
"""
from __future__ import annotations

from functools import lru_cache
from itertools import product
from typing import Sequence

import numpy as np

from .gf import FieldSpec

ProjPoint = tuple[int, int, int, int]
ProjPlane = tuple[int, int, int, int]
ProjLine = tuple[ProjPoint, ProjPoint]
P1Point = tuple[int, int]


def normalize(field: FieldSpec, v: Sequence[int]) -> tuple[int, ...]:
    """Scale v so its first nonzero entry is 1."""
    for x in v:
        if x:
            if x == 1:
                return tuple(v)
            c = field.inv(x)
            return tuple(field.mul(c, y) for y in v)
    raise ValueError("the zero vector has no projective class")


def rref(field: FieldSpec, rows: Sequence[Sequence[int]]) -> list[tuple[int, ...]]:
    """Reduced row-echelon form, zero rows dropped."""
    m = [list(r) for r in rows]
    if not m:
        return []
    ncols = len(m[0])
    out_rows = 0
    for col in range(ncols):
        piv = next((r for r in range(out_rows, len(m)) if m[r][col]), None)
        if piv is None:
            continue
        m[out_rows], m[piv] = m[piv], m[out_rows]
        c = field.inv(m[out_rows][col])
        m[out_rows] = [field.mul(c, x) for x in m[out_rows]]
        for r in range(len(m)):
            if r != out_rows and m[r][col]:
                f = m[r][col]
                m[r] = [field.sub(x, field.mul(f, y)) for x, y in zip(m[r], m[out_rows])]
        out_rows += 1
        if out_rows == len(m):
            break
    return [tuple(r) for r in m[:out_rows]]


def rank(field: FieldSpec, rows: Sequence[Sequence[int]]) -> int:
    return len(rref(field, rows))


def pivots(rows: Sequence[Sequence[int]]) -> list[int]:
    return [next(i for i, x in enumerate(r) if x) for r in rows]


def nullspace(field: FieldSpec, rows: Sequence[Sequence[int]], ncols: int = 4) -> list[tuple[int, ...]]:
    """Basis of {x : r.x = 0 for all rows r}, in reduced row-echelon form."""
    red = rref(field, rows)
    piv = pivots(red)
    basis = []
    for free in range(ncols):
        if free in piv:
            continue
        v = [0] * ncols
        v[free] = 1
        for r, pc in zip(red, piv):
            v[pc] = field.neg(r[free])
        basis.append(v)
    return rref(field, basis)


def dot(field: FieldSpec, u: Sequence[int], v: Sequence[int]) -> int:
    return field.dot(u, v)


def incident(field: FieldSpec, point: ProjPoint, plane: ProjPlane) -> bool:
    return field.dot(point, plane) == 0


def p1_points(field: FieldSpec) -> list[P1Point]:
    """P^1(K) in parameter order: [1:t] for t in field order, then [0:1]."""
    return [(1, t) for t in field.elements()] + [(0, 1)]


def combine(field: FieldSpec, s: int, u: Sequence[int], t: int, v: Sequence[int]) -> tuple[int, ...]:
    return tuple(field.add(field.mul(s, a), field.mul(t, b)) for a, b in zip(u, v))


def line_through(field: FieldSpec, P: ProjPoint, Q: ProjPoint) -> ProjLine:
    if P == Q:
        raise ValueError("a line needs two distinct points")
    red = rref(field, [P, Q])
    if len(red) != 2:
        raise ValueError("points are not projectively distinct")
    return (red[0], red[1])


def line_from_rows(field: FieldSpec, rows: Sequence[Sequence[int]]) -> ProjLine:
    red = rref(field, rows)
    if len(red) != 2:
        raise ValueError("rows do not span a line")
    return (red[0], red[1])


def point_on_line(field: FieldSpec, line: ProjLine, st: P1Point) -> ProjPoint:
    return normalize(field, combine(field, st[0], line[0], st[1], line[1]))


def points_on_line(field: FieldSpec, line: ProjLine) -> list[ProjPoint]:
    r0, r1 = line
    # rref rows make r0 + t*r1 and r1 canonical already
    return [combine(field, 1, r0, t, r1) for t in field.elements()] + [tuple(r1)]


def line_contains(field: FieldSpec, line: ProjLine, P: ProjPoint) -> bool:
    return rank(field, [line[0], line[1], P]) == 2


def line_in_plane(field: FieldSpec, line: ProjLine, plane: ProjPlane) -> bool:
    return incident(field, line[0], plane) and incident(field, line[1], plane)


def planes_through_line(field: FieldSpec, line: ProjLine) -> list[ProjPlane]:
    d0, d1 = nullspace(field, line)
    return [combine(field, 1, d0, t, d1) for t in field.elements()] + [tuple(d1)]


def plane_basis(field: FieldSpec, plane: ProjPlane) -> list[ProjPoint]:
    """The three rows spanning the plane, in reduced row-echelon form."""
    return nullspace(field, [plane])


def plane_through(field: FieldSpec, P: ProjPoint, Q: ProjPoint, R: ProjPoint) -> ProjPlane:
    ns = nullspace(field, [P, Q, R])
    if len(ns) != 1:
        raise ValueError("points are collinear")
    return ns[0]


def plane_complement(field: FieldSpec, plane: ProjPlane, P: ProjPoint) -> tuple[ProjPoint, ProjPoint]:
    """Two basis rows u, v of the plane with {P, u, v} spanning it."""
    if not incident(field, P, plane):
        raise ValueError("point is not on the plane")
    basis = plane_basis(field, plane)
    for i in range(3):
        for j in range(i + 1, 3):
            if rank(field, [P, basis[i], basis[j]]) == 3:
                return basis[i], basis[j]
    raise AssertionError("unreachable: plane basis has rank 3")


def lines_in_plane_through_point(field: FieldSpec, plane: ProjPlane, P: ProjPoint) -> list[ProjLine]:
    u, v = plane_complement(field, plane, P)
    return [line_through(field, P, normalize(field, combine(field, s, u, t, v))) for s, t in p1_points(field)]


def intersect_lines(field: FieldSpec, l1: ProjLine, l2: ProjLine) -> ProjPoint | None:
    """The common point of two distinct coplanar lines, else None."""
    ns = nullspace(field, [*nullspace(field, l1), *nullspace(field, l2)])
    if len(ns) != 1:
        return None
    return ns[0]


def skew(field: FieldSpec, l1: ProjLine, l2: ProjLine) -> bool:
    return rank(field, [*l1, *l2]) == 4


def enumerate_points_P3(field: FieldSpec) -> list[ProjPoint]:
    pts = []
    els = field.elements()
    for lead in range(4):
        for tail in product(els, repeat=3 - lead):
            pts.append((0,) * lead + (1,) + tail)
    return pts


@lru_cache(maxsize=32)
def points_array(field: FieldSpec) -> np.ndarray:
    """All points of P^3(K) as an (n, 4) integer array, same order as enumerate_points_P3."""
    return np.array(enumerate_points_P3(field), dtype=np.int64).reshape(-1, 4)


def enumerate_points_P2(field: FieldSpec) -> list[tuple[int, int, int]]:
    pts = []
    for lead in range(3):
        for tail in product(field.elements(), repeat=2 - lead):
            pts.append((0,) * lead + (1,) + tail)
    return pts


@lru_cache(maxsize=32)
def points_array_P2(field: FieldSpec) -> np.ndarray:
    return np.array(enumerate_points_P2(field), dtype=np.int64).reshape(-1, 3)


def enumerate_lines_P3(field: FieldSpec) -> list[ProjLine]:
    """Every line of P^3(K), one reduced echelon basis per pivot pattern."""
    q = field.elements()
    lines = []
    for i in range(4):
        for j in range(i + 1, 4):
            free0 = [c for c in range(i + 1, 4) if c != j]
            free1 = [c for c in range(j + 1, 4)]
            for vals0 in product(q, repeat=len(free0)):
                for vals1 in product(q, repeat=len(free1)):
                    r0 = [0] * 4
                    r1 = [0] * 4
                    r0[i] = 1
                    r1[j] = 1
                    for c, x in zip(free0, vals0):
                        r0[c] = x
                    for c, x in zip(free1, vals1):
                        r1[c] = x
                    lines.append((tuple(r0), tuple(r1)))
    return lines


def point_codes(field: FieldSpec, pts: np.ndarray) -> np.ndarray:
    """Injective integer code of canonical points (base-q digits)."""
    q = field.q
    return ((pts[..., 0] * q + pts[..., 1]) * q + pts[..., 2]) * q + pts[..., 3]


def np_normalize(field: FieldSpec, vecs: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Canonical representatives of an (..., 4) array; also returns the nonzero mask."""
    lead = vecs[..., 3].copy()
    for c in (2, 1, 0):
        col = vecs[..., c]
        lead = np.where(col != 0, col, lead)
    nonzero = lead != 0
    safe = np.where(nonzero, lead, 1)
    scale = field.np_inv(safe)
    out = field.np_mul(scale[..., None], vecs)
    return out, nonzero
