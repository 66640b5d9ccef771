"""Smooth cubic surfaces over GF(q): points, lines and plane sections.

The model leans on one identity. For surface points P, Q the restriction of
F to the line PQ is ``s t (s * A + t * B)`` with ``A = grad F(P) . Q`` and
``B = grad F(Q) . P``, so the whole secant structure comes from the matrix
of polar values ``grad F(P_i) . P_j``. Likewise, for a direction D in the
tangent plane at P, ``F(sP + tD) = t^2 (s * grad F(D) . P + t * F(D))``.
"""
from __future__ import annotations

import enum
import warnings
from collections import Counter
from dataclasses import dataclass, field as dc_field
from functools import cached_property
from typing import Sequence

import numpy as np

from .forms import (
    Form, NotAComponentError, binary_quadratic_roots, divide_by_line, linear_form,
    restrict_to_line, restrict_to_plane,
)
from .gf import FieldSpec
from .projgeom import (
    ProjLine, ProjPlane, ProjPoint, combine, enumerate_lines_P3, line_in_plane, line_through, normalize,
    np_normalize, p1_points, plane_basis, plane_complement, planes_through_line, point_codes,
    points_array, points_array_P2, points_on_line, rank, rref, skew,
)
from .smoothcheck import is_smooth


class NotSmoothError(ValueError):
    """The form defines a singular surface."""


class ContractViolation(RuntimeError):
    """A geometric fact that must hold on a smooth surface failed."""


class PlaneType(enum.IntEnum):
    T1 = 1  # irreducible conic meeting the line in two K-points
    T2 = 2  # two K-lines meeting the line in distinct points
    T3 = 3  # irreducible conic meeting the line in conjugate points
    T4 = 4  # conjugate lines meeting the line in conjugate points
    T5 = 5  # irreducible conic tangent to the line
    T6 = 6  # two K-lines through a common point of the line
    T7 = 7  # conjugate lines through a common point of the line

    def __str__(self):
        return self.name


PARABOLIC_TYPES = frozenset({PlaneType.T5, PlaneType.T6, PlaneType.T7})
ECKARDT_TYPES = frozenset({PlaneType.T6, PlaneType.T7})


class PointClass(enum.Enum):
    GENERIC = "generic"
    PARABOLIC = "parabolic-non-Eckardt"
    ECKARDT = "Eckardt"
    ECKARDT_CONJUGATE = "eckardt-conjugate-lines"
    CUSP = "cusp"
    SPLIT_NODE = "split-node"
    NONSPLIT_NODE = "nonsplit-node"

    def __str__(self):
        return self.value


def gamma_count_table(q: int) -> dict[PlaneType, int]:
    """#Gamma(K) for each plane type, from |line(K)| = |conic(K)| = q + 1.

    Three concurrent K-lines share a single point, hence 3q + 1 for T6.
    """
    return {
        PlaneType.T1: 2 * q,
        PlaneType.T2: 3 * q,
        PlaneType.T3: 2 * q + 2,
        PlaneType.T4: q + 2,
        PlaneType.T5: 2 * q + 1,
        PlaneType.T6: 3 * q + 1,
        PlaneType.T7: q + 1,
    }


def off_line_count_classes(q: int) -> dict[int, PointClass]:
    return {
        1: PointClass.ECKARDT_CONJUGATE,
        q: PointClass.SPLIT_NODE,
        q + 1: PointClass.CUSP,
        q + 2: PointClass.NONSPLIT_NODE,
    }


@dataclass(frozen=True)
class PlaneSection:
    plane: ProjPlane
    type: PlaneType
    gamma_count: int  # counted directly from S(K)
    conic_count: int
    meet: tuple[ProjPoint, ...]  # K-points of conic . line, with multiplicity
    conic: Form


@dataclass
class PencilCensus:
    line: ProjLine
    type_counts: dict[PlaneType, int]
    n: int
    parabolic: int
    eckardt: int
    separable: bool
    violations: list[str] = dc_field(default_factory=list)
    point_violations: list[str] = dc_field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "line": [list(r) for r in self.line],
            "types": {str(t): self.type_counts.get(t, 0) for t in PlaneType},
            "n": self.n,
            "parabolic": self.parabolic,
            "eckardt": self.eckardt,
            "separable": self.separable,
            "violations": list(self.violations),
            "point_violations": list(self.point_violations),
        }


# -- vectorised helpers -----------------------------------------------------

def _np_dot(field: FieldSpec, X: np.ndarray, Y: np.ndarray) -> np.ndarray:
    """Matrix of field dot products X[i] . Y[j]."""
    out = field.np_mul(X[:, None, 0], Y[None, :, 0])
    for k in range(1, X.shape[1]):
        out = field.np_add(out, field.np_mul(X[:, None, k], Y[None, :, k]))
    return out


def _np_rowdot(field: FieldSpec, X: np.ndarray, Y: np.ndarray) -> np.ndarray:
    """Dot products along the last axis, with broadcasting."""
    out = field.np_mul(X[..., 0], Y[..., 0])
    for k in range(1, X.shape[-1]):
        out = field.np_add(out, field.np_mul(X[..., k], Y[..., k]))
    return out


def enumerate_surface_points(F: Form) -> list[ProjPoint]:
    pts = points_array(F.field)
    on = pts[F.np_evaluate(pts) == 0]
    return [tuple(int(x) for x in row) for row in on]


def _lines_from_polar(field: FieldSpec, points: Sequence[ProjPoint], polar: np.ndarray) -> list[ProjLine]:
    zero = (polar == 0) & (polar.T == 0)
    np.fill_diagonal(zero, False)
    covered: set[tuple[int, int]] = set()
    index = {p: i for i, p in enumerate(points)}
    lines = []
    for i, j in zip(*np.nonzero(np.triu(zero))):
        i, j = int(i), int(j)
        if (i, j) in covered:
            continue
        line = line_through(field, points[i], points[j])
        idx = sorted(index[p] for p in points_on_line(field, line))
        for a in idx:
            for b in idx:
                covered.add((a, b))
        lines.append(line)
    return sorted(lines)


def find_k_lines(F: Form, points: Sequence[ProjPoint] | None = None) -> list[ProjLine]:
    """K-lines on F = 0, found from pairs of surface points."""
    if points is None:
        points = enumerate_surface_points(F)
    if len(points) < 2:
        return []
    arr = np.array(points, dtype=np.int64)
    polar = _np_dot(F.field, F.np_gradient(arr), arr)
    return _lines_from_polar(F.field, points, polar)


def find_k_lines_full_scan(F: Form) -> list[ProjLine]:
    """Oracle: test every line of P^3 (only sensible for small q)."""
    field = F.field
    out = []
    for line in enumerate_lines_P3(field):
        # pointwise vanishing is not enough when q + 1 < 4
        if all(F.evaluate(p) == 0 for p in points_on_line(field, line)[:4]):
            if restrict_to_line(F, line).is_zero():
                out.append(line)
    return sorted(out)


def has_skew_pair(field: FieldSpec, lines: Sequence[ProjLine]) -> bool:
    return any(skew(field, a, b) for i, a in enumerate(lines) for b in lines[i + 1:])


def coords_in_basis(field: FieldSpec, basis: Sequence[Sequence[int]], v: Sequence[int]) -> tuple[int, ...]:
    """Coefficients y with sum y_j basis[j] = v (basis rows independent)."""
    m = len(basis)
    # columns: basis vectors then v; rref of the augmented system
    aug = [[basis[j][i] for j in range(m)] + [v[i]] for i in range(len(v))]
    red = rref(field, aug)
    piv = [next(i for i, x in enumerate(r) if x) for r in red]
    if m in piv or len(red) != m:
        raise ValueError("vector is not in the span of the basis")
    return tuple(r[m] for r in red)


class SurfaceModel:
    """A smooth cubic surface with its rational points, lines and pencils.

    All tables are built eagerly in the constructor; afterwards the object is
    read-only.
    """

    def __init__(self, form: Form, check_smooth: bool = True):
        if form.nvars != 4 or form.degree != 3:
            raise ValueError("a cubic surface form is required")
        if check_smooth and not is_smooth(form):
            raise NotSmoothError("the cubic form is singular")
        self.form = form
        self.field = form.field
        self.q = form.field.q
        if self.q < 8:
            warnings.warn(f"q = {self.q}: below the range where the generation theorem applies",
                          stacklevel=2)
        field = self.field

        pts = points_array(field)
        arr = pts[form.np_evaluate(pts) == 0]
        self.points: list[ProjPoint] = [tuple(int(x) for x in row) for row in arr]
        self.index = {p: i for i, p in enumerate(self.points)}
        self._arr = arr
        self.N = len(self.points)

        grads = form.np_gradient(arr) if self.N else np.zeros((0, 4), dtype=np.int64)
        if self.N and not (grads != 0).any(axis=1).all():
            raise NotSmoothError("a rational point is singular")
        self.gradients = [tuple(int(x) for x in g) for g in grads]
        normed, _ = np_normalize(field, grads) if self.N else (grads, None)
        self.tangent_planes: list[ProjPlane] = [tuple(int(x) for x in g) for g in normed]
        self._grads = grads

        self.polar = _np_dot(field, grads, arr) if self.N else np.zeros((0, 0), dtype=np.int64)
        self.klines: list[ProjLine] = _lines_from_polar(field, self.points, self.polar) if self.N > 1 else []

        codes = point_codes(field, arr)
        self._order = np.argsort(codes)
        self._sorted_codes = codes[self._order]

        self.third = self._third_table()
        self.tangent_residue_table, self.cone = self._tangent_tables()

        self.line_points: dict[ProjLine, list[int]] = {
            ln: [self.index[p] for p in points_on_line(field, ln)] for ln in self.klines
        }
        self.on_some_line = np.zeros(self.N, dtype=bool)
        for idx in self.line_points.values():
            self.on_some_line[idx] = True
        self.sections: dict[ProjLine, list[PlaneSection]] = {
            ln: [classify_plane(self, ln, pl) for pl in planes_through_line(field, ln)]
            for ln in self.klines
        }

    # -- lookups ------------------------------------------------------------
    def _lookup(self, vecs: np.ndarray) -> np.ndarray:
        """Indices of canonical point vectors (..., 4); -1 for zero vectors."""
        normed, nonzero = np_normalize(self.field, vecs)
        codes = point_codes(self.field, normed)
        pos = np.searchsorted(self._sorted_codes, codes)
        pos = np.clip(pos, 0, max(self.N - 1, 0))
        found = self._sorted_codes[pos] == codes
        if not found[nonzero].all():
            raise ContractViolation("a residual intersection point is not on the surface")
        return np.where(nonzero, self._order[pos], -1)

    def _third_table(self) -> list[list[int]]:
        field, N = self.field, self.N
        table = []
        block = 256
        for start in range(0, N, block):
            stop = min(N, start + block)
            A = self.polar[start:stop, :]          # grad(P_i) . P_j
            B = self.polar[:, start:stop].T        # grad(P_j) . P_i
            Pi = self._arr[start:stop, None, :]
            Pj = self._arr[None, :, :]
            R = field.np_sub(field.np_mul(B[..., None], Pi), field.np_mul(A[..., None], Pj))
            idx = self._lookup(R)
            for r in range(stop - start):
                idx[r, start + r] = -1
            table.extend(idx.tolist())
        return table

    def _tangent_tables(self):
        field, N, q = self.field, self.N, self.q
        if N == 0:
            return [], []
        dirs = np.empty((N, q + 1, 4), dtype=np.int64)
        st = np.array(p1_points(field), dtype=np.int64)
        for i, (P, plane) in enumerate(zip(self.points, self.tangent_planes)):
            u, v = plane_complement(field, plane, P)
            u = np.array(u, dtype=np.int64)
            v = np.array(v, dtype=np.int64)
            dirs[i] = field.np_add(field.np_mul(st[:, :1], u[None, :]), field.np_mul(st[:, 1:], v[None, :]))
        flat = dirs.reshape(-1, 4)
        FD = self.form.np_evaluate(flat).reshape(N, q + 1)
        GD = self.form.np_gradient(flat).reshape(N, q + 1, 4)
        P = self._arr[:, None, :]
        B = _np_rowdot(field, GD, np.broadcast_to(P, GD.shape))
        R = field.np_sub(field.np_mul(FD[..., None], P), field.np_mul(B[..., None], dirs))
        idx = self._lookup(R)
        residues = [sorted(set(int(x) for x in row if x >= 0)) for row in idx]
        # B over the pencil is the binary quadratic grad(sU + tV) . P
        a = B[:, 0]
        c = B[:, q]
        b = field.np_sub(field.np_sub(B[:, 1], a), c)
        cone = [(int(x), int(y), int(z)) for x, y, z in zip(a, b, c)]
        self._tangent_dirs = dirs
        self._tangent_R = idx
        return residues, cone

    # -- derived data -------------------------------------------------------
    def point_set(self) -> frozenset:
        return frozenset(self.points)

    def section(self, line: ProjLine, plane: ProjPlane) -> PlaneSection:
        for s in self.sections[line]:
            if s.plane == plane:
                return s
        raise ContractViolation("plane is not in the pencil of the line")

    def plane_point_indices(self, plane: ProjPlane) -> list[int]:
        vals = _np_dot(self.field, np.array([plane], dtype=np.int64), self._arr)[0]
        return [int(i) for i in np.nonzero(vals == 0)[0]]

    def gamma_P(self, i: int) -> list[int]:
        """Indices of the K-points of the tangent section at point i."""
        return [int(j) for j in np.nonzero(self.polar[i] == 0)[0]]

    @cached_property
    def has_skew_pair(self) -> bool:
        return has_skew_pair(self.field, self.klines)

    @cached_property
    def m_value(self) -> int | None:
        rest = self.N - self.q * self.q - 1
        return rest // self.q if rest % self.q == 0 else None

    def lines_through(self, i: int) -> list[ProjLine]:
        return [ln for ln, idx in self.line_points.items() if i in idx]

    def to_json(self) -> dict:
        return {"field": self.field.to_json(), "coeffs": self.form.to_json()}


def classify_plane(S: SurfaceModel, line: ProjLine, plane: ProjPlane,
                   basis: Sequence[Sequence[int]] | None = None) -> PlaneSection:
    field, q = S.field, S.q
    if not line_in_plane(field, line, plane):
        raise ContractViolation("plane does not contain the line")
    if basis is None:
        basis = plane_basis(field, plane)
    gamma = restrict_to_plane(S.form, plane, basis)
    c0 = coords_in_basis(field, basis, line[0])
    c1 = coords_in_basis(field, basis, line[1])
    L = (
        field.sub(field.mul(c0[1], c1[2]), field.mul(c0[2], c1[1])),
        field.sub(field.mul(c0[2], c1[0]), field.mul(c0[0], c1[2])),
        field.sub(field.mul(c0[0], c1[1]), field.mul(c0[1], c1[0])),
    )
    try:
        conic = divide_by_line(gamma, linear_form(field, L))
    except NotAComponentError as exc:
        raise ContractViolation(f"line is not a component of the section by {plane}") from exc
    if conic.is_zero():
        raise ContractViolation("the plane lies in the surface")

    p2 = points_array_P2(field)
    on = p2[conic.np_evaluate(p2) == 0]
    nC = len(on)
    on_line = conic.substitute([[c0[i], c1[i]] for i in range(3)])
    if on_line.is_zero():
        raise ContractViolation("the line is a double component of the section")
    roots = binary_quadratic_roots(field, *on_line.coeffs)
    meet = tuple(normalize(field, combine(field, s, line[0], t, line[1])) for s, t in roots)
    distinct = len(set(roots))

    if nC == q + 1:
        pts = [tuple(int(x) for x in r) for r in on]
        if rank(field, pts) <= 2:
            raise ContractViolation("the residual conic is a double line")
        kind = {2: PlaneType.T1, 0: PlaneType.T3, 1: PlaneType.T5}[distinct]
    elif nC == 2 * q + 1:
        if distinct == 2:
            kind = PlaneType.T2
        elif distinct == 1:
            kind = PlaneType.T6
        else:
            raise ContractViolation("split conic with no K-point on the line")
    elif nC == 1:
        if distinct == 1:
            kind = PlaneType.T7
        elif distinct == 0:
            kind = PlaneType.T4
        else:
            raise ContractViolation("conjugate lines meeting the line in two K-points")
    else:
        raise ContractViolation(f"residual conic with {nC} points fits no type")

    gamma_count = len(S.plane_point_indices(plane))
    return PlaneSection(plane, kind, gamma_count, nC, meet, conic)


def _line_data(S: SurfaceModel, line: ProjLine) -> list[tuple[int, PlaneSection]]:
    out = []
    for i in S.line_points[line]:
        out.append((i, S.section(line, S.tangent_planes[i])))
    return out


def parabolic_points_on_line(S: SurfaceModel, line: ProjLine) -> list[ProjPoint]:
    return [S.points[i] for i, sec in _line_data(S, line) if sec.type in PARABOLIC_TYPES]


def eckardt_points_on_line(S: SurfaceModel, line: ProjLine) -> list[ProjPoint]:
    return [S.points[i] for i, sec in _line_data(S, line) if sec.type in ECKARDT_TYPES]


def eckardt_points(S: SurfaceModel) -> set[ProjPoint]:
    out = set()
    for ln in S.klines:
        out.update(eckardt_points_on_line(S, ln))
    return out


def gauss_separable(S: SurfaceModel, line: ProjLine) -> bool:
    if S.field.p != 2:
        return True
    return len(parabolic_points_on_line(S, line)) < 2


def line_point_class(S: SurfaceModel, line: ProjLine, P: ProjPoint) -> PointClass:
    sec = S.section(line, S.tangent_planes[S.index[P]])
    if sec.type in ECKARDT_TYPES:
        return PointClass.ECKARDT
    if sec.type in PARABOLIC_TYPES:
        return PointClass.PARABOLIC
    return PointClass.GENERIC


def gamma_count_at(S: SurfaceModel, i: int) -> int:
    return int((S.polar[i] == 0).sum())


def classify_gamma_off_line(S: SurfaceModel, Q: ProjPoint) -> PointClass:
    i = S.index[Q]
    if S.on_some_line[i]:
        raise ValueError("point lies on a K-line of the surface")
    count = gamma_count_at(S, i)
    cls = off_line_count_classes(S.q).get(count)
    if cls is None:
        raise ContractViolation(f"#Gamma_Q(K) = {count} is not one of 1, q, q+1, q+2")
    return cls


def tangent_cone_class(S: SurfaceModel, Q: ProjPoint) -> PointClass:
    """Singularity of the tangent section at Q read off its tangent cone."""
    a, b, c = S.cone[S.index[Q]]
    if a == b == c == 0:
        return PointClass.ECKARDT_CONJUGATE
    roots = binary_quadratic_roots(S.field, a, b, c)
    if not roots:
        return PointClass.NONSPLIT_NODE
    return PointClass.CUSP if roots[0] == roots[1] else PointClass.SPLIT_NODE


def pencil_census(S: SurfaceModel, line: ProjLine) -> PencilCensus:
    """Type counts over the pencil plus the identities they must satisfy.

    ``violations`` holds failed pencil identities (checked on separable
    lines); ``point_violations`` holds failed parabolic/Eckardt counts.
    """
    q, p = S.q, S.field.p
    secs = S.sections[line]
    counts = Counter(s.type for s in secs)
    par = parabolic_points_on_line(S, line)
    eck = eckardt_points_on_line(S, line)
    sep = gauss_separable(S, line)
    n = q + 1 - len(par)
    cen = PencilCensus(line, {t: counts.get(t, 0) for t in PlaneType}, n, len(par), len(eck), sep)
    v = cen.violations
    if sum(counts.values()) != q + 1:
        v.append(f"pencil has {sum(counts.values())} planes, expected {q + 1}")
    if sep:
        t12 = counts[PlaneType.T1] + counts[PlaneType.T2]
        t34 = counts[PlaneType.T3] + counts[PlaneType.T4]
        if n % 2:
            v.append(f"n = {n} is odd")
        if 2 * t12 != n:
            v.append(f"T1+T2 = {t12} but n/2 = {n / 2}")
        if 2 * t34 != n:
            v.append(f"T3+T4 = {t34} but n/2 = {n / 2}")
        if p == 2 and n != q:
            v.append(f"n = {n} but q = {q} in characteristic 2")
        if p != 2 and n not in (q - 1, q + 1):
            v.append(f"n = {n} not q +/- 1")
        if counts[PlaneType.T4] > 5:
            v.append(f"{counts[PlaneType.T4]} planes of type T4")
        if q >= 13 and counts[PlaneType.T3] == 0:
            v.append("no T3 plane although q >= 13")
    pv = cen.point_violations
    if len(eck) > 5:
        pv.append(f"{len(eck)} Eckardt points on one line")
    if p != 2 and len(par) not in (0, 2):
        pv.append(f"{len(par)} parabolic K-points in odd characteristic")
    if p != 2 and len(eck) > 2:
        pv.append(f"{len(eck)} Eckardt points in odd characteristic")
    if p == 2 and sep and len(par) != 1:
        pv.append(f"{len(par)} parabolic K-points on a separable line")
    if p == 2 and not sep and len(par) != q + 1:
        pv.append(f"{len(par)} parabolic K-points on an inseparable line")
    return cen


# -- invariant checks ------------------------------------------------------------
# Each returns a list of witnesses; an empty list means the invariant holds.

def check_points_and_lines(S: SurfaceModel) -> list:
    bad = [P for P in S.points if S.form.evaluate(P) != 0]
    for ln in S.klines:
        if not restrict_to_line(S.form, ln).is_zero():
            bad.append(ln)
    return bad


def check_weil_form(S: SurfaceModel) -> list:
    m = S.m_value
    return [] if m is not None and -2 <= m <= 7 else [{"points": S.N}]


def check_full_line_scan(S: SurfaceModel) -> list:
    full = find_k_lines_full_scan(S.form)
    return [] if full == S.klines else [{"pair_scan": len(S.klines), "full_scan": len(full)}]


def check_tangent_planes_contain_lines(S: SurfaceModel) -> list:
    bad = []
    for ln, idx in S.line_points.items():
        for i in idx:
            if not line_in_plane(S.field, ln, S.tangent_planes[i]):
                bad.append({"point": S.points[i], "line": ln})
    return bad


def check_plane_counts(S: SurfaceModel) -> list:
    table = gamma_count_table(S.q)
    return [{"line": ln, "plane": s.plane, "type": str(s.type), "count": s.gamma_count}
            for ln, secs in S.sections.items() for s in secs if s.gamma_count != table[s.type]]


def check_partition_identity(S: SurfaceModel) -> list:
    q1 = S.q + 1
    bad = []
    for ln, secs in S.sections.items():
        total = sum(s.gamma_count - q1 for s in secs)
        if total != S.N - q1:
            bad.append({"line": ln, "sum": total, "expected": S.N - q1})
    return bad


def check_conic_points_off_lines(S: SurfaceModel) -> list:
    """Without a skew pair, conic points off the line lie on no K-line."""
    if S.has_skew_pair:
        return []
    bad = []
    conic_types = (PlaneType.T1, PlaneType.T3, PlaneType.T5)
    for ln, secs in S.sections.items():
        on_l = set(S.line_points[ln])
        for s in secs:
            if s.type not in conic_types:
                continue
            for i in S.plane_point_indices(s.plane):
                if i not in on_l and S.on_some_line[i]:
                    bad.append({"line": ln, "plane": s.plane, "point": S.points[i]})
    return bad


def random_plane_basis(field: FieldSpec, plane: ProjPlane, rng) -> list[tuple[int, ...]]:
    base = plane_basis(field, plane)
    while True:
        M = rng.integers(0, field.q, size=(3, 3)).tolist()
        if rank(field, M) == 3:
            break
    return [tuple(field.dot([M[r][0], M[r][1], M[r][2]], [b[c] for b in base]) for c in range(4))
            for r in range(3)]


def check_basis_invariance(S: SurfaceModel, rng, lines: Sequence[ProjLine] | None = None) -> list:
    bad = []
    for ln in (S.klines if lines is None else lines):
        for s in S.sections[ln]:
            other = classify_plane(S, ln, s.plane, random_plane_basis(S.field, s.plane, rng))
            if other.type != s.type:
                bad.append({"line": ln, "plane": s.plane, "echelon": str(s.type), "random": str(other.type)})
    return bad


def off_line_census(S: SurfaceModel) -> tuple[Counter, list]:
    """Class counts of points on no K-line, and count/cone disagreements."""
    counts: Counter = Counter()
    bad = []
    for i in np.nonzero(~S.on_some_line)[0]:
        Q = S.points[int(i)]
        try:
            cls = classify_gamma_off_line(S, Q)
        except ContractViolation:
            bad.append({"point": Q, "count": gamma_count_at(S, int(i))})
            continue
        counts[str(cls)] += 1
        cone = tangent_cone_class(S, Q)
        if cone != cls:
            bad.append({"point": Q, "count_class": str(cls), "cone_class": str(cone)})
    return counts, bad


__all__ = [
    "SurfaceModel", "PlaneType", "PointClass", "PlaneSection", "PencilCensus",
    "NotSmoothError", "ContractViolation", "enumerate_surface_points", "find_k_lines",
    "find_k_lines_full_scan", "has_skew_pair", "classify_plane", "parabolic_points_on_line",
    "eckardt_points_on_line", "eckardt_points", "gauss_separable", "line_point_class",
    "classify_gamma_off_line", "tangent_cone_class", "gamma_count_table", "pencil_census",
    "gamma_count_at", "off_line_count_classes", "coords_in_basis",
    "check_points_and_lines", "check_weil_form", "check_full_line_scan",
    "check_tangent_planes_contain_lines", "check_plane_counts", "check_partition_identity",
    "check_conic_points_off_lines", "check_basis_invariance", "random_plane_basis",
    "off_line_census", "ECKARDT_TYPES", "PARABOLIC_TYPES",
]

