"""Secant and tangent generation on a cubic surface, and span closure.

Closures run in index space over the tables precomputed by
:class:`~cubicspan.surface.SurfaceModel`; the ``*_direct`` functions redo
each step from the binary cubic on the line and serve as replay oracles.
"""
from __future__ import annotations

from collections import Counter, deque
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .forms import binary_roots, restrict_to_line
from .projgeom import (
    ProjLine, ProjPoint, combine, line_through, lines_in_plane_through_point, normalize, pivots,
)
from .surface import (
    ECKARDT_TYPES, PlaneType, SurfaceModel, eckardt_points_on_line, gauss_separable,
    parabolic_points_on_line,
)


class _LineInSurface:
    _inst = None

    def __new__(cls):
        if cls._inst is None:
            cls._inst = super().__new__(cls)
        return cls._inst

    def __repr__(self):
        return "LINE_IN_SURFACE"

    def __reduce__(self):
        return (_LineInSurface, ())


LINE_IN_SURFACE = _LineInSurface()


class PreconditionError(ValueError):
    """Some K-line of the surface is not contained in T."""


class NoT3PlaneError(ValueError):
    """The chosen line has no plane of type T3 in its pencil."""


# -- single steps -------------------------------------------------------------

def secant_third(S: SurfaceModel, P: ProjPoint, Q: ProjPoint):
    if P == Q:
        raise ValueError("secant needs two distinct points")
    r = S.third[S.index[P]][S.index[Q]]
    return LINE_IN_SURFACE if r < 0 else S.points[r]


def tangent_residues(S: SurfaceModel, P: ProjPoint) -> set[ProjPoint]:
    return {S.points[r] for r in S.tangent_residue_table[S.index[P]]}


def _line_param(field, line: ProjLine, P: ProjPoint) -> tuple[int, int]:
    p0, p1 = pivots(line)
    return (P[p0], P[p1])


def _residual(S: SurfaceModel, line: ProjLine, known: Sequence[ProjPoint]):
    f = restrict_to_line(S.form, line)
    if f.is_zero():
        return LINE_IN_SURFACE
    field = S.field
    params = [normalize(field, _line_param(field, line, P)) for P in known]
    roots = Counter(binary_roots(f, params))
    roots.subtract(Counter(params))
    rest = [r for r, c in roots.items() if c > 0 for _ in range(c)]
    if len(rest) != 1:
        raise ArithmeticError("residual of a cubic with known roots is not a single point")
    s, t = rest[0]
    return normalize(field, combine(field, s, line[0], t, line[1]))


def secant_third_direct(S: SurfaceModel, P: ProjPoint, Q: ProjPoint):
    """Secant step from the restricted binary cubic."""
    if P == Q:
        raise ValueError("secant needs two distinct points")
    return _residual(S, line_through(S.field, P, Q), [P, Q])


def tangent_residues_direct(S: SurfaceModel, P: ProjPoint) -> set[ProjPoint]:
    out = set()
    plane = S.tangent_planes[S.index[P]]
    for line in lines_in_plane_through_point(S.field, plane, P):
        r = _residual(S, line, [P, P])
        if r is not LINE_IN_SURFACE:
            out.add(r)
    return out


# -- closure ------------------------------------------------------------------

@dataclass
class SpanState:
    surface: SurfaceModel
    generated: set
    frontier: deque
    seeds: frozenset = frozenset()
    parents: dict = dc_field(default_factory=dict)  # point -> ("secant", P, Q) | ("tangent", P)
    stopped_early: bool = False

    @property
    def complete(self) -> bool:
        return len(self.generated) == self.surface.N


def _third_array(S: SurfaceModel) -> np.ndarray:
    arr = getattr(S, "_third_np", None)
    if arr is None:
        arr = np.array(S.third, dtype=np.int64).reshape(S.N, S.N)
        S._third_np = arr
    return arr


def _close(S: SurfaceModel, seeds: Iterable[int], rng=None, stop_mask=None, record=False):
    """Worklist closure in index space.

    Returns (generated mask, parents, hit_stop). Each processed point is
    paired with every earlier processed point, then tangent-processed once.
    """
    third = _third_array(S)
    N = S.N
    gen = np.zeros(N, dtype=bool)
    seeds = list(dict.fromkeys(int(s) for s in seeds))
    if rng is not None:
        rng.shuffle(seeds)
    gen[seeds] = True
    count = len(seeds)
    frontier = deque(seeds)
    members = np.empty(N, dtype=np.int64)
    m = 0
    parents: dict = {}
    if stop_mask is not None and stop_mask[seeds].any():
        return gen, parents, True
    while frontier and count < N:
        k = frontier.popleft()
        new: list[int] = []
        if m:
            cand = third[k, members[:m]]
            hit = (cand >= 0)
            hit[hit] = ~gen[cand[hit]]
            if hit.any():
                vals, first = np.unique(cand[hit], return_index=True)
                partners = members[:m][hit][first]
                for v, w in zip(vals.tolist(), partners.tolist()):
                    gen[v] = True
                    new.append(v)
                    if record:
                        parents[v] = ("secant", k, w)
        members[m] = k
        m += 1
        for r in S.tangent_residue_table[k]:
            if not gen[r]:
                gen[r] = True
                new.append(r)
                if record:
                    parents[r] = ("tangent", k)
        if new:
            count += len(new)
            if stop_mask is not None and stop_mask[new].any():
                return gen, parents, True
            if rng is not None:
                rng.shuffle(new)
            frontier.extend(new)
    return gen, parents, False


def span_state(S: SurfaceModel, sigma: Iterable[ProjPoint], rng=None) -> SpanState:
    """Closure of sigma with parent pointers for witness chains."""
    sigma = list(sigma)
    if not sigma:
        raise ValueError("closure of the empty set is not defined here")
    idx = [S.index[P] for P in sigma]
    gen, parents, _ = _close(S, idx, rng=rng, record=True)
    pts = S.points
    par = {}
    for v, rec in parents.items():
        par[pts[v]] = (rec[0],) + tuple(pts[x] for x in rec[1:])
    generated = {pts[i] for i in np.nonzero(gen)[0]}
    return SpanState(S, generated, deque(), frozenset(sigma), par)


def span_closure(S: SurfaceModel, sigma: Iterable[ProjPoint], rng=None) -> frozenset:
    sigma = list(sigma)
    if not sigma:
        raise ValueError("closure of the empty set is not defined here")
    gen, _, _ = _close(S, [S.index[P] for P in sigma], rng=rng)
    return frozenset(S.points[i] for i in np.nonzero(gen)[0])


def is_closed(S: SurfaceModel, X: Iterable[ProjPoint]) -> bool:
    """Full re-scan: no secant or tangent step leaves X."""
    idx = np.array(sorted(S.index[P] for P in X), dtype=np.int64)
    mask = np.zeros(S.N, dtype=bool)
    mask[idx] = True
    third = _third_array(S)
    sub = third[np.ix_(idx, idx)]
    if (~mask[sub[sub >= 0]]).any():
        return False
    return all(mask[r] for i in idx for r in S.tangent_residue_table[i])


def witness_chain(state: SpanState, target: ProjPoint) -> list[dict]:
    """Steps, in dependency order, producing target from the seeds."""
    if target not in state.generated:
        raise KeyError("point was not generated")
    out: list[dict] = []
    done = set(state.seeds)
    stack = [(target, False)]
    while stack:
        P, expanded = stack.pop()
        if P in done:
            continue
        op, *inputs = state.parents[P]
        if expanded:
            out.append({"op": op, "inputs": [list(x) for x in inputs], "output": list(P)})
            done.add(P)
            continue
        stack.append((P, True))
        for x in inputs:
            if x not in done:
                stack.append((x, False))
    return out


def replay_witness(S: SurfaceModel, seeds: Iterable[ProjPoint], chain: Sequence[dict]) -> bool:
    """Re-derive every step with the direct oracles."""
    have = set(seeds)
    for step in chain:
        inputs = [tuple(x) for x in step["inputs"]]
        out = tuple(step["output"])
        if not all(x in have for x in inputs):
            return False
        if step["op"] == "secant":
            if secant_third_direct(S, *inputs) != out:
                return False
        elif step["op"] == "tangent":
            if out not in tangent_residues_direct(S, inputs[0]):
                return False
        else:
            return False
        have.add(out)
    return True


# -- generators ---------------------------------------------------------------

def generator_status(S: SurfaceModel, early_exit: bool = False, rng=None) -> np.ndarray:
    """Per point: 1 generator, -1 not a generator, 0 undecided (early exit).

    A closure that reaches a known generator proves its seed is one; a closed
    proper subset rules out every point inside it.
    """
    N = S.N
    status = np.zeros(N, dtype=np.int8)
    order = list(range(N))
    if rng is not None:
        rng.shuffle(order)
    for i in order:
        if status[i]:
            continue
        gen, _, hit = _close(S, [i], stop_mask=status == 1)
        if hit or gen.all():
            status[i] = 1
            if early_exit:
                return status
        else:
            status[gen] = -1
    return status


def single_generators(S: SurfaceModel, early_exit: bool = False, rng=None) -> set[ProjPoint]:
    status = generator_status(S, early_exit, rng)
    return {S.points[i] for i in np.nonzero(status == 1)[0]}


# -- pigeonhole -----------------------------------------------------------------

@dataclass
class PigeonholeReport:
    T: frozenset
    T_size: int
    S_size: int
    q: int
    threshold: Fraction
    passed: bool
    complement_size: int
    complement_form_passed: bool  # |T| > |T'| + q + 1
    precondition_ok: bool
    missing_lines: list = dc_field(default_factory=list)
    closure_equals_SK: bool | None = None
    closure_size: int | None = None

    @property
    def ok(self) -> bool:
        """Precondition holds, and passing the threshold implies full closure."""
        return self.precondition_ok and (not self.passed or bool(self.closure_equals_SK))

    def to_json(self) -> dict:
        return {
            "T_size": self.T_size, "S_size": self.S_size, "threshold": str(self.threshold),
            "passed": self.passed, "complement_size": self.complement_size,
            "complement_form_passed": self.complement_form_passed,
            "precondition_ok": self.precondition_ok,
            "missing_lines": [[list(r) for r in ln] for ln in self.missing_lines],
            "closure_equals_SK": self.closure_equals_SK, "closure_size": self.closure_size,
        }


def pigeonhole_threshold(S_size: int, q: int) -> Fraction:
    return Fraction(S_size, 2) + Fraction(q + 1, 2)


def pigeonhole_check(S: SurfaceModel, T: Iterable[ProjPoint], strict: bool = False) -> PigeonholeReport:
    """Evaluate the threshold; when it is passed, close T and compare with S(K).

    With ``strict`` a missing K-line raises PreconditionError; otherwise the
    report carries precondition_ok = False and no closure is attempted.
    """
    T = frozenset(T)
    if not T <= S.point_set():
        raise ValueError("T is not a subset of S(K)")
    N, q = S.N, S.q
    missing = [ln for ln in S.klines if not all(S.points[i] in T for i in S.line_points[ln])]
    if missing and strict:
        raise PreconditionError(f"{len(missing)} K-lines not contained in T")
    size = len(T)
    passed = 2 * size > N + q + 1
    comp = N - size
    rep = PigeonholeReport(T, size, N, q, pigeonhole_threshold(N, q), passed, comp,
                           size > comp + q + 1, not missing, missing)
    if passed and not missing:
        closure = span_closure(S, T)
        rep.closure_size = len(closure)
        rep.closure_equals_SK = len(closure) == N
    return rep


def theorem_T_lower_bound(q: int, n: int) -> Fraction:
    """Size bound on T by n; equals (q^2+2q+5)/2, (q^2+3q+4)/2, (q^2+4q+3)/2 for n = q-1, q, q+1."""
    return 2 * q + 2 + Fraction(n * (q - 1), 2)


def complement_upper_bound(q: int, n: int) -> Fraction:
    return Fraction(n - 2, 2) * (q + 1)


@dataclass
class TheoremTRecord:
    line: ProjLine
    plane: tuple
    n: int
    T: frozenset
    lower_bound: Fraction
    complement_bound: Fraction

    @property
    def meets_bound(self) -> bool:
        return len(self.T) >= self.lower_bound

    def complement_ok(self, S_size: int) -> bool:
        return S_size - len(self.T) <= self.complement_bound


def build_theorem_T(S: SurfaceModel, line: ProjLine, plane=None) -> TheoremTRecord:
    """Gamma(K) of a T3 plane through the line plus Gamma_Q(K) for Q on the line."""
    if not gauss_separable(S, line):
        raise ValueError("the Gauss map of the line is inseparable")
    secs = S.sections[line]
    if plane is None:
        t3 = [s for s in secs if s.type == PlaneType.T3]
        if not t3:
            raise NoT3PlaneError("no T3 plane through the line")
        plane = t3[0].plane
    elif S.section(line, plane).type != PlaneType.T3:
        raise NoT3PlaneError("the given plane is not of type T3")
    idx = set(S.plane_point_indices(plane))
    for i in S.line_points[line]:
        idx.update(S.gamma_P(i))
    q = S.q
    n = q + 1 - len(parabolic_points_on_line(S, line))
    T = frozenset(S.points[i] for i in idx)
    return TheoremTRecord(line, plane, n, T, theorem_T_lower_bound(q, n), complement_upper_bound(q, n))


def find_theorem_T(S: SurfaceModel) -> TheoremTRecord | None:
    """First separable line with a T3 plane, in line order."""
    for ln in S.klines:
        if gauss_separable(S, ln) and any(s.type == PlaneType.T3 for s in S.sections[ln]):
            return build_theorem_T(S, ln)
    return None


def non_eckardt_points(S: SurfaceModel, line: ProjLine) -> list[ProjPoint]:
    eck = set(eckardt_points_on_line(S, line))
    return [S.points[i] for i in S.line_points[line] if S.points[i] not in eck]


def eckardt_section(S: SurfaceModel, line: ProjLine, P: ProjPoint) -> bool:
    return S.section(line, S.tangent_planes[S.index[P]]).type in ECKARDT_TYPES


__all__ = [
    "LINE_IN_SURFACE", "secant_third", "tangent_residues", "secant_third_direct",
    "tangent_residues_direct", "SpanState", "span_state", "span_closure", "is_closed",
    "witness_chain", "replay_witness", "generator_status", "single_generators",
    "PigeonholeReport", "pigeonhole_threshold", "pigeonhole_check", "PreconditionError",
    "NoT3PlaneError", "theorem_T_lower_bound", "complement_upper_bound", "TheoremTRecord",
    "build_theorem_T", "find_theorem_T", "non_eckardt_points",
]
