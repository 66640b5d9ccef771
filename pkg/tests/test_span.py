import itertools
from fractions import Fraction

import numpy as np
import pytest

from cubicspan.forms import fermat, random_cubic
from cubicspan.gf import gf
from cubicspan.projgeom import incident, line_through, points_on_line
from cubicspan.smoothcheck import is_smooth
from cubicspan.span import (
    LINE_IN_SURFACE, NoT3PlaneError, PreconditionError, build_theorem_T, complement_upper_bound,
    find_theorem_T, generator_status, is_closed, non_eckardt_points, pigeonhole_check,
    pigeonhole_threshold, replay_witness, secant_third, secant_third_direct, single_generators,
    span_closure, span_state, tangent_residues, tangent_residues_direct, theorem_T_lower_bound,
    witness_chain,
)
from cubicspan.surface import PlaneType, SurfaceModel, eckardt_points_on_line


def surfaces_with_lines(K, count, seed):
    rng = np.random.default_rng(seed)
    out = []
    while len(out) < count:
        F = random_cubic(K, rng)
        if is_smooth(F):
            S = SurfaceModel(F, check_smooth=False)
            if S.klines:
                out.append(S)
    return out


def naive_closure(S, seeds):
    """Set fixpoint using only the direct (form-based) steps."""
    X = set(seeds)
    while True:
        new = set()
        for P, Q in itertools.combinations(sorted(X), 2):
            R = secant_third_direct(S, P, Q)
            if R is not LINE_IN_SURFACE:
                new.add(R)
        for P in X:
            new |= tangent_residues_direct(S, P)
        if new <= X:
            return frozenset(X)
        X |= new


@pytest.fixture(scope="module")
def small_surfaces():
    return surfaces_with_lines(gf(5), 3, 1) + surfaces_with_lines(gf(2, 2), 2, 2)


@pytest.fixture(scope="module")
def mid_surfaces():
    return surfaces_with_lines(gf(2, 3), 3, 3) + surfaces_with_lines(gf(17), 2, 4)


def test_secant_table_matches_direct(small_surfaces, mid_surfaces):
    for S in small_surfaces + mid_surfaces[:2]:
        for P, Q in itertools.combinations(S.points, 2):
            R = secant_third(S, P, Q)
            assert R == secant_third_direct(S, P, Q)
            assert R == secant_third(S, Q, P)
            if R is LINE_IN_SURFACE:
                assert line_through(S.field, P, Q) in S.klines
            else:
                assert R in points_on_line(S.field, line_through(S.field, P, Q))
                # third point of (P, R) is Q again unless R coincides with P or Q
                if R not in (P, Q):
                    assert secant_third(S, P, R) == Q


def test_secant_same_point_rejected(small_surfaces):
    S = small_surfaces[0]
    with pytest.raises(ValueError):
        secant_third(S, S.points[0], S.points[0])


def test_tangent_table_matches_direct(small_surfaces, mid_surfaces):
    for S in small_surfaces + mid_surfaces:
        for i, P in enumerate(S.points):
            res = tangent_residues(S, P)
            assert res == tangent_residues_direct(S, P)
            gamma = {S.points[j] for j in S.gamma_P(i)}
            assert res <= gamma
            assert all(incident(S.field, R, S.tangent_planes[i]) for R in res)


def test_eckardt_point_tangent_residues():
    # at an Eckardt point the tangent section is three lines through it: nothing new
    S = SurfaceModel(fermat(gf(2, 3)))
    ln = S.klines[0]
    for P in eckardt_points_on_line(S, ln):
        assert S.section(ln, S.tangent_planes[S.index[P]]).type in (PlaneType.T6, PlaneType.T7)
        assert tangent_residues(S, P) <= {P}
    assert len(eckardt_points_on_line(S, ln)) == 3


def test_closure_matches_naive_fixpoint(small_surfaces):
    rng = np.random.default_rng(0)
    for S in small_surfaces:
        for _ in range(4):
            k = int(rng.integers(1, 4))
            seeds = [S.points[i] for i in rng.choice(S.N, size=k, replace=False)]
            assert span_closure(S, seeds) == naive_closure(S, seeds)


def test_generators_match_naive(small_surfaces):
    for S in small_surfaces[:1] + small_surfaces[3:]:
        want = {P for P in S.points if len(naive_closure(S, [P])) == S.N}
        assert single_generators(S) == want
        status = generator_status(S, early_exit=True)
        if want:
            assert (status == 1).sum() == 1
            assert S.points[int(np.nonzero(status == 1)[0][0])] in want
        else:
            assert not (status == 1).any()


def test_closure_properties(mid_surfaces):
    rng = np.random.default_rng(1)
    for S in mid_surfaces:
        for _ in range(5):
            seeds = [S.points[i] for i in rng.choice(S.N, size=2, replace=False)]
            X = span_closure(S, seeds)
            assert is_closed(S, X)
            assert span_closure(S, X) == X
            extra = S.points[int(rng.integers(S.N))]
            assert X <= span_closure(S, seeds + [extra])
            for _ in range(10):
                assert span_closure(S, seeds, rng=np.random.default_rng(int(rng.integers(1 << 30)))) == X


def test_is_closed_agrees_with_closure(mid_surfaces):
    rng = np.random.default_rng(5)
    for S in mid_surfaces:
        assert is_closed(S, S.points)
        X = span_closure(S, [S.points[0]])
        assert is_closed(S, X)
        for _ in range(20):
            k = int(rng.integers(1, S.N))
            Y = {S.points[i] for i in rng.choice(S.N, size=k, replace=False)}
            assert is_closed(S, Y) == (span_closure(S, Y) == Y)


def test_witness_replay(mid_surfaces):
    rng = np.random.default_rng(2)
    for S in mid_surfaces:
        seeds = [S.points[int(rng.integers(S.N))]]
        st = span_state(S, seeds, rng=rng)
        assert st.generated == set(span_closure(S, seeds))
        for target in list(st.generated)[:15]:
            chain = witness_chain(st, target)
            assert replay_witness(S, seeds, chain)
            if target not in seeds:
                assert tuple(chain[-1]["output"]) == target
        if st.complete:
            continue
        missing = next(Q for Q in S.points if Q not in st.generated)
        with pytest.raises(KeyError):
            witness_chain(st, missing)


def test_replay_rejects_forged_step(mid_surfaces):
    S = mid_surfaces[0]
    P, Q = S.points[:2]
    R = secant_third(S, P, Q)
    wrong = next(X for X in S.points if X not in (P, Q, R))
    bad = [{"op": "secant", "inputs": [list(P), list(Q)], "output": list(wrong)}]
    assert not replay_witness(S, [P, Q], bad)
    assert not replay_witness(S, [P], bad)


def test_empty_seed_rejected(mid_surfaces):
    with pytest.raises(ValueError):
        span_closure(mid_surfaces[0], [])


def test_pigeonhole_threshold_algebra():
    for N, q in [(73, 8), (289, 16), (320, 17), (90, 9)]:
        t = pigeonhole_threshold(N, q)
        assert t == Fraction(N + q + 1, 2)
        for size in range(N + 1):
            assert (size > t) == (size > (N - size) + q + 1)


def test_pigeonhole_full_set_and_precondition(mid_surfaces):
    for S in mid_surfaces:
        rep = pigeonhole_check(S, S.points)
        assert rep.passed and rep.precondition_ok and rep.closure_equals_SK and rep.ok
        assert rep.complement_form_passed == rep.passed
        partial = set(S.points) - {S.points[S.line_points[S.klines[0]][0]]}
        rep = pigeonhole_check(S, partial)
        assert not rep.precondition_ok and rep.closure_equals_SK is None
        with pytest.raises(PreconditionError):
            pigeonhole_check(S, partial, strict=True)
        small = set(S.points[i] for ln in S.klines for i in S.line_points[ln])
        rep = pigeonhole_check(S, small)
        assert rep.precondition_ok and not rep.passed and rep.ok


def test_theorem_T_bound_closed_forms():
    for q in (8, 13, 16, 17, 19, 25, 27):
        assert theorem_T_lower_bound(q, q - 1) == Fraction(q * q + 2 * q + 5, 2)
        assert theorem_T_lower_bound(q, q) == Fraction(q * q + 3 * q + 4, 2)
        assert theorem_T_lower_bound(q, q + 1) == Fraction(q * q + 4 * q + 3, 2)
        assert complement_upper_bound(q, q) == Fraction((q - 2) * (q + 1), 2)
        assert complement_upper_bound(q, q + 1) == Fraction((q - 1) * (q + 1), 2)


@pytest.mark.parametrize("order", [16, 17])
def test_theorem_T_records(order):
    K = gf(2, 4) if order == 16 else gf(17)
    for S in surfaces_with_lines(K, 4, order):
        rec = find_theorem_T(S)
        assert rec is not None
        assert rec.meets_bound and rec.complement_ok(S.N)
        ln = rec.line
        assert all(S.points[i] in rec.T for i in S.line_points[ln])
        assert S.section(ln, rec.plane).type == PlaneType.T3
        other = next((s.plane for s in S.sections[ln] if s.type != PlaneType.T3), None)
        if other is not None:
            with pytest.raises(NoT3PlaneError):
                build_theorem_T(S, ln, other)


def test_inseparable_line_generators_fermat_gf16():
    S = SurfaceModel(fermat(gf(2, 4)))
    gens = single_generators(S)
    ln = S.klines[0]
    pts = non_eckardt_points(S, ln)
    assert len(pts) == 12
    assert set(pts) <= gens
