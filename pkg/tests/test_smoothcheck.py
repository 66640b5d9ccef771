import numpy as np
import pytest
import sympy

from cubicspan.forms import Form, cubic_from_terms, fermat, random_cubic, transform
from cubicspan.gf import gf
from cubicspan.projgeom import rank
from cubicspan.smoothcheck import (
    IdealBasis, SearchTooLarge, buchberger, exhaustive_singular_search, is_groebner, is_smooth,
    jacobian_ideal, reduce_basis, smooth_report,
)

X, Y, Z = (1, 0, 0), (0, 1, 0), (0, 0, 1)
ONE = (0, 0, 0)


def test_buchberger_variables_not_unit():
    K = gf(5)
    G = buchberger(IdealBasis(K, [{X: 1}, {Y: 1}, {Z: 1}]))
    assert not G.unit
    lead = {next(iter(g)) for g in reduce_basis(G).gens}
    assert lead == {X, Y, Z}


def test_buchberger_finds_unit():
    K = gf(7)
    G = buchberger(IdealBasis(K, [{(2, 0, 0): 1}, {X: 1, ONE: 1}]))
    assert G.unit
    assert reduce_basis(G).gens == [{ONE: 1}]


def test_buchberger_two_curves():
    K = gf(2, 2)
    gens = [{(2, 0, 0): 1, Y: 1}, {(0, 2, 0): 1, X: 1}]  # x^2 - y, y^2 - x in char 2
    G = buchberger(IdealBasis(K, gens))
    assert not G.unit
    assert is_groebner(G)
    # zeros over GF(16): x^4 = x, y = x^2
    big = gf(2, 4)
    zeros = 0
    for x in big.elements():
        for y in big.elements():
            if big.add(big.mul(x, x), y) == 0 and big.add(big.mul(y, y), x) == 0:
                zeros += 1
    assert zeros == 4


@pytest.mark.parametrize("p", [2, 3, 5, 7])
def test_buchberger_output_is_groebner(p):
    K = gf(p)
    rng = np.random.default_rng(p)
    for _ in range(10):
        F = random_cubic(K, rng)
        for chart in range(4):
            G = buchberger(jacobian_ideal(F, chart))
            assert is_groebner(G)


def test_fermat_smooth_and_cone_singular():
    assert is_smooth(fermat(gf(2, 4)))
    K = gf(5)
    cone = cubic_from_terms(K, {(3, 0, 0, 0): 1, (0, 3, 0, 0): 1, (0, 0, 3, 0): 1})
    assert not is_smooth(cone)
    assert exhaustive_singular_search(cone, 1) == [(0, 0, 0, 1)]
    assert exhaustive_singular_search(fermat(gf(2, 2)), 1) == []
    assert exhaustive_singular_search(fermat(gf(2, 2)), 2) == []


def test_oracle_cap():
    with pytest.raises(SearchTooLarge):
        exhaustive_singular_search(fermat(gf(37)), 2)


def forced_singular(K, rng):
    """Random cubic with no monomial of x0-degree >= 2, then a random coordinate change."""
    coeffs = [0 if m[0] >= 2 else int(rng.integers(0, K.q)) for m in Form(K, 4, 3, (0,) * 20).monomials]
    F = Form(K, 4, 3, tuple(coeffs))
    if F.is_zero():
        F = Form.from_dict(K, 4, 3, {(1, 1, 1, 0): 1})
    return transform(F, random_invertible(K, rng))


def random_invertible(K, rng):
    while True:
        M = rng.integers(0, K.q, size=(4, 4)).tolist()
        if rank(K, M) == 4:
            return M


@pytest.mark.parametrize("p,k", [(2, 1), (3, 1), (5, 1), (2, 2), (7, 1)])
def test_forced_singular_flagged(p, k):
    K = gf(p, k)
    rng = np.random.default_rng(100 + p)
    for _ in range(30):
        F = forced_singular(K, rng)
        assert not is_smooth(F)
        assert exhaustive_singular_search(F, 1)


def sympy_smooth(F) -> bool:
    """Independent verdict from sympy's Groebner bases over GF(p)."""
    p = F.field.p
    xs = sympy.symbols("x0:4")
    expr = sum(c * sympy.prod([v**e for v, e in zip(xs, m)]) for m, c in F.as_dict().items())
    polys = [expr] + [sympy.diff(expr, v) for v in xs]
    for i in range(4):
        aff = [sympy.expand(f.subs(xs[i], 1)) for f in polys]
        aff = [f for f in aff if f != 0]
        others = [v for j, v in enumerate(xs) if j != i]
        G = sympy.groebner(aff, *others, modulus=p, order="grevlex")
        if not (len(G.exprs) == 1 and G.exprs[0] == 1):
            return False
    return True


@pytest.mark.parametrize("p", [2, 3, 5, 7])
def test_agrees_with_sympy_groebner(p):
    K = gf(p)
    rng = np.random.default_rng(40 + p)
    for _ in range(12):
        F = random_cubic(K, rng)
        assert is_smooth(F) == sympy_smooth(F)


@pytest.mark.parametrize("p,k", [(2, 1), (3, 1), (5, 1), (2, 2)])
def test_invariant_under_coordinate_change(p, k):
    K = gf(p, k)
    rng = np.random.default_rng(7 * p + k)
    for _ in range(3):
        F = random_cubic(K, rng)
        verdict = is_smooth(F)
        for _ in range(20):
            assert is_smooth(transform(F, random_invertible(K, rng))) == verdict


def test_smooth_families():
    for p, k in [(2, 1), (2, 2), (5, 1), (7, 1), (2, 3)]:
        K = gf(p, k)
        for w in [(1, 1, 1, 1), (1, K.q - 1, 1, 1 if K.q < 3 else 2)]:
            assert is_smooth(fermat(K, w))
    # in characteristic 3 the diagonal cubic is the cube of a linear form; the cyclic form is smooth
    K3 = gf(3)
    assert not is_smooth(fermat(K3))
    cyc = cubic_from_terms(K3, {(2, 1, 0, 0): 1, (0, 2, 1, 0): 1, (0, 0, 2, 1): 1, (1, 0, 0, 2): 1})
    assert is_smooth(cyc)
    assert exhaustive_singular_search(cyc, 2) == []


def test_smooth_report():
    rep = smooth_report(fermat(gf(2, 2)))
    assert rep.smooth and rep.consistent
    assert rep.oracle[1] == [] and rep.oracle[2] == []
    rep = smooth_report(fermat(gf(2, 6)))
    assert rep.oracle[2] == "skipped"


def test_zero_form_rejected():
    with pytest.raises(ValueError):
        is_smooth(Form(gf(3), 4, 3, (0,) * 20))
