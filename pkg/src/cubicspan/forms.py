"""Homogeneous forms over GF(q): cubic surfaces and their restrictions.

A :class:`Form` stores its coefficients in descending lexicographic order of
exponent tuples. For the cubic in four variables that is
(3,0,0,0), (2,1,0,0), (2,0,1,0), ..., (0,0,0,3). Binary forms follow the same
rule, so a binary cubic is ``c0 s^3 + c1 s^2 t + c2 s t^2 + c3 t^3``.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Mapping, Sequence

import numpy as np

from .gf import FieldSpec
from .projgeom import P1Point, ProjLine, ProjPlane, ProjPoint, normalize, p1_points, plane_basis

Exponent = tuple[int, ...]
Poly = dict  # Exponent -> element code, zero coefficients never stored


class SingularPointError(ValueError):
    """All partial derivatives vanish at the requested point."""


class NotAComponentError(ValueError):
    """Exact division by a linear form left a nonzero remainder."""


@lru_cache(maxsize=None)
def monomials(nvars: int, degree: int) -> tuple[Exponent, ...]:
    def rec(n, d):
        if n == 1:
            return [(d,)]
        out = []
        for e in range(d, -1, -1):
            out.extend((e,) + rest for rest in rec(n - 1, d - e))
        return out

    return tuple(rec(nvars, degree))


@lru_cache(maxsize=None)
def _monomial_index(nvars: int, degree: int) -> dict[Exponent, int]:
    return {m: i for i, m in enumerate(monomials(nvars, degree))}


CUBIC_MONOMIALS = monomials(4, 3)


# -- sparse polynomial helpers (shared with smoothcheck) --------------------

def poly_add(field: FieldSpec, f: Mapping, g: Mapping) -> Poly:
    out = dict(f)
    for m, c in g.items():
        v = field.add(out.get(m, 0), c)
        if v:
            out[m] = v
        else:
            out.pop(m, None)
    return out


def poly_scale(field: FieldSpec, f: Mapping, c: int, shift: Exponent | None = None) -> Poly:
    if c == 0:
        return {}
    if shift is None:
        return {m: field.mul(c, v) for m, v in f.items()}
    return {tuple(a + b for a, b in zip(m, shift)): field.mul(c, v) for m, v in f.items()}


def poly_mul(field: FieldSpec, f: Mapping, g: Mapping) -> Poly:
    out: Poly = {}
    for m1, c1 in f.items():
        for m2, c2 in g.items():
            m = tuple(a + b for a, b in zip(m1, m2))
            v = field.add(out.get(m, 0), field.mul(c1, c2))
            if v:
                out[m] = v
            else:
                out.pop(m, None)
    return out


@dataclass(frozen=True)
class Form:
    """Homogeneous polynomial; coefficients follow :func:`monomials` order."""

    field: FieldSpec
    nvars: int
    degree: int
    coeffs: tuple[int, ...]

    def __post_init__(self):
        if len(self.coeffs) != len(monomials(self.nvars, self.degree)):
            raise ValueError("coefficient count does not match the monomial basis")

    @classmethod
    def from_dict(cls, field: FieldSpec, nvars: int, degree: int, terms: Mapping[Exponent, int]) -> "Form":
        idx = _monomial_index(nvars, degree)
        coeffs = [0] * len(idx)
        for m, c in terms.items():
            if sum(m) != degree:
                raise ValueError(f"monomial {m} has the wrong degree")
            coeffs[idx[m]] = field.add(coeffs[idx[m]], c)
        return cls(field, nvars, degree, tuple(coeffs))

    @cached_property
    def monomials(self) -> tuple[Exponent, ...]:
        return monomials(self.nvars, self.degree)

    def as_dict(self) -> Poly:
        return {m: c for m, c in zip(self.monomials, self.coeffs) if c}

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def canonical(self) -> "Form":
        """Scaled so the first nonzero coefficient is 1."""
        if self.is_zero():
            return self
        return Form(self.field, self.nvars, self.degree, normalize(self.field, self.coeffs))

    def scale(self, c: int) -> "Form":
        return Form(self.field, self.nvars, self.degree, tuple(self.field.mul(c, x) for x in self.coeffs))

    def __add__(self, other: "Form") -> "Form":
        if (self.field, self.nvars, self.degree) != (other.field, other.nvars, other.degree):
            raise ValueError("incompatible forms")
        return Form(self.field, self.nvars, self.degree,
                    tuple(self.field.add(a, b) for a, b in zip(self.coeffs, other.coeffs)))

    def __mul__(self, other: "Form") -> "Form":
        if self.field != other.field or self.nvars != other.nvars:
            raise ValueError("incompatible forms")
        prod = poly_mul(self.field, self.as_dict(), other.as_dict())
        return Form.from_dict(self.field, self.nvars, self.degree + other.degree, prod)

    def evaluate(self, point: Sequence[int]) -> int:
        F = self.field
        pw = []
        for x in point:
            row = [1]
            for _ in range(self.degree):
                row.append(F.mul(row[-1], x))
            pw.append(row)
        total = 0
        for m, c in zip(self.monomials, self.coeffs):
            if c:
                term = c
                for i, e in enumerate(m):
                    if e:
                        term = F.mul(term, pw[i][e])
                total = F.add(total, term)
        return total

    def np_evaluate(self, pts: np.ndarray) -> np.ndarray:
        """Evaluate at every row of an (n, nvars) code array."""
        F = self.field
        pts = np.asarray(pts, dtype=np.int64)
        pw = [[np.ones(pts.shape[0], dtype=np.int64)] for _ in range(self.nvars)]
        for i in range(self.nvars):
            for _ in range(self.degree):
                pw[i].append(F.np_mul(pw[i][-1], pts[:, i]))
        total = np.zeros(pts.shape[0], dtype=np.int64)
        for m, c in zip(self.monomials, self.coeffs):
            if c:
                term = np.full(pts.shape[0], c, dtype=np.int64)
                for i, e in enumerate(m):
                    if e:
                        term = F.np_mul(term, pw[i][e])
                total = F.np_add(total, term)
        return total

    def partial(self, i: int) -> "Form":
        F = self.field
        terms = {}
        for m, c in zip(self.monomials, self.coeffs):
            if c and m[i]:
                v = F.mul(c, F.from_int(m[i]))
                if v:
                    dm = tuple(e - (j == i) for j, e in enumerate(m))
                    terms[dm] = v
        return Form.from_dict(F, self.nvars, self.degree - 1, terms)

    @cached_property
    def partials(self) -> tuple["Form", ...]:
        return tuple(self.partial(i) for i in range(self.nvars))

    def gradient(self, point: Sequence[int]) -> tuple[int, ...]:
        return tuple(d.evaluate(point) for d in self.partials)

    def np_gradient(self, pts: np.ndarray) -> np.ndarray:
        return np.stack([d.np_evaluate(pts) for d in self.partials], axis=-1)

    def substitute(self, images: Sequence[Sequence[int]]) -> "Form":
        """Compose with the linear map x_i = sum_j images[i][j] y_j."""
        F = self.field
        m = len(images[0])
        linear = []
        for row in images:
            linear.append({tuple(int(j == k) for k in range(m)): c for j, c in enumerate(row) if c})
        powers = []
        for lin in linear:
            pw = [{(0,) * m: 1}]
            for _ in range(self.degree):
                pw.append(poly_mul(F, pw[-1], lin))
            powers.append(pw)
        out: Poly = {}
        for mono, c in zip(self.monomials, self.coeffs):
            if not c:
                continue
            term = {(0,) * m: c}
            for i, e in enumerate(mono):
                if e:
                    term = poly_mul(F, term, powers[i][e])
            out = poly_add(F, out, term)
        return Form.from_dict(F, m, self.degree, out)

    def dehomogenize(self, i: int) -> Poly:
        """Set x_i = 1; exponents of the remaining variables keep their order."""
        out: Poly = {}
        for m, c in zip(self.monomials, self.coeffs):
            if c:
                key = m[:i] + m[i + 1:]
                v = self.field.add(out.get(key, 0), c)
                if v:
                    out[key] = v
                else:
                    out.pop(key, None)
        return out

    def to_json(self) -> list[list[int]]:
        return [list(self.field.coeffs(c)) for c in self.coeffs]

    def __repr__(self):
        names = "xyzw" if self.nvars == 4 else ("xyz" if self.nvars == 3 else "st")
        terms = []
        for m, c in zip(self.monomials, self.coeffs):
            if c:
                mono = "*".join(f"{names[i]}^{e}" if e > 1 else names[i] for i, e in enumerate(m) if e)
                terms.append(f"{c}*{mono}" if c != 1 or not mono else mono)
        return " + ".join(terms) or "0"


# Named aliases; each is a Form of fixed shape.
CubicForm = Form
TernaryCubic = Form
TernaryConic = Form
BinaryCubic = Form


def cubic_form(field: FieldSpec, coeffs: Sequence[int]) -> Form:
    coeffs = tuple(int(c) for c in coeffs)
    if len(coeffs) != 20:
        raise ValueError("a cubic surface needs 20 coefficients")
    if not any(coeffs):
        raise ValueError("the zero form does not define a surface")
    return Form(field, 4, 3, coeffs)


def cubic_from_terms(field: FieldSpec, terms: Mapping[Exponent, int]) -> Form:
    """Cubic from {exponent: element code}; FieldElement values are accepted too."""
    return Form.from_dict(field, 4, 3, {m: int(c) for m, c in terms.items()})


def fermat(field: FieldSpec, weights: Sequence[int] = (1, 1, 1, 1)) -> Form:
    terms = {}
    for i, w in enumerate(weights):
        e = [0] * 4
        e[i] = 3
        terms[tuple(e)] = w
    return Form.from_dict(field, 4, 3, terms)


def form_from_json(record: Mapping) -> Form:
    field = FieldSpec.from_json(record["field"])
    coeffs = [field.from_coeffs(v) if isinstance(v, (list, tuple)) else field.from_int(v) for v in record["coeffs"]]
    return cubic_form(field, coeffs)


def form_to_json(F: Form) -> dict:
    return {"field": F.field.to_json(), "coeffs": F.to_json()}


def evaluate(F: Form, P: Sequence[int]) -> int:
    return F.evaluate(P)


def partials(F: Form) -> tuple[Form, ...]:
    return F.partials


def tangent_plane(F: Form, P: ProjPoint) -> ProjPlane:
    g = F.gradient(P)
    if not any(g):
        raise SingularPointError(f"all partial derivatives vanish at {P}")
    return normalize(F.field, g)


def restrict_to_plane(F: Form, plane: ProjPlane, basis: Sequence[Sequence[int]] | None = None) -> Form:
    """F on the plane in coordinates of ``basis`` (default: echelon basis)."""
    if basis is None:
        basis = plane_basis(F.field, plane)
    images = [[b[i] for b in basis] for i in range(4)]
    return F.substitute(images)


def restrict_to_line(F: Form, line: ProjLine) -> Form:
    r0, r1 = line
    return F.substitute([[r0[i], r1[i]] for i in range(4)])


def linear_form(field: FieldSpec, coeffs: Sequence[int]) -> Form:
    return Form(field, len(coeffs), 1, tuple(coeffs))


def divide_by_line(gamma: Form, linear: Form) -> Form:
    """Exact quotient of a plane cubic by a linear form."""
    F = gamma.field
    lin = list(linear.coeffs)
    j = next((i for i, c in enumerate(lin) if c), None)
    if j is None:
        raise ValueError("zero linear form")
    c = F.inv(lin[j])
    lin = [F.mul(c, x) for x in lin]
    ldict = {tuple(int(k == i) for k in range(gamma.nvars)): x for i, x in enumerate(lin) if x}
    rem = gamma.as_dict()
    quo: Poly = {}
    # eliminate y_j from the top degree down; each step lowers the y_j-degree
    while True:
        cands = [m for m in rem if m[j] > 0]
        if not cands:
            break
        m = max(cands, key=lambda e: (e[j], e))
        coef = rem[m]
        shift = tuple(e - (k == j) for k, e in enumerate(m))
        quo = poly_add(F, quo, {shift: coef})
        rem = poly_add(F, rem, poly_scale(F, ldict, F.neg(coef), shift))
    if rem:
        raise NotAComponentError("linear form does not divide the cubic")
    return Form.from_dict(F, gamma.nvars, gamma.degree - 1, quo)


def divide_binary_by_root(f: Form, root: P1Point) -> Form:
    """Quotient of a binary form by the linear factor vanishing at ``root``."""
    F = f.field
    s0, t0 = root
    a, b = t0, F.neg(s0)  # L = t0*s - s0*t
    c = list(f.coeffs)
    d = f.degree
    g = [0] * d
    if a:
        ainv = F.inv(a)
        g[0] = F.mul(c[0], ainv)
        for i in range(1, d):
            g[i] = F.mul(F.sub(c[i], F.mul(b, g[i - 1])), ainv)
        rem = F.sub(c[d], F.mul(b, g[d - 1]))
    else:
        binv = F.inv(b)
        rem = c[0]
        for i in range(d):
            g[i] = F.mul(c[i + 1], binv)
    if rem:
        raise NotAComponentError(f"{root} is not a root")
    return Form(F, 2, d - 1, tuple(g))


def p1_canonical(field: FieldSpec, s: int, t: int) -> P1Point:
    return normalize(field, (s, t))


def binary_roots(f: Form, known: Sequence[P1Point] = ()) -> list[P1Point]:
    """K-rational roots of a binary form with multiplicity, in P^1 order.

    Known roots are deflated first; a residual linear or quadratic factor is
    solved directly, a residual cubic by search over P^1(K).
    """
    if f.nvars != 2:
        raise ValueError("not a binary form")
    if f.is_zero():
        raise ValueError("the zero form has no finite root set")
    F = f.field
    roots = []
    g = f
    for r in known:
        r = p1_canonical(F, *r)
        g = divide_binary_by_root(g, r)
        roots.append(r)
    while g.degree > 0:
        if g.degree == 1:
            a, b = g.coeffs  # a s + b t
            roots.append(p1_canonical(F, F.neg(b), a))
            break
        if g.degree == 2:
            roots.extend(_binary_quadratic_roots(F, *g.coeffs))
            break
        r = next((pt for pt in p1_points(F) if g.evaluate(pt) == 0), None)
        if r is None:
            break
        g = divide_binary_by_root(g, r)
        roots.append(r)
    order = {pt: i for i, pt in enumerate(p1_points(F))}
    return sorted(roots, key=order.__getitem__)


def _binary_quadratic_roots(F: FieldSpec, a: int, b: int, c: int) -> list[P1Point]:
    # a s^2 + b s t + c t^2
    if a == 0:
        if b == 0:
            if c == 0:
                raise ValueError("zero quadratic")
            return [(1, 0), (1, 0)]
        return [(1, 0), p1_canonical(F, F.neg(c), b)]
    ainv = F.inv(a)
    xs = F.solve_quadratic(F.mul(b, ainv), F.mul(c, ainv))
    return [p1_canonical(F, x, 1) for x in xs]


def binary_quadratic_roots(field: FieldSpec, a: int, b: int, c: int) -> list[P1Point]:
    """Roots of a s^2 + b s t + c t^2 in P^1(K), with multiplicity."""
    out = _binary_quadratic_roots(field, a, b, c)
    order = {pt: i for i, pt in enumerate(p1_points(field))}
    return sorted(out, key=order.__getitem__)


def roots_binary_cubic(f: Form, known: Sequence[P1Point] = ()) -> list[P1Point]:
    if f.degree != 3:
        raise ValueError("not a cubic")
    return binary_roots(f, known)


def root_multiplicities(roots: Sequence[P1Point]) -> Counter:
    return Counter(roots)


def transform(F: Form, matrix: Sequence[Sequence[int]]) -> Form:
    """F(M x) for a 4x4 matrix M of element codes."""
    return F.substitute(matrix)


def random_cubic(field: FieldSpec, rng: np.random.Generator) -> Form:
    while True:
        coeffs = tuple(int(x) for x in rng.integers(0, field.q, size=20))
        if any(coeffs):
            return Form(field, 4, 3, coeffs)


__all__ = [
    "Form", "CubicForm", "TernaryCubic", "TernaryConic", "BinaryCubic", "monomials",
    "CUBIC_MONOMIALS", "cubic_form", "cubic_from_terms", "fermat", "form_from_json",
    "form_to_json", "evaluate", "partials", "tangent_plane", "restrict_to_plane",
    "restrict_to_line", "linear_form", "divide_by_line", "divide_binary_by_root",
    "binary_roots", "binary_quadratic_roots", "roots_binary_cubic", "transform", "random_cubic",
    "SingularPointError", "NotAComponentError",
]
