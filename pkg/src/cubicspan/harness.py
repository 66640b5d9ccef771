"""Seeded corpora, per-surface verification reports, census and the CLI."""
from __future__ import annotations

import argparse
import contextlib
import json
import sys
import time
import warnings
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field as dc_field
from typing import Iterable, Sequence

import numpy as np

from .forms import Form, cubic_form, form_from_json, form_to_json
from .gf import FieldSpec, gf
from .projgeom import skew
from .smoothcheck import SearchTooLarge, exhaustive_singular_search, is_smooth
from .span import (
    NoT3PlaneError, find_theorem_T, generator_status, non_eckardt_points, pigeonhole_check,
    span_closure, span_state, witness_chain,
)
from .surface import (
    ContractViolation, NotSmoothError, PlaneType, SurfaceModel, check_basis_invariance,
    check_conic_points_off_lines, check_full_line_scan, check_partition_identity,
    check_plane_counts, check_points_and_lines, check_tangent_planes_contain_lines,
    check_weil_form, eckardt_points_on_line, find_k_lines, gauss_separable, has_skew_pair,
    off_line_census, parabolic_points_on_line, pencil_census,
)

DEFAULT_SWEEP = (8, 16, 17, 19, 25, 27)
EXPLORATION_SWEEP = (4, 5, 7, 9, 11, 13)

PASS, FAIL, SKIP, OBSERVED = "pass", "fail", "skip", "observed"


def in_hypothesis(q: int) -> bool:
    """Field sizes for which every K-line surface is asserted to have a single generator."""
    return q == 8 or q >= 16


def field_for_order(q: int) -> FieldSpec:
    for p in range(2, q + 1):
        if q % p == 0:
            k = 0
            r = q
            while r % p == 0:
                r //= p
                k += 1
            if r != 1:
                break
            return gf(p, k)
    raise ValueError(f"{q} is not a prime power")


# -- corpus -------------------------------------------------------------------

def surface_rng(seed: int, index: int) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(np.random.SeedSequence([seed, index])))


def random_surface(spec: FieldSpec, seed: int, index: int = 0) -> Form:
    """Deterministic draw of 20 coefficients keyed by (seed, index); never the zero form."""
    rng = surface_rng(seed, index)
    while True:
        coeffs = rng.integers(0, spec.q, size=20)
        if coeffs.any():
            return cubic_form(spec, [int(c) for c in coeffs])


@dataclass
class CorpusFilter:
    require_smooth: bool = True
    min_klines: int = 0
    forbid_skew_pair: bool = False
    require_inseparable_line: bool = False
    max_attempts: int = 10000

    def __post_init__(self):
        if self.max_attempts <= 0:
            raise ValueError("max_attempts must be positive")

    @classmethod
    def parse(cls, text: str | None, max_attempts: int = 10000) -> "CorpusFilter":
        """From the comma list 'smooth,lines>=1,no-skew,insep-line'."""
        f = cls(require_smooth=False, max_attempts=max_attempts)
        for tok in (text or "").split(","):
            tok = tok.strip()
            if not tok:
                continue
            if tok == "smooth":
                f.require_smooth = True
            elif tok.startswith("lines>="):
                f.min_klines = int(tok[len("lines>="):])
            elif tok == "no-skew":
                f.forbid_skew_pair = True
            elif tok == "insep-line":
                f.require_inseparable_line = True
            else:
                raise ValueError(f"unknown filter token {tok!r}")
        return f

    @property
    def needs_lines(self) -> bool:
        return self.min_klines > 0 or self.forbid_skew_pair or self.require_inseparable_line


@dataclass
class Corpus:
    spec: FieldSpec
    seed: int
    surfaces: list = dc_field(default_factory=list)  # SurfaceModel, or Form when no model was needed
    indices: list = dc_field(default_factory=list)
    stats: Counter = dc_field(default_factory=Counter)


def _accept(F: Form, filt: CorpusFilter, stats: Counter):
    """Cheap tests first; returns a SurfaceModel, the bare form, or None."""
    lines = None
    if filt.needs_lines:
        lines = find_k_lines(F)
        if len(lines) < filt.min_klines:
            stats["rejected_lines"] += 1
            return None
        if filt.forbid_skew_pair and has_skew_pair(F.field, lines):
            stats["rejected_skew"] += 1
            return None
        if filt.require_inseparable_line and not lines:
            stats["rejected_insep"] += 1
            return None
    if filt.require_smooth and not is_smooth(F):
        stats["rejected_singular"] += 1
        return None
    if not lines or not (filt.require_smooth or filt.require_inseparable_line):
        return F
    try:
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            S = SurfaceModel(F, check_smooth=not filt.require_smooth)
    except NotSmoothError:
        stats["rejected_singular"] += 1
        return None
    if filt.require_inseparable_line and all(gauss_separable(S, ln) for ln in S.klines):
        stats["rejected_insep"] += 1
        return None
    return S


def sample_corpus(spec: FieldSpec, filt: CorpusFilter, count: int, seed: int = 0,
                  start: int = 0) -> Corpus:
    corpus = Corpus(spec, seed)
    idx = start
    while len(corpus.surfaces) < count and corpus.stats["attempts"] < filt.max_attempts:
        F = random_surface(spec, seed, idx)
        corpus.stats["attempts"] += 1
        got = _accept(F, filt, corpus.stats)
        if got is not None:
            corpus.surfaces.append(got)
            corpus.indices.append(idx)
            corpus.stats["accepted"] += 1
        idx += 1
    if len(corpus.surfaces) < count:
        warnings.warn(f"corpus exhausted: {len(corpus.surfaces)} of {count} after "
                      f"{corpus.stats['attempts']} attempts", stacklevel=2)
    return corpus


# -- verification ---------------------------------------------------------------

@dataclass
class Check:
    status: str
    witness: list | dict | None = None
    note: str = ""

    def to_json(self) -> dict:
        out = {"status": self.status}
        if self.witness:
            out["witness"] = _jsonable(self.witness)
        if self.note:
            out["note"] = self.note
        return out


def _jsonable(x):
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple, set, frozenset)):
        items = sorted(x) if isinstance(x, (set, frozenset)) else x
        return [_jsonable(v) for v in items]
    if isinstance(x, (np.integer,)):
        return int(x)
    if isinstance(x, PlaneType):
        return str(x)
    return x


@dataclass
class VerificationReport:
    field: dict
    coeffs: list
    points: int = 0
    m: int | None = None
    lines: int = 0
    skew_pair: bool = False
    exploration: bool = False
    pencils: list = dc_field(default_factory=list)
    off_line_classes: dict = dc_field(default_factory=dict)
    generator_count: int | None = None
    pigeonhole: dict | None = None
    theorem_T: dict | None = None
    checks: dict = dc_field(default_factory=dict)
    timing: dict = dc_field(default_factory=dict)

    def check(self, name: str, status: str, witness=None, note: str = "") -> None:
        self.checks[name] = Check(status, witness, note)

    @property
    def failed(self) -> list[str]:
        return [k for k, c in self.checks.items() if c.status == FAIL]

    def status_vector(self) -> tuple[tuple[str, str], ...]:
        return tuple((k, c.status) for k, c in self.checks.items())

    def to_json(self) -> dict:
        return {
            "field": self.field,
            "coeffs": self.coeffs,
            "points": self.points,
            "m": self.m,
            "lines": self.lines,
            "skew_pair": self.skew_pair,
            "exploration": self.exploration,
            "pencils": self.pencils,
            "off_line_classes": self.off_line_classes,
            "generator_count": self.generator_count,
            "pigeonhole": self.pigeonhole,
            "theorem_T": self.theorem_T,
            "checks": {k: c.to_json() for k, c in self.checks.items()},
            "timing": self.timing,
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), separators=(",", ":"))


def _witness_seed(F: Form) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence([int(c) for c in F.coeffs] + [F.field.q]))


def _list_check(rep: VerificationReport, name: str, fn, *args) -> None:
    try:
        bad = fn(*args)
    except ContractViolation as exc:
        rep.check(name, FAIL, [str(exc)])
        return
    rep.check(name, FAIL if bad else PASS, bad[:10] if bad else None)


def _closure_of(S: SurfaceModel, status, i: int) -> frozenset | None:
    """Closure of one point; None stands for the whole of S(K)."""
    if status is not None and status[i] == 1:
        return None
    return span_closure(S, [S.points[i]])


def _covers(closure, targets: Iterable) -> bool:
    return closure is None or all(t in closure for t in targets)


def verify_surface(S: SurfaceModel | Form, early_exit: bool = False,
                   basis_lines: int | None = 1) -> VerificationReport:
    """Run every check on one surface; contract violations become failed checks."""
    t0 = time.perf_counter()
    F = S.form if isinstance(S, SurfaceModel) else S
    rep = VerificationReport(F.field.to_json(), F.to_json())
    if not isinstance(S, SurfaceModel):
        try:
            with warnings.catch_warnings():
                warnings.simplefilter("ignore")
                S = SurfaceModel(F)
        except NotSmoothError as exc:
            rep.check("smooth", FAIL, [str(exc)])
            return rep
        except ContractViolation as exc:
            rep.check("surface_model", FAIL, [str(exc)])
            return rep
    q = S.q
    exploring = not in_hypothesis(q)
    assertive = OBSERVED if exploring else FAIL
    rep.exploration = exploring
    rep.points, rep.m, rep.lines, rep.skew_pair = S.N, S.m_value, len(S.klines), S.has_skew_pair
    rep.check("smooth", PASS)
    if not S.klines:
        rep.check("has_k_line", SKIP, note="no K-line; outside the theorem's hypothesis")
        rep.timing["total"] = round(time.perf_counter() - t0, 4)
        return rep
    rep.check("has_k_line", PASS)

    # pencil censuses
    censuses = [pencil_census(S, ln) for ln in S.klines]
    rep.pencils = [c.to_json() for c in censuses]
    bad = [{"line": c.line, "violations": c.violations} for c in censuses if c.violations]
    rep.check("pencil_identities", FAIL if bad else PASS, bad or None)
    bad = [{"line": c.line, "violations": c.point_violations} for c in censuses if c.point_violations]
    rep.check("parabolic_eckardt_counts", FAIL if bad else PASS, bad or None)
    insep = [c.line for c in censuses if not c.separable]
    bad = [{"line": ln, "eckardt": c.eckardt} for ln, c in zip(S.klines, censuses)
           if not c.separable and c.eckardt != 5]
    if insep:
        rep.check("inseparable_line_eckardt_count", OBSERVED, bad or None,
                  note="rational Eckardt points on inseparable lines")

    # surface invariants
    _list_check(rep, "points_and_lines_on_surface", check_points_and_lines, S)
    _list_check(rep, "point_count_form", check_weil_form, S)
    if q <= 7:
        _list_check(rep, "full_line_scan_agrees", check_full_line_scan, S)
    else:
        rep.check("full_line_scan_agrees", SKIP, note="only run for q <= 7")
    _list_check(rep, "tangent_planes_contain_lines", check_tangent_planes_contain_lines, S)
    _list_check(rep, "plane_point_counts", check_plane_counts, S)
    _list_check(rep, "partition_identity", check_partition_identity, S)
    _list_check(rep, "conic_points_off_lines", check_conic_points_off_lines, S)
    lines = S.klines if basis_lines is None else S.klines[:basis_lines]
    _list_check(rep, "basis_invariance", check_basis_invariance, S, _witness_seed(F), lines)
    counts, bad = off_line_census(S)
    rep.off_line_classes = dict(sorted(counts.items()))
    rep.check("off_line_classes", FAIL if bad else PASS, bad[:10] or None)
    rep.timing["surface"] = round(time.perf_counter() - t0, 4)

    # theorem T and pigeonhole
    t1 = time.perf_counter()
    try:
        rec = find_theorem_T(S)
    except NoT3PlaneError:
        rec = None
    if rec is None:
        rep.check("theorem_T_bounds", SKIP, note="no separable line with a T3 plane")
        rep.check("pigeonhole", SKIP, note="no T available")
    else:
        rep.theorem_T = {"line": rec.line, "plane": rec.plane, "n": rec.n, "size": len(rec.T),
                         "lower_bound": str(rec.lower_bound),
                         "complement": S.N - len(rec.T),
                         "complement_bound": str(rec.complement_bound)}
        rep.theorem_T = _jsonable(rep.theorem_T)
        ok = rec.meets_bound and rec.complement_ok(S.N)
        rep.check("theorem_T_bounds", PASS if ok else assertive,
                  None if ok else [rep.theorem_T])
        ph = pigeonhole_check(S, rec.T)
        rep.pigeonhole = ph.to_json()
        if not ph.precondition_ok:
            rep.check("pigeonhole", SKIP, note="some K-line is not contained in T")
        elif ph.passed and ph.closure_equals_SK:
            rep.check("pigeonhole", PASS)
        elif ph.passed:
            rep.check("pigeonhole", FAIL, [rep.pigeonhole])
        else:
            rep.check("pigeonhole", assertive, [rep.pigeonhole], note="threshold not reached")
    rep.timing["pigeonhole"] = round(time.perf_counter() - t1, 4)

    # generators
    t2 = time.perf_counter()
    status = generator_status(S, early_exit=early_exit)
    gens = int((status == 1).sum())
    rep.generator_count = gens if not early_exit else None
    rep.check("generator_exists", PASS if gens else assertive)
    if early_exit:
        status = None

    small = q < 4
    eck_free = {ln: non_eckardt_points(S, ln) for ln in S.klines}
    bad = []
    for ln, pts in eck_free.items():
        for P in pts:
            i = S.index[P]
            cl = _closure_of(S, status, i)
            if not _covers(cl, (S.points[j] for j in S.gamma_P(i))):
                bad.append({"line": ln, "point": P})
    rep.check("tangent_section_in_closure", PASS if not bad else (OBSERVED if small else FAIL),
              bad[:10] or None)

    if S.has_skew_pair:
        skew_lines = [a for a in S.klines if any(skew(S.field, a, b) for b in S.klines)]
        bad = []
        for ln in skew_lines:
            for P in eck_free[ln]:
                cl = _closure_of(S, status, S.index[P])
                if cl is not None and len(cl) != S.N:
                    bad.append({"line": ln, "point": P, "closure": len(cl)})
        rep.check("skew_line_generators", PASS if not bad else (OBSERVED if small else FAIL),
                  bad[:10] or None)
    else:
        rep.check("skew_line_generators", SKIP, note="no skew pair")

    bad = []
    for ln, pts in eck_free.items():
        union = {j for i in S.line_points[ln] for j in S.gamma_P(i)}
        for P in pts:
            cl = _closure_of(S, status, S.index[P])
            if not _covers(cl, (S.points[j] for j in union)):
                bad.append({"line": ln, "point": P})
    rep.check("line_tangent_sections_in_closure", PASS if not bad else assertive, bad[:10] or None)

    if insep:
        bad = []
        for ln in insep:
            for P in eck_free[ln]:
                cl = _closure_of(S, status, S.index[P])
                if cl is not None and len(cl) != S.N:
                    bad.append({"line": ln, "point": P, "closure": len(cl)})
        rep.check("inseparable_line_generators",
                  PASS if not bad else (FAIL if q >= 8 else OBSERVED), bad[:10] or None)

    if q >= 13 and not S.has_skew_pair and all(c.separable for c in censuses):
        bad = []
        for ln in S.klines:
            on_l = set(S.line_points[ln])
            for sec in S.sections[ln]:
                if sec.type != PlaneType.T3:
                    continue
                plane_pts = S.plane_point_indices(sec.plane)
                gamma = [S.points[j] for j in plane_pts]
                if not any(_covers(_closure_of(S, status, j), gamma) for j in plane_pts if j not in on_l):
                    bad.append({"line": ln, "plane": sec.plane})
        rep.check("t3_plane_from_conic_point", FAIL if bad else PASS, bad[:10] or None)
    rep.timing["span"] = round(time.perf_counter() - t2, 4)
    rep.timing["total"] = round(time.perf_counter() - t0, 4)
    return rep


def _verify_record(args) -> dict:
    record, early_exit = args
    return verify_surface(form_from_json(record), early_exit=early_exit).to_json()


def verify_records(records: Sequence[dict], early_exit: bool = False, workers: int = 1) -> list[dict]:
    """Reports in input order; with workers > 1 the surfaces run in a process pool."""
    jobs = [(r, early_exit) for r in records]
    if workers <= 1:
        return [_verify_record(j) for j in jobs]
    with ProcessPoolExecutor(max_workers=workers) as ex:
        return list(ex.map(_verify_record, jobs, chunksize=1))


def census(spec: FieldSpec | None, corpus: Iterable) -> dict:
    """Aggregate record over reports (dicts or VerificationReports) or surfaces."""
    types: Counter = Counter()
    n_values: Counter = Counter()
    m_hist: Counter = Counter()
    failed: Counter = Counter()
    off: Counter = Counter()
    surfaces = with_lines = with_gen = 0
    gen_points = total_points = 0
    sum_ok = True
    for item in corpus:
        if isinstance(item, (SurfaceModel, Form)):
            item = verify_surface(item)
        if isinstance(item, VerificationReport):
            item = item.to_json()
        surfaces += 1
        m_hist[str(item["m"])] += 1
        for name, chk in item["checks"].items():
            if chk["status"] == FAIL:
                failed[name] += 1
        if not item["lines"]:
            continue
        with_lines += 1
        for pen in item["pencils"]:
            for t, c in pen["types"].items():
                types[t] += c
            if spec is not None and sum(pen["types"].values()) != spec.q + 1:
                sum_ok = False
            n_values[str(pen["n"])] += 1
        for k, v in item["off_line_classes"].items():
            off[k] += v
        if item["generator_count"]:
            with_gen += 1
            gen_points += item["generator_count"]
            total_points += item["points"]
    return {
        "field": spec.to_json() if spec is not None else None,
        "surfaces": surfaces,
        "with_lines": with_lines,
        "type_distribution": {t.name: types.get(t.name, 0) for t in PlaneType},
        "n_values": dict(sorted(n_values.items(), key=lambda kv: int(kv[0]))),
        "m_histogram": dict(sorted(m_hist.items())),
        "off_line_classes": dict(sorted(off.items())),
        "generator_fraction": (with_gen / with_lines) if with_lines else None,
        "generator_point_fraction": (gen_points / total_points) if total_points else None,
        "pencil_sizes_ok": sum_ok,
        "failed_checks": dict(sorted(failed.items())),
    }


# -- CLI ------------------------------------------------------------------------

def _read_records(path: str) -> list[dict]:
    fh = sys.stdin if path == "-" else open(path)
    try:
        return [json.loads(line) for line in fh if line.strip()]
    finally:
        if fh is not sys.stdin:
            fh.close()


def _open_out(path: str | None):
    if path in (None, "-"):
        return contextlib.nullcontext(sys.stdout)
    return open(path, "w")


def _emit(fh, obj) -> None:
    fh.write(json.dumps(_jsonable(obj), separators=(",", ":")) + "\n")


def _model(record: dict) -> SurfaceModel:
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        return SurfaceModel(form_from_json(record))


def _parse_point(text: str) -> tuple[int, ...]:
    parts = [int(x) for x in text.split(":")]
    if len(parts) != 4:
        raise argparse.ArgumentTypeError("a point is four colon-separated element codes")
    return tuple(parts)


def cmd_random(args) -> int:
    mod = tuple(int(x) for x in args.modulus.split(",")) if args.modulus else None
    spec = gf(args.p, args.k, mod)
    filt = CorpusFilter.parse(args.filter, args.max_attempts)
    corpus = sample_corpus(spec, filt, args.count, args.seed)
    with _open_out(args.out) as fh:
        for S in corpus.surfaces:
            F = S.form if isinstance(S, SurfaceModel) else S
            _emit(fh, form_to_json(F))
    print(json.dumps({"accepted": len(corpus.surfaces), **dict(corpus.stats)}), file=sys.stderr)
    return 0


def smooth_row(F: Form, cap: int = 1 << 10) -> dict:
    row = {"smooth": is_smooth(F)}
    oracle = {}
    for d in (1, 2):
        try:
            oracle[str(d)] = exhaustive_singular_search(F, d, cap)
        except SearchTooLarge:
            oracle[str(d)] = "skipped"
    row["oracle"] = oracle
    row["consistent"] = not (row["smooth"] and any(isinstance(v, list) and v for v in oracle.values()))
    return row


def cmd_smooth(args) -> int:
    with _open_out(args.out) as out:
        for i, rec in enumerate(_read_records(args.input)):
            _emit(out, {"index": i, **smooth_row(form_from_json(rec), args.cap)})
    return 0


def cmd_lines(args) -> int:
    with _open_out(args.out) as out:
        for i, rec in enumerate(_read_records(args.input)):
            F = form_from_json(rec)
            lines = find_k_lines(F)
            _emit(out, {"index": i, "count": len(lines), "skew_pair": has_skew_pair(F.field, lines),
                        "lines": [[list(r) for r in ln] for ln in lines]})
    return 0


def classify_row(S: SurfaceModel, line_index: int) -> dict:
    if line_index >= len(S.klines):
        return {"error": f"surface has {len(S.klines)} K-lines"}
    ln = S.klines[line_index]
    return {
        "line": [list(r) for r in ln],
        "planes": [{"plane": list(s.plane), "type": str(s.type), "gamma_count": s.gamma_count}
                   for s in S.sections[ln]],
        "parabolic": [list(P) for P in parabolic_points_on_line(S, ln)],
        "eckardt": [list(P) for P in eckardt_points_on_line(S, ln)],
        "census": pencil_census(S, ln).to_json(),
    }


def cmd_classify(args) -> int:
    with _open_out(args.out) as out:
        for i, rec in enumerate(_read_records(args.input)):
            try:
                S = _model(rec)
            except NotSmoothError:
                _emit(out, {"index": i, "error": "singular"})
                continue
            _emit(out, {"index": i, **classify_row(S, args.line)})
    return 0


def span_row(S: SurfaceModel, P: tuple, witnesses: bool = False) -> dict:
    if P not in S.index:
        return {"point": list(P), "error": "point is not on the surface"}
    st = span_state(S, [P])
    row = {"point": list(P), "closure": len(st.generated), "points": S.N,
           "generator": len(st.generated) == S.N}
    if witnesses:
        row["witnesses"] = {":".join(map(str, Q)): witness_chain(st, Q)
                            for Q in sorted(st.generated) if Q != P}
    return row


def cmd_span(args) -> int:
    records = _read_records(args.input)
    targets = range(len(records)) if args.index is None else [args.index]
    with _open_out(args.out) as out:
        for i in targets:
            try:
                S = _model(records[i])
            except NotSmoothError:
                _emit(out, {"index": i, "error": "singular"})
                continue
            _emit(out, {"index": i, **span_row(S, args.point, args.witness)})
    return 0


def cmd_verify(args) -> int:
    reports = verify_records(_read_records(args.input), args.early_exit, args.workers)
    failed = 0
    with _open_out(args.report) as fh:
        for r in reports:
            _emit(fh, r)
            failed += any(c["status"] == FAIL for c in r["checks"].values())
    print(json.dumps({"surfaces": len(reports), "with_failures": failed}), file=sys.stderr)
    return 1 if failed else 0


def cmd_census(args) -> int:
    records = _read_records(args.input)
    if records and "checks" not in records[0]:
        records = verify_records(records, workers=args.workers)
    spec = FieldSpec.from_json(records[0]["field"]) if records else None
    with _open_out(args.report) as fh:
        _emit(fh, census(spec, records))
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="cubicspan", description="Generation of rational points on cubic surfaces over finite fields.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("random", help="sample a seeded corpus of cubic forms")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--k", type=int, default=1)
    p.add_argument("--modulus", help="comma-separated modulus coefficients, constant term first")
    p.add_argument("--count", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--filter", default="", help="comma list of smooth, lines>=N, no-skew, insep-line")
    p.add_argument("--max-attempts", type=int, default=10000)
    p.add_argument("--out")
    p.set_defaults(func=cmd_random)

    p = sub.add_parser("smooth", help="smoothness verdict with brute-force cross-check")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--cap", type=int, default=1 << 10)
    p.add_argument("--out")
    p.set_defaults(func=cmd_smooth)

    p = sub.add_parser("lines", help="list the K-lines of each surface")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_lines)

    p = sub.add_parser("classify", help="plane types in the pencil of one K-line")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--line", type=int, default=0)
    p.add_argument("--out")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("span", help="closure of a single point")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--point", type=_parse_point, required=True)
    p.add_argument("--index", type=int)
    p.add_argument("--witness", action="store_true", help="export witness chains")
    p.add_argument("--out")
    p.set_defaults(func=cmd_span)

    p = sub.add_parser("verify-theorem", help="full verification report per surface")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--early-exit", action="store_true")
    p.add_argument("--report")
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("census", help="aggregate statistics over a corpus or report file")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--report")
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=cmd_census)
    return ap


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
