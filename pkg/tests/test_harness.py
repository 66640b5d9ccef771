import itertools
import json
from collections import Counter

import numpy as np
import pytest

from cubicspan.forms import fermat, form_from_json, form_to_json
from cubicspan.gf import gf
from cubicspan.harness import (
    FAIL, OBSERVED, PASS, CorpusFilter, census, field_for_order, in_hypothesis, main, random_surface,
    sample_corpus, verify_records, verify_surface,
)
from cubicspan.projgeom import intersect_lines, skew
from cubicspan.smoothcheck import is_smooth
from cubicspan.surface import SurfaceModel, gauss_separable, parabolic_points_on_line


def test_field_for_order():
    assert field_for_order(8) == gf(2, 3)
    assert field_for_order(17) == gf(17)
    assert field_for_order(25) == gf(5, 2)
    with pytest.raises(ValueError):
        field_for_order(12)


def test_hypothesis_range():
    assert in_hypothesis(8) and in_hypothesis(16) and in_hypothesis(27)
    assert not any(in_hypothesis(q) for q in (4, 5, 7, 9, 11, 13))


def test_random_surface_deterministic():
    K = gf(2, 3)
    assert random_surface(K, 11, 3) == random_surface(K, 11, 3)
    assert random_surface(K, 11, 3) != random_surface(K, 11, 4)
    assert random_surface(K, 11, 3) != random_surface(K, 12, 3)


def test_random_surface_never_zero():
    K = gf(2)
    for i in range(3000):
        assert not random_surface(K, 0, i).is_zero()


def test_random_surface_chi_square():
    # coefficient frequencies uniform, and consecutive indices independent
    K = gf(5)
    draws = np.array([random_surface(K, 99, i).coeffs for i in range(2000)])
    freq = np.bincount(draws.ravel(), minlength=5)
    exp = draws.size / 5
    chi = ((freq - exp) ** 2 / exp).sum()
    assert chi < 18.47  # df = 4, p = 0.001
    pairs = Counter(zip(draws[:-1, 0].tolist(), draws[1:, 0].tolist()))
    exp = (len(draws) - 1) / 25
    chi = sum((pairs.get((a, b), 0) - exp) ** 2 / exp for a in range(5) for b in range(5))
    assert chi < 51.18  # df = 24, p = 0.001


def test_filter_parse():
    f = CorpusFilter.parse("smooth,lines>=2,no-skew,insep-line", 50)
    assert f.require_smooth and f.min_klines == 2 and f.forbid_skew_pair and f.require_inseparable_line
    assert f.max_attempts == 50
    g = CorpusFilter.parse("")
    assert not g.require_smooth and not g.needs_lines
    with pytest.raises(ValueError):
        CorpusFilter.parse("lines>=x")
    with pytest.raises(ValueError):
        CorpusFilter.parse("bogus")
    with pytest.raises(ValueError):
        CorpusFilter(max_attempts=0)


def test_corpus_smooth_with_lines_gf17():
    c = sample_corpus(gf(17), CorpusFilter(min_klines=1), 5, seed=3)
    assert len(c.surfaces) == 5 == c.stats["accepted"]
    assert c.stats["attempts"] == c.indices[-1] + 1
    for S in c.surfaces:
        assert is_smooth(S.form) and len(S.klines) >= 1


def test_corpus_no_skew_filter():
    c = sample_corpus(gf(2, 3), CorpusFilter.parse("smooth,lines>=1,no-skew"), 8, seed=1)
    assert len(c.surfaces) == 8
    for S in c.surfaces:
        assert 1 <= len(S.klines) <= 3
        for a, b in itertools.combinations(S.klines, 2):
            assert not skew(S.field, a, b) and intersect_lines(S.field, a, b) is not None


def test_corpus_inseparable_line_filter():
    c = sample_corpus(gf(2, 3), CorpusFilter.parse("smooth,insep-line"), 3, seed=5)
    assert len(c.surfaces) == 3
    for S in c.surfaces:
        assert any(len(parabolic_points_on_line(S, ln)) == S.q + 1 for ln in S.klines)
        assert not all(gauss_separable(S, ln) for ln in S.klines)


def test_corpus_exhaustion_warns():
    with pytest.warns(UserWarning, match="exhausted"):
        c = sample_corpus(gf(2, 3), CorpusFilter(min_klines=27, max_attempts=20), 1, seed=0)
    assert c.surfaces == [] and c.stats["attempts"] == 20


def test_corpus_determinism():
    filt = CorpusFilter(min_klines=1)
    a = sample_corpus(gf(2, 4), filt, 4, seed=8)
    b = sample_corpus(gf(2, 4), filt, 4, seed=8)
    assert a.indices == b.indices
    assert [S.form for S in a.surfaces] == [S.form for S in b.surfaces]


def strip_timing(d):
    d = dict(d)
    d.pop("timing")
    return d


def test_report_reproducible():
    c = sample_corpus(gf(2, 3), CorpusFilter(min_klines=1), 3, seed=4)
    for S in c.surfaces:
        r1 = verify_surface(S)
        r2 = verify_surface(form_from_json(json.loads(json.dumps(form_to_json(S.form)))))
        assert r1.status_vector() == r2.status_vector()
        assert strip_timing(r1.to_json()) == strip_timing(r2.to_json())
        assert r1.failed == []


def test_report_fields_and_failure_witness():
    rep = verify_surface(fermat(gf(2, 4)))
    d = rep.to_json()
    assert list(d) == ["field", "coeffs", "points", "m", "lines", "skew_pair", "exploration",
                       "pencils", "off_line_classes", "generator_count", "pigeonhole", "theorem_T",
                       "checks", "timing"]
    assert d["points"] == 369 and d["lines"] == 27 and d["m"] == 7 and d["skew_pair"]
    assert d["checks"]["inseparable_line_generators"]["status"] == PASS
    singular = form_from_json({"field": {"p": 5, "k": 1},
                               "coeffs": [[1] if i in (0, 10, 16) else [0] for i in range(20)]})
    bad = verify_surface(singular)
    assert bad.failed == ["smooth"] and bad.checks["smooth"].witness


def test_exploration_never_fails():
    for q in (4, 5, 7, 9):
        c = sample_corpus(field_for_order(q), CorpusFilter(min_klines=1), 6, seed=q)
        for S in c.surfaces:
            rep = verify_surface(S)
            assert rep.exploration
            assert rep.failed == [], (q, rep.failed)


def test_early_exit_report():
    S = SurfaceModel(fermat(gf(2, 3)))
    rep = verify_surface(S, early_exit=True)
    assert rep.generator_count is None
    assert rep.checks["generator_exists"].status == PASS
    full = verify_surface(S)
    assert full.generator_count and full.generator_count > 0


def test_census_identities():
    K = gf(17)
    c = sample_corpus(K, CorpusFilter(min_klines=1), 6, seed=2)
    reps = [verify_surface(S) for S in c.surfaces]
    agg = census(K, reps)
    assert agg["surfaces"] == agg["with_lines"] == 6
    assert agg["pencil_sizes_ok"]
    assert agg["generator_fraction"] == 1.0
    assert agg["failed_checks"] == {}
    assert set(agg["n_values"]) <= {"16", "18"}
    for r in reps:
        for pen in r.pencils:
            t = pen["types"]
            assert sum(t.values()) == 18
            assert t["T1"] + t["T2"] == t["T3"] + t["T4"] == pen["n"] // 2
            assert t["T4"] <= 5
    assert census(K, [r.to_json() for r in reps]) == agg


def test_verify_records_parallel_matches_serial():
    c = sample_corpus(gf(2, 3), CorpusFilter(min_klines=1), 3, seed=6)
    recs = [form_to_json(S.form) for S in c.surfaces]
    a = [strip_timing(r) for r in verify_records(recs)]
    b = [strip_timing(r) for r in verify_records(recs, workers=2)]
    assert a == b


def read_jsonl(path):
    return [json.loads(line) for line in path.read_text().splitlines() if line]


def test_cli_pipeline(tmp_path, capsys):
    corpus = tmp_path / "c.jsonl"
    assert main(["random", "--p", "2", "--k", "3", "--count", "3", "--seed", "5",
                 "--filter", "smooth,lines>=1", "--out", str(corpus)]) == 0
    recs = read_jsonl(corpus)
    assert len(recs) == 3 and all(len(r["coeffs"]) == 20 for r in recs)
    assert list(recs[0]) == ["field", "coeffs"]

    out = tmp_path / "s.jsonl"
    assert main(["smooth", "--in", str(corpus), "--out", str(out)]) == 0
    rows = read_jsonl(out)
    assert all(r["smooth"] and r["consistent"] and r["oracle"]["1"] == [] for r in rows)

    out = tmp_path / "l.jsonl"
    assert main(["lines", "--in", str(corpus), "--out", str(out)]) == 0
    assert all(r["count"] >= 1 for r in read_jsonl(out))

    out = tmp_path / "k.jsonl"
    assert main(["classify", "--in", str(corpus), "--line", "0", "--out", str(out)]) == 0
    for r in read_jsonl(out):
        assert len(r["planes"]) == 9
        assert r["census"]["violations"] == []

    S = SurfaceModel(form_from_json(recs[0]))
    P = S.points[0]
    out = tmp_path / "p.jsonl"
    assert main(["span", "--in", str(corpus), "--index", "0", "--point", ":".join(map(str, P)),
                 "--witness", "--out", str(out)]) == 0
    (row,) = read_jsonl(out)
    assert row["closure"] == len(S.points) or not row["generator"]
    assert len(row["witnesses"]) == row["closure"] - 1

    rep = tmp_path / "r.jsonl"
    assert main(["verify-theorem", "--in", str(corpus), "--report", str(rep)]) == 0
    reps = read_jsonl(rep)
    assert len(reps) == 3 and all(c["status"] != FAIL for r in reps for c in r["checks"].values())

    agg = tmp_path / "a.jsonl"
    assert main(["census", "--in", str(rep), "--report", str(agg)]) == 0
    (summary,) = read_jsonl(agg)
    assert summary["surfaces"] == 3 and summary["failed_checks"] == {}
    capsys.readouterr()


def test_cli_stdout_and_bad_point(tmp_path, capsys):
    corpus = tmp_path / "c.jsonl"
    main(["random", "--p", "5", "--count", "2", "--seed", "1", "--out", str(corpus)])
    capsys.readouterr()
    assert main(["lines", "--in", str(corpus)]) == 0
    lines = capsys.readouterr().out.strip().splitlines()
    assert len(lines) == 2
    with pytest.raises(SystemExit):
        main(["span", "--in", str(corpus), "--point", "1:2:3"])


def test_status_constants():
    assert {PASS, FAIL, OBSERVED} == {"pass", "fail", "observed"}
