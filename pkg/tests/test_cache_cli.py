import json
import os

import mpmath
import pytest
from gmpy2 import mpq
from mpmath import mp, mpf

from irrcert import cache as cache_mod
from irrcert import cli
from irrcert.quadrature import IntegralFamily
from irrcert.substrate import PreciseReal


class TestCacheBasics:
    def test_key_is_canonical(self, tmp_path):
        fam = IntegralFamily.zeta2(mpq(-6, 7), mpq(-6, 7), mpq(-4, 7), mpq(-3, 7))
        key = cache_mod.cache_key(fam)
        assert "/" not in key and "," not in key
        assert key == cache_mod.cache_key(
            IntegralFamily.zeta2(mpq(-6, 7), mpq(-6, 7), mpq(-4, 7), mpq(-3, 7)))

    def test_atomic_write_and_load(self, tmp_path):
        path = str(tmp_path / "sub" / "x.json")
        cache_mod.atomic_write_json(path, {"v": 1})
        with open(path) as fh:
            assert json.load(fh) == {"v": 1}
        assert not [f for f in os.listdir(tmp_path / "sub") if f.endswith(".tmp")]

    def test_entry_round_trip_exact_rationals(self, tmp_path):
        fam = IntegralFamily.zeta2(0, 0, 0, 0)
        a = [mpq(0), mpq(-5), mpq(125, 4), mpq(-8705, 36)]
        b = [mpq(1), mpq(-3), mpq(19), mpq(-147)]
        a_json, b_json = cache_mod.sequences_to_json(a, b)
        cache_mod.save_entry(str(tmp_path), fam, {"a": a_json, "b": b_json})
        entry = cache_mod.load_entry(str(tmp_path), fam)
        a2, b2 = cache_mod.entry_sequences(entry)
        assert a2 == a and b2 == b  # exactly equal as rationals

    def test_values_round_trip_with_precision_tags(self, tmp_path):
        fam = IntegralFamily.log1(0, 0, 1)
        with mp.workdps(60):
            vals = [PreciseReal(mp.log(2), 50), PreciseReal(mpf(1) / 7, 50)]
        cache_mod.save_entry(str(tmp_path), fam,
                             {"precision": 50, "values": [v.to_json() for v in vals]})
        entry = cache_mod.load_entry(str(tmp_path), fam)
        back = cache_mod.cached_values(entry, 2, 50)
        assert back[0].precision == 50
        with mp.workdps(60):
            assert abs(back[0].value - vals[0].value) < mpf(10) ** -48
        assert cache_mod.cached_values(entry, 2, 60) is None  # wrong precision
        assert cache_mod.cached_values(entry, 5, 50) is None  # too few values

    def test_cache_dir_from_environment(self, monkeypatch, tmp_path):
        monkeypatch.setenv("CACHE_DIR", str(tmp_path / "envcache"))
        assert cache_mod.default_cache_dir() == str(tmp_path / "envcache")


class TestCliEval:
    def test_eval_zeta2_basel(self, capsys):
        assert cli.main(["eval", "zeta2", "0,0,0,0", "--n", "0", "--prec", "30"]) == 0
        out = capsys.readouterr().out.strip()
        assert out.startswith("1.64493406684822643647241516665"[:25])

    def test_eval_zeta2_n5(self, capsys):
        assert cli.main(["eval", "zeta2", "0,0,0,0", "--n", "5", "--prec", "25"]) == 0
        out = capsys.readouterr().out.strip()
        with mp.workdps(30):
            assert abs(mpf(out) - mpf("1.3124634659314676853e-6")) < mpf("1e-24")

    def test_eval_log1_log2(self, capsys):
        assert cli.main(["eval", "log1", "0,0,1", "--n", "0", "--prec", "30"]) == 0
        out = capsys.readouterr().out.strip()
        assert out.startswith("0.693147180559945309")

    def test_flag_style_family(self, capsys):
        assert cli.main(["eval", "--family", "zeta2", "--params", "0,0,0,0",
                         "--n", "0", "--prec", "20"]) == 0

    def test_usage_errors_exit_2(self, capsys):
        assert cli.main(["eval", "nosuch", "0,0"]) == 2
        assert cli.main(["eval", "zeta2", "2,0,0,0"]) == 2  # invalid exponent
        assert cli.main(["eval", "zeta2", "0,0;0,0"]) == 2  # unparsable params
        assert cli.main(["eval", "zeta3k", "0,0,0,1,0"]) == 2  # divergent tuple


class TestCliIdentify:
    def test_identify_two_log_two_value(self, capsys):
        with mp.workdps(180):
            val = mpmath.nstr(2 * mp.log(2), 170)
        assert cli.main(["identify", val, "--prec", "100"]) == 0
        out = capsys.readouterr().out
        assert "log2" in out and "2" in out

    def test_identify_unidentified(self, capsys):
        with mp.workdps(180):
            val = mpmath.nstr(+mp.euler, 170)
        assert cli.main(["identify", val, "--prec", "100"]) == 0
        assert "unidentified" in capsys.readouterr().out

    def test_identify_malformed_input(self, capsys):
        assert cli.main(["identify", "not-a-number"]) == 2

    def test_identify_value_too_short(self, capsys):
        assert cli.main(["identify", "1.5000000001", "--prec", "100"]) == 2


@pytest.mark.slow
class TestCliCertifyAndCache:
    """End-to-end certify through the CLI with caching (slow tier: one real
    pipeline run on the classical log 2 family at modest settings)."""

    def test_certify_writes_certificate_and_caches(self, tmp_path, capsys):
        cache_dir = str(tmp_path / "cache")
        out = str(tmp_path / "cert.json")
        rc = cli.main(["certify", "log1", "0,0,1", "--prec", "64", "--terms", "500",
                       "--cache-dir", cache_dir, "--out", out])
        assert rc == 0
        text = capsys.readouterr().out
        assert "Verdict   irrationality-candidate" in text
        assert "lcm(1..n)^1" in text
        with open(out) as fh:
            doc = json.load(fh)
        assert doc["schema_version"] == 1
        assert doc["verdict"] == "irrationality-candidate"
        assert doc["recurrence"]["coeffs"] == [[1, 1], [-9, -6], [2, 1]]
        assert doc["initial_relation"] == [-3, 1, -2]
        # delta close to the classical 0.2760828...
        assert abs(float(doc["delta"]["value"]) - 0.276082871862633587) < 1e-10

        # second run is served from cache (fast) and byte-identical
        rc = cli.main(["certify", "log1", "0,0,1", "--prec", "64", "--terms", "500",
                       "--cache-dir", cache_dir, "--out", out + ".2"])
        assert rc == 0
        with open(out + ".2") as fh:
            doc2 = json.load(fh)
        assert doc2 == doc

    def test_cached_sequences_match_fresh(self, tmp_path):
        from irrcert.holonomic import build_sequences
        cache_dir = str(tmp_path / "cache")
        fam = IntegralFamily.log1(0, 0, 1)
        cert = cache_mod.build_certificate_cached(
            fam, terms=500, precision=64, cache_dir=cache_dir)
        entry = cache_mod.load_entry(cache_dir, fam)
        a_cached, b_cached = cache_mod.entry_sequences(entry)
        seqs = build_sequences(cert.recurrence, cert.initial_relation,
                               cert.constant_value, len(a_cached) - 1)
        assert list(seqs.a) == a_cached
        assert list(seqs.b) == b_cached


@pytest.mark.slow
class TestCliSearch:
    def test_tiny_search_deterministic_and_resumable(self, tmp_path, capsys):
        cache_dir = str(tmp_path / "cache")
        out1 = str(tmp_path / "r1.json")
        out2 = str(tmp_path / "r2.json")
        args = ["search", "log1", "--denominator", "2", "--numerators", "1",
                "--prec", "64", "--terms", "500", "--cache-dir", cache_dir]
        assert cli.main(args + ["--out", out1]) == 0
        body1 = json.load(open(out1))
        # resumed run, fanning out over workers that hit the warm cache
        assert cli.main(args + ["--out", out2, "--jobs", "2"]) == 0
        body2 = json.load(open(out2))
        # identical command + cache state => identical report body; the
        # timestamp lives in the header only
        body1.pop("header"), body2.pop("header")
        body2["job"]["jobs"] = body1["job"]["jobs"]
        assert body1 == body2
        assert body1["tuples_certified"] >= 1
        assert body1["class_count"] >= 1
        cls = body1["classes"][0]
        assert "representative" in cls and "delta" in cls

    def test_search_tolerates_tuple_failures(self, tmp_path, monkeypatch):
        from irrcert import search as search_mod
        from irrcert.certificate import PipelineError
        from irrcert.search import SearchJob, run_search

        def explode(*a, **k):
            raise PipelineError("no-recurrence", "synthetic failure")

        monkeypatch.setattr(search_mod.cache_mod, "build_certificate_cached", explode)
        job = SearchJob(kind="Zeta2", denominator=2, numerators=(-1,),
                        terms=500, precision=60, max_tuples=1)
        report = run_search(job, cache_dir=str(tmp_path / "c"))
        assert report["tuples_certified"] == 0
        assert list(report["failures"].values())[0].startswith("no-recurrence")


class TestCliIdentifyCertificate:
    def test_identify_from_certificate_file(self, tmp_path, capsys):
        from irrcert.certificate import CERTIFICATE_SCHEMA_VERSION
        with mp.workdps(180):
            stored = PreciseReal(2 * mp.log(2), 170)
        doc = {"schema_version": CERTIFICATE_SCHEMA_VERSION,
               "family": {"kind": "Zeta2", "params": ["0", "0", "1/2", "0"]},
               "constant_value": stored.to_json()}
        path = tmp_path / "cert.json"
        path.write_text(json.dumps(doc))
        assert cli.main(["identify", str(path), "--prec", "100"]) == 0
        out = capsys.readouterr().out
        assert "log2" in out

    def test_identify_malformed_certificate(self, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text("{\"family\": {}}")
        assert cli.main(["identify", str(path)]) == 2


def test_out_of_range_flags_exit_2(tmp_path):
    rc = cli.main(["certify", "log1", "0,0,1", "--terms", "100",
                   "--cache-dir", str(tmp_path), "--out", str(tmp_path / "x.json")])
    assert rc == 2
    rc = cli.main(["certify", "log1", "0,0,1", "--prec", "30",
                   "--cache-dir", str(tmp_path), "--out", str(tmp_path / "x.json")])
    assert rc == 2
