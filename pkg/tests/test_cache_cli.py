import json
from fractions import Fraction

import pytest

from eorec.cache import CorrCache, corrdiff_payload
from eorec.cli import main
from eorec.recursion import Conventions, CorrDiff, CorrStore

Q = Fraction
CONV = Conventions(sigma_kernel=-1, sigma_psirec=1)


class TestCache:
    def test_roundtrip(self, tmp_path):
        cache = CorrCache(tmp_path)
        w = CorrDiff(g=1, h=1, f=1, coeffs={(0,): Q(1, 8), (1,): Q(-1, 12)})
        cache.store(w, CONV)
        back = cache.load(1, 1, 1, CONV)
        assert back is not None
        assert back.coeffs == w.coeffs and (back.g, back.h, back.f) == (1, 1, 1)

    def test_miss_on_other_conventions(self, tmp_path):
        cache = CorrCache(tmp_path)
        w = CorrDiff(g=1, h=1, f=1, coeffs={(0,): Q(1, 8)})
        cache.store(w, CONV)
        assert cache.load(1, 1, 1, Conventions(sigma_kernel=1, sigma_psirec=1)) is None

    def test_corruption_triggers_recompute(self, tmp_path, capsys):
        cache = CorrCache(tmp_path)
        w = CorrDiff(g=1, h=1, f=1, coeffs={(0,): Q(1, 8)})
        cache.store(w, CONV)
        path = next(tmp_path.glob("corr_*.json"))
        blob = json.loads(path.read_text())
        blob["terms"][0]["c"] = "1/7"  # tamper without fixing the checksum
        path.write_text(json.dumps(blob))
        assert cache.load(1, 1, 1, CONV) is None
        assert "recomputing" in capsys.readouterr().err

    def test_store_uses_cache(self, tmp_path):
        cache = CorrCache(tmp_path)
        a = CorrStore(1, CONV, cache=cache)
        first = a.correlator(2, 1)
        b = CorrStore(1, CONV, cache=cache)
        second = b.correlator(2, 1)
        assert first.coeffs == second.coeffs
        assert (tmp_path / "corr_f1_g2_h1_k-1_p1.json").exists()

    def test_conventions_record_roundtrip(self, tmp_path):
        cache = CorrCache(tmp_path)
        assert cache.load_conventions() is None
        cache.store_conventions(CONV, epsilon=-1)
        loaded = cache.load_conventions()
        assert loaded == (CONV, -1)

    def test_rationals_serialized_as_strings(self, tmp_path):
        w = CorrDiff(g=0, h=3, f=2, coeffs={(0, 0, 0): Q(-36)})
        payload = corrdiff_payload(w, CONV)
        assert payload["terms"] == [{"n": [0, 0, 0], "c": "-36"}]


class TestCli:
    def test_correlator_json(self, capsys):
        assert main(["correlator", "--f", "1", "--g", "1", "--h", "1"]) == 0
        out = json.loads(capsys.readouterr().out)
        assert out["conventions"]["sigma_kernel"] == -1
        assert out["results"][0]["terms"] == [
            {"n": [0], "c": "1/8"}, {"n": [1], "c": "-1/12"}]

    def test_correlator_framing_two(self, capsys):
        assert main(["correlator", "--f", "2", "--g", "0", "--h", "3"]) == 0
        out = json.loads(capsys.readouterr().out)
        assert out["results"][0]["terms"] == [{"n": [0, 0, 0], "c": "-36"}]

    def test_correlator_base_case_errors(self, capsys):
        assert main(["correlator", "--f", "1", "--g", "0", "--h", "2"]) == 2
        assert "no tensor form" in capsys.readouterr().err

    def test_free_energy_rows(self, capsys):
        assert main(["free-energy", "--f", "1,2", "--g-max", "2"]) == 0
        out = json.loads(capsys.readouterr().out)
        assert out["conventions"]["epsilon"] == -1
        assert out["framing_independent"] is True
        rows = out["rows"]
        assert {r["f"] for r in rows} == {1, 2}
        assert all(r["direct"] == "-1/5760" for r in rows)
        assert all(r["pass"] for r in rows)

    def test_hodge_output(self, capsys):
        assert main(["hodge", "--f", "1", "--g", "2"]) == 0
        out = json.loads(capsys.readouterr().out)
        row = out["rows"][0]
        assert row["bracket"]["1"] == "-1/1440"
        assert row["bracket1_over_ff1"] == "-1/2880"
        assert row["dilaton_sign"] == -1

    def test_hodge_genus_one(self, capsys):
        assert main(["hodge", "--f", "2", "--g", "1"]) == 0
        out = json.loads(capsys.readouterr().out)
        assert out["rows"][0]["bracket"]["0"] == "7/24"

    def test_verify_passes(self, capsys, tmp_path):
        code = main(["verify", "--f", "1", "--g-max", "2",
                     "--cache-dir", str(tmp_path)])
        out = json.loads(capsys.readouterr().out)
        assert code == 0
        assert out["summary"]["failed"] == 0
        assert out["conventions"] == {
            "sigma_kernel": -1, "sigma_psirec": 1, "epsilon": -1}

    def test_verify_warm_cache_identical(self, capsys, tmp_path):
        args = ["verify", "--f", "1", "--g-max", "2", "--cache-dir", str(tmp_path)]
        assert main(args) == 0
        cold = capsys.readouterr().out
        assert main(args) == 0
        warm = capsys.readouterr().out
        assert cold == warm

    def test_verify_detects_forced_wrong_kernel_sign(self, capsys):
        code = main(["verify", "--f", "1", "--g-max", "2",
                     "--override-sign-kernel", "1"])
        out = json.loads(capsys.readouterr().out)
        assert code == 1
        names = {c["name"] for c in out["checks"] if not c["pass"]}
        assert "known-correlator" in names

    def test_g_max_cap(self):
        with pytest.raises(SystemExit):
            main(["verify", "--f", "1", "--g-max", "7"])

    def test_env_var_cache_dir(self, capsys, tmp_path, monkeypatch):
        monkeypatch.setenv("EOREC_CACHE_DIR", str(tmp_path))
        assert main(["correlator", "--f", "1", "--g", "1", "--h", "1"]) == 0
        capsys.readouterr()
        assert (tmp_path / "conventions.json").exists()
        assert (tmp_path / "corr_f1_g1_h1_k-1_p1.json").exists()

    def test_text_format(self, capsys):
        assert main(["correlator", "--f", "1", "--g", "1", "--h", "1",
                     "--format", "text"]) == 0
        out = capsys.readouterr().out
        assert "sigma_kernel=-1" in out
        assert "[0]: 1/8" in out
