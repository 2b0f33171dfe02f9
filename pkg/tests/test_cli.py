"""Command-line front end: exit codes, determinism, verify round-trips."""
import json

import pytest

from valcert.cli import main
from valcert.fields import GF, QQ
from valcert.group import GroupElement
from valcert.pcs import lacunary_sequence
from valcert.poly import Poly, VarTag
from valcert.series import ValuedSeries

Z = GroupElement.of_int
Y0 = VarTag.orig(0)


def write(tmp_path, name, obj):
    p = tmp_path / name
    p.write_text(json.dumps(obj), encoding="utf-8")
    return str(p)


def run(argv):
    return main(argv)


class TestSeparate:
    def test_tail_example(self, tmp_path, capsys):
        # [DERIVED] the nu=3, r=1 instance through the CLI
        cfg = {"op": "tail", "betas": [0, 3], "ts": [2, 1],
               "gamma": list(range(1, 201))}
        out = str(tmp_path / "cert.json")
        assert run(["separate", write(tmp_path, "c.json", cfg), "--out", out]) == 0
        cert = json.loads(open(out).read())
        assert cert["nu"] == 3 and cert["r"] == 1
        assert run(["verify", out]) == 0

    def test_malformed_json(self, tmp_path, capsys):
        p = tmp_path / "bad.json"
        p.write_text("{not json", encoding="utf-8")
        assert run(["separate", str(p)]) == 1

    def test_missing_key(self, tmp_path, capsys):
        cfg = {"op": "tail", "betas": [0]}
        assert run(["separate", write(tmp_path, "c.json", cfg)]) == 1

    def test_stalled_stream(self, tmp_path, capsys):
        # collision target beyond the declared window -> horizon exit
        cfg = {"op": "tail", "betas": [0, 1000], "ts": [2, 1],
               "gamma": list(range(1, 51))}
        assert run(["separate", write(tmp_path, "c.json", cfg)]) == 2


class TestRewrite:
    def test_linear_over_Q(self, tmp_path, capsys):
        cfg = {"field": "Q", "op": "univariate",
               "g": Poly.var(QQ, Y0).to_json(),
               "seqs": [lacunary_sequence(QQ, 300).to_json()]}
        out = str(tmp_path / "cert.json")
        assert run(["rewrite", write(tmp_path, "c.json", cfg), "--out", out]) == 0
        assert json.loads(open(out).read())["case"] == "case1"
        assert run(["verify", out]) == 0

    def test_square_over_F2_case2(self, tmp_path, capsys):
        f2 = GF(2)
        cfg = {"field": "Fp", "p": 2, "op": "univariate",
               "g": (Poly.var(f2, Y0) ** 2).to_json(),
               "seqs": [lacunary_sequence(f2, 300).to_json()]}
        out = str(tmp_path / "cert.json")
        assert run(["rewrite", write(tmp_path, "c.json", cfg), "--out", out]) == 0
        assert json.loads(open(out).read())["case"] == "case2"

    def test_zero_polynomial(self, tmp_path, capsys):
        cfg = {"field": "Q", "op": "univariate", "g": Poly.zero(QQ).to_json(),
               "seqs": [lacunary_sequence(QQ, 300).to_json()]}
        assert run(["rewrite", write(tmp_path, "c.json", cfg)]) == 1


class TestSmooth:
    def test_family_roundtrip(self, tmp_path, capsys):
        f5 = GF(5)
        t = ValuedSeries.t_power(f5, Z(1))
        V = Poly.var(f5, Y0)
        cfg = {"field": "Fp", "p": 5, "op": "family",
               "fs": [V.to_json(), (V ** 2 + V.scale(t)).to_json()],
               "seq0": lacunary_sequence(f5, 300).to_json()}
        out = str(tmp_path / "cert.json")
        assert run(["smooth", write(tmp_path, "c.json", cfg), "--out", out]) == 0
        assert run(["verify", out]) == 0

    def test_fraction_bad_vals(self, tmp_path, capsys):
        cfg = {"field": "Q", "op": "fraction",
               "f1": Poly.var(QQ, Y0).to_json(),
               "f2": (Poly.var(QQ, Y0) ** 2).to_json(),
               "seq0": lacunary_sequence(QQ, 300).to_json()}
        assert run(["smooth", write(tmp_path, "c.json", cfg)]) == 1

    def test_horizon_too_small(self, tmp_path, capsys):
        cfg = {"field": "Q", "op": "pair",
               "f": Poly.var(QQ, Y0).to_json(),
               "seq0": lacunary_sequence(QQ, 300).to_json()}
        assert run(["smooth", write(tmp_path, "c.json", cfg),
                    "--horizon", "3"]) == 2


class TestVerify:
    def test_tampered_cert(self, tmp_path, capsys):
        cfg = {"op": "tail", "betas": [0, 3], "ts": [2, 1],
               "gamma": list(range(1, 201))}
        out = str(tmp_path / "cert.json")
        run(["separate", write(tmp_path, "c.json", cfg), "--out", out])
        cert = json.loads(open(out).read())
        cert["nu"] = 0
        bad = write(tmp_path, "bad.json", cert)
        assert run(["verify", bad]) == 4

    def test_unknown_schema(self, tmp_path, capsys):
        assert run(["verify", write(tmp_path, "x.json", {"cert": "what"})]) == 1

    def test_truncated_file(self, tmp_path, capsys):
        p = tmp_path / "t.json"
        p.write_text('{"cert": "sep', encoding="utf-8")
        assert run(["verify", str(p)]) == 1


class TestDeterminism:
    def test_byte_identical_output(self, tmp_path, capsys):
        cfg = {"field": "Q", "op": "univariate",
               "g": (Poly.var(QQ, Y0) ** 2).to_json(),
               "seqs": [lacunary_sequence(QQ, 300).to_json()]}
        c = write(tmp_path, "c.json", cfg)
        o1, o2 = str(tmp_path / "a.json"), str(tmp_path / "b.json")
        assert run(["rewrite", c, "--out", o1]) == 0
        assert run(["rewrite", c, "--out", o2]) == 0
        assert open(o1, "rb").read() == open(o2, "rb").read()


class TestBatch:
    def test_array_config(self, tmp_path, capsys):
        cfgs = [{"op": "tail", "betas": [0, 5], "ts": [1, 2],
                 "gamma": list(range(1, 101))},
                {"op": "tail", "betas": [0, 3], "ts": [2, 1],
                 "gamma": list(range(1, 101))}]
        out = str(tmp_path / "batch.json")
        assert run(["separate", write(tmp_path, "c.json", cfgs), "--out", out]) == 0
        results = json.loads(open(out).read())
        assert [r["nu"] for r in results] == [0, 3]

    def test_batch_reports_worst_exit(self, tmp_path, capsys):
        cfgs = [{"op": "tail", "betas": [0, 5], "ts": [1, 2],
                 "gamma": list(range(1, 101))},
                {"op": "tail"}]
        assert run(["separate", write(tmp_path, "c.json", cfgs)]) == 1
