"""Command-line behavior: outputs, exit codes, certificate files, oracle claims."""

import json

import pytest

from zfilterlab.certificates import Certificate
from zfilterlab.cli import (
    EXIT_FAIL,
    EXIT_OK,
    EXIT_RESOURCE,
    EXIT_UNKNOWN,
    EXIT_USAGE,
    main,
)

REG = ["a=:1@0", "b=:2@1", "c=1:2@2"]


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestFamily:
    def test_elements(self, capsys):
        code, out, _ = run(capsys, "family", "elements", ":1", "--count", "4")
        assert code == EXIT_OK and out.strip() == "1,3,7,15"

    def test_intersect(self, capsys):
        code, out, _ = run(capsys, "family", "intersect", ":1", "1:2")
        assert code == EXIT_OK and out.strip() == "{1}"

    def test_separator(self, capsys):
        code, out, _ = run(capsys, "family", "separator", ":1", "--group", "1:2")
        assert code == EXIT_OK and out.strip() == "3"

    def test_cover_writes_certificate(self, capsys, tmp_path):
        out_file = tmp_path / "cover.json"
        code, out, _ = run(
            capsys,
            "family", "cover", "--l", "3", "--gamma", "5",
            "--base", ":1", "--registry", "a=:1@0", "--out", str(out_file),
        )
        assert code == EXIT_OK
        cert = Certificate.read(str(out_file))
        assert cert.kind == "CoverSet"
        assert all(c["rank"] >= 5 for c in cert.payload["cover"])

    def test_density_and_codec(self, capsys):
        assert run(capsys, "family", "density", "--n", "4", "--depth", "4")[1].strip() == "4"
        assert run(capsys, "family", "encode", "22")[1].strip() == "6"
        assert run(capsys, "family", "decode", "7")[1].strip() == "111"

    def test_bad_literal_is_usage_error(self, capsys):
        code, _, err = run(capsys, "family", "elements", "13:")
        assert code == EXIT_USAGE and "error" in err


class TestVerify:
    def test_containment_dec(self, capsys, tmp_path):
        out_file = tmp_path / "dec.json"
        code, out, _ = run(
            capsys,
            "verify", "containment-dec",
            "--F", "a", "--G", "b", "--gamma", "5",
            *_reg_flags(), "--T", "4", "--V", "6", "--out", str(out_file),
        )
        assert code == EXIT_OK
        assert "verified" in out
        assert Certificate.read(str(out_file)).kind == "InclusionChain"

    def test_check_round_trip(self, capsys, tmp_path):
        out_file = tmp_path / "chain.json"
        code, _, _ = run(
            capsys,
            "verify", "chain-inc", "--steps", "3",
            *_reg_flags(), "--T", "4", "--V", "6", "--out", str(out_file),
        )
        assert code == EXIT_OK
        code, out, _ = run(capsys, "verify", "--check", str(out_file))
        assert code == EXIT_OK and "verified" in out

    def test_tampered_certificate_rejected(self, capsys, tmp_path):
        out_file = tmp_path / "chain.json"
        run(
            capsys,
            "verify", "chain-dec", "--steps", "2",
            *_reg_flags(), "--T", "4", "--V", "6", "--out", str(out_file),
        )
        blob = out_file.read_bytes()
        mutated = blob.replace(b'"member":true', b'"member":false', 1)
        assert mutated != blob
        out_file.write_bytes(mutated)
        code, out, _ = run(capsys, "verify", "--check", str(out_file))
        assert code == EXIT_FAIL and "rejected" in out

    def test_property_b_counterexample(self, capsys, tmp_path):
        cover_file = tmp_path / "cover.json"
        cover_file.write_text(
            json.dumps(
                {
                    "afailures": [
                        {"zset": "N:a", "constraining": [], "absorbing": ["a"]},
                        {"zset": "N:b", "constraining": [], "absorbing": ["b"]},
                    ]
                }
            )
        )
        out_file = tmp_path / "refute.json"
        code, out, _ = run(
            capsys,
            "verify", "property-b", "--cover", str(cover_file), "--gamma", "50",
            *_reg_flags(), "--T", "4", "--V", "6", "--out", str(out_file),
        )
        assert code == EXIT_OK
        assert Certificate.read(str(out_file)).kind == "CounterexamplePoint"

    def test_unknown_hypothesis_exit_code(self, capsys, tmp_path):
        code, _, err = run(
            capsys,
            "verify", "extendibility-b", "--zset", "(union)", "--alpha", "a",
            *_reg_flags(), "--T", "4", "--V", "6",
            "--out", str(tmp_path / "x.json"),
        )
        assert code == EXIT_UNKNOWN

    def test_resource_cap(self, capsys, tmp_path):
        code, _, err = run(
            capsys,
            "verify", "chain-inc", "--steps", "2", *_reg_flags(),
            "--T", "20", "--out", str(tmp_path / "x.json"),
        )
        assert code == EXIT_RESOURCE and "cap" in err

    def test_cap_override(self, capsys, tmp_path):
        code, _, _ = run(
            capsys,
            "verify", "chain-inc", "--steps", "2", *_reg_flags(),
            "--T", "13", "--V", "4", "--cap-T", "13",
            "--out", str(tmp_path / "x.json"),
        )
        assert code == EXIT_OK

    def test_bare_literals_register_on_the_fly(self, capsys, tmp_path):
        out_file = tmp_path / "dec.json"
        code, out, _ = run(
            capsys,
            "verify", "containment-dec", "--F", ":1", "--G", ":2", "--gamma", "5",
            "--T", "4", "--V", "6", "--out", str(out_file),
        )
        assert code == EXIT_OK and "verified" in out

    def test_output_dir_env_var(self, capsys, tmp_path, monkeypatch):
        monkeypatch.setenv("ZFILTERLAB_OUT", str(tmp_path))
        code, _, _ = run(
            capsys,
            "verify", "chain-inc", "--steps", "2", *_reg_flags(),
            "--T", "4", "--V", "6",
        )
        assert code == EXIT_OK
        assert (tmp_path / "chain-inc.cert.json").exists()

    def test_byte_identical_reruns(self, capsys, tmp_path):
        f1, f2 = tmp_path / "a.json", tmp_path / "b.json"
        base = [
            "verify", "extendibility-a", *_reg_flags(),
            "--T", "4", "--V", "6", "--seed", "9",
        ]
        run(capsys, *base, "--out", str(f1))
        run(capsys, *base, "--out", str(f2))
        assert f1.read_bytes() == f2.read_bytes()


class TestOracle:
    def test_equality_of_empty_intersection_and_whole(self, capsys, tmp_path):
        claim = tmp_path / "claim.json"
        claim.write_text(json.dumps({"claim": "equality", "lhs": "(inter)", "rhs": "W"}))
        code, out, _ = run(
            capsys, "oracle", str(claim), *_reg_flags(), "--T", "4", "--V", "6"
        )
        assert code == EXIT_OK and "holds" in out

    def test_containment_fails_with_first_point(self, capsys, tmp_path):
        claim = tmp_path / "claim.json"
        claim.write_text(
            json.dumps({"claim": "containment", "lhs": "N:1:2", "rhs": "N::1"})
        )
        code, out, _ = run(
            capsys, "oracle", str(claim), *_reg_flags(), "--T", "4", "--V", "6"
        )
        assert code == EXIT_FAIL
        assert "{3:3}" in out

    def test_resource_cap(self, capsys, tmp_path):
        claim = tmp_path / "claim.json"
        claim.write_text(json.dumps({"claim": "emptiness", "lhs": "(union)"}))
        code, _, err = run(capsys, "oracle", str(claim), "--T", "20")
        assert code == EXIT_RESOURCE


def _reg_flags():
    flags = []
    for entry in REG:
        flags.extend(["--registry", entry])
    return flags
