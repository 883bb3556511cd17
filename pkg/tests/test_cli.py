import io
import json
import os
import subprocess
import sys

import pytest

from latcert.cli import EXIT_CAP, EXIT_FAIL, EXIT_PASS, EXIT_USAGE, main

FIXTURES = os.path.join(os.path.dirname(__file__), "..", "src", "latcert", "fixtures")


def fx(name):
    return os.path.join(FIXTURES, name)


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, (json.loads(out) if out.strip() else None)


def test_catalog_known_name(capsys):
    code, obj = run(capsys, "catalog", "leech")
    assert code == EXIT_PASS
    assert len(obj["gram"]) == 24
    assert obj["version"]


def test_catalog_unknown_name(capsys):
    code, _ = run(capsys, "catalog", "nosuchlattice")
    assert code == EXIT_USAGE


def test_lat_info_stdin(capsys, monkeypatch):
    monkeypatch.setattr("sys.stdin", io.StringIO('{"gram": [[2]]}'))
    code, obj = run(capsys, "lat", "info", "-")
    assert code == EXIT_PASS
    assert obj["even"] is True
    assert obj["signature"] == [1, 0, 0]


def test_lat_roots_count(capsys):
    code, obj = run(capsys, "lat", "roots", fx("leech.json"), "--count-only")
    assert code == EXIT_PASS
    assert obj["count"] == 0


def test_lat_disc(capsys):
    code, obj = run(capsys, "lat", "disc", fx("a3_in_mukai.json"))
    assert code == EXIT_PASS


def test_missing_file(capsys):
    code, _ = run(capsys, "lat", "info", "/nonexistent/file.json")
    assert code == EXIT_USAGE


def test_malformed_json(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    code, _ = run(capsys, "lat", "info", str(bad))
    assert code == EXIT_USAGE


def test_thm1_pass_and_fail(capsys):
    code, obj = run(capsys, "thm1", "check", fx("action_trivial.json"))
    assert code == EXIT_PASS and obj["pass"] is True
    code, obj = run(capsys, "thm1", "check", fx("action_minus_id.json"))
    assert code == EXIT_FAIL and obj["pass"] is False


def test_grp_invariant(capsys):
    code, obj = run(capsys, "grp", "invariant", fx("action_inv_8_8.json"))
    assert code == EXIT_PASS
    assert obj["rk_invariant"] == 16
    assert obj["rk_coinvariant"] == 8


def test_embed_check_exit_codes(capsys):
    code, obj = run(capsys, "embed", "check", fx("a3_in_mukai.json"), "--target", "4,20")
    assert code in (EXIT_PASS, EXIT_FAIL)
    assert "version" in obj
    code, _ = run(capsys, "embed", "check", fx("a3_in_mukai.json"), "--target", "junk")
    assert code == EXIT_USAGE


def test_star_check_cli(capsys):
    code, obj = run(capsys, "star", "check", fx("a3_in_mukai.json"), fx("mukai.json"))
    assert code == EXIT_PASS
    assert obj["pass"] is True
    assert obj["evidence"]["snf"] == [1, 1, 4]


def test_star_check_without_basis_is_usage(tmp_path, capsys):
    free = tmp_path / "free.json"
    free.write_text(json.dumps({"gram": [[2, 0, 0], [0, 2, 0], [0, 0, 2]]}))
    code, _ = run(capsys, "star", "check", str(free), fx("mukai.json"))
    assert code == EXIT_USAGE


def test_period_build_cli(capsys):
    code, obj = run(capsys, "period", "build", fx("ng_inv_8_8.json"))
    assert code == EXIT_PASS
    assert obj["pass"] is True
    assert obj["evidence"]["complement_root_count"] == 0


def test_period_build_tiny_cap(capsys):
    code, _ = run(capsys, "period", "build", fx("ng_inv_8_8.json"), "--cap", "1")
    assert code == EXIT_CAP


def test_threads_flag_accepted(capsys):
    code, obj = run(capsys, "--threads", "8", "catalog", "U")
    assert code == EXIT_PASS
    assert obj["gram"] == [[0, 1], [1, 0]]


def test_no_args_is_usage(capsys):
    assert main([]) == EXIT_USAGE


def test_output_is_canonical_json(capsys):
    main(["catalog", "E8"])
    out = capsys.readouterr().out
    obj = json.loads(out)
    assert out.strip() == json.dumps(
        obj, sort_keys=True, separators=(",", ":")
    )


def test_subprocess_determinism():
    env = dict(os.environ)
    cmd = [sys.executable, "-m", "latcert.cli", "star", "check", fx("a3_in_mukai.json"), fx("mukai.json")]
    a = subprocess.run(cmd, capture_output=True, env=env)
    b = subprocess.run(cmd, capture_output=True, env=env)
    assert a.returncode == b.returncode == 0
    assert a.stdout == b.stdout
