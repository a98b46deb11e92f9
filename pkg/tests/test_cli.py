import json
import subprocess
import sys
from dataclasses import fields

import pytest
from hypothesis import given
from hypothesis import strategies as st

from umlab.certify.codec import document_hash, load_document
from umlab.cli import ConfigError, RunConfig, _parser, main

from conftest import QUINTIC


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


# -- configuration -----------------------------------------------------------------------------

text_values = st.text(alphabet="abcx0123456789^*+-/(). ,", min_size=1, max_size=20).map(str.strip).filter(
    lambda s: s and "#" not in s
)

configs = st.builds(
    RunConfig,
    poly=st.none() | text_values,
    m=st.none() | st.integers(1, 50),
    n=st.none() | st.integers(1, 50),
    a=st.none() | text_values,
    base=st.integers(2, 10),
    range=st.none() | st.sampled_from(["1..7", "2..3"]),
    prec=st.integers(64, 10000),
    primes=st.integers(1, 5000),
    coeff_bound=st.integers(1, 30),
    bit_budget=st.integers(1, 10**9),
    out=st.none() | st.just("cert.json"),
)


@given(configs)
def test_config_roundtrip(cfg):
    assert RunConfig.from_text(cfg.to_text()) == cfg


def test_config_documented_keys_only():
    with pytest.raises(ConfigError):
        RunConfig.from_text("colour = blue\n")


@pytest.mark.parametrize("field", ["prec", "primes", "coeff_bound", "bit_budget"])
def test_budgets_must_be_positive(field):
    with pytest.raises(ConfigError):
        RunConfig(**{field: 0}).validate()


@pytest.mark.parametrize("bad", ["7..1", "0..3", "1-3", "a..b"])
def test_bad_ranges(bad):
    with pytest.raises(ConfigError):
        RunConfig(range=bad).validate()


def test_every_field_has_a_flag():
    text = _parser().format_help()
    assert "verify" in text
    sub = _parser()._subparsers._group_actions[0].choices["gap-scan"].format_help()
    for f in fields(RunConfig):
        assert f"--{f.name.replace('_', '-')}" in sub


def test_flags_override_config_file(tmp_path, capsys):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("# binomial\nm = 2\na = 2\n", encoding="utf-8")
    code, out, _ = run(capsys, "binomial", "--config", str(cfg))
    assert code == 0 and out.startswith("irreducible")
    code, out, _ = run(capsys, "binomial", "--config", str(cfg), "--a", "4")
    assert code == 0 and out.startswith("reducible")


# -- subcommands -------------------------------------------------------------------------------


def test_genus_example(capsys):
    code, out, _ = run(capsys, "genus", "--n", "2", "--poly", "x^5-4x^3+2x")
    assert code == 0 and out.strip() == "g = 2"


def test_binomial_example(capsys):
    code, out, _ = run(capsys, "binomial", "--m", "4", "--a", "-4")
    assert code == 0 and out.strip() == "reducible: a ∈ −4Q⁴"


def test_galois_exit_codes(capsys):
    code, out, _ = run(capsys, "galois-cert", "--poly", "x^4 - x - 1", "--primes", "200")
    assert code == 0 and "S_m" in out
    code, _, _ = run(capsys, "galois-cert", "--poly", "x^4 + x^3 + x^2 + x + 1", "--primes", "200")
    assert code == 2


def test_wilms_refusal(capsys):
    code, out, err = run(capsys, "wilms", "--poly", "x^4 - 2x^2 + 9")
    assert code == 2
    assert "D not squarefree" in out + err


def test_parse_error_has_position(capsys):
    code, _, err = run(capsys, "genus", "--n", "2", "--poly", "x^2 + $")
    assert code == 1
    assert "column 6" in err


def test_budget_exhaustion_names_stage(capsys):
    code, _, err = run(capsys, "certify-l", "--range", "1..9", "--bit-budget", "100")
    assert code == 1
    assert "budget exhausted in" in err and "certify_L" in err


def test_missing_required_flag(capsys):
    code, _, err = run(capsys, "binomial", "--m", "2")
    assert code == 1 and "--a" in err


def test_root_roundtrip_and_csv(tmp_path, capsys):
    out, csv = tmp_path / "r.json", tmp_path / "r.csv"
    code, text, _ = run(
        capsys, "construct-um-root", "--poly", QUINTIC, "--m", "2", "--range", "1..5", "--out", str(out), "--csv", str(csv)
    )
    assert code == 0 and "status: certified" in text
    lines = csv.read_text(encoding="utf-8").splitlines()
    assert lines[0] == "# umlab-csv/1" and lines[1] == "n,h_alpha,v_n,h_beta,w_n"
    assert len(lines) == 2 + 5
    code, text, _ = run(capsys, "verify", str(out))
    assert code == 0 and text.startswith("verified: um-root")
    # no temporary files left behind
    assert sorted(p.name for p in tmp_path.iterdir()) == ["r.csv", "r.json"]


def test_verify_tampered_w(tmp_path, capsys):
    path = tmp_path / "r.json"
    run(capsys, "construct-um-root", "--poly", QUINTIC, "--m", "2", "--range", "1..4", "--out", str(path))
    doc = load_document(path)
    doc["payload"]["rows"][2]["w_n"] = "1/3"
    doc["sha256"] = document_hash(doc)
    path.write_text(json.dumps(doc), encoding="utf-8")
    code, text, _ = run(capsys, "verify", str(path))
    assert code == 2
    assert "FAILED" in text and "w_n" in text
    code, text, _ = run(capsys, "verify", "--json", str(path))
    assert code == 2 and json.loads(text)["ok"] is False


def test_verify_unreadable(tmp_path, capsys):
    code, _, _ = run(capsys, "verify", str(tmp_path / "missing.json"))
    assert code == 1


def test_determinism(tmp_path, capsys):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    for path in (a, b):
        run(capsys, "construct-um-translate", "--poly", "x^4 - x - 1", "--range", "1..3", "--out", str(path))
    da, db = load_document(a), load_document(b)
    da.pop("generated_at"), db.pop("generated_at")
    assert json.dumps(da, sort_keys=True) == json.dumps(db, sort_keys=True)


def test_gap_scan_reuses_certificate(tmp_path, capsys):
    root = tmp_path / "r.json"
    run(capsys, "construct-um-root", "--poly", QUINTIC, "--m", "2", "--range", "1..5", "--out", str(root))
    gap = tmp_path / "g.json"
    code, text, _ = run(
        capsys, "gap-scan", "--poly", QUINTIC, "--m", "2", "--coeff-bound", "3", "--cert", str(root), "--out", str(gap)
    )
    assert code == 0 and "exceptions: 0" in text
    code, _, _ = run(capsys, "verify", str(gap))
    assert code == 0


def test_console_script():
    proc = subprocess.run(
        [sys.executable, "-m", "umlab.cli", "binomial", "--m", "2", "--a", "9"], capture_output=True, text=True
    )
    assert proc.returncode == 0
    assert proc.stdout.startswith("reducible")
