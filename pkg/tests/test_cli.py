import json

import pytest

from ellipsum.cli import ConfigError, format_complex, main, parse_complex


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_parse_and_format_complex():
    assert parse_complex("1.5-2i") == 1.5 - 2j
    assert parse_complex("3i") == 3j
    assert parse_complex("-0.25") == -0.25
    for bad in ["", "1+2j", "abc", "1+2i+3"]:
        with pytest.raises(ConfigError):
            parse_complex(bad)
    assert format_complex(0.5) == "0.5"
    assert format_complex(1 - 2j) == "1-2i"


def test_eval_kernels(capsys):
    assert run(capsys, "eval", "theta", "--x", "0.5") == (0, "0.5\n", "")
    assert run(capsys, "eval", "gamma", "--z", "0.7", "--a", "1.3") == (0, "1\n", "")
    code, out, _ = run(capsys, "eval", "qpfact", "--a", "0.5", "--n", "2", "--q", "0.5")
    assert code == 0 and complex(out.strip().replace("i", "j")) == pytest.approx(0.5 * 0.75)


def test_eval_vwp_agrees_with_closed_form(capsys):
    # e = a^2 q^{n+1} / (bcd) for a = 0.6, b = 0.9, c = 1.1, d = 0.8, n = 3, q = 0.4
    a, b, c, d, n, q = 0.6, 0.9, 1.1, 0.8, 3, 0.4
    e = a * a * q ** (n + 1) / (b * c * d)
    common = ["--n", str(n), "--q", str(q), "--p", "0.1"]
    _, lhs, _ = run(capsys, "eval", "vwp", "--a1", str(a), "--upper", str(b), str(c), str(d), repr(e), *common)
    _, rhs, _ = run(capsys, "eval", "ftrhs", "--a", str(a), "--b", str(b), "--c", str(c), "--d", str(d), *common)
    assert float(lhs) == pytest.approx(float(rhs), rel=1e-12)


def test_verify_formats(capsys, tmp_path):
    code, out, _ = run(capsys, "verify", "--id", "theta-structural", "--trials", "5", "--format", "json")
    assert code == 0
    rep = json.loads(out)
    assert rep["suite_seed"] == 0 and rep["results"][0]["passed"]
    code, out, _ = run(capsys, "verify", "--id", "theta-structural", "--trials", "5", "--format", "csv",
                       "--no-timing")
    assert out.splitlines()[0].startswith("id,kind,trials") and "wall_time" not in out
    target = tmp_path / "r.json"
    code, out, _ = run(capsys, "verify", "--id", "jackson-8phi7", "--trials", "3", "--format", "json",
                       "-o", str(target))
    assert code == 0 and "PASS" in out and json.loads(target.read_text())["results"]


def test_exit_codes(capsys):
    assert run(capsys, "verify", "--id", "jackson-8phi7", "--trials", "5", "--tolerance", "1e-30")[0] == 1
    assert run(capsys, "verify", "--id", "frenkel-turaev-10v9", "--trials", "3", "--perturb", "1e-6")[0] == 1
    code, _, err = run(capsys, "verify", "--id", "nope")
    assert code == 2 and "unknown identity" in err
    assert run(capsys, "verify")[0] == 2
    assert run(capsys, "verify", "--id", "jackson-8phi7", "--trials", "0")[0] == 2
    assert run(capsys, "eval", "theta", "--x", "zz")[0] == 2
    assert run(capsys, "eval", "theta", "--x", "0")[0] == 2


def test_config_file_and_precedence(capsys, tmp_path, monkeypatch):
    cfg = tmp_path / "c.json"
    cfg.write_text(json.dumps({"ids": ["jackson-8phi7"], "trials": 4, "seed": 9, "format": "json"}))
    code, out, _ = run(capsys, "verify", "--config", str(cfg))
    rep = json.loads(out)
    assert code == 0 and rep["suite_seed"] == 9 and rep["results"][0]["trials"] == 4
    monkeypatch.setenv("ELLIPSUM_CONFIG", str(cfg))
    code, out, _ = run(capsys, "verify", "--trials", "2")
    assert json.loads(out)["results"][0]["trials"] == 2
    cfg.write_text(json.dumps({"bogus": 1}))
    assert run(capsys, "verify", "--all")[0] == 2


def test_list(capsys):
    code, out, _ = run(capsys, "list", "--format", "json")
    rows = json.loads(out)
    assert code == 0 and {"id", "kind", "anchor"} <= set(rows[0])
    code, out, _ = run(capsys, "list")
    assert "frenkel-turaev-10v9" in out
