import io
import json

import numpy as np
import pytest

from phase_toolkit import (Signal, autocorrelation, canonicalize,
                           form_distance, fourier_intensity,
                           magnitude_counterexample)
from phase_toolkit.cli import main
from phase_toolkit.serialization import dumps, signal_from_dict, signal_to_dict

from helpers import probe_grid


def _write_signal(path, values, offset=0):
    path.write_text(dumps(signal_to_dict(Signal(offset, values))))
    return str(path)


def _write_acf(path, values):
    from phase_toolkit.serialization import acf_to_dict

    acf = autocorrelation(Signal(0, values))
    path.write_text(dumps(acf_to_dict(acf)))
    return str(path)


def _write_constraints(path, items):
    path.write_text(json.dumps(items))
    return str(path)


def test_analyze_all_on_circle(tmp_path, capsys):
    rc = main(["analyze", _write_signal(tmp_path / "s.json", [1.0, 1.0])])
    out = capsys.readouterr().out
    assert rc == 0
    assert "support length: 2" in out
    assert "on circle: 1" in out
    assert "1 up to rotation/shift" in out
    assert "ambiguous" not in out


def test_analyze_two_point_counts(tmp_path, capsys):
    rc = main(["analyze", _write_signal(tmp_path / "s.json", [1.0, 2.0])])
    out = capsys.readouterr().out
    assert rc == 0
    assert "solution classes: 2 up to rotation/shift, 1 up to reflection as well" in out


def test_analyze_flags_modulus_ambiguity(tmp_path, capsys):
    pair = magnitude_counterexample(4, 2.0, 2.0)
    rc = main(["analyze", _write_signal(tmp_path / "s.json", pair.x.values)])
    out = capsys.readouterr().out
    assert rc == 0
    assert "all moduli: ambiguous" in out


def test_analyze_out_document(tmp_path, capsys):
    out_path = tmp_path / "report.json"
    rc = main(["analyze", _write_signal(tmp_path / "s.json", [1.0, 0.0, 2.0]),
               "--out", str(out_path)])
    capsys.readouterr()
    assert rc == 0
    doc = json.loads(out_path.read_text())
    assert doc["n"] == 3
    assert {"autocorrelation", "zero_pairs", "class_count",
            "class_count_modulo_reflection", "criteria"} <= set(doc)
    assert all("gamma" in p for p in doc["zero_pairs"]["pairs"])


def test_enumerate_constant_intensity(tmp_path, capsys):
    src = tmp_path / "acf.json"
    src.write_text(json.dumps({"n": 1, "coeffs": [[1.0, 0.0]]}))
    rc = main(["enumerate", str(src)])
    out = capsys.readouterr().out
    assert rc == 0
    doc = json.loads(out)
    assert doc["total_enumerated"] == 1
    assert doc["classes"][0]["signal"]["values"] == [[1.0, 0.0]]


def test_enumerate_classes_share_intensity(tmp_path, capsys):
    x = Signal(0, [1.0, 1.0j, -1.0])
    rc = main(["enumerate", _write_signal(tmp_path / "s.json", x.values)])
    out = capsys.readouterr().out
    assert rc == 0
    w = probe_grid(64)
    ref = fourier_intensity(x, w)
    for cls in json.loads(out)["classes"]:
        sig = signal_from_dict(cls["signal"])
        np.testing.assert_allclose(fourier_intensity(sig, w), ref,
                                   atol=1e-9 * np.max(ref))


def test_enumerate_modulo_reflection_flag(tmp_path, capsys):
    path = _write_signal(tmp_path / "s.json", [1.0, 2.0])
    main(["enumerate", path])
    full = json.loads(capsys.readouterr().out)
    main(["enumerate", path, "--modulo-reflection"])
    merged = json.loads(capsys.readouterr().out)
    assert len(full["classes"]) == 2
    assert len(merged["classes"]) == 1


def test_enumerate_output_is_canonical(tmp_path, capsys):
    rc = main(["enumerate", _write_signal(tmp_path / "s.json",
                                          [1.0, 2.0 - 1.0j, 0.5])])
    out = capsys.readouterr().out
    assert rc == 0
    for cls in json.loads(out)["classes"]:
        sig = signal_from_dict(cls["signal"])
        again = canonicalize(sig)
        assert form_distance(again, canonicalize(again.signal())) < 1e-12
        np.testing.assert_allclose(again.values, sig.values, atol=1e-12)


def test_enumerate_malformed_json(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    rc = main(["enumerate", str(bad)])
    err = capsys.readouterr().err
    assert rc == 2
    assert "error:" in err
    assert "malformed JSON" in err


def test_recover_exit_codes(tmp_path, capsys):
    acf_path = _write_acf(tmp_path / "acf.json", [1.0, 2.0])
    unique = _write_constraints(tmp_path / "c1.json",
                                [{"kind": "magnitude", "index": 1, "value": 2.0}])
    rc = main(["recover", acf_path, unique])
    out = capsys.readouterr().out
    assert rc == 0
    doc = json.loads(out)
    assert len(doc["classes"]) == 1
    assert doc["classes"][0]["signal"]["values"] == [[1.0, 0.0], [2.0, 0.0]]

    impossible = _write_constraints(tmp_path / "c2.json",
                                    [{"kind": "magnitude", "index": 1, "value": 7.0}])
    assert main(["recover", acf_path, impossible]) == 3
    capsys.readouterr()

    # all-positive family plus zero phases keeps several classes alive
    family = _write_acf(tmp_path / "acf2.json", [6.0, 5.0, 1.0])
    phases = _write_constraints(tmp_path / "c3.json",
                                [{"kind": "phase", "index": i, "value": 0.0}
                                 for i in range(3)])
    assert main(["recover", family, phases]) == 4
    capsys.readouterr()


def test_recover_reads_stdin(tmp_path, capsys, monkeypatch):
    from phase_toolkit.serialization import acf_to_dict

    acf = autocorrelation(Signal(0, [1.0, 2.0]))
    monkeypatch.setattr("sys.stdin", io.StringIO(dumps(acf_to_dict(acf))))
    cons = _write_constraints(tmp_path / "c.json",
                              [{"kind": "magnitude", "index": 0, "value": 1.0}])
    rc = main(["recover", "-", cons, "--format", "csv"])
    out = capsys.readouterr().out
    assert rc == 0
    assert out.strip().splitlines() == ["1,0", "2,0"]


def test_recover_from_intensity_samples(tmp_path, capsys):
    acf = autocorrelation(Signal(0, [1.0, 2.0]))
    w = np.linspace(-np.pi, np.pi, 7, endpoint=False)
    doc = {"n": 2, "samples": [[float(a), float(b)]
                               for a, b in zip(w, acf.intensity(w))]}
    src = tmp_path / "samples.json"
    src.write_text(json.dumps(doc))
    cons = _write_constraints(tmp_path / "c.json", [])
    rc = main(["recover", str(src), cons])
    out = capsys.readouterr().out
    assert rc == 4  # two classes remain without constraints
    assert len(json.loads(out)["classes"]) == 2


def test_counterexample_modulus(tmp_path, capsys):
    out_path = tmp_path / "pair.json"
    rc = main(["counterexample", "modulus", "--support", "4",
               "--split-radius", "2", "--repeated-radius", "2",
               "--out", str(out_path)])
    captured = capsys.readouterr()
    assert rc == 0
    assert "modulus gap 0.000e+00" in captured.err
    doc = json.loads(out_path.read_text())
    assert doc["shared"] == {"intensity": True, "moduli": True, "phases": False}
    x = signal_from_dict(doc["x"])
    y = signal_from_dict(doc["y"])
    np.testing.assert_allclose(np.abs(x.values), np.abs(y.values), atol=1e-9)


def test_counterexample_phase(tmp_path, capsys):
    rc = main(["counterexample", "phase", "--zeros=-2,-3"])
    captured = capsys.readouterr()
    assert rc == 0
    doc = json.loads(captured.out)
    assert isinstance(doc, list) and len(doc) == 1
    assert doc[0]["shared"]["phases"] is True


def test_counterexample_phase_rejects_circle_zeros(capsys):
    rc = main(["counterexample", "phase", "--zeros=-1,-1"])
    captured = capsys.readouterr()
    assert rc == 2
    assert "error:" in captured.err


def test_counterexample_requires_parameters(capsys):
    rc = main(["counterexample", "phase"])
    captured = capsys.readouterr()
    assert rc == 2
    assert "error:" in captured.err


def test_deterministic_output(tmp_path, capsys):
    path = _write_signal(tmp_path / "s.json", [1.0, 2.0 - 1.0j, 0.5j])
    main(["enumerate", path, "--seed", "7"])
    first = capsys.readouterr().out
    main(["enumerate", path, "--seed", "7"])
    second = capsys.readouterr().out
    assert first == second


def test_env_tolerance_fallback(tmp_path, capsys, monkeypatch):
    acf_path = _write_acf(tmp_path / "acf.json", [1.0, 2.0])
    cons = _write_constraints(tmp_path / "c.json",
                              [{"kind": "magnitude", "index": 0, "value": 1.0}])
    monkeypatch.setenv("PHASE_TOOLKIT_TOL_ABS", "10.0")
    rc = main(["recover", acf_path, cons])
    capsys.readouterr()
    assert rc == 4  # sloppy tolerance keeps both classes
    # an explicit flag wins over the environment
    rc = main(["recover", acf_path, cons, "--tol-abs", "1e-9"])
    capsys.readouterr()
    assert rc == 0


def test_bad_env_tolerance_is_an_error(tmp_path, capsys, monkeypatch):
    acf_path = _write_acf(tmp_path / "acf.json", [1.0, 2.0])
    cons = _write_constraints(tmp_path / "c.json", [])
    monkeypatch.setenv("PHASE_TOOLKIT_TOL_ABS", "banana")
    rc = main(["recover", acf_path, cons])
    captured = capsys.readouterr()
    assert rc == 2
    assert "PHASE_TOOLKIT_TOL_ABS" in captured.err


def test_missing_file_is_usage_error(capsys):
    rc = main(["analyze", "/nonexistent/path.json"])
    captured = capsys.readouterr()
    assert rc == 2
    assert "cannot read" in captured.err


def test_csv_format_multiple_blocks(tmp_path, capsys):
    path = _write_signal(tmp_path / "s.json", [1.0, 2.0])
    rc = main(["enumerate", path, "--format", "csv"])
    out = capsys.readouterr().out
    assert rc == 0
    blocks = out.strip().split("\n\n")
    assert len(blocks) == 2
    for block in blocks:
        assert all("," in line for line in block.splitlines())
