"""The batch JSON command-line interface."""

import io
import json

import pytest
from wittlab import cli


def _run(argv, stdin, capsys, monkeypatch):
    monkeypatch.setattr("sys.stdin", io.StringIO(stdin))
    code = cli.main(argv)
    out = capsys.readouterr().out
    return code, [json.loads(line) for line in out.splitlines() if line.strip()]


def test_ghost_example(capsys, monkeypatch):
    req = {"op": "ghost", "params": {"witt": {"len": 2, "coords": [1, 1]}}}
    code, (resp,) = _run(["eval"], json.dumps(req), capsys, monkeypatch)
    assert code == 0
    assert resp["ok"] and resp["value"] == [1, 4]


def test_unknown_op(capsys, monkeypatch):
    code, (resp,) = _run(["eval"], '{"op":"nonsense"}', capsys, monkeypatch)
    assert code == 2
    assert resp["error"]["code"] == "unknown_op"


def test_bad_json_is_usage_error(capsys, monkeypatch):
    code, (resp,) = _run(["eval"], "not json", capsys, monkeypatch)
    assert code == 2
    assert resp["error"]["code"] == "bad_json"


def test_epsilon_valuation_example(capsys, monkeypatch):
    # v_R(eps - 1) = p/(p-1) = 3/2 at p = 3
    code, (eps,) = _run(
        ["eval"], '{"op":"make_epsilon","params":{"k":0}}', capsys, monkeypatch
    )
    assert code == 0
    from wittlab import jsonio as J, tilt as T
    from wittlab.context import PrecisionCtx

    ctx = PrecisionCtx(3)
    e = J.decode_tilt(eps["value"], ctx)
    req = {
        "op": "tilt_valuation",
        "params": {"x": J.encode(e - T.tilt_one(3, len(e.coords)))},
    }
    code, (resp,) = _run(["eval"], json.dumps(req), capsys, monkeypatch)
    assert code == 0
    assert resp["value"] == "3/2"


def test_batch_mode_processes_every_line(capsys, monkeypatch):
    lines = "\n".join(
        [
            '{"op":"ghost","params":{"witt":{"len":1,"coords":[2]}}}',
            '{"op":"nonsense"}',
            '{"op":"ghost","params":{"witt":{"len":1,"coords":[3]}}}',
        ]
    )
    code, resps = _run(["eval", "--batch"], lines, capsys, monkeypatch)
    assert len(resps) == 3
    assert [r["ok"] for r in resps] == [True, False, True]
    assert code == 2  # first failing request sets the exit code


def test_precision_exhaustion_exit_code(capsys, monkeypatch):
    from wittlab import jsonio as J, tilt as T
    from wittlab.context import PrecisionCtx

    ctx = PrecisionCtx(3)
    e = J.encode(T.make_epsilon(ctx, 1))
    req = {"op": "theta", "params": {"x": {"witt": {"len": 1, "coords": [e]}}, "n": 3}}
    code, (resp,) = _run(["eval"], json.dumps(req), capsys, monkeypatch)
    assert code == 3
    assert resp["error"]["code"] == "precision_exhausted"


def test_theta_reports_effective_precision(capsys, monkeypatch):
    from wittlab import jsonio as J, tilt as T
    from wittlab.context import PrecisionCtx

    ctx = PrecisionCtx(3)
    coords = [J.encode(T.make_epsilon(ctx, 1)), J.encode(T.tilt_one(3, 4))]
    req = {"op": "theta", "params": {"x": {"witt": {"len": 2, "coords": coords}}, "n": 2}}
    code, (resp,) = _run(["eval"], json.dumps(req), capsys, monkeypatch)
    assert code == 0
    assert resp["effective_precision"] >= 1
    assert resp["consumed_window"] >= 1


def test_precision_flags(capsys, monkeypatch):
    req = {"op": "make_epsilon", "params": {"k": 0}}
    code, (resp,) = _run(
        ["--p", "5", "--depth", "4", "--len", "3", "eval"],
        json.dumps(req),
        capsys,
        monkeypatch,
    )
    assert code == 0
    assert resp["value"]["tilt"]["coords"][0]["p"] == 5


def test_deterministic_responses(capsys, monkeypatch):
    req = '{"op":"from_ghost","params":{"ghost":[3,"1/2"]}}'
    _, (r1,) = _run(["eval"], req, capsys, monkeypatch)
    _, (r2,) = _run(["eval"], req, capsys, monkeypatch)
    r1.pop("seconds"), r2.pop("seconds")
    assert r1 == r2


def test_selftest_report_shape():
    # tiny structural check without paying for a full run
    from wittlab import selftest

    assert {name for name, _ in selftest.CHECKS} >= {
        "backend-equivalence",
        "theta-map-correctness",
        "tc-kernel-exactness",
    }
