import contextlib
import io
import json
import subprocess
import sys

import pytest

from padicgroup.bookkeeping import FINGERPRINT
from padicgroup.cli import main

E_MINUS = '{"x0": "-1", "x": {"1": "-1"}}'


def run(*argv):
    buf = io.StringIO()
    with contextlib.redirect_stdout(buf):
        try:
            code = main(list(argv))
        except SystemExit as ex:
            code = ex.code or 0
    return code, buf.getvalue()


EXIT_CASES = [
    (("ctx", "7"), 0),
    (("ctx", "6"), 2),
    (("ctx", "-3"), 2),
    (("member", '{"x0": "5", "x": {}}'), 0),
    (("member", '{"x0": "1/2", "x": {}}'), 1),
    (("member", '{"x0": "5"'), 2),
    (("member", '{"x0": "5"}'), 2),
    (("witness", E_MINUS, "--prime", "2"), 0),
    (("witness", E_MINUS), 0),
    (("witness", E_MINUS, "--prime", "5"), 1),
    (("witness", '{"x0": "5", "x": {}}'), 1),
    (("witness", '{"x0": "1/2", "x": {}}'), 1),
    (("certify", '[{"x0": "1", "x": {"1": "2"}}]'), 0),
    (("certify", '[{"x0": "1", "x": {}}]'), 1),
    (("certify", '{"x0": "1", "x": {}}'), 2),
    (("purify", '[{"x0": "2", "x": {}}]'), 0),
    (("purify", '[{"x0": "0", "x": {"1": "2"}}]', "--bound", "2"), 0),
    (("enum", "rat", "--from", "1", "--to", "8"), 0),
    (("enum", "rat", "--from", "5", "--to", "3"), 2),
    (("enum", "partition", "--from", "1", "--to", "5"), 0),
    (("check", "div-infinitude", "--n", "2"), 0),
    (("check", "no-such-suite"), 2),
    (("--residue-cap", "1", "member", '{"x0": "-1/4", "x": {"1": "-1/4"}}'), 3),
    (("--version",), 0),
]


@pytest.mark.parametrize("argv,expected", EXIT_CASES, ids=lambda v: " ".join(v)[:40] if isinstance(v, tuple) else str(v))
def test_exit_codes(argv, expected):
    code, out = run(*argv)
    assert code == expected, out


def test_every_line_is_json_with_fingerprint():
    for argv, _ in EXIT_CASES:
        if argv == ("--version",):
            continue
        _, out = run(*argv)
        lines = out.strip().splitlines()
        assert json.loads(lines[0]).get("fingerprint") == FINGERPRINT, argv
        for line in lines[1:]:
            json.loads(line)  # data rows: valid JSON, no banner


def test_ctx_output_frozen():
    code, out = run("ctx", "7")
    assert code == 0
    assert out == (
        '{"a": 1, "fingerprint": "v1:353ca906f3bca6fa", "l": 8, "p": 7, '
        '"relevant": [1, 2, 3, 4, 5], "x": {"1": "-1"}}\n'
    )


def test_member_failure_payload():
    code, out = run("member", '{"x0": "1/2", "x": {}}')
    assert code == 1
    data = json.loads(out)
    assert data["member"] is False
    assert data["failing_prime"] == 2
    assert "axis elements must be integers" in data["reason"]


def test_witness_multi_prime_default():
    code, out = run("witness", E_MINUS)
    assert code == 0
    data = json.loads(out)
    assert data["primes"] == [2, 3, 7]
    assert [w["p"] for w in data["witnesses"]] == [2, 3, 7]


def test_witness_round_trip_through_cli():
    _, wit = run("witness", E_MINUS, "--prime", "2")
    code, out = run("verify-witness", E_MINUS, wit.strip())
    assert code == 0 and json.loads(out)["ok"] is True
    bent = json.loads(wit)
    bent["bezout"] = [1, 1]
    code, out = run("verify-witness", E_MINUS, json.dumps(bent))
    assert code == 1
    assert "a*d + b*p" in json.loads(out)["reason"]


def test_certificate_round_trip_through_cli():
    gens = '[{"x0": "0", "x": {"1": "2"}}]'
    _, cert = run("certify", gens)
    code, out = run("verify-cert", gens, cert.strip())
    assert code == 0 and json.loads(out)["ok"] is True
    bad = json.loads(cert)
    bad["D"] = 7
    code, out = run("verify-cert", gens, json.dumps(bad))
    assert code == 1
    assert json.loads(out)["ok"] is False


def test_certify_axis_overlap_payload():
    code, out = run("certify", '[{"x0": "1", "x": {}}]')
    assert code == 1
    data = json.loads(out)
    assert data["status"] == "not-applicable"
    assert data["axis_witness"] == {"x0": "1", "x": {}}


def test_enum_rational_prefix():
    code, out = run("enum", "rat", "--from", "1", "--to", "8")
    lines = out.strip().splitlines()
    header = json.loads(lines[0])
    assert header == {"enum": "rat", "fingerprint": FINGERPRINT, "from": 1, "to": 8}
    values = [json.loads(line)["value"] for line in lines[1:]]
    assert values == ["-1", "0", "1", "-2", "-1/2", "1/2", "2", "-3"]


def test_enum_partition_prefix():
    _, out = run("enum", "partition", "--from", "1", "--to", "5")
    rows = [json.loads(line)["value"] for line in out.strip().splitlines()[1:]]
    assert rows == [
        {"p": 2, "vector": {"1": "-1"}},
        {"p": 3, "vector": {"1": "-1"}},
        {"p": 5, "vector": {"1": "-1", "2": "-1"}},
        {"p": 7, "vector": {"1": "-1"}},
        {"p": 11, "vector": {"1": "-1", "2": "-1"}},
    ]


def test_malformed_json_reports_position():
    code, out = run("member", '{"x0": "5"')
    assert code == 2
    data = json.loads(out)
    assert data["error"] == "malformed-json"
    assert "line 1 column 11" in data["detail"]


def test_capacity_error_payload():
    code, out = run("--residue-cap", "1", "member", '{"x0": "-1/4", "x": {"1": "-1/4"}}')
    assert code == 3
    data = json.loads(out)
    assert data["error"] == "capacity-exceeded"
    assert data["required"] == 3 and data["cap"] == 1


def test_element_argument_accepts_files(tmp_path):
    path = tmp_path / "element.json"
    path.write_text('{"x0": "5", "x": {}}')
    code, out = run("member", str(path))
    assert code == 0 and json.loads(out)["member"] is True


def test_outputs_deterministic_in_process():
    for argv, _ in EXIT_CASES:
        assert run(*argv) == run(*argv)


def test_version_via_subprocess():
    proc = subprocess.run(
        [sys.executable, "-m", "padicgroup", "--version"],
        capture_output=True, text=True,
    )
    assert proc.returncode == 0
    data = json.loads(proc.stdout)
    assert data == {"fingerprint": FINGERPRINT, "version": "0.1.0"}


def test_no_arguments_is_usage_error():
    proc = subprocess.run(
        [sys.executable, "-m", "padicgroup"], capture_output=True, text=True,
    )
    assert proc.returncode == 2
