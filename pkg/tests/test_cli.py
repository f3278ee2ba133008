import json
import pathlib
import subprocess
import sys

import pytest

from catring import trivial_group_module, yoneda, yoneda_cyclic_quotient
from catring.cli import main
from catring.serialize import load_json, module_to_dict, ring_from_dict, save_json


def run_cli(args, capsys):
    code = main(args)
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.fixture(scope="module")
def workdir(tmp_path_factory):
    d = tmp_path_factory.mktemp("cli")
    assert main(["ring", "build", "--order", "4", "-o", str(d / "ring4.json")]) == 0
    assert main(["ring", "build", "--order", "1", "-o", str(d / "ring1.json")]) == 0
    r4 = load_json(d / "ring4.json")
    ring4 = ring_from_dict(r4)
    r1 = load_json(d / "ring1.json")
    ring1 = ring_from_dict(r1)
    witness = yoneda_cyclic_quotient(ring4, 2, 0, 1, 0)
    save_json(d / "witness.json", module_to_dict(witness, r4["ring_hash"]))
    from catring import free_cover, kernel_of

    k1, _ = kernel_of(free_cover(witness))
    k2, _ = kernel_of(free_cover(k1))
    save_json(d / "syzygy2.json", module_to_dict(k2, r4["ring_hash"]))
    save_json(d / "yoneda.json", module_to_dict(yoneda(ring4, 2, 0), r4["ring_hash"]))
    save_json(d / "z6.json", module_to_dict(trivial_group_module(ring1, degree0=(6,)), r1["ring_hash"]))
    save_json(d / "z.json", module_to_dict(trivial_group_module(ring1, degree0=(0,)), r1["ring_hash"]))
    save_json(d / "z2.json", module_to_dict(trivial_group_module(ring1, degree0=(2,)), r1["ring_hash"]))
    return d


def test_ring_build_writes_rank_table(workdir, capsys):
    code, out, _ = run_cli(["ring", "info", str(workdir / "ring4.json")], capsys)
    assert code == 0
    assert "total rank 22" in out


def test_ring_build_not_stabilized_exit(tmp_path, capsys):
    code, out, err = run_cli(
        ["ring", "build", "--order", "4", "--max-len", "1", "-o", str(tmp_path / "r.json")], capsys
    )
    assert code == 1
    assert "not stabilized" in err


def test_ring_build_k1(tmp_path, capsys):
    code, out, _ = run_cli(["ring", "build", "--order", "1", "-o", str(tmp_path / "r1.json")], capsys)
    assert code == 0
    assert "1" in out


def test_ring_verify_ok(workdir, capsys):
    code, out, _ = run_cli(["ring", "verify", str(workdir / "ring4.json")], capsys)
    assert code == 0
    assert "verify: ok" in out
    assert "hand-transcribed" in out


def test_ring_verify_detects_corruption(workdir, tmp_path, capsys):
    data = load_json(workdir / "ring4.json")
    for entry in data["table"]:
        if any(entry[2]):
            entry[2][0] += 1
            break
    data["ring_hash"] = __import__("catring.serialize", fromlist=["content_hash"]).content_hash(data)
    save_json(tmp_path / "bad.json", data)
    code, out, _ = run_cli(["ring", "verify", str(tmp_path / "bad.json")], capsys)
    assert code == 1
    assert "FAILED" in out


def test_ring_verify_k2_skips_oracle(tmp_path, capsys):
    assert main(["ring", "build", "--order", "2", "-o", str(tmp_path / "r2.json")]) == 0
    code, out, _ = run_cli(["ring", "verify", str(tmp_path / "r2.json")], capsys)
    assert code == 0
    assert "hand-transcribed" not in out


def test_group_commands(capsys):
    code, out, _ = run_cli(
        ["group", "cosets", "--order", "4", "--left", "2", "--middle", "4", "--right", "2"], capsys
    )
    assert code == 0 and out.strip() == "e, a"
    code, out, _ = run_cli(
        ["group", "cosets", "--order", "4", "--left", "1", "--middle", "2", "--right", "1"], capsys
    )
    assert code == 0 and out.strip() == "e, a^2"
    code, out, _ = run_cli(
        ["group", "induce", "--order", "4", "--from", "2", "--to", "4", "--char", "1,0"], capsys
    )
    assert code == 0 and out.strip() == "1 + chi^2"
    code, out, _ = run_cli(
        ["group", "restrict", "--order", "4", "--from", "4", "--to", "2", "--char", "0,1,0,0", "--json"],
        capsys,
    )
    assert code == 0
    assert json.loads(out) == {"coefficients": [0, 1], "subgroup": 2}


def test_group_usage_errors(capsys):
    code, _, err = run_cli(
        ["group", "cosets", "--order", "4", "--left", "4", "--middle", "2", "--right", "1"], capsys
    )
    assert code == 2
    code, _, err = run_cli(
        ["group", "induce", "--order", "4", "--from", "2", "--to", "4", "--char", "1"], capsys
    )
    assert code == 2


def test_module_check(workdir, capsys):
    code, out, _ = run_cli(
        ["module", "check", "--ring", str(workdir / "ring4.json"), str(workdir / "witness.json")],
        capsys,
    )
    assert code == 0 and "module ok" in out


def test_hash_mismatch_is_rejected(workdir, capsys):
    code, _, err = run_cli(
        [
            "ext",
            "--ring", str(workdir / "ring4.json"),
            "-M", str(workdir / "z6.json"),
            "-N", str(workdir / "z.json"),
            "--degree", "1",
        ],
        capsys,
    )
    assert code == 2
    assert "different ring" in err


def test_ext_classical(workdir, capsys):
    code, out, _ = run_cli(
        [
            "ext",
            "--ring", str(workdir / "ring1.json"),
            "-M", str(workdir / "z6.json"),
            "-N", str(workdir / "z.json"),
            "--degree", "1",
        ],
        capsys,
    )
    assert code == 0
    assert "degree 0: Z/6" in out


def test_ext_on_yoneda_vanishes(workdir, capsys):
    code, out, _ = run_cli(
        [
            "ext", "--json",
            "--ring", str(workdir / "ring4.json"),
            "-M", str(workdir / "yoneda.json"),
            "-N", str(workdir / "witness.json"),
            "--degree", "2",
        ],
        capsys,
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["ext"] == {
        "0": {"free_rank": 0, "torsion": []},
        "1": {"free_rank": 0, "torsion": []},
    }


def test_ext_nonzero_for_witness(workdir, capsys):
    # degree-2 Ext of the witness against its own second syzygy is nonzero
    code, out, _ = run_cli(
        [
            "ext",
            "--ring", str(workdir / "ring4.json"),
            "-M", str(workdir / "witness.json"),
            "-N", str(workdir / "syzygy2.json"),
            "--degree", "2",
        ],
        capsys,
    )
    assert code == 0
    assert "Z/2" in out
    code, out, _ = run_cli(
        ["pd", "--ring", str(workdir / "ring4.json"), "-M", str(workdir / "witness.json"), "--cap", "3"],
        capsys,
    )
    assert code == 0
    assert out.strip().endswith("AboveCap")


def test_uct_classical(workdir, capsys):
    code, out, _ = run_cli(
        [
            "uct",
            "--ring", str(workdir / "ring1.json"),
            "-M", str(workdir / "z2.json"),
            "-N", str(workdir / "z2.json"),
        ],
        capsys,
    )
    assert code == 0
    assert "pd_check: True" in out
    assert "degree 0: Z/2" in out


def test_pd_yoneda(workdir, capsys):
    code, out, _ = run_cli(
        ["pd", "--ring", str(workdir / "ring4.json"), "-M", str(workdir / "yoneda.json"), "--cap", "2"],
        capsys,
    )
    assert code == 0
    assert out.strip().endswith("0")


def test_resolve_prints_steps(workdir, capsys):
    code, out, _ = run_cli(
        [
            "resolve",
            "--ring", str(workdir / "ring4.json"),
            "-M", str(workdir / "witness.json"),
            "--length", "2",
        ],
        capsys,
    )
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0].startswith("F_0:")
    assert len(lines) == 3


def test_outputs_byte_stable(workdir, tmp_path, capsys):
    # identical invocations produce byte-identical files and stdout
    p1, p2 = tmp_path / "a.json", tmp_path / "b.json"
    code, out1, _ = run_cli(["ring", "build", "--order", "2", "-o", str(p1)], capsys)
    assert code == 0
    code, out2, _ = run_cli(["ring", "build", "--order", "2", "-o", str(p2)], capsys)
    assert code == 0
    assert p1.read_bytes() == p2.read_bytes()
    assert out1.replace(str(p1), "X") == out2.replace(str(p2), "X")
    for args in (
        ["ring", "info", str(workdir / "ring4.json"), "--json"],
        ["ext", "--ring", str(workdir / "ring1.json"), "-M", str(workdir / "z6.json"), "-N", str(workdir / "z.json"), "--degree", "1", "--json"],
        ["group", "cosets", "--order", "12", "--left", "2", "--middle", "6", "--right", "3", "--json"],
    ):
        _, a, _ = run_cli(args, capsys)
        _, b, _ = run_cli(args, capsys)
        assert a == b


def test_console_entry_point(workdir):
    proc = subprocess.run(
        [sys.executable, "-m", "catring.cli", "group", "cosets", "--order", "4",
         "--left", "2", "--middle", "4", "--right", "2"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert proc.stdout.strip() == "e, a"
