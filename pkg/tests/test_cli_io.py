from __future__ import annotations

import json
import random
from itertools import combinations

import pytest

from tightham import PipelineParams, ThreeGraph, find_tight_hamilton
from tightham.cli import main
from tightham.errors import BadParams, FormatError
from tightham.generators import KINDS, gen_random, generate
from tightham.io import (
    check_certificate,
    format_certificate,
    format_edge_list,
    parse_certificate,
    parse_edge_list,
    window_digest,
)


def test_generator_examples():
    assert generate("complete", 5).num_edges() == 10
    assert generate("tight_cycle", 9).num_edges() == 9
    assert generate("split", 12).num_edges() == 2 * 20
    assert generate("single_absorber", 5).num_edges() == 5
    g = generate("random", 40, 0.3, seed=2)
    mean, var = 0.3 * 9880, 0.3 * 0.7 * 9880
    assert abs(g.num_edges() - mean) <= 5 * var**0.5
    assert generate("random", 20, 0.5, seed=1) == gen_random(20, 0.5, seed=1)
    for bad in (("random", 10, None), ("random", 10, 1.5), ("tight_cycle", 2, None), ("nope", 5, None)):
        with pytest.raises(BadParams):
            generate(*bad)
    assert set(KINDS) == {"random", "complete", "tight_cycle", "split", "single_absorber"}


def test_edge_list_round_trip():
    rng = random.Random(0)
    for _ in range(100):
        n = rng.randint(0, 15)
        g = gen_random(n, rng.random(), rng.randrange(10**6))
        text = format_edge_list(g)
        assert parse_edge_list(text.splitlines()) == g
        assert format_edge_list(parse_edge_list(text.splitlines())) == text


def test_edge_list_parsing():
    g = parse_edge_list(["# comment", "", "n 5", "0 1 2", "2 1 0", "  1 2 3  "])
    assert g.num_edges() == 2
    for bad in (["0 1 2"], ["n x"], ["n 4", "0 1"], ["n 4", "0 1 4"], ["n 4", "0 0 1"], ["n 4", "a b c"], []):
        with pytest.raises(FormatError):
            parse_edge_list(bad)


@pytest.fixture(scope="module")
def cert_and_graph():
    g = ThreeGraph.complete(30)
    return find_tight_hamilton(g, PipelineParams(d=0.9)), g


def test_certificate_round_trip(cert_and_graph):
    cert, g = cert_and_graph
    text = format_certificate(cert, g)
    back, embedded, digest = parse_certificate(text)
    assert back == cert and embedded == g and digest == window_digest(cert.order)
    assert format_certificate(back, embedded) == text
    assert check_certificate(back, g) == []
    back, embedded, _ = parse_certificate(format_certificate(cert))
    assert embedded is None


def test_certificate_problems(cert_and_graph):
    cert, g = cert_and_graph
    h = g.copy()
    o = cert.order
    h.remove_edge((o[0], o[1], o[2]))
    assert any("window 0" in p for p in check_certificate(cert, h))
    assert check_certificate(cert, ThreeGraph.complete(31))
    for bad in ("", "nonsense\n", "tightham-certificate 1\nn 3\n", "tightham-certificate 1\nbogus 1\n"):
        with pytest.raises(FormatError):
            parse_certificate(bad)


def write(tmp_path, name, text):
    p = tmp_path / name
    p.write_text(text)
    return str(p)


def test_cli_gen_and_oracle(tmp_path, capsys):
    out = str(tmp_path / "c9.txt")
    assert main(["gen", "tight_cycle", "-n", "9", "--out", out]) == 0
    assert main(["oracle", out]) == 0
    assert capsys.readouterr().out.split() == [str(v) for v in range(9)]
    broken = write(tmp_path, "b.txt", "n 9\n" + "".join(f"{i} {i + 1} {i + 2}\n" for i in range(7)))
    assert main(["oracle", broken, "--json"]) == 1
    assert json.loads(capsys.readouterr().out) == {"cycle": None}


def test_cli_hamilton_verify_and_tamper(tmp_path, capsys):
    gfile = write(tmp_path, "g.txt", format_edge_list(ThreeGraph.complete(30)))
    cfile = str(tmp_path / "c.txt")
    assert main(["hamilton", gfile, "--d", "0.9", "--out", cfile]) == 0
    assert main(["verify", cfile]) == 0
    assert "valid" in capsys.readouterr().out
    cert, g, _ = parse_certificate(open(cfile).read())
    o = cert.order
    g.remove_edge((o[3], o[4], o[5]))
    tampered = write(tmp_path, "t.txt", format_edge_list(g))
    assert main(["verify", cfile, "--graph", tampered, "--json"]) == 1
    payload = json.loads(capsys.readouterr().out)
    assert payload["valid"] is False and payload["problems"]
    forged = open(cfile).read().replace("digest ", "digest 0")
    assert main(["verify", write(tmp_path, "f.txt", forged)]) == 1


def test_cli_other_commands(tmp_path, capsys):
    k12 = write(tmp_path, "k12.txt", format_edge_list(ThreeGraph.complete(12)))
    split = write(tmp_path, "split.txt", format_edge_list(generate("split", 20)))
    assert main(["density", split, "--d", "0.25", "--rho", "0.0001"]) == 1
    assert "violation" in capsys.readouterr().out
    assert main(["density", k12, "--d", "0.5", "--rho", "0.05", "--json", "--estimate"]) == 0
    assert json.loads(capsys.readouterr().out.splitlines()[-1])["witness"] is None
    assert main(["shave", k12, "--d", "0.9", "--rho", "0.01", "--json"]) == 0
    assert json.loads(capsys.readouterr().out)["removed_edges"] == 0
    assert main(["shave", split, "--d", "0.5", "--rho", "0.001"]) == 1
    capsys.readouterr()
    assert main(["absorbers", k12, "--vertex", "0", "--find", "--json"]) == 0
    assert json.loads(capsys.readouterr().out)["count"] == 11 * 10 * 9 * 8
    assert main(["connect", k12, "--ends", "0", "1", "2", "3", "--json"]) == 0
    assert len(json.loads(capsys.readouterr().out)["path"]) == 10
    two = ThreeGraph(12, list(combinations(range(6), 3)) + list(combinations(range(6, 12), 3)))
    assert main(["connect", write(tmp_path, "two.txt", format_edge_list(two)), "--ends", "0", "1", "7", "6"]) == 1
    capsys.readouterr()
    assert main(["cover", k12, "--json"]) == 0
    assert len(json.loads(capsys.readouterr().out)["paths"]) == 1
    assert main(["cover", write(tmp_path, "e.txt", "n 10\n")]) == 1


def test_cli_usage_errors(tmp_path, capsys):
    assert main(["oracle", str(tmp_path / "missing.txt")]) == 2
    assert main(["oracle", write(tmp_path, "bad.txt", "n 4\n0 1\n")]) == 2
    assert main(["gen", "random", "-n", "10"]) == 2
    assert main(["absorbers", write(tmp_path, "k.txt", "n 5\n"), "--vertex", "9"]) == 2
    assert main(["oracle", write(tmp_path, "big.txt", "n 40\n")]) == 2
    with pytest.raises(SystemExit) as ei:
        main([])
    assert ei.value.code == 2


def test_cli_pipe_with_default_sigma():
    import subprocess
    import sys

    cli = f"{sys.executable} -m tightham.cli"
    cmd = (f"{cli} gen random -n 120 -p 0.5 --seed 1 | {cli} hamilton --d 0.45 --seed 1 | {cli} verify"
           "; exit $(( ${PIPESTATUS[0]} + ${PIPESTATUS[1]} + ${PIPESTATUS[2]} ))")
    out = subprocess.run(["bash", "-c", cmd], capture_output=True, text=True)
    assert out.returncode == 0, out.stderr
    assert "valid" in out.stdout
