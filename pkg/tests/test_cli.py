"""CLI contract: exit codes, JSON schema, round-trips."""

from __future__ import annotations

import json
import shutil
import subprocess

import pytest

from wct.cli import main
from wct.groups import Element, element_from_json, load_group
from wct.lattice import Sublattice
from wct.maps import CosetwiseAffineMap
from wct.conjugacy import kf, is_conjugate


def run_cli(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, (json.loads(out) if out else None)


def test_check_presentation_all(capsys):
    code, rep = run_cli(capsys, "check-presentation")
    assert code == 0
    assert rep["schema"] == "wct/1"
    assert len(rep["entries"]) == 17
    assert all(e["violations"] == [] for e in rep["entries"])


def test_check_presentation_single(capsys):
    code, rep = run_cli(capsys, "check-presentation", "--group", "p6m")
    assert code == 0
    assert [e["group"] for e in rep["entries"]] == ["p6m"]


def test_unknown_group_is_usage_error(capsys):
    with pytest.raises(SystemExit) as err:
        main(["classes", "--group", "p5"])
    assert err.value.code == 2


def test_unknown_subcommand_is_usage_error(capsys):
    with pytest.raises(SystemExit) as err:
        main(["frobnicate"])
    assert err.value.code == 2


def test_acceptance_bogus_suite_is_usage_error(capsys):
    with pytest.raises(SystemExit) as err:
        main(["acceptance", "--suite", "bogus"])
    assert err.value.code == 2


def test_classes_element_round_trip(capsys):
    code, rep = run_cli(capsys, "classes", "--group", "p6",
                        "--element", "x^2 rho3")
    assert code == 0
    g = element_from_json(rep["element"])
    assert g == Element((2, 0), "rho3")
    piece = rep["class"]["pieces"][0]
    lat = Sublattice(2, piece["lattice"])
    assert lat == kf(load_group("p6"), piece["f"])


def test_classes_sweep_lists_distinct_descriptors(capsys):
    code, rep = run_cli(capsys, "classes", "--group", "p2", "--radius", "1")
    assert code == 0
    reps = [json.dumps(c["class"], sort_keys=True) for c in rep["classes"]]
    assert len(reps) == len(set(reps))
    assert any(c["class"]["kind"] == "cosetUnion" for c in rep["classes"])


def test_involutions_output(capsys):
    code, rep = run_cli(capsys, "involutions", "--group", "p4mg")
    assert code == 0
    assert rep["loci"]["rho"] is None
    assert rep["loci"]["rhogamma"] == {"offset": [0, 0], "lattice": [[1, 1]]}


def test_verify_map_pass(capsys):
    code, rep = run_cli(capsys, "verify-map", "--group", "p3",
                        "--map", "tau", "--radius", "3")
    assert code == 0
    assert rep["ok"] and rep["nontrivial"]
    assert rep["witness"] is None
    G = load_group("p3")
    g1, g2 = (element_from_json(e) for e in rep["certificate"]["hom_witness"])
    m = CosetwiseAffineMap(
        G, {f: (r["to"], tuple(tuple(row) for row in r["m"]), tuple(r["t"]))
            for f, r in rep["map"]["rule"].items()})
    assert m.apply(G.mul(g1, g2)) != G.mul(m.apply(g1), m.apply(g2))


def test_verify_map_failure_exits_one(capsys):
    code, rep = run_cli(capsys, "verify-map", "--group", "p4",
                        "--map", "conj_rho_on_rho2", "--radius", "2")
    assert code == 1
    assert not rep["ok"] and rep["witness"] is not None
    G = load_group("p4")
    g1, g2 = (element_from_json(e) for e in rep["witness"])
    m = CosetwiseAffineMap(
        G, {f: (r["to"], tuple(tuple(row) for row in r["m"]), tuple(r["t"]))
            for f, r in rep["map"]["rule"].items()})
    lhs = m.apply(G.mul(g1, g2))
    rhs = G.mul(m.apply(g1), m.apply(g2))
    assert not is_conjugate(G, lhs, rhs)


def test_verify_map_expression(capsys):
    code, rep = run_cli(capsys, "verify-map", "--group", "p4",
                        "--map", "tau_x * inv(mu_rho)", "--radius", "2")
    assert code == 0
    assert rep["ok"]


def test_verify_map_unknown_name(capsys):
    code = main(["verify-map", "--group", "p4", "--map", "tau_zz"])
    assert code == 2
    err = capsys.readouterr().err
    assert "unknown map" in err


def test_wgroup_relations(capsys):
    code, rep = run_cli(capsys, "wgroup-relations", "--group", "p4")
    assert code == 0
    assert rep["relations"]["ok"] and rep["normality"]["ok"]
    code, rep = run_cli(capsys, "wgroup-relations", "--group", "p3")
    assert code == 0
    assert "normality" not in rep


def test_semidirect_phi(capsys):
    code, rep = run_cli(capsys, "semidirect", "--theta", "[[0,-1],[1,-1]]",
                        "--p", "3", "--radius", "3", "--check", "phi")
    assert code == 0
    assert rep["ok"] and rep["verify"]["ok"] and rep["nontrivial"]
    assert set(rep["verify"]["methods"].values()) == {"uniform"}
    assert rep["certificate"]["hom_witness"][0]["k"] in (0, 1, 2)


def test_semidirect_p2_candidate(capsys):
    code, rep = run_cli(capsys, "semidirect", "--theta", "[[0,1],[1,0]]",
                        "--p", "2", "--check", "p2-candidate")
    assert code == 0
    assert rep["ok"] and not rep["nontrivial"]


def test_semidirect_presentation(capsys):
    code, rep = run_cli(capsys, "semidirect", "--theta", "[[-1]]",
                        "--p", "2", "--check", "presentation")
    assert code == 0 and rep["ok"]


def test_semidirect_bad_theta(capsys):
    assert main(["semidirect", "--theta", "[[oops]]", "--p", "3"]) == 2
    assert main(["semidirect", "--theta", "[[1,0],[0,1]]", "--p", "2"]) == 2
    assert main(["semidirect", "--theta", "[[0,-1],[1,-1]]", "--p", "5"]) == 2
    assert main(["semidirect", "--theta", "[[0.5]]", "--p", "2"]) == 2
    capsys.readouterr()


def test_json_indent_flag(capsys):
    code = main(["involutions", "--group", "p2", "--json-indent", "2"])
    out = capsys.readouterr().out
    assert code == 0
    assert out.count("\n") > 3
    json.loads(out)


def test_console_script_installed():
    exe = shutil.which("wct")
    assert exe, "console script not on PATH"
    proc = subprocess.run([exe, "check-presentation", "--group", "p1"],
                          capture_output=True, text=True, timeout=60)
    assert proc.returncode == 0
    rep = json.loads(proc.stdout)
    assert rep["entries"][0]["group"] == "p1"
