import json
import subprocess
import sys

import pytest

from supobs.cli import EXIT_FAILS, EXIT_INTERNAL, EXIT_INVALID, EXIT_OK, EXIT_PARSE, main
from supobs.fa import intersect
from supobs.fa import enumerate_strings, max_length
from supobs.modelio import format_fsa, load_lang, parse_fsa, read_model, write_text
from supobs.relobs import f_operator
from supobs.supremal import sup_normal

from conftest import K2, MODELS

PLANT = str(MODELS / "example_plant.lang")
SPEC = str(MODELS / "example_spec.lang")


def run(*argv):
    return main([str(a) for a in argv])


def test_supobs_with_trace(tmp_path, capsys, ex):
    out, trace = tmp_path / "r.fsa", tmp_path / "t.jsonl"
    assert run("supobs", "--plant", PLANT, "--spec", SPEC, "--out", out, "--trace", trace, "--enumerate", 5) == EXIT_OK
    assert load_lang(out, ex.alphabet) == ex.k2
    printed = capsys.readouterr().out.split("\n")[:-1]
    assert set(printed) == set(K2)
    records = [json.loads(line) for line in trace.read_text().splitlines()]
    omegas = [r for r in records if r["phase"] == "omega"]
    assert [r["iter"] for r in omegas] == [1, 2, 3]
    assert omegas[-1]["converged"] and set(omegas[-1]["strings"]) == set(K2)


def test_supcobs_matches_supobs_when_everything_is_controllable(tmp_path):
    a, b = tmp_path / "a.fsa", tmp_path / "b.fsa"
    assert run("supobs", "--plant", PLANT, "--spec", SPEC, "--out", a) == EXIT_OK
    assert run("supcobs", "--plant", PLANT, "--spec", SPEC, "--out", b, "--nested-trace", "--trace", tmp_path / "t") == EXIT_OK
    assert a.read_bytes() == b.read_bytes()
    assert any('"outer"' in ln for ln in (tmp_path / "t").read_text().splitlines())


def test_output_is_deterministic(tmp_path):
    outs = []
    for i in range(2):
        path = tmp_path / f"o{i}.fsa"
        run("supobs", "--plant", PLANT, "--spec", SPEC, "--out", path)
        outs.append(path.read_bytes())
    assert outs[0] == outs[1]


def test_parse_errors(tmp_path, capsys):
    bad = tmp_path / "bad.lang"
    bad.write_text("alphabet: alpha o=1\nalpha\n")
    assert run("supobs", "--plant", bad, "--spec", SPEC, "--out", tmp_path / "x") == EXIT_PARSE
    assert "lacks flag" in capsys.readouterr().err
    assert run("supobs", "--plant", tmp_path / "none.fsa", "--spec", SPEC, "--out", tmp_path / "x") == EXIT_PARSE


def test_unknown_spec_event(tmp_path, capsys):
    spec = tmp_path / "s.lang"
    spec.write_text("alphabet: alpha o=1 c=1, zeta o=1 c=1\nalpha zeta\n")
    assert run("supobs", "--plant", PLANT, "--spec", spec, "--out", tmp_path / "x") == EXIT_INVALID
    assert "zeta" in capsys.readouterr().err


def test_spec_outside_plant(tmp_path, ex):
    spec = tmp_path / "s.lang"
    spec.write_text(MODELS.joinpath("example_spec.lang").read_text() + "alpha alpha\n")
    assert run("supobs", "--plant", PLANT, "--spec", spec, "--out", tmp_path / "x") == EXIT_INVALID
    out = tmp_path / "y.fsa"
    assert run("supobs", "--plant", PLANT, "--spec", spec, "--out", out, "--allow-spec-trim") == EXIT_OK
    assert load_lang(out, ex.alphabet) == ex.k2


def test_empty_spec(tmp_path, ex):
    spec = tmp_path / "s.lang"
    spec.write_text(MODELS.joinpath("example_spec.lang").read_text().split("eps")[0])
    out = tmp_path / "r.fsa"
    assert run("supobs", "--plant", PLANT, "--spec", spec, "--out", out) == EXIT_OK
    text = out.read_text()
    assert "states: 1" in text and "marked: \n" in text


def test_iteration_cap_exit_code(tmp_path):
    assert run("supobs", "--plant", PLANT, "--spec", SPEC, "--out", tmp_path / "x", "--max-iter", 1) == EXIT_INTERNAL


def test_check_verbs(tmp_path, capsys, ex):
    assert run("check", "relobs", "--in", SPEC, "--plant", PLANT, "--spec", SPEC) == EXIT_FAILS
    assert "witness: b4 alpha b5" in capsys.readouterr().err
    k = tmp_path / "k.fsa"
    write_text(k, format_fsa(intersect(ex.k0, f_operator(ex.k0, ex.p))))
    assert run("check", "normal", "--in", k, "--plant", PLANT, "--spec", SPEC) == EXIT_FAILS
    assert "witness: alpha sigma" in capsys.readouterr().err
    r = tmp_path / "r.fsa"
    run("supobs", "--plant", PLANT, "--spec", SPEC, "--out", r)
    assert run("check", "relobs", "--in", r, "--plant", PLANT, "--spec", SPEC) == EXIT_OK
    assert run("check", "normal", "--in", r, "--plant", PLANT, "--spec", SPEC) == EXIT_OK
    assert run("check", "controllable", "--in", SPEC, "--plant", PLANT) == EXIT_OK
    assert run("check", "ctrlobs", "--in", r, "--plant", PLANT, "--spec", SPEC) == EXIT_OK
    assert run("check", "relobs", "--in", r, "--plant", PLANT) == EXIT_INVALID


def test_check_controllable_witness(tmp_path, capsys):
    m = tmp_path / "m.lang"
    m.write_text("alphabet: a o=1 c=1, u o=1 c=0\na\na u\n")
    k = tmp_path / "k.lang"
    k.write_text("alphabet: a o=1 c=1, u o=1 c=0\na\n")
    assert run("check", "controllable", "--in", k, "--plant", m) == EXIT_FAILS
    assert "witness: a u" in capsys.readouterr().err
    assert run("check", "ctrlobs", "--in", k, "--plant", m, "--spec", k) == EXIT_FAILS


def test_ops(tmp_path, ex, capsys):
    once, twice = tmp_path / "c1.fsa", tmp_path / "c2.fsa"
    assert run("ops", "complement", "--in", SPEC, "--out", once) == EXIT_OK
    assert run("ops", "complement", "--in", once, "--out", twice) == EXIT_OK
    assert load_lang(twice, ex.alphabet) == ex.c

    proj = tmp_path / "p.fsa"
    assert run("ops", "project", "--in", SPEC, "--out", proj, "--enumerate", 2) == EXIT_OK
    assert set(capsys.readouterr().out.split()) >= {"eps", "alpha", "gamma", "sigma"}
    assert parse_fsa(proj.read_text()).alphabet.names == ("alpha", "gamma", "sigma")

    inv = tmp_path / "i.fsa"
    assert run("ops", "inverse-project", "--in", proj, "--plant", PLANT, "--out", inv) == EXIT_OK
    assert "b2 alpha b5 sigma" in load_lang(inv)

    app = tmp_path / "a.fsa"
    assert run("ops", "append-sigma", "--in", SPEC, "--event", "sigma", "--out", app) == EXIT_OK
    assert "b4 sigma" in load_lang(app) and "alpha" not in load_lang(app)

    for op in ("union", "intersect", "difference", "supn", "supc"):
        assert run("ops", op, "--in", SPEC, "--in", PLANT, "--out", tmp_path / f"{op}.fsa") == EXIT_OK
    assert run("ops", "union", "--in", SPEC, "--out", tmp_path / "x") == EXIT_INVALID
    assert run("ops", "append-sigma", "--in", SPEC, "--out", tmp_path / "x") == EXIT_INVALID
    assert run("ops", "supn", "--in", PLANT, "--in", SPEC, "--out", tmp_path / "x") == EXIT_INVALID


def test_oracle_verbs(tmp_path, ex):
    out = tmp_path / "o.lang"
    assert run("oracle", "supobs", "--plant", PLANT, "--spec", SPEC, "--out", out) == EXIT_OK
    assert load_lang(out, ex.alphabet) == ex.k2
    assert run("oracle", "supcobs", "--plant", PLANT, "--spec", SPEC, "--out", out) == EXIT_OK
    assert load_lang(out, ex.alphabet) == ex.k2
    assert run("oracle", "check-relobs", "--plant", PLANT, "--spec", SPEC, "--in", SPEC) == EXIT_FAILS
    assert run("oracle", "check-relobs", "--plant", PLANT, "--spec", SPEC, "--in", out) == EXIT_OK
    assert run("oracle", "supf", "--in", SPEC, "--out", out) == EXIT_OK
    assert run("oracle", "supc", "--plant", PLANT, "--in", SPEC, "--out", out) == EXIT_OK
    assert run("oracle", "supobs", "--plant", PLANT, "--out", out) == EXIT_INVALID
    # automaton input works as long as the language is finite
    fsa = tmp_path / "k.fsa"
    write_text(fsa, format_fsa(ex.k2))
    assert run("oracle", "supn", "--plant", PLANT, "--in", fsa, "--out", out) == EXIT_OK
    assert load_lang(out, ex.alphabet) == sup_normal(ex.k2, ex.m)


def test_module_entry_point(tmp_path):
    out = tmp_path / "r.fsa"
    proc = subprocess.run(
        [sys.executable, "-m", "supobs", "supobs", "--plant", PLANT, "--spec", SPEC, "--out", str(out)],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0, proc.stderr
    assert out.exists()


def test_missing_arguments_exit_via_argparse():
    with pytest.raises(SystemExit) as exc:
        main(["supobs", "--plant", PLANT])
    assert exc.value.code == 2


def test_supcobs_derived_instance_matches_oracle(tmp_path):
    from test_ctrlobs import DERIVED, DERIVED_C, DERIVED_M, DERIVED_SUPCO

    from supobs import FiniteLang
    from supobs.modelio import format_lang

    m, c = tmp_path / "m.lang", tmp_path / "c.lang"
    write_text(m, format_lang(FiniteLang.of(DERIVED, DERIVED_M)))
    write_text(c, format_lang(FiniteLang.of(DERIVED, DERIVED_C)))
    engine, brute = tmp_path / "r.fsa", tmp_path / "o.lang"
    assert run("supcobs", "--plant", m, "--spec", c, "--out", engine) == EXIT_OK
    assert run("oracle", "supcobs", "--plant", m, "--spec", c, "--out", brute) == EXIT_OK
    assert load_lang(engine) == load_lang(brute, DERIVED)
    # the output re-parses and re-emits to the same bytes
    assert format_fsa(load_lang(engine), "supremal relatively observable sublanguage") == engine.read_text()
    assert {" ".join(w) for w in read_model(brute).strings} == set(DERIVED_SUPCO)


def test_ops_match_string_level_oracle(tmp_path, ex):
    from supobs.oracle import closure, projector

    proj = tmp_path / "p.fsa"
    assert run("ops", "project", "--in", PLANT, "--out", proj) == EXIT_OK
    erase = projector(ex.alphabet)
    expected = {erase(w) for w in read_model(PLANT).strings}
    got = load_lang(proj)
    assert enumerate_strings(got, 4).strings == expected and max_length(got) == 2

    app = tmp_path / "a.fsa"
    assert run("ops", "append-sigma", "--in", SPEC, "--event", "sigma", "--out", app) == EXIT_OK
    expected = {w + ("sigma",) for w in closure(read_model(SPEC).strings)}
    assert enumerate_strings(load_lang(app), 6).strings == expected
