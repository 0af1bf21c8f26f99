from __future__ import annotations

import textwrap

import pytest

from fermidigital.config import PRESETS, ExperimentConfig, load_config, parse_config, preset_config
from fermidigital.errors import ConfigError

GOOD = """\
name: chain3
model: {type: chain, length: 3}
params:
  h: 1.0
  U: [1.0, 0.5]
initial: {kets: ["011", "101"]}
time: {theta_max: 4.0, points: 21}
trotter: {steps: [4, 10]}
backend: pairwise
observables: [probabilities, fidelity]
outputs: {csv: out.csv, json: out.json}
"""


def write(tmp_path, text, name="cfg.yaml"):
    p = tmp_path / name
    p.write_text(textwrap.dedent(text))
    return p


def test_good_config_resolves(tmp_path):
    cfg = load_config(write(tmp_path, GOOD))
    assert cfg == ExperimentConfig(
        name="chain3", model="chain", rows=1, cols=3, h=1.0, U=(1.0, 0.5), kets=("011", "101"),
        theta_max=4.0, points=21, steps=(4, 10), backend="pairwise",
        observables=("probabilities", "fidelity"), sites=(1, 2, 3), csv="out.csv", json="out.json",
    )
    assert cfg.n_sites == 3


def test_scalar_u_and_square_model(tmp_path):
    cfg = load_config(write(tmp_path, """\
        model: {type: square, rows: 2, cols: 3}
        params: {h: 1, U: 2, h_nnn: 0.2, U_nnn: 0.4}
        initial: {fermion: "c2^"}
        backend: bus
        observables: [populations]
        sites: [2, 4]
    """))
    assert (cfg.rows, cfg.cols, cfg.U, cfg.fermion, cfg.sites) == (2, 3, (2.0,), "c2^", (2, 4))


@pytest.mark.parametrize("bad,line,path", [
    ("time: {theta_max: 4.0, points: 1}", 7, "time.points"),
    ("trotter: {steps: [4, 0]}", 8, "trotter.steps[1]"),
    ("backend: trapped-ion", 9, "backend"),
    ("observables: [probabilities, entropy]", 10, "observables[1]"),
])
def test_field_errors_name_line_and_path(tmp_path, bad, line, path):
    key = bad.split(":")[0]
    lines = [ln if not ln.startswith(key + ":") else bad for ln in GOOD.splitlines()]
    p = write(tmp_path, "\n".join(lines) + "\n")
    with pytest.raises(ConfigError) as exc:
        load_config(p)
    msg = str(exc.value)
    assert f"{p}:{line}:" in msg
    assert f"field '{path}'" in msg


def test_nested_number_error(tmp_path):
    p = write(tmp_path, GOOD.replace("  h: 1.0", "  h: fast"))
    with pytest.raises(ConfigError, match=r"cfg.yaml:4: field 'params.h': expected a finite number"):
        load_config(p)


def test_unknown_field(tmp_path):
    p = write(tmp_path, GOOD + "seed: 3\n")
    with pytest.raises(ConfigError, match=r":12: field 'seed': unknown field"):
        load_config(p)
    p = write(tmp_path, GOOD.replace("  h: 1.0", "  hop: 1.0"))
    with pytest.raises(ConfigError, match=r"field 'params.hop'"):
        load_config(p)


def test_bad_ket_length(tmp_path):
    p = write(tmp_path, GOOD.replace('["011", "101"]', '["011", "10"]'))
    with pytest.raises(ConfigError, match=r"field 'initial.kets\[1\]': expected a 3-character"):
        load_config(p)


def test_kets_and_fermion_are_exclusive(tmp_path):
    p = write(tmp_path, GOOD.replace('initial: {kets: ["011", "101"]}', 'initial: {kets: ["011"], fermion: "c1^"}'))
    with pytest.raises(ConfigError, match="exactly one"):
        load_config(p)


@pytest.mark.parametrize("expr,msg", [("c9^", "outside 1..3"), ("c2^ x", "bad ladder token")])
def test_fermion_expression_validated(tmp_path, expr, msg):
    p = write(tmp_path, GOOD.replace('initial: {kets: ["011", "101"]}', f'initial: {{fermion: "{expr}"}}'))
    with pytest.raises(ConfigError, match=msg):
        load_config(p)


def test_yaml_syntax_error_reports_line(tmp_path):
    p = write(tmp_path, "name: x\nmodel: {type: chain\nparams: {h: 1}\n")
    with pytest.raises(ConfigError, match=r"cfg.yaml:\d+: YAML syntax error"):
        load_config(p)


def test_missing_and_empty_files(tmp_path):
    with pytest.raises(ConfigError, match="cannot read"):
        load_config(tmp_path / "nope.yaml")
    with pytest.raises(ConfigError, match="empty"):
        load_config(write(tmp_path, ""))


def test_chain_rejects_rows():
    with pytest.raises(ConfigError, match="field 'model'"):
        parse_config({"model": {"type": "chain", "rows": 2}, "initial": {"kets": ["000"]}})


def test_preset_override(tmp_path):
    cfg = load_config(write(tmp_path, "preset: fig5\ntrotter: {scan: [1, 4, 10]}\n"))
    assert cfg.step_scan == (1, 4, 10)
    assert cfg.steps == (10,)
    assert cfg.h_nnn == 0.2


@pytest.mark.parametrize("name", sorted(PRESETS))
def test_presets_resolve(name):
    cfg = preset_config(name)
    assert cfg.name == name
    assert cfg.points == 201 and cfg.theta_max == 4.0


def test_unknown_preset():
    with pytest.raises(ConfigError):
        preset_config("fig4")
