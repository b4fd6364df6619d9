import json

import pytest

from renormlab.cli import main
from renormlab.render import read_pgm


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr().out


def test_centers_table(capsys):
    code, out = run(capsys, "centers", "--sigma3", "--n-max", "12")
    lines = out.splitlines()
    assert code == 0 and lines[0] == "label,n,c,residual,period" and len(lines) == 13
    assert all(float(l.split(",")[3]) <= 1e-12 for l in lines[1:])


def test_essential_period_from_file(capsys, tmp_path):
    from renormlab.shuffle import sigma3_n

    f = tmp_path / "sigma3_7.shuffle"
    f.write_text(sigma3_n(7).to_text() + "\n")
    assert run(capsys, "essential-period", "--file", str(f)) == (0, "5\n")


def test_phase_transit(capsys):
    code, out = run(capsys, "phase", "--c", "0.2501", "--q", "1")
    assert code == 0
    assert abs(float(json.loads(out)["transit_time"]) / 314.159 - 1) < 0.05


def test_shuffle_and_truncate(capsys):
    code, out = run(capsys, "shuffle", "--cycle", "(1 3 2)")
    assert code == 0 and json.loads(out)["kneading"] == "LRC"
    assert run(capsys, "truncate", "--sigma3", "5") == (0, "(1 3 2)\n")
    code, out = run(capsys, "return-types", "--sigma3", "2", "--format", "json")
    assert json.loads(out)["schema"] == "renormlab.return_types/1"


def test_usage_errors(capsys):
    assert main(["shuffle", "--cycle", "(1 2 3 4)"]) == 2
    assert main(["shuffle"]) == 2
    with pytest.raises(SystemExit) as info:
        main(["nonsense"])
    assert info.value.code == 2


def test_numeric_failure_exit(capsys):
    assert main(["fatou-check", "--c", "-0.75", "--q", "2"]) == 3


def test_render_with_config_file(tmp_path):
    cfg = tmp_path / "r.toml"
    out = tmp_path / "j.pgm"
    cfg.write_text(f'mode = "julia"\nc = "-1.75"\npixels = "64x48"\noutput = "{out}"\n')
    assert main(["--config", str(cfg), "render"]) == 0
    img = read_pgm(out)
    assert img.shape == (48, 64)
    jcfg = tmp_path / "r.json"
    jcfg.write_text(json.dumps({"mode": "julia", "c": "-1.75", "pixels": [64, 48], "output": str(tmp_path / "k.pgm")}))
    assert main(["--config", str(jcfg), "render"]) == 0
    assert (read_pgm(tmp_path / "k.pgm") == img).all()
    bad = tmp_path / "bad.json"
    bad.write_text('{"colour": 3}')
    assert main(["--config", str(bad), "render", "-o", str(out)]) == 2


def test_per3_trivial_and_fixed_tuning(capsys, tmp_path):
    code, out = run(capsys, "per3-experiment", "--stages", "0")
    assert code == 0 and json.loads(out)["verdict"] == "PASS" and json.loads(out)["rows"] == []
    code, out = run(capsys, "per3-experiment", "--tuning", "1,1,1", "--stages", "2", "--dps", "30")
    rep = json.loads(out)
    assert code == 0 and rep["verdict"] is None and len(rep["rows"]) == 2


def test_renorm_orbit_stream(capsys):
    code, out = run(capsys, "renorm-orbit", "--c", "-1", "--stages", "1")
    assert code == 0 and json.loads(out.splitlines()[0])["period"] == 2
