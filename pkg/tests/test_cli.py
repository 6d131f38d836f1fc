import pytest

from supersimple import catalog_build, parse_certificate, parse_design_file, validate_certificate
from supersimple.cli import main


def run(*args):
    return main([str(a) for a in args])


def test_catalog_build_and_show(tmp_path, capsys):
    out = tmp_path / "dd13.dd"
    assert run("catalog", "build", "dd-13", "-o", out) == 0
    assert len(parse_design_file(out.read_bytes())) == 52
    assert run("catalog", "show", "dd-10") == 0
    assert "claimed_bound: 15" in capsys.readouterr().out
    assert run("catalog", "list") == 0


def test_catalog_unknown_id(tmp_path):
    assert run("catalog", "build", "nosuch", "-o", tmp_path / "x") == 2
    assert run("catalog", "show") == 2


def test_verify_codes(tmp_path, capsys):
    good = tmp_path / "d13.dd"
    run("catalog", "build", "dd-13", "-o", good)
    assert run("verify", good, "--kind", "dd") == 0
    bad = tmp_path / "g94.dd"
    run("catalog", "build", "dgdd-9pow4", "-o", bad)
    report = tmp_path / "rep.txt"
    assert run("verify", bad, "--kind", "dgdd", "--report", report) == 1
    assert "cross pair" in capsys.readouterr().out
    assert report.read_text().startswith("%REPORT kind=dgdd verdict=FAIL")
    junk = tmp_path / "junk.dd"
    junk.write_text("#DD v=4 k=4 lambda=2\n0 1 1 3\n")
    assert run("verify", junk, "--kind", "dd") == 2
    assert run("verify", tmp_path / "missing.dd", "--kind", "dd") == 2


def test_verify_dd103_is_flagged(tmp_path):
    path = tmp_path / "d103.dd"
    run("catalog", "build", "dd-103", "-o", path)
    assert run("verify", path, "--kind", "dd") == 1


def test_trades_codes(tmp_path, capsys):
    path = tmp_path / "d19.dd"
    cert = tmp_path / "c.txt"
    run("catalog", "build", "dd-19", "-o", path)
    assert run("trades", path, "--catalog-id", "dd-19", "--check-half", "--cert-out", cert) == 0
    assert "bound 57 of 114" in capsys.readouterr().out
    d = parse_design_file(path.read_bytes())
    assert validate_certificate(d, parse_certificate(cert.read_text(), len(d))) == 57

    toy = tmp_path / "toy.dd"
    toy.write_text("#DD v=8 k=4 lambda=2\n0 1 2 3\n4 5 6 7\n")
    assert run("trades", toy, "--check-half") == 1
    assert "bound 0 of 2" in capsys.readouterr().out


def test_trades_dd34(tmp_path, capsys):
    path = tmp_path / "d34.dd"
    run("catalog", "build", "dd-34", "-o", path)
    assert run("trades", path, "--catalog-id", "dd-34", "--check-half") == 0
    assert "bound 188 of 374" in capsys.readouterr().out


def test_trades_wrong_catalog_id(tmp_path):
    path = tmp_path / "d19.dd"
    run("catalog", "build", "dd-19", "-o", path)
    assert run("trades", path, "--catalog-id", "dd-13") == 2


def test_construct_codes(tmp_path):
    out = tmp_path / "v49.dd"
    assert run("construct", "lemma12-v49", "-o", out) == 0
    data = out.read_bytes()
    d = parse_design_file(data)
    assert len(d) == 784
    assert validate_certificate(d, parse_certificate(data, len(d))) >= 392

    recipe = tmp_path / "r.txt"
    recipe.write_text("let m = catalog dgdd-13pow4\nlet f = catalog dd-13\nlet o = fill m eta=0 using f\noutput o\n")
    assert run("construct", recipe, "-o", tmp_path / "x.dd") == 1
    assert not (tmp_path / "x.dd").exists()

    recipe.write_text("let a = frobnicate\noutput a\n")
    assert run("construct", recipe, "-o", tmp_path / "x.dd") == 2


def test_td_codes(tmp_path):
    assert run("td", 4, 3, "-o", tmp_path / "a.dd") == 0
    assert len(parse_design_file((tmp_path / "a.dd").read_bytes())) == 9
    assert run("td", 8, 7, "-o", tmp_path / "b.dd") == 0
    assert run("td", 9, 7, "-o", tmp_path / "c.dd") == 2
    assert run("td", 4, 6, "-o", tmp_path / "d.dd") == 2
    assert (tmp_path / "a.dd").read_bytes().startswith(b"#DGDD v=12 k=4 lambda=1 directed=0\n")


def test_errata_command(capsys):
    assert run("errata") == 0
    out = capsys.readouterr().out
    assert "dgdd-19pow4" in out and "REFUTED" in out


def test_usage_errors():
    assert run() == 2
    assert run("frobnicate") == 2
    assert run("verify", "x.dd") == 2


@pytest.mark.parametrize("eid", ["dd-13", "dgdd-3pow9"])
def test_outputs_deterministic(tmp_path, eid):
    a, b = tmp_path / "a", tmp_path / "b"
    run("catalog", "build", eid, "-o", a)
    run("catalog", "build", eid, "-o", b)
    assert a.read_bytes() == b.read_bytes()
    assert len(parse_design_file(a.read_bytes())) == len(catalog_build(eid))
