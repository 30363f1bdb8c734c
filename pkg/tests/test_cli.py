import subprocess
import sys

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import ideal
from extremereg import idealfile
from extremereg.cli import main
from extremereg.errors import ParseError
from extremereg.export import export_script
from extremereg.polyring import QQ, PolynomialRing

KOSZUL = "extremereg-ideal 1\nfield p 32003\nvars a b\norder grevlex\ngen a\ngen b\n"
SQUARE = "extremereg-ideal 1\nfield q\nvars x\norder grevlex\ngen x^2\n"


@pytest.fixture
def files(tmp_path):
    (tmp_path / "I.ideal").write_text(KOSZUL)
    (tmp_path / "sq.ideal").write_text(SQUARE)
    return tmp_path


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


# -- ideal files -----------------------------------------------------------------


def test_ideal_file_roundtrip():
    f = idealfile.loads(KOSZUL)
    assert f.ideal.ring.vars == ("a", "b")
    assert idealfile.dumps(f.ideal, f.meta) == KOSZUL


def test_ideal_file_weighted_and_meta():
    text = (
        "# comment\nextremereg-ideal 1\nfield p 101\nvars x y:3 z:2\norder weighted 1 3 2\n"
        "meta family test\n\ngen y^2 - x^4*z\n"
    )
    f = idealfile.loads(text)
    assert f.ideal.ring.var_degrees == (1, 3, 2)
    assert f.get("family") == "test"
    again = idealfile.loads(idealfile.dumps(f.ideal, f.meta))
    assert again.ideal == f.ideal


@pytest.mark.parametrize(
    "text, line, col",
    [
        ("", 1, 1),
        ("extremereg-ideal 2\nvars a\n", 1, 18),
        ("extremereg-ideal 1\nvars a b\ngen a +\n", 3, 8),
        ("extremereg-ideal 1\nvars a b:0\n", 2, 8),
        ("extremereg-ideal 1\nvars a\nfrob a\n", 3, 1),
        ("extremereg-ideal 1\nfield r\nvars a\n", 2, 7),
        ("extremereg-ideal 1\nvars a b\ngen a^2 + b\n", 3, 1),
        ("extremereg-ideal 1\ngen a\n", 2, 1),
    ],
)
def test_ideal_file_errors(text, line, col):
    with pytest.raises(ParseError) as ei:
        idealfile.loads(text)
    assert (ei.value.line, ei.value.col) == (line, col)


@settings(max_examples=1000)
@given(st.text(alphabet="abgenvrsfildqp0123456789 :^*+-/()\n#", max_size=60))
def test_ideal_file_fuzz(text):
    try:
        f = idealfile.loads("extremereg-ideal 1\nvars a b\n" + text)
    except ParseError as exc:
        assert exc.line >= 1 and exc.col >= 1
    else:
        assert idealfile.loads(idealfile.dumps(f.ideal, f.meta)).ideal == f.ideal


# -- export ----------------------------------------------------------------------


def test_export_dialects_are_deterministic():
    I = ideal("a b".split(), ["a", "b"])
    m2 = export_script(I, "macaulay2")
    assert "R = ZZ/32003[a, b, Degrees => {1, 1}, MonomialOrder => GRevLex];" in m2
    assert "I = ideal(a,\n    b);" in m2
    assert "res I" in m2
    sg = export_script(I, "singular")
    assert "ring R = 32003,(a,b),dp;" in sg
    assert "mres(I, 0)" in sg
    assert export_script(I, "singular") == sg
    with pytest.raises(Exception):
        export_script(I, "maple")


def test_export_rational_weighted():
    R = PolynomialRing(["x", "y"], QQ, var_degrees=(1, 2))
    from extremereg.polyring import Ideal

    I = Ideal(R, [R("y - x^2")])
    assert "ring R = 0,(x,y),wp(1,2);" in export_script(I, "singular")
    assert "QQ[x, y, Degrees => {1, 2}" in export_script(I, "m2")


# -- commands --------------------------------------------------------------------


def test_construct_amplify_and_reverify(files, capsys):
    code, out, _ = run(capsys, "construct", "amplify", "--in", files / "I.ideal", "--s", 2, "--t", 2, "--out", files / "J.ideal")
    assert code == 0
    assert "degree = 2 (observed 2): verified" in out
    J = idealfile.read(files / "J.ideal").ideal
    R = J.ring
    assert J.gens == (R("y^2"), R("z^2"), R("a z + b y"))
    code, out, _ = run(capsys, "invariants", "--in", files / "J.ideal", "--reg", "--degree", "--cert", files / "J.ideal.cert")
    assert code == 0
    assert "reg(I) = 3" in out
    assert "degree = 2" in out
    assert "claim reg_lower >= 3: verified (observed 3)" in out
    assert "claim degree = 2: verified (observed 2)" in out


def test_construct_rees_like_and_export(files, capsys):
    code, _, _ = run(capsys, "construct", "rees-like", "--in", files / "sq.ideal", "--out", files / "P.ideal")
    assert code == 0
    f = idealfile.read(files / "P.ideal")
    R = f.ideal.ring
    assert f.ideal.gens == (R("y_1^2 u_1^4 - z v x^4"),)
    code, out, _ = run(capsys, "export", "--in", files / "P.ideal", "--dialect", "macaulay2")
    assert code == 0
    comment = [ln for ln in out.splitlines() if ln.startswith("--")]
    assert any("y_1^2 - x^4*z" in ln for ln in comment)
    body = [ln for ln in out.splitlines() if not ln.startswith("--")]
    assert any("y_1^2*u_1^4 - x^4*z*v" in ln for ln in body)
    code, out, _ = run(capsys, "export", "--in", files / "P.ideal", "--dialect", "extremereg")
    assert idealfile.loads(out).ideal == f.ideal


def test_invariants_koszul_and_truncation(files, capsys):
    code, out, _ = run(capsys, "invariants", "--in", files / "I.ideal", "--betti", "--module", "quotient")
    assert code == 0
    assert out.splitlines()[2].split() == ["total:", "1", "2", "1"]
    run(capsys, "construct", "amplify", "--in", files / "I.ideal", "--s", 4, "--t", 4, "--out", files / "amp.ideal")
    code, out, _ = run(capsys, "invariants", "--in", files / "amp.ideal", "--cap", 5, "--reg")
    assert code == 0
    assert "reg(I) >= 4 (truncated at 5)" in out


def test_invariants_field_flag(files, capsys):
    code, q, _ = run(capsys, "invariants", "--in", files / "I.ideal", "--betti", "--field", "q")
    code2, p, _ = run(capsys, "invariants", "--in", files / "I.ideal", "--betti", "--field", "p:101")
    assert code == code2 == 0 and q == p


def test_bounds_commands(capsys):
    code, out, _ = run(capsys, "bounds", "lower", "--kind", "thm_prime", "--r", 5)
    assert code == 0
    header, row = out.splitlines()
    rec = dict(zip(header.split(), row.split()))
    assert rec["degree"] == "1980" and rec["reg_lower"] == "65872"
    code, out, _ = run(capsys, "bounds", "translate", "phi-from-psi", "--m", 3, "--d", 2)
    assert code == 0 and out.splitlines()[1].split()[-1] == "54"
    code, out, _ = run(capsys, "bounds", "translate", "phi-from-phipd", "--m", 1, "--d", 3, "--value", 5, "--format", "csv")
    assert "1679616" in out
    code, _, err = run(capsys, "bounds", "lower", "--kind", "thm_3reg", "--r", 1)
    assert code == 4 and "r >= 2" in err


def test_exit_codes(files, capsys):
    (files / "koh.ideal").write_text(KOSZUL)
    assert run(capsys, "construct", "recipe", "prime", "--r", 2, "--koh", files / "koh.ideal")[0] == 4
    (files / "bad.ideal").write_text("extremereg-ideal 1\nvars a b\ngen a^2 + * b\n")
    code, _, err = run(capsys, "invariants", "--in", files / "bad.ideal")
    assert code == 3 and "3:11" in err
    assert run(capsys, "frobnicate")[0] == 2
    assert run(capsys, "invariants", "--in", files / "missing.ideal")[0] == 2
    assert run(capsys, "construct", "amplify", "--in", files / "I.ideal", "--s", 1, "--t", 2)[0] == 4
    assert run(capsys, "invariants", "--in", files / "I.ideal", "--max-pairs", 0, "--reg", "--module", "quotient")[0] in (0, 5)
    (files / "hard.ideal").write_text("extremereg-ideal 1\nvars a b c d\ngen a^2 - b*c\ngen a*b - c*d\ngen a*c - b*d\n")
    assert run(capsys, "invariants", "--in", files / "hard.ideal", "--max-pairs", 2, "--reg")[0] == 5


def test_recipe_stand_in_cli(files, capsys):
    code, out, _ = run(capsys, "construct", "recipe", "prime", "--r", 1, "--koh", files / "I.ideal", "--stand-in", "--out", files / "P.ideal")
    assert code == 0
    assert "degree = 160 (observed 160): verified" in out
    code, out, _ = run(capsys, "invariants", "--in", files / "P.ideal", "--cert", files / "P.ideal.cert")
    assert "claim reg = 19: verified (observed 19)" in out


def test_console_script_entry_point(files):
    out = subprocess.run(
        [sys.executable, "-m", "extremereg.cli", "bounds", "lower", "--kind", "thm_pd", "--r", "2"],
        capture_output=True,
        text=True,
    )
    assert out.returncode == 0 and "17" in out.stdout
