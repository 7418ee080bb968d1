import json

import pytest

from isolord.catalog import two_cyclic
from isolord.cli import main
from isolord.oracle import oracle_sign
from isolord.words import parse_word as P


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out.strip(), err.strip()


def test_sign_examples(capsys):
    assert run(capsys, "sign", "-g", "tower:2,3", "x1*x2^-2") == (0, "+", "")
    assert run(capsys, "sign", "-g", "tower:2,3", "1") == (0, "0", "")


def test_sign_matches_oracle(capsys):
    code, out, _ = run(capsys, "sign", "-g", "tower:2,3", "x2^-1*x1")
    K = two_cyclic()
    verdict = oracle_sign(K, P("y^-1*x"), 10)
    assert code == 0 and out == verdict.value


def test_sign_over_cone_letters(capsys):
    assert run(capsys, "sign", "-g", "tower:2,3", "--cone", "s1^-1*s2")[1] in "+-"


def test_parse_errors_exit_2(capsys):
    code, _, err = run(capsys, "sign", "-g", "tower:2,3", "x1*q")
    assert code == 2 and "q" in err
    assert run(capsys, "sign", "-g", "tower:2,3", "x1^^2")[0] == 2
    assert run(capsys, "sign", "-g", "braid:3", "x1")[0] == 2
    assert run(capsys, "sign", "-g", "/no/such/file", "x1")[0] == 2


def test_validation_failure_exit_3(capsys, tmp_path):
    spec = tmp_path / "bad.grp"
    spec.write_text('cyclic X gen=x\ncyclic Y gen=y\namalgam K left=X right=Y zleft="x" zright="y^3"\n')
    code, _, err = run(capsys, "validate", "-g", str(spec))
    assert code == 3 and "G != <z_G>" in err


def test_missing_certificate_and_assume_invariance(capsys, tmp_path):
    spec = tmp_path / "h.grp"
    spec.write_text(
        "cyclic A gen=a\ncyclic B gen=b\ncyclic C gen=c\n"
        'amalgam G left=B right=C zleft="b^2" zright="c^3"\n'
        'amalgam H left=A right=G zleft="a^2" zright="b*c"\n'
    )
    code, _, err = run(capsys, "sign", "-g", str(spec), "a")
    assert code == 3 and "INV(H)" in err
    code, out, _ = run(capsys, "validate", "-g", str(spec), "--assume-invariance")
    assert code == 0 and "UNSOUND" in out


def test_definite_examples(capsys):
    assert run(capsys, "definite", "-g", "tower:2,3", "x1") == (0, "+\ns1*s2^2", "")
    assert run(capsys, "definite", "-g", "tower:2,3", "x1^-1") == (0, "-\ns2^-2*s1^-1", "")
    code, out, _ = run(capsys, "definite", "-g", "centerless:2,3,2,3", "b*c")
    assert code == 0 and out.startswith("+\n")
    assert "^-" not in out


def test_definite_identity_exit_4(capsys):
    assert run(capsys, "definite", "-g", "tower:2,3", "x1^2*x2^-3")[0] == 4


def test_definite_search(capsys):
    assert run(capsys, "definite", "-g", "tower:2,3", "x1", "--search", "4") == (0, "+\ns1*s2^2", "")


def test_compare(capsys):
    assert run(capsys, "compare", "-g", "tower:2,3", "x1", "x2") == (0, "<", "")
    assert run(capsys, "compare", "-g", "tower:2,3", "x1^2", "x2^3") == (0, "=", "")
    assert run(capsys, "compare", "-g", "tower:2,3", "x2", "x1") == (0, ">", "")


def test_zexp(capsys):
    assert run(capsys, "zexp", "-g", "tower:2,3", "x1^5") == (0, "2", "")


@pytest.mark.parametrize("pipeline", ["engine", "lab"])
def test_factorize(capsys, pipeline):
    code, out, _ = run(capsys, "factorize", "-g", "tower:2,3", "x1^-1*x2", "--pipeline", pipeline)
    assert code == 0
    assert out.splitlines()[0] == "[1] x1 [1]"
    assert out.splitlines()[-1] == "sign: +"


def test_ball(capsys):
    code, out, _ = run(capsys, "ball", "-g", "tower:2,3", "--radius", "2")
    assert code == 0 and "6 elements" in out and "s1*s2 = x1*x2^-1" in out


def test_verify_property_a(capsys):
    code, out, _ = run(capsys, "verify", "-g", "tower:2,3", "propertyA", "--len", "8")
    assert code == 0 and out.startswith("propertyA: PASS, 510 checks")


def test_verify_machine(capsys):
    code, out, _ = run(capsys, "verify", "-g", "tower:2,3,4", "assoc-independence", "--samples", "100", "--format", "machine")
    data = json.loads(out)
    assert code == 0 and data["status"] == "PASS" and data["seed"] == 0


def test_verify_unknown_suite(capsys):
    assert run(capsys, "verify", "-g", "tower:2,3", "bogus")[0] == 2


def test_bench(capsys):
    code, out, _ = run(capsys, "bench", "-g", "tower:2,3", "--lengths", "10,100", "--samples", "3")
    assert code == 0 and "growth exponent" in out
    assert run(capsys, "bench", "-g", "tower:2,3", "--lengths", "ten")[0] == 2


def test_deterministic_output(capsys):
    first = run(capsys, "verify", "-g", "tower:2,3", "rightinv", "--samples", "30", "--seed", "3", "--format", "machine")
    second = run(capsys, "verify", "-g", "tower:2,3", "rightinv", "--samples", "30", "--seed", "3", "--format", "machine")
    a, b = json.loads(first[1]), json.loads(second[1])
    a.pop("runtime"), b.pop("runtime")
    assert a == b


def test_machine_sign(capsys):
    code, out, _ = run(capsys, "sign", "-g", "tower:2,3", "x1", "--format", "machine")
    assert json.loads(out) == {"sign": "+", "word": "x1"}
