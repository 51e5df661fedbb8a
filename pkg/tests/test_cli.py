import io
import json

from lexorder.cli import main


def run_cli(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = main(list(argv), out=out, err=err)
    return code, out.getvalue(), err.getvalue()


def test_parse_prints_canonical_text():
    code, out, _ = run_cli("parse", "omega*([] (2)^w) + fin[3] + omega([] (2)^w)")
    assert code == 0
    assert out.strip() == "omega*([](2)^w) + fin[3] + omega([](2)^w)"


def test_parse_normalize_flag():
    code, out, _ = run_cli("parse", "--normalize", "omega([3](1)^w)")
    assert code == 0 and out.strip() == "fin[3]"


def test_parse_json_tree():
    code, out, _ = run_cli("parse", "--json", "fin[2,3]")
    assert code == 0
    assert json.loads(out) == {"atoms": [{"kind": "fin", "values": [2, 3]}]}


def test_classify_exit_codes():
    code, out, _ = run_cli("classify", "zeta([](2)^w;[](2)^w)", "zeta([4](2)^w;[](2)^w)")
    assert code == 0 and "isomorphic" in out and "witness" in out
    code, out, _ = run_cli("classify", "eta{2}", "eta{3}")
    assert code == 1 and "not isomorphic" in out
    code, _, err = run_cli("classify", "eta{poset(3;1<3,2<3)}", "fin[2] + eta{2}")
    assert code == 2 and "error" in err


def test_condense_output():
    code, out, _ = run_cli("condense", "omega*([](2)^w) + fin[3] + omega([](2)^w)")
    assert code == 0
    assert out.strip() == "[zeta:(2^inf*3, 2^inf)]"


def test_pair_equiv_command():
    code, out, _ = run_cli("pair-equiv", "(2*3^inf, 5^inf)", "(3^inf, 2*5^inf)")
    assert code == 0 and "a=2 b=1" in out
    code, out, _ = run_cli("pair-equiv", "(2^inf, 3^inf)", "(3^inf, 2^inf)")
    assert code == 1 and "not equivalent" in out


def test_aut_rank_command():
    code, out, _ = run_cli("aut-rank", "zeta([](2)^w;[](2)^w)")
    assert code == 0 and out.strip() == "1"
    code, out, _ = run_cli("aut-rank", "zeta([](2,3)^w;[](2,3)^w)")
    assert out.strip() == "2"


def test_d_value_command():
    code, out, _ = run_cli("d-value", "omega([](2)^w)", "--point", "point{right:[2], tail:ones}")
    assert code == 0 and out.strip() == "1/2"


def test_act_command():
    code, out, _ = run_cli("act", "zeta([](2)^w;[](2)^w)", "--prime", "2",
                           "--point", "point{tail:max}")
    assert code == 0
    assert "d ratio: 1/2" in out


def test_algebra_commands():
    code, out, _ = run_cli("algebra", "embed", "--from", "2", "--to", "2,3",
                           "--unit", "(1)(2)")
    assert code == 0
    assert out.splitlines() == ["(1,1)(2,1)", "(1,2)(2,2)", "(1,3)(2,3)"]
    code, out, _ = run_cli("algebra", "star", "--a", "chain:2", "--b", "chain:2")
    assert code == 0 and "total order on 4 points" in out


def test_oracle_subset():
    code, out, _ = run_cli("oracle", "--seed", "3", "--case", "merge-table")
    assert code == 0 and "[PASS] merge-table" in out
    code, out, _ = run_cli("oracle", "--seed", "3", "--case", "merge-table", "--json")
    assert json.loads(out)["passed"] is True


def test_classify_json_payload():
    code, out, _ = run_cli("classify", "--json", "fin[2]", "fin[3]")
    data = json.loads(out)
    assert code == 1 and data["isomorphic"] is False
    assert data["mismatch"]["index"] == 0
    code, out, _ = run_cli("classify", "--json", "fin[2,3]", "fin[6]")
    data = json.loads(out)
    assert code == 0 and data["blocks"][0]["witness"] == [1, 1]


def test_error_cases_exit_two_without_crashing():
    bad_inputs = [
        ["parse", "fin[0]"],
        ["parse", "omega(2)"],
        ["parse", "eta{}"],
        ["parse", "fin[2] + eta{poset(3;1<2,1<3)}"],
        ["parse", "eta{poset(3;1<2)}"],
        ["parse", "fin[2"],
        ["parse", "???"],
        ["d-value", "omega([](2)^w)", "--point", "point{right:[9], tail:ones}"],
        ["d-value", "eta{2}", "--point", "point{tail:ones}"],
        ["act", "omega([](2)^w)", "--prime", "2", "--point", "point{tail:ones}"],
        ["aut-rank", "eta{2}"],
        ["pair-equiv", "(4^x, 1)", "(1, 1)"],
        ["algebra", "star", "--a", "chain:x", "--b", "chain:2"],
    ]
    for argv in bad_inputs:
        code, _, err = run_cli(*argv)
        assert code == 2, argv
        assert err.strip(), argv


def test_byte_identical_reruns():
    argv = ["condense", "zeta([](2)^w;[3](2,3)^w)"]
    first = run_cli(*argv)
    second = run_cli(*argv)
    assert first == second
    argv = ["oracle", "--seed", "5", "--case", "signature-sanity"]
    assert run_cli(*argv) == run_cli(*argv)


def test_term_files_are_read(tmp_path):
    a = tmp_path / "a.term"
    a.write_text("zeta([](2)^w;[](2)^w)\n")
    b = tmp_path / "b.term"
    b.write_text("zeta([2](2)^w;[](2)^w)\n")
    code, out, _ = run_cli("classify", str(a), str(b))
    assert code == 0 and "isomorphic" in out
