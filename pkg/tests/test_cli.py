"""Command-line interface: outputs, emitted files, exit codes."""

import pytest

from wvcsp import Domain, VcspInstance, omega_sub
from wvcsp import formats
from wvcsp.cli import main
from wvcsp.operations import max_operation, min_operation

D2 = Domain(2)


@pytest.fixture
def run(capsys):
    def _run(argv):
        code = main(argv)
        captured = capsys.readouterr()
        return code, captured.out

    return _run


@pytest.fixture
def language_file(tmp_path, r_eq, r_ne):
    path = tmp_path / "lang.rel"
    path.write_text(
        formats.serialize_relation("req", r_eq)
        + formats.serialize_relation("rne", r_ne)
    )
    return str(path)


@pytest.fixture
def instance_file(tmp_path, r_eq, r_ne):
    inst = VcspInstance(
        ["x", "y", "z"], D2, [(("x", "y"), r_ne), (("y", "z"), r_ne)]
    )
    path = tmp_path / "inst.vcsp"
    path.write_text(
        formats.serialize_relation("req", r_eq)
        + formats.serialize_relation("rne", r_ne)
        + formats.serialize_instance("chain", inst, {r_eq: "req", r_ne: "rne"})
    )
    return str(path)


@pytest.fixture
def weighting_file(tmp_path):
    w = omega_sub()
    text, names = formats.serialize_weighting("sub", w)
    path = tmp_path / "sub.wt"
    path.write_text(formats.weighting_operation_stanzas(w, names) + text)
    return str(path)


def test_solve(run, instance_file):
    code, out = run(["solve", instance_file, "--instance", "chain"])
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "optimum 0"
    assert "witness x=0 y=1 z=0" in lines[1:]


def test_solve_unknown_instance_exits_2(run, instance_file):
    code, _ = run(["solve", instance_file, "--instance", "nope"])
    assert code == 2


def test_solve_missing_file_exits_2(run, tmp_path):
    code, _ = run(["solve", str(tmp_path / "absent"), "--instance", "i"])
    assert code == 2


def test_solve_resource_cap_exits_3(run, instance_file):
    code, _ = run(
        ["solve", instance_file, "--instance", "chain", "--max-assignments", "2"]
    )
    assert code == 3


def test_project(run, instance_file, r_eq):
    code, out = run(
        ["project", instance_file, "--instance", "chain", "--onto", "x", "z"]
    )
    assert code == 0
    _, rel = formats.parse_relation(out.strip().splitlines())
    assert rel == r_eq


def test_member_wrelclone_member(run, tmp_path, language_file):
    out_dir = tmp_path / "gadget_out"
    code, out = run(
        [
            "member",
            language_file,
            "--mode",
            "wrelclone",
            "--language",
            "rne",
            "--target",
            "rne",
            "--out",
            str(out_dir),
        ]
    )
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "member" and lines[1].startswith("shift ")
    ws = formats.Workspace()
    ws.load_file(str(out_dir / "gadget.vcsp"))
    assert "gadget" in ws.instances


def test_member_wrelclone_nonmember(run, tmp_path, language_file):
    out_dir = tmp_path / "sep_out"
    code, out = run(
        [
            "member",
            language_file,
            "--mode",
            "wrelclone",
            "--language",
            "req",
            "--target",
            "rne",
            "--out",
            str(out_dir),
        ]
    )
    assert code == 0
    assert out.splitlines()[0] == "nonmember"
    ws = formats.Workspace()
    ws.load_file(str(out_dir / "separator.wt"))
    assert "separator" in ws.weightings


def test_member_wclone(run, tmp_path, weighting_file):
    out_dir = tmp_path / "recipe_out"
    code, out = run(
        [
            "member",
            weighting_file,
            "--mode",
            "wclone",
            "--language",
            "sub",
            "--target",
            "sub",
            "--out",
            str(out_dir),
        ]
    )
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "member" and lines[1] == "terms 1"
    assert (out_dir / "recipe.wt").exists()


def test_check_wpol_improves(run, tmp_path, weighting_file, r_eq):
    rel_path = tmp_path / "req.rel"
    rel_path.write_text(formats.serialize_relation("req", r_eq))
    code, out = run(
        [
            "check-wpol",
            weighting_file,
            str(rel_path),
            "--weighting",
            "sub",
            "--relation",
            "req",
        ]
    )
    assert code == 0 and out == "improves\n"


def test_check_wpol_violates(run, tmp_path, weighting_file, r_ne):
    rel_path = tmp_path / "rne.rel"
    rel_path.write_text(formats.serialize_relation("rne", r_ne))
    code, out = run(
        [
            "check-wpol",
            weighting_file,
            str(rel_path),
            "--weighting",
            "sub",
            "--relation",
            "rne",
        ]
    )
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "violates" and lines[1] == "sum 2"
    assert any(line.startswith("x1 ") for line in lines)


def test_classify_boolean(run, language_file):
    code, out = run(["classify-boolean", language_file, "--language", "req"])
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "tractable MinMaxEqual"
    assert "type Inversion true" in lines
    assert "type MinOnly false" in lines

    code, out = run(["classify-boolean", language_file])
    assert code == 0
    assert out.splitlines()[0] == "np-hard InversionOnly"


def test_clone_gen(run, tmp_path):
    ops_path = tmp_path / "gens.ops"
    ops_path.write_text(
        formats.serialize_operation("mn", min_operation(D2))
        + formats.serialize_operation("mx", max_operation(D2))
    )
    out_dir = tmp_path / "clone_out"
    code, out = run(
        [
            "clone-gen",
            str(ops_path),
            "--generators",
            "mn",
            "mx",
            "--cap",
            "3",
            "--out",
            str(out_dir),
        ]
    )
    assert code == 0
    assert out.splitlines() == ["arity 1 size 1", "arity 2 size 4",
                                "arity 3 size 18"]
    ws = formats.Workspace()
    ws.load_file(str(out_dir / "clone_k2.ops"))
    assert len(ws.operations) == 4


def test_pol(run, language_file):
    # total relations are preserved by every operation
    code, out = run(
        ["pol", language_file, "--language", "req", "rne", "--arity", "1"]
    )
    assert code == 0 and out == "count 4\n"


def test_superpose_op(run, tmp_path):
    ops_path = tmp_path / "gens.ops"
    ops_path.write_text(formats.serialize_operation("mx", max_operation(D2)))
    code, out = run(
        ["superpose", str(ops_path), "--op", "mx", "--inner", "e2_2", "e1_2"]
    )
    assert code == 0
    _, op = formats.parse_operation(out.strip().splitlines())
    assert op == max_operation(D2)


def test_superpose_weighting(run, weighting_file):
    code, out = run(
        [
            "superpose",
            weighting_file,
            "--weighting",
            "sub",
            "--inner",
            "e1_2",
            "e2_2",
        ]
    )
    assert code == 0
    lines = out.splitlines()
    assert "proper true" in lines


def test_reruns_are_byte_identical(run, language_file):
    first = run(["classify-boolean", language_file])
    second = run(["classify-boolean", language_file])
    assert first == second
