import json

import jsonschema


def test_invariant_spin_table(cli, schema, data):
    out = json.loads(cli("invariant", "--category", "builtin:sl2:8", "--manifold", data / "plus-one.forest",
                         "--refine", "spin", "--d", "2").stdout)
    jsonschema.validate(out, schema("invariant"))
    entries = out["refinement"]["entries"]
    assert [e["structure"] for e in entries] == [[1]]
    assert entries[0]["exact"]["coeffs"][0] == "1"
    assert set(entries[0]["exact"]["coeffs"][1:]) <= {"0"}


def test_invariant_homology_and_spinc_override(cli, schema, data):
    for refine, extra in (("hom", []), ("coh", []), ("spinc", ["--override"])):
        out = json.loads(cli("invariant", "--category", "builtin:sl2:6", "--manifold", data / "e8.forest",
                             "--refine", refine, *extra).stdout)
        jsonschema.validate(out, schema("invariant"))
        assert out["manifold"]["b_plus"] == 8


def test_csv_export(cli, data):
    out = cli("invariant", "--category", "builtin:sl2:8", "--manifold", data / "zero.forest",
              "--refine", "spin", "--format", "csv").stdout.splitlines()
    assert out[0] == "kind,d,structure,re,im,N,coeffs"
    assert len(out) == 3


def test_structures(cli, schema):
    out = json.loads(cli("structures", "spin", "--matrix", "[[0]]", "--d", "2").stdout)
    jsonschema.validate(out, schema("structures"))
    assert out["count"] == 2
    out = json.loads(cli("structures", "chern", "--matrix", "2 1; 1 2", "--d", "3").stdout)
    jsonschema.validate(out, schema("structures"))
    assert out["count"] == 3


def test_reports_validate_and_repeat(cli, schema):
    args = ("verify", "kirby", "--category", "builtin:sl2:6", "--corpus-size", "5", "--sequences", "3",
            "--format", "json")
    first = cli(*args, "--seed", "11").stdout
    jsonschema.validate(json.loads(first), schema("report"))
    assert cli(*args, "--seed", "11").stdout == first
    assert cli(*args, env={"SPINMOD_SEED": "11"}).stdout == first


def test_category_round_trip(cli, schema, tmp_path):
    path = tmp_path / "sl2-5.json"
    cli("category", "derive", "builtin:sl2:5", "--out", path)
    saved = json.loads(path.read_text())
    jsonschema.validate(saved, schema("category"))
    shown = json.loads(cli("category", "show", path, "--format", "json").stdout)
    builtin = json.loads(cli("category", "show", "builtin:sl2:5", "--format", "json").stdout)
    assert shown == builtin
    cli("category", "check", path)


def test_manifold_show(cli, schema, data):
    out = json.loads(cli("manifold", "show", data / "hopf.forest", "--format", "json").stdout)
    jsonschema.validate(out, schema("forest"))
    assert (out["b_plus"], out["b_minus"], out["nullity"]) == (1, 1, 0)


def test_exit_codes(cli, data, tmp_path):
    cli("invariant", "--category", "builtin:sl2:7", "--manifold", data / "plus-one.forest", "--refine", "spin",
        expect=2)
    path = tmp_path / "broken.json"
    cli("category", "derive", "builtin:sl2:5", "--out", path)
    cat = json.loads(path.read_text())
    dim = cat["qdim"][1]
    dim["coeffs"] = [c[1:] if c.startswith("-") else ("-" + c if c != "0" else c) for c in dim["coeffs"]]
    path.write_text(json.dumps(cat))
    cli("category", "check", path, expect=1)
    cli("verify", "sum", expect=2)
