"""Smoke test for the posgeom_py extension.

Uses an installed module if there is one; otherwise builds the cdylib with
cargo and loads it from target/.
"""

import importlib.util
import json
import pathlib
import subprocess
import sys

ROOT = pathlib.Path(__file__).resolve().parent.parent


def load():
    try:
        import posgeom_py

        return posgeom_py
    except ImportError:
        pass
    subprocess.run(
        ["cargo", "build", "--release", "-p", "posgeom-py", "--features", "extension-module"],
        cwd=ROOT,
        check=True,
    )
    lib = ROOT / "target" / "release" / "libposgeom_py.so"
    spec = importlib.util.spec_from_file_location("posgeom_py", lib)
    mod = importlib.util.module_from_spec(spec)
    spec.loader.exec_module(mod)
    return mod


def main():
    pg = load()

    assert pg.grassmannian_degree(3, 7) == 462
    assert pg.grassmannian_degree(2, 5) == 5
    assert pg.genus_formula(3, 4) == "925"
    assert pg.genus_formula(3, 2) == "1"

    inv = json.loads(pg.matroid(3, 10, [1, 3, 5, 7, 9]))
    assert (inv["e"], inv["c"], inv["in_P"]) == (-2, 5, False), inv

    curve = json.loads(pg.residual_curve(3, 10, [1, 3, 5, 7, 9]))
    assert (curve["dim"], curve["degree"], curve["genus"]) == (1, "5", "1"), curve
    assert all(v["verdict"] == "smooth_mod_p" for v in curve["verdicts"])

    ideal = {
        "vars": ["x", "y"],
        "gens": [
            {"vars": ["x", "y"], "terms": [{"c": "1", "e": [2, 0]}, {"c": "-1", "e": [0, 1]}]},
            {"vars": ["x", "y"], "terms": [{"c": "1", "e": [0, 2]}, {"c": "-1", "e": [0, 0]}]},
        ],
    }
    basis = json.loads(pg.groebner_basis(json.dumps(ideal), "lex"))
    assert len(basis) == 2, basis

    report = json.loads(pg.verify())
    assert report["status"] in ("pass", "partial"), report["status"]
    assert not [c for c in report["checks"] if c["status"] == "fail"]

    cube = json.loads(pg.verify(pg.region(cube=True)))
    assert cube["status"] == "pass"

    try:
        pg.grassmannian_degree(4, 3)
    except ValueError:
        pass
    else:
        raise AssertionError("expected ValueError")

    print("posgeom_py smoke test: ok")


if __name__ == "__main__":
    sys.exit(main())
