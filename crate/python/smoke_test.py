#!/usr/bin/env python3
"""Smoke test for the vermadiff Python bindings.

Builds are expected at target/{release,debug}/libvermadiff_py.so; the
module is staged into a temporary directory under its importable name.

Run from the repository root:

    cargo build -p vermadiff-py            # or --release
    python3 python/smoke_test.py
"""

import json
import pathlib
import shutil
import sys
import tempfile

ROOT = pathlib.Path(__file__).resolve().parent.parent


def stage_module() -> pathlib.Path:
    for profile in ("release", "debug"):
        built = ROOT / "target" / profile / "libvermadiff_py.so"
        if built.exists():
            stage = pathlib.Path(tempfile.mkdtemp(prefix="vermadiff_py_"))
            shutil.copy2(built, stage / "vermadiff_py.so")
            return stage
    sys.exit("build the bindings first: cargo build -p vermadiff-py")


def main() -> None:
    sys.path.insert(0, str(stage_module()))
    import vermadiff_py as vd

    # root systems
    rs = vd.RootSystem("D", 5)
    assert rs.num_positive_roots == 20
    assert rs.max_height == 7
    labels = rs.root_labels()
    assert "e4+e5" in labels and "e1-e2" in labels
    doc = json.loads(rs.to_json())
    assert doc["m"] == 20

    # dot action and strong linkage on A2
    a2 = vd.RootSystem("A", 2)
    assert a2.dot([], ["0", "0"]) == ["0", "0"]
    moved = a2.dot([1], ["0", "0"])
    assert moved == ["-2", "1"]
    chain = a2.strongly_linked(["0", "0"], moved)
    assert chain == ["e1-e2"]
    assert a2.strongly_linked(["0", "0"], ["-1", "-1"]) is None
    assert a2.is_antidominant(["-2", "-2"])
    assert not a2.is_antidominant(["0", "0"])
    assert a2.kernel_dim(["0", "0"], ["-3", "0"]) == 1
    assert a2.kernel_dim(["0", "0"], ["-1", "-1"]) == 0

    # the symplectic example: shifted (-1, 1), plain (-2, 0), level 1;
    # the u1 = 0 cancellation leaves C_{2,1} C_{4,2} v
    sp = json.loads(vd.sp_singular(2, ["-2", "0"]))
    assert sp["level"] == "1"
    assert sp["vector"] == [{"exponents": [1, 0, 0, 1], "coeff": "1"}]
    assert sp["variables"] == ["e1-e2", "2e1", "e1+e2", "2e2"]

    # the same vector through the Weyl-group route
    sv = json.loads(
        vd.singular("C", 2, ["-2", "0"], root="e1+e2", sp_order=True)
    )
    assert sv["branch"] == "polynomial"
    assert sv["vector"] == [{"exponents": [1, 0, 0, 1], "coeff": "1"}]

    # a non-linked weight falls into the series branch
    sv = json.loads(vd.singular("A", 1, ["1/2"], word=[1]))
    assert sv["branch"] == "series"

    # rank certification of A(Phi) for F4
    rep = json.loads(vd.rank_report("F", 4))
    assert rep["full"] is True
    assert rep["rank"] == rep["m"] - rep["n"] == 20
    layer3 = [l for l in rep["layers"] if l["layer"] == 3][0]
    assert layer3["central_det_odd"] is True

    # Hasse export
    dot = rs.hasse_dot()
    assert dot.count("label=") == 20

    print("vermadiff_py smoke test: all assertions passed")


if __name__ == "__main__":
    main()
