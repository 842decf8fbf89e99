"""Smoke test for the biquot extension module.

Build and install first:
    pip install --no-build-isolation -e crates/python
then run:
    python3 python/smoke_test.py
"""

import json
import pathlib

import biquot

DATA = pathlib.Path(__file__).resolve().parent.parent / "data"


def job(name):
    return (DATA / name).read_text()


def main():
    s3 = biquot.tor(job("su2_point_point.json"))
    assert s3["poincare_series"] == "1 + t^3", s3
    assert s3["presentation"] == "Λ(y3)", s3
    assert s3["verdict"]["agree"]

    torus = biquot.tor(job("su2_torus_torus.json"), degree_bound=8)
    assert torus["presentation"] == "k[t1,t2]/(t1^2 - t2^2)", torus
    assert all(r["filtration"] == 0 for r in torus["bigraded_ranks"])
    assert torus["truncated"] and torus["warnings"]

    text = biquot.tor(job("su2_point_circle.json"), field="fp:3", text=True)
    assert "ring: k[t]/(t^2)" in text, text

    check = biquot.verify("steenrod", "dDelta4", i=2)
    assert check["passed"] and len(check["checks"]) == 1, check
    bad = biquot.verify("steenrod", "dDelta4-untwisted", i=1)
    assert not bad["passed"] and "lhs" in bad["checks"][0], bad

    sphere = biquot.cochains(job("boundary_tetrahedron.json"))
    assert sphere["cohomology"] == [1, 0, 1] and sphere["passed"], sphere

    for call in (
        lambda: biquot.cochains(job("broken_faces.json")),
        lambda: biquot.tor("{ not json"),
        lambda: biquot.tor(job("su2_point_point.json"), field="fp:4"),
        lambda: biquot.verify("bar-d2", "nowhere"),
    ):
        try:
            call()
        except ValueError:
            pass
        else:
            raise AssertionError("expected ValueError")

    print(json.dumps({"version": biquot.__version__, "status": "ok"}))


if __name__ == "__main__":
    main()
