"""Smoke test for the coxrep_py extension.

Build first, e.g.
    cargo build --release -p coxrep-py --features extension-module
then run this script; it copies the shared library next to itself if the
module is not already importable.
"""

import cmath
import shutil
import sys
from pathlib import Path

HERE = Path(__file__).resolve().parent


def load():
    try:
        import coxrep_py
        return coxrep_py
    except ImportError:
        pass
    target = HERE.parent / "target"
    for profile in ("release", "debug"):
        for name in ("libcoxrep_py.so", "libcoxrep_py.dylib"):
            lib = target / profile / name
            if lib.exists():
                shutil.copy(lib, HERE / "coxrep_py.so")
                sys.path.insert(0, str(HERE))
                import coxrep_py
                return coxrep_py
    sys.exit("coxrep_py not built; see the docstring")


def close(a, b, tol=1e-12):
    return abs(a - b) <= tol


def main():
    cx = load()

    for n in range(2, 6):
        for x in (2.0, -1.0, 1 / 3, cmath.exp(2j * cmath.pi / 5)):
            d = cx.Datum.affine_a(n, x)
            assert close(d.det_a(), cx.affine_det_formula(n, x)), (n, x)
            assert d.relation_residual() < 1e-12

    geo = cx.Datum.affine_a(2, 1.0)
    assert geo.corank_a() == 1
    (v,) = geo.fixed_subspace()
    assert all(close(e, v[0]) for e in v)

    tri = cx.CoxeterSystem(["a", "b", "c"], default_bond=3)
    d = cx.Datum.parse({"system": {"generators": ["a", "b", "c"], "default_bond": 3},
                        "classification": {"chi": {"b-c": [2.0, 0.0]}}})
    assert d.character() == [("b-c", 2 + 0j)]
    assert d.invariant_form() is None
    assert cx.intertwiner(d, d) is not None
    assert cx.intertwiner(d, cx.Datum.geometric(tri)) is None
    dual = d.dual()
    assert close(dual.character()[0][1], 0.5)
    report, ok = d.verify()
    assert ok, report
    assert cx.Datum.parse(d.to_json()).character() == d.character()

    text, value = cx.cell_check(5, 2)
    assert text.startswith("rtrtr - rtrt - trtr") and value < 1e-12

    try:
        cx.Datum.affine_a(1, 2.0)
    except ValueError:
        pass
    else:
        raise AssertionError("n = 1 accepted")

    print("coxrep_py smoke test passed")


if __name__ == "__main__":
    main()
