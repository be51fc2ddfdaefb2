"""Smoke test for the compiled matroid_hopf_py extension.

Build and run from the repository root:

    cargo build --release -p matroid-hopf-py --features extension-module
    cp target/release/libmatroid_hopf_py.so python/matroid_hopf_py.so
    python3 python/smoke_test.py
"""

import os
import sys

sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

import matroid_hopf_py as mh


def main() -> None:
    u12 = mh.Matroid.uniform(1, 2)
    assert u12.n == 2 and u12.rank() == 1
    assert u12.iso_class() == "U_{1,2}"
    assert mh.coproduct(u12, "rd") == "1⊗U_{1,2} + 2*U_{1,1}⊗U_{1,1} + U_{1,2}⊗1"
    assert (2, ["U_{1,1}", "U_{1,1}"]) in mh.coproduct_terms(u12)

    u24 = mh.Matroid.parse("uniform(2,4)")
    assert mh.poly(u24) == "x^4"
    assert mh.alpha(u24) == "s^4*x^4"
    assert mh.antipode(mh.Matroid.uniform(3, 3)) == "-1*U_{3,3} + 6*U_{1,1}.U_{2,2} - 6*U_{1,1}^3"

    prec, succ = mh.split(mh.Matroid.uniform(1, 3), "rd")
    assert prec == "3*U_{1,2}⊗U_{1,1}" and succ == "3*U_{1,1}⊗U_{1,2}"
    assert mh.dendriform_check(u24, "rc") == (True, True, True)

    triangle = mh.Matroid.graphic(3, [(0, 1), (1, 2), (0, 2)])
    assert triangle.is_isomorphic(mh.Matroid.uniform(2, 3))
    assert triangle.dual().iso_class() == "U_{1,3}"
    assert mh.Matroid.from_json(triangle.to_json()) == triangle
    assert triangle.contraction([0]).iso_class() == "U_{1,2}"

    loop_and_coloop = mh.Matroid(2, [[], [0]])
    assert mh.poly(loop_and_coloop) == "x*y"

    try:
        mh.Matroid(2, [[], [0, 1]])
    except mh.MatroidError as err:
        assert "{0,1}" in str(err)
    else:
        raise AssertionError("axiom violation was accepted")

    try:
        mh.coproduct(u12, "xx")
    except ValueError:
        pass
    else:
        raise AssertionError("bad mode was accepted")

    results = {r["suite"]: r for r in mh.run_verify(3)}
    assert results["coassociativity (rd)"]["passed"]
    assert results["P = x^c y^l"]["passed"]

    print("smoke test passed")


if __name__ == "__main__":
    main()
