"""Smoke test for the golodlab_py extension.

    cd crates/python && maturin develop --release && python ../../python/smoke_test.py
"""

import json

import golodlab_py as g


def main():
    square = g.Complex([[1, 2], [2, 3], [3, 4], [4, 1]])
    assert square.f_vector == [1, 4, 4]
    assert square.betti() == [1, 1]
    tight, witness = square.is_tight()
    assert not tight and witness == ["1", "3"]
    assert not square.is_weakly_golod()

    torus = g.Complex.catalog("torus-7")
    assert torus.is_tight("f2")[0]
    assert torus.certify_golod("q") == 84

    c6 = g.Complex.catalog("cycle-6")
    t = c6.triple_massey([[1, 4], [2, 5], [3, 6]], "f2")
    assert t["defined"] and t["total_degree"] == 8

    back = g.Complex.parse(torus.emit())
    assert back.f_vector == torus.f_vector

    report = json.loads(g.Complex.catalog("rp2-6").report_json(["f2", "q"], "rp2-6"))
    assert report["tight"]["f2"]["unreduced"] is True
    assert report["betti"]["q"] == [1, 0, 0]

    assert "torus-7" in g.catalog_names()
    assert g.tight_neighborly_check(9, 3, 1)
    try:
        g.Complex([[1, 1]])
    except ValueError:
        pass
    else:
        raise AssertionError("repeated vertex accepted")
    print("golodlab_py", g.__version__, "smoke test ok")


if __name__ == "__main__":
    main()
