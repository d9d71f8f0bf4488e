"""Smoke test for the posetcode_py extension.

Build and install it first:

    pip install --no-build-isolation -e crates/python
    python python/smoke_test.py
"""

import posetcode_py as pc


def main():
    g = pc.Code(2, [[0, 0, 1, 1, 0, 1], [1, 0, 1, 1, 1, 0], [1, 1, 0, 0, 0, 0]])
    p1 = pc.Poset(6, [(1, 2), (3, 4)])
    p2 = pc.Poset(6, [(1, 2), (3, 4), (4, 5)])

    d1 = pc.decompose(g, p1)
    assert d1.profile == [(1, 1), (4, 2), (1, 1)], d1
    assert d1.degree == 2
    assert pc.decompose(g, p2).degree == 3
    assert pc.Decomposition.from_json(d1.to_json()).profile == d1.profile

    _, _, fixpoint = pc.canonicalize(g, p1)
    assert fixpoint

    assert pc.Poset.chain(3).weight([0, 1, 1]) == 3

    star = pc.Poset(4, [(1, 4), (2, 4), (3, 4)])
    c = pc.Code(2, [[1, 0, 0, 1]])
    assert pc.radius_bounds(c, star) == (3, 3, 3)
    assert pc.decode(c, star, [[1, 1, 0, 0]]) == [[0, 0, 0, 0]]
    assert pc.table_plan(c, star)["full"] == 8

    for name, instances, failures in pc.run_selftest(1):
        assert failures == 0, name
        print(f"PASS {name} ({instances})")
    print("smoke test ok")


if __name__ == "__main__":
    main()
