"""Smoke test for the wordmap extension module.

Build with `cargo build --release -p wordmap-py`, then copy
target/release/libwordmap_py.so to wordmap.so somewhere on PYTHONPATH
(or run `maturin develop` inside crates/py).
"""

import random

import wordmap


def main():
    g = wordmap.Group.catalog("a5")
    assert g.order == 60
    assert g.aut_order == 120
    assert (g.ell, g.r) == (2280, 19)
    assert g.hall_consistent and g.spread_total
    assert sorted(g.orbit_labels()) == ["e", "o2x15", "o3x20", "o5x24"]

    comm = g.image("xyXY")
    assert len(comm) == 60
    assert g.image("xx") == g.image_naive("xx")
    assert sum(g.distribution("xyXY")) == 60 * 60
    assert g.distribution("x") == [60] * 60

    ok = g.certify(set="e,o3x20")
    assert ok.realizable and ok.eprime_ok and ok.failed is None
    bad = g.certify(set="o3x20")
    assert not bad.realizable and bad.failed == "missing-identity"

    rng = random.Random(7)
    ids = sorted({0, *rng.sample(range(1, 60), 5)})
    partial = g.certify(ids=ids)
    assert not partial.realizable and partial.failed == "not-aut-invariant"

    assert wordmap.canonical("yx") == "xy"
    assert wordmap.reduce("xXy") == "y"

    images = g.census(maxlen=6)
    assert all("e" in labels for labels, _, _ in images)

    p = wordmap.Group.psl2(7)
    assert p.order == 168 and p.aut_order == 336

    try:
        wordmap.Group.from_json('{"name": "s3", "degree": 3, "generators": [[1,0,2],[1,2,0]]}')
    except ValueError as e:
        print("non-simple group rejected:", e)
    else:
        raise AssertionError("S3 accepted as simple")

    print("smoke test passed:", g, p, ok)


if __name__ == "__main__":
    main()
