"""Smoke test for the pymaxmin extension module.

Build and install first, e.g.:
    cd crates/python && maturin build --release -o dist && pip install dist/*.whl
then run:
    python python/smoke_test.py
"""

from fractions import Fraction as F

import pymaxmin as mm

EXAMPLE1 = ".01 .02 .03 .04; .05 .06 .07 .08; .09 .10 .11 .12"
EXAMPLE2 = ".01 .04 .07 .10; .02 .05 .08 .11; .03 .06 .09 .12"


def check_scalars():
    assert mm.oplus(".3", ".7") == F(7, 10)
    assert mm.otimes("1/3", 0.5) == F(1, 3)
    assert mm.residual(".6", ".4") == F(2, 5)
    assert mm.residual(".4", ".6") == 1
    try:
        mm.oplus("1.5", 0)
    except ValueError:
        pass
    else:
        raise AssertionError("values above 1 must be rejected")


def check_rank():
    a = mm.Matrix.parse(EXAMPLE1)
    assert a.shape == (3, 4)
    w = mm.rank(a)
    assert w.rank == 3 and w.col_perm == [3, 2, 1, 0]
    reference = mm.Certificate(0, [3, 2, 1], {1: ".10", 2: ".07", 3: ".04"})
    assert mm.verify_certificate(a, reference)
    assert mm.trapezoidalize(a) == ([0, 1, 2], [3, 2, 1, 0])

    b = mm.Matrix.parse(EXAMPLE2)
    assert mm.dimension(b) == 2 and mm.chain_condition(b)
    sub = mm.Matrix([[".01", ".07", ".10"], [".03", ".09", ".12"]])
    assert mm.verify_certificate(sub, mm.Certificate(0, [2, 1], {1: ".09", 2: ".08"}))
    assert mm.square_rank(mm.homogenize(b)) == 3


def check_hull_and_segments():
    a = mm.Matrix.parse(EXAMPLE1)
    member, witness, _ = mm.hull_membership(a, [".035", ".065", ".095"])
    assert member and max(witness) == 1
    assert mm.mat_vec(a, witness) == [F(35, 1000), F(65, 1000), F(95, 1000)]
    member, witness, row = mm.hull_membership(a, [".5", ".5", ".5"])
    assert not member and witness is None and row == 0

    comparable, junction, pieces = mm.decompose([".2", ".5"], [".7", ".6"])
    assert comparable and junction is None and len(pieces) == 3
    assert pieces[1]["active"] == [0, 1]
    assert mm.is_ordinary([".2", ".2"], [".1", ".1"])

    grid = mm.hull_raster_2d(mm.Matrix([[0, 1], [0, 1]]), 10)
    assert sum(map(sum, grid)) == 11


def check_systems_and_boxes():
    a = mm.Matrix.parse(EXAMPLE1)
    cert = mm.normalize_certificate(a, mm.Certificate(0, [3, 2, 1], {1: ".10", 2: ".07", 3: ".04"}))
    b, x = mm.build_unique_system(a, cert)
    principal, solves, _, unique_normalized, _ = mm.solve(a, b)
    assert solves and unique_normalized and principal == x

    center, blocks, epsilon = mm.quasibox(a)
    assert len(blocks) == 3 and epsilon > 0
    assert mm.hull_membership(a, center)[0]
    assert mm.dimension_lower_bound(a, 200) == 3


if __name__ == "__main__":
    check_scalars()
    check_rank()
    check_hull_and_segments()
    check_systems_and_boxes()
    print("pymaxmin smoke test passed")
