"""Projective-line baseline: one vacuum insertion gives a one-dimensional
space of coinvariants concentrated in degree zero, a second vacuum
insertion does not change the table (propagation).
"""

import argparse

from logblocks.blocks import coinvariant_dims, propagation_check
from logblocks.curves import projective_line
from logblocks.vacore import HEISENBERG, VertexAlgebraInstance


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--truncate", type=int, default=4)
    args = parser.parse_args()

    V = VertexAlgebraInstance(HEISENBERG, args.truncate)
    one = coinvariant_dims(projective_line(1), V)
    print(one.to_text())
    print(f"total dimension: {one.total_dim()}")
    print()
    rep = propagation_check(projective_line(1), projective_line(2), V)
    print("after inserting a second vacuum point:")
    print(rep.extended.to_text())
    print(f"tables equal per degree: {rep.all_equal()}")


if __name__ == "__main__":
    main()
