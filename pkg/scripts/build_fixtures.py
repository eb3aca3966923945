"""Write the worked-example input documents into data/.

Run from the repository root:  python3 scripts/build_fixtures.py
"""

from __future__ import annotations

import json
from pathlib import Path

from circpers import geom
from circpers.exactnum import Field
from circpers.quiver import Quiver
from circpers.linrep import Representation, direct_sum

DATA = Path(__file__).resolve().parent.parent / "data"
Q = Field.rationals()
I2 = [[1, 0], [0, 1]]

# fibers s1, t1, s2, t2, s3, t3 in that vertex order; every t is a source
FIG8 = Quiver.cycle([(2, 1), (2, 3), (4, 3), (4, 5), (6, 5), (6, 1)])
A4 = Quiver.equioriented(4)
# t1, s1, t2, s2
SPLIT = Quiver.cycle([(1, 2), (1, 4), (3, 4), (3, 2)])


def rep_doc(m: Representation) -> dict:
    return {"field": "Q", "quiver": m.quiver.to_dict(), "representation": m.to_dict()}


def point_cloud(n: int) -> list:
    return [[v] for v in range(n)]


def diagram_doc(singular, regular, a, b, degree=0) -> dict:
    return {"field": "Q", "degree": degree, "diagram": {
        "singular": singular, "regular": regular,
        "a": [{str(k): v for k, v in m.items()} for m in a],
        "b": [{str(k): v for k, v in m.items()} for m in b]}}


def documents() -> dict:
    k = Quiver.kronecker()
    out = {
        "winding_left.json": rep_doc(Representation.from_lists(k, Q, [2, 2], [I2, I2])),
        "winding_right.json": rep_doc(Representation.from_lists(k, Q, [2, 2], [[[0, 1], [1, 0]], I2])),
        "fig8_left.json": rep_doc(Representation.from_lists(
            FIG8, Q, [1, 2, 2, 2, 2, 2], [[[1, 1]], I2, I2, I2, I2, [[1, 1]]])),
        "fig8_right.json": rep_doc(Representation.from_lists(
            FIG8, Q, [2, 3, 2, 3, 2, 1],
            [[[1, 0, 0], [0, 1, 1]], [[1, 1, 0], [0, 0, 1]], [[1, 1, 0], [0, 0, 1]],
             [[1, 0, 0], [0, 1, 1]], [[1], [0]], [[1], [0]]])),
        "split_circle.json": rep_doc(Representation.from_lists(
            SPLIT, Q, [1, 1, 2, 1], [[[1]], [[1]], [[1, 1]], [[1, 1]]])),
        "identity_circle.json": rep_doc(Representation.from_lists(
            SPLIT, Q, [1, 1, 1, 1], [[[1]], [[1]], [[1]], [[1]]])),
        "a4_intervals.json": rep_doc(direct_sum(
            [geom.string_module(A4, Q, geom.IntervalA(1, 4)), geom.string_module(A4, Q, geom.IntervalA(2, 3))])),
        "zero_kronecker.json": rep_doc(Representation.zero(k, Q)),
    }
    ident = {0: 0, 1: 1}
    out["winding_left_levelset.json"] = diagram_doc(
        [point_cloud(2)], [point_cloud(2)], [ident], [ident])
    out["winding_right_levelset.json"] = diagram_doc(
        [point_cloud(2)], [point_cloud(2)], [{0: 1, 1: 0}], [ident])
    out["point_levelset.json"] = diagram_doc([point_cloud(1)], [point_cloud(1)], [{0: 0}], [{0: 0}])
    # figure-eight, both loops wound; R_1 sits between X_3 and X_1
    both = {0: 0, 1: 0}
    out["fig8_left_levelset.json"] = diagram_doc(
        [point_cloud(1), point_cloud(2), point_cloud(2)],
        [point_cloud(2)] * 3,
        [both, ident, ident],
        [ident, both, ident])
    return out


def main() -> None:
    DATA.mkdir(exist_ok=True)
    for name, doc in documents().items():
        (DATA / name).write_text(json.dumps(doc, indent=2, sort_keys=True) + "\n", encoding="utf-8")
        print("wrote", DATA / name)


if __name__ == "__main__":
    main()
