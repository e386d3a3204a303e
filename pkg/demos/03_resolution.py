# From blow-up data to invariants, two ways.
#
# A fibration given as a double cover is described by the singular points of
# its branch curve met during the even resolution.  Each point is a node of a
# tree: its multiplicity, and the singular points found on its exceptional
# curve as children.  Multiplicities are those of the updated branch divisor,
# so a child of an odd point may be one higher than its parent.
#
# Run with:  python3 demos/03_resolution.py

import json
import random
from fractions import Fraction

from slopelab import SingularityForest, SingularityNode as N, compare_paths, validate_forest
from slopelab.errors import ForestError

# Genus 3, eight ordinary quadruple points and n = L^2/(g+1) = 8.
f = SingularityForest(g=3, n=8, fibers=((N(4),) * 8,))
rep = compare_paths(f)
print("indices     :", {f"s{i}": str(v) for i, v in rep.indices.as_dict(nonzero=True).items()})
print("direct      :", rep.direct.as_strings())
print("via indices :", rep.via_indices.as_strings())
print("agree       :", rep.agree, " slope", rep.direct.slope())

# A (3 -> 3) point: multiplicity 3 whose single infinitely near singular
# point has multiplicity 4.  The pair counts once, under s_3, and leaves a
# (-1)-curve behind.
f = SingularityForest(g=3, n=Fraction(5, 2), fibers=((N(3, (N(4),)), N(2)),))
rep = compare_paths(f)
print()
print("(3 -> 3)    :", {f"s{i}": str(v) for i, v in rep.indices.as_dict(nonzero=True).items()},
      "(-1)-curves", rep.trace.minus_one_curve_count, "agree", rep.agree)

# Bad input is reported with the path of the offending node.
bad = SingularityForest(g=5, n=1, fibers=((N(4, (N(5),)),),))
try:
    validate_forest(bad)
except ForestError as exc:
    print("rejected    :", exc)

# Forests round-trip through JSON, which is also what `slopelab resolve` reads.
print()
print(json.dumps(f.to_dict()))

# Random trees: the two routes never disagree.
rng = random.Random(1)


def tree(depth, parent=None):
    top = 5 if parent is None else (parent if parent % 2 == 0 else parent + 1)
    m = rng.randint(2, min(top, 5))
    kids = tuple(tree(depth - 1, m) for _ in range(rng.randint(0, 2))) if depth else ()
    return N(m, kids)


agree = 0
for _ in range(200):
    forest = SingularityForest(3, Fraction(rng.randint(0, 60), rng.randint(1, 5)),
                               (tuple(tree(2) for _ in range(rng.randint(0, 3))),))
    agree += compare_paths(forest).agree
print("random genus-3 forests agreeing:", agree, "/ 200")
