# The slope bound as a function of genus and relative irregularity.
#
# Run with:  python3 demos/01_bounds.py

from fractions import Fraction

from slopelab import GenusProfile, bound_difference, conjecture_bound, lambda_bound, proof_coefficients

# Every bound is an exact Fraction.  Floats never enter.
p = GenusProfile(g=7, q_f=2)
print("lambda(7, 2)     =", lambda_bound(p))
print("conjecture(7, 2) =", conjecture_bound(p))
print("difference       =", bound_difference(p))

# q_f runs from 0 to floor((g+1)/2).  Anything above that is refused.
try:
    GenusProfile(4, 3)
except ValueError as exc:
    print("rejected:", exc)

# A small table.  The bound climbs from the classical 4(g-1)/g at q_f = 0
# to 8 (odd g) or 8(g-1)/g (even g) at the top.
print()
print(f"{'g':>3} " + " ".join(f"{'q=' + str(q):>9}" for q in range(0, 6)))
for g in range(2, 11):
    cells = []
    for q in range(0, 6):
        if 2 * q <= g + 1:
            cells.append(f"{str(lambda_bound(GenusProfile(g, q))):>9}")
        else:
            cells.append(f"{'':>9}")
    print(f"{g:>3} " + " ".join(cells))

# Where does the bound beat the simpler conjectured value 4(g-1)/(g-q_f)?
# Only strictly inside the range; the ends agree.
print()
for g in (7, 8):
    diffs = {q: bound_difference(GenusProfile(g, q)) for q in range(0, (g + 1) // 2 + 1)}
    print(f"g = {g}:", ", ".join(f"q={q}: {d}" for q, d in diffs.items()))

# The lower-bound argument is a non-negative combination of the indices.
# The coefficients are all exact and >= 0; a few vanish, which is where the
# extremal fibrations live.
cs = proof_coefficients(GenusProfile(7, 2))
zeros = [name for name, v in cs.entries() if v == 0]
print()
print("coefficients for (7, 2):", len(list(cs.entries())), "entries, zero at", zeros)
assert all(v >= Fraction(0) for _, v in cs.entries())
