# Fibrations that sit exactly on the bound.
#
# Two constructions.  Double covers of a pencil on a Hirzebruch surface cover
# q_f <= (g-1)/2 whenever g+1 = m(q_f+1).  Quotients of a product by an
# involution cover the top values q_f = g/2 and q_f = (g+1)/2.
#
# Run with:  python3 demos/04_example_families.py

from slopelab import (
    ProductQuotientParams,
    RuledCoverParams,
    build_product_quotient,
    build_ruled_cover,
    hirzebruch_intersection,
)

# On F_e the section C0 has C0^2 = -e and meets a fiber G once.  The branch
# curve lives in |m C0 + b0 G|; its self-intersection x counts the blow-ups.
print("x for (m, e, b0) = (2, 1, 3):", hirzebruch_intersection(2, 3, 2, 3, 1))

rep = build_ruled_cover(RuledCoverParams(m=2, e=1, b0=3, q_f=1))
for key, value in rep.to_dict().items():
    print(f"  {key:15} {value}")

# The invariants change with e and b0, the slope does not.
print()
print(" m  e b0 q_f  g    K^2    chi  slope   bound")
for m, e, b0, q in [(2, 1, 3, 1), (2, 2, 7, 1), (3, 1, 4, 1), (3, 2, 9, 2), (4, 3, 15, 3), (6, 1, 8, 4)]:
    r = build_ruled_cover(RuledCoverParams(m, e, b0, q))
    print(f"{m:>2} {e:>2} {b0:>2} {q:>3} {r.g:>2} {str(r.invariants.k2):>6} "
          f"{str(r.invariants.chi):>6} {str(r.slope):>6} {str(r.bound):>7}")

# Product quotients: K^2 = 2(g-1) times the number of branch points.
print()
for g, b in [(2, 2), (3, 2), (4, 4), (9, 6), (10, 10)]:
    r = build_product_quotient(ProductQuotientParams(g, b))
    print(f"g={g:<2} |branch|={b:<2} q_f={r.q_f:<2} K^2={str(r.invariants.k2):<4} "
          f"chi={str(r.invariants.chi):<4} slope={r.slope}  attains={r.attains_bound}")

# b0 must exceed m*e for the linear system to be very ample.
try:
    RuledCoverParams(2, 1, 2, 1)
except ValueError as exc:
    print()
    print("rejected:", exc)
