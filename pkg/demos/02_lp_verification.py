# Checking the bound with an exact linear program.
#
# The singularity indices s_2 .. s_{g+2} of a fibration satisfy s_i >= 0 for
# i >= 3 plus one extra linear inequality that depends on q_f.  Minimizing
# K^2 over that cone with chi = 1 should give exactly lambda(g, q_f), and the
# dual multipliers prove it.
#
# Run with:  python3 demos/02_lp_verification.py

from slopelab import (
    GenusProfile,
    brute_force_minimum,
    build_constraint,
    build_program,
    check_certificate,
    extremal_ray,
    lambda_bound,
    minimize,
    slope,
)

p = GenusProfile(5, 2)

# The extra inequality, written as a form that must stay >= 0.
print("cone constraint:", build_constraint(p), ">= 0")

prog = build_program(p)
res = minimize(prog)
print("LP minimum     :", res.minimum)
print("lambda(5, 2)   :", lambda_bound(p))
print("optimal point  :", {f"s{i}": str(v) for i, v in res.optimal_point.items() if v})
print("tight          :", sorted(res.tight_constraints))

# The certificate: K^2 - minimum * chi == sum of mu_j * (constraint_j),
# every mu_j >= 0.  The checker rebuilds the program from (g, q_f) alone.
print("certificate    :", res.certificate_strings())
print("certificate ok :", check_certificate(p, res.minimum, res.certificate_strings()))

# Tamper with one multiplier and the checker says so.
bad = dict(res.certificate)
bad["cone"] *= 2
try:
    check_certificate(p, res.minimum, bad)
except ArithmeticError as exc:
    print("tampered       :", exc)

# A second, slower opinion: walk every vertex of the feasible region.
best, vertex = brute_force_minimum(prog)
print("vertex search  :", best)

# An explicit point on the cone that attains the bound.
ray = extremal_ray(p)
print("extremal ray   :", {f"s{i}": str(v) for i, v in ray.as_dict(nonzero=True).items()},
      "slope", slope(ray))

# The same comparison over every admissible profile up to genus 20.
mismatches = []
for g in range(2, 21):
    for q in range(1, (g + 1) // 2 + 1):
        pr = GenusProfile(g, q)
        if minimize(build_program(pr)).minimum != lambda_bound(pr):
            mismatches.append((g, q))
print()
print("profiles where LP != lambda, g <= 20:", mismatches or "none")
