"""Exact minimization of the slope over the singularity-index cone.

For ``q_f >= 1`` the indices of a fibration satisfy ``s_i >= 0`` (i >= 3)
and one further linear inequality ``Lambda_h(s) - s_2 >= 0``.  Minimizing
``K_f^2`` subject to those and ``chi_f = 1`` is a small LP; its optimum is
the least slope the inequalities permit.  :func:`minimize` solves it with an
exact two-phase simplex (Bland's rule, so it terminates) and returns a dual
certificate that can be checked without re-running the solver.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping

from . import invariants as inv
from .errors import CrossCheckFailure, Infeasible, ProfileError, Unbounded
from .invariants import GenusProfile, SingularityIndexVector, fmt

__all__ = [
    "LinearForm",
    "ConeProgram",
    "OptimizationResult",
    "SharpnessReport",
    "cone_weights",
    "build_constraint",
    "build_program",
    "minimize",
    "extremal_ray",
    "verify_sharpness",
    "check_certificate",
    "simplex",
]

ZERO = Fraction(0)


class LinearForm:
    """``constant + sum_i coefficients[i] * s_i`` with exact coefficients.

    Zero coefficients are dropped, so two forms compare equal iff they are
    the same function.
    """

    __slots__ = ("coefficients", "constant")

    def __init__(self, coefficients: Mapping[int, object] = (), constant=0):
        coeffs = dict(coefficients)
        self.coefficients = {
            int(i): Fraction(c) for i, c in sorted(coeffs.items()) if c != 0
        }
        self.constant = Fraction(constant)

    @classmethod
    def variable(cls, i: int) -> "LinearForm":
        return cls({i: 1})

    def __getitem__(self, i: int) -> Fraction:
        return self.coefficients.get(i, ZERO)

    def __call__(self, point) -> Fraction:
        """Evaluate at a ``{i: s_i}`` mapping or a :class:`SingularityIndexVector`."""
        if isinstance(point, SingularityIndexVector):
            get = point.__getitem__
        else:
            get = lambda i: Fraction(point.get(i, 0))  # noqa: E731
        return self.constant + sum((c * get(i) for i, c in self.coefficients.items()), ZERO)

    def __add__(self, other: "LinearForm") -> "LinearForm":
        out = dict(self.coefficients)
        for i, c in other.coefficients.items():
            out[i] = out.get(i, ZERO) + c
        return LinearForm(out, self.constant + other.constant)

    def __neg__(self) -> "LinearForm":
        return self * -1

    def __sub__(self, other: "LinearForm") -> "LinearForm":
        return self + (-other)

    def __mul__(self, t) -> "LinearForm":
        t = Fraction(t)
        return LinearForm({i: t * c for i, c in self.coefficients.items()}, t * self.constant)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, LinearForm):
            return NotImplemented
        return self.coefficients == other.coefficients and self.constant == other.constant

    def __hash__(self):
        return hash((tuple(self.coefficients.items()), self.constant))

    def __repr__(self):
        return f"LinearForm({self})"

    def __str__(self):
        parts = []
        for i, c in sorted(self.coefficients.items()):
            mag = "" if abs(c) == 1 else f"{fmt(abs(c))}*"
            parts.append(("-" if c < 0 else "+", f"{mag}s{i}"))
        if self.constant or not parts:
            parts.append(("-" if self.constant < 0 else "+", fmt(abs(self.constant))))
        head_sign, head = parts[0]
        text = ("-" if head_sign == "-" else "") + head
        for sign, term in parts[1:]:
            text += f" {sign} {term}"
        return text


def cone_weights(p: GenusProfile) -> dict:
    """Coefficients of ``Lambda_h`` (no ``s_2`` term) as ``{i: weight}``."""
    g, q = p.g, p.q_f
    w = {}
    for k in range(q, g // 2 + 1):
        w[2 * k + 1] = Fraction((2 * k + 1) * (2 * g + 1 - 2 * k), g + 1)
    for k in range(q + 1, (g + 1) // 2 + 1):
        w[2 * k] = Fraction(2 * k * (g + 1 - k), g + 1)
    w[g + 2] = w.get(g + 2, ZERO) + (g + 1)
    for k in range(1, q):
        w[2 * k + 1] = w.get(2 * k + 1, ZERO) - 4 * k * (2 * k + 1)
    for k in range(2, q + 1):
        w[2 * k] = w.get(2 * k, ZERO) - 2 * k * (2 * k - 1)
    return w


def build_constraint(p: GenusProfile) -> LinearForm:
    """``Lambda_h - s_2``, which is non-negative on every fibration with ``q_f = p.q_f``."""
    if p.q_f < 1:
        raise ProfileError("the cone constraint only exists for q_f >= 1")
    return LinearForm(cone_weights(p)) - LinearForm.variable(2)


@dataclass(frozen=True)
class ConeProgram:
    """Minimize ``objective`` subject to ``normalization == 1`` and every
    inequality ``>= 0``.  Variables are ``s_2 .. s_{g+2}``; ``s_2`` is free.

    Inequalities are keyed by identifier: ``"s3" .. "s{g+2}"`` for the sign
    constraints and ``"cone"`` for ``Lambda_h - s_2``.
    """

    profile: GenusProfile
    objective: LinearForm
    normalization: LinearForm
    inequalities: dict

    @property
    def variables(self) -> range:
        return range(2, self.profile.g + 3)


def build_program(p: GenusProfile) -> ConeProgram:
    if p.q_f < 1:
        raise ProfileError("no cone program at q_f = 0; the classical slope inequality applies")
    g = p.g
    ineqs = {f"s{i}": LinearForm.variable(i) for i in range(3, g + 3)}
    ineqs["cone"] = build_constraint(p)
    return ConeProgram(
        profile=p,
        objective=LinearForm(inv.k2_weights(g)),
        normalization=LinearForm(inv.chi_weights(g)),
        inequalities=ineqs,
    )


# ---------------------------------------------------------------------------
# Exact simplex


def _pivot(T, row, col):
    piv = T[row][col]
    T[row] = [v / piv for v in T[row]]
    for r, line in enumerate(T):
        if r != row and line[col] != 0:
            f = line[col]
            pr = T[row]
            T[r] = [a - f * b for a, b in zip(line, pr)]


def _run(T, basis, cost_row, allowed):
    """Bland's-rule simplex on tableau ``T`` (last column = rhs) minimizing
    the objective whose reduced costs sit in row ``cost_row``.
    Returns False if unbounded."""
    m = len(basis)
    while True:
        costs = T[cost_row]
        entering = next((j for j in allowed if costs[j] < 0), None)
        if entering is None:
            return True
        best = None
        for r in range(m):
            a = T[r][entering]
            if a > 0:
                ratio = T[r][-1] / a
                if best is None or ratio < best[0] or (ratio == best[0] and basis[r] < basis[best[1]]):
                    best = (ratio, r)
        if best is None:
            return False
        _pivot(T, best[1], entering)
        basis[best[1]] = entering


@dataclass
class SimplexSolution:
    x: list
    value: Fraction
    duals: list
    reduced_costs: list
    basis: list


def simplex(A, b, c) -> SimplexSolution:
    """Minimize ``c.x`` subject to ``A x = b``, ``x >= 0``, all exact.

    Two phases with artificial variables; Bland's least-index rule in both.
    Raises :class:`Infeasible` or :class:`Unbounded`.
    """
    m, nvars = len(A), len(c)
    A = [[Fraction(v) for v in row] for row in A]
    b = [Fraction(v) for v in b]
    c = [Fraction(v) for v in c]
    flipped = [v < 0 for v in b]
    for r in range(m):
        if flipped[r]:
            A[r] = [-v for v in A[r]]
            b[r] = -b[r]
    art = list(range(nvars, nvars + m))
    width = nvars + m
    # rows 0..m-1 constraints, row m phase-2 costs, row m+1 phase-1 costs
    T = [A[r] + [Fraction(int(j == r)) for j in range(m)] + [b[r]] for r in range(m)]
    T.append(c + [ZERO] * m + [ZERO])
    T.append([ZERO] * (width + 1))
    for j in art:
        T[m + 1][j] = Fraction(1)
    basis = list(art)
    for r in range(m):
        T[m + 1] = [a - t for a, t in zip(T[m + 1], T[r])]

    _run(T, basis, m + 1, range(width))
    if T[m + 1][-1] != 0:
        raise Infeasible("cone program has no point with chi_f = 1")

    # Drive zero-level artificials out of the basis; drop redundant rows.
    r = 0
    while r < len(basis):
        if basis[r] >= nvars:
            col = next((j for j in range(nvars) if T[r][j] != 0), None)
            if col is None:
                del T[r]
                del basis[r]
                continue
            _pivot(T, r, col)
            basis[r] = col
        r += 1
    m_eff = len(basis)
    cost_row = m_eff
    if not _run(T, basis, cost_row, range(nvars)):
        raise Unbounded("cone program is unbounded below")

    x = [ZERO] * nvars
    for r, j in enumerate(basis):
        x[j] = T[r][-1]
    value = sum((ci * xi for ci, xi in zip(c, x)), ZERO)
    # Artificial columns hold B^{-1}; their phase-2 reduced cost is -y.
    duals = [T[cost_row][j] if f else -T[cost_row][j] for j, f in zip(art, flipped)]
    reduced = T[cost_row][:nvars]
    return SimplexSolution(x, value, duals, reduced, list(basis))


# ---------------------------------------------------------------------------
# Solving the cone program


@dataclass(frozen=True)
class OptimizationResult:
    """Exact optimum of a :class:`ConeProgram`.

    ``certificate`` maps each inequality identifier to a non-negative
    multiplier with ``objective - minimum*normalization == sum mu_j * ineq_j``.
    """

    profile: GenusProfile
    minimum: Fraction
    optimal_point: dict
    tight_constraints: frozenset
    basic_variables: frozenset
    certificate: dict

    def point_vector(self) -> SingularityIndexVector:
        return SingularityIndexVector.from_mapping(self.profile.g, self.optimal_point)

    def certificate_strings(self) -> dict:
        return {k: fmt(v) for k, v in sorted(self.certificate.items())}


def minimize(prog: ConeProgram) -> OptimizationResult:
    g = prog.profile.g
    # columns: s2+, s2-, s3..s_{g+2}, slack of the cone inequality
    names = ["s2+", "s2-"] + [f"s{i}" for i in range(3, g + 3)] + ["slack"]
    col = {i: i - 1 for i in range(3, g + 3)}

    def expand(form: LinearForm, slack=ZERO):
        row = [form[2], -form[2]] + [form[i] for i in range(3, g + 3)] + [slack]
        return row

    cone = prog.inequalities["cone"]
    A = [expand(prog.normalization), expand(cone, Fraction(-1))]
    b = [1 - prog.normalization.constant, -cone.constant]
    c = expand(prog.objective)
    sol = simplex(A, b, c)

    point = {2: sol.x[0] - sol.x[1]}
    point.update({i: sol.x[col[i]] for i in range(3, g + 3)})
    minimum = sol.value + prog.objective.constant
    certificate = {f"s{i}": sol.reduced_costs[col[i]] for i in range(3, g + 3)}
    certificate["cone"] = sol.reduced_costs[-1]
    tight = frozenset(k for k, form in prog.inequalities.items() if form(point) == 0)
    basic = frozenset(names[j] for j in sol.basis)
    return OptimizationResult(prog.profile, minimum, point, tight, basic, certificate)


def check_certificate(p: GenusProfile, minimum, certificate: Mapping[str, object]) -> bool:
    """Independent optimality check: rebuilds the program from ``p`` and
    verifies the multipliers are non-negative and recombine exactly.

    Raises :class:`CrossCheckFailure` describing the first defect.
    """
    prog = build_program(p)
    mu = {k: Fraction(v) for k, v in certificate.items()}
    if set(mu) != set(prog.inequalities):
        raise CrossCheckFailure(
            f"certificate keys {sorted(mu)} != constraints {sorted(prog.inequalities)}"
        )
    negative = {k: v for k, v in mu.items() if v < 0}
    if negative:
        raise CrossCheckFailure(f"negative multipliers: {negative}")
    lhs = prog.objective - prog.normalization * Fraction(minimum)
    rhs = LinearForm()
    for k, form in prog.inequalities.items():
        rhs = rhs + form * mu[k]
    if lhs != rhs:
        raise CrossCheckFailure(f"certificate does not recombine: {lhs} != {rhs}")
    return True


def extremal_ray(p: GenusProfile) -> SingularityIndexVector:
    """A point of the cone whose slope is exactly ``lambda_bound(p)``."""
    if p.q_f < 1:
        raise ProfileError("extremal rays are only defined for q_f >= 1")
    g, q = p.g, p.q_f
    if p.generic:
        i = 2 * (q + 1)
    elif g % 2 == 0:
        i = g + 1
    else:
        i = g + 2
    ray = {i: 1}
    ray[2] = LinearForm(cone_weights(p))(ray)
    return SingularityIndexVector.from_mapping(g, ray)


@dataclass(frozen=True)
class SharpnessReport:
    profile: GenusProfile
    bound: Fraction
    lp_minimum: Fraction
    witness: SingularityIndexVector
    witness_slope: Fraction
    result: OptimizationResult = field(repr=False)

    @property
    def equal(self) -> bool:
        return self.lp_minimum == self.bound and self.witness_slope == self.bound

    @property
    def certificate(self) -> dict:
        return self.result.certificate


def verify_sharpness(p: GenusProfile) -> SharpnessReport:
    result = minimize(build_program(p))
    witness = extremal_ray(p)
    return SharpnessReport(
        profile=p,
        bound=inv.lambda_bound(p),
        lp_minimum=result.minimum,
        witness=witness,
        witness_slope=inv.slope(witness),
        result=result,
    )
