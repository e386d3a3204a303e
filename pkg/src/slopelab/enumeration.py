"""Brute-force minimum of a cone program by vertex enumeration.

Independent of the simplex in :mod:`slopelab.cone`: every vertex of
``{normalization = 1, inequalities >= 0}`` is obtained by making a maximal
subset of inequalities tight and solving the square system directly, and
unboundedness is detected by enumerating edge directions the same way.
Only practical for small ``g`` (the program has ``g+1`` variables and
``g+1`` inequalities).
"""

from fractions import Fraction
from itertools import combinations

from .errors import Infeasible, Unbounded


def _rref(rows, ncols):
    """Reduced row echelon form in place; returns the pivot columns."""
    pivots = []
    r = 0
    for c in range(ncols):
        pr = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if pr is None:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        p = rows[r][c]
        rows[r] = [v / p for v in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return pivots


def solve_square(M, rhs):
    """Unique solution of ``M x = rhs`` or None if ``M`` is singular."""
    n = len(M)
    rows = [[Fraction(v) for v in row] + [Fraction(t)] for row, t in zip(M, rhs)]
    if len(_rref(rows, n)) < n:
        return None
    return [rows[i][n] for i in range(n)]


def null_vector(M, ncols):
    """A basis vector of the kernel of ``M`` if it is one-dimensional, else None."""
    rows = [[Fraction(v) for v in row] for row in M]
    pivots = _rref(rows, ncols)
    free = [c for c in range(ncols) if c not in pivots]
    if len(free) != 1:
        return None
    f = free[0]
    d = [Fraction(0)] * ncols
    d[f] = Fraction(1)
    for i, c in enumerate(pivots):
        d[c] = -rows[i][f]
    return d


def _dense(form, variables):
    return [form[i] for i in variables]


def brute_force_minimum(prog):
    """Return ``(minimum, vertex)`` of the cone program by exhaustion.

    ``vertex`` is a ``{i: s_i}`` dict.  Raises :class:`Unbounded` if some
    feasible edge direction decreases the objective, :class:`Infeasible` if
    no vertex is feasible.
    """
    variables = list(prog.variables)
    n = len(variables)
    obj = _dense(prog.objective, variables)
    norm = _dense(prog.normalization, variables)
    ineqs = [(_dense(f, variables), f.constant) for f in prog.inequalities.values()]
    if prog.objective.constant or prog.normalization.constant:
        raise ValueError("enumeration expects homogeneous objective and normalization")

    def feasible(x, homogeneous=False):
        for row, const in ineqs:
            val = sum((a * v for a, v in zip(row, x)), Fraction(0))
            if not homogeneous:
                val += const
            if val < 0:
                return False
        return True

    # Edge directions: kernel of normalization plus n-2 tight inequalities.
    for subset in combinations(range(len(ineqs)), n - 2):
        M = [norm] + [ineqs[j][0] for j in subset]
        d = null_vector(M, n)
        if d is None:
            continue
        for sign in (1, -1):
            dd = [sign * v for v in d]
            if feasible(dd, homogeneous=True) and sum(a * v for a, v in zip(obj, dd)) < 0:
                raise Unbounded(f"objective decreases along feasible direction {dd}")

    best = None
    for subset in combinations(range(len(ineqs)), n - 1):
        M = [norm] + [ineqs[j][0] for j in subset]
        rhs = [Fraction(1)] + [-ineqs[j][1] for j in subset]
        x = solve_square(M, rhs)
        if x is None or not feasible(x):
            continue
        val = sum((a * v for a, v in zip(obj, x)), Fraction(0))
        if best is None or val < best[0]:
            best = (val, dict(zip(variables, x)))
    if best is None:
        raise Infeasible("no feasible vertex")
    return best
