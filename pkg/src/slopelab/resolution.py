"""Singularity forests of a branch divisor and their invariants.

A forest records, fiber by fiber, the singular points of the branch divisor
``R`` met during its canonical even resolution.  Each node is one blow-up;
its children are the singular points of the next transform lying on that
blow-up's exceptional curve.

.. important::
   ``multiplicity`` is the multiplicity of the *updated* divisor
   ``R_i = psi^* R_{i-1} - 2[m/2] E`` at the point.  Blowing up a point of
   odd multiplicity leaves the exceptional curve inside ``R_i``, so a child
   of an odd node already includes that curve and may exceed its parent by
   one.  Recording strict-transform multiplicities instead is the most
   likely input mistake.

Two routes to the invariants are provided and must agree:

* :func:`index_vector` classifies the nodes into singularity indices, to be
  fed to :func:`slopelab.invariants.relative_invariants`;
* :func:`resolve_invariants` sums the blow-up contributions directly
  (double-cover formulas on the resolved surface, then the (-1)-curve
  correction).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Iterator, Optional

from .errors import ForestError, S2Mismatch, SlopelabError
from .invariants import (
    RelativeInvariants,
    SingularityIndexVector,
    as_fraction,
    fmt,
    minus_one_count,
    n_weights,
    relative_invariants,
)

SCHEMA = 1


@dataclass(frozen=True)
class SingularityNode:
    multiplicity: int
    children: tuple = ()

    @property
    def half(self) -> int:
        """``[m/2]``, the multiple of the exceptional curve removed from ``R``."""
        return self.multiplicity // 2

    @property
    def is_first_component(self) -> bool:
        """Odd ``2k+1`` point whose only infinitely-near singular point has multiplicity ``2k+2``."""
        m = self.multiplicity
        return (
            m % 2 == 1
            and m >= 3
            and len(self.children) == 1
            and self.children[0].multiplicity == m + 1
        )

    def size(self) -> int:
        return 1 + sum(c.size() for c in self.children)

    def to_dict(self) -> dict:
        d = {"m": self.multiplicity}
        if self.children:
            d["children"] = [c.to_dict() for c in self.children]
        return d

    @classmethod
    def from_dict(cls, data, path="node") -> "SingularityNode":
        if not isinstance(data, dict) or "m" not in data:
            raise ForestError("node must be an object with an 'm' field", path)
        m = data["m"]
        if isinstance(m, bool) or not isinstance(m, int):
            raise ForestError(f"multiplicity must be an integer, got {m!r}", path)
        kids = data.get("children", [])
        if not isinstance(kids, list):
            raise ForestError("'children' must be a list", path)
        return cls(
            m, tuple(cls.from_dict(c, f"{path}.child[{j}]") for j, c in enumerate(kids))
        )


@dataclass(frozen=True)
class SingularityForest:
    """Per-fiber singularity trees plus ``n = L^2/(g+1)``.

    ``fibers`` is a tuple of fibers, each a tuple of root nodes.  ``s2`` is
    an optional explicitly known value of ``s_2``, checked against ``n``.
    """

    g: int
    n: Fraction
    fibers: tuple = ()
    s2: Optional[Fraction] = None

    def __post_init__(self):
        object.__setattr__(self, "n", as_fraction(self.n))
        if self.s2 is not None:
            object.__setattr__(self, "s2", as_fraction(self.s2))
        object.__setattr__(self, "fibers", tuple(tuple(f) for f in self.fibers))

    def walk(self) -> Iterator:
        """Yield ``(path, node, parent, fiber_index)`` in resolution order (pre-order)."""

        def rec(node, parent, path, fi):
            yield path, node, parent, fi
            for j, c in enumerate(node.children):
                yield from rec(c, node, f"{path}.child[{j}]", fi)

        for fi, roots in enumerate(self.fibers):
            for ri, root in enumerate(roots):
                yield from rec(root, None, f"fiber[{fi}].root[{ri}]", fi)

    def node_count(self) -> int:
        return sum(r.size() for f in self.fibers for r in f)

    def to_dict(self) -> dict:
        d = {"schema": SCHEMA, "g": self.g, "n": fmt(self.n)}
        if self.s2 is not None:
            d["s2"] = fmt(self.s2)
        d["fibers"] = [{"roots": [r.to_dict() for r in f]} for f in self.fibers]
        return d

    @classmethod
    def from_dict(cls, data) -> "SingularityForest":
        if not isinstance(data, dict):
            raise SlopelabError("forest must be a JSON object")
        schema = data.get("schema", SCHEMA)
        if schema != SCHEMA:
            raise SlopelabError(f"unsupported schema {schema!r}; expected {SCHEMA}")
        for key in ("g", "n"):
            if key not in data:
                raise SlopelabError(f"forest is missing '{key}'")
        g = data["g"]
        if isinstance(g, bool) or not isinstance(g, int):
            raise SlopelabError(f"g must be an integer, got {g!r}")
        fibers = []
        for fi, fib in enumerate(data.get("fibers", [])):
            if not isinstance(fib, dict) or not isinstance(fib.get("roots", []), list):
                raise SlopelabError(f"fiber[{fi}] must be an object with a 'roots' list")
            fibers.append(
                tuple(
                    SingularityNode.from_dict(r, f"fiber[{fi}].root[{ri}]")
                    for ri, r in enumerate(fib.get("roots", []))
                )
            )
        return cls(g, data["n"], tuple(fibers), data.get("s2"))


def load_forest(path) -> SingularityForest:
    try:
        data = json.loads(Path(path).read_text())
    except OSError as exc:
        raise SlopelabError(f"cannot read {path}: {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise SlopelabError(f"{path}: invalid JSON ({exc})") from exc
    return SingularityForest.from_dict(data)


# ---------------------------------------------------------------------------
# Validation


class MultiplicityTooLarge(ForestError):
    pass


class MultiplicityTooSmall(ForestError):
    pass


class MonotonicityViolation(ForestError):
    pass


def _max_multiplicity(g, parent):
    # A (g+2 -> g+2) singularity (g odd) has second component of multiplicity g+3.
    if (
        g % 2 == 1
        and parent is not None
        and parent.multiplicity == g + 2
        and len(parent.children) == 1
    ):
        return g + 3
    return g + 2


def validate_forest(f: SingularityForest, strict: bool = False) -> None:
    """Raise a :class:`ForestError` naming the first offending node.

    Rules: ``2 <= m <= g+2`` (the sole child of a multiplicity-``g+2`` node
    may reach ``g+3`` for odd ``g``); a child of an even node has
    multiplicity at most its parent's, a child of an odd node at most one
    more.  In strict mode, even ``g`` allows multiplicity ``g+2`` only as the
    second component of a ``(g+1 -> g+1)`` singularity, so ``s_{g+2} = 0``.
    """
    g = f.g
    if isinstance(g, bool) or not isinstance(g, int) or g < 2:
        raise ForestError(f"genus g must be an integer >= 2, got {g!r}")
    for path, node, parent, _ in f.walk():
        m = node.multiplicity
        if m < 2:
            raise MultiplicityTooSmall(f"multiplicity {m} < 2 is not a singular point", path)
        cap = _max_multiplicity(g, parent)
        if m > cap:
            raise MultiplicityTooLarge(f"multiplicity {m} exceeds g+2 = {g + 2}", path)
        if strict and g % 2 == 0 and m == g + 2 and not (parent and parent.is_first_component):
            raise MultiplicityTooLarge(
                f"strict mode: for even g = {g} a multiplicity-{m} point must be the "
                f"second half of a ({g + 1} -> {g + 1}) singularity",
                path,
            )
        if parent is not None:
            pm = parent.multiplicity
            limit = pm if pm % 2 == 0 else pm + 1
            if m > limit:
                kind = "even" if pm % 2 == 0 else "odd"
                raise MonotonicityViolation(
                    f"child multiplicity {m} exceeds {limit} allowed under {kind} parent {pm}",
                    path,
                )


# ---------------------------------------------------------------------------
# Classification into singularity indices


def _classify_node(node, is_second, g):
    """Index ``i >= 3`` this node is counted under, or None."""
    if is_second:
        return None
    m = node.multiplicity
    if node.is_first_component:
        return m if m <= g + 2 else None
    i = m if m % 2 == 0 else m - 1
    return i if 4 <= i <= g + 2 else None


def classify_fibers(f: SingularityForest) -> list:
    """Per-fiber ``{i: s_i(F)}`` counts for ``3 <= i <= g+2``."""
    g = f.g
    out = [{i: 0 for i in range(3, g + 3)} for _ in f.fibers]
    for _, node, parent, fi in f.walk():
        second = parent is not None and parent.is_first_component
        i = _classify_node(node, second, g)
        if i is not None:
            out[fi][i] += 1
    return out


def classify_indices(f: SingularityForest, strict: bool = False) -> dict:
    """Global ``{i: s_i}`` for ``3 <= i <= g+2`` (sums over fibers)."""
    validate_forest(f, strict)
    total = {i: 0 for i in range(3, f.g + 3)}
    for fiber in classify_fibers(f):
        for i, v in fiber.items():
            total[i] += v
    return total


def s2_from_n(f: SingularityForest, classified: dict) -> Fraction:
    """Recover ``s_2`` from ``n`` and the higher indices.

    If the forest carries an explicit ``s2`` it must agree, else
    :class:`~slopelab.errors.S2Mismatch` is raised.
    """
    g = f.g
    w = n_weights(g)
    rest = sum((w[i] * classified.get(i, 0) for i in range(3, g + 3)), Fraction(0))
    s2 = (f.n - rest) / w[2]
    if f.s2 is not None and f.s2 != s2:
        raise S2Mismatch(f.s2, s2)
    return s2


def index_vector(f: SingularityForest, strict: bool = False) -> SingularityIndexVector:
    classified = classify_indices(f, strict)
    s2 = s2_from_n(f, classified)
    return SingularityIndexVector.from_mapping(f.g, {2: s2, **classified}, strict=strict)


# ---------------------------------------------------------------------------
# Direct route


@dataclass(frozen=True)
class ResolutionTrace:
    half_multiplicities: tuple
    blowup_count: int
    minus_one_curve_count: int
    l_hat_sq: Fraction = field(repr=False, default=Fraction(0))
    k_dot_l_hat: Fraction = field(repr=False, default=Fraction(0))
    k_sq: int = field(repr=False, default=0)


def resolve_invariants(f: SingularityForest, strict: bool = False):
    """Invariants from blow-up data alone; returns ``(RelativeInvariants, ResolutionTrace)``."""
    validate_forest(f, strict)
    g, n = f.g, f.n
    halves = tuple(node.half for _, node, _, _ in f.walk())
    l_hat_sq = (g + 1) * n - sum(h * h for h in halves)
    k_dot_l = -n + sum(halves)
    k_sq = -len(halves)
    chi = (l_hat_sq + k_dot_l) / 2
    k2_resolved = 2 * (l_hat_sq + 2 * k_dot_l + k_sq)
    minus_one = int(minus_one_count((g, classify_indices(f, strict))))
    trace = ResolutionTrace(halves, len(halves), minus_one, l_hat_sq, k_dot_l, k_sq)
    return RelativeInvariants(k2_resolved + minus_one, chi), trace


@dataclass(frozen=True)
class DualPathReport:
    indices: SingularityIndexVector
    per_fiber: list
    direct: RelativeInvariants
    via_indices: RelativeInvariants
    trace: ResolutionTrace

    @property
    def agree(self) -> bool:
        return self.direct == self.via_indices


def compare_paths(f: SingularityForest, strict: bool = False) -> DualPathReport:
    s = index_vector(f, strict)
    direct, trace = resolve_invariants(f, strict)
    return DualPathReport(s, classify_fibers(f), direct, relative_invariants(s), trace)
