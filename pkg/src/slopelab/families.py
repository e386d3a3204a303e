"""Fibrations attaining the slope bound.

Two constructions:

* :func:`build_ruled_cover` - double covers of a pencil on a Hirzebruch
  surface, branched over ``2(q_f+1)`` fibers of the pencil.  Here
  ``g + 1 = m(q_f + 1)`` and ``q_f <= (g-1)/2``.
* :func:`build_product_quotient` - quotients of ``F x B~`` by a diagonal
  involution, giving the extreme cases ``q_f = g/2`` and ``q_f = (g+1)/2``.

Invariants are computed from closed forms; the ruled family is also pushed
through the singularity-index formulas as a cross-check.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .cone import build_constraint
from .errors import CrossCheckFailure, SlopelabError
from .invariants import (
    GenusProfile,
    RelativeInvariants,
    SingularityIndexVector,
    fmt,
    lambda_bound,
    n_from_indices,
    n_weights,
    relative_invariants,
)


def hirzebruch_intersection(a1: int, b1: int, a2: int, b2: int, e: int) -> int:
    """``(a1 C0 + b1 G).(a2 C0 + b2 G)`` with ``C0^2 = -e``, ``C0.G = 1``, ``G^2 = 0``."""
    return -a1 * a2 * e + a1 * b2 + a2 * b1


def _int(name, v, lo):
    if isinstance(v, bool) or not isinstance(v, int):
        raise SlopelabError(f"{name} must be an integer, got {v!r}")
    if v < lo:
        raise SlopelabError(f"{name} must be >= {lo}, got {v}")
    return v


@dataclass(frozen=True)
class RuledCoverParams:
    m: int
    e: int
    b0: int
    q_f: int

    def __post_init__(self):
        _int("m", self.m, 2)
        _int("e", self.e, 1)
        _int("q_f", self.q_f, 1)
        _int("b0", self.b0, 1)
        if self.b0 <= self.m * self.e:
            raise SlopelabError(
                f"m*C0 + b0*G is very ample only for b0 > m*e = {self.m * self.e}; got b0 = {self.b0}"
            )
        GenusProfile(self.genus, self.q_f)

    @property
    def genus(self) -> int:
        return self.m * (self.q_f + 1) - 1


@dataclass(frozen=True)
class ProductQuotientParams:
    g: int
    branch_count: int

    def __post_init__(self):
        _int("g", self.g, 2)
        _int("branch_count", self.branch_count, 2)
        if self.branch_count % 2:
            raise SlopelabError(f"branch_count must be even, got {self.branch_count}")

    @property
    def q_f(self) -> int:
        return (self.g + 1) // 2


@dataclass(frozen=True)
class ExampleReport:
    family: str
    g: int
    q_f: int
    invariants: RelativeInvariants
    slope: Fraction
    bound: Fraction
    index_vector: Optional[SingularityIndexVector] = None
    extras: tuple = ()

    @property
    def attains_bound(self) -> bool:
        return self.slope == self.bound

    def to_dict(self) -> dict:
        d = {
            "family": self.family,
            "g": self.g,
            "q_f": self.q_f,
            **self.invariants.as_strings(),
            "slope": fmt(self.slope),
            "bound": fmt(self.bound),
            "attains_bound": self.attains_bound,
        }
        for k, v in self.extras:
            d[k] = v if isinstance(v, (int, str)) else fmt(v)
        if self.index_vector is not None:
            d["index_vector"] = {
                f"s{i}": fmt(v) for i, v in self.index_vector.as_dict(nonzero=True).items()
            }
        return d


def ruled_cover_indices(p: RuledCoverParams) -> tuple:
    """Index vector of the ruled cover and its ``n``.

    All singular points of the branch curve have multiplicity ``2(q_f+1)``;
    there are ``x`` of them and ``n = (q_f+1) x / m``.
    """
    g, k = p.genus, p.q_f + 1
    x = hirzebruch_intersection(p.m, p.b0, p.m, p.b0, p.e)
    n = Fraction(k * x, p.m)
    w = n_weights(g)
    s2 = (n - w[2 * k] * x) / w[2]
    return SingularityIndexVector.from_mapping(g, {2: s2, 2 * k: x}), n


def build_ruled_cover(p: RuledCoverParams) -> ExampleReport:
    g, q, m = p.genus, p.q_f, p.m
    x = hirzebruch_intersection(m, p.b0, m, p.b0, p.e)
    k2 = (Fraction(4 * (m - 1) * (q + 1), m) - 2) * x
    chi = Fraction((m - 1) * (q + 1), 2 * m) * x
    closed = RelativeInvariants(k2, chi)
    slope = 8 - Fraction(4 * m, (m - 1) * (q + 1))
    if closed.slope() != slope:
        raise CrossCheckFailure(f"slope {closed.slope()} != closed form {slope}")

    s, n = ruled_cover_indices(p)
    if n_from_indices(s) != n:
        raise CrossCheckFailure(f"index vector reproduces n = {n_from_indices(s)}, not {n}")
    via = relative_invariants(s)
    if via != closed:
        raise CrossCheckFailure(
            f"closed forms ({k2}, {chi}) disagree with index formulas ({via.k2}, {via.chi})"
        )
    return ExampleReport(
        family="ruled",
        g=g,
        q_f=q,
        invariants=closed,
        slope=slope,
        bound=lambda_bound(GenusProfile(g, q)),
        index_vector=s,
        extras=(
            ("m", m), ("hirzebruch_e", p.e), ("b0", p.b0), ("x", x), ("n", n),
            ("cone_slack", build_constraint(GenusProfile(g, q))(s)),
        ),
    )


def build_product_quotient(p: ProductQuotientParams) -> ExampleReport:
    g, s = p.g, p.branch_count
    k2 = Fraction(2 * (g - 1) * s)
    if g % 2 == 0:
        q, chi, slope = g // 2, Fraction(g * s, 4), Fraction(8 * (g - 1), g)
    else:
        q, chi, slope = (g + 1) // 2, Fraction((g - 1) * s, 4), Fraction(8)
    inv = RelativeInvariants(k2, chi)
    if inv.slope() != slope:
        raise CrossCheckFailure(f"slope {inv.slope()} != closed form {slope}")
    return ExampleReport(
        family="product",
        g=g,
        q_f=q,
        invariants=inv,
        slope=slope,
        bound=lambda_bound(GenusProfile(g, q)),
        extras=(("branch_count", s),),
    )
