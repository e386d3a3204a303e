"""Slope bounds and the singularity-index formulas for hyperelliptic fibrations.

Everything here is exact: values are :class:`fractions.Fraction` and floats
are refused at the boundary.  Rationals print as ``"p/q"`` (or ``"p"``),
which is exactly ``str(Fraction)``.

Index conventions
-----------------
A fibration of genus ``g`` has singularity indices ``s_2, ..., s_{g+2}``.
Odd indices ``2k+1`` run over ``k = 1 .. g//2`` and even indices ``2k`` over
``k = 2 .. (g+1)//2``; ``s_{g+2}`` is always carried separately.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Mapping

from .errors import (
    IndexVectorError,
    LocallyTrivial,
    NegativeChi,
    ProfileError,
    SlopelabError,
)

__all__ = [
    "GenusProfile",
    "SingularityIndexVector",
    "RelativeInvariants",
    "CoefficientSet",
    "NonIntegralWarning",
    "as_fraction",
    "fmt",
    "admissible_qf",
    "validate_profile",
    "lambda_bound",
    "conjecture_bound",
    "bound_gap",
    "bound_difference",
    "xiao_coefficients",
    "odd_ks",
    "even_ks",
    "k2_weights",
    "chi_weights",
    "n_weights",
    "relative_invariants",
    "slope",
    "n_from_indices",
    "minus_one_count",
    "proof_coefficients",
]


class NonIntegralWarning(UserWarning):
    """K_f^2 or chi_f came out non-integral (impossible for a real fibration)."""


def as_fraction(value) -> Fraction:
    """Coerce an int, Fraction or ``"p/q"`` string to a Fraction.

    Floats are rejected: a float has already lost the exact value.
    """
    if isinstance(value, bool):
        raise SlopelabError(f"expected a rational, got boolean {value!r}")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, Rational)):
        return Fraction(value)
    if isinstance(value, str):
        text = value.strip()
        if "." in text or "e" in text.lower():
            raise SlopelabError(f"decimal notation is not exact: {value!r}")
        try:
            return Fraction(text)
        except (ValueError, ZeroDivisionError) as exc:
            raise SlopelabError(f"not a rational: {value!r}") from exc
    raise SlopelabError(f"expected int or 'p/q' string, got {type(value).__name__}")


def fmt(value) -> str:
    return str(Fraction(value))


def _require_int(name: str, value) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise ProfileError(f"{name} must be an integer, got {value!r}")
    return value


# ---------------------------------------------------------------------------
# (g, q_f) profiles and the bounds they parameterize


@dataclass(frozen=True, order=True)
class GenusProfile:
    """Fiber genus ``g`` and relative irregularity ``q_f``.

    Construction validates ``g >= 2`` and ``0 <= q_f <= floor((g+1)/2)``.
    """

    g: int
    q_f: int

    def __post_init__(self):
        g = _require_int("g", self.g)
        q = _require_int("q_f", self.q_f)
        if g < 2:
            raise ProfileError(f"genus g must be >= 2, got g = {g}")
        if q < 0:
            raise ProfileError(f"relative irregularity must be >= 0, got q_f = {q}")
        if q > (g + 1) // 2:
            raise ProfileError(
                f"q_f = {q} exceeds floor((g+1)/2) = {(g + 1) // 2} for g = {g}"
            )

    @property
    def generic(self) -> bool:
        """True in the main case ``q_f <= (g-1)/2``."""
        return 2 * self.q_f <= self.g - 1


def validate_profile(g: int, q_f: int) -> GenusProfile:
    return GenusProfile(g, q_f)


def admissible_qf(g: int) -> range:
    """All admissible relative irregularities for genus ``g``."""
    return range(0, (g + 1) // 2 + 1)


def lambda_bound(p: GenusProfile) -> Fraction:
    """The sharp slope lower bound for hyperelliptic fibrations of profile ``p``."""
    g, q = p.g, p.q_f
    if p.generic:
        return 8 - Fraction(4 * (g + 1), (q + 1) * (g - q))
    if g % 2 == 0:
        return Fraction(8 * (g - 1), g)
    return Fraction(8)


def conjecture_bound(p: GenusProfile) -> Fraction:
    """``4(g-1)/(g-q_f)``; at ``q_f = 0`` this is the classical slope inequality."""
    return Fraction(4 * (p.g - 1), p.g - p.q_f)


def bound_gap(p: GenusProfile) -> Fraction:
    """Closed form of ``lambda_bound(p) - conjecture_bound(p)`` for ``q_f <= (g-1)/2``.

    Outside that range use :func:`bound_difference`.
    """
    if not p.generic:
        raise ProfileError(
            f"gap identity needs q_f <= (g-1)/2; got g = {p.g}, q_f = {p.q_f}"
        )
    g, q = p.g, p.q_f
    return Fraction(4 * q * (g - 2 * q - 1), (q + 1) * (g - q))


def bound_difference(p: GenusProfile) -> Fraction:
    return lambda_bound(p) - conjecture_bound(p)


# ---------------------------------------------------------------------------
# Index vectors


def odd_ks(g: int) -> range:
    """k such that s_{2k+1} appears in the general sums (2k+1 <= g+1)."""
    return range(1, g // 2 + 1)


def even_ks(g: int) -> range:
    """k such that s_{2k} appears in the general sums (4 <= 2k <= g+1)."""
    return range(2, (g + 1) // 2 + 1)


@dataclass(frozen=True)
class SingularityIndexVector:
    """The indices ``(s_2, ..., s_{g+2})``.

    ``s_2`` may take any sign; ``s_i`` for ``i >= 3`` must be non-negative.
    Entries are Fractions so that rational points of the index cone can be
    evaluated with the same formulas; a geometric fibration has integral
    entries (see :attr:`is_integral`).

    With ``strict=True`` and ``g`` even, ``s_{g+2}`` must vanish.
    """

    g: int
    values: tuple
    strict: bool = field(default=False, compare=False)

    def __post_init__(self):
        g = self.g
        if isinstance(g, bool) or not isinstance(g, int) or g < 2:
            raise IndexVectorError(f"genus g must be an integer >= 2, got {g!r}")
        vals = tuple(as_fraction(v) for v in self.values)
        if len(vals) != g + 1:
            raise IndexVectorError(
                f"expected {g + 1} entries s_2..s_{g + 2}, got {len(vals)}"
            )
        for i, v in enumerate(vals[1:], start=3):
            if v < 0:
                raise IndexVectorError(f"s_{i} = {v} is negative; s_i >= 0 for i >= 3")
        if self.strict and g % 2 == 0 and vals[-1] != 0:
            raise IndexVectorError(
                f"strict mode: s_{g + 2} must vanish for even g = {g}, got {vals[-1]}"
            )
        object.__setattr__(self, "values", vals)

    @classmethod
    def from_mapping(cls, g: int, entries: Mapping[int, object], strict=False):
        """Build from ``{i: s_i}``; absent indices are zero."""
        vals = [Fraction(0)] * (g + 1)
        for i, v in entries.items():
            i = int(i)
            if not 2 <= i <= g + 2:
                raise IndexVectorError(f"index s_{i} out of range 2..{g + 2} for g = {g}")
            vals[i - 2] = as_fraction(v)
        return cls(g, tuple(vals), strict=strict)

    @classmethod
    def zeros(cls, g: int):
        return cls(g, (0,) * (g + 1))

    def __getitem__(self, i: int) -> Fraction:
        if not 2 <= i <= self.g + 2:
            raise IndexError(f"s_{i} out of range 2..{self.g + 2}")
        return self.values[i - 2]

    def as_dict(self, nonzero=False) -> dict:
        return {
            i: v
            for i, v in enumerate(self.values, start=2)
            if v != 0 or not nonzero
        }

    def scaled(self, t) -> "SingularityIndexVector":
        t = as_fraction(t)
        if t <= 0:
            raise IndexVectorError("scale factor must be positive")
        return SingularityIndexVector(self.g, tuple(t * v for v in self.values))

    @property
    def is_integral(self) -> bool:
        return all(v.denominator == 1 for v in self.values)


@dataclass(frozen=True)
class RelativeInvariants:
    """K_f^2, chi_f and e_f; ``e`` is derived so Noether's formula holds."""

    k2: Fraction
    chi: Fraction

    @property
    def e(self) -> Fraction:
        return 12 * self.chi - self.k2

    @property
    def is_integral(self) -> bool:
        return self.k2.denominator == 1 and self.chi.denominator == 1

    def slope(self) -> Fraction:
        if self.chi == 0:
            raise LocallyTrivial("chi_f = 0: fibration is locally trivial, slope undefined")
        if self.chi < 0:
            raise NegativeChi(f"chi_f = {self.chi} < 0: index vector outside the geometric cone")
        return self.k2 / self.chi

    def as_strings(self) -> dict:
        return {"k2": fmt(self.k2), "chi": fmt(self.chi), "e": fmt(self.e)}


def xiao_coefficients(g: int, k: int) -> tuple:
    """``(a_k, b_k) = (12k(g-k) - 2g - 1, 6k(g-k+1) - 4g - 2)``."""
    if not 1 <= k <= (g + 1) // 2:
        raise SlopelabError(f"k = {k} outside 1..{(g + 1) // 2} for g = {g}")
    a = 12 * k * (g - k) - 2 * g - 1
    b = 6 * k * (g - k + 1) - 4 * g - 2
    return Fraction(a), Fraction(b)


def _weights(g, w2, wtop, w_odd, w_even):
    out = {i: Fraction(0) for i in range(2, g + 3)}
    out[2] += w2
    out[g + 2] += wtop
    for k in odd_ks(g):
        out[2 * k + 1] += w_odd(k)
    for k in even_ks(g):
        out[2 * k] += w_even(k)
    return out


def k2_weights(g: int) -> dict:
    """K_f^2 as a linear form ``{i: coefficient of s_i}``."""
    d = 2 * g + 1
    return _weights(
        g,
        Fraction(g - 1, d),
        Fraction((g - 1) * (3 * g + 1), d),
        lambda k: xiao_coefficients(g, k)[0] / d,
        lambda k: xiao_coefficients(g, k)[1] / d,
    )


def chi_weights(g: int) -> dict:
    """chi_f as a linear form ``{i: coefficient of s_i}``."""
    d = 2 * g + 1
    return _weights(
        g,
        Fraction(g, 4 * d),
        Fraction(g * g - 2 * g - 1, 4 * d),
        lambda k: Fraction(k * (g - k), d),
        lambda k: Fraction(k * (g - k + 1), 2 * d),
    )


def n_weights(g: int) -> dict:
    """``n = L^2/(g+1)`` as a linear form in the indices."""
    d = 2 * g + 1
    return _weights(
        g,
        Fraction(1, 2 * d),
        Fraction(g * g + 3 * g + 1, d),
        lambda k: Fraction(4 * k * k + 2 * k, d),
        lambda k: Fraction(2 * k * k - k, d),
    )


def _apply(weights: dict, s: SingularityIndexVector) -> Fraction:
    return sum((w * s[i] for i, w in weights.items()), Fraction(0))


def relative_invariants(s: SingularityIndexVector, warn: bool = False) -> RelativeInvariants:
    inv = RelativeInvariants(_apply(k2_weights(s.g), s), _apply(chi_weights(s.g), s))
    if warn and not inv.is_integral:
        warnings.warn(
            f"non-integral invariants K2 = {inv.k2}, chi = {inv.chi}", NonIntegralWarning
        )
    return inv


def slope(s: SingularityIndexVector) -> Fraction:
    return relative_invariants(s).slope()


def n_from_indices(s: SingularityIndexVector) -> Fraction:
    return _apply(n_weights(s.g), s)


def minus_one_count(s) -> Fraction:
    """Number of (-1)-curves to contract: ``2 s_{g+2} + sum_k s_{2k+1}``.

    Accepts a :class:`SingularityIndexVector` or a ``(g, {i: s_i})`` pair.
    """
    if isinstance(s, SingularityIndexVector):
        g, get = s.g, s.__getitem__
    else:
        g, entries = s
        get = lambda i: Fraction(entries.get(i, 0))  # noqa: E731
    return 2 * get(g + 2) + sum((get(2 * k + 1) for k in odd_ks(g)), Fraction(0))


# ---------------------------------------------------------------------------
# Coefficients certifying the lower bound


@dataclass(frozen=True)
class CoefficientSet:
    """Coefficients of ``K_f^2 - lambda*chi_f`` after eliminating ``s_2``.

    Dicts are keyed by ``k``: ``alpha_k`` multiplies ``s_{2k+1}`` for
    ``k < q_f``, ``beta_k`` multiplies ``s_{2k}`` for ``k <= q_f``,
    ``gamma_k`` multiplies ``s_{2k+1}`` for ``k >= q_f`` and ``delta_k``
    multiplies ``s_{2k}`` for ``k > q_f``; ``alpha`` multiplies ``s_{g+2}``.
    """

    profile: GenusProfile
    lam: Fraction
    alpha: Fraction
    alpha_k: dict
    beta_k: dict
    gamma_k: dict
    delta_k: dict

    def entries(self) -> Iterable:
        """Yield ``(name, value)`` for every coefficient."""
        yield "alpha", self.alpha
        for name in ("alpha_k", "beta_k", "gamma_k", "delta_k"):
            for k, v in getattr(self, name).items():
                yield f"{name[:-2]}_{k}", v

    def all_nonnegative(self) -> bool:
        return all(v >= 0 for _, v in self.entries())


def proof_coefficients(p: GenusProfile) -> CoefficientSet:
    if p.q_f < 1:
        raise ProfileError("coefficients are only defined for q_f >= 1")
    g, q = p.g, p.q_f
    lam = lambda_bound(p)
    alpha = (g - 1) * (8 - lam) / 4
    alpha_k = {k: k * k * lam - (2 * k - 1) ** 2 for k in range(1, q)}
    beta_k = {k: (k - 1) * (k * lam - 4 * (k - 1)) / 2 for k in range(2, q + 1)}
    gamma_k = {
        k: (8 * (4 * k * (g - k) - 1) - (4 * k * (g - k) + g) * lam) / (4 * (g + 1))
        for k in range(q, g // 2 + 1)
    }
    delta_k = {
        k: (k * (g + 1 - k) * (8 - lam) - 4 * (g + 1)) / (2 * (g + 1))
        for k in range(q + 1, (g + 1) // 2 + 1)
    }
    return CoefficientSet(p, lam, alpha, alpha_k, beta_k, gamma_k, delta_k)
