"""Relative (fractional) ideals of a numerical semigroup.

A relative ideal is a set E of integers, bounded below, with E + H inside E.
It is stored as its minimal generators: no generator lies in another
generator's translate of H.  These sets are the ground-truth route to the
canonical trace ideal in dimension one: every homomorphism from a fractional
ideal into the ring is multiplication by an element of the colon ideal, so
the trace of the canonical ideal K is K + (H - K).
"""

from __future__ import annotations

import json

from .errors import BaseMismatch
from .semigroup import NumericalSemigroup


def _minimalize(H: NumericalSemigroup, values) -> tuple[int, ...]:
    """Keep the elements not reachable from a smaller one by adding H."""
    kept: list[int] = []
    for g in sorted(set(values)):
        if not any(H.contains(g - g0) for g0 in kept):
            kept.append(g)
    return tuple(kept)


class RelativeIdeal:
    """Fractional ideal of a numerical semigroup, in normal form."""

    __slots__ = ("base", "generators")

    def __init__(self, base: NumericalSemigroup, generators):
        if not generators:
            raise ValueError("a relative ideal needs at least one generator")
        self.base = base
        self.generators = _minimalize(base, generators)

    # -- membership and comparisons ---------------------------------------

    def contains(self, z: int) -> bool:
        return any(self.base.contains(z - g) for g in self.generators)

    def minimum(self) -> int:
        return self.generators[0]

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, RelativeIdeal)
            and self.base == other.base
            and self.generators == other.generators
        )

    def __hash__(self):
        return hash((self.base, self.generators))

    def __le__(self, other: "RelativeIdeal") -> bool:
        if self.base != other.base:
            raise BaseMismatch("cannot compare ideals over different semigroups")
        return all(other.contains(g) for g in self.generators)

    def is_translate_of(self, other: "RelativeIdeal") -> bool:
        """True iff self = other + d for the integer d aligning the minima."""
        if self.base != other.base:
            raise BaseMismatch("cannot compare ideals over different semigroups")
        d = self.minimum() - other.minimum()
        return self.generators == tuple(g + d for g in other.generators)

    # -- arithmetic --------------------------------------------------------

    def add(self, other: "RelativeIdeal") -> "RelativeIdeal":
        """Minkowski sum, generated by pairwise sums of generators."""
        if self.base != other.base:
            raise BaseMismatch("cannot add ideals over different semigroups")
        sums = {a + b for a in self.generators for b in other.generators}
        return RelativeIdeal(self.base, sums)

    def colon(self, other: "RelativeIdeal") -> "RelativeIdeal":
        """The ideal {z : z + other is contained in self}.

        Membership of z only requires checking the generators of ``other``.
        Everything at or past min(self) + F + 1 - min(other gens) is a
        member, so the minimum of the colon exists inside a finite scan;
        minimal generators then live within one Frobenius number of that
        minimum, and the element just past that range is asserted as a
        sentinel.
        """
        if self.base != other.base:
            raise BaseMismatch("cannot divide ideals over different semigroups")
        H = self.base
        F = H.frobenius()
        lo = self.minimum() - max(other.generators)
        threshold = self.minimum() + F + 1 - min(other.generators)

        def member(z: int) -> bool:
            return all(self.contains(z + g) for g in other.generators)

        low = next(z for z in range(lo, threshold + 1) if member(z))
        members = [z for z in range(low, low + F + 1) if member(z)]
        if not member(low + F + 1):  # sentinel: just past the window is inside
            raise AssertionError("colon window sentinel failed; bound reasoning broken")
        return RelativeIdeal(H, members)

    # -- serialization -----------------------------------------------------

    def to_json(self) -> dict:
        return {"base": self.base.to_json(), "generators": list(self.generators)}

    @classmethod
    def from_json(cls, data) -> "RelativeIdeal":
        if isinstance(data, str):
            data = json.loads(data)
        return cls(NumericalSemigroup.from_json(data["base"]), data["generators"])

    def __repr__(self):
        return f"RelativeIdeal({self.base!r}, {list(self.generators)})"

    def __str__(self):
        return "(" + ", ".join(str(g) for g in self.generators) + ") + " + str(self.base)


def from_generators(H: NumericalSemigroup, gens) -> RelativeIdeal:
    return RelativeIdeal(H, gens)


def unit_ideal(H: NumericalSemigroup) -> RelativeIdeal:
    """H itself viewed as the relative ideal generated by 0."""
    return RelativeIdeal(H, [0])


def canonical_ideal(H: NumericalSemigroup) -> RelativeIdeal:
    """The canonical ideal K = {x : F - x not in H}.

    Its minimal generators are exactly F - f over the pseudo-Frobenius
    numbers f; that identity is recomputed here and checked rather than
    assumed.
    """
    F = H.frobenius()
    members = [x for x in range(0, F + 1) if not H.contains(F - x)]
    K = RelativeIdeal(H, members)
    expected = tuple(sorted(F - f for f in H.pseudo_frobenius()))
    if K.generators != expected:
        raise AssertionError(
            f"canonical ideal generators {K.generators} differ from {expected}"
        )
    return K


def trace_canonical_oracle(H: NumericalSemigroup) -> RelativeIdeal:
    """Ground-truth canonical trace ideal: K + (H - K)."""
    K = canonical_ideal(H)
    return K.add(unit_ideal(H).colon(K))


def is_nearly_gorenstein_oracle(H: NumericalSemigroup) -> bool:
    """True iff every minimal generator of H lies in the canonical trace ideal."""
    tr = trace_canonical_oracle(H)
    return all(tr.contains(a) for a in H.generators)
