"""Satellite descriptions, witness families, and non-concordance
certificates.

A witness family consists of companion knots J_1 < J_2 < ... realized as
connected sums of even numbers of left-handed trefoils, so each J_i has
vanishing Arf invariant and signature integral rho_i = 4 m_i / 3.  The
multiplicities are the minimal even solutions of

    rho_1 > c          and       rho_(i+1) > c + 2g * rho_i,

where c is a caller-supplied universal bound for the ambient 3-manifold
(it exists but is not constructive, so it is a parameter here) and g is
the genus of the base surface.

Infecting the 2g bands of a genus-g base knot with copies of J_i leaves
the Seifert form untouched; distinguishing two members of the family
reduces to checking, for every nonzero pattern of indicator bits eps over
the 4g infection curves of the pair, that

    | sum_n eps_i^n rho_i  -  sum_n eps_j^n rho_j |  >  c.

A certificate records the verdict of this check for every pattern.  That
at least one bit is nonzero in the geometric situation follows from the
nonsingularity of the Blanchfield pairing; it is recorded as an assumption
rather than verified, since it concerns 4-manifold data this package does
not model.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import seifert
from .seifert import SeifertMatrix

BLANCHFIELD_ASSUMPTION = (
    "assumes at least one infection curve survives in the metabelian quotient "
    "for any slice pairing; this follows from nonsingularity of the rational "
    "Blanchfield form when the Alexander polynomial is not 1 and is not "
    "verified computationally"
)


@dataclass(frozen=True)
class InfectionCurve:
    """An unknotted curve linking one band of the base Seifert surface
    once; band_index is 1-based in 1..2g."""

    band_index: int
    family_tag: str = ""

    def to_json(self) -> dict:
        return {"band": self.band_index, "tag": self.family_tag}


@dataclass(frozen=True)
class KnotDescription:
    """A base Seifert matrix plus a finite tree of satellite infections.

    The infection curves lie in the complement of the base surface (they
    are band-linking curves, which miss it by construction), so every
    Seifert-form invariant of the description equals the base's.
    """

    base: SeifertMatrix
    infections: tuple[tuple[InfectionCurve, "KnotDescription"], ...] = ()
    name: str = ""

    def __post_init__(self):
        bands = 2 * self.base.genus
        for curve, _companion in self.infections:
            if not 1 <= curve.band_index <= bands:
                raise IndexError(
                    f"band index {curve.band_index} out of range 1..{bands}"
                )

    @property
    def is_trivial(self) -> bool:
        return self.base.size == 0 and not self.infections

    def to_json(self) -> dict:
        out: dict = {"seifert": self.base.to_json()}
        if self.name:
            out["name"] = self.name
        if self.infections:
            out["infections"] = [
                {"band": c.band_index, "tag": c.family_tag, "companion": kd.to_json()}
                for c, kd in self.infections
            ]
        return out


def seifert_matrix(kd: KnotDescription) -> SeifertMatrix:
    """Seifert matrix of a satellite description: the base's own matrix,
    since the infection curves miss the base surface."""
    return kd.base


def satellite_compose(
    base: KnotDescription,
    curves: Sequence[InfectionCurve],
    companions: Sequence[KnotDescription],
) -> KnotDescription:
    """Infect base along the given curves with the given companions.

    Trivial companions are dropped, so infecting with unknots normalizes
    back to the base description.  Raises IndexError on a band index
    outside 1..2g.
    """
    if len(curves) != len(companions):
        raise ValueError(
            f"{len(curves)} curves but {len(companions)} companions"
        )
    new = tuple(
        (c, kd) for c, kd in zip(curves, companions) if not kd.is_trivial
    )
    return KnotDescription(base.base, base.infections + new, base.name)


# ---------------------------------------------------------------------------
# witness families


@dataclass(frozen=True)
class WitnessFamily:
    """Companion family J_i = connected sum of m_i left trefoils."""

    c: Fraction
    genus: int
    multiplicities: tuple[int, ...]
    rho_values: tuple[Fraction, ...]

    @property
    def size(self) -> int:
        return len(self.multiplicities)

    @classmethod
    def from_multiplicities(cls, c, genus: int, multiplicities: Sequence[int]) -> "WitnessFamily":
        """Build a family with explicit multiplicities (for negative
        controls); each must be a positive even integer so that the Arf
        invariants vanish, but the growth recursion is not enforced."""
        c = Fraction(c)
        if c <= 0:
            raise ValueError("the universal bound c must be positive")
        if genus < 1:
            raise ValueError("genus must be at least 1")
        ms = tuple(int(m) for m in multiplicities)
        if not ms:
            raise ValueError("at least one companion is required")
        for m in ms:
            if m <= 0 or m % 2:
                raise ValueError(f"multiplicity {m} is not a positive even integer")
        return cls(c, genus, ms, tuple(Fraction(4 * m, 3) for m in ms))

    def companion(self, i: int) -> SeifertMatrix:
        """Seifert matrix of J_i (1-based): m_i left-handed trefoils."""
        m = self.multiplicities[i - 1]
        out = seifert.unknot()
        trefoil = seifert.left_trefoil()
        for _ in range(m):
            out = seifert.connected_sum(out, trefoil)
        return out

    def companion_description(self, i: int) -> KnotDescription:
        return KnotDescription(self.companion(i), name=f"J{i}")

    def infected(self, base: KnotDescription, i: int) -> KnotDescription:
        """The i-th member of the family over the given base: every band of
        the base surface is infected with a copy of J_i."""
        bands = 2 * base.base.genus
        curves = [InfectionCurve(b, f"J{i}") for b in range(1, bands + 1)]
        companions = [self.companion_description(i) for _ in range(bands)]
        return satellite_compose(base, curves, companions)

    def to_json(self) -> dict:
        return {
            "c": str(self.c),
            "genus": self.genus,
            "multiplicities": list(self.multiplicities),
            "rho_values": [str(r) for r in self.rho_values],
        }


def _minimal_even_above(threshold: Fraction) -> int:
    return 2 * (int(threshold // 2) + 1)


def build_witness_family(c, g: int, N: int) -> WitnessFamily:
    """Minimal witness family of size N over a genus-g base.

    m_1 is the least even integer with 4 m / 3 > c, and m_(i+1) the least
    even integer with 4 m / 3 > c + 2g * (4 m_i / 3).  Ties cannot occur:
    the thresholds are strict rational inequalities.
    """
    c = Fraction(c)
    if c <= 0:
        raise ValueError("the universal bound c must be positive")
    if g < 1:
        raise ValueError("genus must be at least 1")
    if N < 1:
        raise ValueError("family size must be at least 1")
    ms: list[int] = []
    threshold = c
    for _ in range(N):
        m = _minimal_even_above(threshold * Fraction(3, 4))
        ms.append(m)
        threshold = c + 2 * g * Fraction(4 * m, 3)
    fam = WitnessFamily.from_multiplicities(c, g, ms)
    assert fam.rho_values[0] > c
    assert all(
        fam.rho_values[i + 1] > c + 2 * g * fam.rho_values[i]
        for i in range(N - 1)
    )
    return fam


# ---------------------------------------------------------------------------
# certificates


@dataclass(frozen=True)
class PatternResult:
    eps_i: tuple[int, ...]
    eps_j: tuple[int, ...]
    value: Fraction
    passes: bool

    def to_json(self) -> dict:
        return {
            "eps_i": list(self.eps_i),
            "eps_j": list(self.eps_j),
            "value": str(self.value),
            "passes": self.passes,
        }


@dataclass(frozen=True)
class Certificate:
    """Exhaustive pattern check for one pair (i, j) of family members."""

    pair: tuple[int, int]
    c: Fraction
    genus: int
    pattern_results: tuple[PatternResult, ...]
    assumption_note: str = BLANCHFIELD_ASSUMPTION

    @property
    def valid(self) -> bool:
        return all(p.passes for p in self.pattern_results)

    @property
    def pattern_count(self) -> int:
        return len(self.pattern_results)

    def worst_margin(self) -> Fraction:
        """Smallest |value| over all patterns; the certificate is valid
        exactly when this exceeds c."""
        return min(abs(p.value) for p in self.pattern_results)

    def to_json(self, include_patterns: bool = True) -> dict:
        out = {
            "pair": list(self.pair),
            "c": str(self.c),
            "genus": self.genus,
            "valid": self.valid,
            "pattern_count": self.pattern_count,
            "worst_margin": str(self.worst_margin()),
            "assumption_note": self.assumption_note,
        }
        if include_patterns:
            out["patterns"] = [p.to_json() for p in self.pattern_results]
        return out


def certify_pair(fam: WitnessFamily, i: int, j: int) -> Certificate:
    """Enumerate all 2^(4g) - 1 nonzero indicator patterns over the 4g
    infection curves of the pair (i, j) and check |value| > c for each.

    This is stronger than splitting into the two contradiction cases
    (some eps_j set: value <= 2g rho_i - rho_j < -c; only eps_i set:
    value >= rho_i > c): a single check implies both.
    """
    if not 1 <= i < j <= fam.size:
        raise ValueError(f"need 1 <= i < j <= {fam.size}, got ({i}, {j})")
    bands = 2 * fam.genus
    rho_i = fam.rho_values[i - 1]
    rho_j = fam.rho_values[j - 1]
    results = []
    for bits in itertools.product((0, 1), repeat=2 * bands):
        if not any(bits):
            continue
        eps_i, eps_j = bits[:bands], bits[bands:]
        value = sum(eps_i) * rho_i - sum(eps_j) * rho_j
        results.append(PatternResult(eps_i, eps_j, value, abs(value) > fam.c))
    return Certificate((i, j), fam.c, fam.genus, tuple(results))


def nonconcordance_report(fam: WitnessFamily) -> list[Certificate]:
    """Certificates for every pair i < j; the family is certified mutually
    distinct in concordance exactly when all of them are valid."""
    if fam.size < 2:
        raise ValueError("a non-concordance report needs at least two family members")
    return [
        certify_pair(fam, i, j)
        for i in range(1, fam.size + 1)
        for j in range(i + 1, fam.size + 1)
    ]
