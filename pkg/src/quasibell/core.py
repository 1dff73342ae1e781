"""Core types for two-party Bell experiments with signed hidden-variable mixtures.

A model consists of one local response table per party and a normalized,
possibly signed, weight table over joint hidden-variable values.  Mixing the
per-value response tables with those weights yields the observable behavior
P(y_A, y_B | x_A, x_B).  Weights may be negative; the behavior is then not
guaranteed to be a valid probability table, which is why validity is a check
(`validate_behavior`) rather than a construction-time requirement.

All arithmetic is duck-typed: tables built from `float` entries stay in float,
tables built from `fractions.Fraction` entries stay exact.  Outcomes are
y in {-1, +1}; index 0 maps to -1 and index 1 to +1, so four-outcome rows are
ordered (--, -+, +-, ++).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Hashable, Mapping

DEFAULT_TOLERANCE = 1e-9

#: Outcome values in row order: index 0 <-> -1, index 1 <-> +1.
OUTCOMES = (-1, +1)

#: (y_A, y_B) pairs in the fixed four-column order --, -+, +-, ++.
OUTCOME_PAIRS = ((-1, -1), (-1, +1), (+1, -1), (+1, +1))

Label = Hashable
Point = tuple[Label, Label]


class StructureError(ValueError):
    """A table, support, or setting index is inconsistent with its container."""


def _check_prob_row(row, tol: float, where: str) -> None:
    if len(row) != 2:
        raise StructureError(f"{where}: expected a length-2 outcome row, got {row!r}")
    for p in row:
        if p < -tol or p > 1 + tol:
            raise StructureError(f"{where}: probability {p!r} outside [0, 1]")
    total = row[0] + row[1]
    if abs(total - 1) > tol:
        raise StructureError(f"{where}: outcome row sums to {total!r}, not 1")


@dataclass(frozen=True)
class LocalResponse:
    """Per-hidden-value conditional outcome tables for one party.

    `table` maps (setting, hidden value) to a probability row
    (P(y=-1), P(y=+1)).  Every setting in range(n_settings) must be paired
    with every hidden value.
    """

    party: str
    n_settings: int
    hidden_values: tuple[Label, ...]
    table: Mapping[tuple[int, Label], tuple]

    def __post_init__(self) -> None:
        if self.party not in ("A", "B"):
            raise StructureError(f"party must be 'A' or 'B', got {self.party!r}")
        if self.n_settings < 1:
            raise StructureError("n_settings must be positive")
        if not self.hidden_values:
            raise StructureError("hidden_values must be non-empty and finite")
        if len(set(self.hidden_values)) != len(self.hidden_values):
            raise StructureError("hidden_values contains duplicates")
        expected = {(x, lam) for x in range(self.n_settings) for lam in self.hidden_values}
        if set(self.table.keys()) != expected:
            missing = expected - set(self.table.keys())
            extra = set(self.table.keys()) - expected
            raise StructureError(
                f"response table keys mismatch (missing {sorted(map(str, missing))[:4]}, "
                f"extra {sorted(map(str, extra))[:4]})"
            )
        for key, row in self.table.items():
            _check_prob_row(row, DEFAULT_TOLERANCE, f"party {self.party}, (x, lambda)={key}")

    def prob(self, y: int, x: int, lam: Label):
        """P(y | x, lam) with y in {-1, +1}."""
        row = self.row(x, lam)
        return row[0] if y == -1 else row[1]

    def row(self, x: int, lam: Label) -> tuple:
        if not 0 <= x < self.n_settings:
            raise IndexError(f"setting {x} out of range for {self.n_settings} settings")
        if lam not in self.hidden_values:
            raise KeyError(f"unknown hidden value {lam!r}")
        return self.table[(x, lam)]


def local_expectation(response: LocalResponse, x: int, lam: Label):
    """Expectation of the +-1 outcome at setting `x` in the local scenario `lam`.

    Returns sum_y y * P(y | x, lam), always in [-1, 1].
    """
    p_minus, p_plus = response.row(x, lam)
    return p_plus - p_minus


@dataclass(frozen=True)
class QuasiDist:
    """Signed, normalized weight table over joint hidden-variable points.

    Weights must sum to 1 but may be negative.  Single-hidden-variable models
    are represented with a diagonal support (lam, lam); see `diagonal`.
    """

    support: tuple[Point, ...]
    weights: Mapping[Point, object]

    def __post_init__(self) -> None:
        if not self.support:
            raise StructureError("support must be non-empty")
        if len(set(self.support)) != len(self.support):
            raise StructureError("support contains duplicate points")
        if set(self.weights.keys()) != set(self.support):
            raise StructureError("weights keys must match support exactly")
        total = sum(self.weights[p] for p in self.support)
        if abs(total - 1) > DEFAULT_TOLERANCE:
            raise StructureError(f"weights sum to {total!r}, not 1")

    @classmethod
    def diagonal(cls, weights: Mapping[Label, object]) -> "QuasiDist":
        """Build a distribution over a single hidden variable, stored as (lam, lam)."""
        support = tuple((lam, lam) for lam in weights)
        return cls(support=support, weights={(lam, lam): w for lam, w in weights.items()})

    def is_all_positive(self) -> bool:
        return all(self.weights[p] >= 0 for p in self.support)

    def negative_mass(self):
        """Total weight below zero: sum of max(0, -w)."""
        return sum(-w for w in self.weights.values() if w < 0)

    def total_variation(self):
        """Sum of absolute weights; 1 for ordinary distributions."""
        return sum(abs(w) for w in self.weights.values())


@dataclass(frozen=True)
class Model:
    """Two local response tables mixed by a signed weight table."""

    response_A: LocalResponse
    response_B: LocalResponse
    dist: QuasiDist

    def __post_init__(self) -> None:
        values_a = set(self.response_A.hidden_values)
        values_b = set(self.response_B.hidden_values)
        for lam_a, lam_b in self.dist.support:
            if lam_a not in values_a or lam_b not in values_b:
                raise StructureError(
                    f"support point ({lam_a!r}, {lam_b!r}) does not index both response tables"
                )

    @property
    def n_settings(self) -> int:
        """Settings available to both parties."""
        return min(self.response_A.n_settings, self.response_B.n_settings)

    def is_diagonal(self) -> bool:
        return all(a == b for a, b in self.dist.support)


@dataclass(frozen=True)
class Behavior:
    """Observable table P(y_A, y_B | x_A, x_B), rows ordered (--, -+, +-, ++).

    Rows must be normalized within `tolerance`; entry positivity is checked
    separately by `validate_behavior` because signed mixtures can produce
    normalized rows with entries outside [0, 1].
    """

    n_settings_A: int
    n_settings_B: int
    table: Mapping[tuple[int, int], tuple]
    tolerance: float = DEFAULT_TOLERANCE

    def __post_init__(self) -> None:
        if self.n_settings_A < 1 or self.n_settings_B < 1:
            raise StructureError("setting counts must be positive")
        expected = {
            (xa, xb) for xa in range(self.n_settings_A) for xb in range(self.n_settings_B)
        }
        if set(self.table.keys()) != expected:
            raise StructureError("behavior table must have exactly one row per setting pair")
        for pair, row in self.table.items():
            if len(row) != 4:
                raise StructureError(f"row {pair}: expected 4 outcome entries")
            total = sum(row)
            if abs(total - 1) > self.tolerance:
                raise StructureError(f"row {pair} sums to {total!r}, not 1")

    def row(self, x_a: int, x_b: int) -> tuple:
        if not (0 <= x_a < self.n_settings_A and 0 <= x_b < self.n_settings_B):
            raise IndexError(f"setting pair ({x_a}, {x_b}) out of range")
        return self.table[(x_a, x_b)]

    def setting_pairs(self) -> list[tuple[int, int]]:
        return [
            (xa, xb) for xa in range(self.n_settings_A) for xb in range(self.n_settings_B)
        ]


@dataclass(frozen=True)
class ValidityReport:
    """Result of checking a behavior for entry validity and no-signalling."""

    is_valid: bool
    worst_entry: tuple[tuple[int, int], tuple[int, int], object]
    no_signalling_violation: object

    def to_json_dict(self) -> dict:
        (pair, outcomes, value) = self.worst_entry
        return {
            "is_valid": self.is_valid,
            "worst_entry": {
                "settings": list(pair),
                "outcomes": list(outcomes),
                "value": float(value),
            },
            "no_signalling_violation": float(self.no_signalling_violation),
        }


def assemble_behavior(model: Model, tolerance: float = DEFAULT_TOLERANCE) -> Behavior:
    """Mix the per-hidden-value response tables into the observable behavior.

    Entry (y_A, y_B | x_A, x_B) sums P_A(y_A | x_A, lam_A) *
    P_B(y_B | x_B, lam_B) * weight over the support points.  Rows are
    normalized automatically regardless of weight signs; entries may still
    fall outside [0, 1], which `validate_behavior` reports.
    """
    resp_a, resp_b = model.response_A, model.response_B
    weights = model.dist.weights
    table: dict[tuple[int, int], tuple] = {}
    for x_a in range(resp_a.n_settings):
        for x_b in range(resp_b.n_settings):
            mm = mp = pm = pp = 0
            for (lam_a, lam_b) in model.dist.support:
                w = weights[(lam_a, lam_b)]
                a_minus, a_plus = resp_a.table[(x_a, lam_a)]
                b_minus, b_plus = resp_b.table[(x_b, lam_b)]
                mm += a_minus * b_minus * w
                mp += a_minus * b_plus * w
                pm += a_plus * b_minus * w
                pp += a_plus * b_plus * w
            table[(x_a, x_b)] = (mm, mp, pm, pp)
    return Behavior(
        n_settings_A=resp_a.n_settings,
        n_settings_B=resp_b.n_settings,
        table=table,
        tolerance=tolerance,
    )


def correlation(behavior: Behavior, x_a: int, x_b: int):
    """Correlator E(x_A, x_B) = sum_y y_A y_B P(y_A, y_B | x_A, x_B)."""
    mm, mp, pm, pp = behavior.row(x_a, x_b)
    return mm - mp - pm + pp


def validate_behavior(behavior: Behavior, tol: float = DEFAULT_TOLERANCE) -> ValidityReport:
    """Check entry validity (all entries in [-tol, 1+tol]) and no-signalling.

    The no-signalling figure is the largest change of any single-party
    marginal outcome probability when the other party switches settings.
    """
    if tol < 0:
        raise ValueError("tolerance must be non-negative")
    worst_pair = worst_outcomes = None
    worst_value = None
    worst_excess = None
    for pair in behavior.setting_pairs():
        row = behavior.table[pair]
        for outcomes, value in zip(OUTCOME_PAIRS, row):
            excess = max(-value, value - 1)
            if worst_excess is None or excess > worst_excess:
                worst_excess = excess
                worst_pair, worst_outcomes, worst_value = pair, outcomes, value
    is_valid = worst_excess <= tol

    violation = 0
    # Alice's marginal P(y_A | x_A) must not depend on x_B.
    for x_a in range(behavior.n_settings_A):
        for y_index in (0, 1):
            marginals = []
            for x_b in range(behavior.n_settings_B):
                mm, mp, pm, pp = behavior.table[(x_a, x_b)]
                marginals.append((mm + mp) if y_index == 0 else (pm + pp))
            spread = max(marginals) - min(marginals)
            violation = max(violation, spread)
    # Bob's marginal P(y_B | x_B) must not depend on x_A.
    for x_b in range(behavior.n_settings_B):
        for y_index in (0, 1):
            marginals = []
            for x_a in range(behavior.n_settings_A):
                mm, mp, pm, pp = behavior.table[(x_a, x_b)]
                marginals.append((mm + pm) if y_index == 0 else (mp + pp))
            spread = max(marginals) - min(marginals)
            violation = max(violation, spread)

    return ValidityReport(
        is_valid=is_valid,
        worst_entry=(worst_pair, worst_outcomes, worst_value),
        no_signalling_violation=violation,
    )
