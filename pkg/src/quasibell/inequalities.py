"""Bell scores, per-hidden-value scores, and the witness-augmented bounds.

The 2-setting score is |E(0,0) - E(0,1) + E(1,0) + E(1,1)|; its n-setting
chained generalization is

    |sum_i E(i, i) + sum_{i>=1} E(i, i-1) - E(0, n-1)|.

For an all-positive mixture these are classically bounded by 2 and 2n-2.
Allowing signed weights relaxes each bound by the matching negativity
witness, and `check_quasi_bell` evaluates score, bound, and margin together.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import (
    DEFAULT_TOLERANCE,
    Behavior,
    Model,
    Point,
    assemble_behavior,
    correlation,
    local_expectation,
)
from .witnesses import witness_chained, witness_chsh


@dataclass(frozen=True)
class ScoreReport:
    """A Bell score against its witness-augmented bound.

    `bound` is `classical_part + witness_total`; `margin` is the slack
    `bound - score` (zero for saturating models).  `lambda_mixture_score` is
    the same score recomputed as |sum_lambda M(lambda) w(lambda)| from the
    per-hidden-value scores, a cross-check that must agree with `score`.
    """

    n: int
    score: object
    bound: object
    witness_total: object
    classical_part: object
    holds: bool
    margin: object
    lambda_mixture_score: object

    def to_json_dict(self) -> dict:
        return {
            "n": self.n,
            "score": float(self.score),
            "bound": float(self.bound),
            "witness": float(self.witness_total),
            "classical_part": float(self.classical_part),
            "holds": self.holds,
            "margin": float(self.margin),
            "lambda_mixture_score": float(self.lambda_mixture_score),
        }


def chsh_score(behavior: Behavior):
    """|E(0,0) - E(0,1) + E(1,0) + E(1,1)|, needs 2 settings per party."""
    if behavior.n_settings_A < 2 or behavior.n_settings_B < 2:
        raise ValueError("CHSH score needs at least 2 settings per party")
    return abs(
        correlation(behavior, 0, 0)
        - correlation(behavior, 0, 1)
        + correlation(behavior, 1, 0)
        + correlation(behavior, 1, 1)
    )


def chained_score(behavior: Behavior, n: int):
    """Chained n-setting score; its n=2 instance equals the CHSH score."""
    if n < 2:
        raise ValueError("chained score needs n >= 2")
    if behavior.n_settings_A < n or behavior.n_settings_B < n:
        raise ValueError(
            f"chained score with n={n} needs {n} settings per party, behavior has "
            f"({behavior.n_settings_A}, {behavior.n_settings_B})"
        )
    total = 0
    for i in range(n):
        total += correlation(behavior, i, i)
    for i in range(1, n):
        total += correlation(behavior, i, i - 1)
    total -= correlation(behavior, 0, n - 1)
    return abs(total)


def lambda_local_score(model: Model, lam, n: int):
    """Score M(lambda) the chained combination assigns to one hidden value.

    `lam` is a support point (lam_A, lam_B); for diagonal models a bare label
    is accepted.  |M(lambda)| <= 2n-2 because every factor is in [-1, 1].
    """
    if n < 2:
        raise ValueError("lambda-local score needs n >= 2")
    point: Point
    if isinstance(lam, tuple) and lam in model.dist.weights:
        point = lam
    elif (lam, lam) in model.dist.weights:
        point = (lam, lam)
    else:
        raise KeyError(f"hidden value {lam!r} not in the support")
    lam_a, lam_b = point
    exp_a = [local_expectation(model.response_A, i, lam_a) for i in range(n)]
    exp_b = [local_expectation(model.response_B, i, lam_b) for i in range(n)]
    total = sum(exp_a[i] * exp_b[i] for i in range(n))
    total += sum(exp_a[i] * exp_b[i - 1] for i in range(1, n))
    total -= exp_a[0] * exp_b[n - 1]
    return total


def mixture_score(model: Model, n: int):
    """|sum_lambda M(lambda) w(lambda)|; equals the chained score of the behavior."""
    total = sum(
        lambda_local_score(model, point, n) * model.dist.weights[point]
        for point in model.dist.support
    )
    return abs(total)


def check_quasi_bell(model: Model, n: int, tol: float = DEFAULT_TOLERANCE) -> ScoreReport:
    """Evaluate score <= (2n-2) + witness for a model at chain length n.

    The n=2 path scores the CHSH combination and uses the 2-setting
    case-selected witness; longer chains use the chained score and witness.
    """
    if n < 2:
        raise ValueError("bound check needs n >= 2")
    behavior = assemble_behavior(model)
    if n == 2:
        score = chsh_score(behavior)
        witness_total = witness_chsh(model, behavior).selected
    else:
        score = chained_score(behavior, n)
        witness_total = witness_chained(model, n, behavior).total
    classical_part = 2 * n - 2
    bound = classical_part + witness_total
    margin = bound - score
    return ScoreReport(
        n=n,
        score=score,
        bound=bound,
        witness_total=witness_total,
        classical_part=classical_part,
        holds=score <= bound + tol,
        margin=margin,
        lambda_mixture_score=mixture_score(model, n),
    )
