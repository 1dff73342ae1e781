"""Explicit saturating model families for the witness-augmented Bell bounds.

The 2-setting family mixes four deterministic symbol strategies with weights
(4+N)/12 on the three strategies scoring +2 and -N/4 on the one scoring -2,
where N in [0, 2] is the negativity budget.  Its n-setting generalization
keeps the same weights over four strategies scoring 2n-2 (three of them) and
2n-6 (the negatively weighted one), reaching score 2n-2+N with chained
witness exactly N.  Budgets above 2 stop producing valid behaviors, which is
why 2 is also the no-signalling ceiling for these families.

Build with `exact=True` to get `fractions.Fraction` weight and probability
entries; the assembled behavior is then exact (all entries are twelfths).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .core import Label, LocalResponse, Model, QuasiDist

PLUS = "+"
MINUS = "-"

_SIGN_VALUE = {PLUS: +1, MINUS: -1}


@dataclass(frozen=True)
class SymbolStrategy:
    """A deterministic strategy pair: one outcome symbol per setting per party."""

    symbols_A: tuple[str, ...]
    symbols_B: tuple[str, ...]

    def __post_init__(self) -> None:
        if len(self.symbols_A) != len(self.symbols_B):
            raise ValueError("both parties need one symbol per setting")
        if not self.symbols_A:
            raise ValueError("strategies need at least one setting")
        for sym in self.symbols_A + self.symbols_B:
            if sym not in _SIGN_VALUE:
                raise ValueError(f"symbols must be '+' or '-', got {sym!r}")

    @property
    def n_settings(self) -> int:
        return len(self.symbols_A)

    def signs_A(self) -> tuple[int, ...]:
        return tuple(_SIGN_VALUE[s] for s in self.symbols_A)

    def signs_B(self) -> tuple[int, ...]:
        return tuple(_SIGN_VALUE[s] for s in self.symbols_B)

    @classmethod
    def from_signs(cls, signs_a, signs_b) -> "SymbolStrategy":
        to_sym = {+1: PLUS, -1: MINUS}
        return cls(
            symbols_A=tuple(to_sym[s] for s in signs_a),
            symbols_B=tuple(to_sym[s] for s in signs_b),
        )


def _deterministic_row(sign: int, exact: bool) -> tuple:
    one = Fraction(1) if exact else 1.0
    zero = Fraction(0) if exact else 0.0
    return (zero, one) if sign == +1 else (one, zero)


def deterministic_strategy(
    strategy: SymbolStrategy, label: Label = "1", exact: bool = False
) -> tuple[LocalResponse, LocalResponse]:
    """Response pair for a single hidden value realizing the symbol strategy.

    The outcome at every setting is fixed by the symbol, so each expectation
    equals the symbol's sign.
    """
    n = strategy.n_settings
    table_a = {
        (x, label): _deterministic_row(s, exact) for x, s in enumerate(strategy.signs_A())
    }
    table_b = {
        (x, label): _deterministic_row(s, exact) for x, s in enumerate(strategy.signs_B())
    }
    resp_a = LocalResponse(party="A", n_settings=n, hidden_values=(label,), table=table_a)
    resp_b = LocalResponse(party="B", n_settings=n, hidden_values=(label,), table=table_b)
    return resp_a, resp_b


def model_from_strategies(strategies: dict[Label, SymbolStrategy], weights: dict) -> Model:
    """Diagonal model mixing one deterministic strategy per hidden value."""
    if set(strategies) != set(weights):
        raise ValueError("strategies and weights must cover the same labels")
    labels = tuple(strategies)
    n_values = {s.n_settings for s in strategies.values()}
    if len(n_values) != 1:
        raise ValueError("all strategies must share a setting count")
    (n,) = n_values
    exact = any(isinstance(w, Fraction) for w in weights.values())
    table_a = {}
    table_b = {}
    for label in labels:
        strat = strategies[label]
        for x, s in enumerate(strat.signs_A()):
            table_a[(x, label)] = _deterministic_row(s, exact)
        for x, s in enumerate(strat.signs_B()):
            table_b[(x, label)] = _deterministic_row(s, exact)
    resp_a = LocalResponse(party="A", n_settings=n, hidden_values=labels, table=table_a)
    resp_b = LocalResponse(party="B", n_settings=n, hidden_values=labels, table=table_b)
    return Model(response_A=resp_a, response_B=resp_b, dist=QuasiDist.diagonal(weights))


def saturating_strategies(n: int) -> dict[Label, SymbolStrategy]:
    """The four deterministic strategies of the n-setting saturating family.

    Labels "1".."3" score 2n-2 on the chained combination and carry positive
    weight; label "4" scores 2n-6 and carries the negative weight.
    """
    if n < 2:
        raise ValueError("the saturating family needs n >= 2")
    all_minus = (MINUS,) * n
    all_plus = (PLUS,) * n
    minus_then_plus = (MINUS,) * (n - 1) + (PLUS,)
    plus_then_minus = (PLUS,) + (MINUS,) * (n - 1)
    return {
        "1": SymbolStrategy(all_minus, minus_then_plus),
        "2": SymbolStrategy(plus_then_minus, all_minus),
        "3": SymbolStrategy(all_plus, all_plus),
        "4": SymbolStrategy(plus_then_minus, minus_then_plus),
    }


def saturating_weights(negativity, exact: bool = False) -> dict:
    """Weights (4+N)/12 on labels "1".."3" and -N/4 on "4"; sums to 1 for any N."""
    if exact:
        n_val = Fraction(negativity)
        positive = (4 + n_val) / 12
        negative = -n_val / 4
    else:
        n_val = float(negativity)
        positive = (4 + n_val) / 12.0
        negative = -n_val / 4.0
    return {"1": positive, "2": positive, "3": positive, "4": negative}


def chained_saturating_model(
    n: int, negativity, exact: bool = False, force: bool = False
) -> Model:
    """Four-strategy diagonal model saturating the n-setting bound at budget N.

    Requires 0 <= N <= 2 (the validity ceiling) unless `force` is set, which
    builds the out-of-range model for boundary exploration; its behavior will
    fail `validate_behavior` for N > 2.
    """
    if n < 2:
        raise ValueError("the saturating family needs n >= 2")
    if not force and not 0 <= negativity <= 2:
        raise ValueError(
            f"negativity budget {negativity!r} outside [0, 2]; pass force=True to "
            "build the invalid model anyway"
        )
    return model_from_strategies(
        saturating_strategies(n), saturating_weights(negativity, exact=exact)
    )


def chsh_saturating_model(negativity, exact: bool = False, force: bool = False) -> Model:
    """The 2-setting saturating family: score 2+N, case-selected witness N."""
    return chained_saturating_model(2, negativity, exact=exact, force=force)
