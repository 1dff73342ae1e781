"""Shared model builders and hypothesis strategies."""

from __future__ import annotations

import numpy as np
import pytest
from hypothesis import strategies as st

from quasibell import LocalResponse, Model, QuasiDist, assemble_behavior, validate_behavior


def stochastic_responses(rng, n_settings, labels):
    """Independent uniform-random outcome rows for both parties."""
    table_a, table_b = {}, {}
    for lam in labels:
        for x in range(n_settings):
            pa = float(rng.random())
            table_a[(x, lam)] = (1.0 - pa, pa)
            pb = float(rng.random())
            table_b[(x, lam)] = (1.0 - pb, pb)
    return (
        LocalResponse("A", n_settings, labels, table_a),
        LocalResponse("B", n_settings, labels, table_b),
    )


def random_positive_dist(rng, labels) -> QuasiDist:
    w = rng.random(len(labels))
    w = w / w.sum()
    return QuasiDist.diagonal({lam: float(w[i]) for i, lam in enumerate(labels)})


def random_signed_dist(rng, labels, force_negative=False) -> QuasiDist:
    """Normalized weights, possibly negative; optionally with one weight < 0."""
    k = len(labels)
    u = rng.random(k)
    u = u / u.sum()
    if force_negative:
        mag = float(rng.uniform(0.01, 0.25))
        w = (1 + mag) * u
        w[int(rng.integers(k))] = -mag
        w = w / w.sum()
    else:
        v = rng.random(k)
        v = v / v.sum()
        alpha = float(rng.uniform(0.0, 0.4))
        w = (1 + alpha) * u - alpha * v
        w = w / w.sum()
    return QuasiDist.diagonal({lam: float(w[i]) for i, lam in enumerate(labels)})


def random_model(rng, n_settings=2, max_points=6, force_negative=False) -> Model:
    k = int(rng.integers(2, max_points + 1))
    labels = tuple(str(i) for i in range(1, k + 1))
    resp_a, resp_b = stochastic_responses(rng, n_settings, labels)
    dist = random_signed_dist(rng, labels, force_negative=force_negative)
    return Model(resp_a, resp_b, dist)


def random_valid_model(rng, n_settings=2, max_points=6, alternate_negative=True):
    """Rejection-sample a model whose assembled behavior is valid."""
    force_negative = alternate_negative and bool(rng.integers(2))
    while True:
        model = random_model(rng, n_settings, max_points, force_negative=force_negative)
        behavior = assemble_behavior(model)
        if validate_behavior(behavior).is_valid:
            return model, behavior


def random_joint_model(rng, n_settings=2, k_a=2, k_b=3) -> Model:
    """Model whose support covers a full product of distinct per-party values."""
    labels_a = tuple(f"a{i}" for i in range(1, k_a + 1))
    labels_b = tuple(f"b{i}" for i in range(1, k_b + 1))
    table_a = {}
    for lam in labels_a:
        for x in range(n_settings):
            p = float(rng.random())
            table_a[(x, lam)] = (1.0 - p, p)
    table_b = {}
    for lam in labels_b:
        for x in range(n_settings):
            p = float(rng.random())
            table_b[(x, lam)] = (1.0 - p, p)
    support = tuple((la, lb) for la in labels_a for lb in labels_b)
    raw = rng.uniform(-1.0, 1.0, len(support))
    while abs(raw.sum()) < 0.3:
        raw = rng.uniform(-1.0, 1.0, len(support))
    raw = raw / raw.sum()
    weights = {point: float(raw[i]) for i, point in enumerate(support)}
    return Model(
        LocalResponse("A", n_settings, labels_a, table_a),
        LocalResponse("B", n_settings, labels_b, table_b),
        QuasiDist(support=support, weights=weights),
    )


@pytest.fixture
def rng():
    return np.random.default_rng(20260810)


# -- hypothesis strategies ---------------------------------------------------

def probability():
    return st.floats(min_value=0.0, max_value=1.0, allow_nan=False)


@st.composite
def diagonal_models(draw, n_settings=2, max_points=5, signed=True):
    """Random model over a diagonal support with stochastic responses."""
    k = draw(st.integers(min_value=1, max_value=max_points))
    labels = tuple(str(i) for i in range(1, k + 1))
    table_a, table_b = {}, {}
    for lam in labels:
        for x in range(n_settings):
            pa = draw(probability())
            table_a[(x, lam)] = (1.0 - pa, pa)
            pb = draw(probability())
            table_b[(x, lam)] = (1.0 - pb, pb)
    if signed:
        raw = draw(
            st.lists(
                st.floats(min_value=-2.0, max_value=2.0, allow_nan=False),
                min_size=k,
                max_size=k,
            ).filter(lambda ws: abs(sum(ws)) > 0.3)
        )
    else:
        raw = draw(
            st.lists(
                st.floats(min_value=0.0, max_value=2.0, allow_nan=False),
                min_size=k,
                max_size=k,
            ).filter(lambda ws: sum(ws) > 0.3)
        )
    total = sum(raw)
    weights = {lam: raw[i] / total for i, lam in enumerate(labels)}
    return Model(
        LocalResponse("A", n_settings, labels, table_a),
        LocalResponse("B", n_settings, labels, table_b),
        QuasiDist.diagonal(weights),
    )
