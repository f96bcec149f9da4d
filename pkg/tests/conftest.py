import random

import pytest

from projstark import PrimeField, SystemSpec, build_domain, simulate
from projstark.reference_example import SYSTEM


@pytest.fixture(scope="session")
def field():
    return PrimeField(331)


@pytest.fixture(scope="session")
def domain(field):
    return build_domain(field, 30)


@pytest.fixture(scope="session")
def paper_spec():
    return SYSTEM


@pytest.fixture(scope="session")
def paper_trace():
    return simulate(SYSTEM)


# moduli with plenty of even subgroup orders for randomized trials
TRIAL_MODULI = (61, 211, 331)


def even_subgroup_orders(q, cap=30):
    return [m for m in range(2, cap + 1, 2) if (q - 1) % m == 0]


def random_spec(rng: random.Random, q: int, n_max: int = 4, orders=None) -> SystemSpec:
    """System with small boxes so clamping is frequent and magnitudes stay below q."""
    n = rng.randint(1, n_max)
    m = rng.choice(orders if orders is not None else even_subgroup_orders(q))
    a_hat = [[rng.randint(-2, 2) for _ in range(n)] for _ in range(n)]
    cap = max(2, (q - 1) // (4 * n + 2))
    lowers, uppers, inits = [], [], []
    for _ in range(n):
        lo = rng.randint(0, cap - 1)
        hi = rng.randint(lo + 1, cap)
        lowers.append(lo)
        uppers.append(hi)
        inits.append(rng.randint(lo, hi))
    return SystemSpec(
        a_hat=tuple(tuple(r) for r in a_hat),
        z_upper=tuple(uppers),
        z_lower=tuple(lowers),
        z_init=tuple(inits),
        num_steps=m - 1,
    )


def random_challenges(rng: random.Random, q: int, spec: SystemSpec, num_queries: int) -> dict:
    """Injected challenge lists for replay-mode trials."""
    domain = build_domain(PrimeField(q), spec.num_steps + 1)
    excluded = {e.value for e in domain.elements}
    allowed = [x for x in range(1, q) if x not in excluded]
    return {
        "gammas": [rng.randint(1, q - 1) for _ in range(4 * spec.n)],
        "betas": [rng.randint(1, q - 1) for _ in range(64)],
        "sample_points": [rng.choice(allowed) for _ in range(num_queries)],
    }
