"""Deterministic random instance generation for the identity suite.

A trial's randomness is derived from (master seed, identity id, trial index)
alone, so any trial replays bit-for-bit regardless of execution order or
thread count.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .poly import ExpPoly, Poly

GAMMA_CHOICES = (Fraction(1), Fraction(1, 2), Fraction(2))
EXP_PAIR_CHOICES = (Fraction(-1), Fraction(0), Fraction(1))


@dataclass(frozen=True)
class SamplerConfig:
    n_range: tuple[int, int] = (0, 3)
    m_range: tuple[int, int] = (1, 3)
    max_degree: int = 5
    coefficient_bound: int = 9
    trials: int = 200
    master_seed: int = 42

    def __post_init__(self):
        if self.trials < 1:
            raise ValueError("trials must be >= 1")
        if self.max_degree < 1:
            raise ValueError("max_degree must be >= 1")


def trial_rng(config: SamplerConfig, identity_id: str, trial: int) -> random.Random:
    """Sub-seeded stream for one trial (string-seeded: stable across runs)."""
    return random.Random(f"{config.master_seed}:{identity_id}:{trial}")


def random_rational(rng: random.Random, bound: int) -> Fraction:
    return Fraction(rng.randint(-bound, bound), rng.randint(1, bound))


def random_poly(rng: random.Random, max_degree: int, bound: int,
                nonzero: bool = False) -> Poly:
    while True:
        degree = rng.randint(0, max_degree)
        p = Poly([random_rational(rng, bound) for _ in range(degree + 1)])
        if not nonzero or not p.is_zero():
            return p


def random_exp_poly(rng: random.Random, max_degree: int, bound: int,
                    nonzero: bool = False) -> ExpPoly:
    return ExpPoly(random_poly(rng, max_degree, bound, nonzero),
                   rng.choice(EXP_PAIR_CHOICES), rng.choice(EXP_PAIR_CHOICES))


def random_gamma(rng: random.Random) -> Fraction:
    return rng.choice(GAMMA_CHOICES)
