import random
from fractions import Fraction

from wignerexp import EnsembleParams


def random_valid_params(rng: random.Random) -> EnsembleParams:
    """Random exact-rational parameters satisfying every invariant.

    alpha is built as sigma2^2 (1 + excess) with excess >= 0, so the
    fourth-moment inequality holds with equality reachable.
    """
    sigma2 = Fraction(rng.randint(1, 8), rng.randint(1, 8))
    s2 = Fraction(rng.randint(0, 8), rng.randint(1, 8))
    excess = Fraction(rng.randint(0, 12), rng.randint(1, 6))
    return EnsembleParams(
        r=rng.randint(0, 1),
        sigma2=sigma2,
        s2=s2,
        alpha=sigma2**2 * (1 + excess),
    )
