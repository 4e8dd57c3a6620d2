"""Search for an ElGamal prime p = 3 mod 4 whose p^2-1 factors quickly.

Prints p, the distinct prime factors of p^2-1 and a generator, ready to be
pasted into a scenario config.
"""

import argparse
import json
import random
import time
from dataclasses import dataclass

from hidden.gaussian import GModRing, find_generator
from hidden.numtheory import eg_parameters


@dataclass
class SearchConfig:
    bits: int = 128
    seed: int = 128


def main(cfg: SearchConfig):
    rng = random.Random(cfg.seed)
    start = time.perf_counter()
    p, factors = eg_parameters(cfg.bits, rng)
    gamma = find_generator(GModRing(p), factors, rng)
    print(json.dumps({
        "p": str(p),
        "order_factors": [str(q) for q in factors],
        "gamma": str(gamma),
        "largest_factor_bits": max(factors).bit_length(),
        "seconds": round(time.perf_counter() - start, 2),
    }, indent=2))


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--bits", type=int, default=SearchConfig.bits)
    ap.add_argument("--seed", type=int, default=SearchConfig.seed)
    args = ap.parse_args()
    main(SearchConfig(args.bits, args.seed))
