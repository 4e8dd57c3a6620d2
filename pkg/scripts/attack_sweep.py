"""Count detections of each attack over many seeded trials."""

import argparse
from collections import Counter
from dataclasses import dataclass

from hidden.protocols import attack
from hidden.protocols.attacks import SCENARIOS


@dataclass
class SweepConfig:
    trials: int = 100
    protocols: tuple = ("eg", "aggp")
    scenarios: tuple = SCENARIOS
    first_seed: int = 0


def sweep(cfg: SweepConfig):
    """Return ``{(protocol, scenario): Counter of verdict labels}``."""
    results = {}
    for protocol in cfg.protocols:
        for scenario in cfg.scenarios:
            tally = Counter()
            for seed in range(cfg.first_seed, cfg.first_seed + cfg.trials):
                v = attack(scenario, protocol, seed=seed).verdict
                tally["accepted" if v.ok else v.reason] += 1
            results[protocol, scenario] = tally
    return results


def main(cfg: SweepConfig):
    for (protocol, scenario), tally in sweep(cfg).items():
        summary = ", ".join(f"{k}: {v}" for k, v in sorted(tally.items()))
        print(f"{protocol:5} {scenario:16} {summary}")


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--trials", type=int, default=SweepConfig.trials)
    ap.add_argument("--protocol", choices=["eg", "aggp"], action="append")
    args = ap.parse_args()
    cfg = SweepConfig(trials=args.trials)
    if args.protocol:
        cfg.protocols = tuple(args.protocol)
    main(cfg)
