"""Check the complementary-minor identity on random exact configurations of 8 points in P^2."""
import argparse
import random
from dataclasses import dataclass

from dp1kit import gale


@dataclass
class Config:
    trials: int = 20
    seed: int = 0
    bound: int = 20


def main(cfg: Config) -> None:
    rng = random.Random(cfg.seed)
    ok = 0
    for _ in range(cfg.trials):
        A = gale.random_configuration(rng, 2, 8, cfg.bound)
        B = gale.associate(A)
        rep = gale.verify_minor_identity(A, B)
        pos = gale.del_pezzo_position(A)
        ok += rep.ok
        print(f"pairs={rep.checked} violations={len(rep.violations)} del_pezzo={pos.ok} {pos.reason}")
    print(f"{ok}/{cfg.trials} configurations satisfy the identity")


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--trials", type=int, default=20)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--bound", type=int, default=20)
    main(Config(**vars(ap.parse_args())))
