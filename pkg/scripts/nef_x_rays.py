"""Extremal rays of the nef cone of the blown-up fourfold, grouped by degree."""
import argparse
from collections import Counter
from dataclasses import dataclass

from dp1kit import bridge


@dataclass
class Config:
    show: int = 10


def main(cfg: Config) -> None:
    rays = bridge.nef_x_rays()
    print(f"{len(rays)} rays; matches chamber closure: {bridge.nef_x_matches_chamber_closure()}")
    for d, n in sorted(Counter(r.coeffs[0] for r in rays).items()):
        print(f"  degree {d}: {n}")
    for r in list(rays)[: cfg.show]:
        print(f"  {r}")


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--show", type=int, default=10)
    main(Config(**vars(ap.parse_args())))
