"""Sizes of every cone in the dictionary, with timings, plus the duality and chain checks."""
import argparse
import time
from dataclasses import dataclass

from dp1kit import cones


@dataclass
class Config:
    verify: bool = True


def main(cfg: Config) -> None:
    for name in cones.CONE_NAMES:
        t0 = time.perf_counter()
        c = cones.build_cone(name)
        dt = time.perf_counter() - t0
        print(f"{name:8} generators={len(c.generators):6} inequalities={len(c.inequality_normals):6} "
              f"rep={c.authoritative_rep.value:12} ({dt:.2f}s)")
    if not cfg.verify:
        return
    for a, b in (("NE", "NEF"), ("N", "N_DUAL"), ("E", "E_DUAL")):
        t0 = time.perf_counter()
        r = cones.verify_dual_pair(cones.build_cone(a), cones.build_cone(b))
        print(f"dual {a}/{b}: ok={r.ok} rays={r.cone_rays}/{r.dual_rays} ({time.perf_counter() - t0:.2f}s)")
    print(f"chain: {cones.verify_chain()}")


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--no-verify", dest="verify", action="store_false")
    main(Config(**vars(ap.parse_args())))
