"""Trace the segment from a cubic h to its Bertini image and print every wall event."""
import argparse
import json
from dataclasses import asdict, dataclass

from dp1kit import fan
from dp1kit.classes import ClassKind, enumerate_kind
from dp1kit.lattice import SURFACE, unit


@dataclass
class Config:
    cubic_index: int = -1  # -1 means h itself
    as_json: bool = False


def main(cfg: Config) -> None:
    h = unit(SURFACE, 0) if cfg.cubic_index < 0 else enumerate_kind(ClassKind.CUBIC)[cfg.cubic_index]
    events = fan.lt_parametrization(h)
    if cfg.as_json:
        print(json.dumps({"config": asdict(cfg), "cubic": h.to_json(), "events": [e.to_json() for e in events]},
                         sort_keys=True, indent=2))
        return
    print(f"cubic {h}")
    for e in events:
        kinds = ",".join(sorted(k.name for k in e.kinds))
        print(f"t={str(e.t):>6}  walls={len(e.crossings):>3}  {kinds}")


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--cubic-index", type=int, default=-1)
    ap.add_argument("--json", dest="as_json", action="store_true")
    main(Config(**vars(ap.parse_args())))
