"""Command-line interface.

Exit codes: 0 success, 1 domain or usage error, 2 verification failure.
Class literals are JSON arrays ``[d,m1,...,m8]`` of integers or ``"p/q"``
strings, or objects ``{"basis": "S", "coeffs": [...]}``.  Floating point
literals are rejected.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass, field
from typing import Any, Optional

from . import acceptance, bridge, classes, fan, gale, walk
from .errors import DomainError
from .lattice import FOURFOLD, FOURFOLD_CURVE, SURFACE, AnyClass, make

EXIT_OK, EXIT_DOMAIN, EXIT_VERIFY = 0, 1, 2


@dataclass
class CommandConfig:
    subcommand: str
    args: dict = field(default_factory=dict)
    fmt: str = "json"
    basis: Optional[str] = None
    seed: int = acceptance.DEFAULT_SEED
    orbit_cap: int = classes.DEFAULT_ORBIT_CAP


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        raise SystemExit(EXIT_DOMAIN)


def _reject_float(s):
    raise DomainError(f"floating point literal {s} rejected")


def parse_class(text: str, default_basis: str) -> AnyClass:
    try:
        obj = json.loads(text, parse_float=_reject_float)
    except json.JSONDecodeError as exc:
        raise DomainError(f"malformed class literal {text!r}: {exc.msg}") from None
    basis = default_basis
    if isinstance(obj, dict):
        basis = {"S": SURFACE, "X": FOURFOLD, "XC": FOURFOLD_CURVE}.get(obj.get("basis"), None)
        if basis is None:
            raise DomainError(f"unknown basis in {text!r}")
        obj = obj.get("coeffs")
    if not isinstance(obj, list) or len(obj) != 9:
        raise DomainError(f"class literal needs 9 coefficients: {text!r}")
    return make(basis, [gale._to_fraction(v) for v in obj])


# -- output -------------------------------------------------------------------

def _emit(payload: Any, fmt: str, rows: Optional[list[dict]] = None, columns: Optional[list[str]] = None) -> str:
    if fmt == "csv" and rows is not None:
        buf = io.StringIO()
        w = csv.DictWriter(buf, fieldnames=columns, lineterminator="\n")
        w.writeheader()
        for r in rows:
            w.writerow(r)
        return buf.getvalue()
    return json.dumps(payload, sort_keys=True, indent=2) + "\n"


def _coeff_str(c: AnyClass) -> str:
    return " ".join(str(v) for v in c.coeffs)


def _class_rows(items: list[AnyClass]) -> list[dict]:
    return [{"basis": c.basis, "d": c.coeffs[0], **{f"m{i}": c.coeffs[i] for i in range(1, 9)}} for c in items]


CLASS_COLUMNS = ["basis", "d"] + [f"m{i}" for i in range(1, 9)]


# -- subcommands -----------------------------------------------------------------

def cmd_enumerate(cfg: CommandConfig) -> tuple[int, str]:
    kind = classes.parse_kind(cfg.args["kind"])
    classes.orbit_tuples(classes.SEEDS[kind], cfg.orbit_cap)
    items = classes.enumerate_kind(kind)
    summary = f"# {kind.name}: {len(items)} classes\n"
    out = _emit({"kind": kind.name, "count": len(items), "classes": [c.to_json() for c in items]},
                cfg.fmt, _class_rows(items), CLASS_COLUMNS)
    return EXIT_OK, out + (summary if cfg.fmt == "csv" else "")


def cmd_walls(cfg: CommandConfig) -> tuple[int, str]:
    if cfg.args.get("through"):
        walls = fan.walls_through(parse_class(cfg.args["through"], cfg.basis or SURFACE))
    else:
        walls = list(fan.all_walls())
    rows = [{"kind": w.kind.name, "center": _coeff_str(w.center), "normal": _coeff_str(w.normal)} for w in walls]
    return EXIT_OK, _emit({"count": len(walls), "walls": [w.to_json() for w in walls]}, cfg.fmt, rows,
                          ["kind", "center", "normal"])


def cmd_chamber(cfg: CommandConfig) -> tuple[int, str]:
    L = parse_class(cfg.args["cls"], cfg.basis or SURFACE)
    c = fan.chamber_of(L)
    st = fan.moduli_status(L)
    payload = {
        "label": c.label.name if c.label else None,
        "witness": c.label.witness.to_json() if c.label and c.label.witness else None,
        "representative": c.representative.to_json(),
        "negative_walls": len(c.negative_walls()),
        "walls_through": [w.to_json() for w in fan.walls_through(L)],
        "moduli": st.status.name,
        "special_loci": [{"kind": l.kind.name, "class": l.cls.to_json(), "ext": list(l.ext_dimensions)} for l in st.loci],
    }
    row = {"label": payload["label"], "moduli": payload["moduli"], "negative_walls": payload["negative_walls"],
           "walls_through": len(payload["walls_through"])}
    return EXIT_OK, _emit(payload, cfg.fmt, [row], list(row))


def cmd_path(cfg: CommandConfig) -> tuple[int, str]:
    L0 = parse_class(cfg.args["L0"], cfg.basis or SURFACE)
    L1 = parse_class(cfg.args["L1"], cfg.basis or SURFACE)
    events = fan.cross_path(L0, L1)
    rows = [{"t": str(ev.t), "walls": len(ev.crossings), "kind": ";".join(sorted(k.name for k in ev.kinds)),
             "centers": ";".join(_coeff_str(c) for c in ev.centers)} for ev in events]
    return EXIT_OK, _emit({"events": [ev.to_json() for ev in events]}, cfg.fmt, rows, ["t", "walls", "kind", "centers"])


def cmd_walk(cfg: CommandConfig) -> tuple[int, str]:
    L0 = parse_class(cfg.args["L0"], cfg.basis or SURFACE)
    L1 = parse_class(cfg.args["L1"], cfg.basis or SURFACE)
    log = walk.walk(L0, L1)
    payload = log.to_json()
    if cfg.args.get("invariants"):
        payload["final"] = list(log.final.as_tuple())
        payload["chi_tangent_final"] = walk.chi_tangent(log.final) if log.absolute else None
    rows = [{"t": str(e.event.t), "kind": e.transformation.name, "count": e.count,
             "b2": e.after.b2, "b3": e.after.b3, "b4": e.after.b4, "K4": e.after.K4, "h0": e.after.h0_minusK,
             "certified": e.certified} for e in log.entries]
    return EXIT_OK, _emit(payload, cfg.fmt, rows, ["t", "kind", "count", "b2", "b3", "b4", "K4", "h0", "certified"])


def _single(cfg, value: AnyClass, name: str) -> tuple[int, str]:
    return EXIT_OK, _emit({name: value.to_json()}, cfg.fmt, _class_rows([value]), CLASS_COLUMNS)


def cmd_rho(cfg: CommandConfig) -> tuple[int, str]:
    x = parse_class(cfg.args["cls"], cfg.basis or SURFACE)
    if x.basis == FOURFOLD:
        return _single(cfg, bridge.rho_inverse(x), "rho_inverse")
    return _single(cfg, bridge.rho(x), "rho")


def cmd_zeta(cfg: CommandConfig) -> tuple[int, str]:
    g = parse_class(cfg.args["cls"], FOURFOLD_CURVE)
    return _single(cfg, bridge.zeta(make(FOURFOLD_CURVE, g.coeffs)), "zeta")


def cmd_bertini_x(cfg: CommandConfig) -> tuple[int, str]:
    x = parse_class(cfg.args["cls"], cfg.basis or FOURFOLD)
    return _single(cfg, bridge.bertini_on_X(make(FOURFOLD, x.coeffs)), "image")


def cmd_fixed_divisors(cfg: CommandConfig) -> tuple[int, str]:
    conics = classes.enumerate_kind(classes.ClassKind.CONIC)
    pairs = [(C, bridge.fixed_divisor_class(C)) for C in conics]
    rows = [{"conic": _coeff_str(C), "divisor": _coeff_str(D), "degree": D.coeffs[0]} for C, D in pairs]
    payload = {"count": len(pairs), "fixed_divisors": [{"conic": C.to_json(), "divisor": D.to_json()} for C, D in pairs]}
    return EXIT_OK, _emit(payload, cfg.fmt, rows, ["conic", "divisor", "degree"])


def cmd_associate(cfg: CommandConfig) -> tuple[int, str]:
    A = gale.load_configuration(cfg.args["points"])
    B = gale.associate(A)
    payload = B.to_json()
    rows = [{"point": j, "coords": " ".join(str(v) for v in B.column(j))} for j in range(B.n)]
    return EXIT_OK, _emit(payload, cfg.fmt, rows, ["point", "coords"])


def cmd_verify_all(cfg: CommandConfig) -> tuple[int, str]:
    results = acceptance.run_all(cfg.seed)
    ok = all(r.passed for r in results)
    if cfg.fmt == "json" and cfg.args.get("json"):
        out = _emit({"passed": ok, "criteria": [vars(r) for r in results]}, "json")
    else:
        out = "\n".join(r.line() for r in results) + f"\n{sum(r.passed for r in results)}/{len(results)} criteria passed\n"
    return (EXIT_OK if ok else EXIT_VERIFY), out


def cmd_surface_profile(cfg: CommandConfig) -> tuple[int, str]:
    h = parse_class(cfg.args["cubic"], SURFACE)
    l = parse_class(cfg.args["curve"], SURFACE)
    p = walk.special_surface_profile(h, l)
    payload = {"d": p.d, "description": p.description, "degree": p.degree,
               "singularities": [vars(s) for s in p.singularities]}
    try:
        a, b = walk.surface_ledger_decomposition(h, l)
        payload["ledger"] = {"line_coefficient": a, "multiplicities": b, "degree": walk.surface_degree_ledger(a, b)}
    except DomainError:
        payload["ledger"] = None
    row = {"d": p.d, "degree": p.degree, "description": p.description,
           "singularities": ";".join(f"{s.count}x{s.tag}" for s in p.singularities)}
    return EXIT_OK, _emit(payload, cfg.fmt, [row], list(row))


def cmd_bertini_factorization(cfg: CommandConfig) -> tuple[int, str]:
    log, s = walk.bertini_factorization()
    payload = {"log": log.to_json(),
               "summary": {"degree": s.degree, "multiplicity": s.multiplicity, "dim_V": s.dim_V,
                           "contracted_divisors": [D.to_json() for D in s.contracted_divisors],
                           "contracted_degrees": s.contracted_degrees}}
    rows = [{"step": i, "kind": e.transformation.name, "count": e.count,
             "centers": ";".join(_coeff_str(c) for c in e.event.centers)} for i, e in enumerate(log.entries)]
    return EXIT_OK, _emit(payload, cfg.fmt, rows, ["step", "kind", "count", "centers"])


COMMANDS = {
    "enumerate": cmd_enumerate, "walls": cmd_walls, "chamber": cmd_chamber, "path": cmd_path,
    "walk": cmd_walk, "rho": cmd_rho, "zeta": cmd_zeta, "bertini-x": cmd_bertini_x,
    "fixed-divisors": cmd_fixed_divisors, "associate": cmd_associate, "verify-all": cmd_verify_all,
    "surface-profile": cmd_surface_profile, "bertini-factorization": cmd_bertini_factorization,
}


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=("json", "csv"), default="json")
    common.add_argument("--basis", choices=("S", "X"), default=None)
    common.add_argument("--seed", type=int, default=acceptance.DEFAULT_SEED)
    common.add_argument("--orbit-cap", type=int, default=classes.DEFAULT_ORBIT_CAP)
    p = _Parser(prog="dp1kit", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="subcommand", required=True, parser_class=_Parser)
    s = sub.add_parser("enumerate", parents=[common])
    s.add_argument("--kind", required=True)
    s = sub.add_parser("walls", parents=[common])
    s.add_argument("--through")
    s = sub.add_parser("chamber", parents=[common])
    s.add_argument("cls")
    for name in ("path", "walk"):
        s = sub.add_parser(name, parents=[common])
        s.add_argument("L0")
        s.add_argument("L1")
        if name == "path":
            s.add_argument("--report", choices=("json", "csv"))
        else:
            s.add_argument("--invariants", action="store_true")
    for name in ("rho", "zeta", "bertini-x"):
        s = sub.add_parser(name, parents=[common])
        s.add_argument("cls")
    sub.add_parser("fixed-divisors", parents=[common])
    s = sub.add_parser("associate", parents=[common])
    s.add_argument("--points", required=True)
    s = sub.add_parser("verify-all", parents=[common])
    s.add_argument("--json", action="store_true", help="emit the results as JSON")
    s = sub.add_parser("surface-profile", parents=[common])
    s.add_argument("--cubic", required=True)
    s.add_argument("--curve", required=True)
    sub.add_parser("bertini-factorization", parents=[common])
    return p


def config_from_argv(argv: list[str]) -> CommandConfig:
    ns = vars(build_parser().parse_args(argv))
    sc = ns.pop("subcommand")
    fmt = ns.pop("format")
    if ns.get("report"):
        fmt = ns.pop("report")
    basis = {"S": SURFACE, "X": FOURFOLD, None: None}[ns.pop("basis")]
    return CommandConfig(sc, ns, fmt, basis, ns.pop("seed"), ns.pop("orbit_cap"))


def run(cfg: CommandConfig) -> tuple[int, str]:
    try:
        return COMMANDS[cfg.subcommand](cfg)
    except DomainError as exc:
        return EXIT_DOMAIN, f"error: {exc}\n"


def main(argv: Optional[list[str]] = None) -> int:
    cfg = config_from_argv(sys.argv[1:] if argv is None else argv)
    code, out = run(cfg)
    (sys.stdout if code != EXIT_DOMAIN else sys.stderr).write(out)
    return code


if __name__ == "__main__":
    raise SystemExit(main())
