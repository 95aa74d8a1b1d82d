"""Command-line interface.

Subcommands: ``identities`` (randomized identity and isometry sweeps),
``verify`` (certify a catalog entry), ``classify`` (factor types and
congruency parameters at an assembly angle), ``table`` (type pairs over a
grid of angles) and ``connection`` (moving-frame connection coefficients).
Output is deterministic for fixed arguments.
"""
import argparse
import csv
import io
import json
import math
import os
import sys

from . import __version__
from . import catalog as cat
from . import verifier as vf
from .errors import GeometryError


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="nksl2r",
        description="verification tools for degenerate holomorphic surfaces "
                    "in a doubled group geometry")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--format", choices=("json", "csv"), default="json")
        p.add_argument("--out", default=None, help="write output to a file")
        p.add_argument("--seed", type=int,
                       default=int(os.environ.get("NKSL2R_SEED", "0")))

    p_id = sub.add_parser("identities",
                          help="randomized identity and isometry sweeps")
    common(p_id)
    p_id.add_argument("--samples", type=int, default=1000)

    p_ver = sub.add_parser("verify", help="certify a catalog entry")
    common(p_ver)
    p_ver.add_argument("entry", help="catalog entry name")
    p_ver.add_argument("--phi", type=float, default=None)
    p_ver.add_argument("--phi-deg", type=float, default=None)
    p_ver.add_argument("--lam", type=float, default=None)
    p_ver.add_argument("--alpha", type=float, default=None)
    p_ver.add_argument("--beta", type=float, default=None)
    p_ver.add_argument("--grid", default="5x5")
    p_ver.add_argument("--h", type=float, default=1e-5)
    p_ver.add_argument("--connection", action="store_true",
                       help="also run the connection-table comparison")

    p_cls = sub.add_parser("classify",
                           help="factor types and congruency parameters at "
                                "an assembly angle")
    common(p_cls)
    p_cls.add_argument("--phi", type=float, default=None)
    p_cls.add_argument("--phi-deg", type=float, default=None)

    p_tab = sub.add_parser("table",
                           help="factor type pairs over a grid of angles")
    common(p_tab)
    p_tab.add_argument("--step-deg", type=int, default=30)

    p_con = sub.add_parser("connection",
                           help="moving-frame connection coefficients")
    common(p_con)
    p_con.add_argument("--phi", type=float, default=None)
    p_con.add_argument("--phi-deg", type=float, default=None)
    p_con.add_argument("--entry", default=None,
                       help="also compare against finite differences on "
                            "this entry")
    p_con.add_argument("--grid", default="3x3")
    p_con.add_argument("--h", type=float, default=1e-5)
    return parser


def _angle_from(args, default=None, required=True):
    if args.phi is not None and args.phi_deg is not None:
        raise ValueError("pass either --phi or --phi-deg, not both")
    if args.phi is not None:
        return float(args.phi)
    if args.phi_deg is not None:
        return math.radians(args.phi_deg)
    if default is not None or not required:
        return default
    raise ValueError("an angle is required (--phi or --phi-deg)")


def _parse_grid(text):
    try:
        nx, ny = (int(part) for part in text.lower().split("x"))
    except Exception:
        raise ValueError(f"grid must look like 5x5, got {text!r}")
    if nx < 3 or ny < 3:
        raise ValueError("grid must be at least 3x3")
    return nx, ny


def _check_h(h):
    if not 0.0 < h <= 1e-2:
        raise ValueError("step h must lie in (0, 1e-2]")
    return h


def _entry_kwargs(args):
    kwargs = {}
    phi = _angle_from(args, required=False)
    if phi is not None:
        kwargs["phi"] = phi
    for key in ("lam", "alpha", "beta"):
        value = getattr(args, key, None)
        if value is not None:
            kwargs[key] = value
    return kwargs


def _cmd_identities(args):
    rep_id = vf.check_identity_suite(seed=args.seed, n_samples=args.samples)
    rep_iso = vf.check_isometry_suite(seed=args.seed, n_samples=args.samples)
    checks = [i.to_dict() for i in rep_id.items + rep_iso.items]
    verdict = rep_id.verdict and rep_iso.verdict
    return {"checks": checks, "verdict": verdict,
            "notes": list(rep_id.notes) + list(rep_iso.notes),
            "result": None}


def _cmd_verify(args):
    grid = _parse_grid(args.grid)
    h = _check_h(args.h)
    entry = cat.get_entry(args.entry, **_entry_kwargs(args))
    report = vf.verify_entry(entry, grid=grid, h=h)
    if args.connection:
        con = vf.compare_connection(entry, h=h)
        report.items.extend(con.items)
    return {"checks": [i.to_dict() for i in report.items],
            "verdict": report.verdict,
            "notes": list(report.notes),
            "result": {"entry": entry.name,
                       "params": {k: float(v) if isinstance(v, float)
                                  else v
                                  for k, v in sorted(entry.params.items())}}}


def _applicable_entries(phi, types):
    tp, tq = types
    notes = []
    if (tp, tq) == ("II", "II"):
        names = ["II_IIa"]
    elif "II" in (tp, tq):
        names = [name for name, pinned in cat.PINNED_II_IV.items()
                 if abs((phi - pinned + math.pi) % (2.0 * math.pi)
                        - math.pi) <= 1e-6]
    elif (tp, tq) == ("I", "IV"):
        names = ["I_IV_a", "I_IV_b"]
    elif (tp, tq) == ("IV", "I"):
        names = ["I_IV_a", "I_IV_b"]
        notes.append("factor order swapped relative to the catalog entries; "
                     "the swap isometry moves the angle to pi - phi")
    elif (tp, tq) == ("IV", "IV"):
        names = ["IV_IV"]
    else:
        names = []
    return names, notes


def _solution_dict(fsol):
    return {"type": fsol.type_label,
            "angle": float(fsol.angle),
            "params": [float(p) for p in fsol.params],
            "variant": fsol.variant}


def _cmd_classify(args):
    phi = _angle_from(args)
    types = cat.type_table(phi)
    sol = cat.solve_congruency(phi)
    names, notes = _applicable_entries(sol.phi, types)
    notes.extend(sol.p.notes)
    notes.extend(sol.q.notes)
    result = {
        "phi": float(sol.phi),
        "phi_deg": float(math.degrees(sol.phi)),
        "types": list(types),
        "p": _solution_dict(sol.p),
        "q": _solution_dict(sol.q),
        "entries": names,
    }
    return {"checks": [], "verdict": True, "notes": notes, "result": result}


def _cmd_table(args):
    step = args.step_deg
    if step <= 0 or 360 % step != 0:
        raise ValueError("--step-deg must be a positive divisor of 360")
    rows = []
    for deg in range(0, 361, step):
        phi = math.radians(deg)
        tp, tq = cat.type_table(phi)
        rows.append({"phi_deg": deg,
                     "psi_deg": (deg + 60) % 360,
                     "xi_deg": (deg - 60) % 360,
                     "type_p": tp,
                     "type_q": tq})
    return {"checks": [], "verdict": True, "notes": [],
            "result": {"rows": rows}}


def _cmd_connection(args):
    phi = _angle_from(args, required=args.entry is None)
    checks = []
    notes = []
    verdict = True
    result = {}
    if args.entry is not None:
        grid = _parse_grid(args.grid)
        h = _check_h(args.h)
        entry = cat.get_entry(args.entry)
        report = vf.compare_connection(entry, grid=grid, h=h)
        checks = [i.to_dict() for i in report.items]
        verdict = report.verdict
        notes = list(report.notes)
        if phi is None:
            phi = entry.expected.get("phi")
    if phi is not None:
        table = vf.frame_connection_table(phi)
        result["phi"] = float(phi)
        result["rows"] = [
            {"label": label,
             "coefficients": [float(c) for c in row]}
            for label, row in zip(vf.TABLE_LABELS, table)]
        result["frame"] = list(vf.FRAME_LABELS)
    return {"checks": checks, "verdict": verdict, "notes": notes,
            "result": result}


def _render_json(payload):
    return json.dumps(payload, sort_keys=True, indent=2) + "\n"


def _render_csv(payload):
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    result = payload.get("result") or {}
    rows = result.get("rows")
    if rows:
        keys = list(rows[0].keys())
        writer.writerow(keys)
        for row in rows:
            writer.writerow([row[k] for k in keys])
    else:
        writer.writerow(["name", "max_residual", "tolerance", "pass",
                         "samples"])
        for check in payload["checks"]:
            writer.writerow([check["name"], repr(check["max_residual"]),
                             repr(check["tolerance"]), check["pass"],
                             check["samples"]])
    return buf.getvalue()


def main(argv=None):
    parser = _build_parser()
    args = parser.parse_args(argv)
    handlers = {
        "identities": _cmd_identities,
        "verify": _cmd_verify,
        "classify": _cmd_classify,
        "table": _cmd_table,
        "connection": _cmd_connection,
    }
    try:
        body = handlers[args.command](args)
    except (GeometryError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2

    config = {}
    for key, value in sorted(vars(args).items()):
        if key in ("command", "out", "format"):
            continue
        if value is None or callable(value):
            continue
        config[key] = value
    payload = {
        "meta": {"command": args.command, "version": __version__,
                 "config": config},
        "checks": body["checks"],
        "verdict": body["verdict"],
        "notes": body["notes"],
    }
    if body.get("result"):
        payload["meta"]["result"] = body["result"]

    text = _render_json(payload) if args.format == "json" \
        else _render_csv(payload)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0 if payload["verdict"] else 1


def run(argv=None):
    """Parse argv, execute the subcommand, return the process exit code."""
    return main(argv)


if __name__ == "__main__":
    sys.exit(main())
