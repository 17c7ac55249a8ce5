"""Command-line front end.

    python -m affine_twist info   --a 1,1,2 --format json
    python -m affine_twist verify --a 2,3,5
    python -m affine_twist count  --a 2,2,2 --state-cap 100000
    python -m affine_twist table  --amax 3 --format csv

Exit codes: 0 success, 1 verification failure, 2 invalid input, 3 state cap.
The document goes to stdout, progress logs to stderr.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import sys
from dataclasses import dataclass
from typing import Any, Optional, Sequence

from . import grs, hurwitz, ktheory, weyl
from .grs import SystemDescriptor

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_INVALID = 2
EXIT_CAP = 3

log = logging.getLogger("affine_twist")


@dataclass(frozen=True)
class RunConfig:
    command: str
    triple: Optional[tuple[int, int, int]] = None
    format: str = "text"
    state_cap: Optional[int] = hurwitz.DEFAULT_STATE_CAP
    seed: int = 0
    amax: Optional[int] = None


class InvalidInput(ValueError):
    pass


def parse_triple(text: str) -> tuple[int, int, int]:
    parts = [p.strip() for p in text.split(",")]
    if len(parts) != 3:
        raise InvalidInput(f"--a expects three comma-separated integers, got {text!r}")
    try:
        a = tuple(int(p) for p in parts)
    except ValueError:
        raise InvalidInput(f"--a expects integers, got {text!r}") from None
    if any(x < 1 for x in a):
        raise InvalidInput(f"entries of A must be positive, got {text!r}")
    return a  # type: ignore[return-value]


def system_for(triple: Sequence[int]) -> SystemDescriptor:
    return grs.build_system(*sorted(triple))


def rational(x) -> dict[str, int]:
    return {"num": x.numerator, "den": x.denominator}


def matrix(m) -> list[list[int]]:
    return [list(r) for r in m]


def system_summary(sys: SystemDescriptor, original: Sequence[int]) -> dict[str, Any]:
    return {
        "input": list(original),
        "a": list(sys.triple),
        "mu": sys.mu,
        "chi": rational(sys.chi),
        "ell": sys.ell,
        "vertex_order": [grs.vertex_label(v) for v in sys.vertex_order],
    }


# --------------------------------------------------------------------------
# commands


def cmd_info(cfg: RunConfig) -> tuple[dict[str, Any], int]:
    sys_ = system_for(cfg.triple)
    doc = system_summary(sys_, cfg.triple)
    doc["cartan"] = matrix(grs.cartan_form(sys_))
    doc["euler"] = matrix(grs.euler_form_triangular(sys_))
    doc["delta"] = list(grs.delta(sys_))
    doc["coxeter"] = matrix(weyl.coxeter_matrix(sys_).matrix)
    doc["twist"] = matrix(weyl.twist_matrix(sys_).matrix)
    return doc, EXIT_OK


def _euler_uniqueness(sys_: SystemDescriptor) -> weyl.Report:
    rep = weyl.Report("euler form")
    try:
        grs.euler_form_from_axioms(sys_)
        rep.add("unique solution equals triangular form", True)
    except grs.InternalInconsistency as exc:
        rep.add("unique solution equals triangular form", False, str(exc))
    return rep


def run_verification(sys_: SystemDescriptor, seed: int = 0) -> list[weyl.Report]:
    return [
        _euler_uniqueness(sys_),
        weyl.verify_conjugation_identities(sys_, seed=seed),
        weyl.verify_power_identity(sys_),
        weyl.verify_coxeter_action_table(sys_),
        weyl.verify_artin_relations(sys_),
        weyl.verify_dual_twist(sys_),
        ktheory.verify_spherical_class_identity(sys_),
        ktheory.verify_quiver_euler(sys_),
    ]


def cmd_verify(cfg: RunConfig) -> tuple[dict[str, Any], int]:
    sys_ = system_for(cfg.triple)
    doc = system_summary(sys_, cfg.triple)
    reports = run_verification(sys_, cfg.seed)
    doc["checks"] = [
        {"name": f"{r.title}: {c.name}", "pass": c.passed, "details": c.details}
        for r in reports
        for c in r.checks
    ]
    doc["notes"] = [f"{r.title}: {n}" for r in reports for n in r.notes]
    ok = all(r.passed for r in reports)
    doc["all_pass"] = ok
    return doc, EXIT_OK if ok else EXIT_FAILED


def _count_dict(c: hurwitz.OrbitCount) -> dict[str, Any]:
    return {
        "e_count": c.e_count,
        "formula_value": c.formula_value,
        "states_explored": c.states_explored,
        "match": c.match,
    }


def cmd_count(cfg: RunConfig) -> tuple[dict[str, Any], int]:
    sys_ = system_for(cfg.triple)
    doc = system_summary(sys_, cfg.triple)
    try:
        result = hurwitz.enumerate_orbit(sys_, cfg.state_cap)
    except hurwitz.StateCapExceeded as exc:
        doc["count"] = _count_dict(exc.partial)
        doc["count"]["capped"] = True
        return doc, EXIT_CAP
    doc["count"] = _count_dict(result)
    doc["count"]["capped"] = False
    return doc, EXIT_OK if result.match else EXIT_FAILED


def admissible_triples(amax: int) -> list[tuple[int, int, int]]:
    out = []
    for a1 in range(1, amax + 1):
        for a2 in range(a1, amax + 1):
            for a3 in range(a2, amax + 1):
                try:
                    grs.build_system(a1, a2, a3)
                except grs.NotAffineAde:
                    continue
                out.append((a1, a2, a3))
    return out


TABLE_COLUMNS = ("a1", "a2", "a3", "mu", "chi_num", "chi_den", "formula", "ecount", "match")


def cmd_table(cfg: RunConfig) -> tuple[dict[str, Any], int]:
    if cfg.amax is None or cfg.amax < 1:
        raise InvalidInput("--amax must be a positive integer")
    rows = []
    ok = True
    for triple in admissible_triples(cfg.amax):
        sys_ = grs.build_system(*triple)
        formula = hurwitz.formula_deg_ll(sys_)
        ecount: Optional[int] = None
        match: Optional[bool] = None
        if cfg.state_cap is None or formula <= cfg.state_cap:
            log.info("enumerating %s (%d expected)", sys_, formula)
            result = hurwitz.enumerate_orbit(sys_, cfg.state_cap)
            ecount, match = result.e_count, result.match
            ok = ok and match
        rows.append(
            {
                "a1": triple[0],
                "a2": triple[1],
                "a3": triple[2],
                "mu": sys_.mu,
                "chi_num": sys_.chi.numerator,
                "chi_den": sys_.chi.denominator,
                "formula": formula,
                "ecount": ecount,
                "match": match,
            }
        )
    return {"amax": cfg.amax, "rows": rows}, EXIT_OK if ok else EXIT_FAILED


COMMANDS = {"info": cmd_info, "verify": cmd_verify, "count": cmd_count, "table": cmd_table}


# --------------------------------------------------------------------------
# rendering


def render_json(doc: dict[str, Any]) -> str:
    return json.dumps(doc, indent=2, ensure_ascii=True) + "\n"


def _csv(rows: list[dict[str, Any]], columns: Sequence[str]) -> str:
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=list(columns), lineterminator="\n")
    w.writeheader()
    for row in rows:
        w.writerow({k: _csv_cell(row.get(k)) for k in columns})
    return buf.getvalue()


def _csv_cell(x: Any) -> str:
    if x is None:
        return ""
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, (list, dict)):
        return json.dumps(x, separators=(",", ":"))
    return str(x)


def render_csv(command: str, doc: dict[str, Any]) -> str:
    if command == "table":
        return _csv(doc["rows"], TABLE_COLUMNS)
    if command == "verify":
        return _csv(doc["checks"], ("name", "pass", "details"))
    if command == "count":
        row = {"a1": doc["a"][0], "a2": doc["a"][1], "a3": doc["a"][2], **doc["count"]}
        return _csv([row], ("a1", "a2", "a3", "e_count", "formula_value", "states_explored", "match", "capped"))
    return _csv([{"key": k, "value": v} for k, v in doc.items()], ("key", "value"))


def render_text(command: str, doc: dict[str, Any]) -> str:
    lines = []
    if "a" in doc:
        chi = doc["chi"]
        lines.append(
            f"A = {tuple(doc['a'])}  mu = {doc['mu']}  chi = {chi['num']}/{chi['den']}  ell = {doc['ell']}"
        )
    if command == "info":
        lines.append("vertex order: " + " ".join(doc["vertex_order"]))
        lines.append("delta: " + " ".join(str(x) for x in doc["delta"]))
        for name in ("cartan", "euler", "coxeter", "twist"):
            lines.append(f"{name}:")
            lines.extend("  " + " ".join(f"{x:>3}" for x in row) for row in doc[name])
    elif command == "verify":
        for c in doc["checks"]:
            tag = "PASS" if c["pass"] else "FAIL"
            lines.append(f"[{tag}] {c['name']}" + (f"  ({c['details']})" if c["details"] else ""))
        lines.extend(f"note: {n}" for n in doc["notes"])
        lines.append("all checks pass" if doc["all_pass"] else "some checks FAILED")
    elif command == "count":
        c = doc["count"]
        lines.append(
            f"e_count = {c['e_count']}  formula = {c['formula_value']}  "
            f"expanded = {c['states_explored']}  match = {c['match']}"
            + ("  (state cap hit, partial)" if c["capped"] else "")
        )
    elif command == "table":
        lines.append("   A          mu  chi      formula     ecount  match")
        for r in doc["rows"]:
            ec = "" if r["ecount"] is None else r["ecount"]
            m = "" if r["match"] is None else r["match"]
            lines.append(
                f"({r['a1']},{r['a2']},{r['a3']})".ljust(12)
                + f"{r['mu']:>3}  {r['chi_num']}/{r['chi_den']:<6}{r['formula']:>10} {ec:>10}  {m}"
            )
    return "\n".join(lines) + "\n"


def render(command: str, fmt: str, doc: dict[str, Any]) -> str:
    if fmt == "json":
        return render_json(doc)
    if fmt == "csv":
        return render_csv(command, doc)
    return render_text(command, doc)


# --------------------------------------------------------------------------
# entry point


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="affine_twist", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("--a", dest="a", required=name != "table", help="triple a1,a2,a3")
        p.add_argument("--format", choices=("json", "csv", "text"), default="text")
        p.add_argument("--state-cap", type=int, default=hurwitz.DEFAULT_STATE_CAP)
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--amax", type=int, required=name == "table")
        p.add_argument("-v", "--verbose", action="store_true", help="progress logs on stderr")
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        stream=sys.stderr,
        format="%(levelname)s %(name)s: %(message)s",
    )
    try:
        triple = parse_triple(args.a) if args.a is not None else None
        cfg = RunConfig(args.command, triple, args.format, args.state_cap, args.seed, args.amax)
        if triple is not None:
            system_for(triple)  # validate before any work
        if cfg.command == "table" and (cfg.amax is None or cfg.amax < 1):
            raise InvalidInput("--amax must be a positive integer")
    except (InvalidInput, grs.NotAffineAde) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    doc, code = COMMANDS[cfg.command](cfg)
    sys.stdout.write(render(cfg.command, cfg.format, doc))
    return code


if __name__ == "__main__":
    raise SystemExit(main())
