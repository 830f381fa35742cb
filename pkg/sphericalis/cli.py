"""
Command Line Interface
Batch computation and regression on spherical data: validation, Omega, B_w, L-values, volumes,
Plancherel pairings, Eisenstein factors, orbit paths, the p-adic oracle and the fixture catalog.
"""
import argparse
import json
import logging
import random
import sys
from fractions import Fraction
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

import pandas as pd

from sphericalis.config import get_settings
from sphericalis.engine import (
    beta,
    bw,
    cocycle_holds,
    constant_c,
    eisenstein_factors,
    lfactors,
    lfull,
    lhalf,
    omega_schur,
    omega_sum,
    plancherel_pairing,
    q_factor,
    tamagawa_volume,
    volume,
)
from sphericalis.exceptions import ConsistencyError, SphericalisError, UnknownFixture
from sphericalis.fixtures import (
    CATALOG,
    PATH_TARGETS,
    antidominant_grid,
    get_fixture,
    get_path,
    list_fixtures,
    path_suite,
    regression_suite,
)
from sphericalis.models import CheckStatus, CliReport, CliStatus, FeTag
from sphericalis.padic_oracle import ORACLE_TAGS, verify_case
from sphericalis.rank_one import (
    backtick_b,
    compose_path,
    inductionstep_holds,
    load_path,
    path_element,
    restricted_backtick_b,
)
from sphericalis.root_systems import weyl_group
from sphericalis.spherical_data import SphericalDatum, load_datum, validate_datum

logger = logging.getLogger(__name__)

EXIT_CODES = {CliStatus.OK: 0, CliStatus.FAIL: 1, CliStatus.ERROR: 2}


class CommandFailed(Exception):
    "Raised by a command whose computation finished but whose check did not hold."

    def __init__(self, message: str, payload: Any):
        self.payload = payload
        super().__init__(message)


# --- ARGUMENT HELPERS ---

def _load_datum(source: str) -> SphericalDatum:
    """A datum file, or the name of a shipped fixture"""
    path = Path(source)
    if path.exists():
        return load_datum(path)
    if source in CATALOG:
        return get_fixture(source).datum
    raise UnknownFixture(f"'{source}' is neither a datum file nor a fixture name")


def _int_list(text: str) -> List[int]:
    text = text.strip()
    if not text:
        return []
    return [int(x) for x in text.split(",")]


def _doubled(text: str) -> Tuple[int, ...]:
    """True (undoubled) rational coordinates to doubled integer keys"""
    out = []
    for x in text.split(","):
        value = Fraction(x.strip()) * 2
        if value.denominator != 1:
            raise ValueError(f"coordinate {x} is not a half-integer")
        out.append(int(value))
    return tuple(out)


def _oracle_tag(text: str) -> FeTag:
    for tag in FeTag:
        if tag.value.lower() == text.lower():
            return tag
    raise ValueError(f"unknown case '{text}'; choose from {', '.join(t.value for t in ORACLE_TAGS)}")


def _table(rows: List[Dict[str, Any]]) -> str:
    if not rows:
        return "(vuoto)"
    return pd.DataFrame(rows).to_string(index=False)


# --- COMMANDS ---
# Each command returns (payload, human readable text) or raises CommandFailed.

def cmd_validate(args) -> Tuple[Any, str]:
    d = _load_datum(args.datum)
    report = validate_datum(d)
    payload = report.model_dump(mode="json")
    text = f"Dato: {d.name}\n" + _table([{"check": c.name, "status": c.status.value, "detail": c.detail} for c in report.checks])
    if not report.passed:
        raise CommandFailed(f"failed checks: {', '.join(report.failed())}", payload)
    return payload, text


def cmd_omega(args) -> Tuple[Any, str]:
    d = _load_datum(args.datum)
    lam2 = _doubled(args.lam)
    payload: Dict[str, Any] = {"datum": d.name, "lambda2": list(lam2), "form": args.form}
    lines = [f"Ω per {d.name} a λ̌ = {args.lam} (raddoppiato {lam2})"]
    total = None
    if args.form in ("sum", "both"):
        total = omega_sum(d, lam2).value
        payload["sum"] = str(total)
        lines.append(f"somma: {total}")
    if args.form in ("schur", "both"):
        schur = omega_schur(d, lam2).value
        payload["schur"] = str(schur)
        lines.append(f"schur: {schur}")
        if total is not None:
            consistent = total == beta(d) * schur
            payload["consistency"] = consistent
            lines.append(f"consistenza: {consistent}")
            if not consistent:
                raise CommandFailed("omega_sum differs from beta * omega_schur", payload)
    return payload, "\n".join(lines)


def cmd_bw(args) -> Tuple[Any, str]:
    d = _load_datum(args.datum)
    group = weyl_group(d.root_system)
    w = group.from_word(_int_list(args.word))
    value = bw(d, w)
    payload: Dict[str, Any] = {"datum": d.name, "word": _int_list(args.word), "reduced_word": list(w.reduced_word), "bw": str(value)}
    lines = [f"B_w per w = {list(w.reduced_word)}: {value}"]
    if args.cocycle:
        rng = random.Random(args.seed)
        elements = group.elements
        pairs = [(rng.choice(elements), rng.choice(elements)) for _ in range(args.cocycle)]
        bad = [[list(a.reduced_word), list(b.reduced_word)] for a, b in pairs if not cocycle_holds(d, a, b)]
        payload["cocycle"] = {"seed": args.seed, "pairs": len(pairs), "failures": bad}
        lines.append(f"cociclo: {len(pairs) - len(bad)}/{len(pairs)} coppie casuali")
        if bad:
            raise CommandFailed(f"cocycle relation fails on {bad}", payload)
    return payload, "\n".join(lines)


def cmd_lvalue(args) -> Tuple[Any, str]:
    d = _load_datum(args.datum)
    c = constant_c(d)
    payload: Dict[str, Any] = {"datum": d.name, "c": str(c)}
    if args.factored:
        factorization = lfactors(d)
        rows = [
            {"sign": f.sign, "r2": f.r2, "coweight": list(f.coweight), "exponent": f.exponent}
            for f in sorted(factorization.factors, key=lambda f: (f.exponent, f.r2, f.coweight))
        ]
        payload["factors"] = rows
        payload["constant"] = str(factorization.constant)
        return payload, f"L_X per {d.name}, costante c^2 = {factorization.constant}\n" + _table(rows)
    payload["lhalf"] = str(lhalf(d))
    payload["lfull"] = str(lfull(d))
    return payload, f"c = {c}\nL_X^(1/2) = {payload['lhalf']}\nL_X = {payload['lfull']}"


def cmd_volume(args) -> Tuple[Any, str]:
    d = _load_datum(args.datum)
    payload = {
        "datum": d.name,
        "q_factor": str(q_factor(d.ambient_rho_pairings)),
        "c": str(constant_c(d)),
        "volume": str(volume(d)),
    }
    if args.tamagawa:
        payload["tamagawa"] = str(tamagawa_volume(d))
    text = "\n".join(f"{k}: {v}" for k, v in payload.items())
    return payload, text


def cmd_plancherel(args) -> Tuple[Any, str]:
    d = _load_datum(args.datum)
    grid = antidominant_grid(d, size=None, bound=args.lmax)
    rows = []
    off_diagonal = []
    for lam2 in grid:
        for mu2 in grid:
            value = plancherel_pairing(d, lam2, mu2, prec=args.prec)
            row = {"lambda2": list(lam2), "mu2": list(mu2), "series": str(value.series)}
            if value.exact is not None:
                row["exact"] = str(value.exact)
            rows.append(row)
            if lam2 != mu2 and not value.series.is_zero():
                off_diagonal.append([list(lam2), list(mu2)])
    payload = {"datum": d.name, "prec": args.prec, "pairings": rows, "orthogonal": not off_diagonal}
    text = f"Accoppiamenti di Plancherel per {d.name} (ordine {args.prec})\n" + _table(rows)
    if off_diagonal:
        raise CommandFailed(f"nonzero off-diagonal pairings at {off_diagonal}", payload)
    return payload, text


def cmd_eisenstein(args) -> Tuple[Any, str]:
    d = _load_datum(args.datum)
    if d.ambient is None:
        raise SphericalisError(f"{d.name} declares no ambient Cartan matrix")
    w = weyl_group(d.ambient).from_word(_int_list(args.word))
    factors = eisenstein_factors(d.ambient, w)
    payload = {
        "datum": d.name,
        "word": list(w.reduced_word),
        "j": str(factors.j),
        "j_tilde": str(factors.j_tilde),
        "fw_tw_ratio": str(factors.fw_tw_ratio),
        "fw_factor": str(factors.fw_factor),
    }
    text = "\n".join(f"{k}: {v}" for k, v in payload.items())
    return payload, text


def cmd_path(args) -> Tuple[Any, str]:
    source = Path(args.pathfile)
    path = load_path(source) if source.exists() else get_path(args.pathfile)
    w = path_element(path)
    payload: Dict[str, Any] = {
        "path": path.name,
        "word": list(path.word),
        "element": list(w.reduced_word),
        "b": str(compose_path(path)),
        "backtick_b": str(backtick_b(path)),
    }
    lines = [f"Cammino {path.name}, parola {list(path.word)}", f"b_w = {payload['b']}", f"`b_w = {payload['backtick_b']}"]
    if path.restriction is not None:
        payload["restricted"] = str(restricted_backtick_b(path))
        lines.append(f"ristretto = {payload['restricted']}")
        if path.delta is not None:
            flags = inductionstep_holds(path)
            payload["inductionstep"] = flags
            lines.append(f"relazione di induzione: {flags}")
            if not all(flags):
                raise CommandFailed("the induction relation fails on a lowering step", payload)
    return payload, "\n".join(lines)


def cmd_oracle(args) -> Tuple[Any, str]:
    tag = _oracle_tag(args.case)
    samples = [Fraction(args.u)] if args.u is not None else None
    report = verify_case(tag, p=args.p, samples=samples, tol=args.tol)
    payload = report.model_dump(mode="json", by_alias=True)
    text = f"Oracolo {report.case} a p = {report.p}: errore relativo massimo {report.max_rel_err:.3e}"
    if not report.passed:
        raise CommandFailed(f"oracle error {report.max_rel_err:.3e} above tolerance", payload)
    return payload, text


def cmd_examples(args) -> Tuple[Any, str]:
    if args.name is None and not args.run:
        rows = []
        for name in list_fixtures():
            d = get_fixture(name).datum
            rows.append({
                "name": name,
                "rank": d.rank,
                "theta_plus": len(d.theta_plus),
                "affine": d.affine,
                "twisted": d.twisted,
            })
        return {"fixtures": rows, "paths": sorted(PATH_TARGETS)}, _table(rows)
    names = [args.name] if args.name is not None else list_fixtures()
    if not args.run:
        fixture = get_fixture(args.name)
        rows = [{"target": t.name, "kind": t.kind.value, "citation": t.citation} for t in fixture.expected]
        payload = {"fixture": fixture.name, "targets": rows, "paths": [p.name for p in fixture.paths]}
        return payload, f"Fixture {fixture.name}\n" + _table(rows)
    reports = [regression_suite(name) for name in names]
    if args.name is None:
        reports.append(path_suite())
    rows = [
        {"fixture": r.fixture, "target": c.name, "status": c.status.value, "citation": c.citation or "", "detail": c.detail}
        for r in reports
        for c in r.results
    ]
    payload = {"reports": [r.model_dump(mode="json") for r in reports]}
    failed = [f"{r['fixture']}:{r['target']}" for r in rows if r["status"] == CheckStatus.FAIL.value]
    text = _table(rows)
    if failed:
        raise CommandFailed(f"failed targets: {', '.join(failed)}", payload)
    return payload, text


COMMANDS: Dict[str, Callable] = {
    "validate": cmd_validate,
    "omega": cmd_omega,
    "bw": cmd_bw,
    "lvalue": cmd_lvalue,
    "volume": cmd_volume,
    "plancherel": cmd_plancherel,
    "eisenstein": cmd_eisenstein,
    "path": cmd_path,
    "oracle": cmd_oracle,
    "examples": cmd_examples,
}


# --- PARSER ---

def build_parser() -> argparse.ArgumentParser:
    settings = get_settings()
    parser = argparse.ArgumentParser(prog="sphericalis", description="Funzioni sferiche non ramificate di varietà sferiche")
    parser.add_argument("--json", action="store_true", help="Output JSON leggibile da macchina")
    parser.add_argument("--prec", type=int, default=settings.prec, help="Ordine di troncamento delle serie in t")
    parser.add_argument("--seed", type=int, default=0, help="Seme per le batterie casuali")

    # Global flags are also accepted after the subcommand
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS, help=argparse.SUPPRESS)
    common.add_argument("--prec", type=int, default=argparse.SUPPRESS, help=argparse.SUPPRESS)
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS, help=argparse.SUPPRESS)

    sub = parser.add_subparsers(dest="command", metavar="command")
    sub.required = True

    p = sub.add_parser("validate", parents=[common], help="Valida un dato sferico")
    p.add_argument("datum", help="File JSON del dato o nome di una fixture")

    p = sub.add_parser("omega", parents=[common], help="Funzione sferica Ω a un copeso")
    p.add_argument("datum")
    p.add_argument("--lambda", dest="lam", required=True, help="Copeso in coordinate vere, es. -1,1/2")
    p.add_argument("--form", choices=["sum", "schur", "both"], default="both")

    p = sub.add_parser("bw", parents=[common], help="Cociclo B_w per una parola nelle radici sferiche")
    p.add_argument("datum")
    p.add_argument("--word", default="", help="Indici delle riflessioni semplici, es. 0,1")
    p.add_argument("--cocycle", type=int, default=0, help="Numero di coppie casuali per la relazione di cociclo")

    p = sub.add_parser("lvalue", parents=[common], help="Costante c e valori L_X^(1/2), L_X")
    p.add_argument("datum")
    p.add_argument("--factored", action="store_true")

    p = sub.add_parser("volume", parents=[common], help="Misura di X(o)")
    p.add_argument("datum")
    p.add_argument("--tamagawa", action="store_true")

    p = sub.add_parser("plancherel", parents=[common], help="Matrice di Gram di Plancherel dei P_λ")
    p.add_argument("datum")
    p.add_argument("--lmax", type=int, default=1, help="Massima coordinata assoluta dei copesi della griglia")

    p = sub.add_parser("eisenstein", parents=[common], help="Fattori locali j_w e j-tilde_w")
    p.add_argument("datum")
    p.add_argument("--word", default="", help="Parola nelle radici semplici ambiente")

    p = sub.add_parser("path", parents=[common], help="Composizione di un cammino di orbite")
    p.add_argument("pathfile", help="File JSON del cammino o nome di un cammino incluso")

    p = sub.add_parser("oracle", parents=[common], help="Verifica p-adica di un caso di rango uno")
    p.add_argument("--case", required=True, help="Etichetta del caso, es. t-nonsplit-unram")
    p.add_argument("--p", type=int, default=3)
    p.add_argument("--u", default=None, help="Campione razionale del carattere, es. 1/3")
    p.add_argument("--tol", type=float, default=None)

    p = sub.add_parser("examples", parents=[common], help="Catalogo delle fixture e suite di regressione")
    p.add_argument("name", nargs="?", default=None)
    p.add_argument("--run", action="store_true")
    return parser


def _emit(report: CliReport, as_json: bool, text: Optional[str]) -> None:
    if as_json:
        print(json.dumps(report.model_dump(mode="json"), sort_keys=True, indent=2, ensure_ascii=False))
        return
    if text:
        print(text)
    for line in report.diagnostics:
        print(line, file=sys.stderr)


def run(argv: Optional[Sequence[str]] = None) -> Tuple[int, CliReport]:
    """Parse, dispatch and print; returns the exit code and the report"""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        if e.code == 0:
            return 0, CliReport(command="help", status=CliStatus.OK, payload={"help": True})
        report = CliReport(command="", status=CliStatus.ERROR, diagnostics=[parser.format_usage().strip()])
        return 2, report

    settings = get_settings()
    logging.basicConfig(level=settings.log_level, format="%(asctime)s - %(levelname)s - %(message)s")
    command = args.command
    text = None
    try:
        payload, text = COMMANDS[command](args)
        report = CliReport(command=command, status=CliStatus.OK, payload=payload)
    except CommandFailed as e:
        report = CliReport(command=command, status=CliStatus.FAIL, payload=e.payload, diagnostics=[str(e)])
    except ConsistencyError as e:
        logger.error(f"Command {command} found an inconsistency: {e}")
        report = CliReport(command=command, status=CliStatus.FAIL, diagnostics=[f"{type(e).__name__}: {e}"])
    except (SphericalisError, ValueError, KeyError, IndexError, ZeroDivisionError) as e:
        logger.error(f"Command {command} failed: {e}")
        report = CliReport(command=command, status=CliStatus.ERROR, diagnostics=[f"{type(e).__name__}: {e}"])
    _emit(report, args.json, text)
    return EXIT_CODES[report.status], report


def main() -> None:
    code, _ = run()
    sys.exit(code)


if __name__ == "__main__":
    main()
