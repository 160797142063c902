#!/usr/bin/env python3
"""
Command-line front end for the twisted-K calculator

Examples:
    python twk_cli.py --group su2 --functor "ext_full^5" --emit json
    python twk_cli.py --group su3 --functor "ext_top^3" --route both
    python twk_cli.py --group su3 --functor "ext_full^2" --mode verify
    python twk_cli.py --group su3 --batch functors.txt
"""

import argparse
import csv
import json
import logging
import os
import re
import sys
from concurrent.futures import ThreadPoolExecutor, as_completed
from dataclasses import dataclass
from datetime import datetime
from typing import Dict, List, Optional, Tuple, Union

import sympy as sp

from expfunctor import ExponentialFunctor, derived_elements, f_of_lines, hypothesis_checks, parse_functor
from groebner import DEFAULT_STEP_LIMIT, StepLimitExceeded
from laurent import LaurentPoly, ParseError, det_cofactor3, parse_laurent
from oracle import DEFAULT_TOLERANCE, check_identity, sample_points
from reprings import (Restriction, RingTag, STEINBERG_LABELS, restrict, steinberg_basis, steinberg_decompose,
                      torus_t)
from su2 import RHO, SU2Report, g_coefficients, k_groups_su2
from su3 import (DecompositionError, SU3Report, bredon_identities, build_differentials, generic_rank_check,
                 k_groups_su3, matrices_to_export, orientation_check, q_pair)
from symfunc import galois_row, vandermonde
from twk_config import configure_logging, load_settings

logger = logging.getLogger(__name__)

SCHEMA_VERSION = "1.0"

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_HYPOTHESIS = 2
EXIT_BAD_DSL = 64
EXIT_UNWRITABLE = 73

BATCH_HEADERS = [
    'schema_version',
    'line',
    'functor',
    'group',
    'status',
    'generators',
    'rank_or_dim',
    'inverted_integer',
    'error'
]

Report = Union[SU2Report, SU3Report]


@dataclass
class RunConfig:
    """One invocation of the calculator"""
    group: str
    functor: str = ""
    mode: str = "compute"
    emit: str = "text"
    oracle_points: int = 100
    seed: int = 0
    route: str = "koszul"
    output: Optional[str] = None
    batch: Optional[str] = None
    step_limit: int = DEFAULT_STEP_LIMIT
    tolerance: float = DEFAULT_TOLERANCE
    scaled_oracle: bool = False
    max_workers: int = 4
    output_dir: str = "out"


class OutputError(OSError):
    """The requested output path cannot be written"""


def compute_report(config: RunConfig, F: ExponentialFunctor) -> Report:
    if config.group == "su2":
        return k_groups_su2(F)
    return k_groups_su3(F, config.route, config.step_limit)


# ============================================================================
# EMITTERS
# ============================================================================

def _mark(passed: bool) -> str:
    return "✓" if passed else "✗"


def emit_text(report: Report) -> str:
    lines = ["=" * 60]
    if isinstance(report, SU2Report):
        lines += [f"SU(2) TWISTED K-THEORY: {report.functor}", "=" * 60,
                  f"F(t)  = {report.character}",
                  f"g1(F) = {report.g1}",
                  f"g2(F) = {report.g2} = {report.g2_factored}"]
        if report.status == "ok":
            lines += [f"g2 saturated    = {report.g2_saturated} (removed {report.removed_factor})",
                      f"rank            = {report.rank}",
                      f"inverted integer N = {report.inverted_integer}",
                      f"K0 = {report.k0}",
                      f"K1 = {report.k1}"]
            if report.relation:
                lines.append(f"relation for x = [-rho]: {report.relation}")
            for element, inverse in report.unit_inverses.items():
                lines.append(f"({element})^-1 = {inverse if inverse is not None else 'not a unit'}")
    else:
        lines += [f"SU(3) RATIONAL TWISTED K-THEORY: {report.functor}", "=" * 60,
                  f"F(t) = {report.character}",
                  f"chi1 = {report.chi1}",
                  f"chi2 = {report.chi2}"]
        if report.sigma_expansions:
            for name, value in sorted(report.sigma_expansions.items()):
                lines.append(f"{name} = {value}")
        if report.status == "ok":
            lines += [f"J_F basis           = {', '.join(report.j_generators) or '0'}",
                      f"J_F saturated basis = {', '.join(report.j_saturated) or '0'}",
                      f"dim K0 (x) Q = {report.k0_dimension}",
                      f"K1 (x) Q = {report.k1} ({report.k1_certificate})",
                      f"regular sequence: {report.regular_sequence}"]
            if report.complex_dimension is not None:
                lines.append(f"dim H2 (complex route) = {report.complex_dimension}")
            if report.cross_check is not None:
                lines.append(f"{_mark(report.cross_check)} routes agree")
    if report.status != "ok":
        lines.append(f"⚠ status: {report.status}")
    for note in report.warnings:
        lines.append(f"⚠ {note}")
    if report.checks:
        lines.append("Checks:")
        lines += [f"  {_mark(passed)} {name}" for name, passed in report.checks.items()]
    return "\n".join(lines) + "\n"


def emit_json(report: Report) -> str:
    data = report.to_dict()
    data["schema_version"] = SCHEMA_VERSION
    return json.dumps(data, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def report_from_json(text: str) -> Report:
    data = json.loads(text)
    if data.get("schema_version") != SCHEMA_VERSION:
        raise ValueError(f"unsupported report schema {data.get('schema_version')!r}")
    if data.get("group") == "su2":
        return SU2Report.from_dict(data)
    return SU3Report.from_dict(data)


def _tex_escape(text: str) -> str:
    return text.replace("\\", r"\textbackslash{}").replace("_", r"\_").replace("^", r"\^{}")


def _tex_sym(text: str) -> str:
    text = re.sub(r"Sym\^(-?\d+)\(rho\)", r"\\mathrm{Sym}^{\1}(\\rho)", text)
    return text.replace("*", r" \cdot ")


def emit_tex(report: Report) -> str:
    lines = []
    if isinstance(report, SU2Report):
        g2 = sp.factor(sp.sympify(report.g2.replace("^", "**"), locals={"rho": RHO}))
        lines += [r"\begin{tabular}{lll}", r"\hline",
                  r"$F$ & $g_2(F)$ & $K_1$ \\", r"\hline",
                  f"\\texttt{{{_tex_escape(report.functor)}}} & ${sp.latex(g2)}$ & "
                  f"{_tex_escape(report.k1 or report.status)} \\\\",
                  r"\hline", r"\end{tabular}"]
    else:
        lines += [r"\begin{tabular}{ll}", r"\hline",
                  f"\\multicolumn{{2}}{{l}}{{\\texttt{{{_tex_escape(report.functor)}}}}} \\\\", r"\hline"]
        if report.sigma_expansions:
            lines += [f"$\\sigma_1^F$ & ${_tex_sym(report.sigma_expansions['sigma1'])}$ \\\\",
                      f"$\\sigma_2^F$ & ${_tex_sym(report.sigma_expansions['sigma2'])}$ \\\\"]
        chi1 = sp.sympify((report.chi1 or "0").replace("^", "**"))
        chi2 = sp.sympify((report.chi2 or "0").replace("^", "**"))
        lines += [f"$\\chi_1$ & ${sp.latex(chi1)}$ \\\\",
                  f"$\\chi_2$ & ${sp.latex(chi2)}$ \\\\",
                  f"$\\dim K_0 \\otimes \\mathbb{{Q}}$ & {report.k0_dimension} \\\\",
                  r"\hline", r"\end{tabular}"]
    return "\n".join(lines) + "\n"


EMITTERS = {"text": emit_text, "json": emit_json, "tex": emit_tex}


def write_output(text: str, path: Optional[str]):
    """Print to stdout, or write to the given path"""
    if path is None:
        print(text, end="")
        return
    try:
        directory = os.path.dirname(path)
        if directory:
            os.makedirs(directory, exist_ok=True)
        with open(path, 'w', encoding='utf-8') as f:
            f.write(text)
    except OSError as e:
        raise OutputError(f"cannot write {path}: {e}") from e
    print(f"Results written to: {path}")


# ============================================================================
# VERIFY MODE
# ============================================================================

Check = Tuple[str, bool, str]


def _oracle_check(name: str, lhs, rhs, points, tolerance: float, edge=(0, 1), scaled: bool = False) -> Check:
    result = check_identity(lhs, rhs, points, tolerance, edge, scaled)
    return f"oracle: {name}", result.passed, f"max error {result.max_abs_err:.2e}"


def verify_su2(F: ExponentialFunctor, config: RunConfig) -> List[Check]:
    report = k_groups_su2(F)
    checks: List[Check] = [(name, passed, "") for name, passed in report.checks.items()]
    points = sample_points("su2", config.oracle_points, config.seed, F)
    g1, g2 = g_coefficients(F)
    t = LaurentPoly.variable(RingTag.TORUS_SU2.names, "t")
    checks.append(_oracle_check("F(t) = g1 + t*g2", F.character,
                                restrict(g1, Restriction.SU2_TO_TORUS) + t * restrict(g2, Restriction.SU2_TO_TORUS),
                                points, config.tolerance, scaled=config.scaled_oracle))
    checks.append(_oracle_check("F(rho) = F(t)F(t^-1)", restrict(derived_elements(F).F_rho_su2,
                                                                 Restriction.SU2_TO_TORUS),
                                f_of_lines(F, [t, t ** -1]), points, config.tolerance, scaled=config.scaled_oracle))
    return checks


def verify_su3(F: ExponentialFunctor, config: RunConfig) -> List[Check]:
    report = k_groups_su3(F, config.route, config.step_limit)
    checks: List[Check] = [(name, passed, "") for name, passed in report.checks.items()]
    if report.cross_check is not None:
        checks.append(("complex and Koszul routes agree", report.cross_check,
                       f"{report.complex_dimension} vs {report.k0_dimension}"))

    complex_ = build_differentials(F)
    if report.status != "ok" or config.route == "koszul":
        checks += [(check.name, check.passed, "") for check in bredon_identities(F, complex_)]
    ranks = generic_rank_check(complex_, points=20, seed=config.seed)
    checks.append(("generic ranks of A and B are 3 and 6", ranks.passed,
                   f"A {sorted(set(ranks.ranks_a))}, B {sorted(set(ranks.ranks_b))}"))
    if report.status == "ok":
        orientation = orientation_check(F, config.step_limit)
        checks.append(("orientation reversal keeps the saturated ideal", orientation.equal, ""))

    derived = derived_elements(F)
    points = sample_points("su3", config.oracle_points, config.seed, F)
    delta = vandermonde().value
    t1 = torus_t(1)
    one = LaurentPoly.one(RingTag.TORUS_SU3.names)
    line = f_of_lines(F, [t1])
    q_plus, q_minus = q_pair(F)
    chi1 = LaurentPoly.zero(RingTag.SU3.names) if report.chi1 is None else _su3(report.chi1)
    chi2 = LaurentPoly.zero(RingTag.SU3.names) if report.chi2 is None else _su3(report.chi2)
    psi_plus, psi_minus = _su3(report.psi_plus), _su3(report.psi_minus)
    rows = [galois_row(seed) for seed in (line, t1, one)]
    checks.append(_oracle_check("chi1 * Delta = det(F, t, 1)", restrict(chi1, Restriction.SU3_TO_TORUS) * delta,
                                det_cofactor3(rows), points, config.tolerance, scaled=config.scaled_oracle))
    rows = [galois_row(seed) for seed in (line * t1, t1, one)]
    checks.append(_oracle_check("chi2 * Delta = det(F*t, t, 1)", restrict(chi2, Restriction.SU3_TO_TORUS) * delta,
                                det_cofactor3(rows), points, config.tolerance, scaled=config.scaled_oracle))
    checks.append(_oracle_check("Psi(q+) * Delta = q+", restrict(psi_plus, Restriction.SU3_TO_TORUS) * delta,
                                q_plus, points, config.tolerance, scaled=config.scaled_oracle))
    checks.append(_oracle_check("Psi(q-) * Delta = q-", restrict(psi_minus, Restriction.SU3_TO_TORUS) * delta,
                                q_minus, points, config.tolerance, scaled=config.scaled_oracle))
    for edge in ((0, 1), (1, 2), (0, 2)):
        checks.append(_oracle_check(f"lambda_F * mu_F = r(F(rho)) on edge {edge}",
                                    derived.lambda_F * derived.mu_F, derived.F_rho_u2,
                                    points, config.tolerance, edge, config.scaled_oracle))
    recomposed = sum((restrict(c, Restriction.SU3_TO_TORUS) * b
                      for c, b in zip(steinberg_decompose(derived.nu_F), steinberg_basis())),
                     LaurentPoly.zero(RingTag.TORUS_SU3.names))
    checks.append(_oracle_check(f"F(t1) over the basis {', '.join(STEINBERG_LABELS)}", derived.nu_F,
                                recomposed, points, config.tolerance, scaled=config.scaled_oracle))
    return checks


def _su3(text: str) -> LaurentPoly:
    return parse_laurent(text, RingTag.SU3.names)


def format_checks(F: ExponentialFunctor, group: str, checks: List[Check]) -> str:
    lines = ["=" * 60, f"VERIFICATION: {F.label} ({group})", "=" * 60]
    for name, passed, detail in checks:
        lines.append(f"  {_mark(passed)} {name}" + (f" ({detail})" if detail else ""))
    failed = sum(1 for _, passed, _ in checks if not passed)
    lines.append(f"\n{len(checks) - failed}/{len(checks)} checks passed")
    return "\n".join(lines) + "\n"


# ============================================================================
# BATCH MODE
# ============================================================================

def read_batch_file(path: str) -> List[Tuple[int, str]]:
    entries = []
    with open(path, 'r', encoding='utf-8') as f:
        for number, raw in enumerate(f, 1):
            line = raw.strip()
            if line and not line.startswith('#'):
                entries.append((number, line))
    return entries


def process_batch_line(config: RunConfig, number: int, spec: str) -> Dict:
    row = {header: "" for header in BATCH_HEADERS}
    row.update(schema_version=SCHEMA_VERSION, line=number, functor=spec, group=config.group)
    try:
        report = compute_report(config, parse_functor(spec))
    except ParseError as e:
        row.update(status="bad_dsl", error=str(e))
        return row
    except Exception as e:
        logger.exception(f"Batch line {number} ({spec}) failed")
        row.update(status="error", error=str(e))
        return row

    row["status"] = report.status
    if isinstance(report, SU2Report):
        row["generators"] = report.g2_saturated or report.g2
        row["rank_or_dim"] = "" if report.rank is None else report.rank
        row["inverted_integer"] = "" if report.inverted_integer is None else report.inverted_integer
    else:
        row["generators"] = "; ".join(report.j_saturated or report.j_generators)
        row["rank_or_dim"] = "" if report.k0_dimension is None else report.k0_dimension
    return row


def write_batch_csv(rows: List[Dict], path: str) -> str:
    directory = os.path.dirname(path)
    try:
        if directory:
            os.makedirs(directory, exist_ok=True)
        with open(path, 'w', newline='', encoding='utf-8') as csvfile:
            writer = csv.DictWriter(csvfile, fieldnames=BATCH_HEADERS)
            writer.writeheader()
            for row in rows:
                writer.writerow(row)
    except OSError as e:
        raise OutputError(f"cannot write {path}: {e}") from e
    return path


def run_batch(config: RunConfig) -> int:
    entries = read_batch_file(config.batch)
    print("=" * 60)
    print(f"BATCH SWEEP: {len(entries)} functors ({config.group})")
    print("=" * 60)

    rows: Dict[int, Dict] = {}
    with ThreadPoolExecutor(max_workers=config.max_workers, thread_name_prefix="TwkBatch") as executor:
        futures = {
            executor.submit(process_batch_line, config, number, spec): (number, spec)
            for number, spec in entries
        }
        for future in as_completed(futures):
            number, spec = futures[future]
            row = future.result()
            rows[number] = row
            mark = "✓" if row["status"] == "ok" else ("⚠" if row["status"] == "hypothesis_failed" else "✗")
            print(f"{mark} line {number}: {spec} -> {row['status']}")

    ordered = [rows[number] for number, _ in entries]
    timestamp = datetime.now().strftime("%Y%m%d_%H%M%S")
    path = config.output or os.path.join(config.output_dir, f"twk_batch_{config.group}_{timestamp}.csv")
    write_batch_csv(ordered, path)

    errors = [row for row in ordered if row["status"] in ("error", "bad_dsl")]
    print(f"\nBATCH COMPLETE:")
    print(f"   • Total: {len(ordered)}")
    print(f"   • Computed: {sum(1 for row in ordered if row['status'] == 'ok')}")
    print(f"   • Hypothesis failures: {sum(1 for row in ordered if row['status'] == 'hypothesis_failed')}")
    print(f"   • Errors: {len(errors)}")
    print(f"Results written to: {path}")
    return EXIT_FAILED if errors else EXIT_OK


# ============================================================================
# DRIVER
# ============================================================================

def run(config: RunConfig) -> int:
    """
    Execute one configuration

    Args:
        config: Parsed command line merged with the loaded settings

    Returns:
        Exit status: 0 success, 1 internal error or failed check, 2 hypothesis
        failure, 64 bad functor DSL, 73 unwritable output path
    """
    try:
        if config.batch:
            return run_batch(config)

        try:
            F = parse_functor(config.functor)
        except ParseError as e:
            print(f"✗ Bad functor specification\n{e.diagnostic()}", file=sys.stderr)
            return EXIT_BAD_DSL

        if config.mode == "export-matrices":
            if config.group != "su3":
                print("✗ Matrix export is only available for su3", file=sys.stderr)
                return EXIT_FAILED
            data = matrices_to_export(build_differentials(F))
            write_output(json.dumps(data, sort_keys=True, indent=2) + "\n", config.output)
            return EXIT_OK

        if config.mode == "verify":
            hypotheses = hypothesis_checks(F)
            if not (hypotheses.su2_ok if config.group == "su2" else hypotheses.su3_ok):
                print(f"⚠ Hypothesis fails for {F.label}; nothing to verify", file=sys.stderr)
                return EXIT_HYPOTHESIS
            checks = verify_su2(F, config) if config.group == "su2" else verify_su3(F, config)
            write_output(format_checks(F, config.group, checks), config.output)
            return EXIT_OK if all(passed for _, passed, _ in checks) else EXIT_FAILED

        report = compute_report(config, F)
        write_output(EMITTERS[config.emit](report), config.output)
        if report.status == "hypothesis_failed":
            if config.group == "su2":
                print("⚠ Hypothesis F(C) != F(C*) fails: F(t) = F(t^-1), so g2(F) = 0", file=sys.stderr)
            else:
                print("⚠ Hypothesis deg F(t) > 0 fails", file=sys.stderr)
            return EXIT_HYPOTHESIS
        return EXIT_OK if report.ok else EXIT_FAILED

    except OutputError as e:
        print(f"✗ {e}", file=sys.stderr)
        return EXIT_UNWRITABLE
    except (AssertionError, DecompositionError, StepLimitExceeded, ValueError) as e:
        logger.exception("Computation failed")
        print(f"✗ Internal error: {e}", file=sys.stderr)
        return EXIT_FAILED


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(description="Twisted equivariant K-theory of SU(2) and SU(3) "
                                                 "for exponential functor twists")
    parser.add_argument('--group', choices=['su2', 'su3'], required=True)
    parser.add_argument('--functor', help="functor DSL, e.g. 'ext_full^3' or 'ext_top^2 * fw(3)'")
    parser.add_argument('--mode', choices=['compute', 'verify', 'export-matrices'], default='compute')
    parser.add_argument('--emit', choices=['text', 'json', 'tex'], default='text')
    parser.add_argument('--oracle-points', type=int, help="numeric oracle sample size (default TWK_ORACLE_POINTS)")
    parser.add_argument('--seed', type=int, help="oracle seed (default TWK_SEED)")
    parser.add_argument('--scaled-oracle', action='store_true',
                        help="divide oracle errors by max(1, |lhs|, |rhs|) for characters with large values")
    parser.add_argument('--route', choices=['koszul', 'complex', 'both'], default='koszul')
    parser.add_argument('--output', help="write the result to this path instead of stdout")
    parser.add_argument('--batch', help="file with one functor per line; writes a CSV summary")
    parser.add_argument('--config', help="path to a .env file")
    parser.add_argument('-v', '--verbose', action='count', default=0)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if not args.functor and not args.batch:
        parser.error("either --functor or --batch is required")

    try:
        settings = load_settings(args.config)
    except ValueError as e:
        print(f"✗ Configuration error: {e}", file=sys.stderr)
        return EXIT_FAILED

    configure_logging({0: settings.log_level, 1: "INFO"}.get(args.verbose, "DEBUG"))

    config = RunConfig(
        group=args.group,
        functor=args.functor or "",
        mode=args.mode,
        emit=args.emit,
        oracle_points=args.oracle_points if args.oracle_points is not None else settings.oracle_points,
        seed=args.seed if args.seed is not None else settings.seed,
        route=args.route,
        output=args.output,
        batch=args.batch,
        step_limit=settings.step_limit,
        tolerance=settings.oracle_tolerance,
        scaled_oracle=args.scaled_oracle,
        max_workers=settings.max_workers,
        output_dir=settings.output_dir,
    )
    return run(config)


if __name__ == "__main__":
    sys.exit(main())
