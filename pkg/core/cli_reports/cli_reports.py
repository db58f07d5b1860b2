"""
Subcommands of the command-line surface.

Each command returns a CommandResult; documents carry a reproducibility header
(tool, version, seed and the resolved parameters). Exit codes: 0 success or
positive certificate, 1 negative certificate or failed suite, 2 input error.
"""

import argparse
import json
import logging
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Dict, List, Optional, TextIO

import numpy as np

from core import settings
from core.dense_linalg import SymmetricMatrix, eigendecompose, eigenvalue_multiplicities
from core.ensembles import (
    ErParams, WeightModel, FAMILIES, gen_er, gen_regular, gen_weights, trial_seed,
    run_family_experiment, run_lambda2_concentration, run_degree_tail_experiment,
    min_sufficient_c, degree_tail_params, tightness_search, records_writer
)
from core.error_handler import (
    error_handler, ValidationError, ExperimentError, NumericalError
)
from core.graph_core import (
    Graph, load_edge_list, write_edge_list, complete_graph, cycle_graph, path_graph, star_graph
)
from core.moment_bounds import compute_mu, theorem_bounds, MU_METHODS
from core.spectral_ops.spectral_ops import laplacian, equal_weight_laplacian, line_graph_adjacency, incidence_matrix
from .report_formatter import report_formatter, OUTPUT_FORMATS
from .verify_suites import run_suites, SUITES

EXIT_OK = 0
EXIT_NEGATIVE = 1
SPECTRUM_MATRICES = ('laplacian', 'equal', 'line', 'incidence-gram')
GENERATE_FAMILIES = FAMILIES + ('path', 'star')


@dataclass
class CommandResult:
    """A document to render, or preformatted text, with the process exit code."""
    exit_code: int
    document: Optional[Dict[str, Any]] = None
    text: Optional[str] = None


def _resolved_params(args: argparse.Namespace) -> Dict[str, Any]:
    skip = {'handler', 'command', 'format'}
    params = {}
    for key, value in sorted(vars(args).items()):
        if key in skip:
            continue
        params[key] = str(value) if isinstance(value, Path) else value
    return params


def _document(kind: str, args: argparse.Namespace, result: Dict[str, Any],
              seed: Optional[int] = None) -> Dict[str, Any]:
    return {
        "tool": settings.TOOL_NAME,
        "version": settings.TOOL_VERSION,
        "kind": kind,
        "seed": seed,
        "params": _resolved_params(args),
        "result": result,
    }


def _load_weighted(path: Path, command: str):
    g, weights = load_edge_list(path)
    if weights is None:
        raise ValidationError(f"{command} needs a weighted edge list (u v weight per line)",
                              field="edge_list", value=str(path))
    return g, weights


def cmd_certify(args: argparse.Namespace) -> CommandResult:
    """Exit 0 when the moment condition certifies positivity on 1^perp, 1 otherwise."""
    g, weights = _load_weighted(args.edge_list, "certify")
    certificate = theorem_bounds(g, weights, with_oracle=args.oracle, mu_method=args.mu_method)
    if args.oracle and not certificate.sandwich_holds:
        raise NumericalError("Oracle eigenvalues fall outside the certified interval",
                             operation="sandwich", context={"lower": certificate.lower, "upper": certificate.upper})
    exit_code = EXIT_OK if certificate.positivity_paper else EXIT_NEGATIVE
    logging.info(f"Certificate for {args.edge_list}: positivity_paper={certificate.positivity_paper}")
    return CommandResult(exit_code, _document("certify", args, certificate.to_document()))


def cmd_bounds(args: argparse.Namespace) -> CommandResult:
    g, weights = _load_weighted(args.edge_list, "bounds")
    doc = theorem_bounds(g, weights, mu_method=args.mu_method).to_document()
    for key in ("positivity_paper", "positivity_naive", "margins"):
        doc.pop(key)
    return CommandResult(EXIT_OK, _document("bounds", args, doc))


def cmd_mu(args: argparse.Namespace) -> CommandResult:
    g, _ = load_edge_list(args.edge_list)
    mu = compute_mu(g, method=args.method, rng=np.random.default_rng(settings.DEFAULT_SEED))
    return CommandResult(EXIT_OK, _document("mu", args, mu.model_dump(mode="json"), seed=settings.DEFAULT_SEED))


def _spectrum_matrix(g: Graph, weights, matrix: str) -> SymmetricMatrix:
    if matrix == 'laplacian':
        if weights is None:
            raise ValidationError("The signed Laplacian needs a weighted edge list; use --matrix equal",
                                  field="matrix", value=matrix)
        return laplacian(g, weights)
    if matrix == 'equal':
        return equal_weight_laplacian(g)
    if matrix == 'line':
        return line_graph_adjacency(g)
    c = incidence_matrix(g).astype(np.float64)
    if g.edge_count == 0:
        raise ValidationError("Incidence Gram matrix of an edgeless graph is empty", field="matrix", value=matrix)
    return SymmetricMatrix(c.T @ c)


def cmd_spectrum(args: argparse.Namespace) -> CommandResult:
    g, weights = load_edge_list(args.edge_list)
    spectrum = eigendecompose(_spectrum_matrix(g, weights, args.matrix))
    result = {
        "matrix": args.matrix,
        "method": spectrum.method,
        "eigenvalues_ascending": [float(x) for x in spectrum.eigenvalues_ascending],
        "eigenvalues_abs_order": [float(x) for x in spectrum.eigenvalues_abs_order],
        "multiplicities": [[value, count] for value, count in
                           eigenvalue_multiplicities(spectrum.eigenvalues_ascending)],
    }
    return CommandResult(EXIT_OK, _document("spectrum", args, result))


def _family_params(args: argparse.Namespace) -> Dict[str, Any]:
    return {key: getattr(args, key) for key in ('n', 'p0', 'p', 'd') if getattr(args, key, None) is not None}


def _generated_graph(args: argparse.Namespace) -> Graph:
    family, n = args.family, args.n
    if family == 'complete':
        return complete_graph(n)
    if family == 'cycle':
        return cycle_graph(n)
    if family == 'path':
        return path_graph(n)
    if family == 'star':
        return star_graph(n)
    if family == 'random_regular':
        if args.d is None:
            raise ExperimentError("random_regular needs --d", family=family)
        return gen_regular(n, args.d, trial_seed(args.seed, 0))
    params = _er_params(args)
    return gen_er(params, trial_seed(args.seed, 0))


def _er_params(args: argparse.Namespace, n: Optional[int] = None) -> ErParams:
    regime = 'critical' if args.family == 'er_critical' else 'supercritical'
    try:
        return ErParams(n=args.n if n is None else n, regime=regime, p0=args.p0, p=args.p)
    except ValueError as e:
        raise ExperimentError(f"Invalid Erdos-Renyi parameters: {e}", family=args.family, original_error=e)


def _weight_model(text: str) -> WeightModel:
    try:
        return WeightModel.parse(text)
    except ValueError as e:
        raise ValidationError(f"Invalid weight model '{text}': {e}", field="weights", value=text)


def cmd_generate(args: argparse.Namespace) -> CommandResult:
    """Edge list with the reproducibility header as leading comment lines."""
    g = _generated_graph(args)
    weights = None
    if args.weights:
        if g.edge_count == 0:
            raise ExperimentError("Generated graph has no edges to weight", family=args.family)
        weights = gen_weights(g.edge_count, _weight_model(args.weights), trial_seed(args.seed, 1))
    header = [
        f"# {settings.TOOL_NAME} {settings.TOOL_VERSION}",
        f"# seed {args.seed}",
        f"# params {json.dumps(_resolved_params(args), sort_keys=True)}",
    ]
    text = "\n".join(header) + "\n" + write_edge_list(g, weights)
    if args.out:
        Path(args.out).write_text(text, encoding='utf-8')
        logging.info(f"Wrote {args.family} graph with {g.edge_count} edges to {args.out}")
        return CommandResult(EXIT_OK, _document("generate", args, {"path": str(args.out), "n": g.vertex_count,
                                                                   "e": g.edge_count}, seed=args.seed))
    return CommandResult(EXIT_OK, text=text)


def _ladder(text: str) -> List[int]:
    try:
        sizes = [int(part) for part in text.split(',') if part.strip()]
    except ValueError:
        raise ValidationError(f"Ladder must be comma-separated integers, got '{text}'", field="ladder", value=text)
    if not sizes:
        raise ValidationError("Ladder is empty", field="ladder", value=text)
    return sizes


def cmd_experiment(args: argparse.Namespace) -> CommandResult:
    if args.ladder:
        if args.family not in ('er_critical', 'er_supercritical'):
            raise ExperimentError("--ladder applies to Erdos-Renyi families", family=args.family)
        sizes = _ladder(args.ladder)
        result = run_lambda2_concentration(_er_params(args, n=sizes[0]), args.trials, args.seed, sizes)
        if args.ladder_out:
            records_writer.export_ladder(result, args.ladder_out)
        body = {**result.model_dump(mode="json"), "trend": result.trend,
                "strictly_decreasing": result.strictly_decreasing}
        return CommandResult(EXIT_OK, _document("experiment", args, body, seed=args.seed))

    if args.degree_tail:
        if args.family != 'er_critical' or args.p0 is None:
            raise ExperimentError("--degree-tail needs --family er_critical and --p0", family=args.family)
        result = run_degree_tail_experiment(args.n, args.p0, args.c, args.trials, args.seed)
        body = {**result.model_dump(mode="json"),
                "tail_params": degree_tail_params(args.p0, args.c).model_dump(mode="json"),
                "min_sufficient_c": min_sufficient_c(args.p0)}
        return CommandResult(EXIT_OK, _document("experiment", args, body, seed=args.seed))

    model = _weight_model(args.weights)
    records, summary = run_family_experiment(args.family, _family_params(args), model, args.trials,
                                             args.seed, workers=args.workers)
    header = _document("experiment", args, {}, seed=args.seed)
    body: Dict[str, Any] = {"summary": summary.model_dump(mode="json")}
    if args.out:
        out = Path(args.out)
        records_writer.write_jsonl(out, records)
        summary_path = out.with_name(out.stem + ".summary.json")
        records_writer.write_summary(summary_path, summary, {k: v for k, v in header.items() if k != "result"})
        body.update(records_path=str(out), summary_path=str(summary_path))
    else:
        body["records"] = [r.model_dump(mode="json") for r in records]
    if summary.sandwich_violations:
        logging.error(f"Sandwich violations: {summary.sandwich_violations}")
    return CommandResult(EXIT_OK, {**header, "result": body})


def cmd_tightness(args: argparse.Namespace) -> CommandResult:
    result = tightness_search(args.n, args.q, args.p, args.iterations, args.seed, restarts=args.restarts)
    return CommandResult(EXIT_OK, _document("tightness", args, result.model_dump(mode="json"), seed=args.seed))


def cmd_verify(args: argparse.Namespace) -> CommandResult:
    reports = run_suites(args.suite, args.seed)
    passed = all(report.passed for report in reports)
    body = {"passed": passed, "suites": [report.model_dump(mode="json") for report in reports]}
    return CommandResult(EXIT_OK if passed else EXIT_NEGATIVE, _document("verify", args, body, seed=args.seed))


def build_parser() -> argparse.ArgumentParser:
    output = argparse.ArgumentParser(add_help=False)
    output.add_argument('--format', choices=OUTPUT_FORMATS, default='json')

    parser = argparse.ArgumentParser(
        prog="spectral_cli",
        description="Moment-based eigenvalue bounds for signed graph Laplacians."
    )
    sub = parser.add_subparsers(dest="command", required=True)

    certify = sub.add_parser('certify', parents=[output], help="certify positivity from weight moments")
    certify.add_argument('edge_list', type=Path)
    certify.add_argument('--oracle', action='store_true', help="also compute the eigenvalues and check the interval")
    certify.add_argument('--mu-method', choices=MU_METHODS, default='auto')
    certify.set_defaults(handler=cmd_certify)

    bounds = sub.add_parser('bounds', parents=[output], help="eigenvalue interval only")
    bounds.add_argument('edge_list', type=Path)
    bounds.add_argument('--mu-method', choices=MU_METHODS, default='auto')
    bounds.set_defaults(handler=cmd_bounds)

    mu = sub.add_parser('mu', parents=[output], help="line-graph constant mu with its bracket")
    mu.add_argument('edge_list', type=Path)
    mu.add_argument('--method', choices=MU_METHODS, default='auto')
    mu.set_defaults(handler=cmd_mu)

    spectrum = sub.add_parser('spectrum', parents=[output], help="eigenvalues of a derived matrix")
    spectrum.add_argument('edge_list', type=Path)
    spectrum.add_argument('--matrix', choices=SPECTRUM_MATRICES, default='laplacian')
    spectrum.set_defaults(handler=cmd_spectrum)

    def family_arguments(p: argparse.ArgumentParser, families):
        p.add_argument('--family', choices=families, required=True)
        p.add_argument('--n', type=int, required=True)
        p.add_argument('--p0', type=float)
        p.add_argument('--p', type=float)
        p.add_argument('--d', type=int)
        p.add_argument('--seed', type=int, default=settings.DEFAULT_SEED)

    generate = sub.add_parser('generate', parents=[output], help="write a seeded random or canonical graph")
    family_arguments(generate, GENERATE_FAMILIES)
    generate.add_argument('--weights', help="weight model, e.g. gaussian:mean=1,sd=0.5")
    generate.add_argument('--out', type=Path)
    generate.set_defaults(handler=cmd_generate)

    experiment = sub.add_parser('experiment', parents=[output], help="Monte Carlo runs over a graph family")
    family_arguments(experiment, FAMILIES)
    experiment.add_argument('--trials', type=int, default=100)
    experiment.add_argument('--weights', default='gaussian:mean=1,sd=0.5')
    experiment.add_argument('--out', type=Path, help="JSON-lines records; the summary goes beside it")
    experiment.add_argument('--workers', type=int, default=None)
    experiment.add_argument('--ladder', help="comma-separated N values for a lambda_2 concentration run")
    experiment.add_argument('--ladder-out', type=Path, help="CSV or xlsx table of the ladder")
    experiment.add_argument('--degree-tail', action='store_true', help="max-degree tail run (er_critical)")
    experiment.add_argument('--c', type=float, default=4.0, help="degree-tail constant C")
    experiment.set_defaults(handler=cmd_experiment)

    tightness = sub.add_parser('tightness', parents=[output], help="search K_n weightings attaining the bounds")
    tightness.add_argument('--n', type=int, required=True)
    tightness.add_argument('--q', type=float, required=True)
    tightness.add_argument('--p', type=float, required=True)
    tightness.add_argument('--iterations', type=int, default=200)
    tightness.add_argument('--restarts', type=int, default=20)
    tightness.add_argument('--seed', type=int, default=settings.DEFAULT_SEED)
    tightness.set_defaults(handler=cmd_tightness)

    verify = sub.add_parser('verify', parents=[output], help="run property suites on the fuzz corpus")
    verify.add_argument('--suite', choices=SUITES + ('all',), default='all')
    verify.add_argument('--seed', type=int, default=settings.DEFAULT_SEED)
    verify.set_defaults(handler=cmd_verify)
    return parser


def run(argv: Optional[List[str]] = None, stdout: TextIO = None, stderr: TextIO = None) -> int:
    """Parse, dispatch and render; returns the exit code."""
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    args = build_parser().parse_args(argv)
    try:
        result = args.handler(args)
        if result.text is not None:
            stdout.write(result.text)
        else:
            stdout.write(report_formatter.render(result.document, args.format))
        return result.exit_code
    except Exception as e:
        stderr.write(error_handler.handle_error(e, context={"command": args.command}) + "\n")
        return error_handler.exit_code(e)
