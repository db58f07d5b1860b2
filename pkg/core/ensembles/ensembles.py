"""
Monte Carlo experiments over random graph families.
"""

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np
import pandas as pd
from scipy import optimize, stats as sps

from core import settings
from core.dense_linalg import eigendecompose, restrict_to_complement, deflate_all_ones_basis
from core.error_handler import ExperimentError, NumericalError, ValidationError, SignedLaplacianError
from core.graph_core import Graph, classify, complete_graph, cycle_graph, describe
from core.moment_bounds import (
    EdgeMoments, graph_profile, theorem_bounds, equal_weight_extremes, complete_graph_bounds,
    fluctuation_radius, regular_improvement_floor, sandwich_tolerance, GraphProfile
)
from core.spectral_ops.spectral_ops import laplacian
from core.spectral_ops.weights import WeightVector
from .ensemble_models import (
    AConstant, DegreeTailParams, DegreeTailResult, ErParams, WeightModel, LadderPoint,
    ConcentrationResult, TightnessResult, TrialRecord, EdgeCountCheck, FriedmanFloorResult,
    ExperimentSummary, FAMILIES
)
from .generators import gen_er, gen_regular, gen_weights, trial_seed, seed_value, rng_for

FRIEDMAN_SLACK = 0.25
A_RESIDUAL_TOL = 1e-12


def solve_a(p0: float) -> AConstant:
    """
    The root a in (0, 1) of p0 - 1 = a p0 (1 - ln a), by bisection.

    a (1 - ln a) is increasing on (0, 1), so the root is unique.
    """
    if p0 <= 1.0:
        raise ValidationError("a(p0) needs p0 > 1", field="p0", value=p0)
    target = (p0 - 1.0) / p0

    def f(a: float) -> float:
        return a * (1.0 - math.log(a)) - target

    a = optimize.bisect(f, 1e-300, 1.0, xtol=1e-300, rtol=4 * np.finfo(float).eps, maxiter=2000)
    residual = abs(p0 - 1.0 - a * p0 * (1.0 - math.log(a)))
    if residual > A_RESIDUAL_TOL:
        raise NumericalError(f"a(p0) residual {residual:.3e} above tolerance", operation="solve_a",
                             context={"p0": p0, "a": a})
    return AConstant(p0=p0, a=a, residual=residual)


def degree_tail_beta(p0: float, c: float) -> float:
    """beta(C) = 2 - p0 - C p0 ln C + C p0."""
    return 2.0 - p0 - c * p0 * math.log(c) + c * p0


def degree_tail_params(p0: float, c: float) -> DegreeTailParams:
    beta = degree_tail_beta(p0, c)
    return DegreeTailParams(
        p0=p0, c=c, beta=beta, beta_negative=beta < 0,
        stated_main_text=1.0 - 2.55 * p0,
        stated_appendix=1.0 - 2.54 * p0,
    )


def min_sufficient_c(p0: float) -> float:
    """Smallest C > 1 with beta(C) < 0; beta is decreasing in C on (1, inf)."""
    if p0 <= 1.0:
        raise ValidationError("Need p0 > 1", field="p0", value=p0)
    hi = 2.0
    while degree_tail_beta(p0, hi) >= 0:
        hi *= 2.0
    return optimize.bisect(lambda c: degree_tail_beta(p0, c), 1.0, hi, xtol=1e-12)


def degree_tail_union_bound(n: int, p0: float, c: float) -> float:
    """N * P(Bin(N-1, p) > C p0 ln N), capped at 1."""
    p = p0 * math.log(n) / n
    k = math.floor(c * p0 * math.log(n))
    return float(min(1.0, n * sps.binom.sf(k, n - 1, p)))


def _critical_params(n: int, p0: float) -> ErParams:
    try:
        return ErParams(n=n, regime='critical', p0=p0)
    except ValueError as e:
        raise ExperimentError(f"Invalid critical regime: {e}", family="er_critical", original_error=e)


def run_degree_tail_experiment(n: int, p0: float, c: float, trials: int, seed: int) -> DegreeTailResult:
    """Fraction of critical Erdos-Renyi samples with max degree <= C p0 ln N."""
    params = _critical_params(n, p0)
    tail = degree_tail_params(p0, c)
    threshold = tail.k_threshold(n)
    max_degrees = [max(gen_er(params, trial_seed(seed, t)).degree) for t in range(trials)]
    within = sum(1 for d in max_degrees if d <= threshold)
    result = DegreeTailResult(
        n=n, p0=p0, c=c, trials=trials, seed=seed, k_threshold=threshold,
        fraction_within=within / trials, worst_max_degree=max(max_degrees),
        union_bound=degree_tail_union_bound(n, p0, c), beta=tail.beta,
    )
    logging.info(f"Degree tail n={n} p0={p0} C={c}: {within}/{trials} within {threshold:.2f}")
    return result


def critical_er_positivity(n: int, p0: float, moments: EdgeMoments) -> Tuple[bool, float]:
    """
    Asymptotic positivity condition for critical Erdos-Renyi graphs,
    Q^2 > 4 (N-1) / a(p0)^2 * (P - Q^2); returns (holds, margin).
    """
    a = solve_a(p0).a
    margin = moments.q * abs(moments.q) - 4.0 * (n - 1) / (a * a) * moments.variance
    return margin > settings.POSITIVITY_TOL, margin


def run_lambda2_concentration(params: ErParams, trials: int, seed: int,
                              ladder: Sequence[int]) -> ConcentrationResult:
    """
    Median over trials of |lambda_2^G / (N p) - target| for each N in the ladder.

    The target is a(p0) in the critical regime and 1 in the supercritical regime.
    Disconnected samples are counted and left out.
    """
    if trials < 30:
        raise ExperimentError("Concentration runs need at least 30 trials", family=f"er_{params.regime}")
    target = solve_a(params.p0).a if params.regime == 'critical' else 1.0
    points: List[LadderPoint] = []
    for step, n in enumerate(ladder):
        try:
            at_n = params.with_n(n)
        except ValueError as e:
            raise ExperimentError(f"Invalid ladder size {n}: {e}", family=f"er_{params.regime}", original_error=e)
        p = at_n.derived_p
        deviations, disconnected = [], 0
        for t in range(trials):
            g = gen_er(at_n, trial_seed(seed, step * trials + t))
            if g.edge_count == 0 or not classify(g).connected:
                disconnected += 1
                continue
            lambda2_g, _ = equal_weight_extremes(g)
            deviations.append(abs(lambda2_g / (n * p) - target))
        if not deviations:
            raise ExperimentError(f"Every sample at n={n} was disconnected", family=f"er_{params.regime}")
        points.append(LadderPoint(n=n, p=p, median_abs_dev=float(np.median(deviations)),
                                  trials=trials, disconnected=disconnected))
        logging.info(f"lambda_2 concentration n={n}: median |dev| = {points[-1].median_abs_dev:.4g} "
                     f"({disconnected} disconnected)")
    return ConcentrationResult(regime=params.regime, target=target, ladder=points)


def _restricted_extremes(g: Graph, w: np.ndarray, basis: np.ndarray) -> Tuple[float, float]:
    m = restrict_to_complement(laplacian(g, WeightVector(w)), basis)
    values = eigendecompose(m, method="lapack").eigenvalues_ascending
    return float(values[0]), float(values[-1])


def _project_to_sphere(x: np.ndarray, radius: float) -> np.ndarray:
    x = x - np.mean(x)
    norm = np.linalg.norm(x)
    return x * (radius / norm) if norm > 0 else x


def tightness_search(n: int, q: float, p_target: float, iterations: int, seed: int,
                     restarts: int = 20) -> TightnessResult:
    """
    Search mean-zero fluctuations of norm sqrt(E (P - Q^2)) on K_n for weightings whose
    extreme eigenvalues reach the complete-graph bounds.

    Each restart starts from a random direction and runs coordinate descent with a
    halving step (floor 1e-10), projecting back onto the sphere after every move.
    `iterations` counts coordinate sweeps over all restarts. Gaps are normalized by
    the interval half-width.
    """
    if n < 3:
        raise ValidationError("Tightness search needs n >= 3", field="n", value=n)
    if iterations < 1:
        raise ValidationError("Need at least one iteration", field="iterations", value=iterations)
    variance = p_target - q * q
    if variance < -1e-12 * max(1.0, p_target):
        raise ValidationError("p must be at least q^2", field="p", value=p_target)
    variance = max(variance, 0.0)

    g = complete_graph(n)
    e = g.edge_count
    stats = EdgeMoments(q=q, p=p_target, variance=variance, edge_count=e)
    bounds = complete_graph_bounds(n, stats)
    half_width = fluctuation_radius(e, variance, float(n), n)
    radius = math.sqrt(e * variance)
    basis = deflate_all_ones_basis(n)
    mean = np.full(e, q)

    if radius == 0.0:
        low, high = _restricted_extremes(g, mean, basis)
        return TightnessResult(n=n, q=q, p=p_target, lower_bound=bounds.lower, upper_bound=bounds.upper,
                               achieved_min=low, achieved_max=high, best_gap_lower=0.0, best_gap_upper=0.0,
                               best_weights=mean.tolist(), best_weights_upper=mean.tolist(), evaluations=1)

    rng = rng_for(seed)
    restarts = max(1, min(restarts, iterations))
    sweeps_per_restart = max(1, iterations // restarts)
    evaluations = 0

    def search(sign: float):
        """sign=+1 minimizes the smallest eigenvalue, sign=-1 maximizes the largest."""
        nonlocal evaluations

        def objective(x):
            nonlocal evaluations
            evaluations += 1
            low, high = _restricted_extremes(g, mean + x, basis)
            return low if sign > 0 else -high

        best_x, best_val = None, math.inf
        for _ in range(restarts):
            x = _project_to_sphere(rng.standard_normal(e), radius)
            val = objective(x)
            step = 0.5 * radius
            for _ in range(sweeps_per_restart):
                improved = False
                for k in range(e):
                    for direction in (1.0, -1.0):
                        trial = x.copy()
                        trial[k] += direction * step
                        trial = _project_to_sphere(trial, radius)
                        trial_val = objective(trial)
                        if trial_val < val:
                            x, val, improved = trial, trial_val, True
                if not improved:
                    step *= 0.5
                    if step < 1e-10:
                        break
            if val < best_val:
                best_x, best_val = x, val
        return best_x, best_val

    x_low, val_low = search(1.0)
    x_high, val_high = search(-1.0)
    achieved_min, achieved_max = val_low, -val_high
    gap_lower = abs(achieved_min - bounds.lower) / half_width
    gap_upper = abs(bounds.upper - achieved_max) / half_width
    logging.info(f"Tightness search K_{n}: gaps lower={gap_lower:.3e} upper={gap_upper:.3e} "
                 f"after {evaluations} evaluations")
    return TightnessResult(
        n=n, q=q, p=p_target, lower_bound=bounds.lower, upper_bound=bounds.upper,
        achieved_min=achieved_min, achieved_max=achieved_max,
        best_gap_lower=gap_lower, best_gap_upper=gap_upper,
        best_weights=(mean + x_low).tolist(), best_weights_upper=(mean + x_high).tolist(),
        evaluations=evaluations,
    )


def edge_count_check(params: ErParams, trials: int, seed: int) -> EdgeCountCheck:
    """z-scores of the edge count against the binomial mean; flagged above 3 sd, failed above 4 sd."""
    pairs = params.n * (params.n - 1) / 2.0
    p = params.derived_p
    expected = p * pairs
    sd = math.sqrt(pairs * p * (1.0 - p))
    counts = np.array([gen_er(params, trial_seed(seed, t)).edge_count for t in range(trials)], dtype=float)
    z = np.abs(counts - expected) / sd if sd > 0 else np.zeros_like(counts)
    return EdgeCountCheck(
        trials=trials, expected_edges=expected, mean_edges=float(np.mean(counts)),
        max_abs_z=float(np.max(z)), flagged=int(np.sum((z > 3.0) & (z <= 4.0))), failed=int(np.sum(z > 4.0)),
    )


def friedman_floor_experiment(d: int, n: int, trials: int, seed: int) -> FriedmanFloorResult:
    """Fraction of random d-regular samples with lambda_2^G >= d - 2 sqrt(d-1) - 0.25."""
    floor = d - 2.0 * math.sqrt(d - 1) - FRIEDMAN_SLACK
    above, ratio_above_one, ratios = 0, 0, []
    for t in range(trials):
        profile = graph_profile(gen_regular(n, d, trial_seed(seed, t)))
        if profile.lambda2_g >= floor:
            above += 1
        ratios.append(profile.improvement_ratio)
        if profile.improvement_ratio > 1.0:
            ratio_above_one += 1
    logging.info(f"Friedman floor d={d} n={n}: {above}/{trials} above {floor:.4f}; "
                 f"asymptotic ratio floor {regular_improvement_floor(d):.4f}")
    return FriedmanFloorResult(d=d, n=n, trials=trials, floor=floor, fraction_above_floor=above / trials,
                               fraction_ratio_above_one=ratio_above_one / trials,
                               min_improvement_ratio=float(min(ratios)))


def _family_graph(family: str, params: Dict[str, Any], seed) -> Graph:
    n = int(params['n'])
    if family == 'complete':
        return complete_graph(n)
    if family == 'cycle':
        return cycle_graph(n)
    if family == 'er_critical':
        return gen_er(_critical_params(n, float(params['p0'])), seed)
    if family == 'er_supercritical':
        return gen_er(ErParams(n=n, regime='supercritical', p=float(params['p'])), seed)
    if family == 'random_regular':
        return gen_regular(n, int(params['d']), seed)
    raise ExperimentError(f"Unknown family '{family}'", family=family)


def _validate_family(family: str, params: Dict[str, Any]):
    if family not in FAMILIES:
        raise ExperimentError(f"Unknown family '{family}'; choose from {', '.join(FAMILIES)}", family=family)
    required = {'complete': ('n',), 'cycle': ('n',), 'er_critical': ('n', 'p0'),
                'er_supercritical': ('n', 'p'), 'random_regular': ('n', 'd')}[family]
    missing = [key for key in required if params.get(key) is None]
    if missing:
        raise ExperimentError(f"Missing parameters: {', '.join(missing)}", family=family)
    if int(params['n']) < 3:
        raise ExperimentError("Families need n >= 3", family=family)


def false_positives(certificate: Optional[Dict[str, Any]]) -> Tuple[bool, bool]:
    """
    (moment, naive) certificate false positives against the oracle: the moment certificate
    must leave every eigenvalue on the complement of 1_N positive, the naive one nonnegative.
    """
    if not certificate or "oracle_eigenvalues" not in certificate:
        return False, False
    low = min(certificate["oracle_eigenvalues"])
    tol = sandwich_tolerance(certificate["lower"], certificate["upper"])
    return (bool(certificate["positivity_paper"] and low <= 0),
            bool(certificate["positivity_naive"] and low < -tol))


def _run_trial(index: int, family: str, params: Dict[str, Any], model: WeightModel, seed: int,
               shared: Optional[GraphProfile]) -> TrialRecord:
    graph_seed, weight_seed = trial_seed(seed, index).spawn(2)
    g = shared.graph if shared is not None else _family_graph(family, params, graph_seed)
    stats = describe(g)
    record = dict(trial=index, seed=seed_value(trial_seed(seed, index)), graph_stats=stats,
                  weight_model=model.descriptor())
    if g.edge_count < 2:
        return TrialRecord(spectral={"lambda2_g": None, "lambdaN_g": None, "mu": None},
                           note="fewer than two edges", **record)
    profile = shared if shared is not None else graph_profile(g)
    weights = gen_weights(g.edge_count, model, weight_seed)
    certificate = theorem_bounds(g, weights, with_oracle=True, profile=profile)
    moment_false, naive_false = false_positives(certificate.to_document())
    note = "certificate false positive" if (moment_false or naive_false) else None
    return TrialRecord(
        spectral={"lambda2_g": profile.lambda2_g, "lambdaN_g": profile.lambdaN_g, "mu": profile.mu.value},
        certificate=certificate.to_document(), sandwich_holds=certificate.sandwich_holds, note=note, **record,
    )


def run_family_experiment(family: str, params: Dict[str, Any], weight_model: WeightModel, trials: int,
                          seed: int, workers: Optional[int] = None) -> Tuple[List[TrialRecord], ExperimentSummary]:
    """
    Generate a graph and weights per trial, certify with the oracle, and summarize.

    Fixed families (complete, cycle) share one graph profile across trials. Records
    are sorted by trial index whatever the execution order.
    """
    _validate_family(family, params)
    if trials < 1:
        raise ExperimentError("Need at least one trial", family=family)
    workers = settings.WORKERS if workers is None else workers
    shared = graph_profile(_family_graph(family, params, None)) if family in ('complete', 'cycle') else None
    logging.info(f"Experiment {family} params={params} trials={trials} seed={seed} workers={workers}")

    def run(index: int) -> TrialRecord:
        return _run_trial(index, family, params, weight_model, seed, shared)

    try:
        if workers > 1:
            with ThreadPoolExecutor(max_workers=workers) as pool:
                records = list(pool.map(run, range(trials)))
        else:
            records = [run(index) for index in range(trials)]
    except SignedLaplacianError:
        raise
    except Exception as e:
        raise ExperimentError(f"Trial failed: {e}", family=family, original_error=e)
    records.sort(key=lambda r: r.trial)
    return records, summarize(family, params, weight_model, seed, records)


def summarize(family: str, params: Dict[str, Any], weight_model: WeightModel, seed: int,
              records: List[TrialRecord]) -> ExperimentSummary:
    frame = pd.DataFrame([{
        "trial": r.trial,
        "connected": r.graph_stats["connected"],
        "certified": r.certificate is not None,
        "sandwich_holds": r.sandwich_holds,
        "improvement_ratio": r.certificate["improvement_ratio"] if r.certificate else np.nan,
        "moment_false": false_positives(r.certificate)[0],
        "naive_false": false_positives(r.certificate)[1],
        "lambda2_g": r.spectral["lambda2_g"],
    } for r in records])
    certified = frame[frame["certified"]]
    ratios = certified["improvement_ratio"]

    summary = dict(
        family=family, params=dict(params), weight_model=weight_model.descriptor(), trials=len(records),
        seed=seed, sandwich_violations=int((certified["sandwich_holds"] == False).sum()),  # noqa: E712
        paper_false_positives=int(frame["moment_false"].sum()),
        naive_false_positives=int(frame["naive_false"].sum()),
        disconnected=int((~frame["connected"]).sum()), skipped=int((~frame["certified"]).sum()),
    )
    if len(ratios):
        summary.update(improvement_ratio_min=float(ratios.min()), improvement_ratio_max=float(ratios.max()),
                       improvement_ratio_mean=float(ratios.mean()), improvement_ratio_median=float(ratios.median()))
    if family == 'er_critical':
        summary["a_p0"] = solve_a(float(params['p0'])).a
    if family == 'cycle':
        lambdaN = records[0].spectral["lambdaN_g"]
        summary["lambdaN_discrepancy"] = bool(lambdaN is not None and abs(lambdaN - 2.0) > 1e-12)
    if family == 'random_regular':
        d = int(params['d'])
        floor = d - 2.0 * math.sqrt(d - 1) - FRIEDMAN_SLACK
        summary["friedman_fraction"] = float((certified["lambda2_g"] >= floor).mean()) if len(certified) else None

    result = ExperimentSummary(**summary)
    if result.sandwich_violations:
        logging.error(f"{result.sandwich_violations} sandwich violations in {family} experiment")
    return result
