"""
Property suites run by `verify` over a fixed fuzz corpus of graphs.
"""

import logging
from typing import Callable, Dict, List, Tuple

import numpy as np
from pydantic import BaseModel

from core import settings
from core.dense_linalg import eigendecompose, SymmetricMatrix
from core.ensembles import ErParams, WeightModel, gen_er, gen_regular, gen_weights, trial_seed, false_positives
from core.graph_core import Graph, classify, complete_graph, cycle_graph, path_graph, star_graph
from core.moment_bounds import compute_mu, equal_weight_extremes, graph_profile, theorem_bounds
from core.spectral_ops.spectral_ops import (
    incidence_identities, incidence_matrix, hs_quadratic_form, line_graph_quadratic_form, laplacian
)
from core.spectral_ops.weights import WeightVector

SUITES = ('identities', 'sandwich', 'duality')
SANDWICH_WEIGHT_MODELS = (
    WeightModel(kind='gaussian', mean=1.0, sd=1.0),
    WeightModel(kind='gaussian', mean=0.0, sd=1.0),
    WeightModel(kind='signed_bernoulli', p_plus=0.8, magnitude=1.0),
    WeightModel(kind='uniform', lo=0.5, hi=1.5),
    WeightModel(kind='student_t', mean=1.0, sd=0.3, df=3.0),
)

FUZZ_CORPUS_SIZE = 200
SANDWICH_DRAWS = 5
ER_DENSITIES = (0.15, 0.3, 0.5)
REGULAR_SIZES = (10, 12, 16, 20, 24, 30, 40, 50, 64, 80, 100)


class PropertyResult(BaseModel):
    name: str
    checked: int = 0
    failed: int = 0


class SuiteReport(BaseModel):
    suite: str
    seed: int
    corpus_size: int
    properties: List[PropertyResult]

    @property
    def passed(self) -> bool:
        return all(p.failed == 0 for p in self.properties)


def fuzz_corpus(seed: int) -> List[Tuple[str, Graph]]:
    """
    Complete, cycle, path and star graphs, a few random regular samples, then seeded ER
    samples with 3 <= N <= 40 until the corpus holds FUZZ_CORPUS_SIZE graphs.
    """
    corpus: List[Tuple[str, Graph]] = []
    corpus += [(f"K_{n}", complete_graph(n)) for n in range(3, 9)]
    corpus += [(f"C_{n}", cycle_graph(n)) for n in (3, 4, 5, 6, 9, 12, 20)]
    corpus += [(f"P_{n}", path_graph(n)) for n in (3, 4, 7, 15)]
    corpus += [(f"S_{n}", star_graph(n)) for n in (3, 5, 10)]
    for index, (n, d) in enumerate(((8, 3), (10, 4), (16, 3), (20, 5), (30, 4))):
        corpus.append((f"RR({n},{d})", gen_regular(n, d, trial_seed(seed, 100 + index))))
    index = 0
    while len(corpus) < FUZZ_CORPUS_SIZE:
        n = 3 + (index * 7) % 38
        p = ER_DENSITIES[index % len(ER_DENSITIES)]
        g = gen_er(ErParams(n=n, regime='supercritical', p=p), trial_seed(seed, index))
        if g.edge_count >= 2:
            corpus.append((f"ER({n},{p})#{index}", g))
        index += 1
    return corpus


def regular_corpus(seed: int) -> List[Tuple[str, Graph]]:
    """C_3..C_64, K_3..K_12 and 50 seeded random d-regular graphs, d in {3, 4, 8}, N <= 100."""
    corpus: List[Tuple[str, Graph]] = [(f"C_{n}", cycle_graph(n)) for n in range(3, 65)]
    corpus += [(f"K_{n}", complete_graph(n)) for n in range(3, 13)]
    for index in range(50):
        d = (3, 4, 8)[index % 3]
        n = max(REGULAR_SIZES[index % len(REGULAR_SIZES)], 4 * d)
        corpus.append((f"RR({n},{d})#{index}", gen_regular(n, d, trial_seed(seed, 1000 + index))))
    return corpus


def _record(result: PropertyResult, ok: bool, label: str):
    result.checked += 1
    if not ok:
        result.failed += 1
        logging.error(f"Property '{result.name}' failed on {label}")


def identities_suite(corpus: List[Tuple[str, Graph]], seed: int) -> List[PropertyResult]:
    incidence = PropertyResult(name="incidence_identities")
    hs_line = PropertyResult(name="hs_equals_line_graph_form")
    hs_frobenius = PropertyResult(name="hs_equals_frobenius_norm")
    row_sums = PropertyResult(name="laplacian_row_sums_zero")
    gram = PropertyResult(name="incidence_gram_spectra_agree")
    rng = np.random.default_rng(seed)

    for label, g in corpus:
        residuals = incidence_identities(g)
        _record(incidence, all(not np.any(r) for r in residuals.values()), label)

        w = gen_weights(g.edge_count, WeightModel(kind='gaussian', mean=0.0, sd=1.0), rng.integers(2 ** 32))
        hs = hs_quadratic_form(g, w)
        line_form = line_graph_quadratic_form(g, w)
        _record(hs_line, abs(hs - line_form) <= 1e-12 * max(1.0, abs(hs)), label)
        lap = laplacian(g, w)
        frob = lap.frobenius_norm() ** 2
        _record(hs_frobenius, abs(hs - frob) <= settings.TAU_EIG * max(1.0, abs(hs)), label)
        # integer weights keep every row sum exactly representable
        integer_lap = laplacian(g, WeightVector(rng.integers(-5, 6, size=g.edge_count).astype(np.float64)))
        _record(row_sums, not np.any(integer_lap.entries @ np.ones(g.vertex_count)), label)

        c = incidence_matrix(g).astype(np.float64)
        small = eigendecompose(SymmetricMatrix(c @ c.T)).eigenvalues_ascending
        large = eigendecompose(SymmetricMatrix(c.T @ c)).eigenvalues_ascending
        tol = 1e-8 * max(1.0, float(large[-1]))
        nonzero_small = np.sort(small[small > tol])
        nonzero_large = np.sort(large[large > tol])
        _record(gram, nonzero_small.shape == nonzero_large.shape
                and bool(np.allclose(nonzero_small, nonzero_large, atol=tol)), label)
    return [incidence, hs_line, hs_frobenius, row_sums, gram]


def sandwich_suite(corpus: List[Tuple[str, Graph]], seed: int) -> List[PropertyResult]:
    sandwich = PropertyResult(name="oracle_within_bounds")
    moment = PropertyResult(name="moment_certificate_sound")
    naive = PropertyResult(name="naive_certificate_sound")
    for graph_index, (label, g) in enumerate(corpus):
        profile = graph_profile(g)
        for model_index, model in enumerate(SANDWICH_WEIGHT_MODELS):
            for draw in range(SANDWICH_DRAWS):
                stream = (graph_index * len(SANDWICH_WEIGHT_MODELS) + model_index) * SANDWICH_DRAWS + draw
                w = gen_weights(g.edge_count, model, trial_seed(seed, stream))
                certificate = theorem_bounds(g, w, with_oracle=True, profile=profile)
                moment_false, naive_false = false_positives(certificate.to_document())
                case = f"{label} with {model.kind} draw {draw}"
                _record(sandwich, bool(certificate.sandwich_holds), case)
                _record(moment, not moment_false, case)
                _record(naive, not naive_false and (not certificate.positivity_naive or bool(np.all(w.values > 0))),
                        case)
    return [sandwich, moment, naive]


def duality_suite(corpus: List[Tuple[str, Graph]], seed: int) -> List[PropertyResult]:
    """Line-graph bracket over the fuzz corpus; closed form against the projected solve on regular graphs."""
    closed_vs_projected = PropertyResult(name="regular_closed_form_matches_projected")
    bracket = PropertyResult(name="mu_within_line_graph_bracket")
    rng = np.random.default_rng(seed)
    for label, g in corpus:
        mu = compute_mu(g, method='projected', rng=rng)
        slack = 1e-8 * max(1.0, mu.value)
        _record(bracket, mu.bracket_low - slack <= mu.value <= mu.bracket_high + slack
                and mu.bracket_high <= mu.dmax_bound + slack, label)
    for label, g in regular_corpus(seed):
        d = classify(g).regular_degree
        mu = compute_mu(g, method='projected', rng=rng)
        lambda2_g, _ = equal_weight_extremes(g)
        closed = 2.0 * d + 2.0 - lambda2_g
        _record(closed_vs_projected, abs(closed - mu.value) <= 1e-8, label)
    return [closed_vs_projected, bracket]


SUITE_RUNNERS: Dict[str, Callable[[List[Tuple[str, Graph]], int], List[PropertyResult]]] = {
    'identities': identities_suite,
    'sandwich': sandwich_suite,
    'duality': duality_suite,
}


def run_suites(suite: str, seed: int) -> List[SuiteReport]:
    names = SUITES if suite == 'all' else (suite,)
    corpus = fuzz_corpus(seed)
    reports = []
    for name in names:
        properties = SUITE_RUNNERS[name](corpus, seed)
        report = SuiteReport(suite=name, seed=seed, corpus_size=len(corpus), properties=properties)
        logging.info(f"Suite {name}: {'pass' if report.passed else 'FAIL'} over {len(corpus)} graphs")
        reports.append(report)
    return reports
