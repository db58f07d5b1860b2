"""
Seeded random graphs and edge weights.

Every generator takes an integer seed or a numpy SeedSequence and is a pure
function of its arguments.
"""

import logging
from collections import defaultdict
from typing import List, Optional, Set, Tuple, Union

import numpy as np

from core.error_handler import GenerationError, ValidationError
from core.graph_core import Graph, build_graph
from core.spectral_ops.weights import WeightVector
from .ensemble_models import ErParams, WeightModel

Seed = Union[int, np.random.SeedSequence]

REGULAR_REJECTION_CAP = 1000


def rng_for(seed: Seed) -> np.random.Generator:
    return np.random.default_rng(seed)


def trial_seed(master_seed: int, trial_index: int) -> np.random.SeedSequence:
    """Counter-based split: the trial index is mixed into the master seed's entropy."""
    return np.random.SeedSequence([int(master_seed), int(trial_index)])


def seed_value(seed: Seed) -> int:
    """Stable integer identifying a seed, for records."""
    if isinstance(seed, np.random.SeedSequence):
        return int(seed.generate_state(1, dtype=np.uint32)[0])
    return int(seed)


def gen_er(params: ErParams, seed: Seed) -> Graph:
    """Each of the N(N-1)/2 pairs is present independently with probability derived_p."""
    n, p = params.n, params.derived_p
    rng = rng_for(seed)
    rows, cols = np.triu_indices(n, k=1)
    keep = rng.random(rows.shape[0]) < p
    return build_graph(n, zip(rows[keep].tolist(), cols[keep].tolist()))


def _suitable(edges: Set[Tuple[int, int]], potential_edges) -> bool:
    """True if some pair of leftover stubs could still be joined."""
    if not potential_edges:
        return True
    nodes = sorted(potential_edges)
    for i, s1 in enumerate(nodes):
        for s2 in nodes[i + 1:]:
            if (s1, s2) not in edges:
                return True
    return False


def _try_pairing(n: int, d: int, rng: np.random.Generator) -> Optional[Set[Tuple[int, int]]]:
    """
    Pair half-edge stubs uniformly; pairs forming a self-loop or repeated edge are
    returned to the pool and re-paired. None when the leftover stubs cannot be joined.
    """
    edges: Set[Tuple[int, int]] = set()
    stubs: List[int] = list(range(n)) * d

    while stubs:
        potential_edges = defaultdict(int)
        shuffled = rng.permutation(stubs)
        for s1, s2 in zip(shuffled[0::2].tolist(), shuffled[1::2].tolist()):
            if s1 > s2:
                s1, s2 = s2, s1
            if s1 != s2 and (s1, s2) not in edges:
                edges.add((s1, s2))
            else:
                potential_edges[s1] += 1
                potential_edges[s2] += 1

        if not _suitable(edges, potential_edges):
            return None
        stubs = [node for node in sorted(potential_edges) for _ in range(potential_edges[node])]
    return edges


def gen_regular(n: int, d: int, seed: Seed) -> Graph:
    """
    Random simple d-regular graph from the configuration (pairing) model.

    Raises:
        ValidationError: if n*d is odd, d >= n or d < 3.
        GenerationError: after REGULAR_REJECTION_CAP failed pairings.
    """
    if (n * d) % 2 != 0:
        raise ValidationError(f"n*d = {n * d} must be even", field="d", value=d)
    if not 3 <= d < n:
        raise ValidationError("Random regular graphs need 3 <= d < n", field="d", value=d)

    rng = rng_for(seed)
    for attempt in range(REGULAR_REJECTION_CAP):
        edges = _try_pairing(n, d, rng)
        if edges is not None:
            if attempt:
                logging.debug(f"gen_regular(n={n}, d={d}) needed {attempt} restarts")
            return build_graph(n, edges)
    raise GenerationError(f"No simple {d}-regular pairing on {n} vertices after {REGULAR_REJECTION_CAP} attempts",
                          generator="gen_regular", context={"n": n, "d": d})


def gen_weights(e: int, model: WeightModel, seed: Seed) -> WeightVector:
    """Draw e edge weights from the model."""
    if e < 1:
        raise ValidationError("Need at least one edge weight", field="e", value=e)
    rng = rng_for(seed)
    if model.kind == 'constant':
        values = np.full(e, model.c)
    elif model.kind == 'gaussian':
        values = rng.normal(model.mean, model.sd, size=e)
    elif model.kind == 'uniform':
        values = rng.uniform(model.lo, model.hi, size=e)
    elif model.kind == 'signed_bernoulli':
        signs = np.where(rng.random(e) < model.p_plus, 1.0, -1.0)
        values = model.magnitude * signs
    elif model.kind == 'student_t':
        values = model.mean + model.sd * rng.standard_t(model.df, size=e)
    else:
        raise GenerationError(f"Unknown weight model '{model.kind}'", generator="gen_weights")
    return WeightVector(values)
