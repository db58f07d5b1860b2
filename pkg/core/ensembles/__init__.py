from .ensemble_models import (
    ErParams, WeightModel, AConstant, DegreeTailParams, DegreeTailResult, LadderPoint,
    ConcentrationResult, TightnessResult, TrialRecord, EdgeCountCheck, FriedmanFloorResult,
    ExperimentSummary, FAMILIES
)
from .generators import gen_er, gen_regular, gen_weights, trial_seed, rng_for, REGULAR_REJECTION_CAP
from .ensembles import (
    solve_a, degree_tail_beta, degree_tail_params, min_sufficient_c, degree_tail_union_bound,
    run_degree_tail_experiment, critical_er_positivity, run_lambda2_concentration, tightness_search,
    edge_count_check, friedman_floor_experiment, run_family_experiment, summarize, false_positives
)
from .records_io import RecordsWriter, records_writer, write_jsonl, read_jsonl, export_ladder

__all__ = [
    'ErParams', 'WeightModel', 'AConstant', 'DegreeTailParams', 'DegreeTailResult', 'LadderPoint',
    'ConcentrationResult', 'TightnessResult', 'TrialRecord', 'EdgeCountCheck', 'FriedmanFloorResult',
    'ExperimentSummary', 'FAMILIES', 'gen_er', 'gen_regular', 'gen_weights', 'trial_seed', 'rng_for',
    'REGULAR_REJECTION_CAP', 'solve_a', 'degree_tail_beta', 'degree_tail_params', 'min_sufficient_c',
    'degree_tail_union_bound', 'run_degree_tail_experiment', 'critical_er_positivity',
    'run_lambda2_concentration', 'tightness_search', 'edge_count_check', 'friedman_floor_experiment',
    'run_family_experiment', 'summarize', 'false_positives', 'RecordsWriter', 'records_writer',
    'write_jsonl', 'read_jsonl', 'export_ladder'
]
