"""Huffman-depth driven differential privacy for repetitive real-time streams."""

from .budget_selection import BudgetConfig, FuzzyRange, Selector, select_budget
from .evaluation import Dataset, EvalReport, MechanismSpec, ingest_csv, mae, run_experiment
from .huffman_core import FrequencyTable, HuffmanCodebook, build_tree, weighted_code_length
from .perturbation import NoiseCache, NoiseParams, laplace_sample, perturb_value
from .pipeline import Mechanism, PerturbationResult, RunConfig, run_baseline, run_huffdp
from .privacy_leveling import LevelAssignment, assign_levels, required_privacy_label

__all__ = [
    "BudgetConfig", "FuzzyRange", "Selector", "select_budget",
    "Dataset", "EvalReport", "MechanismSpec", "ingest_csv", "mae", "run_experiment",
    "FrequencyTable", "HuffmanCodebook", "build_tree", "weighted_code_length",
    "NoiseCache", "NoiseParams", "laplace_sample", "perturb_value",
    "Mechanism", "PerturbationResult", "RunConfig", "run_baseline", "run_huffdp",
    "LevelAssignment", "assign_levels", "required_privacy_label",
]
