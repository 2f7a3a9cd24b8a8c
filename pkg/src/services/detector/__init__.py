"""Defender: similarity measures, the threshold test and its ROC."""

from src.services.detector.roc import (
    MEASURE_SIGN,
    RocCurve,
    ScoreSet,
    auc,
    pd_at_pfa,
    pfa_at_pd,
    roc,
)
from src.services.detector.scoring import defender_threshold, score_experiment
from src.services.detector.similarity import hamming_norm, pearson, pearson_or_zero

__all__ = [
    "MEASURE_SIGN",
    "RocCurve",
    "ScoreSet",
    "auc",
    "defender_threshold",
    "hamming_norm",
    "pd_at_pfa",
    "pearson",
    "pearson_or_zero",
    "pfa_at_pd",
    "roc",
    "score_experiment",
]
