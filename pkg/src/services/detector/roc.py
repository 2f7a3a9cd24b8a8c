"""Threshold test on similarity scores and its ROC.

A print is accepted as authentic when alpha * d >= gamma. Over a sweep of
gamma, pd is the share of authentic scores with alpha * d >= gamma and pfa the
share of fake scores with alpha * d > gamma (strict).
"""

from dataclasses import dataclass
from typing import Literal

import numpy as np
import pandas as pd

from src.utils.errors import ParameterError

Measure = Literal["pearson", "hamming"]

# higher pearson means "more authentic"; higher hamming means "less"
MEASURE_SIGN: dict[str, int] = {"pearson": 1, "hamming": -1}


@dataclass(frozen=True, eq=False)
class ScoreSet:
    authentic: np.ndarray
    fake: np.ndarray
    measure: Measure

    def __post_init__(self):
        if self.measure not in MEASURE_SIGN:
            raise ParameterError(f"Unknown measure: {self.measure}")
        object.__setattr__(self, "authentic", np.asarray(self.authentic, dtype=np.float64).ravel())
        object.__setattr__(self, "fake", np.asarray(self.fake, dtype=np.float64).ravel())

    @property
    def alpha(self) -> int:
        return MEASURE_SIGN[self.measure]

    def to_frame(self) -> pd.DataFrame:
        """Two-column score,label table; label 1 = authentic, 0 = fake."""
        return pd.DataFrame({
            "score": np.concatenate([self.authentic, self.fake]),
            "label": np.concatenate([
                np.ones(self.authentic.size, dtype=np.int64),
                np.zeros(self.fake.size, dtype=np.int64),
            ]),
        })


@dataclass(frozen=True, eq=False)
class RocCurve:
    """Operating points ordered by decreasing gamma."""
    gamma: np.ndarray
    pd: np.ndarray
    pfa: np.ndarray

    @classmethod
    def from_points(cls, points) -> "RocCurve":
        gamma, pd_, pfa = (np.asarray(col, dtype=np.float64) for col in zip(*points))
        return cls(gamma, pd_, pfa)

    @property
    def points(self) -> list[tuple[float, float, float]]:
        return list(zip(self.gamma.tolist(), self.pd.tolist(), self.pfa.tolist()))

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame({"gamma": self.gamma, "pd": self.pd, "pfa": self.pfa})


def roc(scores: ScoreSet) -> RocCurve:
    if scores.authentic.size == 0 or scores.fake.size == 0:
        raise ParameterError("ROC needs at least one authentic and one fake score")
    authentic = np.sort(scores.alpha * scores.authentic)
    fake = np.sort(scores.alpha * scores.fake)

    levels = np.unique(np.concatenate([authentic, fake]))[::-1]
    gamma = np.concatenate([[np.inf], levels, [-np.inf]])

    pd_ = (authentic.size - np.searchsorted(authentic, gamma, side="left")) / authentic.size
    pfa = (fake.size - np.searchsorted(fake, gamma, side="right")) / fake.size
    return RocCurve(gamma, pd_, pfa)


def auc(curve: RocCurve) -> float:
    """Trapezoidal area under pd(pfa)."""
    if curve.pfa.size < 2:
        return 0.0
    order = np.lexsort((curve.pd, curve.pfa))
    pfa = curve.pfa[order]
    pd_ = curve.pd[order]
    area = float(np.sum(np.diff(pfa) * (pd_[1:] + pd_[:-1]) / 2.0))
    return min(max(area, 0.0), 1.0)


def pd_at_pfa(curve: RocCurve, target_pfa: float) -> float:
    """Best detection rate while keeping false acceptance at or below ``target_pfa``."""
    mask = curve.pfa <= target_pfa
    return float(curve.pd[mask].max()) if mask.any() else 0.0


def pfa_at_pd(curve: RocCurve, target_pd: float) -> float:
    """Lowest false acceptance that still detects at least ``target_pd`` of authentic prints."""
    mask = curve.pd >= target_pd
    return float(curve.pfa[mask].min()) if mask.any() else 1.0
