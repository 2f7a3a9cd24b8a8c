import matplotlib
matplotlib.use('Agg')
from matplotlib import pyplot as plt
import numpy as np
import os
import re

from src.services.detector.roc import RocCurve, ScoreSet, auc

# fixed id salt and no timestamp keep SVG output byte-identical across reruns
_SVG_RC = {'svg.hashsalt': 'pgc-clonability', 'svg.fonttype': 'none'}
_SVG_METADATA = {'Date': None}

_METHOD_COLORS = {'bn': 'tab:red', 'fc2': 'tab:orange', 'fc3': 'tab:olive', 'fc4': 'tab:purple',
                  'thr': 'tab:blue'}


class RocCharts:
    def __init__(self, printer: str, chart_root_path: str):
        self.printer = printer
        self.chart_root_path = chart_root_path

    @staticmethod
    def _sanitize_chart_name(name: str) -> str:
        """Remove characters invalid for file names on most OSes."""
        sanitized = re.sub(r"[\\/:*?\"<>|]+", "_", name.strip())
        return sanitized or "chart"

    def _save(self, fig, chart_name: str) -> str:
        os.makedirs(self.chart_root_path, exist_ok=True)
        chart_path = os.path.join(self.chart_root_path, f"{self._sanitize_chart_name(chart_name)}.svg")
        with plt.rc_context(_SVG_RC):
            fig.savefig(chart_path, format='svg', metadata=_SVG_METADATA)
        plt.close(fig)
        return chart_path

    def plot_roc(self, curves: dict[str, RocCurve], measure: str, log_scale: bool = False) -> str:
        """Pd against Pfa, one line per attack method."""
        with plt.rc_context(_SVG_RC):
            fig, ax = plt.subplots(figsize=(6, 6))
            for method, curve in curves.items():
                order = np.lexsort((curve.pd, curve.pfa))
                ax.plot(curve.pfa[order], curve.pd[order], drawstyle='steps-post',
                        color=_METHOD_COLORS.get(method, None),
                        label=f"{method.upper()} fakes (AUC {auc(curve):.3f})")

            if log_scale:
                # symlog keeps the pfa = 0 operating points on the axis
                positive = [c.pfa[c.pfa > 0].min() for c in curves.values() if (c.pfa > 0).any()]
                ax.set_xscale('symlog', linthresh=min(positive) if positive else 1e-3)
                ax.set_xlim(0, 1)
            else:
                ax.plot([0, 1], [0, 1], linestyle='--', color='grey', linewidth=0.8)
                ax.set_xlim(0, 1)
            ax.set_ylim(0, 1.02)
            ax.set_xlabel('Pfa')
            ax.set_ylabel('Pd')
            ax.set_title(f"{self.printer}: ROC for {measure}")
            ax.grid(True, alpha=0.4)
            ax.legend(loc='lower right')
            plt.tight_layout()

        suffix = '_log' if log_scale else ''
        return self._save(fig, f"roc_{measure}{suffix}")

    def plot_score_histogram(self, score_sets: dict[str, ScoreSet], measure: str) -> str:
        """Authentic scores against each method's fake scores."""
        with plt.rc_context(_SVG_RC):
            fig, ax = plt.subplots(figsize=(7, 4))
            first = next(iter(score_sets.values()))
            values = np.concatenate([first.authentic] + [s.fake for s in score_sets.values()])
            bins = np.linspace(values.min(), values.max() if values.max() > values.min() else values.min() + 1, 31)

            ax.hist(first.authentic, bins=bins, alpha=0.5, color='tab:green', label='authentic')
            for method, scores in score_sets.items():
                ax.hist(scores.fake, bins=bins, alpha=0.5, color=_METHOD_COLORS.get(method, None),
                        label=f"{method.upper()} fakes")
            ax.set_xlabel(measure)
            ax.set_ylabel('codes')
            ax.set_title(f"{self.printer}: {measure} scores")
            ax.grid(True, alpha=0.4)
            ax.legend()
            plt.tight_layout()

        return self._save(fig, f"hist_{measure}")
