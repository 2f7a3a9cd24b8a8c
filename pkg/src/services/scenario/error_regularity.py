"""
Scenario Analysis: Error Regularity of Estimated Codes

Hypothesis: a defender finds fakes more easily when the attacker's module
errors are spread over every code than when many codes come out error-free
and the errors concentrate on a few.

Input is the per-image normalized Hamming column of an attack metrics table.
"""

import sys
from pathlib import Path

import numpy as np
import pandas as pd

from src.utils.errors import MissingArtifactError, ParameterError


def load_metrics(filepath: str | Path) -> pd.DataFrame:
    """Load an attack metrics table without its summary row."""
    filepath = Path(filepath)
    if not filepath.exists():
        raise MissingArtifactError(f"No metrics table at {filepath}; run `attack` first")
    df = pd.read_csv(filepath)
    return df[df['image_index'] != 'mean'].reset_index(drop=True)


def error_regularity(hammings) -> dict:
    """Summarize how module errors are distributed across codes."""
    values = np.asarray(hammings, dtype=np.float64).ravel()
    if values.size == 0:
        raise ParameterError("error_regularity needs at least one code")

    total = int(values.size)
    error_free = int(np.count_nonzero(values == 0.0))

    return {
        'total_codes': total,
        'error_free_codes': error_free,
        'error_free_pct': error_free / total * 100,
        'codes_with_errors_pct': (total - error_free) / total * 100,
        'mean_hamming': float(values.mean()),
        'std_hamming': float(values.std()),
        'median_hamming': float(np.median(values)),
        'max_hamming': float(values.max()),
    }


def main(argv: list[str] | None = None):
    argv = sys.argv[1:] if argv is None else argv
    if not argv:
        print("usage: python -m src.services.scenario.error_regularity <metrics.csv> [column]")
        return
    column = argv[1] if len(argv) > 1 else 'hamming_model'

    print("=" * 60)
    print("Error Regularity Analysis")
    print("=" * 60)

    df = load_metrics(argv[0])
    analysis = error_regularity(df[column].astype(float))

    print(f"\nCodes analysed:          {analysis['total_codes']} ({column})")
    print(f"Error-free codes:        {analysis['error_free_codes']} ({analysis['error_free_pct']:.1f}%)")
    print(f"Codes with errors:       {analysis['codes_with_errors_pct']:.1f}%")
    print(f"\nNormalized Hamming per code:")
    print(f"  Mean:   {analysis['mean_hamming']:.4f}")
    print(f"  Std:    {analysis['std_hamming']:.4f}")
    print(f"  Median: {analysis['median_hamming']:.4f}")
    print(f"  Max:    {analysis['max_hamming']:.4f}")

    print("\n" + "=" * 60)
    print("CONCLUSION")
    print("=" * 60)
    if analysis['error_free_pct'] >= 50:
        print("Errors are IRREGULAR: most codes regenerate exactly, errors concentrate on few codes")
    else:
        print("Errors are REGULAR: most codes carry module errors")


if __name__ == '__main__':
    main()
