import pandas as pd
import pytest

from src.services.scenario import error_regularity, load_metrics
from src.services.scenario.error_regularity import main
from src.utils.errors import MissingArtifactError, ParameterError


def test_summary_values():
    result = error_regularity([0.0, 0.0, 0.1, 0.3])
    assert result['total_codes'] == 4
    assert result['error_free_codes'] == 2
    assert result['error_free_pct'] == 50.0
    assert result['codes_with_errors_pct'] == 50.0
    assert result['mean_hamming'] == pytest.approx(0.1)
    assert result['median_hamming'] == pytest.approx(0.05)
    assert result['max_hamming'] == pytest.approx(0.3)


def test_empty_input():
    with pytest.raises(ParameterError):
        error_regularity([])


def _metrics(tmp_path):
    df = pd.DataFrame({
        'image_index': ['3', '4', 'mean'],
        'pearson_model': [0.9, 0.8, 0.85],
        'hamming_model': [0.0, 0.02, 0.01],
        'pearson_thr': [0.7, 0.6, 0.65],
        'hamming_thr': [0.1, 0.2, 0.15],
    })
    path = tmp_path / 'metrics.csv'
    df.to_csv(path, index=False)
    return path


def test_load_metrics_drops_summary_row(tmp_path):
    df = load_metrics(_metrics(tmp_path))
    assert len(df) == 2


def test_load_metrics_missing(tmp_path):
    with pytest.raises(MissingArtifactError, match='attack'):
        load_metrics(tmp_path / 'none.csv')


def test_main_prints_report(tmp_path, capsys):
    main([str(_metrics(tmp_path)), 'hamming_thr'])
    out = capsys.readouterr().out
    assert 'Error Regularity Analysis' in out
    assert 'REGULAR' in out
