import json

import numpy as np
import pytest

from src.services.attack import (
    PAPER_SPLIT_SIZES,
    SplitSizes,
    build_dataset,
    load_dataset,
    save_dataset,
)
from src.services.channel import ChannelParams, preset
from src.services.codegen import Geometry, generate_module_matrix
from src.utils.errors import FormatError, MissingArtifactError, ParameterError
from src.utils.seeding import image_seed, stream_seed


def test_split_by_index_order(identity_dataset):
    assert identity_dataset.splits == ["train"] * 4 + ["val"] * 2 + ["test"] * 2
    assert identity_dataset.indices("val") == [4, 5]


def test_block_counts_small():
    ds = build_dataset(4, Geometry(), {"SA": preset("SA")}, seed=1, split=SplitSizes(2, 1, 1))
    assert ds.block_counts() == {"train": 512, "val": 256, "test": 256}


def test_blocks_are_normalized_pairs(identity_dataset):
    inputs, targets = identity_dataset.blocks("train", "ID")
    assert inputs.shape == targets.shape == (4 * 4, 576)
    assert inputs.dtype == np.float32
    # identity channel: ink intensity equals the rendered target
    np.testing.assert_array_equal(inputs, targets)


def test_originals_follow_the_seed_scheme(identity_dataset):
    base = stream_seed(11, "originals")
    expected = generate_module_matrix(image_seed(base, 3), 8, 8)
    assert identity_dataset.originals[3] == expected
    assert identity_dataset.image_seeds[3] == image_seed(base, 3)


def test_same_seed_same_scans(tiny_geometry):
    printers = {"HP": preset("HP")}
    a = build_dataset(6, tiny_geometry, printers, seed=3, split=SplitSizes(2, 2, 2), max_workers=1)
    b = build_dataset(6, tiny_geometry, printers, seed=3, split=SplitSizes(2, 2, 2), max_workers=4)
    assert all(x == y for x, y in zip(a.scans["HP"], b.scans["HP"]))


def test_printers_get_independent_noise(noisy_dataset):
    sa = noisy_dataset.scans["SA"][0]
    clean = noisy_dataset.scans["ID"][0]
    assert sa != clean


def test_split_must_sum_to_total(tiny_geometry):
    with pytest.raises(ParameterError):
        build_dataset(5, tiny_geometry, {"ID": ChannelParams.identity()}, seed=0, split=SplitSizes(2, 2, 2))


def test_default_split_only_for_paper_scale(tiny_geometry):
    assert PAPER_SPLIT_SIZES.total == 384
    with pytest.raises(ParameterError):
        build_dataset(10, tiny_geometry, {"ID": ChannelParams.identity()}, seed=0)


def test_unknown_printer(identity_dataset):
    with pytest.raises(ParameterError, match="XX"):
        identity_dataset.blocks("train", "XX")


def test_save_load(tmp_path, noisy_dataset):
    manifest = save_dataset(noisy_dataset, tmp_path / "ds")
    loaded = load_dataset(tmp_path / "ds")
    assert loaded.splits == noisy_dataset.splits
    assert loaded.geometry == noisy_dataset.geometry
    assert loaded.channel_params == noisy_dataset.channel_params
    assert loaded.scan_seeds == noisy_dataset.scan_seeds
    assert all(a == b for a, b in zip(loaded.originals, noisy_dataset.originals))
    assert all(a == b for a, b in zip(loaded.scans["SA"], noisy_dataset.scans["SA"]))

    doc = json.loads(manifest.read_text())
    assert doc["images"][0]["original"] == "originals/code_0000.pbm"
    assert doc["images"][0]["scans"]["SA"] == "scans/SA/scan_0000.pgm"
    assert doc["printers"]["SA"]["dot_gain_radius"] == preset("SA").dot_gain_radius


def test_save_is_byte_identical(tmp_path, noisy_dataset):
    save_dataset(noisy_dataset, tmp_path / "a")
    save_dataset(noisy_dataset, tmp_path / "b")
    for rel in ("manifest.json", "originals/code_0005.pbm", "scans/SA/scan_0005.pgm"):
        assert (tmp_path / "a" / rel).read_bytes() == (tmp_path / "b" / rel).read_bytes()


def test_missing_dataset_names_gen(tmp_path):
    with pytest.raises(MissingArtifactError, match="gen"):
        load_dataset(tmp_path / "nothing")


def test_corrupt_manifest(tmp_path, identity_dataset):
    path = save_dataset(identity_dataset, tmp_path)
    path.write_text('{"seed": "x"}')
    with pytest.raises(FormatError):
        load_dataset(tmp_path)


@pytest.mark.slow
def test_paper_scale_block_counts():
    ds = build_dataset(384, Geometry(), {"SA": preset("SA")}, seed=2018)
    assert ds.block_counts() == {"train": 25_600, "val": 12_800, "test": 59_904}
    assert len(ds.scans["SA"]) == 384
