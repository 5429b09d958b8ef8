"""Acceptance gate: one test per criterion, each printing a PASS line.

Run with ``pytest tests/test_acceptance.py -v -s`` to see the recorded
values (PSNR figures are fixture-dependent and recorded, not asserted,
wherever the criterion says so).
"""

import math
import os
import subprocess
import sys

import numpy as np
import pytest

import tagmark as tm
from tagmark.attacks import GAUSSIAN, RANDOM_UNIFORM, SALT_PEPPER, AttackSpec

from conftest import checker_mark, synthetic_cover
from oracles import dct2_literal, eig_sym_desc


def ok(criterion, text):
    print(f"\nACCEPTANCE {criterion}: PASS - {text}")


@pytest.fixture(scope="module")
def fixture_pair():
    cover = synthetic_cover(256)
    mark = checker_mark(32, 32)
    watermarked, key = tm.embed(cover, mark, tm.EmbedParams(alpha=0.05))
    return cover, mark, watermarked, key


def test_criterion_1_transform_fidelity():
    rng = np.random.default_rng(910)
    blocks = rng.uniform(-1024, 1024, size=(1000, 8, 8))
    round_trip_err = np.max(np.abs(tm.idct2(tm.dct2(blocks)) - blocks))
    assert round_trip_err < 1e-9

    spectra = tm.dct2(blocks)
    oracle_err = max(
        np.max(np.abs(spectra[i] - dct2_literal(blocks[i]))) for i in range(1000)
    )
    assert oracle_err < 1e-10
    ok(1, f"transform fidelity (round trip {round_trip_err:.2e}, "
          f"literal-oracle deviation {oracle_err:.2e} over 1000 blocks)")


def test_criterion_2_svd_fidelity():
    rng = np.random.default_rng(920)
    eye = np.eye(8)
    worst_recon = worst_orth = worst_eig = 0.0
    for _ in range(1000):
        a = rng.uniform(-256, 256, size=(8, 8))
        f = tm.svd8(a)
        scale = max(1.0, np.linalg.norm(a))
        worst_recon = max(worst_recon, np.linalg.norm(tm.recompose(f) - a) / scale)
        worst_orth = max(
            worst_orth,
            np.max(np.abs(f.u.T @ f.u - eye)),
            np.max(np.abs(f.vt @ f.vt.T - eye)),
        )
        assert np.all(f.sigma >= 0.0)
        assert np.all(np.diff(f.sigma) <= 0.0)
        lam = eig_sym_desc(a.T @ a)
        worst_eig = max(
            worst_eig,
            np.max(np.abs(f.sigma**2 - lam)) / max(1.0, lam[0]),
        )
    assert worst_recon <= 1e-10
    assert worst_orth <= 1e-10
    assert worst_eig <= 1e-8
    ok(2, f"svd fidelity (reconstruction {worst_recon:.2e}, orthogonality "
          f"{worst_orth:.2e}, eigen-oracle deviation {worst_eig:.2e})")


def test_criterion_3_clean_round_trip(fixture_pair):
    cover, mark, watermarked, key = fixture_pair
    embed_db = tm.psnr(cover, watermarked)
    assert embed_db >= 30.0

    mark_svd, mark_dct = tm.extract(watermarked, key).images()
    ber_svd = np.mean((mark_svd >= 128) != (mark >= 128))
    ber_dct = np.mean((mark_dct >= 128) != (mark >= 128))
    assert ber_svd <= 0.01
    assert ber_dct <= 0.01

    report = tm.verify(watermarked, key, 30.0)
    assert report.authentic
    ok(3, f"clean round trip (embed PSNR {embed_db:.4f} dB, BER svd={ber_svd:.4f} "
          f"dct={ber_dct:.4f}, inter-mark PSNR {report.psnr_db:.4f} dB)")


def test_criterion_4_attack_ordering(fixture_pair):
    _, _, watermarked, key = fixture_pair
    clean = tm.verify(watermarked, key).psnr_db
    attacked_db = {}
    for spec in (
        AttackSpec(RANDOM_UNIFORM, density=0.02, amplitude=20.0, seed=303),
        AttackSpec(GAUSSIAN, sigma=10.0, seed=101),
        AttackSpec(SALT_PEPPER, density=0.02, seed=202),
    ):
        attacked = tm.apply_attack(watermarked, spec)
        attacked_db[spec.kind] = tm.verify(attacked, key).psnr_db

    assert clean > attacked_db[RANDOM_UNIFORM]
    assert attacked_db[RANDOM_UNIFORM] > attacked_db[GAUSSIAN]
    assert attacked_db[RANDOM_UNIFORM] > attacked_db[SALT_PEPPER]
    ok(4, "attack ordering (recorded inter-mark PSNR: "
          f"clean={clean:.4f} > random_uniform={attacked_db[RANDOM_UNIFORM]:.4f} > "
          f"gaussian={attacked_db[GAUSSIAN]:.4f}, "
          f"salt_pepper={attacked_db[SALT_PEPPER]:.4f})")


def test_criterion_5_negative_controls(fixture_pair):
    cover, _, watermarked, key = fixture_pair

    other_cover = ((np.arange(256)[:, None] * 7 + np.arange(256) * 13) % 251).astype(np.uint8)
    _, unrelated_key = tm.embed(other_cover, checker_mark(32, 32, cell=2))
    wrong_key = tm.verify(watermarked, unrelated_key, 30.0)
    assert not wrong_key.authentic

    unmarked = tm.verify(cover, key, 30.0)
    assert not unmarked.authentic
    ok(5, f"negative controls rejected (wrong key {wrong_key.psnr_db:.4f} dB, "
          f"unwatermarked cover {unmarked.psnr_db:.4f} dB, threshold 30)")


def test_criterion_6_metric_oracle():
    a = np.full((4, 4), 10, np.uint8)
    b = np.full((4, 4), 26, np.uint8)
    expected = 10.0 * math.log10(65025.0 / 256.0)
    assert abs(tm.psnr(a, b) - expected) < 1e-9

    img = np.arange(64, dtype=np.uint8).reshape(8, 8)
    assert tm.psnr(img, img) == math.inf

    assert tm.psnr(np.array([[0]], np.uint8), np.array([[255]], np.uint8)) == 0.0
    ok(6, f"metric oracle (constant-16 PSNR {tm.psnr(a, b):.12f} dB, "
          "identical -> inf, 0-vs-255 -> 0 dB)")


def test_criterion_7_determinism(fixture_pair, tmp_path):
    cover, mark, _, _ = fixture_pair

    runs = []
    for _ in range(2):
        watermarked, key = tm.embed(cover, mark)
        marks = tm.extract(watermarked, key)
        attacked = tm.apply_attack(watermarked, AttackSpec(GAUSSIAN, sigma=10.0, seed=5))
        runs.append((
            tm.write_pgm(watermarked),
            tm.render_key(key),
            tuple(tm.write_pgm(m) for m in marks.images()),
            tm.write_pgm(attacked),
        ))
    assert runs[0] == runs[1]

    # bit-identical output under different BLAS/OpenMP thread settings
    tm.save_pgm(tmp_path / "cover.pgm", synthetic_cover(64))
    tm.save_pgm(tmp_path / "mark.pgm", checker_mark(8, 8, cell=2))
    outputs = []
    for threads in ("1", "4"):
        env = dict(os.environ,
                   OMP_NUM_THREADS=threads,
                   OPENBLAS_NUM_THREADS=threads,
                   MKL_NUM_THREADS=threads)
        out = tmp_path / f"wm_{threads}.pgm"
        keyfile = tmp_path / f"key_{threads}.txt"
        proc = subprocess.run(
            [sys.executable, "-m", "tagmark", "embed",
             "--cover", str(tmp_path / "cover.pgm"), "--mark", str(tmp_path / "mark.pgm"),
             "--out", str(out), "--key", str(keyfile)],
            capture_output=True, env=env, text=True,
        )
        assert proc.returncode == 0, proc.stderr
        outputs.append((out.read_bytes(), keyfile.read_text()))
    assert outputs[0] == outputs[1]
    ok(7, "determinism (bit-identical repeated runs; bit-identical across "
          "1- and 4-thread BLAS settings)")


def test_criterion_8_format_round_trips(fixture_pair):
    rng = np.random.default_rng(980)
    for _ in range(30):
        h, w = rng.integers(1, 50, size=2)
        img = rng.integers(0, 256, size=(h, w)).astype(np.uint8)
        data = tm.write_pgm(img)
        assert tm.write_pgm(tm.read_pgm(data)) == data

    checked = 0
    for _ in range(5):
        rows, cols = rng.integers(1, 4, size=2)
        cover = rng.integers(0, 256, size=(rows * 8, cols * 8)).astype(np.uint8)
        mark = rng.integers(0, 256, size=(rows, cols)).astype(np.uint8)
        alpha = float(rng.uniform(0.01, 0.3))
        _, key = tm.embed(cover, mark, tm.EmbedParams(alpha=alpha))
        text = tm.render_key(key)
        assert tm.render_key(tm.parse_key(text)) == text
        checked += 1

    _, _, _, key = fixture_pair
    big = tm.render_key(key)
    assert tm.render_key(tm.parse_key(big)) == big
    ok(8, f"format round trips (30 PGM images and {checked + 1} TAGKEY files "
          "byte-identical through write->read->write)")
