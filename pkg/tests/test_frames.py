"""Frame construction, validation, Gram/projection duality, JSON formats."""

import itertools
import json

import numpy as np
import pytest

from framesel import (
    DiagonalSelector,
    FrameError,
    FrameFamily,
    compressed_gram,
    frame_from_dict,
    frame_to_dict,
    frame_to_projection,
    harmonic_frame,
    load_frame,
    load_projection,
    modulated_harmonic_frame,
    projection_from_dict,
    projection_to_frame,
    rescale_norms,
    save_frame,
    save_projection,
    validate_frame,
)


class TestConstruction:
    @pytest.mark.parametrize("k,N", [(1, 2), (1, 7), (2, 3), (4, 9), (8, 25), (3, 2)])
    def test_harmonic_is_exact_frame(self, k, N):
        F = harmonic_frame(k, N)
        assert F.m == k * N
        report = validate_frame(F)
        assert report.passed
        # exact unitary structure keeps both deviations at roundoff level
        assert report.norm_deviation < 1e-12
        assert report.parseval_deviation < 1e-12

    def test_norms_exactly_one_over_n(self):
        F = harmonic_frame(3, 4)
        norms2 = np.sum(np.abs(F.vectors) ** 2, axis=1)
        assert np.allclose(norms2, 0.25, atol=1e-15)

    def test_total_norm_is_dimension(self):
        F = harmonic_frame(5, 3)
        assert float(np.sum(np.abs(F.vectors) ** 2)) == pytest.approx(5.0, abs=1e-9)

    def test_parseval_sum_direct(self):
        F = harmonic_frame(4, 5)
        T = np.zeros((4, 4), dtype=np.complex128)
        for v in F.vectors:
            T += np.outer(v, v.conj())
        assert np.linalg.norm(T - np.eye(4)) < 1e-12

    def test_rejects_n_below_two(self):
        with pytest.raises(FrameError):
            harmonic_frame(3, 1)

    def test_rejects_nonpositive_k(self):
        with pytest.raises(FrameError):
            harmonic_frame(0, 4)

    def test_rejects_oversized_frame(self):
        with pytest.raises(FrameError):
            harmonic_frame(1000, 1000)

    def test_modulated_is_valid_and_seeded(self):
        Fa = modulated_harmonic_frame(3, 5, seed=42)
        Fb = modulated_harmonic_frame(3, 5, seed=42)
        Fc = modulated_harmonic_frame(3, 5, seed=43)
        assert validate_frame(Fa).passed
        assert np.array_equal(Fa.vectors, Fb.vectors)
        assert not np.array_equal(Fa.vectors, Fc.vectors)

    def test_family_rejects_nan(self):
        with pytest.raises(FrameError):
            FrameFamily(k=2, N=2, vectors=np.full((4, 2), np.nan))

    def test_family_rejects_bad_shape(self):
        with pytest.raises(FrameError):
            FrameFamily(k=2, N=2, vectors=np.zeros((4, 3)))

    def test_vectors_are_read_only(self):
        F = harmonic_frame(2, 2)
        with pytest.raises(ValueError):
            F.vectors[0, 0] = 0.0


class TestValidation:
    def test_doubled_vector_fails_parseval(self):
        F = harmonic_frame(2, 3)
        vs = F.vectors.copy()
        vs[0] *= 2.0
        bad = FrameFamily(k=2, N=3, vectors=vs)
        report = validate_frame(bad)
        assert not report.passed
        assert report.parseval_deviation > 1e-3

    def test_wrong_count_fails(self):
        F = harmonic_frame(2, 3)
        short = FrameFamily(k=2, N=3, vectors=F.vectors[:-1])
        report = validate_frame(short)
        assert not report.count_ok
        assert not report.passed

    def test_empty_family_fails_count(self):
        empty = FrameFamily(k=2, N=2, vectors=np.zeros((0, 2)))
        assert not validate_frame(empty).count_ok

    def test_summary_mentions_status(self):
        good = validate_frame(harmonic_frame(2, 2))
        assert good.summary().startswith("PASS")

    def test_rescale_fixes_small_drift(self):
        F = harmonic_frame(2, 4)
        drifted = FrameFamily(k=2, N=4, vectors=F.vectors * (1.0 + 3e-8))
        with pytest.warns(UserWarning):
            fixed = rescale_norms(drifted)
        norms2 = np.sum(np.abs(fixed.vectors) ** 2, axis=1)
        assert np.allclose(norms2, 0.25, atol=1e-15)

    def test_rescale_silent_when_exact(self):
        import warnings

        F = harmonic_frame(2, 4)
        with warnings.catch_warnings():
            warnings.simplefilter("error")
            rescale_norms(F)

    def test_rescale_refuses_large_drift(self):
        F = harmonic_frame(2, 4)
        wrong = FrameFamily(k=2, N=4, vectors=F.vectors * 1.1)
        with pytest.raises(FrameError):
            rescale_norms(wrong)


class TestProjectionDuality:
    def test_gram_is_projection_with_correct_diagonal(self):
        F = harmonic_frame(2, 3)
        P = frame_to_projection(F)
        assert np.linalg.norm(P @ P - P) < 1e-9
        assert np.allclose(np.diag(P).real, 1.0 / 3.0, atol=1e-12)
        assert float(np.real(np.trace(P))) == pytest.approx(2.0, abs=1e-10)

    def test_gram_entries_are_inner_products(self):
        F = harmonic_frame(3, 2)
        P = frame_to_projection(F)
        v = F.vectors
        for i in range(F.m):
            for j in range(F.m):
                assert P[i, j] == pytest.approx(np.vdot(v[i], v[j]), abs=1e-14)

    def test_k1_gram(self):
        P = frame_to_projection(harmonic_frame(1, 2))
        assert P.shape == (2, 2)
        assert np.allclose(np.diag(P).real, 0.5)

    def test_gram_requires_valid_frame(self):
        F = harmonic_frame(2, 3)
        bad = FrameFamily(k=2, N=3, vectors=F.vectors * 1.2)
        with pytest.raises(FrameError):
            frame_to_projection(bad)

    def test_projection_round_trip_preserves_gram(self):
        F = harmonic_frame(3, 4)
        P = frame_to_projection(F)
        G = frame_to_projection(projection_to_frame(P, 4))
        assert np.max(np.abs(G - P)) < 1e-9

    def test_projection_to_frame_rank_one_case(self):
        m = 5
        P = np.full((m, m), 1.0 / m, dtype=np.complex128)
        F = projection_to_frame(P, m)
        assert F.k == 1
        assert np.allclose(np.abs(F.vectors), 1.0 / np.sqrt(m), atol=1e-12)

    def test_projection_to_frame_rejects_n_one(self):
        with pytest.raises(FrameError):
            projection_to_frame(np.eye(3), 1)

    def test_projection_to_frame_rejects_non_projection(self):
        with pytest.raises(FrameError):
            projection_to_frame(0.5 * np.eye(4), 2)

    def test_projection_to_frame_rejects_wrong_diagonal(self):
        F = harmonic_frame(2, 3)
        P = frame_to_projection(F)
        with pytest.raises(FrameError):
            projection_to_frame(P, 2)  # claims diagonal 1/2, actual 1/3

    def test_projection_to_frame_rejects_non_integral_rank(self):
        # projection of rank 1 on 3 points has diagonal 1/3 but N=2 does not divide m=3
        P = np.full((3, 3), 1.0 / 3.0, dtype=np.complex128)
        with pytest.raises(FrameError):
            projection_to_frame(P, 2)


class TestCompressedGram:
    def test_full_selection_returns_everything(self):
        F = harmonic_frame(2, 2)
        P = frame_to_projection(F)
        Q = DiagonalSelector(m=4, indices=tuple(range(1, 5)))
        assert np.array_equal(compressed_gram(P, Q), P)
        top = float(np.max(np.linalg.eigvalsh(P)))
        assert top == pytest.approx(1.0, abs=1e-12)

    def test_single_index_gives_diagonal_entry(self):
        F = harmonic_frame(2, 3)
        P = frame_to_projection(F)
        sub = compressed_gram(P, DiagonalSelector(m=6, indices=(4,)))
        assert sub.shape == (1, 1)
        assert sub[0, 0].real == pytest.approx(1.0 / 3.0, abs=1e-12)

    def test_norm_matches_rank_one_sum_exhaustively(self):
        # every nonempty subset on a small frame: ||QPQ|| = lambda_max(T_S)
        F = harmonic_frame(3, 4)
        P = frame_to_projection(F)
        for size in range(1, F.m + 1):
            for subset in itertools.combinations(range(1, F.m + 1), size):
                sub = compressed_gram(P, DiagonalSelector(m=F.m, indices=subset))
                norm_q = float(np.max(np.linalg.eigvalsh(sub)))
                norm_t = float(np.max(np.linalg.eigvalsh(F.rank_one_sum(subset))))
                assert norm_q == pytest.approx(norm_t, abs=1e-10)

    def test_selector_validates_indices(self):
        with pytest.raises(FrameError):
            DiagonalSelector(m=4, indices=(0, 1))
        with pytest.raises(FrameError):
            DiagonalSelector(m=4, indices=(1, 5))
        with pytest.raises(FrameError):
            DiagonalSelector(m=4, indices=(2, 2))

    def test_size_mismatch_rejected(self):
        with pytest.raises(FrameError):
            compressed_gram(np.eye(3), DiagonalSelector(m=4, indices=(1,)))


class TestJsonFormats:
    def test_frame_round_trip_bit_identical(self, tmp_path):
        F = modulated_harmonic_frame(3, 4, seed=5)
        path = tmp_path / "frame.json"
        save_frame(F, path)
        G = load_frame(path)
        assert G.k == F.k and G.N == F.N and G.m == F.m
        assert np.array_equal(G.vectors, F.vectors)  # bit-identical doubles

    def test_frame_rewrite_is_byte_stable(self, tmp_path):
        F = modulated_harmonic_frame(2, 5, seed=9)
        p1, p2 = tmp_path / "a.json", tmp_path / "b.json"
        save_frame(F, p1)
        save_frame(load_frame(p1), p2)
        assert p1.read_bytes() == p2.read_bytes()

    def test_frame_dict_schema(self):
        F = harmonic_frame(2, 2)
        data = frame_to_dict(F)
        assert list(data.keys()) == ["k", "N", "m", "vectors"]
        assert len(data["vectors"]) == 4
        assert len(data["vectors"][0]) == 2
        assert len(data["vectors"][0][0]) == 2

    def test_frame_json_refuses_nan(self):
        data = frame_to_dict(harmonic_frame(2, 2))
        data["vectors"][0][0][0] = float("nan")
        with pytest.raises(FrameError):
            frame_from_dict(data)

    def test_frame_json_refuses_wrong_counts(self):
        data = frame_to_dict(harmonic_frame(2, 2))
        data["vectors"] = data["vectors"][:-1]
        with pytest.raises(FrameError):
            frame_from_dict(data)

    def test_frame_json_refuses_missing_header(self):
        with pytest.raises(FrameError):
            frame_from_dict({"k": 2, "N": 2})

    def test_projection_round_trip(self, tmp_path):
        P = frame_to_projection(harmonic_frame(2, 3))
        path = tmp_path / "proj.json"
        save_projection(P, path)
        Q = load_projection(path)
        assert np.array_equal(P, Q)

    def test_projection_dict_refuses_nan(self):
        P = np.eye(2, dtype=np.complex128)
        P[0, 0] = np.nan
        with pytest.raises(FrameError):
            save_projection(P, "/dev/null")

    def test_projection_from_dict_refuses_bad_rows(self):
        with pytest.raises(FrameError):
            projection_from_dict({"m": 2, "entries": [[[0.0, 0.0]]]})

    def test_saved_file_is_plain_json(self, tmp_path):
        path = tmp_path / "f.json"
        save_frame(harmonic_frame(1, 2), path)
        data = json.loads(path.read_text())
        assert data["m"] == 2
