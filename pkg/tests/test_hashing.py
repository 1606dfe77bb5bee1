import numpy as np
import pytest

from ibltlab import (
    ExplicitScheme,
    HashKind,
    HashParams,
    make_partitioned_uniform,
    make_ss_avoiding,
)

# chi-square quantiles for 255 degrees of freedom at 0.0005 / 0.9995
CHI2_255_LOW = 187.17080706331643
CHI2_255_HIGH = 335.91665041569155


def uniform_params(k=3, ell=16, b=32, seed=0):
    return HashParams(k=k, ell=ell, b=b, seed=seed)


def ss_params(k, s, seed=0):
    return HashParams(k=k, ell=1 << s, b=s * k, seed=seed, kind=HashKind.SS_AVOIDING)


def test_same_seed_and_key_is_deterministic():
    a = make_partitioned_uniform(uniform_params(seed=42))
    b = make_partitioned_uniform(uniform_params(seed=42))
    for key in (0, 1, 0xDEADBEEF, (1 << 32) - 1):
        assert a.indices(key) == a.indices(key)
        assert a.indices(key) == b.indices(key)


def test_different_seeds_differ_somewhere():
    a = make_partitioned_uniform(uniform_params(seed=1))
    b = make_partitioned_uniform(uniform_params(seed=2))
    assert any(a.indices(key) != b.indices(key) for key in range(64))


def test_single_cell_subtables_are_forced():
    scheme = make_partitioned_uniform(uniform_params(k=3, ell=1))
    for key in (0, 7, 123456):
        assert scheme.indices(key) == (0, 1, 2)


def test_indices_stay_inside_their_subtable():
    for scheme in (
        make_partitioned_uniform(uniform_params(k=4, ell=10, seed=9)),
        make_ss_avoiding(ss_params(k=3, s=3)),
    ):
        for key in range(200):
            for i, idx in enumerate(scheme.indices(key)):
                assert i * scheme.ell <= idx < (i + 1) * scheme.ell


def test_invalid_params_rejected():
    for bad in (dict(k=0, ell=4, b=8), dict(k=2, ell=0, b=8), dict(k=2, ell=4, b=0)):
        with pytest.raises(ValueError):
            HashParams(**bad)
    with pytest.raises(ValueError):
        HashParams(k=1, ell=4, b=65)


def test_kind_mismatch_rejected():
    with pytest.raises(ValueError):
        make_ss_avoiding(uniform_params())
    with pytest.raises(ValueError):
        make_partitioned_uniform(ss_params(k=2, s=3))


def test_ss_shape_constraints():
    with pytest.raises(ValueError):
        HashParams(k=3, ell=8, b=8, kind=HashKind.SS_AVOIDING)  # b not s*k
    with pytest.raises(ValueError):
        HashParams(k=3, ell=7, b=9, kind=HashKind.SS_AVOIDING)  # ell not 2**s


def test_per_subtable_uniformity_chi_square():
    scheme = make_partitioned_uniform(uniform_params(k=3, ell=256, b=32, seed=2024))
    rng = np.random.Generator(np.random.PCG64(1))
    keys = rng.integers(0, 1 << 32, size=1_000_000, dtype=np.uint64)
    idx = scheme.indices_array(keys)
    expected = len(keys) / 256
    for i in range(3):
        counts = np.bincount(idx[i] - i * 256, minlength=256)
        chi2 = float(((counts - expected) ** 2 / expected).sum())
        assert CHI2_255_LOW < chi2 < CHI2_255_HIGH, f"subtable {i}: chi2={chi2}"


def test_cross_subtable_pairs_look_independent():
    # Under uniformity + independence the joint (idx0, idx1) is uniform on
    # 16x16 cells; same chi-square band, df = 255.
    scheme = make_partitioned_uniform(uniform_params(k=2, ell=16, b=32, seed=77))
    rng = np.random.Generator(np.random.PCG64(3))
    keys = rng.integers(0, 1 << 32, size=256_000, dtype=np.uint64)
    idx = scheme.indices_array(keys)
    joint = idx[0] * 16 + (idx[1] - 16)
    counts = np.bincount(joint, minlength=256)
    expected = len(keys) / 256
    chi2 = float(((counts - expected) ** 2 / expected).sum())
    assert CHI2_255_LOW < chi2 < CHI2_255_HIGH, f"joint chi2={chi2}"


def test_ss_field_split_by_hand():
    # x = 0b101101 splits MSB-first into 2-bit fields (2, 3, 1); with
    # subtable offsets 0, 4, 8 that lands on global cells (2, 7, 9).
    scheme = make_ss_avoiding(ss_params(k=3, s=2))
    assert scheme.indices(0b101101) == (2, 7, 9)


def test_ss_tuples_injective_exhaustively():
    for k, s in ((2, 4), (3, 4)):
        scheme = make_ss_avoiding(ss_params(k=k, s=s))
        tuples = {scheme.indices(x) for x in range(1 << (s * k))}
        assert len(tuples) == 1 << (s * k)


def test_ss_single_table_is_identity():
    scheme = make_ss_avoiding(ss_params(k=1, s=6))
    for key in range(64):
        assert scheme.indices(key) == (key,)


def test_ss_custom_bijection():
    # x -> 5x + 3 mod 16 is a permutation of 4-bit values.
    scheme = make_ss_avoiding(ss_params(k=2, s=2), bijection=lambda x: (5 * x + 3) % 16)
    y = (5 * 9 + 3) % 16
    assert scheme.indices(9) == (y >> 2, (y & 3) + 4)


def test_ss_bijection_spot_checks():
    with pytest.raises(ValueError):
        make_ss_avoiding(ss_params(k=2, s=2), bijection=lambda x: 0)
    with pytest.raises(ValueError):
        make_ss_avoiding(ss_params(k=2, s=2), bijection=lambda x: x + 16)


def test_indices_array_matches_scalar_path():
    scheme = make_partitioned_uniform(uniform_params(k=3, ell=13, seed=5))
    keys = np.arange(100, dtype=np.uint64)
    arr = scheme.indices_array(keys)
    for j, key in enumerate(keys):
        assert tuple(arr[:, j]) == scheme.indices(int(key))
    ss = make_ss_avoiding(ss_params(k=3, s=3, seed=5))
    arr = ss.indices_array(keys)
    for j, key in enumerate(keys):
        assert tuple(arr[:, j]) == ss.indices(int(key))


def test_explicit_scheme_mapping():
    scheme = ExplicitScheme(ell=4, k=2, mapping={1: (0, 5), 2: (0, 5)})
    assert scheme.indices(1) == scheme.indices(2) == (0, 5)
    assert scheme.m == 8
    with pytest.raises(ValueError):
        ExplicitScheme(ell=4, k=2, mapping={1: (0,)})
