"""Weight functions: values, symmetry, monotonicity, bounds, table round-trips."""
from __future__ import annotations

import io

import numpy as np
import pytest

from pointdiff import (
    Erf,
    Exp,
    HardCap,
    Identity,
    Lookup,
    MARGIN_MAX,
    MARGIN_MIN,
    N_BINS,
    Tanh,
    ValidationError,
    WeightVector,
    margin_bin,
    soft_cap,
)

# Frozen high-precision oracles (30-digit mpmath, see test docstrings).
TANH_AT_1 = 0.7615941559557648881
ERF_AT_1 = 0.8427007929497148693
EXPFORM_AT_1 = 0.6321205588285576784  # 1 - 1/e
EXPFORM_AT_NEG2 = -0.8646647167633873081  # -(1 - e^-2)

ALL_MARGINS = np.arange(MARGIN_MIN, MARGIN_MAX + 1)
D_GRID = [1.0, 5.0, 12.0, 40.0]

# Largest |x| where the float64 image of each curve is still strictly
# below 1; beyond these the value rounds to exactly 1.0.
STRICT_RANGE = {"tanh": 18.9, "erf": 5.9, "exp": 37.0}


def soft_kinds():
    return [("tanh", Tanh), ("erf", Erf), ("exp", Exp)]


class TestIdentity:
    def test_passthrough(self):
        fn = Identity()
        assert fn(0) == 0.0
        assert fn(7) == 7.0
        assert fn(-12) == -12.0

    def test_array(self):
        np.testing.assert_array_equal(Identity()(ALL_MARGINS), ALL_MARGINS.astype(float))


class TestHardCap:
    def test_clamps_both_tails(self):
        fn = HardCap(20)
        assert fn(45) == 20.0
        assert fn(-45) == -20.0
        assert fn(5) == 5.0
        assert fn(-20) == -20.0

    def test_cap_must_be_positive_integer(self):
        with pytest.raises(ValidationError):
            HardCap(0)
        with pytest.raises(ValidationError):
            HardCap(-3)
        with pytest.raises(ValidationError):
            HardCap(20.5)

    def test_large_cap_is_identity(self):
        np.testing.assert_array_equal(HardCap(40)(ALL_MARGINS), ALL_MARGINS.astype(float))


class TestTanh:
    def test_zero(self):
        assert Tanh(12.0)(0) == 0.0

    @pytest.mark.parametrize("d", D_GRID)
    def test_value_at_scale(self, d):
        """w(D) = tanh(1); frozen from (e^2-1)/(e^2+1) at 30 digits."""
        assert Tanh(d)(d) == pytest.approx(TANH_AT_1, abs=1e-15)

    def test_oracle_self_consistency(self):
        mp = pytest.importorskip("mpmath")
        mp.mp.dps = 30
        e2 = mp.e**2
        assert abs(float((e2 - 1) / (e2 + 1)) - TANH_AT_1) < 1e-16

    def test_saturates_to_one(self):
        assert Tanh(1.0)(400) == pytest.approx(1.0, abs=1e-12)

    def test_scale_must_be_positive(self):
        for bad in (0.0, -1.0, float("nan"), float("inf")):
            with pytest.raises(ValidationError):
                Tanh(bad)


class TestErf:
    def test_zero(self):
        assert Erf(12.0)(0) == 0.0

    @pytest.mark.parametrize("d", D_GRID)
    def test_value_at_scale(self, d):
        """w(D) = erf(1); frozen from mpmath quadrature of the Gaussian."""
        assert Erf(d)(d) == pytest.approx(ERF_AT_1, abs=1e-15)

    def test_antisymmetric_at_scale(self):
        assert Erf(9.0)(-9) == pytest.approx(-ERF_AT_1, abs=1e-15)

    def test_quadrature_spot_check(self):
        """Library erf agrees with direct integration of exp(-t^2)."""
        mp = pytest.importorskip("mpmath")
        mp.mp.dps = 30
        for pm, d in [(-40, 12.0), (-7, 5.0), (1, 1.0), (13, 12.0), (40, 5.0)]:
            x = mp.mpf(pm) / mp.mpf(d)
            want = float(mp.quad(lambda t: mp.e ** (-t * t), [0, x]) * 2 / mp.sqrt(mp.pi))
            assert Erf(d)(pm) == pytest.approx(want, abs=1e-12)

    def test_scale_must_be_positive(self):
        with pytest.raises(ValidationError):
            Erf(0.0)


class TestExp:
    def test_zero(self):
        assert Exp(12.0)(0) == 0.0

    @pytest.mark.parametrize("d", D_GRID)
    def test_value_at_scale(self, d):
        """w(D) = 1 - 1/e; frozen at 30 digits."""
        assert Exp(d)(d) == pytest.approx(EXPFORM_AT_1, abs=1e-15)

    def test_value_at_minus_two_scales(self):
        assert Exp(6.0)(-12) == pytest.approx(EXPFORM_AT_NEG2, abs=1e-15)

    def test_no_cancellation_at_tiny_argument(self):
        # expm1 keeps w(pm) ~ pm/D accurate when pm << D.
        d = 1e9
        assert Exp(d)(1) == pytest.approx(1 / d, rel=1e-12)

    def test_scale_must_be_positive(self):
        with pytest.raises(ValidationError):
            Exp(-2.0)


class TestSoftCapFactory:
    def test_kinds(self):
        assert isinstance(soft_cap("tanh", 3.0), Tanh)
        assert isinstance(soft_cap("erf", 3.0), Erf)
        assert isinstance(soft_cap("exp", 3.0), Exp)

    def test_unknown_kind(self):
        with pytest.raises(ValidationError, match="kind"):
            soft_cap("logistic", 3.0)


class TestOddSymmetry:
    @pytest.mark.parametrize("kind,cls", soft_kinds())
    @pytest.mark.parametrize("d", D_GRID)
    def test_soft_caps_are_odd(self, kind, cls, d):
        fn = cls(d)
        pos = fn(ALL_MARGINS)
        neg = fn(-ALL_MARGINS)
        np.testing.assert_allclose(neg, -pos, atol=1e-15)

    def test_hard_cap_is_odd_bitwise(self):
        fn = HardCap(17)
        np.testing.assert_array_equal(fn(-ALL_MARGINS), -fn(ALL_MARGINS))


class TestMonotonicity:
    @pytest.mark.parametrize("kind,cls", soft_kinds())
    @pytest.mark.parametrize("d", D_GRID)
    def test_nondecreasing_everywhere_strict_where_representable(self, kind, cls, d):
        """Strictly increasing until float64 rounds the curve to exactly 1.

        tanh(x) == 1.0 in float64 for x >= ~19, erf for x >= ~5.92, and
        1 - e^-y == 1.0 for y >= ~37.4, so strictness is only testable
        below those thresholds; beyond them we require non-decreasing.
        """
        w = cls(d)(ALL_MARGINS)
        diffs = np.diff(w)
        assert np.all(diffs >= 0)
        x = np.abs(ALL_MARGINS / d)
        representable = np.maximum(x[:-1], x[1:]) <= STRICT_RANGE[kind]
        assert np.all(diffs[representable] > 0)

    def test_saturated_pairs_still_increase_mathematically(self):
        """At 50 digits tanh(39) < tanh(40) even though float64 sees 1.0 == 1.0."""
        mp = pytest.importorskip("mpmath")
        mp.mp.dps = 50
        assert Tanh(1.0)(39) == Tanh(1.0)(40) == 1.0
        assert mp.tanh(39) < mp.tanh(40)


class TestBounds:
    @pytest.mark.parametrize("kind,cls", soft_kinds())
    @pytest.mark.parametrize("d", D_GRID)
    def test_abs_at_most_one(self, kind, cls, d):
        w = cls(d)(ALL_MARGINS)
        assert np.all(np.abs(w) <= 1.0)
        x = np.abs(ALL_MARGINS / d)
        assert np.all(np.abs(w[x <= STRICT_RANGE[kind]]) < 1.0)


class TestLargeScaleLinearization:
    def test_tanh_approaches_pm_over_d(self):
        d = 1e6
        pm = np.arange(1, 41)
        np.testing.assert_allclose(Tanh(d)(pm), pm / d, rtol=1e-9)

    def test_erf_slope_is_two_over_root_pi(self):
        d = 1e6
        pm = np.arange(1, 41)
        np.testing.assert_allclose(Erf(d)(pm), 2 / np.sqrt(np.pi) * pm / d, rtol=1e-9)

    def test_exp_approaches_pm_over_d(self):
        d = 1e6
        pm = np.arange(1, 41)
        np.testing.assert_allclose(Exp(d)(pm), pm / d, rtol=1e-4)


class TestMarginBin:
    def test_endpoints_and_center(self):
        assert margin_bin(MARGIN_MIN) == 0
        assert margin_bin(0) == 40
        assert margin_bin(MARGIN_MAX) == N_BINS - 1

    def test_unit_steps(self):
        assert margin_bin(1) == 41
        assert margin_bin(-1) == 39


class TestLookup:
    def test_index_mapping(self):
        table = WeightVector(np.arange(N_BINS, dtype=float))
        fn = Lookup(table)
        assert fn(MARGIN_MIN) == 0.0
        assert fn(0) == 40.0
        assert fn(MARGIN_MAX) == 80.0

    def test_out_of_range_clamps_to_edges(self):
        table = WeightVector(np.arange(N_BINS, dtype=float))
        fn = Lookup(table)
        assert fn(55) == 80.0
        assert fn(-55) == 0.0

    def test_array_lookup(self):
        table = WeightVector(np.linspace(-1, 1, N_BINS))
        out = Lookup(table)(np.array([-40, 0, 40]))
        np.testing.assert_allclose(out, [-1.0, 0.0, 1.0])


class TestWeightVector:
    def test_margin_of_inverts_bin(self):
        assert WeightVector.margin_of(0) == MARGIN_MIN
        assert WeightVector.margin_of(40) == 0
        assert WeightVector.margin_of(80) == MARGIN_MAX

    def test_wrong_length_rejected(self):
        for n in (80, 82):
            with pytest.raises(ValidationError):
                WeightVector(np.zeros(n))

    def test_non_finite_rejected(self):
        bad = np.zeros(N_BINS)
        bad[3] = np.nan
        with pytest.raises(ValidationError):
            WeightVector(bad)

    def test_weights_are_read_only(self):
        wv = WeightVector(np.zeros(N_BINS))
        with pytest.raises(ValueError):
            wv.weights[0] = 1.0

    def test_csv_round_trip_is_bitwise(self):
        rng = np.random.default_rng(4)
        wv = WeightVector(rng.normal(size=N_BINS))
        buf = io.StringIO()
        wv.to_csv(buf)
        back = WeightVector.from_csv(io.StringIO(buf.getvalue()))
        np.testing.assert_array_equal(back.weights, wv.weights)

    def test_csv_header(self):
        buf = io.StringIO()
        WeightVector(np.zeros(N_BINS)).to_csv(buf)
        assert buf.getvalue().splitlines()[0] == "margin,weight"

    def test_from_csv_rejects_misordered_margins(self):
        buf = io.StringIO()
        WeightVector(np.zeros(N_BINS)).to_csv(buf)
        lines = buf.getvalue().splitlines()
        lines[1], lines[2] = lines[2], lines[1]
        with pytest.raises(ValidationError):
            WeightVector.from_csv(io.StringIO("\n".join(lines) + "\n"))

    def test_from_csv_rejects_short_table(self):
        buf = io.StringIO()
        WeightVector(np.zeros(N_BINS)).to_csv(buf)
        trimmed = "\n".join(buf.getvalue().splitlines()[:-1]) + "\n"
        with pytest.raises(ValidationError):
            WeightVector.from_csv(io.StringIO(trimmed))
