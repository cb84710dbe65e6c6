import math

import numpy as np
import pytest

from lgbeams import (LadderKind, ModeIndex, add, apply_ladder_at_z,
                     apply_ladder_polar, apply_ladder_zero,
                     commutator_residual, default_grid, eval_lg_mode,
                     fidelity, index_map_scan, inner_product, lowering,
                     map_indices, norm, normalized, oam_expectation,
                     propagate, raising, scale, synthesize_mode)

from conftest import random_band_limited


@pytest.fixture(scope="module")
def u00(params, grid):
    return eval_lg_mode(ModeIndex(0, 0), params, grid, 0.0)


class TestLadderKind:
    def test_validation(self):
        with pytest.raises(ValueError):
            LadderKind(direction="sideways", sign="plus")
        with pytest.raises(ValueError):
            LadderKind(direction="lower", sign="zero")
        with pytest.raises(ValueError):
            LadderKind(direction="lower", sign="plus", variant="folklore")


class TestLadderAtWaist:
    @pytest.mark.parametrize("sign", ["plus", "minus"])
    def test_ground_state_annihilation(self, u00, sign):
        out = apply_ladder_zero(lowering(sign), u00)
        assert norm(out) / norm(u00) <= 1e-6

    def test_raising_plus_gives_positive_helicity(self, params, grid, u00):
        raised = normalized(apply_ladder_zero(raising("plus"), u00))
        u_plus = eval_lg_mode(ModeIndex(1, 0), params, grid, 0.0)
        u_minus = eval_lg_mode(ModeIndex(-1, 0), params, grid, 0.0)
        assert fidelity(raised, u_plus) >= 0.999
        assert fidelity(raised, u_minus) < 1e-6

    def test_raising_minus_gives_negative_helicity(self, params, grid, u00):
        raised = normalized(apply_ladder_zero(raising("minus"), u00))
        u_minus = eval_lg_mode(ModeIndex(-1, 0), params, grid, 0.0)
        assert fidelity(raised, u_minus) >= 0.999

    @pytest.mark.parametrize("sign", ["plus", "minus"])
    def test_adjoint_consistency(self, params, grid, rng, sign):
        f = random_band_limited(params, grid, rng)
        g = random_band_limited(params, grid, rng)
        lhs = inner_product(apply_ladder_zero(raising(sign), f), g)
        rhs = inner_product(f, apply_ladder_zero(lowering(sign), g))
        assert abs(lhs - rhs) <= 1e-8 * norm(f) * norm(g)

    def test_rejects_nonzero_plane(self, params, grid):
        f = eval_lg_mode(ModeIndex(0, 0), params, grid, 0.5)
        with pytest.raises(ValueError):
            apply_ladder_zero(lowering("plus"), f)

    def test_rejects_polar_variant(self, u00):
        with pytest.raises(ValueError):
            apply_ladder_zero(LadderKind("lower", "plus", "polar"), u00)


class TestLadderAtPlane:
    def test_matches_waist_operator_at_zero(self, u00):
        a = apply_ladder_at_z(raising("plus"), u00)
        b = apply_ladder_zero(raising("plus"), u00)
        assert np.array_equal(a.samples, b.samples)

    def test_annihilation_is_conjugation_invariant(self, params):
        g = default_grid(params, 1.0, n=128)
        mode = eval_lg_mode(ModeIndex(0, 0), params, g, 1.0)
        out = apply_ladder_at_z(lowering("plus"), mode)
        assert norm(out) / norm(mode) <= 1e-5

    def test_conjugation_preserves_norm(self, params, rng):
        g = default_grid(params, 1.0, n=128)
        f = eval_lg_mode(ModeIndex(1, 1), params, g, 1.0)
        # the sandwich U(z) A(0) U(-z) has the same norm as A(0) U(-z)
        back = propagate(f, -1.0)
        hit = apply_ladder_zero(lowering("plus"), back)
        sandwiched = apply_ladder_at_z(lowering("plus"), f)
        assert abs(norm(sandwiched) - norm(hit)) <= 1e-10


class TestPolarVariant:
    @pytest.mark.parametrize("sign", ["plus", "minus"])
    def test_also_annihilates_fundamental(self, u00, sign):
        # the term where the polar form deviates carries d/dphi, which
        # vanishes on any radially symmetric field
        kind = LadderKind("lower", sign, "polar")
        out = apply_ladder_polar(kind, u00)
        assert norm(out) / norm(u00) <= 1e-6

    def test_deviates_on_vortex_input(self, params, grid):
        mode = eval_lg_mode(ModeIndex(1, 0), params, grid, 0.0)
        canonical = apply_ladder_zero(lowering("plus"), mode)
        polar = apply_ladder_polar(LadderKind("lower", "plus", "polar"), mode)
        gap = np.max(np.abs(polar.samples - canonical.samples))
        assert gap > 1e-2 * np.max(np.abs(mode.samples))

    def test_rejects_raising_direction(self, u00):
        with pytest.raises(ValueError):
            apply_ladder_polar(LadderKind("raise", "plus", "polar"), u00)

    def test_rejects_canonical_variant(self, u00):
        with pytest.raises(ValueError):
            apply_ladder_polar(lowering("plus"), u00)


class TestCommutators:
    @pytest.mark.parametrize("sa,sb,expected", [
        ("plus", "plus", 1.0), ("minus", "minus", 1.0),
        ("plus", "minus", 0.0), ("minus", "plus", 0.0)])
    def test_on_fundamental(self, u00, sa, sb, expected):
        val = commutator_residual(lowering(sa), lowering(sb), normalized(u00))
        assert abs(val - expected) <= 1e-3

    def test_on_higher_mode(self, params, grid):
        f = normalized(eval_lg_mode(ModeIndex(1, 1), params, grid, 0.0))
        val = commutator_residual(lowering("plus"), lowering("plus"), f)
        assert abs(val - 1.0) <= 1e-3

    @pytest.mark.parametrize("sa,sb,expected", [("plus", "plus", 1.0),
                                                ("plus", "minus", 0.0)])
    def test_holds_off_waist(self, params, sa, sb, expected):
        g = default_grid(params, 1.0, n=128)
        f = normalized(eval_lg_mode(ModeIndex(0, 0), params, g, 1.0))
        val = commutator_residual(lowering(sa), lowering(sb), f)
        assert abs(val - expected) <= 1e-3

    def test_requires_unit_norm(self, u00):
        with pytest.raises(ValueError):
            commutator_residual(lowering("plus"), lowering("plus"),
                                scale(u00, 2.0))

    def test_requires_lowering_kinds(self, u00):
        with pytest.raises(ValueError):
            commutator_residual(raising("plus"), lowering("plus"),
                                normalized(u00))


class TestMapIndices:
    @pytest.mark.parametrize("l,p,expected", [
        (0, 0, (0, 0)),
        (2, 0, (2, 0)),
        (-1, 1, (1, 2)),
        (1, 0, (1, 0)),
        (-3, 2, (2, 5)),
    ])
    def test_frozen_values(self, l, p, expected):
        assert map_indices(l, p) == expected

    @pytest.mark.parametrize("l", range(-4, 5))
    @pytest.mark.parametrize("p", range(4))
    def test_inverse_relations(self, l, p):
        m, n = map_indices(l, p)
        assert m - n == l
        assert min(m, n) == p

    def test_scan_oracle_agrees(self, params):
        g = default_grid(params, 0.0, n=128)
        for (l, p, m, n, top, second) in index_map_scan(params, g, 2, 1):
            assert (m, n) == map_indices(l, p)
            assert top >= 0.999
            assert second <= 0.5  # unique maximizer by a wide margin


class TestSynthesizeMode:
    def test_fundamental_is_identity(self, params, grid, u00):
        synth = synthesize_mode(ModeIndex(0, 0), params, grid)
        assert np.array_equal(synth.samples, u00.samples)

    @pytest.mark.parametrize("l,p", [(1, 0), (0, 2), (-2, 1), (3, 3)])
    def test_matches_analytic_mode(self, params, grid, l, p):
        synth = synthesize_mode(ModeIndex(l, p), params, grid)
        ana = eval_lg_mode(ModeIndex(l, p), params, grid, 0.0)
        assert fidelity(synth, ana) >= 0.999
        assert abs(norm(synth) - 1.0) <= 1e-4

    def test_order_guard(self, params, grid):
        with pytest.raises(ValueError):
            synthesize_mode(ModeIndex(13, 0), params, grid)
        with pytest.raises(ValueError):
            synthesize_mode(ModeIndex(0, 7), params, grid)
        synthesize_mode(ModeIndex(0, 6), params, grid)  # order 12: allowed

    def test_raising_order_interleaves(self, params, grid, u00):
        plus, minus = raising("plus"), raising("minus")
        a = apply_ladder_zero(minus, apply_ladder_zero(plus,
                                                       apply_ladder_zero(plus, u00)))
        b = apply_ladder_zero(plus, apply_ladder_zero(plus,
                                                      apply_ladder_zero(minus, u00)))
        sup = np.max(np.abs(a.samples))
        assert np.max(np.abs(a.samples - b.samples)) <= 1e-8 * sup


class TestOamExpectation:
    def test_fundamental_carries_none(self, u00):
        assert abs(oam_expectation(u00)) <= 1e-10

    @pytest.mark.parametrize("l,p", [(1, 0), (-2, 1), (3, 0)])
    def test_integer_valued_on_modes(self, params, grid, l, p):
        mode = eval_lg_mode(ModeIndex(l, p), params, grid, 0.0)
        assert oam_expectation(mode) == pytest.approx(l, abs=1e-6)

    def test_balanced_superposition_is_neutral(self, params, grid):
        up = eval_lg_mode(ModeIndex(2, 0), params, grid, 0.0)
        dn = eval_lg_mode(ModeIndex(-2, 0), params, grid, 0.0)
        sup = scale(add(up, dn), 1.0 / math.sqrt(2.0))
        assert abs(oam_expectation(sup)) <= 1e-6

    def test_weighted_superposition(self, params, grid):
        # coefficient-weighted mean of the component OAM values
        a, b = 0.8, 0.6j
        f = add(scale(eval_lg_mode(ModeIndex(1, 0), params, grid, 0.0), a),
                scale(eval_lg_mode(ModeIndex(-2, 1), params, grid, 0.0), b))
        want = (abs(a) ** 2 * 1 + abs(b) ** 2 * (-2)) / (abs(a) ** 2 + abs(b) ** 2)
        assert oam_expectation(f) == pytest.approx(want, abs=1e-6)

    def test_zero_field_is_error(self, params, grid, u00):
        zero = u00.with_samples(np.zeros_like(u00.samples))
        with pytest.raises(ValueError):
            oam_expectation(zero)
