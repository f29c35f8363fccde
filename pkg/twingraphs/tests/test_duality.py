"""Tests for the twin correspondence."""

import numpy as np
import pytest

from twingraphs.config.config import DualityConfig
from twingraphs.exceptions.exceptions import (
    DomainError,
    GridFormatError,
    LightConeDegeneracyError,
    NotCMCError,
    PreconditionError,
    TopologyError,
)
from twingraphs.services.duality.integration import integrate_exact_form
from twingraphs.services.duality.service import DualityService
from twingraphs.services.duality.types import TwinDirection
from twingraphs.services.field_ops.types import FrameField, ScalarField
from twingraphs.services.space_model.types import CausalCharacter, DomainSpec

from .support import L3, R3, gauge_free_error, lorentz, nil


def random_frame(domain: DomainSpec, seed: int = 7) -> FrameField:
    rng = np.random.default_rng(seed)
    alpha = rng.normal(scale=2.0, size=domain.mask.shape)
    beta = rng.normal(scale=2.0, size=domain.mask.shape)
    omega = np.sqrt(1.0 + alpha ** 2 + beta ** 2)
    return FrameField(domain, alpha, beta, omega, CausalCharacter.RIEMANNIAN)


@pytest.fixture
def nil_pair(duality, unit_disk):
    """Zero section of Nil3(1) and its dual √(1+r²) − 1 in Lorentz-Minkowski space."""
    return duality.dualize(ScalarField.constant(unit_disk), nil(1.0), mean_curvature=0.0)


class TestTwinGradient:
    """Tests for the pointwise twin relations."""

    def test_omega_product_is_one(self, duality, unit_disk):
        frame = random_frame(unit_disk)
        twin = duality.twin_gradient(frame, TwinDirection.E_TO_L)
        mask = unit_disk.mask
        assert twin.causal is CausalCharacter.LORENTZIAN
        np.testing.assert_allclose((frame.omega * twin.omega)[mask], 1.0, rtol=1e-12)

    def test_twin_relations_invert(self, duality, unit_disk):
        frame = random_frame(unit_disk)
        back = duality.twin_gradient(duality.twin_gradient(frame, TwinDirection.E_TO_L), TwinDirection.L_TO_E)
        mask = unit_disk.mask
        np.testing.assert_allclose(back.alpha[mask], frame.alpha[mask], rtol=1e-10, atol=1e-12)
        np.testing.assert_allclose(back.beta[mask], frame.beta[mask], rtol=1e-10, atol=1e-12)
        np.testing.assert_allclose(back.omega[mask], frame.omega[mask], rtol=1e-10)

    def test_direction_must_match_causal_character(self, duality, unit_disk):
        with pytest.raises(PreconditionError):
            duality.twin_gradient(random_frame(unit_disk), TwinDirection.L_TO_E)

    def test_light_cone_degeneracy(self, duality, unit_disk):
        shape = unit_disk.mask.shape
        omega = np.full(shape, 1e-5)
        alpha = np.full(shape, np.sqrt(1.0 - 1e-10))
        frame = FrameField(unit_disk, alpha, np.zeros(shape), omega, CausalCharacter.LORENTZIAN)
        with pytest.raises(LightConeDegeneracyError):
            duality.twin_gradient(frame, TwinDirection.L_TO_E)

    def test_direction_from_params(self):
        assert DualityService.direction_from(nil(1.0)) is TwinDirection.E_TO_L
        assert DualityService.direction_from(L3) is TwinDirection.L_TO_E


class TestExactFormIntegration:
    """Tests for potential reconstruction."""

    def test_linear_form_is_integrated_exactly(self):
        domain = DomainSpec.centered_disk(1.0, 0.1)
        X, Y = domain.grid()
        anchor = domain.centroid_cell()
        v = integrate_exact_form(2 * X, 2 * Y, domain, anchor)
        mask = domain.mask
        np.testing.assert_allclose(v[mask], (X ** 2 + Y ** 2)[mask], atol=1e-12)
        assert np.all(np.isnan(v[~mask]))

    def test_l_shaped_domain(self):
        domain = DomainSpec.rectangle(0.0, 1.0, 0.0, 1.0, 0.1)
        X, Y = domain.grid()
        l_shape = domain.with_mask(~((X > 0.45) & (Y > 0.45)))
        anchor = (0, 0)
        v = integrate_exact_form(2 * X, 2 * Y, l_shape, anchor)
        mask = l_shape.mask
        np.testing.assert_allclose(v[mask], (X ** 2 + Y ** 2)[mask], atol=1e-12)

    def test_cells_off_the_staircases(self):
        """A U-shaped domain forces breadth-first extension around the notch."""
        domain = DomainSpec.rectangle(0.0, 1.0, 0.0, 1.0, 0.1)
        X, Y = domain.grid()
        u_shape = domain.with_mask(~((X > 0.35) & (X < 0.65) & (Y > 0.25)))
        v = integrate_exact_form(np.ones_like(X), np.zeros_like(Y), u_shape, (10, 0))
        mask = u_shape.mask
        np.testing.assert_allclose(v[mask], X[mask], atol=1e-12)

    def test_anchor_must_be_unmasked(self):
        domain = DomainSpec.centered_disk(1.0, 0.1)
        zeros = np.zeros(domain.mask.shape)
        with pytest.raises(DomainError):
            integrate_exact_form(zeros, zeros, domain, (0, 0))


class TestDualize:
    """Tests for dual graph construction."""

    def test_hemisphere_dualizes_to_zero_section(self, duality):
        domain = DomainSpec.centered_disk(0.6, 0.05)
        u = ScalarField.from_function(domain, lambda x, y: -np.sqrt(1.0 - x ** 2 - y ** 2))
        pair = duality.dualize(u, R3)
        assert pair.target_params == lorentz(0.0, pair.source_mean_curvature)
        assert pair.source_mean_curvature == pytest.approx(1.0, abs=1e-2)
        assert pair.target.sup_norm() <= 10 * domain.h ** 2
        assert pair.target.at(pair.anchor) == 0.0

    def test_hemisphere_near_the_equator(self, duality):
        domain = DomainSpec.centered_disk(0.8, 0.05)
        u = ScalarField.from_function(domain, lambda x, y: -np.sqrt(1.0 - x ** 2 - y ** 2))
        pair = duality.dualize(u, R3)
        assert pair.residuals.cmc_spread <= DualityConfig().cmc_h2_factor * domain.h ** 2
        assert pair.target.sup_norm() <= 5 * domain.h ** 2

    def test_raw_spread_shrinks_with_the_grid(self):
        config = DualityConfig(cmc_tolerance=1e-12, richardson=False)
        source = lambda x, y: -np.sqrt(1.0 - x ** 2 - y ** 2)
        service = DualityService(config)
        coarse = service.estimate_mean_curvature(
            ScalarField.from_function(DomainSpec.centered_disk(0.6, 0.1), source), R3
        )
        fine = service.estimate_mean_curvature(
            ScalarField.from_function(DomainSpec.centered_disk(0.6, 0.025), source), R3
        )
        assert coarse.h == 0.1 and fine.h == 0.025
        assert fine.spread < coarse.spread / 4

    def test_curvature_estimate_is_immutable(self, duality, nil_pair):
        estimate = duality.estimate_mean_curvature(nil_pair.source, nil_pair.source_params)
        with pytest.raises(AttributeError):
            estimate.mean = 1.0
        assert estimate.h == nil_pair.source.domain.h

    def test_nil_zero_section_dualizes_to_hyperboloid(self, nil_pair, unit_disk):
        expected = np.sqrt(1.0 + unit_disk.radius_squared()) - 1.0
        assert nil_pair.target_params == L3
        error = gauge_free_error(nil_pair.target.values, expected, unit_disk.mask)
        assert error <= 5 * unit_disk.h ** 2
        assert nil_pair.residuals.curvature_transfer_residual <= 10 * unit_disk.h ** 2

    def test_algebraic_residuals_vanish(self, nil_pair, unit_disk):
        residuals = nil_pair.residuals
        assert residuals.omega_product_residual <= 1e-12
        assert residuals.angle_product_residual <= 1e-12
        assert residuals.conformality_residual <= 1e-12
        assert residuals.integrability_residual <= 10 * unit_disk.h ** 2
        assert residuals.twin_residual <= 10 * unit_disk.h ** 2

    def test_explicit_mean_curvature_skips_estimation(self, duality, unit_disk):
        pair = duality.dualize(ScalarField.constant(unit_disk), nil(1.0), mean_curvature=0.0, verify_cmc=False)
        assert pair.target_params == L3
        assert np.isnan(pair.residuals.cmc_spread)

    def test_additive_constant_does_not_change_dual(self, duality, unit_disk, nil_pair):
        shifted = duality.dualize(ScalarField.constant(unit_disk, 5.0), nil(1.0), mean_curvature=0.0)
        mask = unit_disk.mask
        np.testing.assert_allclose(shifted.target.values[mask], nil_pair.target.values[mask], atol=1e-10)

    def test_explicit_anchor(self, duality, unit_disk):
        anchor = unit_disk.nearest_cell(0.5, 0.0)
        pair = duality.dualize(ScalarField.constant(unit_disk), nil(1.0), anchor=anchor)
        assert pair.anchor == anchor
        assert pair.target.at(anchor) == 0.0

    def test_masked_anchor(self, duality, unit_disk):
        with pytest.raises(PreconditionError):
            duality.dualize(ScalarField.constant(unit_disk), nil(1.0), anchor=(0, 0))

    def test_non_cmc_input(self, duality, unit_disk):
        u = ScalarField.from_function(unit_disk, lambda x, y: x ** 4)
        with pytest.raises(NotCMCError) as excinfo:
            duality.dualize(u, R3)
        low, high = excinfo.value.curvature_range
        assert high - low > 1e-2

    def test_strict_tolerance_rejects_sampled_surface(self, unit_disk):
        """Without the h² allowance the sampling error alone breaks constancy."""
        strict = DualityService(DualityConfig(cmc_tolerance=1e-12, cmc_h2_factor=0.0, richardson=False))
        u = ScalarField.from_function(unit_disk, lambda x, y: -np.sqrt(4.0 - x ** 2 - y ** 2))
        with pytest.raises(NotCMCError):
            strict.dualize(u, R3)

    def test_annulus_is_rejected(self, duality, unit_disk):
        annulus = unit_disk.with_mask(unit_disk.mask & (unit_disk.radius_squared() > 0.09)).pruned()
        with pytest.raises(TopologyError):
            duality.dualize(ScalarField.constant(annulus), nil(1.0))

    def test_lorentzian_source(self, duality, unit_disk):
        """Dualizing the hyperboloid back lands in Nil3(1) near the zero section."""
        v = ScalarField.from_function(unit_disk, lambda x, y: np.sqrt(1.0 + x ** 2 + y ** 2))
        pair = duality.dualize(v, L3)
        assert pair.target_params.causal is CausalCharacter.RIEMANNIAN
        assert pair.source_mean_curvature == pytest.approx(1.0, abs=1e-2)
        assert gauge_free_error(pair.target.values, 0.0, unit_disk.mask) <= 10 * unit_disk.h ** 2


class TestRoundtripAndPairs:
    def test_roundtrip_recovers_source(self, duality, nil_pair, unit_disk):
        assert duality.roundtrip_error(nil_pair) <= 10 * unit_disk.h ** 2

    @pytest.mark.slow
    @pytest.mark.parametrize("source, params, half_width, H", [
        (lambda x, y: -np.sqrt(1.0 - x ** 2 - y ** 2), R3, 0.5, 1.0),
        (lambda x, y: -np.sqrt(4.0 - x ** 2 - y ** 2), R3, 1.0, 0.5),
        (lambda x, y: 0.0 * x, nil(1.0), 1.0, 0.0),
        (lambda x, y: 0.0 * x, nil(0.5), 1.0, 0.0),
    ])
    def test_roundtrip_error_is_second_order(self, duality, source, params, half_width, H):
        errors = []
        for h in (0.05, 0.025):
            domain = DomainSpec.centered_rectangle(half_width, half_width, h)
            u = ScalarField.from_function(domain, source)
            pair = duality.dualize(u, params, mean_curvature=H)
            errors.append(duality.roundtrip_error(pair))
        assert 3.5 <= errors[0] / errors[1] <= 4.5
        assert errors[1] <= 5 * 0.025 ** 2

    def test_pair_from_fields_matches_dualize(self, duality, nil_pair):
        pair = duality.pair_from_fields(
            nil_pair.source, nil_pair.source_params, nil_pair.target, nil_pair.target_params
        )
        assert pair.residuals.omega_product_residual <= 20 * nil_pair.source.domain.h ** 2
        assert pair.residuals.curvature_transfer_residual == pytest.approx(
            nil_pair.residuals.curvature_transfer_residual
        )

    def test_pair_from_fields_rejects_other_grid(self, duality, unit_disk):
        other = DomainSpec.centered_disk(1.0, 0.1)
        with pytest.raises(GridFormatError):
            duality.pair_from_fields(
                ScalarField.constant(unit_disk), nil(1.0), ScalarField.constant(other), L3
            )

    def test_pair_from_fields_rejects_same_character(self, duality, unit_disk):
        u = ScalarField.constant(unit_disk)
        with pytest.raises(GridFormatError):
            duality.pair_from_fields(u, nil(1.0), u, R3)
