"""Tests for the coordinate models and the Lorentzian classification."""

import math

import numpy as np
import pytest

from twingraphs.exceptions.exceptions import (
    DomainError,
    InfeasibleTargetError,
    PreconditionError,
    TopologyError,
)
from twingraphs.services.space_model.service import (
    chart_radius,
    cheeger_constant,
    conformal_factor,
    daniel_parameter_map,
    discriminant_sign,
    existence_classifier,
    metric_eval,
    nonexistence_mechanisms,
    space_name,
    spacelike_disk_bound,
    timelike_circle_range,
)
from twingraphs.services.space_model.types import CausalCharacter, DomainSpec, FeasibilityVerdict, SpaceParams

from .support import R3, lorentz, nil, riemannian


class TestSpaceParams:
    """Tests for the space selector."""

    def test_dual_flips_character_and_takes_mean_curvature_as_bundle(self):
        dual = nil(1.0).dual(0.5)
        assert dual == lorentz(0.0, 0.5)
        assert dual.dual(1.0) == nil(1.0)

    def test_discriminant_sign_follows_causal_character(self):
        assert riemannian(-1.0, 0.5).discriminant == pytest.approx(-2.0)
        assert lorentz(-1.0, 0.5).discriminant == pytest.approx(0.0)

    def test_labels(self):
        assert nil(1.0).label == "E(0,1)"
        assert lorentz(-1.0, 0.5).label == "L(-1,0.5)"

    def test_rejects_non_finite_parameters(self):
        with pytest.raises(DomainError):
            SpaceParams(math.nan, 0.0)

    def test_causal_character_accepts_strings(self):
        assert SpaceParams(0.0, 0.0, "lorentzian").causal is CausalCharacter.LORENTZIAN


class TestConformalFactor:
    """Tests for λ_κ and the model metrics."""

    def test_origin(self):
        for kappa in (-4.0, 0.0, 4.0):
            assert conformal_factor(riemannian(kappa, 0.0), 0.0, 0.0) == 1.0

    def test_closed_form_values(self):
        assert conformal_factor(riemannian(4.0, 0.0), 1.0, 1.0) == pytest.approx(1.0 / 3.0)
        assert conformal_factor(riemannian(-4.0, 0.0), 0.5, 0.0) == pytest.approx(4.0 / 3.0)

    def test_outside_chart(self):
        with pytest.raises(DomainError):
            conformal_factor(riemannian(-4.0, 0.0), 1.0, 0.0)

    def test_array_input(self):
        values = conformal_factor(riemannian(-1.0, 0.0), np.array([0.0, 1.0]), np.array([0.0, 0.0]))
        np.testing.assert_allclose(values, [1.0, 4.0 / 3.0])

    def test_metric_signatures(self):
        assert metric_eval(R3, (0.3, -0.7, 2.0), (1.0, 0.0, 0.0)) == pytest.approx(1.0)
        assert metric_eval(lorentz(0.0, 2.0), (0.3, -0.7, 2.0), (0.0, 0.0, 1.0)) == pytest.approx(-1.0)

    def test_horizontal_circle_length_matches_closed_form(self):
        """⟨γ', γ'⟩ = λ²r²(1 − τ²r²) along the horizontal circle of radius r."""
        params = lorentz(-1.0, 1.0)
        r, t = 1.5, 0.4
        point = (r * math.cos(t), r * math.sin(t), 0.0)
        tangent = (-r * math.sin(t), r * math.cos(t), 0.0)
        lam = conformal_factor(params, r, 0.0)
        assert metric_eval(params, point, tangent) == pytest.approx(lam ** 2 * r ** 2 * (1 - r ** 2))


class TestClassification:
    """Tests for the existence classifier and the nonexistence mechanisms."""

    def test_cheeger_constant(self):
        assert cheeger_constant(0.0) == 0.0
        assert cheeger_constant(-1.0) == pytest.approx(0.5)
        assert cheeger_constant(4.0) == 0.0

    def test_chart_radius(self):
        assert chart_radius(-1.0) == pytest.approx(2.0)
        assert chart_radius(0.0) == math.inf

    def test_timelike_circle_range(self):
        assert timelike_circle_range(lorentz(0.0, 1.0)) == (1.0, math.inf)
        low, high = timelike_circle_range(lorentz(-1.0, 1.0))
        assert (low, high) == (pytest.approx(1.0), pytest.approx(2.0))
        assert timelike_circle_range(lorentz(-4.0, 1.0)) is None

    def test_no_timelike_circles_without_bundle_curvature(self):
        assert timelike_circle_range(lorentz(1.0, 0.0)) is None
        assert existence_classifier(lorentz(1.0, 0.0)) is FeasibilityVerdict.OUTSIDE_HYPOTHESIS
        assert timelike_circle_range(lorentz(0.0, 0.0)) is None

    def test_timelike_circles_need_lorentzian_space(self):
        with pytest.raises(PreconditionError):
            timelike_circle_range(nil(1.0))

    def test_existence_classifier(self):
        assert existence_classifier(lorentz(0.0, 1.0)) is FeasibilityVerdict.NO_COMPLETE_SPACELIKE
        assert existence_classifier(lorentz(-4.0, 1.0)) is FeasibilityVerdict.CRITICAL_REGIME
        assert existence_classifier(lorentz(-1.0, 0.0)) is FeasibilityVerdict.SUBCRITICAL_REGIME
        assert existence_classifier(lorentz(1.0, 0.0)) is FeasibilityVerdict.OUTSIDE_HYPOTHESIS

    def test_classifier_agrees_with_discriminant_on_sample_grid(self):
        """21x21 (κ, τ) samples: verdict and timelike circles follow the sign of κ + 4τ²."""
        for kappa in np.linspace(-2.0, 2.0, 21):
            for tau in np.linspace(-1.0, 1.0, 21):
                params = lorentz(float(kappa), float(tau))
                sign = discriminant_sign(kappa + 4.0 * tau ** 2)
                verdict = existence_classifier(params)
                circles = timelike_circle_range(params)
                if sign < 0:
                    assert verdict is FeasibilityVerdict.SUBCRITICAL_REGIME
                elif sign == 0:
                    assert verdict is FeasibilityVerdict.CRITICAL_REGIME
                elif kappa <= 0:
                    assert verdict is FeasibilityVerdict.NO_COMPLETE_SPACELIKE
                else:
                    assert verdict is FeasibilityVerdict.OUTSIDE_HYPOTHESIS
                assert (circles is not None) == (sign > 0 and tau != 0), (kappa, tau)

    def test_mechanisms_in_heisenberg_spacetime(self):
        report = nonexistence_mechanisms(lorentz(0.0, 1.0))
        assert report.cheeger_obstruction
        assert report.disk_radius_bound == pytest.approx(1.0)
        assert report.disk_bound_obstruction
        assert report.timelike_circle_obstruction

    def test_mechanisms_in_subcritical_regime(self):
        report = nonexistence_mechanisms(lorentz(-4.0, 0.5))
        assert not report.cheeger_obstruction
        assert not report.disk_bound_obstruction
        assert not report.timelike_circle_obstruction

    def test_spacelike_disk_bound(self):
        assert spacelike_disk_bound(lorentz(0.0, 2.0)) == pytest.approx(0.5)
        assert spacelike_disk_bound(lorentz(-1.0, 0.0)) == pytest.approx(2.0)


class TestDanielParameterMap:
    """Tests for the sister-correspondence parameter relations."""

    def test_nil_minimal_to_hyperbolic_product(self):
        assert daniel_parameter_map(0.0, 0.5, 0.0, 0.0) == (pytest.approx(-1.0), pytest.approx(0.5))

    def test_identity(self):
        assert daniel_parameter_map(-1.0, 0.3, 0.7, 0.3) == (pytest.approx(-1.0), pytest.approx(0.7))

    def test_to_sphere_space(self):
        assert daniel_parameter_map(0.0, 0.0, 1.0, 1.0) == (pytest.approx(4.0), pytest.approx(0.0))

    def test_infeasible_target(self):
        with pytest.raises(InfeasibleTargetError):
            daniel_parameter_map(0.0, 0.0, 0.0, 1.0)


class TestSpaceName:
    def test_names(self):
        assert space_name(R3) == "R3"
        assert space_name(nil(1.0)) == "Nil3(1)"
        assert space_name(lorentz(0.0, 0.0)) == "L3"
        assert space_name(lorentz(-4.0, 1.0)) == "H3_1(-4)"
        assert space_name(riemannian(4.0, 1.0)) == "S3(4)"


class TestDomainSpec:
    """Tests for masked grids."""

    def test_disk_has_no_spur_cells(self):
        domain = DomainSpec.centered_disk(1.0, 0.1)
        assert not domain.spur_mask().any()
        assert not domain.mask[domain.ny // 2, -1]
        assert domain.mask[domain.ny // 2, domain.nx // 2]

    def test_disk_is_simply_connected(self):
        domain = DomainSpec.centered_disk(1.0, 0.1)
        assert domain.is_simply_connected()
        domain.require_simply_connected()

    def test_annulus_is_rejected(self):
        disk = DomainSpec.centered_disk(1.0, 0.1)
        annulus = disk.with_mask(disk.mask & (disk.radius_squared() > 0.09))
        assert annulus.is_connected()
        assert not annulus.is_simply_connected()
        with pytest.raises(TopologyError):
            annulus.require_simply_connected()

    def test_chart_check(self):
        domain = DomainSpec.centered_disk(1.5, 0.1)
        domain.require_in_chart(-1.0)
        with pytest.raises(DomainError):
            domain.require_in_chart(-4.0)

    def test_rectangle_layout(self):
        domain = DomainSpec.centered_rectangle(1.0, 0.5, 0.25)
        assert (domain.nx, domain.ny) == (9, 5)
        assert domain.xs[0] == pytest.approx(-1.0)
        assert domain.ys[-1] == pytest.approx(0.5)
        assert domain.interior_mask().sum() == 7 * 3
        assert domain.core_mask(1).sum() == 5 * 1

    def test_nearest_and_centroid_cells(self):
        domain = DomainSpec.centered_rectangle(1.0, 1.0, 0.5)
        assert domain.centroid_cell() == (2, 2)
        assert domain.nearest_cell(0.9, -0.9) == (0, 4)

    def test_invalid_grid(self):
        with pytest.raises(DomainError):
            DomainSpec(0.0, 0.0, 0.0, 2, 2, np.ones((2, 2), dtype=bool))
        with pytest.raises(DomainError):
            DomainSpec(0.0, 0.0, 1.0, 3, 2, np.ones((2, 2), dtype=bool))

    def test_mask_is_read_only(self):
        domain = DomainSpec.centered_rectangle(1.0, 1.0, 0.5)
        with pytest.raises(ValueError):
            domain.mask[0, 0] = False
