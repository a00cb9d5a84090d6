import math

import pytest

from biharmonica.biharmonic import (
    MINIMAL,
    NOT_BIHARMONIC,
    PROPER_BIHARMONIC,
    chn_residual,
    classify,
    cmc_defect,
    csl_residual,
    interior_grid,
    residual_cmc,
    residual_full,
    ricci_normal_identity,
    umbilic_reduction_residual,
    verdict,
)
from biharmonica.exceptions import AmbientMismatchError, DomainError, NotCMCError
from biharmonica.geometry import BCV, SPACE_FORM, make_model
from biharmonica.hopf import hopf_cylinder
from biharmonica.server import server
from biharmonica.settings import settings
from biharmonica.surface import SurfacePatch, geodesic_sphere, plane, vertical_cylinder

# H (Ric(xi, xi) - |A|^2) for the sphere of radius pi/3 in S^3
THIRD_SPHERE_RESIDUAL = (1.0 / math.sqrt(3.0)) * (2.0 - 2.0 / 3.0)


def paraboloid(model):
    return SurfacePatch(model, lambda u, v: (u, v, u * u + v * v), (-0.5, 0.5), (-0.5, 0.5), name='paraboloid')


class TestResidual:
    def test_quarter_sphere_is_biharmonic(self, s3):
        result = residual_full(geodesic_sphere(s3, math.pi / 4.0), (1.0, 1.2))
        assert result.mean_curvature == pytest.approx(1.0)
        assert abs(result.normal_residual) <= 1e-6
        assert result.tangential_residual <= 1e-6
        assert result.gradient_norm <= 1e-6
        assert result.chn_triple is None and result.csl_triple is None

    def test_third_sphere(self, s3):
        result = residual_full(geodesic_sphere(s3, math.pi / 3.0), (1.0, 1.2))
        assert result.normal_residual == pytest.approx(THIRD_SPHERE_RESIDUAL, abs=1e-6)
        assert result.max_residual == pytest.approx(THIRD_SPHERE_RESIDUAL, abs=1e-6)

    def test_reduced_system(self, s3):
        result = residual_cmc(geodesic_sphere(s3, math.pi / 3.0), (1.0, 1.2))
        assert result.normal_residual == pytest.approx(THIRD_SPHERE_RESIDUAL, rel=1e-10)
        assert result.tangential_residual == pytest.approx(0.0, abs=1e-12)

    def test_reduced_system_needs_cmc(self, euclid):
        with pytest.raises(NotCMCError):
            residual_cmc(paraboloid(euclid), (0.0, 0.0))

    def test_cmc_defect_follows_the_step_setting(self, euclid):
        patch = paraboloid(euclid)
        fine = cmc_defect(patch)
        settings.override(fd_step=0.05)
        coarse = cmc_defect(patch)
        assert coarse == cmc_defect(patch, step=0.05)
        assert coarse != fine
        assert fine == cmc_defect(patch, step=1e-3)

    def test_curvature_scaling(self):
        # c -> 4c with radius / 2 multiplies the normal residual by 2^3
        model = make_model(SPACE_FORM, c=4.0)
        result = residual_full(geodesic_sphere(model, math.pi / 6.0), (1.0, 1.2))
        assert result.normal_residual == pytest.approx(8.0 * THIRD_SPHERE_RESIDUAL, rel=1e-6)

    def test_minimal_planes_are_biharmonic(self, euclid, sol):
        for patch in (plane(euclid, 'x', 0.3), plane(sol, 'z', 0.3)):
            result = residual_full(patch, (0.1, -0.2))
            assert result.mean_curvature == pytest.approx(0.0, abs=1e-10)
            assert result.max_residual <= 1e-8

    def test_paraboloid_is_not_biharmonic(self, euclid):
        assert residual_full(paraboloid(euclid), (0.1, 0.2)).max_residual > 1.0


class TestReducedTriples:
    def test_critical_hopf_cylinder(self):
        patch = hopf_cylinder(1.0, 1.0)
        uv = interior_grid(patch, (3, 3))[4]
        for value in chn_residual(patch.model, patch, uv):
            assert value == pytest.approx(0.0, abs=1e-8)

    def test_perturbed_hopf_cylinder(self):
        patch = hopf_cylinder(1.0, 1.0, radius_scale=1.05)
        uv = interior_grid(patch, (3, 3))[4]
        assert abs(chn_residual(patch.model, patch, uv)[0]) >= 1e-2

    def test_hopf_residual_carries_chn(self):
        patch = hopf_cylinder(1.0, 0.0)
        result = residual_full(patch, interior_grid(patch, (3, 3))[4])
        assert result.csl_triple is None
        assert max(abs(x) for x in result.chn_triple) <= 1e-8

    def test_sol_planes(self, sol):
        nabla, x1, x2 = csl_residual(sol, plane(sol, 'z', 0.3), (0.1, 0.1))
        assert nabla == pytest.approx(4.0)
        assert x1 == pytest.approx(0.0, abs=1e-12)
        assert x2 == pytest.approx(0.0, abs=1e-12)

        patch = plane(sol, 'y', 0.0)
        triple = csl_residual(sol, patch, (0.1, 0.1))
        assert triple[0] == pytest.approx(residual_full(patch, (0.1, 0.1)).csl_triple[0])
        assert triple[1:] == pytest.approx((0.0, 0.0), abs=1e-12)

    def test_wrong_ambient(self, sol, euclid):
        with pytest.raises(AmbientMismatchError):
            chn_residual(sol, plane(sol), (0.0, 0.0))
        with pytest.raises(AmbientMismatchError):
            csl_residual(sol, plane(euclid), (0.0, 0.0))
        with pytest.raises(AmbientMismatchError):
            chn_residual(make_model(BCV, m=1.0, l=1.0), plane(euclid), (0.0, 0.0))


class TestRicciIdentity:
    @pytest.mark.parametrize('patch', [
        hopf_cylinder(1.0, 1.0),
        vertical_cylinder(make_model('sol'), 0.5),
        plane(make_model('sol'), 'x', 0.2),
        geodesic_sphere(make_model(SPACE_FORM, c=1.0), 1.0),
        SurfacePatch(make_model(BCV, m=0.5, l=1.5), lambda u, v: (u, v, 0.3 * u * v), (-0.5, 0.5), (-0.5, 0.5)),
    ], ids=lambda patch: patch.name)
    def test_closed_form(self, patch):
        uv = interior_grid(patch, (3, 3))[1]
        identity = ricci_normal_identity(patch.model, patch, uv)
        assert abs(identity.normal_difference) <= 1e-8
        assert identity.tangential_difference <= 1e-8

    def test_model_mismatch(self, sol, euclid):
        with pytest.raises(AmbientMismatchError):
            ricci_normal_identity(sol, plane(euclid), (0.0, 0.0))

    def test_umbilic_reduction(self, s3):
        assert umbilic_reduction_residual(geodesic_sphere(s3, 0.7), (1.0, 1.0)) <= 1e-6


class TestVerdict:
    @pytest.mark.parametrize('classification, max_residual, max_h, min_h, margin', [
        (MINIMAL, 0.5, 1e-9, 0.0, 1e-6 - 1e-9),
        (PROPER_BIHARMONIC, 1e-8, 1.0, 0.5, 1e-6 - 1e-8),
        (NOT_BIHARMONIC, 1.0, 1.0, 1.0, 1.0 - 1e-6),
        (NOT_BIHARMONIC, 1e-8, 1.0, 1e-4, 1e-3 - 1e-4),
    ])
    def test_classify(self, classification, max_residual, max_h, min_h, margin):
        result, actual_margin = classify(max_residual, max_h, min_h, 1e-6, 1e-3)
        assert result == classification
        assert actual_margin == pytest.approx(margin)
        assert actual_margin >= 0.0

    def test_quarter_sphere(self, s3):
        result = verdict(geodesic_sphere(s3, math.pi / 4.0), grid=(3, 3))
        assert result.classification == PROPER_BIHARMONIC
        assert result.is_biharmonic
        assert result.points == 9
        assert result.min_mean_curvature == pytest.approx(1.0)

    @pytest.mark.parametrize('c', [0.5, 2.0])
    def test_scaled_quarter_sphere(self, c):
        model = make_model(SPACE_FORM, c=c)
        result = verdict(geodesic_sphere(model, math.pi / (4.0 * math.sqrt(c))), grid=(3, 3))
        assert result.classification == PROPER_BIHARMONIC
        assert result.min_mean_curvature == pytest.approx(math.sqrt(c))
        assert result.max_mean_curvature == pytest.approx(math.sqrt(c))

    def test_third_sphere(self, s3):
        result = verdict(geodesic_sphere(s3, math.pi / 3.0), grid=(3, 3))
        assert result.classification == NOT_BIHARMONIC
        assert result.max_residual == pytest.approx(THIRD_SPHERE_RESIDUAL, abs=1e-6)

    def test_flat_plane(self, euclid):
        result = verdict(plane(euclid), grid='2x2')
        assert result.classification == MINIMAL
        assert result.chn_max == pytest.approx(0.0, abs=1e-12)

    @pytest.mark.parametrize('m, l, expected', [
        (1.0, 1.0, PROPER_BIHARMONIC),
        (0.25, 0.0, PROPER_BIHARMONIC),
        (1.0, 2.0, MINIMAL),
    ])
    def test_hopf_cylinders(self, m, l, expected):
        assert verdict(hopf_cylinder(m, l), grid=(3, 3)).classification == expected

    def test_perturbed_hopf_cylinder(self):
        assert verdict(hopf_cylinder(1.0, 1.0, radius_scale=1.05), grid=(3, 3)).classification == NOT_BIHARMONIC

    def test_sol_cylinder(self, sol):
        result = verdict(vertical_cylinder(sol, 0.5), grid=(3, 3))
        assert result.classification == NOT_BIHARMONIC
        assert result.csl_max is not None

    @pytest.mark.parametrize('grid', [(0, 3), (3, 0)])
    def test_empty_grid(self, s3, grid):
        with pytest.raises(DomainError):
            verdict(geodesic_sphere(s3, 1.0), grid=grid)

    def test_worker_count_does_not_change_the_result(self, s3):
        patch = geodesic_sphere(s3, math.pi / 3.0)
        inline = verdict(patch, grid=(3, 3))
        server.start(2)
        assert server.running
        threaded = verdict(patch, grid=(3, 3))
        assert threaded == inline
