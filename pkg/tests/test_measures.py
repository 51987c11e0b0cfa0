import numpy as np
import pytest

import vmfourier as vf
from vmfourier import GroupMap, VectorMeasure, XVector

from conftest import random_measure


class TestEvaluate:
    def test_empty_set(self, F3):
        assert np.allclose(vf.evaluate(F3, []).coords, 0)

    def test_whole_group(self, F3):
        assert np.allclose(vf.evaluate(F3).coords, [1, 1])

    def test_haar_total_mass(self, z2):
        nu = VectorMeasure.haar_scalar(z2)
        assert vf.evaluate(nu).coords[0] == pytest.approx(1.0)

    def test_additivity(self, F3):
        whole = vf.evaluate(F3, [0, 1]).coords
        split = vf.evaluate(F3, [0]).coords + vf.evaluate(F3, [1]).coords
        assert np.allclose(whole, split)


class TestScalarize:
    def test_zero_functional(self, F3, linf2):
        sm = vf.scalarize(F3, XVector(linf2, [0, 0]))
        assert np.allclose(sm.scalar_values(), 0)

    def test_coordinate_extraction(self, F3, linf2):
        sm = vf.scalarize(F3, XVector(linf2, [1, 0]))
        assert np.allclose(sm.scalar_values(), [1, 0])

    def test_coordinate_sum(self, F3, linf2):
        sm = vf.scalarize(F3, XVector(linf2, [1, 1]))
        assert np.allclose(sm.scalar_values(), [1, 1])

    def test_commutes_with_evaluate(self, z2, all_spaces):
        for si, space in enumerate(all_spaces):
            nu = random_measure(z2, space, seed=si)
            xp = XVector(space, space.sample_dual(np.random.default_rng(si), 1)[0])
            for subset in ([], [0], [1], [0, 1]):
                a = vf.pair(vf.evaluate(nu, subset), xp)
                b = vf.evaluate(vf.scalarize(nu, xp), subset).coords[0]
                assert a == pytest.approx(b, abs=1e-12)


class TestVariationSemivariation:
    def test_zero_measure(self, z2, linf2):
        nu = VectorMeasure.zero(z2, linf2)
        assert vf.variation(nu) == 0.0
        assert vf.semivariation(nu).upper == 0.0

    def test_f3_values(self, F3):
        assert vf.variation(F3) == pytest.approx(2.0)
        sv = vf.semivariation(F3)
        assert sv.exact and sv.lower == pytest.approx(1.0)

    def test_scalar_semivariation_equals_variation(self, z2):
        nu = VectorMeasure.scalar(z2, [0.5, -0.25j])
        sv = vf.semivariation(nu)
        assert sv.exact and sv.lower == pytest.approx(vf.variation(nu))

    def test_single_atom(self, z2, linf2):
        nu = VectorMeasure(z2, linf2, [[2, 1], [0, 0]])
        sv = vf.semivariation(nu, [0])
        assert sv.lower == pytest.approx(2.0)

    def test_sandwich(self, builtin_groups, all_spaces):
        for k, (g, _) in enumerate(builtin_groups[:4]):
            for si, space in enumerate(all_spaces):
                nu = random_measure(g, space, seed=10 * k + si)
                sv = vf.semivariation(nu)
                assert vf.norm(vf.evaluate(nu)) <= sv.lower + 1e-9
                assert sv.upper <= vf.variation(nu) + 1e-9

    def test_phase_sup_characterization(self, z2, all_spaces):
        # independent oracle: sup over |eps_t| <= 1 of ||sum eps_t x_t|| on a
        # dense phase grid never exceeds the semivariation bracket
        for si, space in enumerate(all_spaces):
            nu = random_measure(z2, space, seed=40 + si)
            sv = vf.semivariation(nu)
            grid = np.exp(2j * np.pi * np.arange(24) / 24)
            best = 0.0
            for e0 in grid:
                for e1 in grid:
                    v = e0 * nu.atoms[0] + e1 * nu.atoms[1]
                    best = max(best, space.norm_of(v))
            assert best <= sv.upper + 1e-9
            if space.exact_dual_sup:
                assert best <= sv.lower + 1e-9


class TestPSemivariation:
    def test_f3_p2(self, F3):
        est = vf.p_semivariation(F3, 2)
        assert est.exact and est.lower == pytest.approx(np.sqrt(2))

    def test_f3_infinity_subset_scan(self, F3, z2):
        est = vf.p_semivariation(F3, np.inf)
        assert est.lower == pytest.approx(2.0)
        # exhaustive oracle over nonempty subsets of ||nu(A)|| / m(A)
        best = 0.0
        for mask in range(1, 4):
            subset = [t for t in range(2) if mask >> t & 1]
            best = max(
                best, vf.norm(vf.evaluate(F3, subset)) * z2.order / len(subset)
            )
        assert est.lower == pytest.approx(best)

    def test_zero_measure(self, z2, linf2):
        assert vf.p_semivariation(VectorMeasure.zero(z2, linf2), 3).upper == 0.0

    def test_p_at_most_one_rejected(self, F3):
        with pytest.raises(ValueError):
            vf.p_semivariation(F3, 1.0)

    @pytest.mark.parametrize("p", [1.5, 2.0, 3.0])
    def test_sphere_sampling_oracle(self, s3, all_spaces, p):
        # random points of the L^{p'} unit sphere give operator values below
        # the bracket; for exact variants they stay below the exact value
        q = p / (p - 1)
        rng = np.random.default_rng(5)
        for si, space in enumerate(all_spaces):
            nu = random_measure(s3, space, seed=60 + si)
            est = vf.p_semivariation(nu, p)
            best = 0.0
            for _ in range(300):
                alpha = rng.standard_normal(s3.order) + 1j * rng.standard_normal(s3.order)
                alpha /= np.mean(np.abs(alpha) ** q) ** (1 / q)
                best = max(best, vf.norm(vf.integrate(alpha, nu)))
            assert best <= est.upper + 1e-9
            if space.exact_dual_sup:
                assert best <= est.lower + 1e-9
                assert best >= 0.5 * est.lower  # sampling is not vacuous


class TestRadonNikodym:
    def test_haar_density_is_one(self, z2):
        nu = VectorMeasure.haar_scalar(z2)
        h = vf.radon_nikodym(nu, XVector(vf.ScalarSpace(), [1]))
        assert np.allclose(h, 1.0)

    def test_f3_coordinate(self, F3, linf2):
        h = vf.radon_nikodym(F3, XVector(linf2, [1, 0]))
        assert np.allclose(h, [2, 0])

    def test_zero_measure_density(self, z2, linf2):
        nu = VectorMeasure.zero(z2, linf2)
        h = vf.radon_nikodym(nu, XVector(linf2, [1, 1]))
        assert np.allclose(h, 0)

    def test_reintegration_recovers_scalarization(self, s3, all_spaces):
        for si, space in enumerate(all_spaces):
            nu = random_measure(s3, space, seed=80 + si)
            xp = XVector(space, space.sample_dual(np.random.default_rng(si), 1)[0])
            h = vf.radon_nikodym(nu, xp)
            expected = vf.scalarize(nu, xp).scalar_values()
            assert np.allclose(h / s3.order, expected, atol=1e-12)


class TestPushforward:
    def test_identity_map(self, F3):
        out = vf.pushforward(F3, GroupMap.identity(F3.group))
        assert np.allclose(out.atoms, F3.atoms)

    def test_inversion_on_z2_fixes_atoms(self, F3):
        out = vf.pushforward(F3, GroupMap.inversion(F3.group))
        assert np.allclose(out.atoms, F3.atoms)

    def test_translation_swaps_atoms(self, F3):
        out = vf.pushforward(F3, GroupMap.translation(F3.group, 1))
        assert np.allclose(out.atoms, [[0, 1], [1, 0]])

    def test_map_then_inverse_is_identity(self, s3, linf2):
        nu = random_measure(s3, linf2, seed=3)
        for t in range(s3.order):
            h = GroupMap.translation(s3, t)
            back = vf.pushforward(vf.pushforward(nu, h), h.inverse())
            assert np.allclose(back.atoms, nu.atoms)

    def test_group_mismatch(self, F3, s3):
        with pytest.raises(ValueError):
            vf.pushforward(F3, GroupMap.identity(s3))


class TestInvarianceChecker:
    def test_haar_like_consistent_under_translations(self, z2, linf2):
        nu = vf.generate_fixture("haar-like", z2, linf2)
        for t in range(z2.order):
            rep = vf.check_semivariation_invariance(nu, GroupMap.translation(z2, t))
            assert rep.consistent and rep.max_discrepancy == 0.0

    def test_f3_translation_consistent(self, F3):
        rep = vf.check_semivariation_invariance(F3, GroupMap.translation(F3.group, 1))
        assert rep.consistent

    def test_refuted_example(self, z2, linf2):
        # atoms (2,0) and (0,1): translating swaps them, and the indicator of
        # the identity sees semivariation 2 on one side and 1 on the other
        nu = VectorMeasure(z2, linf2, [[2, 0], [0, 1]])
        rep = vf.check_semivariation_invariance(nu, GroupMap.translation(z2, 1))
        assert rep.refuted
        assert rep.max_discrepancy >= 1.0 - 1e-9


class TestDensitiesAndIntegrals:
    def test_density_one_is_identity(self, F3):
        out = vf.measure_from_density(F3, np.ones(2))
        assert np.allclose(out.atoms, F3.atoms)

    def test_density_indicator(self, F3):
        out = vf.measure_from_density(F3, [1, 0])
        assert np.allclose(out.atoms, [[1, 0], [0, 0]])

    def test_density_signs(self, F3):
        out = vf.measure_from_density(F3, [1, -1])
        assert np.allclose(out.atoms, [[1, 0], [0, -1]])

    def test_density_norm_identity(self, s3, all_spaces):
        # the semivariation of nu_f matches the weighted one-norm of f
        rng = np.random.default_rng(11)
        for si, space in enumerate(all_spaces):
            nu = random_measure(s3, space, seed=90 + si)
            f = rng.standard_normal(s3.order) + 1j * rng.standard_normal(s3.order)
            a = vf.semivariation(vf.measure_from_density(nu, f))
            b = vf.lp_nu_norm(vf.ScalarFunction(s3, f), nu, 1)
            if space.exact_dual_sup:
                assert a.lower == pytest.approx(b.lower, abs=1e-10)
            else:
                gap = max(0.0, a.lower - b.upper, b.lower - a.upper)
                assert gap <= 1e-9

    def test_integrate_indicator_is_evaluate(self, F3):
        out = vf.integrate(np.array([1.0, 0.0]), F3)
        assert np.allclose(out.coords, vf.evaluate(F3, [0]).coords)

    def test_integrate_signs(self, F3):
        assert np.allclose(vf.integrate(np.array([1, -1]), F3).coords, [1, -1])

    def test_tensor_integrate_character(self, F3, z2_dual):
        adj = z2_dual.irreps[1].matrices.conj().transpose(0, 2, 1)
        out = vf.tensor_integrate(adj, F3)
        assert out.level == 1
        assert np.allclose(out.entries[0, 0], [1, -1])

    def test_tensor_integrate_functional_compatibility(self, s3, all_spaces):
        # pairing the matrix integral with a matrix functional equals the
        # scalar integral of the compressed function
        rng = np.random.default_rng(13)
        for si, space in enumerate(all_spaces):
            nu = random_measure(s3, space, seed=100 + si)
            F = rng.standard_normal((s3.order, 2, 2)) + 1j * rng.standard_normal((s3.order, 2, 2))
            mox = vf.tensor_integrate(F, nu)
            y = rng.standard_normal(2) + 1j * rng.standard_normal(2)
            w = rng.standard_normal(2) + 1j * rng.standard_normal(2)
            compressed = np.einsum("a,tab,b->t", np.conj(y), F, w)
            lhs = np.einsum("a,abc,b->c", np.conj(y), mox.entries, w)
            rhs = vf.integrate(compressed, nu).coords
            assert np.allclose(lhs, rhs, atol=1e-10)


class TestKScalarBound:
    def test_haar_measure(self, z2):
        assert vf.is_k_scalarly_bounded(VectorMeasure.haar_scalar(z2), 1.0)

    def test_f3_threshold(self, F3):
        assert vf.is_k_scalarly_bounded(F3, 2.0)
        assert not vf.is_k_scalarly_bounded(F3, 1.9)

    def test_zero_measure(self, z2, linf2):
        assert vf.is_k_scalarly_bounded(VectorMeasure.zero(z2, linf2), 0.0)


class TestFixtureFiles:
    def test_roundtrip(self, tmp_path, F3):
        text = vf.dump_measure_fixture(F3, "cyclic:2", "linf:2")
        path = tmp_path / "f3.txt"
        path.write_text(text)
        loaded = vf.load_measure_fixture(path)
        assert np.allclose(loaded.atoms, F3.atoms)
        assert loaded.space == F3.space

    def test_missing_header(self, tmp_path):
        path = tmp_path / "bad.txt"
        path.write_text("0 1+0i 0+0i\n")
        with pytest.raises(ValueError):
            vf.load_measure_fixture(path)
