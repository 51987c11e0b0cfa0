import json
import re
import subprocess
import sys

import numpy as np
import pytest

import vmfourier as vf
from vmfourier import GroupMap, RunConfig
from vmfourier.harness import classify, grid_dual_sup


def small_config(**overrides):
    base = dict(
        groups=["cyclic:2", "symmetric:3"],
        spaces=["scalar", "linf:2", "matop:2", "weighted_l1:2"],
        trials=6,
        seed=7,
    )
    base.update(overrides)
    return RunConfig(**base)


class TestFixtures:
    def test_haar_like_atoms(self, z2, linf2):
        nu = vf.generate_fixture("haar-like", z2, linf2)
        assert np.allclose(nu.atoms, 0.5)
        assert vf.norm(vf.evaluate(nu)) == pytest.approx(1.0)

    def test_point_mass(self, z2, linf2):
        nu = vf.generate_fixture("point-mass", z2, linf2)
        assert np.allclose(nu.atoms[1], 0)
        assert vf.norm(vf.evaluate(nu, [0])) == pytest.approx(1.0)

    def test_random_gaussian_deterministic(self, s3, linf2):
        a = vf.generate_fixture("random-gaussian", s3, linf2, seed=42)
        b = vf.generate_fixture("random-gaussian", s3, linf2, seed=42)
        assert np.array_equal(a.atoms, b.atoms)
        c = vf.generate_fixture("random-gaussian", s3, linf2, seed=43)
        assert not np.allclose(a.atoms, c.atoms)

    def test_random_gaussian_normalized(self, s3, linf2):
        nu = vf.generate_fixture("random-gaussian", s3, linf2, seed=4)
        assert vf.semivariation(nu).midpoint == pytest.approx(1.0, rel=1e-6)

    def test_translation_invariant_passes_checker(self, s3, linf2):
        nu = vf.generate_fixture("translation-invariant", s3, linf2, seed=5)
        for t in range(s3.order):
            rep = vf.check_semivariation_invariance(nu, GroupMap.translation(s3, t))
            assert rep.consistent

    def test_unknown_kind(self, z2, linf2):
        with pytest.raises(ValueError):
            vf.generate_fixture("cauchy", z2, linf2)


class TestClassify:
    def test_certified_violation(self):
        lhs = vf.NormEstimate.of_exact(2.0)
        rhs = vf.NormEstimate.bracket(0.5, 1.0)
        assert classify(lhs, rhs, 1e-8) == "violation"

    def test_certified_pass(self):
        lhs = vf.NormEstimate.of_exact(1.0)
        rhs = vf.NormEstimate.of_exact(2.0)
        assert classify(lhs, rhs, 1e-8) == "pass"

    def test_overlap_is_near_miss(self):
        lhs = vf.NormEstimate.bracket(1.0, 3.0)
        rhs = vf.NormEstimate.bracket(2.0, 2.5)
        assert classify(lhs, rhs, 1e-8) == "near-miss"


class TestRunSuite:
    def test_unknown_suite(self):
        with pytest.raises(ValueError):
            vf.run_suite("nonexistent", small_config())

    def test_suite_names_cover_registry(self):
        names = vf.suite_names()
        assert "plancherel" in names and "young-6.5" in names
        assert "commutativity-8.5" in names

    @pytest.mark.parametrize("name", ["plancherel", "ft-conv-6", "young-6.5", "uniqueness"])
    def test_small_runs_have_no_violations(self, name):
        rep = vf.run_suite(name, small_config())
        assert rep.violations == 0
        assert rep.instances > 0

    def test_determinism(self):
        cfg = small_config()
        a = vf.run_suite("ft-norm-bounds", cfg)
        b = vf.run_suite("ft-norm-bounds", cfg)
        assert (a.instances, a.violations, a.near_misses, a.max_residual) == (
            b.instances, b.violations, b.near_misses, b.max_residual
        )

    def test_commutativity_finds_witness(self):
        cfg = small_config(groups=["symmetric:3", "dihedral:4", "quaternion8"])
        rep = vf.run_suite("commutativity-8.5", cfg)
        assert rep.violations == 0
        assert "witness" in rep.detail

    def test_trials_override(self):
        cfg = small_config(trials=3)
        rep = vf.run_suite("pairing-compat", cfg)
        assert rep.instances == 3


class TestFaultInjection:
    # each fault must produce a certified violation within 10 trials on a
    # group with a block of dimension 2
    def fault_config(self):
        return small_config(groups=["symmetric:3"], spaces=["linf:2"], trials=10)

    def test_drop_block_dim_factor_conv6(self):
        rep = vf.run_suite("ft-conv-6", self.fault_config(), fault="drop-dpi-conv6")
        assert rep.violations >= 1

    def test_drop_block_dim_factor_conv8(self):
        rep = vf.run_suite("ft-conv-8", self.fault_config(), fault="drop-dpi-conv8")
        assert rep.violations >= 1

    def test_drop_inverse_dim_in_transform(self):
        rep = vf.run_suite("ft-conv-6", self.fault_config(), fault="drop-inv-dpi-def41")
        assert rep.violations >= 1

    def test_perturbed_irrep_breaks_validation(self):
        rep = vf.run_suite("dual-validation", self.fault_config(), fault="perturb-irrep")
        assert rep.violations >= 1

    def test_perturbed_irrep_breaks_plancherel(self):
        rep = vf.run_suite("plancherel", self.fault_config(), fault="perturb-irrep")
        assert rep.violations >= 1

    def test_faults_do_not_fire_without_injection(self):
        rep = vf.run_suite("ft-conv-6", self.fault_config())
        assert rep.violations == 0

    def test_unknown_fault(self):
        with pytest.raises(ValueError):
            vf.run_suite("ft-conv-6", self.fault_config(), fault="bogus")


class TestEmitReport:
    def make_reports(self):
        cfg = small_config(trials=2)
        return [vf.run_suite("plancherel", cfg), vf.run_suite("pairing-compat", cfg)]

    def test_empty_reports(self, tmp_path):
        text = vf.emit_report([], "json", tmp_path / "r.json")
        doc = json.loads(text)
        assert doc["violations"] == 0 and doc["suites"] == []

    def test_json_schema_fields(self):
        doc = json.loads(vf.emit_report(self.make_reports(), "json", None, seed=7))
        assert doc["schema"].startswith("vmfourier-report/")
        assert doc["seed"] == 7
        suite = doc["suites"][0]
        assert list(suite) == [
            "suite", "anchor", "instances", "violations", "near_misses",
            "skipped", "max_residual", "elapsed_s", "detail",
        ]

    def test_markdown_format(self):
        text = vf.emit_report(self.make_reports(), "markdown")
        assert text.startswith("# Verification report")
        assert "| plancherel |" in text

    def test_unknown_format(self):
        with pytest.raises(ValueError):
            vf.emit_report([], "yaml")

    def test_deterministic_modulo_timing(self):
        def strip_elapsed(text):
            return re.sub(r'"elapsed_s": [0-9.e-]+', '"elapsed_s": 0', text)

        a = vf.emit_report(self.make_reports(), "json", None, seed=7)
        b = vf.emit_report(self.make_reports(), "json", None, seed=7)
        assert strip_elapsed(a) == strip_elapsed(b)

    def test_violations_counted(self):
        cfg = small_config(groups=["symmetric:3"], spaces=["linf:2"], trials=10)
        rep = vf.run_suite("ft-conv-6", cfg, fault="drop-dpi-conv6")
        doc = json.loads(vf.emit_report([rep], "json"))
        assert doc["violations"] >= 1


class TestConfigFiles:
    def test_parse_roundtrip(self, tmp_path):
        path = tmp_path / "cfg.txt"
        path.write_text(
            """
            # battery configuration
            groups = cyclic:2, symmetric:3
            spaces = scalar, linf:2
            suites = plancherel, uniqueness
            trials = 5
            seed = 99
            tol_exact = 1e-9
            """
        )
        cfg = vf.load_config(path)
        assert cfg.groups == ["cyclic:2", "symmetric:3"]
        assert cfg.suites == ["plancherel", "uniqueness"]
        assert cfg.trials == 5 and cfg.seed == 99
        assert cfg.tol_exact == 1e-9

    def test_unknown_key(self, tmp_path):
        path = tmp_path / "cfg.txt"
        path.write_text("bogus = 1\n")
        with pytest.raises(ValueError):
            vf.load_config(path)

    def test_unknown_suite_in_config(self, tmp_path):
        path = tmp_path / "cfg.txt"
        path.write_text("suites = nonexistent\n")
        with pytest.raises(ValueError):
            vf.load_config(path)

    def test_bad_trials(self, tmp_path):
        path = tmp_path / "cfg.txt"
        path.write_text("trials = 0\n")
        with pytest.raises(ValueError):
            vf.load_config(path)


class TestGridOracle:
    def test_scalar_grid(self):
        s = vf.ScalarSpace()
        pts = vf.harness.grid_dual_points(s)
        assert pts.shape == (24, 1)
        assert np.allclose(np.abs(pts), 1.0)

    def test_weighted_grid_within_ball(self):
        s = vf.WeightedL1Space.uniform(2)
        pts = vf.harness.grid_dual_points(s)
        for p in pts:
            assert s.dual_norm_of(p) <= 1 + 1e-12

    def test_matop_grid_within_ball(self):
        s = vf.MatOpSpace(2)
        pts = vf.harness.grid_dual_points(s)
        for p in pts[:50]:
            assert s.dual_norm_of(p) <= 1 + 1e-9

    def test_grid_value_below_exact(self, linf2):
        rng = np.random.default_rng(0)
        atoms = [
            (1.0, vf.XVector(linf2, rng.standard_normal(2) + 1j * rng.standard_normal(2)))
            for _ in range(3)
        ]
        exact = vf.dual_ball_sup(linf2, atoms)
        assert grid_dual_sup(linf2, atoms) <= exact.lower + 1e-12


def run_cli(*args, env=None):
    import os

    full_env = dict(os.environ)
    if env:
        full_env.update(env)
    return subprocess.run(
        [sys.executable, "-m", "vmfourier.cli", *args],
        capture_output=True,
        text=True,
        env=full_env,
    )


class TestCli:
    def test_list(self):
        out = run_cli("list")
        assert out.returncode == 0
        assert "plancherel" in out.stdout

    def test_run_small_battery(self, tmp_path):
        cfg = tmp_path / "cfg.txt"
        cfg.write_text(
            "groups = cyclic:2\nspaces = scalar, linf:2\n"
            "suites = plancherel, ft-conv-6\ntrials = 4\n"
        )
        report = tmp_path / "out.json"
        out = run_cli("run", "--config", str(cfg), "--out", str(report))
        assert out.returncode == 0, out.stderr
        doc = json.loads(report.read_text())
        assert doc["violations"] == 0

    def test_run_markdown(self, tmp_path):
        cfg = tmp_path / "cfg.txt"
        cfg.write_text("groups = cyclic:2\nspaces = scalar\nsuites = plancherel\ntrials = 3\n")
        report = tmp_path / "out.md"
        out = run_cli(
            "run", "--config", str(cfg), "--format", "markdown", "--out", str(report)
        )
        assert out.returncode == 0
        assert report.read_text().startswith("# Verification report")

    def test_bad_config_exits_2(self, tmp_path):
        cfg = tmp_path / "cfg.txt"
        cfg.write_text("nonsense\n")
        out = run_cli("run", "--config", str(cfg))
        assert out.returncode == 2

    def test_unknown_suite_exits_2(self, tmp_path):
        out = run_cli("run", "--suite", "bogus", "--out", str(tmp_path / "r.json"))
        assert out.returncode == 2

    def test_seed_and_suite_flags(self, tmp_path):
        report = tmp_path / "r.json"
        out = run_cli(
            "run", "--suite", "uniqueness", "--seed", "3", "--trials", "2",
            "--out", str(report),
        )
        assert out.returncode == 0
        doc = json.loads(report.read_text())
        assert doc["seed"] == 3 and doc["suites"][0]["suite"] == "uniqueness"

    def test_env_var_output_dir(self, tmp_path):
        cfg = tmp_path / "cfg.txt"
        cfg.write_text("groups = cyclic:2\nspaces = scalar\nsuites = uniqueness\n")
        out = run_cli(
            "run", "--config", str(cfg), env={"VMFOURIER_OUT": str(tmp_path / "envdir")}
        )
        assert out.returncode == 0
        assert (tmp_path / "envdir" / "report.json").exists()

    def test_injected_fault_exits_1(self, tmp_path):
        cfg = tmp_path / "cfg.txt"
        cfg.write_text(
            "groups = symmetric:3\nspaces = linf:2\nsuites = dual-validation\n"
        )
        report = tmp_path / "r.json"
        out = run_cli(
            "run", "--config", str(cfg), "--fault", "perturb-irrep",
            "--out", str(report),
        )
        assert out.returncode == 1
        assert json.loads(report.read_text())["violations"] >= 1

    def test_fixtures_to_directory(self, tmp_path):
        out = run_cli("fixtures", "--out", str(tmp_path / "tables"))
        assert out.returncode == 0
        files = sorted(p.name for p in (tmp_path / "tables").iterdir())
        assert "group_S4.txt" in files and "dual_Q8.txt" in files
        # the dumped tables load back and validate
        g = vf.load_group_file(tmp_path / "tables" / "group_S3.txt")
        dual = vf.load_dual_file(tmp_path / "tables" / "dual_S3.txt", g)
        assert vf.validate_dual(g, dual, 1e-10).passed
