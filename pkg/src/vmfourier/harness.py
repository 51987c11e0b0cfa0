"""Configuration-driven verification runner.

Each suite draws deterministic random instances (functions, measures, dual
functionals) on the configured groups and coefficient spaces, evaluates one
identity or inequality with certified brackets, and reports certified
violations, bracket-ambiguous near misses and the worst residual.

Inequalities always compare a lower bound of the left side against an upper
bound of the right side, so estimator slack can never certify a false
violation; overlapping brackets count as near misses, never as pass or fail.
"""

from __future__ import annotations

import json
import time
import zlib
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .convolve import (
    conv_classical,
    conv_function_measure,
    conv_measure_sv,
    conv_measure_vs,
    conv_vector,
    conv_weak,
)
from .fourier import (
    _ft_vector_blocks,
    ft_classical,
    ft_inverse,
    ft_measure,
    ft_sup_norm,
    ft_vector,
    ft_weak,
    plancherel_check,
    uniqueness_rank,
)
from .groups import (
    FiniteGroup,
    UnitaryDual,
    UnitaryIrrep,
    build_group,
    builtin_group_specs,
    unitary_dual,
    validate_dual,
)
from .lpspaces import (
    MatrixFunction,
    Pp_norm,
    ScalarFunction,
    function_pushforward,
    lp_norm_haar,
    lp_nu_norm,
    reflect,
)
from .measures import (
    GroupMap,
    VectorMeasure,
    check_semivariation_invariance,
    evaluate,
    integrate,
    is_k_scalarly_bounded,
    measure_from_density,
    p_semivariation,
    pushforward,
    radon_nikodym,
    semivariation,
)
from .spaces import (
    CoefficientSpace,
    LinfSpace,
    MatOpSpace,
    MatrixOverX,
    NormEstimate,
    ScalarSpace,
    WeightedL1Space,
    XVector,
    amplified_norm,
    dual_ball_sup,
    dual_norm,
    matrix_pair,
    mox_assemble,
    mox_matmul,
    norm,
    pair,
    space_from_spec,
)

__all__ = [
    "RunConfig",
    "TheoremReport",
    "default_config",
    "load_config",
    "suite_names",
    "run_suite",
    "run_battery",
    "generate_fixture",
    "emit_report",
    "grid_dual_points",
    "grid_dual_sup",
    "classify",
    "FAULTS",
]

SCHEMA = "vmfourier-report/1"
EXPONENT_GRID = (1.0, 1.5, 2.0, 3.0, 4.0)
FAULTS = (
    "drop-dpi-conv6",
    "drop-dpi-conv8",
    "drop-inv-dpi-def41",
    "perturb-irrep",
)

PASS, NEAR_MISS, VIOLATION = "pass", "near-miss", "violation"


@dataclass
class RunConfig:
    """Battery configuration; ``trials=None`` keeps each suite's default."""

    groups: list[str] = field(default_factory=builtin_group_specs)
    spaces: list[str] = field(
        default_factory=lambda: ["scalar", "linf:2", "matop:2", "weighted_l1:2"]
    )
    suites: list[str] = field(default_factory=lambda: list(_SUITES))
    trials: int | None = None
    seed: int = 0
    tol_exact: float = 1e-10
    tol_bracket: float = 1e-8
    out_dir: Path | None = None

    def __post_init__(self):
        if self.trials is not None and self.trials < 1:
            raise ValueError("trials must be >= 1")
        if self.tol_exact <= 0 or self.tol_bracket <= 0:
            raise ValueError("tolerances must be positive")


@dataclass
class TheoremReport:
    """Outcome of one suite run."""

    suite: str
    anchor: str
    instances: int
    violations: int
    near_misses: int
    skipped: int
    max_residual: float
    elapsed_s: float
    detail: str = ""

    def to_dict(self) -> dict:
        return {
            "suite": self.suite,
            "anchor": self.anchor,
            "instances": self.instances,
            "violations": self.violations,
            "near_misses": self.near_misses,
            "skipped": self.skipped,
            "max_residual": self.max_residual,
            "elapsed_s": self.elapsed_s,
            "detail": self.detail,
        }


def classify(lhs: NormEstimate, rhs: NormEstimate, tol: float) -> str:
    """Status of the claim lhs <= rhs given certified brackets for each side."""
    if lhs.lower > rhs.upper + tol:
        return VIOLATION
    if lhs.upper <= rhs.lower + tol:
        return PASS
    return NEAR_MISS


def _excess(lhs: NormEstimate, rhs: NormEstimate) -> float:
    return max(0.0, lhs.lower - rhs.upper)


def _instance_rng(seed: int, suite: str, index: int) -> np.random.Generator:
    key = zlib.crc32(suite.encode())
    return np.random.default_rng(np.random.SeedSequence([seed, key, index]))


def _inv(p: float) -> float:
    return 0.0 if np.isinf(p) else 1.0 / p


def _conj(p: float) -> float:
    if p == 1.0:
        return np.inf
    if np.isinf(p):
        return 1.0
    return p / (p - 1.0)


# ---------------------------------------------------------------------------
# fixtures
# ---------------------------------------------------------------------------


def generate_fixture(
    kind: str, group: FiniteGroup, space: CoefficientSpace, seed: int = 0
) -> VectorMeasure:
    """Reproducible vector measures for the suites.

    ``haar-like``: constant atoms x0/|G| with x0 the normalized all-ones
    vector; semivariation invariant under every translation and inversion by
    construction, with nu(G) = x0 != 0.  ``translation-invariant``: the same
    construction with a random direction x0.  ``point-mass``: x0 at the
    identity.  ``random-gaussian``: independent complex Gaussian atoms,
    rescaled so the semivariation bracket midpoint is 1.
    """
    rng = np.random.default_rng(seed)
    n = group.order
    if kind == "haar-like":
        x0 = np.ones(space.dim, dtype=complex)
        x0 /= space.norm_of(x0)
        return VectorMeasure(group, space, np.tile(x0 / n, (n, 1)))
    if kind == "translation-invariant":
        x0 = rng.standard_normal(space.dim) + 1j * rng.standard_normal(space.dim)
        x0 /= space.norm_of(x0)
        return VectorMeasure(group, space, np.tile(x0 / n, (n, 1)))
    if kind == "point-mass":
        x0 = np.ones(space.dim, dtype=complex)
        x0 /= space.norm_of(x0)
        atoms = np.zeros((n, space.dim), dtype=complex)
        atoms[group.identity] = x0
        return VectorMeasure(group, space, atoms)
    if kind == "random-gaussian":
        atoms = rng.standard_normal((n, space.dim)) + 1j * rng.standard_normal((n, space.dim))
        nu = VectorMeasure(group, space, atoms)
        mid = semivariation(nu).midpoint
        return VectorMeasure(group, space, atoms / mid if mid > 0 else atoms)
    raise ValueError(f"unknown fixture kind {kind!r}")


def _random_function(group: FiniteGroup, rng) -> ScalarFunction:
    v = rng.standard_normal(group.order) + 1j * rng.standard_normal(group.order)
    return ScalarFunction(group, v)


def _random_dual(space: CoefficientSpace, rng, radius_range=(0.25, 2.0)) -> XVector:
    xp = space.sample_dual(rng, 1)[0]
    r = rng.uniform(*radius_range)
    return XVector(space, r * xp)


def _xp_as_level1(xp: XVector) -> MatrixOverX:
    return MatrixOverX(xp.space, xp.coords[None, None, :])


# ---------------------------------------------------------------------------
# phase-grid oracle
# ---------------------------------------------------------------------------


def grid_dual_points(space: CoefficientSpace, phases: int = 24) -> np.ndarray:
    """Extreme points of the dual unit ball on a finite phase grid.

    Supports the calibration sizes (coordinate spaces with dim <= 3, matrix
    spaces with d <= 2).  The grid value is always a lower bound for the true
    dual-ball supremum of any convex objective.
    """
    ph = np.exp(2j * np.pi * np.arange(phases) / phases)
    if isinstance(space, ScalarSpace):
        return ph[:, None]
    if isinstance(space, LinfSpace):
        pts = np.zeros((space.dim * phases, space.dim), dtype=complex)
        for j in range(space.dim):
            pts[j * phases : (j + 1) * phases, j] = ph
        return pts
    if isinstance(space, WeightedL1Space):
        if space.dim > 3:
            raise ValueError("grid oracle supports weighted spaces of dim <= 3 only")
        grids = np.meshgrid(*([ph] * space.dim), indexing="ij")
        pts = np.stack([g.reshape(-1) for g in grids], axis=1)
        return space.weights[None, :] * pts
    if isinstance(space, MatOpSpace):
        if space.d == 1:
            return ph[:, None]
        if space.d != 2:
            raise ValueError("grid oracle supports matrix spaces with d <= 2 only")
        ang = np.linspace(0.0, np.pi / 2, 13)
        us = []
        for a in ang:
            for w in ph:
                us.append([np.cos(a), np.sin(a) * w])
        us = np.asarray(us)
        pts = np.einsum("ua,vb->uvab", us, us.conj()).reshape(-1, 4)
        return pts
    raise ValueError(f"grid oracle does not support {space!r}")


def grid_dual_sup(space, atoms, phases: int = 24) -> float:
    """Brute-force max of sum_t c_t |<v_t, xp>| over the phase-grid points."""
    weights = np.asarray([c for c, _ in atoms], dtype=float)
    if weights.size == 0:
        return 0.0
    vecs = np.asarray([v.coords for _, v in atoms])
    pts = grid_dual_points(space, phases)
    vals = np.abs(space.pair_many(vecs, pts)) @ weights
    return float(vals.max())


# ---------------------------------------------------------------------------
# suite context
# ---------------------------------------------------------------------------


@dataclass
class _Ctx:
    cfg: RunConfig
    groups: list[tuple[FiniteGroup, UnitaryDual]]
    spaces: list[CoefficientSpace]
    fault: str | None

    def exact_tol(self):
        return self.cfg.tol_exact

    def bracket_tol(self):
        return self.cfg.tol_bracket


class _Tally:
    def __init__(self):
        self.instances = 0
        self.violations = 0
        self.near_misses = 0
        self.skipped = 0
        self.max_residual = 0.0
        self.notes: list[str] = []

    def residual_check(self, residual: float, tol: float, note: str = ""):
        self.instances += 1
        self.max_residual = max(self.max_residual, residual)
        if residual > tol:
            self.violations += 1
            if note:
                self.notes.append(note)

    def compare(self, lhs: NormEstimate, rhs: NormEstimate, tol: float, note: str = ""):
        self.instances += 1
        status = classify(lhs, rhs, tol)
        self.max_residual = max(self.max_residual, _excess(lhs, rhs))
        if status == VIOLATION:
            self.violations += 1
            if note:
                self.notes.append(note)
        elif status == NEAR_MISS:
            self.near_misses += 1

    def skip(self):
        self.skipped += 1


def _perturbed_dual(dual: UnitaryDual, magnitude: float = 1e-3) -> UnitaryDual:
    irreps = []
    for r, p in enumerate(dual.irreps):
        mats = p.matrices.copy()
        if r == len(dual.irreps) - 1:
            mats = mats.copy()
            mats[1, 0, 0] += magnitude
        irreps.append(UnitaryIrrep(p.dim, mats, p.label))
    return UnitaryDual(dual.group, irreps)


# ---------------------------------------------------------------------------
# suites
# ---------------------------------------------------------------------------


def _suite_dual_validation(ctx: _Ctx, trials: int) -> _Tally:
    tally = _Tally()
    for g, dual in ctx.groups:
        if ctx.fault == "perturb-irrep":
            dual = _perturbed_dual(dual)
        rep = validate_dual(g, dual, ctx.exact_tol())
        tally.residual_check(rep.max_residual, ctx.exact_tol(), f"{g.label} residuals")
        comp_ok = sum(p.dim**2 for p in dual.irreps) == g.order
        tally.residual_check(0.0 if comp_ok else 1.0, 0.5, f"{g.label} completeness")
    return tally


def _suite_plancherel(ctx: _Ctx, trials: int) -> _Tally:
    tally = _Tally()
    tol = ctx.exact_tol()
    for i in range(trials):
        g, dual = ctx.groups[i % len(ctx.groups)]
        if ctx.fault == "perturb-irrep":
            dual = _perturbed_dual(dual)
        rng = _instance_rng(ctx.cfg.seed, "plancherel", i)
        f = _random_function(g, rng)
        lhs, rhs = plancherel_check(f, dual)
        roundtrip = ft_inverse(ft_classical(f, dual))
        resid = max(abs(lhs - rhs), float(np.abs(roundtrip.values - f.values).max()))
        if i % 4 == 3:
            # weak-transform variant: the identity applies to f times the
            # scalarized density, for measures with bounded scalarizations
            space = ctx.spaces[(i // 4) % len(ctx.spaces)]
            nu = generate_fixture("random-gaussian", g, space, seed=ctx.cfg.seed + i)
            bound = g.order * float(np.max(nu.space.norm_many(nu.atoms)))
            assert is_k_scalarly_bounded(nu, bound + 1e-12)
            xp = _random_dual(space, rng)
            fh = ScalarFunction(g, f.values * radon_nikodym(nu, xp))
            wl, wr = plancherel_check(fh, dual)
            wrt = ft_inverse(ft_weak(f, nu, xp, dual))
            resid = max(resid, abs(wl - wr), float(np.abs(wrt.values - fh.values).max()))
        tally.residual_check(resid, tol, f"{g.label} trial {i}")
    return tally


def _suite_ft_norm_bounds(ctx: _Ctx, trials: int) -> _Tally:
    tally = _Tally()
    tol = ctx.cfg.tol_bracket
    for space in ctx.spaces:
        for i in range(trials):
            g, dual = ctx.groups[i % len(ctx.groups)]
            rng = _instance_rng(ctx.cfg.seed, f"ft-norm-bounds:{space.label}", i)
            nu = generate_fixture("random-gaussian", g, space, seed=int(rng.integers(2**32)))
            f = _random_function(g, rng)
            f_nu_1 = lp_nu_norm(f, nu, 1.0)
            lhs_f = ft_sup_norm(ft_vector(f, nu, dual))
            tally.compare(lhs_f, f_nu_1, tol, f"fn bound {g.label} {space.label} {i}")
            xp = _random_dual(space, rng)
            weak = ft_weak(f, nu, xp, dual)
            lhs_w = NormEstimate.of_exact(
                max(float(np.linalg.norm(b, 2)) for b in weak.blocks)
            )
            tally.compare(
                lhs_w, f_nu_1.scaled(dual_norm(xp)), tol,
                f"weak bound {g.label} {space.label} {i}",
            )
            lhs_m = ft_sup_norm(ft_measure(nu, dual))
            tally.compare(lhs_m, semivariation(nu), tol, f"measure bound {g.label} {i}")
    return tally


def _suite_cb_amplification(ctx: _Ctx, trials: int) -> _Tally:
    tally = _Tally()
    tol = ctx.cfg.tol_bracket
    levels = (1, 2, 3)
    for i in range(trials):
        g, dual = ctx.groups[i % len(ctx.groups)]
        space = ctx.spaces[(i // len(ctx.groups)) % len(ctx.spaces)]
        n = levels[i % len(levels)]
        rng = _instance_rng(ctx.cfg.seed, "cb-amplification", i)
        nu = generate_fixture("random-gaussian", g, space, seed=int(rng.integers(2**32)))
        if i % 2 == 0:
            fmat = MatrixFunction(
                g, n,
                rng.standard_normal((g.order, n, n)) + 1j * rng.standard_normal((g.order, n, n)),
            )
            hats = [
                [ft_vector(fmat.entry(a, b), nu, dual) for b in range(n)] for a in range(n)
            ]
            blocks_per_irrep = [
                mox_assemble([[hats[a][b].blocks[r] for b in range(n)] for a in range(n)])
                for r in range(len(dual.irreps))
            ]
            lhs = NormEstimate.max_of(amplified_norm(b) for b in blocks_per_irrep)
            rhs = _n_norm_matrix(fmat, nu)
            tally.compare(lhs, rhs, tol, f"cb fn {g.label} {space.label} n={n} {i}")
        else:
            nus = [
                [generate_fixture("random-gaussian", g, space, seed=int(rng.integers(2**32)))
                 for _ in range(n)]
                for _ in range(n)
            ]
            hats = [[ft_measure(nus[a][b], dual) for b in range(n)] for a in range(n)]
            blocks_per_irrep = [
                mox_assemble([[hats[a][b].blocks[r] for b in range(n)] for a in range(n)])
                for r in range(len(dual.irreps))
            ]
            lhs = NormEstimate.max_of(amplified_norm(b) for b in blocks_per_irrep)
            rhs = _amplified_measure_semivariation(g, space, nus, n)
            tally.compare(lhs, rhs, tol, f"cb meas {g.label} {space.label} n={n} {i}")
    return tally


def _n_norm_matrix(fmat: MatrixFunction, nu: VectorMeasure) -> NormEstimate:
    from .lpspaces import N_norm

    return N_norm(fmat, nu)


def _amplified_measure_semivariation(g, space, nus, n) -> NormEstimate:
    """Bracket for the semivariation of the matrix measure [nu_ab]: below by
    the matrix norm of its total mass, above by the sum of the matrix norms
    of its atoms."""
    atom_mats = []
    for t in range(g.order):
        entries = np.zeros((n, n, space.dim), dtype=complex)
        for a in range(n):
            for b in range(n):
                entries[a, b] = nus[a][b].atoms[t]
        atom_mats.append(MatrixOverX(space, entries))
    total = MatrixOverX(space, sum(m.entries for m in atom_mats))
    lower = amplified_norm(total).lower
    upper = sum(amplified_norm(m).upper for m in atom_mats)
    return NormEstimate.bracket(min(lower, upper), upper)


def _identity_fixture(ctx: _Ctx, suite: str, i: int):
    g, dual = ctx.groups[i % len(ctx.groups)]
    space = ctx.spaces[(i // len(ctx.groups)) % len(ctx.spaces)]
    rng = _instance_rng(ctx.cfg.seed, suite, i)
    nu = generate_fixture("random-gaussian", g, space, seed=int(rng.integers(2**32)))
    return g, dual, space, rng, nu


def _suite_pairing_compat(ctx: _Ctx, trials: int) -> _Tally:
    tally = _Tally()
    for i in range(trials):
        g, dual, space, rng, nu = _identity_fixture(ctx, "pairing-compat", i)
        f = _random_function(g, rng)
        xp = _random_dual(space, rng)
        vec = ft_vector(f, nu, dual)
        weak = ft_weak(f, nu, xp, dual)
        xpm = _xp_as_level1(xp)
        resid = max(
            float(np.abs(matrix_pair(vec.blocks[r], xpm) - weak.blocks[r]).max())
            for r in range(len(dual.irreps))
        )
        tally.residual_check(resid, ctx.exact_tol(), f"{g.label} {space.label} {i}")
    return tally


def _suite_density_transform(ctx: _Ctx, trials: int) -> _Tally:
    tally = _Tally()
    for i in range(trials):
        g, dual, space, rng, nu = _identity_fixture(ctx, "density-transform", i)
        f = _random_function(g, rng)
        lhs = ft_vector(f, nu, dual)
        rhs = ft_measure(measure_from_density(nu, f.values), dual)
        resid = lhs.max_abs_diff(rhs)
        xp = _random_dual(space, rng)
        weak = ft_weak(f, nu, xp, dual)
        xpm = _xp_as_level1(xp)
        resid = max(
            resid,
            max(
                float(np.abs(matrix_pair(rhs.blocks[r], xpm) - weak.blocks[r]).max())
                for r in range(len(dual.irreps))
            ),
        )
        tally.residual_check(resid, ctx.exact_tol(), f"{g.label} {space.label} {i}")
    return tally


def _suite_scalarization(ctx: _Ctx, trials: int) -> _Tally:
    tally = _Tally()
    for i in range(trials):
        g, dual, space, rng, nu = _identity_fixture(ctx, "scalarization", i)
        f, h = _random_function(g, rng), _random_function(g, rng)
        xp = _random_dual(space, rng)
        vec = conv_vector(f, h, nu)
        weak = conv_weak(f, h, nu, xp)
        paired = space.pair_many(vec.values, xp.coords[None, :])[0]
        resid = float(np.abs(paired - weak.values).max())
        tally.residual_check(resid, ctx.exact_tol(), f"{g.label} {space.label} {i}")
    return tally


def _ft_conv6_residual(f, g_fn, nu, xp, dual, *, dpi_power=1, def41_inv_dpi=True) -> float:
    lhs = ft_classical(conv_weak(f, g_fn, nu, xp), dual)
    ghat = _ft_vector_blocks(g_fn.values, nu, dual, inv_block_dim=def41_inv_dpi)
    fhat = ft_classical(f, dual)
    xpm = _xp_as_level1(xp)
    resid = 0.0
    for r, p in enumerate(dual.irreps):
        prod = mox_matmul(ghat[r], fhat.blocks[r])
        rhs = (p.dim**dpi_power) * matrix_pair(prod, xpm)
        resid = max(resid, float(np.abs(lhs.blocks[r] - rhs).max()))
    return resid


def _suite_ft_conv6(ctx: _Ctx, trials: int) -> _Tally:
    tally = _Tally()
    dpi_power = 0 if ctx.fault == "drop-dpi-conv6" else 1
    inv_dpi = ctx.fault != "drop-inv-dpi-def41"
    for i in range(trials):
        g, dual, space, rng, nu = _identity_fixture(ctx, "ft-conv-6", i)
        f, h = _random_function(g, rng), _random_function(g, rng)
        xp = _random_dual(space, rng)
        resid = _ft_conv6_residual(
            f, h, nu, xp, dual, dpi_power=dpi_power, def41_inv_dpi=inv_dpi
        )
        tally.residual_check(resid, ctx.exact_tol(), f"{g.label} {space.label} {i}")
    return tally


def _ft_conv8_residual(mu, nu, dual, *, dpi_power=1) -> float:
    lhs = ft_measure(conv_measure_sv(mu, nu), dual)
    nuhat = ft_measure(nu, dual)
    muhat = ft_measure(mu, dual)
    resid = 0.0
    for r, p in enumerate(dual.irreps):
        mu_block = muhat.blocks[r].entries[:, :, 0]
        rhs = mox_matmul(nuhat.blocks[r], (p.dim**dpi_power) * mu_block)
        resid = max(resid, float(np.abs(lhs.blocks[r].entries - rhs.entries).max()))
    return resid


def _suite_ft_conv8(ctx: _Ctx, trials: int) -> _Tally:
    tally = _Tally()
    dpi_power = 0 if ctx.fault == "drop-dpi-conv8" else 1
    for i in range(trials):
        g, dual, space, rng, nu = _identity_fixture(ctx, "ft-conv-8", i)
        mu = VectorMeasure.scalar(
            g, rng.standard_normal(g.order) + 1j * rng.standard_normal(g.order)
        )
        resid = _ft_conv8_residual(mu, nu, dual, dpi_power=dpi_power)
        tally.residual_check(resid, ctx.exact_tol(), f"{g.label} {space.label} {i}")
    return tally


def _suite_pettis_product(ctx: _Ctx, trials: int) -> _Tally:
    tally = _Tally()
    for i in range(trials):
        g, dual, space, rng, nu = _identity_fixture(ctx, "pettis-product", i)
        f, h = _random_function(g, rng), _random_function(g, rng)
        from .lpspaces import pettis_integral

        lhs = pettis_integral(conv_vector(f, h, nu))
        rhs = complex(np.mean(f.values)) * integrate(h.values, nu)
        resid = float(np.abs(lhs.coords - rhs.coords).max())
        tally.residual_check(resid, ctx.exact_tol(), f"{g.label} {space.label} {i}")
    return tally


def _suite_duality_66(ctx: _Ctx, trials: int) -> _Tally:
    tally = _Tally()
    for i in range(trials):
        g, dual, space, rng, nu = _identity_fixture(ctx, "duality-6.6", i)
        f, h = _random_function(g, rng), _random_function(g, rng)
        phi = _random_function(g, rng)
        xp = _random_dual(space, rng)
        weak = conv_weak(f, h, nu, xp)
        lhs = complex(np.mean(weak.values * phi.values))
        inner = conv_classical(reflect(f), phi)
        rhs = pair(integrate(inner.values * h.values, nu), xp)
        resid = abs(lhs - rhs)
        tally.residual_check(resid, ctx.exact_tol(), f"{g.label} {space.label} {i}")
    return tally


def _suite_uniqueness(ctx: _Ctx, trials: int) -> _Tally:
    tally = _Tally()
    for g, dual in ctx.groups:
        for space in ctx.spaces:
            rng = _instance_rng(ctx.cfg.seed, "uniqueness", g.order * 100 + space.dim)
            kdim = uniqueness_rank(dual, space)
            tally.residual_check(float(kdim), 0.5, f"measure kernel {g.label} {space.label}")
            nu = generate_fixture("random-gaussian", g, space, seed=int(rng.integers(2**32)))
            kdim = uniqueness_rank(dual, nu)
            tally.residual_check(float(kdim), 0.5, f"fn kernel {g.label} {space.label}")
            if g.order > 1:
                atoms = nu.atoms.copy()
                atoms[1] = 0.0
                nu0 = VectorMeasure(g, space, atoms)
                kdim = uniqueness_rank(dual, nu0)
                tally.residual_check(
                    float(kdim), 0.5, f"fn kernel null-atom {g.label} {space.label}"
                )
    return tally


# -- Young-type inequalities -------------------------------------------------


def _young_combos(thm: str) -> list[tuple]:
    grid = EXPONENT_GRID
    if thm in ("young-6.2", "young-6.4", "young-6.10"):
        return [(p,) for p in grid]
    if thm in ("young-6.5", "young-6.11"):
        return [(p, q) for p in grid for q in grid if q <= _conj(p) + 1e-12]
    if thm == "young-9.1":
        combos = [("i", p) for p in grid]
        combos += [
            ("ii", p, q)
            for p in grid
            if p > 1
            for q in grid
            if q < _conj(p) - 1e-12
        ]
        return combos
    if thm == "young-9.2":
        return [
            (p, q)
            for p in grid
            if p > 1
            for q in grid
            if q >= _conj(p) - 1e-12
        ]
    if thm == "young-9.3":
        combos = [("i", p) for p in grid]
        for p1 in grid:
            for p2 in grid:
                s = _inv(p1) + _inv(p2)
                if not 0 < s < 1:
                    continue
                for p3 in grid:
                    if s + _inv(p3) > 1:
                        combos.append(("ii", p1, p2, p3))
        return combos
    if thm == "young-9.4":
        return [(part, p) for part in ("i", "ii") for p in grid]
    raise ValueError(f"unknown young suite {thm!r}")


def _young_check(thm, combo, g, dual, space, nu, f, h, xp, tol, tally, note):
    nu_total = norm(evaluate(nu))
    if thm == "young-6.2":
        (p,) = combo
        lhs = NormEstimate.of_exact(lp_norm_haar(conv_weak(f, h, nu, xp), p))
        rhs = lp_nu_norm(h, nu, 1.0).scaled(lp_norm_haar(f, p) * dual_norm(xp))
        tally.compare(lhs, rhs, tol, note)
    elif thm == "young-6.4":
        (p,) = combo
        lhs = lp_nu_norm(conv_weak(f, h, nu, xp), nu, p)
        rhs = lp_nu_norm(f, nu, p).times(lp_nu_norm(h, nu, 1.0)).scaled(dual_norm(xp))
        tally.compare(lhs, rhs, tol, note)
    elif thm == "young-6.5":
        p, q = combo
        r = 1.0 / (_inv(p) + _inv(q) - 1.0) if _inv(p) + _inv(q) > 1.0 + 1e-12 else np.inf
        lhs = lp_nu_norm(conv_weak(f, h, nu, xp), nu, r)
        rhs = lp_nu_norm(f, nu, p).times(lp_nu_norm(h, nu, q)).scaled(dual_norm(xp))
        tally.compare(lhs, rhs, tol, note)
    elif thm == "young-6.10":
        (p,) = combo
        lhs = Pp_norm(conv_vector(f, h, nu), p)
        rhs = (
            lp_nu_norm(f, nu, p)
            .times(lp_nu_norm(h, nu, 1.0))
            .scaled(nu_total ** (-_inv(p)))
        )
        tally.compare(lhs, rhs, tol, note)
    elif thm == "young-6.11":
        p, q = combo
        r = 1.0 / (_inv(p) + _inv(q) - 1.0) if _inv(p) + _inv(q) > 1.0 + 1e-12 else np.inf
        lhs = Pp_norm(conv_vector(f, h, nu), r)
        rhs = (
            lp_nu_norm(f, nu, p)
            .times(lp_nu_norm(h, nu, q))
            .scaled(nu_total ** (-_inv(r)))
        )
        tally.compare(lhs, rhs, tol, note)
    elif thm == "young-9.1":
        if combo[0] == "i":
            p = combo[1]
            lhs = Pp_norm(conv_function_measure(f, nu), p)
            rhs = semivariation(nu).scaled(lp_norm_haar(f, p))
            tally.compare(lhs, rhs, tol, note)
        else:
            _, p, q = combo
            r = 1.0 / (_inv(p) + _inv(q) - 1.0)
            lhs = Pp_norm(conv_function_measure(f, nu), r)
            rhs = p_semivariation(nu, p).scaled(lp_norm_haar(f, q))
            tally.compare(lhs, rhs, tol, note)
    elif thm == "young-9.2":
        p, q = combo
        rinv = _inv(p) + _inv(q)
        nf = measure_from_density(nu, f.values)
        lhs = semivariation(nf) if abs(rinv - 1.0) < 1e-12 else p_semivariation(nf, 1.0 / rinv)
        rhs = p_semivariation(nu, p).scaled(lp_norm_haar(f, q))
        tally.compare(lhs, rhs, tol, note)
    elif thm == "young-9.3":
        if combo[0] == "i":
            p = combo[1]
            lhs = Pp_norm(conv_vector(f, h, nu), p)
            rhs = lp_nu_norm(h, nu, 1.0).scaled(lp_norm_haar(f, p))
            tally.compare(lhs, rhs, tol, note)
        else:
            _, p1, p2, p3 = combo
            r = 1.0 / (_inv(p1) + _inv(p2) + _inv(p3) - 1.0)
            lhs = Pp_norm(conv_vector(f, h, nu), r)
            rhs = p_semivariation(nu, p1).scaled(
                lp_norm_haar(h, p2) * lp_norm_haar(f, p3)
            )
            tally.compare(lhs, rhs, tol, note)
    elif thm == "young-9.4":
        part, p = combo
        fg = conv_classical(f, h)
        if part == "i":
            lhs = lp_nu_norm(fg, nu, p)
            rhs = (
                lp_nu_norm(f, nu, 1.0)
                .scaled(lp_norm_haar(h, p) * nu_total ** (-_inv(_conj(p))))
            )
        else:
            lhs = lp_nu_norm(fg, nu, p)
            rhs = lp_nu_norm(f, nu, p).scaled(lp_norm_haar(h, 1.0))
        tally.compare(lhs, rhs, tol, note)
    else:  # pragma: no cover
        raise ValueError(thm)


def _make_young_suite(thm: str):
    def run(ctx: _Ctx, trials: int) -> _Tally:
        tally = _Tally()
        combos = _young_combos(thm)
        fixtures = [(g, d, s) for (g, d) in ctx.groups for s in ctx.spaces]
        for i in range(trials):
            g, dual, space = fixtures[i % len(fixtures)]
            combo = combos[i % len(combos)]
            rng = _instance_rng(ctx.cfg.seed, thm, i)
            nu = generate_fixture(
                "translation-invariant", g, space, seed=int(rng.integers(2**32))
            )
            f = _random_function(g, rng)
            h = _random_function(g, rng)
            xp = _random_dual(space, rng)
            _young_check(
                thm, combo, g, dual, space, nu, f, h, xp, ctx.bracket_tol(), tally,
                f"{thm} {g.label} {space.label} {combo} {i}",
            )
        return tally

    return run


def _suite_embedding_413(ctx: _Ctx, trials: int) -> _Tally:
    tally = _Tally()
    ps = [p for p in EXPONENT_GRID if p > 1]
    for i in range(trials):
        g, dual, space, rng, nu = _identity_fixture(ctx, "embedding-4.13", i)
        f = _random_function(g, rng)
        p = ps[i % len(ps)]
        lhs = NormEstimate.of_exact(norm(integrate(f.values, nu)))
        rhs = p_semivariation(nu, p).scaled(lp_norm_haar(f, _conj(p)))
        tally.compare(lhs, rhs, ctx.bracket_tol(), f"{g.label} {space.label} p={p} {i}")
    return tally


def _suite_invariance(ctx: _Ctx, trials: int) -> _Tally:
    tally = _Tally()
    tol_e, tol_b = ctx.exact_tol(), ctx.bracket_tol()
    # part A: invariance of the measure-weighted norms under every translation
    for g, dual in ctx.groups:
        for space in ctx.spaces:
            nu = generate_fixture("haar-like", g, space)
            rng = _instance_rng(ctx.cfg.seed, "invariance-5", g.order + space.dim)
            maps = [GroupMap.translation(g, t) for t in range(g.order)]
            maps.append(GroupMap.inversion(g))
            phis = [_random_function(g, rng) for _ in range(3)]
            for hmap in maps:
                rep = check_semivariation_invariance(nu, hmap, trials=2, seed=ctx.cfg.seed)
                tally.residual_check(rep.max_discrepancy, tol_b, f"semivar {g.label}")
                nu_h = pushforward(nu, hmap)
                for phi in phis:
                    for p in (1.0, 2.0, 3.0):
                        a = lp_nu_norm(phi, nu, p)
                        b = lp_nu_norm(phi, nu_h, p)
                        c = lp_nu_norm(function_pushforward(phi, hmap), nu, p)
                        if space.exact_dual_sup:
                            resid = max(abs(a.lower - b.lower), abs(a.lower - c.lower))
                            tally.residual_check(resid, tol_e, f"norms {g.label} {space.label}")
                        else:
                            gap = max(
                                max(0.0, a.lower - b.upper, b.lower - a.upper),
                                max(0.0, a.lower - c.upper, c.lower - a.upper),
                            )
                            tally.residual_check(gap, tol_b, f"norms {g.label} {space.label}")
    # part B: containment of the measure-weighted space in the Haar space
    fixtures = [(g, s) for (g, _) in ctx.groups for s in ctx.spaces]
    for i in range(trials):
        g, space = fixtures[i % len(fixtures)]
        rng = _instance_rng(ctx.cfg.seed, "invariance-5:B", i)
        nu = generate_fixture("translation-invariant", g, space, seed=int(rng.integers(2**32)))
        f = _random_function(g, rng)
        p = (1.0, 2.0)[i % 2]
        lhs = NormEstimate.of_exact(lp_norm_haar(f, p))
        scale = norm(evaluate(nu)) ** (-1.0 / p)
        rhs = lp_nu_norm(f, nu, p).scaled(scale)
        tally.compare(lhs, rhs, tol_b, f"L^p embed {g.label} {space.label} {i}")
    return tally


def _suite_commutativity(ctx: _Ctx, trials: int) -> _Tally:
    tally = _Tally()
    witness_notes = []
    notes = []
    for g, dual in ctx.groups:
        space = ctx.spaces[0]
        if not g.is_abelian:
            found = None
            for t in range(g.order):
                for s in range(g.order):
                    if g.mul(t, s) != g.mul(s, t):
                        found = (t, s)
                        break
                if found:
                    break
            t, s = found
            mu_atoms = np.zeros(g.order, dtype=complex)
            mu_atoms[t] = 1.0
            mu = VectorMeasure.scalar(g, mu_atoms)
            atoms = np.zeros((g.order, space.dim), dtype=complex)
            atoms[s] = np.ones(space.dim)
            nu = VectorMeasure(g, space, atoms)
            gap = float(
                np.abs(conv_measure_sv(mu, nu).atoms - conv_measure_vs(nu, mu).atoms).max()
            )
            tally.residual_check(0.0 if gap >= 0.5 else 1.0, 0.5, f"witness {g.label}")
            witness_notes.append(f"{g.label}: witness t={t} s={s} gap={gap:.3g}")
        else:
            worst = 0.0
            for i in range(trials):
                rng = _instance_rng(ctx.cfg.seed, f"commutativity:{g.label}", i)
                mu = VectorMeasure.scalar(
                    g, rng.standard_normal(g.order) + 1j * rng.standard_normal(g.order)
                )
                nu = generate_fixture(
                    "random-gaussian", g, ctx.spaces[i % len(ctx.spaces)],
                    seed=int(rng.integers(2**32)),
                )
                diff = float(
                    np.abs(conv_measure_sv(mu, nu).atoms - conv_measure_vs(nu, mu).atoms).max()
                )
                worst = max(worst, diff)
                tally.residual_check(diff, 1e-12, f"abelian commute {g.label} {i}")
            notes.append(f"{g.label}: abelian, max deviation {worst:.3g}")
    tally.notes = witness_notes + notes
    return tally


def _suite_calibration(ctx: _Ctx, trials: int) -> _Tally:
    tally = _Tally()
    tol = ctx.bracket_tol()
    for i in range(trials):
        space = ctx.spaces[i % len(ctx.spaces)]
        if space.dim > 4 or (isinstance(space, MatOpSpace) and space.d > 2):
            tally.skip()
            continue
        rng = _instance_rng(ctx.cfg.seed, "calibration", i)
        m = int(rng.integers(1, 5))
        atoms = [
            (
                float(rng.uniform(0.1, 2.0)),
                XVector(space, rng.standard_normal(space.dim) + 1j * rng.standard_normal(space.dim)),
            )
            for _ in range(m)
        ]
        est = dual_ball_sup(space, atoms)
        bf = grid_dual_sup(space, atoms)
        resid = max(0.0, bf - est.upper, est.lower - 1.02 * bf)
        if space.exact_dual_sup:
            resid = max(resid, abs(est.lower - bf) - 0.02 * max(est.lower, 1e-30))
        tally.residual_check(resid, tol, f"{space.label} m={m} {i}")
    return tally


# ---------------------------------------------------------------------------
# registry and runner
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class _SuiteSpec:
    anchor: str
    default_trials: int
    runner: object


_SUITES: dict[str, _SuiteSpec] = {
    "dual-validation": _SuiteSpec("duals", 1, _suite_dual_validation),
    "plancherel": _SuiteSpec("2.1", 1000, _suite_plancherel),
    "ft-norm-bounds": _SuiteSpec("4.4i/4.8i/7", 1000, _suite_ft_norm_bounds),
    "cb-amplification": _SuiteSpec("4.4ii/3.6iii", 200, _suite_cb_amplification),
    "pairing-compat": _SuiteSpec("4.9", 200, _suite_pairing_compat),
    "density-transform": _SuiteSpec("7.3", 200, _suite_density_transform),
    "scalarization": _SuiteSpec("6.8", 200, _suite_scalarization),
    "ft-conv-6": _SuiteSpec("6-ft-conv", 200, _suite_ft_conv6),
    "ft-conv-8": _SuiteSpec("8-ft-conv", 200, _suite_ft_conv8),
    "pettis-product": _SuiteSpec("6.9", 200, _suite_pettis_product),
    "duality-6.6": _SuiteSpec("6.6", 200, _suite_duality_66),
    "uniqueness": _SuiteSpec("4.10/7.5", 1, _suite_uniqueness),
    "young-6.2": _SuiteSpec("6.2", 1000, _make_young_suite("young-6.2")),
    "young-6.4": _SuiteSpec("6.4", 1000, _make_young_suite("young-6.4")),
    "young-6.5": _SuiteSpec("6.5", 1000, _make_young_suite("young-6.5")),
    "young-6.10": _SuiteSpec("6.10", 1000, _make_young_suite("young-6.10")),
    "young-6.11": _SuiteSpec("6.11", 1000, _make_young_suite("young-6.11")),
    "young-9.1": _SuiteSpec("9.1", 1000, _make_young_suite("young-9.1")),
    "young-9.2": _SuiteSpec("9.2", 1000, _make_young_suite("young-9.2")),
    "young-9.3": _SuiteSpec("9.3", 1000, _make_young_suite("young-9.3")),
    "young-9.4": _SuiteSpec("9.4", 1000, _make_young_suite("young-9.4")),
    "embedding-4.13": _SuiteSpec("4.13", 200, _suite_embedding_413),
    "invariance-5": _SuiteSpec("5.2/5.4/5.5", 500, _suite_invariance),
    "commutativity-8.5": _SuiteSpec("8.5", 200, _suite_commutativity),
    "calibration": _SuiteSpec("estimators", 200, _suite_calibration),
}


def suite_names() -> list[str]:
    return list(_SUITES)


def _build_ctx(cfg: RunConfig, fault: str | None) -> _Ctx:
    if fault is not None and fault not in FAULTS:
        raise ValueError(f"unknown fault {fault!r}")
    groups = []
    for spec in cfg.groups:
        g = build_group(spec)
        groups.append((g, unitary_dual(g)))
    spaces = [space_from_spec(s) for s in cfg.spaces]
    return _Ctx(cfg, groups, spaces, fault)


def run_suite(name: str, cfg: RunConfig, *, fault: str | None = None) -> TheoremReport:
    """Run one suite; deterministic given (cfg, seed).  ``fault`` switches in a
    deliberately wrong constant (test instrumentation for sensitivity checks)."""
    if name not in _SUITES:
        raise ValueError(f"unknown suite {name!r}; known: {', '.join(_SUITES)}")
    spec = _SUITES[name]
    ctx = _build_ctx(cfg, fault)
    trials = cfg.trials if cfg.trials is not None else spec.default_trials
    start = time.perf_counter()
    tally = spec.runner(ctx, trials)
    elapsed = time.perf_counter() - start
    detail = "; ".join(tally.notes[:4])
    return TheoremReport(
        suite=name,
        anchor=spec.anchor,
        instances=tally.instances,
        violations=tally.violations,
        near_misses=tally.near_misses,
        skipped=tally.skipped,
        max_residual=tally.max_residual,
        elapsed_s=elapsed,
        detail=detail,
    )


def run_battery(cfg: RunConfig, *, fault: str | None = None) -> list[TheoremReport]:
    return [run_suite(name, cfg, fault=fault) for name in cfg.suites]


# ---------------------------------------------------------------------------
# reporting and configuration files
# ---------------------------------------------------------------------------


def emit_report(
    reports: list[TheoremReport],
    fmt: str = "json",
    path: str | Path | None = None,
    *,
    seed: int | None = None,
) -> str:
    """Render reports with stable field ordering; optionally write to a file."""
    total = sum(r.violations for r in reports)
    if fmt == "json":
        doc = {
            "schema": SCHEMA,
            "seed": seed,
            "violations": total,
            "suites": [r.to_dict() for r in reports],
        }
        text = json.dumps(doc, indent=2) + "\n"
    elif fmt == "markdown":
        lines = [
            "# Verification report",
            "",
            f"Total certified violations: {total}",
            "",
            "| suite | anchor | instances | violations | near misses | skipped | max residual | elapsed (s) |",
            "|---|---|---|---|---|---|---|---|",
        ]
        for r in reports:
            lines.append(
                f"| {r.suite} | {r.anchor} | {r.instances} | {r.violations} "
                f"| {r.near_misses} | {r.skipped} | {r.max_residual:.3g} | {r.elapsed_s:.2f} |"
            )
        text = "\n".join(lines) + "\n"
    else:
        raise ValueError(f"unknown report format {fmt!r}")
    if path is not None:
        Path(path).write_text(text)
    return text


def default_config() -> RunConfig:
    return RunConfig()


_LIST_KEYS = {"groups", "spaces", "suites"}
_INT_KEYS = {"trials", "seed"}
_FLOAT_KEYS = {"tol_exact", "tol_bracket"}


def load_config(path: str | Path) -> RunConfig:
    """Parse a key-value config file: ``key = value`` lines, ``#`` comments,
    comma-separated lists for groups/spaces/suites."""
    cfg = default_config()
    for lineno, raw in enumerate(Path(path).read_text().splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValueError(f"{path}:{lineno}: expected 'key = value'")
        key, _, value = line.partition("=")
        key, value = key.strip(), value.strip()
        if key in _LIST_KEYS:
            setattr(cfg, key, [v.strip() for v in value.split(",") if v.strip()])
        elif key in _INT_KEYS:
            setattr(cfg, key, int(value))
        elif key in _FLOAT_KEYS:
            setattr(cfg, key, float(value))
        elif key == "out_dir":
            cfg.out_dir = Path(value)
        else:
            raise ValueError(f"{path}:{lineno}: unknown key {key!r}")
    for s in cfg.suites:
        if s not in _SUITES:
            raise ValueError(f"unknown suite {s!r} in config")
    cfg.__post_init__()
    return cfg
