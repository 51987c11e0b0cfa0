"""Fourier transforms on finite groups: the classical transform of scalar
functions, the transform of functions against a vector measure, the weak
(functional-by-functional) transform, and the transform of vector measures.

All transforms use the block normalization with a 1/d factor per irrep block;
the inversion and energy identities carry the compensating d^2 and d^3
constants.  On a trivial one-dimensional block the constants all reduce to
the familiar abelian formulas.

Blocks are basis-dependent: every identity here compares both sides through
one fixed dual object, which pins the orthonormal basis per irrep.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .groups import UnitaryDual, format_complex
from .lpspaces import ScalarFunction
from .measures import VectorMeasure, radon_nikodym, tensor_integrate
from .spaces import (
    CoefficientSpace,
    MatrixOverX,
    NormEstimate,
    XVector,
    amplified_norm,
)

__all__ = [
    "FourierCoefficients",
    "VectorFourierCoefficients",
    "ft_classical",
    "ft_inverse",
    "plancherel_check",
    "ft_vector",
    "ft_measure",
    "ft_weak",
    "ft_sup_norm",
    "uniqueness_rank",
    "dump_coefficients",
]


@dataclass(eq=False)
class FourierCoefficients:
    """Complex coefficient blocks, one d x d matrix per irrep of the dual."""

    dual: UnitaryDual
    blocks: list[np.ndarray]

    def __post_init__(self):
        if len(self.blocks) != len(self.dual.irreps):
            raise ValueError("one block per irrep required")
        fixed = []
        for p, b in zip(self.dual.irreps, self.blocks):
            b = np.asarray(b, dtype=complex)
            if b.shape != (p.dim, p.dim):
                raise ValueError(f"block for {p.label!r} must be {p.dim} x {p.dim}")
            fixed.append(b)
        self.blocks = fixed

    def block(self, r: int) -> np.ndarray:
        return self.blocks[r]

    def max_abs_diff(self, other: "FourierCoefficients") -> float:
        return max(
            float(np.abs(a - b).max()) for a, b in zip(self.blocks, other.blocks)
        )


@dataclass(eq=False)
class VectorFourierCoefficients:
    """Coefficient blocks valued in a coefficient space: per irrep a d-level
    matrix over X."""

    dual: UnitaryDual
    space: CoefficientSpace
    blocks: list[MatrixOverX]

    def __post_init__(self):
        if len(self.blocks) != len(self.dual.irreps):
            raise ValueError("one block per irrep required")
        for p, b in zip(self.dual.irreps, self.blocks):
            if b.level != p.dim or b.space != self.space:
                raise ValueError(f"block for {p.label!r} has wrong level or space")

    def block(self, r: int) -> MatrixOverX:
        return self.blocks[r]

    def max_abs_diff(self, other: "VectorFourierCoefficients") -> float:
        return max(
            float(np.abs(a.entries - b.entries).max())
            for a, b in zip(self.blocks, other.blocks)
        )


def _check_same_group(dual: UnitaryDual, group):
    if dual.group is not group and not np.array_equal(dual.group.cayley, group.cayley):
        raise ValueError("dual and argument live on different groups")


def ft_classical(f: ScalarFunction, dual: UnitaryDual) -> FourierCoefficients:
    """Block at an irrep: the Haar average of f(t) pi(t)^*, scaled by 1/d."""
    _check_same_group(dual, f.group)
    n = f.group.order
    blocks = []
    for p in dual.irreps:
        adj = p.matrices.conj().transpose(0, 2, 1)
        blocks.append(np.einsum("t,tab->ab", f.values, adj) / (p.dim * n))
    return FourierCoefficients(dual, blocks)


def ft_inverse(c: FourierCoefficients) -> ScalarFunction:
    """Pointwise reconstruction f(t) = sum over irreps of d^2 tr(block pi(t));
    exact on a finite group."""
    g = c.dual.group
    values = np.zeros(g.order, dtype=complex)
    for p, b in zip(c.dual.irreps, c.blocks):
        values += p.dim**2 * np.einsum("ab,tba->t", b, p.matrices)
    return ScalarFunction(g, values)


def plancherel_check(f: ScalarFunction, dual: UnitaryDual) -> tuple[float, float]:
    """Both sides of the energy identity: ||f||_2^2 against the weighted block
    traces sum_pi d^3 tr(block^* block)."""
    c = ft_classical(f, dual)
    lhs = float(np.mean(np.abs(f.values) ** 2))
    rhs = 0.0
    for p, b in zip(dual.irreps, c.blocks):
        rhs += p.dim**3 * float(np.real(np.trace(b.conj().T @ b)))
    return lhs, rhs


def _ft_vector_blocks(
    f_values: np.ndarray,
    nu: VectorMeasure,
    dual: UnitaryDual,
    inv_block_dim: bool = True,
) -> list[MatrixOverX]:
    blocks = []
    for p in dual.irreps:
        adj = p.matrices.conj().transpose(0, 2, 1)
        scale = 1.0 / p.dim if inv_block_dim else 1.0
        blocks.append(tensor_integrate(scale * f_values[:, None, None] * adj, nu))
    return blocks


def ft_vector(
    f: ScalarFunction, nu: VectorMeasure, dual: UnitaryDual
) -> VectorFourierCoefficients:
    """Transform of f against a vector measure: block entries are the X-valued
    integrals (1/d) integral of f(t) conj(pi(t)_{ji}) d nu at entry (i, j)."""
    _check_same_group(dual, f.group)
    _check_same_group(dual, nu.group)
    return VectorFourierCoefficients(
        dual, nu.space, _ft_vector_blocks(f.values, nu, dual)
    )


def ft_measure(nu: VectorMeasure, dual: UnitaryDual) -> VectorFourierCoefficients:
    """Transform of a vector measure: the function transform of 1 against nu."""
    _check_same_group(dual, nu.group)
    ones = np.ones(nu.group.order, dtype=complex)
    return VectorFourierCoefficients(dual, nu.space, _ft_vector_blocks(ones, nu, dual))


def ft_weak(
    f: ScalarFunction, nu: VectorMeasure, xp: XVector, dual: UnitaryDual
) -> FourierCoefficients:
    """Weak transform at a dual functional: the classical transform of f times
    the density of the scalarized measure."""
    h = radon_nikodym(nu, xp)
    return ft_classical(ScalarFunction(f.group, f.values * h), dual)


def ft_sup_norm(c: VectorFourierCoefficients, *, seed: int = 0) -> NormEstimate:
    """Sup over irreps of the matrix-level norms of the blocks, as a bracket."""
    return NormEstimate.max_of(
        amplified_norm(b, seed=seed) for b in c.blocks
    )


def _coefficient_rows(dual: UnitaryDual) -> np.ndarray:
    """Stack of the linear functionals f -> block entries: row ((pi, i, j), t)
    holds (1/d) conj(pi(t)_{ji})."""
    cols = []
    for p in dual.irreps:
        adj = p.matrices.conj().transpose(0, 2, 1) / p.dim  # [t, i, j] = conj(pi_ji)/d
        cols.append(adj.reshape(dual.group.order, p.dim * p.dim))
    return np.concatenate(cols, axis=1).T  # [sum d^2, order]


def uniqueness_rank(
    dual: UnitaryDual,
    target: VectorMeasure | CoefficientSpace,
    tol: float = 1e-8,
) -> int:
    """Kernel dimension of the linear transform map at this instance.

    With a ``VectorMeasure`` target: the map f -> transform of f against nu,
    with the domain restricted to functions supported on atoms where the
    measure is nonzero.  With a ``CoefficientSpace`` target: the map from
    measures over that space to their transforms.  Zero means the transform
    determines its argument.  Rank is counted at ``tol`` relative to the
    largest singular value.
    """
    rows = _coefficient_rows(dual)  # [B, order]
    if isinstance(target, VectorMeasure):
        _check_same_group(dual, target.group)
        live = target.space.norm_many(target.atoms) > 0
        if not live.any():
            return 0
        # column for f(t): rows scaled by each coordinate of the atom at t
        mat = np.einsum("bt,tc->bct", rows[:, live], target.atoms[live])
        mat = mat.reshape(-1, int(live.sum()))
    else:
        dim = target.dim
        mat = np.kron(rows, np.eye(dim))
    s = np.linalg.svd(mat, compute_uv=False)
    if s.size == 0 or s[0] == 0.0:
        return mat.shape[1]
    rank = int((s > tol * s[0]).sum())
    return mat.shape[1] - rank


def dump_coefficients(c: FourierCoefficients | VectorFourierCoefficients) -> str:
    """Text dump: per irrep its label and matrix level, then row-major entries
    (complex literals, or per-entry coordinate lists for vector blocks)."""
    lines = []
    for p, b in zip(c.dual.irreps, c.blocks):
        lines.append(f"irrep {p.label} level {p.dim}")
        if isinstance(b, MatrixOverX):
            for i in range(b.level):
                for j in range(b.level):
                    coords = " ".join(format_complex(z) for z in b.entries[i, j])
                    lines.append(f"{i} {j} {coords}")
        else:
            for i in range(b.shape[0]):
                lines.append(" ".join(format_complex(z) for z in b[i]))
    return "\n".join(lines) + "\n"
