"""Finite groups, their unitary duals, and matrix coefficients.

Groups are Cayley tables over dense element indices 0..order-1; the table is
the single source of truth and is validated exhaustively at construction
(supported orders are <= 24).  Irreducible representation tables are curated
constants per built-in family rather than outputs of a general character-table
algorithm; their correctness is enforced by ``validate_dual``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence

import numpy as np

MAX_ORDER = 24

__all__ = [
    "FiniteGroup",
    "UnitaryIrrep",
    "UnitaryDual",
    "DualValidationReport",
    "build_group",
    "unitary_dual",
    "validate_dual",
    "matrix_coefficient",
    "builtin_group_specs",
    "load_group_file",
    "dump_group_file",
    "load_dual_file",
    "dump_dual_file",
    "parse_complex",
    "format_complex",
]


@dataclass(eq=False)
class FiniteGroup:
    """A finite group presented by its Cayley table.

    ``cayley[s, t]`` is the index of the product s*t.  The identity sits at
    a known index and ``inverses`` tabulates t -> t^-1.
    """

    order: int
    cayley: np.ndarray
    identity: int
    inverses: np.ndarray
    label: str
    family: tuple = field(default=None, repr=False)

    def __post_init__(self):
        self.cayley = np.asarray(self.cayley, dtype=np.int64)
        self.inverses = np.asarray(self.inverses, dtype=np.int64)
        _check_group_axioms(self)
        self.cayley.setflags(write=False)
        self.inverses.setflags(write=False)

    def mul(self, s: int, t: int) -> int:
        return int(self.cayley[s, t])

    def inv(self, t: int) -> int:
        return int(self.inverses[t])

    def elements(self) -> range:
        return range(self.order)

    @property
    def is_abelian(self) -> bool:
        return bool((self.cayley == self.cayley.T).all())

    def right_quotient_table(self) -> np.ndarray:
        """Index table Q[t, s] = t * s^-1, shared by all convolutions."""
        return self.cayley[:, self.inverses]

    def __repr__(self):
        return f"FiniteGroup({self.label}, order={self.order})"


def _check_group_axioms(g: FiniteGroup):
    n = g.order
    c = g.cayley
    if c.shape != (n, n):
        raise ValueError("cayley table shape does not match order")
    if n > MAX_ORDER:
        raise ValueError(f"order {n} exceeds the exhaustively-validated maximum {MAX_ORDER}")
    rng = np.arange(n)
    if not (np.sort(c, axis=1) == rng[None, :]).all():
        raise ValueError("cayley table is not a Latin square (rows repeat)")
    if not (np.sort(c, axis=0) == rng[:, None]).all():
        raise ValueError("cayley table is not a Latin square (columns repeat)")
    e = g.identity
    if not ((c[e] == rng).all() and (c[:, e] == rng).all()):
        raise ValueError("identity index does not act as identity")
    if not (c[rng, g.inverses] == e).all() or not (c[g.inverses, rng] == e).all():
        raise ValueError("inverse table is wrong")
    if not (c[c, :] == c[:, c]).all():
        raise ValueError("multiplication is not associative")


def _group_from_cayley(cayley: np.ndarray, label: str, family=None) -> FiniteGroup:
    cayley = np.asarray(cayley, dtype=np.int64)
    n = cayley.shape[0]
    rng = np.arange(n)
    ident = None
    for e in range(n):
        if (cayley[e] == rng).all() and (cayley[:, e] == rng).all():
            ident = e
            break
    if ident is None:
        raise ValueError("table has no identity element")
    inv = np.argmax(cayley == ident, axis=1)
    return FiniteGroup(n, cayley, ident, inv, label, family)


# ---------------------------------------------------------------------------
# built-in families
# ---------------------------------------------------------------------------


def _cyclic_product(ns: tuple[int, ...]) -> FiniteGroup:
    order = int(np.prod(ns))
    radix = np.array(ns, dtype=np.int64)
    # mixed-radix digits of every element index, most significant first
    digits = np.zeros((order, len(ns)), dtype=np.int64)
    idx = np.arange(order)
    for j in range(len(ns) - 1, -1, -1):
        digits[:, j] = idx % radix[j]
        idx //= radix[j]
    summed = (digits[:, None, :] + digits[None, :, :]) % radix
    cayley = np.zeros((order, order), dtype=np.int64)
    for j in range(len(ns)):
        cayley = cayley * radix[j] + summed[:, :, j]
    label = "Z" + "xZ".join(str(n) for n in ns)
    return _group_from_cayley(cayley, label, ("cyclic", ns))


def _dihedral(n: int) -> FiniteGroup:
    # elements: r^k at index k, s r^k at index n + k
    order = 2 * n
    cayley = np.zeros((order, order), dtype=np.int64)
    for a in range(n):
        for b in range(n):
            cayley[a, b] = (a + b) % n
            cayley[a, n + b] = n + (b - a) % n
            cayley[n + a, b] = n + (a + b) % n
            cayley[n + a, n + b] = (b - a) % n
    return _group_from_cayley(cayley, f"D{n}", ("dihedral", n))


def _symmetric(n: int) -> FiniteGroup:
    perms = list(itertools.permutations(range(n)))
    index = {p: i for i, p in enumerate(perms)}
    order = len(perms)
    cayley = np.zeros((order, order), dtype=np.int64)
    for i, p in enumerate(perms):
        for j, q in enumerate(perms):
            cayley[i, j] = index[tuple(p[q[x]] for x in range(n))]
    return _group_from_cayley(cayley, f"S{n}", ("symmetric", n))


_QUAT_LABELS = ["1", "-1", "i", "-i", "j", "-j", "k", "-k"]


def _quaternion_matrices() -> np.ndarray:
    i2 = np.eye(2, dtype=complex)
    qi = np.array([[1j, 0], [0, -1j]])
    qj = np.array([[0, 1], [-1, 0]], dtype=complex)
    qk = qi @ qj
    base = [i2, -i2, qi, -qi, qj, -qj, qk, -qk]
    return np.stack(base)


def _quaternion() -> FiniteGroup:
    mats = _quaternion_matrices()
    order = 8
    cayley = np.zeros((order, order), dtype=np.int64)
    for a in range(order):
        for b in range(order):
            prod = mats[a] @ mats[b]
            hits = [c for c in range(order) if np.allclose(prod, mats[c])]
            cayley[a, b] = hits[0]
    return _group_from_cayley(cayley, "Q8", ("quaternion", 8))


def build_group(spec: str) -> FiniteGroup:
    """Build a group from a descriptor.

    Supported descriptors: ``cyclic:N``, ``cyclic:N1xN2x...`` (direct product),
    ``dihedral:N`` (order 2N), ``symmetric:N`` with N <= 4, ``quaternion8``.
    The resulting order must not exceed 24.
    """
    s = spec.strip().lower()
    if s == "quaternion8":
        return _quaternion()
    name, _, arg = s.partition(":")
    if name == "cyclic" and arg:
        try:
            ns = tuple(int(part) for part in arg.split("x"))
        except ValueError as exc:
            raise ValueError(f"bad cyclic orders in {spec!r}") from exc
        if any(n < 1 for n in ns):
            raise ValueError("cyclic orders must be positive")
        return _cyclic_product(ns)
    if name == "dihedral" and arg:
        n = int(arg)
        if n < 2:
            raise ValueError("dihedral parameter must be >= 2")
        return _dihedral(n)
    if name == "symmetric" and arg:
        n = int(arg)
        if not 1 <= n <= 4:
            raise ValueError("symmetric groups are supported for n <= 4 only")
        return _symmetric(n)
    raise ValueError(f"unsupported group spec {spec!r}")


def builtin_group_specs() -> list[str]:
    """Descriptors of the eight stock groups used by the harness."""
    return [
        "cyclic:2",
        "cyclic:3",
        "cyclic:4",
        "cyclic:2x2",
        "dihedral:4",
        "symmetric:3",
        "symmetric:4",
        "quaternion8",
    ]


# ---------------------------------------------------------------------------
# unitary duals
# ---------------------------------------------------------------------------


@dataclass(eq=False)
class UnitaryIrrep:
    """One irreducible unitary representation, tabulated per group element."""

    dim: int
    matrices: np.ndarray  # [order, dim, dim]
    label: str

    def __post_init__(self):
        m = np.asarray(self.matrices, dtype=complex)
        if m.ndim != 3 or m.shape[1] != self.dim or m.shape[2] != self.dim:
            raise ValueError("irrep matrices must have shape [order, dim, dim]")
        self.matrices = m
        self.matrices.setflags(write=False)

    def characters(self) -> np.ndarray:
        return np.trace(self.matrices, axis1=1, axis2=2)


@dataclass(eq=False)
class UnitaryDual:
    """A complete list of pairwise-inequivalent unitary irreps of one group."""

    group: FiniteGroup
    irreps: list[UnitaryIrrep]

    def __iter__(self):
        return iter(self.irreps)

    def dims(self) -> list[int]:
        return [p.dim for p in self.irreps]


def _char_irreps(values: np.ndarray, labels: Sequence[str]) -> list[UnitaryIrrep]:
    return [
        UnitaryIrrep(1, values[r][:, None, None], labels[r]) for r in range(values.shape[0])
    ]


def _cyclic_dual(g: FiniteGroup) -> list[UnitaryIrrep]:
    ns = g.family[1]
    order = g.order
    digits = np.zeros((order, len(ns)), dtype=np.int64)
    idx = np.arange(order)
    for j in range(len(ns) - 1, -1, -1):
        digits[:, j] = idx % ns[j]
        idx //= ns[j]
    chars = []
    labels = []
    for kidx in range(order):
        k = digits[kidx]
        phase = np.exp(2j * np.pi * (digits @ (k / np.array(ns, dtype=float))))
        chars.append(phase)
        labels.append("chi" + "".join(str(v) for v in k))
    return _char_irreps(np.asarray(chars), labels)


def _dihedral_dual(g: FiniteGroup) -> list[UnitaryIrrep]:
    n = g.family[1]
    order = 2 * n
    k = np.arange(n)
    irreps = []
    alphas = [1, -1] if n % 2 == 0 else [1]
    for alpha in alphas:
        for beta in (1, -1):
            vals = np.empty(order, dtype=complex)
            vals[:n] = float(alpha) ** k
            vals[n:] = beta * vals[:n]
            irreps.append(
                UnitaryIrrep(1, vals[:, None, None], f"chi_a{alpha:+d}_b{beta:+d}")
            )
    omega = np.exp(2j * np.pi / n)
    for h in range(1, (n + 1) // 2):
        mats = np.zeros((order, 2, 2), dtype=complex)
        mats[:n, 0, 0] = omega ** (h * k)
        mats[:n, 1, 1] = omega ** (-h * k)
        mats[n:, 0, 1] = omega ** (-h * k)
        mats[n:, 1, 0] = omega ** (h * k)
        irreps.append(UnitaryIrrep(2, mats, f"rho{h}"))
    return irreps


def _helmert_basis(n: int) -> np.ndarray:
    """Orthonormal columns spanning the sum-zero subspace of R^n."""
    b = np.zeros((n, n - 1))
    for k in range(1, n):
        b[:k, k - 1] = 1.0
        b[k, k - 1] = -float(k)
        b[:, k - 1] /= np.sqrt(k * (k + 1))
    return b


def _perm_matrices(perms: list[tuple[int, ...]]) -> np.ndarray:
    n = len(perms[0])
    mats = np.zeros((len(perms), n, n))
    for i, p in enumerate(perms):
        mats[i, list(p), range(n)] = 1.0
    return mats


def _standard_rep(perms: list[tuple[int, ...]]) -> np.ndarray:
    n = len(perms[0])
    b = _helmert_basis(n)
    pm = _perm_matrices(perms)
    return np.einsum("ia,tij,jb->tab", b, pm, b).astype(complex)


def _parity(p: tuple[int, ...]) -> int:
    seen = [False] * len(p)
    sign = 1
    for start in range(len(p)):
        if seen[start]:
            continue
        length = 0
        x = start
        while not seen[x]:
            seen[x] = True
            x = p[x]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def _symmetric_dual(g: FiniteGroup) -> list[UnitaryIrrep]:
    n = g.family[1]
    perms = list(itertools.permutations(range(n)))
    signs = np.array([_parity(p) for p in perms], dtype=complex)
    triv = np.ones(len(perms), dtype=complex)
    irreps = [UnitaryIrrep(1, triv[:, None, None], "trivial")]
    if n >= 2:
        irreps.append(UnitaryIrrep(1, signs[:, None, None], "sign"))
    if n >= 3:
        std = _standard_rep(perms)
        if n == 4:
            # two-dimensional irrep pulled back along the pairing-partition
            # action S4 -> S3 (kernel: the double transpositions)
            perms3 = list(itertools.permutations(range(3)))
            idx3 = {p: i for i, p in enumerate(perms3)}
            std3 = _standard_rep(perms3)
            mats = np.zeros((len(perms), 2, 2), dtype=complex)
            for t, p in enumerate(perms):
                image = []
                for m in range(3):
                    a, bb = p[0], p[m + 1]
                    partner = bb if a == 0 else (a if bb == 0 else None)
                    if partner is None:
                        # 0 lies in the complementary pair of {p(0), p(m+1)}
                        rest = [x for x in range(4) if x not in (a, bb, 0)]
                        partner = rest[0]
                    image.append(partner - 1)
                mats[t] = std3[idx3[tuple(image)]]
            irreps.append(UnitaryIrrep(2, mats, "two_dim"))
        irreps.append(UnitaryIrrep(n - 1, std, "standard"))
        if n == 4:
            irreps.append(
                UnitaryIrrep(n - 1, signs[:, None, None] * std, "sign_x_standard")
            )
    return irreps


def _quaternion_dual(g: FiniteGroup) -> list[UnitaryIrrep]:
    # one-dim characters factor through the quotient by {1, -1}
    chars = []
    labels = []
    for si in (1, -1):
        for sj in (1, -1):
            vals = np.array([1, 1, si, si, sj, sj, si * sj, si * sj], dtype=complex)
            chars.append(vals)
            labels.append(f"chi_i{si:+d}_j{sj:+d}")
    irreps = _char_irreps(np.asarray(chars), labels)
    irreps.append(UnitaryIrrep(2, _quaternion_matrices(), "spin"))
    return irreps


def unitary_dual(g: FiniteGroup) -> UnitaryDual:
    """Curated complete dual of a built-in group.

    Groups loaded from table files carry no curated dual; supply one with
    ``load_dual_file`` instead.
    """
    if g.family is None:
        raise ValueError(
            "no curated dual for this group; load one from a dual table file"
        )
    kind = g.family[0]
    if kind == "cyclic":
        irreps = _cyclic_dual(g)
    elif kind == "dihedral":
        irreps = _dihedral_dual(g)
    elif kind == "symmetric":
        irreps = _symmetric_dual(g)
    elif kind == "quaternion":
        irreps = _quaternion_dual(g)
    else:  # pragma: no cover - families are closed
        raise ValueError(f"no curated dual for family {kind!r}")
    return UnitaryDual(g, irreps)


# ---------------------------------------------------------------------------
# validation
# ---------------------------------------------------------------------------


@dataclass
class DualValidationReport:
    """Max residuals of the defining identities of a unitary dual."""

    homomorphism: float
    unitarity: float
    irreducibility: float
    orthogonality: float
    completeness: float
    tol: float

    def residuals(self) -> dict[str, float]:
        return {
            "homomorphism": self.homomorphism,
            "unitarity": self.unitarity,
            "irreducibility": self.irreducibility,
            "orthogonality": self.orthogonality,
            "completeness": self.completeness,
        }

    @property
    def max_residual(self) -> float:
        return max(self.residuals().values())

    @property
    def passed(self) -> bool:
        return self.max_residual <= self.tol


def validate_dual(g: FiniteGroup, dual: UnitaryDual, tol: float = 1e-10) -> DualValidationReport:
    """Check homomorphism, unitarity, irreducibility, Schur orthogonality and
    completeness of a dual against its group; structural mismatches raise."""
    if tol <= 0:
        raise ValueError("tol must be positive")
    n = g.order
    for p in dual.irreps:
        if p.matrices.shape[0] != n:
            raise ValueError(
                f"irrep {p.label!r} tabulates {p.matrices.shape[0]} elements, group has {n}"
            )
    hom = 0.0
    unit = 0.0
    irr = 0.0
    for p in dual.irreps:
        m = p.matrices
        prod = np.einsum("sab,tbc->stac", m, m)
        hom = max(hom, float(np.abs(prod - m[g.cayley]).max()))
        eye = np.eye(p.dim)
        unit = max(unit, float(np.abs(m @ m.conj().transpose(0, 2, 1) - eye).max()))
        chi = p.characters()
        irr = max(irr, float(abs(np.mean(np.abs(chi) ** 2) - 1.0)))
    orth = 0.0
    for a, p in enumerate(dual.irreps):
        for b, q in enumerate(dual.irreps):
            gram = np.einsum("tij,tkl->ijkl", p.matrices, q.matrices.conj()) / n
            if a == b:
                d = p.dim
                target = np.einsum("ik,jl->ijkl", np.eye(d), np.eye(d)) / d
                gram = gram - target
            orth = max(orth, float(np.abs(gram).max()))
    comp = float(abs(sum(p.dim**2 for p in dual.irreps) - n))
    return DualValidationReport(hom, unit, irr, orth, comp, tol)


def matrix_coefficient(pi: UnitaryIrrep, i: int, j: int) -> np.ndarray:
    """The scalar function t -> pi(t)_{ij} (0-based indices), |values| <= 1."""
    if not (0 <= i < pi.dim and 0 <= j < pi.dim):
        raise IndexError(f"coefficient index ({i}, {j}) outside dim {pi.dim}")
    return pi.matrices[:, i, j].copy()


# ---------------------------------------------------------------------------
# table file formats
# ---------------------------------------------------------------------------


def format_complex(z: complex) -> str:
    z = complex(z)
    return f"{z.real:.17g}{z.imag:+.17g}i"


def parse_complex(token: str) -> complex:
    t = token.strip()
    if t.endswith("i"):
        t = t[:-1] + "j"
        return complex(t)
    return complex(float(t))


def dump_group_file(g: FiniteGroup) -> str:
    """Group table text: first line the order, then the Cayley table rows."""
    lines = [str(g.order)]
    lines += [" ".join(str(int(v)) for v in row) for row in g.cayley]
    return "\n".join(lines) + "\n"


def load_group_file(path: str | Path, label: str | None = None) -> FiniteGroup:
    text = Path(path).read_text()
    tokens = [line.split() for line in text.splitlines() if line.strip()]
    order = int(tokens[0][0])
    rows = tokens[1 : 1 + order]
    if len(rows) != order:
        raise ValueError(f"expected {order} table rows, found {len(rows)}")
    cayley = np.array([[int(v) for v in row] for row in rows], dtype=np.int64)
    return _group_from_cayley(cayley, label or Path(path).stem)


def dump_dual_file(dual: UnitaryDual) -> str:
    """Dual table text: per irrep a ``dim d`` line, then one row-major matrix
    line per group element with a+bi complex literals."""
    lines = []
    for p in dual.irreps:
        lines.append(f"dim {p.dim}")
        for t in range(p.matrices.shape[0]):
            lines.append(" ".join(format_complex(z) for z in p.matrices[t].reshape(-1)))
    return "\n".join(lines) + "\n"


def load_dual_file(path: str | Path, g: FiniteGroup) -> UnitaryDual:
    lines = [line for line in Path(path).read_text().splitlines() if line.strip()]
    irreps = []
    pos = 0
    count = 0
    while pos < len(lines):
        head = lines[pos].split()
        if head[0] != "dim":
            raise ValueError(f"expected 'dim <d>' header, got {lines[pos]!r}")
        d = int(head[1])
        pos += 1
        block = lines[pos : pos + g.order]
        if len(block) != g.order:
            raise ValueError("dual table block shorter than the group order")
        mats = np.array(
            [[parse_complex(tok) for tok in line.split()] for line in block]
        ).reshape(g.order, d, d)
        irreps.append(UnitaryIrrep(d, mats, f"irrep{count}"))
        count += 1
        pos += g.order
    return UnitaryDual(g, irreps)
