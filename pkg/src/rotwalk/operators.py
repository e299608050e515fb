"""Shift and coin operators on the coin-position product space.

The walk lives on a (d*n)-dimensional space: d coin labels times n
vertices, in coin-major order — basis index j*n + v for coin label j and
vertex v (0-based).  The shift operator places a unit entry in column
j*n + v at row j*n + rot(v, j): it moves amplitude at (label j, vertex v)
to (label j, the vertex reached along label j).

A shift has exactly one unit entry per column, so it is stored as the
integer table ``col_to_row`` instead of a matrix.  That keeps every
unitarity question exact: S.S^T is always a diagonal matrix of integer
counts (column c contributes its single unit at row col_to_row[c], so
off-diagonal products vanish), and the unitarity defect — the largest
absolute entry of S.S^T - I — is an exact integer.  Defect 0 is
equivalent to every rotation-map column being a permutation.

Coins are genuinely numeric: dense complex d x d unitaries checked to a
1e-12 max-abs tolerance.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy import sparse

from .errors import ConfigError
from .rotmap import RotationMap

UNITARY_TOL = 1e-12

# Largest dimension d*n for which reports include the dense product matrix.
PRODUCT_DIM_LIMIT = 64

COIN_KINDS = ("hadamard", "grover", "dft", "identity", "custom")


class ShiftOperator:
    """A (d*n) x (d*n) 0/1 matrix with exactly one unit entry per column.

    ``col_to_row[c]`` is the row of column c's unit entry.  Unitary
    exactly when col_to_row is a permutation.
    """

    __slots__ = ("n", "d", "col_to_row")

    def __init__(self, n: int, d: int, col_to_row: np.ndarray):
        table = np.array(col_to_row, dtype=np.int64)
        if table.shape != (d * n,):
            raise ConfigError(f"col_to_row must have length d*n = {d * n}")
        if table.min() < 0 or table.max() >= d * n:
            raise ConfigError("col_to_row entry out of range")
        table.setflags(write=False)
        self.n = n
        self.d = d
        self.col_to_row = table

    @property
    def dim(self) -> int:
        return self.d * self.n

    def to_dense(self) -> np.ndarray:
        dense = np.zeros((self.dim, self.dim), dtype=np.int64)
        dense[self.col_to_row, np.arange(self.dim)] = 1
        return dense

    def to_sparse(self) -> sparse.csr_matrix:
        ones = np.ones(self.dim, dtype=np.int64)
        cols = np.arange(self.dim)
        return sparse.csr_matrix((ones, (self.col_to_row, cols)), shape=(self.dim, self.dim))

    def apply(self, amplitudes: np.ndarray) -> np.ndarray:
        """S @ amplitudes.  Amplitudes landing on the same row add up
        (that only happens for inconsistent maps)."""
        if amplitudes.shape != (self.dim,):
            raise ConfigError(f"amplitude vector must have length {self.dim}")
        out = np.zeros(self.dim, dtype=np.complex128)
        np.add.at(out, self.col_to_row, amplitudes)
        return out

    def apply_adjoint(self, amplitudes: np.ndarray) -> np.ndarray:
        """S^T @ amplitudes (= S^-1 @ amplitudes when S is unitary)."""
        if amplitudes.shape != (self.dim,):
            raise ConfigError(f"amplitude vector must have length {self.dim}")
        return np.asarray(amplitudes, dtype=np.complex128)[self.col_to_row]

    def __eq__(self, other) -> bool:
        if not isinstance(other, ShiftOperator):
            return NotImplemented
        return self.n == other.n and self.d == other.d and bool(
            (self.col_to_row == other.col_to_row).all()
        )

    def __hash__(self):
        return hash((self.n, self.d, self.col_to_row.tobytes()))

    def __repr__(self) -> str:
        return f"ShiftOperator(n={self.n}, d={self.d})"


def build_shift(rot: RotationMap) -> ShiftOperator:
    """The shift operator of a rotation map (consistency not required;
    building from inconsistent maps is exactly how their non-unitarity
    is demonstrated)."""
    n, d = rot.n, rot.d
    offsets = (np.arange(d, dtype=np.int64) * n)[:, None]
    col_to_row = (rot.entries.T + offsets).reshape(-1)
    return ShiftOperator(n, d, col_to_row)


def adjoint(shift: ShiftOperator) -> sparse.csr_matrix:
    """Conjugate transpose; for these real 0/1 operators, the transpose."""
    return shift.to_sparse().transpose().tocsr()


@dataclass(frozen=True, eq=False)
class UnitarityReport:
    """Exact unitarity measurement of a shift operator.

    ``defect`` is the largest absolute entry of S.S^T - I (an exact
    integer; 0 means unitary).  ``product`` is the dense integer S.S^T
    for small instances (dimension <= PRODUCT_DIM_LIMIT), else None.
    """

    n: int
    d: int
    defect: int
    product: np.ndarray | None

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "d": self.d,
            "defect": self.defect,
            "product": None if self.product is None else self.product.tolist(),
        }


def unitarity_defect(rot: RotationMap) -> UnitarityReport:
    """Measure how far the shift of ``rot`` is from unitary, exactly.

    S.S^T is diagonal with entry (r, r) counting the columns sent to row
    r, so the defect is the largest |count - 1|.  The defect is 0 iff
    every column of the rotation map is a permutation of the vertices.
    """
    shift = build_shift(rot)
    counts = np.bincount(shift.col_to_row, minlength=shift.dim)
    defect = int(np.abs(counts - 1).max())
    product = None
    if shift.dim <= PRODUCT_DIM_LIMIT:
        dense = shift.to_dense()
        product = dense @ dense.T
    return UnitarityReport(rot.n, rot.d, defect, product)


class CoinOperator:
    """A d x d unitary applied on the coin space at every vertex."""

    __slots__ = ("d", "kind", "matrix")

    def __init__(self, d: int, kind: str, matrix: np.ndarray):
        mat = np.array(matrix, dtype=np.complex128)
        if mat.shape != (d, d):
            raise ConfigError(f"coin matrix must be {d} x {d}")
        residual = np.abs(mat @ mat.conj().T - np.eye(d)).max()
        if residual > UNITARY_TOL:
            raise ConfigError(
                f"coin matrix is not unitary: max |C C* - I| = {residual:.3e} > {UNITARY_TOL}"
            )
        mat.setflags(write=False)
        self.d = d
        self.kind = kind
        self.matrix = mat

    def __eq__(self, other) -> bool:
        if not isinstance(other, CoinOperator):
            return NotImplemented
        return self.d == other.d and self.kind == other.kind and bool(
            (self.matrix == other.matrix).all()
        )

    def __repr__(self) -> str:
        return f"CoinOperator(d={self.d}, kind={self.kind!r})"


def build_coin(kind: str, d: int, matrix=None) -> CoinOperator:
    """Construct a named coin.

    hadamard (d=2 only): the standard 2x2 Hadamard.
    grover: 2/d J - I, the diffusion about the uniform coin state.
    dft: discrete Fourier transform, entries omega^(jk) / sqrt(d).
    identity: I_d.
    custom: caller-supplied d x d matrix, checked for unitarity.
    """
    if d < 1:
        raise ConfigError(f"coin dimension must be positive, got {d}")
    if kind == "hadamard":
        if d != 2:
            raise ConfigError(f"hadamard coin requires d=2, got d={d}")
        mat = np.array([[1, 1], [1, -1]], dtype=np.complex128) / np.sqrt(2)
    elif kind == "grover":
        mat = np.full((d, d), 2.0 / d, dtype=np.complex128) - np.eye(d)
    elif kind == "dft":
        j, k = np.meshgrid(np.arange(d), np.arange(d), indexing="ij")
        mat = np.exp(2j * np.pi * j * k / d) / np.sqrt(d)
    elif kind == "identity":
        mat = np.eye(d, dtype=np.complex128)
    elif kind == "custom":
        if matrix is None:
            raise ConfigError("custom coin requires a matrix")
        mat = matrix
    else:
        raise ConfigError(f"unknown coin kind {kind!r}; expected one of {', '.join(COIN_KINDS)}")
    return CoinOperator(d, kind, mat)
