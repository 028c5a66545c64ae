"""Nystrom quadrature rules and dense assembly of the boundary operators.

All rules live on the 2n equispaced nodes t_j = j pi / n and are exact (or
spectrally accurate) on trigonometric polynomials:

* trapezoid (weight pi/n) for smooth parts;
* Kusmaul-Martensen weights R for log(4 sin^2((tau-t)/2)) parts, normalized
  so that sum_m R[i,m] phi(t_m) ~ (1/2pi) Int log(4 sin^2((t_i-t)/2)) phi(t) dt
  with exact mode action e^{ikt} -> -e^{ik t_i}/|k| (0 for k = 0);
* Kress weights T for the finite-part csc^2 kernel, normalized so that
  sum_m T[i,m] phi(t_m) ~ f.p. (1/4pi) Int csc^2((t_i-t)/2) phi(t) dt with
  exact mode action e^{ikt} -> -|k| e^{ik t_i};
* a half-grid-shifted rule for the Cauchy principal value: densities are
  interpolated spectrally to the shifted nodes t_{m+1/2}, where the cot
  kernel is regular, so that (pv phi)_i ~ p.v. (1/2pi) Int cot((t-t_i)/2)
  phi(t) dt with mode action e^{ikt} -> i sign(k) e^{ik t_i}.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "QuadratureSet",
    "DenseOperator",
    "build_quadrature",
    "assemble_bio",
    "blocks_to_matrix",
    "matrix_to_blocks",
    "flatten_density",
    "unflatten_density",
]

_J = np.array([[0.0, -1.0], [1.0, 0.0]])
_I2 = np.eye(2)


@dataclass(frozen=True)
class QuadratureSet:
    """Weight matrices for the four singularity classes on a 2n-node grid."""

    n: int
    R: np.ndarray = field(repr=False)  # Kusmaul-Martensen log weights
    T: np.ndarray = field(repr=False)  # Kress finite-part weights
    shift: np.ndarray = field(repr=False)  # interpolation to t_{m+1/2}
    pv: np.ndarray = field(repr=False)  # shifted-grid Cauchy p.v. rule
    trapezoid: float = 0.0


def shifted_interpolation_matrix(n: int) -> np.ndarray:
    """Matrix mapping nodal values at t_j to values at t_j + pi/(2n), by
    trigonometric interpolation (FFT with phase factors; Nyquist mode is
    treated symmetrically as cos(nt) so real data stay real)."""
    N = 2 * n
    h = np.pi / (2 * n)
    k = np.fft.fftfreq(N, d=1.0 / N)  # 0..n-1, -n..-1
    phase = np.exp(1j * k * h)
    phase[n] = np.cos(n * h)  # Nyquist
    F = np.fft.fft(np.eye(N), axis=0)
    S = np.fft.ifft(phase[:, None] * F, axis=0)
    return np.ascontiguousarray(np.real(S))


def build_quadrature(n: int) -> QuadratureSet:
    """Materialize all weight families for the 2n-point periodic grid."""
    if n < 4:
        raise ValueError("n must be at least 4")
    t = np.arange(2 * n) * np.pi / n
    d = t[:, None] - t[None, :]
    j = np.arange(1, n)
    # R[i,m] = -(1/n) sum_j cos(j d)/j - (1/2n^2) cos(n d)
    cosjd = np.cos(j[None, None, :] * d[:, :, None])
    R = -(cosjd / j).sum(axis=-1) / n - np.cos(n * d) / (2.0 * n**2)
    # T[i,m] = -(1/n) sum_j j cos(j d) - (1/2) cos(n d)
    T = -(cosjd * j).sum(axis=-1) / n - 0.5 * np.cos(n * d)
    S = shifted_interpolation_matrix(n)
    t_shift = t + np.pi / (2 * n)
    cot = 1.0 / np.tan(0.5 * (t_shift[None, :] - t[:, None]))
    pv = (cot / (2 * n)) @ S
    return QuadratureSet(n=n, R=R, T=T, shift=S, pv=pv, trapezoid=np.pi / n)


@dataclass(frozen=True)
class DenseOperator:
    """Dense 4n x 4n matrix acting on interleaved 2-component densities."""

    matrix: np.ndarray = field(repr=False)
    tag: str = ""

    @property
    def shape(self):
        return self.matrix.shape

    def __matmul__(self, other):
        if isinstance(other, DenseOperator):
            return DenseOperator(matrix=self.matrix @ other.matrix,
                                 tag=f"{self.tag}@{other.tag}")
        return self.matrix @ np.asarray(other)


def blocks_to_matrix(blocks: np.ndarray) -> np.ndarray:
    """(N, N, 2, 2) per-pair blocks -> (2N, 2N) interleaved matrix."""
    N = blocks.shape[0]
    return blocks.transpose(0, 2, 1, 3).reshape(2 * N, 2 * N)


def matrix_to_blocks(matrix: np.ndarray) -> np.ndarray:
    """(2N, 2N) interleaved matrix -> (N, N, 2, 2) per-pair blocks."""
    N = matrix.shape[0] // 2
    return matrix.reshape(N, 2, N, 2).transpose(0, 2, 1, 3)


def flatten_density(values: np.ndarray) -> np.ndarray:
    """(N, 2) nodal vector field -> interleaved (2N,) vector."""
    return np.asarray(values).reshape(-1)


def unflatten_density(vec: np.ndarray) -> np.ndarray:
    """Interleaved (2N,) vector -> (N, 2) nodal vector field."""
    return np.asarray(vec).reshape(-1, 2)


def assemble_bio(split, quadrature: QuadratureSet, grid) -> DenseOperator:
    """Assemble one boundary integral operator from its kernel split."""
    N = grid.size
    if quadrature.n != grid.n or split.M_log.shape[0] != N:
        raise ValueError("grid, quadrature and kernel split sizes disagree")
    w = quadrature.trapezoid
    blocks = w * split.M_smooth + (
        2.0 * np.pi * quadrature.R[:, :, None, None]
    ) * split.M_log
    if split.c_hs != 0.0:
        blocks = blocks + split.c_hs * quadrature.T[:, :, None, None] * _I2
    if split.c_pv != 0.0:
        # c_pv (1/4pi) Int cot((t_i - t)/2) J phi dt = -(c_pv/2) (pv phi) J
        blocks = blocks + (-0.5 * split.c_pv) * quadrature.pv[:, :, None, None] * _J
    return DenseOperator(matrix=blocks_to_matrix(blocks), tag=split.tag)
