"""Brute-force verification engine on a truncated two-mode Fock space.

Everything here is deliberately independent of the Gaussian closed forms:
states are concrete amplitude arrays, operators are concrete matrices, and
expectation values are plain contractions.  The module exists to validate
the analytic path, so it favours explicit truncation-error accounting over
speed: no state is ever silently renormalized.

Pure single-mode states are assembled from closed-form coherent/squeezed
amplitudes, with displaced-squeezed combinations obtained by exponentiating
the displacement generator in a workspace twice the requested cutoff and
projecting down.  A thermal background is an isotropic Gaussian classical
mixture of displacements, realized by Gauss-Hermite quadrature; the
resulting density matrix reproduces the geometric number distribution of a
thermal state to quadrature precision.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from numpy.polynomial.hermite import hermgauss
from scipy.sparse.linalg import expm_multiply
from scipy.special import gammaln

from .gaussian import StateParams
from .opexpr import MODE, IS_DAGGER, OperatorExpr, ExpressionError, reorder, \
    formal_normal_order, adjoint_product

__all__ = [
    "LadderMatrices",
    "FockState",
    "TruncationError",
    "ConvergenceError",
    "build_ladder",
    "fock_state",
    "expect",
    "witness_general",
    "converged_cutoff",
    "expr_matrix",
    "coherent_amplitudes",
    "squeezed_amplitudes",
    "pure_mode_amplitudes",
]

DEFAULT_TRUNCATION_BUDGET = 1e-8
MAX_PURE_CUTOFF = 512
MAX_MIXED_CUTOFF = 128


class TruncationError(Exception):
    """The requested cutoff cannot hold the state within the error budget."""


class ConvergenceError(Exception):
    """The doubling schedule ran out before expectation values settled."""


@dataclass(frozen=True)
class LadderMatrices:
    """Truncated annihilation matrices for the two modes.

    ``a_mat`` and ``b_mat`` hold the single-mode matrix with elements
    ``<n-1|a|n> = sqrt(n)``; they act on modes A and B of a two-mode state
    by (implicit) tensor product with the identity on the other mode.
    """

    cutoff: int
    a_mat: np.ndarray
    b_mat: np.ndarray


def build_ladder(cutoff: int) -> LadderMatrices:
    """Construct truncated ladder matrices for the given cutoff."""
    if cutoff < 2:
        raise ValueError(f"cutoff must be >= 2, got {cutoff}")
    a = np.diag(np.sqrt(np.arange(1.0, cutoff)), 1).astype(complex)
    a.setflags(write=False)
    return LadderMatrices(cutoff=cutoff, a_mat=a, b_mat=a)


@lru_cache(maxsize=None)
def _single_mode_matrix(cutoff: int, daggers: int, lowers: int) -> np.ndarray:
    """Matrix of ``ad^daggers a^lowers`` on one truncated mode."""
    a = build_ladder(cutoff).a_mat
    out = np.eye(cutoff, dtype=complex)
    for _ in range(lowers):
        out = a @ out
    for _ in range(daggers):
        out = a.conj().T @ out
    out.setflags(write=False)
    return out


def _word_factors(word: tuple[str, ...], cutoff: int) -> tuple[np.ndarray, np.ndarray]:
    """Per-mode matrices of a word, letters applied in written order."""
    mats = {"A": np.eye(cutoff, dtype=complex), "B": np.eye(cutoff, dtype=complex)}
    a = build_ladder(cutoff).a_mat
    for letter in word:
        op = a.conj().T if IS_DAGGER[letter] else a
        mats[MODE[letter]] = mats[MODE[letter]] @ op
    return mats["A"], mats["B"]


def expr_matrix(expr: OperatorExpr, cutoff: int) -> np.ndarray:
    """Full two-mode matrix of an expression (mode A is the first factor).

    Only intended for small cutoffs; the result is dense of size
    ``cutoff^2 x cutoff^2``.
    """
    out = np.zeros((cutoff * cutoff, cutoff * cutoff), dtype=complex)
    for word, coeff in expr.terms:
        mat_a, mat_b = _word_factors(word, cutoff)
        out += coeff * np.kron(mat_a, mat_b)
    return out


# ---------------------------------------------------------------------------
# State construction
# ---------------------------------------------------------------------------

def coherent_amplitudes(alpha: complex, cutoff: int) -> np.ndarray:
    """Number-basis amplitudes ``exp(-|alpha|^2/2) alpha^n / sqrt(n!)``."""
    if alpha == 0:
        v = np.zeros(cutoff, dtype=complex)
        v[0] = 1.0
        return v
    n = np.arange(cutoff)
    magnitude = np.exp(-abs(alpha) ** 2 / 2 + n * np.log(abs(alpha)) - 0.5 * gammaln(n + 1))
    phase = np.exp(1j * n * np.angle(complex(alpha)))
    return magnitude * phase


def squeezed_amplitudes(zeta: float, cutoff: int) -> np.ndarray:
    """Squeezed-vacuum amplitudes, even numbers only.

    ``c_{2m} = (-tanh zeta)^m sqrt((2m)!) / (2^m m!) / sqrt(cosh zeta)``.
    """
    v = np.zeros(cutoff, dtype=complex)
    v[0] = 1.0
    t = np.tanh(zeta)
    for k in range(2, cutoff, 2):
        m = k // 2
        v[k] = (-t) ** m * np.exp(0.5 * gammaln(k + 1) - m * np.log(2.0) - gammaln(m + 1))
    return v / np.sqrt(np.cosh(zeta))


def _displacement_generator(alpha: complex, cutoff: int) -> np.ndarray:
    a = build_ladder(cutoff).a_mat
    return alpha * a.conj().T - np.conj(alpha) * a


@lru_cache(maxsize=8)
def _radial_displacement_basis(cutoff: int) -> tuple[np.ndarray, np.ndarray]:
    """Eigendecomposition of the radial displacement generator ``ad - a``.

    ``D(r e^(i phi)) = e^(i phi n) expm(r (ad - a)) e^(-i phi n)`` holds
    exactly in the truncated space, so a single Hermitian diagonalization
    yields every displacement as two matrix-vector products.
    """
    a = build_ladder(cutoff).a_mat
    generator = a.conj().T - a
    eigvals, eigvecs = np.linalg.eigh(1j * generator)
    return eigvals, eigvecs


def _displace_batch(base: np.ndarray, betas: np.ndarray, keep: int) -> np.ndarray:
    """Apply ``D(beta) base`` for every beta; rows are the kept amplitudes."""
    work = base.shape[0]
    eigvals, eigvecs = _radial_displacement_basis(work)
    levels = np.arange(work)
    radii = np.abs(betas)
    phases = np.angle(betas)
    # Columns: e^(-i phi n) base for every node.
    rotated = np.exp(-1j * np.outer(levels, phases)) * base[:, None]
    spectral = eigvecs.conj().T @ rotated
    spectral *= np.exp(-1j * np.outer(eigvals, radii))
    displaced = eigvecs @ spectral
    displaced *= np.exp(1j * np.outer(levels, phases))
    return displaced[:keep, :].T


def _squeezed_rotated_base(params: StateParams, cutoff: int) -> np.ndarray:
    base = squeezed_amplitudes(params.zeta, cutoff)
    if params.phi != 0.0:
        base = np.exp(1j * params.phi * np.arange(cutoff)) * base
    return base


def pure_mode_amplitudes(params: StateParams, cutoff: int) -> tuple[np.ndarray, float]:
    """Pure (nbar = 0) single-mode amplitudes and their truncation deficit."""
    alpha = complex(params.alpha)
    if alpha == 0:
        v = _squeezed_rotated_base(params, cutoff)
        return v, max(0.0, 1.0 - float(np.vdot(v, v).real))
    if params.zeta == 0.0:
        # Rotating the vacuum is trivial, so the state is exactly coherent.
        v = coherent_amplitudes(alpha, cutoff)
        return v, max(0.0, 1.0 - float(np.vdot(v, v).real))
    # Displaced squeezed state: exponentiate the displacement generator in a
    # workspace with headroom, then keep the lowest `cutoff` amplitudes.
    work = 2 * cutoff
    base = _squeezed_rotated_base(params, work)
    v = expm_multiply(_displacement_generator(alpha, work), base)[:cutoff]
    return v, max(0.0, 1.0 - float(np.vdot(v, v).real))


def _gauss_hermite_nodes(nbar: float) -> int:
    return max(21, 15 + int(np.ceil(5.0 * np.sqrt(nbar))))


def _mixed_mode_factor(params: StateParams, cutoff: int) -> tuple[np.ndarray, float]:
    """Density matrix of a mode with thermal background, plus trace deficit.

    The background is a classical Gaussian mixture of displacements with
    ``E|gamma|^2 = nbar``, integrated by tensor-grid Gauss-Hermite
    quadrature; every node is a pure displaced (rotated, squeezed) state.
    """
    nodes = _gauss_hermite_nodes(params.nbar)
    points, weights = hermgauss(nodes)
    scale = np.sqrt(params.nbar)
    alpha = complex(params.alpha)
    betas = (alpha + scale * (points[:, None] + 1j * points[None, :])).ravel()
    node_weights = (np.outer(weights, weights) / np.pi).ravel()

    if params.zeta == 0.0:
        levels = np.arange(cutoff)
        log_fact = gammaln(levels + 1.0)
        radii = np.abs(betas)
        radii[radii == 0.0] = np.finfo(float).tiny  # log of zero radius
        magnitudes = np.exp(-radii[:, None] ** 2 / 2
                            + levels[None, :] * np.log(radii[:, None])
                            - 0.5 * log_fact[None, :])
        vecs = magnitudes * np.exp(1j * levels[None, :] * np.angle(betas)[:, None])
    else:
        vecs = _displace_batch(_squeezed_rotated_base(params, 2 * cutoff), betas, cutoff)

    rho = vecs.T @ (node_weights[:, None] * vecs.conj())
    rho = (rho + rho.conj().T) / 2.0
    return rho, max(0.0, 1.0 - float(np.trace(rho).real))


@dataclass(frozen=True)
class FockState:
    """A truncated two-mode state.

    ``kind == "pure"`` stores the amplitude tensor ``data[n_a, n_b]`` of
    shape ``(cutoff, cutoff)``, which may be entangled.  ``kind == "mixed"``
    stores the factors ``data == (rho_si, rho_lo)`` of a product density
    operator; that factored form covers every mixed state this oracle has
    to build and keeps desk-scale cutoffs cheap.  ``deficit`` is the
    norm/trace mass lost to truncation; nothing is renormalized.
    """

    kind: str
    cutoff: int
    data: object
    deficit: float = 0.0

    @classmethod
    def pure(cls, amplitudes: np.ndarray, deficit: float = 0.0) -> "FockState":
        amplitudes = np.asarray(amplitudes, dtype=complex)
        if amplitudes.ndim != 2 or amplitudes.shape[0] != amplitudes.shape[1]:
            raise ValueError("pure amplitudes must form a square two-mode tensor")
        return cls(kind="pure", cutoff=amplitudes.shape[0], data=amplitudes,
                   deficit=deficit)

    @classmethod
    def pure_product(cls, vec_si: np.ndarray, vec_lo: np.ndarray,
                     deficit: float = 0.0) -> "FockState":
        return cls.pure(np.outer(vec_si, vec_lo), deficit=deficit)

    @classmethod
    def mixed_product(cls, rho_si: np.ndarray, rho_lo: np.ndarray,
                      deficit: float = 0.0) -> "FockState":
        rho_si = np.asarray(rho_si, dtype=complex)
        rho_lo = np.asarray(rho_lo, dtype=complex)
        if rho_si.shape != rho_lo.shape or rho_si.ndim != 2:
            raise ValueError("factors must be square matrices of equal cutoff")
        return cls(kind="mixed", cutoff=rho_si.shape[0], data=(rho_si, rho_lo),
                   deficit=deficit)

    def validate(self, psd_tol: float = 1e-10) -> None:
        """Check the norm/trace and positivity invariants; raise on failure."""
        if self.kind == "pure":
            norm = float(np.vdot(self.data, self.data).real)
            if not 1.0 - self.deficit - 1e-12 <= norm <= 1.0 + 1e-12:
                raise ValueError(f"pure norm {norm} outside [1 - deficit, 1]")
        else:
            for rho in self.data:
                trace = float(np.trace(rho).real)
                if trace > 1.0 + 1e-12:
                    raise ValueError(f"factor trace {trace} exceeds 1")
                if np.linalg.eigvalsh(rho).min() < -psd_tol:
                    raise ValueError("density factor is not positive semidefinite")
            total = float(np.trace(self.data[0]).real * np.trace(self.data[1]).real)
            if total < 1.0 - self.deficit - 1e-12:
                raise ValueError(f"trace {total} below 1 - deficit")


def fock_state(params_si: StateParams, params_lo: StateParams, cutoff: int,
               budget: float = DEFAULT_TRUNCATION_BUDGET) -> FockState:
    """Build the product state SI x LO at the given per-mode cutoff.

    Raises
    ------
    TruncationError
        If the truncation deficit exceeds ``budget``.
    """
    if cutoff < 2:
        raise ValueError(f"cutoff must be >= 2, got {cutoff}")
    mixed = params_si.nbar > 0 or params_lo.nbar > 0
    if mixed and cutoff > MAX_MIXED_CUTOFF:
        raise ValueError(
            f"mixed states are limited to cutoff {MAX_MIXED_CUTOFF}, got {cutoff}"
        )
    if cutoff > MAX_PURE_CUTOFF:
        raise ValueError(f"cutoff {cutoff} exceeds the cap of {MAX_PURE_CUTOFF}")

    parts = []
    deficits = []
    for params in (params_si, params_lo):
        if params.nbar > 0:
            rho, deficit = _mixed_mode_factor(params, cutoff)
        else:
            rho, deficit = pure_mode_amplitudes(params, cutoff)
        parts.append(rho)
        deficits.append(deficit)
    total_deficit = 1.0 - (1.0 - deficits[0]) * (1.0 - deficits[1])
    if total_deficit > budget:
        raise TruncationError(
            f"truncation deficit {total_deficit:.3e} exceeds budget {budget:.3e} "
            f"at cutoff {cutoff}"
        )
    if not mixed:
        return FockState.pure_product(parts[0], parts[1], deficit=total_deficit)
    factors = [p if p.ndim == 2 else np.outer(p, p.conj()) for p in parts]
    return FockState.mixed_product(factors[0], factors[1], deficit=total_deficit)


# ---------------------------------------------------------------------------
# Expectation values
# ---------------------------------------------------------------------------

def _expect_word(word: tuple[str, ...], state: FockState) -> complex:
    counts = {"A": [0, 0], "B": [0, 0]}
    for letter in word:
        counts[MODE[letter]][0 if IS_DAGGER[letter] else 1] += 1
    mat_a = _single_mode_matrix(state.cutoff, *counts["A"])
    mat_b = _single_mode_matrix(state.cutoff, *counts["B"])
    if state.kind == "pure":
        psi = state.data
        return complex(np.vdot(psi, mat_a @ psi @ mat_b.T))
    rho_a, rho_b = state.data
    return complex(np.einsum("ij,ji->", mat_a, rho_a) *
                   np.einsum("ij,ji->", mat_b, rho_b))


def expect(expr: OperatorExpr, state: FockState) -> complex:
    """Expectation value ``<psi|M|psi>`` or ``tr(rho M)``.

    ``M`` is the matrix of ``reorder(expr)``, so every word is evaluated in
    its operator-preserving canonical form.
    """
    if expr.degree > 8:
        raise ExpressionError(f"expression degree {expr.degree} exceeds the cap of 8")
    value = 0j
    for word, coeff in reorder(expr).terms:
        value += coeff * _expect_word(word, state)
    return value


def witness_general(f: OperatorExpr, state: FockState) -> float:
    """Evaluate the subsystem-A witness ``< :A: f^dag f :A: >``.

    Negative values certify that the A mode cannot be a statistical
    mixture of coherent states, no matter what occupies mode B.
    """
    if f.degree > 4:
        raise ExpressionError(f"witness operand degree {f.degree} exceeds the cap of 4")
    ordered = formal_normal_order(adjoint_product(f), {"A"})
    return expect(ordered, state).real


def converged_cutoff(params_si: StateParams, params_lo: StateParams,
                     expr: OperatorExpr, tol: float,
                     max_cutoff: int = MAX_PURE_CUTOFF,
                     budget: float = DEFAULT_TRUNCATION_BUDGET) -> int:
    """Smallest cutoff in a doubling schedule with settled expectation values.

    Doubles the cutoff starting from 2 and returns the first cutoff whose
    expectation value of ``expr`` agrees with the next doubling to within
    ``tol``.  Cutoffs whose states exceed the truncation budget are skipped.

    Raises
    ------
    ConvergenceError
        If the schedule is exhausted without two successive agreements.
    """
    if tol <= 0:
        raise ValueError(f"tol must be > 0, got {tol}")
    mixed = params_si.nbar > 0 or params_lo.nbar > 0
    ceiling = min(max_cutoff, MAX_MIXED_CUTOFF if mixed else MAX_PURE_CUTOFF)
    previous: tuple[int, complex] | None = None
    cutoff = 2
    while cutoff <= ceiling:
        try:
            value = expect(expr, fock_state(params_si, params_lo, cutoff, budget=budget))
        except TruncationError:
            previous = None
        else:
            if previous is not None and abs(value - previous[1]) < tol:
                return previous[0]
            previous = (cutoff, value)
        cutoff *= 2
    raise ConvergenceError(
        f"expectation value did not settle to {tol:g} within cutoff {ceiling}"
    )
