"""Fourier-space analysis of the two-period walk with reflection coins.

The two-step symbol M(k) = R(k) H1 R(k) H0 has unit determinant, so it reads
[[p, q], [-conj(q), conj(p)]] with

    p = c0 c1 e^{2ik} + s0 s1,    q = c1 s0 e^{2ik} - s1 c0,

(c_g, s_g = cos, sin of theta_g). Its eigenvalues are lambda_j = Re p +- i sin(phi),
sin(phi) = sqrt(1 - (Re p)^2) = hypot(Im p, |q|), and M = Re p + i sin(phi) N where
N = Pi_0 - Pi_1 is the difference of the spectral projectors. Branch j = 0 is
the eigenvalue with non-negative imaginary part.
"""

import math
from typing import Optional

import numpy as np

from app.config import settings
from app.errors import DegenerateSymbolError, DomainError, EqualAngleError, InternalError, NormalizationError
from app.models import CoinMatrix, EigenSystem, Spinor, SymbolMatrix
from app.models.coin import TWO_PI
from app.observability import logger
from app.walks.coins import orthogonal_coin, phase_rotation, require_unitary


def symbol(k: float, coin: CoinMatrix) -> SymbolMatrix:
    """U_hat(k) = R(k) U."""
    require_unitary(coin)
    reduced = k % TWO_PI
    return SymbolMatrix(k=reduced, matrix=CoinMatrix.from_array(phase_rotation(reduced) @ coin.matrix))


def _angles(theta0: float, theta1: float) -> tuple[float, float, float, float]:
    orthogonal_coin(theta0, name="theta0")
    orthogonal_coin(theta1, name="theta1")
    if abs(theta0 - theta1) <= settings.angle_tolerance:
        raise EqualAngleError(f"theta0 and theta1 must differ, both are {theta0}")
    return math.cos(theta0), math.sin(theta0), math.cos(theta1), math.sin(theta1)


def _symbol_entries(angles, k):
    c0, s0, c1, s1 = angles
    rotation = np.exp(2j * np.asarray(k, dtype=np.float64))
    p = c0 * c1 * rotation + s0 * s1
    q = c1 * s0 * rotation - s1 * c0
    return p, q


def _require_normalized(psi0: Spinor) -> None:
    if abs(psi0.norm_squared - 1.0) > settings.normalization_tolerance:
        raise NormalizationError(f"initial spinor must be normalized, got norm^2 {psi0.norm_squared:.12g}")


def closed_form_eigenvalues(theta0: float, theta1: float, k: float) -> tuple[complex, complex]:
    """lambda_j = A + (-1)^j i sqrt(1 - A^2), A = c0 c1 cos 2k + s0 s1.

    The root is evaluated as hypot(Im p, |q|), which keeps full precision near A = +-1.
    """
    p, q = (complex(v) for v in _symbol_entries(_angles(theta0, theta1), k))
    root = math.hypot(p.imag, abs(q))
    return complex(p.real, root), complex(p.real, -root)


def _eigenvector(p: complex, q: complex, lam: complex) -> np.ndarray:
    # (p - lam) v1 + q v2 = 0 and -conj(q) v1 + (conj(p) - lam) v2 = 0; take the better row.
    first = np.array([q, lam - p])
    second = np.array([lam - p.conjugate(), -q.conjugate()])
    vector = first if np.linalg.norm(first) >= np.linalg.norm(second) else second
    return vector / np.linalg.norm(vector)


def two_period_eigensystem(theta0: float, theta1: float, k: float, psi0: Spinor) -> EigenSystem:
    """Eigenpairs of H1_hat(k) H0_hat(k) with overlaps against psi0."""
    angles = _angles(theta0, theta1)
    _require_normalized(psi0)
    h0, h1 = orthogonal_coin(theta0), orthogonal_coin(theta1)
    product = symbol(k, h1).matrix.matrix @ symbol(k, h0).matrix.matrix
    numeric = np.linalg.eigvals(product)
    numeric = numeric[np.argsort(-numeric.imag)]
    closed = closed_form_eigenvalues(theta0, theta1, k)
    if abs(closed[0] - closed[1]) < settings.degenerate_eigenvalue_tolerance:
        raise DegenerateSymbolError(f"eigenvalues coincide at k={k} for theta=({theta0}, {theta1})")
    if np.max(np.abs(numeric - np.array(closed))) > 1e-10:
        raise InternalError(f"closed-form eigenvalues {closed} disagree with eigensolve {numeric}")

    p, q = (complex(v) for v in _symbol_entries(angles, k))
    vectors = [_eigenvector(p, q, lam) for lam in closed]
    for lam, vector in zip(closed, vectors):
        if np.max(np.abs(product @ vector - lam * vector)) > 1e-10:
            raise InternalError(f"eigenvector residual too large at k={k}")
    psi = psi0.as_array()
    overlaps = tuple(float(abs(np.vdot(v, psi)) ** 2) for v in vectors)
    return EigenSystem(
        lambda0=closed[0],
        lambda1=closed[1],
        v0=Spinor(up=complex(vectors[0][0]), down=complex(vectors[0][1])),
        v1=Spinor(up=complex(vectors[1][0]), down=complex(vectors[1][1])),
        overlaps=overlaps,
    )


def _velocity_terms(angles, k):
    """(h_0(k), sin(phi), Im p, q) on a grid; h_1 = -h_0."""
    p, q = _symbol_entries(angles, k)
    sin_phi = np.hypot(p.imag, np.abs(q))
    safe = np.where(sin_phi > 0, sin_phi, 1.0)
    return -p.imag / safe, sin_phi, p.imag, q


def group_velocity(theta0: float, theta1: float, k: float, j: int) -> float:
    """h_j(k) = D lambda_j / (2 lambda_j) = -(1/2) d phi_j / dk."""
    if j not in (0, 1):
        raise DomainError(f"branch index must be 0 or 1, got {j}")
    angles = _angles(theta0, theta1)
    h0, sin_phi, _, _ = _velocity_terms(angles, k)
    if 2 * float(sin_phi) < settings.degenerate_eigenvalue_tolerance:
        raise DegenerateSymbolError(f"group velocity undefined at degenerate k={k}")
    return float(h0) if j == 0 else -float(h0)


def eigenphases(theta0: float, theta1: float, ks: np.ndarray) -> np.ndarray:
    """Continuity-unwrapped eigenphases phi_j(k) along an ascending grid, shape (2, len(ks))."""
    angles = _angles(theta0, theta1)
    p, q = _symbol_entries(angles, ks)
    root = np.hypot(p.imag, np.abs(q))
    lambdas = np.stack([p.real + 1j * root, p.real - 1j * root])
    return np.unwrap(np.angle(lambdas), axis=1)


def dispersion_table(theta0: float, theta1: float, points: int) -> dict[str, np.ndarray]:
    """Midpoint k-grid over [0, 2 pi) with both eigenvalues and group velocities."""
    angles = _angles(theta0, theta1)
    ks = (np.arange(points) + 0.5) * TWO_PI / points
    p, _ = _symbol_entries(angles, ks)
    h0, sin_phi, _, _ = _velocity_terms(angles, ks)
    return {
        "k": ks,
        "re_lambda0": p.real,
        "im_lambda0": sin_phi,
        "re_lambda1": p.real,
        "im_lambda1": -sin_phi,
        "h0": h0,
        "h1": -h0,
    }


def _degenerate_wavenumbers(angles) -> list[float]:
    # A(k) = +-1 is only reachable where cos 2k = +-1.
    candidates = [0.0, math.pi / 2, math.pi, 3 * math.pi / 2]
    _, sin_phi, _, _ = _velocity_terms(angles, np.array(candidates))
    return [k for k, s in zip(candidates, sin_phi) if 2 * s < settings.degenerate_eigenvalue_tolerance]


def _moment_on_grid(
    angles, alpha: complex, beta: complex, r: int, points: int, excluded: list[float]
) -> float:
    ks = (np.arange(points) + 0.5) * TWO_PI / points
    h0, sin_phi, im_p, q = _velocity_terms(angles, ks)
    safe = np.where(sin_phi > 0, sin_phi, 1.0)
    # <psi|N|psi> with N = [[Im p, -i q], [i conj(q), -Im p]] / sin(phi)
    population = abs(alpha) ** 2 - abs(beta) ** 2
    polarization = (im_p * population + 2 * (q * alpha.conjugate() * beta).imag) / safe
    overlap0 = (1 + polarization) / 2
    overlap1 = (1 - polarization) / 2
    integrand = h0**r * overlap0 + (-h0) ** r * overlap1
    half_width = settings.degenerate_exclusion_width / 2
    for k_star in excluded:
        distance = np.abs((ks - k_star + math.pi) % TWO_PI - math.pi)
        integrand = np.where(distance < half_width, 0.0, integrand)
    return float(np.mean(integrand))


def limit_moment_integral(theta0: float, theta1: float, alpha: complex, beta: complex, r: int) -> float:
    """lim E((X_2t / 2t)^r) = int dk/2pi sum_j h_j(k)^r |<v_j(k)|psi_0>|^2."""
    if not 0 <= r <= settings.max_moment_order:
        raise DomainError(f"moment order must lie in 0..{settings.max_moment_order}, got {r}")
    alpha, beta = complex(alpha), complex(beta)
    _require_normalized(Spinor(up=alpha, down=beta))
    angles = _angles(theta0, theta1)
    excluded = _degenerate_wavenumbers(angles)
    points = settings.k_grid_points
    value = _moment_on_grid(angles, alpha, beta, r, points, excluded)
    while points < settings.k_grid_max_points:
        points *= 2
        refined = _moment_on_grid(angles, alpha, beta, r, points, excluded)
        converged = abs(refined - value) <= settings.k_grid_tolerance
        value = refined
        if converged:
            break
    else:
        logger.warning(
            "Moment quadrature hit the grid cap",
            extra={"theta0": theta0, "theta1": theta1, "r": r, "points": points},
        )
    return value


def sup_group_velocity(theta0: float, theta1: float, points: int = 100_000) -> float:
    """max over a dense midpoint grid of |h_j(k)|."""
    angles = _angles(theta0, theta1)
    ks = (np.arange(points) + 0.5) * TWO_PI / points
    h0, _, _, _ = _velocity_terms(angles, ks)
    return float(np.max(np.abs(h0)))


def finite_difference_velocity(
    theta0: float, theta1: float, k: float, j: int, step: Optional[float] = None
) -> float:
    """-(1/2) d phi_j/dk by central differences of the unwrapped eigenphase."""
    step = 1e-6 if step is None else step
    phases = eigenphases(theta0, theta1, np.array([k - step, k, k + step]))
    return -0.5 * (phases[j, 2] - phases[j, 0]) / (2 * step)
