"""Force field for the six-ligand octahedral molecule.

The pair interaction and the bond term are functions of *squared* distance,

    u1(r) = s1/r^6 - s2/r^3 + s3/sqrt(r),      u2(r) = (sqrt(r) - 1)^2,

so u1 is a 12-6 Lennard-Jones plus Coulomb repulsion in plain distance and
u2 a harmonic bond stretch against the central atom at the origin.

Two Hessian conventions coexist (see ``hessian_blocks``):

* ``"cartesian"``  - the true second derivative of the potential; it matches
  finite differences and drives the mode dynamics.
* ``"reported"``   - the closed-form block matrix whose eigenvalues are the
  reference alpha^2 table; its quadratic terms are built on the unit
  octahedron template.  The two spectra coincide under the coefficient
  substitution (a,b,c) -> 2 r0^2 (a,b,c), (d,e) -> 2 (d,e).
"""

from dataclasses import dataclass

import numpy as np

from . import accel
from .errors import CollisionError, ConfigError, SearchFailureError, ShapeError

# unit octahedron template: p1=-p3=e_x, p2=-p4=e_y, p5=-p6=e_z
OCTAHEDRON = np.array(
    [[1.0, 0, 0], [0, 1.0, 0], [-1.0, 0, 0], [0, -1.0, 0], [0, 0, 1.0], [0, 0, -1.0]]
)
OPPOSITE = (2, 3, 0, 1, 5, 4)  # index of the antipodal vertex
ADJACENT = tuple(
    tuple(k for k in range(6) if k != j and k != OPPOSITE[j]) for j in range(6)
)

_COLLISION_TOL = 1e-12


@dataclass(frozen=True)
class PotentialParams:
    """Dimensionless force-field constants."""

    sigma1: float
    sigma2: float
    sigma3: float

    def __post_init__(self):
        for name in ("sigma1", "sigma2", "sigma3"):
            if getattr(self, name) < 0:
                raise ConfigError(f"{name} must be nonnegative")
        if self.sigma1 == 0 and self.sigma2 != 0:
            raise ConfigError(
                "sigma1=0 with sigma2>0 removes the short-range barrier; "
                "set sigma1>0 or sigma1=sigma2=0"
            )


REFERENCE_PARAMS = PotentialParams(0.0618, 0.0618, 1.0)


def load_params(path):
    """Read a ``key=value`` parameter file (sigma1=, sigma2=, sigma3=)."""
    values = {}
    with open(path) as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise ConfigError(f"{path}:{lineno}: expected key=value, got {line!r}")
            key, _, val = line.partition("=")
            key = key.strip()
            if key not in ("sigma1", "sigma2", "sigma3"):
                raise ConfigError(f"{path}:{lineno}: unknown key {key!r}")
            try:
                values[key] = float(val)
            except ValueError:
                raise ConfigError(f"{path}:{lineno}: bad number {val.strip()!r}") from None
    missing = {"sigma1", "sigma2", "sigma3"} - set(values)
    if missing:
        raise ConfigError(f"{path}: missing {', '.join(sorted(missing))}")
    return PotentialParams(values["sigma1"], values["sigma2"], values["sigma3"])


def as_configuration(positions):
    """Validate and return a (6,3) float array of ligand positions."""
    pos = np.asarray(positions, dtype=float)
    if pos.shape == (18,):
        pos = pos.reshape(6, 3)
    if pos.shape != (6, 3):
        raise ShapeError(f"configuration must be (6,3) or (18,), got {pos.shape}")
    for j in range(6):
        if pos[j] @ pos[j] < _COLLISION_TOL:
            raise CollisionError(j)
        for k in range(j + 1, 6):
            d = pos[j] - pos[k]
            if d @ d < _COLLISION_TOL:
                raise CollisionError(j, k)
    return pos


# scalar derivatives of the two interaction terms ---------------------------

def u1(r, p):
    return p.sigma1 / r ** 6 - p.sigma2 / r ** 3 + p.sigma3 / np.sqrt(r)


def u1_prime(r, p):
    return -6 * p.sigma1 / r ** 7 + 3 * p.sigma2 / r ** 4 - 0.5 * p.sigma3 * r ** -1.5


def u1_second(r, p):
    return 42 * p.sigma1 / r ** 8 - 12 * p.sigma2 / r ** 5 + 0.75 * p.sigma3 * r ** -2.5


def u2(r):
    return (np.sqrt(r) - 1.0) ** 2


def u2_prime(r):
    return 1.0 - r ** -0.5


def u2_second(r):
    return 0.5 * r ** -1.5


def potential(params, config):
    pos = as_configuration(config)
    return float(accel.potential(pos, params.sigma1, params.sigma2, params.sigma3))


def gradient(params, config):
    """Gradient of the potential as an 18-vector."""
    pos = as_configuration(config)
    return accel.gradient(pos, params.sigma1, params.sigma2, params.sigma3).reshape(18)


def hessian(params, config):
    """Analytic Cartesian Hessian (18x18); matches finite differences."""
    pos = as_configuration(config)
    return accel.hessian(pos, params.sigma1, params.sigma2, params.sigma3)


# radial restriction phi(r) = U(r * template) -------------------------------

def phi(params, r):
    return 12 * u1(2 * r * r, params) + 3 * u1(4 * r * r, params) + 6 * u2(r * r)


def phi_prime(params, r):
    return 12 * r * (
        4 * u1_prime(2 * r * r, params)
        + 2 * u1_prime(4 * r * r, params)
        + u2_prime(r * r)
    )


def phi_second(params, r, step=1e-6):
    return (phi(params, r + step) - 2 * phi(params, r) + phi(params, r - step)) / step ** 2


def ct_residual(params, r):
    """Residual of the radial criticality condition at radius r."""
    return (
        4 * u1_prime(2 * r * r, params)
        + 2 * u1_prime(4 * r * r, params)
        + u2_prime(r * r)
    )


@dataclass(frozen=True)
class Equilibrium:
    radius: float
    params: PotentialParams

    @property
    def configuration(self):
        return self.radius * OCTAHEDRON


def find_equilibrium(params, lo=1e-3, hi=1e3):
    """Locate the radial minimizer of phi by bisection plus one Newton polish."""
    if params.sigma1 == params.sigma2 == params.sigma3 == 0:
        return Equilibrium(1.0, params)  # pure bond stretching

    grid = np.geomspace(lo, hi, 200)
    vals = [phi_prime(params, r) for r in grid]
    bracket = None
    for a, b, fa, fb in zip(grid[:-1], grid[1:], vals[:-1], vals[1:]):
        if fa < 0 <= fb:
            bracket = (a, b)
            break
    if bracket is None:
        raise SearchFailureError(
            f"no sign change of phi' in ({lo:g}, {hi:g}) for {params}"
        )
    a, b = bracket
    for _ in range(100):
        mid = 0.5 * (a + b)
        if phi_prime(params, mid) < 0:
            a = mid
        else:
            b = mid
        if b - a < 1e-12 * mid:
            break
    r0 = 0.5 * (a + b)
    # one Newton step on phi' sharpens the root to machine precision
    fp = phi_prime(params, r0)
    fpp = (phi_prime(params, r0 + 1e-7) - phi_prime(params, r0 - 1e-7)) / 2e-7
    if fpp > 0:
        r0 -= fp / fpp
    return Equilibrium(float(r0), params)


# stiffness coefficients and block Hessians ---------------------------------

def stiffness(params, r0):
    """The five radial stiffness constants (a, b, c, d, e) at radius r0."""
    return (
        u1_second(2 * r0 * r0, params),
        u1_second(4 * r0 * r0, params),
        u2_second(r0 * r0),
        u1_prime(4 * r0 * r0, params),
        u1_prime(2 * r0 * r0, params),
    )


def blocks_from_stiffness(a, b, c, d, e, convention="reported", r0=None):
    """Assemble an 18x18 block matrix from the five stiffness constants.

    Adjacent blocks are -qa*m - ia*I, opposite blocks -qb*m - ib*I with m
    the unit-template outer products, and the diagonal balances them.
    """
    if convention == "reported":
        qa, qb, qc, ia, ib = 2 * a, 2 * b, 2 * c, e, d
    elif convention == "cartesian":
        if r0 is None:
            raise ConfigError("cartesian convention needs the equilibrium radius")
        s = 2 * r0 * r0
        qa, qb, qc, ia, ib = 2 * s * a, 2 * s * b, 2 * s * c, 2 * e, 2 * d
    else:
        raise ConfigError(f"unknown convention {convention!r}")

    p = OCTAHEDRON
    H = np.zeros((18, 18))
    for j in range(6):
        diag = qc * np.outer(p[j], p[j]) - ib * np.eye(3)
        for k in ADJACENT[j]:
            m = np.outer(p[j] - p[k], p[j] - p[k])
            H[3 * j : 3 * j + 3, 3 * k : 3 * k + 3] = -qa * m - ia * np.eye(3)
            diag += qa * m
        k = OPPOSITE[j]
        m = np.outer(p[j] - p[k], p[j] - p[k])
        H[3 * j : 3 * j + 3, 3 * k : 3 * k + 3] = -qb * m - ib * np.eye(3)
        diag += qb * m
        H[3 * j : 3 * j + 3, 3 * j : 3 * j + 3] = diag
    return H


def hessian_blocks(params, r0, convention="reported"):
    """Assemble the equilibrium Hessian from its 3x3 closed-form blocks.

    ``convention="reported"`` reproduces the reference block matrix (the
    alpha^2 spectrum); ``"cartesian"`` produces the true second derivative
    at r0 * template.  Requires r0 to satisfy the criticality condition.
    """
    if abs(ct_residual(params, r0)) > 1e-6:
        raise ShapeError(
            "block Hessian is only valid at the octahedral equilibrium radius"
        )
    a, b, c, d, e = stiffness(params, r0)
    return blocks_from_stiffness(a, b, c, d, e, convention=convention, r0=r0)
