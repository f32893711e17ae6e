"""Linearized vibrational modes and trajectory export.

A mode for a maximal symmetry type is built inside the first Fourier block
of one eigenspace of the Cartesian equilibrium Hessian: the pair (a, b) in

    u(t) = v0 + eps (cos t * a + sin t * b)

is taken from the fixed space of the type's spatio-temporal action, so the
trajectory satisfies the linearized dynamics exactly and its own symmetry
relations to machine precision, while the nonlinear residual scales
quadratically with the amplitude.
"""

import math
from dataclasses import dataclass, field

import numpy as np

from . import force_field, group_core, orbit_o2, spectral
from ._serialize import dumps, format_float
from .errors import (
    AmplitudeError,
    CollisionError,
    ConfigError,
    ConsistencyError,
    SamplingError,
)

DEFAULT_SAMPLES = 120  # divisible by 2,3,4,5,6,8: every phase shift in use


@dataclass(frozen=True)
class ModeTrajectory:
    j: str
    k: int
    type_class: int
    symmetry: str
    epsilon: float
    alpha: float                # physical angular frequency
    times: np.ndarray = field(repr=False)
    samples: np.ndarray = field(repr=False)   # (n, 18), absolute positions
    center: np.ndarray = field(repr=False)    # equilibrium 18-vector
    cos_dir: np.ndarray = field(repr=False)
    sin_dir: np.ndarray = field(repr=False)

    @property
    def n_samples(self):
        return len(self.times)


class ModeWorkshop:
    """Mode construction bound to one equilibrium."""

    def __init__(self, params=None):
        self.params = params or force_field.REFERENCE_PARAMS
        self.equilibrium = force_field.find_equilibrium(self.params)
        self.center = self.equilibrium.configuration.reshape(18)
        H = force_field.hessian_blocks(
            self.params, self.equilibrium.radius, convention="cartesian"
        )
        self.spectrum = spectral.assign_eigenspaces(spectral.numeric_spectrum(H))
        self.ring = orbit_o2.ring()

    def types_for(self, j):
        """Maximal symmetry classes of isotypic block j, in label order."""
        if j not in ("0", "4", "7", "7*", "8", "9"):
            raise ConfigError(f"unknown isotypic label {j!r}")
        idx = 7 if j == "7*" else int(j)
        classes = orbit_o2.maximal_orbit_types(idx, 1)
        orbit_o2.pin_reference_labels(idx, classes)
        return sorted(classes, key=self.ring.label_of)

    def alpha_of(self, j):
        for ln in self.spectrum.lines:
            if ln.label == j:
                return math.sqrt(ln.alpha_sq)
        raise ConfigError(f"unknown isotypic label {j!r}")

    # -- fixed-space construction ---------------------------------------
    def _pair_operator(self, element):
        """Action of a group element on (a, b) coefficient pairs."""
        refl, k, g = orbit_o2.decode(element)
        tau = 2 * math.pi * k / orbit_o2.GRID
        G = group_core.action_matrix_18(g)
        c, s = math.cos(tau), math.sin(tau)
        T = np.zeros((36, 36))
        if refl == 0:
            T[:18, :18] = c * G
            T[:18, 18:] = -s * G
            T[18:, :18] = s * G
            T[18:, 18:] = c * G
        else:
            T[:18, :18] = c * G
            T[:18, 18:] = s * G
            T[18:, :18] = s * G
            T[18:, 18:] = -c * G
        return T

    def fixed_pairs(self, type_class, j):
        """Orthonormal basis of the type's fixed space inside block j."""
        B = self.spectrum.basis_for(j)  # 18 x m
        m = B.shape[1]
        P = np.zeros((36, 2 * m))
        P[:18, :m] = B
        P[18:, m:] = B
        A = self.ring.representative(type_class)
        rows = []
        for x in sorted(A.elements):
            T = self._pair_operator(x)
            rows.append(P.T @ T @ P - np.eye(2 * m))
        M = np.vstack(rows)
        _, sv, Vt = np.linalg.svd(M)
        null = Vt[sv.size - np.sum(sv < 1e-10) :] if np.sum(sv < 1e-10) else Vt[:0]
        # rows of `null` span the fixed space in reduced coordinates
        out = []
        for row in null:
            a = B @ row[:m]
            b = B @ row[m:]
            out.append((a, b))
        return out

    def build_mode(self, j, k=1, epsilon=0.05, n_samples=DEFAULT_SAMPLES):
        """Trajectory for the k-th maximal type of block j (1-based)."""
        if epsilon < 0:
            raise ConfigError("epsilon must be nonnegative")
        if n_samples < 8:
            raise ConfigError("need at least 8 samples per period")
        types = self.types_for(j)
        if not 1 <= k <= len(types):
            raise ConfigError(
                f"block {j} has {len(types)} maximal types; k={k} is out of range"
            )
        return self.build_mode_for_type(types[k - 1], j, k, epsilon, n_samples)

    def build_mode_for_type(self, type_class, j, k=1, epsilon=0.05,
                            n_samples=DEFAULT_SAMPLES):
        if epsilon > self.safe_amplitude():
            raise AmplitudeError(
                f"amplitude {epsilon} exceeds the collision-safe bound "
                f"{self.safe_amplitude():.3g}"
            )
        pairs = self.fixed_pairs(type_class, j)
        if not pairs:
            raise ConsistencyError(
                f"type {self.ring.label_of(type_class)} has no fixed mode in block {j}"
            )
        a, b = pairs[0]
        # normalize the peak displacement to epsilon
        gram = np.array([[a @ a, a @ b], [a @ b, b @ b]])
        peak = math.sqrt(max(np.linalg.eigvalsh(gram).max(), 1e-300))
        a, b = a / peak, b / peak
        times = 2 * math.pi * np.arange(n_samples) / n_samples
        samples = (
            self.center[None, :]
            + epsilon * np.cos(times)[:, None] * a[None, :]
            + epsilon * np.sin(times)[:, None] * b[None, :]
        )
        for row in samples:
            try:
                force_field.as_configuration(row)
            except CollisionError as exc:
                raise AmplitudeError(
                    f"amplitude {epsilon} produces a colliding sample ({exc}); "
                    f"stay below {self.safe_amplitude():.3g}"
                ) from None
        return ModeTrajectory(
            j=j,
            k=k,
            type_class=type_class,
            symmetry=self.ring.label_of(type_class),
            epsilon=float(epsilon),
            alpha=self.alpha_of(j),
            times=times,
            samples=samples,
            center=self.center.copy(),
            cos_dir=a,
            sin_dir=b,
        )

    def safe_amplitude(self):
        """Amplitude below which no sample can collide (unit directions)."""
        pos = self.center.reshape(6, 3)
        dmin = min(
            np.linalg.norm(pos[i] - pos[j]) for i in range(6) for j in range(i + 1, 6)
        )
        dmin = min(dmin, min(np.linalg.norm(pos[i]) for i in range(6)))
        return 0.45 * dmin

    # -- verification -----------------------------------------------------
    def verify_symmetry(self, traj, type_class=None):
        """Max sample residual of every symmetry relation of the type.

        Returns (passed, report) where report maps a generator description
        to its residual; pass threshold is 1e-9 * epsilon.
        """
        ci = traj.type_class if type_class is None else type_class
        A = self.ring.representative(ci)
        n = traj.n_samples
        disp = traj.samples - traj.center[None, :]
        report = {}
        worst = 0.0
        for x in sorted(A.elements):
            refl, k, g = orbit_o2.decode(x)
            shift_num = k * n
            if shift_num % orbit_o2.GRID:
                raise SamplingError(
                    f"phase {k}/{orbit_o2.GRID} of a turn needs the sample count "
                    f"to be a multiple of {orbit_o2.GRID // math.gcd(k, orbit_o2.GRID)}"
                )
            s = shift_num // orbit_o2.GRID
            G = group_core.action_matrix_18(g)
            idx = (np.arange(n) - s) % n if refl == 0 else (s - np.arange(n)) % n
            res = float(np.max(np.linalg.norm(disp - disp[idx] @ G.T, axis=1)))
            report[_describe(x)] = res
            worst = max(worst, res)
        return worst < 1e-9 * traj.epsilon, report

    def nonlinear_residual(self, traj):
        """Peak norm of udotdot + grad U(u) along the trajectory."""
        worst = 0.0
        for row, t in zip(traj.samples, traj.times):
            acc = -traj.alpha ** 2 * (row - traj.center)
            g = force_field.gradient(self.params, row)
            worst = max(worst, float(np.linalg.norm(acc + g)))
        return worst

    def brake_velocity(self, traj):
        """Central-difference speed at the two turning phases t = 0 and pi."""
        n = traj.n_samples
        if n % 2:
            raise SamplingError("brake check needs an even sample count")
        dt = 2 * math.pi / n
        out = []
        for i in (0, n // 2):
            v = (traj.samples[(i + 1) % n] - traj.samples[i - 1]) / (2 * dt)
            out.append(float(np.linalg.norm(v)))
        return out

    def is_brake_type(self, type_class):
        """True when the type contains the bare time reversal."""
        A = self.ring.representative(type_class)
        return orbit_o2.encode(1, 0, group_core.IDENTITY) in A.elements


def _describe(element):
    refl, k, g = orbit_o2.decode(element)
    frac = ""
    if k:
        d = math.gcd(k, orbit_o2.GRID)
        frac = f"{k // d}/{orbit_o2.GRID // d}"
    kind = "refl" if refl else "rot"
    cyc = _cycle_string(group_core.PERM[g])
    return f"({kind}{(' ' + frac) if frac else ''}, {cyc})"


def _cycle_string(perm):
    seen = [False] * len(perm)
    parts = []
    for i in range(len(perm)):
        if seen[i] or perm[i] == i:
            seen[i] = True
            continue
        cyc = [i]
        seen[i] = True
        j = perm[i]
        while j != i:
            cyc.append(j)
            seen[j] = True
            j = perm[j]
        parts.append("(" + "".join(str(v + 1) for v in cyc) + ")")
    return "".join(parts) or "e"


# -- export -----------------------------------------------------------------

CSV_HEADER = "t," + ",".join(f"{c}{i}" for i in range(1, 7) for c in ("x", "y", "z"))


def export_trajectory(traj, path):
    """Write the sampled trajectory as CSV (17 significant digits)."""
    lines = [CSV_HEADER]
    for t, row in zip(traj.times, traj.samples):
        lines.append(",".join(format_float(v) for v in (t, *row)))
    with open(path, "w") as fh:
        fh.write("\n".join(lines) + "\n")
    return path


def read_trajectory(path):
    """Round-trip reader for exported CSV trajectories."""
    with open(path) as fh:
        header = fh.readline().strip()
        if header != CSV_HEADER:
            raise ConfigError(f"unexpected CSV header in {path}")
        rows = [[float(v) for v in line.split(",")] for line in fh if line.strip()]
    data = np.array(rows)
    return data[:, 0], data[:, 1:]


def mode_manifest(traj, verified, generator_report):
    doc = {
        "j": traj.j,
        "k": traj.k,
        "alpha": traj.alpha,
        "epsilon": traj.epsilon,
        "symmetry": traj.symmetry,
        "verified": verified,
        "verified_generators": sorted(generator_report),
    }
    return dumps(doc)
