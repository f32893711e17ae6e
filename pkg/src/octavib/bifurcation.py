"""Critical numbers, nonresonance, bifurcation invariants, and the census.

The invariant at the first critical number of isotypic block j is

    omega(j) = [ prod over (j',l') crossing earlier of deg_{j',l'} ]
               * ( deg_{j,1} - unit ),

a signed combination of orbit types; its maximal types with nonzero
coefficient name the symmetries of the bifurcating branches.  The global
sign follows the reference invariant listings (the difference of degrees
taken above-minus-below).

Two evaluation paths are provided and compared: the full product in the
orbit-type ring, and a truncation of every factor to the upper set of one
maximal type at a time (exact for that coefficient, and much cheaper).
"""

import math
from dataclasses import dataclass, field

from . import orbit_o2 as o2
from .errors import CatalogError, ConsistencyError, ResonanceError

ISOTYPIC = ("0", "4", "7", "7*", "8", "9")


@dataclass(frozen=True)
class CriticalNumber:
    j: str
    l: int
    value: float


def critical_set(alphas, lambda_max):
    """All critical numbers up to lambda_max, ascending; ties left adjacent.

    `alphas` maps isotypic labels to positive frequencies alpha_j.
    """
    out = []
    for j, a in alphas.items():
        if a <= 0:
            raise ResonanceError(f"alpha must be positive, got {a} for {j}")
        l = 1
        while l / a <= lambda_max:
            out.append(CriticalNumber(j, l, l / a))
            l += 1
    out.sort(key=lambda c: (c.value, c.j, c.l))
    return out


def ordering_ties(criticals, rel_tol=1e-9):
    """Groups of consecutive critical numbers equal within tolerance."""
    ties = []
    k = 0
    while k < len(criticals):
        m = k + 1
        while (
            m < len(criticals)
            and criticals[m].value - criticals[k].value
            <= rel_tol * criticals[k].value
        ):
            m += 1
        if m - k > 1:
            ties.append(tuple(criticals[k:m]))
        k = m
    return ties


def check_isotypic_nonresonance(report, tol=1e-9):
    """True when the six nonzero eigenvalues are distinct and uniquely labeled."""
    lines = [ln for ln in report.lines if ln.label != "6" and ln.alpha_sq > tol]
    labels = [ln.label for ln in lines]
    if len(set(labels)) != len(labels):
        dup = next(lb for lb in labels if labels.count(lb) > 1)
        return False, (dup, dup)
    scale = max(ln.alpha_sq for ln in lines)
    for i, a in enumerate(lines):
        for b in lines[i + 1 :]:
            if abs(a.alpha_sq - b.alpha_sq) <= tol * scale:
                return False, (a.label, b.label)
    return True, None


def factors_before(j_o, alphas):
    """(j, l) pairs with critical number strictly below lambda_{j_o,1}."""
    lam_o = 1.0 / alphas[j_o]
    out = []
    for j, a in alphas.items():
        l = 1
        while l / a < lam_o * (1 + 1e-9):
            v = l / a
            if (j, l) != (j_o, 1) and abs(v - lam_o) <= 1e-9 * lam_o:
                raise ResonanceError(
                    f"critical numbers lambda_({j},{l}) and lambda_({j_o},1) coincide"
                )
            if v < lam_o:
                out.append((j, l, v))
            l += 1
    out.sort(key=lambda t: t[2])
    return [(j, l) for j, l, _ in out]


def _degree_index(j):
    """7* shares the block-7 expansion (the two components are equivalent)."""
    return 7 if j == "7*" else int(j)


@dataclass
class BifurcationReport:
    j: str
    target: CriticalNumber
    factors: tuple
    invariant: object  # BurnsideElement over the orbit-type ring (full path)
    maximal_types: tuple  # ((label, coefficient, weyl_order), ...)
    fast_coefficients: dict  # label -> coefficient from the truncated path
    reference_labels: tuple = field(default=())

    def agreement(self):
        full = {lb: c for lb, c, _ in self.maximal_types}
        return full == self.fast_coefficients


class InvariantEngine:
    """Computes invariants over the orbit-type ring with degree caching."""

    def __init__(self, alphas):
        self.alphas = dict(alphas)
        missing = set(ISOTYPIC) - set(self.alphas)
        if missing:
            raise ConsistencyError(f"missing frequencies for {sorted(missing)}")
        self.ring = o2.ring()
        self._deg = {}
        self._maximal = {}

    # --- basic degrees -------------------------------------------------
    def degree(self, j, l=1):
        key = (_degree_index(j), l)
        if key not in self._deg:
            self._deg[key] = o2.basic_degree(*key)
        return self._deg[key]

    def maximal_classes(self, j, l=1):
        key = (_degree_index(j), l)
        if key not in self._maximal:
            classes = tuple(o2.maximal_orbit_types(*key))
            if l == 1:
                o2.pin_reference_labels(key[0], classes)
            self._maximal[key] = classes
        return self._maximal[key]

    # --- full product path ----------------------------------------------
    def invariant_full(self, j_o):
        unit = self.ring.unit()
        prod = unit
        for j, l in factors_before(j_o, self.alphas):
            prod = prod * self.degree(j, l)
        omega = prod * (self.degree(j_o, 1) - unit)
        return omega

    def maximal_terms(self, element):
        supp = list(element.coeffs)
        keep = [
            ci
            for ci in supp
            if not any(t != ci and self.ring.fixed_cosets(ci, t) > 0 for t in supp)
        ]
        keep.sort(key=lambda ci: (-self.ring.order_of(ci), self.ring.label_of(ci)))
        return tuple(
            (self.ring.label_of(ci), element.coeffs[ci], self.ring.weyl(ci))
            for ci in keep
        )

    # --- fast path: upper-set truncation ---------------------------------
    def upper_set(self, j_o, h_ci):
        """All catalog classes >= (H) at the modes touched by the invariant.

        Complete for the truncated product: every orbit type appearing in a
        factor or an intermediate product has temporal kernel dividing one
        of the factor modes, hence lives in the graph catalog.
        """
        R = self.ring
        factors = factors_before(j_o, self.alphas) + [(j_o, 1)]
        modes = set()
        for _, l in factors:
            modes.update(d for d in range(1, l + 1) if l % d == 0)
        pool = set()
        for l in sorted(modes):
            pool.update(o2.graph_classes(l))
        upper = {h_ci}
        for t_ci in pool:
            if t_ci != h_ci and R.fixed_cosets(h_ci, t_ci) > 0:
                upper.add(t_ci)
        return upper

    def _truncated_factor(self, j, l, upper):
        """Coefficients of deg_{j,l} on the classes of `upper` (exact)."""
        R = self.ring
        order = sorted(upper, key=lambda ci: -R.order_of(ci))
        out = {}
        for K in order:
            s = (-1) ** R.fixed_dim(_degree_index(j), l, K) - 1
            for Lt, nv in out.items():
                if Lt != K:
                    s -= R.fixed_cosets(K, Lt) * nv
            q, r = divmod(s, R.weyl(K))
            if r:
                raise ConsistencyError("truncated degree non-integral")
            if q:
                out[K] = q
        return (1, out)

    def _truncated_mult(self, x, y, upper, cache):
        ux, dx = x
        uy, dy = y
        out = {}
        for k, v in dx.items():
            out[k] = out.get(k, 0) + uy * v
        for k, v in dy.items():
            out[k] = out.get(k, 0) + ux * v
        R = self.ring
        for hk, hv in dx.items():
            for kk, kv in dy.items():
                key = (hk, kk) if hk <= kk else (kk, hk)
                if key not in cache:
                    cands = [
                        L
                        for L in upper
                        if R.fixed_cosets(L, hk) > 0 and R.fixed_cosets(L, kk) > 0
                    ]
                    cands.sort(key=lambda L: -R.order_of(L))
                    nn = {}
                    for L in cands:
                        s = R.fixed_cosets(L, hk) * R.fixed_cosets(L, kk)
                        for Lt, nv in nn.items():
                            if Lt != L:
                                s -= R.fixed_cosets(L, Lt) * nv
                        q, r = divmod(s, R.weyl(L))
                        if r:
                            raise ConsistencyError("truncated product non-integral")
                        if q:
                            nn[L] = q
                    cache[key] = nn
                for L, q in cache[key].items():
                    out[L] = out.get(L, 0) + hv * kv * q
        return (ux * uy, {k: v for k, v in out.items() if v})

    def fast_coefficient(self, j_o, h_ci):
        """Exact coefficient of (H) in the invariant via upper-set truncation."""
        upper = self.upper_set(j_o, h_ci)
        cache = {}
        prod = (1, {})
        for j, l in factors_before(j_o, self.alphas):
            prod = self._truncated_mult(
                prod, self._truncated_factor(j, l, upper), upper, cache
            )
        dj = self._truncated_factor(j_o, 1, upper)
        omega = self._truncated_mult(prod, (dj[0] - 1, dj[1]), upper, cache)
        return omega[1].get(h_ci, 0)

    # --- reports ----------------------------------------------------------
    def report(self, j_o, full=True):
        ok = all(self.alphas[j] > 0 for j in ISOTYPIC)
        if not ok:
            raise ResonanceError("invalid frequencies")
        target = CriticalNumber(j_o, 1, 1.0 / self.alphas[j_o])
        factors = tuple(factors_before(j_o, self.alphas))
        R = self.ring
        maximal = self.maximal_classes(j_o, 1)
        fast = {R.label_of(ci): self.fast_coefficient(j_o, ci) for ci in maximal}
        invariant = None
        maximal_terms = ()
        if full:
            invariant = R.pi0_truncate(self.invariant_full(j_o))
            maximal_terms = self.maximal_terms(invariant)
        else:
            maximal_terms = tuple(
                (R.label_of(ci), fast[R.label_of(ci)], R.weyl(ci)) for ci in maximal
            )
        return BifurcationReport(
            j=j_o,
            target=target,
            factors=factors,
            invariant=invariant,
            maximal_types=maximal_terms,
            fast_coefficients=fast,
            reference_labels=o2.reference_red_labels(_degree_index(j_o), 1),
        )

    def census(self):
        """The deduplicated maximal symmetry types over all isotypic blocks.

        j=7 and j=7* share one block; every type is reported with the list
        of blocks it belongs to and its (fast-path) coefficient per block.
        """
        R = self.ring
        seen = {}
        order = []
        for j in ("0", "4", "7", "8", "9"):
            for ci in self.maximal_classes(j, 1):
                coeff = self.fast_coefficient(j, ci)
                if coeff == 0:
                    raise ConsistencyError(
                        f"census type {R.label_of(ci)} has zero coefficient"
                    )
                if ci not in seen:
                    seen[ci] = []
                    order.append(ci)
                blocks = ["7", "7*"] if j == "7" else [j]
                for b in blocks:
                    seen[ci].append((b, coeff))
        return [
            {
                "label": R.label_of(ci),
                "order": R.order_of(ci),
                "weyl_order": R.weyl(ci),
                "blocks": [b for b, _ in seen[ci]],
                "coefficient": seen[ci][0][1],
            }
            for ci in order
        ]


def engine_from_spectrum(report):
    """Build the invariant engine from a labeled spectrum report."""
    flag, witness = check_isotypic_nonresonance(report)
    if not flag:
        raise ResonanceError(f"isotypic resonance between blocks {witness}")
    return InvariantEngine(report.alphas())


def reference_alphas():
    """Frequencies at the reference force-field parameters."""
    from . import force_field, spectral

    eq = force_field.find_equilibrium(force_field.REFERENCE_PARAMS)
    rep = spectral.spectrum_at_equilibrium(eq)
    return rep.alphas()
