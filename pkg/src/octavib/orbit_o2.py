"""Orbit types in the product of the temporal O(2) with the octahedral group.

Elements of the ambient group are encoded as integers: a triple
(refl, angle, g) with angle on a fixed fraction-of-turn grid (denominator
``GRID``), refl selecting rotation vs reflection in O(2), and g one of the
48 spatial elements.  All subgroup work (closure, conjugacy, normalizers,
fixed-coset counts) is exact integer arithmetic.

Conjugacy classes are interned in a registry; Burnside-ring products run
over it through the shared recurrence in :mod:`octavib.burnside`.

Every finite reflection-containing subgroup is conjugate to a cover of a
"character graph": a subgroup K of the spatial group, a U(1)-character chi
pairing each k with the rotation angle chi(k), and a reflection extension.
Enumerating those triples yields the complete list of orbit types with
finite Weyl group at a given Fourier mode, which is how the maximal orbit
types of each irreducible block are found (and cross-checked against the
reference lists).
"""

from collections import Counter
from dataclasses import dataclass
from functools import lru_cache

from . import group_core as gc
from .burnside import BurnsideRing
from .errors import CatalogError, ConsistencyError

GRID = 10080  # angle denominator: covers D_{2nl} for n <= 8, modes l <= 8

N = gc.N
_IDENT = gc.IDENTITY


def encode(refl, k, g):
    return (refl * GRID + k % GRID) * N + g


def decode(code):
    g = code % N
    ek = code // N
    return ek // GRID, ek % GRID, g


IDENTITY = encode(0, 0, _IDENT)


def multiply(x, y):
    ex, kx, gx = decode(x)
    ey, ky, gy = decode(y)
    return encode(ex ^ ey, kx + (ky if ex == 0 else -ky), gc.MUL[gx][gy])


def inverse(x):
    e, k, g = decode(x)
    return encode(e, -k if e == 0 else k, gc.INV[g])


def conjugate(x, c):
    """c x c^-1."""
    ec, kc, gcpart = decode(c)
    ex, kx, gx = decode(x)
    gg = gc.MUL[gc.MUL[gcpart][gx]][gc.INV[gcpart]]
    if ec == 0:
        return encode(ex, kx if ex == 0 else kx + 2 * kc, gg)
    return encode(ex, -kx if ex == 0 else 2 * kc - kx, gg)


def closure(gens):
    elems = {IDENTITY, *gens}
    frontier = list(elems)
    while frontier:
        nxt = []
        for x in frontier:
            for y in list(elems):
                for z in (multiply(x, y), multiply(y, x)):
                    if z not in elems:
                        elems.add(z)
                        nxt.append(z)
        frontier = nxt
    return frozenset(elems)


def rotation(k, g=_IDENT):
    return encode(0, k, g)


def reflection(k=0, g=_IDENT):
    return encode(1, k, g)


def temporal(turn_num, turn_den, g=_IDENT, refl=False):
    """Element with O(2) part a turn_num/turn_den turn (reflection if asked)."""
    if (GRID * turn_num) % turn_den:
        raise CatalogError(
            f"angle {turn_num}/{turn_den} is off the 1/{GRID} grid",
            missing=(turn_num, turn_den),
        )
    return encode(1 if refl else 0, GRID * turn_num // turn_den, g)


@lru_cache(maxsize=None)
def _element_order(x):
    y, n = x, 1
    while y != IDENTITY:
        y = multiply(y, x)
        n += 1
    return n


def reflections_of(A):
    return [x for x in A if decode(x)[0] == 1]


def rotations_of(A):
    return [x for x in A if decode(x)[0] == 0]


def profile(A):
    """Cheap conjugacy invariant."""
    cnt = Counter(
        (decode(x)[0], _element_order(x), gc.ELEMENT_CLASS[decode(x)[2]]) for x in A
    )
    return (len(A), tuple(sorted(cnt.items())))


def _refl_by_spatial(H):
    d = {}
    for x in reflections_of(H):
        _, k, g = decode(x)
        d.setdefault(g, []).append(k)
    return d


def _alignment_candidates(L, H, refl_h_by_spatial):
    """Conjugators c that can map L into H, pinned by one reflection of L."""
    refl_l = reflections_of(L)
    if not refl_l:
        raise ConsistencyError("alignment needs a reflection-containing subgroup")
    x0 = refl_l[0]
    _, k0, g0 = decode(x0)
    out = set()
    for g in range(N):
        # rotation conjugator (0,kc,g): c^-1 x0 c = (1, k0 - 2 kc, g^-1 g0 g)
        h = gc.MUL[gc.MUL[gc.INV[g]][g0]][g]
        for kb in refl_h_by_spatial.get(h, ()):
            d = (k0 - kb) % GRID
            if d % 2 == 0:
                out.add(encode(0, d // 2, g))
                out.add(encode(0, d // 2 + GRID // 2, g))
        # reflection conjugator (1,kc,g): c x0 c^-1 = (1, 2 kc - k0, g g0 g^-1)
        h2 = gc.MUL[gc.MUL[g][g0]][gc.INV[g]]
        for kb in refl_h_by_spatial.get(h2, ()):
            d = (k0 + kb) % GRID
            if d % 2 == 0:
                out.add(encode(1, d // 2, g))
                out.add(encode(1, d // 2 + GRID // 2, g))
    return out


class ConcreteSubgroup:
    """Finite subgroup of the ambient group, with exact conjugacy tooling."""

    __slots__ = ("elements", "_profile")

    def __init__(self, elements):
        self.elements = frozenset(elements)
        self._profile = None

    @classmethod
    def generated(cls, gens):
        return cls(closure(gens))

    def __len__(self):
        return len(self.elements)

    def __eq__(self, other):
        return isinstance(other, ConcreteSubgroup) and self.elements == other.elements

    def __hash__(self):
        return hash(self.elements)

    def profile(self):
        if self._profile is None:
            self._profile = profile(self.elements)
        return self._profile

    def has_reflection(self):
        return any(decode(x)[0] == 1 for x in self.elements)

    def conjugated(self, c):
        return ConcreteSubgroup(conjugate(x, c) for x in self.elements)

    def conjugators_onto(self, other):
        """All c with c self c^-1 == other."""
        A, B = self.elements, other.elements
        if len(A) != len(B):
            return []
        by_spat = _refl_by_spatial(A)
        out = []
        for c in _alignment_candidates(B, A, by_spat):
            ci = inverse(c)
            if all(conjugate(x, ci) in A for x in B):
                if all(conjugate(x, c) in B for x in A):
                    out.append(c)
        return out

    def is_conjugate(self, other):
        if self.elements == other.elements:
            return True
        if self.profile() != other.profile():
            return False
        return bool(self.conjugators_onto(other))

    def weyl_order(self):
        """|N(A)/A| in the full ambient group; None when infinite."""
        if not self.has_reflection():
            return None  # a circle of rotations centralizes the subgroup
        n = len(self.conjugators_onto(self))
        if n % len(self.elements):
            raise ConsistencyError("normalizer size not divisible by group order")
        return n // len(self.elements)

    def truncated_weyl_order(self, m):
        """Brute-force Weyl order inside the dihedral-m truncation (oracle)."""
        if GRID % m:
            raise CatalogError(f"truncation order {m} off the grid")
        step = GRID // m
        n = 0
        for e in (0, 1):
            for k in range(0, GRID, step):
                for g in range(N):
                    c = encode(e, k, g)
                    if all(conjugate(x, c) in self.elements for x in self.elements):
                        n += 1
        return n // len(self.elements)

    # structural projections used for symbol rendering -----------------
    def spatial_projection(self):
        return sorted({decode(x)[2] for x in self.elements})

    def spatial_kernel(self):
        return sorted({decode(x)[2] for x in self.elements if decode(x)[:2] == (0, 0)})

    def temporal_projection(self):
        rots = {decode(x)[1] for x in self.elements if decode(x)[0] == 0}
        return ("D" if self.has_reflection() else "Z", len(rots))

    def temporal_kernel(self):
        over_id = [x for x in self.elements if decode(x)[2] == _IDENT]
        rots = {decode(x)[1] for x in over_id if decode(x)[0] == 0}
        refl = any(decode(x)[0] == 1 for x in over_id)
        return ("D" if refl else "Z", len(rots))


def mode_cover(subgroup, l):
    """Preimage of a mode-1 group under the l-fold temporal cover."""
    if GRID % l:
        raise CatalogError(f"mode {l} off the 1/{GRID} grid")
    out = []
    for x in subgroup.elements:
        e, k, g = decode(x)
        for m in range(l):
            num = k + m * GRID
            if num % l == 0:
                out.append(encode(e, num // l, g))
    return ConcreteSubgroup(out)


# ---------------------------------------------------------------------------
# amalgam symbols
# ---------------------------------------------------------------------------

_SPATIAL_LABEL_CACHE = {}


def _spatial_label(ids):
    key = tuple(ids)
    if key not in _SPATIAL_LABEL_CACHE:
        cat = gc.catalog()
        mask = 0
        for g in ids:
            mask |= 1 << g
        _SPATIAL_LABEL_CACHE[key] = cat.classes[cat.class_of_mask[mask]].label
    return _SPATIAL_LABEL_CACHE[key]


_ABSTRACT_NAME = {
    (1, False): "Z_1", (1, True): "D_1", (2, False): "Z_2", (2, True): "D_2",
    (3, False): "Z_3", (3, True): "D_3", (4, False): "Z_4", (4, True): "D_4",
    (6, False): "Z_6", (6, True): "D_6", (8, True): "D_8", (12, True): "D_12",
}


def amalgam_symbol(subgroup):
    """Render the orbit-type symbol ``H^{Ho} x_{L}^{Ko} K`` of a subgroup."""
    hk, hm = subgroup.temporal_projection()
    ok, om = subgroup.temporal_kernel()
    K = _spatial_label(subgroup.spatial_projection())
    Ko = _spatial_label(subgroup.spatial_kernel())
    H = f"{hk}_{hm}"
    Ho = f"{ok}_{om}"
    untwisted = hk == ok and hm == om
    if untwisted:
        if Ko == K:
            return f"{H} x {K}"
        return f"{H} x^{{{Ko}}} {K}"
    # quotient size |H/Ho|
    hsize = (2 if hk == "D" else 1) * hm
    osize = (2 if ok == "D" else 1) * om
    q = hsize // osize
    if Ko == "Z_1":
        return f"{H}^{{{Ho}}} x_{{{K}}} {K}"
    if q == 2:
        return f"{H}^{{{Ho}}} x^{{{Ko}}} {K}"
    quot = _ABSTRACT_NAME.get((q // 2, True), f"?_{q}")
    return f"{H}^{{{Ho}}} x_{{{quot}}}^{{{Ko}}} {K}"


# ---------------------------------------------------------------------------
# the Burnside ring over the registry of conjugacy classes
# ---------------------------------------------------------------------------


class TemporalOctahedralRing(BurnsideRing):
    """A(O(2) x octahedral group), restricted to finite-Weyl orbit types."""

    unit_label = "O(2) x S_4^p"

    def __init__(self):
        self._reps = []       # class id -> ConcreteSubgroup
        self._profiles = []
        self._by_set = {}
        self._weyl = {}
        self._sub = {}
        self._fix = {}
        self._graph_classes = {}
        self._pinned = {}

    def pin_label(self, ci, label):
        """Fix the rendered symbol of a class (reference spelling)."""
        self._pinned[ci] = label

    # registry ---------------------------------------------------------
    def _profile(self, ci):
        if self._profiles[ci] is None:
            self._profiles[ci] = self._reps[ci].profile()
        return self._profiles[ci]

    def find_class(self, subgroup):
        key = subgroup.elements
        if key in self._by_set:
            return self._by_set[key]
        p = subgroup.profile()
        size = len(subgroup)
        for ci, rep in enumerate(self._reps):
            if len(rep) != size:
                continue
            if self._profile(ci) == p and rep.is_conjugate(subgroup):
                self._by_set[key] = ci
                return ci
        self._reps.append(subgroup)
        self._profiles.append(p)
        ci = len(self._reps) - 1
        self._by_set[key] = ci
        return ci

    def register_cover(self, base_ci, l):
        """Class of the l-fold temporal cover of a registered mode-1 class.

        Covers of non-conjugate classes are non-conjugate and their kernels
        distinguish them from every mode-1 class, so they are interned
        directly without a conjugacy scan.
        """
        key = ("cover", base_ci, l)
        if key in self._by_set:
            return self._by_set[key]
        cov = mode_cover(self._reps[base_ci], l)
        if cov.elements in self._by_set:
            ci = self._by_set[cov.elements]
        else:
            self._reps.append(cov)
            self._profiles.append(None)
            ci = len(self._reps) - 1
            self._by_set[cov.elements] = ci
        self._by_set[key] = ci
        return ci

    def representative(self, ci):
        return self._reps[ci]

    # ring hooks ---------------------------------------------------------
    def weyl(self, ci):
        if ci not in self._weyl:
            self._weyl[ci] = self._reps[ci].weyl_order()
        w = self._weyl[ci]
        if w is None:
            raise ConsistencyError("infinite Weyl group inside Burnside arithmetic")
        return w

    def finite_weyl(self, ci):
        if ci not in self._weyl:
            self._weyl[ci] = self._reps[ci].weyl_order()
        return self._weyl[ci] is not None

    def order_of(self, ci):
        return len(self._reps[ci])

    def label_of(self, ci):
        if ci in self._pinned:
            return self._pinned[ci]
        return amalgam_symbol(self._reps[ci])

    def temporal_kernel_order(self, ci):
        return len(
            [
                x
                for x in self._reps[ci].elements
                if decode(x)[0] == 0 and decode(x)[2] == _IDENT
            ]
        )

    def candidate_subtypes(self, ci):
        """Classes subconjugate to ci, drawn from the complete catalog.

        Every finite orbit type with temporal kernel of order l appears in
        ``graph_classes(l)``, so the catalog over the divisors of ci's
        kernel order is a complete candidate pool.
        """
        if ci not in self._sub:
            lH = self.temporal_kernel_order(ci)
            pool = set()
            for l in range(1, lH + 1):
                if lH % l == 0:
                    pool.update(graph_classes(l))
            pool.add(ci)
            self._sub[ci] = sorted(
                L for L in pool if self.fixed_cosets(L, ci) > 0
            )
        return self._sub[ci]

    def fixed_cosets(self, L, H):
        """|(G/H)^L| = (number of conjugates of H containing L) * |W(H)|."""
        key = (L, H)
        if key in self._fix:
            return self._fix[key]
        val = 0
        a, b = self._reps[L], self._reps[H]
        if len(b) % len(a) == 0:
            by_spat = _refl_by_spatial(b.elements)
            hits = set()
            for c in _alignment_candidates(a.elements, b.elements, by_spat):
                ci = inverse(c)
                if all(conjugate(x, ci) in b.elements for x in a.elements):
                    hits.add(b.conjugated(c).elements)
            val = len(hits) * self.weyl(H)
        self._fix[key] = val
        return val

    # characters / fixed dimensions --------------------------------------
    def fixed_dim(self, j, l, ci):
        """dim of the fixed space of class ci in irrep-j Fourier-mode-l.

        Individual rotation terms 2 cos(2 pi l k / GRID) may be irrational,
        but the group average is an integer; a strict snap guards precision.
        """
        import math

        total = 0.0
        for x in self._reps[ci].elements:
            e, k, g = decode(x)
            if e:
                continue  # temporal reflections act with zero trace
            c2 = 2.0 * math.cos(2.0 * math.pi * ((l * k) % GRID) / GRID)
            total += c2 * gc.CHARACTER_TABLE[j][gc.ELEMENT_CLASS[g]]
        q = total / len(self._reps[ci])
        if abs(q - round(q)) > 1e-9:
            raise ConsistencyError(f"non-integral fixed dimension {q}")
        return int(round(q))


_RING = None


def ring():
    global _RING
    if _RING is None:
        _RING = TemporalOctahedralRing()
    return _RING


# ---------------------------------------------------------------------------
# graph-subgroup enumeration: the complete mode-l orbit-type family
# ---------------------------------------------------------------------------


def _characters_of(mask):
    """All homomorphisms from the spatial subgroup to the angle grid."""
    els = gc.mask_elements(mask)
    gens = []
    got = {gc.IDENTITY}
    for g in sorted(els, key=lambda i: -_element_order(encode(0, 0, i))):
        if g not in got:
            gens.append(g)
            got = set(gc.mask_elements(gc.closure_mask(gens)))
            if len(got) == len(els):
                break
    sols = []

    def extend(assign):
        chi = {gc.IDENTITY: 0}
        frontier = [gc.IDENTITY]
        while frontier:
            nxt = []
            for x in frontier:
                for g in gens:
                    y = gc.MUL[g][x]
                    v = (assign[g] + chi[x]) % GRID
                    if y not in chi:
                        chi[y] = v
                        nxt.append(y)
                    elif chi[y] != v:
                        return
            frontier = nxt
        if len(chi) == len(els):
            sols.append(chi)

    def backtrack(i, assign):
        if i == len(gens):
            extend(assign)
            return
        g = gens[i]
        step = GRID // _element_order(encode(0, 0, g))
        for k in range(0, GRID, step):
            assign[g] = k
            backtrack(i + 1, assign)
        del assign[g]

    backtrack(0, {})
    uniq = {tuple(sorted(c.items())) for c in sols}
    return [dict(u) for u in uniq]


def graph_classes(l=1):
    """Class ids of every finite-Weyl orbit type at Fourier mode l."""
    R = ring()
    if l in R._graph_classes:
        return R._graph_classes[l]
    if l > 1:
        out = {R.register_cover(ci, l) for ci in graph_classes(1)}
        R._graph_classes[l] = sorted(out)
        return R._graph_classes[l]
    cat = gc.catalog()
    out = set()
    for cls in cat.classes:
        K = cls.mask
        els = gc.mask_elements(K)
        for chi in _characters_of(K):
            for t in range(N):
                if gc.conj_mask(K, t) != K:
                    continue
                if not K >> gc.MUL[t][t] & 1:
                    continue
                if any(
                    chi[gc.MUL[gc.MUL[t][x]][gc.INV[t]]] != (-chi[x]) % GRID
                    for x in els
                ):
                    continue
                gens = [encode(0, chi[x], x) for x in els] + [encode(1, 0, t)]
                out.add(R.find_class(ConcreteSubgroup.generated(gens)))
    R._graph_classes[l] = sorted(out)
    return R._graph_classes[l]


def maximal_orbit_types(j, l=1):
    """Maximal finite-Weyl orbit types of irrep j at mode l, by fixed spaces."""
    R = ring()
    cands = [ci for ci in graph_classes(l) if R.fixed_dim(j, l, ci) >= 1]
    return [
        ci
        for ci in cands
        if not any(t != ci and R.fixed_cosets(ci, t) > 0 for t in cands)
    ]


def basic_degree(j, l=1):
    """Antipodal-map degree on the ball of irrep-j mode-l, by the recurrence.

    Computed over the downward closure of the maximal orbit types; the unit
    coefficient is +1 and every division is checked exact.
    """
    R = ring()
    cand = set()
    for ci in maximal_orbit_types(j, l):
        cand |= set(R.candidate_subtypes(ci))
    order = sorted(cand, key=lambda ci: -R.order_of(ci))
    out = {}
    for K in order:
        s = (-1) ** R.fixed_dim(j, l, K) - 1
        for Lt, n in out.items():
            if Lt != K:
                s -= R.fixed_cosets(K, Lt) * n
        q, r = divmod(s, R.weyl(K))
        if r:
            raise ConsistencyError(
                f"basic degree non-integral at {R.label_of(K)}: {s}/{R.weyl(K)}"
            )
        if q:
            out[K] = q
    return R.element(1, out)


# ---------------------------------------------------------------------------
# symbolic orbit-type families and the reference expansions
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class OrbitTypeO2:
    """Symbolic amalgamated family, scaling with the Fourier mode."""

    o2_kind: str          # "D" or "Z"
    o2_scale: int         # temporal order is o2_scale * l
    o2_kernel: str        # "full", "Z_l", "D_l", "Z_1"
    spatial: str          # catalog label of K
    spatial_kernel: str   # catalog label of K_o ("full" for product types)
    quotient: str = ""    # informative; "" when forced

    def label(self, l=1):
        m = self.o2_scale * l
        H = f"{self.o2_kind}_{m}"
        if self.o2_kernel == "full":
            if self.spatial_kernel in ("full", self.spatial):
                return f"{H} x {self.spatial}"
            return f"{H} x^{{{self.spatial_kernel}}} {self.spatial}"
        Ho = {"Z_l": f"Z_{l}", "D_l": f"D_{l}", "Z_1": "Z_1"}[self.o2_kernel]
        if self.spatial_kernel == "Z_1":
            return f"{H}^{{{Ho}}} x_{{{self.spatial}}} {self.spatial}"
        if self.quotient and self.spatial_kernel == "Z_1^p":
            # central spatial kernel is left implicit in the reference symbols
            return f"{H}^{{{Ho}}} x_{{{self.quotient}}} {self.spatial}"
        if self.quotient:
            return f"{H}^{{{Ho}}} x_{{{self.quotient}}}^{{{self.spatial_kernel}}} {self.spatial}"
        return f"{H}^{{{Ho}}} x^{{{self.spatial_kernel}}} {self.spatial}"


def _fam(kind, scale, kernel, spatial, spatial_kernel, quotient=""):
    return OrbitTypeO2(kind, scale, kernel, spatial, spatial_kernel, quotient)


# the reference l-parametrized basic-degree expansions; (coefficient, red, family)
REFERENCE_EXPANSIONS = {
    0: ((-1, True, _fam("D", 1, "full", "S_4^p", "full")),),
    4: (
        (4, False, _fam("D", 1, "Z_l", "D_4^p", "V_4^p")),
        (1, False, _fam("D", 1, "full", "V_4^p", "full")),
        (-1, True, _fam("D", 2, "D_l", "D_4^p", "V_4^p")),
        (-1, True, _fam("D", 1, "full", "D_4^p", "full")),
        (-2, True, _fam("D", 3, "Z_l", "S_4^p", "V_4^p", "D_3")),
    ),
    7: (
        (-2, False, _fam("D", 2, "Z_l", "Z_2^p", "Z_1")),
        (-1, False, _fam("D", 2, "D_l", "Z_1^p", "Z_1")),
        (2, False, _fam("D", 2, "Z_l", "D_2^p", "D_1^z", "D_2")),
        (2, False, _fam("D", 2, "Z_l", "D_2^p", "Z_2^-", "D_2")),
        (2, False, _fam("D", 2, "Z_l", "V_4^p", "Z_2^-", "D_2")),
        (2, False, _fam("D", 2, "D_l", "D_1^p", "D_1^z")),
        (1, False, _fam("D", 2, "D_l", "Z_2^p", "Z_2^-")),
        (-2, True, _fam("D", 6, "Z_l", "D_3^p", "Z_1")),
        (-2, True, _fam("D", 4, "Z_l", "D_4^p", "Z_2^-")),
        (-1, True, _fam("D", 2, "D_l", "D_2^p", "D_2^d")),
        (-1, True, _fam("D", 2, "D_l", "D_3^p", "D_3^z")),
        (-1, True, _fam("D", 2, "D_l", "D_4^p", "D_4^z")),
    ),
    8: (
        (-2, False, _fam("D", 1, "Z_l", "Z_2^p", "Z_1^p")),
        (-1, False, _fam("D", 1, "full", "Z_1^p", "full")),
        (2, False, _fam("D", 1, "Z_l", "D_2^p", "D_1^p")),
        (2, False, _fam("D", 2, "Z_l", "D_2^p", "Z_1^p", "D_2")),
        (2, False, _fam("D", 2, "Z_l", "V_4^p", "Z_1^p", "V_4")),
        (2, False, _fam("D", 1, "full", "D_1^p", "full")),
        (1, False, _fam("D", 2, "D_l", "Z_2^p", "Z_1^p")),
        (-2, True, _fam("D", 3, "Z_l", "D_3^p", "Z_1^p", "D_3")),
        (-2, True, _fam("D", 4, "Z_l", "D_4^p", "Z_1^p", "D_4")),
        (-1, True, _fam("D", 2, "D_l", "D_2^p", "D_1^p")),
        (-1, True, _fam("D", 1, "full", "D_3^p", "full")),
        (-1, True, _fam("D", 2, "D_l", "D_4^p", "D_2^p")),
    ),
    9: (
        (-2, False, _fam("D", 2, "Z_l", "Z_2^p", "Z_1")),
        (-1, False, _fam("D", 2, "D_l", "Z_1^p", "Z_1")),
        (2, False, _fam("D", 2, "Z_l", "D_2^p", "D_1", "Z_2^p")),
        (2, False, _fam("D", 2, "Z_l", "D_2^p", "Z_2^-", "D_2")),
        (2, False, _fam("D", 2, "Z_l", "V_4^p", "Z_2^-", "D_2")),
        (2, False, _fam("D", 2, "D_l", "D_1^p", "D_1")),
        (1, False, _fam("D", 2, "D_l", "Z_2^p", "Z_2^-")),
        (-2, True, _fam("D", 6, "Z_l", "D_3^p", "Z_1")),
        (-2, True, _fam("D", 4, "Z_l", "D_4^p", "Z_2^-")),
        (-1, True, _fam("D", 2, "D_l", "D_2^p", "D_2^d")),
        (-1, True, _fam("D", 2, "D_l", "D_3^p", "D_3")),
        (-1, True, _fam("D", 2, "D_l", "D_4^p", "D_4^d")),
    ),
}


def reference_red_labels(j, l=1):
    """Maximal-type labels of the reference expansion for irrep j at mode l."""
    return tuple(f.label(l) for _, red, f in REFERENCE_EXPANSIONS[j] if red)


def _family_matches(family, subgroup, l=1):
    hk, hm = subgroup.temporal_projection()
    if (hk, hm) != (family.o2_kind, family.o2_scale * l):
        return False
    ok, om = subgroup.temporal_kernel()
    want = {
        "full": (hk, hm),
        "Z_l": ("Z", l),
        "D_l": ("D", l),
        "Z_1": ("Z", 1),
    }[family.o2_kernel]
    if (ok, om) != want:
        return False
    if _spatial_label(subgroup.spatial_projection()) != family.spatial:
        return False
    ko = family.spatial_kernel if family.spatial_kernel != "full" else family.spatial
    return _spatial_label(subgroup.spatial_kernel()) == ko


def pin_reference_labels(j, class_ids, l=1):
    """Pin computed maximal classes to the reference symbol spellings.

    Returns the pinned labels; raises when a reference family matches zero
    or several of the given classes (ambiguity is surfaced, not guessed).
    """
    R = ring()
    out = {}
    for _, red, fam in REFERENCE_EXPANSIONS[j]:
        if not red:
            continue
        hits = [ci for ci in class_ids if _family_matches(fam, R.representative(ci), l)]
        if len(hits) != 1:
            raise ConsistencyError(
                f"reference family {fam.label(l)} matches {len(hits)} classes"
            )
        R.pin_label(hits[0], fam.label(l))
        out[hits[0]] = fam.label(l)
    return out


def instantiate(family, l=1):
    """Concrete realizations of a symbolic family at mode l.

    Enumerates all kernel choices and quotient identifications, deduplicates
    up to conjugacy, and returns the distinct classes.  Ambiguous labels
    (more than one class) are returned in full rather than guessed.
    """
    R = ring()
    cat = gc.catalog()
    K_cls = cat.by_label(family.spatial)
    K = K_cls.mask
    els = gc.mask_elements(K)
    m = family.o2_scale * l
    if family.o2_kind != "D":
        raise CatalogError("only dihedral temporal families instantiate")
    if GRID % (2 * m):
        raise CatalogError(f"temporal order {m} off the grid", missing=family)

    results = set()
    if family.o2_kernel == "full":
        if family.spatial_kernel not in ("full", family.spatial):
            raise CatalogError(
                f"untwisted temporal part requires an untwisted spatial part: "
                f"{family.label(l)}"
            )
        gens = [encode(0, GRID // m, _IDENT), encode(1, 0, _IDENT)]
        gens += [encode(0, 0, g) for g in els]
        results.add(R.find_class(ConcreteSubgroup.generated(gens)))
    else:
        # twisted family: match against the complete graph-class enumeration
        hsize = 2 * m
        osize = {"Z_l": l, "D_l": 2 * l, "Z_1": 1}[family.o2_kernel]
        lsize = hsize // osize  # |L| = |H| / |H_o| = |K| / |K_o|
        ko_label = family.spatial_kernel
        if ko_label not in ("full", family.spatial):
            ko_order = cat.by_label(ko_label).order
            if K_cls.order != lsize * ko_order:
                raise CatalogError(
                    f"malformed amalgam {family.label(l)}: quotient sizes "
                    f"{lsize} vs {K_cls.order}/{ko_order} do not match"
                )
        target_order = hsize * K_cls.order // lsize
        for ci in graph_classes(l):
            rep = R.representative(ci)
            if len(rep) != target_order:
                continue
            hk, hm = rep.temporal_projection()
            if (hk, hm) != (family.o2_kind, m):
                continue
            if _spatial_label(rep.spatial_projection()) != family.spatial:
                continue
            ok, om = rep.temporal_kernel()
            want = {"Z_l": ("Z", l), "D_l": ("D", l), "Z_1": ("Z", 1)}[family.o2_kernel]
            if (ok, om) != want:
                continue
            Ko_want = family.spatial_kernel
            if Ko_want == "full":
                Ko_want = family.spatial
            if _spatial_label(rep.spatial_kernel()) != Ko_want:
                continue
            results.add(ci)
    return sorted(results)
