"""Graded free complexes: Koszul complexes, shifts, cones, tensor products,
homology presentations, supports, and split-summand minimization.

A FreeComplex stores generator twists per homological degree and differentials
d_s: C_s -> C_{s-1}.  d^2 = 0 is asserted on construction (a hard error), with
entries reduced modulo the ring's relations when present.  meta may carry an
authoritative homology range (lo, hi) for truncated windows.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .errors import ComplexInvariantError, InhomogeneousInput, NotAChainMap
from .gradedmatrix import GradedMatrix
from .groebner import (
    annihilator,
    elem_from_column,
    ideal_intersection,
    krull_dimension,
    minimal_generators,
    module_hilbert_function,
    radical_membership,
    submodule_preimage,
    syzygy_kernel,
    SliceSpans,
    elem_degree,
)
from .polyring import GradedRing, Polynomial


class FreeComplex:
    def __init__(self, ring: GradedRing, twists, diffs, meta=None, validate=True):
        self.ring = ring
        self.twists: dict[int, tuple[int, ...]] = {
            s: tuple(t) for s, t in twists.items() if len(t) > 0
        }
        self.diffs: dict[int, GradedMatrix] = {}
        for s, m in diffs.items():
            if s in self.twists and (s - 1) in self.twists:
                self.diffs[s] = m.reduced()
        self.meta = dict(meta or {})
        if validate:
            self.validate()

    # -- structure ----------------------------------------------------------

    def degrees(self) -> list[int]:
        return sorted(self.twists)

    def rank(self, s: int) -> int:
        return len(self.twists.get(s, ()))

    def twist(self, s: int) -> tuple[int, ...]:
        return self.twists.get(s, ())

    def diff(self, s: int) -> GradedMatrix:
        """d_s: C_s -> C_{s-1}; a zero matrix when absent."""
        if s in self.diffs:
            return self.diffs[s]
        return GradedMatrix.zero(self.ring, self.twist(s - 1), self.twist(s))

    def homology_range(self):
        return self.meta.get("homology_range")

    def is_zero(self) -> bool:
        return not self.twists

    def total_rank(self) -> int:
        return sum(len(t) for t in self.twists.values())

    def validate(self):
        for s, m in self.diffs.items():
            if m.row_twists != self.twist(s - 1) or m.col_twists != self.twist(s):
                raise ComplexInvariantError(f"differential at degree {s} has wrong shape")
            m.validate_homogeneous()
        for s in self.diffs:
            if (s + 1) in self.diffs:
                comp = self.diffs[s].compose(self.diffs[s + 1])
                if not comp.is_zero():
                    raise ComplexInvariantError(f"d_{s} o d_{s + 1} != 0")

    def __eq__(self, other):
        return (
            isinstance(other, FreeComplex)
            and self.ring == other.ring
            and self.twists == other.twists
            and {s: m for s, m in self.diffs.items() if not m.is_zero()}
            == {s: m for s, m in other.diffs.items() if not m.is_zero()}
        )

    def __repr__(self):
        parts = ", ".join(f"{s}:{self.rank(s)}" for s in self.degrees())
        return f"FreeComplex({parts})"


@dataclass
class ChainMap:
    """Degree-`degree` map source -> target with optional internal twist.

    Component at s maps source_s -> target_{s+degree}; the sign rule is
    d^T a = (-1)^degree a d^S.  internal_twist is the internal degree the map
    raises (entries of component s are homogeneous of source_twist +
    internal_twist - target_twist).
    """

    source: FreeComplex
    target: FreeComplex
    degree: int
    components: dict[int, GradedMatrix]
    internal_twist: int = 0

    def component(self, s: int) -> GradedMatrix:
        if s in self.components:
            return self.components[s]
        ring = self.source.ring
        rows = tuple(t - self.internal_twist for t in self.target.twist(s + self.degree))
        return GradedMatrix.zero(ring, rows, self.source.twist(s))

    def validate(self):
        ring = self.source.ring
        d = self.degree
        for s, m in self.components.items():
            want_rows = tuple(t - self.internal_twist for t in self.target.twist(s + d))
            if m.col_twists != self.source.twist(s) or m.row_twists != want_rows:
                raise NotAChainMap(f"component at degree {s} has wrong shape")
            m.validate_homogeneous()
        degrees = set(self.source.twists) | {s for s in self.components}
        sgn = (-1) ** d
        for s in sorted(degrees):
            lhs = self.target.diff(s + d).compose(self.component(s))
            rhs = self.component(s - 1).compose(self.source.diff(s))
            delta: dict[tuple[int, int], Polynomial] = dict(lhs.entries)
            for k, v in rhs.entries.items():
                cur = delta.get(k)
                w = v.scale(-sgn)
                delta[k] = w if cur is None else cur + w
            for v in delta.values():
                if not ring.nf(v).is_zero():
                    raise NotAChainMap(f"square at degree {s} does not commute")
        return self


def koszul_complex(ring: GradedRing, elements, with_labels: bool = True) -> FreeComplex:
    """Exterior algebra on |elements| generators with d(xi_i) = elements[i].

    Basis in degree i: size-i subsets of {0..n-1} in lexicographic order;
    d(xi_S) = sum_{j in S} sign(j, S) * f_j * xi_{S - j}.
    """
    f = list(elements)
    for g in f:
        if not ring.base_ring().is_homogeneous(g) or g.is_zero():
            raise InhomogeneousInput("Koszul input must be homogeneous and nonzero")
    degs = [ring.base_ring().degree(g) for g in f]
    n = len(f)
    subsets = {i: list(itertools.combinations(range(n), i)) for i in range(n + 1)}
    index = {i: {S: k for k, S in enumerate(subsets[i])} for i in subsets}
    twists = {i: tuple(sum(degs[j] for j in S) for S in subsets[i]) for i in range(n + 1)}
    diffs = {}
    for i in range(1, n + 1):
        entries = {}
        for col, S in enumerate(subsets[i]):
            for pos, j in enumerate(S):
                rest = tuple(x for x in S if x != j)
                sign = (-1) % ring.prime if pos % 2 else 1
                row = index[i - 1][rest]
                val = f[j].scale(sign)
                cur = entries.get((row, col))
                entries[(row, col)] = val if cur is None else cur + val
        diffs[i] = GradedMatrix(ring, twists[i - 1], twists[i], entries)
    meta = {}
    if with_labels:
        meta["labels"] = {i: [str(S) for S in subsets[i]] for i in range(n + 1)}
        meta["koszul_elements"] = tuple(f)
    return FreeComplex(ring, twists, diffs, meta)


def shift_complex(c: FreeComplex, i: int) -> FreeComplex:
    """Suspension: (S^i C)_n = C_{n-i}, differential scaled by (-1)^i.

    The module-action twist sign (-1)^{|a| i} for DG consumers is recorded in
    meta["shift_action_sign"].
    """
    twists = {s + i: t for s, t in c.twists.items()}
    sign = (-1) ** i
    diffs = {}
    for s, m in c.diffs.items():
        diffs[s + i] = m if sign == 1 else m.scale(-1)
    meta = dict(c.meta)
    meta["shift_action_sign"] = sign
    rng = c.homology_range()
    if rng is not None:
        meta["homology_range"] = (rng[0] + i, rng[1] + i)
    return FreeComplex(c.ring, twists, diffs, meta, validate=False)


def mapping_cone(alpha: ChainMap) -> FreeComplex:
    """cone(alpha)_s = target_{s+d} (+) source_{s-1}, d = [[(-1)^d dT, a], [0, -dS]].

    A degree-d map is first read as a degree-0 map into the d-fold shifted
    target; internal twists shift the target block's generator degrees.
    """
    alpha.validate()
    s_cx = alpha.source
    t_cx = alpha.target
    d = alpha.degree
    delta = alpha.internal_twist
    ring = s_cx.ring
    sgn_d = 1 if d % 2 == 0 else -1
    degrees = set()
    for s in t_cx.twists:
        degrees.add(s - d)
    for s in s_cx.twists:
        degrees.add(s + 1)
    twists = {}
    for s in sorted(degrees):
        t_part = t_cx.twist(s + d)
        s_part = tuple(t + delta for t in s_cx.twist(s - 1))
        if t_part or s_part:
            twists[s] = t_part + s_part
    diffs = {}
    for s in sorted(twists):
        if (s - 1) not in twists:
            continue
        rows_t = len(t_cx.twist(s - 1 + d))
        entries = {}
        dT = t_cx.diff(s + d)
        for (i, j), v in dT.entries.items():
            entries[(i, j)] = v if sgn_d == 1 else v.scale(-1)
        a = alpha.component(s - 1)
        off_col = len(t_cx.twist(s + d))
        for (i, j), v in a.entries.items():
            entries[(i, j + off_col)] = v
        dS = s_cx.diff(s - 1)
        for (i, j), v in dS.entries.items():
            entries[(i + rows_t, j + off_col)] = v.scale(-1)
        diffs[s] = GradedMatrix(ring, twists[s - 1], twists[s], entries)
    meta = {"cone_blocks": {s: (len(t_cx.twist(s + d)), len(s_cx.twist(s - 1))) for s in twists}}
    r1 = t_cx.homology_range()
    r2 = s_cx.homology_range()
    if r1 is not None or r2 is not None:
        # LES: H_s(cone) is trusted when the neighbouring homologies of both
        # sides are trusted
        lo1, hi1 = (r1[0] - d + 1, r1[1] - d) if r1 is not None else (None, None)
        lo2, hi2 = (r2[0] + 2, r2[1] + 1) if r2 is not None else (None, None)
        lo = max(x for x in (lo1, lo2) if x is not None)
        hi = min(x for x in (hi1, hi2) if x is not None)
        meta["homology_range"] = (lo, hi)
    return FreeComplex(ring, twists, diffs, meta)


def tensor_complex(c: FreeComplex, k: FreeComplex) -> FreeComplex:
    """Total complex of c (x) k with Koszul signs d(x(x)y) = dx(x)y + (-1)^i x(x)dy."""
    ring = c.ring
    pairs: dict[int, list[tuple[int, int, int, int]]] = {}
    for i in c.twists:
        for j in k.twists:
            m = i + j
            for a in range(c.rank(i)):
                for b in range(k.rank(j)):
                    pairs.setdefault(m, []).append((i, a, j, b))
    for m in pairs:
        pairs[m].sort()
    index = {m: {q: pos for pos, q in enumerate(pairs[m])} for m in pairs}
    twists = {
        m: tuple(c.twist(i)[a] + k.twist(j)[b] for (i, a, j, b) in pairs[m]) for m in pairs
    }
    diffs = {}
    for m in sorted(pairs):
        if (m - 1) not in pairs:
            continue
        entries = {}
        for col, (i, a, j, b) in enumerate(pairs[m]):
            dc = c.diff(i)
            for (a2, acol), v in dc.entries.items():
                if acol != a:
                    continue
                row = index[m - 1].get((i - 1, a2, j, b))
                if row is not None:
                    cur = entries.get((row, col))
                    entries[(row, col)] = v if cur is None else cur + v
            dk = k.diff(j)
            sgn = 1 if i % 2 == 0 else -1
            for (b2, bcol), v in dk.entries.items():
                if bcol != b:
                    continue
                row = index[m - 1].get((i, a, j - 1, b2))
                if row is not None:
                    val = v if sgn == 1 else v.scale(-1)
                    cur = entries.get((row, col))
                    entries[(row, col)] = val if cur is None else cur + val
        diffs[m] = GradedMatrix(ring, twists[m - 1], twists[m], entries)
    meta = {}
    rng = c.homology_range()
    if rng is not None and k.twists:
        # H_m of the tensor involves H_{m-j}(c) for j over k's degrees
        meta["homology_range"] = (rng[0] + max(k.twists), rng[1] + min(k.twists))
    return FreeComplex(ring, twists, diffs, meta)


def tensor_koszul(c: FreeComplex, elements) -> FreeComplex:
    """c (x) Kos(elements) over the ring of c."""
    if not list(elements):
        return c
    return tensor_complex(c, koszul_complex(c.ring, elements))


@dataclass
class HomologyModule:
    """Graded presentation of one homology module: minimal generators and
    their relation matrix (rows = generators)."""

    ring: GradedRing
    gen_twists: tuple[int, ...]
    relations: GradedMatrix
    cap: int

    def is_zero(self) -> bool:
        return not self.gen_twists

    def hilbert(self, d_max: int) -> list[int]:
        if not self.gen_twists:
            return [0] * (d_max + 1)
        return module_hilbert_function(self.relations, d_max)

    def annihilator_gens(self) -> list[Polynomial]:
        if not self.gen_twists:
            return [self.ring.one()]
        return annihilator(self.relations)


def default_cap(c: FreeComplex) -> int:
    m = max((max(t) for t in c.twists.values() if t), default=0)
    return 2 * m + 6


def homology_presentation(c: FreeComplex, s: int, cap: int | None = None) -> HomologyModule:
    """Minimal presentation of H_s(c) over the ring of c (exact; the cap is
    only echoed into the result for reporting)."""
    ring = c.ring
    cap = default_cap(c) if cap is None else cap
    if c.rank(s) == 0:
        return HomologyModule(ring, (), GradedMatrix.zero(ring, (), ()), cap)
    z_gens = syzygy_kernel(c.diff(s))  # minimal gens of cycles
    if not z_gens:
        return HomologyModule(ring, (), GradedMatrix.zero(ring, (), ()), cap)
    b_cols = c.diff(s + 1).columns() if (s + 1) in c.diffs else []
    b_twists = list(c.diff(s + 1).col_twists) if (s + 1) in c.diffs else []
    base = ring.base_ring()
    ambient = c.twist(s)
    z_elems = [elem_from_column(g) for g in z_gens]
    z_degs = [elem_degree(base, e, ambient) for e in z_elems]
    b_elems = [elem_from_column(g) for g in b_cols if g]
    b_degs = [elem_degree(base, e, ambient) for e in b_elems]
    kept: list[int] = []
    kept_elems = []
    kept_degs = []
    for i in sorted(range(len(z_elems)), key=lambda i: (z_degs[i], sorted(z_elems[i].items()))):
        span = SliceSpans(
            ring,
            ambient,
            [(b_elems, b_degs, 0), (z_elems, z_degs, 1), (kept_elems, kept_degs, 0)],
        )
        if not span.member(z_elems[i], z_degs[i]):
            kept.append(i)
            kept_elems.append(z_elems[i])
            kept_degs.append(z_degs[i])
    if not kept:
        return HomologyModule(ring, (), GradedMatrix.zero(ring, (), ()), cap)
    gen_matrix = GradedMatrix(
        ring,
        ambient,
        tuple(kept_degs),
        {
            (pos, jj): f
            for jj, i in enumerate(kept)
            for pos, f in z_gens[i].items()
        },
        validate=False,
    )
    rel_cols = submodule_preimage(gen_matrix, b_cols, tuple(b_twists))
    rel_elems = [elem_from_column(r) for r in rel_cols if r]
    rel_degs = [elem_degree(base, e, tuple(kept_degs)) for e in rel_elems]
    # minimalize the relation set in the generator ambient
    from .groebner import minimalize_vectors, elem_to_column

    rel_min = minimalize_vectors(ring, rel_elems, tuple(kept_degs))
    rel_matrix = GradedMatrix(
        ring,
        tuple(kept_degs),
        tuple(elem_degree(base, e, tuple(kept_degs)) for e in rel_min),
        {
            (pos, j): f
            for j, e in enumerate(rel_min)
            for pos, f in elem_to_column(ring.prime, e).items()
        },
        validate=False,
    )
    return HomologyModule(ring, tuple(kept_degs), rel_matrix, cap)


def complex_homology(c: FreeComplex, degrees=None, cap: int | None = None):
    """Presentations of H_s for each s (defaults to the authoritative range)."""
    if degrees is None:
        rng = c.homology_range()
        if rng is None:
            ds = c.degrees()
            degrees = range(min(ds), max(ds) + 1) if ds else range(0)
        else:
            degrees = range(rng[0], rng[1] + 1)
    return {s: homology_presentation(c, s, cap) for s in degrees}


@dataclass
class SupportSet:
    """V(ann) for the total homology; dimension -1 means empty support."""

    ring: GradedRing
    generators: tuple[Polynomial, ...]
    dimension: int

    @property
    def is_empty(self) -> bool:
        return self.dimension < 0

    def subset_of(self, other: "SupportSet") -> bool:
        """V(self) (subset of) V(other) <=> other.gens (subset of) rad(self.gens)."""
        return all(radical_membership(self.ring, g, list(self.generators)) for g in other.generators)

    def same_as(self, other: "SupportSet") -> bool:
        return self.subset_of(other) and other.subset_of(self)

    def format(self) -> list[str]:
        return [self.ring.format_polynomial(g) for g in self.generators]


def support_from_annihilator(ring: GradedRing, gens: list[Polynomial]) -> SupportSet:
    gens = [ring.nf(g) for g in gens]
    gens = [g for g in gens if not g.is_zero()]
    if gens:
        gens = minimal_generators(ring, gens)
    dim = krull_dimension(ring, gens)
    base = ring.base_ring()
    gens_sorted = tuple(sorted(gens, key=lambda g: (base.degree(g), sorted(g.terms.items()))))
    return SupportSet(ring, gens_sorted, dim)


def complex_support(c: FreeComplex, degrees=None) -> SupportSet:
    """V(/\\_s Ann H_s(c)); empty support iff all homology vanishes."""
    ring = c.ring
    homs = complex_homology(c, degrees)
    ann: list[Polynomial] | None = None
    any_nonzero = False
    for s in sorted(homs):
        h = homs[s]
        if h.is_zero():
            continue
        any_nonzero = True
        a = h.annihilator_gens()
        ann = a if ann is None else ideal_intersection(ring, ann, a)
    if not any_nonzero:
        return SupportSet(ring, (ring.one(),), -1)
    return support_from_annihilator(ring, ann or [])


def minimize_complex(c: FreeComplex) -> FreeComplex:
    """Strip split-exact summands by unit-pivot reduction until the
    differential has no degree-0 unit entries.  Homotopy equivalence."""
    ring = c.ring
    twists = {s: list(t) for s, t in c.twists.items()}
    diffs = {s: dict(m.entries) for s, m in c.diffs.items()}

    def find_pivot():
        for s in sorted(diffs):
            col_t = twists.get(s, [])
            row_t = twists.get(s - 1, [])
            best = None
            for (i, j), v in diffs[s].items():
                if col_t[j] != row_t[i]:
                    continue
                cval = v.constant_part()
                if cval % ring.prime:
                    if best is None or (i, j) < best[0]:
                        best = ((i, j), cval)
            if best is not None:
                return s, best[0][0], best[0][1], best[1]
        return None

    while True:
        hit = find_pivot()
        if hit is None:
            break
        s, pi, pj, u = hit
        inv = ring.field.inv(u)
        d = diffs[s]
        col = {i: v for (i, j), v in d.items() if j == pj and i != pi}
        row = {j: v for (i, j), v in d.items() if i == pi and j != pj}
        # Schur complement on d_s
        new_d = {}
        for (i, j), v in d.items():
            if i == pi or j == pj:
                continue
            new_d[(i, j)] = v
        for i, cv in col.items():
            for j, rv in row.items():
                corr = (cv * rv).scale((-inv) % ring.prime)
                cur = new_d.get((i, j))
                total = corr if cur is None else cur + corr
                total = ring.nf(total)
                if total.is_zero():
                    new_d.pop((i, j), None)
                else:
                    new_d[(i, j)] = total
        # reindex: drop row pi (degree s-1), column pj (degree s)
        def reindexed(entries, drop_row, drop_col):
            out = {}
            for (i, j), v in entries.items():
                if drop_row is not None and i == drop_row:
                    continue
                if drop_col is not None and j == drop_col:
                    continue
                ni = i - 1 if drop_row is not None and i > drop_row else i
                nj = j - 1 if drop_col is not None and j > drop_col else j
                out[(ni, nj)] = v
            return out

        diffs[s] = reindexed(new_d, pi, pj)
        if (s + 1) in diffs:
            diffs[s + 1] = reindexed(diffs[s + 1], pj, None)
        if (s - 1) in diffs:
            diffs[s - 1] = reindexed(diffs[s - 1], None, pi)
        twists[s].pop(pj)
        twists[s - 1].pop(pi)

    out_twists = {s: tuple(t) for s, t in twists.items() if t}
    out_diffs = {}
    for s, entries in diffs.items():
        if s in out_twists and (s - 1) in out_twists and entries:
            out_diffs[s] = GradedMatrix(
                ring, out_twists[s - 1], out_twists[s], entries, validate=False
            )
    meta = dict(c.meta)
    meta.pop("cone_blocks", None)
    meta.pop("labels", None)
    return FreeComplex(ring, out_twists, out_diffs, meta)
