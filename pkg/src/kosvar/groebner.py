"""Groebner kernel: Buchberger over free modules, normal forms, syzygies,
minimal generators, annihilators, Krull dimension, Hilbert functions.

Module elements are sparse maps (position, exponent) -> residue, ordered
position-over-term with degrevlex on the monomial part.  Ideals are the
rank-one case.  Everything runs over the relation-free polynomial cover;
quotient-ring inputs are handled by appending relation columns and reducing
outputs, as the operation contracts specify.
"""

from __future__ import annotations

import itertools

from .errors import InhomogeneousInput
from .gradedmatrix import GradedMatrix, columns_matrix
from .polyring import GradedRing, Polynomial

# ---------------------------------------------------------------------------
# module-element primitives: dict[(pos, exp)] -> coeff
# ---------------------------------------------------------------------------

ModTerm = tuple[int, tuple[int, ...]]
ModElement = dict[ModTerm, int]


def elem_from_column(col: dict[int, Polynomial]) -> ModElement:
    out: ModElement = {}
    for pos, f in col.items():
        for exp, c in f.terms.items():
            out[(pos, exp)] = c
    return out


def elem_to_column(p: int, elem: ModElement) -> dict[int, Polynomial]:
    cols: dict[int, dict] = {}
    for (pos, exp), c in elem.items():
        cols.setdefault(pos, {})[exp] = c
    return {pos: Polynomial(p, terms) for pos, terms in cols.items()}


def elem_from_poly(f: Polynomial) -> ModElement:
    return {(0, exp): c for exp, c in f.terms.items()}


def elem_to_poly(p: int, elem: ModElement) -> Polynomial:
    return Polynomial(p, {exp: c for (pos, exp), c in elem.items()})


def _axpy(p: int, target: ModElement, c: int, exp: tuple[int, ...], src: ModElement):
    """target += c * x^exp * src, in place."""
    for (pos, e), cc in src.items():
        key = (pos, tuple(a + b for a, b in zip(e, exp)))
        v = (target.get(key, 0) + c * cc) % p
        if v:
            target[key] = v
        else:
            target.pop(key, None)


def _scale(p: int, elem: ModElement, c: int) -> ModElement:
    return {k: (v * c) % p for k, v in elem.items()}


def _term_key(ring: GradedRing, term: ModTerm):
    pos, exp = term
    return (-pos, ring.order_key(exp))


def _lead(ring: GradedRing, elem: ModElement) -> tuple[ModTerm, int]:
    t = max(elem, key=lambda k: _term_key(ring, k))
    return t, elem[t]


def elem_degree(ring: GradedRing, elem: ModElement, twists) -> int:
    """Weighted degree of a homogeneous element (position twists included)."""
    degs = {ring.wdeg(exp) + twists[pos] for (pos, exp) in elem}
    if len(degs) > 1:
        raise InhomogeneousInput("module element is not homogeneous")
    return degs.pop()


def _divides(a: tuple[int, ...], b: tuple[int, ...]) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _exp_lcm(a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(max(x, y) for x, y in zip(a, b))


def _exp_sub(a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(x - y for x, y in zip(a, b))


def elem_canonical_key(ring: GradedRing, elem: ModElement):
    return sorted(((-pos,) + ring.order_key(exp) + (c,) for (pos, exp), c in elem.items()), reverse=True)


# ---------------------------------------------------------------------------
# division and Buchberger
# ---------------------------------------------------------------------------


def _reduce_full(
    ring: GradedRing,
    elem: ModElement,
    basis: list[ModElement],
    leads: list[tuple[ModTerm, int]],
    quotients: list | None = None,
):
    """Canonical full reduction; optionally accumulate quotients per basis index.

    Returns the remainder (no term divisible by any basis lead).
    """
    p = ring.prime
    work = dict(elem)
    remainder: ModElement = {}
    while work:
        term = max(work, key=lambda k: _term_key(ring, k))
        coeff = work[term]
        pos, exp = term
        hit = None
        for idx, ((lpos, lexp), lc) in enumerate(leads):
            if lpos == pos and _divides(lexp, exp):
                hit = idx
                break
        if hit is None:
            remainder[term] = coeff
            del work[term]
            continue
        lc = leads[hit][1]
        q = (coeff * ring.field.inv(lc)) % p
        shift = _exp_sub(exp, leads[hit][0][1])
        _axpy(p, work, -q, shift, basis[hit])
        work.pop(term, None)
        if quotients is not None:
            qd = quotients[hit]
            qd[shift] = (qd.get(shift, 0) + q) % p
    return remainder


class _Tracked:
    """Basis element with its representation over the original generators."""

    __slots__ = ("elem", "rep")

    def __init__(self, elem: ModElement, rep: ModElement):
        self.elem = elem
        self.rep = rep  # free module over generator indices


def _reduce_full_tracked(ring, elem, rep, basis, leads):
    """Full reduction that also updates the representation vector."""
    p = ring.prime
    work = dict(elem)
    rep = dict(rep)
    remainder: ModElement = {}
    while work:
        term = max(work, key=lambda k: _term_key(ring, k))
        coeff = work[term]
        pos, exp = term
        hit = None
        for idx, ((lpos, lexp), lc) in enumerate(leads):
            if lpos == pos and _divides(lexp, exp):
                hit = idx
                break
        if hit is None:
            remainder[term] = coeff
            del work[term]
            continue
        q = (coeff * ring.field.inv(leads[hit][1])) % p
        shift = _exp_sub(exp, leads[hit][0][1])
        _axpy(p, work, -q, shift, basis[hit].elem)
        work.pop(term, None)
        _axpy(p, rep, -q, shift, basis[hit].rep)
    return remainder, rep


def module_groebner(
    ring: GradedRing,
    gens: list[ModElement],
    rank: int,
    track: bool = False,
) -> list[_Tracked]:
    """Reduced monic Groebner basis of the submodule generated by `gens`.

    Position-over-term degrevlex.  Gebauer-Moller pair elimination; the
    coprime (product) criterion is applied only in the ideal case rank == 1,
    where it is valid.  With track=True each output carries its expression in
    terms of the input generators.
    """
    p = ring.prime
    basis: list[_Tracked] = []
    leads: list[tuple[ModTerm, int]] = []

    def monic(t: _Tracked) -> _Tracked:
        lt, lc = _lead(ring, t.elem)
        if lc != 1:
            inv = ring.field.inv(lc)
            return _Tracked(_scale(p, t.elem, inv), _scale(p, t.rep, inv))
        return t

    pairs: list[tuple[int, int]] = []

    def lcm_of(i: int, j: int):
        return _exp_lcm(leads[i][0][1], leads[j][0][1])

    def add_element(t: _Tracked):
        t = monic(t)
        new = len(basis)
        basis.append(t)
        leads.append(_lead(ring, t.elem))
        # Gebauer-Moller update of the pair set
        npos, nexp = leads[new][0]
        cands = [i for i in range(new) if leads[i][0][0] == npos]
        kept: list[int] = []
        for i in cands:
            l_i = _exp_lcm(leads[i][0][1], nexp)
            redundant = False
            for j in cands:
                if j == i:
                    continue
                l_j = _exp_lcm(leads[j][0][1], nexp)
                if l_j != l_i and _divides(l_j, l_i):
                    redundant = True
                    break
            if not redundant:
                kept.append(i)
        # F criterion: among equal lcms keep one
        seen = {}
        kept2 = []
        for i in kept:
            l_i = _exp_lcm(leads[i][0][1], nexp)
            if l_i not in seen:
                seen[l_i] = i
                kept2.append(i)
        # B criterion on old pairs
        surviving = []
        for (i, j) in pairs:
            if leads[i][0][0] == npos and _divides(nexp, lcm_of(i, j)):
                if lcm_of(i, j) != _exp_lcm(leads[i][0][1], nexp) and lcm_of(i, j) != _exp_lcm(
                    leads[j][0][1], nexp
                ):
                    continue
            surviving.append((i, j))
        pairs.clear()
        pairs.extend(surviving)
        for i in kept2:
            if rank == 1:
                a = leads[i][0][1]
                if all(x == 0 or y == 0 for x, y in zip(a, nexp)):
                    continue  # product criterion (valid for ideals)
            pairs.append((i, new))

    for idx, g in enumerate(gens):
        if not g:
            continue
        rep: ModElement = {(idx, (0,) * ring.nvars): 1} if track else {}
        rem, rem_rep = _reduce_full_tracked(ring, g, rep, basis, leads)
        if rem:
            add_element(_Tracked(rem, rem_rep))

    while pairs:
        # deterministic normal strategy: smallest lcm degree first
        pairs.sort(
            key=lambda ij: (
                ring.wdeg(lcm_of(*ij)),
                -ij[0] - ij[1],
            )
        )
        i, j = pairs.pop(0)
        (pos, a), _ = leads[i]
        b = leads[j][0][1]
        l = _exp_lcm(a, b)
        s: ModElement = {}
        _axpy(p, s, 1, _exp_sub(l, a), basis[i].elem)
        _axpy(p, s, -1, _exp_sub(l, b), basis[j].elem)
        srep: ModElement = {}
        if track:
            _axpy(p, srep, 1, _exp_sub(l, a), basis[i].rep)
            _axpy(p, srep, -1, _exp_sub(l, b), basis[j].rep)
        rem, rem_rep = _reduce_full_tracked(ring, s, srep, basis, leads)
        if rem:
            add_element(_Tracked(rem, rem_rep))

    # minimalize the lead set, then tail-reduce to the unique reduced basis
    order = sorted(range(len(basis)), key=lambda i: _term_key(ring, leads[i][0]))
    kept: list[int] = []
    for i in order:
        pos, exp = leads[i][0]
        if any(
            leads[j][0][0] == pos and _divides(leads[j][0][1], exp) for j in kept
        ):
            continue
        kept.append(i)
    final: list[_Tracked] = []
    for i in kept:
        others = [basis[j] for j in kept if j != i]
        other_leads = [leads[j] for j in kept if j != i]
        rem, rem_rep = _reduce_full_tracked(ring, basis[i].elem, basis[i].rep, others, other_leads)
        if not rem:
            raise AssertionError("minimalized basis element reduced to zero")
        final.append(monic(_Tracked(rem, rem_rep)))
    final.sort(key=lambda t: _term_key(ring, _lead(ring, t.elem)[0]))
    return final


def schreyer_syzygies(ring: GradedRing, gb: list[_Tracked]) -> list[ModElement]:
    """Generators of Syz(gb) from zero-reductions of all same-position S-pairs.

    Returned elements live in the free module over gb indices.
    """
    p = ring.prime
    basis = [t.elem for t in gb]
    leads = [_lead(ring, e) for e in basis]
    out: list[ModElement] = []
    for i in range(len(gb)):
        for j in range(i + 1, len(gb)):
            (pos_i, a), _ = leads[i]
            (pos_j, b), _ = leads[j]
            if pos_i != pos_j:
                continue
            l = _exp_lcm(a, b)
            s: ModElement = {}
            _axpy(p, s, 1, _exp_sub(l, a), basis[i])
            _axpy(p, s, -1, _exp_sub(l, b), basis[j])
            quotients = [dict() for _ in gb]
            rem = _reduce_full(ring, s, basis, leads, quotients)
            if rem:
                raise AssertionError("S-pair of a Groebner basis did not reduce to zero")
            tau: ModElement = {(i, _exp_sub(l, a)): 1}
            key_j = (j, _exp_sub(l, b))
            tau[key_j] = (tau.get(key_j, 0) - 1) % p
            if tau[key_j] == 0:
                del tau[key_j]
            for k, q in enumerate(quotients):
                for exp, c in q.items():
                    key = (k, exp)
                    v = (tau.get(key, 0) - c) % p
                    if v:
                        tau[key] = v
                    else:
                        tau.pop(key, None)
            if tau:
                out.append(tau)
    return out


# ---------------------------------------------------------------------------
# public ideal operations
# ---------------------------------------------------------------------------


def groebner_basis(ring: GradedRing, gens: list[Polynomial]) -> list[Polynomial]:
    """Reduced monic Groebner basis; ring relations are appended automatically."""
    base = ring.base_ring()
    items = [elem_from_poly(g) for g in list(gens) + list(ring.relations) if not g.is_zero()]
    gb = module_groebner(base, items, rank=1)
    return [elem_to_poly(ring.prime, t.elem) for t in gb]


def normal_form(ring: GradedRing, f: Polynomial, basis: list[Polynomial]) -> Polynomial:
    """Canonical remainder of f modulo a Groebner basis (full reduction)."""
    base = ring.base_ring()
    items = [elem_from_poly(g) for g in basis if not g.is_zero()]
    leads = [_lead(base, e) for e in items]
    rem = _reduce_full(base, elem_from_poly(f), items, leads)
    return elem_to_poly(ring.prime, rem)


def express_in_terms(ring: GradedRing, f: Polynomial, gens: list[Polynomial]):
    """Deterministic division witnesses: f = sum a_i * gens[i] + remainder.

    Computes a tracked GB of (gens), divides f by it, and composes the
    quotients with the tracking.  Returns (coefficients, remainder).
    """
    base = ring.base_ring()
    items = [elem_from_poly(g) for g in gens]
    gb = module_groebner(base, items, rank=1, track=True)
    gb = list(reversed(gb))  # greedy: try the largest leading term first
    basis = [t.elem for t in gb]
    leads = [_lead(base, e) for e in basis]
    quotients = [dict() for _ in gb]
    rem = _reduce_full(base, elem_from_poly(f), basis, leads, quotients)
    coeffs = [Polynomial.zero(ring.prime) for _ in gens]
    for k, q in enumerate(quotients):
        if not q:
            continue
        qpoly = Polynomial(ring.prime, q)
        for (gidx, exp), c in gb[k].rep.items():
            coeffs[gidx] = coeffs[gidx] + qpoly * Polynomial.monomial(ring.prime, exp, c)
    return coeffs, elem_to_poly(ring.prime, rem)


def krull_dimension(ring: GradedRing, gens: list[Polynomial]) -> int:
    """Krull dimension of (base ring)/(gens + relations).

    Maximal size of a variable subset meeting no leading monomial; -1 for the
    unit ideal (empty spectrum).
    """
    gb = groebner_basis(ring, gens)
    base = ring.base_ring()
    leads = []
    for g in gb:
        exp, _ = base.leading_term(g)
        leads.append(exp)
    if any(not any(exp) for exp in leads):
        return -1
    n = ring.nvars
    best = -1
    for size in range(n, -1, -1):
        for subset in itertools.combinations(range(n), size):
            sset = set(subset)
            ok = True
            for exp in leads:
                if all(e == 0 or i in sset for i, e in enumerate(exp)):
                    ok = False
                    break
            if ok:
                best = size
                break
        if best >= 0:
            break
    return best


def ideal_intersection(ring: GradedRing, gens_a: list[Polynomial], gens_b: list[Polynomial]):
    """Generators of (gens_a) /\\ (gens_b) over the base polynomial ring."""
    base = ring.base_ring()
    a = [g for g in gens_a if not g.is_zero()]
    b = [g for g in gens_b if not g.is_zero()]
    if not a:
        return []
    if not b:
        return []
    cols = [{0: f} for f in a + b]
    try:
        da = [base.degree(f) for f in a]
        db = [base.degree(f) for f in b]
        col_twists = da + db
    except InhomogeneousInput:
        col_twists = [0] * (len(a) + len(b))
    syz = _syzygy_elements(base, cols, row_twists=(0,), col_twists=col_twists)
    out = []
    for s in syz:
        col = elem_to_column(ring.prime, s)
        acc = base.zero()
        for idx, f in col.items():
            if idx < len(a):
                acc = acc + f * a[idx]
        if not acc.is_zero():
            out.append(acc)
    return minimal_generators(ring, out) if out else []


def radical_membership(ring: GradedRing, f: Polynomial, gens: list[Polynomial]) -> bool:
    """f in rad(gens + relations)?  Rabinowitsch: 1 in (gens, 1 - t*f)."""
    f = ring.nf(f)
    if f.is_zero():
        return True
    base = ring.base_ring()
    ext = GradedRing(
        ring.prime,
        ring.variables + ("_t",),
        ring.variable_degrees + (1,),
        (),
    )

    def lift(g: Polynomial) -> Polynomial:
        return Polynomial(ring.prime, {exp + (0,): c for exp, c in g.terms.items()})

    t = ext.variable(ext.nvars - 1)
    one = ext.one()
    items = [lift(g) for g in list(gens) + list(ring.relations) if not g.is_zero()]
    items.append(one - t * lift(f))
    gb = groebner_basis(ext, items)
    return any(len(g.terms) == 1 and not any(next(iter(g.terms))) for g in gb)


def ideal_contains(ring: GradedRing, gens: list[Polynomial], f: Polynomial) -> bool:
    gb = groebner_basis(ring, gens)
    return normal_form(ring, f, gb).is_zero()


# ---------------------------------------------------------------------------
# module operations on GradedMatrix
# ---------------------------------------------------------------------------


def _augmented_columns(ring: GradedRing, matrix: GradedMatrix):
    """Columns of the matrix plus relation columns for quotient rings."""
    cols = [elem_from_column(c) for c in matrix.columns()]
    twists = list(matrix.col_twists)
    base = ring.base_ring()
    n_main = len(cols)
    for r in ring.relations:
        d = base.degree(r)
        for pos in range(matrix.nrows):
            cols.append({(pos, exp): c for exp, c in r.terms.items()})
            twists.append(d + matrix.row_twists[pos])
    return cols, twists, n_main


def _syzygy_elements(ring: GradedRing, cols, row_twists, col_twists) -> list[ModElement]:
    """Raw generators of the syzygy module of the given columns (no trimming).

    Schreyer syzygies of the tracked GB pushed back to the original columns,
    plus the discrepancy rows Id - B*A.
    """
    p = ring.prime
    # accept dict[int, Polynomial] columns or flat ModElements
    norm: list[ModElement] = []
    for c in cols:
        if c and isinstance(next(iter(c.values())), Polynomial):
            norm.append(elem_from_column(c))
        else:
            norm.append(dict(c))
    gb = module_groebner(ring, norm, rank=len(row_twists), track=True)
    if not gb:
        # zero columns: syzygies are the unit vectors on the nonzero... all columns zero
        return [{(j, (0,) * ring.nvars): 1} for j, c in enumerate(norm) if not c]
    taus = schreyer_syzygies(ring, gb)
    basis = [t.elem for t in gb]
    leads = [_lead(ring, e) for e in basis]
    syz: list[ModElement] = []
    for tau in taus:
        out: ModElement = {}
        for (k, exp), c in tau.items():
            _axpy(p, out, c, exp, gb[k].rep)
        if out:
            syz.append(out)
    # discrepancy syzygies e_j - B_j * A
    for j, c in enumerate(norm):
        if not c:
            syz.append({(j, (0,) * ring.nvars): 1})
            continue
        quotients = [dict() for _ in gb]
        rem = _reduce_full(ring, c, basis, leads, quotients)
        if rem:
            raise AssertionError("generator does not reduce to zero against its own GB")
        out: ModElement = {(j, (0,) * ring.nvars): 1}
        for k, q in enumerate(quotients):
            for exp, qc in q.items():
                _axpy(p, out, -qc, exp, gb[k].rep)
        if out:
            syz.append(out)
    return syz


class SliceSpans:
    """Per-internal-degree dense spans of monomial multiples of generators.

    groups: list of (vectors, degrees, min_mult_degree); a vector of degree d0
    contributes monomial multiples of every degree >= d0 + min_mult_degree.
    Relation multiples of the ambient free module are always included.
    """

    def __init__(self, ring: GradedRing, ambient_twists, groups):
        self.ring = ring
        self.base = ring.base_ring()
        self.ambient_twists = tuple(ambient_twists)
        self.groups = groups
        self._rref_cache: dict[int, tuple[dict, list]] = {}

    def coords(self, d: int) -> list[ModTerm]:
        out = []
        for pos, t in enumerate(self.ambient_twists):
            for exp in self.base.monomials_of_degree(d - t):
                out.append((pos, exp))
        return out

    def _rows(self, d: int):
        p = self.ring.prime
        rows: list[ModElement] = []
        for vectors, degrees, min_mult in self.groups:
            for v, d0 in zip(vectors, degrees):
                rem = d - d0
                if rem < min_mult:
                    continue
                for exp in self.base.monomials_of_degree(rem):
                    row: ModElement = {}
                    _axpy(p, row, 1, exp, v)
                    if row:
                        rows.append(row)
        for r in self.ring.relations:
            dr = self.base.degree(r)
            relem = elem_from_poly(r)
            for pos, t in enumerate(self.ambient_twists):
                rem = d - dr - t
                if rem < 0:
                    continue
                for exp in self.base.monomials_of_degree(rem):
                    row: ModElement = {}
                    for e2, c2 in r.terms.items():
                        key = (pos, tuple(a + b for a, b in zip(e2, exp)))
                        row[key] = c2
                    rows.append(row)
        return rows

    def _rref(self, d: int):
        """Sparse RREF of the slice span; pivots keyed by coordinate."""
        if d in self._rref_cache:
            return self._rref_cache[d]
        p = self.ring.prime
        field = self.ring.field
        pivots: dict[ModTerm, ModElement] = {}
        order: list[ModTerm] = []
        for row in self._rows(d):
            row = dict(row)
            while row:
                lead = max(row, key=lambda k: _term_key(self.base, k))
                if lead in pivots:
                    c = row[lead]
                    _axpy(p, row, -c, (0,) * self.ring.nvars, pivots[lead])
                else:
                    inv = field.inv(row[lead])
                    row = _scale(p, row, inv)
                    pivots[lead] = row
                    order.append(lead)
                    break
        self._rref_cache[d] = (pivots, order)
        return self._rref_cache[d]

    def reduce(self, elem: ModElement, d: int) -> ModElement:
        p = self.ring.prime
        pivots, _ = self._rref(d)
        row = dict(elem)
        while row:
            lead = max(row, key=lambda k: _term_key(self.base, k))
            if lead not in pivots:
                break
            _axpy(p, row, -row[lead], (0,) * self.ring.nvars, pivots[lead])
        return row

    def member(self, elem: ModElement, d: int) -> bool:
        p = self.ring.prime
        pivots, _ = self._rref(d)
        row = dict(elem)
        while row:
            lead = max(row, key=lambda k: _term_key(self.base, k))
            if lead not in pivots:
                return False
            _axpy(p, row, -row[lead], (0,) * self.ring.nvars, pivots[lead])
        return True


def minimalize_vectors(ring: GradedRing, vectors: list[ModElement], ambient_twists):
    """Minimal homogeneous generators of the submodule spanned by `vectors`.

    Graded Nakayama: sorted by (degree, canonical form), a candidate is kept
    iff it is independent modulo n*(span) + (kept so far) + relations.
    """
    base = ring.base_ring()
    vecs = [v for v in vectors if v]
    if not vecs:
        return []
    degrees = [elem_degree(base, v, ambient_twists) for v in vecs]
    order = sorted(range(len(vecs)), key=lambda i: (degrees[i], elem_canonical_key(base, vecs[i])))
    kept: list[ModElement] = []
    kept_degrees: list[int] = []
    for i in order:
        d = degrees[i]
        span = SliceSpans(
            ring,
            ambient_twists,
            [
                (vecs, degrees, 1),
                (kept, kept_degrees, 0),
            ],
        )
        if not span.member(vecs[i], d):
            _, lc = _lead(base, vecs[i])
            kept.append(_scale(ring.prime, vecs[i], ring.field.inv(lc)))
            kept_degrees.append(d)
    return kept


def syzygy_kernel(matrix: GradedMatrix) -> list[dict[int, Polynomial]]:
    """Minimal homogeneous generators of ker(matrix) over the matrix's ring.

    Exactness certificate: matrix * generator reduces to zero (asserted).
    """
    ring = matrix.ring
    base = ring.base_ring()
    cols, twists, n_main = _augmented_columns(ring, matrix)
    if n_main == 0:
        return []
    syz = _syzygy_elements(base, cols, matrix.row_twists, twists)
    projected: list[ModElement] = []
    for s in syz:
        proj = {k: v for k, v in s.items() if k[0] < n_main}
        if not proj:
            continue
        if ring.relations:
            col = elem_to_column(ring.prime, proj)
            col = {pos: ring.nf(f) for pos, f in col.items()}
            proj = elem_from_column({pos: f for pos, f in col.items() if not f.is_zero()})
        if proj:
            projected.append(proj)
    # deduplicate
    seen = set()
    unique = []
    for v in projected:
        key = tuple(sorted(v.items()))
        if key not in seen:
            seen.add(key)
            unique.append(v)
    minimal = minimalize_vectors(ring, unique, matrix.col_twists)
    out = []
    for v in minimal:
        col = elem_to_column(ring.prime, v)
        applied = matrix.apply(col)
        if applied:
            raise AssertionError("syzygy certificate failed: matrix * generator != 0")
        out.append(col)
    return out


def minimal_generators(ring: GradedRing, gens: list[Polynomial]) -> list[Polynomial]:
    """Minimal generating sublist of a homogeneous ideal (graded Nakayama)."""
    base = ring.base_ring()
    items = []
    for g in gens:
        g = ring.nf(g)
        if g.is_zero():
            continue
        if not base.is_homogeneous(g):
            raise InhomogeneousInput(f"not homogeneous: {base.format_polynomial(g)}")
        items.append(g)
    vecs = [elem_from_poly(g) for g in items]
    kept = minimalize_vectors(ring, vecs, (0,))
    return [elem_to_poly(ring.prime, v) for v in kept]


def minimal_generators_columns(matrix: GradedMatrix) -> list[int]:
    """Indices of a minimal generating subset of the matrix's columns."""
    ring = matrix.ring
    cols = [elem_from_column(c) for c in matrix.columns()]
    degrees = []
    base = ring.base_ring()
    reduced = []
    for c, t in zip(cols, matrix.col_twists):
        col = elem_to_column(ring.prime, c)
        col = {pos: ring.nf(f) for pos, f in col.items()}
        e = elem_from_column({pos: f for pos, f in col.items() if not f.is_zero()})
        reduced.append(e)
        degrees.append(t)
    idx = [i for i, e in enumerate(reduced) if e]
    order = sorted(idx, key=lambda i: (degrees[i], elem_canonical_key(base, reduced[i])))
    kept_idx: list[int] = []
    kept: list[ModElement] = []
    kept_deg: list[int] = []
    vecs = [reduced[i] for i in idx]
    vdeg = [degrees[i] for i in idx]
    for i in order:
        span = SliceSpans(ring, matrix.row_twists, [(vecs, vdeg, 1), (kept, kept_deg, 0)])
        if not span.member(reduced[i], degrees[i]):
            kept_idx.append(i)
            kept.append(reduced[i])
            kept_deg.append(degrees[i])
    return kept_idx


def submodule_preimage(matrix: GradedMatrix, target_cols: list[dict[int, Polynomial]], target_twists):
    """Generators of {u : matrix*u in <target_cols>} over the matrix's ring.

    Computed as syzygies of [matrix | targets] projected to the first block.
    Not minimalized (callers minimalize in their own ambient).
    """
    ring = matrix.ring
    base = ring.base_ring()
    cols, twists, n_main = _augmented_columns(ring, matrix)
    for c, t in zip(target_cols, target_twists):
        cols.append(elem_from_column(c))
        twists.append(t)
    syz = _syzygy_elements(base, cols, matrix.row_twists, twists)
    out = []
    seen = set()
    for s in syz:
        proj = {k: v for k, v in s.items() if k[0] < n_main}
        if ring.relations and proj:
            col = elem_to_column(ring.prime, proj)
            col = {pos: ring.nf(f) for pos, f in col.items()}
            proj = elem_from_column({pos: f for pos, f in col.items() if not f.is_zero()})
        if proj:
            key = tuple(sorted(proj.items()))
            if key not in seen:
                seen.add(key)
                out.append(elem_to_column(ring.prime, proj))
    return out


def annihilator(matrix: GradedMatrix) -> list[Polynomial]:
    """Generators of Ann(coker matrix) over the matrix's ring.

    Intersection over target generators e_i of the quotients (im : e_i),
    each from a syzygy computation; unit ideal for the zero module.
    """
    ring = matrix.ring
    base = ring.base_ring()
    if matrix.nrows == 0:
        return [ring.one()]
    current: list[Polynomial] | None = None
    for i in range(matrix.nrows):
        e_i = GradedMatrix(
            ring,
            matrix.row_twists,
            (matrix.row_twists[i],),
            {(i, 0): ring.one()},
            validate=False,
        )
        pre = submodule_preimage(e_i, matrix.columns(), matrix.col_twists)
        gens_i = [col.get(0, ring.zero()) for col in pre]
        gens_i = [g for g in gens_i if not g.is_zero()]
        if current is None:
            current = gens_i
        else:
            current = ideal_intersection(ring, current, gens_i)
        if not current:
            return []
    current = [ring.nf(g) for g in current]
    current = [g for g in current if not g.is_zero()]
    if not current:
        return []
    return minimal_generators(ring, current)


def module_hilbert_function(matrix: GradedMatrix, d_max: int) -> list[int]:
    """dim_k (coker matrix)_d for 0 <= d <= d_max, via GB leading terms."""
    ring = matrix.ring
    base = ring.base_ring()
    cols, twists, _ = _augmented_columns(ring, matrix)
    gb = module_groebner(base, cols, rank=matrix.nrows)
    leads = [_lead(base, t.elem)[0] for t in gb]
    out = []
    for d in range(d_max + 1):
        count = 0
        for pos, t in enumerate(matrix.row_twists):
            for exp in base.monomials_of_degree(d - t):
                if not any(lp == pos and _divides(le, exp) for lp, le in leads):
                    count += 1
        out.append(count)
    return out


def hilbert_function(ring: GradedRing, gens: list[Polynomial], d_max: int) -> list[int]:
    """dim_k of ((base)/(gens + relations))_d for 0 <= d <= d_max."""
    base = ring.base_ring()
    nz = [g for g in gens if not g.is_zero()]
    m = GradedMatrix(
        ring,
        (0,),
        tuple(base.degree(g) for g in nz),
        {(0, j): g for j, g in enumerate(nz)},
        validate=False,
    )
    return module_hilbert_function(m, d_max)
