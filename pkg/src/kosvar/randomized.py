"""Seeded random complexes and chain maps for the property suites.

Differentials and chain maps are sampled uniformly-with-full-support from the
exact solution spaces of their defining linear constraints (per internal
degree, over F_p, modulo the ring's relations), so every sampled object
satisfies d^2 = 0 resp. the chain-map identity on the nose.
"""

from __future__ import annotations

import random

from .complexes import ChainMap, FreeComplex, complex_support, mapping_cone, shift_complex
from .gradedmatrix import GradedMatrix
from .linalg import SparseSystem
from .polyring import GradedRing, Polynomial


def _entry_degree(src_twist: int, tgt_twist: int, internal: int = 0) -> int:
    return src_twist + internal - tgt_twist


def _constraint_rows(ring, rows_by_eq, eq_key, mult, var_key_fn, unknown_deg):
    """rows_by_eq[(eq_key, monomial)] += coeff * var for mult * unknown."""
    base = ring.base_ring()
    if unknown_deg < 0:
        return
    for mexp in base.monomials_of_degree(unknown_deg):
        var = var_key_fn(mexp)
        for eexp, c in mult.terms.items():
            tot = tuple(a + b for a, b in zip(eexp, mexp))
            row = rows_by_eq.setdefault(eq_key + (tot,), {})
            row[var] = (row.get(var, 0) + c) % ring.prime


def solve_map_space(
    ring: GradedRing,
    source: FreeComplex,
    target: FreeComplex,
    degree: int,
    internal_twist: int = 0,
    extra_constraints=None,
):
    """Solution space of the chain-map equations for maps source -> target.

    Returns (variables, nullspace) where a variable is (s, i, j, monomial)
    meaning the coefficient of `monomial` in entry (i, j) of the component at
    homological degree s.  The identity imposed is
    d^T a_s = (-1)^degree a_{s-1} d^S, modulo ring relations.
    """
    base = ring.base_ring()
    p = ring.prime
    system = SparseSystem(p)
    sgn = (-1) ** degree

    comp_degrees = sorted(source.twists)
    for s in comp_degrees:
        st = source.twist(s)
        tt = target.twist(s + degree)
        for i in range(len(tt)):
            for j in range(len(st)):
                dgr = _entry_degree(st[j], tt[i], internal_twist)
                for mexp in base.monomials_of_degree(dgr):
                    system.add_variable((s, i, j, mexp))

    rows_by_eq: dict = {}
    aux_count = 0
    for s in sorted(set(comp_degrees) | {x + 1 for x in comp_degrees}):
        # equation: d^T_{s+degree} a_s - sgn * a_{s-1} d^S_s = 0
        st = source.twist(s)
        tt_mid = target.twist(s + degree)
        tt_out = target.twist(s + degree - 1)
        st_prev = source.twist(s - 1)
        dT = target.diff(s + degree)
        dS = source.diff(s)
        for j in range(len(st)):
            for i2 in range(len(tt_out)):
                eq_key = ("cm", s, i2, j)
                # sum_k dT[i2,k] * a_s[k,j]
                for (ii2, k), mult in dT.entries.items():
                    if ii2 != i2:
                        continue
                    dgr = _entry_degree(st[j], tt_mid[k], internal_twist)
                    _constraint_rows(
                        ring,
                        rows_by_eq,
                        eq_key,
                        mult,
                        lambda mexp, s=s, k=k, j=j: (s, k, j, mexp),
                        dgr,
                    )
                # - sgn * sum_l a_{s-1}[i2,l] * dS[l,j]
                for (l, jj), mult in dS.entries.items():
                    if jj != j:
                        continue
                    dgr = _entry_degree(st_prev[l], tt_out[i2], internal_twist)
                    _constraint_rows(
                        ring,
                        rows_by_eq,
                        eq_key,
                        mult.scale(-sgn),
                        lambda mexp, s=s, l=l, i2=i2: (s - 1, i2, l, mexp),
                        dgr,
                    )

    # work modulo relations: absorb any relation multiple via auxiliary vars
    for eq_full, row in list(rows_by_eq.items()):
        tag, s, i2, j, tot = eq_full
        if ring.relations:
            d_tot = base.wdeg(tot)
            for r_idx, rel in enumerate(ring.relations):
                rd = base.degree(rel)
                for mexp in base.monomials_of_degree(d_tot - rd):
                    for eexp, c in rel.terms.items():
                        if tuple(a + b for a, b in zip(eexp, mexp)) == tot:
                            var = ("aux", s, i2, j, r_idx, mexp)
                            row[var] = (row.get(var, 0) + c) % p
        system.add_equation(row, 0)

    if extra_constraints:
        for row, rhs in extra_constraints:
            system.add_equation(row, rhs)

    solved = system.solve()
    if solved is None:
        return None
    particular, nullspace = solved
    return particular, nullspace


def _assemble_map(ring, source, target, degree, internal_twist, assignment) -> ChainMap:
    comps: dict[int, GradedMatrix] = {}
    by_s: dict[int, dict] = {}
    for var, val in assignment.items():
        if not val or var[0] == "aux":
            continue
        s, i, j, mexp = var
        by_s.setdefault(s, {}).setdefault((i, j), {})[mexp] = val
    for s, entries in by_s.items():
        tt = tuple(t - internal_twist for t in target.twist(s + degree))
        mat = GradedMatrix(
            ring,
            tt,
            source.twist(s),
            {k: Polynomial(ring.prime, terms) for k, terms in entries.items()},
        )
        if not mat.is_zero():
            comps[s] = mat
    return ChainMap(source, target, degree, comps, internal_twist)


def random_chain_map(
    ring: GradedRing,
    source: FreeComplex,
    target: FreeComplex,
    degree: int,
    rng: random.Random,
    internal_twist: int = 0,
) -> ChainMap:
    space = solve_map_space(ring, source, target, degree, internal_twist)
    if space is None:
        raise AssertionError("chain-map space is infeasible (homogeneous system)")
    _, nullspace = space
    combo: dict = {}
    for vec in nullspace:
        c = rng.randrange(ring.prime)
        if not c:
            continue
        for k, v in vec.items():
            combo[k] = (combo.get(k, 0) + c * v) % ring.prime
    return _assemble_map(ring, source, target, degree, internal_twist, combo).validate()


def random_complex(
    ring: GradedRing,
    rng: random.Random,
    length: int = 4,
    max_rank: int = 3,
    max_twist: int = 4,
) -> FreeComplex:
    """Random graded free complex with d^2 = 0, built degree by degree by
    sampling each differential from the kernel of composition with the
    previous one."""
    twists: dict[int, tuple[int, ...]] = {}
    for s in range(length + 1):
        r = rng.randint(0, max_rank)
        twists[s] = tuple(sorted(rng.randint(0, max_twist) for _ in range(r)))
    twists = {s: t for s, t in twists.items() if t}
    diffs: dict[int, GradedMatrix] = {}
    for s in sorted(twists):
        if (s - 1) not in twists:
            continue
        # unknown column map X: C_s -> C_{s-1} with d_{s-1} X = 0
        space = solve_map_space(
            ring,
            FreeComplex(ring, {s: twists[s]}, {}, validate=False),
            FreeComplex(
                ring,
                {k: v for k, v in twists.items() if k in (s - 1, s - 2)},
                {k: v for k, v in diffs.items() if k == s - 1},
                validate=False,
            ),
            degree=-1,
        )
        if space is None:
            continue
        _, nullspace = space
        combo: dict = {}
        for vec in nullspace:
            c = rng.randrange(ring.prime)
            if not c:
                continue
            for k, v in vec.items():
                combo[k] = (combo.get(k, 0) + c * v) % ring.prime
        entries: dict[tuple[int, int], dict] = {}
        for var, val in combo.items():
            if not val or var[0] == "aux":
                continue
            ss, i, j, mexp = var
            if ss != s:
                continue
            entries.setdefault((i, j), {})[mexp] = val
        mat = GradedMatrix(
            ring,
            twists[s - 1],
            twists[s],
            {k: Polynomial(ring.prime, terms) for k, terms in entries.items()},
        ).reduced()
        if not mat.is_zero():
            diffs[s] = mat
    return FreeComplex(ring, twists, diffs)


def ksp_cone_case(ring: GradedRing, seed: int):
    """One randomized cone-support test: random C, random morphism
    C -> Sigma^n C with n != 0, compare radical supports of C and cone."""
    rng = random.Random(seed)
    c = random_complex(ring, rng)
    if c.is_zero():
        return {"seed": seed, "skipped": True, "ok": True}
    n = rng.choice([-2, -1, 1, 2])
    shifted = shift_complex(c, n)
    alpha = random_chain_map(ring, c, shifted, 0, rng)
    cone = mapping_cone(alpha)
    supp_c = complex_support(c)
    supp_cone = complex_support(cone)
    ok = supp_c.same_as(supp_cone)
    return {
        "seed": seed,
        "skipped": False,
        "shift": n,
        "ok": ok,
        "support_c": supp_c.format(),
        "support_cone": supp_cone.format(),
        "empty": supp_c.is_empty,
    }


def ksp_cone_suite(count: int, seed: int = 2024):
    """The Lemma-ksp randomized suite over the two fixed small quotient rings."""
    from .polyring import make_graded_ring

    rings = [
        make_graded_ring(32003, ["x"], [1], ["x^2"]),
        make_graded_ring(32003, ["x", "y"], [1, 1], ["x^2", "x*y"]),
    ]
    results = []
    for i in range(count):
        ring = rings[i % len(rings)]
        results.append(ksp_cone_case(ring, seed + i))
    return results


def triangle_subset_case(ring: GradedRing, seed: int):
    """Supp cone(alpha) (subset of) Supp source U Supp target, arbitrary degree-0 alpha."""
    rng = random.Random(seed)
    c = random_complex(ring, rng, length=3, max_rank=2, max_twist=3)
    d = random_complex(ring, rng, length=3, max_rank=2, max_twist=3)
    if c.is_zero() or d.is_zero():
        return {"seed": seed, "skipped": True, "ok": True}
    alpha = random_chain_map(ring, c, d, 0, rng)
    cone = mapping_cone(alpha)
    supp_cone = complex_support(cone)
    supp_c = complex_support(c)
    supp_d = complex_support(d)
    from .groebner import ideal_intersection

    union_gens = ideal_intersection(ring, list(supp_c.generators), list(supp_d.generators))
    if supp_c.is_empty:
        union_gens = list(supp_d.generators)
    elif supp_d.is_empty:
        union_gens = list(supp_c.generators)
    from .complexes import support_from_annihilator

    union = support_from_annihilator(ring, union_gens)
    if supp_c.is_empty and supp_d.is_empty:
        ok = supp_cone.is_empty
    else:
        ok = supp_cone.subset_of(union)
    return {"seed": seed, "skipped": False, "ok": ok}
