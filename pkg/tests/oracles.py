"""Independent brute-force oracles: dense per-degree linear algebra over F_p.

Deliberately separate from the package implementation: plain row reduction on
dense coefficient lists, monomial enumeration by itertools, straightforward
independent-variable-subset search.  Acceptance criterion 9 compares the
package's Groebner/syzygy/dimension answers against these.
"""

from __future__ import annotations

import itertools


def monomials(nvars: int, weights, degree: int):
    """All exponent tuples of weighted degree exactly `degree` (lex order)."""
    out = []

    def rec(i, rem, prefix):
        if i == nvars:
            if rem == 0:
                out.append(tuple(prefix))
            return
        for e in range(rem // weights[i] + 1):
            rec(i + 1, rem - e * weights[i], prefix + [e])

    rec(0, degree, [])
    return out


def rref(rows, p):
    """Dense row reduction mod p; returns (reduced rows, pivot columns)."""
    rows = [list(r) for r in rows if any(c % p for c in r)]
    pivots = []
    r = 0
    ncols = len(rows[0]) if rows else 0
    for c in range(ncols):
        pivot = None
        for i in range(r, len(rows)):
            if rows[i][c] % p:
                pivot = i
                break
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        inv = pow(rows[r][c], p - 2, p)
        rows[r] = [(x * inv) % p for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] % p:
                f = rows[i][c]
                rows[i] = [(a - f * b) % p for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows[:r], pivots


def in_span(rows, vec, p):
    """Is vec in the row span of rows (mod p)?"""
    red, _ = rref(rows + [vec], p)
    red2, _ = rref(rows, p)
    return len(red) == len(red2)


def poly_to_vec(terms, coords):
    idx = {m: i for i, m in enumerate(coords)}
    v = [0] * len(coords)
    for e, c in terms.items():
        v[idx[e]] = c
    return v


def ideal_slice_rows(gens_terms, gen_degs, nvars, weights, d, p):
    """Dense rows spanning the degree-d slice of the ideal (gens)."""
    coords = monomials(nvars, weights, d)
    rows = []
    for terms, gd in zip(gens_terms, gen_degs):
        rem = d - gd
        if rem < 0:
            continue
        for mu in monomials(nvars, weights, rem):
            shifted = {tuple(a + b for a, b in zip(e, mu)): c for e, c in terms.items()}
            rows.append(poly_to_vec(shifted, coords))
    return rows, coords


def ideal_membership(gens_terms, gen_degs, f_terms, f_deg, nvars, weights, p):
    """Homogeneous ideal membership by dense slice algebra."""
    rows, coords = ideal_slice_rows(gens_terms, gen_degs, nvars, weights, f_deg, p)
    return in_span(rows, poly_to_vec(f_terms, coords), p)


def module_slice_coords(nvars, weights, twists, d):
    out = []
    for pos, t in enumerate(twists):
        for m in monomials(nvars, weights, d - t):
            out.append((pos, m))
    return out


def kernel_slice(matrix_cols, row_twists, col_twists, nvars, weights, d, p):
    """Dense kernel of a graded matrix in source degree d.

    matrix_cols: list of columns, each {row_index: {exp: coeff}}.
    Returns kernel vectors as lists over the source slice coordinates.
    """
    src = module_slice_coords(nvars, weights, col_twists, d)
    tgt = module_slice_coords(nvars, weights, row_twists, d)
    tgt_idx = {c: i for i, c in enumerate(tgt)}
    # matrix of the slice map: columns indexed by src coords
    cols = []
    for (j, mu) in src:
        vec = [0] * len(tgt)
        for i, terms in matrix_cols[j].items():
            for e, c in terms.items():
                key = (i, tuple(a + b for a, b in zip(e, mu)))
                vec[tgt_idx[key]] = (vec[tgt_idx[key]] + c) % p
        cols.append(vec)
    # kernel of the transposed row space: solve A x = 0 with A columns = cols
    rows = [[cols[j][i] for j in range(len(src))] for i in range(len(tgt))]
    red, pivots = rref(rows, p)
    free = [j for j in range(len(src)) if j not in pivots]
    kernel = []
    for fj in free:
        x = [0] * len(src)
        x[fj] = 1
        for r, pc in zip(red, pivots):
            x[pc] = (-r[fj]) % p
        kernel.append(x)
    return kernel, src


def monomial_ideal_dimension(gens, nvars):
    """Brute-force Krull dimension of a monomial ideal: largest variable
    subset S such that no generator is supported inside S."""
    if any(not any(g) for g in gens):
        return -1
    best = -1
    for size in range(nvars, -1, -1):
        for subset in itertools.combinations(range(nvars), size):
            s = set(subset)
            if all(any(e > 0 and i not in s for i, e in enumerate(g)) for g in gens):
                best = size
                break
        if best >= 0:
            break
    return best


def quotient_hilbert(gens_terms, gen_degs, nvars, weights, d_max, p):
    """dim_k (Q/(gens))_d by dense rank, for d = 0..d_max."""
    out = []
    for d in range(d_max + 1):
        rows, coords = ideal_slice_rows(gens_terms, gen_degs, nvars, weights, d, p)
        red, _ = rref(rows, p)
        out.append(len(coords) - len(red))
    return out
