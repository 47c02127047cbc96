"""Sparse F_p linear systems with deterministic elimination.

Variables are arbitrary sortable keys; equations are sparse rows.  Used for
sampling chain maps from solution spaces and for homotopy solving, where the
unknowns are scattered matrix-entry coefficients.
"""

from __future__ import annotations


class SparseSystem:
    """Accumulate equations sum coeff*var = rhs over F_p and solve."""

    def __init__(self, p: int):
        self.p = p
        self.equations: list[tuple[dict, int]] = []
        self.variables: set = set()

    def add_variable(self, var):
        self.variables.add(var)

    def add_equation(self, row: dict, rhs: int = 0):
        row = {k: v % self.p for k, v in row.items() if v % self.p}
        self.variables.update(row)
        self.equations.append((row, rhs % self.p))

    def solve(self):
        """Returns (particular, nullspace) or None if infeasible.

        particular: dict var -> value with every free variable set to 0;
        nullspace: one basis vector per free variable, in variable order.
        """
        p = self.p
        order = sorted(self.variables, key=repr)
        rank_of = {v: i for i, v in enumerate(order)}
        pivots: dict = {}  # var -> (row with var:1, rhs)
        created: list = []
        for row, rhs in self.equations:
            row = dict(row)
            while True:
                live = [v for v in row if v in pivots]
                if not live:
                    break
                v = min(live, key=lambda x: rank_of[x])
                c = row.pop(v)
                prow, prhs = pivots[v]
                for k, cv in prow.items():
                    if k == v:
                        continue
                    nv = (row.get(k, 0) - c * cv) % p
                    if nv:
                        row[k] = nv
                    else:
                        row.pop(k, None)
                rhs = (rhs - c * prhs) % p
            if not row:
                if rhs % p:
                    return None
                continue
            v = min(row, key=lambda x: rank_of[x])
            c = row.pop(v)
            inv = pow(c, p - 2, p)
            nrow = {k: (cv * inv) % p for k, cv in row.items()}
            nrow[v] = 1
            pivots[v] = (nrow, (rhs * inv) % p)
            created.append(v)

        # a pivot row can only reference pivots created later; reduce latest
        # first so every row ends up over free variables only
        for v in reversed(created):
            row, rhs = pivots[v]
            out: dict = {}
            for k, c in row.items():
                if k == v:
                    continue
                if k in pivots:
                    # substitute k = krhs - sum(cc * kk): coefficients flip sign
                    krow, krhs = pivots[k]
                    for kk, cc in krow.items():
                        if kk == k:
                            continue
                        out[kk] = (out.get(kk, 0) - c * cc) % p
                    rhs = (rhs - c * krhs) % p
                else:
                    out[k] = (out.get(k, 0) + c) % p
            newrow = {k: c % p for k, c in out.items() if c % p}
            newrow[v] = 1
            pivots[v] = (newrow, rhs % p)

        free = [v for v in order if v not in pivots]
        particular = {v: 0 for v in free}
        for v, (_, rhs) in pivots.items():
            particular[v] = rhs
        nullspace = []
        for f in free:
            vec = {f: 1}
            for v, (row, _) in pivots.items():
                c = row.get(f, 0)
                if c:
                    vec[v] = (-c) % p
            nullspace.append(vec)
        return particular, nullspace
