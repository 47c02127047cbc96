"""Koszul DG algebras E = Kos^Q(f) and strict DG E-modules.

A DGEModule couples a free complex over Q with the left-multiplication
operators lambda_i (degree +1, internal twist deg f_i).  The standing
identities - Leibniz, strict anticommutation, squares zero - are checked by
dg_module_verify and asserted by every constructor in this package.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .complexes import FreeComplex, koszul_complex
from .errors import ComplexInvariantError, InhomogeneousInput, NotInIdeal
from .gradedmatrix import GradedMatrix
from .groebner import express_in_terms, minimal_generators
from .polyring import GradedRing, Polynomial


def subset_sign(j: int, subset: tuple[int, ...]) -> int:
    """Sign of extracting/inserting xi_j relative to the sorted subset."""
    count = sum(1 for l in subset if l < j)
    return -1 if count % 2 else 1


def ext_mult(s1: tuple[int, ...], s2: tuple[int, ...]):
    """xi_{s1} ^ xi_{s2}: (sign, sorted union), or None when they intersect."""
    if set(s1) & set(s2):
        return None
    inversions = sum(1 for a in s1 for b in s2 if a > b)
    sign = -1 if inversions % 2 else 1
    return sign, tuple(sorted(s1 + s2))


class KoszulAlgebra:
    """E = Q<xi_1..xi_n | d xi_i = f_i> over the polynomial ring Q."""

    def __init__(self, ring: GradedRing, elements, require_minimal: bool = True):
        base = ring.base_ring()
        self.ring = base
        self.elements = tuple(elements)
        for f in self.elements:
            if f.is_zero() or not base.is_homogeneous(f):
                raise InhomogeneousInput("Koszul algebra generators must be homogeneous and nonzero")
        self.degrees = tuple(base.degree(f) for f in self.elements)
        self.n = len(self.elements)
        if require_minimal and self.n:
            if len(minimal_generators(base, list(self.elements))) != self.n:
                raise InhomogeneousInput(
                    "generator list is not minimal; reduce it with minimal_generators first"
                )

    def in_n_squared(self) -> bool:
        """Every term of every generator has weighted degree >= 2."""
        return all(
            all(self.ring.wdeg(exp) >= 2 for exp in f.terms) for f in self.elements
        )

    def quotient_ring(self) -> GradedRing:
        return self.ring.with_relations(self.elements)

    def operator_ring(self) -> GradedRing:
        """A = k[chi_1..chi_n], each chi of cohomological degree 2."""
        names = tuple(f"chi{i + 1}" for i in range(self.n))
        return GradedRing(self.ring.prime, names, (2,) * self.n, ())

    def complex(self) -> FreeComplex:
        return koszul_complex(self.ring, list(self.elements))

    def __repr__(self):
        gens = ", ".join(self.ring.format_polynomial(f) for f in self.elements)
        return f"Kos({self.ring!r}; {gens})"


@dataclass
class DGEModule:
    """Free complex over Q with a strict action of a Koszul algebra."""

    algebra: KoszulAlgebra
    complex: FreeComplex
    actions: list[dict[int, GradedMatrix]]  # actions[i][s]: C_s -> C_{s+1}
    meta: dict = field(default_factory=dict)

    def action(self, i: int, s: int) -> GradedMatrix:
        comp = self.actions[i]
        if s in comp:
            return comp[s]
        ring = self.algebra.ring
        rows = tuple(t - self.algebra.degrees[i] for t in self.complex.twist(s + 1))
        return GradedMatrix.zero(ring, rows, self.complex.twist(s))

    def chi_action(self, i: int, s: int) -> GradedMatrix:
        """The recorded S-action operator chi_i: C_s -> C_{s-2} (U-type modules)."""
        chi = self.meta.get("chi_actions")
        if chi is None:
            raise ComplexInvariantError("this DG module carries no S-action metadata")
        comp = chi[i]
        if s in comp:
            return comp[s]
        ring = self.algebra.ring
        rows = tuple(t + self.algebra.degrees[i] for t in self.complex.twist(s - 2))
        return GradedMatrix.zero(ring, rows, self.complex.twist(s))


@dataclass
class DGVerifyReport:
    ok: bool
    failures: list[tuple[str, int, int, int]]  # (identity, i, j, degree)

    def first(self):
        return self.failures[0] if self.failures else None


def dg_module_verify(x: DGEModule) -> DGVerifyReport:
    """Check d^2 = 0, Leibniz, strict anticommutation and squares on every
    stored degree; report the first counterexample location per identity."""
    ring = x.algebra.ring
    cx = x.complex
    failures = []
    degrees = cx.degrees()
    for s in degrees:
        if (s + 1) in cx.diffs and s in cx.diffs:
            if not cx.diffs[s].compose(cx.diffs[s + 1]).is_zero():
                failures.append(("d^2", -1, -1, s + 1))
    n = x.algebra.n
    for i in range(n):
        f_i = x.algebra.elements[i]
        for s in degrees:
            lam = x.action(i, s)
            lam_prev = x.action(i, s - 1)
            lhs = cx.diff(s + 1).compose(lam) + lam_prev.compose(cx.diff(s))
            want = GradedMatrix(
                ring,
                lhs.row_twists,
                lhs.col_twists,
                {(k, k): f_i for k in range(cx.rank(s))},
                validate=False,
            )
            if not (lhs - want).is_zero():
                failures.append(("leibniz", i, i, s))
        for j in range(i, n):
            for s in degrees:
                a = x.action(j, s + 1).compose(x.action(i, s))
                b = x.action(i, s + 1).compose(x.action(j, s))
                if not (a + b).is_zero():
                    failures.append(("anticommute" if i != j else "square", i, j, s))
    return DGVerifyReport(not failures, failures)


def koszul_action(algebra: KoszulAlgebra, target_elements) -> DGEModule:
    """The DG E-module structure on Kos^Q(f') from division witnesses
    f_i = sum_j a_ij f'_j; lambda_i is left multiplication by sum a_ij xi'_j."""
    ring = algebra.ring
    fprime = list(target_elements)
    target = koszul_complex(ring, fprime)
    m = len(fprime)
    witnesses = []
    for i, f in enumerate(algebra.elements):
        coeffs, rem = express_in_terms(ring, f, fprime)
        if not rem.is_zero():
            raise NotInIdeal(
                f"generator {ring.format_polynomial(f)} is not in the target ideal; "
                f"normal form {ring.format_polynomial(rem)}"
            )
        witnesses.append(coeffs)
    import itertools

    subsets = {i: list(itertools.combinations(range(m), i)) for i in range(m + 1)}
    index = {i: {S: k for k, S in enumerate(subsets[i])} for i in subsets}
    actions: list[dict[int, GradedMatrix]] = []
    for i in range(algebra.n):
        comp: dict[int, GradedMatrix] = {}
        d_i = algebra.degrees[i]
        for s in range(m):
            entries = {}
            for col, big in enumerate(subsets[s]):
                for j in range(m):
                    if j in big:
                        continue
                    a_ij = witnesses[i][j]
                    if a_ij.is_zero():
                        continue
                    sign = subset_sign(j, big)
                    row = index[s + 1][tuple(sorted(big + (j,)))]
                    val = a_ij if sign == 1 else a_ij.scale(-1)
                    cur = entries.get((row, col))
                    entries[(row, col)] = val if cur is None else cur + val
            if entries:
                rows = tuple(t - d_i for t in target.twist(s + 1))
                comp[s] = GradedMatrix(ring, rows, target.twist(s), entries)
        actions.append(comp)
    module = DGEModule(
        algebra,
        target,
        actions,
        meta={"kind": "koszul_action", "witnesses": witnesses, "target_elements": tuple(fprime)},
    )
    report = dg_module_verify(module)
    if not report.ok:
        raise ComplexInvariantError(f"koszul_action produced an invalid DG module: {report.first()}")
    return module


def regular_module(algebra: KoszulAlgebra) -> DGEModule:
    """E acting on itself by left multiplication (the Koszul resolution of
    R = Q/(f) when f is a regular sequence)."""
    return koszul_action(algebra, list(algebra.elements))
