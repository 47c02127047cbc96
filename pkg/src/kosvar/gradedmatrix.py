"""Sparse matrices of homogeneous polynomials with internal-degree twists.

Convention: row_twists are the internal degrees of the target generators,
col_twists those of the source generators, and entry (i, j) is homogeneous of
degree col_twists[j] - row_twists[i] (or zero).  A homogeneous map of internal
degree d from generators of degrees t to generators of degrees r is stored
with row_twists = [x - d for x in r].
"""

from __future__ import annotations

from .errors import InhomogeneousEntry
from .polyring import GradedRing, Polynomial


class GradedMatrix:
    __slots__ = ("ring", "row_twists", "col_twists", "entries")

    def __init__(self, ring: GradedRing, row_twists, col_twists, entries=None, validate=True):
        self.ring = ring
        self.row_twists = tuple(row_twists)
        self.col_twists = tuple(col_twists)
        self.entries: dict[tuple[int, int], Polynomial] = {}
        if entries:
            for (i, j), f in entries.items():
                if f and not f.is_zero():
                    self.entries[(i, j)] = f
        if validate:
            self.validate_homogeneous()

    @property
    def nrows(self) -> int:
        return len(self.row_twists)

    @property
    def ncols(self) -> int:
        return len(self.col_twists)

    def validate_homogeneous(self):
        for (i, j), f in self.entries.items():
            want = self.col_twists[j] - self.row_twists[i]
            for exp in f.terms:
                if self.ring.wdeg(exp) != want:
                    raise InhomogeneousEntry(
                        f"entry ({i},{j}) = {self.ring.format_polynomial(f)} "
                        f"is not homogeneous of degree {want}"
                    )

    @staticmethod
    def zero(ring: GradedRing, row_twists, col_twists) -> "GradedMatrix":
        return GradedMatrix(ring, row_twists, col_twists, {}, validate=False)

    @staticmethod
    def identity(ring: GradedRing, twists) -> "GradedMatrix":
        one = ring.one()
        return GradedMatrix(
            ring, twists, twists, {(i, i): one for i in range(len(twists))}, validate=False
        )

    @staticmethod
    def from_rows(ring: GradedRing, rows, row_twists, col_twists) -> "GradedMatrix":
        entries = {}
        for i, row in enumerate(rows):
            for j, f in enumerate(row):
                if f and not f.is_zero():
                    entries[(i, j)] = f
        return GradedMatrix(ring, row_twists, col_twists, entries)

    def entry(self, i: int, j: int) -> Polynomial:
        return self.entries.get((i, j), self.ring.zero())

    def column(self, j: int) -> dict[int, Polynomial]:
        return {i: f for (i, jj), f in self.entries.items() if jj == j}

    def columns(self) -> list[dict[int, Polynomial]]:
        cols: list[dict[int, Polynomial]] = [{} for _ in range(self.ncols)]
        for (i, j), f in self.entries.items():
            cols[j][i] = f
        return cols

    def is_zero(self) -> bool:
        return not self.entries

    def __eq__(self, other):
        return (
            isinstance(other, GradedMatrix)
            and self.ring == other.ring
            and self.row_twists == other.row_twists
            and self.col_twists == other.col_twists
            and self.entries == other.entries
        )

    def __hash__(self):
        return hash((self.row_twists, self.col_twists, frozenset(self.entries)))

    def __repr__(self):
        return f"GradedMatrix({self.nrows}x{self.ncols})"

    def map_entries(self, fn) -> "GradedMatrix":
        return GradedMatrix(
            self.ring,
            self.row_twists,
            self.col_twists,
            {k: fn(v) for k, v in self.entries.items()},
            validate=False,
        )

    def reduced(self) -> "GradedMatrix":
        """Entries normal-formed modulo the ring's relations."""
        if not self.ring.relations:
            return self
        return self.map_entries(self.ring.nf)

    def scale(self, c: int) -> "GradedMatrix":
        return self.map_entries(lambda f: f.scale(c))

    def __add__(self, other: "GradedMatrix") -> "GradedMatrix":
        entries = dict(self.entries)
        for k, f in other.entries.items():
            g = entries.get(k)
            entries[k] = f if g is None else g + f
        return GradedMatrix(self.ring, self.row_twists, self.col_twists, entries, validate=False)

    def __sub__(self, other: "GradedMatrix") -> "GradedMatrix":
        return self + other.scale(-1)

    def compose(self, other: "GradedMatrix", reduce: bool = True) -> "GradedMatrix":
        """self o other (apply other first): (A o B)(x) = A(B(x))."""
        out: dict[tuple[int, int], Polynomial] = {}
        by_col: dict[int, list[tuple[int, Polynomial]]] = {}
        for (i, j), f in self.entries.items():
            by_col.setdefault(j, []).append((i, f))
        for (k, j), g in other.entries.items():
            for i, f in by_col.get(k, ()):  # self[i,k] * other[k,j]
                prod = f * g
                key = (i, j)
                cur = out.get(key)
                out[key] = prod if cur is None else cur + prod
        m = GradedMatrix(self.ring, self.row_twists, other.col_twists, out, validate=False)
        return m.reduced() if reduce else m

    def apply(self, vec: dict[int, Polynomial], reduce: bool = True) -> dict[int, Polynomial]:
        """Apply to a sparse column vector (index -> Polynomial)."""
        out: dict[int, Polynomial] = {}
        for (i, j), f in self.entries.items():
            g = vec.get(j)
            if g is None:
                continue
            prod = f * g
            cur = out.get(i)
            out[i] = prod if cur is None else cur + prod
        if reduce and self.ring.relations:
            out = {i: self.ring.nf(f) for i, f in out.items()}
        return {i: f for i, f in out.items() if not f.is_zero()}

    def drop(self, rows=(), cols=()) -> "GradedMatrix":
        rows = set(rows)
        cols = set(cols)
        rmap = {}
        for i in range(self.nrows):
            if i not in rows:
                rmap[i] = len(rmap)
        cmap = {}
        for j in range(self.ncols):
            if j not in cols:
                cmap[j] = len(cmap)
        entries = {
            (rmap[i], cmap[j]): f
            for (i, j), f in self.entries.items()
            if i in rmap and j in cmap
        }
        row_twists = tuple(t for i, t in enumerate(self.row_twists) if i not in rows)
        col_twists = tuple(t for j, t in enumerate(self.col_twists) if j not in cols)
        return GradedMatrix(self.ring, row_twists, col_twists, entries, validate=False)


def hstack(ring: GradedRing, row_twists, blocks: list[GradedMatrix]) -> GradedMatrix:
    """Concatenate matrices with a common target side by side."""
    col_twists = []
    entries = {}
    off = 0
    for b in blocks:
        for (i, j), f in b.entries.items():
            entries[(i, j + off)] = f
        col_twists.extend(b.col_twists)
        off += b.ncols
    return GradedMatrix(ring, row_twists, tuple(col_twists), entries, validate=False)


def columns_matrix(ring: GradedRing, row_twists, cols, col_twists) -> GradedMatrix:
    """Build a matrix from sparse columns (each a dict index -> Polynomial)."""
    entries = {}
    for j, col in enumerate(cols):
        for i, f in col.items():
            if f and not f.is_zero():
                entries[(i, j)] = f
    return GradedMatrix(ring, row_twists, tuple(col_twists), entries, validate=False)
