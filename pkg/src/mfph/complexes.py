"""Filtered simplicial complexes and sparse boundary columns.

A filtration is stored as one simplex per step, ordered by
(value, dimension, vertex tuple); rows of boundary columns are the
1-based filtration indices of facets.  Columns are sorted lists of
(row, coefficient) with coefficients in [1, Q) for the working modulus
Q; an entry that is zero modulo some of the basis primes but not all of
them stays in the column, which is what lets one column carry every
field at once.
"""

from __future__ import annotations

from .crt import PrimeBasis, partial_identity

Simplex = tuple[int, ...]
Entry = tuple[int, int]
SparseColumn = list[Entry]

__all__ = [
    "FilteredComplex",
    "Simplex",
    "SparseColumn",
    "boundary_column",
    "column_axpy",
    "column_scale",
    "load_filtration",
    "low_extended",
    "partial_negate",
    "partial_swap",
    "save_filtration",
]


def _normalize_simplex(vertices) -> Simplex:
    verts = tuple(sorted(vertices))
    if not verts:
        raise ValueError("empty simplex")
    if len(set(verts)) != len(verts):
        raise ValueError(f"repeated vertex in simplex {verts}")
    if verts[0] < 0:
        raise ValueError(f"negative vertex id in simplex {verts}")
    return verts


class FilteredComplex:
    """Immutable filtered simplicial complex; indices are 1-based.

    Built from (vertices, value) pairs; simplices are ordered by
    (value, dimension, vertex tuple) so that ties in value are broken
    deterministically, and the result is validated: faces must be
    present, enter no later than their cofaces, and each step adds
    exactly one simplex.
    """

    __slots__ = ("simplices", "values", "index_of", "_dims", "_brows")

    def __init__(self, items):
        pairs = [(_normalize_simplex(v), float(f)) for v, f in items]
        pairs.sort(key=lambda p: (p[1], len(p[0]), p[0]))
        self.simplices: tuple[Simplex, ...] = tuple(p[0] for p in pairs)
        self.values: tuple[float, ...] = tuple(p[1] for p in pairs)
        index: dict[Simplex, int] = {}
        for j, s in enumerate(self.simplices, start=1):
            if s in index:
                raise ValueError(f"duplicate simplex {s}")
            index[s] = j
        self.index_of: dict[Simplex, int] = index
        self._dims: tuple[int, ...] = tuple(len(s) - 1 for s in self.simplices)
        self._brows: list[tuple[tuple[int, int], ...] | None] = [None] * len(pairs)
        self._validate()

    def _validate(self) -> None:
        for j, verts in enumerate(self.simplices, start=1):
            if len(verts) == 1:
                continue
            for i in range(len(verts)):
                facet = verts[:i] + verts[i + 1 :]
                fj = self.index_of.get(facet)
                if fj is None:
                    raise ValueError(
                        f"simplex {verts} is missing its face {facet}"
                    )
                if fj >= j:
                    raise ValueError(
                        f"face {facet} enters after its coface {verts}"
                    )

    def __len__(self) -> int:
        return len(self.simplices)

    def simplex(self, j: int) -> Simplex:
        return self.simplices[j - 1]

    def value(self, j: int) -> float:
        return self.values[j - 1]

    def dim(self, j: int) -> int:
        return self._dims[j - 1]

    @property
    def max_dim(self) -> int:
        return max(self._dims) if self._dims else -1

    def indices_by_dim(self) -> dict[int, list[int]]:
        """Filtration indices grouped by simplex dimension, ascending."""
        out: dict[int, list[int]] = {}
        for j, d in enumerate(self._dims, start=1):
            out.setdefault(d, []).append(j)
        return out

    def boundary_rows(self, j: int) -> tuple[tuple[int, int], ...]:
        """Facet rows of simplex j with signs +1/-1, sorted by row; cached."""
        cached = self._brows[j - 1]
        if cached is not None:
            return cached
        verts = self.simplices[j - 1]
        rows: list[tuple[int, int]] = []
        if len(verts) > 1:
            for i in range(len(verts)):
                facet = verts[:i] + verts[i + 1 :]
                row = self.index_of.get(facet)
                if row is None:
                    raise ValueError(
                        f"face {facet} of simplex {verts} not in complex"
                    )
                rows.append((row, 1 if i % 2 == 0 else -1))
            rows.sort()
        result = tuple(rows)
        self._brows[j - 1] = result
        return result


def boundary_column(cx: FilteredComplex, basis: PrimeBasis, j: int) -> SparseColumn:
    """Boundary of simplex j as a sparse column with signs 1 and Q-1."""
    q_all = basis.product
    return [(row, 1 if sign > 0 else q_all - 1) for row, sign in cx.boundary_rows(j)]


def column_axpy(target: SparseColumn, alpha: int, source: SparseColumn, q_all: int) -> SparseColumn:
    """target + alpha*source over Z/QZ; entries equal to 0 mod Q are dropped."""
    alpha %= q_all
    if alpha == 0 or not source:
        return target
    out: SparseColumn = []
    push = out.append
    i = j = 0
    n, m = len(target), len(source)
    while i < n and j < m:
        ti = target[i]
        sj = source[j]
        ri, rj = ti[0], sj[0]
        if ri < rj:
            push(ti)
            i += 1
        elif ri > rj:
            c = alpha * sj[1] % q_all
            if c:
                push((rj, c))
            j += 1
        else:
            c = (ti[1] + alpha * sj[1]) % q_all
            if c:
                push((ri, c))
            i += 1
            j += 1
    if i < n:
        out.extend(target[i:])
    while j < m:
        sj = source[j]
        c = alpha * sj[1] % q_all
        if c:
            push((sj[0], c))
        j += 1
    return out


def column_scale(col: SparseColumn, alpha: int, q_all: int) -> SparseColumn:
    """alpha*col over Z/QZ, zeros dropped."""
    alpha %= q_all
    if alpha == 1:
        return list(col)
    out = []
    for row, c in col:
        c = c * alpha % q_all
        if c:
            out.append((row, c))
    return out


def low_extended(col: SparseColumn, mask: int) -> int | None:
    """Largest row whose coefficient is nonzero mod mask; None if no such row."""
    for row, c in reversed(col):
        if c % mask:
            return row
    return None


def partial_swap(a: SparseColumn, b: SparseColumn, basis: PrimeBasis, mask: int):
    """Exchange the projections of two columns on the fields of the mask."""
    q_all = basis.product
    l_in = partial_identity(basis, mask)
    l_out = (1 - l_in) % q_all
    a2 = column_axpy(column_scale(a, l_out, q_all), l_in, b, q_all)
    b2 = column_axpy(column_scale(b, l_out, q_all), l_in, a, q_all)
    return a2, b2


def partial_negate(a: SparseColumn, basis: PrimeBasis, mask: int) -> SparseColumn:
    """Negate the projection of a column on the fields of the mask."""
    q_all = basis.product
    return column_scale(a, (1 - 2 * partial_identity(basis, mask)) % q_all, q_all)


def load_filtration(path) -> FilteredComplex:
    """Read a filtration file: one `dim v0 v1 ... vd value` line per simplex.

    Blank lines and lines starting with '#' are skipped.  Lines need not
    be sorted; the deterministic (value, dimension, vertices) order is
    imposed on load and closure is validated.
    """
    items = []
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            parts = line.split()
            try:
                dim = int(parts[0])
                if len(parts) != dim + 3:
                    raise ValueError(
                        f"expected {dim + 3} fields for dimension {dim}"
                    )
                verts = tuple(int(p) for p in parts[1 : dim + 2])
                value = float(parts[-1])
            except ValueError as exc:
                raise ValueError(f"{path}:{lineno}: bad simplex line: {exc}") from None
            items.append((verts, value))
    if not items:
        raise ValueError(f"{path}: empty filtration")
    return FilteredComplex(items)


def _format_value(v: float) -> str:
    return repr(int(v)) if float(v).is_integer() else repr(v)


def save_filtration(cx: FilteredComplex, path, header=()) -> None:
    """Write a filtration file; `header` lines are emitted as '#' comments."""
    with open(path, "w", encoding="utf-8") as fh:
        for line in header:
            fh.write(f"# {line}\n")
        for j in range(1, len(cx) + 1):
            verts = cx.simplex(j)
            fh.write(
                f"{len(verts) - 1} "
                + " ".join(str(v) for v in verts)
                + f" {_format_value(cx.value(j))}\n"
            )
