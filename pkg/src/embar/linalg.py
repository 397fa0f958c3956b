"""Exact sparse linear algebra over the rationals.

Everything downstream (cohomology ranks, quotient bases, induced maps)
sits on this module, so it is deliberately small and fully exact: no
floating point anywhere. Scalars are Python ints or ``fractions.Fraction``
(ints are kept unboxed as a fast path; a Fraction with denominator 1 is
normalized back to int). Vectors are sparse dicts index -> scalar with no
stored zeros; matrices are column-major lists of such dicts.

Echelon forms are fully reduced, so ranks, kernels and representative
choices are canonical: permuting the input rows changes nothing.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Union

from .errors import CompositionNonzero, NotACocycle

Q = Union[int, Fraction]
Vec = dict[int, Q]


def qnorm(x: Q) -> Q:
    """Collapse Fraction(n, 1) to the plain int n."""
    if isinstance(x, Fraction) and x.denominator == 1:
        return x.numerator
    return x


def qdiv(a: Q, b: Q) -> Q:
    if isinstance(a, int) and isinstance(b, int):
        return qnorm(Fraction(a, b))
    return qnorm(Fraction(a) / Fraction(b))


def vec_add_scaled(dst: Vec, src: Vec, c: Q) -> None:
    """dst += c * src, pruning entries that cancel to zero."""
    if not c:
        return
    for i, v in src.items():
        w = dst.get(i, 0) + c * v
        if w:
            dst[i] = w
        else:
            dst.pop(i, None)


def vec_scale(v: Vec, c: Q) -> Vec:
    if not c:
        return {}
    return {i: c * x for i, x in v.items()}


class RationalMatrix:
    """Sparse matrix over the rationals, column-major.

    ``entries()`` exposes the (row, col) -> value view; no zero entry is
    ever stored and all indices are bounds-checked at construction.
    """

    __slots__ = ("rows", "cols", "_cols")

    def __init__(self, rows: int, cols: int, columns: list[Vec] | None = None):
        self.rows = rows
        self.cols = cols
        if columns is None:
            columns = [{} for _ in range(cols)]
        if len(columns) != cols:
            raise ValueError("column count mismatch")
        for col in columns:
            for r, v in col.items():
                if not (0 <= r < rows):
                    raise ValueError(f"row index {r} out of bounds")
                if not v:
                    raise ValueError("stored zero entry")
        self._cols = columns

    @classmethod
    def from_entries(cls, rows: int, cols: int, entries: dict[tuple[int, int], Q]) -> "RationalMatrix":
        columns: list[Vec] = [{} for _ in range(cols)]
        for (r, c), v in entries.items():
            if not (0 <= c < cols):
                raise ValueError(f"column index {c} out of bounds")
            if v:
                columns[c][r] = v
        return cls(rows, cols, columns)

    @classmethod
    def zero(cls, rows: int, cols: int) -> "RationalMatrix":
        return cls(rows, cols)

    @classmethod
    def identity(cls, n: int) -> "RationalMatrix":
        return cls(n, n, [{i: 1} for i in range(n)])

    def column(self, j: int) -> Vec:
        return self._cols[j]

    def entries(self) -> dict[tuple[int, int], Q]:
        return {(r, j): v for j, col in enumerate(self._cols) for r, v in col.items()}

    def is_zero(self) -> bool:
        return all(not col for col in self._cols)

    def apply(self, v: Vec) -> Vec:
        """Matrix-vector product for a sparse coordinate vector."""
        out: Vec = {}
        for j, c in v.items():
            vec_add_scaled(out, self._cols[j], c)
        return out

    def compose(self, other: "RationalMatrix") -> "RationalMatrix":
        """self @ other (apply other first)."""
        if other.rows != self.cols:
            raise ValueError("shape mismatch in composition")
        return RationalMatrix(self.rows, other.cols, [self.apply(col) for col in other._cols])

    def transpose(self) -> "RationalMatrix":
        columns: list[Vec] = [{} for _ in range(self.rows)]
        for j, col in enumerate(self._cols):
            for r, v in col.items():
                columns[r][j] = v
        return RationalMatrix(self.cols, self.rows, columns)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, RationalMatrix)
            and self.rows == other.rows
            and self.cols == other.cols
            and self._cols == other._cols
        )

    def __repr__(self) -> str:
        return f"RationalMatrix({self.rows}x{self.cols}, nnz={sum(len(c) for c in self._cols)})"


def rref(rows: Iterable[Vec], ncols: int) -> tuple[list[Vec], list[int]]:
    """Reduced row echelon form of the span of ``rows``.

    Returns (echelon rows, pivot columns), pivots strictly increasing,
    each pivot entry 1 and alone in its column. The output depends only
    on the row span, which is what makes every downstream basis choice
    reproducible.
    """
    pivot_rows: dict[int, Vec] = {}  # pivot column -> row
    for row in rows:
        work = dict(row)
        while work:
            p = min(work)
            if p in pivot_rows:
                vec_add_scaled(work, pivot_rows[p], -work[p])
                continue
            # p is a new pivot; clear trailing entries at existing pivot
            # columns (rows are reduced, so one pass cannot reintroduce any)
            for q in [i for i in work if i in pivot_rows]:
                vec_add_scaled(work, pivot_rows[q], -work[q])
            lead = work[p]
            if lead != 1:
                work = {i: qdiv(v, lead) for i, v in work.items()}
            # back-substitute into existing rows to keep the form reduced
            for prow in pivot_rows.values():
                if p in prow:
                    vec_add_scaled(prow, work, -prow[p])
            pivot_rows[p] = work
            break
    pivots = sorted(pivot_rows)
    return [pivot_rows[p] for p in pivots], pivots


def rank(M: RationalMatrix) -> int:
    return len(rref(M._cols, M.rows)[1])


def rank_and_kernel(M: RationalMatrix) -> tuple[int, list[Vec]]:
    """Rank of M and the canonical reduced basis of its null space.

    Kernel vectors are indexed by the free columns of the reduced row
    echelon form; rank + len(kernel) == cols exactly.
    """
    # Row-echelonize the rows of M; M is stored column-major, so transpose.
    row_list: list[Vec] = [{} for _ in range(M.rows)]
    for j, col in enumerate(M._cols):
        for r, v in col.items():
            row_list[r][j] = v
    ech, pivots = rref(row_list, M.cols)
    pivot_set = set(pivots)
    kernel: list[Vec] = []
    for f in range(M.cols):
        if f in pivot_set:
            continue
        v: Vec = {f: 1}
        for p, row in zip(pivots, ech):
            c = row.get(f, 0)
            if c:
                v[p] = -c
        kernel.append(v)
    return len(pivots), kernel


class _TrackedEchelon:
    """Echelon span with coordinate tracking over chosen representatives.

    Rows are stored by pivot (their least nonzero index), pivot entry
    normalized to 1. Each row carries coordinates expressing its class
    in terms of the representatives adjoined so far; rows coming from
    the quotiented-out subspace carry zero coordinates.
    """

    def __init__(self):
        self.rows: dict[int, tuple[Vec, Vec]] = {}  # pivot -> (vector, coords)

    def reduce(self, v: Vec, coords: Vec | None = None) -> tuple[Vec, Vec]:
        rem = dict(v)
        acc: Vec = dict(coords) if coords else {}
        while rem:
            p = min(rem)
            hit = self.rows.get(p)
            if hit is None:
                break
            c = rem[p]
            vec_add_scaled(rem, hit[0], -c)
            vec_add_scaled(acc, hit[1], -c)
        return rem, acc

    def insert(self, v: Vec, coords: Vec | None = None) -> bool:
        """Adjoin v (with its class coordinates) if independent."""
        rem, acc = self.reduce(v, coords)
        if not rem:
            return False
        p = min(rem)
        lead = rem[p]
        if lead != 1:
            rem = {i: qdiv(x, lead) for i, x in rem.items()}
            acc = {i: qdiv(x, lead) for i, x in acc.items()}
        self.rows[p] = (rem, acc)
        return True


class Projector:
    """Maps a vector to its coordinates on quotient representatives.

    Built by :func:`quotient_basis` and :func:`cohomology_at`. ``project``
    raises :class:`NotACocycle` when the vector is not in the spanned
    subspace (for cohomology, when it is not a kernel element).
    """

    def __init__(self, echelon: _TrackedEchelon, n_reps: int):
        self._echelon = echelon
        self.n_reps = n_reps

    def project(self, v: Vec) -> list[Q]:
        rem, acc = self._echelon.reduce(v)
        if rem:
            raise NotACocycle(f"vector is outside the projected subspace (residual at index {min(rem)})")
        coords = [0] * self.n_reps
        for i, c in acc.items():
            coords[i] = qnorm(-c)
        return coords


def quotient_basis(sub: list[Vec], ambient_dim: int) -> tuple[list[Vec], Projector]:
    """Complete span(sub) to the full space by standard basis vectors.

    The representatives are the standard basis vectors at non-pivot
    positions of the echelonized subspace; the projector returns, for
    any vector, its coordinates on those representatives modulo
    span(sub).
    """
    ech = _TrackedEchelon()
    for v in sub:
        for i in v:
            if not (0 <= i < ambient_dim):
                raise ValueError("subspace vector exceeds ambient dimension")
        ech.insert(v, {})
    reps: list[Vec] = []
    for j in range(ambient_dim):
        idx = len(reps)
        if ech.insert({j: 1}, {idx: 1}):
            reps.append({j: 1})
    return reps, Projector(ech, len(reps))


def cohomology_at(d_in: RationalMatrix, d_out: RationalMatrix) -> tuple[int, list[Vec], Projector]:
    """Cohomology ker(d_out)/im(d_in) at the middle slot of a complex.

    Checks d_out * d_in == 0 exactly and raises
    :class:`CompositionNonzero` otherwise -- by construction that can
    only mean a sign bug upstream, never bad user input. Representatives
    are echelon-reduced kernel vectors (leading coefficient 1), chosen
    deterministically.
    """
    if d_in.cols and d_out.rows:
        if d_out.cols != d_in.rows:
            raise ValueError("chain degrees do not line up")
        for j in range(d_in.cols):
            if d_out.apply(d_in.column(j)):
                raise CompositionNonzero(f"d_out * d_in != 0 on basis column {j}")
    _, kernel = rank_and_kernel(d_out)
    ech = _TrackedEchelon()
    im_rank = 0
    for j in range(d_in.cols):
        if ech.insert(d_in.column(j), {}):
            im_rank += 1
    reps: list[Vec] = []
    for k in kernel:
        rem, _ = ech.reduce(k)
        if not rem:
            continue
        lead = rem[min(rem)]
        if lead != 1:
            rem = {i: qdiv(x, lead) for i, x in rem.items()}
        idx = len(reps)
        ech.insert(rem, {idx: 1})
        reps.append(rem)
    dim = len(reps)
    assert dim == len(kernel) - im_rank, "rank-nullity bookkeeping broke"
    return dim, reps, Projector(ech, dim)
