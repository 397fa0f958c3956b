"""Finitely presented CDGAs over the rationals, truncated at degree N.

An algebra is handed to us as a generator presentation (graded-commutative
generators, a differential given on generators, optional homogeneous
relations) and expanded into an explicit per-degree monomial basis with a
multiplication table and differential matrices. All structure constants
are exact rationals.

Conventions baked in here and relied on everywhere downstream:

* monomials are words in the generators with the declared generator
  order; odd-degree generators appear with exponent at most 1 (their
  squares vanish by graded commutativity);
* reordering two elements of degrees p and q costs the Koszul sign
  (-1)^(p*q);
* the differential raises degree by 1 and satisfies the graded Leibniz
  rule;
* degree 0 is spanned by the unit alone and the augmentation sends it
  to 1.

Every constructed algebra is validated against these invariants on its
whole basis (commutativity and associativity within the window, Leibniz,
d*d = 0), so a sign mistake in any producer fails loudly at build time.

Relations are handled by naive degreewise linear reduction: the ideal
they generate is spanned, per degree, by monomial multiples of the
relations, and the quotient basis is the set of non-pivot monomials of
its echelon form. This covers truncated polynomial rings and friends; no
Groebner machinery.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import (
    DSquareNonzero,
    InhomogeneousDifferential,
    InhomogeneousRelation,
    InvalidAlgebra,
    InvalidMorphism,
    RelationNotDifferentialIdeal,
)
from .linalg import (
    Q,
    RationalMatrix,
    Vec,
    cohomology_at,
    qnorm,
    rank,
    rref,
    vec_add_scaled,
)

Monomial = tuple[tuple[int, int], ...]  # ((generator index, exponent), ...), index-sorted
Poly = dict[Monomial, Q]

UNIT_MONO: Monomial = ()


@dataclass(frozen=True)
class Generator:
    name: str
    degree: int


@dataclass
class GeneratorPresentation:
    """Input data for :func:`build_free`.

    ``differentials`` maps a generator index to the polynomial value of
    its differential (missing index means zero); ``relations`` is a list
    of homogeneous polynomials to quotient by.
    """

    generators: list[Generator]
    differentials: dict[int, Poly] = field(default_factory=dict)
    relations: list[Poly] = field(default_factory=list)

    @property
    def degrees(self) -> list[int]:
        return [g.degree for g in self.generators]


# ---------------------------------------------------------------------------
# free-monomial arithmetic


def mono_degree(degrees: list[int], m: Monomial) -> int:
    return sum(degrees[i] * e for i, e in m)


def mono_mul(degrees: list[int], m1: Monomial, m2: Monomial):
    """Normal-form product of two monomials.

    Returns (sign, monomial) or None when the product vanishes (an odd
    generator squared). The sign counts, modulo 2, the pairs of odd
    letters that cross while the concatenation is sorted back into
    generator order.
    """
    if not m1:
        return 1, m2
    if not m2:
        return 1, m1
    odd1 = [i for i, _ in m1 if degrees[i] % 2]
    inv = 0
    merged = dict(m1)
    for j, e in m2:
        if degrees[j] % 2:
            if j in merged:
                return None
            for i in odd1:
                if j < i:
                    inv += 1
        merged[j] = merged.get(j, 0) + e
    sign = -1 if inv % 2 else 1
    return sign, tuple(sorted(merged.items()))


def poly_add_scaled(dst: Poly, src: Poly, c: Q) -> None:
    if not c:
        return
    for m, v in src.items():
        w = dst.get(m, 0) + c * v
        if w:
            dst[m] = w
        else:
            dst.pop(m, None)


def poly_mul(degrees: list[int], p1: Poly, p2: Poly) -> Poly:
    out: Poly = {}
    for m1, c1 in p1.items():
        for m2, c2 in p2.items():
            r = mono_mul(degrees, m1, m2)
            if r is None:
                continue
            s, m = r
            w = out.get(m, 0) + s * c1 * c2
            if w:
                out[m] = w
            else:
                out.pop(m, None)
    return out


def normalize_poly(degrees: list[int], p: Poly) -> Poly:
    """Drop monomials that are zero in normal form (odd squares)."""
    out: Poly = {}
    for m, c in p.items():
        if not c:
            continue
        if any(e > 1 and degrees[i] % 2 for i, e in m):
            continue
        out[m] = c
    return out


def mono_diff(degrees: list[int], diffs: dict[int, Poly], m: Monomial) -> Poly:
    """Leibniz expansion of the differential over a monomial word."""
    letters: list[int] = []
    for i, e in m:
        letters.extend([i] * e)
    out: Poly = {}
    prefix_deg = 0
    for pos, i in enumerate(letters):
        dgi = diffs.get(i)
        if dgi:
            sign = -1 if prefix_deg % 2 else 1
            lm = _word_to_mono(letters[:pos])
            rm = _word_to_mono(letters[pos + 1 :])
            for dm, dc in dgi.items():
                r1 = mono_mul(degrees, lm, dm)
                if r1 is None:
                    continue
                s1, m1 = r1
                r2 = mono_mul(degrees, m1, rm)
                if r2 is None:
                    continue
                s2, m2 = r2
                w = out.get(m2, 0) + sign * s1 * s2 * dc
                if w:
                    out[m2] = w
                else:
                    out.pop(m2, None)
        prefix_deg += degrees[i]
    return out


def _word_to_mono(letters: list[int]) -> Monomial:
    counts: dict[int, int] = {}
    for i in letters:
        counts[i] = counts.get(i, 0) + 1
    return tuple(sorted(counts.items()))


def mono_label(gens: list[Generator], m: Monomial) -> str:
    if not m:
        return "1"
    parts = []
    for i, e in m:
        parts.append(gens[i].name if e == 1 else f"{gens[i].name}^{e}")
    return "*".join(parts)


def enumerate_monomials(degrees: list[int], N: int) -> list[list[Monomial]]:
    """All normal-form monomials, grouped and sorted per degree 0..N."""
    by_deg: list[list[Monomial]] = [[] for _ in range(N + 1)]
    by_deg[0].append(UNIT_MONO)
    current: list[tuple[Monomial, int]] = [(UNIT_MONO, 0)]
    for i, d in enumerate(degrees):
        grown: list[tuple[Monomial, int]] = []
        for m, md in current:
            e, total = 1, md + d
            while total <= N:
                mono = m + ((i, e),)
                by_deg[total].append(mono)
                grown.append((mono, total))
                if d % 2:
                    break
                e += 1
                total += d
        current.extend(grown)
    for bucket in by_deg:
        bucket.sort()
    return by_deg


# ---------------------------------------------------------------------------
# graded algebras


class GradedAlgebra:
    """A CDGA over Q with explicit per-degree basis, truncated at N.

    Results computed from an algebra are certified only up to degree
    N-1: the kernel of the differential at the window edge is not
    knowable under truncation.
    """

    def __init__(
        self,
        N: int,
        dims: list[int],
        labels: list[list[str]],
        mult: dict[tuple[int, int, int, int], Vec],
        diff: list[list[Vec]],
        name: str | None = None,
        presentation: GeneratorPresentation | None = None,
        basis_monomials: list[list[Monomial]] | None = None,
        reducers=None,
    ):
        self.N = N
        self.dims = dims
        self.labels = labels
        self._mult = mult
        self._diff = diff
        self.name = name
        self.presentation = presentation
        self.basis_monomials = basis_monomials
        self._reducers = reducers
        self._diff_matrices: dict[int, RationalMatrix] = {}
        self._cohomology = None  # filled lazily by cohomology_data()

    # -- structural accessors ------------------------------------------------

    def mult_basis(self, p: int, i: int, q: int, j: int) -> Vec:
        """Structure constants of (p,i)*(q,j); empty beyond the window."""
        return self._mult.get((p, i, q, j), {})

    def mult_vec(self, p: int, v: Vec, q: int, w: Vec) -> Vec:
        out: Vec = {}
        for i, a in v.items():
            for j, b in w.items():
                vec_add_scaled(out, self.mult_basis(p, i, q, j), a * b)
        return out

    def diff_matrix(self, n: int) -> RationalMatrix:
        if n >= self.N:
            # the differential out of the window edge is not knowable
            return RationalMatrix.zero(0, self.dims[self.N] if n == self.N else 0)
        mat = self._diff_matrices.get(n)
        if mat is None:
            mat = RationalMatrix(self.dims[n + 1], self.dims[n], [dict(c) for c in self._diff[n]])
            self._diff_matrices[n] = mat
        return mat

    def diff_vec(self, n: int, v: Vec) -> Vec:
        if n >= self.N:
            return {}
        out: Vec = {}
        for i, c in v.items():
            vec_add_scaled(out, self._diff[n][i], c)
        return out

    def augmentation(self, v0: Vec) -> Q:
        return qnorm(v0.get(0, 0))

    def has_zero_differential(self) -> bool:
        return all(not col for cols in self._diff for col in cols)

    def basis_index(self, n: int, label: str) -> int:
        return self.labels[n].index(label)

    def element_from_poly(self, poly: Poly, degree: int) -> Vec:
        """Evaluate a homogeneous free polynomial of the given degree as
        a basis vector, reducing modulo the relations. Needs a presented
        algebra; monomials beyond the window evaluate to zero."""
        if self.presentation is None or self._reducers is None:
            raise ValueError("element evaluation needs a presented algebra")
        degrees = self.presentation.degrees
        for m in poly:
            if mono_degree(degrees, m) != degree:
                raise ValueError("polynomial is not homogeneous of the stated degree")
        if degree > self.N:
            return {}
        return self._reducers[degree].reduce_poly(normalize_poly(degrees, poly))

    def describe(self) -> str:
        return self.name or "<algebra>"

    # -- invariants ------------------------------------------------------------

    def validate(self) -> None:
        if len(self.dims) != self.N + 1 or len(self._diff) != self.N:
            raise InvalidAlgebra("per-degree tables do not match the truncation degree")
        if self.dims[0] != 1:
            raise InvalidAlgebra("degree 0 must be spanned by the unit alone")
        if self.augmentation({0: 1}) != 1:
            raise InvalidAlgebra("augmentation(1) must be 1")
        N = self.N
        for n in range(N + 1):
            for i in range(self.dims[n]):
                if self.mult_basis(0, 0, n, i) != {i: 1} or self.mult_basis(n, i, 0, 0) != {i: 1}:
                    raise InvalidAlgebra(f"unit law fails on basis element {i} of degree {n}")
        for p in range(N + 1):
            for q in range(p, N + 1 - p):
                sign = -1 if (p % 2) and (q % 2) else 1
                for i in range(self.dims[p]):
                    for j in range(self.dims[q]):
                        left = self.mult_basis(p, i, q, j)
                        right = self.mult_basis(q, j, p, i)
                        if left != {k: sign * c for k, c in right.items()}:
                            raise InvalidAlgebra(
                                f"graded commutativity fails at degrees ({p},{q}) indices ({i},{j})"
                            )
        for p in range(N + 1):
            for q in range(N + 1 - p):
                for r in range(N + 1 - p - q):
                    for i in range(self.dims[p]):
                        for j in range(self.dims[q]):
                            ij = self.mult_basis(p, i, q, j)
                            for l in range(self.dims[r]):
                                lhs = self.mult_vec(p + q, ij, r, {l: 1})
                                rhs = self.mult_vec(p, {i: 1}, q + r, self.mult_basis(q, j, r, l))
                                if lhs != rhs:
                                    raise InvalidAlgebra(
                                        f"associativity fails at degrees ({p},{q},{r})"
                                    )
        for p in range(N):
            for q in range(N - p):
                sign = -1 if p % 2 else 1
                for i in range(self.dims[p]):
                    di = self._diff[p][i] if p < N else {}
                    for j in range(self.dims[q]):
                        lhs = self.diff_vec(p + q, self.mult_basis(p, i, q, j))
                        rhs = self.mult_vec(p + 1, di, q, {j: 1})
                        dj = self._diff[q][j]
                        vec_add_scaled(rhs, self.mult_vec(p, {i: 1}, q + 1, dj), sign)
                        if lhs != rhs:
                            raise InvalidAlgebra(f"Leibniz fails at degrees ({p},{q})")
        for n in range(N - 1):
            for i in range(self.dims[n]):
                if self.diff_vec(n + 1, self._diff[n][i]):
                    raise InvalidAlgebra(f"d*d != 0 at degree {n}")


# ---------------------------------------------------------------------------
# construction from a presentation


class _Reducer:
    """Per-degree reduction modulo the relation ideal."""

    def __init__(self, free_basis: list[Monomial], ideal_rows: list[Vec], pivots: list[int]):
        self.free_basis = free_basis
        self.free_index = {m: k for k, m in enumerate(free_basis)}
        self.rows = ideal_rows
        self.pivots = pivots
        pivot_set = set(pivots)
        self.quotient_positions = [k for k in range(len(free_basis)) if k not in pivot_set]
        self.position_of = {k: t for t, k in enumerate(self.quotient_positions)}

    def reduce_poly(self, p: Poly) -> Vec:
        rem: Vec = {}
        for m, c in p.items():
            k = self.free_index.get(m)
            if k is None:
                continue  # out of window
            w = rem.get(k, 0) + c
            if w:
                rem[k] = w
            else:
                rem.pop(k, None)
        for piv, row in zip(self.pivots, self.rows):
            c = rem.get(piv)
            if c:
                vec_add_scaled(rem, row, -c)
        return {self.position_of[k]: v for k, v in rem.items()}


def build_free(pres: GeneratorPresentation, N: int, name: str | None = None) -> GradedAlgebra:
    """Expand a presentation into an explicit truncated CDGA.

    The basis of each degree consists of the sorted normal-form
    monomials, reduced modulo the relation ideal; multiplication and
    differential are expanded with Koszul signs and validated before the
    algebra is returned.
    """
    degrees = pres.degrees
    for g in pres.generators:
        if g.degree < 1:
            raise InvalidAlgebra(f"generator {g.name} has degree {g.degree}; degrees must be >= 1")

    diffs: dict[int, Poly] = {}
    for i, p in pres.differentials.items():
        want = degrees[i] + 1
        for m in p:
            if mono_degree(degrees, m) != want:
                raise InhomogeneousDifferential(
                    f"d {pres.generators[i].name} has a term of degree "
                    f"{mono_degree(degrees, m)}; expected {want}"
                )
        q = normalize_poly(degrees, p)
        if q:
            for m in q:
                if any(j >= i for j, _ in m):
                    raise InvalidAlgebra(
                        f"d {pres.generators[i].name} must lie in earlier-listed generators"
                    )
            diffs[i] = q

    relations: list[tuple[int, Poly]] = []
    for p in pres.relations:
        if not p:
            continue
        degs = {mono_degree(degrees, m) for m in p}
        if len(degs) != 1:
            raise InhomogeneousRelation(f"relation mixes degrees {sorted(degs)}")
        d = degs.pop()
        if d < 1:
            raise InhomogeneousRelation("relation in degree 0 would collapse the unit")
        q = normalize_poly(degrees, p)
        if q and d <= N:
            relations.append((d, q))

    free = enumerate_monomials(degrees, N)

    reducers: list[_Reducer] = []
    for n in range(N + 1):
        if relations:
            index = {m: k for k, m in enumerate(free[n])}
            span: list[Vec] = []
            for d, rel in relations:
                if d > n:
                    continue
                for m in free[n - d]:
                    prod = poly_mul(degrees, {m: 1}, rel)
                    v = {index[mm]: c for mm, c in prod.items() if c}
                    if v:
                        span.append(v)
            rows, pivots = rref(span, len(free[n]))
        else:
            rows, pivots = [], []
        reducers.append(_Reducer(free[n], rows, pivots))

    # d*d = 0 on generators, modulo the ideal, within the window
    for i, p in diffs.items():
        target = degrees[i] + 2
        if target > N:
            continue
        dd: Poly = {}
        for m, c in p.items():
            poly_add_scaled(dd, mono_diff(degrees, diffs, m), c)
        if reducers[target].reduce_poly(dd):
            raise DSquareNonzero(f"d(d {pres.generators[i].name}) != 0")

    # the ideal must be a differential ideal
    for n in range(N):
        red = reducers[n]
        for row in red.rows:
            p: Poly = {red.free_basis[k]: c for k, c in row.items()}
            dp: Poly = {}
            for m, c in p.items():
                poly_add_scaled(dp, mono_diff(degrees, diffs, m), c)
            if reducers[n + 1].reduce_poly(dp):
                raise RelationNotDifferentialIdeal(
                    f"the differential leaves the relation ideal at degree {n}"
                )

    basis: list[list[Monomial]] = [
        [reducers[n].free_basis[k] for k in reducers[n].quotient_positions] for n in range(N + 1)
    ]
    dims = [len(b) for b in basis]
    labels = [[mono_label(pres.generators, m) for m in bucket] for bucket in basis]

    mult: dict[tuple[int, int, int, int], Vec] = {}
    for p in range(N + 1):
        for q in range(N + 1 - p):
            red = reducers[p + q]
            for i, mi in enumerate(basis[p]):
                for j, mj in enumerate(basis[q]):
                    r = mono_mul(degrees, mi, mj)
                    if r is None:
                        continue
                    s, m = r
                    v = red.reduce_poly({m: s})
                    if v:
                        mult[(p, i, q, j)] = v

    diff_cols: list[list[Vec]] = []
    for n in range(N):
        red = reducers[n + 1]
        cols = [red.reduce_poly(mono_diff(degrees, diffs, m)) for m in basis[n]]
        diff_cols.append(cols)

    algebra = GradedAlgebra(
        N,
        dims,
        labels,
        mult,
        diff_cols,
        name=name,
        presentation=GeneratorPresentation(list(pres.generators), diffs, [r for _, r in relations]),
        basis_monomials=basis,
        reducers=reducers,
    )
    algebra.validate()
    return algebra


def ground_field(N: int, name: str | None = "Q") -> GradedAlgebra:
    return build_free(GeneratorPresentation([]), N, name=name)


# ---------------------------------------------------------------------------
# morphisms


@dataclass
class AlgebraMorphism:
    """Degree-preserving multiplicative chain map between algebras of the
    same truncation degree. ``maps[n][i]`` is the image of the i-th basis
    element of source degree n, as a sparse vector in target degree n."""

    source: GradedAlgebra
    target: GradedAlgebra
    maps: list[list[Vec]]
    name: str | None = None

    def apply_basis(self, n: int, i: int) -> Vec:
        return self.maps[n][i]

    def apply(self, n: int, v: Vec) -> Vec:
        out: Vec = {}
        for i, c in v.items():
            vec_add_scaled(out, self.maps[n][i], c)
        return out

    def matrix(self, n: int) -> RationalMatrix:
        return RationalMatrix(
            self.target.dims[n], self.source.dims[n], [dict(c) for c in self.maps[n]]
        )


def identity_morphism(A: GradedAlgebra) -> AlgebraMorphism:
    return AlgebraMorphism(A, A, [[{i: 1} for i in range(A.dims[n])] for n in range(A.N + 1)])


def compose_morphisms(outer: AlgebraMorphism, inner: AlgebraMorphism) -> AlgebraMorphism:
    if inner.target is not outer.source and inner.target.dims != outer.source.dims:
        raise ValueError("morphisms do not compose")
    maps = [
        [outer.apply(n, inner.maps[n][i]) for i in range(inner.source.dims[n])]
        for n in range(inner.source.N + 1)
    ]
    return AlgebraMorphism(inner.source, outer.target, maps)


def morphisms_equal(a: AlgebraMorphism, b: AlgebraMorphism) -> bool:
    return all(a.matrix(n) == b.matrix(n) for n in range(a.source.N + 1))


def morphism_from_images(
    source: GradedAlgebra,
    target: GradedAlgebra,
    images: dict[str, Vec],
    name: str | None = None,
    validate: bool = True,
) -> AlgebraMorphism:
    """Build a morphism from generator images (a generator missing from
    ``images`` maps to zero). The source must carry a presentation; the
    result is validated with :func:`check_morphism` unless disabled."""
    if source.presentation is None or source.basis_monomials is None:
        raise ValueError("source algebra carries no presentation")
    if source.N != target.N:
        raise ValueError("truncation degrees differ")
    gens = source.presentation.generators
    known = {g.name for g in gens}
    for nm in images:
        if nm not in known:
            raise ValueError(f"image given for unknown generator {nm}")
    gen_image = [images.get(g.name, {}) for g in gens]

    memo: dict[Monomial, Vec] = {UNIT_MONO: {0: 1}}

    def image_of(m: Monomial) -> Vec:
        v = memo.get(m)
        if v is not None:
            return v
        i, e = m[-1]
        head = m[:-1] if e == 1 else m[:-1] + ((i, e - 1),)
        hv = image_of(head)
        hd = mono_degree(source.presentation.degrees, head)
        v = target.mult_vec(hd, hv, gens[i].degree, gen_image[i])
        memo[m] = v
        return v

    maps = [[image_of(m) for m in source.basis_monomials[n]] for n in range(source.N + 1)]
    phi = AlgebraMorphism(source, target, maps, name=name)
    if validate:
        violations = check_morphism(phi)
        if violations:
            raise InvalidMorphism(violations)
    return phi


def check_morphism(phi: AlgebraMorphism) -> list[str]:
    """Report every violated morphism invariant; empty means valid."""
    A, B = phi.source, phi.target
    out: list[str] = []
    if A.N != B.N:
        return ["source and target truncation degrees differ"]
    N = A.N
    if len(phi.maps) != N + 1 or any(len(phi.maps[n]) != A.dims[n] for n in range(N + 1)):
        return ["map tables do not match the source basis"]
    for n in range(N + 1):
        for col in phi.maps[n]:
            for r in col:
                if not (0 <= r < B.dims[n]):
                    return [f"image at degree {n} exceeds the target basis"]
    if phi.apply_basis(0, 0) != {0: 1}:
        out.append("unit is not sent to unit (augmentations cannot commute)")
    for n in range(N):
        lhs = phi.matrix(n + 1).compose(A.diff_matrix(n))
        rhs = B.diff_matrix(n).compose(phi.matrix(n))
        if lhs != rhs:
            out.append(f"chain-map failure at degree {n}")
    for p in range(N + 1):
        for q in range(N + 1 - p):
            for i in range(A.dims[p]):
                fi = phi.maps[p][i]
                for j in range(A.dims[q]):
                    lhs = phi.apply(p + q, A.mult_basis(p, i, q, j))
                    rhs = B.mult_vec(p, fi, q, phi.maps[q][j])
                    if lhs != rhs:
                        out.append(f"multiplicativity failure at degree pair ({p},{q}) indices ({i},{j})")
    return out


# ---------------------------------------------------------------------------
# cohomology


class CohomologyData:
    """Per-degree cohomology of an algebra: dimensions, representative
    cocycles, and projectors from cocycles to class coordinates.

    Degrees 0..N are populated; at degree N the kernel of the truncated
    differential is not knowable, so the top entry quotients the full
    degree by the image (trust it only below N)."""

    def __init__(self, dims, reps, projectors):
        self.dims = dims
        self.reps = reps
        self.projectors = projectors

    def project(self, n: int, v: Vec) -> list[Q]:
        return self.projectors[n].project(v)

    def representative(self, n: int, i: int) -> Vec:
        return self.reps[n][i]


def cohomology_data(A: GradedAlgebra) -> CohomologyData:
    if A._cohomology is not None:
        return A._cohomology
    dims, reps, projectors = [], [], []
    for n in range(A.N + 1):
        d_in = A.diff_matrix(n - 1) if n > 0 else RationalMatrix.zero(A.dims[0], 0)
        d_out = A.diff_matrix(n)
        dim, rp, proj = cohomology_at(d_in, d_out)
        dims.append(dim)
        reps.append(rp)
        projectors.append(proj)
    data = CohomologyData(dims, reps, projectors)
    A._cohomology = data
    return data


def cohomology_algebra(A: GradedAlgebra) -> tuple[GradedAlgebra, CohomologyData]:
    """The cohomology of A as a CDGA with zero differential.

    Products are induced by multiplying chosen representative cocycles
    and projecting; the projection makes the result independent of the
    representative choice. Classes are labeled by the leading term of
    their representative."""
    data = cohomology_data(A)
    N = A.N
    labels = [
        [f"[{A.labels[n][min(rep)]}]" for rep in data.reps[n]]
        for n in range(N + 1)
    ]
    mult: dict[tuple[int, int, int, int], Vec] = {}
    for p in range(N + 1):
        for q in range(N + 1 - p):
            for i, ri in enumerate(data.reps[p]):
                for j, rj in enumerate(data.reps[q]):
                    prod = A.mult_vec(p, ri, q, rj)
                    coords = data.project(p + q, prod)
                    v = {k: c for k, c in enumerate(coords) if c}
                    if v:
                        mult[(p, i, q, j)] = v
    H = GradedAlgebra(
        N,
        list(data.dims),
        labels,
        mult,
        [[{} for _ in range(data.dims[n])] for n in range(N)],
        name=f"H({A.describe()})",
    )
    H.validate()
    return H, data


def is_quasi_iso(phi: AlgebraMorphism) -> bool:
    """True iff phi induces a cohomology isomorphism in degrees <= N-1.

    The bound is N-1, not N: at the window edge the kernel of the
    truncated differential is unknown."""
    src = cohomology_data(phi.source)
    tgt = cohomology_data(phi.target)
    N = phi.source.N
    for n in range(N):
        if src.dims[n] != tgt.dims[n]:
            return False
        if src.dims[n] == 0:
            continue
        cols = [
            {k: c for k, c in enumerate(tgt.project(n, phi.apply(n, rep))) if c}
            for rep in src.reps[n]
        ]
        induced = RationalMatrix(tgt.dims[n], src.dims[n], cols)
        if rank(induced) != src.dims[n]:
            return False
    return True
