"""Cohomology of bar windows and the Tor algebra it computes.

For a triple of cohomology algebras (zero differentials) the window's
total differential reduces to the concatenation differential delta, the
complex splits by bar degree, and the cohomology is the bigraded
Tor_{H(B)}(H(X), H(E)) with its shuffle-induced product: the second page
of the Eilenberg-Moore spectral sequence of the pull-back.

A second, independent route to the same dimensions is the Koszul
complex: for a free graded-commutative base, tensor the two modules with
the free algebra on suspended generators and differentiate each
suspended letter into the module actions on either side. The two
computations share no code path beyond exact linear algebra, which is
what makes the agreement check in the CLI (and the acceptance suite)
meaningful.

Everything is certified up to total degree N-1 only; products of classes
whose total degree lands beyond that are reported as unknown, never
silently zero.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .barcomplex import BarChain, BarComplexWindow, BarSystem, WindowMap, induced_bar_map
from .cdga import AlgebraMorphism
from .errors import (
    CompositionNonzero,
    MiddleAlgebraNotSimplyConnected,
    NotPolynomialBase,
)
from .linalg import (
    Q,
    Projector,
    RationalMatrix,
    Vec,
    cohomology_at,
    rank,
    vec_add_scaled,
)
from .shuffle import chain_product

ClassKey = tuple[int, int]  # (total degree, class index)


@dataclass
class TorResult:
    """Bigraded dimensions and algebra structure of a window's cohomology.

    ``bigraded_dims`` is keyed by (bar degree, tensor degree) and only
    present when the window came from zero-differential inputs (it is
    None otherwise, since the total differential then mixes bar degrees).
    ``products`` maps a pair of classes to the coordinates of their
    product; pairs whose product degree exceeds the certified range are
    listed in ``unknown_products`` instead.
    """

    valid_up_to: int
    total_dims: list[int]
    bigraded_dims: dict[tuple[int, int], int] | None
    reps: list[list[BarChain]]
    projectors: list[Projector]
    products: dict[tuple[ClassKey, ClassKey], dict[ClassKey, Q]]
    unknown_products: list[tuple[ClassKey, ClassKey]]
    window: BarComplexWindow

    def class_label(self, n: int, i: int) -> str:
        return f"h{n}_{i}"

    def project_chain(self, n: int, chain: BarChain) -> list[Q]:
        return self.projectors[n].project(self.window.chain_to_vec(n, chain))


def bar_cohomology(window: BarComplexWindow) -> TorResult:
    """Total-degree cohomology of the window, with products on chosen
    representatives. Representative choice is canonical and, through the
    projector, irrelevant to the reported structure constants."""
    system = window.system
    N = system.N
    dims: list[int] = []
    reps: list[list[BarChain]] = []
    projectors: list[Projector] = []
    for n in range(N):
        d_in = window.D_matrix(n - 1) if n > 0 else RationalMatrix.zero(len(window.words[0]), 0)
        d_out = window.D_matrix(n)
        dim, rp, proj = cohomology_at(d_in, d_out)
        dims.append(dim)
        reps.append([window.vec_to_chain(n, v) for v in rp])
        projectors.append(proj)

    zero_diff = (
        system.A.has_zero_differential()
        and system.B.has_zero_differential()
        and system.C.has_zero_differential()
    )
    bigraded = _bigraded_cohomology(window, dims) if zero_diff else None

    products: dict[tuple[ClassKey, ClassKey], dict[ClassKey, Q]] = {}
    unknown: list[tuple[ClassKey, ClassKey]] = []
    for p in range(N):
        for i in range(dims[p]):
            for q in range(N):
                for j in range(dims[q]):
                    key = ((p, i), (q, j))
                    if p + q > N - 1:
                        unknown.append(key)
                        continue
                    prod = chain_product(system, reps[p][i], reps[q][j])
                    coords = projectors[p + q].project(window.chain_to_vec(p + q, prod))
                    products[key] = {
                        (p + q, l): c for l, c in enumerate(coords) if c
                    }
    return TorResult(
        N - 1, dims, bigraded, reps, projectors, products, unknown, window
    )


def _bigraded_cohomology(
    window: BarComplexWindow, total_dims: list[int]
) -> dict[tuple[int, int], int]:
    """Split the (delta-only) window by bar degree and take cohomology
    per bigrade; delta preserves the tensor degree and raises the bar
    degree, so each tensor degree is its own complex."""
    system = window.system
    N = system.N
    if any(col for cols in window.d for col in cols):
        raise CompositionNonzero("bigraded cohomology requires zero input differentials")

    groups: dict[tuple[int, int], list[int]] = {}
    position: dict[tuple[int, int], dict[int, int]] = {}
    for n, bucket in enumerate(window.words):
        for idx, w in enumerate(bucket):
            key = (len(w.middles), n)
            position.setdefault(key, {})[idx] = len(groups.setdefault(key, []))
            groups[key].append(idx)

    def block(k_from: int, n_from: int, k_to: int) -> RationalMatrix:
        src = groups.get((k_from, n_from), [])
        tgt = position.get((k_to, n_from + 1), {})
        cols: list[Vec] = []
        for idx in src:
            col = window.delta[n_from][idx]
            cols.append({tgt[r]: c for r, c in col.items()})
        return RationalMatrix(len(groups.get((k_to, n_from + 1), [])), len(src), cols)

    out: dict[tuple[int, int], int] = {}
    check_totals = [0] * len(total_dims)
    for (k, n) in sorted(groups):
        if n > N - 1:
            continue
        d_in = block(k + 1, n - 1, k) if n > 0 else RationalMatrix.zero(len(groups[(k, n)]), 0)
        d_out = block(k, n, k - 1)
        dim, _, _ = cohomology_at(d_in, d_out)
        if dim:
            out[(-k, n + k)] = dim
            check_totals[n] += dim
    assert check_totals == total_dims, "bigraded dimensions do not refine the totals"
    return out


def tor_algebra(f: AlgebraMorphism, g: AlgebraMorphism) -> TorResult:
    """Tor over the shared source of f and g, of the two targets, with
    its algebra structure: the Eilenberg-Moore second page for the
    corresponding pull-back. All three algebras must carry zero
    differentials (i.e. be cohomology algebras)."""
    for phi in (f, g):
        for alg in (phi.source, phi.target):
            if not alg.has_zero_differential():
                raise ValueError(
                    f"{alg.describe()} has a nonzero differential; "
                    "tor_algebra expects cohomology algebras"
                )
    return bar_cohomology(BarComplexWindow(BarSystem(f, g)))


# ---------------------------------------------------------------------------
# Koszul oracle


@dataclass
class OracleResult:
    valid_up_to: int
    bigraded_dims: dict[tuple[int, int], int]
    total_dims: list[int] = field(default_factory=list)


def koszul_tor_oracle(f: AlgebraMorphism, g: AlgebraMorphism) -> OracleResult:
    """Independent Tor dimensions from the two-sided Koszul complex.

    The base (shared source of f and g) must be free graded-commutative
    on generators of degree >= 2. The complex is
    HX (x) FreeGC(s c_1, ..., s c_r) (x) HE, where s lowers degree by one
    and flips parity, with the derivation differential sending each
    suspended letter to the module action of its generator on the left
    minus on the right. d^2 = 0 is structural but verified anyway.
    """
    HB = f.source
    HX, HE = f.target, g.target
    if g.source is not HB:
        raise ValueError("f and g must share their source algebra")
    if HB.presentation is None:
        raise NotPolynomialBase("the base carries no generator presentation")
    if HB.presentation.relations:
        raise NotPolynomialBase("the base has relations; the Koszul complex needs a free base")
    if HB.presentation.differentials:
        raise ValueError("the base must have zero differential")
    for alg in (HX, HE):
        if not alg.has_zero_differential():
            raise ValueError("modules must be cohomology algebras (zero differential)")
    gens = HB.presentation.generators
    if any(gv.degree < 2 for gv in gens):
        raise MiddleAlgebraNotSimplyConnected("base generators must have degree >= 2")
    N = HB.N
    degrees = [gv.degree for gv in gens]
    susp = [d - 1 for d in degrees]

    # images of the base generators in the two modules
    def gen_basis_index(i: int) -> int:
        return HB.basis_monomials[degrees[i]].index(((i, 1),))

    img_x = [f.apply_basis(degrees[i], gen_basis_index(i)) if degrees[i] <= N else {} for i in range(len(gens))]
    img_e = [g.apply_basis(degrees[i], gen_basis_index(i)) if degrees[i] <= N else {} for i in range(len(gens))]

    # suspension monomials by suspended degree (exponent <= 1 when the
    # suspended letter is odd, i.e. the generator is even)
    monos: list[tuple[tuple[int, ...], int]] = [((0,) * len(gens), 0)]
    for i, s in enumerate(susp):
        grown = []
        for expo, sd in monos:
            e, total = 1, sd + s
            while total <= N:
                new = expo[:i] + (e,) + expo[i + 1 :]
                grown.append((new, total))
                if s % 2:
                    break
                e += 1
                total += s
        monos.extend(grown)

    # basis per total degree: (x_deg, x_idx, expo, e_deg, e_idx)
    Elt = tuple[int, int, tuple[int, ...], int, int]
    basis: list[list[Elt]] = [[] for _ in range(N + 1)]
    for expo, sd in monos:
        for xd in range(N + 1 - sd):
            if HX.dims[xd] == 0:
                continue
            for ed in range(N + 1 - sd - xd):
                if HE.dims[ed] == 0:
                    continue
                total = xd + sd + ed
                for xi in range(HX.dims[xd]):
                    for ei in range(HE.dims[ed]):
                        basis[total].append((xd, xi, expo, ed, ei))
    for bucket in basis:
        bucket.sort()
    index = [{elt: i for i, elt in enumerate(bucket)} for bucket in basis]

    def differentiate(elt: Elt, n: int) -> Vec:
        xd, xi, expo, ed, ei = elt
        letters: list[int] = []
        for i, e in enumerate(expo):
            letters.extend([i] * e)
        out: Vec = {}
        idx_next = index[n + 1]
        before = 0  # suspended degree of the letters already passed
        total_susp = sum(susp[i] for i in letters)
        for t, i in enumerate(letters):
            reduced = expo[:i] + (expo[i] - 1,) + expo[i + 1 :]
            base_sign = -1 if (xd + before) % 2 else 1
            after = total_susp - before - susp[i]
            left_sign = -1 if (degrees[i] * before) % 2 else 1
            xv = HX.mult_vec(xd, {xi: 1}, degrees[i], img_x[i])
            for r, c in xv.items():
                key = (xd + degrees[i], r, reduced, ed, ei)
                pos = idx_next.get(key)
                if pos is not None:
                    _vacc(out, pos, base_sign * left_sign * c)
            right_sign = -1 if (degrees[i] * after) % 2 else 1
            ev = HE.mult_vec(degrees[i], img_e[i], ed, {ei: 1})
            for r, c in ev.items():
                key = (xd, xi, reduced, ed + degrees[i], r)
                pos = idx_next.get(key)
                if pos is not None:
                    _vacc(out, pos, -base_sign * right_sign * c)
            before += susp[i]
        return out

    cols: list[list[Vec]] = []
    for n in range(N):
        cols.append([differentiate(elt, n) for elt in basis[n]])
    cols.append([{} for _ in basis[N]])

    for n in range(N - 1):
        nxt = cols[n + 1]
        for j, col in enumerate(cols[n]):
            out: Vec = {}
            for r, c in col.items():
                vec_add_scaled(out, nxt[r], c)
            if out:
                raise CompositionNonzero(f"Koszul differential fails d*d = 0 at degree {n}")

    # cohomology per bigrade, exactly as for the window
    groups: dict[tuple[int, int], list[int]] = {}
    position: dict[tuple[int, int], dict[int, int]] = {}
    for n, bucket in enumerate(basis):
        for idx, elt in enumerate(bucket):
            k = sum(elt[2])
            key = (k, n)
            position.setdefault(key, {})[idx] = len(groups.setdefault(key, []))
            groups[key].append(idx)

    def block(k_from: int, n_from: int, k_to: int) -> RationalMatrix:
        src = groups.get((k_from, n_from), [])
        tgt = position.get((k_to, n_from + 1), {})
        out_cols: list[Vec] = []
        for idx in src:
            col = cols[n_from][idx]
            out_cols.append({tgt[r]: c for r, c in col.items()})
        return RationalMatrix(len(groups.get((k_to, n_from + 1), [])), len(src), out_cols)

    bigraded: dict[tuple[int, int], int] = {}
    totals = [0] * N
    for (k, n) in sorted(groups):
        if n > N - 1:
            continue
        d_in = block(k + 1, n - 1, k) if n > 0 else RationalMatrix.zero(len(groups[(k, n)]), 0)
        d_out = block(k, n, k - 1)
        dim, _, _ = cohomology_at(d_in, d_out)
        if dim:
            bigraded[(-k, n + k)] = dim
            totals[n] += dim
    return OracleResult(N - 1, bigraded, totals)


def _vacc(out: Vec, key: int, c: Q) -> None:
    if not c:
        return
    x = out.get(key, 0) + c
    if x:
        out[key] = x
    else:
        del out[key]


def oracle_agrees(tor: TorResult, oracle: OracleResult) -> bool:
    """Exact agreement of the bigraded dimensions on the shared range."""
    if tor.bigraded_dims is None:
        return False
    bound = min(tor.valid_up_to, oracle.valid_up_to)

    def trim(d):
        return {
            (b, m): v for (b, m), v in d.items() if m + b <= bound and v
        }

    return trim(tor.bigraded_dims) == trim(oracle.bigraded_dims)


# ---------------------------------------------------------------------------
# window comparison


@dataclass
class CompareReport:
    valid_up_to: int
    dims1: list[int]
    dims2: list[int]
    dims_equal: bool
    ladder_checked: bool
    induced_iso: bool | None

    def summary(self) -> str:
        parts = [f"dimensions equal through degree {self.valid_up_to}: {'yes' if self.dims_equal else 'no'}"]
        if self.ladder_checked:
            parts.append(f"induced map is a cohomology isomorphism: {'yes' if self.induced_iso else 'no'}")
        return "; ".join(parts)


def compare_windows(
    win1: BarComplexWindow,
    win2: BarComplexWindow,
    ladder: tuple[AlgebraMorphism, AlgebraMorphism, AlgebraMorphism] | None = None,
) -> CompareReport:
    """Per-degree cohomology dimension comparison of two windows; with a
    strictly commuting ladder also verifies that the induced map on
    cohomology is an isomorphism through degree N-1."""
    if win1.system.N != win2.system.N:
        raise ValueError("windows must share the truncation degree")
    tor1 = bar_cohomology(win1)
    tor2 = bar_cohomology(win2)
    dims_equal = tor1.total_dims == tor2.total_dims
    induced_iso: bool | None = None
    if ladder is not None:
        wmap: WindowMap = induced_bar_map(win1, win2, *ladder)
        induced_iso = dims_equal
        if induced_iso:
            for n in range(win1.system.N):
                dim = tor1.total_dims[n]
                if dim == 0:
                    continue
                cols = []
                for rep in tor1.reps[n]:
                    image = wmap.apply_chain(n, rep)
                    coords = tor2.project_chain(n, image)
                    cols.append({k: c for k, c in enumerate(coords) if c})
                if rank(RationalMatrix(tor2.total_dims[n], dim, cols)) != dim:
                    induced_iso = False
                    break
    return CompareReport(
        win1.system.N - 1,
        tor1.total_dims,
        tor2.total_dims,
        dims_equal,
        ladder is not None,
        induced_iso,
    )
