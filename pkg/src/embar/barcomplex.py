"""The two-sided normalized bar complex of a triple A <- B -> C.

Words are tensors (alpha; omega_1, ..., omega_k; beta) with alpha in A,
beta in C and every middle entry omega_i in B of degree >= 2. Restricting
middle entries to degree >= 2 *is* the normalization: since B^0 is spanned
by the unit, the subspace generated by unit insertions (and its closure
under the total differential) is exactly what gets quotiented away, and
the degree->=2 complex is canonically isomorphic to that quotient. The
quotient is never materialized.

Gradings carried by a word:

* total degree  deg(alpha) + sum(deg(omega_i) - 1) + deg(beta), i.e. each
  middle entry is suspended (degree lowered by one);
* bar degree    -k, raised by 1 by the concatenation differential;
* tensor degree deg(alpha) + sum deg(omega_i) + deg(beta).

The two differentials, with epsilon_i = deg(alpha) + deg(omega_1) + ... +
deg(omega_i) - i:

* the internal differential d applies the input differentials entrywise,
  with signs (+1, (-1)^(epsilon_{i-1}+1) on middle entry i, (-1)^(epsilon_k)
  on beta);
* the concatenation differential delta contracts neighbours, with signs
  (-1)^(epsilon_0+1) on alpha*omega_1, (-1)^(epsilon_i+1) on
  omega_i*omega_{i+1}, and (-1)^(epsilon_{k-1}) on omega_k*beta; the end
  contractions use the module actions alpha*omega := alpha * f(omega) in A
  and omega*beta := g(omega) * beta in C.

These signs make d^2 = 0, delta^2 = 0 and d*delta + delta*d = 0 hold on
the nose; :func:`build_window` verifies all of them (and D^2 = 0 for the
total differential D = d + delta) exhaustively at construction time, so a
sign regression cannot survive silently.

Truncation: words are enumerated per total degree up to N. Components of
a differential or a contraction whose carrier would exceed degree N are
dropped with the window; cohomology read off a window is certified only
up to total degree N-1.
"""

from __future__ import annotations

from typing import Iterator, NamedTuple

from .cdga import AlgebraMorphism, GradedAlgebra, check_morphism, compose_morphisms, morphisms_equal
from .errors import (
    CompositionNonzero,
    InvalidMorphism,
    LadderNotCommuting,
    MiddleAlgebraNotSimplyConnected,
    SquareNotCommuting,
)
from .linalg import Q, RationalMatrix, Vec, qnorm, vec_add_scaled

Entry = tuple[int, int]  # (degree, basis index)


class BarWord(NamedTuple):
    left: Entry
    middles: tuple[Entry, ...]
    right: Entry

    def total_degree(self) -> int:
        return self.left[0] + sum(d - 1 for d, _ in self.middles) + self.right[0]

    def bar_degree(self) -> int:
        return -len(self.middles)

    def tensor_degree(self) -> int:
        return self.left[0] + sum(d for d, _ in self.middles) + self.right[0]


BarChain = dict[BarWord, Q]  # sparse, homogeneous in total degree, no zero coefficients


def chain_add_scaled(dst: BarChain, src: BarChain, c: Q) -> None:
    if not c:
        return
    for w, v in src.items():
        x = dst.get(w, 0) + c * v
        if x:
            dst[w] = x
        else:
            dst.pop(w, None)


def chain_scale(chain: BarChain, c: Q) -> BarChain:
    if not c:
        return {}
    return {w: c * v for w, v in chain.items()}


class BarSystem:
    """The inputs of a bar complex: algebras A, B, C (same truncation N)
    and structure maps f: B -> A, g: B -> C, validated eagerly.

    The middle algebra must have B^1 = 0 (on top of B^0 = Q*1): this is
    what keeps every total degree finite-dimensional. An input with
    H^1 = 0 but B^1 != 0 must first be replaced by a model with B^1 = 0,
    e.g. its cohomology.
    """

    def __init__(self, f: AlgebraMorphism, g: AlgebraMorphism):
        A, B, C = f.target, f.source, g.target
        if g.source is not B:
            raise ValueError("f and g must share their source algebra")
        if not (A.N == B.N == C.N):
            raise ValueError("the three algebras must share one truncation degree")
        if B.dims[0] != 1 or (B.N >= 1 and B.dims[1] != 0):
            raise MiddleAlgebraNotSimplyConnected(
                f"middle algebra {B.describe()} needs B^0 = Q*1 and B^1 = 0"
            )
        for name, phi in (("f", f), ("g", g)):
            violations = check_morphism(phi)
            if violations:
                raise InvalidMorphism([f"{name}: {v}" for v in violations])
        self.A, self.B, self.C = A, B, C
        self.f, self.g = f, g
        self.N = A.N
        self._product_cache: dict[tuple[BarWord, BarWord], BarChain] = {}

    @property
    def unit_word(self) -> BarWord:
        return BarWord((0, 0), (), (0, 0))

    def describe(self) -> str:
        return f"({self.A.describe()}, {self.B.describe()}, {self.C.describe()})"


def _middle_degree_seqs(B: GradedAlgebra, budget: int) -> Iterator[tuple[tuple[int, ...], int]]:
    """All tuples of middle degrees (each >= 2, nonzero in B) whose
    suspended degrees sum to at most ``budget``."""
    yield (), 0
    for w in range(2, min(budget + 1, B.N) + 1):
        if B.dims[w] == 0:
            continue
        for tail, used in _middle_degree_seqs(B, budget - (w - 1)):
            yield (w,) + tail, used + (w - 1)


def enumerate_words(system: BarSystem, total_degree: int) -> list[BarWord]:
    """Complete, deterministically ordered basis of one total degree."""
    if not (0 <= total_degree <= system.N):
        raise ValueError(f"total degree {total_degree} outside the window 0..{system.N}")
    A, B, C = system.A, system.B, system.C
    out: list[BarWord] = []
    for da in range(total_degree + 1):
        if A.dims[da] == 0:
            continue
        for seq, used in _middle_degree_seqs(B, total_degree - da):
            dc = total_degree - da - used
            if dc > C.N or C.dims[dc] == 0:
                continue
            _expand_indices(out, A, B, C, da, seq, dc)
    out.sort(key=lambda w: (len(w.middles), w.left, w.middles, w.right))
    return out


def _expand_indices(out, A, B, C, da, seq, dc):
    index_ranges = [range(B.dims[w]) for w in seq]

    def rec(pos, acc):
        if pos == len(seq):
            for ia in range(A.dims[da]):
                for ic in range(C.dims[dc]):
                    out.append(BarWord((da, ia), tuple(acc), (dc, ic)))
            return
        for i in index_ranges[pos]:
            acc.append((seq[pos], i))
            rec(pos + 1, acc)
            acc.pop()

    rec(0, [])


def bar_d(system: BarSystem, w: BarWord) -> BarChain:
    """Internal differential: input differentials applied entrywise.

    Raises the tensor degree by 1 and keeps the bar degree. Components
    that would leave the truncation window are dropped.
    """
    if w.total_degree() >= system.N:
        return {}
    A, B, C = system.A, system.B, system.C
    (da, ia), mids, (dc, ic) = w
    out: BarChain = {}
    for r, c in A.diff_vec(da, {ia: 1}).items():
        _acc(out, BarWord((da + 1, r), mids, (dc, ic)), c)
    eps = da  # epsilon_0
    for pos, (wd, wi) in enumerate(mids):
        sgn = 1 if (eps + 1) % 2 == 0 else -1
        for r, c in B.diff_vec(wd, {wi: 1}).items():
            new_mids = mids[:pos] + ((wd + 1, r),) + mids[pos + 1 :]
            _acc(out, BarWord((da, ia), new_mids, (dc, ic)), sgn * c)
        eps += wd - 1
    sgn = 1 if eps % 2 == 0 else -1  # epsilon_k
    for r, c in C.diff_vec(dc, {ic: 1}).items():
        _acc(out, BarWord((da, ia), mids, (dc + 1, r)), sgn * c)
    return out


def bar_delta(system: BarSystem, w: BarWord) -> BarChain:
    """Concatenation differential: contracts neighbouring entries.

    Raises the bar degree by exactly 1 (one fewer middle entry) and the
    total degree by 1; zero on words without middle entries.
    """
    mids = w.middles
    k = len(mids)
    if k == 0 or w.total_degree() >= system.N:
        return {}
    A, B, C = system.A, system.B, system.C
    (da, ia), (dc, ic) = w.left, w.right
    out: BarChain = {}

    w1d, w1i = mids[0]
    av = A.mult_vec(da, {ia: 1}, w1d, system.f.apply_basis(w1d, w1i))
    sgn = 1 if (da + 1) % 2 == 0 else -1  # (-1)^(epsilon_0 + 1)
    for r, c in av.items():
        _acc(out, BarWord((da + w1d, r), mids[1:], (dc, ic)), sgn * c)

    eps = da
    for i in range(1, k):
        wd_prev, wi_prev = mids[i - 1]
        eps += wd_prev - 1  # now epsilon_i
        prod = B.mult_basis(wd_prev, wi_prev, mids[i][0], mids[i][1])
        sgn = 1 if (eps + 1) % 2 == 0 else -1
        for r, c in prod.items():
            new_mids = mids[: i - 1] + ((wd_prev + mids[i][0], r),) + mids[i + 1 :]
            _acc(out, BarWord((da, ia), new_mids, (dc, ic)), sgn * c)

    wkd, wki = mids[-1]
    cv = C.mult_vec(wkd, system.g.apply_basis(wkd, wki), dc, {ic: 1})
    sgn = 1 if eps % 2 == 0 else -1  # (-1)^(epsilon_{k-1})
    for r, c in cv.items():
        _acc(out, BarWord((da, ia), mids[:-1], (wkd + dc, r)), sgn * c)
    return out


def bar_D(system: BarSystem, w: BarWord) -> BarChain:
    out = bar_d(system, w)
    chain_add_scaled(out, bar_delta(system, w), 1)
    return out


def chain_D(system: BarSystem, chain: BarChain) -> BarChain:
    out: BarChain = {}
    for w, c in chain.items():
        chain_add_scaled(out, bar_D(system, w), c)
    return out


def _acc(out: BarChain, w: BarWord, c: Q) -> None:
    if not c:
        return
    x = out.get(w, 0) + c
    if x:
        out[w] = x
    else:
        del out[w]


class BarComplexWindow:
    """All words of total degree <= N with the assembled matrices of d,
    delta and D. Construction verifies d^2 = delta^2 = d*delta+delta*d =
    D^2 = 0 on every word whose double image fits in the window; any
    failure is a sign bug and raises :class:`CompositionNonzero`."""

    def __init__(self, system: BarSystem):
        self.system = system
        N = system.N
        self.words: list[list[BarWord]] = [enumerate_words(system, n) for n in range(N + 1)]
        self.index: list[dict[BarWord, int]] = [
            {w: i for i, w in enumerate(bucket)} for bucket in self.words
        ]
        self.d: list[list[Vec]] = []
        self.delta: list[list[Vec]] = []
        self.D: list[list[Vec]] = []
        for n in range(N + 1):
            idx_next = self.index[n + 1] if n + 1 <= N else {}
            d_cols, delta_cols, D_cols = [], [], []
            for w in self.words[n]:
                dcol = self._to_indices(bar_d(system, w), idx_next)
                deltacol = self._to_indices(bar_delta(system, w), idx_next)
                Dcol = dict(dcol)
                for r, c in deltacol.items():
                    x = Dcol.get(r, 0) + c
                    if x:
                        Dcol[r] = x
                    else:
                        del Dcol[r]
                d_cols.append(dcol)
                delta_cols.append(deltacol)
                D_cols.append(Dcol)
            self.d.append(d_cols)
            self.delta.append(delta_cols)
            self.D.append(D_cols)
        self._verify_signs()

    @staticmethod
    def _to_indices(chain: BarChain, idx: dict[BarWord, int]) -> Vec:
        out: Vec = {}
        for w, c in chain.items():
            out[idx[w]] = c
        return out

    def _verify_signs(self) -> None:
        N = self.system.N
        for n in range(N - 1):
            d0, d1 = self.d[n], self.d[n + 1]
            e0, e1 = self.delta[n], self.delta[n + 1]
            D0, D1 = self.D[n], self.D[n + 1]
            for j in range(len(self.words[n])):
                if _apply_cols(d1, d0[j]):
                    raise CompositionNonzero(f"d*d != 0 at total degree {n}, word {j}")
                if _apply_cols(e1, e0[j]):
                    raise CompositionNonzero(f"delta*delta != 0 at total degree {n}, word {j}")
                anti = _apply_cols(d1, e0[j])
                for r, c in _apply_cols(e1, d0[j]).items():
                    x = anti.get(r, 0) + c
                    if x:
                        anti[r] = x
                    else:
                        del anti[r]
                if anti:
                    raise CompositionNonzero(
                        f"d*delta + delta*d != 0 at total degree {n}, word {j}"
                    )
                if _apply_cols(D1, D0[j]):
                    raise CompositionNonzero(f"D*D != 0 at total degree {n}, word {j}")

    # -- views -----------------------------------------------------------------

    def word_counts(self) -> list[int]:
        return [len(b) for b in self.words]

    def bigraded_word_counts(self) -> dict[tuple[int, int], int]:
        """Word counts keyed by (bar degree, total degree)."""
        out: dict[tuple[int, int], int] = {}
        for n, bucket in enumerate(self.words):
            for w in bucket:
                key = (w.bar_degree(), n)
                out[key] = out.get(key, 0) + 1
        return out

    def D_matrix(self, n: int) -> RationalMatrix:
        rows = len(self.words[n + 1]) if n + 1 <= self.system.N else 0
        return RationalMatrix(rows, len(self.words[n]), [dict(c) for c in self.D[n]])

    def chain_to_vec(self, n: int, chain: BarChain) -> Vec:
        return {self.index[n][w]: c for w, c in chain.items()}

    def vec_to_chain(self, n: int, v: Vec) -> BarChain:
        bucket = self.words[n]
        return {bucket[i]: c for i, c in v.items()}


def _apply_cols(cols: list[Vec], col: Vec) -> Vec:
    out: Vec = {}
    for r, c in col.items():
        vec_add_scaled(out, cols[r], c)
    return out


def build_window(f: AlgebraMorphism, g: AlgebraMorphism) -> BarComplexWindow:
    return BarComplexWindow(BarSystem(f, g))


# ---------------------------------------------------------------------------
# the evaluation map and the augmentation


class ThetaMap:
    """Evaluation into a commuting target: kills every word with a middle
    entry and sends (alpha;;beta) to u(alpha) * v(beta).

    Requires u o f = v o g; under that hypothesis the map is a chain map
    and multiplicative for the shuffle product (both asserted in the test
    suite, exhaustively on windows)."""

    def __init__(self, system: BarSystem, T: GradedAlgebra, u: AlgebraMorphism, v: AlgebraMorphism):
        if u.source is not system.A or v.source is not system.C:
            raise ValueError("u must map A and v must map C")
        if u.target is not T or v.target is not T:
            raise ValueError("u and v must land in the stated target")
        for name, phi in (("u", u), ("v", v)):
            violations = check_morphism(phi)
            if violations:
                raise InvalidMorphism([f"{name}: {m}" for m in violations])
        if not morphisms_equal(compose_morphisms(u, system.f), compose_morphisms(v, system.g)):
            raise SquareNotCommuting("u o f != v o g; the evaluation square must commute")
        self.system = system
        self.T = T
        self.u = u
        self.v = v

    def word(self, w: BarWord) -> Vec:
        if w.middles:
            return {}
        (da, ia), (dc, ic) = w.left, w.right
        return self.T.mult_vec(da, self.u.apply_basis(da, ia), dc, self.v.apply_basis(dc, ic))

    def chain(self, chain: BarChain) -> Vec:
        out: Vec = {}
        for w, c in chain.items():
            vec_add_scaled(out, self.word(w), c)
        return out


def bar_augmentation(chain: BarChain) -> Q:
    """Kills positive total degrees; in degree 0 multiplies the two end
    augmentations (both ends are unit multiples there)."""
    total = 0
    for w, c in chain.items():
        if w.total_degree() == 0:
            total += c
    return qnorm(total)


# ---------------------------------------------------------------------------
# functoriality


class WindowMap:
    """Entrywise application of a commuting ladder of morphisms, as a
    chain map between two windows over the same truncation degree."""

    def __init__(
        self,
        source: BarComplexWindow,
        target: BarComplexWindow,
        phi_A: AlgebraMorphism,
        phi_B: AlgebraMorphism,
        phi_C: AlgebraMorphism,
    ):
        self.source = source
        self.target = target
        self.phi_A, self.phi_B, self.phi_C = phi_A, phi_B, phi_C
        self.cols: list[list[Vec]] = []
        for n in range(source.system.N + 1):
            idx = target.index[n]
            self.cols.append(
                [self._map_word_to_indices(w, idx) for w in source.words[n]]
            )

    def _map_word(self, w: BarWord) -> BarChain:
        (da, ia), mids, (dc, ic) = w
        terms: list[tuple[tuple[Entry, ...], Q]] = [((), 1)]
        for wd, wi in mids:
            img = self.phi_B.apply_basis(wd, wi)
            terms = [
                (acc + ((wd, r),), c * cr)
                for acc, c in terms
                for r, cr in img.items()
            ]
        out: BarChain = {}
        av = self.phi_A.apply_basis(da, ia)
        cv = self.phi_C.apply_basis(dc, ic)
        for ra, ca in av.items():
            for acc, c in terms:
                for rc, cc in cv.items():
                    _acc(out, BarWord((da, ra), acc, (dc, rc)), ca * c * cc)
        return out

    def _map_word_to_indices(self, w: BarWord, idx: dict[BarWord, int]) -> Vec:
        return {idx[ww]: c for ww, c in self._map_word(w).items()}

    def apply_vec(self, n: int, v: Vec) -> Vec:
        out: Vec = {}
        for i, c in v.items():
            vec_add_scaled(out, self.cols[n][i], c)
        return out

    def apply_chain(self, n: int, chain: BarChain) -> BarChain:
        v = self.apply_vec(n, self.source.chain_to_vec(n, chain))
        return self.target.vec_to_chain(n, v)

    def commutes_with_D(self) -> bool:
        N = self.source.system.N
        for n in range(N):
            for j in range(len(self.source.words[n])):
                lhs = _apply_cols(self.cols[n + 1], self.source.D[n][j])
                rhs = _apply_cols(self.target.D[n], self.cols[n][j])
                if lhs != rhs:
                    return False
        return True


def induced_bar_map(
    source: BarComplexWindow,
    target: BarComplexWindow,
    phi_A: AlgebraMorphism,
    phi_B: AlgebraMorphism,
    phi_C: AlgebraMorphism,
) -> WindowMap:
    """The chain map between windows induced by a strictly commuting
    ladder (phi_A, phi_B, phi_C); normalization is functorial, so the
    entrywise map is well defined on degree->=2 words."""
    s, t = source.system, target.system
    for name, phi, src, tgt in (
        ("left", phi_A, s.A, t.A),
        ("middle", phi_B, s.B, t.B),
        ("right", phi_C, s.C, t.C),
    ):
        if phi.source is not src or phi.target is not tgt:
            raise ValueError(f"{name} morphism endpoints do not match the windows")
        violations = check_morphism(phi)
        if violations:
            raise InvalidMorphism([f"{name}: {m}" for m in violations])
    if not morphisms_equal(compose_morphisms(phi_A, s.f), compose_morphisms(t.f, phi_B)):
        raise LadderNotCommuting("left square does not commute")
    if not morphisms_equal(compose_morphisms(phi_C, s.g), compose_morphisms(t.g, phi_B)):
        raise LadderNotCommuting("right square does not commute")
    wm = WindowMap(source, target, phi_A, phi_B, phi_C)
    if not wm.commutes_with_D():
        raise CompositionNonzero("induced ladder map fails to commute with D")
    return wm
