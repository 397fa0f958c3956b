"""Formality certification for pull-backs.

Given a cohomology triple H(X) <- H(B) -> H(E) (zero differentials; the
compatibility of the underlying maps is the caller's assertion, recorded
in the certificate), the criterion is:

1. H(E) is a free H(B)-module -- checked greedily degree by degree, with
   a concrete linear dependence as witness on failure;
2. therefore the window's cohomology is concentrated in bar degree 0,
   which is verified, not assumed: freeness failing to force the
   vanishing aborts loudly as an internal inconsistency;
3. the projection of the window onto bar degree 0 followed by the class
   projection is then a quasi-isomorphism onto the Tor algebra, which is
   verified as a chain map, as a cohomology isomorphism through degree
   N-1, and as multiplicative on representatives.

A certificate bundles the verified facts with the Tor algebra of the
pull-back. Failure of freeness only means the criterion does not apply;
it is never a disproof of formality.
"""

from __future__ import annotations

from dataclasses import dataclass

from .barcomplex import BarComplexWindow, BarSystem
from .cdga import AlgebraMorphism
from .errors import MiddleAlgebraNotSimplyConnected, NotFree, VanishingFailed
from .linalg import Q, RationalMatrix, Vec, rank, rank_and_kernel, rref
from .shuffle import chain_product
from .tor import TorResult, bar_cohomology

Coeff = Q


@dataclass
class FreeModuleReport:
    free: bool
    generators: list[tuple[int, int]]  # (degree, basis index in the module)
    generator_labels: list[str]
    witness: str | None = None
    witness_degree: int | None = None


def check_free_module(g: AlgebraMorphism) -> FreeModuleReport:
    """Greedy freeness test for the target of g as a module over its
    source (acting through g and the target's product).

    Walks the degrees upward, adjoining the lowest basis element not yet
    in the generated submodule, and checks at every degree that the
    assembled multiplication map is injective. Returns the generator
    degrees on success, or the first linear dependence as witness.
    """
    HB, HE = g.source, g.target
    if HB.dims[0] != 1 or (HB.N >= 1 and HB.dims[1] != 0):
        raise MiddleAlgebraNotSimplyConnected("the module base must have B^0 = Q*1 and B^1 = 0")
    N = HB.N
    generators: list[tuple[int, int]] = []
    labels: list[str] = []
    for n in range(N + 1):
        cols: list[Vec] = []
        col_tags: list[tuple[int, int, int]] = []  # (base degree, base index, generator slot)
        for slot, (gd, gi) in enumerate(generators):
            p = n - gd
            if p < 0:
                continue
            for bi in range(HB.dims[p]):
                action = HE.mult_vec(p, g.apply_basis(p, bi), gd, {gi: 1})
                cols.append(action)
                col_tags.append((p, bi, slot))
        matrix = RationalMatrix(HE.dims[n], len(cols), [dict(c) for c in cols])
        rk, kernel = rank_and_kernel(matrix)
        if kernel:
            terms = []
            for col_idx, coeff in sorted(kernel[0].items()):
                p, bi, slot = col_tags[col_idx]
                coeff_str = "" if coeff == 1 else f"{coeff}*"
                terms.append(f"{coeff_str}{HB.labels[p][bi]}*({labels[slot]})")
            witness = " + ".join(terms) + " = 0"
            return FreeModuleReport(False, generators, labels, witness, n)
        if rk < HE.dims[n]:
            _, pivots = rref(cols, HE.dims[n])
            pivot_set = set(pivots)
            for j in range(HE.dims[n]):
                if j not in pivot_set:
                    generators.append((n, j))
                    labels.append(HE.labels[n][j])
    return FreeModuleReport(True, generators, labels)


def check_positive_vanishing(tor: TorResult) -> bool:
    """True iff every bigrade with nonzero bar degree vanishes in the
    certified range. Only meaningful for cohomology-triple windows."""
    if tor.bigraded_dims is None:
        raise ValueError("positive-vanishing is only defined for cohomology-triple windows")
    return all(bar == 0 for (bar, _m) in tor.bigraded_dims)


@dataclass
class FormalityCertificate:
    """Machine-checkable record that the pull-back of the asserted
    compatibly-formal triple is formal, with its cohomology algebra."""

    truncation: int
    valid_up_to: int
    triple: str
    module_generators: list[tuple[int, str]]
    positive_vanishing: bool
    projection_chain_map: bool
    projection_iso: bool
    projection_multiplicative: bool
    dims: list[int]
    product_lines: list[str]
    assumption: str = (
        "the input triple is taken to be the cohomology of compatibly formal maps; "
        "this compatibility is a user assertion, not verified here"
    )

    def to_text(self) -> str:
        lines = [
            "formality certificate",
            "=====================",
            f"triple: {self.triple}",
            f"truncation degree: {self.truncation}",
            f"certified through degree: {self.valid_up_to}",
            "",
            "assumption",
            f"  {self.assumption}",
            "",
            "free module structure of the right algebra over the base",
            "  generator degrees: " + ", ".join(str(d) for d, _ in self.module_generators),
        ]
        for d, label in self.module_generators:
            lines.append(f"  degree {d}: {label}")
        lines += [
            "",
            f"cohomology in nonzero bar degree vanishes: {_yes(self.positive_vanishing)}",
            "bar-degree-zero projection onto the Tor algebra",
            f"  chain map: {_yes(self.projection_chain_map)}",
            f"  induces a cohomology isomorphism: {_yes(self.projection_iso)}",
            f"  multiplicative on representatives: {_yes(self.projection_multiplicative)}",
            "",
            "cohomology algebra of the pull-back (Tor algebra)",
            "  dims by degree: " + ", ".join(str(d) for d in self.dims),
        ]
        lines.extend(f"  {line}" for line in self.product_lines)
        lines += [
            "",
            "conclusion: the pull-back is formal and its cohomology algebra is the",
            "Tor algebra recorded above.",
            "",
        ]
        return "\n".join(lines)


def _yes(flag: bool) -> str:
    return "verified" if flag else "FAILED"


def formality_certificate(f: AlgebraMorphism, g: AlgebraMorphism) -> FormalityCertificate:
    """Run the full criterion on a cohomology triple and bundle the
    verified record. Raises :class:`NotFree` when the freeness hypothesis
    fails (criterion inapplicable) and :class:`VanishingFailed` when the
    vanishing that freeness forces does not materialize (internal
    inconsistency)."""
    for phi in (f, g):
        for alg in (phi.source, phi.target):
            if not alg.has_zero_differential():
                raise ValueError(
                    f"{alg.describe()} has a nonzero differential; supply cohomology algebras"
                )
    freeness = check_free_module(g)
    if not freeness.free:
        raise NotFree(f"{freeness.witness} in degree {freeness.witness_degree}")

    window = BarComplexWindow(BarSystem(f, g))
    tor = bar_cohomology(window)
    if not check_positive_vanishing(tor):
        raise VanishingFailed(
            "positive bar-degree cohomology survives although the module is free"
        )

    system = window.system
    N = system.N

    def project_bar0(n: int, vec: Vec) -> list[Q]:
        bar0 = {
            i: c for i, c in vec.items() if not window.words[n][i].middles
        }
        return tor.projectors[n].project(bar0)

    chain_map_ok = True
    for n in range(1, N):
        for j in range(len(window.words[n - 1])):
            image = window.D[n - 1][j]
            if any(c for c in project_bar0(n, image)):
                chain_map_ok = False
                break
        if not chain_map_ok:
            break

    iso_ok = True
    for n in range(N):
        dim = tor.total_dims[n]
        if dim == 0:
            continue
        cols = []
        for rep in tor.reps[n]:
            coords = project_bar0(n, window.chain_to_vec(n, rep))
            cols.append({k: c for k, c in enumerate(coords) if c})
        if rank(RationalMatrix(dim, dim, cols)) != dim:
            iso_ok = False
            break

    mult_ok = True
    for p in range(N):
        for i in range(tor.total_dims[p]):
            for q in range(N - p):
                for j in range(tor.total_dims[q]):
                    prod = chain_product(system, tor.reps[p][i], tor.reps[q][j])
                    via_projection = project_bar0(p + q, window.chain_to_vec(p + q, prod))
                    recorded = tor.products[((p, i), (q, j))]
                    as_coords = [recorded.get((p + q, l), 0) for l in range(tor.total_dims[p + q])]
                    if via_projection != as_coords:
                        mult_ok = False
    if not (chain_map_ok and iso_ok and mult_ok):
        raise VanishingFailed("bar-degree-zero projection failed verification")

    product_lines = _render_products(tor)
    return FormalityCertificate(
        truncation=N,
        valid_up_to=N - 1,
        triple=system.describe(),
        module_generators=[(d, lbl) for (d, _i), lbl in zip(freeness.generators, freeness.generator_labels)],
        positive_vanishing=True,
        projection_chain_map=chain_map_ok,
        projection_iso=iso_ok,
        projection_multiplicative=mult_ok,
        dims=list(tor.total_dims),
        product_lines=product_lines,
    )


def _render_products(tor: TorResult) -> list[str]:
    lines = []
    for ((p, i), (q, j)), value in sorted(tor.products.items()):
        if p == 0 or q == 0:
            continue  # unit multiples carry no information
        lhs = f"{tor.class_label(p, i)} * {tor.class_label(q, j)}"
        if not value:
            lines.append(f"{lhs} = 0")
            continue
        terms = []
        for (s, l), c in sorted(value.items()):
            coeff = "" if c == 1 else f"{c}*"
            terms.append(f"{coeff}{tor.class_label(s, l)}")
        lines.append(f"{lhs} = " + " + ".join(terms))
    for (p, i), (q, j) in sorted(tor.unknown_products):
        if p == 0 or q == 0:
            continue
        lines.append(
            f"{tor.class_label(p, i)} * {tor.class_label(q, j)} = unknown (beyond the window)"
        )
    return lines
