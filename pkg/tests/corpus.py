"""Shared example triples used across the test suite.

Everything is cached per truncation degree because window construction
re-verifies all sign identities eagerly.
"""

from dataclasses import dataclass
from functools import lru_cache

from embar.barcomplex import BarSystem
from embar.cdga import (
    AlgebraMorphism,
    Generator as Gen,
    GeneratorPresentation as Pres,
    GradedAlgebra,
    build_free,
    ground_field,
    identity_morphism,
    morphism_from_images,
)


@dataclass
class Corpus:
    N: int
    ground: GradedAlgebra
    s3: GradedAlgebra
    hs2: GradedAlgebra
    ms2: GradedAlgebra
    poly_t: GradedAlgebra
    poly_c: GradedAlgebra
    ebundle: GradedAlgebra
    tb_total: GradedAlgebra
    collapse: AlgebraMorphism
    systems: dict[str, BarSystem]
    thetas: dict[str, tuple[GradedAlgebra, AlgebraMorphism, AlgebraMorphism]]


@lru_cache(maxsize=None)
def corpus(N: int) -> Corpus:
    ground = ground_field(N)
    s3 = build_free(Pres([Gen("x", 3)]), N, name="S3")
    hs2 = build_free(Pres([Gen("x", 2)], relations=[{((0, 2),): 1}]), N, name="HS2")
    ms2 = build_free(Pres([Gen("e2", 2), Gen("e3", 3)], {1: {((0, 2),): 1}}), N, name="MS2")
    poly_t = build_free(Pres([Gen("t", 2)]), N, name="PolyT")
    poly_c = build_free(Pres([Gen("c", 4)]), N, name="PolyC")
    ebundle = build_free(Pres([Gen("c", 4), Gen("y", 7)]), N, name="EBundle")
    tb_total = build_free(
        Pres([Gen("x", 2), Gen("y", 7)], relations=[{((0, 2),): 1}]), N, name="TBTotal"
    )

    def aug(B):
        return morphism_from_images(B, ground, {})

    def unit_into(T):
        return morphism_from_images(ground, T, {})

    t2 = {poly_t.labels[4].index("t^2"): 1} if N >= 4 else {}
    c_img = {ebundle.labels[4].index("c"): 1} if N >= 4 else {}
    y_img = {tb_total.labels[7].index("y"): 1} if N >= 7 else {}
    c_to_t2 = morphism_from_images(poly_c, poly_t, {"c": t2})
    c_into_e = morphism_from_images(poly_c, ebundle, {"c": c_img})
    c_to_hs2 = morphism_from_images(poly_c, hs2, {})
    collapse = morphism_from_images(ms2, hs2, {"e2": {hs2.labels[2].index("x"): 1}})
    t_to_x = morphism_from_images(poly_t, hs2, {"t": {hs2.labels[2].index("x"): 1}})
    x_to_x = morphism_from_images(hs2, tb_total, {"x": {tb_total.labels[2].index("x"): 1}})
    e_to_tb = morphism_from_images(ebundle, tb_total, {"y": y_img})

    systems = {
        "loop_s3": BarSystem(aug(s3), aug(s3)),
        "loop_hs2": BarSystem(aug(hs2), aug(hs2)),
        "loop_ms2": BarSystem(aug(ms2), aug(ms2)),
        "s2_pullback": BarSystem(morphism_from_images(poly_c, ground, {}), c_to_t2),
        "s2_flipped": BarSystem(c_to_t2, morphism_from_images(poly_c, ground, {})),
        "trivial_bundle": BarSystem(c_to_hs2, c_into_e),
        "not_free": BarSystem(
            morphism_from_images(poly_c, ground, {}), morphism_from_images(poly_c, ground, {})
        ),
    }

    id_q = identity_morphism(ground)
    thetas = {
        "loop_s3": (ground, id_q, id_q),
        "loop_hs2": (ground, id_q, id_q),
        "loop_ms2": (ground, id_q, id_q),
        "s2_pullback": (hs2, unit_into(hs2), t_to_x),
        "s2_flipped": (hs2, t_to_x, unit_into(hs2)),
        "trivial_bundle": (tb_total, x_to_x, e_to_tb),
        "not_free": (ground, id_q, id_q),
    }

    return Corpus(
        N,
        ground,
        s3,
        hs2,
        ms2,
        poly_t,
        poly_c,
        ebundle,
        tb_total,
        collapse,
        systems,
        thetas,
    )


def collapse_ladder(N: int):
    """Ladder (Q, MS2, Q) -> (Q, HS2, Q) collapsing the model of S^2
    onto its cohomology."""
    c = corpus(N)
    id_q = identity_morphism(c.ground)
    return id_q, c.collapse, id_q
