import random

import pytest

from embar.cdga import (
    AlgebraMorphism,
    GeneratorPresentation as Pres,
    Generator as Gen,
    build_free,
    check_morphism,
    cohomology_algebra,
    enumerate_monomials,
    ground_field,
    identity_morphism,
    is_quasi_iso,
    mono_mul,
    morphism_from_images,
)
from embar.errors import (
    DSquareNonzero,
    InhomogeneousDifferential,
    InhomogeneousRelation,
    InvalidAlgebra,
    InvalidMorphism,
)


def exterior_x3(N=6):
    return build_free(Pres([Gen("x", 3)]), N, name="S3")


def poly_t2(N=6):
    return build_free(Pres([Gen("t", 2)]), N, name="PolyT")


def minimal_s2(N=6):
    # generators e2, e3 with d e3 = e2^2
    return build_free(
        Pres([Gen("e2", 2), Gen("e3", 3)], {1: {((0, 2),): 1}}),
        N,
        name="MS2",
    )


def truncated_s2(N=6):
    return build_free(Pres([Gen("x", 2)], relations=[{((0, 2),): 1}]), N, name="HS2")


def test_build_free_exterior_dims():
    A = exterior_x3(6)
    assert A.dims == [1, 0, 0, 1, 0, 0, 0]
    assert A.labels[3] == ["x"]


def test_build_free_polynomial_dims():
    A = poly_t2(6)
    assert A.dims == [1, 0, 1, 0, 1, 0, 1]
    assert A.labels[6] == ["t^3"]


def test_build_free_minimal_model_of_s2():
    A = minimal_s2(6)
    assert A.dims == [1, 0, 1, 1, 1, 1, 1]
    # d(e2*e3) = e2^3
    n = 5
    i = A.labels[5].index("e2*e3")
    col = A.diff_vec(5, {i: 1})
    assert col == {A.labels[6].index("e2^3"): 1}


def test_build_free_relations_truncated_polynomial():
    A = truncated_s2(6)
    assert A.dims == [1, 0, 1, 0, 0, 0, 0]
    x = A.labels[2].index("x")
    assert A.mult_basis(2, x, 2, x) == {}


def test_odd_generator_square_absent():
    A = build_free(Pres([Gen("x", 1), Gen("y", 2)]), 5)
    for bucket in A.labels:
        assert "x^2" not in bucket
    x = A.labels[1].index("x")
    assert A.mult_basis(1, x, 1, x) == {}


def test_koszul_sign_on_odd_odd_swap():
    A = build_free(Pres([Gen("x", 1), Gen("y", 3)]), 5)
    x = A.labels[1].index("x")
    y = A.labels[3].index("y")
    xy = A.labels[4].index("x*y")
    assert A.mult_basis(1, x, 3, y) == {xy: 1}
    assert A.mult_basis(3, y, 1, x) == {xy: -1}


def test_build_free_rejects_d_square_nonzero():
    # d b = a^2, d c = a*b gives d(d c) = a^3 != 0
    with pytest.raises(DSquareNonzero):
        build_free(
            Pres(
                [Gen("a", 2), Gen("b", 3), Gen("c", 4)],
                {1: {((0, 2),): 1}, 2: {((0, 1), (1, 1)): 1}},
            ),
            8,
        )


def test_build_free_rejects_later_listed_differential():
    # d x = y with y declared after x breaks the generator ordering
    with pytest.raises(InvalidAlgebra):
        build_free(Pres([Gen("x", 1), Gen("y", 2)], {0: {((1, 1),): 1}}), 6)


def test_build_free_rejects_inhomogeneous_differential():
    with pytest.raises(InhomogeneousDifferential):
        # d e2 = e3^2 is formally degree 6, not 3
        build_free(Pres([Gen("e2", 2), Gen("e3", 3)], {0: {((1, 2),): 1}}), 6)


def test_build_free_rejects_inhomogeneous_relation():
    with pytest.raises(InhomogeneousRelation):
        build_free(Pres([Gen("x", 2)], relations=[{((0, 1),): 1, ((0, 2),): 1}]), 6)


def test_build_free_rejects_degree_zero_generator():
    with pytest.raises(InvalidAlgebra):
        build_free(Pres([Gen("c", 0)]), 4)


def test_cohomology_of_exterior_is_itself():
    A = exterior_x3(6)
    H, _ = cohomology_algebra(A)
    assert H.dims == A.dims
    assert H.has_zero_differential()


def test_cohomology_of_minimal_s2():
    A = minimal_s2(6)
    H, _ = cohomology_algebra(A)
    assert H.dims == [1, 0, 1, 0, 0, 0, 0]
    # the degree-2 class squares to zero
    assert H.mult_basis(2, 0, 2, 0) == {}


def test_cohomology_of_acyclic_algebra_concentrated_in_degree_zero():
    # y deg 2, x deg 1, d x = y: contractible
    A = build_free(Pres([Gen("y", 2), Gen("x", 1)], {1: {((0, 1),): 1}}), 6)
    H, _ = cohomology_algebra(A)
    assert H.dims[:6] == [1, 0, 0, 0, 0, 0]


def test_cohomology_idempotent_on_dims():
    for A in (exterior_x3(6), minimal_s2(6), truncated_s2(6)):
        H, _ = cohomology_algebra(A)
        HH, _ = cohomology_algebra(H)
        assert HH.dims == H.dims


def test_check_morphism_identity_empty_report():
    A = minimal_s2(6)
    assert check_morphism(identity_morphism(A)) == []


def test_check_morphism_zero_map_reports_unit():
    A = exterior_x3(6)
    zero = AlgebraMorphism(A, A, [[{} for _ in range(A.dims[n])] for n in range(A.N + 1)])
    report = check_morphism(zero)
    assert any("unit" in line for line in report)


def test_morphism_c4_into_t2():
    # Q[c4] -> Q[t2], c -> t^2 is a valid morphism
    C = build_free(Pres([Gen("c", 4)]), 8, name="PolyC")
    T = build_free(Pres([Gen("t", 2)]), 8)
    t2 = {T.labels[4].index("t^2"): 1}
    phi = morphism_from_images(C, T, {"c": t2})
    assert check_morphism(phi) == []
    # c^2 -> t^4
    c2 = C.labels[8].index("c^2")
    assert phi.apply_basis(8, c2) == {T.labels[8].index("t^4"): 1}


def test_morphism_violating_relations_rejected():
    HS2 = truncated_s2(6)
    T = poly_t2(6)
    with pytest.raises(InvalidMorphism):
        morphism_from_images(HS2, T, {"x": {T.labels[2].index("t"): 1}})


def test_is_quasi_iso_identity():
    A = minimal_s2(6)
    assert is_quasi_iso(identity_morphism(A))


def test_is_quasi_iso_collapse_of_minimal_model():
    A = minimal_s2(6)
    H = truncated_s2(6)
    phi = morphism_from_images(A, H, {"e2": {H.labels[2].index("x"): 1}})
    assert check_morphism(phi) == []
    assert is_quasi_iso(phi)


def test_is_quasi_iso_fails_for_unit_inclusion():
    Qf = ground_field(6)
    A = exterior_x3(6)
    incl = morphism_from_images(Qf, A, {})
    assert not is_quasi_iso(incl)


def test_random_associativity_on_free_algebras():
    rng = random.Random(5)
    A = build_free(Pres([Gen("a", 2), Gen("b", 3), Gen("c", 4)]), 10)

    def random_vec(n):
        d = A.dims[n]
        return {i: rng.randint(-3, 3) for i in rng.sample(range(d), min(d, 2))} if d else {}

    for _ in range(30):
        p, q, r = rng.randint(0, 4), rng.randint(0, 4), rng.randint(0, 2)
        u, v, w = random_vec(p), random_vec(q), random_vec(r)
        lhs = A.mult_vec(p + q, A.mult_vec(p, u, q, v), r, w)
        rhs = A.mult_vec(p, u, q + r, A.mult_vec(q, v, r, w))
        assert lhs == rhs


def test_leibniz_holds_on_full_basis():
    A = minimal_s2(8)
    N = A.N
    for p in range(N):
        for q in range(N - p):
            for i in range(A.dims[p]):
                for j in range(A.dims[q]):
                    lhs = A.diff_vec(p + q, A.mult_basis(p, i, q, j))
                    rhs = A.mult_vec(p + 1, A.diff_vec(p, {i: 1}), q, {j: 1})
                    sgn = -1 if p % 2 else 1
                    term = A.mult_vec(p, {i: 1}, q + 1, A.diff_vec(q, {j: 1}))
                    for k, c in term.items():
                        rhs[k] = rhs.get(k, 0) + sgn * c
                        if not rhs[k]:
                            del rhs[k]
                    assert lhs == rhs


def test_monomial_enumeration_matches_signs():
    degrees = [3, 3]
    r = mono_mul(degrees, ((0, 1),), ((1, 1),))
    assert r == (1, ((0, 1), (1, 1)))
    r = mono_mul(degrees, ((1, 1),), ((0, 1),))
    assert r == (-1, ((0, 1), (1, 1)))
    assert mono_mul(degrees, ((0, 1),), ((0, 1),)) is None
    buckets = enumerate_monomials([2], 6)
    assert [len(b) for b in buckets] == [1, 0, 1, 0, 1, 0, 1]
