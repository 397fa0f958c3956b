import pytest

from corpus import collapse_ladder, corpus

from embar.barcomplex import (
    BarComplexWindow,
    BarSystem,
    BarWord,
    ThetaMap,
    bar_augmentation,
    bar_d,
    bar_delta,
    chain_D,
    enumerate_words,
    induced_bar_map,
)
from embar.cdga import (
    AlgebraMorphism,
    Generator as Gen,
    GeneratorPresentation as Pres,
    build_free,
    ground_field,
    identity_morphism,
    morphism_from_images,
)
from embar.errors import (
    InvalidMorphism,
    LadderNotCommuting,
    MiddleAlgebraNotSimplyConnected,
    SquareNotCommuting,
)


def trivial_system(N=6):
    g = ground_field(N)
    aug = identity_morphism(g)
    return BarSystem(aug, aug)


def word(left, mids, right):
    return BarWord(left, tuple(mids), right)


UNIT = word((0, 0), (), (0, 0))


def test_enumerate_words_ground_triple():
    sys = trivial_system()
    assert enumerate_words(sys, 0) == [UNIT]
    for n in range(1, 7):
        assert enumerate_words(sys, n) == []


def test_enumerate_words_loop_s3():
    sys = corpus(10).systems["loop_s3"]
    assert enumerate_words(sys, 1) == []
    w4 = enumerate_words(sys, 4)
    assert w4 == [word((0, 0), ((3, 0), (3, 0)), (0, 0))]
    assert [len(enumerate_words(sys, n)) for n in range(11)] == [
        1, 0, 1, 0, 1, 0, 1, 0, 1, 0, 1,
    ]


def test_middle_algebra_must_be_simply_connected():
    N = 6
    g = ground_field(N)
    circle = build_free(Pres([Gen("u", 1)]), N)
    aug = morphism_from_images(circle, g, {})
    with pytest.raises(MiddleAlgebraNotSimplyConnected):
        BarSystem(aug, aug)


def test_bar_d_vanishes_without_differentials():
    sys = corpus(8).systems["loop_hs2"]
    for n in range(9):
        for w in enumerate_words(sys, n):
            assert bar_d(sys, w) == {}


def test_bar_d_on_middle_entry():
    sys = corpus(8).systems["loop_ms2"]
    B = sys.B
    e3 = B.labels[3].index("e3")
    e2sq = B.labels[4].index("e2^2")
    w = word((0, 0), ((3, e3),), (0, 0))
    assert bar_d(sys, w) == {word((0, 0), ((4, e2sq),), (0, 0)): -1}


def test_bar_d_on_end_entries():
    # words (alpha;;beta) with both ends in the model of S^2
    N = 8
    ms2 = corpus(N).ms2
    g = ground_field(N)
    unit = morphism_from_images(g, ms2, {})
    sys = BarSystem(unit, unit)
    e2 = ms2.labels[2].index("e2")
    e3 = ms2.labels[3].index("e3")
    e2sq = ms2.labels[4].index("e2^2")
    # d(e3;;e3) = (e2^2;;e3) + (-1)^3 (e3;;e2^2)
    w = word((3, e3), (), (3, e3))
    assert bar_d(sys, w) == {
        word((4, e2sq), (), (3, e3)): 1,
        word((3, e3), (), (4, e2sq)): -1,
    }
    # d(e2;;e3) = (e2;;e2^2) with sign (-1)^2
    w = word((2, e2), (), (3, e3))
    assert bar_d(sys, w) == {word((2, e2), (), (4, e2sq)): 1}


def test_bar_delta_zero_on_no_middles():
    sys = corpus(8).systems["loop_ms2"]
    assert bar_delta(sys, UNIT) == {}


def test_bar_delta_kills_loop_s3_word():
    sys = corpus(10).systems["loop_s3"]
    w = word((0, 0), ((3, 0), (3, 0)), (0, 0))
    assert bar_delta(sys, w) == {}


def test_bar_delta_two_sided_contraction_signs():
    # A = C = Q[t2], both maps c -> t^2: delta(1; c; 1) = -(t^2;;1) + (1;;t^2)
    N = 8
    poly_t = build_free(Pres([Gen("t", 2)]), N, name="T")
    poly_c = build_free(Pres([Gen("c", 4)]), N, name="Cbase")
    t2 = {poly_t.labels[4].index("t^2"): 1}
    f = morphism_from_images(poly_c, poly_t, {"c": t2})
    sys = BarSystem(f, f)
    c_idx = poly_c.labels[4].index("c")
    w = word((0, 0), ((4, c_idx),), (0, 0))
    t2_idx = poly_t.labels[4].index("t^2")
    assert bar_delta(sys, w) == {
        word((4, t2_idx), (), (0, 0)): -1,
        word((0, 0), (), (4, t2_idx)): 1,
    }


def test_window_ground_triple():
    win = BarComplexWindow(trivial_system())
    assert win.word_counts() == [1, 0, 0, 0, 0, 0, 0]
    assert all(win.D_matrix(n).is_zero() for n in range(6))


def test_window_loop_s3_word_counts():
    win = BarComplexWindow(corpus(10).systems["loop_s3"])
    assert win.word_counts() == [1, 0, 1, 0, 1, 0, 1, 0, 1, 0, 1]


def test_window_loop_hs2_word_counts():
    win = BarComplexWindow(corpus(6).systems["loop_hs2"])
    assert win.word_counts() == [1, 1, 1, 1, 1, 1, 1]


def test_window_bigraded_counts_match_totals():
    win = BarComplexWindow(corpus(8).systems["loop_ms2"])
    big = win.bigraded_word_counts()
    for n, count in enumerate(win.word_counts()):
        assert sum(v for (k, m), v in big.items() if m == n) == count


def test_theta_on_units_and_middles():
    N = 8
    c = corpus(N)
    sys = c.systems["s2_pullback"]
    T, u, v = c.thetas["s2_pullback"]
    theta = ThetaMap(sys, T, u, v)
    assert theta.word(UNIT) == {0: 1}
    cc = sys.B.labels[4].index("c")
    assert theta.word(word((0, 0), ((4, cc),), (0, 0))) == {}
    # (1;;t) -> v(t) = x
    t = sys.C.labels[2].index("t")
    x = T.labels[2].index("x")
    assert theta.word(word((0, 0), (), (2, t))) == {x: 1}


def test_theta_requires_commuting_square():
    N = 8
    poly_t = build_free(Pres([Gen("t", 2)]), N)
    poly_c = build_free(Pres([Gen("c", 4)]), N)
    t2 = {poly_t.labels[4].index("t^2"): 1}
    f = morphism_from_images(poly_c, poly_t, {"c": t2})
    sys = BarSystem(f, f)
    u = identity_morphism(poly_t)
    v = morphism_from_images(poly_t, poly_t, {})  # t -> 0
    with pytest.raises(SquareNotCommuting):
        ThetaMap(sys, poly_t, u, v)


def test_theta_is_chain_map_on_s2_pullback():
    N = 8
    c = corpus(N)
    sys = c.systems["s2_pullback"]
    T, u, v = c.thetas["s2_pullback"]
    theta = ThetaMap(sys, T, u, v)
    for n in range(N):
        for w in enumerate_words(sys, n):
            lhs = theta.chain(chain_D(sys, {w: 1}))
            rhs = T.diff_vec(n, theta.word(w))
            assert lhs == rhs


def test_bar_augmentation():
    sys = trivial_system()
    assert bar_augmentation({UNIT: 1}) == 1
    assert bar_augmentation({UNIT: 3}) == 3
    c = corpus(6)
    w = word((0, 0), ((2, 0),), (0, 0))
    assert bar_augmentation({w: 5}) == 0
    assert bar_augmentation({}) == 0


def test_induced_map_identity_ladder():
    N = 6
    c = corpus(N)
    win = BarComplexWindow(c.systems["loop_hs2"])
    ident = identity_morphism
    wm = induced_bar_map(win, win, ident(c.ground), ident(c.hs2), ident(c.ground))
    for n in range(N + 1):
        for i, col in enumerate(wm.cols[n]):
            assert col == {i: 1}


def test_induced_map_collapse_ladder_is_chain_map():
    N = 6
    c = corpus(N)
    src = BarComplexWindow(c.systems["loop_ms2"])
    tgt = BarComplexWindow(c.systems["loop_hs2"])
    wm = induced_bar_map(src, tgt, *collapse_ladder(N))
    assert wm.commutes_with_D()


def test_induced_map_multiplicative_for_shuffle():
    from embar.shuffle import bar_product, chain_product

    N = 6
    c = corpus(N)
    src = BarComplexWindow(c.systems["loop_ms2"])
    tgt = BarComplexWindow(c.systems["loop_hs2"])
    wm = induced_bar_map(src, tgt, *collapse_ladder(N))
    for p in range(N + 1):
        for q in range(N + 1 - p):
            for w1 in src.words[p]:
                img1 = wm.apply_chain(p, {w1: 1})
                for w2 in src.words[q]:
                    lhs = wm.apply_chain(p + q, bar_product(src.system, w1, w2))
                    rhs = chain_product(
                        tgt.system, img1, wm.apply_chain(q, {w2: 1})
                    )
                    assert lhs == rhs


def test_induced_map_rejects_invalid_morphism():
    N = 6
    c = corpus(N)
    win = BarComplexWindow(c.systems["loop_hs2"])
    zero = AlgebraMorphism(
        c.hs2, c.hs2, [[{} for _ in range(c.hs2.dims[n])] for n in range(N + 1)]
    )
    with pytest.raises(InvalidMorphism):
        induced_bar_map(win, win, identity_morphism(c.ground), zero, identity_morphism(c.ground))


def test_induced_map_rejects_non_commuting_ladder():
    N = 8
    poly_t = build_free(Pres([Gen("t", 2)]), N)
    poly_c = build_free(Pres([Gen("c", 4)]), N)
    g = ground_field(N)
    t2 = {poly_t.labels[4].index("t^2"): 1}
    f = morphism_from_images(poly_c, poly_t, {"c": t2})
    aug = morphism_from_images(poly_c, g, {})
    win = BarComplexWindow(BarSystem(f, aug))
    t_to_zero = morphism_from_images(poly_t, poly_t, {})
    with pytest.raises(LadderNotCommuting):
        induced_bar_map(
            win, win, t_to_zero, identity_morphism(poly_c), identity_morphism(g)
        )


def test_differentials_raise_degrees_correctly():
    sys = corpus(8).systems["loop_ms2"]
    for n in range(8):
        for w in enumerate_words(sys, n):
            for w2 in bar_d(sys, w):
                assert w2.total_degree() == n + 1
                assert w2.bar_degree() == w.bar_degree()
                assert w2.tensor_degree() == w.tensor_degree() + 1
            for w2 in bar_delta(sys, w):
                assert w2.total_degree() == n + 1
                assert w2.bar_degree() == w.bar_degree() + 1
                assert w2.tensor_degree() == w.tensor_degree()


def test_enumeration_stable_under_relabeling():
    N = 8
    a1 = build_free(Pres([Gen("x", 3)]), N, name="A")
    a2 = build_free(Pres([Gen("zz", 3)]), N, name="B")
    g = ground_field(N)
    s1 = BarSystem(morphism_from_images(a1, g, {}), morphism_from_images(a1, g, {}))
    s2 = BarSystem(morphism_from_images(a2, g, {}), morphism_from_images(a2, g, {}))
    for n in range(N + 1):
        w1 = enumerate_words(s1, n)
        w2 = enumerate_words(s2, n)
        assert [(w.left, w.middles, w.right) for w in w1] == [
            (w.left, w.middles, w.right) for w in w2
        ]
