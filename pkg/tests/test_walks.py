"""Walk enumeration oracle: classification, counts, exact finite-n moments.

Independent cross-checks: Bell numbers from the Bell triangle for total class
counts, and a direct sum over all index words of {1..n}^k (no equivalence
classes, no falling factorials) for finite-n moments.
"""

from fractions import Fraction
from itertools import product

import pytest

from wignerexp import (
    GOE,
    GUE,
    RADEMACHER,
    MissingMomentError,
    MomentModel,
    catalan,
    canonical_words,
    classify_walk,
    count_classes,
    cycle_both_ways_class_count,
    cycle_one_way_class_count,
    double_edge_class_count,
    enumerate_canonical_words,
    exact_moment,
    expected_word_product,
    goe_model,
    gue_model,
    nu_moment,
    rademacher_model,
    self_loop_class_count,
    semicircle_moment,
    walk_classes,
)

# -- oracles -------------------------------------------------------------------


def bell_numbers(count: int) -> list[int]:
    """Bell triangle: number of set partitions of {1..k}."""
    bells = [1]
    row = [1]
    for _ in range(count - 1):
        new_row = [row[-1]]
        for value in row:
            new_row.append(new_row[-1] + value)
        bells.append(new_row[0])
        row = new_row
    return bells


def direct_moment_oracle(k: int, n: int, model: MomentModel) -> Fraction:
    """Sum over every word in {1..n}^k, grouping steps by unordered pair."""
    total = Fraction(0)
    for word in product(range(1, n + 1), repeat=k):
        factors: dict = {}
        for idx in range(k):
            a, b = word[idx], word[(idx + 1) % k]
            key = (min(a, b), max(a, b))
            fwd, bwd = factors.get(key, (0, 0))
            if (a, b) == key:
                fwd += 1
            else:
                bwd += 1
            factors[key] = (fwd, bwd)
        value = Fraction(1)
        for (a, b), (fwd, bwd) in factors.items():
            if a == b:
                value *= model.diag_moment(fwd)
            elif model.is_real:
                value *= model.offdiag_moment(fwd + bwd)
            else:
                value *= model.offdiag_mixed(fwd, bwd)
            if value == 0:
                break
        total += value
    sigma2 = model.sigma2
    return total / (Fraction(n) ** (1 + k // 2) * sigma2 ** (k // 2))


# -- enumeration ------------------------------------------------------------------


def test_small_class_lists():
    assert {cls.canonical_word for cls in walk_classes(2)} == {(1, 2), (1, 1)}
    assert len(walk_classes(4)) == 15


def test_class_totals_are_bell_numbers():
    bells = bell_numbers(9)
    for k in range(1, 9):
        assert len(list(canonical_words(k))) == bells[k]


def test_counts_partition_the_enumeration():
    for k in (3, 5, 8):
        classes = walk_classes(k)
        pairs = {(cls.v, cls.e) for cls in classes}
        assert sum(count_classes(k, v, e) for v, e in pairs) == len(classes)


def test_enumeration_rejects_bad_lengths():
    with pytest.raises(ValueError):
        list(canonical_words(0))
    with pytest.raises(ValueError):
        count_classes(13)


# -- classification ----------------------------------------------------------------


def test_classify_examples():
    cls = classify_walk("1212")
    assert (cls.v, cls.e) == (2, 1)
    assert cls.edge_traversals == {(1, 2): (2, 2)}
    assert cls.cycle_type == "tree"

    cls = classify_walk("123123")
    assert (cls.v, cls.e) == (3, 3)
    assert cls.cycle_type == "cycle-one-way"

    cls = classify_walk("1121")
    assert (cls.v, cls.e) == (2, 2)
    assert cls.has_self_loop and cls.cycle_type == "self-loop"

    cls = classify_walk("121323")
    assert (cls.v, cls.e) == (3, 3)
    assert cls.cycle_type == "cycle-both-ways"

    cls = classify_walk("1213")
    assert cls.cycle_type == "tree"


def test_classify_other_patterns():
    # 4-cycle crossed with multiplicities (1,3,1,3): outside the three families
    cls = classify_walk((1, 2, 3, 2, 3, 4, 1, 4))
    assert (cls.v, cls.e) == (4, 4)
    assert cls.cycle_type == "other"
    # every edge once
    assert classify_walk("1234").cycle_type == "other"


def test_classify_canonicalizes_arbitrary_letters():
    assert classify_walk((5, 9, 5, 7)).canonical_word == (1, 2, 1, 3)
    assert classify_walk("xyxz").canonical_word == (1, 2, 1, 3)


def test_self_loop_split_example():
    words = {
        cls.canonical_word
        for cls in walk_classes(4)
        if cls.v == 2 and cls.e == 2 and cls.cycle_type == "self-loop"
    }
    assert words == {(1, 1, 2, 1), (1, 2, 1, 1), (1, 1, 1, 2), (1, 2, 2, 2)}


def test_counts_match_closed_forms():
    for l in range(1, 5):
        k = 2 * l
        assert count_classes(k, l + 1, l) == catalan(l)
        assert count_classes(k, l, l - 1) == double_edge_class_count(l)
        assert count_classes(k, l, l, "self-loop") == self_loop_class_count(l)
        assert count_classes(k, l, l, "cycle-one-way") == cycle_one_way_class_count(l)
        assert count_classes(k, l, l, "cycle-both-ways") == cycle_both_ways_class_count(l)
    assert count_classes(6, 3, 3, "cycle-both-ways") == 3


def test_count_classes_rejects_unknown_type():
    with pytest.raises(ValueError):
        count_classes(4, cycle_type="spiral")


def test_nonzero_classes_satisfy_graph_inequalities():
    model = goe_model()
    for k in (4, 6, 8):
        for cls in walk_classes(k):
            if expected_word_product(cls, model) != 0:
                assert cls.v <= cls.e + 1
                assert cls.e <= k // 2


def test_odd_length_classes_have_an_odd_edge():
    for k in (3, 5, 7):
        for cls in walk_classes(k):
            assert any(sum(counts) % 2 == 1 for counts in cls.edge_traversals.values())


# -- moment models -------------------------------------------------------------------


def test_preset_models_realize_preset_params():
    assert goe_model().params == GOE
    assert gue_model().params == GUE
    assert rademacher_model().params == RADEMACHER


def test_gue_mixed_moments():
    model = gue_model()
    assert model.offdiag_mixed(1, 1) == 1
    assert model.offdiag_mixed(2, 2) == 2
    assert model.offdiag_mixed(2, 0) == 0
    assert model.offdiag_mixed(3, 3) == 6


def test_goe_moment_tables():
    model = goe_model()
    assert model.offdiag_moment(2) == 1
    assert model.offdiag_moment(4) == 3
    assert model.offdiag_moment(6) == 15
    assert model.diag_moment(2) == 2
    assert model.diag_moment(4) == 12


def test_missing_moment_errors_name_the_order():
    model = goe_model(max_order=4)
    with pytest.raises(MissingMomentError, match="order 6"):
        model.offdiag_moment(6)
    gue = gue_model(max_order=4)
    with pytest.raises(MissingMomentError, match=r"\(3, 3\)"):
        gue.offdiag_mixed(3, 3)
    with pytest.raises(MissingMomentError, match="order 5"):
        model.diag_moment(5)


def test_model_validation():
    with pytest.raises(ValueError, match="centered"):
        MomentModel(
            is_real=True,
            offdiag_moments=(Fraction(1), Fraction(1), Fraction(1), Fraction(0), Fraction(1)),
            diag_moments=(Fraction(1), Fraction(0), Fraction(1)),
        )


# -- expectations per class ------------------------------------------------------------


def test_expected_word_product_examples():
    tree_edge = classify_walk("12")
    assert expected_word_product(tree_edge, gue_model()) == 1

    double = classify_walk("1212")
    assert expected_word_product(double, goe_model()) == 3
    assert expected_word_product(double, gue_model()) == 2

    one_way = classify_walk("123123")
    assert expected_word_product(one_way, goe_model()) == 1
    assert expected_word_product(one_way, gue_model()) == 0  # E[W^2] = 0

    missing = classify_walk("11")
    assert expected_word_product(missing, goe_model()) == 2  # diagonal variance


# -- exact finite-n moments --------------------------------------------------------------


def test_exact_moment_matches_direct_sum_oracle():
    for model in (goe_model(), gue_model(), rademacher_model()):
        for k, n in [(2, 2), (2, 3), (4, 2), (4, 3), (6, 2)]:
            assert exact_moment(k, n, model) == direct_moment_oracle(k, n, model)


def test_exact_moment_closed_forms():
    for model in (goe_model(), gue_model(), rademacher_model()):
        ratio = model.params.diag_ratio
        for n in (1, 2, 10, 1000):
            assert exact_moment(2, n, model) == 1 + Fraction(ratio - 1, n)
    for n in (1, 2, 7, 64, 128):
        assert exact_moment(4, n, gue_model()) == 2 + Fraction(1, n**2)
        assert exact_moment(4, n, goe_model()) == 2 + Fraction(5, n) + Fraction(5, n**2)


def test_exact_moment_guards():
    model = goe_model()
    assert exact_moment(0, 5, model) == 1
    with pytest.raises(ValueError, match="even"):
        exact_moment(3, 5, model)
    with pytest.raises(ValueError):
        exact_moment(14, 5, model)
    with pytest.raises(ValueError):
        exact_moment(2, 0, model)


def test_correction_residual_shrinks_with_n():
    # n (m_k(n) - sc_k) - nu_k must fall by >= 8x per decade (or stay zero)
    for model in (goe_model(), gue_model(), rademacher_model()):
        params = model.params
        for k in (2, 4, 6, 8, 10):
            residuals = [
                n * (exact_moment(k, n, model) - semicircle_moment(k)) - nu_moment(k, params)
                for n in (100, 1000, 10000)
            ]
            for prev, nxt in zip(residuals, residuals[1:]):
                if prev == 0:
                    assert nxt == 0
                else:
                    assert abs(nxt) <= abs(prev) / 8
