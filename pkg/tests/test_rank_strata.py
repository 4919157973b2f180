import random
from itertools import combinations_with_replacement

import numpy as np
import pytest

from symcanon import (
    BudgetExceededError,
    CompactSym,
    FieldSpec,
    UndecomposableError,
    decode,
    decompose,
    encode,
    full_from_compact,
    general_rank_strata,
    max_symmetric_rank,
    symmetric_outer_power,
    symmetric_rank,
    symmetric_rank_strata,
)
from symcanon.rank_strata import compact_decode_sym, rank_one_generators

F2 = FieldSpec(2)
F3 = FieldSpec(3)


def sym(field, coeffs):
    return full_from_compact(CompactSym(field, len(coeffs) - 1, tuple(coeffs)))


def brute_force_ranks(p, k, max_r):
    """Independent oracle: minimal multiset of symmetric simple tensors."""
    f = FieldSpec(p)
    gens = sorted(
        {
            symmetric_outer_power((v1, v2), k, f).entries
            for v1 in range(p)
            for v2 in range(p)
            if (v1, v2) != (0, 0)
        }
    )
    best = {(0,) * (1 << k): 0}
    for r in range(1, max_r + 1):
        for combo in combinations_with_replacement(gens, r):
            total = tuple(sum(col) % p for col in zip(*combo))
            best.setdefault(total, r)
    return best


@pytest.mark.parametrize("p,k,max_r", [(2, 3, 4), (3, 3, 5), (2, 4, 4)])
def test_strata_against_brute_force(p, k, max_r):
    f = FieldSpec(p)
    s = symmetric_rank_strata(f, k)
    oracle = brute_force_ranks(p, k, max_r)
    for code in range(p ** (k + 1)):
        X = compact_decode_sym(code, f, k)
        assert symmetric_rank(X, s) == oracle.get(X.entries)


def test_stratum_sizes_order3():
    expected = {
        2: [1, 3, 3, 1],
        3: [1, 8, 24, 32, 16],
        5: [1, 24, 240, 360],
        7: [1, 16, 128, 688, 1232, 336],
    }
    for p, sizes in expected.items():
        s = symmetric_rank_strata(FieldSpec(p), 3)
        assert s.stratum_sizes() == sizes


def test_stratum_sizes_order4():
    s = symmetric_rank_strata(FieldSpec(5), 4)
    assert s.stratum_sizes() == [1, 6, 21, 56, 126, 240, 395, 570, 690, 660, 360]
    assert max_symmetric_rank(s) == 10
    assert s.undecomposable.size == 0


def test_undecomposable_set_f2_order3():
    # the eight tensors listed without a symmetric decomposition
    s = symmetric_rank_strata(F2, 3)
    assert s.undecomposable.size == 8
    got = {decode(int(c), F2, 3).entries for c in s.undecomposable}
    expected = {
        sym(F2, coeffs).entries
        for coeffs in [
            (0, 1, 0, 0), (1, 1, 0, 0), (0, 1, 0, 1), (1, 1, 0, 1),
            (0, 0, 1, 0), (1, 0, 1, 0), (0, 0, 1, 1), (1, 0, 1, 1),
        ]
    }
    assert got == expected


def test_max_rank_examples():
    assert max_symmetric_rank(symmetric_rank_strata(FieldSpec(5), 3)) == 3
    assert max_symmetric_rank(symmetric_rank_strata(FieldSpec(3), 4)) == 8
    assert max_symmetric_rank(symmetric_rank_strata(FieldSpec(7), 4)) == 6


def test_strata_partition_space():
    for p, k in [(2, 3), (3, 3), (2, 4), (3, 4)]:
        s = symmetric_rank_strata(FieldSpec(p), k)
        all_codes = np.concatenate(s.strata + [s.undecomposable])
        assert all_codes.size == p ** (k + 1)
        assert np.unique(all_codes).size == all_codes.size
        assert s.strata[0].tolist() == [0]
        for layer in s.strata:
            assert layer.size > 0
            assert (np.sort(layer) == layer).all()


def test_parents_link_into_previous_stratum():
    for p, k in [(3, 3), (2, 4)]:
        f = FieldSpec(p)
        s = symmetric_rank_strata(f, k)
        for r in range(1, s.max_rank + 1):
            for code in s.strata[r]:
                X = decode(int(code), f, k)
                X = sym(f, tuple(X.entries[t] for t in [0, 1, 3, 7, 15][: k + 1]))
                pred, vec = s.parent_of(X)
                assert symmetric_rank(pred, s) == r - 1
                term = symmetric_outer_power(vec, k, f)
                resum = tuple((a + b) % p for a, b in zip(pred.entries, term.entries))
                assert resum == X.entries


def test_symmetric_rank_examples():
    s = symmetric_rank_strata(F2, 3)
    assert symmetric_rank(sym(F2, (0, 0, 0, 0)), s) == 0
    assert symmetric_rank(sym(F2, (0, 1, 1, 0)), s) == 3
    assert symmetric_rank(sym(F2, (0, 1, 0, 0)), s) is None


def test_symmetric_rank_rejects_mismatched_parameters():
    s = symmetric_rank_strata(F2, 3)
    with pytest.raises(ValueError):
        symmetric_rank(sym(F3, (0, 0, 0, 1)), s)


def test_rank_one_generator_counts():
    # distinct symmetric simple tensors = stratum-1 sizes
    assert len(rank_one_generators(FieldSpec(7), 3)) == 16
    assert len(rank_one_generators(FieldSpec(13), 3)) == 56
    assert len(rank_one_generators(FieldSpec(7), 4)) == 24


def test_decompose_rank1():
    s = symmetric_rank_strata(F2, 3)
    w = decompose(symmetric_outer_power((1, 0), 3, F2), s)
    assert w.vectors == ((1, 0),)


def test_decompose_rank2_example():
    s = symmetric_rank_strata(F2, 3)
    X = sym(F2, (0, 1, 1, 1))  # flattened [0,1,1,1,1,1,1,1]
    w = decompose(X, s)
    assert set(w.vectors) == {(1, 1), (1, 0)}


def test_decompose_undecomposable_raises():
    s = symmetric_rank_strata(F2, 3)
    with pytest.raises(UndecomposableError):
        decompose(sym(F2, (0, 1, 0, 0)), s)


def test_decompose_resums_everywhere_small():
    # independent re-evaluation of every witness over F_3, order 3
    s = symmetric_rank_strata(F3, 3)
    for code in range(81):
        X = compact_decode_sym(code, F3, 3)
        w = decompose(X, s)
        assert len(w.vectors) == symmetric_rank(X, s)
        total = [0] * 8
        for v in w.vectors:
            term = symmetric_outer_power(v, 3, F3)
            total = [(a + b) % 3 for a, b in zip(total, term.entries)]
        assert tuple(total) == X.entries


def test_rank_changes_by_at_most_one_when_adding_rank1():
    rng = random.Random(99)
    f = FieldSpec(5)
    s = symmetric_rank_strata(f, 3)
    gens = [vec for _, vec in rank_one_generators(f, 3)]
    for _ in range(300):
        code = rng.randrange(5**4)
        X = compact_decode_sym(code, f, 3)
        rX = symmetric_rank(X, s)
        v = rng.choice(gens)
        term = symmetric_outer_power(v, 3, f)
        Y = sym(f, tuple((a + b) % 5 for a, b in
                         zip([X.entries[t] for t in (0, 1, 3, 7)],
                             [term.entries[t] for t in (0, 1, 3, 7)])))
        rY = symmetric_rank(Y, s)
        assert abs(rX - rY) <= 1


def test_budget_refusals():
    with pytest.raises(BudgetExceededError):
        general_rank_strata(FieldSpec(7), 4)  # 7^16 codes
    with pytest.raises(BudgetExceededError):
        general_rank_strata(FieldSpec(11), 3)  # 11^8 > default budget
    with pytest.raises(BudgetExceededError):
        symmetric_rank_strata(FieldSpec(17), 3, budget=1000)


def test_general_strata_small_spaces(general_for):
    g23 = general_for(2, 3)
    assert sum(g23.sizes) == 256 and g23.sizes[0] == 1
    g33 = general_for(3, 3)
    assert sum(g33.sizes) == 6561
    s = symmetric_rank_strata(F3, 3)
    for code in range(81):
        X = compact_decode_sym(code, F3, 3)
        assert g33.rank_of(X) <= symmetric_rank(X, s)


def test_general_rank1_equals_simple_tensors(general_for):
    # stratum 1 of the general search is exactly the decomposable tensors
    g = general_for(2, 3)
    got = set(int(c) for c in g.stratum_codes(1))
    direct = set()
    from symcanon import Tensor

    vecs = [(i, j) for i in range(2) for j in range(2)][1:]
    for a in vecs:
        for b in vecs:
            for c in vecs:
                entries = tuple(
                    a[(t >> 2) & 1] * b[(t >> 1) & 1] * c[t & 1] for t in range(8)
                )
                direct.add(encode(Tensor(F2, entries)))
    assert got == direct
    assert g.sizes[1] == len(direct) == 27
