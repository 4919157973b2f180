"""Layered generation of rank strata.

Symmetric strata: stratum 1 is the set of distinct symmetric simple
tensors a^(x)k over nonzero a; stratum r+1 collects the sums X + Y with
X in stratum r and Y in stratum 1 that have not appeared in any earlier
stratum.  The loop ends when a layer comes out empty; whatever is never
reached has no symmetric decomposition.  Sums of symmetric tensors add
coefficient-wise on the k+1 compact classes, so the whole search runs on
compact codes (at most p^(k+1) <= 83521 of them in the supported range).

Each newly discovered tensor records one derivation: the predecessor it
was summed from and the generator added.  Discovery is deterministic,
keeping the minimum (predecessor code, generator index) pair over the
whole layer with generators ordered by their lexicographically least
generating vector; witnesses are then reproducible across runs and
thread counts.

General (unconstrained) strata run the same layering over the full
p^(2^k) tensor space with stratum 1 the simple tensors a1 (x) ... (x) ak.
Layer expansion is a sumset in the additive group Z_p^(2^k), computed as
the support of a cyclic convolution of indicator arrays via FFT; a
configurable budget caps the space size and makes the infeasible cases
(e.g. p = 7, k = 4 with ~3.3e13 codes) fail explicitly.  Only per-layer
sizes and a rank lookup table are retained for the general case.
"""

from dataclasses import dataclass, field as dataclass_field

import numpy as np
import scipy.fft

from .errors import BudgetExceededError, UndecomposableError
from .gfp import FieldSpec
from .tensor import (
    CompactSym,
    compact_encode,
    compact_from_full,
    compact_place_values,
    compact_weights,
    digits_of_codes,
    full_from_compact,
    full_place_values,
    is_symmetric,
    symmetric_outer_power,
)

DEFAULT_BUDGET = 10**8

# candidate rows processed per chunk during layer expansion
_CHUNK_ROWS = 1 << 22

_FFT_WORKERS = -1  # scipy: use all cores


@dataclass(frozen=True)
class Witness:
    """Vectors whose symmetric outer powers sum to the decomposed tensor."""

    vectors: tuple  # ((v1, v2), ...), length == symmetric rank


@dataclass
class RankStratification:
    """Symmetric-rank layers of all p^(k+1) symmetric tensors.

    strata[r] holds the full tensor codes of symmetric rank r, sorted
    ascending; undecomposable holds the codes never reached.  Parent
    links live on compact codes internally; parent_of exposes them.
    """

    field: FieldSpec
    order: int
    strata: list                 # list of sorted int64 arrays of full codes
    undecomposable: np.ndarray   # sorted int64 array of full codes
    generator_vectors: list      # vector per generator, BFS tie-break order
    _rank_of: np.ndarray = dataclass_field(repr=False, default=None)
    _parent_pred: np.ndarray = dataclass_field(repr=False, default=None)
    _parent_gen: np.ndarray = dataclass_field(repr=False, default=None)

    @property
    def max_rank(self):
        return len(self.strata) - 1

    def stratum_sizes(self):
        return [int(s.size) for s in self.strata]

    def rank_of_compact_code(self, code):
        r = int(self._rank_of[code])
        return None if r < 0 else r

    def parent_of(self, X):
        """One recorded derivation: (predecessor SymTensor, generator vector).

        None for the zero tensor; errors on undecomposable input.
        """
        code = _compact_code_of(X, self)
        if code == 0:
            return None
        if self._rank_of[code] < 0:
            raise UndecomposableError("tensor has no symmetric decomposition")
        pred = compact_decode_sym(int(self._parent_pred[code]), self.field, self.order)
        return pred, self.generator_vectors[int(self._parent_gen[code])]


def compact_decode_sym(code, field, order):
    """Symmetric tensor from its compact code."""
    p = field.p
    coeffs = [0] * (order + 1)
    for j in range(order, -1, -1):
        code, coeffs[j] = divmod(code, p)
    return full_from_compact(CompactSym(field, order, tuple(coeffs)))


def _compact_code_of(X, s):
    if X.field != s.field or X.order != s.order:
        raise ValueError(
            f"tensor is over p={X.field.p}, order {X.order}; "
            f"stratification is for p={s.field.p}, order {s.order}"
        )
    if not is_symmetric(X):
        raise ValueError("symmetric rank is defined for symmetric tensors")
    return compact_encode(compact_from_full(X))


def rank_one_generators(field, k):
    """Distinct symmetric simple tensors as (compact code, least vector) pairs.

    Vectors are scanned in lexicographic order, so each tensor keeps its
    least generating vector and the list is ordered by those vectors.
    """
    p = field.p
    gens = {}
    for v1 in range(p):
        for v2 in range(p):
            if v1 == 0 and v2 == 0:
                continue
            code = 0
            for j in range(k + 1):
                code = code * p + pow(v1, k - j, p) * pow(v2, j, p) % p
            gens.setdefault(code, (v1, v2))
    return [(code, vec) for code, vec in gens.items()]


def symmetric_rank_strata(field, k, budget=DEFAULT_BUDGET):
    """Layered generation of symmetric-rank strata over F_p, order k."""
    p = field.p
    N = p ** (k + 1)
    if N > budget:
        raise BudgetExceededError(
            f"symmetric code space {N} exceeds the budget of {budget} codes"
        )
    place = compact_place_values(p, k)

    gens = rank_one_generators(field, k)
    gen_codes = np.array([c for c, _ in gens], dtype=np.int64)
    gen_digits = digits_of_codes(gen_codes, p, k + 1)
    G = gen_codes.size

    rank_of = np.full(N, -1, dtype=np.int8)
    parent_pred = np.full(N, -1, dtype=np.int64)
    parent_gen = np.full(N, -1, dtype=np.int32)

    rank_of[0] = 0
    rank_of[gen_codes] = 1
    parent_pred[gen_codes] = 0
    parent_gen[gen_codes] = np.arange(G, dtype=np.int32)

    compact_strata = [np.array([0], dtype=np.int64), np.sort(gen_codes)]
    frontier = compact_strata[1]
    r = 1
    while frontier.size:
        new_codes, preds, gidx = _expand_layer(
            frontier, gen_codes, gen_digits, rank_of, p, place
        )
        if new_codes.size == 0:
            break
        r += 1
        rank_of[new_codes] = r
        parent_pred[new_codes] = preds
        parent_gen[new_codes] = gidx
        compact_strata.append(new_codes)
        frontier = new_codes

    undecomposable = np.flatnonzero(rank_of < 0).astype(np.int64)
    W = compact_weights(p, k)
    return RankStratification(
        field=field,
        order=k,
        strata=[digits_of_codes(s, p, k + 1) @ W for s in compact_strata],
        undecomposable=digits_of_codes(undecomposable, p, k + 1) @ W,
        generator_vectors=[vec for _, vec in gens],
        _rank_of=rank_of,
        _parent_pred=parent_pred,
        _parent_gen=parent_gen,
    )


def _expand_layer(frontier, gen_codes, gen_digits, rank_of, p, place):
    """Sums frontier + generators not seen before, with min-(pred, gen) parents.

    Processes (frontier x generator) pairs in chunks; each chunk keeps
    its first occurrence per candidate code under (pred, gen) order, and
    a final pass merges the chunk winners the same way.
    """
    G = gen_codes.size
    rows_per_chunk = max(1, _CHUNK_ROWS // G)
    win_codes, win_keys = [], []
    for start in range(0, frontier.size, rows_per_chunk):
        chunk = frontier[start : start + rows_per_chunk]
        digits = digits_of_codes(chunk, p, place.size)
        cand = (digits[:, None, :] + gen_digits[None, :, :]) % p
        codes = cand.reshape(-1, place.size) @ place
        keys = (chunk[:, None] * G + np.arange(G, dtype=np.int64)[None, :]).ravel()
        fresh = rank_of[codes] < 0
        codes, keys = codes[fresh], keys[fresh]
        if codes.size == 0:
            continue
        order = np.lexsort((keys, codes))
        codes, keys = codes[order], keys[order]
        first = np.ones(codes.size, dtype=bool)
        first[1:] = codes[1:] != codes[:-1]
        win_codes.append(codes[first])
        win_keys.append(keys[first])
    if not win_codes:
        empty = np.array([], dtype=np.int64)
        return empty, empty, empty
    codes = np.concatenate(win_codes)
    keys = np.concatenate(win_keys)
    order = np.lexsort((keys, codes))
    codes, keys = codes[order], keys[order]
    first = np.ones(codes.size, dtype=bool)
    first[1:] = codes[1:] != codes[:-1]
    codes, keys = codes[first], keys[first]
    return codes, keys // G, keys % G


def max_symmetric_rank(s):
    """Index of the last nonempty stratum."""
    return s.max_rank


def symmetric_rank(X, s):
    """Rank r with encode(X) in strata[r], or None when undecomposable."""
    return s.rank_of_compact_code(_compact_code_of(X, s))


def decompose(X, s):
    """Vectors whose symmetric outer powers sum to X, via the parent links.

    The witness is re-evaluated before it is returned.  Undecomposable
    input raises UndecomposableError.
    """
    code = _compact_code_of(X, s)
    r = s.rank_of_compact_code(code)
    if r is None:
        raise UndecomposableError("tensor has no symmetric decomposition")
    p = s.field.p
    vectors = []
    while code != 0:
        vectors.append(s.generator_vectors[int(s._parent_gen[code])])
        code = int(s._parent_pred[code])
    vectors.reverse()
    assert len(vectors) == r

    total = [0] * (1 << s.order)
    for v in vectors:
        term = symmetric_outer_power(v, s.order, s.field)
        total = [(a + b) % p for a, b in zip(total, term.entries)]
    if tuple(total) != X.entries:
        raise AssertionError("witness re-evaluation failed; parent links corrupt")
    return Witness(tuple(vectors))


# ---------------------------------------------------------------------------
# General (unconstrained) rank over the full tensor space
# ---------------------------------------------------------------------------

@dataclass
class GeneralRankStratification:
    """Rank layers of the full p^(2^k) tensor space.

    Holds per-layer sizes and a rank lookup table over full codes; the
    member lists themselves are not materialized (the space reaches
    tens of millions of codes) and no parent links are recorded.
    """

    field: FieldSpec
    order: int
    sizes: list
    _rank_of: np.ndarray = dataclass_field(repr=False, default=None)

    @property
    def max_rank(self):
        return len(self.sizes) - 1

    def rank_of_code(self, code):
        r = int(self._rank_of[code])
        return None if r < 0 else r

    def rank_of(self, X):
        if X.field != self.field or X.order != self.order:
            raise ValueError("tensor parameters do not match the stratification")
        p = self.field.p
        code = 0
        for v in X.entries:
            code = code * p + v
        return self.rank_of_code(code)

    def stratum_codes(self, r):
        return np.flatnonzero(self._rank_of == r).astype(np.int64)


def simple_tensor_codes(field, k):
    """Sorted unique codes of a1 (x) ... (x) ak over nonzero vectors."""
    p = field.p
    vecs = np.array(
        [(i, j) for i in range(p) for j in range(p)][1:], dtype=np.int64
    )
    cur = vecs
    for _ in range(k - 1):
        cur = (cur[:, None, :, None] * vecs[None, :, None, :]).reshape(
            cur.shape[0] * vecs.shape[0], cur.shape[1] * 2
        ) % p
    return np.unique(cur @ full_place_values(p, k))


def general_rank_strata(field, k, budget=DEFAULT_BUDGET):
    """Rank layers over the full tensor space; refuses oversized spaces."""
    p = field.p
    n = 1 << k
    space = p**n
    if space > budget:
        raise BudgetExceededError(
            f"full code space p^(2^k) = {space} exceeds the budget of {budget} codes"
        )
    shape = (p,) * n

    gen_ind = np.zeros(space, dtype=np.float64)
    gens = simple_tensor_codes(field, k)
    gen_ind[gens] = 1.0
    gen_hat = scipy.fft.rfftn(gen_ind.reshape(shape), workers=_FFT_WORKERS)

    rank_of = np.full(space, -1, dtype=np.int8)
    rank_of[0] = 0
    rank_of[gens] = 1
    sizes = [1, int(gens.size)]
    frontier_ind = gen_ind
    while True:
        spec = scipy.fft.rfftn(frontier_ind.reshape(shape), workers=_FFT_WORKERS)
        spec *= gen_hat
        counts = scipy.fft.irfftn(spec, s=shape, workers=_FFT_WORKERS).ravel()
        # counts are exact nonnegative integers up to FFT roundoff
        reached = counts > 0.5
        bad = np.abs(counts - np.round(counts)).max()
        if bad > 0.1:
            raise AssertionError(f"FFT convolution lost integrality (deviation {bad})")
        new = reached & (rank_of < 0)
        n_new = int(np.count_nonzero(new))
        if n_new == 0:
            break
        rank_of[new] = len(sizes)
        sizes.append(n_new)
        frontier_ind = new.astype(np.float64)
    return GeneralRankStratification(field=field, order=k, sizes=sizes, _rank_of=rank_of)
