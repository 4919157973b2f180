"""Symmetric tensors as binary forms (homogeneous polynomials in two variables).

A symmetric tensor X evaluates as the degree-k form
u -> sum over subscript tuples of x_{i1...ik} u_{i1} ... u_{ik}; collecting
monomials gives the coefficient binom(k, j) * compact(X)[j] on x^(k-j) y^j.
The collected coefficients degenerate when the characteristic divides a
binomial coefficient (e.g. binom(3,1) = 3 = 0 mod 3), so the evaluation
form of the correspondence is the primary interface and the collected
form carries an explicit kernel dimension per (p, k).
"""

from dataclasses import dataclass
from math import comb

from .errors import AsymmetricTensorError
from .gfp import FieldSpec
from .rank_strata import decompose
from .tensor import compact_from_full, is_symmetric


@dataclass(frozen=True)
class BinaryForm:
    """coeffs[j] is the coefficient of x^(degree-j) y^j."""

    field: FieldSpec
    degree: int
    coeffs: tuple

    def __post_init__(self):
        if len(self.coeffs) != self.degree + 1:
            raise ValueError(
                f"expected {self.degree + 1} coefficients, got {len(self.coeffs)}"
            )
        for v in self.coeffs:
            self.field.check(v)

    def evaluate(self, u):
        u1, u2 = u
        p = self.field.p
        k = self.degree
        return sum(
            c * pow(u1, k - j, p) * pow(u2, j, p) for j, c in enumerate(self.coeffs)
        ) % p


def tensor_to_form(X):
    """Collected form of a symmetric tensor: binom(k, j) * compact[j] mod p."""
    c = compact_from_full(X)
    p = X.field.p
    k = X.order
    return BinaryForm(
        X.field, k, tuple(comb(k, j) * c.coeffs[j] % p for j in range(k + 1))
    )


def eval_form(X, u):
    """Direct evaluation over all 2^k entries (no monomial collection)."""
    if not is_symmetric(X):
        raise AsymmetricTensorError("form evaluation is defined for symmetric tensors")
    u1, u2 = u
    X.field.check(u1)
    X.field.check(u2)
    p = X.field.p
    k = X.order
    total = 0
    for t, v in enumerate(X.entries):
        j = bin(t).count("1")  # factors u2 picked up along the modes
        total += v * pow(u1, k - j, p) * pow(u2, j, p)
    return total % p


def form_kernel_dimension(field, k):
    """Number of compact classes killed by the collected-form map.

    Zero exactly when binom(k, j) is nonzero mod p for every j, i.e. when
    tensor_to_form is injective on symmetric tensors.  Note p <= k does
    not force a kernel: binom(3, j) is odd for all j, so (p, k) = (2, 3)
    is injective.  Observed values: (2,3) -> 0, (3,3) -> 2, (2,4) -> 3,
    (3,4) -> 1, and 0 for all p > k.
    """
    return sum(1 for j in range(k + 1) if comb(k, j) % field.p == 0)


def waring_rank_check(X, s):
    """Verify the power-sum reading of a decomposition of X.

    True iff the witness vectors v_i satisfy, for every u in F_p^2,
    eval_form(X, u) = sum_i (v_i . u)^k -- the decomposition re-read as a
    sum of k-th powers of linear forms, checked exhaustively over u.
    """
    witness = decompose(X, s)  # raises UndecomposableError when rank is undefined
    p = X.field.p
    k = X.order
    for u1 in range(p):
        for u2 in range(p):
            lhs = eval_form(X, (u1, u2))
            rhs = sum(
                pow((v1 * u1 + v2 * u2) % p, k, p) for v1, v2 in witness.vectors
            ) % p
            if lhs != rhs:
                return False
    return True
