"""Exterior algebra on the dual basis, the Koszul complex, and its
selfduality maps with their exact signs.

Basis elements of the i-th exterior power are sorted index tuples
S = (l_1 < ... < l_i), listed in colexicographic order.  The top power
is trivialized by sending the full wedge to 1, so duals against it are
free modules with twists total_weight - t and matrix duals are plain
transposes.
"""

from __future__ import annotations

from itertools import combinations

from . import flmodule, linalg
from . import ring as rg
from .errors import MathPreconditionError
from .freemod import FreeComplex, FreeModule, GradedFreeMatrix, Augmentation

_SUBSET_CACHE: dict[tuple, tuple] = {}


def subsets(n, i):
    """The i-element subsets of {1..n} as sorted tuples, colex order."""
    key = (n, i)
    hit = _SUBSET_CACHE.get(key)
    if hit is None:
        hit = tuple(
            sorted(combinations(range(1, n + 1), i), key=lambda S: tuple(reversed(S)))
        )
        _SUBSET_CACHE[key] = hit
    return hit


def subset_degree(ring, S):
    return sum(ring.weights[l - 1] for l in S)


def ext_contract(l, S):
    """x_l -| S: None if l not in S, else (sign, S without l).

    The sign is (-1)^(position-1) for the 1-based position of l in S.
    """
    if l not in S:
        return None
    pos = S.index(l)
    sign = -1 if pos % 2 else 1
    return sign, S[:pos] + S[pos + 1 :]


def wedge_sign(S, T):
    """Sign of w_S ^ w_T against the sorted union; 0 on overlap."""
    if set(S) & set(T):
        return 0, None
    inv = sum(1 for s in S for t in T if s > t)
    return (-1 if inv % 2 else 1), tuple(sorted(S + T))


def complement(n, S):
    return tuple(l for l in range(1, n + 1) if l not in S)


def koszul_free_module(ring, i):
    labels = subsets(ring.n, i)
    return FreeModule(tuple(subset_degree(ring, S) for S in labels), labels)


def koszul_differential(ring, K, i):
    """delta_i: R (x) Wedge^i W -> R (x) Wedge^{i-1} W."""
    src = koszul_free_module(ring, i)
    tgt = koszul_free_module(ring, i - 1)
    tgt_index = {S: r for r, S in enumerate(tgt.labels)}
    entries = {}
    for c, S in enumerate(src.labels):
        for l in S:
            sign, S1 = ext_contract(l, S)
            r = tgt_index[S1]
            coeff = K.one if sign > 0 else K.neg(K.one)
            poly = rg.pvar(ring, K, l, coeff)
            key = (r, c)
            entries[key] = rg.padd(K, entries.get(key, {}), poly) if key in entries else poly
    return GradedFreeMatrix(ring, K, src, tgt, entries)


def koszul_complex(ring, K):
    """The Koszul complex, augmented to the residue field."""
    n = ring.n
    modules = [koszul_free_module(ring, i) for i in range(n + 1)]
    diffs = [koszul_differential(ring, K, i) for i in range(1, n + 1)]
    k_mod = flmodule.trivial_module(ring, K)
    aug = Augmentation(k_mod, ([K.one],))
    return FreeComplex(ring, K, modules, diffs, augmentation=aug)


def alpha(ring, K, i):
    """alpha_i: R (x) Wedge^i W -> (R (x) Wedge^{n-i} W)^v, w -> (w' -> w' ^ w).

    Expressed through the top-wedge trivialization; the matrix is a
    signed permutation, hence invertible over R.
    """
    n = ring.n
    if not (0 <= i <= n):
        raise MathPreconditionError(f"alpha index {i} out of range 0..{n}")
    d = ring.total_weight
    src = koszul_free_module(ring, i)
    tgt = koszul_free_module(ring, n - i).dual(d)
    tgt_index = {S: r for r, S in enumerate(tgt.labels)}
    entries = {}
    for c, S in enumerate(src.labels):
        T = complement(n, S)
        sign, _ = wedge_sign(T, S)
        coeff = K.one if sign > 0 else K.neg(K.one)
        entries[(tgt_index[T], c)] = rg.pconst(ring, K, coeff)
    return GradedFreeMatrix(ring, K, src, tgt, entries)


def alpha_inverse(ring, K, i):
    """Inverse of alpha_i as a matrix (signed permutation transpose)."""
    a = alpha(ring, K, i)
    mat = a.constant_matrix()
    inv = linalg.inv(K, mat)
    entries = {}
    for r in range(len(inv)):
        for c in range(len(inv[0])):
            if inv[r][c]:
                entries[(r, c)] = rg.pconst(ring, K, inv[r][c])
    return GradedFreeMatrix(ring, K, a.target, a.source, entries)


def ell(i):
    """The sign exponent floor((i-1)/2) of the selfduality squares."""
    return (i - 1) // 2


def alpha_square_commutes(ring, K, i):
    """Exact matrix check of the selfduality square at position i.

    (-1)^ell(i) alpha_{i-1} o delta_i
        == delta_{n-i+1}^v o (-1)^{n-i} (-1)^ell(i) alpha_i.
    """
    n = ring.n
    d = ring.total_weight
    delta_i = koszul_differential(ring, K, i)
    left = alpha(ring, K, i - 1).compose(delta_i)
    sign_left = K.of((-1) ** ell(i))
    left = left.scale(sign_left)
    dual_delta = koszul_differential(ring, K, n - i + 1).dual(d)
    sign_right = K.of(((-1) ** (n - i)) * ((-1) ** ell(i)))
    right = dual_delta.compose(alpha(ring, K, i).scale(sign_right))
    return left.equal(right)


def middle_matrix(ring, K):
    """T = delta_{m+1} o alpha_{m+1}^{-1} for odd n, glueing K to its dual."""
    n = ring.n
    if n % 2 == 0:
        raise MathPreconditionError("middle symmetry needs an odd variable count")
    m = (n - 1) // 2
    delta = koszul_differential(ring, K, m + 1)
    return delta.compose(alpha_inverse(ring, K, m + 1))


def middle_symmetry(ring, K):
    """'skew' when n = 3 mod 4, 'symmetric' when n = 1 mod 4.

    Also checks T = -T^t (resp. T = T^t) exactly on the glued matrix.
    """
    n = ring.n
    T = middle_matrix(ring, K)
    kind = "skew" if n % 4 == 3 else "symmetric"
    flipped = T.flip()
    expect = flipped.neg() if kind == "skew" else flipped
    if not T.equal(expect):
        raise AssertionError("middle matrix fails its symmetry identity")
    return kind
