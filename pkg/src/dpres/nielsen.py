"""Resolution constructions for finite-length modules.

The first construction resolves M by the free modules
A_i(M) = R (x) Wedge^i W (x) M with the two-part differential
phi_i = phi_{i,0} + phi_{i,1},

    r (x) w (x) m  ->  sum_l x_l r (x) (x_l -| w) (x) m
                      - sum_l r (x) (x_l -| w) (x) (x_l m).

The diagonal-action variant produces the same matrices over the free
generator basis (1 (x) S (x) m_b); it is derived here through an
independent rewriting path and compared in tests.  For a module with a
dual pairing (s, tau, eps) the beta maps

    r (x) w (x) m  ->  ((r' (x) w' (x) m') -> (r'r) (x) (w' ^ w) B(m, m'))

realize the selfduality, and for odd n = 2m+1 the glued complex K(M)
has middle map T = phi_{m+1} o beta_{m+1}^{-1} with T = eps(-1)^m T^t
with respect to dual bases.
"""

from __future__ import annotations

from . import linalg
from . import ring as rg
from .errors import MathPreconditionError
from .flmodule import bilinear_form_matrix, check_pairing
from .freemod import Augmentation, FreeComplex, FreeModule, GradedFreeMatrix
from .koszul import (
    complement,
    ext_contract,
    koszul_differential,
    subset_degree,
    subsets,
    wedge_sign,
)


def module_basis_labels(M):
    """Ordered homogeneous basis labels (degree, index) of M."""
    out = []
    for j in M.degrees():
        out.extend((j, b) for b in range(M.dim(j)))
    return out


def nielsen_module(ring, M, i):
    """A_i(M) with generators (S, (degree, index)), S colex-ordered."""
    mlabels = module_basis_labels(M)
    labels = []
    twists = []
    for S in subsets(ring.n, i):
        dS = subset_degree(ring, S)
        for (j, b) in mlabels:
            labels.append((S, (j, b)))
            twists.append(dS + j)
    return FreeModule(tuple(twists), tuple(labels))


def nielsen_phi_parts(M, i):
    """The Koszul part phi_{i,0} and the action part phi_{i,1}."""
    ring, K = M.ring, M.field
    src = nielsen_module(ring, M, i)
    tgt = nielsen_module(ring, M, i - 1)
    tgt_index = {lab: r for r, lab in enumerate(tgt.labels)}
    part0 = {}
    part1 = {}
    for c, (S, (j, b)) in enumerate(src.labels):
        for l in S:
            sign, S1 = ext_contract(l, S)
            coeff = K.one if sign > 0 else K.neg(K.one)
            r0 = tgt_index[(S1, (j, b))]
            key = (r0, c)
            poly = rg.pvar(ring, K, l, coeff)
            part0[key] = rg.padd(K, part0[key], poly) if key in part0 else poly
            dl = ring.weights[l - 1]
            col = M.act(l, j)
            for bp in range(M.dim(j + dl)):
                v = col[bp][b]
                if not v:
                    continue
                r1 = tgt_index[(S1, (j + dl, bp))]
                key1 = (r1, c)
                add = rg.pconst(ring, K, K.neg(K.mul(coeff, v)))
                part1[key1] = rg.padd(K, part1[key1], add) if key1 in part1 else add
    m0 = GradedFreeMatrix(ring, K, src, tgt, part0, check=False)
    m1 = GradedFreeMatrix(ring, K, src, tgt, part1, check=False)
    return m0, m1


def nielsen_differential(M, i):
    m0, m1 = nielsen_phi_parts(M, i)
    return m0.add(m1)


def _augmentation(M):
    ring, K = M.ring, M.field
    vectors = []
    for (j, b) in module_basis_labels(M):
        v = [K.zero] * M.dim(j)
        v[b] = K.one
        vectors.append(v)
    return Augmentation(M, tuple(vectors))


def nielsen_complex(M) -> FreeComplex:
    """The (generally non-minimal) resolution A_*(M)."""
    ring, K = M.ring, M.field
    if M.is_zero:
        return FreeComplex(ring, K, [FreeModule((), ())], [], check=False)
    n = ring.n
    modules = [nielsen_module(ring, M, i) for i in range(n + 1)]
    diffs = [nielsen_differential(M, i) for i in range(1, n + 1)]
    return FreeComplex(ring, K, modules, diffs, augmentation=_augmentation(M))


def nielsen_II_resolution(M) -> FreeComplex:
    """Diagonal-action variant: Koszul differentials rewritten over the
    free generator basis.  Same ranks and twists as nielsen_complex."""
    ring, K = M.ring, M.field
    if M.is_zero:
        return FreeComplex(ring, K, [FreeModule((), ())], [], check=False)
    n = ring.n
    modules = [nielsen_module(ring, M, i) for i in range(n + 1)]
    mlabels = module_basis_labels(M)
    diffs = []
    for i in range(1, n + 1):
        delta = koszul_differential(ring, K, i)
        src, tgt = modules[i], modules[i - 1]
        tgt_index = {lab: r for r, lab in enumerate(tgt.labels)}
        sub_i = subsets(n, i)
        sub_src_index = {S: k for k, S in enumerate(sub_i)}
        entries = {}
        for c, (S, (j, b)) in enumerate(src.labels):
            cS = sub_src_index[S]
            for (rS, cc), e in delta.entries.items():
                if cc != cS:
                    continue
                S1 = delta.target.labels[rS]
                # each Koszul entry is sum of c_l * x_l; rewrite
                # x_l (x) m_b = x_l . (1 (x) m_b) - 1 (x) (x_l m_b)
                for u, cu in e.items():
                    l = next(idx + 1 for idx, exp in enumerate(u) if exp)
                    r0 = tgt_index[(S1, (j, b))]
                    key = (r0, c)
                    poly = rg.pmono(ring, K, u, cu)
                    entries[key] = rg.padd(K, entries[key], poly) if key in entries else dict(poly)
                    dl = ring.weights[l - 1]
                    mat = M.act(l, j)
                    for bp in range(M.dim(j + dl)):
                        v = mat[bp][b]
                        if not v:
                            continue
                        r1 = tgt_index[(S1, (j + dl, bp))]
                        key1 = (r1, c)
                        add = rg.pconst(ring, K, K.neg(K.mul(cu, v)))
                        entries[key1] = (
                            rg.padd(K, entries[key1], add) if key1 in entries else add
                        )
        diffs.append(GradedFreeMatrix(ring, K, src, tgt, entries, check=False))
    return FreeComplex(ring, K, modules, diffs, augmentation=_augmentation(M))


def dual_nielsen_module(ring, M, i):
    """B_i(M) = (R (x) Wedge^i W)^v (x) M, generators (S, (degree, index))."""
    d = ring.total_weight
    mlabels = module_basis_labels(M)
    labels = []
    twists = []
    for S in subsets(ring.n, i):
        tS = d - subset_degree(ring, S)
        for (j, b) in mlabels:
            labels.append((S, (j, b)))
            twists.append(tS + j)
    return FreeModule(tuple(twists), tuple(labels))


def nielsen_IIa_resolution(M) -> FreeComplex:
    """Resolution through the dual Koszul differentials.

    Positions run G_h = B_{n-h}(M); the top position G_0 = B_n(M) is
    identified with R (x) M through the top-wedge trivialization and
    carries the augmentation.
    """
    ring, K = M.ring, M.field
    if M.is_zero:
        return FreeComplex(ring, K, [FreeModule((), ())], [], check=False)
    n = ring.n
    d = ring.total_weight
    modules = [dual_nielsen_module(ring, M, n - h) for h in range(n + 1)]
    diffs = []
    for h in range(1, n + 1):
        i = n - h + 1  # dd(phi_i): B_{i-1} -> B_i
        src, tgt = modules[h], modules[h - 1]
        tgt_index = {lab: r for r, lab in enumerate(tgt.labels)}
        dual_delta = koszul_differential(ring, K, i).dual(d)
        dd_src_index = {S: k for k, S in enumerate(dual_delta.source.labels)}
        entries = {}
        for c, (S, (j, b)) in enumerate(src.labels):
            cS = dd_src_index[S]
            for (rU, cc), e in dual_delta.entries.items():
                if cc != cS:
                    continue
                U = dual_delta.target.labels[rU]
                for u, cu in e.items():
                    l = next(idx + 1 for idx, exp in enumerate(u) if exp)
                    r0 = tgt_index[(U, (j, b))]
                    key = (r0, c)
                    poly = rg.pmono(ring, K, u, cu)
                    entries[key] = rg.padd(K, entries[key], poly) if key in entries else dict(poly)
                    dl = ring.weights[l - 1]
                    mat = M.act(l, j)
                    for bp in range(M.dim(j + dl)):
                        v = mat[bp][b]
                        if not v:
                            continue
                        r1 = tgt_index[(U, (j + dl, bp))]
                        key1 = (r1, c)
                        add = rg.pconst(ring, K, K.neg(K.mul(cu, v)))
                        entries[key1] = (
                            rg.padd(K, entries[key1], add) if key1 in entries else add
                        )
        diffs.append(GradedFreeMatrix(ring, K, src, tgt, entries, check=False))
    return FreeComplex(ring, K, modules, diffs, augmentation=_augmentation(M))


def beta(i, M, pairing) -> GradedFreeMatrix:
    """beta_i: A_i(M) -> (A_{n-i}(M))^v(-s), a constant isomorphism."""
    ring, K = M.ring, M.field
    n = ring.n
    total = ring.total_weight + pairing.s
    src = nielsen_module(ring, M, i)
    tgt = nielsen_module(ring, M, n - i).dual(total)
    tgt_index = {lab: r for r, lab in enumerate(tgt.labels)}
    B, order = bilinear_form_matrix(M, pairing)
    bindex = {lab: k for k, lab in enumerate(order)}
    entries = {}
    for c, (S, mb) in enumerate(src.labels):
        T = complement(n, S)
        sign, _ = wedge_sign(T, S)
        sgn = K.one if sign > 0 else K.neg(K.one)
        for (jp, bp) in module_basis_labels(M):
            v = B[bindex[mb]][bindex[(jp, bp)]]
            if not v:
                continue
            r = tgt_index[(T, (jp, bp))]
            entries[(r, c)] = rg.pconst(ring, K, K.mul(sgn, v))
    return GradedFreeMatrix(ring, K, src, tgt, entries)


def beta_inverse(i, M, pairing) -> GradedFreeMatrix:
    """Inverse of beta_i, assembled blockwise from the inverse form."""
    ring, K = M.ring, M.field
    n = ring.n
    total = ring.total_weight + pairing.s
    bsrc = nielsen_module(ring, M, i)
    btgt = nielsen_module(ring, M, n - i).dual(total)
    B, order = bilinear_form_matrix(M, pairing)
    Binv = linalg.inv(K, B)
    # block of beta at complement pair (S, T=S^c): X[bp][b] = sgn * B[b][bp]
    # so the inverse block is sgn^{-1} * (B^t)^{-1} = sgn * Binv transposed
    entries = {}
    src_index = {lab: r for r, lab in enumerate(bsrc.labels)}
    mlabels = module_basis_labels(M)
    bindex = {lab: k for k, lab in enumerate(order)}
    for cT, (T, (jp, bp)) in enumerate(btgt.labels):
        S = complement(n, T)
        sign, _ = wedge_sign(T, S)
        sgn = K.one if sign > 0 else K.neg(K.one)
        for mb in mlabels:
            v = Binv[bindex[(jp, bp)]][bindex[mb]]
            if not v:
                continue
            r = src_index[(S, mb)]
            entries[(r, cT)] = rg.pconst(ring, K, K.mul(sgn, v))
    return GradedFreeMatrix(ring, K, btgt, bsrc, entries)


def selfdual_resolution(M, pairing) -> FreeComplex:
    """K(M) for odd n: the dualized left half of A_*(M) glued through
    T = phi_{m+1} o beta_{m+1}^{-1}; T = eps(-1)^m T^t in dual bases."""
    ring, K = M.ring, M.field
    n = ring.n
    if n % 2 == 0:
        raise MathPreconditionError("selfdual resolution needs an odd variable count")
    if not check_pairing(M, pairing):
        raise MathPreconditionError("invalid pairing witness")
    m = (n - 1) // 2
    total = ring.total_weight + pairing.s
    left_modules = [nielsen_module(ring, M, i) for i in range(m + 1)]
    left_diffs = [nielsen_differential(M, i) for i in range(1, m + 1)]
    phi_m1 = nielsen_differential(M, m + 1)
    T = phi_m1.compose(beta_inverse(m + 1, M, pairing))
    modules = list(left_modules)
    for i in range(m, -1, -1):
        modules.append(left_modules[i].dual(total))
    diffs = list(left_diffs)
    diffs.append(T)
    for i in range(m, 0, -1):
        diffs.append(left_diffs[i - 1].dual(total))
    return FreeComplex(ring, K, modules, diffs, augmentation=_augmentation(M))


def middle_symmetry_defect(C, m, epsilon):
    """T - eps(-1)^m T^t of the middle differential; zero when symmetric."""
    T = C.diffs[m]
    K = C.field
    sigma = K.of(epsilon * ((-1) ** m))
    return T.add(T.flip().scale(K.neg(sigma)))
