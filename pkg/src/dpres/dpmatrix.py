"""Divided-power matrices, their annihilators, and the modules they cut out.

A DPMatrix P with row twists a_1..a_q and column twists b_1..b_p maps
the free module with generators in degrees -b_j into a sum of shifted
divided-power duals; its entry (i, j) is homogeneous of degree
a_i - b_j.  The annihilator collects, degree by degree, every tuple of
ring elements contracted to zero by all rows; the quotient module is
realized concretely as the image of P with the contraction action.
"""

from __future__ import annotations

from . import linalg
from . import ring as rg
from .errors import MathPreconditionError
from .flmodule import (
    FiniteLengthModule,
    dual_module,
    min_generators,
    module_from_graded_vectors,
)


class DPMatrix:
    def __init__(self, ring, field, row_twists, col_twists, entries, check=True):
        self.ring = ring
        self.field = field
        self.row_twists = tuple(row_twists)
        self.col_twists = tuple(col_twists)
        self.entries = [[dict(e) for e in row] for row in entries]
        if check:
            self._check()

    @property
    def q(self):
        return len(self.row_twists)

    @property
    def p(self):
        return len(self.col_twists)

    def _check(self):
        if len(self.entries) != self.q or any(len(r) != self.p for r in self.entries):
            raise ValueError("entry grid does not match the declared twists")
        for i in range(self.q):
            for j in range(self.p):
                e = self.entries[i][j]
                if not e:
                    continue
                got = rg.phom_degree(self.ring, e, dp=True)
                want = self.row_twists[i] - self.col_twists[j]
                if got != want:
                    raise ValueError(
                        f"entry ({i + 1},{j + 1}) has degree {got}, "
                        f"twists demand {want}"
                    )

    def entry(self, i, j):
        return self.entries[i][j]

    def transpose(self):
        entries = [
            [self.entries[i][j] for i in range(self.q)] for j in range(self.p)
        ]
        return DPMatrix(
            self.ring,
            self.field,
            tuple(-b for b in self.col_twists),
            tuple(-a for a in self.row_twists),
            entries,
            check=False,
        )

    def is_zero(self):
        return all(not e for row in self.entries for e in row)

    def degree_window(self):
        """Degrees of the source where the annihilator is not yet full."""
        lo = min(-b for b in self.col_twists)
        hi = max(-a for a in self.row_twists)
        return lo, hi

    def source_basis(self, t):
        """Basis [(column j, monomial)] of the degree-t part of the source."""
        out = []
        for j, b in enumerate(self.col_twists):
            for u in rg.monomials_of_degree(self.ring, t + b):
                out.append((j, u))
        return out

    def target_basis(self, t):
        """Basis [(row i, dp monomial)] of the degree-t part of the target."""
        out = []
        for i, a in enumerate(self.row_twists):
            for u in rg.dp_monomials_of_degree(self.ring, a + t):
                out.append((i, u))
        return out

    def apply_basis_element(self, j, u, t):
        """Coordinates of P(x^u e_j) in the degree-t target basis."""
        K = self.field
        coords = []
        for i, a in enumerate(self.row_twists):
            moved = rg.contract(K, {u: K.one}, self.entries[i][j])
            for w in rg.dp_monomials_of_degree(self.ring, a + t):
                coords.append(moved.get(w, K.zero))
        return coords


class GradedIdealWitness:
    """Per-degree reduced bases of a graded submodule of a free module.

    bases[t] is an RREF matrix over the monomial basis of the degree-t
    part; every degree above hi is asserted to be the full ambient
    space, every degree below lo is zero.
    """

    def __init__(self, ring, field, col_twists, lo, hi, bases):
        self.ring = ring
        self.field = field
        self.col_twists = tuple(col_twists)
        self.lo = lo
        self.hi = hi
        self.bases = bases

    def ambient_basis(self, t):
        out = []
        for j, b in enumerate(self.col_twists):
            for u in rg.monomials_of_degree(self.ring, t + b):
                out.append((j, u))
        return out

    def ambient_dim(self, t):
        return sum(
            len(rg.monomials_of_degree(self.ring, t + b)) for b in self.col_twists
        )

    def basis(self, t):
        if t < self.lo:
            return []
        if t > self.hi:
            return linalg.identity(self.field, self.ambient_dim(t))
        return self.bases.get(t, [])

    def dim(self, t):
        if t > self.hi:
            return self.ambient_dim(t)
        return len(self.basis(t))

    def equals(self, other, extra_degrees=1):
        """Degreewise subspace equality over the union of both windows."""
        if self.col_twists != other.col_twists:
            return False
        lo = min(self.lo, other.lo)
        hi = max(self.hi, other.hi) + extra_degrees
        for t in range(lo, hi + 1):
            if self.basis(t) != other.basis(t):
                return False
        return True

    def contains_vector(self, t, vec):
        return linalg.in_row_space(self.field, self.basis(t), vec)


def annihilator(P: DPMatrix) -> GradedIdealWitness:
    """Degreewise kernels of contraction against every row of P."""
    ring, K = P.ring, P.field
    lo, hi = P.degree_window()
    bases = {}
    for t in range(lo, hi + 1):
        src = P.source_basis(t)
        if not src:
            bases[t] = []
            continue
        rows = []
        for i, a in enumerate(P.row_twists):
            for w in rg.dp_monomials_of_degree(ring, a + t):
                row = []
                for (j, u) in src:
                    target = tuple(x + y for x, y in zip(w, u))
                    row.append(P.entries[i][j].get(target, K.zero))
                rows.append(row)
        if rows:
            kernel = linalg.nullspace(K, rows)
        else:
            kernel = linalg.identity(K, len(src))
        bases[t] = linalg.row_space(K, kernel) if kernel else []
    return GradedIdealWitness(ring, K, P.col_twists, lo, hi, bases)


def ideal_witness_from_generators(ring, K, col_twists, generators, lo, hi):
    """Witness spanned by homogeneous generator tuples and their multiples.

    generators: list of tuples of polynomial dicts (one per column slot),
    each tuple homogeneous of one degree in the twisted grading.
    """
    gens = []
    for g in generators:
        degs = set()
        for j, poly in enumerate(g):
            if poly:
                degs.add(rg.phom_degree(ring, poly) - col_twists[j])
        if len(degs) != 1:
            raise ValueError("generator tuple is not homogeneous")
        gens.append((degs.pop(), g))
    bases = {}
    for t in range(lo, hi + 1):
        ambient = []
        index = {}
        for j, b in enumerate(col_twists):
            for u in rg.monomials_of_degree(ring, t + b):
                index[(j, u)] = len(ambient)
                ambient.append((j, u))
        vectors = []
        for gdeg, g in gens:
            for u in rg.monomials_of_degree(ring, t - gdeg):
                vec = [K.zero] * len(ambient)
                for j, poly in enumerate(g):
                    if not poly:
                        continue
                    shifted = rg.pmul_mono(K, poly, u)
                    for w, c in shifted.items():
                        vec[index[(j, w)]] = K.add(vec[index[(j, w)]], c)
                vectors.append(vec)
        bases[t] = linalg.row_space(K, vectors) if vectors else []
    return GradedIdealWitness(ring, K, col_twists, lo, hi, bases)


def quotient_module(P: DPMatrix) -> FiniteLengthModule:
    return quotient_module_with_generators(P)[0]


def quotient_module_with_generators(P: DPMatrix):
    """M(P) as the image of P with the contraction action.

    Also returns the images of the free generators: a list of
    (degree -b_j, coordinate vector in the chosen basis of that degree).
    """
    ring, K = P.ring, P.field
    lo, hi = P.degree_window()
    target_bases = {t: P.target_basis(t) for t in range(lo, hi + 1)}
    vectors = {}
    for t in range(lo, hi + 1):
        spanning = [
            P.apply_basis_element(j, u, t) for (j, u) in P.source_basis(t)
        ]
        basis = linalg.row_space(K, spanning) if spanning else []
        if basis:
            vectors[t] = basis

    def act_ambient(l, t, vec):
        tb_src = target_bases.get(t, P.target_basis(t))
        tb_tgt = target_bases.get(t + ring.weights[l - 1])
        if tb_tgt is None:
            tb_tgt = P.target_basis(t + ring.weights[l - 1])
        index = {key: i for i, key in enumerate(tb_tgt)}
        out = [K.zero] * len(tb_tgt)
        for x, (i, w) in zip(vec, tb_src):
            if not x:
                continue
            wl = list(w)
            wl[l - 1] -= 1
            if wl[l - 1] < 0:
                continue
            pos = index.get((i, tuple(wl)))
            if pos is not None:
                out[pos] = K.add(out[pos], x)
        return out

    M = module_from_graded_vectors(ring, K, vectors, act_ambient)
    gens = []
    for j in range(P.p):
        t = -P.col_twists[j]
        vec = P.apply_basis_element(j, ring.zero_exps(), t)
        basis = vectors.get(t, [])
        if basis:
            coords = linalg.solve(K, linalg.transpose(basis), vec)
            if coords is None:
                raise RuntimeError("generator image escaped the image basis")
        else:
            coords = []
        gens.append((t, coords))
    return M, gens


def present(M: FiniteLengthModule) -> DPMatrix:
    """A divided-power matrix presenting M, via minimal generators of M
    and of its dual; quotient_module(present(M)) is isomorphic to M."""
    if M.is_zero:
        raise MathPreconditionError("cannot present the zero module")
    ring, K = M.ring, M.field
    gens = []
    for j, vs in sorted(min_generators(M).items()):
        gens.extend((j, v) for v in vs)
    Mstar = dual_module(M)
    dual_gens = []
    for a, vs in sorted(min_generators(Mstar).items()):
        dual_gens.extend((a, v) for v in vs)
    col_twists = tuple(-t for t, _ in gens)
    row_twists = tuple(a for a, _ in dual_gens)
    entries = []
    for a, dual_vec in dual_gens:
        row = []
        for t, gen_vec in gens:
            # X^(u)-coefficient is the pairing of the dual generator with
            # x^u . gen; the entry is homogeneous of degree a + t
            poly = {}
            weight = -a - t
            if weight >= 0:
                for u in rg.monomials_of_degree(ring, weight):
                    moved = M.act_mono(u, t, gen_vec)
                    c = K.zero
                    for x, y in zip(dual_vec, moved):
                        if x and y:
                            c = K.add(c, K.mul(x, y))
                    if c:
                        poly[u] = c
            row.append(poly)
        entries.append(row)
    return DPMatrix(ring, K, row_twists, col_twists, entries)


def symmetric_presentation(M: FiniteLengthModule, pairing) -> DPMatrix:
    """A (skew-)symmetric matrix presenting a module with a dual pairing.

    Entries are P_{i,j} = sum_u B(g_j, x^u g_i) X^(u) over minimal
    generators g_i; the twist pattern constant is -s and the symmetry
    sign is the pairing's epsilon, and quotient_module gives back M.
    """
    if M.is_zero:
        raise MathPreconditionError("cannot present the zero module")
    ring, K = M.ring, M.field
    s, tau = pairing.s, pairing.tau
    gens = []
    for j, vs in sorted(min_generators(M).items()):
        gens.extend((j, v) for v in vs)
    col_twists = tuple(-t for t, _ in gens)
    row_twists = tuple(t - s for t, _ in gens)
    entries = []
    for ti, gi in gens:
        row = []
        for tj, gj in gens:
            weight = s - ti - tj
            poly = {}
            if weight >= 0:
                for u in rg.monomials_of_degree(ring, weight):
                    moved = M.act_mono(u, ti, gi)
                    # B(g_j, x^u g_i) = tau(g_j) evaluated on x^u g_i
                    functional = tau.apply(tj, gj)
                    c = K.zero
                    for x, y in zip(functional, moved):
                        if x and y:
                            c = K.add(c, K.mul(x, y))
                    if c:
                        poly[u] = c
            row.append(poly)
        entries.append(row)
    return DPMatrix(ring, K, row_twists, col_twists, entries)


def is_symmetric(P: DPMatrix):
    """(s, epsilon) when P is (skew-)symmetric with twist pattern
    a_i = s - b_i for one integer s; None otherwise."""
    if P.q != P.p:
        return None
    pattern = {a + b for a, b in zip(P.row_twists, P.col_twists)}
    if len(pattern) != 1:
        return None
    s = pattern.pop()
    K = P.field
    for eps in (1, -1):
        ok = True
        for i in range(P.q):
            for j in range(P.p):
                other = P.entries[j][i]
                if eps == -1:
                    other = rg.pneg(K, other)
                if P.entries[i][j] != other:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            return s, eps
        if K.char == 2:
            break
    return None
