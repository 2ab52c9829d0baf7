"""Finite-length graded modules, duals, hom spaces, and dual pairings.

A FiniteLengthModule stores one basis per degree and one matrix per
variable per degree.  act(l, j) maps coordinates in M_j to coordinates
in M_{j + d_l}.  Construction verifies that the actions commute.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass

from . import linalg, ring as rg
from .errors import MathPreconditionError


class FiniteLengthModule:
    def __init__(self, ring, field, dims, action, check=True):
        self.ring = ring
        self.field = field
        self.dims = {j: d for j, d in dims.items() if d > 0}
        self.action = {}
        for (l, j), mat in action.items():
            if self.dims.get(j, 0) and self.dims.get(j + ring.weights[l - 1], 0):
                self.action[(l, j)] = mat
        if check:
            self._check()

    def _check(self):
        R, K = self.ring, self.field
        for (l, j), mat in self.action.items():
            if len(mat) != self.dim(j + R.weights[l - 1]) or (
                mat and len(mat[0]) != self.dim(j)
            ):
                raise ValueError(f"action ({l},{j}) has the wrong shape")
        for j in self.dims:
            for l1 in range(1, R.n + 1):
                for l2 in range(l1 + 1, R.n + 1):
                    d1, d2 = R.weights[l1 - 1], R.weights[l2 - 1]
                    a = linalg.mat_mul(K, self.act(l2, j + d1), self.act(l1, j))
                    b = linalg.mat_mul(K, self.act(l1, j + d2), self.act(l2, j))
                    if a != b:
                        raise ValueError(
                            f"actions x{l1}, x{l2} fail to commute at degree {j}"
                        )

    # -- basic shape ------------------------------------------------------
    def degrees(self):
        return sorted(self.dims)

    def dim(self, j):
        return self.dims.get(j, 0)

    @property
    def total_dim(self):
        return sum(self.dims.values())

    @property
    def is_zero(self):
        return not self.dims

    def min_degree(self):
        return min(self.dims)

    def max_degree(self):
        return max(self.dims)

    def hilbert_function(self):
        return dict(sorted(self.dims.items()))

    # -- action -----------------------------------------------------------
    def act(self, l, j):
        mat = self.action.get((l, j))
        if mat is not None:
            return mat
        return linalg.zeros(self.field, self.dim(j + self.ring.weights[l - 1]), self.dim(j))

    def act_vec(self, l, j, v):
        return linalg.mat_vec(self.field, self.act(l, j), v)

    def act_mono(self, u, j, v):
        """Apply the monomial x^u to a vector in M_j."""
        cur, deg = list(v), j
        for l, e in enumerate(u, start=1):
            for _ in range(e):
                cur = self.act_vec(l, deg, cur)
                deg += self.ring.weights[l - 1]
        return cur


def zero_module(ring, field):
    return FiniteLengthModule(ring, field, {}, {}, check=False)


def trivial_module(ring, field):
    """The residue field k, concentrated in degree 0."""
    return FiniteLengthModule(ring, field, {0: 1}, {}, check=False)


def twist_module(M, a):
    """M(a), with M(a)_j = M_{a + j}."""
    dims = {j - a: d for j, d in M.dims.items()}
    action = {(l, j - a): mat for (l, j), mat in M.action.items()}
    return FiniteLengthModule(M.ring, M.field, dims, action, check=False)


def dual_module(M):
    """Hom_k(M, k) with (M*)_j = Hom(M_{-j}, k) and transposed actions."""
    R, K = M.ring, M.field
    dims = {-j: d for j, d in M.dims.items()}
    action = {}
    for l in range(1, R.n + 1):
        dl = R.weights[l - 1]
        for j in dims:
            src, tgt = -j, -j - dl
            if M.dim(src) and M.dim(tgt):
                action[(l, j)] = linalg.transpose(M.act(l, tgt))
    return FiniteLengthModule(R, K, dims, action, check=False)


def direct_sum(M, N):
    R, K = M.ring, M.field
    dims = {}
    for j in set(M.dims) | set(N.dims):
        dims[j] = M.dim(j) + N.dim(j)
    action = {}
    for l in range(1, R.n + 1):
        dl = R.weights[l - 1]
        for j in dims:
            if not dims.get(j + dl):
                continue
            a, b = M.act(l, j), N.act(l, j)
            rows = []
            for r in range(M.dim(j + dl)):
                rows.append((a[r] if M.dim(j) else []) + [K.zero] * N.dim(j))
            for r in range(N.dim(j + dl)):
                rows.append([K.zero] * M.dim(j) + (b[r] if N.dim(j) else []))
            action[(l, j)] = rows
    return FiniteLengthModule(R, K, dims, action, check=False)


def module_from_graded_vectors(ring, K, vectors, act_ambient, check=True):
    """Concrete module from per-degree spanning bases inside an ambient space.

    vectors: dict degree -> list of ambient coordinate vectors (a basis).
    act_ambient(l, j, vec): the ambient action, landing in degree j + d_l.
    The span must be closed under the action; coordinates are solved
    exactly and a failure raises.
    """
    dims = {j: len(vs) for j, vs in vectors.items() if vs}
    action = {}
    for j, vs in vectors.items():
        if not vs:
            continue
        for l in range(1, ring.n + 1):
            dl = ring.weights[l - 1]
            tgt = vectors.get(j + dl) or []
            moved = [act_ambient(l, j, v) for v in vs]
            if not tgt:
                if any(any(m) for m in moved):
                    raise ValueError(
                        f"action x{l} leaves the span at degree {j}"
                    )
                continue
            basis_cols = linalg.transpose(tgt)
            coords = linalg.solve_matrix(K, basis_cols, linalg.transpose(moved))
            if coords is None:
                raise ValueError(f"action x{l} leaves the span at degree {j}")
            action[(l, j)] = coords
    return FiniteLengthModule(ring, K, dims, action, check=check)


def min_generators(M):
    """Minimal homogeneous generators, degree by degree.

    Returns dict degree -> list of coordinate vectors completing the
    image of lower degrees to a basis, chosen by echelon pivoting.
    """
    R, K = M.ring, M.field
    out = {}
    for j in M.degrees():
        dim_j = M.dim(j)
        spans = []
        for l in range(1, R.n + 1):
            src = j - R.weights[l - 1]
            if M.dim(src):
                spans.extend(linalg.transpose(M.act(l, src)))
        reduced = linalg.row_space(K, spans) if spans else []
        if len(reduced) == dim_j:
            continue
        pivots = set()
        for row in reduced:
            pivots.add(next(c for c in range(dim_j) if row[c]))
        gens = []
        work = list(reduced)
        for c in range(dim_j):
            if c in pivots:
                continue
            v = [K.zero] * dim_j
            v[c] = K.one
            gens.append(v)
            work.append(v)
            pivots.add(c)
            if len(work) == dim_j:
                break
        out[j] = gens
    return out


def generator_degrees(M):
    return {j: len(vs) for j, vs in min_generators(M).items()}


def hilbert_function(M):
    return M.hilbert_function()


# ---------------------------------------------------------------------------
# graded module maps


class ModuleMap:
    """A degree-t map of graded modules, stored as per-degree matrices.

    mats[j]: source_j -> target_{j+t}; missing degrees are zero maps.
    """

    def __init__(self, source, target, t, mats):
        self.source = source
        self.target = target
        self.t = t
        self.mats = {
            j: m
            for j, m in mats.items()
            if source.dim(j) and target.dim(j + t) and not linalg.is_zero_matrix(m)
        }

    def mat(self, j):
        m = self.mats.get(j)
        if m is not None:
            return m
        return linalg.zeros(self.source.field, self.target.dim(j + self.t), self.source.dim(j))

    def apply(self, j, v):
        return linalg.mat_vec(self.source.field, self.mat(j), v)

    def verify(self):
        """Commutation with every variable action, in every degree."""
        R, K = self.source.ring, self.source.field
        for j in self.source.degrees():
            for l in range(1, R.n + 1):
                dl = R.weights[l - 1]
                left = linalg.mat_mul(K, self.target.act(l, j + self.t), self.mat(j))
                right = linalg.mat_mul(K, self.mat(j + dl), self.source.act(l, j))
                if left != right:
                    return False
        return True

    def is_isomorphism(self):
        for j in set(self.source.dims) | {j - self.t for j in self.target.dims}:
            a, b = self.source.dim(j), self.target.dim(j + self.t)
            if a != b:
                return False
            if a and linalg.rank(self.source.field, self.mat(j)) != a:
                return False
        return True

    def add(self, other):
        K = self.source.field
        mats = dict(self.mats)
        for j, m in other.mats.items():
            mats[j] = linalg.add_matrix(K, self.mat(j), m) if j in mats else m
        return ModuleMap(self.source, self.target, self.t, mats)

    def scale(self, c):
        K = self.source.field
        return ModuleMap(
            self.source, self.target, self.t,
            {j: linalg.scale_matrix(K, c, m) for j, m in self.mats.items()},
        )


def hom_space(M, N, t=0):
    """Basis of the space of degree-t graded module maps M -> N.

    Solves the commutation constraints as one exact linear system.
    """
    R, K = M.ring, M.field
    blocks = []
    offsets = {}
    size = 0
    for j in M.degrees():
        dn = N.dim(j + t)
        if dn:
            offsets[j] = size
            blocks.append((j, dn, M.dim(j)))
            size += dn * M.dim(j)
    if size == 0:
        return []

    def unknown(j, a, b):
        # entry (a, b) of the block phi_j
        return offsets[j] + a * M.dim(j) + b

    rows = []
    for j in M.degrees():
        for l in range(1, R.n + 1):
            dl = R.weights[l - 1]
            tgt_rows = N.dim(j + t + dl)
            if not tgt_rows:
                continue
            actN = N.act(l, j + t)
            actM = M.act(l, j)
            for a in range(tgt_rows):
                for b in range(M.dim(j)):
                    row = [K.zero] * size
                    touched = False
                    if j in offsets:
                        for k in range(N.dim(j + t)):
                            c = actN[a][k]
                            if c:
                                row[unknown(j, k, b)] = K.add(
                                    row[unknown(j, k, b)], c
                                )
                                touched = True
                    if (j + dl) in offsets:
                        for k in range(M.dim(j + dl)):
                            c = actM[k][b]
                            if c:
                                idx = unknown(j + dl, a, k)
                                row[idx] = K.sub(row[idx], c)
                                touched = True
                    if touched:
                        rows.append(row)

    kernel = linalg.nullspace(K, rows) if rows else [
        [K.one if i == k else K.zero for i in range(size)] for k in range(size)
    ]
    maps = []
    for v in kernel:
        mats = {}
        for (j, dn, dm) in blocks:
            off = offsets[j]
            mats[j] = [
                [v[off + a * dm + b] for b in range(dm)] for a in range(dn)
            ]
        maps.append(ModuleMap(M, N, t, mats))
    return maps


# ---------------------------------------------------------------------------
# dual pairings


@dataclass
class GradedPairing:
    """Witness of a symmetric dual pairing: tau: M -> M*(-s), sign epsilon."""

    s: int
    tau: ModuleMap
    epsilon: int


def adjoint(tau, s):
    """tau*(-s) as a map M -> M*(-s): degreewise transpose of tau at s-j."""
    mats = {j: linalg.transpose(tau.mat(s - j)) for j in tau.source.degrees()}
    return ModuleMap(tau.source, tau.target, tau.t, mats)


def _flatten(map_, degrees):
    out = []
    for j in degrees:
        for row in map_.mat(j):
            out.extend(row)
    return out


def _search_invertible(K, basis_maps, coords_list, seed, cap=512):
    """First invertible combination of basis_maps with coefficient vectors
    drawn deterministically: seeded random trials, then exhaustive scan
    over small prime fields."""
    if not basis_maps:
        return None
    dim = len(coords_list[0]) if coords_list else len(basis_maps)

    def assemble(coeffs):
        out = None
        for c, h in zip(coeffs, basis_maps):
            if not c:
                continue
            term = h.scale(c)
            out = term if out is None else out.add(term)
        return out

    rng = random.Random(seed)
    seen = set()
    for _ in range(cap):
        coeffs = tuple(K.random(rng) for _ in basis_maps)
        if not any(coeffs) or coeffs in seen:
            continue
        seen.add(coeffs)
        cand = assemble(coeffs)
        if cand is not None and cand.is_isomorphism():
            return cand
    if K.p is not None and K.p ** len(basis_maps) <= 65536:
        for coeffs in itertools.product(range(K.p), repeat=len(basis_maps)):
            if not any(coeffs) or coeffs in seen:
                continue
            cand = assemble(coeffs)
            if cand is not None and cand.is_isomorphism():
                return cand
    return None


def gorenstein_pairing(M, seed=0, require_epsilon=None):
    """Search for a self-adjoint dual pairing (s, tau, epsilon) on M.

    s is forced as minDeg + maxDeg when the Hilbert function is
    palindromic; otherwise no pairing exists and None is returned.  The
    hom space Hom(M, M*(-s)) is split into the +1/-1 eigenspaces of
    tau -> tau*(-s), and each sector is scanned for an invertible
    element (epsilon = +1 first).
    """
    if M.is_zero:
        raise MathPreconditionError("pairing of the zero module")
    K = M.field
    lo, hi = M.min_degree(), M.max_degree()
    s = lo + hi
    for j in M.degrees():
        if M.dim(j) != M.dim(s - j):
            return None
    target = twist_module(dual_module(M), -s)
    homs = hom_space(M, target, 0)
    if not homs:
        return None
    degrees = M.degrees()
    vecs = [_flatten(h, degrees) for h in homs]
    basis_cols = linalg.transpose(vecs)
    adj_vecs = [_flatten(adjoint(h, s), degrees) for h in homs]
    coords = linalg.solve_matrix(K, basis_cols, linalg.transpose(adj_vecs))
    if coords is None:
        raise RuntimeError("adjoint involution does not preserve the hom space")
    invol = coords  # column i = coordinates of adjoint(h_i)
    k = len(homs)
    eps_options = [+1, -1] if require_epsilon is None else [require_epsilon]
    if K.char == 2:
        eps_options = eps_options[:1]
    for eps in eps_options:
        shifted = [
            [
                K.sub(invol[a][b], K.of(eps) if a == b else K.zero)
                for b in range(k)
            ]
            for a in range(k)
        ]
        sector = linalg.nullspace(K, shifted)
        if not sector:
            continue
        sector_maps = []
        for v in sector:
            out = None
            for c, h in zip(v, homs):
                if not c:
                    continue
                term = h.scale(c)
                out = term if out is None else out.add(term)
            if out is not None:
                sector_maps.append(out)
        tau = _search_invertible(K, sector_maps, sector, seed)
        if tau is not None:
            pairing = GradedPairing(s, tau, eps)
            if not check_pairing(M, pairing):
                raise RuntimeError("constructed pairing fails verification")
            return pairing
    return None


def check_pairing(M, pairing):
    """Isomorphism per degree, epsilon-symmetry, and R-bilinearity."""
    K = M.field
    tau, s, eps = pairing.tau, pairing.s, pairing.epsilon
    if not tau.is_isomorphism():
        return False
    adj = adjoint(tau, s)
    scaled = tau.scale(K.of(eps))
    for j in M.degrees():
        if adj.mat(j) != scaled.mat(j):
            return False
    return tau.verify()


def bilinear_form_matrix(M, pairing):
    """The full form B(m_b, m_b') on the concatenated degree-sorted basis."""
    K = M.field
    order = []
    for j in M.degrees():
        order.extend((j, b) for b in range(M.dim(j)))
    index = {key: i for i, key in enumerate(order)}
    n = len(order)
    B = linalg.zeros(K, n, n)
    for j in M.degrees():
        mat = pairing.tau.mat(j)
        jp = pairing.s - j
        if not M.dim(jp):
            continue
        for b in range(M.dim(j)):
            for bp in range(M.dim(jp)):
                B[index[(j, b)]][index[(jp, bp)]] = mat[bp][b]
    return B, order


def find_isomorphism(M, N, seed=0):
    """An invertible degree-0 module map M -> N, or None."""
    if M.hilbert_function() != N.hilbert_function():
        return None
    if M.is_zero:
        return ModuleMap(M, N, 0, {})
    homs = hom_space(M, N, 0)
    return _search_invertible(M.field, homs, None, seed)
