"""Minimization, Betti tables, the Tor oracle, strand verification,
Herzog-Kuhl solving, and the characteristic-2 parity predicates.

Minimization cancels unit (nonzero constant) entries of differentials.
Cancelling d_i at (r, c) with pivot u applies the rank-one update
d[a][b] -= d[a][c] u^{-1} d[r][b] and then deletes generator r of
F_{i-1} and generator c of F_i; the neighbouring differentials only
lose the corresponding row/column, and the augmentation only loses the
deleted generator.  Entries stay homogeneous throughout, and constant
entries are only ever created from products of constant entries, so the
process terminates with no unit entries anywhere.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb

from . import linalg
from . import ring as rg
from .errors import MathPreconditionError, SymmetricMinimizationUnsupported
from .flmodule import FiniteLengthModule, module_from_graded_vectors
from .freemod import Augmentation, FreeComplex, FreeModule, GradedFreeMatrix
from .koszul import ext_contract, subset_degree, subsets


class BettiTable:
    """Counts beta_{i,j} of degree-j generators at homological index i."""

    def __init__(self, counts=None):
        self.counts = {}
        for (i, j), c in (counts or {}).items():
            if c:
                self.counts[(i, j)] = c

    def __eq__(self, other):
        return isinstance(other, BettiTable) and self.counts == other.counts

    def __getitem__(self, key):
        return self.counts.get(key, 0)

    def items(self):
        return sorted(self.counts.items())

    def total(self, i):
        return sum(c for (ii, _), c in self.counts.items() if ii == i)

    def max_index(self):
        return max((i for (i, _) in self.counts), default=0)

    def add(self, other):
        out = dict(self.counts)
        for key, c in other.counts.items():
            out[key] = out.get(key, 0) + c
        return BettiTable(out)

    def rows(self):
        """Display rows keyed by j - i, the usual table layout."""
        out = {}
        for (i, j), c in self.counts.items():
            out.setdefault(j - i, {})[i] = c
        return out

    def render(self):
        if not self.counts:
            return "(empty Betti table)"
        imax = self.max_index()
        rows = self.rows()
        lines = []
        header = ["     "] + [f"{i:>6}" for i in range(imax + 1)]
        lines.append("".join(header))
        for r in sorted(rows):
            cells = [f"{r:>4}:"]
            for i in range(imax + 1):
                c = rows[r].get(i)
                cells.append(f"{c:>6}" if c else "     .")
            lines.append("".join(cells))
        return "\n".join(lines)

    def to_records(self):
        return [
            {"i": i, "j": j, "count": c} for (i, j), c in self.items()
        ]


def _is_unit_entry(ring, poly):
    v = rg.pconstant_value(ring, poly)
    return v is not None and bool(v)


def is_minimal(C: FreeComplex) -> bool:
    return all(
        not _is_unit_entry(C.ring, e)
        for d in C.diffs
        for e in d.entries.values()
    )


def betti_table(C: FreeComplex) -> BettiTable:
    if not is_minimal(C):
        raise MathPreconditionError("betti_table needs a minimal complex")
    counts = {}
    for i, mod in enumerate(C.modules):
        for t in mod.twists:
            counts[(i, t)] = counts.get((i, t), 0) + 1
    return BettiTable(counts)


class _MutDiff:
    __slots__ = ("rows", "cols")

    def __init__(self):
        self.rows = {}
        self.cols = {}

    def set(self, r, c, poly):
        if poly:
            self.rows.setdefault(r, {})[c] = poly
            self.cols.setdefault(c, set()).add(r)
        else:
            self.unset(r, c)

    def unset(self, r, c):
        row = self.rows.get(r)
        if row and c in row:
            del row[c]
            if not row:
                del self.rows[r]
            col = self.cols[c]
            col.discard(r)
            if not col:
                del self.cols[c]

    def get(self, r, c):
        return self.rows.get(r, {}).get(c, {})

    def drop_row(self, r):
        row = self.rows.pop(r, None)
        if row:
            for c in row:
                col = self.cols[c]
                col.discard(r)
                if not col:
                    del self.cols[c]

    def drop_col(self, c):
        col = self.cols.pop(c, None)
        if col:
            for r in col:
                row = self.rows[r]
                del row[c]
                if not row:
                    del self.rows[r]


class _MutComplex:
    """Mutable view of a FreeComplex with stable generator ids."""

    def __init__(self, C: FreeComplex):
        self.ring = C.ring
        self.field = C.field
        self.alive = []   # per position: ordered list of ids (pos, idx)
        self.twist = {}
        self.label = {}
        for pos, mod in enumerate(C.modules):
            ids = []
            for idx in range(mod.rank):
                gid = (pos, idx)
                ids.append(gid)
                self.twist[gid] = mod.twists[idx]
                self.label[gid] = mod.labels[idx]
            self.alive.append(ids)
        self.ordinal = {gid: gid[1] for ids in self.alive for gid in ids}
        self.diffs = []
        for k, d in enumerate(C.diffs):
            md = _MutDiff()
            for (r, c), e in d.entries.items():
                md.set((k, r), (k + 1, c), dict(e))
            self.diffs.append(md)
        if C.augmentation is not None:
            self.aug_module = C.augmentation.module
            self.aug = {
                (0, idx): vec for idx, vec in enumerate(C.augmentation.vectors)
            }
        else:
            self.aug_module = None
            self.aug = None

    def cancel(self, k, rid, cid):
        """Cancel the unit entry of diffs[k] at (rid, cid)."""
        K = self.field
        d = self.diffs[k]
        pivot = d.get(rid, cid)
        u = rg.pconstant_value(self.ring, pivot)
        if not u:
            raise ValueError("cancellation pivot is not a unit")
        uinv = K.inv(u)
        row = [(b, e) for b, e in d.rows.get(rid, {}).items() if b != cid]
        col = [(a, d.get(a, cid)) for a in d.cols.get(cid, set()) if a != rid]
        scaled = [(b, rg.pscale(K, uinv, e)) for b, e in row]
        for a, fa in col:
            arow = d.rows.get(a, {})
            for b, gb in scaled:
                upd = rg.pmul(K, fa, gb)
                cur = arow.get(b)
                new = rg.psub(K, cur, upd) if cur else rg.pneg(K, upd)
                d.set(a, b, new)
        d.drop_row(rid)
        d.drop_col(cid)
        if k > 0:
            self.diffs[k - 1].drop_col(rid)
        if k + 1 < len(self.diffs):
            self.diffs[k + 1].drop_row(cid)
        if k == 0 and self.aug is not None:
            self.aug.pop(rid, None)
        self.alive[k].remove(rid)
        self.alive[k + 1].remove(cid)

    def find_unit(self, k):
        """First unit entry of diffs[k] in generator order."""
        d = self.diffs[k]
        ring = self.ring
        ordinal = self.ordinal
        best = None
        for rid, row in d.rows.items():
            for cid, e in row.items():
                if _is_unit_entry(ring, e):
                    key = (ordinal[rid], ordinal[cid])
                    if best is None or key < best[0]:
                        best = (key, rid, cid)
        if best is None:
            return None
        return best[1], best[2]

    def to_complex(self) -> FreeComplex:
        modules = [
            FreeModule(
                tuple(self.twist[g] for g in ids),
                tuple(self.label[g] for g in ids),
            )
            for ids in self.alive
        ]
        index = {}
        for pos, ids in enumerate(self.alive):
            for i, g in enumerate(ids):
                index[g] = i
        diffs = []
        for k, d in enumerate(self.diffs):
            entries = {}
            for rid, row in d.rows.items():
                for cid, e in row.items():
                    entries[(index[rid], index[cid])] = e
            diffs.append(
                GradedFreeMatrix(
                    self.ring, self.field, modules[k + 1], modules[k], entries,
                    check=False,
                )
            )
        aug = None
        if self.aug is not None:
            aug = Augmentation(
                self.aug_module,
                tuple(self.aug[g] for g in self.alive[0]),
            )
        return FreeComplex(self.ring, self.field, modules, diffs, augmentation=aug, check=False)


def _scan_order(length, reverse=False):
    mid = (length + 1) / 2
    order = sorted(range(length), key=lambda k: (abs((k + 1) - mid), k + 1))
    return list(reversed(order)) if reverse else order


def minimize(C: FreeComplex, scan_reverse=False) -> FreeComplex:
    """Cancel all unit entries; quasi-isomorphism and augmentation kept.

    The pivot scan runs middle-outward over the differentials (the
    reverse order is available to test cancellation-order invariance).
    """
    mut = _MutComplex(C)
    order = _scan_order(len(C.diffs), scan_reverse)
    progress = True
    while progress:
        progress = False
        for k in order:
            hit = mut.find_unit(k)
            while hit is not None:
                mut.cancel(k, *hit)
                progress = True
                hit = mut.find_unit(k)
    out = mut.to_complex()
    return out


def minimize_symmetric(C: FreeComplex, m, epsilon) -> FreeComplex:
    """Symmetry-preserving minimization of a selfdual complex.

    The middle map T satisfies T = sigma T^t with sigma = eps(-1)^m.
    Middle cancellations use 1x1 diagonal pivots (symmetric case,
    characteristic != 2) or 2x2 blocks on index pairs (zero-diagonal
    case, any characteristic); left-half cancellations are mirrored on
    the dual right half.  Characteristic 2 with a symmetric middle form
    whose diagonal is not identically zero is refused.
    """
    K = C.field
    n = len(C.diffs)
    if n != 2 * m + 1:
        raise MathPreconditionError("complex length does not match m")
    sigma_int = epsilon * ((-1) ** m)
    sigma = K.of(sigma_int)
    mut = _MutComplex(C)
    mid = mut.diffs[m]

    def partner(gid):
        pos, idx = gid
        return (n - pos, idx)

    def mid_pair_id(rid):
        # row id in modules[m] <-> column id in modules[m+1], same index
        return (m + 1, rid[1])

    def check_diag_zero():
        for rid, row in mid.rows.items():
            e = row.get(mid_pair_id(rid))
            if e:
                return False
        return True

    diag_allowed = sigma_int == 1 and K.char != 2
    if K.char == 2 and not check_diag_zero():
        raise SymmetricMinimizationUnsupported(
            "characteristic 2 with a symmetric middle form: use minimize()"
        )
    if sigma_int == -1 and K.char != 2 and not check_diag_zero():
        raise MathPreconditionError("skew middle map with nonzero diagonal")

    ring = C.ring
    ordinal = mut.ordinal

    def find_mid_diag():
        best = None
        for rid, row in mid.rows.items():
            e = row.get(mid_pair_id(rid))
            if e and _is_unit_entry(ring, e):
                if best is None or ordinal[rid] < ordinal[best]:
                    best = rid
        return best

    def find_mid_off():
        best = None
        for rid, row in mid.rows.items():
            for cid, e in row.items():
                if cid == mid_pair_id(rid):
                    continue
                if _is_unit_entry(ring, e):
                    key = (ordinal[rid], ordinal[cid])
                    if best is None or key < best[0]:
                        best = (key, rid, cid)
        return None if best is None else (best[1], best[2])

    progress = True
    while progress:
        progress = False
        if diag_allowed:
            rid = find_mid_diag()
            while rid is not None:
                mut.cancel(m, rid, mid_pair_id(rid))
                progress = True
                rid = find_mid_diag()
        hit = find_mid_off()
        if hit is not None:
            rid, cid = hit
            # hyperbolic pair: cancel (rid, cid), then the mirrored unit
            rid2 = (m, cid[1])
            cid2 = mid_pair_id(rid)
            mut.cancel(m, rid, cid)
            mut.cancel(m, rid2, cid2)
            progress = True
            continue
        for k in range(m - 1, -1, -1):
            hit = mut.find_unit(k)
            if hit is not None:
                rid, cid = hit
                mut.cancel(k, rid, cid)
                mut.cancel(n - 1 - k, partner(cid), partner(rid))
                progress = True
                break
    out = mut.to_complex()
    if not is_minimal(out):
        raise RuntimeError("symmetric minimization left a unit entry")
    T = out.diffs[m]
    defect = T.add(T.flip().scale(K.neg(sigma)))
    if not defect.is_zero():
        raise RuntimeError("symmetric minimization broke the middle symmetry")
    return out


# ---------------------------------------------------------------------------
# the independent Tor oracle


def tor_betti(M: FiniteLengthModule) -> BettiTable:
    """beta_{i,j} as homology of the Koszul strands tensored with M.

    Built directly from the action matrices; no resolution and no
    minimization is involved, so this is an independent oracle.
    """
    ring, K = M.ring, M.field
    if M.is_zero:
        return BettiTable({})
    n = ring.n
    d = ring.total_weight
    degrees = range(M.min_degree(), M.max_degree() + d + 1)

    def strand(i, j):
        src = [
            (S, b)
            for S in subsets(n, i)
            for b in range(M.dim(j - subset_degree(ring, S)))
        ]
        tgt = [
            (S, b)
            for S in subsets(n, i - 1)
            for b in range(M.dim(j - subset_degree(ring, S)))
        ]
        tgt_index = {key: r for r, key in enumerate(tgt)}
        A = linalg.zeros(K, len(tgt), len(src))
        for ci, (S, b) in enumerate(src):
            jsrc = j - subset_degree(ring, S)
            for l in S:
                sign, S1 = ext_contract(l, S)
                mat = M.act(l, jsrc)
                for bp in range(M.dim(jsrc + ring.weights[l - 1])):
                    v = mat[bp][b]
                    if not v:
                        continue
                    ri = tgt_index.get((S1, bp))
                    if ri is None:
                        continue
                    val = v if sign > 0 else K.neg(v)
                    A[ri][ci] = K.add(A[ri][ci], val)
        return A, len(src)

    counts = {}
    for j in degrees:
        dims = {0: M.dim(j)}
        ranks = {0: 0}
        for i in range(1, n + 1):
            A, srcdim = strand(i, j)
            dims[i] = srcdim
            ranks[i] = linalg.rank(K, A)
        for i in range(n + 1):
            ker = dims[i] - ranks[i]
            h = ker - ranks.get(i + 1, 0)
            if h < 0:
                raise RuntimeError("negative homology dimension")
            if h:
                counts[(i, j)] = h
    return BettiTable(counts)


# ---------------------------------------------------------------------------
# strand verification


@dataclass
class StrandReport:
    degree: int
    ok: bool
    details: dict


def verify_strands(C: FreeComplex, M=None, window=None):
    """Exactness evidence per degree: for each j in the window, check
    that every position is exact and that position-0 homology matches
    M_j.  Evidence only, not a proof."""
    ring, K = C.ring, C.field
    if M is None and C.augmentation is not None:
        M = C.augmentation.module
    if window is None:
        if M is None or M.is_zero:
            raise MathPreconditionError("no module to derive a window from")
        window = (M.min_degree(), M.max_degree() + ring.total_weight + 2)
    lo, hi = window
    reports = []
    for j in range(lo, hi + 1):
        mats = [d.strand(j)[0] for d in C.diffs]
        dims = [
            len(mod.basis_of_degree(ring, j)) for mod in C.modules
        ]
        ranks = [linalg.rank(K, A) for A in mats]
        details = {}
        ok = True
        for pos in range(len(C.modules)):
            din = ranks[pos] if pos < len(ranks) else 0
            if pos == 0:
                if C.augmentation is not None:
                    augmat, _ = C.augmentation.strand(ring, K, C.modules[0], j)
                    raug = linalg.rank(K, augmat)
                    surj = raug == (M.dim(j) if M else 0)
                    exact = (dims[0] - raug) == din
                    details[pos] = {
                        "dim": dims[0],
                        "rank_d1": din,
                        "rank_aug": raug,
                        "H0_matches": surj and exact,
                    }
                    ok = ok and surj and exact
                continue
            dout = ranks[pos - 1]
            ker = dims[pos] - dout
            im = ranks[pos] if pos < len(ranks) else 0
            exact = ker == im
            details[pos] = {"dim": dims[pos], "ker": ker, "im_next": im, "exact": exact}
            ok = ok and exact
        reports.append(StrandReport(j, ok, details))
    return reports


def cokernel_module(C: FreeComplex, window) -> FiniteLengthModule:
    """H_0 of the complex as a concrete module: coker(d_1) degreewise."""
    ring, K = C.ring, C.field
    F0 = C.modules[0]
    d1 = C.diffs[0]
    lo, hi = window
    reps = {}
    images = {}
    bases = {}
    for j in range(lo, hi + 1):
        A, src_basis, tgt_basis = d1.strand(j)
        AT = linalg.transpose(A)
        img = linalg.row_space(K, AT) if AT else []
        images[j] = img
        bases[j] = tgt_basis
        pivots = set()
        dim_amb = len(tgt_basis)
        for row in img:
            pivots.add(next(cc for cc in range(dim_amb) if row[cc]))
        vecs = []
        for cpos in range(dim_amb):
            if cpos in pivots:
                continue
            v = [K.zero] * dim_amb
            v[cpos] = K.one
            vecs.append(v)
        if vecs:
            reps[j] = vecs

    def reduce_mod_image(j, vec):
        img = images.get(j, [])
        w = list(vec)
        for row in img:
            lead = next(cc for cc in range(len(row)) if row[cc])
            if w[lead]:
                f = K.mul(w[lead], K.inv(row[lead]))
                w = [K.sub(a, K.mul(f, b)) for a, b in zip(w, row)]
        return w

    def act_ambient(l, j, vec):
        tgt_j = j + ring.weights[l - 1]
        src_b = bases.get(j, F0.basis_of_degree(ring, j))
        tgt_b = bases.get(tgt_j, F0.basis_of_degree(ring, tgt_j))
        index = {key: i for i, key in enumerate(tgt_b)}
        out = [K.zero] * len(tgt_b)
        for x, (s, u) in zip(vec, src_b):
            if not x:
                continue
            w = list(u)
            w[l - 1] += 1
            pos = index.get((s, tuple(w)))
            if pos is not None:
                out[pos] = K.add(out[pos], x)
        return reduce_mod_image(tgt_j, out) if out else out

    clean = {j: [reduce_mod_image(j, v) for v in vs] for j, vs in reps.items()}
    return module_from_graded_vectors(ring, K, clean, act_ambient)


# ---------------------------------------------------------------------------
# Herzog-Kuhl and the characteristic-2 predicates


def herzog_kuhl(degrees):
    """The pure Betti numbers for a strict degree sequence, with b_0 = 1.

    Solves sum_i (-1)^i b_i d_i^k = 0 for k = 0..c-1 in exact rational
    arithmetic; raises when some entry is not positive.
    """
    degrees = list(degrees)
    if len(degrees) < 2:
        raise MathPreconditionError("need a degree sequence of length >= 1")
    if any(degrees[i] >= degrees[i + 1] for i in range(len(degrees) - 1)):
        raise MathPreconditionError("degree sequence must be strictly increasing")
    c = len(degrees) - 1
    from .fields import Field

    K = Field(None)
    rows = []
    rhs = []
    for k in range(c):
        rows.append(
            [Fraction((-1) ** i * degrees[i] ** k) for i in range(1, c + 1)]
        )
        rhs.append(Fraction(-(degrees[0] ** k)))
    x = linalg.solve(K, rows, rhs)
    if x is None:
        raise AssertionError("Herzog-Kuhl system is singular")
    betti = [Fraction(1)] + list(x)
    if any(b <= 0 for b in betti):
        raise MathPreconditionError(
            "no pure Cohen-Macaulay Betti table with positive entries"
        )
    return betti


def hk_verify(degrees, betti):
    c = len(degrees) - 1
    for k in range(c):
        total = sum(
            (-1) ** i * betti[i] * Fraction(degrees[i]) ** k
            for i in range(c + 1)
        )
        if total != 0:
            return False
    return True


@dataclass
class Char2Spec:
    """Betti-table constraints for the (1, n, n, 1) family in char 2."""

    l: int
    n: int
    m: int
    a_max: int

    def check(self, bt: BettiTable):
        b_up = bt[(self.m + 1, self.m + 2)]
        b_down = bt[(self.m, self.m + 2)]
        selfdual = b_up == b_down
        odd = b_up % 2 == 1 and b_up >= 1
        a = (b_up - 1) // 2 if odd else None
        in_range = a is not None and 0 <= a <= self.a_max
        return {
            "beta_mid_up": b_up,
            "beta_mid_down": b_down,
            "selfdual": selfdual,
            "odd": odd,
            "a": a,
            "a_max": self.a_max,
            "ok": selfdual and odd and in_range,
        }


def char2_constraints(l: int) -> Char2Spec:
    if l < 3:
        raise MathPreconditionError("need l >= 3")
    n = 2**l - 3
    m = (n - 1) // 2
    a_max = (n * comb(n, m)) // 2 - comb(n, m - 1) - 1
    return Char2Spec(l, n, m, a_max)


def obstructed_degree_sequence(l: int):
    """The printed family of degree sequences with no pure CM resolution."""
    if l < 2:
        raise MathPreconditionError("need l >= 2")
    half = 2 ** (l - 1)
    seq = [0]
    seq.extend(range(half + 1, 2**l))
    seq.extend(range(2**l + 1, 2**l + half))
    seq.append(2 ** (l + 1))
    out = tuple(seq)
    if any(out[i] >= out[i + 1] for i in range(len(out) - 1)):
        raise AssertionError("sequence is not strictly increasing")
    return out
