"""Graded free modules, homogeneous matrices between them, and complexes.

Twist convention: a summand R(-t) is recorded as the integer t, the
degree of its generator.  A degree-zero map F -> G is stored as a sparse
dict {(row, col): poly} where the entry at (r, c) is homogeneous of
degree source.twists[c] - target.twists[r].

Duals are taken against R(-total): the dual of a generator of degree t
is a generator of degree total - t carrying the same label, in the same
position.  Matrix duals are then plain transposes.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import linalg, ring as rg


@dataclass(frozen=True)
class FreeModule:
    twists: tuple[int, ...]
    labels: tuple = None

    def __post_init__(self):
        object.__setattr__(self, "twists", tuple(self.twists))
        if self.labels is None:
            object.__setattr__(self, "labels", tuple(range(len(self.twists))))
        else:
            object.__setattr__(self, "labels", tuple(self.labels))
        if len(self.labels) != len(self.twists):
            raise ValueError("labels and twists must be parallel")

    @property
    def rank(self) -> int:
        return len(self.twists)

    def dual(self, total: int) -> "FreeModule":
        return FreeModule(tuple(total - t for t in self.twists), self.labels)

    def twist_multiset(self):
        out = {}
        for t in self.twists:
            out[t] = out.get(t, 0) + 1
        return out

    def basis_of_degree(self, ring, j):
        """Degree-j basis [(gen index, monomial exponents)]."""
        out = []
        for s, t in enumerate(self.twists):
            for u in rg.monomials_of_degree(ring, j - t):
                out.append((s, u))
        return out


class GradedFreeMatrix:
    """A degree-zero homogeneous map between graded free modules."""

    __slots__ = ("ring", "field", "source", "target", "entries")

    def __init__(self, ring, field, source, target, entries, check=True):
        self.ring = ring
        self.field = field
        self.source = source
        self.target = target
        clean = {}
        for (r, c), e in entries.items():
            if not e:
                continue
            clean[(r, c)] = e
        self.entries = clean
        if check:
            self._check()

    def _check(self):
        for (r, c), e in self.entries.items():
            if not (0 <= r < self.target.rank and 0 <= c < self.source.rank):
                raise ValueError(f"entry index ({r},{c}) out of range")
            want = self.source.twists[c] - self.target.twists[r]
            got = rg.phom_degree(self.ring, e)
            if got != want:
                raise ValueError(
                    f"entry ({r},{c}) has degree {got}, twists demand {want}"
                )

    def entry(self, r, c):
        return self.entries.get((r, c), {})

    def rows_map(self):
        rows = {}
        for (r, c), e in self.entries.items():
            rows.setdefault(r, {})[c] = e
        return rows

    def cols_map(self):
        cols = {}
        for (r, c), e in self.entries.items():
            cols.setdefault(c, {})[r] = e
        return cols

    def is_zero(self):
        return not self.entries

    def compose(self, other: "GradedFreeMatrix") -> "GradedFreeMatrix":
        """self o other, for other: A -> B and self: B -> C."""
        if other.target.twists != self.source.twists:
            raise ValueError("composition shape mismatch")
        K = self.field
        other_rows = other.rows_map()
        acc = {}
        for (r, k), e1 in self.entries.items():
            row = other_rows.get(k)
            if not row:
                continue
            for c, e2 in row.items():
                prod = rg.pmul(K, e1, e2)
                if not prod:
                    continue
                cur = acc.get((r, c))
                acc[(r, c)] = rg.padd(K, cur, prod) if cur else prod
        return GradedFreeMatrix(self.ring, K, other.source, self.target, acc, check=False)

    def add(self, other):
        K = self.field
        acc = dict(self.entries)
        for key, e in other.entries.items():
            cur = acc.get(key)
            s = rg.padd(K, cur, e) if cur else e
            if s:
                acc[key] = s
            else:
                acc.pop(key, None)
        return GradedFreeMatrix(self.ring, K, self.source, self.target, acc, check=False)

    def scale(self, c):
        K = self.field
        return GradedFreeMatrix(
            self.ring, K, self.source, self.target,
            {key: rg.pscale(K, c, e) for key, e in self.entries.items()},
            check=False,
        )

    def neg(self):
        return self.scale(self.field.neg(self.field.one))

    def dual(self, total: int) -> "GradedFreeMatrix":
        """Transpose against R(-total): (F -> G) becomes (G^v -> F^v)."""
        src = self.target.dual(total)
        tgt = self.source.dual(total)
        entries = {(c, r): e for (r, c), e in self.entries.items()}
        return GradedFreeMatrix(self.ring, self.field, src, tgt, entries, check=False)

    def flip(self) -> "GradedFreeMatrix":
        """Entry transpose of a square matrix, keeping source and target.

        Meaningful when source is the dual of target with matching labels,
        so that (r, c) and (c, r) refer to paired basis elements.
        """
        if self.source.rank != self.target.rank:
            raise ValueError("flip of a non-square matrix")
        entries = {(c, r): e for (r, c), e in self.entries.items()}
        return GradedFreeMatrix(self.ring, self.field, self.source, self.target, entries, check=False)

    def equal(self, other):
        return (
            self.source.twists == other.source.twists
            and self.target.twists == other.target.twists
            and self.entries == other.entries
        )

    def constant_matrix(self):
        """Dense scalar matrix; raises if any entry is non-constant."""
        K = self.field
        A = linalg.zeros(K, self.target.rank, self.source.rank)
        for (r, c), e in self.entries.items():
            v = rg.pconstant_value(self.ring, e)
            if v is None:
                raise ValueError(f"entry ({r},{c}) is not constant")
            A[r][c] = v
        return A

    def strand(self, j):
        """Scalar matrix of the degree-j strand.

        Returns (matrix, source_basis, target_basis) with bases as lists
        of (generator index, monomial exponents).
        """
        K = self.field
        src_basis = self.source.basis_of_degree(self.ring, j)
        tgt_basis = self.target.basis_of_degree(self.ring, j)
        tgt_index = {key: i for i, key in enumerate(tgt_basis)}
        A = linalg.zeros(K, len(tgt_basis), len(src_basis))
        cols = self.cols_map()
        for ci, (s, u) in enumerate(src_basis):
            col = cols.get(s)
            if not col:
                continue
            for r, e in col.items():
                for v, cv in e.items():
                    w = tuple(x + y for x, y in zip(u, v))
                    ri = tgt_index.get((r, w))
                    if ri is not None:
                        A[ri][ci] = K.add(A[ri][ci], cv)
        return A, src_basis, tgt_basis


def zero_matrix(ring, field, source, target):
    return GradedFreeMatrix(ring, field, source, target, {}, check=False)


@dataclass
class Augmentation:
    """Surjection F_0 ->> M given by the images of the free generators.

    vectors[s] is the coordinate vector of the image of generator s in
    the degree-(twists[s]) component of M.
    """

    module: object
    vectors: tuple

    def strand(self, ring, K, F0, j):
        """Matrix of (F_0)_j -> M_j over the monomial basis of F_0."""
        M = self.module
        basis = F0.basis_of_degree(ring, j)
        A = linalg.zeros(K, M.dim(j), len(basis))
        for ci, (s, u) in enumerate(basis):
            vec = M.act_mono(u, F0.twists[s], self.vectors[s])
            for ri, x in enumerate(vec):
                if x:
                    A[ri][ci] = x
        return A, basis


class FreeComplex:
    """Modules F_0..F_L with differentials diffs[k]: F_{k+1} -> F_k.

    Consecutive composites vanish; an optional augmentation realizes
    H_0 as a concrete finite-length module.
    """

    def __init__(self, ring, field, modules, diffs, augmentation=None, check=True):
        self.ring = ring
        self.field = field
        self.modules = list(modules)
        self.diffs = list(diffs)
        self.augmentation = augmentation
        if check:
            self.validate()

    @property
    def length(self):
        return len(self.modules) - 1

    def ranks(self):
        return [m.rank for m in self.modules]

    def validate(self):
        for k, d in enumerate(self.diffs):
            if d.source.twists != self.modules[k + 1].twists:
                raise ValueError(f"differential {k + 1} source mismatch")
            if d.target.twists != self.modules[k].twists:
                raise ValueError(f"differential {k + 1} target mismatch")
            d._check()
        for k in range(len(self.diffs) - 1):
            comp = self.diffs[k].compose(self.diffs[k + 1])
            if not comp.is_zero():
                raise ValueError(f"d_{k + 1} o d_{k + 2} != 0")
        if self.augmentation is not None and self.diffs:
            if not self._aug_composite_zero():
                raise ValueError("augmentation o d_1 != 0")

    def _aug_composite_zero(self):
        aug = self.augmentation
        K = self.field
        M = aug.module
        d1 = self.diffs[0]
        F0 = self.modules[0]
        cols = d1.cols_map()
        for c in range(d1.source.rank):
            col = cols.get(c)
            if not col:
                continue
            total = None
            for r, e in col.items():
                for u, cu in e.items():
                    moved = M.act_mono(u, F0.twists[r], aug.vectors[r])
                    term = [K.mul(cu, x) for x in moved]
                    total = term if total is None else [K.add(a, b) for a, b in zip(total, term)]
            if total is not None and any(total):
                return False
        return True

    def strand_matrices(self, j):
        """Scalar matrices of every differential's degree-j strand."""
        return [d.strand(j)[0] for d in self.diffs]
