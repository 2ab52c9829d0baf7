"""The weighted polynomial ring and its divided-power graded dual.

Monomials are exponent tuples.  A polynomial (or divided-power
polynomial) is a dict mapping exponent tuples to nonzero scalars; the
empty dict is zero.  A polynomial term x^u has weighted degree
sum(u_l * d_l), a divided-power term X^(u) has the negated degree.
Divided powers are only ever added, scaled, and contracted against ring
elements; there is no product of two divided powers.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import ConfigurationError


@dataclass(frozen=True)
class RingSpec:
    """k[x_1..x_n] with positive integer weights deg x_l = d_l."""

    weights: tuple[int, ...]

    def __post_init__(self):
        ws = tuple(self.weights)
        if not ws:
            raise ValueError("need at least one variable")
        if any((not isinstance(w, int)) or w < 1 for w in ws):
            raise ValueError(f"weights must be positive integers, got {ws}")
        object.__setattr__(self, "weights", ws)

    @property
    def n(self) -> int:
        return len(self.weights)

    @property
    def total_weight(self) -> int:
        return sum(self.weights)

    def mono_degree(self, u) -> int:
        return sum(e * w for e, w in zip(u, self.weights))

    def zero_exps(self) -> tuple[int, ...]:
        return (0,) * self.n


def standard_ring(n: int) -> RingSpec:
    return RingSpec((1,) * n)


_MONO_CACHE: dict[tuple, tuple] = {}


def _grevlex_key(u):
    # all listed monomials share one weighted degree; order by total
    # exponent first (descending), then reverse-lexicographically
    return (-sum(u), tuple(reversed(u)))


def monomials_of_degree(ring: RingSpec, j: int):
    """All exponent tuples of weighted degree exactly j, in a fixed order."""
    key = (ring.weights, j)
    hit = _MONO_CACHE.get(key)
    if hit is not None:
        return hit
    if j < 0:
        _MONO_CACHE[key] = ()
        return ()
    out = []
    ws = ring.weights
    n = len(ws)

    def walk(idx, remaining, prefix):
        if idx == n - 1:
            if remaining % ws[idx] == 0:
                out.append(prefix + (remaining // ws[idx],))
            return
        w = ws[idx]
        for e in range(remaining // w + 1):
            walk(idx + 1, remaining - e * w, prefix + (e,))

    walk(0, j, ())
    out.sort(key=_grevlex_key)
    result = tuple(out)
    _MONO_CACHE[key] = result
    return result


def dp_monomials_of_degree(ring: RingSpec, j: int):
    """Divided-power monomials of degree j (j <= 0)."""
    return monomials_of_degree(ring, -j)


def dim_of_degree(ring: RingSpec, j: int) -> int:
    return len(monomials_of_degree(ring, j))


# ---------------------------------------------------------------------------
# polynomial dicts


def pzero():
    return {}


def pconst(ring, K, c):
    c = K.of(c) if isinstance(c, int) else c
    return {ring.zero_exps(): c} if c else {}


def pvar(ring, K, l, c=None):
    """c * x_l (1-based l)."""
    c = K.one if c is None else c
    if not c:
        return {}
    exps = [0] * ring.n
    exps[l - 1] = 1
    return {tuple(exps): c}


def pmono(ring, K, u, c=None):
    c = K.one if c is None else c
    return {tuple(u): c} if c else {}


def pis_zero(a):
    return not a


def padd(K, a, b):
    out = dict(a)
    for u, c in b.items():
        s = K.add(out.get(u, K.zero), c)
        if s:
            out[u] = s
        else:
            out.pop(u, None)
    return out


def pneg(K, a):
    return {u: K.neg(c) for u, c in a.items()}


def psub(K, a, b):
    out = dict(a)
    for u, c in b.items():
        s = K.sub(out.get(u, K.zero), c)
        if s:
            out[u] = s
        else:
            out.pop(u, None)
    return out


def pscale(K, c, a):
    if not c:
        return {}
    return {u: K.mul(c, x) for u, x in a.items()}


def pmul(K, a, b):
    if not a or not b:
        return {}
    out = {}
    zero = K.zero
    for u, cu in a.items():
        for v, cv in b.items():
            w = tuple(x + y for x, y in zip(u, v))
            s = K.add(out.get(w, zero), K.mul(cu, cv))
            if s:
                out[w] = s
            else:
                out.pop(w, None)
    return out


def pmul_mono(K, a, u, c=None):
    """a * c*x^u, a fast special case of pmul."""
    if not a:
        return {}
    if c is not None and not c:
        return {}
    out = {}
    for v, cv in a.items():
        w = tuple(x + y for x, y in zip(u, v))
        out[w] = cv if c is None else K.mul(c, cv)
    return out


def pequal(a, b):
    return a == b


def phom_degree(ring, a, dp=False):
    """Degree of a homogeneous polynomial dict; None for zero.

    Raises ValueError if the terms do not share one degree.
    """
    if not a:
        return None
    degs = {ring.mono_degree(u) for u in a}
    if len(degs) != 1:
        raise ValueError(f"inhomogeneous polynomial, degrees {sorted(degs)}")
    d = degs.pop()
    return -d if dp else d


def pconstant_value(ring, a):
    """The scalar c when a == c * 1, else None (zero gives None)."""
    if len(a) != 1:
        return None
    u, c = next(iter(a.items()))
    if any(u):
        return None
    return c


# ---------------------------------------------------------------------------
# contraction and the apolarity pairing


def contract(K, phi, f):
    """Contraction of a divided power f by a ring element phi.

    Termwise x^u . X^(v) = X^(v-u), dropping terms with any negative
    component.  Degrees: deg(phi) = i and deg(f) = -j give degree -j+i.
    """
    if not phi or not f:
        return {}
    out = {}
    zero = K.zero
    for u, cu in phi.items():
        for v, cv in f.items():
            w = tuple(y - x for x, y in zip(u, v))
            if any(e < 0 for e in w):
                continue
            s = K.add(out.get(w, zero), K.mul(cu, cv))
            if s:
                out[w] = s
            else:
                out.pop(w, None)
    return out


def dp_pairing(K, phi, f):
    """<phi, f> = f(phi) for phi of degree j against f of degree -j."""
    s = K.zero
    small, big = (phi, f) if len(phi) <= len(f) else (f, phi)
    for u, c in small.items():
        d = big.get(u)
        if d:
            s = K.add(s, K.mul(c, d))
    return s


def check_same_context(ring_a, field_a, ring_b, field_b):
    if ring_a != ring_b or field_a != field_b:
        raise ConfigurationError(
            f"mismatched contexts: ({ring_a}, {field_a}) vs ({ring_b}, {field_b})"
        )


# ---------------------------------------------------------------------------
# rendering


def _coeff_str(K, c):
    if K.is_rational:
        return str(c)
    return str(c)


def poly_str(ring, K, a, dp=False):
    """Render a polynomial dict; divided powers follow the .dpm grammar."""
    if not a:
        return "0"
    parts = []
    for u in sorted(a, key=_grevlex_key):
        c = a[u]
        factors = []
        for idx, e in enumerate(u, start=1):
            if e == 0:
                continue
            if dp:
                factors.append(f"X{idx}" if e == 1 else f"X{idx}^({e})")
            else:
                factors.append(f"x{idx}" if e == 1 else f"x{idx}^{e}")
        body = ("" if dp else "*").join(factors)
        cs = _coeff_str(K, c)
        if not body:
            parts.append(cs)
        elif cs == "1":
            parts.append(body)
        elif cs == "-1" and K.is_rational:
            parts.append(f"-{body}")
        else:
            parts.append(f"{cs}*{body}")
    out = parts[0]
    for term in parts[1:]:
        if term.startswith("-"):
            out += " - " + term[1:]
        else:
            out += " + " + term
    return out
