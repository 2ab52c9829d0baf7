"""The .dpm file format for divided-power matrices.

Line-oriented UTF-8 with # comments:

    field <p|QQ>
    vars <n>
    weights <d1> ... <dn>          # optional, default all 1
    rowtwists <a1> ... <aq>
    coltwists <b1> ... <bp>
    entry <i> <j> : <dp-poly>      # 1-based; omitted entries are zero

A dp-poly is a signed sum of terms; a term is an optional coefficient
(integer, or a/b for exact rationals), an optional '*', and a product
of X<k>^(<e>) factors, where X<k> abbreviates X<k>^(1).
"""

from __future__ import annotations

import re
from fractions import Fraction

from .dpmatrix import DPMatrix
from .errors import HomogeneityError, ParseError
from .fields import Field, is_prime
from .ring import RingSpec, phom_degree, poly_str

_TOKEN = re.compile(
    r"\s*(?:(?P<coeff>\d+(?:/\d+)?)|(?P<var>X(?P<vidx>\d+)(?:\^\((?P<exp>-?\d+)\))?)"
    r"|(?P<sign>[+-])|(?P<star>\*))"
)


def parse_dp_poly(text, ring, K, line=None):
    """Parse one divided-power polynomial."""
    pos = 0
    n = ring.n
    terms = []
    sign = 1
    cur = None  # (coeff, exps) of the term being read

    def flush():
        nonlocal cur, sign
        if cur is not None:
            terms.append((sign * cur[0], tuple(cur[1])))
            cur = None
            sign = 1

    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"cannot read dp-poly at: {text[pos:pos + 20]!r}", line)
        pos = m.end()
        if m.group("sign"):
            if cur is not None:
                flush()
                sign = 1 if m.group("sign") == "+" else -1
            else:
                sign = sign * (1 if m.group("sign") == "+" else -1)
        elif m.group("coeff"):
            c = m.group("coeff")
            value = Fraction(c) if "/" in c else int(c)
            if cur is not None:
                raise ParseError("coefficient must lead its term", line)
            cur = [value, [0] * n]
        elif m.group("star"):
            if cur is None:
                raise ParseError("stray '*'", line)
        elif m.group("var"):
            k = int(m.group("vidx"))
            if not (1 <= k <= n):
                raise ParseError(f"variable X{k} out of range 1..{n}", line)
            e = int(m.group("exp")) if m.group("exp") else 1
            if e < 0:
                raise ParseError("negative divided-power exponent", line)
            if cur is None:
                cur = [1, [0] * n]
            cur[1][k - 1] += e
    if cur is not None:
        flush()
    elif sign == -1:
        raise ParseError("dangling sign", line)
    poly = {}
    for coeff, exps in terms:
        c = K.of(coeff) if not isinstance(coeff, Fraction) else K.of(coeff)
        s = K.add(poly.get(exps, K.zero), c)
        if s:
            poly[exps] = s
        else:
            poly.pop(exps, None)
    return poly


def parse_dpmatrix(text) -> DPMatrix:
    field = None
    n = None
    weights = None
    rowtwists = None
    coltwists = None
    entry_lines = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.split("#", 1)[0].strip()
        if not stripped:
            continue
        parts = stripped.split(None, 1)
        keyword = parts[0]
        rest = parts[1] if len(parts) > 1 else ""
        if keyword == "field":
            if rest.strip() == "QQ":
                field = Field(None)
            else:
                try:
                    p = int(rest.strip())
                except ValueError:
                    raise ParseError(f"bad field spec {rest!r}", lineno)
                if not is_prime(p):
                    raise ParseError(f"field modulus {p} is not prime", lineno)
                field = Field(p)
        elif keyword == "vars":
            try:
                n = int(rest.strip())
            except ValueError:
                raise ParseError(f"bad vars count {rest!r}", lineno)
            if n < 1:
                raise ParseError("vars must be >= 1", lineno)
        elif keyword == "weights":
            try:
                weights = tuple(int(w) for w in rest.split())
            except ValueError:
                raise ParseError(f"bad weights {rest!r}", lineno)
        elif keyword == "rowtwists":
            try:
                rowtwists = tuple(int(w) for w in rest.split())
            except ValueError:
                raise ParseError(f"bad rowtwists {rest!r}", lineno)
        elif keyword == "coltwists":
            try:
                coltwists = tuple(int(w) for w in rest.split())
            except ValueError:
                raise ParseError(f"bad coltwists {rest!r}", lineno)
        elif keyword == "entry":
            entry_lines.append((lineno, rest))
        else:
            raise ParseError(f"unknown directive {keyword!r}", lineno)
    if field is None:
        raise ParseError("missing 'field' directive")
    if n is None:
        raise ParseError("missing 'vars' directive")
    if rowtwists is None:
        raise ParseError("missing 'rowtwists' directive")
    if coltwists is None:
        raise ParseError("missing 'coltwists' directive")
    if weights is None:
        weights = (1,) * n
    if len(weights) != n:
        raise ParseError(f"expected {n} weights, got {len(weights)}")
    if any(w < 1 for w in weights):
        raise ParseError("weights must be positive")
    ring = RingSpec(weights)
    q, p = len(rowtwists), len(coltwists)
    entries = [[{} for _ in range(p)] for _ in range(q)]
    seen = set()
    for lineno, rest in entry_lines:
        if ":" not in rest:
            raise ParseError("entry needs '<i> <j> : <dp-poly>'", lineno)
        head, body = rest.split(":", 1)
        try:
            i_s, j_s = head.split()
            i, j = int(i_s), int(j_s)
        except ValueError:
            raise ParseError(f"bad entry position {head!r}", lineno)
        if not (1 <= i <= q and 1 <= j <= p):
            raise ParseError(
                f"entry position ({i},{j}) outside {q}x{p}", lineno
            )
        if (i, j) in seen:
            raise ParseError(f"duplicate entry ({i},{j})", lineno)
        seen.add((i, j))
        poly = parse_dp_poly(body.strip(), ring, field, line=lineno)
        if poly:
            want = rowtwists[i - 1] - coltwists[j - 1]
            got = phom_degree(ring, poly, dp=True)
            if got != want:
                raise HomogeneityError(
                    f"entry ({i},{j}) has degree {got}, twists demand {want}",
                    lineno,
                )
        entries[i - 1][j - 1] = poly
    return DPMatrix(ring, field, rowtwists, coltwists, entries)


def render_dpmatrix(P: DPMatrix) -> str:
    lines = []
    K = P.field
    lines.append(f"field {'QQ' if K.p is None else K.p}")
    lines.append(f"vars {P.ring.n}")
    if set(P.ring.weights) != {1}:
        lines.append("weights " + " ".join(str(w) for w in P.ring.weights))
    lines.append("rowtwists " + " ".join(str(a) for a in P.row_twists))
    lines.append("coltwists " + " ".join(str(b) for b in P.col_twists))
    for i in range(P.q):
        for j in range(P.p):
            e = P.entries[i][j]
            if e:
                lines.append(f"entry {i + 1} {j + 1} : {poly_str(P.ring, K, e, dp=True)}")
    return "\n".join(lines) + "\n"
