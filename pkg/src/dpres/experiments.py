"""Pipelines behind the CLI: resolve, Gorenstein checks, seeded
experiments, Herzog-Kuhl reports.  Everything is deterministic given
(input, config, seed); reports render identically as text and JSON.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field

from . import homology, nielsen
from .dpmatrix import DPMatrix, annihilator, is_symmetric, quotient_module
from .errors import MathPreconditionError, SymmetricMinimizationUnsupported
from .fields import Field
from .flmodule import gorenstein_pairing, hilbert_function
from .homology import (
    BettiTable,
    betti_table,
    char2_constraints,
    herzog_kuhl,
    hk_verify,
    minimize,
    minimize_symmetric,
    obstructed_degree_sequence,
    tor_betti,
    verify_strands,
)
from .ring import RingSpec, dp_monomials_of_degree


@dataclass
class ExperimentConfig:
    name: str
    p: int | None = 2
    l: int = 3
    socle: int = 3
    trials: int = 20
    seed: int = 0
    retry_cap: int = 100


@dataclass
class Report:
    kind: str
    data: dict = field(default_factory=dict)

    def to_json(self) -> str:
        return json.dumps(self.data, indent=2, sort_keys=True, default=str) + "\n"

    def to_text(self) -> str:
        return _render_text(self.kind, self.data)

    def to_csv(self) -> str:
        bt = self.data.get("betti")
        if bt is None:
            raise MathPreconditionError("no Betti table in this report")
        lines = ["i,j,count"]
        for rec in bt:
            lines.append(f"{rec['i']},{rec['j']},{rec['count']}")
        return "\n".join(lines) + "\n"


def _betti_records(bt: BettiTable):
    return bt.to_records()


def _render_betti_text(records):
    bt = BettiTable({(r["i"], r["j"]): r["count"] for r in records})
    return bt.render()


def _render_text(kind, data):
    lines = [f"== {kind} =="]

    def emit(key, value, indent=0):
        pad = "  " * indent
        if isinstance(value, dict):
            lines.append(f"{pad}{key}:")
            for k2, v2 in value.items():
                emit(str(k2), v2, indent + 1)
        elif key == "betti":
            lines.append(f"{pad}betti table (rows are j - i):")
            for row in _render_betti_text(value).splitlines():
                lines.append(f"{pad}  {row}")
        elif isinstance(value, list) and value and isinstance(value[0], dict):
            lines.append(f"{pad}{key}:")
            for item in value:
                flat = ", ".join(f"{k2}={v2}" for k2, v2 in item.items())
                lines.append(f"{pad}  - {flat}")
        else:
            lines.append(f"{pad}{key}: {value}")

    for key, value in data.items():
        emit(key, value)
    return "\n".join(lines) + "\n"


def random_dp_form(ring, K, weight, rng):
    """Uniform divided-power form of degree -weight; never zero."""
    monos = dp_monomials_of_degree(ring, -weight)
    while True:
        poly = {}
        for u in monos:
            c = K.random(rng)
            if c:
                poly[u] = c
        if poly:
            return poly


def cyclic_dp_matrix(ring, K, f, socle_degree):
    """1x1 matrix (f) presenting R/Ann(f) with generator in degree 0."""
    return DPMatrix(ring, K, (-socle_degree,), (0,), [[f]])


def resolve_module(M, seed=0, want_minimal=True):
    """Resolution route shared by the commands.

    Returns (minimal_or_raw complex, info dict).  Modules with a dual
    pairing and odd n take the selfdual route; symmetric minimization
    falls back to plain cancellation when refused (characteristic 2
    with a non-alternating middle form).
    """
    info = {}
    ring = M.ring
    n = ring.n
    pairing = gorenstein_pairing(M, seed=seed)
    info["gorenstein"] = (
        {"s": pairing.s, "epsilon": pairing.epsilon} if pairing else None
    )
    if pairing is not None and n % 2 == 1:
        m = (n - 1) // 2
        C = nielsen.selfdual_resolution(M, pairing)
        info["route"] = "selfdual"
        info["middle_sign"] = pairing.epsilon * ((-1) ** m)
        if not want_minimal:
            return C, info
        try:
            Cmin = minimize_symmetric(C, m, pairing.epsilon)
            info["minimization"] = "symmetric"
        except SymmetricMinimizationUnsupported:
            Cmin = minimize(C)
            info["minimization"] = "plain (symmetric refused in char 2)"
        defect = nielsen.middle_symmetry_defect(Cmin, m, pairing.epsilon)
        info["middle_symmetric"] = defect.is_zero()
        return Cmin, info
    C = nielsen.nielsen_complex(M)
    info["route"] = "nielsen"
    if not want_minimal:
        return C, info
    return minimize(C), info


def run_resolve(P: DPMatrix, no_minimize=False, seed=0) -> Report:
    M = quotient_module(P)
    data = {
        "ring": {"n": P.ring.n, "weights": list(P.ring.weights)},
        "field": repr(P.field),
        "hilbert_function": {str(j): d for j, d in hilbert_function(M).items()},
        "dim": M.total_dim,
    }
    sym = is_symmetric(P)
    data["symmetric_matrix"] = (
        {"s": sym[0], "epsilon": sym[1]} if sym else None
    )
    if M.is_zero:
        data["note"] = "zero module"
        return Report("resolve", data)
    C, info = resolve_module(M, seed=seed, want_minimal=not no_minimize)
    data.update(info)
    data["ranks"] = C.ranks()
    if not no_minimize:
        data["betti"] = _betti_records(betti_table(C))
    return Report("resolve", data)


def run_check_gorenstein(P: DPMatrix, seed=0) -> Report:
    M = quotient_module(P)
    data = {
        "hilbert_function": {str(j): d for j, d in hilbert_function(M).items()},
    }
    sym = is_symmetric(P)
    data["symmetric_matrix"] = {"s": sym[0], "epsilon": sym[1]} if sym else None
    if M.is_zero:
        data["gorenstein"] = None
        data["verdict"] = "zero module"
        return Report("check-gorenstein", data)
    pairing = gorenstein_pairing(M, seed=seed)
    data["gorenstein"] = (
        {"s": pairing.s, "epsilon": pairing.epsilon} if pairing else None
    )
    data["verdict"] = "gorenstein" if pairing else "no self-adjoint pairing found"
    return Report("check-gorenstein", data)


def run_verify(P: DPMatrix, window=None, seed=0) -> Report:
    M = quotient_module(P)
    if M.is_zero:
        return Report("verify", {"note": "zero module"})
    C, info = resolve_module(M, seed=seed, want_minimal=False)
    reports = verify_strands(C, M, window=window)
    data = {
        "route": info["route"],
        "window": [reports[0].degree, reports[-1].degree],
        "degrees": [
            {"degree": r.degree, "ok": r.ok} for r in reports
        ],
        "all_ok": all(r.ok for r in reports),
    }
    return Report("verify", data)


def _char2_trial(config: ExperimentConfig, ring, K, spec, index):
    rng = random.Random((config.seed * 1000003 + index) & 0x7FFFFFFF)
    M = None
    for _ in range(config.retry_cap):
        f = random_dp_form(ring, K, config.socle, rng)
        cand = quotient_module(cyclic_dp_matrix(ring, K, f, config.socle))
        hf = hilbert_function(cand)
        if hf == {0: 1, 1: spec.n, 2: spec.n, 3: 1}:
            M = cand
            break
    if M is None:
        return {"trial": index, "degenerate": True}
    pairing = gorenstein_pairing(M, seed=config.seed)
    m = (ring.n - 1) // 2
    C = nielsen.selfdual_resolution(M, pairing)
    try:
        Cmin = minimize_symmetric(C, m, pairing.epsilon)
        route = "symmetric"
    except SymmetricMinimizationUnsupported:
        Cmin = minimize(C)
        route = "plain"
    bt = betti_table(Cmin)
    verdict = spec.check(bt)
    pure = _is_pure_table(bt, ring.n)
    return {
        "trial": index,
        "degenerate": False,
        "hilbert_function": {str(j): d for j, d in hilbert_function(M).items()},
        "minimization": route,
        "betti": _betti_records(bt),
        "char2_check": verdict,
        "pure": pure,
    }


def _is_pure_table(bt: BettiTable, n):
    by_index = {}
    for (i, j), c in bt.counts.items():
        by_index.setdefault(i, set()).add(j)
    return all(len(js) == 1 for js in by_index.values())


def run_char2_experiment(config: ExperimentConfig) -> Report:
    spec = char2_constraints(config.l)
    n = spec.n
    ring = RingSpec((1,) * n)
    K = Field(config.p)
    if config.trials < 1:
        raise MathPreconditionError("trials must be >= 1")
    trials = [
        _char2_trial(config, ring, K, spec, idx) for idx in range(config.trials)
    ]
    ok = [t for t in trials if not t.get("degenerate")]
    passing = sum(1 for t in ok if t["char2_check"]["ok"])
    pure = sum(1 for t in ok if t["pure"])
    mid_counts = {}
    for t in ok:
        b = t["char2_check"]["beta_mid_up"]
        mid_counts[str(b)] = mid_counts.get(str(b), 0) + 1
    data = {
        "config": {
            "l": config.l,
            "n": n,
            "field": repr(K),
            "socle": config.socle,
            "trials": config.trials,
            "seed": config.seed,
        },
        "constraints": {
            "m": spec.m,
            "a_max": spec.a_max,
            "demand": f"beta_{spec.m + 1},{spec.m + 2} == beta_{spec.m},{spec.m + 2}, odd",
        },
        "trials": trials,
        "summary": {
            "completed": len(ok),
            "degenerate": config.trials - len(ok),
            "parity_pass": passing,
            "parity_fraction": f"{passing}/{len(ok)}" if ok else "0/0",
            "pure_tables": pure,
            "middle_betti_distribution": dict(sorted(mid_counts.items())),
        },
    }
    return Report("experiment-char2", data)


def run_hk(degrees) -> Report:
    betti = herzog_kuhl(degrees)
    assert hk_verify(degrees, betti)
    data = {
        "degrees": list(degrees),
        "betti": [
            {"i": i, "j": degrees[i], "count": str(b)} for i, b in enumerate(betti)
        ],
        "normalized": [str(b) for b in betti],
        "equations_verified": True,
    }
    note = _obstruction_note(tuple(degrees))
    if note:
        data["obstruction"] = note
    return Report("hk", data)


def _obstruction_note(degrees):
    for l in range(2, 12):
        if obstructed_degree_sequence(l) == degrees:
            c = len(degrees) - 1
            mid = (c - 1) // 2
            betti = herzog_kuhl(degrees)
            b1, b2 = betti[mid], betti[mid + 1]
            parities = (
                f"beta_{mid} = {b1} and beta_{mid + 1} = {b2} are "
                f"{'even' if b1 % 2 == 0 else 'non-integral or odd'}"
            )
            return {
                "family": f"l={l}",
                "claim": (
                    "no graded Cohen-Macaulay factor ring of any polynomial "
                    "ring has a pure minimal free resolution with this "
                    "degree sequence"
                ),
                "middle_pair": {
                    f"beta_{mid}": str(b1),
                    f"beta_{mid + 1}": str(b2),
                },
                "parity_diagnostic": (
                    "the paired middle Betti numbers of a selfdual minimal "
                    "resolution must be odd; here " + parities
                ),
            }
        if obstructed_degree_sequence(l)[-1] > max(degrees):
            break
    return None
