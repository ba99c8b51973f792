"""CSV schemas and row builders for the command-line reports.

Every report starts with a ``#`` comment echoing the run configuration,
followed by a header row. Numbers are printed with a digit count derived from
the working precision so output is byte-stable for a fixed configuration.
"""

from __future__ import annotations

import csv
import io
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from .bfree import (
    build_exceptional_set,
    erdos_density,
    find_negative_prime_power,
    lower_density_witness,
    prime_squares,
    sieve_bfree,
)
from .eigenform import EigenformData
from .fourier import RayIndex, fourier_along_ray, ray_sign_report
from .pairs import ZeroPolicy, pair_local_report, sign_disagreement_density
from .precision import PrecisionContext
from .satake import SatakeClass, classify
from .spinor import SpinorForm

SATAKE_COLUMNS = ["p", "index", "beta_re", "beta_im", "modulus", "pair",
                  "class", "residual[rel p^(4k-6)]"]
PAIR_COLUMNS = ["record", "p", "r", "c_r[normalized]", "g_r", "g_r_residue",
                "tail_max", "tail_ok", "tempered", "distinct", "min_gap", "sign_changes"]
DENSITY_COLUMNS = ["X", "count", "considered", "excluded_zero", "density",
                   "zero_policy", "zero_tol"]
BFREE_COLUMNS = ["mode", "bound", "x", "bset_size", "count", "fraction", "erdos_density",
                 "reciprocal_sum", "p0", "t", "witness_count", "witness_fraction"]
RAY_COLUMNS = ["n", "A_nT0[units of A(T0)]", "sign"]
RAY_PAIR_COLUMNS = ["r", "A_F*A_G(p^r T0)", "sign", "change"]


@dataclass(frozen=True)
class RunConfig:
    precision: int = 192
    tol_roundtrip: float = 1e-20
    tol_classify: float = 1e-12
    tol_degree: float = 1e-18
    seed: int | None = None
    jobs: int = 1

    @property
    def ctx(self) -> PrecisionContext:
        return PrecisionContext(self.precision, self.tol_roundtrip, self.tol_classify, self.tol_degree)

    def echo(self, command: str, **extra) -> str:
        items = {
            "precision": self.precision,
            "tol_roundtrip": repr(self.tol_roundtrip),
            "tol_classify": repr(self.tol_classify),
            "tol_degree": repr(self.tol_degree),
            "seed": self.seed,
        }
        items.update(extra)
        return f"# siegelsigns {command} " + " ".join(f"{k}={v}" for k, v in items.items())


def render_csv(echo: str, columns: list[str], rows: list[list]) -> str:
    buf = io.StringIO()
    buf.write(echo + "\n")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    writer.writerows(rows)
    return buf.getvalue()


def ordered_map(fn, items, jobs: int):
    """map() over a bounded process pool; results keep input order."""
    items = list(items)
    if jobs <= 1 or len(items) <= 1:
        return [fn(item) for item in items]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, items))


def _flag(b: bool) -> str:
    return "true" if b else "false"


def satake_rows(args) -> list[list]:
    data, p, ctx = args
    F = SpinorForm(data, ctx)
    sp = F.satake(p)
    cls = classify(sp, ctx.tol_classify, ctx).value
    rows = []
    for i, b in enumerate(sp.beta, start=1):
        rows.append([p, i, ctx.fmt(b.real), ctx.fmt(b.imag), ctx.fmt(abs(b)),
                     "1-4" if i in (1, 4) else "2-3", cls, ctx.fmt(sp.residual)])
    return rows


def pair_rows(args) -> list[list]:
    F_data, G_data, p, R, ctx = args
    F, G = SpinorForm(F_data, ctx), SpinorForm(G_data, ctx)
    spF, spG = F.satake(p), G.satake(p)
    rep = pair_local_report(spF, spG, R, ctx)
    tempered = (classify(spF, ctx.tol_classify, ctx) is SatakeClass.TEMPERED
                and classify(spG, ctx.tol_classify, ctx) is SatakeClass.TEMPERED)
    rows = [["summary", p, "", "", "", "", ctx.fmt(rep.tail_max),
             _flag(rep.tail_max < ctx.tol_degree), _flag(tempered), _flag(rep.distinct),
             ctx.fmt(rep.min_gap), ";".join(map(str, rep.sign_changes))]]
    for r, c in enumerate(rep.c):
        g = ctx.fmt(rep.gp[r]) if r < len(rep.gp) else ""
        gr = ctx.fmt(rep.gp_residue[r]) if rep.gp_residue is not None and r < len(rep.gp_residue) else ""
        rows.append(["coef", p, r, ctx.fmt(c), g, gr, "", "", "", "", "", ""])
    return rows


def density_rows(F: SpinorForm, G: SpinorForm, X: int, policy: ZeroPolicy) -> list[list]:
    rep = sign_disagreement_density(F, G, X, policy)
    return [[rep.X, rep.count, rep.considered, rep.excluded, repr(rep.density),
             rep.zero_policy.value, repr(rep.zero_tol)]]


def bfree_squares_rows(P: int, x: int) -> list[list]:
    B = prime_squares(P)
    res = sieve_bfree(B, x)
    return [["squares", P, x, len(B), res.count, repr(res.fraction), repr(erdos_density(B)),
             repr(B.reciprocal_sum()), "", "", "", ""]]


def bfree_exceptional_rows(F: SpinorForm, G: SpinorForm, P: int, x: int,
                           p0: int | None, depth: int) -> list[list]:
    t = None
    if p0 is None:
        found = find_negative_prime_power(F, G, P, depth)
        p0, t = found if found else (2, None)
    B = build_exceptional_set(F, G, p0, P)
    if t is None:
        for tt in range(1, depth + 1):
            if F.lambda_pp(p0, tt) * G.lambda_pp(p0, tt) < -F.ctx.tol_classify:
                t = tt
                break
    res = sieve_bfree(B, x)
    witness_count = witness_fraction = ""
    if t is not None:
        w = lower_density_witness(F, G, p0, t, x)
        witness_count, witness_fraction = w.count, repr(w.fraction)
    return [["exceptional", P, x, len(B), res.count, repr(res.fraction), repr(erdos_density(B)),
             repr(B.reciprocal_sum()), p0, "" if t is None else t, witness_count, witness_fraction]]


def ray_rows(F: SpinorForm, t0: RayIndex, X: int, A_T0) -> list[list]:
    ctx = F.ctx
    return [[c.n, ctx.fmt(c.value), c.sign] for c in fourier_along_ray(A_T0, F, X, t0)]


def ray_pair_rows(F: SpinorForm, G: SpinorForm, t0: RayIndex, p: int, R: int) -> list[list]:
    ctx = F.ctx
    products, changes = ray_sign_report(F, G, t0, p, R)
    tol = ctx.tol_classify
    rows = []
    change_set = set(changes.positions)
    for r, v in enumerate(products):
        scale = ctx.mp.mpf(p) ** (r * (F.weight + G.weight - 3))
        s = 0 if abs(v) <= tol * scale else (1 if v > 0 else -1)
        rows.append([r, ctx.fmt(v), s, _flag(r in change_set)])
    return rows


def local_primes(data: EigenformData, requested) -> list[int]:
    return list(requested) if requested else data.primes
