"""Command-line front end: one subcommand group per module, JSON or CSV reports.

Exit codes: 0 when every assertion holds, 1 when one fails, 2 for usage
errors and malformed input.
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import io
import json
import math
import sys
import time
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Any, Callable

import numpy as np

from . import addcomb as ac
from . import extract as ex
from . import field as fld
from . import incidence as inc
from . import kakeya as kk
from . import lcc
from . import scaling as sc
from . import sgdesign as sg
from .acceptance import run_suite
from .field import FieldSpec, get_field
from .poly import MultiPoly
from .rng import DEFAULT_SEED, stream

__all__ = ["RunReport", "main", "dispatch"]


class InputError(ValueError):
    """Bad or unreadable input; maps to exit code 2."""


# -- report ---------------------------------------------------------------------

def tag(value: Any) -> Any:
    """Attach exactness tags to numeric scalars; lists of residues stay raw."""
    if isinstance(value, bool) or value is None or isinstance(value, str):
        return value
    if isinstance(value, (int, np.integer, Fraction)):
        return {"value": str(value), "exactness": "exact-rational"}
    if isinstance(value, (float, np.floating)):
        v = float(value)
        return {"value": v if math.isfinite(v) else str(v), "exactness": "float"}
    if isinstance(value, dict):
        return {str(k): tag(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [plain(v) for v in value] if _is_payload(value) else [tag(v) for v in value]
    return str(value)


def _is_payload(seq) -> bool:
    """Integer vectors, matrices and point lists are data, not measurements."""
    flat = list(seq)
    while flat and isinstance(flat[0], (list, tuple)):
        flat = [x for row in flat for x in row]
    return bool(flat) and all(isinstance(x, (int, np.integer, str)) and not isinstance(x, bool)
                              for x in flat)


def untag(value: Any) -> Any:
    """Inverse of :func:`tag` for reading reports back in."""
    if isinstance(value, dict):
        if set(value) == {"value", "exactness"}:
            v = value["value"]
            if value["exactness"] == "float":
                return float(v)
            f = Fraction(v)
            return int(f) if f.denominator == 1 else f
        return {k: untag(v) for k, v in value.items()}
    if isinstance(value, list):
        return [untag(v) for v in value]
    return value


def plain(value: Any) -> Any:
    if isinstance(value, (bool, str)) or value is None:
        return value
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, (float, np.floating)):
        return float(value)
    if isinstance(value, dict):
        return {str(k): plain(v) for k, v in value.items()}
    if isinstance(value, (list, tuple, np.ndarray)):
        return [plain(v) for v in value]
    return str(value)


@dataclass
class RunReport:
    command: str
    seed: int
    inputs_digest: str = ""
    outputs: dict = field(default_factory=dict)
    assertions: list[dict] = field(default_factory=list)
    wall_time_ms: float = 0.0

    def check(self, name: str, ok: bool, lhs=None, rhs=None) -> None:
        self.assertions.append({"name": name, "status": "pass" if ok else "fail",
                                "lhs": tag(lhs), "rhs": tag(rhs)})

    @property
    def passed(self) -> bool:
        return all(a["status"] == "pass" for a in self.assertions)

    def as_dict(self) -> dict:
        return {
            "command": self.command,
            "seed": self.seed,
            "inputs_digest": self.inputs_digest,
            "outputs": tag(self.outputs),
            "assertions": self.assertions,
            "wall_time_ms": round(self.wall_time_ms, 3),
        }

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), sort_keys=True, indent=2) + "\n"

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["section", "key", "value"])
        for key in ("command", "seed", "inputs_digest", "wall_time_ms"):
            val = getattr(self, key)
            w.writerow(["meta", key, round(val, 3) if isinstance(val, float) else val])
        for key, val in _flatten(plain(self.outputs)):
            w.writerow(["output", key, val])
        for a in self.assertions:
            w.writerow(["assertion", a["name"], a["status"]])
        return buf.getvalue()


def _flatten(obj, prefix: str = ""):
    if isinstance(obj, dict):
        for k in sorted(obj):
            yield from _flatten(obj[k], f"{prefix}.{k}" if prefix else k)
    elif isinstance(obj, list) and obj and isinstance(obj[0], dict):
        for i, v in enumerate(obj):
            yield from _flatten(v, f"{prefix}[{i}]")
    else:
        yield prefix, json.dumps(obj) if isinstance(obj, list) else obj


@dataclass
class Context:
    seed: int
    digest: "hashlib._Hash"

    def rng(self, module: str, purpose: str) -> np.random.Generator:
        return stream(self.seed, module, purpose)

    def read(self, path: str) -> bytes:
        try:
            data = Path(path).read_bytes()
        except OSError as exc:
            raise InputError(f"cannot read {path}: {exc}") from exc
        self.digest.update(path.encode() + b"\0" + data + b"\0")
        return data

    def json(self, path: str):
        try:
            return json.loads(self.read(path))
        except json.JSONDecodeError as exc:
            raise InputError(f"{path} is not valid JSON: {exc}") from exc

    def matrix(self, path: str) -> np.ndarray:
        text = self.read(path).decode()
        rows = [r for r in csv.reader(io.StringIO(text)) if r and not r[0].lstrip().startswith("#")]
        try:
            mat = np.array([[float(Fraction(x.strip())) for x in r] for r in rows], dtype=float)
        except (ValueError, ZeroDivisionError) as exc:
            raise InputError(f"{path}: {exc}") from exc
        if mat.ndim != 2 or not mat.size:
            raise InputError(f"{path}: expected a rectangular matrix")
        return mat


# -- kakeya ---------------------------------------------------------------------

def _witness_from(data) -> kk.KakeyaWitness:
    if isinstance(data, dict) and "outputs" in data:
        data = untag(data["outputs"].get("witness", data["outputs"]))
    try:
        return kk.KakeyaWitness.from_json(data)
    except (KeyError, TypeError) as exc:
        raise InputError(f"malformed witness: {exc}") from exc


def cmd_kakeya_build(a, ctx, rep):
    w = kk.build_kakeya(a.q, a.n)
    bound = Fraction(a.q**a.n, 2 ** (a.n - 1)) + 2 * a.q ** (a.n - 1)
    ok = kk.verify_kakeya(w)
    rep.outputs.update(q=a.q, n=a.n, size=len(w.points), size_bound=bound, witness=w.to_json())
    rep.check("kakeya.verify", ok)
    rep.check("kakeya.size_bound", len(w.points) <= bound, len(w.points), bound)


def cmd_kakeya_verify(a, ctx, rep):
    w = _witness_from(ctx.json(a.input))
    ok = kk.verify_kakeya(w)
    rep.outputs.update(q=w.spec.q, n=w.n, size=len(w.points), valid=ok)
    rep.check("kakeya.verify", ok)


def cmd_kakeya_certify(a, ctx, rep):
    w = _witness_from(ctx.json(a.input))
    cert = kk.certify_lower_bound(w.points, w.spec.q, w.n)
    rep.outputs.update(q=w.spec.q, n=w.n, size=len(w.points), rank=cert.rank,
                       monomials=cert.monomial_count, volume=Fraction(w.spec.q**w.n, math.factorial(w.n)))
    rep.check("kakeya.rank_full", cert.rank == cert.monomial_count, cert.rank, cert.monomial_count)
    rep.check("kakeya.size_lower_bound", len(w.points) >= cert.rank, len(w.points), cert.rank)
    rep.check("kakeya.volume", cert.bound_holds, cert.implied_lower_bound, cert.volume_bound)


# -- extract --------------------------------------------------------------------

def cmd_extract_merger(a, ctx, rep):
    import itertools
    spec = get_field(a.q)
    dom = list(itertools.product(range(a.q), repeat=a.n))
    src = ex.Distribution.from_json(ctx.json(a.source)) if a.source else ex.Distribution.uniform(dom)
    if a.adversary == "nikodym":
        w = kk.build_kakeya(a.q, a.n)
        adv = ex.nikodym_adversary(w)
    else:
        adv = ex.identity_adversary(a.q, a.n)
    z = ex.merger_distribution(spec, a.n, src, adv)
    rep.outputs.update(q=a.q, n=a.n, adversary=a.adversary, min_entropy=ex.min_entropy(z),
                       distribution=z.to_json())
    if a.adversary == "nikodym":
        nik = kk.nikodym_from_kakeya(w)
        mass = z.mass(nik.points)
        rep.outputs.update(nikodym_size=len(nik.points), probability_in_nikodym=mass)
        rep.check("merger.nikodym_attack", mass >= 1 - Fraction(1, a.q), mass, 1 - Fraction(1, a.q))


def cmd_extract_bias(a, ctx, rep):
    data = ctx.json(a.sets)
    try:
        sa = [tuple(v) for v in data["A"]]
        sb = [tuple(v) for v in data["B"]]
    except (KeyError, TypeError) as exc:
        raise InputError(f"expected {{'A': [...], 'B': [...]}}: {exc}") from exc
    sq = ex.bias_squared(sa, sb)
    dim = len(sa[0])
    rep.outputs.update(size_a=len(sa), size_b=len(sb), bias_squared=sq, bias=math.sqrt(sq))
    rep.check("bias.bound", sq * len(sa) * len(sb) <= 3**dim, sq, Fraction(3**dim, len(sa) * len(sb)))
    if a.four_sum:
        r = ex.foursum_bias_check(sa, sb)
        rep.outputs.update(four_sum_rhs=r["rhs"])
        rep.check("bias.four_sum", r["holds_exact"], r["lhs"], r["rhs"])


# -- lcc ------------------------------------------------------------------------

def _code(a) -> lcc.RMCode:
    return lcc.RMCode(get_field(a.q), a.m, a.e)


def cmd_lcc_encode(a, ctx, rep):
    code = _code(a)
    raw = ctx.read(a.poly).decode().strip()
    try:
        data = json.loads(raw)
    except json.JSONDecodeError:
        data = raw
    try:
        f = (MultiPoly.parse(data, code.spec, a.m) if isinstance(data, str)
             else MultiPoly.from_json(data, code.spec, a.m))
    except (KeyError, TypeError) as exc:
        raise InputError(f"malformed polynomial: {exc}") from exc
    word = lcc.encode(code, f)
    rep.outputs.update(q=a.q, m=a.m, e=code.e, length=code.length, dimension=code.dimension,
                       polynomial=f.to_text(), codeword=word.tolist())


def cmd_lcc_correct(a, ctx, rep):
    data = ctx.json(a.word)
    if isinstance(data, dict):
        a.q, a.m = data.get("q", a.q), data.get("m", a.m)
        a.e = data.get("e", a.e)
        data = data.get("codeword", data.get("word"))
    code = _code(a)
    word = np.asarray(data, dtype=np.int64)
    if word.shape != (code.length,):
        raise InputError(f"codeword must have length {code.length}")
    lines = len(code.directions)
    clean = lcc.decode_batch(code, np.broadcast_to(word, (code.length * lines, code.length)),
                             np.repeat(np.arange(code.length), lines),
                             np.tile(np.arange(lines), code.length))
    rep.check("lcc.codeword_consistent", bool(np.all(clean == np.repeat(word, lines))))
    if not 0 <= a.pos < code.length:
        raise InputError("position out of range")
    if not 0 <= a.errors < code.length:
        raise InputError("too many errors")
    rng = ctx.rng("lcc", "correct")
    others = np.array([j for j in range(code.length) if j != a.pos])
    hits = 0
    for start in range(0, a.trials, 10_000):
        b = min(10_000, a.trials - start)
        noisy = np.repeat(word[None, :], b, axis=0)
        for r in range(b):
            js = rng.choice(others, size=a.errors, replace=False)
            noisy[r, js] = code.spec.vadd(noisy[r, js], rng.integers(1, code.spec.q, size=a.errors))
        got = lcc.decode_batch(code, noisy, np.full(b, a.pos), rng.integers(lines, size=b))
        hits += int(np.count_nonzero(got == word[a.pos]))
    rate = hits / a.trials if a.trials else 1.0
    rep.outputs.update(position=a.pos, errors=a.errors, trials=a.trials, success_rate=rate)
    if a.errors == 0:
        rep.check("lcc.clean_success", rate == 1.0, rate, 1.0)


# -- addcomb --------------------------------------------------------------------

def _set(data) -> ac.AbelianSet:
    try:
        return ac.AbelianSet.from_json(data)
    except (KeyError, TypeError) as exc:
        raise InputError(f"malformed set: {exc}") from exc


def cmd_addcomb_energy(a, ctx, rep):
    if len(a.set) not in (1, 2):
        raise InputError("give one or two --set files")
    sets = [_set(ctx.json(p)) for p in a.set]
    x, y = sets[0], sets[-1]
    q4 = ac.quadruple_count(x, y)
    e = ac.energy(x, y)
    plus = len(ac.sumset(x, y))
    rep.outputs.update(size_a=len(x), size_b=len(y), Q=q4, energy=e, sumset=plus,
                       difference=len(ac.difference(x, y)))
    rep.check("energy.lower", e >= max(len(x), len(y)), e, max(len(x), len(y)))
    rep.check("energy.upper", e <= plus, e, plus)


def cmd_addcomb_bsg(a, ctx, rep):
    data = ctx.json(a.graph)
    try:
        x, y = _set(data["A"]), _set(data["B"])
        edges = data.get("edges", "complete")
    except (KeyError, TypeError) as exc:
        raise InputError(f"graph JSON needs A, B and edges: {exc}") from exc
    g = ac.PairGraph.complete(x, y) if edges == "complete" else ac.PairGraph(x, y, {tuple(e) for e in edges})
    k = Fraction(a.K) if a.K else Fraction(len(x) ** 3, ac.quadruple_count(x, y))
    x2, y2, r = ac.bsg_extract(x, y, g, k, a.eps)
    rep.outputs.update(report=r.as_dict(), A_prime=list(x2.elements), B_prime=list(y2.elements))


# -- incidence ------------------------------------------------------------------

def _points(data) -> list[tuple[Fraction, ...]]:
    try:
        return [inc.parse_point(p) for p in data]
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        raise InputError(f"malformed points: {exc}") from exc


def cmd_incidence_count(a, ctx, rep):
    pts = _points(ctx.json(a.points))
    try:
        lines = [inc.Line2.make(*(Fraction(x) for x in ln)) for ln in ctx.json(a.lines)]
    except (TypeError, ValueError) as exc:
        raise InputError(f"lines must be [a, b, c] triples for aX + bY + c = 0: {exc}") from exc
    i = inc.count_incidences(pts, lines)
    cs = inc.cs_bounds(i, len(pts), len(lines))
    rep.outputs.update(points=len(pts), lines=len(lines), incidences=i,
                       bound_points=cs["bound_points"], bound_lines=cs["bound_lines"])
    rep.check("incidence.cauchy_schwarz", cs["holds"], i, min(cs["bound_points"], cs["bound_lines"]))


def cmd_incidence_grid(a, ctx, rep):
    pts, lines = inc.st_grid(a.M)
    i = inc.count_incidences(pts, lines)
    cs = inc.cs_bounds(i, len(pts), len(lines))
    rep.outputs.update(M=a.M, points=len(pts), lines=len(lines), incidences=i)
    rep.check("incidence.grid_count", i == a.M**4, i, a.M**4)
    rep.check("incidence.cauchy_schwarz", cs["holds"], i, min(cs["bound_points"], cs["bound_lines"]))


def cmd_incidence_joints(a, ctx, rep):
    lines = inc.joints_grid(a.grid)
    j = inc.count_joints(lines)
    rep.outputs.update(N=a.grid, lines=len(lines), joints=j)
    rep.check("joints.grid_count", j == a.grid**3, j, a.grid**3)
    rep.check("joints.bound", j * j <= len(lines) ** 3, j, len(lines) ** 1.5)


def cmd_incidence_distances(a, ctx, rep):
    pts = _points(ctx.json(a.points))
    st = inc.distance_stats(pts)
    rep.outputs.update(st)
    rep.check("distances.lower_bound", st["distinct_sq_distances"] >= st["lower_bound"],
              st["distinct_sq_distances"], st["lower_bound"])


# -- sg / scale -----------------------------------------------------------------

def _config(ctx, path) -> sg.Configuration:
    try:
        return sg.Configuration.from_json(ctx.json(path))
    except (KeyError, TypeError) as exc:
        raise InputError(f"malformed configuration: {exc}") from exc


def cmd_sg_check(a, ctx, rep):
    c = _config(ctx, a.config)
    r = sg.check_sg(c, Fraction(a.delta))
    rep.outputs.update(n=c.n, delta=Fraction(a.delta), is_sg=r.holds, counts=r.counts,
                       delta_achieved=r.delta_achieved, failing_index=r.failing,
                       special_lines=[sorted(s) for s in sg.special_lines(c)])
    rep.check("sg.holds", r.holds, r.delta_achieved, Fraction(a.delta))


def cmd_sg_design(a, ctx, rep):
    c = _config(ctx, a.config)
    dm = sg.design_from_config(c, Fraction(a.delta))
    q, k, t = dm.params
    rank = dm.rank()
    lb = sg.rank_lower_bound(q, k, t, c.n)
    dim = c.span_dim()
    rep.outputs.update(n=c.n, rows=len(dm.rows), q=q, k=k, t=t, rank=rank, lower_bound=lb, dim=dim)
    rep.check("design.three_nonzeros", all(len(r) == 3 for r in dm.rows))
    rep.check("design.rank_lower_bound", rank >= lb, rank, lb)
    rep.check("design.rank_upper", rank <= c.n - dim, rank, c.n - dim)


def cmd_scale_sinkhorn(a, ctx, rep):
    b = ctx.matrix(a.matrix)
    res = sc.sinkhorn_scale(b, a.eps, a.max_iters, check_diagonal=not a.trust)
    scaled = res.apply(b)
    rep.outputs.update(res.to_json())
    rep.outputs.update(row_sums=scaled.sum(axis=1).tolist(), column_sums=scaled.sum(axis=0).tolist())
    rep.check("sinkhorn.converged", res.converged, res.achieved_eps, a.eps)
    rep.check("sinkhorn.monotone", bool(np.all(np.diff(res.history) <= 1e-12 * res.history[:-1] + 1e-15)))


def cmd_scale_potential(a, ctx, rep):
    b = ctx.matrix(a.matrix)
    v = np.asarray(ctx.json(a.target), dtype=float) if a.target else None
    res = sc.scale_by_potential(b, v, a.step, a.tol, a.max_iters, check_feasible=not a.trust)
    rep.outputs.update(res.to_json())
    rep.check("potential.stationary", res.converged, float(res.history[-1]), a.tol)


# -- suite ----------------------------------------------------------------------

def cmd_suite(a, ctx, rep):
    results = run_suite(ctx.seed, a.filter)
    if not results:
        raise InputError(f"no criteria match filter {a.filter!r}")
    for r in results:
        print(r.line(), file=sys.stderr)
        rep.check(f"criterion.{r.number}", r.passed, r.seconds, r.limit_s)
    rep.outputs["criteria"] = [{"number": r.number, "module": r.module, "title": r.title,
                                "passed": r.passed, "error": r.error, "details": plain(r.details)}
                               for r in results]


# -- parser ---------------------------------------------------------------------

def _global_flags(p: argparse.ArgumentParser, suppress: bool) -> None:
    d = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    p.add_argument("--seed", type=int, default=d(DEFAULT_SEED), help="base seed for random streams")
    p.add_argument("--out", default=d(None), help="write the report here instead of stdout")
    p.add_argument("--format", "--report", dest="format", choices=["json", "csv"], default=d("json"))
    p.add_argument("--cap", type=int, default=d(None), help="enumeration cap")


def build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(prog="incilab", description=__doc__.splitlines()[0])
    _global_flags(top, False)
    groups = top.add_subparsers(dest="group", required=True)
    common = argparse.ArgumentParser(add_help=False)
    _global_flags(common, True)

    def sub(group, name, fn: Callable, **kw):
        p = group.add_parser(name, parents=[common], **kw)
        p.set_defaults(fn=fn)
        return p

    g = groups.add_parser("kakeya").add_subparsers(dest="action", required=True)
    p = sub(g, "build", cmd_kakeya_build)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    for name, fn in (("verify", cmd_kakeya_verify), ("certify", cmd_kakeya_certify)):
        sub(g, name, fn).add_argument("--in", dest="input", required=True)

    g = groups.add_parser("extract").add_subparsers(dest="action", required=True)
    p = sub(g, "merger", cmd_extract_merger)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--adversary", choices=["identity", "nikodym"], default="identity")
    p.add_argument("--source", help="distribution JSON (default uniform)")
    p = sub(g, "bias", cmd_extract_bias)
    p.add_argument("--sets", required=True)
    p.add_argument("--four-sum", action="store_true")

    g = groups.add_parser("lcc").add_subparsers(dest="action", required=True)
    for name, fn in (("encode", cmd_lcc_encode), ("correct", cmd_lcc_correct)):
        p = sub(g, name, fn)
        p.add_argument("--q", type=int, default=5)
        p.add_argument("--m", type=int, default=2)
        p.add_argument("--e", type=int, default=None)
    g.choices["encode"].add_argument("--poly", required=True)
    p = g.choices["correct"]
    p.add_argument("--word", required=True)
    p.add_argument("--pos", type=int, default=0)
    p.add_argument("--errors", type=int, default=0)
    p.add_argument("--trials", type=int, default=1000)

    g = groups.add_parser("addcomb").add_subparsers(dest="action", required=True)
    sub(g, "energy", cmd_addcomb_energy).add_argument("--set", action="append", required=True)
    p = sub(g, "bsg", cmd_addcomb_bsg)
    p.add_argument("--graph", required=True)
    p.add_argument("--K", default=None, help="doubling parameter (default N^3/Q)")
    p.add_argument("--eps", type=float, default=0.25)

    g = groups.add_parser("incidence").add_subparsers(dest="action", required=True)
    p = sub(g, "count", cmd_incidence_count)
    p.add_argument("--points", required=True)
    p.add_argument("--lines", required=True)
    sub(g, "grid", cmd_incidence_grid).add_argument("--M", type=int, required=True)
    sub(g, "joints", cmd_incidence_joints).add_argument("--grid", type=int, required=True)
    sub(g, "distances", cmd_incidence_distances).add_argument("--points", required=True)

    g = groups.add_parser("sg").add_subparsers(dest="action", required=True)
    for name, fn in (("check", cmd_sg_check), ("design", cmd_sg_design)):
        p = sub(g, name, fn)
        p.add_argument("--config", required=True)
        p.add_argument("--delta", default="1")

    g = groups.add_parser("scale").add_subparsers(dest="action", required=True)
    p = sub(g, "sinkhorn", cmd_scale_sinkhorn)
    p.add_argument("--eps", type=float, default=1e-6)
    p.add_argument("--max-iters", type=int, default=1_000_000)
    p = sub(g, "potential", cmd_scale_potential)
    p.add_argument("--target", default=None, help="JSON vector of row then column targets")
    p.add_argument("--step", type=float, default=0.5)
    p.add_argument("--tol", type=float, default=1e-10)
    p.add_argument("--max-iters", type=int, default=200_000)
    for p in (g.choices["sinkhorn"], g.choices["potential"]):
        p.add_argument("--matrix", required=True)
        p.add_argument("--trust", action="store_true", help="skip the precondition check")

    g = groups.add_parser("suite").add_subparsers(dest="action", required=True)
    sub(g, "acceptance", cmd_suite).add_argument("--filter", default=None,
                                                 help="module name or criterion number")
    return top


def dispatch(argv: list[str] | None = None) -> tuple[int, RunReport | None]:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return (2 if exc.code else 0), None
    if args.seed < 0 or args.seed >= 2**64:
        print("incilab: --seed must be an unsigned 64-bit integer", file=sys.stderr)
        return 2, None
    old_cap = fld.ENUMERATION_CAP
    if args.cap is not None:
        fld.ENUMERATION_CAP = args.cap
    digest = hashlib.sha256(json.dumps([x for x in argv], sort_keys=True).encode())
    ctx = Context(args.seed, digest)
    rep = RunReport(f"{args.group} {args.action}", args.seed)
    start = time.perf_counter()
    code = 0
    try:
        args.fn(args, ctx, rep)
        code = 0 if rep.passed else 1
    except AssertionError as exc:
        rep.check("internal", False, str(exc))
        rep.outputs["error"] = str(exc)
        code = 1
    except (InputError, ValueError, KeyError, TypeError, fld.EnumerationCapError, sc.ScalingError) as exc:
        print(f"incilab: {exc}", file=sys.stderr)
        code = 2
        rep.outputs["error"] = str(exc)
    finally:
        fld.ENUMERATION_CAP = old_cap
    rep.inputs_digest = ctx.digest.hexdigest()
    rep.wall_time_ms = (time.perf_counter() - start) * 1000
    text = rep.to_csv() if args.format == "csv" else rep.to_json()
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return code, rep


def main(argv: list[str] | None = None) -> int:
    code, _ = dispatch(argv)
    return code


if __name__ == "__main__":
    raise SystemExit(main())
