"""End-to-end experiment harness.

One experiment takes a xi specification through the full pipeline: minimal
points, independence set, pair records, the exact divisibility suites, the
pair inequality decisions, and the monitored (expressly non-PASS/FAIL)
asymptotic ratio traces.  Output is a CSV of pair data and a JSON summary;
both are byte-deterministic for a fixed configuration.
"""

from __future__ import annotations

import csv
import json
from dataclasses import asdict, dataclass
from fractions import Fraction

from mpmath import iv

from .constants import threshold_constants
from .errors import InvariantViolation, Undecidable
from .intervals import Interval
from .minimal import (MinimalPoint, PairRecord, build_pair_records,
                      independence_set, minimal_sequence, pair_checks)
from .realctx import RealContext, approx_error
from .rigor import (LOG_PREC_START, interval_from_iv, iv_hull, iv_int,
                    iv_prec, mid_str)
from .search import prop8_inequality
from .vectors import content, cross, sup_norm, vscale

ALL_SUITES = ("divisibility", "heights", "prop8")


@dataclass(frozen=True)
class ExperimentConfig:
    xi: str
    norm_bound: int = 100_000
    precision_bits: int = 192
    max_bits: int = 1 << 16
    epsilon: str = "1/10"
    suites: tuple[str, ...] = ALL_SUITES
    threads: int = 1
    lambda_window: int = 8
    csv_path: str | None = None
    json_path: str | None = None
    reproducer_path: str = "xicube_reproducer.json"

    def __post_init__(self):
        if self.norm_bound < 1:
            raise ValueError("norm_bound must be >= 1")
        if Fraction(self.epsilon) <= 0:
            raise ValueError("epsilon must be positive")
        unknown = set(self.suites) - set(ALL_SUITES)
        if unknown:
            raise ValueError(f"unknown suites {sorted(unknown)}")


@dataclass
class ExperimentReport:
    config: ExperimentConfig
    sequence: list[MinimalPoint]
    indep: list[int]
    records: list[PairRecord]
    checks: list[dict[str, bool]]
    prop8: list[dict]
    lambda_hat: list[dict]          # per index i: enclosure of log(1/L_i)/log X_{i+1}
    rho_seq: list[dict]             # per index: log X_{i+1} / log X_i (monitor)
    monitors: dict
    suites: dict[str, str]

    def summary_dict(self) -> dict:
        seq = [
            {
                "index": p.index,
                "point": list(p.point),
                "norm": p.norm,
                "err": [str(p.err.lo), str(p.err.hi)],
                "err_dec": _dec(p.err),
                "delta_dec": _dec(p.delta),
            }
            for p in self.sequence
        ]
        pairs = []
        for rec, chk, p8 in zip(self.records, self.checks, self.prop8):
            pairs.append({
                "i": rec.i, "j": rec.j,
                "x_i": list(rec.x_i), "x_ip1": list(rec.x_ip1), "x_j": list(rec.x_j),
                "p": rec.p, "q": rec.q,
                "S": rec.s, "T": rec.t, "U": rec.u, "V": rec.v,
                "A": rec.a, "B": rec.b, "F": rec.f,
                "D2": rec.d2, "D3": rec.d3, "D6": rec.d6,
                "height_sq": rec.height_sq,
                "checks": dict(sorted(chk.items())),
                "prop8": p8,
            })
        return {
            "config": asdict(self.config),
            "constants": threshold_constants(),
            "counts": {
                "sequence": len(self.sequence),
                "independence": len(self.indep),
                "pairs": len(self.records),
            },
            "independence_set": self.indep,
            "sequence": seq,
            "pairs": pairs,
            "lambda_hat": self.lambda_hat,
            "rho_seq": self.rho_seq,
            "monitors": self.monitors,
            "suites": self.suites,
        }

    def to_json(self) -> str:
        return json.dumps(self.summary_dict(), sort_keys=True, indent=2) + "\n"

    def csv_rows(self) -> tuple[list[str], list[list]]:
        check_names = sorted({name for chk in self.checks for name in chk})
        header = ["i", "j", "X_i", "X_ip1", "X_j", "p", "q", "S", "T", "U", "V",
                  "A", "B", "F", "D2", "D3", "D6"]
        header += check_names + ["lambda_hat", "rho"]
        rows = []
        lam_by_index = {entry["i"]: entry for entry in self.lambda_hat}
        for rec, chk in zip(self.records, self.checks):
            row = [rec.i, rec.j, rec.norm_i, rec.norm_ip1, rec.norm_j, rec.p, rec.q,
                   rec.s, rec.t, rec.u, rec.v, rec.a, rec.b, rec.f,
                   rec.d2, rec.d3, rec.d6]
            row += [int(chk[name]) if name in chk else "" for name in check_names]
            lam = lam_by_index.get(rec.i)
            row.append(lam["mid"] if lam else "")
            row.append(_pair_rho(self, rec))
            rows.append(row)
        return header, rows

    def write_csv(self, path: str):
        header, rows = self.csv_rows()
        with open(path, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(header)
            w.writerows(rows)

    def write_json(self, path: str):
        with open(path, "w") as fh:
            fh.write(self.to_json())

    def all_pass(self) -> bool:
        return all(v != "FAIL" for v in self.suites.values())


def _dec(interval: Interval, digits: int = 15) -> str:
    with iv_prec(80):
        return mid_str(iv_hull(interval.lo, interval.hi), digits)


def _pair_rho(report: ExperimentReport, rec: PairRecord) -> str:
    # growth ratio of the pair: log X_{j+1} / log X_{i+1}
    xj1 = report.sequence[rec.j].norm
    xi1 = rec.norm_ip1
    if xi1 < 2 or xj1 < 2:
        return ""
    with iv_prec(LOG_PREC_START):
        return mid_str(iv.log(iv_int(xj1)) / iv.log(iv_int(xi1)))


def _positive_err(ctx: RealContext, point) -> Interval:
    def probe(bits):
        e = approx_error(point, ctx, bits)
        return e if e.lo > 0 else None

    return ctx.decide(probe, what=f"positive error enclosure at {point}")


def lambda_hat_trace(ctx: RealContext, seq: list[MinimalPoint]) -> list[dict]:
    """Empirical exponent enclosures log(1/L_i)/log X_{i+1} for i < len(seq)."""
    out = []
    for i in range(1, len(seq)):
        x_next = seq[i].norm
        if x_next < 2:
            continue
        err = _positive_err(ctx, seq[i - 1].point)
        with iv_prec(LOG_PREC_START):
            lam = -iv.log(iv_hull(err.lo, err.hi)) / iv.log(iv_int(x_next))
            enclosure = interval_from_iv(lam)
        out.append({"i": i, "lo": str(enclosure.lo), "hi": str(enclosure.hi),
                    "mid": mid_str(lam)})
    return out


def estimate_uniform_exponent(points, window: int = 8) -> tuple[Interval, list[Interval]]:
    """Running min of the empirical exponents over a trailing window.

    Accepts either a finished report (|sequence| >= 3) or a raw list of
    (X_{i+1}, enclosure of L_i) pairs.  The result encloses min over the
    last `window` entries; it is an empirical estimate of the uniform
    exponent, not the exponent itself.
    """
    if isinstance(points, ExperimentReport):
        report = points
        if len(report.sequence) < 3:
            raise ValueError("need at least 3 minimal points")
        window = report.config.lambda_window
        points = [(report.sequence[i].norm, report.sequence[i - 1].err)
                  for i in range(1, len(report.sequence))]
    if not points:
        raise ValueError("need at least one point")
    lams = []
    with iv_prec(LOG_PREC_START):
        for x_next, err in points:
            if x_next < 2 or err.lo <= 0:
                raise ValueError("need X >= 2 and a positive error enclosure")
            lam = -iv.log(iv_hull(err.lo, err.hi)) / iv.log(iv_int(x_next))
            lams.append(interval_from_iv(lam))
    tail = lams[-window:]
    est = Interval(min(l.lo for l in tail), min(l.hi for l in tail))
    return est, lams


def height_checks(seq, records: list[PairRecord] | None = None,
                  ctx: RealContext | None = None) -> dict:
    """Primitivity of consecutive cross products plus the bounded-ratio monitor.

    Accepts either a finished report or (sequence, records, ctx).  The ratio
    sup|x_i ^ x_j| / (X_j * L_i) has no effective constants in the theory,
    so only its observed range is reported.
    """
    if isinstance(seq, ExperimentReport):
        report = seq
        cfg = report.config
        ctx = RealContext(cfg.xi, cfg.precision_bits, cfg.max_bits)
        seq, records = report.sequence, report.records
    prim = all(content(cross(a.point, b.point)) == 1 for a, b in zip(seq, seq[1:]))
    ratio_ok = all(
        cross(r.x_i, r.x_j) == vscale(r.q, cross(r.x_i, r.x_ip1)) for r in records
    )
    lo = hi = None
    for rec in records:
        err = _positive_err(ctx, rec.x_i)
        num = sup_norm(cross(rec.x_i, rec.x_j))
        den_lo = rec.norm_j * err.lo
        den_hi = rec.norm_j * err.hi
        r = Interval(Fraction(num) / den_hi, Fraction(num) / den_lo)
        lo = r.lo if lo is None else min(lo, r.lo)
        hi = r.hi if hi is None else max(hi, r.hi)
    return {
        "cross_primitive_all": prim,
        "cross_ratio_all": ratio_ok,
        "ratio_min": _dec(Interval(lo)) if lo is not None else "",
        "ratio_max": _dec(Interval(hi)) if hi is not None else "",
    }


def _dump_reproducer(cfg: ExperimentConfig, rec: PairRecord, failed: list[str]):
    payload = {
        "xi": cfg.xi,
        "norm_bound": cfg.norm_bound,
        "precision_bits": cfg.precision_bits,
        "pair": {
            "i": rec.i, "j": rec.j,
            "x_i": list(rec.x_i), "x_ip1": list(rec.x_ip1), "x_j": list(rec.x_j),
        },
        "failed_checks": failed,
    }
    with open(cfg.reproducer_path, "w") as fh:
        json.dump(payload, fh, sort_keys=True, indent=2)
    return payload


def run_experiment(cfg: ExperimentConfig) -> ExperimentReport:
    """The full pipeline for one xi; deterministic for a fixed configuration."""
    ctx = RealContext(cfg.xi, cfg.precision_bits, cfg.max_bits)
    seq = minimal_sequence(ctx, cfg.norm_bound, threads=cfg.threads)
    indep = independence_set(seq) if len(seq) >= 3 else []
    records = build_pair_records(seq, indep)
    suites: dict[str, str] = {}

    checks = [pair_checks(rec) for rec in records]
    if "divisibility" in cfg.suites:
        suites["divisibility"] = "PASS"
        for rec, chk in zip(records, checks):
            failed = sorted(name for name, ok in chk.items() if not ok)
            if failed:
                suites["divisibility"] = "FAIL"
                payload = _dump_reproducer(cfg, rec, failed)
                raise InvariantViolation(
                    f"exact invariant failed on pair ({rec.i},{rec.j}): {failed}",
                    payload,
                )
    else:
        suites["divisibility"] = "SKIPPED"

    if "heights" in cfg.suites:
        heights = height_checks(seq, records, ctx)
        suites["heights"] = "PASS" if heights["cross_primitive_all"] and heights["cross_ratio_all"] else "FAIL"
        if suites["heights"] == "FAIL":
            raise InvariantViolation("cross-product height check failed", heights)
    else:
        heights = {}
        suites["heights"] = "SKIPPED"

    prop8 = []
    if "prop8" in cfg.suites:
        eps = Fraction(cfg.epsilon)
        for rec in records:
            entry: dict = {"i": rec.i, "j": rec.j}
            sv = rec.s * rec.s * rec.v
            if rec.t == 0 or rec.f == 0 or sv == 0 or abs(rec.q) < 3:
                entry["verdict"] = "skipped"
                entry["reason"] = "preconditions (nonzero T, F, S^2V and |q| >= 3)"
            else:
                try:
                    holds, diag = prop8_inequality(rec, eps)
                    entry["verdict"] = "holds" if holds else "fails"
                    entry["diagnostics"] = diag
                except Undecidable:
                    entry["verdict"] = "undecidable"
            prop8.append(entry)
        suites["prop8"] = "DONE"
    else:
        prop8 = [{"i": rec.i, "j": rec.j, "verdict": "skipped"} for rec in records]
        suites["prop8"] = "SKIPPED"

    lam = lambda_hat_trace(ctx, seq)
    rho_seq = []
    with iv_prec(LOG_PREC_START):
        for a, b in zip(seq, seq[1:]):
            if a.norm < 2:
                continue
            rho_seq.append({
                "i": a.index,
                "value": mid_str(iv.log(iv_int(b.norm)) / iv.log(iv_int(a.norm))),
            })
        q_ratio = [
            {"i": rec.i, "value": mid_str(iv.log(iv_int(abs(rec.q))) / iv.log(iv_int(rec.norm_ip1)))}
            for rec in records if rec.norm_ip1 >= 2 and rec.q != 0
        ]

    monitors: dict = {
        "nonvanishing_zero_counts": {
            "S": sum(1 for r in records if r.s == 0),
            "F": sum(1 for r in records if r.f == 0),
            "D2": sum(1 for r in records if r.d2 == 0),
            "D3": sum(1 for r in records if r.d3 == 0),
            "D6": sum(1 for r in records if r.d6 == 0),
        },
        "log_q_over_log_X": q_ratio,
        "note": "ratio traces are diagnostic monitors, never PASS/FAIL",
    }
    monitors.update({f"heights_{k}": v for k, v in heights.items()})
    if lam:
        tail = lam[-cfg.lambda_window:]
        monitors["lambda_hat_window_min"] = {
            "lo": str(min(Fraction(e["lo"]) for e in tail)),
            "hi": str(min(Fraction(e["hi"]) for e in tail)),
            "window": len(tail),
        }

    report = ExperimentReport(cfg, seq, indep, records, checks, prop8, lam,
                              rho_seq, monitors, suites)
    if cfg.csv_path:
        report.write_csv(cfg.csv_path)
    if cfg.json_path:
        report.write_json(cfg.json_path)
    return report
