"""``umlab`` command line: run a pipeline, write its certificate, or verify one."""

from __future__ import annotations

import argparse
import dataclasses
import json
import os
import sys
from dataclasses import dataclass, fields
from pathlib import Path
from typing import Callable

from .curves import SuperellipticCurve, CurveError, branch_point_count, superelliptic_genus, verify_degm_hypotheses
from .exactnum.algebraic import AlgebraicNumber, isolate_roots
from .exactnum.interval import ComplexBox, Interval, working_precision
from .exactnum.rational import format_rational, parse_rational
from .galois import INCONCLUSIVE, certify_symmetric
from .polyring import IntPoly, ParseError, binomial_irreducible, parse_poly
from .certify.checker import verify_document
from .certify.codec import atomic_write_text, dumps, load_document, make_document, rows_to_csv
from .certify.errors import BudgetError, RefusedError
from .certify.gap import gap_exclusion_scan
from .certify.root import construct_um_root
from .certify.series import LiouvilleSeries, certify_L
from .certify.translate import construct_um_translate, wilms_check

EXIT_OK, EXIT_ERROR, EXIT_REFUSED = 0, 1, 2


class ConfigError(ValueError):
    pass


# -- run configuration --------------------------------------------------------------------------


@dataclass(frozen=True)
class RunConfig:
    """Every knob of a run.  Stored on disk as ``key = value`` lines."""

    poly: str | None = None
    m: int | None = None
    n: int | None = None
    a: str | None = None
    c: str = "1"
    base: int = 2
    exponents: str = "factorial"
    range: str | None = None
    prec: int = 4096
    primes: int = 1000
    coeff_bound: int = 20
    height_bound: str | None = None
    bit_budget: int = 10**7
    branch: str | None = None
    cert: str | None = None
    out: str | None = None
    csv: str | None = None

    def validate(self) -> RunConfig:
        for name in ("prec", "primes", "coeff_bound", "bit_budget", "base"):
            if getattr(self, name) <= 0:
                raise ConfigError(f"{name} must be positive")
        for name in ("out", "csv"):
            path = getattr(self, name)
            if path:
                parent = Path(path).resolve().parent
                probe = next((p for p in (parent, *parent.parents) if p.exists()), None)
                if probe is None or not os.access(probe, os.W_OK):
                    raise ConfigError(f"{name} directory is not writable: {parent}")
        if self.range is not None:
            self.n_range()
        return self

    def n_range(self, default: tuple[int, int] | None = None) -> tuple[int, int]:
        if self.range is None:
            if default is None:
                raise ConfigError("--range is required")
            return default
        lo, sep, hi = self.range.partition("..")
        try:
            out = (int(lo), int(hi))
        except ValueError:
            raise ConfigError(f"bad range {self.range!r}; expected a..b") from None
        if not sep or out[0] < 1 or out[1] < out[0]:
            raise ConfigError(f"bad range {self.range!r}; expected 1 <= a <= b")
        return out

    def series(self) -> LiouvilleSeries:
        if self.exponents == "factorial":
            return LiouvilleSeries.factorial(self.base)
        kind, _, values = self.exponents.partition(":")
        if kind != "list" or not values:
            raise ConfigError("exponents must be 'factorial' or 'list:e1,e2,...'")
        return LiouvilleSeries.explicit(self.base, [int(v) for v in values.split(",")])

    def polynomial(self) -> IntPoly:
        if self.poly is None:
            raise ConfigError("--poly is required")
        return parse_poly(self.poly)

    def require(self, name: str):
        value = getattr(self, name)
        if value is None:
            raise ConfigError(f"--{name.replace('_', '-')} is required")
        return value

    def branch_box(self) -> ComplexBox | None:
        if self.branch is None:
            return None
        parts = [parse_rational(p) for p in self.branch.split(",")]
        if len(parts) != 4:
            raise ConfigError("branch must be re_lo,re_hi,im_lo,im_hi")
        return ComplexBox(Interval(parts[0], parts[1]), Interval(parts[2], parts[3]))

    # file format
    def to_text(self) -> str:
        lines = ["# umlab run configuration"]
        for f in fields(self):
            value = getattr(self, f.name)
            if value is not None:
                lines.append(f"{f.name} = {value}")
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> RunConfig:
        types = {f.name: f.type for f in fields(cls)}
        values: dict = {}
        for lineno, raw in enumerate(text.splitlines(), 1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            key, sep, value = line.partition("=")
            key = key.strip().replace("-", "_")
            if not sep or key not in types:
                raise ConfigError(f"config line {lineno}: unknown or malformed entry {raw!r}")
            value = value.strip()
            values[key] = int(value) if types[key].startswith("int") else value
        return cls(**values)

    def merged(self, overrides: dict) -> RunConfig:
        return dataclasses.replace(self, **{k: v for k, v in overrides.items() if v is not None})

    def run_record(self, command: str) -> dict:
        keep = {f.name: getattr(self, f.name) for f in fields(self) if f.name not in ("out", "csv")}
        return {"command": command, "config": {k: v for k, v in keep.items() if v is not None}}


# -- commands ------------------------------------------------------------------------------------------


@dataclass
class Outcome:
    code: int
    lines: list[str]
    doc: dict | None = None
    csv_rows: list[dict] | None = None


def _doc(kind: str, payload: dict, cfg: RunConfig, command: str) -> dict:
    return make_document(kind, payload, cfg.run_record(command))


def cmd_certify_l(cfg: RunConfig) -> Outcome:
    cert = certify_L(cfg.series(), cfg.n_range((1, 9)), cfg.bit_budget)
    lines = [f"n={r.n}  v_n={format_rational(r.v)}  ratio={format_rational(r.ratio)}" for r in cert.rows]
    lines.append(f"A = {format_rational(cert.A)}  status: {'certified' if cert.certified else 'refused'}")
    code = EXIT_OK if cert.certified else EXIT_REFUSED
    return Outcome(code, lines, _doc("L-number", cert.to_json(), cfg, "certify-l"), cert.csv_rows())


def _root_certificate(cfg: RunConfig):
    return construct_um_root(
        cfg.series(), cfg.polynomial(), int(cfg.require("m")), cfg.branch_box(), cfg.n_range((1, 7)),
        bit_budget=cfg.bit_budget,
    )


def cmd_um_root(cfg: RunConfig) -> Outcome:
    cert = _root_certificate(cfg)
    lines = [
        f"n={r.n}  h(beta_n)={r.h_beta.render_float()}  w_n={float(r.w):.6g}  ({r.approximant.verdict.reason})"
        for r in cert.rows
    ]
    B = "none" if cert.B_empirical is None else f"{float(cert.B_empirical):.6g}"
    lines.append(f"B_empirical = {B} <= B_claimed = {format_rational(cert.B_claimed)}")
    lines.append(f"status: {'certified' if cert.certified else 'refused'}")
    code = EXIT_OK if cert.certified else EXIT_REFUSED
    return Outcome(code, lines, _doc("um-root", cert.to_json(), cfg, "construct-um-root"), cert.csv_rows())


def _pick_gamma(f: IntPoly, branch: ComplexBox | None) -> AlgebraicNumber:
    boxes = isolate_roots(f.primitive())
    if branch is not None:
        hits = [b for b in boxes if b.intersects(branch)]
        if len(hits) != 1:
            raise ConfigError(f"--branch must meet exactly one root of {f}; it meets {len(hits)}")
        return AlgebraicNumber(f.primitive(), hits[0], True)
    upper = [b for b in boxes if b.im.lo > 0]
    if not upper:
        raise RefusedError(f"{f} has no non-real root")
    return AlgebraicNumber(f.primitive(), upper[0], True)


def cmd_um_translate(cfg: RunConfig) -> Outcome:
    gamma = _pick_gamma(cfg.polynomial(), cfg.branch_box())
    cert = construct_um_translate(gamma, cfg.series(), cfg.n_range((1, 8)), cfg.primes, cfg.bit_budget)
    lines = [f"n={r.n}  beta_n degree {r.minpoly.degree}  w_n={float(r.w):.6g}" for r in cert.rows]
    lines.append(f"C = {format_rational(cert.C)}  B_empirical = {float(cert.B_empirical):.6g}")
    lines.append(f"status: {'certified' if cert.certified else 'refused'}")
    code = EXIT_OK if cert.certified else EXIT_REFUSED
    return Outcome(code, lines, _doc("um-translate", cert.to_json(), cfg, "construct-um-translate"), cert.csv_rows())


def cmd_genus(cfg: RunConfig) -> Outcome:
    Q = cfg.polynomial()
    if cfg.m is not None:
        report = verify_degm_hypotheses(cfg.m, Q)
        lines = [f"Y^{e.q}: g = {e.genus}" + (f" ({e.failure})" if e.failure else "") for e in report.entries]
        if report.quartic:
            lines.append(f"Y^4 = -Q/4: g = {report.quartic.genus}")
        lines.append(f"simple zeros k = {report.k_found}, required {report.k_required}")
        lines.append(f"verdict: {'hypotheses hold' if report.verdict else 'hypotheses fail'}")
        code = EXIT_OK if report.verdict else EXIT_REFUSED
        return Outcome(code, lines, _doc("hypotheses", report.to_json(), cfg, "genus"))
    n = int(cfg.require("n"))
    c = parse_rational(cfg.c)
    try:
        curve = SuperellipticCurve.build(n, Q, c)
    except CurveError as exc:
        payload = {"n": n, "c": format_rational(c), "poly": Q.to_json(), "genus": None, "branch_points": None,
                   "failure": str(exc)}
        return Outcome(EXIT_REFUSED, [f"refused: {exc}"], _doc("genus", payload, cfg, "genus"))
    g = superelliptic_genus(curve)
    payload = {"n": n, "c": format_rational(c), "poly": Q.to_json(), "genus": g,
               "branch_points": branch_point_count(curve)}
    return Outcome(EXIT_OK, [f"g = {g}"], _doc("genus", payload, cfg, "genus"))


def cmd_binomial(cfg: RunConfig) -> Outcome:
    m = int(cfg.require("m"))
    a = parse_rational(cfg.require("a"))
    verdict = binomial_irreducible(m, a)
    if verdict.irreducible:
        line = f"irreducible: X^{m} - ({format_rational(a)})"
    elif verdict.witness and "minus_four_c4" in verdict.witness:
        line = "reducible: a ∈ −4Q⁴"
    else:
        line = f"reducible: {verdict.reason}"
    return Outcome(EXIT_OK, [line], _doc("binomial", verdict.to_json(), cfg, "binomial"))


def cmd_galois(cfg: RunConfig) -> Outcome:
    cert = certify_symmetric(cfg.polynomial(), cfg.primes)
    lines = [f"p={w.prime}  pattern={list(w.pattern)}  {w.role}" for w in cert.witnesses]
    lines.append(f"verdict: {cert.verdict}")
    code = EXIT_REFUSED if cert.verdict == INCONCLUSIVE else EXIT_OK
    return Outcome(code, lines, _doc("galois", cert.to_json(), cfg, "galois-cert"))


def cmd_wilms(cfg: RunConfig) -> Outcome:
    res = wilms_check(cfg.polynomial(), cfg.primes)
    if res.certified:
        lines = [f"certified: differences have degree {res.degree_claim}", f"numeric gap {res.numeric_gap}"]
    else:
        lines = ["refused: " + "; ".join(res.reasons)]
    code = EXIT_OK if res.certified else EXIT_REFUSED
    return Outcome(code, lines, _doc("wilms", res.to_json(), cfg, "wilms"))


def _root_from_document(cfg: RunConfig):
    doc = load_document(cfg.cert)
    if doc.get("kind") != "um-root":
        raise ConfigError("--cert must name a um-root certificate")
    report = verify_document(doc)
    if not report.ok:
        raise RefusedError("the source certificate does not verify", report.to_json())
    p = doc["payload"]
    stored = RunConfig.from_text("\n".join(f"{k} = {v}" for k, v in doc["run"]["config"].items()))
    rebuilt = _root_certificate(stored)
    if rebuilt.to_json() != p:
        raise RefusedError("rebuilding the source certificate from its run record gave a different payload")
    return rebuilt, stored


def cmd_gap_scan(cfg: RunConfig) -> Outcome:
    if cfg.cert:
        cert, source_cfg = _root_from_document(cfg)
    else:
        cert, source_cfg = _root_certificate(cfg), cfg
    Q = source_cfg.polynomial()
    hb = None if cfg.height_bound is None else parse_rational(cfg.height_bound)
    report = gap_exclusion_scan(cert, Q, source_cfg.branch_box(), cfg.coeff_bound, hb)
    eta, c = report.selected
    lines = [
        f"scanned {report.scanned} candidates (degree <= {report.m}, coefficients in [-{report.coeff_bound}, "
        f"{report.coeff_bound}]), excluded {report.excluded} approximants",
        f"fitted: |kappa - gamma| >= {float(c):.6g} * exp(-{eta} h(gamma))",
        f"exceptions: {len(report.exceptions)}",
    ]
    payload = {"report": report.to_json(), "root": cert.to_json()}
    code = EXIT_OK if report.passed else EXIT_REFUSED
    return Outcome(code, lines, _doc("gap-scan", payload, cfg, "gap-scan"))


COMMANDS: dict[str, Callable[[RunConfig], Outcome]] = {
    "certify-l": cmd_certify_l,
    "construct-um-root": cmd_um_root,
    "construct-um-translate": cmd_um_translate,
    "genus": cmd_genus,
    "binomial": cmd_binomial,
    "galois-cert": cmd_galois,
    "wilms": cmd_wilms,
    "gap-scan": cmd_gap_scan,
}


def run_command(command: str, cfg: RunConfig) -> Outcome:
    cfg.validate()
    with working_precision(cfg.prec):
        return COMMANDS[command](cfg)


def cmd_verify(path: str, as_json: bool = False) -> Outcome:
    try:
        doc = load_document(path)
    except (OSError, json.JSONDecodeError) as exc:
        return Outcome(EXIT_ERROR, [f"error: cannot read {path}: {exc}"])
    report = verify_document(doc)
    if as_json:
        return Outcome(EXIT_OK if report.ok else EXIT_REFUSED, [json.dumps(report.to_json(), indent=2)])
    if report.ok:
        return Outcome(EXIT_OK, [f"verified: {report.kind}, {report.checks} checks passed"])
    lines = [f"FAILED: {report.kind}, {len(report.failures)} of {report.checks} checks failed"]
    lines += [f"  {name}: {detail}" if detail else f"  {name}" for name, detail in report.failures]
    return Outcome(EXIT_REFUSED, lines)


# -- argument parsing ------------------------------------------------------------------------------------


def _parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    opt = common.add_argument
    opt("--config", help="flat key = value run configuration; flags override it")
    opt("--poly", help='polynomial text, e.g. "x^4 - x - 1", "[-1,-1,0,0,1]" or JSON')
    opt("--m", type=int, help="degree m of the approximants")
    opt("--n", type=int, help="cover degree n of Y^n = c Q(X)")
    opt("--a", help="rational a of X^m - a")
    opt("--c", help="rational constant c of Y^n = c Q(X) (default 1)")
    opt("--base", type=int, help="base b of the series (default 2)")
    opt("--exponents", help="'factorial' (default) or 'list:e1,e2,...'")
    opt("--range", help="row range a..b")
    opt("--prec", type=int, help="interval precision in bits (default 4096)")
    opt("--primes", type=int, help="prime budget for Frobenius scans (default 1000)")
    opt("--coeff-bound", type=int, dest="coeff_bound", help="coefficient bound of the exclusion scan (default 20)")
    opt("--height-bound", dest="height_bound", help="optional height cap for scan candidates")
    opt("--bit-budget", type=int, dest="bit_budget", help="largest allowed bit size of b^e_n (default 10^7)")
    opt("--branch", help="re_lo,re_hi,im_lo,im_hi: root branch box (or gamma selector for translates)")
    opt("--cert", help="gap-scan: reuse this um-root certificate")
    opt("--out", help="write the certificate JSON here (atomically)")
    opt("--csv", help="write the plot table here")

    parser = argparse.ArgumentParser(prog="umlab", description="Certified U_m-number constructions.")
    sub = parser.add_subparsers(dest="command", required=True)
    helps = {
        "certify-l": "L-number certificate for a Liouville-type series",
        "construct-um-root": "m-th root construction kappa = Q(lambda)^(1/m)",
        "construct-um-translate": "translate construction kappa = gamma + lambda",
        "genus": "genus of Y^n = c Q(X), or the degree-m hypotheses with --m",
        "binomial": "irreducibility of X^m - a",
        "galois-cert": "Frobenius certificate that Gal(f) is S_m",
        "wilms": "degree m(m-1) of the root differences",
        "gap-scan": "exclusion scan around a root-construction kappa",
    }
    for name, text in helps.items():
        sub.add_parser(name, parents=[common], help=text)
    v = sub.add_parser("verify", help="re-check a certificate with the independent checker")
    v.add_argument("file")
    v.add_argument("--json", action="store_true", help="print the report as JSON")
    return parser


_FLAG_KEYS = {f.name for f in fields(RunConfig)}


def build_config(args: argparse.Namespace) -> RunConfig:
    cfg = RunConfig()
    if args.config:
        cfg = RunConfig.from_text(Path(args.config).read_text(encoding="utf-8"))
    return cfg.merged({k: v for k, v in vars(args).items() if k in _FLAG_KEYS})


def main(argv: list[str] | None = None) -> int:
    args = _parser().parse_args(argv)
    try:
        if args.command == "verify":
            outcome = cmd_verify(args.file, args.json)
        else:
            cfg = build_config(args)
            outcome = run_command(args.command, cfg)
            if outcome.doc is not None and cfg.out:
                atomic_write_text(cfg.out, dumps(outcome.doc))
                outcome.lines.append(f"wrote {cfg.out}")
            if cfg.csv:
                if outcome.csv_rows is None:
                    raise ConfigError(f"{args.command} has no plot table")
                atomic_write_text(cfg.csv, rows_to_csv(outcome.csv_rows))
                outcome.lines.append(f"wrote {cfg.csv}")
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    except BudgetError as exc:
        print(f"error: budget exhausted in {exc}", file=sys.stderr)
        return EXIT_ERROR
    except RefusedError as exc:
        print(f"refused: {exc.reason}", file=sys.stderr)
        return EXIT_REFUSED
    except (ConfigError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    print("\n".join(outcome.lines))
    return outcome.code


if __name__ == "__main__":
    sys.exit(main())
