"""Command-line front end and artifact serialization."""

from __future__ import annotations

import argparse
import json
import logging
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Sequence

from . import intlat
from .basis import BasisSystem, build_basis, load_overrides, reduce_to_basis
from .binomials import (
    SuitableBinomial,
    exponent_matrix,
    is_suitable,
    render_monomial,
    to_lattice_vector,
)
from .errors import CertificationError, DomainError, ResourceError
from .gtsystem import (
    GtParams,
    Triple,
    check_gt_bound,
    derive_params,
    enumerate_wd,
    mu_closed_form,
    triple_to_monomial,
    wd_index,
)
from .markov import ConnectivityReport, minimal_generators, verify_main_theorem

COMMANDS = ("monomials", "mu", "generators", "basis", "reduce", "verify", "export")
FORMATS = ("json", "text", "mat", "m2")
SCHEMA_VERSION = 1

EXIT_OK, EXIT_IO, EXIT_DOMAIN, EXIT_CERT, EXIT_RESOURCE = 0, 1, 2, 3, 4


@dataclass(frozen=True)
class RunConfig:
    d: int
    command: str
    max_degree: int = 4
    format: str = "text"
    out: Optional[Path] = None
    basis_overrides: Optional[Path] = None
    matrix: str = "exponent"
    plus: Optional[tuple] = None
    minus: Optional[tuple] = None

    def __post_init__(self):
        if self.d < 4:
            raise DomainError("d must be ≥ 4")
        if self.command not in COMMANDS:
            raise DomainError(f"unknown command {self.command!r}")
        if not 2 <= self.max_degree <= 6:
            raise DomainError("max_degree must lie in 2..6")
        if self.format not in FORMATS:
            raise DomainError(f"unknown format {self.format!r}")

    @property
    def params(self) -> GtParams:
        return derive_params(self.d)


# -- serialization ------------------------------------------------------------


def _side(m) -> list[list[int]]:
    return [list(t) for t in m]


def _binomial_json(b: SuitableBinomial) -> dict:
    return {"plus": _side(b.plus), "minus": _side(b.minus)}


def artifact_dict(p: GtParams, quadrics, cubics, bs: Optional[BasisSystem] = None) -> dict:
    out = {
        "schema": SCHEMA_VERSION,
        "d": p.d,
        "mu": len(enumerate_wd(p)),
        "triples": [list(t) for t in enumerate_wd(p)],
        "quadrics": [_binomial_json(b) for b in quadrics],
        "cubics": [_binomial_json(b) for b in cubics],
    }
    if bs is not None:
        out["basis"] = {"anchors": [list(s.anchor) for s in bs.specials], "matrix": bs.matrix}
    return out


def load_artifact(source) -> dict:
    """Parse an exported JSON artifact, re-checking every generator.

    Returns a dict with ``params``, ``quadrics``, ``cubics`` and, when present,
    ``basis`` (anchors, matrix).
    """
    data = json.loads(Path(source).read_text()) if not isinstance(source, dict) else source
    if data.get("schema") != SCHEMA_VERSION:
        raise DomainError(f"unsupported schema {data.get('schema')!r}")
    p = derive_params(int(data["d"]))
    if [Triple(*t) for t in data["triples"]] != list(enumerate_wd(p)):
        raise DomainError("triple list does not match W_d")
    parsed = {"params": p}
    for key, n in (("quadrics", 2), ("cubics", 3)):
        gens = []
        for entry in data[key]:
            b = SuitableBinomial(tuple(entry["plus"]), tuple(entry["minus"]))
            if b.n != n or not is_suitable(p, b.plus, b.minus) or b.trivial:
                raise DomainError(f"{key} entry {b} is not a nontrivial suitable {n}-binomial")
            gens.append(b)
        parsed[key] = gens
    if "basis" in data:
        parsed["basis"] = {"anchors": [Triple(*a) for a in data["basis"]["anchors"]],
                           "matrix": data["basis"]["matrix"]}
    return parsed


def mat_text(m: Sequence[Sequence[int]], ncols: Optional[int] = None) -> str:
    rows = len(m)
    cols = len(m[0]) if m else (ncols or 0)
    lines = [f"{rows} {cols}"] + [" ".join(str(x) for x in row) for row in m]
    return "\n".join(lines) + "\n"


def _m2_monomial(m, idx) -> str:
    parts = []
    for t in sorted(set(m)):
        e = m.count(t)
        parts.append(f"w_{idx[t]}" + (f"^{e}" if e > 1 else ""))
    return "*".join(parts)


def m2_script(p: GtParams, generators: Sequence[SuitableBinomial]) -> str:
    wd = enumerate_wd(p)
    idx = wd_index(p)
    lines = [f"-- toric ideal of the degree-{p.d} invariant system, mu = {len(wd)}"]
    for i, t in enumerate(wd):
        lines.append(f"-- w_{i} = {t} = {triple_to_monomial(p, t).render()}")
    lines.append(f"R = QQ[w_0..w_{len(wd) - 1}];")
    body = ",\n".join(f"  {_m2_monomial(b.plus, idx)} - {_m2_monomial(b.minus, idx)}" for b in generators)
    lines.append("I = ideal(\n" + body + "\n  );")
    lines.append("betti res I")
    return "\n".join(lines) + "\n"


# -- commands -----------------------------------------------------------------


def _generators(cfg: RunConfig):
    p = cfg.params
    gens = minimal_generators(p, 3)
    return gens[2], gens[3]


def _basis(cfg: RunConfig) -> BasisSystem:
    p = cfg.params
    overrides = load_overrides(p, cfg.basis_overrides) if cfg.basis_overrides else None
    return build_basis(p, overrides)


def cmd_monomials(cfg: RunConfig) -> str:
    p = cfg.params
    wd = enumerate_wd(p)
    if cfg.format == "json":
        entries = [{"triple": list(t), "exponents": list(triple_to_monomial(p, t))} for t in wd]
        return json.dumps({"d": p.d, "mu": len(wd), "monomials": entries}, indent=1) + "\n"
    if cfg.format == "mat":
        return mat_text(exponent_matrix(p))
    if cfg.format == "m2":
        raise DomainError("monomials supports json, text or mat")
    rows = [f"{str(t):<12} {triple_to_monomial(p, t).render()}" for t in wd]
    rows[-1] += f"    μ={len(wd)}"
    return "\n".join(rows) + "\n"


def cmd_mu(cfg: RunConfig) -> str:
    p = cfg.params
    mu = mu_closed_form(p)
    if mu != len(enumerate_wd(p)):
        raise CertificationError(f"closed form {mu} disagrees with enumeration")
    bound = (p.d + 2) * (p.d + 1) // 2
    if cfg.format == "json":
        return json.dumps({"d": p.d, "mu": mu, "bound": bound, "within_bound": check_gt_bound(p)}) + "\n"
    return f"d={p.d} k={p.k} eps={p.eps} k'={p.kprime} rho={p.rho}\nμ={mu} (bound {bound})\n"


def cmd_generators(cfg: RunConfig) -> str:
    p = cfg.params
    quadrics, cubics = _generators(cfg)
    if cfg.format == "json":
        return json.dumps(artifact_dict(p, quadrics, cubics), indent=1) + "\n"
    if cfg.format == "m2":
        return m2_script(p, quadrics + cubics)
    if cfg.format == "mat":
        return mat_text([to_lattice_vector(p, b) for b in quadrics + cubics], len(enumerate_wd(p)))
    lines = [f"{len(quadrics)} quadrics, {len(cubics)} cubics"]
    lines += [str(b) for b in quadrics + cubics]
    return "\n".join(lines) + "\n"


def cmd_basis(cfg: RunConfig) -> str:
    p = cfg.params
    bs = _basis(cfg)
    if cfg.format == "json":
        data = {"d": p.d, "anchors": [list(s.anchor) for s in bs.specials],
                "sources": [s.source for s in bs.specials], "matrix": bs.matrix,
                "invariant_factors": bs.invariant_factors}
        return json.dumps(data, indent=1) + "\n"
    if cfg.format == "mat":
        return mat_text(bs.matrix)
    if cfg.format == "m2":
        raise DomainError("basis supports json, text or mat")
    width = max(len(str(x)) for row in bs.matrix for x in row)
    lines = [f"basis {len(bs.matrix)}x{len(bs.wd_prime) + 4}"]
    for s, row in zip(bs.specials, bs.matrix):
        lines.append(" ".join(f"{x:>{width}}" for x in row) + f"   D{s.anchor} {s.binomial}")
    lines.append("SNF " + ",".join(map(str, bs.invariant_factors)))
    return "\n".join(lines) + "\n"


def _parse_triples(items) -> tuple:
    try:
        return tuple(Triple(*(int(x) for x in s.split(","))) for s in items)
    except (TypeError, ValueError):
        raise DomainError(f"cannot parse triples {items!r}; expected r,g,d") from None


def cmd_reduce(cfg: RunConfig) -> str:
    p = cfg.params
    bs = _basis(cfg)
    if cfg.plus or cfg.minus:
        plus, minus = _parse_triples(cfg.plus or ()), _parse_triples(cfg.minus or ())
        if not is_suitable(p, plus, minus):
            raise DomainError("plus and minus do not form a suitable binomial")
        targets = [SuitableBinomial(plus, minus)]
    else:
        q, c = _generators(cfg)
        targets = q + c
    results = [(b, reduce_to_basis(bs, to_lattice_vector(p, b))) for b in targets]
    if cfg.format == "json":
        return json.dumps([{**_binomial_json(b), "coefficients": c} for b, c in results], indent=1) + "\n"
    return "".join(f"{b}: {' '.join(map(str, c))}\n" for b, c in results)


def render_report(r: ConnectivityReport) -> str:
    lines = [f"d={r.d} max_degree={r.max_degree}: {len(r.quadrics)} quadrics, {len(r.cubics)} cubics"]
    for s in r.degrees:
        lines.append(f"degree {s.n}: {s.fibers} fibers, {s.monomials} monomials, "
                     f"{len(s.disconnected)} disconnected, {s.new_generators} new generators")
        for f in s.disconnected:
            reps = ", ".join(render_monomial(m) for m in f.representatives)
            lines.append(f"  {tuple(f.multidegree)} size {f.size}, {f.components} components: {reps}")
    if r.m3 is not None:
        lines.append("M3 comparison:")
        lines.append(f"  listed {len(r.m3)}, isolated degree-3 monomials {len(r.isolated3)}")
        lines.append("  listed but not isolated: " + (", ".join(render_monomial(m) for m in sorted(r.m3_not_isolated)) or "none"))
        lines.append("  isolated but not listed: " + (", ".join(render_monomial(m) for m in sorted(r.isolated_not_in_m3)) or "none"))
        extra = r.obstructed_fibers_without_m3
        lines.append(f"  disconnected fibers without a listed member: {len(extra)}"
                     + ("" if not extra else " " + ", ".join(str(tuple(f.multidegree)) for f in extra)))
    if r.passed:
        if r.m3 is None:
            lines.append("PASS: all fibers connected (quadrics)")
        else:
            lines.append(f"PASS: all fibers of degree 4..{r.max_degree} connected (quadrics + cubics)")
    else:
        lines.append("FAIL: some fibers need generators beyond the expected degrees")
    return "\n".join(lines) + "\n"


def cmd_verify(cfg: RunConfig) -> tuple[str, int]:
    p = cfg.params
    r = verify_main_theorem(p, max(3, cfg.max_degree))
    if cfg.format == "json":
        data = {
            "d": r.d, "max_degree": r.max_degree, "passed": r.passed,
            "quadrics": len(r.quadrics), "cubics": [_binomial_json(b) for b in r.cubics],
            "degrees": [{"n": s.n, "fibers": s.fibers, "disconnected": [
                {"multidegree": list(f.multidegree), "size": f.size, "components": f.components,
                 "representatives": [_side(m) for m in f.representatives]} for f in s.disconnected]}
                for s in r.degrees],
        }
        if r.m3 is not None:
            data["m3"] = {"listed_not_isolated": [_side(m) for m in sorted(r.m3_not_isolated)],
                          "isolated_not_listed": [_side(m) for m in sorted(r.isolated_not_in_m3)]}
        text = json.dumps(data, indent=1) + "\n"
    else:
        text = render_report(r)
    return text, EXIT_OK if r.passed else EXIT_CERT


def cmd_export(cfg: RunConfig) -> str:
    p = cfg.params
    if cfg.format == "mat":
        if cfg.matrix == "basis":
            return mat_text(_basis(cfg).matrix)
        return mat_text(exponent_matrix(p))
    quadrics, cubics = _generators(cfg)
    if cfg.format == "m2":
        return m2_script(p, quadrics + cubics)
    if cfg.format == "json":
        return json.dumps(artifact_dict(p, quadrics, cubics, _basis(cfg)), indent=1) + "\n"
    raise DomainError("export supports mat, m2 or json")


# -- entry point --------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="gtlattice", description="Toric ideal tooling for invariant monomial systems.")
    parser.add_argument("--d", type=int, default=None)
    parser.add_argument("-v", "--verbose", action="store_true")
    common = argparse.ArgumentParser(add_help=False)
    # repeated after the subcommand; SUPPRESS keeps the top-level value when absent
    common.add_argument("--d", type=int, default=argparse.SUPPRESS)
    common.add_argument("--max-degree", type=int, default=4)
    common.add_argument("--format", choices=FORMATS, default=None)
    common.add_argument("--out", type=Path, default=None)
    common.add_argument("--overrides", type=Path, default=None)
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        sp = sub.add_parser(name, parents=[common])
        if name == "export":
            sp.add_argument("--matrix", choices=("exponent", "basis"), default="exponent")
        if name == "reduce":
            sp.add_argument("--plus", nargs="+", metavar="R,G,D")
            sp.add_argument("--minus", nargs="+", metavar="R,G,D")
    return parser


def config_from_args(ns: argparse.Namespace) -> RunConfig:
    if ns.d is None:
        raise DomainError("--d is required")
    fmt = ns.format or ("json" if ns.command == "export" else "text")
    return RunConfig(d=ns.d, command=ns.command, max_degree=ns.max_degree, format=fmt, out=ns.out,
                     basis_overrides=ns.overrides, matrix=getattr(ns, "matrix", "exponent"),
                     plus=getattr(ns, "plus", None), minus=getattr(ns, "minus", None))


HANDLERS = {
    "monomials": cmd_monomials, "mu": cmd_mu, "generators": cmd_generators, "basis": cmd_basis,
    "reduce": cmd_reduce, "verify": cmd_verify, "export": cmd_export,
}


def run(cfg: RunConfig) -> tuple[str, int]:
    result = HANDLERS[cfg.command](cfg)
    return result if isinstance(result, tuple) else (result, EXIT_OK)


def main(argv: Optional[Sequence[str]] = None) -> int:
    ns = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if ns.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        cfg = config_from_args(ns)
        text, code = run(cfg)
        if cfg.out is not None:
            try:
                cfg.out.write_text(text)
            except OSError as exc:
                print(f"error: cannot write {cfg.out}: {exc.strerror}", file=sys.stderr)
                return EXIT_IO
        else:
            sys.stdout.write(text)
        return code
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except CertificationError as exc:
        print(f"certification failed: {exc}", file=sys.stderr)
        return EXIT_CERT
    except ResourceError as exc:
        print(f"resource cap: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except OSError as exc:
        print(f"error: {exc.filename}: {exc.strerror}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
