"""Command-line interface.

Subcommands
  sympower       symbolic symmetric power of the generic matrix
  kalman-matrix  stacked observability-style matrix for a form
  kalman-det     its determinant (single-form, square case)
  salmon         resultant pipeline for ternary conics: the extraneous
                 factor and the eigenpoint-locus equation
  audit          randomized-but-seeded factorization audit
  degrees        enumerative degree formulas (single report or full table)
  chow           truncated intersection classes and their coefficients
  witness        exact eigenstructure witnesses and hypersurface points

Shared flags: --n --d --f --seed --trials --format {text|json|csv}.
Exit codes: 0 success, 1 a requested check failed, 2 parse/validation
error, 3 internal invariant breach.  Output is deterministic for a fixed
seed; every printed polynomial re-parses to the identical canonical value.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from dataclasses import dataclass, field

from .chow import (
    SetPartition,
    class_W,
    class_WsP,
    class_Wtilde,
    coeff_ctilde,
    fixture_E3,
    fixture_Wtilde3,
)
from .enumerative import degrees_table_csv, discriminant_budget
from .kalman import KalmanInstance, factorization_audit, kalman_det, kalman_matrix
from .polycore import (
    Polynomial,
    PolynomialParseError,
    parse_polynomial,
    x_universe,
)
from .polymatrix import PolyMatrix
from .salmon import g1_factor, kalman_conic_equation
from .veronese import basis_size, sym_power
from .witness import (
    mu_witness,
    sample_on_hypersurface,
    special_locus_matrix,
)

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_PARSE = 2
EXIT_INTERNAL = 3


class CheckFailed(RuntimeError):
    """A check the user requested reported failure."""


@dataclass
class RunConfig:
    """Validated invocation parameters."""

    subcommand: str
    n: int | None = None
    d: int | None = None
    f: str | None = None
    seed: int = 0
    trials: int = 20
    format: str = "text"
    extras: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.format not in ("text", "json", "csv"):
            raise ValueError(f"unknown format {self.format!r}")
        if self.n is not None and self.n < 1:
            raise ValueError("--n must be positive")
        if self.d is not None and self.d < 1:
            raise ValueError("--d must be positive")
        if self.trials < 1:
            raise ValueError("--trials must be positive")

    @classmethod
    def from_args(cls, args: argparse.Namespace) -> "RunConfig":
        known = {"cmd", "n", "d", "f", "seed", "trials", "format"}
        extras = {k: v for k, v in vars(args).items() if k not in known}
        return cls(
            subcommand=args.cmd,
            n=getattr(args, "n", None),
            d=getattr(args, "d", None),
            f=getattr(args, "f", None),
            seed=getattr(args, "seed", 0),
            trials=getattr(args, "trials", 20),
            format=getattr(args, "format", "text"),
            extras=extras,
        )


def _json(obj) -> str:
    return json.dumps(obj, indent=2, default=str)


_VAR_INDEX = re.compile(r"x(\d+)")


def _parse_form(cfg: RunConfig) -> Polynomial:
    if not cfg.f:
        raise ValueError("this subcommand requires a form via --f")
    n = cfg.n
    if n is None:
        idx = [int(m) for m in _VAR_INDEX.findall(cfg.f)]
        if not idx:
            raise PolynomialParseError(f"no variables x1..xn found in {cfg.f!r}")
        n = max(idx)
    return parse_polynomial(cfg.f, x_universe(n))


def _require_text_or_json(cfg: RunConfig) -> None:
    if cfg.format == "csv":
        raise ValueError("csv output is only available for `degrees --table`")


# -- subcommands ---------------------------------------------------------------


def _cmd_sympower(cfg: RunConfig) -> str:
    _require_text_or_json(cfg)
    if cfg.n is None or cfg.d is None:
        raise ValueError("sympower requires --n and --d")
    M = sym_power(PolyMatrix.generic(cfg.n), cfg.d)
    if cfg.format == "json":
        return _json({
            "n": cfg.n,
            "d": cfg.d,
            "N": basis_size(cfg.n, cfg.d),
            "matrix": M.to_json_obj(),
        })
    return M.to_text()


def _cmd_kalman_matrix(cfg: RunConfig) -> str:
    _require_text_or_json(cfg)
    f = _parse_form(cfg)
    inst = KalmanInstance.from_form(f, cfg.n, cfg.d)
    K = kalman_matrix(inst, PolyMatrix.generic(inst.n))
    if cfg.format == "json":
        return _json({
            "n": inst.n,
            "d": inst.d,
            "p": inst.p,
            "N": inst.N,
            "shape": [K.nrows, K.ncols],
            "matrix": K.to_json_obj(),
        })
    return K.to_text()


def _cmd_kalman_det(cfg: RunConfig) -> str:
    _require_text_or_json(cfg)
    f = _parse_form(cfg)
    det = kalman_det(f, cfg.n, cfg.d)
    if cfg.format == "json":
        return _json({
            "n": f.u.nvars,
            "d": f.is_homogeneous(),
            "f": f.to_text(),
            "degree": det.degree(),
            "terms": det.term_count(),
            "det": det.to_text(),
        })
    return det.to_text()


def _cmd_salmon(cfg: RunConfig) -> str:
    _require_text_or_json(cfg)
    conic_text = cfg.extras.get("conic") or cfg.f
    f = None
    if conic_text:
        f = parse_polynomial(conic_text, x_universe(3))
    g1 = g1_factor(f)
    g2 = kalman_conic_equation(f)
    a_names = tuple(nm for nm in g2.u.names if nm.startswith("a"))
    b_names = tuple(nm for nm in g2.u.names if nm.startswith("b"))
    info = {
        "conic": f.to_text() if f is not None else "generic",
        "g1": g1.to_text(),
        "g1_terms": g1.term_count(),
        "g2_terms": g2.term_count(),
        "g2_degree_matrix_entries": g2.degree_in(a_names),
        "g2_degree_conic_coefficients": g2.degree_in(b_names),
    }
    if cfg.format == "json":
        info["g2"] = g2.to_text()
        return _json(info)
    return "\n".join(f"{k} = {v}" for k, v in info.items())


def _cmd_audit(cfg: RunConfig) -> str:
    _require_text_or_json(cfg)
    f = _parse_form(cfg)
    report = factorization_audit(f, cfg.n, cfg.d, trials=cfg.trials, seed=cfg.seed)
    if cfg.format == "json":
        out = _json(report)
    else:
        lines = [f"audit n={report['n']} d={report['d']} f={report['f']} "
                 f"seed={report['seed']} trials={report['trials']}"]
        for a in report["assertions"]:
            lines.append(f"  {a['assertion']}: {a['status']}")
        lines.append(f"overall: {report['status']}")
        out = "\n".join(lines)
    if report["status"] != "pass":
        raise CheckFailed(out)
    return out


def _cmd_degrees(cfg: RunConfig) -> str:
    if cfg.extras.get("table"):
        if cfg.format == "json":
            raise ValueError("the degree table is emitted as csv or text")
        return degrees_table_csv().rstrip("\n")
    _require_text_or_json(cfg)
    if cfg.n is None or cfg.d is None:
        raise ValueError("degrees requires --n and --d (or --table)")
    rep = discriminant_budget(cfg.n, cfg.d)
    if cfg.format == "json":
        return _json(rep.to_json_obj())
    lines = [f"degrees n={cfg.n} d={cfg.d}"]
    for kk, vv in rep.values.items():
        lines.append(f"  {kk} = {vv}")
    for flag in rep.flags:
        lines.append(f"  note: {flag}")
    return "\n".join(lines)


def _parse_partition(text: str) -> SetPartition:
    blocks = []
    for blk in text.split("|"):
        blk = blk.strip()
        if not blk:
            raise ValueError(f"empty block in partition {text!r}")
        blocks.append([int(x) for x in blk.split(",")])
    return SetPartition.of(blocks)


def _cmd_chow(cfg: RunConfig) -> str:
    _require_text_or_json(cfg)
    if cfg.n is None:
        raise ValueError("chow requires --n")
    s = cfg.extras.get("s")
    if s is None:
        raise ValueError("chow requires --s (number of eigenvector factors)")
    if cfg.extras.get("ctilde"):
        value = coeff_ctilde(cfg.n, s)
        if cfg.format == "json":
            return _json({"n": cfg.n, "s": s, "ctilde": value})
        return str(value)
    partition = cfg.extras.get("partition")
    if partition:
        cls = class_WsP(cfg.n, s, _parse_partition(partition))
        name = f"W_({s},{partition})"
    elif cfg.extras.get("w"):
        cls = class_W(cfg.n, s)
        name = f"W_{s}"
    elif cfg.extras.get("e3"):
        cls = fixture_E3(cfg.n)
        name = "E_3"
    else:
        cls = fixture_Wtilde3(cfg.n) if (cfg.n, s) == (3, 3) else class_Wtilde(cfg.n, s)
        name = f"W~_{s}"
    if cfg.format == "json":
        obj = cls.to_json_obj()
        obj["class"] = name
        obj["text"] = cls.to_text()
        return _json(obj)
    return cls.to_text()


def _cmd_witness(cfg: RunConfig) -> str:
    _require_text_or_json(cfg)
    kind = cfg.extras.get("kind")
    if kind:
        if cfg.n is None:
            raise ValueError("witness --kind requires --n")
        res = special_locus_matrix(kind, cfg.n, seed=cfg.seed)
        obj = {"kind": kind, "n": cfg.n, "seed": cfg.seed,
               "A": [[str(x) for x in row] for row in res["A"]],
               "certificate": res["certificate"]}
        if cfg.format == "json":
            return _json(obj)
        return "\n".join(f"{k} = {v}" for k, v in obj.items())
    f = _parse_form(cfg)
    mu_text = cfg.extras.get("mu")
    if mu_text:
        mu = tuple(int(x) for x in mu_text.split(","))
        w = mu_witness(f, mu, f.u.nvars, seed=cfg.seed)
        obj = {"f": f.to_text(), "mu": list(mu), "seed": cfg.seed,
               "A": [[str(x) for x in row] for row in w.A],
               "eigenvalues": [str(x) for x in w.eigenvalues],
               "vectors": [[str(x) for x in v] for v in w.vectors],
               "certificate": w.certificate}
        if cfg.format == "json":
            return _json(obj)
        return "\n".join(f"{k} = {v}" for k, v in obj.items())
    pt = sample_on_hypersurface(f, seed=cfg.seed)
    value = f.evaluate(pt)
    obj = {"f": f.to_text(), "seed": cfg.seed,
           "point": [str(x) for x in pt], "value": str(value)}
    if value != 0:  # pragma: no cover - sampling is exact
        raise CheckFailed(_json(obj))
    if cfg.format == "json":
        return _json(obj)
    return "\n".join(f"{k} = {v}" for k, v in obj.items())


_DISPATCH = {
    "sympower": _cmd_sympower,
    "kalman-matrix": _cmd_kalman_matrix,
    "kalman-det": _cmd_kalman_det,
    "salmon": _cmd_salmon,
    "audit": _cmd_audit,
    "degrees": _cmd_degrees,
    "chow": _cmd_chow,
    "witness": _cmd_witness,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="kalmanvar",
        description="Exact computer algebra for eigenpoint varieties of "
                    "polynomial observation systems.",
    )
    sub = parser.add_subparsers(dest="cmd", required=True)

    def common(p: argparse.ArgumentParser, *, form: bool = True) -> None:
        p.add_argument("--n", type=int, default=None, help="number of variables")
        p.add_argument("--d", type=int, default=None, help="form degree")
        if form:
            p.add_argument("--f", type=str, default=None,
                           help="form in the text grammar, e.g. 'x2^2-x1*x3'")
        p.add_argument("--seed", type=int, default=0, help="RNG seed")
        p.add_argument("--trials", type=int, default=20, help="trial count")
        p.add_argument("--format", choices=("text", "json", "csv"),
                       default="text", help="output format")

    common(sub.add_parser("sympower", help="symbolic symmetric power"), form=False)
    common(sub.add_parser("kalman-matrix", help="stacked block matrix"))
    common(sub.add_parser("kalman-det", help="its determinant (p = 1)"))

    p = sub.add_parser("salmon", help="ternary-conic resultant pipeline")
    common(p)
    p.add_argument("--conic", type=str, default=None,
                   help="ternary conic (defaults to the generic one)")

    common(sub.add_parser("audit", help="factorization audit"))

    p = sub.add_parser("degrees", help="enumerative degree formulas")
    common(p, form=False)
    p.add_argument("--table", action="store_true",
                   help="emit the full golden degree table as csv")

    p = sub.add_parser("chow", help="truncated intersection classes")
    common(p, form=False)
    p.add_argument("--s", type=int, default=None, help="eigenvector factor count")
    p.add_argument("--w", action="store_true", help="full incidence class")
    p.add_argument("--e3", action="store_true",
                   help="two-dimensional-eigenspace fixture class")
    p.add_argument("--ctilde", action="store_true",
                   help="print the shared coefficient value only")
    p.add_argument("--partition", type=str, default=None,
                   help="set partition, e.g. '1,2|3'")

    p = sub.add_parser("witness", help="exact witnesses and points")
    common(p)
    p.add_argument("--mu", type=str, default=None,
                   help="eigenvalue partition, e.g. '1,1'")
    p.add_argument("--kind", type=str, default=None,
                   choices=("rank_deficient", "repeated_eigenvalue_jordan"),
                   help="special-locus matrix kind")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_PARSE if e.code not in (0, None) else EXIT_OK
    try:
        cfg = RunConfig.from_args(args)
        out = _DISPATCH[cfg.subcommand](cfg)
        if out:
            print(out)
        return EXIT_OK
    except CheckFailed as e:
        print(str(e), file=sys.stderr)
        return EXIT_CHECK_FAILED
    except (PolynomialParseError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_PARSE
    except Exception as e:  # pragma: no cover - defensive
        print(f"internal error: {type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
