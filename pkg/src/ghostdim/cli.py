"""Command-line interface.

Exit codes: 0 success, 1 input error, 2 inconclusive estimate, 3 refused
(hypothesis unmet), 4 resource cap, 5 internal invariant violation.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import asdict, dataclass
from pathlib import Path

from . import __version__
from .errors import GhostdimError, InputError
from .io import algebra_from_args, dumps, load_algebra, parse_module_spec

DEFAULT_WINDOW = "0:12"


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


@dataclass
class RunConfig:
    preset: str | None
    algebra: str | None
    window: tuple
    max_term_dim: int
    budget: int
    seed: int
    format: str

    def __post_init__(self):
        n0, n1 = self.window
        if not 0 <= n0 < n1:
            raise InputError(f"window must satisfy n1 > n0 >= 0, got {n0}:{n1}")
        if self.max_term_dim < 1 or self.budget < 1:
            raise InputError("caps must be positive")


def _window(text: str) -> tuple:
    try:
        a, b = text.split(":")
        return int(a), int(b)
    except ValueError:
        raise InputError(f"window must look like n0:n1, got {text!r}") from None


def _element(text: str):
    from .ghost import ElementSpec
    try:
        deg, coords = text.split(":")
        return ElementSpec(int(deg), tuple(int(c) for c in coords.split(",")), f"r{deg}")
    except ValueError:
        raise InputError(f"element must look like degree:c1,c2,..., got {text!r}") from None


def _config(args) -> RunConfig:
    return RunConfig(args.preset, args.algebra, _window(args.window), args.max_term_dim,
                     args.budget, args.seed, args.format)


def _emit(args, command: str, cfg: RunConfig | None, result: dict, markdown: str | None = None):
    from .schemas import validate_output
    doc = {"schema_version": 1, "command": command, "result": result}
    if cfg is not None:
        doc["config"] = {k: list(v) if isinstance(v, tuple) else v for k, v in asdict(cfg).items()}
    validate_output(doc)
    if args.format == "md":
        sys.stdout.write(markdown if markdown is not None else _markdown(command, result))
    else:
        sys.stdout.write(dumps(doc) + "\n")


def _markdown(command: str, result: dict) -> str:
    lines = [f"# {command}", ""]
    for k, v in sorted(result.items()):
        lines.append(f"- **{k}**: {json.dumps(v, sort_keys=True)}")
    return "\n".join(lines) + "\n"


def _setup(args):
    from . import resolution
    cfg = _config(args)
    resolution.MAX_TERM_DIM = cfg.max_term_dim
    A = algebra_from_args(cfg.preset, cfg.algebra)
    return cfg, A


# commands ------------------------------------------------------------------------


def cmd_presets(args):
    from .algebra import PRESETS
    result = {"presets": {name: doc for name, (_, doc) in sorted(PRESETS.items())}}
    _emit(args, "presets", None, result)


def cmd_check(args):
    A = load_algebra(args.file) if args.file else algebra_from_args(args.preset, None)
    from .algebra import simple_top
    top = simple_top(A)
    info = A.describe()
    info.update(valid=True, top_dim=top.dim, num_vertices=A.num_vertices)
    _emit(args, "check", None, info)


def cmd_resolve(args):
    from .resolution import resolve
    cfg, A = _setup(args)
    M = parse_module_spec(A, args.module)
    res = resolve(M, cfg.window[1])
    chk = res.check()
    w = res.periodicity_witness()
    result = {"module": M.label, "betti": res.betti()[: cfg.window[1] + 1],
              "term_lengths": res.term_lengths()[: cfg.window[1] + 1],
              "checks": chk, "periodicity_witness": list(w) if w else None}
    _emit(args, "resolve", cfg, result)


def cmd_ext(args):
    from .resolution import ext_dims
    cfg, A = _setup(args)
    M = parse_module_spec(A, args.module)
    N = parse_module_spec(A, args.target)
    n0, n1 = cfg.window
    dims = ext_dims(M, N, n1)
    _emit(args, "ext", cfg, {"source": M.label, "target": N.label, "start": n0, "dims": dims[n0:]})


def cmd_cx(args):
    from .bounds import cx_module, cx_pair
    cfg, A = _setup(args)
    M = parse_module_spec(A, args.module)
    if args.target:
        est = cx_pair(M, parse_module_spec(A, args.target), cfg.window)
        seq = None
    else:
        est, seq = cx_module(M, cfg.window)
    _emit(args, "cx", cfg, {"module": M.label, "cx": est.d, "kind": est.kind,
                            "stability": est.stability, "betti": seq})


def cmd_koszul(args):
    from .ghost import element_from_spec
    from .growth import GradedMapData, LengthSequence, koszul_length_prediction
    from .resolution import ext, resolve, yoneda_act
    from .triangulated import derived_hom, koszul_object, verify_annihilation
    cfg, A = _setup(args)
    M = parse_module_spec(A, args.module)
    specs = [_element(e) for e in args.element]
    if not specs:
        raise InputError("give at least one --element")
    n0, n1 = cfg.window
    depth = n1 + sum(sp.degree for sp in specs) + 4
    elems = [element_from_spec(M, sp, depth) for sp in specs]
    kos = koszul_object(resolve(M, depth), elems, depth)
    dims = derived_hom(kos.complex, M, (n0, n1)).dims
    result = {"module": M.label, "elements": [sp.to_json() for sp in specs], "start": n0,
              "dims": [dims[n] for n in range(n0, n1 + 1)]}
    if len(elems) == 1:
        e = elems[0]
        g = ext(M, M, n1 + e.degree)
        act = yoneda_act(e, g, n1)
        lengths = LengthSequence(tuple(g.dims[: n1 + 1]), 0)
        data = GradedMapData(e.degree, {n: act[n] for n in range(0, n1 - e.degree + 1)}, lengths, A.field)
        pred = koszul_length_prediction(lengths, data)
        result["prediction"] = pred[n0:]
    if not args.no_annihilation:
        result["annihilation"] = verify_annihilation(kos, M, (n0, min(n1, args.annihilation_top)),
                                                     sides=("from",)).to_json()
    _emit(args, "koszul", cfg, result)


def cmd_ghost(args):
    from .ghost import level_lower_bound, pool_degree, replay
    if args.replay:
        doc = json.loads(Path(args.replay).read_text())
        same, fresh = replay(doc)
        _emit(args, "ghost-replay", None, {"matches": same, "certificate": fresh.to_json()})
        return 0 if same else 5
    cfg, A = _setup(args)
    M = parse_module_spec(A, args.module)
    pool = pool_degree(M, args.pool_degree)
    lb = level_lower_bound(M, M, pool, args.c, cfg.window, args.tail, args.m_min, cfg.seed, cfg.budget)
    _emit(args, "ghost", cfg, lb.to_json())
    return 0 if lb.c >= args.c else 2


def cmd_bounds(args):
    from .bounds import bound_chain, gorenstein_evidence
    cfg, A = _setup(args)
    rep = bound_chain(A, cfg.window, ghost_level=args.ghost_level, noetherian_asserted=args.assume_noetherian)
    if not A.is_semisimple():
        rep.data["gorenstein"] = gorenstein_evidence(A, cfg.window)
    _emit(args, "bounds", cfg, rep.to_json(), rep.to_markdown())


def cmd_hochschild(args):
    from .bounds import hochschild_bound
    cfg, A = _setup(args)
    rep = hochschild_bound(A, cfg.window, noetherian_asserted=args.assume_noetherian)
    _emit(args, "hochschild", cfg, rep.to_json(), rep.to_markdown())


# parser ------------------------------------------------------------------------------


def _common(p):
    src = p.add_argument_group("algebra")
    src.add_argument("--preset", help="preset spec such as exterior:3:2 or truncated_poly:2,2:3")
    src.add_argument("--algebra", help="path to a JSON algebra description")
    p.add_argument("--window", default=DEFAULT_WINDOW, help="degree window n0:n1 (default %(default)s)")
    p.add_argument("--max-term-dim", type=int, default=20_000, help="cap on resolution term dimension (default %(default)s)")
    p.add_argument("--budget", type=int, default=32, help="random combinations tried for element pools")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--format", choices=["json", "md"], default="json")


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="ghostdim", description="Homological invariants and lower bounds for "
                                             "finite-dimensional algebras.")
    ap.add_argument("--version", action="version", version=__version__)
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("presets", help="list the preset catalog")
    p.add_argument("action", nargs="?", choices=["list"], default="list")
    p.add_argument("--format", choices=["json", "md"], default="json")
    p.set_defaults(func=cmd_presets)

    for name in ("check", "algebra"):
        p = sub.add_parser(name, help="validate an algebra description")
        if name == "algebra":
            p.add_argument("action", choices=["check"])
        p.add_argument("file", nargs="?")
        p.add_argument("--preset")
        p.add_argument("--format", choices=["json", "md"], default="json")
        p.set_defaults(func=cmd_check)

    p = sub.add_parser("resolve", help="minimal projective resolution")
    _common(p)
    p.add_argument("--module", default="top", help="top | regular | simple:v | file.json")
    p.set_defaults(func=cmd_resolve)

    p = sub.add_parser("ext", help="dimensions of Ext^n(M, N)")
    _common(p)
    p.add_argument("--module", default="top")
    p.add_argument("--target", default="top")
    p.set_defaults(func=cmd_ext)

    p = sub.add_parser("cx", help="complexity from Betti numbers or Ext of a pair")
    _common(p)
    p.add_argument("--module", default="top")
    p.add_argument("--target", default=None)
    p.set_defaults(func=cmd_cx)

    p = sub.add_parser("koszul", help="derived Hom dims of a Koszul object M//r into M")
    _common(p)
    p.add_argument("--module", default="top")
    p.add_argument("--element", action="append", default=[], help="degree:coords in the Ext basis")
    p.add_argument("--no-annihilation", action="store_true")
    p.add_argument("--annihilation-top", type=int, default=8)
    p.set_defaults(func=cmd_koszul)

    p = sub.add_parser("ghost", help="ghost-lemma level certificates")
    _common(p)
    p.add_argument("--module", default="top")
    p.add_argument("--c", type=int, default=1, help="largest level to try")
    p.add_argument("--pool-degree", type=int, default=2)
    p.add_argument("--tail", type=int, default=6)
    p.add_argument("--m-min", type=int, default=3)
    p.add_argument("--replay", help="recheck a stored certificate JSON file")
    p.set_defaults(func=cmd_ghost)

    p = sub.add_parser("bounds", help="inequality chain for dimensions and rep.dim")
    _common(p)
    p.add_argument("--ghost-level", type=int, default=None)
    p.add_argument("--assume-noetherian", action="store_true")
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("hochschild", help="Hochschild cohomology bound")
    _common(p)
    p.add_argument("--assume-noetherian", action="store_true")
    p.set_defaults(func=cmd_hochschild)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        code = args.func(args)
    except GhostdimError as e:
        print(f"ghostdim: {type(e).__name__}: {e}", file=sys.stderr)
        return e.exit_code
    return code or 0


if __name__ == "__main__":
    sys.exit(main())
