"""Command line front end: ``infval {ground,solve,wfm,check,verify,intersect}``.

Exit codes: 0 success, 1 verification failed, 2 input error, 3 resource
limit reached.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from typing import TextIO

from .engine import EngineError, solve
from .interp import interpretation_from_json, is_model, satisfies
from .lang import ParseError, Program, ProgramError, ground, parse_program
from .oracle import (
    DEFAULT_MAX_CANDIDATES,
    ResourceLimitError,
    intersection_sequence,
    random_program,
    verify_minimum,
)
from .truthval import collapse
from .wfs import well_founded

EXIT_OK, EXIT_FAILED, EXIT_INPUT, EXIT_RESOURCE = 0, 1, 2, 3

COMMANDS = ("ground", "solve", "wfm", "check", "verify", "intersect")


class InputError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    input_path: str | None = None
    trace: bool = False
    debug: bool = False
    k_override: int | None = None
    output: str = "json"
    max_candidates: int = DEFAULT_MAX_CANDIDATES
    interp_path: str | None = None
    seed: int | None = None
    atoms: int = 4
    clauses: int = 6
    body_len: int = 2
    neg_prob: float = 0.5

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise ValueError(f"unknown command {self.command!r}")
        if self.k_override is not None and self.k_override < 0:
            raise ValueError("--k must be a natural number")


def _nat(text: str) -> int:
    n = int(text)
    if n < 0:
        raise argparse.ArgumentTypeError(f"expected a natural number, got {text}")
    return n


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("input", nargs="?", help="program file (default: stdin)")
    common.add_argument("--format", dest="output", choices=("json", "text"), default="json")
    common.add_argument("--seed", type=int, help="solve a random program instead of reading input")
    common.add_argument("--atoms", type=_nat, default=4)
    common.add_argument("--clauses", type=_nat, default=6)
    common.add_argument("--body-len", type=_nat, default=2)
    common.add_argument("--neg-prob", type=float, default=0.5)

    oracle = argparse.ArgumentParser(add_help=False)
    oracle.add_argument("--k", dest="k_override", type=_nat, help="truncation order (default depth+2)")
    oracle.add_argument("--max-candidates", type=_nat, default=DEFAULT_MAX_CANDIDATES)

    parser = argparse.ArgumentParser(prog="infval", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("ground", parents=[common], help="print the ground program")
    p = sub.add_parser("solve", parents=[common], help="compute the minimum model")
    p.add_argument("--trace", action="store_true", help="include every stage iterate")
    p.add_argument("--debug", action="store_true", help="verify one stage past the depth")
    sub.add_parser("wfm", parents=[common], help="compare with the alternating fixpoint")
    p = sub.add_parser("check", parents=[common], help="model check an interpretation")
    p.add_argument("--interp", dest="interp_path", required=True, help="interpretation JSON file")
    p = sub.add_parser("verify", parents=[common, oracle], help="brute-force minimality check")
    p.add_argument("--interp", dest="interp_path", help="interpretation to check (default: M_P)")
    sub.add_parser("intersect", parents=[common, oracle], help="model intersection sequence")
    return parser


def config_from_args(argv: list[str] | None = None) -> RunConfig:
    ns = build_parser().parse_args(argv)
    return RunConfig(
        command=ns.command,
        input_path=ns.input,
        trace=getattr(ns, "trace", False),
        debug=getattr(ns, "debug", False),
        k_override=getattr(ns, "k_override", None),
        output=ns.output,
        max_candidates=getattr(ns, "max_candidates", DEFAULT_MAX_CANDIDATES),
        interp_path=getattr(ns, "interp_path", None),
        seed=ns.seed,
        atoms=ns.atoms,
        clauses=ns.clauses,
        body_len=ns.body_len,
        neg_prob=ns.neg_prob,
    )


def _load_program(config: RunConfig, text: str | None) -> Program:
    if config.seed is not None and config.input_path is None and text is None:
        return random_program(config.seed, config.atoms, config.clauses, config.body_len, config.neg_prob)
    if text is None:
        text = _read(config.input_path)
    return ground(parse_program(text))


def _read(path: str | None) -> str:
    if path is None or path == "-":
        return sys.stdin.read()
    try:
        with open(path) as f:
            return f.read()
    except OSError as e:
        raise InputError(f"{path}: {e.strerror}") from None


def _load_interp(path: str, program: Program):
    try:
        m = interpretation_from_json(_read(path))
    except (ValueError, ProgramError) as e:
        raise InputError(f"{path}: {e}") from None
    missing = program.base - set(m)
    extra = set(m) - program.base
    if missing or extra:
        parts = []
        if missing:
            parts.append("missing " + ", ".join(sorted(map(str, missing))))
        if extra:
            parts.append("unknown " + ", ".join(sorted(map(str, extra))))
        raise InputError(f"{path}: interpretation is not total over the base ({'; '.join(parts)})")
    return m


def _table(rows: list[tuple[str, ...]], header: tuple[str, ...]) -> str:
    rows = [header, *rows]
    widths = [max(len(r[i]) for r in rows) for i in range(len(header))]
    return "".join("  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip() + "\n" for r in rows)


def _emit(out: TextIO, config: RunConfig, data: dict, text: str) -> None:
    if config.output == "json":
        out.write(json.dumps(data, indent=2) + "\n")
    else:
        out.write(text)


def _flat(d: dict) -> str:
    return "".join(f"{k}: {json.dumps(v) if not isinstance(v, str) else v}\n" for k, v in d.items())


def _run(config: RunConfig, program: Program, out: TextIO) -> int:
    cmd = config.command
    if cmd == "ground":
        out.write(program.render())
        return EXIT_OK

    trace = solve(program, trace=config.trace, debug=config.debug)
    model = trace.model

    if cmd == "solve":
        data = trace.to_json(trace=config.trace)
        rows = [(str(a), str(v), str(collapse(v))) for a, v in sorted(model.items())]
        text = _table(rows, ("atom", "value", "wfm")) + f"depth: {trace.depth}\n"
        if config.trace:
            for s in trace.stages:
                text += f"stage {s.level}:\n"
                text += "".join(f"  {it!r}\n" for it in s.iterates)
        _emit(out, config, data, text)
        return EXIT_OK

    if cmd == "wfm":
        collapsed = {str(a): str(v) for a, v in sorted(trace.wfm.items())}
        alternating = {str(a): str(v) for a, v in sorted(well_founded(program).items())}
        agree = collapsed == alternating
        data = {"collapsed": collapsed, "well_founded": alternating, "agree": agree}
        rows = [(a, collapsed[a], alternating[a]) for a in collapsed]
        text = _table(rows, ("atom", "collapsed", "well_founded")) + f"agree: {str(agree).lower()}\n"
        _emit(out, config, data, text)
        return EXIT_OK if agree else EXIT_FAILED

    if cmd == "check":
        m = _load_interp(config.interp_path, program)
        ok = is_model(m, program)
        violated = [str(c) for c in program.clauses if not satisfies(m, c)]
        data = {"model": ok, "violated": violated}
        _emit(out, config, data, _flat(data))
        return EXIT_OK if ok else EXIT_FAILED

    k = config.k_override if config.k_override is not None else trace.depth + 2

    if cmd == "verify":
        m = _load_interp(config.interp_path, program) if config.interp_path else model
        res = verify_minimum(program, m, k, config.max_candidates)
        data = {
            "k": k,
            "model_count": res.model_count,
            "minimal": res.minimal,
            "counterexample": res.counterexample.to_json() if res.counterexample else None,
        }
        _emit(out, config, data, _flat(data))
        return EXIT_OK if res.minimal else EXIT_FAILED

    if cmd == "intersect":
        res = intersection_sequence(program, k, config.max_candidates)
        agrees = res.singleton and res.model == model
        data = {
            "k": k,
            "model_count": res.model_count,
            "intersection": {
                "singleton": res.singleton,
                "model": res.model.to_json() if res.singleton else None,
                "depth": res.depth,
                "stage_sizes": [len(s) for s in res.stages],
                "agrees_with_solver": agrees,
            },
        }
        _emit(out, config, data, _flat(data))
        return EXIT_OK if agrees and res.nonempty else EXIT_FAILED

    raise AssertionError(cmd)


def run(config: RunConfig, program_text: str | None = None, out: TextIO | None = None,
        err: TextIO | None = None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    where = config.input_path or "<stdin>"
    try:
        program = _load_program(config, program_text)
        return _run(config, program, out)
    except ParseError as e:
        err.write(f"{where}:{e.line}:{e.col}: {e.msg}\n")
        return EXIT_INPUT
    except (ProgramError, InputError) as e:
        err.write(f"{where}: {e}\n")
        return EXIT_INPUT
    except ResourceLimitError as e:
        err.write(f"resource limit: {e}\n")
        return EXIT_RESOURCE
    except EngineError as e:
        err.write(f"internal error: {e}\n")
        return EXIT_FAILED


def main(argv: list[str] | None = None) -> int:
    return run(config_from_args(argv))


if __name__ == "__main__":
    sys.exit(main())
