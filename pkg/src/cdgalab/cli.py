"""Batch command line: read one job, print deterministic lines, exit.

Every invocation executes exactly one command against the objects declared
in the job file (``--job FILE`` or standard input).  Output is line
oriented and byte-identical across runs; every error path prints a single
``ERROR:`` line first and exits nonzero.
"""

from __future__ import annotations

import argparse
import sys

from .cdga import CDGA, SubCDGA, contraction_dual_to
from .formats import JobError, format_cdga, format_subcdga, parse_job, parse_preset
from .gca import EngineError, format_element, parse_element
from .homology import cohomology
from .lie import LieAlgebraSpec, chevalley_eilenberg, classify_heisenberg_type
from .models import (
    AutomorphismSpec,
    MorphismSpec,
    almost_formal_index,
    ce_almost_formal_presentation,
    check_quasi_iso,
    chevalley_decompose,
    invariant_subcomplex,
    mapping_torus_model,
    rank_of_form,
)


class CommandError(EngineError):
    pass


def _resolve(objects, token):
    if token in objects:
        return objects[token]
    preset = parse_preset(token)
    if preset is not None:
        return preset
    raise CommandError(f"unknown object {token!r}")


def _as_complex(obj):
    """Lie algebras are converted through their dual complex."""
    if isinstance(obj, LieAlgebraSpec):
        return chevalley_eilenberg(obj)
    if isinstance(obj, (CDGA, SubCDGA)):
        return obj
    raise CommandError("expected a lie algebra, cdga or subcdga")


def _pick_top(source, top):
    if top is not None:
        return top
    natural = source.natural_top()
    if natural is None:
        raise CommandError("this object needs an explicit --top")
    return natural


def _need_args(args, n, usage):
    if len(args) < n:
        raise CommandError(f"usage: run {usage}")


def cmd_betti(objects, args, top, fmt):
    _need_args(args, 1, "betti <object>")
    source = _as_complex(_resolve(objects, args[0]))
    data = cohomology(source, _pick_top(source, top))
    if fmt == "tsv":
        return [f"{k}\t{b}" for k, b in enumerate(data.betti)]
    return [f"b[{k}]={b}" for k, b in enumerate(data.betti)]


def cmd_cohomology(objects, args, top, fmt):
    _need_args(args, 1, "cohomology <object>")
    source = _as_complex(_resolve(objects, args[0]))
    data = cohomology(source, _pick_top(source, top))
    if fmt == "tsv":
        lines = []
        for k in range(data.top + 1):
            reps = ", ".join(str(r) for r in data.representatives[k])
            lines.append(f"{k}\t{data.betti[k]}\t[{reps}]")
        return lines
    return data.summary_lines()


def cmd_classify(objects, args, top, fmt):
    _need_args(args, 1, "classify <lie-object>")
    spec = _resolve(objects, args[0])
    if not isinstance(spec, LieAlgebraSpec):
        raise CommandError("classify expects a lie algebra object")
    result = classify_heisenberg_type(spec)
    if result is None:
        return ["NOT_ALMOST_FORMAL"]
    return [f"HEISENBERG_TYPE l={result} m={spec.dim}"]


def cmd_index(objects, args, top, fmt):
    _need_args(args, 1, "index <lie-object>")
    spec = _resolve(objects, args[0])
    if not isinstance(spec, LieAlgebraSpec):
        raise CommandError("index expects a lie algebra object")
    presentation = ce_almost_formal_presentation(spec)
    if presentation is None:
        return ["NOT_ALMOST_FORMAL"]
    return [f"INDEX: {almost_formal_index(presentation)}"]


def cmd_rank(objects, args, top, fmt):
    _need_args(args, 2, "rank <object> <degree-1 element>")
    source = _as_complex(_resolve(objects, args[0]))
    if not isinstance(source, CDGA):
        raise CommandError("rank expects a cdga or lie algebra object")
    eta = parse_element(source.gens, " ".join(args[1:]))
    result = rank_of_form(source, eta, max_power=top)
    wedge = "yes" if result.eta_wedge_nonzero else "no"
    return [
        f"RANK: {result.rank} (p={result.p})",
        f"ETA_WEDGE_NONZERO: {wedge}",
    ]


def cmd_invariant(objects, args, top, fmt):
    _need_args(args, 1, "invariant <automorphism>")
    phi = _resolve(objects, args[0])
    if not isinstance(phi, AutomorphismSpec):
        raise CommandError("invariant expects an automorphism object")
    sub = invariant_subcomplex(phi.source, phi, _pick_top(phi.source, top))
    return format_subcdga(sub)


def cmd_mapping_torus(objects, args, top, fmt):
    _need_args(args, 2, "mapping_torus <object> <new-generator>")
    base = _resolve(objects, args[0])
    if isinstance(base, AutomorphismSpec):
        base = invariant_subcomplex(base.source, base, _pick_top(base.source, top))
    if not isinstance(base, (CDGA, SubCDGA)):
        raise CommandError("mapping_torus expects a cdga, subcdga or automorphism")
    model = mapping_torus_model(base, args[1])
    if isinstance(model, CDGA):
        return format_cdga(model)
    return format_cdga(model.ambient) + format_subcdga(model)


def cmd_qiso(objects, args, top, fmt):
    _need_args(args, 1, "qiso <morphism>")
    psi = _resolve(objects, args[0])
    if not isinstance(psi, MorphismSpec):
        raise CommandError("qiso expects a morphism object")
    report = check_quasi_iso(psi, top)
    return report.lines()


def cmd_decompose(objects, args, top, fmt):
    _need_args(args, 2, "decompose <object> <degree-1 generator>")
    source = _as_complex(_resolve(objects, args[0]))
    if not isinstance(source, CDGA):
        raise CommandError("decompose expects a cdga or lie algebra object")
    gen = args[1]
    contraction = contraction_dual_to(source, gen)
    eta = source.generator(gen)
    result = chevalley_decompose(source, contraction, eta, top=top)
    lines = [
        f"DECOMPOSE: ok (mutually inverse chain maps, degrees 0..{result.model.top})"
    ]
    lines += [f"KERNEL {line}" for line in format_subcdga(result.kernel)]
    d_y = result.model.ambient.d_of_generator(result.y_name)
    lines.append(f"MODEL d{result.y_name} = {format_element(d_y)}")
    return lines


COMMANDS = {
    "betti": cmd_betti,
    "cohomology": cmd_cohomology,
    "classify": cmd_classify,
    "index": cmd_index,
    "rank": cmd_rank,
    "invariant": cmd_invariant,
    "mapping_torus": cmd_mapping_torus,
    "qiso": cmd_qiso,
    "decompose": cmd_decompose,
}


def run_job(text, top=None, fmt="plain"):
    objects, (command, args) = parse_job(text)
    handler = COMMANDS.get(command)
    if handler is None:
        known = ", ".join(sorted(COMMANDS))
        raise CommandError(f"unknown command {command!r} (known: {known})")
    return handler(objects, args, top, fmt)


def main(argv=None):
    parser = argparse.ArgumentParser(
        prog="cdgalab",
        description="Exact CDGA computations driven by a one-command job file.",
    )
    parser.add_argument("--job", help="job file (defaults to standard input)")
    parser.add_argument("--top", type=int, default=None, help="top degree bound")
    parser.add_argument(
        "--format", choices=("plain", "tsv"), default="plain", dest="fmt"
    )
    args = parser.parse_args(argv)
    try:
        if args.job and args.job != "-":
            with open(args.job, encoding="utf-8") as handle:
                text = handle.read()
        else:
            text = sys.stdin.read()
    except OSError as exc:
        print(f"ERROR: {exc}")
        return 1
    try:
        lines = run_job(text, top=args.top, fmt=args.fmt)
    except EngineError as exc:
        print(f"ERROR: {exc}")
        return 1
    for line in lines:
        print(line)
    return 0


if __name__ == "__main__":
    sys.exit(main())
