"""Textual object formats and the job-file grammar used by the CLI.

A job file declares named objects and ends with a single ``run`` line:

    object lie g {
      heisenberg(1) + abelian(2)
    }
    run betti g

Object kinds are ``lie``, ``cdga``, ``subcdga``, ``morphism`` and
``automorphism``; ``#`` starts a comment.  Lie algebras take a ``dim`` line,
an optional ``basis`` naming line and ``[i,j] = ...`` bracket lines (or a
single preset expression); CDGAs take a ``generators`` block of
``name : degree`` lines and an optional ``d`` block of ``name -> element``
lines; sub-CDGAs reference their ambient with ``of`` and list per-degree
bases as ``basis[k] = [...]`` lines.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .cdga import CDGA, SubCDGA, make_subcdga
from .gca import Element, EngineError, GeneratorSet, format_element, parse_element
from .lie import LieAlgebraSpec, heisenberg_sum
from .models import AutomorphismSpec, MorphismSpec


class JobError(EngineError):
    pass


_PRESET_RE = re.compile(
    r"""\A\s*(?:heisenberg\(\s*(?P<l>\d+)\s*\)
         (?:\s*\+\s*abelian\(\s*(?P<r>\d+)\s*\))?
         |abelian\(\s*(?P<r2>\d+)\s*\))\s*\Z""",
    re.VERBOSE,
)


def parse_preset(text):
    """heisenberg(l), abelian(r) or their sum; None if the text is no preset."""
    m = _PRESET_RE.match(text)
    if not m:
        return None
    if m.group("r2") is not None:
        return LieAlgebraSpec(int(m.group("r2")))
    l = int(m.group("l"))
    r = int(m.group("r") or 0)
    return heisenberg_sum(l, r)


def _strip(line):
    if "#" in line:
        line = line[: line.index("#")]
    return line.strip()


def parse_lie_body(lines):
    preset_line = None
    dim = None
    names = None
    bracket_lines = []
    for ln, line in lines:
        if parse_preset(line) is not None:
            preset_line = line
        elif line.startswith("dim"):
            try:
                dim = int(line[3:].strip())
            except ValueError:
                raise JobError(f"line {ln}: cannot read dimension from {line!r}")
        elif line.startswith("basis"):
            names = tuple(line[5:].split())
        elif line.startswith("["):
            bracket_lines.append((ln, line))
        else:
            raise JobError(f"line {ln}: unexpected line in lie body: {line!r}")
    if preset_line is not None:
        if dim is not None or names is not None or bracket_lines:
            raise JobError("a preset cannot be combined with explicit brackets")
        return parse_preset(preset_line)
    if dim is None:
        raise JobError("lie body needs a 'dim m' line or a preset")
    if names is None:
        names = tuple(f"e{i + 1}" for i in range(dim))
    if len(names) != dim:
        raise JobError(f"basis line names {len(names)} vectors, dim is {dim}")
    helper = GeneratorSet([(n, 1) for n in names])
    brackets = {}
    head = re.compile(r"\[\s*(\d+)\s*,\s*(\d+)\s*\]\s*=\s*(.*)\Z")
    for ln, line in bracket_lines:
        m = head.match(line)
        if not m:
            raise JobError(f"line {ln}: malformed bracket line {line!r}")
        i, j = int(m.group(1)) - 1, int(m.group(2)) - 1
        if not (0 <= i < dim and 0 <= j < dim):
            raise JobError(f"line {ln}: bracket index out of range")
        value = parse_element(helper, m.group(3))
        if value.is_zero():
            continue
        if value.degree() != 1:
            raise JobError(f"line {ln}: bracket value must be a linear combination")
        vec = {}
        for mono, coeff in value.terms.items():
            vec[mono.index(1)] = coeff
        brackets[(i, j)] = vec
    return LieAlgebraSpec(dim, brackets, names)


def parse_cdga_body(lines):
    pairs = []
    diffs = []
    mode = None
    for ln, line in lines:
        if line == "generators":
            mode = "generators"
        elif line == "d":
            mode = "d"
        elif mode == "generators":
            if ":" not in line:
                raise JobError(f"line {ln}: expected 'name : degree', got {line!r}")
            name, _, deg = line.partition(":")
            try:
                pairs.append((name.strip(), int(deg.strip())))
            except ValueError:
                raise JobError(f"line {ln}: bad degree in {line!r}")
        elif mode == "d":
            if "->" not in line:
                raise JobError(f"line {ln}: expected 'name -> element', got {line!r}")
            name, _, expr = line.partition("->")
            diffs.append((ln, name.strip(), expr.strip()))
        else:
            raise JobError(f"line {ln}: expected a 'generators' block first")
    if not pairs:
        raise JobError("cdga body declares no generators")
    gens = GeneratorSet(pairs)
    d_values = {}
    for ln, name, expr in diffs:
        try:
            d_values[name] = parse_element(gens, expr)
        except EngineError as exc:
            raise JobError(f"line {ln}: {exc}") from None
    return CDGA(gens, d_values)


_BASIS_RE = re.compile(r"basis\[\s*(\d+)\s*\]\s*=\s*\[(.*)\]\s*\Z")


def parse_subcdga_body(lines, objects):
    ambient = None
    top = None
    levels = {}
    for ln, line in lines:
        if line.startswith("of"):
            name = line[2:].strip()
            ambient = objects.get(name)
            if not isinstance(ambient, CDGA):
                raise JobError(f"line {ln}: {name!r} is not a known cdga")
        elif line.startswith("top"):
            top = int(line[3:].strip())
        else:
            m = _BASIS_RE.match(line)
            if not m:
                raise JobError(f"line {ln}: expected 'basis[k] = [...]', got {line!r}")
            if ambient is None:
                raise JobError(f"line {ln}: 'of <cdga>' must come first")
            k = int(m.group(1))
            body = m.group(2).strip()
            elems = []
            if body:
                for piece in body.split(","):
                    try:
                        elems.append(parse_element(ambient.gens, piece))
                    except EngineError as exc:
                        raise JobError(f"line {ln}: {exc}") from None
            levels[k] = elems
    if ambient is None:
        raise JobError("subcdga body needs an 'of <cdga>' line")
    if top is None:
        top = max(levels) if levels else 0
    bases = [levels.get(k, []) for k in range(top + 1)]
    return make_subcdga(ambient, bases, top)


def _parse_maps(lines, source, target, kind):
    maps = {}
    for ln, name, expr in lines:
        try:
            maps[name] = parse_element(target.gens, expr)
        except EngineError as exc:
            raise JobError(f"line {ln}: {exc}") from None
    return maps


def parse_morphism_body(lines, objects):
    source = target = None
    map_lines = []
    for ln, line in lines:
        if line.startswith("source"):
            source = objects.get(line[6:].strip())
        elif line.startswith("target"):
            target = objects.get(line[6:].strip())
        elif line.startswith("map"):
            rest = line[3:]
            if "->" not in rest:
                raise JobError(f"line {ln}: expected 'map g -> element'")
            name, _, expr = rest.partition("->")
            map_lines.append((ln, name.strip(), expr.strip()))
        else:
            raise JobError(f"line {ln}: unexpected line in morphism body: {line!r}")
    if not isinstance(source, CDGA):
        raise JobError("morphism body needs 'source <cdga>'")
    if not isinstance(target, (CDGA, SubCDGA)):
        raise JobError("morphism body needs 'target <cdga-or-subcdga>'")
    return MorphismSpec(source, target, _parse_maps(map_lines, source, target, "map"))


def parse_automorphism_body(lines, objects):
    source = None
    order = None
    map_lines = []
    for ln, line in lines:
        if line.startswith("on"):
            source = objects.get(line[2:].strip())
        elif line.startswith("order"):
            order = int(line[5:].strip())
        elif line.startswith("map"):
            rest = line[3:]
            if "->" not in rest:
                raise JobError(f"line {ln}: expected 'map g -> element'")
            name, _, expr = rest.partition("->")
            map_lines.append((ln, name.strip(), expr.strip()))
        else:
            raise JobError(f"line {ln}: unexpected line in automorphism body: {line!r}")
    if not isinstance(source, CDGA):
        raise JobError("automorphism body needs 'on <cdga>'")
    if order is None:
        raise JobError("automorphism body needs an 'order k' line")
    return AutomorphismSpec(
        source, _parse_maps(map_lines, source, source, "map"), order
    )


_OBJECT_RE = re.compile(r"object\s+(\w+)\s+(\w+)\s*\{\s*\Z")


def parse_job(text):
    """All named objects plus the single command of a job file."""
    raw = text.splitlines()
    objects = {}
    command = None
    i = 0
    while i < len(raw):
        line = _strip(raw[i])
        ln = i + 1
        if not line:
            i += 1
            continue
        if line.startswith("object"):
            m = _OBJECT_RE.match(line)
            if not m:
                raise JobError(f"line {ln}: malformed object header: {line!r}")
            kind, name = m.group(1), m.group(2)
            if name in objects:
                raise JobError(f"line {ln}: duplicate object name {name!r}")
            body = []
            i += 1
            while i < len(raw):
                inner = _strip(raw[i])
                if inner == "}":
                    break
                if inner:
                    body.append((i + 1, inner))
                i += 1
            else:
                raise JobError(f"object {name!r} is never closed")
            i += 1
            if kind == "lie":
                objects[name] = parse_lie_body(body)
            elif kind == "cdga":
                objects[name] = parse_cdga_body(body)
            elif kind == "subcdga":
                objects[name] = parse_subcdga_body(body, objects)
            elif kind == "morphism":
                objects[name] = parse_morphism_body(body, objects)
            elif kind == "automorphism":
                objects[name] = parse_automorphism_body(body, objects)
            else:
                raise JobError(f"line {ln}: unknown object kind {kind!r}")
        elif line.startswith("run"):
            if command is not None:
                raise JobError(f"line {ln}: a job holds exactly one run line")
            parts = line.split()
            if len(parts) < 2:
                raise JobError(f"line {ln}: run line needs a command")
            command = (parts[1], parts[2:])
            i += 1
        else:
            raise JobError(f"line {ln}: unexpected top-level line: {line!r}")
    if command is None:
        raise JobError("job file has no run line")
    return objects, command


def format_cdga(algebra):
    lines = ["generators"]
    for name, degree in zip(algebra.gens.names, algebra.gens.degrees):
        lines.append(f"  {name} : {degree}")
    if algebra.d_values:
        lines.append("d")
        for name in algebra.gens.names:
            value = algebra.d_values.get(name)
            if value is not None:
                lines.append(f"  {name} -> {format_element(value)}")
    return lines


def format_subcdga(sub):
    lines = []
    for k in range(sub.top + 1):
        inner = ", ".join(format_element(b) for b in sub.basis_elements(k))
        lines.append(f"basis[{k}] = [{inner}]")
    return lines
