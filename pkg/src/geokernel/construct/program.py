"""Construction programs: the ``.geo`` text format, its parser and printer.

One definition per line::

    <kind> <name> = <constructor>(<arg>, ...)    # optional comment

Every reference must name an object defined on an earlier line.  The grammar
is written out in docs/grammar.md.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, replace
from decimal import Decimal
from fractions import Fraction

from ..errors import (
    CyclicDefinition,
    DuplicateName,
    ForwardReference,
    KindMismatch,
    ProgramSyntaxError,
    UnknownReference,
)

KINDS = ("point", "circle", "segment", "polygon", "number")
BRANCHES = ("first", "second")
INFINITY = "inf"


@dataclass(frozen=True)
class Ref:
    name: str

    def __str__(self):
        return self.name


# Argument slots: "point"/"circle" are references of that kind, "num" a
# rational literal, "radius" a literal or a number reference, "branch" a
# branch keyword, "param" a literal or ``inf``.
CONSTRUCTORS = {
    "free": ("point", ("num", "num")),
    "value": ("number", ("num",)),
    "circle": ("circle", ("point", "radius")),
    "circle_through": ("circle", ("point", "point")),
    "circumcircle": ("circle", ("point", "point", "point")),
    "intersect": ("point", ("circle", "circle", "branch")),
    "glider": ("point", ("circle", "param")),
    "midpoint": ("point", ("point", "point")),
    "segment": ("segment", ("point", "point")),
    "polygon": ("polygon", None),
}
FREE_CONSTRUCTORS = ("free", "value")


@dataclass(frozen=True)
class Step:
    kind: str
    name: str
    ctor: str
    args: tuple

    @property
    def is_free(self):
        return self.ctor in FREE_CONSTRUCTORS

    @property
    def refs(self):
        return tuple(a.name for a in self.args if isinstance(a, Ref))


@dataclass(frozen=True)
class ConstructionProgram:
    steps: tuple = ()

    def __post_init__(self):
        validate(self.steps)

    def __iter__(self):
        return iter(self.steps)

    def __len__(self):
        return len(self.steps)

    @property
    def names(self):
        return tuple(s.name for s in self.steps)

    def step(self, name):
        for s in self.steps:
            if s.name == name:
                return s
        raise KeyError(name)

    def index(self, name):
        return self.names.index(name)

    def with_step(self, new):
        """Copy of the program with the step of the same name replaced."""
        return ConstructionProgram(tuple(new if s.name == new.name else s for s in self.steps))

    def with_free_point(self, name, x, y):
        s = self.step(name)
        return self.with_step(replace(s, args=(Fraction(x), Fraction(y))))

    def renamed(self, mapping):
        def ren(a):
            return Ref(mapping.get(a.name, a.name)) if isinstance(a, Ref) else a

        steps = tuple(
            replace(s, name=mapping.get(s.name, s.name), args=tuple(ren(a) for a in s.args))
            for s in self.steps
        )
        return ConstructionProgram(steps)

    def __str__(self):
        return print_program(self)


# -- validation ---------------------------------------------------------------

def _slot_kinds(ctor, nargs):
    kind, slots = CONSTRUCTORS[ctor]
    if slots is None:
        return kind, ("point",) * nargs
    return kind, slots


def validate(steps, lines=None, columns=None):
    """Check names, references and argument kinds; raise the matching error.

    ``lines`` and ``columns`` (per-argument) only serve error locations.
    """
    lines = lines or [None] * len(steps)
    columns = columns or [()] * len(steps)
    position = {}
    for i, s in enumerate(steps):
        if s.name in position:
            raise DuplicateName(f"object {s.name!r} is already defined", line=lines[i], column=1)
        position.setdefault(s.name, i)
    kinds = {}
    for i, s in enumerate(steps):
        if s.ctor not in CONSTRUCTORS:
            raise ProgramSyntaxError(f"unknown constructor {s.ctor!r}", line=lines[i],
                                     expected=CONSTRUCTORS)
        kind, slots = _slot_kinds(s.ctor, len(s.args))
        if s.kind != kind:
            raise KindMismatch(f"{s.ctor}() builds a {kind}, not a {s.kind}", line=lines[i])
        if CONSTRUCTORS[s.ctor][1] is None and len(s.args) < 3:
            raise ProgramSyntaxError("polygon needs at least three vertices", line=lines[i])
        if len(s.args) != len(slots):
            raise ProgramSyntaxError(
                f"{s.ctor}() takes {len(slots)} arguments, got {len(s.args)}", line=lines[i]
            )
        cols = tuple(columns[i]) + (None,) * len(s.args)
        for j, (arg, slot) in enumerate(zip(s.args, slots)):
            _check_arg(s, arg, slot, kinds, steps, (lines[i], cols[j]))
        kinds[s.name] = s.kind


def _check_arg(step, arg, slot, kinds, steps, where):
    line, col = where
    later = {s.name for s in steps}
    if isinstance(arg, Ref):
        if slot not in ("point", "circle", "radius"):
            raise ProgramSyntaxError(f"{step.ctor}() expects a literal here, got {arg.name!r}",
                                     line=line, column=col)
        if arg.name == step.name:
            raise CyclicDefinition(f"{step.name!r} refers to itself", line=line, column=col)
        if arg.name not in kinds:
            if arg.name in later:
                if _reaches(steps, arg.name, step.name):
                    raise CyclicDefinition(
                        f"{step.name!r} and {arg.name!r} depend on each other", line=line, column=col)
                raise ForwardReference(f"{arg.name!r} is used before its definition", line=line, column=col)
            raise UnknownReference(f"unknown object {arg.name!r}", line=line, column=col)
        want = "number" if slot == "radius" else slot
        if kinds[arg.name] != want:
            raise KindMismatch(f"{arg.name!r} is a {kinds[arg.name]}, expected a {want}", line=line, column=col)
    elif slot == "branch":
        if arg not in BRANCHES:
            raise ProgramSyntaxError(f"bad branch selector {arg!r}", line=line, column=col, expected=BRANCHES)
    elif slot == "param":
        if not (arg == INFINITY or isinstance(arg, Fraction)):
            raise ProgramSyntaxError("glider parameter must be a number or inf", line=line, column=col)
    elif not isinstance(arg, Fraction):
        raise ProgramSyntaxError(f"{step.ctor}() expects a reference here", line=line, column=col)


def _reaches(steps, start, target):
    by_name = {s.name: s for s in steps}
    seen = set()
    stack = [start]
    while stack:
        n = stack.pop()
        if n == target:
            return True
        if n in seen or n not in by_name:
            continue
        seen.add(n)
        stack.extend(by_name[n].refs)
    return False


# -- lexer / parser -------------------------------------------------------------

_TOKEN = re.compile(
    r"""
    (?P<ws>[ \t]+)
  | (?P<comment>\#.*)
  | (?P<num>[+-]?(?:\d+(?:\.\d*)?|\.\d+)(?:/\d+)?)
  | (?P<name>[^\W\d][\w₀-₉]*)
  | (?P<punct>[=(),])
    """,
    re.VERBOSE,
)


def _tokens(text, lineno):
    pos = 0
    out = []
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ProgramSyntaxError(f"unexpected character {text[pos]!r}", line=lineno,
                                     column=pos + 1)
        kind = m.lastgroup
        if kind == "comment":
            break
        if kind != "ws":
            value = m.group()
            out.append((kind if kind != "punct" else value, value, pos + 1))
        pos = m.end()
    out.append(("eol", "", len(text.rstrip("\r")) + 1))
    return out


class _LineParser:
    def __init__(self, tokens, lineno):
        self.toks = tokens
        self.i = 0
        self.lineno = lineno

    def peek(self):
        return self.toks[self.i]

    def expect(self, *kinds):
        tok = self.toks[self.i]
        if tok[0] not in kinds:
            what = "end of line" if tok[0] == "eol" else repr(tok[1])
            raise ProgramSyntaxError(f"unexpected {what}", line=self.lineno, column=tok[2],
                                     expected=kinds)
        self.i += 1
        return tok

    def parse(self):
        kind_tok = self.expect("name")
        if kind_tok[1] not in KINDS:
            raise ProgramSyntaxError(f"unknown object kind {kind_tok[1]!r}", line=self.lineno,
                                     column=kind_tok[2], expected=KINDS)
        name = self.expect("name")[1]
        self.expect("=")
        ctor_tok = self.expect("name")
        if ctor_tok[1] not in CONSTRUCTORS:
            raise ProgramSyntaxError(f"unknown constructor {ctor_tok[1]!r}", line=self.lineno,
                                     column=ctor_tok[2], expected=CONSTRUCTORS)
        self.expect("(")
        args = []
        self.columns = []
        if self.peek()[0] != ")":
            args.append(self.arg())
            while self.peek()[0] == ",":
                self.i += 1
                args.append(self.arg())
        self.expect(")")
        self.expect("eol")
        return Step(kind_tok[1], name, ctor_tok[1], tuple(args))

    def arg(self):
        tok = self.expect("num", "name")
        self.columns.append(tok[2])
        if tok[0] == "num":
            return parse_number(tok[1])
        if tok[1] in BRANCHES or tok[1] == INFINITY:
            return tok[1]
        return Ref(tok[1])


def parse_number(text):
    if "/" in text:
        num, den = text.split("/")
        if int(den) == 0:
            raise ProgramSyntaxError(f"zero denominator in {text!r}")
        return Fraction(Decimal(num)) / int(den)
    return Fraction(Decimal(text))


def parse_program(text):
    """Parse ``.geo`` text into a validated :class:`ConstructionProgram`."""
    if text.startswith("﻿"):
        text = text[1:]
    steps = []
    lines = []
    columns = []
    for lineno, raw in enumerate(text.replace("\r\n", "\n").split("\n"), start=1):
        toks = _tokens(raw.rstrip("\r"), lineno)
        if toks[0][0] == "eol":
            continue
        parser = _LineParser(toks, lineno)
        steps.append(parser.parse())
        lines.append(lineno)
        columns.append(parser.columns)
    validate(steps, lines, columns)
    return ConstructionProgram(tuple(steps))


def load_program(path):
    with open(path, encoding="utf-8", newline="") as fh:
        return parse_program(fh.read())


# -- printer --------------------------------------------------------------------

def format_number(q):
    """Shortest exact literal for a rational: a decimal when one exists."""
    q = Fraction(q)
    d = q.denominator
    while d % 2 == 0:
        d //= 2
    while d % 5 == 0:
        d //= 5
    if d != 1:
        return f"{q.numerator}/{q.denominator}"
    if q.denominator == 1:
        return str(q.numerator)
    digits = 0
    while (q * 10 ** digits).denominator != 1:
        digits += 1
    scaled = abs(q.numerator * 10 ** digits // q.denominator)
    body = str(scaled).rjust(digits + 1, "0")
    return ("-" if q < 0 else "") + body[:-digits] + "." + body[-digits:]


def _format_arg(a):
    if isinstance(a, Fraction):
        return format_number(a)
    return str(a)


def format_step(s):
    return f"{s.kind} {s.name} = {s.ctor}({', '.join(_format_arg(a) for a in s.args)})"


def print_program(program):
    return "".join(format_step(s) + "\n" for s in program.steps)
