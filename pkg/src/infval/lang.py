"""Normal logic programs: syntax tree, text parser, renderer and grounder.

Text format, one clause per line or terminated by ``.``::

    % comment
    e(a,b).
    r(X,Y) :- e(X,Z), r(Z,Y).
    p :- not q, true.

Grounding follows the usual construction of the propositional program P*:
all instances over the program's constants, empty bodies replaced by
``true``, and ``A :- false`` added for every base atom heading no clause.
"""
from __future__ import annotations

import enum
import itertools
import re
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator, Union


class ProgramError(Exception):
    pass


class ParseError(ProgramError):
    def __init__(self, message: str, line: int, col: int):
        super().__init__(f"line {line}, column {col}: {message}")
        self.msg = message
        self.line = line
        self.col = col


class UnsafeRuleError(ProgramError):
    pass


@dataclass(frozen=True, order=True)
class Var:
    name: str

    def __str__(self) -> str:
        return self.name


Term = Union[str, Var]


@dataclass(frozen=True, order=True)
class Atom:
    pred: str
    args: tuple[Term, ...] = ()

    @property
    def is_ground(self) -> bool:
        return not any(isinstance(t, Var) for t in self.args)

    @property
    def signature(self) -> tuple[str, int]:
        return (self.pred, len(self.args))

    def variables(self) -> set[Var]:
        return {t for t in self.args if isinstance(t, Var)}

    def substitute(self, binding: dict[Var, str]) -> Atom:
        if not self.args:
            return self
        return Atom(self.pred, tuple(binding.get(t, t) if isinstance(t, Var) else t for t in self.args))

    def __str__(self) -> str:
        if not self.args:
            return self.pred
        return f"{self.pred}({','.join(str(t) for t in self.args)})"


class BodyConst(enum.Enum):
    TRUE = "true"
    FALSE = "false"

    def __str__(self) -> str:
        return self.value


TRUE = BodyConst.TRUE
FALSE = BodyConst.FALSE


@dataclass(frozen=True, order=True)
class Literal:
    atom: Atom
    positive: bool = True

    def __str__(self) -> str:
        return str(self.atom) if self.positive else f"not {self.atom}"


BodyItem = Union[Literal, BodyConst]


def pos(atom: Atom | str) -> Literal:
    return Literal(Atom(atom) if isinstance(atom, str) else atom, True)


def neg(atom: Atom | str) -> Literal:
    return Literal(Atom(atom) if isinstance(atom, str) else atom, False)


@dataclass(frozen=True)
class Clause:
    head: Atom
    body: tuple[BodyItem, ...] = ()
    # (line, column) of the head in the source text, when parsed.
    pos: tuple[int, int] | None = field(default=None, compare=False, repr=False)

    def atoms(self) -> Iterator[Atom]:
        yield self.head
        for item in self.body:
            if isinstance(item, Literal):
                yield item.atom

    @property
    def is_ground(self) -> bool:
        return all(a.is_ground for a in self.atoms())

    def variables(self) -> set[Var]:
        out: set[Var] = set()
        for a in self.atoms():
            out |= a.variables()
        return out

    def __str__(self) -> str:
        if not self.body:
            return f"{self.head}."
        return f"{self.head} :- {', '.join(str(b) for b in self.body)}."


def _clause_sort_key(c: Clause):
    return (str(c.head), tuple(str(b) for b in c.body))


@dataclass(frozen=True)
class Program:
    clauses: tuple[Clause, ...]
    base: frozenset[Atom] = frozenset()

    @property
    def is_ground(self) -> bool:
        return all(c.is_ground for c in self.clauses)

    @cached_property
    def atoms(self) -> list[Atom]:
        """Base atoms in sorted order."""
        return sorted(self.base)

    @cached_property
    def rules(self) -> dict[Atom, list[tuple[BodyItem, ...]]]:
        """Clause bodies grouped by head, for every base atom."""
        out: dict[Atom, list[tuple[BodyItem, ...]]] = {a: [] for a in self.atoms}
        for c in self.clauses:
            out.setdefault(c.head, []).append(c.body)
        return out

    def constants(self) -> set[str]:
        return {t for c in self.clauses for a in c.atoms() for t in a.args if not isinstance(t, Var)}

    def predicates(self) -> set[tuple[str, int]]:
        return {a.signature for c in self.clauses for a in c.atoms()}

    def render(self) -> str:
        return "".join(f"{c}\n" for c in self.clauses)

    def __str__(self) -> str:
        return self.render()


# ---------------------------------------------------------------------------
# Parser

_TOKEN_RE = re.compile(
    r"""
    (?P<ws>[ \t\r]+)
  | (?P<comment>%[^\n]*)
  | (?P<nl>\n)
  | (?P<neck>:-)
  | (?P<punct>[.,()])
  | (?P<lower>[a-z][A-Za-z0-9_]*)
  | (?P<upper>[A-Z][A-Za-z0-9_]*)
  """,
    re.VERBOSE,
)

_RESERVED = {"not", "true", "false"}


@dataclass
class _Tok:
    kind: str
    text: str
    line: int
    col: int


def _tokenize(text: str) -> list[_Tok]:
    toks: list[_Tok] = []
    line, line_start, i = 1, 0, 0
    while i < len(text):
        m = _TOKEN_RE.match(text, i)
        if m is None:
            raise ParseError(f"unexpected character {text[i]!r}", line, i - line_start + 1)
        kind = m.lastgroup
        if kind == "punct" or kind == "neck":
            kind = m.group()
        if kind not in ("ws", "comment"):
            toks.append(_Tok(kind, m.group(), line, i - line_start + 1))
        if kind == "nl":
            line += 1
            line_start = m.end()
        i = m.end()
    toks.append(_Tok("eof", "", line, i - line_start + 1))
    return toks


class _Parser:
    def __init__(self, text: str):
        self.toks = _tokenize(text)
        self.i = 0

    @property
    def tok(self) -> _Tok:
        return self.toks[self.i]

    def advance(self) -> _Tok:
        t = self.toks[self.i]
        self.i += 1
        return t

    def skip_nl(self):
        while self.tok.kind == "nl":
            self.i += 1

    def error(self, msg: str, tok: _Tok | None = None):
        tok = tok or self.tok
        found = "end of input" if tok.kind == "eof" else repr(tok.text) if tok.kind != "nl" else "end of line"
        raise ParseError(f"{msg}, found {found}", tok.line, tok.col)

    def expect(self, kind: str) -> _Tok:
        if self.tok.kind != kind:
            self.error(f"expected {kind!r}")
        return self.advance()

    def program(self) -> list[Clause]:
        clauses = []
        self.skip_nl()
        while self.tok.kind != "eof":
            clauses.append(self.clause())
            self.skip_nl()
        return clauses

    def clause(self) -> Clause:
        start = self.tok
        head = self.atom(head=True)
        body: list[BodyItem] = []
        if self.tok.kind == ":-":
            self.advance()
            self.skip_nl()
            body.append(self.body_item())
            while self.tok.kind == ",":
                self.advance()
                self.skip_nl()
                body.append(self.body_item())
        if self.tok.kind == ".":
            self.advance()
        elif self.tok.kind not in ("nl", "eof"):
            self.error("expected ',', '.' or end of line")
        return Clause(head, tuple(body), pos=(start.line, start.col))

    def body_item(self) -> BodyItem:
        t = self.tok
        if t.kind == "lower" and t.text == "not":
            self.advance()
            if self.tok.kind == "lower" and self.tok.text in ("true", "false"):
                self.error("'true' and 'false' cannot be negated")
            return Literal(self.atom(), False)
        if t.kind == "lower" and t.text in ("true", "false"):
            self.advance()
            if self.tok.kind == "(":
                self.error(f"'{t.text}' is reserved")
            return TRUE if t.text == "true" else FALSE
        return Literal(self.atom(), True)

    def atom(self, head: bool = False) -> Atom:
        t = self.tok
        if t.kind != "lower":
            self.error("expected an atom" if not head else "expected a clause head")
        if t.text in _RESERVED:
            self.error(f"{t.text!r} is reserved")
        self.advance()
        args: list[Term] = []
        if self.tok.kind == "(":
            self.advance()
            self.skip_nl()
            args.append(self.term())
            self.skip_nl()
            while self.tok.kind == ",":
                self.advance()
                self.skip_nl()
                args.append(self.term())
                self.skip_nl()
            self.expect(")")
        return Atom(t.text, tuple(args))

    def term(self) -> Term:
        t = self.tok
        if t.kind == "upper":
            self.advance()
            return Var(t.text)
        if t.kind == "lower":
            if t.text in _RESERVED:
                self.error(f"{t.text!r} is reserved")
            self.advance()
            if self.tok.kind == "(":
                raise ParseError(f"function symbol {t.text!r} is not supported", t.line, t.col)
            return t.text
        self.error("expected a constant or variable")


def parse_program(text: str) -> Program:
    """Parse program text; the result may contain variables."""
    clauses = tuple(_Parser(text).program())
    base = frozenset(a for c in clauses for a in c.atoms() if a.is_ground)
    return Program(clauses, base)


# ---------------------------------------------------------------------------
# Grounding

def check_safety(clause: Clause) -> None:
    bound = set()
    for item in clause.body:
        if isinstance(item, Literal) and item.positive:
            bound |= item.atom.variables()
    unsafe = clause.variables() - bound
    if unsafe:
        names = ", ".join(sorted(v.name for v in unsafe))
        where = f" (line {clause.pos[0]})" if clause.pos else ""
        raise UnsafeRuleError(f"unsafe variable(s) {names} in clause {clause}{where}")


def _simplify_body(body: Iterable[BodyItem]) -> tuple[BodyItem, ...]:
    items = []
    for b in body:
        if b is FALSE:
            return (FALSE,)
        if b is TRUE:
            continue
        if b not in items:
            items.append(b)
    return tuple(items) if items else (TRUE,)


def normalize(clauses: Iterable[Clause], base: Iterable[Atom]) -> Program:
    """Apply the ``true``/``false`` completion steps to ground clauses.

    Empty (or all-``true``) bodies become ``true``; a body containing
    ``false`` becomes ``false``; every base atom without a clause receives
    ``A :- false``.  Duplicates are dropped and clauses sorted.
    """
    base = set(base)
    out: dict[tuple[Atom, tuple[BodyItem, ...]], Clause] = {}
    for c in clauses:
        body = _simplify_body(c.body)
        out.setdefault((c.head, body), Clause(c.head, body))
        base.update(c.atoms())
    heads = {c.head for c in out.values()}
    for a in base - heads:
        out[(a, (FALSE,))] = Clause(a, (FALSE,))
    if not all(a.is_ground for a in base):
        raise ProgramError("normalize expects ground clauses")
    return Program(tuple(sorted(out.values(), key=_clause_sort_key)), frozenset(base))


def ground(program: Program) -> Program:
    """The ground instantiation of ``program`` over its own constants."""
    consts = sorted(program.constants())
    base = {
        Atom(pred, args)
        for pred, arity in program.predicates()
        for args in itertools.product(consts, repeat=arity)
    }
    base |= program.base
    instances = []
    for c in program.clauses:
        check_safety(c)
        vs = sorted(c.variables())
        if not vs:
            instances.append(c)
            continue
        for values in itertools.product(consts, repeat=len(vs)):
            binding = dict(zip(vs, values))
            body = tuple(
                Literal(b.atom.substitute(binding), b.positive) if isinstance(b, Literal) else b
                for b in c.body
            )
            instances.append(Clause(c.head.substitute(binding), body))
    return normalize(instances, base)
