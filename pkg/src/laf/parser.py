"""Reader and writer for the ``.laf`` knowledge-base language.

One statement per ``;``::

    algebra relevance fuzzy;
    algebra intuition tags { PL > NG > FCH > PCH };
    constants cp;
    fact ~physical_imp(cp) labels [0.8, {PL}];
    rule r1: med_repr(X) <- ~physical_imp(X) labels [0.7, {PL}];

``#`` starts a comment.  Arguments starting with an uppercase letter are
variables.  Label vectors follow algebra declaration order; entries may also
be written ``name = value``.  A tag algebra may name the tag that marks a
claim as Assured with a trailing ``assured TAG`` (default: its first tag).

The parser recovers at the next ``;`` after a syntax error, so one run
reports every diagnosable problem.  A JSON document with keys
``algebras``, ``facts``, ``rules`` (and optionally ``constants``) is
accepted as an equivalent input format.
"""
from __future__ import annotations

import json
import math
import re
from dataclasses import dataclass
from typing import Any, Iterator

from laf.algebra import FuzzyAlgebra, LabelAlgebra, TagAlgebra
from laf.errors import ConfigurationError, KBSyntaxError, ParseError, SourceSpan
from laf.kb import KnowledgeBase, Literal, Presumption, RuleSchema, is_variable

_TOKEN_RE = re.compile(
    r"""
    (?P<ws>[ \t\r\n]+)
  | (?P<comment>\#[^\n]*)
  | (?P<number>-?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)
  | (?P<ident>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<arrow><-)
  | (?P<punct>[;:,()\[\]{}>~=])
    """,
    re.VERBOSE,
)


@dataclass(frozen=True)
class Token:
    kind: str  # ident | number | punct | eof
    text: str
    line: int
    column: int


def tokenize(source: str, file: str = "<string>") -> tuple[list[Token], list[ParseError]]:
    tokens: list[Token] = []
    errors: list[ParseError] = []
    line, line_start, pos = 1, 0, 0
    while pos < len(source):
        m = _TOKEN_RE.match(source, pos)
        if m is None:
            errors.append(
                ParseError(
                    SourceSpan(file, line, pos - line_start + 1),
                    "lexical",
                    f"unexpected character {source[pos]!r}",
                )
            )
            pos += 1
            continue
        kind = m.lastgroup
        text = m.group()
        if kind not in ("ws", "comment"):
            tokens.append(Token("punct" if kind == "arrow" else kind, text, line, pos - line_start + 1))
        newlines = text.count("\n")
        if newlines:
            line += newlines
            line_start = pos + text.rindex("\n") + 1
        pos = m.end()
    tokens.append(Token("eof", "", line, pos - line_start + 1))
    return tokens, errors


# -- raw statements ----------------------------------------------------------


@dataclass
class _Value:
    """A label entry as written, before it is checked against an algebra."""

    name: str | None
    name_tok: Token | None
    number: float | None
    tags: list[Token] | None
    tok: Token


@dataclass
class _Labels:
    tok: Token
    values: list[_Value]


@dataclass
class _AlgebraDecl:
    tok: Token
    name: str
    kind: str
    tags: list[Token]
    assured: Token | None


@dataclass
class _FactDecl:
    tok: Token
    literal: Literal
    labels: _Labels


@dataclass
class _RuleDecl:
    tok: Token
    name: str
    conclusion: Literal
    premises: list[Literal]
    labels: _Labels


@dataclass
class _ConstantsDecl:
    tokens: list[Token]


class _Syntax(Exception):
    def __init__(self, tok: Token, message: str):
        self.tok = tok
        self.message = message


class _Parser:
    def __init__(self, tokens: list[Token], file: str):
        self.tokens = tokens
        self.file = file
        self.i = 0
        self.errors: list[ParseError] = []

    @property
    def tok(self) -> Token:
        return self.tokens[self.i]

    def span(self, tok: Token) -> SourceSpan:
        return SourceSpan(self.file, tok.line, tok.column)

    def advance(self) -> Token:
        tok = self.tokens[self.i]
        if tok.kind != "eof":
            self.i += 1
        return tok

    def at(self, text: str) -> bool:
        return self.tok.kind in ("punct", "ident") and self.tok.text == text

    def expect(self, text: str) -> Token:
        if not self.at(text):
            raise _Syntax(self.tok, f"expected {text!r}, found {self._describe(self.tok)}")
        return self.advance()

    def ident(self, what: str = "identifier") -> Token:
        if self.tok.kind != "ident":
            raise _Syntax(self.tok, f"expected {what}, found {self._describe(self.tok)}")
        return self.advance()

    @staticmethod
    def _describe(tok: Token) -> str:
        return "end of input" if tok.kind == "eof" else repr(tok.text)

    def statements(self) -> Iterator[Any]:
        while self.tok.kind != "eof":
            start = self.i
            try:
                yield self.statement()
            except _Syntax as exc:
                self.errors.append(ParseError(self.span(exc.tok), "syntactic", exc.message))
                self.recover(start)

    def recover(self, start: int) -> None:
        if self.i == start:
            self.advance()
        while self.tok.kind != "eof" and not self.at(";"):
            # a keyword at the start of a line most likely begins the next statement
            if self.tok.column == 1 and self.tok.text in ("algebra", "fact", "rule", "constants"):
                return
            self.advance()
        if self.at(";"):
            self.advance()

    def statement(self) -> Any:
        head = self.tok
        if head.kind != "ident" or head.text not in ("algebra", "fact", "rule", "constants"):
            raise _Syntax(head, f"expected a statement (algebra, fact, rule, constants), found {self._describe(head)}")
        self.advance()
        if head.text == "algebra":
            result = self.algebra(head)
        elif head.text == "fact":
            result = _FactDecl(head, self.literal(), self.labels())
        elif head.text == "rule":
            result = self.rule(head)
        else:
            names = [self.ident("constant")]
            while self.at(","):
                self.advance()
                names.append(self.ident("constant"))
            result = _ConstantsDecl(names)
        self.expect(";")
        return result

    def algebra(self, head: Token) -> _AlgebraDecl:
        name = self.ident("algebra name")
        kind = self.ident("algebra kind")
        if kind.text == "fuzzy":
            return _AlgebraDecl(head, name.text, "fuzzy", [], None)
        if kind.text != "tags":
            raise _Syntax(kind, f"unknown algebra kind {kind.text!r} (expected 'fuzzy' or 'tags')")
        self.expect("{")
        tags = [self.ident("tag")]
        while self.at(">"):
            self.advance()
            tags.append(self.ident("tag"))
        self.expect("}")
        assured = None
        if self.at("assured"):
            self.advance()
            assured = self.ident("tag")
        return _AlgebraDecl(head, name.text, "tags", tags, assured)

    def rule(self, head: Token) -> _RuleDecl:
        name = self.ident("rule name")
        self.expect(":")
        conclusion = self.literal()
        self.expect("<-")
        premises = [self.literal()]
        while self.at(","):
            self.advance()
            premises.append(self.literal())
        return _RuleDecl(name, name.text, conclusion, premises, self.labels())

    def literal(self) -> Literal:
        negated = False
        if self.at("~"):
            self.advance()
            negated = True
        pred = self.ident("predicate")
        self.expect("(")
        args = [self.ident("argument").text]
        while self.at(","):
            self.advance()
            args.append(self.ident("argument").text)
        self.expect(")")
        return Literal(pred.text, tuple(args), negated)

    def labels(self) -> _Labels:
        self.expect("labels")
        open_tok = self.expect("[")
        values: list[_Value] = []
        if not self.at("]"):
            values.append(self.label_value())
            while self.at(","):
                self.advance()
                values.append(self.label_value())
        self.expect("]")
        return _Labels(open_tok, values)

    def label_value(self) -> _Value:
        name = None
        name_tok = None
        if self.tok.kind == "ident" and self.tokens[self.i + 1].text == "=":
            name_tok = self.advance()
            name = name_tok.text
            self.advance()
        tok = self.tok
        if tok.kind == "number":
            self.advance()
            return _Value(name, name_tok, float(tok.text), None, tok)
        if self.at("{"):
            self.advance()
            tags: list[Token] = []
            if not self.at("}"):
                tags.append(self.ident("tag"))
                while self.at(","):
                    self.advance()
                    tags.append(self.ident("tag"))
            self.expect("}")
            return _Value(name, name_tok, None, tags, tok)
        raise _Syntax(tok, f"expected a label value (number or {{tags}}), found {self._describe(tok)}")


# -- semantic checking -------------------------------------------------------


class _Checker:
    def __init__(self, file: str):
        self.file = file
        self.errors: list[ParseError] = []

    def error(self, tok: Token, message: str) -> None:
        self.errors.append(ParseError(SourceSpan(self.file, tok.line, tok.column), "semantic", message))

    def algebras(self, decls: list[_AlgebraDecl]) -> list[LabelAlgebra]:
        out: list[LabelAlgebra] = []
        names: set[str] = set()
        for d in decls:
            if d.name in names:
                self.error(d.tok, f"duplicate algebra name {d.name!r}")
                continue
            names.add(d.name)
            if d.kind == "fuzzy":
                out.append(FuzzyAlgebra(d.name))
                continue
            seen: set[str] = set()
            ok = True
            for t in d.tags:
                if t.text in seen:
                    self.error(t, f"tag {t.text!r} repeated in algebra {d.name!r}")
                    ok = False
                seen.add(t.text)
            if d.assured is not None and d.assured.text not in seen:
                self.error(d.assured, f"assured tag {d.assured.text!r} not in universe of {d.name!r}")
                ok = False
            if ok:
                out.append(
                    TagAlgebra(d.name, tuple(t.text for t in d.tags), d.assured.text if d.assured else None)
                )
        return out

    def labels(self, algebras: list[LabelAlgebra], labels: _Labels) -> tuple | None:
        values = labels.values
        ok = True
        named = [v for v in values if v.name is not None]
        if named and len(named) != len(values):
            self.error(labels.tok, "label entries must be all positional or all named")
            return None
        if named:
            by_name = {a.name: a for a in algebras}
            slots: dict[str, _Value] = {}
            for v in values:
                if v.name not in by_name:
                    self.error(v.name_tok, f"unknown algebra {v.name!r} in label annotation")
                    ok = False
                elif v.name in slots:
                    self.error(v.name_tok, f"algebra {v.name!r} labelled twice")
                    ok = False
                else:
                    slots[v.name] = v
            if not ok:
                return None
            missing = [a.name for a in algebras if a.name not in slots]
            if missing:
                self.error(labels.tok, f"missing label for algebra {missing[0]!r}")
                return None
            values = [slots[a.name] for a in algebras]
        if len(values) != len(algebras):
            self.error(
                labels.tok,
                f"label arity {len(values)} does not match the {len(algebras)} declared algebras",
            )
            return None
        out = []
        for alg, v in zip(algebras, values):
            if alg.kind == "fuzzy":
                if v.number is None:
                    self.error(v.tok, f"algebra {alg.name!r} expects a number in [0,1]")
                    ok = False
                elif math.isnan(v.number) or not 0.0 <= v.number <= 1.0:
                    self.error(v.tok, f"fuzzy value outside [0,1]: {v.tok.text}")
                    ok = False
                else:
                    out.append(v.number)
            else:
                if v.tags is None:
                    self.error(v.tok, f"algebra {alg.name!r} expects a tag set")
                    ok = False
                    continue
                for t in v.tags:
                    if t.text not in alg.order:
                        self.error(t, f"tag {t.text!r} not in universe of {alg.name!r}")
                        ok = False
                out.append(frozenset(t.text for t in v.tags))
        return tuple(out) if ok else None

    def knowledge_base(self, statements: list[Any]) -> KnowledgeBase | None:
        algebras = self.algebras([s for s in statements if isinstance(s, _AlgebraDecl)])
        names: set[str] = set()
        facts: list[Presumption] = []
        rules: list[RuleSchema] = []
        constants: list[str] = []
        for s in statements:
            if isinstance(s, _FactDecl):
                name = str(s.literal)
                if name in names:
                    self.error(s.tok, f"duplicate element name {name!r}")
                names.add(name)
                if not s.literal.is_ground:
                    self.error(s.tok, f"fact {name} is not ground (uppercase arguments are variables)")
                labels = self.labels(algebras, s.labels)
                if labels is not None:
                    facts.append(Presumption(s.literal, labels))
            elif isinstance(s, _RuleDecl):
                if s.name in names:
                    self.error(s.tok, f"duplicate element name {s.name!r}")
                names.add(s.name)
                premise_vars = {v for p in s.premises for v in p.variables}
                for v in s.conclusion.variables:
                    if v not in premise_vars:
                        self.error(s.tok, f"rule {s.name!r}: variable {v} of the conclusion is absent from the premises")
                labels = self.labels(algebras, s.labels)
                if labels is not None:
                    rules.append(RuleSchema(s.name, s.conclusion, tuple(s.premises), labels))
            elif isinstance(s, _ConstantsDecl):
                for t in s.tokens:
                    if is_variable(t.text):
                        self.error(t, f"constant {t.text!r} must not start with an uppercase letter")
                    elif t.text not in constants:
                        constants.append(t.text)
        if self.errors:
            return None
        return KnowledgeBase(tuple(algebras), tuple(facts), tuple(rules), tuple(constants))


def parse_kb(source: str, file: str = "<string>") -> KnowledgeBase:
    """Parse DSL text; raises :class:`KBSyntaxError` listing every diagnostic."""
    tokens, lex_errors = tokenize(source, file)
    parser = _Parser(tokens, file)
    statements = list(parser.statements())
    errors = lex_errors + parser.errors
    checker = _Checker(file)
    kb = checker.knowledge_base(statements)
    errors += checker.errors
    if errors:
        errors.sort(key=lambda e: (e.span.line, e.span.column))
        raise KBSyntaxError(errors)
    assert kb is not None
    return kb


def parse_literal(text: str) -> Literal:
    """Parse a single literal such as ``~med_repr(cp)``."""
    tokens, errors = tokenize(text)
    parser = _Parser(tokens, "<literal>")
    try:
        lit = parser.literal()
        if parser.tok.kind != "eof":
            raise _Syntax(parser.tok, f"unexpected {parser._describe(parser.tok)} after literal")
    except _Syntax as exc:
        errors.append(ParseError(parser.span(exc.tok), "syntactic", exc.message))
    if errors:
        raise KBSyntaxError(errors)
    return lit


# -- JSON --------------------------------------------------------------------


def _kb_to_dsl_from_json(doc: Any) -> str:
    """Translate a JSON document into DSL text, one statement per line."""
    if not isinstance(doc, dict):
        raise ValueError("top-level JSON value must be an object")
    unknown = set(doc) - {"algebras", "facts", "rules", "constants"}
    if unknown:
        raise ValueError(f"unknown top-level key {sorted(unknown)[0]!r}")

    def labels(raw: Any) -> str:
        def value(v: Any) -> str:
            if isinstance(v, bool):
                raise ValueError(f"invalid label value {v!r}")
            if isinstance(v, (int, float)):
                return repr(float(v))
            if isinstance(v, list) and all(isinstance(t, str) for t in v):
                return "{" + ", ".join(v) + "}"
            raise ValueError(f"invalid label value {v!r}")

        if isinstance(raw, dict):
            return "[" + ", ".join(f"{k} = {value(v)}" for k, v in raw.items()) + "]"
        if isinstance(raw, list):
            return "[" + ", ".join(value(v) for v in raw) + "]"
        raise ValueError("labels must be a list or an object")

    lines = []
    for a in doc.get("algebras", []):
        if a.get("kind") == "fuzzy":
            lines.append(f"algebra {a['name']} fuzzy;")
        else:
            assured = f" assured {a['assured']}" if a.get("assured") else ""
            lines.append(f"algebra {a['name']} {a.get('kind')} {{ {' > '.join(a.get('tags', []))} }}{assured};")
    if doc.get("constants"):
        lines.append(f"constants {', '.join(doc['constants'])};")
    for f in doc.get("facts", []):
        lines.append(f"fact {f['literal']} labels {labels(f.get('labels', []))};")
    for r in doc.get("rules", []):
        lines.append(
            f"rule {r['name']}: {r['conclusion']} <- {', '.join(r['premises'])} "
            f"labels {labels(r.get('labels', []))};"
        )
    return "\n".join(lines) + "\n"


def parse_kb_json(source: str, file: str = "<string>") -> KnowledgeBase:
    """Parse the JSON form.  Spans refer to the statement index (one per line)."""
    try:
        doc = json.loads(source) if source.strip() else {}
    except json.JSONDecodeError as exc:
        raise KBSyntaxError([ParseError(SourceSpan(file, exc.lineno, exc.colno), "syntactic", exc.msg)]) from None
    try:
        text = _kb_to_dsl_from_json(doc)
    except (ValueError, KeyError, TypeError, AttributeError) as exc:
        raise KBSyntaxError([ParseError(SourceSpan(file, 1, 1), "syntactic", f"malformed document: {exc}")]) from None
    return parse_kb(text, file + "#statements")


def load_kb(path: str, format: str | None = None) -> KnowledgeBase:
    with open(path, encoding="utf-8") as fh:
        source = fh.read()
    if format is None:
        format = "json" if path.endswith(".json") else "dsl"
    if format == "json":
        return parse_kb_json(source, path)
    if format == "dsl":
        return parse_kb(source, path)
    raise ConfigurationError(f"unknown input format {format!r}")


# -- writing -----------------------------------------------------------------


def serialize_kb(kb: KnowledgeBase) -> str:
    """Render ``kb`` as DSL text that parses back to an equal knowledge base."""
    lines = []
    for a in kb.algebras:
        if isinstance(a, TagAlgebra):
            assured = "" if a.assured_tag == a.order[0] else f" assured {a.assured_tag}"
            lines.append(f"algebra {a.name} tags {{ {' > '.join(a.order)} }}{assured};")
        else:
            lines.append(f"algebra {a.name} {a.kind};")
    if kb.constants:
        lines.append(f"constants {', '.join(kb.constants)};")

    def labels(vec: tuple) -> str:
        return "[" + ", ".join(alg.format_label(v) for alg, v in zip(kb.algebras, vec)) + "]"

    for f in kb.facts:
        lines.append(f"fact {f.literal} labels {labels(f.labels)};")
    for r in kb.rules:
        lines.append(f"rule {r.name}: {r.conclusion} <- {', '.join(map(str, r.premises))} labels {labels(r.labels)};")
    return "\n".join(lines) + ("\n" if lines else "")


def kb_to_json(kb: KnowledgeBase) -> dict:
    algebras = []
    for a in kb.algebras:
        if isinstance(a, TagAlgebra):
            algebras.append({"name": a.name, "kind": "tags", "tags": list(a.order), "assured": a.assured_tag})
        else:
            algebras.append({"name": a.name, "kind": a.kind})
    return {
        "algebras": algebras,
        "constants": list(kb.constants),
        "facts": [
            {"literal": str(f.literal), "labels": [_json_label(a, v) for a, v in zip(kb.algebras, f.labels)]}
            for f in kb.facts
        ],
        "rules": [
            {
                "name": r.name,
                "conclusion": str(r.conclusion),
                "premises": [str(p) for p in r.premises],
                "labels": [_json_label(a, v) for a, v in zip(kb.algebras, r.labels)],
            }
            for r in kb.rules
        ],
    }


def _json_label(alg: LabelAlgebra, value: Any) -> Any:
    return alg.sorted_tags(value) if isinstance(alg, TagAlgebra) else float(value)
