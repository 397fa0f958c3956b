"""Parser for the plain-text definition format.

The grammar (free-form whitespace, ``#`` comments to end of line):

    algebra <Name> {
        generator <g> deg <d>;
        d <g> = <polynomial>;
        relation <polynomial>;
    }
    morphism <f> : <Source> -> <Target> { <g> -> <polynomial>; ... }
    triple <T> { left = <A> via <f>; middle = <B>; right = <C> via <g>; }
    ladder <L> { left = <phiA>; middle = <phiB>; right = <phiC>; }

Polynomial terms are rational-coefficient monomials in previously
declared generators; ``^`` raises to a power, multiplication is implicit
by juxtaposition (whitespace) or an explicit ``*``. A morphism maps every
generator not listed in its block to zero; its header reads source ->
target.

Parsing is eager: algebras are expanded (and all CDGA invariants
checked) and morphisms validated as soon as their definition closes, so
a bad input fails here with a line/column diagnostic, not deep inside a
later computation.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import NamedTuple

from .barcomplex import BarSystem
from .cdga import (
    AlgebraMorphism,
    Generator,
    GeneratorPresentation,
    GradedAlgebra,
    Poly,
    build_free,
    morphism_from_images,
)
from .errors import EmbarError, InvalidMorphism, ParseError

DEFAULT_MAX_DEGREE = 12

RawMono = tuple[tuple[str, int], ...]
RawPoly = tuple[tuple[RawMono, Fraction], ...]


class Token(NamedTuple):
    kind: str  # ident | int | sym
    value: str
    line: int
    col: int


_SYMBOLS = ("->", "{", "}", ";", ":", "=", "^", "/", "+", "-", "*")


def _tokenize(text: str) -> list[Token]:
    tokens: list[Token] = []
    line, col = 1, 1
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch == "\n":
            line += 1
            col = 1
            i += 1
            continue
        if ch in " \t\r":
            i += 1
            col += 1
            continue
        if ch == "#":
            while i < n and text[i] != "\n":
                i += 1
            continue
        if text.startswith("->", i):
            tokens.append(Token("sym", "->", line, col))
            i += 2
            col += 2
            continue
        if ch in "{};:=^/+-*":
            tokens.append(Token("sym", ch, line, col))
            i += 1
            col += 1
            continue
        if ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            tokens.append(Token("int", text[i:j], line, col))
            col += j - i
            i = j
            continue
        if ch.isalpha() or ch == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            tokens.append(Token("ident", text[i:j], line, col))
            col += j - i
            i = j
            continue
        raise ParseError(f"unexpected character {ch!r}", line, col)
    return tokens


@dataclass
class RawAlgebra:
    name: str
    generators: tuple[tuple[str, int], ...]
    differentials: tuple[tuple[str, RawPoly], ...]
    relations: tuple[RawPoly, ...]


@dataclass
class RawMorphism:
    name: str
    source: str
    target: str
    images: tuple[tuple[str, RawPoly], ...]


@dataclass
class TripleDef:
    name: str
    left: str
    via_left: str
    middle: str
    right: str
    via_right: str


@dataclass
class LadderDef:
    name: str
    left: str
    middle: str
    right: str


@dataclass
class Definitions:
    """Validated definitions of one input file."""

    max_degree: int
    algebras: dict[str, GradedAlgebra] = field(default_factory=dict)
    raw_algebras: dict[str, RawAlgebra] = field(default_factory=dict)
    morphisms: dict[str, AlgebraMorphism] = field(default_factory=dict)
    raw_morphisms: dict[str, RawMorphism] = field(default_factory=dict)
    triples: dict[str, TripleDef] = field(default_factory=dict)
    ladders: dict[str, LadderDef] = field(default_factory=dict)
    order: list[tuple[str, str]] = field(default_factory=list)

    def system(self, triple_name: str) -> BarSystem:
        t = self.triples[triple_name]
        return BarSystem(self.morphisms[t.via_left], self.morphisms[t.via_right])

    def ladder(self, ladder_name: str):
        l = self.ladders[ladder_name]
        return (
            self.morphisms[l.left],
            self.morphisms[l.middle],
            self.morphisms[l.right],
        )

    def raw_equal(self, other: "Definitions") -> bool:
        return (
            self.raw_algebras == other.raw_algebras
            and self.raw_morphisms == other.raw_morphisms
            and self.triples == other.triples
            and self.ladders == other.ladders
            and self.order == other.order
        )


class _Parser:
    def __init__(self, tokens: list[Token], max_degree: int):
        self.tokens = tokens
        self.pos = 0
        self.defs = Definitions(max_degree)

    # -- token plumbing --------------------------------------------------------

    def _peek(self) -> Token | None:
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def _next(self, expected: str) -> Token:
        tok = self._peek()
        if tok is None:
            last = self.tokens[-1] if self.tokens else Token("sym", "", 1, 1)
            raise ParseError(f"unexpected end of input; expected {expected}", last.line, last.col)
        self.pos += 1
        return tok

    def _expect_sym(self, sym: str) -> Token:
        tok = self._next(f"'{sym}'")
        if tok.kind != "sym" or tok.value != sym:
            raise ParseError(f"expected '{sym}', found {tok.value!r}", tok.line, tok.col)
        return tok

    def _expect_ident(self, what: str = "a name") -> Token:
        tok = self._next(what)
        if tok.kind != "ident":
            raise ParseError(f"expected {what}, found {tok.value!r}", tok.line, tok.col)
        return tok

    def _expect_keyword(self, word: str) -> Token:
        tok = self._expect_ident(f"'{word}'")
        if tok.value != word:
            raise ParseError(f"expected '{word}', found {tok.value!r}", tok.line, tok.col)
        return tok

    def _expect_int(self) -> tuple[int, Token]:
        tok = self._next("an integer")
        if tok.kind != "int":
            raise ParseError(f"expected an integer, found {tok.value!r}", tok.line, tok.col)
        return int(tok.value), tok

    def _at_sym(self, sym: str) -> bool:
        tok = self._peek()
        return tok is not None and tok.kind == "sym" and tok.value == sym

    def _at_ident(self) -> bool:
        tok = self._peek()
        return tok is not None and tok.kind == "ident"

    def _at_int(self) -> bool:
        tok = self._peek()
        return tok is not None and tok.kind == "int"

    # -- polynomial terms --------------------------------------------------------

    def _parse_poly(self) -> list[tuple[Fraction, list[tuple[str, int]], Token]]:
        """Terms as (coefficient, factors, position); ends before ';'."""
        terms = []
        sign = 1
        if self._at_sym("-"):
            self._expect_sym("-")
            sign = -1
        elif self._at_sym("+"):
            self._expect_sym("+")
        while True:
            start = self._peek()
            if start is None:
                raise ParseError("unterminated polynomial", 1, 1)
            coeff = Fraction(sign)
            saw_something = False
            if self._at_int():
                num, _ = self._expect_int()
                den = 1
                if self._at_sym("/"):
                    self._expect_sym("/")
                    den_tok = self._next("a denominator")
                    if den_tok.kind != "int" or int(den_tok.value) == 0:
                        raise ParseError("expected a nonzero denominator", den_tok.line, den_tok.col)
                    den = int(den_tok.value)
                coeff = Fraction(sign * num, den)
                saw_something = True
            factors: list[tuple[str, int]] = []
            while True:
                if self._at_sym("*"):
                    self._expect_sym("*")
                    continue
                if not self._at_ident():
                    break
                name_tok = self._expect_ident()
                exp = 1
                if self._at_sym("^"):
                    self._expect_sym("^")
                    exp, _ = self._expect_int()
                factors.append((name_tok.value, exp))
                saw_something = True
            if not saw_something:
                raise ParseError(f"expected a term, found {start.value!r}", start.line, start.col)
            terms.append((coeff, factors, start))
            if self._at_sym("+"):
                self._expect_sym("+")
                sign = 1
            elif self._at_sym("-"):
                self._expect_sym("-")
                sign = -1
            else:
                break
        return terms

    # -- definitions ------------------------------------------------------------

    def parse(self) -> Definitions:
        while self._peek() is not None:
            tok = self._expect_ident("'algebra', 'morphism', 'triple' or 'ladder'")
            if tok.value == "algebra":
                self._parse_algebra()
            elif tok.value == "morphism":
                self._parse_morphism()
            elif tok.value == "triple":
                self._parse_triple()
            elif tok.value == "ladder":
                self._parse_ladder()
            else:
                raise ParseError(
                    f"expected a definition keyword, found {tok.value!r}", tok.line, tok.col
                )
        return self.defs

    def _fresh_name(self, tok: Token) -> str:
        name = tok.value
        for table in (self.defs.algebras, self.defs.morphisms, self.defs.triples, self.defs.ladders):
            if name in table:
                raise ParseError(f"name {name!r} is already defined", tok.line, tok.col)
        return name

    def _parse_algebra(self) -> None:
        head = self._expect_ident("an algebra name")
        name = self._fresh_name(head)
        self._expect_sym("{")
        gens: list[tuple[str, int]] = []
        gen_index: dict[str, int] = {}
        diff_stmts: list[tuple[str, list, Token]] = []
        relations: list[tuple[list, Token]] = []
        while not self._at_sym("}"):
            kw = self._expect_ident("'generator', 'd' or 'relation'")
            if kw.value == "generator":
                gname = self._expect_ident("a generator name")
                if gname.value in gen_index:
                    raise ParseError(
                        f"generator {gname.value!r} declared twice", gname.line, gname.col
                    )
                self._expect_keyword("deg")
                deg, deg_tok = self._expect_int()
                if deg < 1:
                    raise ParseError("generator degrees must be >= 1", deg_tok.line, deg_tok.col)
                self._expect_sym(";")
                gen_index[gname.value] = len(gens)
                gens.append((gname.value, deg))
            elif kw.value == "d":
                gname = self._expect_ident("a generator name")
                self._expect_sym("=")
                terms = self._parse_poly()
                self._expect_sym(";")
                diff_stmts.append((gname.value, terms, gname))
            elif kw.value == "relation":
                start = self._peek()
                terms = self._parse_poly()
                self._expect_sym(";")
                relations.append((terms, start))
            else:
                raise ParseError(
                    f"expected 'generator', 'd' or 'relation', found {kw.value!r}",
                    kw.line,
                    kw.col,
                )
        self._expect_sym("}")

        degrees = [d for _, d in gens]

        def to_poly(terms, homogeneous_degree: int | None, context: str) -> tuple[Poly, RawPoly]:
            poly: Poly = {}
            for coeff, factors, pos in terms:
                mono_counts: dict[int, int] = {}
                for fname, exp in factors:
                    idx = gen_index.get(fname)
                    if idx is None:
                        raise ParseError(
                            f"unknown generator {fname!r} in {context}", pos.line, pos.col
                        )
                    mono_counts[idx] = mono_counts.get(idx, 0) + exp
                mono = tuple(sorted(mono_counts.items()))
                deg = sum(degrees[i] * e for i, e in mono)
                if homogeneous_degree is not None and coeff and deg != homogeneous_degree:
                    raise ParseError(
                        f"{context} has a degree-{deg} term; expected degree "
                        f"{homogeneous_degree}",
                        pos.line,
                        pos.col,
                    )
                c = poly.get(mono, 0) + coeff
                if c:
                    poly[mono] = c
                else:
                    poly.pop(mono, None)
            raw = tuple(
                sorted((tuple((gens[i][0], e) for i, e in mono), Fraction(c)) for mono, c in poly.items())
            )
            return poly, raw

        diffs: dict[int, Poly] = {}
        raw_diffs: list[tuple[str, RawPoly]] = []
        for gname, terms, pos in diff_stmts:
            idx = gen_index.get(gname)
            if idx is None:
                raise ParseError(f"unknown generator {gname!r}", pos.line, pos.col)
            if idx in diffs:
                raise ParseError(f"d {gname} given twice", pos.line, pos.col)
            poly, raw = to_poly(terms, degrees[idx] + 1, f"d {gname}")
            for mono in poly:
                if any(j >= idx for j, _ in mono):
                    raise ParseError(
                        f"d {gname} may only use earlier-listed generators", pos.line, pos.col
                    )
            if poly:
                diffs[idx] = poly
                raw_diffs.append((gname, raw))
        raw_rels: list[RawPoly] = []
        rel_polys: list[Poly] = []
        for terms, start in relations:
            term_degrees = set()
            for coeff, factors, pos in terms:
                if not coeff:
                    continue
                d = 0
                for fname, exp in factors:
                    idx = gen_index.get(fname)
                    if idx is None:
                        raise ParseError(
                            f"unknown generator {fname!r} in relation", pos.line, pos.col
                        )
                    d += degrees[idx] * exp
                term_degrees.add(d)
            if len(term_degrees) > 1:
                raise ParseError(
                    f"relation mixes degrees {sorted(term_degrees)}", start.line, start.col
                )
            poly, raw = to_poly(terms, None, "relation")
            if poly:
                rel_polys.append(poly)
                raw_rels.append(raw)

        pres = GeneratorPresentation(
            [Generator(n, d) for n, d in gens], diffs, rel_polys
        )
        try:
            algebra = build_free(pres, self.defs.max_degree, name=name)
        except EmbarError as err:
            raise ParseError(f"algebra {name}: {err}", head.line, head.col) from err
        self.defs.algebras[name] = algebra
        self.defs.raw_algebras[name] = RawAlgebra(
            name, tuple(gens), tuple(raw_diffs), tuple(raw_rels)
        )
        self.defs.order.append(("algebra", name))

    def _parse_morphism(self) -> None:
        head = self._expect_ident("a morphism name")
        name = self._fresh_name(head)
        self._expect_sym(":")
        src = self._expect_ident("a source algebra")
        self._expect_sym("->")
        tgt = self._expect_ident("a target algebra")
        for tok in (src, tgt):
            if tok.value not in self.defs.algebras:
                raise ParseError(f"unknown algebra {tok.value!r}", tok.line, tok.col)
        source = self.defs.algebras[src.value]
        target = self.defs.algebras[tgt.value]
        self._expect_sym("{")
        raw_images: list[tuple[str, RawPoly]] = []
        images: dict[str, dict] = {}
        source_gens = {g.name for g in source.presentation.generators}
        tgt_gens = target.presentation.generators
        tgt_index = {g.name: i for i, g in enumerate(tgt_gens)}
        src_degree = {g.name: g.degree for g in source.presentation.generators}
        while not self._at_sym("}"):
            gname = self._expect_ident("a generator name")
            if gname.value not in source_gens:
                raise ParseError(
                    f"{gname.value!r} is not a generator of {src.value}", gname.line, gname.col
                )
            if gname.value in images:
                raise ParseError(f"image of {gname.value!r} given twice", gname.line, gname.col)
            self._expect_sym("->")
            terms = self._parse_poly()
            self._expect_sym(";")
            poly: Poly = {}
            raw_terms = []
            for coeff, factors, pos in terms:
                mono_counts: dict[int, int] = {}
                for fname, exp in factors:
                    idx = tgt_index.get(fname)
                    if idx is None:
                        raise ParseError(
                            f"unknown generator {fname!r} in {tgt.value}", pos.line, pos.col
                        )
                    mono_counts[idx] = mono_counts.get(idx, 0) + exp
                mono = tuple(sorted(mono_counts.items()))
                deg = sum(tgt_gens[i].degree * e for i, e in mono)
                if coeff and deg != src_degree[gname.value]:
                    raise ParseError(
                        f"image of {gname.value} has a degree-{deg} term; expected degree "
                        f"{src_degree[gname.value]}",
                        pos.line,
                        pos.col,
                    )
                c = poly.get(mono, 0) + coeff
                if c:
                    poly[mono] = c
                else:
                    poly.pop(mono, None)
            raw = tuple(
                sorted(
                    (tuple((tgt_gens[i].name, e) for i, e in mono), Fraction(c))
                    for mono, c in poly.items()
                )
            )
            vec = target.element_from_poly(poly, src_degree[gname.value])
            images[gname.value] = vec
            raw_images.append((gname.value, raw))
        self._expect_sym("}")
        try:
            phi = morphism_from_images(source, target, images, name=name)
        except InvalidMorphism as err:
            raise ParseError(
                f"morphism {name} is not a CDGA morphism: {err.violations[0]}",
                head.line,
                head.col,
            ) from err
        self.defs.morphisms[name] = phi
        self.defs.raw_morphisms[name] = RawMorphism(name, src.value, tgt.value, tuple(raw_images))
        self.defs.order.append(("morphism", name))

    def _resolve_morphism(self, tok: Token) -> str:
        if tok.value not in self.defs.morphisms:
            raise ParseError(f"unknown morphism {tok.value!r}", tok.line, tok.col)
        return tok.value

    def _parse_triple(self) -> None:
        head = self._expect_ident("a triple name")
        name = self._fresh_name(head)
        self._expect_sym("{")
        self._expect_keyword("left")
        self._expect_sym("=")
        left = self._expect_ident("an algebra name")
        self._expect_keyword("via")
        via_left = self._resolve_morphism(self._expect_ident("a morphism name"))
        self._expect_sym(";")
        self._expect_keyword("middle")
        self._expect_sym("=")
        middle = self._expect_ident("an algebra name")
        self._expect_sym(";")
        self._expect_keyword("right")
        self._expect_sym("=")
        right = self._expect_ident("an algebra name")
        self._expect_keyword("via")
        via_right = self._resolve_morphism(self._expect_ident("a morphism name"))
        self._expect_sym(";")
        self._expect_sym("}")
        for tok in (left, middle, right):
            if tok.value not in self.defs.algebras:
                raise ParseError(f"unknown algebra {tok.value!r}", tok.line, tok.col)
        f = self.defs.morphisms[via_left]
        g = self.defs.morphisms[via_right]
        checks = (
            (f.source, middle.value, f"morphism {via_left} must start at the middle algebra"),
            (f.target, left.value, f"morphism {via_left} must land in the left algebra"),
            (g.source, middle.value, f"morphism {via_right} must start at the middle algebra"),
            (g.target, right.value, f"morphism {via_right} must land in the right algebra"),
        )
        for alg, expected, message in checks:
            if alg is not self.defs.algebras[expected]:
                raise ParseError(message, head.line, head.col)
        self.defs.triples[name] = TripleDef(
            name, left.value, via_left, middle.value, right.value, via_right
        )
        self.defs.order.append(("triple", name))

    def _parse_ladder(self) -> None:
        head = self._expect_ident("a ladder name")
        name = self._fresh_name(head)
        self._expect_sym("{")
        self._expect_keyword("left")
        self._expect_sym("=")
        left = self._resolve_morphism(self._expect_ident("a morphism name"))
        self._expect_sym(";")
        self._expect_keyword("middle")
        self._expect_sym("=")
        middle = self._resolve_morphism(self._expect_ident("a morphism name"))
        self._expect_sym(";")
        self._expect_keyword("right")
        self._expect_sym("=")
        right = self._resolve_morphism(self._expect_ident("a morphism name"))
        self._expect_sym(";")
        self._expect_sym("}")
        self.defs.ladders[name] = LadderDef(name, left, middle, right)
        self.defs.order.append(("ladder", name))


def parse_input(text: str, max_degree: int = DEFAULT_MAX_DEGREE) -> Definitions:
    """Parse and validate a definition file; algebras are built at the
    given truncation degree. Raises :class:`ParseError` with line/column
    on any syntax or validation problem."""
    return _Parser(_tokenize(text), max_degree).parse()


# ---------------------------------------------------------------------------
# canonical rendering (the round-trip partner of parse_input)


def render_poly(raw: RawPoly) -> str:
    if not raw:
        return "0"
    parts: list[str] = []
    for mono, coeff in raw:
        factors = "*".join(n if e == 1 else f"{n}^{e}" for n, e in mono)
        mag = abs(coeff)
        if not factors:
            body = str(mag)
        elif mag == 1:
            body = factors
        else:
            body = f"{mag}*{factors}"
        if not parts:
            parts.append(body if coeff > 0 else f"-{body}")
        else:
            parts.append(f"+ {body}" if coeff > 0 else f"- {body}")
    return " ".join(parts)


def render_definitions(defs: Definitions) -> str:
    """Canonical text for a set of definitions; parsing the result gives
    back equal raw definitions (the round-trip property)."""
    out: list[str] = []
    for kind, name in defs.order:
        if kind == "algebra":
            raw = defs.raw_algebras[name]
            out.append(f"algebra {raw.name} {{")
            for gname, deg in raw.generators:
                out.append(f"    generator {gname} deg {deg};")
            for gname, poly in raw.differentials:
                out.append(f"    d {gname} = {render_poly(poly)};")
            for poly in raw.relations:
                out.append(f"    relation {render_poly(poly)};")
            out.append("}")
        elif kind == "morphism":
            raw = defs.raw_morphisms[name]
            out.append(f"morphism {raw.name} : {raw.source} -> {raw.target} {{")
            for gname, poly in raw.images:
                out.append(f"    {gname} -> {render_poly(poly)};")
            out.append("}")
        elif kind == "triple":
            t = defs.triples[name]
            out.append(f"triple {t.name} {{")
            out.append(f"    left = {t.left} via {t.via_left};")
            out.append(f"    middle = {t.middle};")
            out.append(f"    right = {t.right} via {t.via_right};")
            out.append("}")
        elif kind == "ladder":
            l = defs.ladders[name]
            out.append(f"ladder {l.name} {{")
            out.append(f"    left = {l.left};")
            out.append(f"    middle = {l.middle};")
            out.append(f"    right = {l.right};")
            out.append("}")
        out.append("")
    return "\n".join(out)
