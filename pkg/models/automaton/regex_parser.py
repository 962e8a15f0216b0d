"""
models/automaton/regex_parser.py

Regular expressions over edge labels.

Grammar:
    alt  = cat ('|' cat)*
    cat  = post+
    post = atom ('*' | '+' | '?')*
    atom = label | 'eps' | '(' alt ')'

Labels are identifiers; whitespace between tokens is optional except
where two identifiers would run together.
"""

import os
import sys
from dataclasses import dataclass
from typing import List, Tuple

sys.path.append(os.path.dirname(os.path.dirname(os.path.dirname(__file__))))

from config.query_params import QueryParams
from models.errors import RegexSyntaxError


class RegexAst:
    """Base class of regex syntax tree nodes"""

    @property
    def size(self) -> int:
        raise NotImplementedError

    def labels(self) -> List[str]:
        """Labels in first-occurrence order"""
        found: List[str] = []
        self._collect(found)
        return found

    def _collect(self, found: List[str]):
        for child in self.children():
            child._collect(found)

    def children(self) -> Tuple['RegexAst', ...]:
        return ()


@dataclass(frozen=True)
class Atom(RegexAst):
    label: str

    @property
    def size(self) -> int:
        return 1

    def _collect(self, found):
        if self.label not in found:
            found.append(self.label)

    def __str__(self):
        return self.label


@dataclass(frozen=True)
class Epsilon(RegexAst):

    @property
    def size(self) -> int:
        return 1

    def __str__(self):
        return QueryParams.EPS_KEYWORD


@dataclass(frozen=True)
class Concat(RegexAst):
    parts: Tuple[RegexAst, ...]

    def __init__(self, *parts: RegexAst):
        object.__setattr__(self, 'parts', tuple(parts))

    @property
    def size(self) -> int:
        return sum(p.size for p in self.parts) + len(self.parts) - 1

    def children(self):
        return self.parts

    def __str__(self):
        return " ".join(f"({p})" if isinstance(p, Alt) else str(p) for p in self.parts)


@dataclass(frozen=True)
class Alt(RegexAst):
    options: Tuple[RegexAst, ...]

    def __init__(self, *options: RegexAst):
        object.__setattr__(self, 'options', tuple(options))

    @property
    def size(self) -> int:
        return sum(o.size for o in self.options) + len(self.options) - 1

    def children(self):
        return self.options

    def __str__(self):
        return "|".join(str(o) for o in self.options)


@dataclass(frozen=True)
class _Postfix(RegexAst):
    inner: RegexAst

    OPERATOR = ""

    @property
    def size(self) -> int:
        return self.inner.size + 1

    def children(self):
        return (self.inner,)

    def __str__(self):
        if isinstance(self.inner, (Atom, Epsilon, _Postfix)):
            return f"{self.inner}{self.OPERATOR}"
        return f"({self.inner}){self.OPERATOR}"


class Star(_Postfix):
    OPERATOR = "*"


class Plus(_Postfix):
    OPERATOR = "+"


class Opt(_Postfix):
    OPERATOR = "?"


POSTFIX = {'*': Star, '+': Plus, '?': Opt}


class RegexParser:
    """Recursive-descent parser producing a RegexAst"""

    def __init__(self):
        self.tokens: List[Tuple[str, str, int]] = []
        self.pos = 0

    # ==================== TOKENIZER ====================

    def tokenize(self, text: str) -> List[Tuple[str, str, int]]:
        """Split into (kind, value, position) tokens"""
        tokens = []
        i = 0
        while i < len(text):
            ch = text[i]
            if ch.isspace():
                i += 1
            elif ch in '|()':
                tokens.append((ch, ch, i))
                i += 1
            elif ch in POSTFIX:
                tokens.append(('POST', ch, i))
                i += 1
            else:
                match = QueryParams.NAME_PATTERN.match(text, i)
                if match is None:
                    raise RegexSyntaxError(i, f"unexpected character '{ch}'")
                word = match.group(0)
                kind = 'EPS' if word == QueryParams.EPS_KEYWORD else 'LABEL'
                tokens.append((kind, word, i))
                i = match.end()
        tokens.append(('END', '', len(text)))
        return tokens

    # ==================== PARSER ====================

    def _peek(self) -> Tuple[str, str, int]:
        return self.tokens[self.pos]

    def _take(self) -> Tuple[str, str, int]:
        token = self.tokens[self.pos]
        self.pos += 1
        return token

    def parse(self, text: str) -> RegexAst:
        self.tokens = self.tokenize(text)
        self.pos = 0
        ast = self._alt()
        kind, value, position = self._peek()
        if kind != 'END':
            raise RegexSyntaxError(position, f"unexpected '{value}'")
        return ast

    def _alt(self) -> RegexAst:
        options = [self._cat()]
        while self._peek()[0] == '|':
            self._take()
            options.append(self._cat())
        return options[0] if len(options) == 1 else Alt(*options)

    def _cat(self) -> RegexAst:
        parts = []
        while self._peek()[0] in ('LABEL', 'EPS', '('):
            parts.append(self._post())
        if not parts:
            kind, value, position = self._peek()
            what = "end of input" if kind == 'END' else f"'{value}'"
            raise RegexSyntaxError(position, f"expected a label, 'eps' or '(' before {what}")
        return parts[0] if len(parts) == 1 else Concat(*parts)

    def _post(self) -> RegexAst:
        node = self._atom()
        while self._peek()[0] == 'POST':
            node = POSTFIX[self._take()[1]](node)
        return node

    def _atom(self) -> RegexAst:
        kind, value, position = self._take()
        if kind == 'LABEL':
            return Atom(value)
        if kind == 'EPS':
            return Epsilon()
        if kind == '(':
            inner = self._alt()
            closing = self._take()
            if closing[0] != ')':
                raise RegexSyntaxError(closing[2], "missing ')'")
            return inner
        raise RegexSyntaxError(position, f"unexpected '{value}'")

    @staticmethod
    def parse_regex(text: str) -> RegexAst:
        return RegexParser().parse(text)


if __name__ == "__main__":
    for source in ["h* s (h|s)*", "eps", "(a|b)+ c?"]:
        ast = RegexParser.parse_regex(source)
        print(f"{source:15s} -> {ast!r}")
