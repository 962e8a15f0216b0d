"""
models/automaton/thompson.py

Thompson construction: regex syntax tree -> automaton with epsilon moves.

Simple explanation:
- Every sub-expression becomes a fragment with one entry and one exit state
- Fragments are glued together with epsilon transitions
- At most two new states and four transitions per tree node, so the
  automaton stays linear in the size of the expression
"""

import os
import sys
from typing import List, Optional, Tuple

sys.path.append(os.path.dirname(os.path.dirname(os.path.dirname(__file__))))

from models.automaton.nfa import Automaton
from models.automaton.regex_parser import (Alt, Atom, Concat, Epsilon, Opt, Plus,
                                           RegexAst, RegexParser, Star)


class Fragment:

    def __init__(self, start: int, accept: int):
        self.start = start
        self.accept = accept


class ThompsonBuilder:

    def __init__(self):
        self.n_states = 0
        self.transitions: List[Tuple[int, Optional[str], int]] = []

    def _new_state(self) -> int:
        self.n_states += 1
        return self.n_states - 1

    def _link(self, p: int, label: Optional[str], q: int):
        self.transitions.append((p, label, q))

    def build(self, node: RegexAst) -> Fragment:
        if isinstance(node, Atom):
            s, f = self._new_state(), self._new_state()
            self._link(s, node.label, f)
            return Fragment(s, f)

        if isinstance(node, Epsilon):
            s, f = self._new_state(), self._new_state()
            self._link(s, None, f)
            return Fragment(s, f)

        if isinstance(node, Concat):
            fragments = [self.build(part) for part in node.parts]
            for left, right in zip(fragments, fragments[1:]):
                self._link(left.accept, None, right.start)
            return Fragment(fragments[0].start, fragments[-1].accept)

        if isinstance(node, Alt):
            s = self._new_state()
            fragments = [self.build(option) for option in node.options]
            f = self._new_state()
            for fragment in fragments:
                self._link(s, None, fragment.start)
                self._link(fragment.accept, None, f)
            return Fragment(s, f)

        if isinstance(node, (Star, Plus, Opt)):
            s = self._new_state()
            inner = self.build(node.inner)
            f = self._new_state()
            self._link(s, None, inner.start)
            self._link(inner.accept, None, f)
            if not isinstance(node, Opt):
                self._link(inner.accept, None, inner.start)   # repeat
            if not isinstance(node, Plus):
                self._link(s, None, f)                        # skip
            return Fragment(s, f)

        raise ValueError(f"Unknown regex node: {node!r}")

    @staticmethod
    def thompson(ast: RegexAst) -> Automaton:
        """
        Build the automaton of a regex syntax tree

        Args:
            ast: parsed regular expression

        Returns:
            Automaton with one initial and one final state
        """
        builder = ThompsonBuilder()
        fragment = builder.build(ast)
        return Automaton(ast.labels(), builder.n_states, builder.transitions,
                         [fragment.start], [fragment.accept])

    @staticmethod
    def compile_regex(text: str) -> Automaton:
        return ThompsonBuilder.thompson(RegexParser.parse_regex(text))


if __name__ == "__main__":
    from models.automaton.nfa import NfaSimulator

    A = ThompsonBuilder.compile_regex("h* s (h|s)*")
    print(A)
    for word in ["shh", "hhs", "shs", "hh", "s", ""]:
        print(f"  {word or 'eps':5s}: {NfaSimulator.accepts(A, list(word))}")
