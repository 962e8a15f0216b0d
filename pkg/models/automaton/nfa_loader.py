#NFA text format: 'states <n>', 'initial <id>...', 'final <id>...', 'trans <p> <label|eps> <q>'.

import os
import sys
from typing import List, Optional

sys.path.append(os.path.dirname(os.path.dirname(os.path.dirname(__file__))))

from config.query_params import QueryParams
from models.automaton.nfa import Automaton
from models.errors import NfaFormatError


class NfaLoader:

    @staticmethod
    def _int(token: str, lineno: int) -> int:
        try:
            return int(token)
        except ValueError:
            raise NfaFormatError(lineno, f"expected an integer, got '{token}'") from None

    @staticmethod
    def load_nfa(text: str) -> Automaton:
        n_states: Optional[int] = None
        initial: List[int] = []
        final: List[int] = []
        transitions = []
        alphabet: List[str] = []

        for lineno, raw in enumerate(text.splitlines(), start=1):
            pos = raw.find(QueryParams.COMMENT)
            line = (raw if pos < 0 else raw[:pos]).strip()
            if not line:
                continue
            fields = line.split()
            keyword = fields[0]

            if keyword == 'states':
                if len(fields) != 2 or n_states is not None:
                    raise NfaFormatError(lineno, "expected a single 'states <n>' line")
                n_states = NfaLoader._int(fields[1], lineno)
                if n_states < 1:
                    raise NfaFormatError(lineno, "need at least one state")
            elif keyword in ('initial', 'final'):
                target = initial if keyword == 'initial' else final
                target.extend(NfaLoader._int(f, lineno) for f in fields[1:])
            elif keyword == 'trans':
                if len(fields) != 4:
                    raise NfaFormatError(lineno, "expected 'trans <p> <label|eps> <q>'")
                p = NfaLoader._int(fields[1], lineno)
                q = NfaLoader._int(fields[3], lineno)
                label = fields[2]
                if label == QueryParams.EPS_KEYWORD:
                    label = None
                elif not QueryParams.is_name(label):
                    raise NfaFormatError(lineno, f"bad label '{label}'")
                elif label not in alphabet:
                    alphabet.append(label)
                transitions.append((p, label, q, lineno))
            else:
                raise NfaFormatError(lineno, f"unknown keyword '{keyword}'")

        if n_states is None:
            raise NfaFormatError(0, "missing 'states' line")
        for p, _, q, lineno in transitions:
            for state in (p, q):
                if not 0 <= state < n_states:
                    raise NfaFormatError(lineno, f"state {state} out of range")
        for state in initial + final:
            if not 0 <= state < n_states:
                raise NfaFormatError(0, f"state {state} out of range")

        return Automaton(alphabet, n_states, [(p, a, q) for p, a, q, _ in transitions],
                         initial, final)

    @staticmethod
    def load_file(path: str) -> Automaton:
        with open(path, encoding='utf-8') as handle:
            return NfaLoader.load_nfa(handle.read())

    @staticmethod
    def serialize_nfa(A: Automaton) -> str:
        lines = [f"states {A.n_states}",
                 "initial " + " ".join(map(str, A.initial)),
                 "final " + " ".join(map(str, A.final))]
        for p, a, q in A.transitions():
            lines.append(f"trans {p} {QueryParams.EPS_KEYWORD if a is None else a} {q}")
        return "\n".join(lines) + "\n"
