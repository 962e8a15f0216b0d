"""
models/automaton/nfa.py

Nondeterministic finite automata over edge labels, with optional
epsilon transitions.

Simple explanation:
- States are 0..|Q|-1, symbols are 0..|Sigma|-1
- delta[q][a] is the list of successors of q on symbol a (dense table,
  constant-time lookup, no duplicates)
- eps[q] lists the epsilon successors of q
- An edge with several labels lets the automaton consume ANY one of them
"""

import logging
from collections import deque
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Tuple

logger = logging.getLogger(__name__)

Transition = Tuple[int, Optional[str], int]   # (p, label name or None for eps, q)


class Automaton:

    def __init__(self,
                 alphabet: Sequence[str],
                 n_states: int,
                 transitions: Iterable[Transition],
                 initial: Iterable[int],
                 final: Iterable[int]):
        """
        Args:
            alphabet: label names, index = symbol id
            n_states: |Q|
            transitions: (p, label, q) with label None for an epsilon move
            initial: initial states
            final: final states
        """
        if n_states < 0:
            raise ValueError("n_states must be >= 0")
        self.alphabet: List[str] = list(dict.fromkeys(alphabet))
        self.symbol_ids: Dict[str, int] = {a: i for i, a in enumerate(self.alphabet)}
        self.n_states = n_states

        self.delta: List[List[List[int]]] = [[[] for _ in self.alphabet]
                                             for _ in range(n_states)]
        self.eps: List[List[int]] = [[] for _ in range(n_states)]
        for p, a, q in transitions:
            self._check_state(p)
            self._check_state(q)
            if a is None:
                if q not in self.eps[p]:
                    self.eps[p].append(q)
                continue
            if a not in self.symbol_ids:
                self.symbol_ids[a] = len(self.alphabet)
                self.alphabet.append(a)
                for row in self.delta:
                    row.append([])
            successors = self.delta[p][self.symbol_ids[a]]
            if q not in successors:
                successors.append(q)

        self.initial: List[int] = sorted(set(initial))
        self.final: List[int] = sorted(set(final))
        for q in self.initial + self.final:
            self._check_state(q)
        self.is_final: List[bool] = [False] * n_states
        for q in self.final:
            self.is_final[q] = True

        self._closures: Optional[List[List[int]]] = None
        self._aligned: Dict[Tuple[str, ...], 'Automaton'] = {}

    def _check_state(self, q: int):
        if not 0 <= q < self.n_states:
            raise ValueError(f"state {q} outside 0..{self.n_states - 1}")

    # ------------------------------------------------------------------ sizes

    @property
    def n_symbols(self) -> int:
        return len(self.alphabet)

    @property
    def has_eps(self) -> bool:
        return any(self.eps)

    @property
    def is_deterministic(self) -> bool:
        """One initial state, no epsilon move, at most one successor per (state, label)"""
        return (len(self.initial) == 1 and not self.has_eps
                and all(len(succ) <= 1 for row in self.delta for succ in row))

    @property
    def n_transitions(self) -> int:
        """|Delta| including epsilon transitions"""
        labeled = sum(len(succ) for row in self.delta for succ in row)
        return labeled + sum(len(row) for row in self.eps)

    @property
    def size(self) -> int:
        """|A| = |Q| + |Delta|"""
        return self.n_states + self.n_transitions

    def transitions(self) -> Iterator[Transition]:
        for p in range(self.n_states):
            for a, successors in enumerate(self.delta[p]):
                for q in successors:
                    yield p, self.alphabet[a], q
            for q in self.eps[p]:
                yield p, None, q

    # ------------------------------------------------------------- operations

    def _symbol(self, label) -> int:
        """Symbol id for a label given as id, name or Label object"""
        if isinstance(label, str):
            return self.symbol_ids.get(label, -1)
        text = getattr(label, 'text', None)
        if text is not None:
            return self.symbol_ids.get(text, -1)
        return int(label)

    def delta_over_label_set(self, q: int, labels: Iterable) -> List[int]:
        """
        Union of delta(q, a) over a in labels, without duplicates.

        Labels the automaton does not know contribute nothing.
        """
        result: List[int] = []
        row = self.delta[q]
        n = len(row)
        for label in labels:
            a = self._symbol(label)
            if 0 <= a < n:
                for p in row[a]:
                    if p not in result:
                        result.append(p)
        return result

    def eps_closure_of(self, q: int) -> List[int]:
        """States reachable from q by zero or more epsilon moves (q first)"""
        if self._closures is None:
            self._closures = [self._closure_bfs(p) for p in range(self.n_states)]
        return self._closures[q]

    def _closure_bfs(self, q: int) -> List[int]:
        order = [q]
        seen = {q}
        queue = deque([q])
        while queue:
            p = queue.popleft()
            for r in self.eps[p]:
                if r not in seen:
                    seen.add(r)
                    order.append(r)
                    queue.append(r)
        return order

    def eps_closure(self, states: Iterable[int]) -> List[int]:
        result: List[int] = []
        seen = set()
        for q in states:
            for r in self.eps_closure_of(q):
                if r not in seen:
                    seen.add(r)
                    result.append(r)
        return result

    def reverse_fan_in(self) -> List[int]:
        """sum over a of |Delta^-1(a, p)| for every p (bound on B lists)"""
        counts = [0] * self.n_states
        for p in range(self.n_states):
            for successors in self.delta[p]:
                for q in successors:
                    counts[q] += 1
        return counts

    def align(self, label_names: Sequence[str]) -> 'Automaton':
        """
        Same automaton re-indexed so that symbol i is label_names[i].

        Transitions on labels outside label_names are dropped: no edge can
        carry them. Results are cached per label list.
        """
        key = tuple(label_names)
        if key == tuple(self.alphabet):
            return self
        if key not in self._aligned:
            known = set(key)
            kept = [(p, a, q) for p, a, q in self.transitions() if a is None or a in known]
            self._aligned[key] = Automaton(key, self.n_states, kept, self.initial, self.final)
        return self._aligned[key]

    def align_to(self, db) -> 'Automaton':
        return self.align(db.label_names)

    def get_summary(self) -> Dict:
        return {
            'states': self.n_states,
            'symbols': self.n_symbols,
            'transitions': self.n_transitions,
            'epsilon': sum(len(row) for row in self.eps),
            'initial': self.initial,
            'final': self.final,
            'deterministic': self.is_deterministic,
        }

    def __repr__(self) -> str:
        return (f"Automaton(|Q|={self.n_states}, |Sigma|={self.n_symbols}, "
                f"|Delta|={self.n_transitions}, I={self.initial}, F={self.final})")


class NfaSimulator:
    """Language-level operations: membership and epsilon elimination"""

    @staticmethod
    def accepts(A: Automaton, word: Sequence) -> bool:
        """
        Subset simulation with epsilon closure

        Args:
            A: automaton
            word: sequence of label names (or Label objects)

        Returns:
            True iff word is in L(A)
        """
        current = A.eps_closure(A.initial)
        for label in word:
            step: List[int] = []
            for q in current:
                for p in A.delta_over_label_set(q, [label]):
                    if p not in step:
                        step.append(p)
            current = A.eps_closure(step)
            if not current:
                return False
        return any(A.is_final[q] for q in current)

    @staticmethod
    def eliminate_eps(A: Automaton) -> Automaton:
        """
        Epsilon-free automaton with the same language and the same states.

        delta'(q, a) = closure(delta(q, a)), I' = closure(I), F' = F.
        An epsilon-free input is returned unchanged.
        """
        if not A.has_eps:
            return A
        transitions = []
        for q in range(A.n_states):
            for a, successors in enumerate(A.delta[q]):
                for p in A.eps_closure(successors):
                    transitions.append((q, A.alphabet[a], p))
        result = Automaton(A.alphabet, A.n_states, transitions,
                           A.eps_closure(A.initial), A.final)
        logger.debug("eliminated epsilon: %d -> %d transitions",
                     A.n_transitions, result.n_transitions)
        return result
