"""
tests/test_oracle_equivalence.py

Engine against the brute-force oracle on seeded random instances.

Simple explanation:
- Corpus: every instance, same answers in the same order as the oracle,
  memoryless chaining, epsilon handling, multi-target and unit-cost runs
- Definition suite: lengths, back-maps, queues and certificates compared with
  their definitions, computed by exhaustive search
"""

import sys
import os
from collections import defaultdict

sys.path.append(os.path.dirname(os.path.dirname(__file__)))

from config.engine_config import EngineConfig
from models.annotation.annotate import Annotator
from models.automaton.nfa import NfaSimulator
from models.automaton.nfa_loader import NfaLoader
from models.automaton.run_counter import WalkMatcher
from models.enumeration.enumerate import CallTrace, Enumerator
from models.enumeration.memoryless import Exhausted, MemorylessEnumerator
from models.enumeration.trim import Trimmer
from models.errors import InstanceTooLarge, NoMatchingWalk
from models.graph.graph_loader import GraphLoader
from oracle.brute_force import BruteForceOracle
from oracle.instance_generator import InstanceGenerator, InstanceSpec


def edge_lists(walks):
    return [tuple(getattr(w, "edges", ())) for w in walks]


class OracleEquivalenceTestSuite:
    """Engine vs oracle on the random corpus"""

    def __init__(self, corpus_size: int = EngineConfig.CORPUS_SIZE,
                 definition_size: int = EngineConfig.DEFINITION_SUITE_SIZE):
        self.passed = 0
        self.failed = 0
        self.results = []
        self.corpus_size = corpus_size
        self.definition_size = definition_size

    def test(self, name: str, condition: bool, message: str = ""):
        """Run a single test"""
        if condition:
            self.passed += 1
            status = "✅ PASS"
        else:
            self.failed += 1
            status = "❌ FAIL"

        result = f"{status}: {name}"
        if message:
            result += f" - {message}"

        self.results.append(result)
        print(result)
        return condition

    def print_summary(self):
        """Print test summary"""
        total = self.passed + self.failed
        print("\n" + "=" * 70)
        print("ORACLE EQUIVALENCE TEST SUMMARY")
        print("=" * 70)
        print(f"Total Tests: {total}")
        print(f"Passed: {self.passed} ({100*self.passed/total:.1f}%)")
        print(f"Failed: {self.failed} ({100*self.failed/total:.1f}%)")
        print("=" * 70)

        if self.failed == 0:
            print("🎉 ALL ORACLE EQUIVALENCE TESTS PASSED!")
        else:
            print("⚠️  Some tests failed. Review results above.")

    def run_all_tests(self):
        """Run corpus and definition checks"""
        print("\n" + "=" * 70)
        print("ORACLE EQUIVALENCE TEST SUITE")
        print(f"{self.corpus_size} corpus instances, {self.definition_size} definition-check instances")
        print("=" * 70 + "\n")

        self.test_corpus()
        self.test_multi_target_and_unit_costs()
        self.test_multiplicities()
        self.test_degenerate_family()
        self.test_seed_determinism()
        self.test_definitions()

        self.print_summary()

    # ==================== CORPUS ====================

    def corpus(self):
        for seed in range(self.corpus_size):
            yield seed, InstanceGenerator.generate_instance(InstanceGenerator.corpus_spec(seed))

    def test_corpus(self):
        """Answers, order, memoryless chaining and epsilon handling"""
        print("\n--- Testing Corpus ---")
        failures = defaultdict(list)
        skipped = 0
        with_answers = 0
        with_eps = 0

        for seed, (db, A, s, t) in self.corpus():
            try:
                expected = BruteForceOracle.brute_force_answers(db, A, s, t)
            except InstanceTooLarge:
                skipped += 1
                continue

            result = Enumerator.run_query(db, A, s, t)
            got = [o.walk for o in result]
            if edge_lists(got) != edge_lists(expected):
                failures['answers'].append(seed)
            if len(set(edge_lists(got))) != len(got):
                failures['duplicates'].append(seed)
            if not expected:
                if result.ok:
                    failures['no-match status'].append(seed)
                continue

            with_answers += 1
            if any(w.length != result.lam for w in got):
                failures['lengths'].append(seed)
            if not all(WalkMatcher.matches_walk(A, db, w) and w.source == s and w.target == t
                       for w in got):
                failures['matching'].append(seed)

            R = Trimmer.resumable_trim_annotation(result.annotation)
            before = R.checksum()
            chained = list(MemorylessEnumerator.iterate_memoryless(R, t))
            if edge_lists(chained) != edge_lists(expected):
                failures['memoryless'].append(seed)
            successors = [MemorylessEnumerator.next_output(R, None, None, a) for a in expected]
            if edge_lists(successors[:-1]) != edge_lists(expected[1:]) \
                    or successors[-1] is not Exhausted:
                failures['next_output'].append(seed)
            if R.checksum() != before:
                failures['index mutated'].append(seed)

            if A.has_eps:
                with_eps += 1
                plain = Enumerator.run_query(db, NfaSimulator.eliminate_eps(A), s, t)
                if edge_lists(o.walk for o in plain) != edge_lists(got):
                    failures['epsilon'].append(seed)

        print(f"  {with_answers} instances with answers, {with_eps} with epsilon moves, "
              f"{skipped} skipped (too large)")
        checks = ['answers', 'duplicates', 'no-match status', 'lengths', 'matching',
                  'memoryless', 'next_output', 'index mutated', 'epsilon']
        for check in checks:
            self.test(f"Corpus: {check}", not failures[check],
                      f"seeds {failures[check][:10]}" if failures[check] else "")
        self.test("Corpus exercises answers and epsilon automata",
                  with_answers > 0 and with_eps > 0)
        self.test("Oracle handled the corpus", skipped <= self.corpus_size // 20,
                  f"{skipped} skipped")

    def test_multi_target_and_unit_costs(self):
        """Multi-target streams and unit-cost cheapest runs equal single shortest runs"""
        print("\n--- Testing Multi-Target and Unit Costs ---")
        multi_failures = []
        cheapest_failures = []
        for seed, (db, A, s, t) in self.corpus():
            if seed >= self.definition_size:
                break
            results = Enumerator.run_query_multi(db, A, s, range(db.n_vertices))
            for target, result in results.items():
                single = Enumerator.run_query(db, A, s, target)
                if edge_lists(o.walk for o in result) != edge_lists(o.walk for o in single) \
                        or result.lam != single.lam:
                    multi_failures.append((seed, target))

            shortest = edge_lists(o.walk for o in Enumerator.run_query(db, A, s, t))
            cheapest = edge_lists(o.walk for o in Enumerator.run_query(db, A, s, t, mode='cheapest'))
            if shortest != cheapest:
                cheapest_failures.append(seed)

        self.test("Multi-target equals single-target", not multi_failures, f"{multi_failures[:5]}")
        self.test("Unit-cost cheapest equals shortest", not cheapest_failures,
                  f"{cheapest_failures[:10]}")

        costly = []
        for seed, (db, A, s, t) in self.corpus():
            if seed >= self.definition_size:
                break
            costs = [1.0 + (e % 3) for e in range(db.n_edges)]
            try:
                expected = BruteForceOracle.brute_force_cheapest(db, A, s, t, costs)
            except InstanceTooLarge:
                continue
            got = Enumerator.run_query(db, A, s, t, mode='cheapest', cost=costs)
            if edge_lists(o.walk for o in got) != edge_lists(expected):
                costly.append(seed)
        self.test("Cheapest walks with integer costs equal the oracle", not costly, f"{costly[:10]}")

    def test_multiplicities(self):
        """Run counts against label-choice enumeration"""
        print("\n--- Testing Multiplicities ---")
        failures = []
        for seed, (db, A, s, t) in self.corpus():
            if seed >= self.definition_size:
                break
            if A.has_eps:
                continue
            for method in ('recompute', 'track'):
                for output in Enumerator.run_query(db, A, s, t, multiplicity=method):
                    if output.multiplicity != BruteForceOracle.brute_force_run_count(db, A, output.walk):
                        failures.append((seed, method))
                        break
        self.test("Multiplicities equal the oracle count", not failures, f"{failures[:5]}")

    def test_degenerate_family(self):
        """Single label, deterministic automaton: one run per answer"""
        print("\n--- Testing Single-Label Deterministic Family ---")
        failures = defaultdict(list)
        with_answers = 0
        for seed in range(self.definition_size):
            db, A, s, t = InstanceGenerator.generate_instance(InstanceGenerator.degenerate_spec(seed))
            if not A.is_deterministic or db.n_labels > 1:
                failures['shape'].append(seed)
            try:
                expected = BruteForceOracle.brute_force_answers(db, A, s, t)
            except InstanceTooLarge:
                continue
            outputs = list(Enumerator.run_query(db, A, s, t, multiplicity='track'))
            if edge_lists(o.walk for o in outputs) != edge_lists(expected):
                failures['answers'].append(seed)
            if any(o.multiplicity != 1 for o in outputs):
                failures['single run'].append(seed)
            if expected:
                with_answers += 1
                if Enumerator.run_query(db, A, s, t).lam != BruteForceOracle.brute_force_lambda(db, A, s, t):
                    failures['lambda'].append(seed)

        print(f"  {with_answers} instances with answers")
        for check in ['shape', 'answers', 'single run', 'lambda']:
            self.test(f"Single-label deterministic: {check}", not failures[check],
                      f"seeds {failures[check][:10]}" if failures[check] else "")
        self.test("Single-label deterministic family has answers", with_answers > 0)

    def test_seed_determinism(self):
        """Same seed, byte-identical instance files"""
        print("\n--- Testing Seed Determinism ---")
        specs = [InstanceGenerator.corpus_spec(seed) for seed in range(10)]
        specs += [InstanceGenerator.degenerate_spec(seed) for seed in range(10)]
        differing = []
        for spec in specs:
            first = InstanceGenerator.generate_instance(spec)
            second = InstanceGenerator.generate_instance(spec.with_seed(spec.seed))
            if GraphLoader.serialize_database(first[0]) != GraphLoader.serialize_database(second[0]) \
                    or NfaLoader.serialize_nfa(first[1]) != NfaLoader.serialize_nfa(second[1]) \
                    or first[2:] != second[2:]:
                differing.append(spec.seed)
        self.test("Same seed gives identical graph, automaton and endpoints", not differing,
                  f"seeds {differing}")

        base = InstanceGenerator.generate_instance(InstanceSpec())
        other = InstanceGenerator.generate_instance(InstanceSpec().with_seed(1))
        self.test("Another seed gives another graph",
                  GraphLoader.serialize_database(other[0]) != GraphLoader.serialize_database(base[0]))

        try:
            spec = InstanceGenerator.degenerate_spec(0)
            spec.regex_size = 3
            InstanceGenerator.generate_instance(spec)
            ok = False
        except ValueError:
            ok = True
        self.test("Deterministic spec with a regex rejected", ok)

    # ==================== DEFINITIONS ====================

    def definition_instances(self):
        """Epsilon-free instances that have answers"""
        found = 0
        seed = 0
        while found < self.definition_size and seed < 20 * self.definition_size:
            spec = InstanceGenerator.corpus_spec(seed)
            seed += 1
            if spec.regex_size > 0:
                continue
            db, A, s, t = InstanceGenerator.generate_instance(spec)
            try:
                annotation = Annotator.annotate(db, A, s, t)
            except NoMatchingWalk:
                continue
            found += 1
            yield seed - 1, db, A, s, t, annotation

    def test_definitions(self):
        """Lambda, lengths, back-maps, queues and certificates by definition"""
        print("\n--- Testing Definition Suite ---")
        failures = defaultdict(list)
        count = 0
        for seed, db, A, s, t, annotation in self.definition_instances():
            count += 1
            lam = annotation.lam
            n_states = A.n_states
            if lam != BruteForceOracle.brute_force_lambda(db, A, s, t):
                failures['lambda'].append(seed)

            lengths = {(u, p): d for u in range(db.n_vertices)
                       for p, d in enumerate(annotation.L[u]) if d is not None}
            if lengths != BruteForceOracle.brute_force_lengths(db, A, s, lam):
                failures['lengths'].append(seed)

            back = {(u, p, i): set(states) for u in range(db.n_vertices)
                    for p in range(n_states) for i, states in enumerate(annotation.B[u][p]) if states}
            if back != BruteForceOracle.brute_force_back_maps(db, A, s, lam):
                failures['back-maps'].append(seed)

            fan_in = annotation.automaton.reverse_fan_in()
            if any(len(annotation.B[u][p][i]) > fan_in[p]
                   for u in range(db.n_vertices) for p in range(n_states)
                   for i in range(db.indeg(u))):
                failures['fan-in'].append(seed)

            C = Trimmer.trim_annotation(annotation)
            for u in range(db.n_vertices):
                for p in range(n_states):
                    entries = C.queue(u, p).entries
                    wanted = [(e, annotation.B[u][p][i]) for i, e in enumerate(db.incoming(u))
                              if annotation.B[u][p][i]]
                    if entries != wanted:
                        failures['queues'].append(seed)

            trace = CallTrace()
            Enumerator.enumerate(C, lam, annotation.root_certificate(), lambda o: None, trace=trace)
            certificates = {w: S for w, _, S in trace.calls}
            if len(certificates) != len(trace.calls):
                failures['distinct nodes'].append(seed)
            if any(ell != lam - len(w) for w, ell, _ in trace.calls):
                failures['remaining length'].append(seed)
            if certificates != BruteForceOracle.brute_force_certificates(db, A, s, t):
                failures['certificates'].append(seed)

            for w, S in certificates.items():
                if not w:
                    continue
                e, rest = w[0], w[1:]
                u = db.tgt_list[e]
                union = set()
                for p in certificates[rest]:
                    union.update(annotation.B[u][p][db.tgtidx_list[e]])
                if union != S:
                    failures['recurrence'].append(seed)
                    break

            start = {w: (db.src_list[w[0]] if w else t) for w in certificates}
            for w, S in certificates.items():
                for longer, S2 in certificates.items():
                    if len(longer) > len(w) and longer[len(longer) - len(w):] == w \
                            and start[longer] == start[w] and S & S2:
                        failures['disjointness'].append(seed)
                        break

        print(f"  {count} definition-check instances")
        self.test("Definition-check instances found", count == self.definition_size, f"{count}")
        for check in ['lambda', 'lengths', 'back-maps', 'fan-in', 'queues', 'distinct nodes',
                      'remaining length', 'certificates', 'recurrence', 'disjointness']:
            self.test(f"Definition: {check}", not failures[check],
                      f"seeds {sorted(set(failures[check]))[:10]}" if failures[check] else "")


def run_oracle_equivalence_tests(corpus_size: int = EngineConfig.CORPUS_SIZE,
                                 definition_size: int = EngineConfig.DEFINITION_SUITE_SIZE):
    """Run oracle equivalence tests"""
    suite = OracleEquivalenceTestSuite(corpus_size, definition_size)
    suite.run_all_tests()
    return suite.failed == 0


def test_oracle_equivalence_suite():
    assert run_oracle_equivalence_tests()


if __name__ == "__main__":
    success = run_oracle_equivalence_tests()
    sys.exit(0 if success else 1)
