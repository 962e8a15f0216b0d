"""
tests/test_annotate.py

Test suite for the preprocessing traversals: shortest, epsilon,
multi-target and cheapest.
"""

import sys
import os

sys.path.append(os.path.dirname(os.path.dirname(__file__)))

from config.engine_config import EngineConfig
from models.annotation.annotate import Annotator
from models.annotation.annotation_dump import AnnotationDump
from models.annotation.cheapest import CheapestAnnotator
from models.annotation.multi_target import MultiTargetAnnotator
from models.automaton.nfa import NfaSimulator
from models.automaton.nfa_loader import NfaLoader
from models.automaton.thompson import ThompsonBuilder
from models.enumeration.enumerate import Enumerator
from models.enumeration.memoryless import MemorylessEnumerator
from models.enumeration.trim import Trimmer
from models.errors import InvalidCost, NoMatchingWalk
from models.graph.graph_loader import GraphLoader
from oracle.brute_force import BruteForceOracle
from utils.step_counter import StepCounter

ROOT = os.path.dirname(os.path.dirname(__file__))
DATA = os.path.join(ROOT, 'data')
GOLDEN = os.path.join(ROOT, 'tests', 'golden', 'bank_annotation.txt')

FLOAT_TIE_GRAPH = """
vertex S
vertex M
vertex T
edge direct S T a 0.3
edge hop1 S M a 0.1
edge hop2 M T a 0.2
"""


class AnnotateTestSuite:
    """Test suite for models/annotation"""

    def __init__(self):
        self.passed = 0
        self.failed = 0
        self.results = []
        self.db = GraphLoader.load_file(os.path.join(DATA, 'bank.graph'))
        self.A = NfaLoader.load_file(os.path.join(DATA, 'bank.nfa'))
        self.v = {name: i for i, name in enumerate(self.db.vertex_names)}

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
        print("ANNOTATE TEST SUMMARY")
        print("=" * 70)
        print(f"Total Tests: {total}")
        print(f"Passed: {self.passed} ({100*self.passed/total:.1f}%)")
        print(f"Failed: {self.failed} ({100*self.failed/total:.1f}%)")
        print("=" * 70)

        if self.failed == 0:
            print("🎉 ALL ANNOTATE TESTS PASSED!")
        else:
            print("⚠️  Some tests failed. Review results above.")

    def run_all_tests(self):
        """Run all annotate tests"""
        print("\n" + "=" * 70)
        print("ANNOTATE TEST SUITE")
        print("=" * 70 + "\n")

        self.test_golden_dump()
        self.test_bank_lengths()
        self.test_bank_back_maps()
        self.test_raw_back_maps()
        self.test_frontiers()
        self.test_errors()
        self.test_zero_length()
        self.test_epsilon()
        self.test_multi_target()
        self.test_cheapest()
        self.test_float_cost_ties()
        self.test_step_counts()

        self.print_summary()

    def annotate_bank(self, **kwargs):
        return Annotator.annotate(self.db, self.A, self.v['Alix'], self.v['Bob'], **kwargs)

    def slot(self, vertex: str, edge: str) -> int:
        return self.db.incoming(self.v[vertex]).index(self.db.edge_id(edge))

    def test_golden_dump(self):
        """Byte-exact dump of L and B"""
        print("\n--- Testing Golden Dump ---")
        with open(GOLDEN, encoding='utf-8') as handle:
            text = handle.read()
        expected = "".join(line for line in text.splitlines(keepends=True)
                           if not line.startswith("## "))
        notes = [line for line in text.splitlines() if line.startswith("## ")]
        self.test("Golden file documents the deduplicated B lists",
                  any("DEDUPE_PREDECESSORS" in line for line in notes)
                  and any("[1,0,1]" in line for line in notes))
        got = AnnotationDump.render(self.annotate_bank())
        self.test("Bank annotation matches golden file", got == expected,
                  "" if got == expected else f"\n{got}")

    def test_bank_lengths(self):
        """L per vertex"""
        print("\n--- Testing Lengths ---")
        result = self.annotate_bank()
        self.test("lambda = 3", result.lam == 3)
        expected = {
            'Alix': [0, None],
            'Bob': [2, 3],
            'Cassie': [1, 2],
            'Dan': [1, 1],
            'Eve': [2, 2],
        }
        for name, lengths in expected.items():
            self.test(f"L_{name}", result.L[self.v[name]] == lengths, f"{result.L[self.v[name]]}")
        self.test("Root certificate {1}", result.root_certificate() == [1])
        self.test("lengths_at drops undefined entries", result.lengths_at(self.v['Alix']) == {0: 0})

    def test_bank_back_maps(self):
        """The non-trivial B lists"""
        print("\n--- Testing Back-Maps ---")
        result = self.annotate_bank()
        B = result.B
        expected = [
            ('Bob', 1, 'e8', [0, 1]), ('Bob', 1, 'e7', [1]), ('Bob', 0, 'e7', [0]),
            ('Bob', 0, 'e8', []),
            ('Eve', 0, 'e4', [0]), ('Eve', 0, 'e5', [0]), ('Eve', 1, 'e4', [1]),
            ('Eve', 1, 'e6', [0]), ('Eve', 0, 'e6', []), ('Eve', 1, 'e5', []),
            ('Dan', 0, 'e2', [0]), ('Dan', 1, 'e2', [0]),
            ('Cassie', 0, 'e1', [0]), ('Cassie', 1, 'e3', [0, 1]),
            ('Cassie', 0, 'e3', []), ('Cassie', 1, 'e1', []),
        ]
        for vertex, p, edge, states in expected:
            got = B[self.v[vertex]][p][self.slot(vertex, edge)]
            self.test(f"B_{vertex}[{p}][{edge}]", sorted(got) == states, f"{got}")

        fan_in = result.automaton.reverse_fan_in()
        bounded = all(len(B[u][p][i]) <= fan_in[p] and len(set(B[u][p][i])) == len(B[u][p][i])
                      for u in range(self.db.n_vertices)
                      for p in range(result.automaton.n_states)
                      for i in range(self.db.indeg(u)))
        self.test("B lists bounded by reverse fan-in, no repeats", bounded)

    def test_raw_back_maps(self):
        """Label-by-label back-maps keep repeated predecessors"""
        print("\n--- Testing Raw Back-Maps ---")
        raw = self.annotate_bank(dedupe=False)
        got = raw.B[self.v['Bob']][1][self.slot('Bob', 'e8')]
        self.test("Raw B_Bob[1][e8] is the multiset {0, 1, 1}", sorted(got) == [0, 1, 1], f"{got}")
        deduped = self.annotate_bank()
        self.test("Same lengths either way", raw.L == deduped.L)
        same_sets = all(set(raw.B[u][p][i]) == set(deduped.B[u][p][i])
                        for u in range(self.db.n_vertices) for p in range(2)
                        for i in range(self.db.indeg(u)))
        self.test("Same predecessor sets either way", same_sets)

    def test_frontiers(self):
        """Each expanded level holds exactly the pairs at that distance"""
        print("\n--- Testing Frontiers ---")
        result = self.annotate_bank(record_frontiers=True)
        self.test("One frontier per expanded level", len(result.frontiers) == 3)
        for k, frontier in enumerate(result.frontiers):
            at_k = {(u, p) for u in range(self.db.n_vertices) for p in range(2)
                    if result.L[u][p] == k}
            self.test(f"Frontier {k}", set(frontier) == at_k and len(frontier) == len(at_k))
        names = [(self.db.vertex_names[u], p) for u, p in result.frontiers[1]]
        self.test("Level-1 discovery order", names == [('Dan', 0), ('Dan', 1), ('Cassie', 0)],
                  f"{names}")

    def test_errors(self):
        """No matching walk and wrong automaton kind"""
        print("\n--- Testing Errors ---")
        try:
            Annotator.annotate(self.db, self.A, self.v['Bob'], self.v['Alix'])
            exc = None
        except NoMatchingWalk as caught:
            exc = caught
        self.test("Bob -> Alix has no matching walk",
                  exc is not None and exc.source == 'Bob' and exc.target == 'Alix')
        try:
            Annotator.annotate(self.db, ThompsonBuilder.compile_regex("h s"), 0, 1)
            ok = False
        except ValueError:
            ok = True
        self.test("annotate refuses epsilon moves", ok)
        try:
            Annotator.annotate(self.db, self.A, 0, 99)
            ok = False
        except ValueError:
            ok = True
        self.test("Vertex out of range", ok)

    def test_zero_length(self):
        """s = t with an initial final state"""
        print("\n--- Testing Zero-Length Answers ---")
        A = NfaSimulator.eliminate_eps(ThompsonBuilder.compile_regex("h*"))
        result = Annotator.annotate(self.db, A, self.v['Dan'], self.v['Dan'])
        self.test("lambda = 0", result.lam == 0)
        self.test("Nothing beyond the source is explored",
                  all(result.L[u] == [None] * A.n_states
                      for u in range(self.db.n_vertices) if u != self.v['Dan']))

    def test_epsilon(self):
        """annotate_eps agrees with annotate after elimination"""
        print("\n--- Testing Epsilon Annotation ---")
        A = ThompsonBuilder.compile_regex("h* s (h|s)*")
        s, t = self.v['Alix'], self.v['Bob']
        with_eps = Annotator.annotate_eps(self.db, A, s, t)
        without = Annotator.annotate(self.db, NfaSimulator.eliminate_eps(A), s, t)
        self.test("Same lambda", with_eps.lam == without.lam == 3)
        self.test("Same lengths", with_eps.L == without.L)
        same = all(sorted(with_eps.B[u][p][i]) == sorted(without.B[u][p][i])
                   for u in range(self.db.n_vertices) for p in range(A.n_states)
                   for i in range(self.db.indeg(u)))
        self.test("Same back-map sets", same)

    def test_multi_target(self):
        """One traversal, one lambda per target"""
        print("\n--- Testing Multi-Target ---")
        multi = MultiTargetAnnotator.annotate_multi(self.db, self.A, self.v['Alix'],
                                                    range(self.db.n_vertices))
        lambdas = {self.db.vertex_names[t]: lam for t, lam in multi.lambdas.items()}
        expected = {'Alix': None, 'Bob': 3, 'Cassie': 2, 'Dan': 1, 'Eve': 2}
        self.test("lambda per target", lambdas == expected, f"{lambdas}")
        self.test("Reachable targets", len(multi.reachable()) == 4)

        bob = multi.for_target(self.v['Bob'])
        single = self.annotate_bank()
        self.test("Bob view: same root certificate",
                  bob.root_certificate() == single.root_certificate())
        self.test("Shared lengths agree with single-target lengths up to lambda",
                  all(bob.L[u][p] == single.L[u][p]
                      for u in range(self.db.n_vertices) for p in range(2)
                      if single.L[u][p] is not None))
        try:
            multi.for_target(self.v['Alix'])
            ok = False
        except NoMatchingWalk:
            ok = True
        self.test("Unreachable target raises NoMatchingWalk", ok)
        try:
            MultiTargetAnnotator.annotate_multi(self.db, self.A, 0, [])
            ok = False
        except ValueError:
            ok = True
        self.test("Empty target set rejected", ok)

    def test_cheapest(self):
        """Cheapest-first traversal"""
        print("\n--- Testing Cheapest Annotation ---")
        db = GraphLoader.load_file(os.path.join(DATA, 'bank_costs.graph'), with_costs=True)
        s, t = self.v['Alix'], self.v['Bob']
        result = CheapestAnnotator.annotate_cheapest(db, self.A, s, t)
        self.test("Minimal cost 3", result.lam == 3.0 and result.by_cost)
        slot = db.incoming(t).index(db.edge_id('e7'))
        self.test("Expensive e7 leaves no predecessor at (Bob, 1)",
                  result.B[t][1][slot] == [], f"{result.B[t][1][slot]}")
        self.test("Bob reached in state 0 at cost 3 via e8", result.L[t][0] == 3.0)

        unit = CheapestAnnotator.annotate_cheapest(self.db, self.A, s, t)
        shortest = self.annotate_bank()
        agree = all(unit.L[u][p] is None or unit.L[u][p] == shortest.L[u][p]
                    for u in range(self.db.n_vertices) for p in range(2))
        self.test("Unit costs give BFS lengths", unit.lam == 3.0 and agree)

        doubled = CheapestAnnotator.annotate_cheapest(self.db, self.A, s, t, cost=lambda e: 2.0)
        self.test("Callable costs", doubled.lam == 6.0)

        for costs, name in [([1.0] * 7 + [0.0], "zero cost"), ([1.0] * 7 + [-2.0], "negative cost")]:
            try:
                CheapestAnnotator.annotate_cheapest(self.db, self.A, s, t, cost=costs)
                ok = False
            except InvalidCost:
                ok = True
            self.test(f"Rejects {name}", ok)
        try:
            CheapestAnnotator.resolve_costs(self.db, [1.0, 2.0])
            ok = False
        except ValueError:
            ok = True
        self.test("Cost list of the wrong length", ok)

    def test_float_cost_ties(self):
        """Costs that differ only by rounding count as equal"""
        print("\n--- Testing Float Cost Ties ---")
        db = GraphLoader.load_database(FLOAT_TIE_GRAPH, with_costs=True)
        A = NfaSimulator.eliminate_eps(ThompsonBuilder.compile_regex("a+"))
        s, m, t = db.vertex_id('S'), db.vertex_id('M'), db.vertex_id('T')
        self.test("0.1 + 0.2 differs from 0.3 in floating point", 0.1 + 0.2 != 0.3)

        result = CheapestAnnotator.annotate_cheapest(db, A, s, t)
        slots = {db.edge_names[e]: i for i, e in enumerate(db.incoming(t))}
        final = [q for q in A.final if result.L[t][q] is not None]
        kept = {name for name, i in slots.items()
                if any(result.B[t][q][i] for q in final)}
        self.test("Both last edges kept at the target", kept == {'direct', 'hop2'}, f"{kept}")
        self.test("Minimal cost 0.3", EngineConfig.same_cost(result.lam, 0.3), f"{result.lam}")
        self.test("Root certificate not empty", bool(result.root_certificate()))
        self.test("Intermediate vertex settled at 0.1",
                  any(d is not None and EngineConfig.same_cost(d, 0.1) for d in result.L[m]))

        walks = [tuple(db.edge_names[e] for e in o.walk.edges)
                 for o in Enumerator.run_query(db, A, s, t, mode='cheapest')]
        self.test("Both cheapest walks enumerated",
                  sorted(walks) == [('direct',), ('hop1', 'hop2')], f"{walks}")
        expected = [tuple(db.edge_names[e] for e in w.edges)
                    for w in BruteForceOracle.brute_force_cheapest(db, A, s, t, db.costs)]
        self.test("Same walks and order as the exhaustive search", walks == expected,
                  f"{walks} vs {expected}")

        R = Trimmer.resumable_trim_annotation(result)
        chained = [tuple(db.edge_names[e] for e in w.edges)
                   for w in MemorylessEnumerator.iterate_memoryless(R, t)]
        self.test("Memoryless successor sees the tie", chained == walks, f"{chained}")

    def test_step_counts(self):
        """Preprocessing steps are linear in |E| x |Delta|"""
        print("\n--- Testing Step Counts ---")
        counter = StepCounter()
        self.annotate_bank(counter=counter)
        allocation = self.db.n_edges * self.A.n_states
        self.test("Allocation plus traversal counted", counter.total > allocation,
                  f"{counter.total} steps")
        bound = allocation + self.db.n_edges * self.A.n_states * (1 + self.A.n_states)
        self.test("Within |E| x |Q| x (|Q| + 2)", counter.total <= bound, f"bound {bound}")


def run_annotate_tests():
    """Run annotate tests"""
    suite = AnnotateTestSuite()
    suite.run_all_tests()
    return suite.failed == 0


def test_annotate_suite():
    assert run_annotate_tests()


if __name__ == "__main__":
    success = run_annotate_tests()
    sys.exit(0 if success else 1)
