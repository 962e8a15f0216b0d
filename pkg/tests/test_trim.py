"""
tests/test_trim.py

Test suite for restartable queues, the trimmed index and the resumable
slot arrays.
"""

import sys
import os

sys.path.append(os.path.dirname(os.path.dirname(__file__)))

from models.annotation.annotate import Annotator
from models.automaton.nfa_loader import NfaLoader
from models.enumeration.restartable_queue import RestartableQueue
from models.enumeration.trim import Trimmer
from models.graph.graph_loader import GraphLoader
from utils.step_counter import StepCounter

DATA = os.path.join(os.path.dirname(os.path.dirname(__file__)), 'data')

BANK_QUEUES = {
    ('Bob', 0): [('e7', (0,))],
    ('Bob', 1): [('e8', (0, 1)), ('e7', (1,))],
    ('Cassie', 0): [('e1', (0,))],
    ('Cassie', 1): [('e3', (0, 1))],
    ('Dan', 0): [('e2', (0,))],
    ('Dan', 1): [('e2', (0,))],
    ('Eve', 0): [('e4', (0,)), ('e5', (0,))],
    ('Eve', 1): [('e4', (1,)), ('e6', (0,))],
}


class TrimTestSuite:
    """Test suite for models/enumeration/trim.py"""

    def __init__(self):
        self.passed = 0
        self.failed = 0
        self.results = []
        self.db = GraphLoader.load_file(os.path.join(DATA, 'bank.graph'))
        self.A = NfaLoader.load_file(os.path.join(DATA, 'bank.nfa'))
        self.annotation = Annotator.annotate(self.db, self.A, self.db.vertex_id('Alix'),
                                             self.db.vertex_id('Bob'))

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
        print("TRIM TEST SUMMARY")
        print("=" * 70)
        print(f"Total Tests: {total}")
        print(f"Passed: {self.passed} ({100*self.passed/total:.1f}%)")
        print(f"Failed: {self.failed} ({100*self.failed/total:.1f}%)")
        print("=" * 70)

        if self.failed == 0:
            print("🎉 ALL TRIM TESTS PASSED!")
        else:
            print("⚠️  Some tests failed. Review results above.")

    def run_all_tests(self):
        """Run all trim tests"""
        print("\n" + "=" * 70)
        print("TRIM TEST SUITE")
        print("=" * 70 + "\n")

        self.test_restartable_queue()
        self.test_bank_queues()
        self.test_queue_properties()
        self.test_resumable_index()
        self.test_step_counts()

        self.print_summary()

    def test_restartable_queue(self):
        """enqueue / peek / advance / restart"""
        print("\n--- Testing Restartable Queue ---")
        queue = RestartableQueue()
        self.test("New queue is empty", queue.is_empty() and queue.peek() is None)
        queue.enqueue(3, [0])
        queue.enqueue(5, [1, 2])
        self.test("Head is the first entry", queue.peek() == (3, [0]))
        queue.advance()
        self.test("Advance moves past the head", queue.peek() == (5, [1, 2]) and not queue.at_start)
        queue.advance()
        queue.advance()
        self.test("Exhausted after the last entry", queue.is_empty() and len(queue) == 2)
        queue.restart()
        self.test("Restart rewinds", queue.at_start and queue.peek() == (3, [0]))

    def test_bank_queues(self):
        """C on the bank annotation"""
        print("\n--- Testing Bank Queues ---")
        C = Trimmer.trim_annotation(self.annotation)
        dump = C.dump()
        self.test("Trimmed queues of the bank example", dump == BANK_QUEUES,
                  "" if dump == BANK_QUEUES else f"{dump}")
        self.test("Entry count", C.n_entries() == 11, f"{C.n_entries()}")
        self.test("Cursors start at the head", C.all_at_start())
        self.test("Target recorded", C.target == self.db.vertex_id('Bob'))
        spine = C.dump([self.db.vertex_id('Eve')])
        self.test("Dump restricted to chosen vertices", set(spine) == {('Eve', 0), ('Eve', 1)})

    def test_queue_properties(self):
        """Exactly the non-empty slots, in tgtidx order, sharing B's lists"""
        print("\n--- Testing Queue Properties ---")
        db, B = self.db, self.annotation.B
        C = Trimmer.trim_annotation(self.annotation)
        exact = True
        ordered = True
        shared = True
        for u in range(db.n_vertices):
            for p in range(self.A.n_states):
                entries = C.queue(u, p).entries
                wanted = [(e, B[u][p][i]) for i, e in enumerate(db.incoming(u)) if B[u][p][i]]
                exact &= entries == wanted
                keys = [db.tgtidx_list[e] for e, _ in entries]
                ordered &= keys == sorted(keys)
                shared &= all(states is B[u][p][db.tgtidx_list[e]] for e, states in entries)
        self.test("Queues hold exactly the non-empty slots", exact)
        self.test("Queues sorted by tgtidx", ordered)
        self.test("State lists shared with B", shared)

    def test_resumable_index(self):
        """Slots with next-non-empty links"""
        print("\n--- Testing Resumable Index ---")
        db = self.db
        R = Trimmer.resumable_trim_annotation(self.annotation)
        bob, eve = db.vertex_id('Bob'), db.vertex_id('Eve')
        self.test("first_from(Bob, 1, 0) = 0", R.first_from(bob, 1, 0) == 0)
        self.test("first_from(Bob, 0, 0) skips the empty e8 slot", R.first_from(bob, 0, 0) == 1)
        self.test("first_from(Eve, 1, 1) skips e5", R.first_from(eve, 1, 1) == 2)
        self.test("first_from past the end", R.first_from(eve, 0, 2) is None
                  and R.first_from(eve, 0, 3) is None)

        C = Trimmer.trim_annotation(self.annotation)
        same = all(R.chain(u, p) == C.queue(u, p).entries
                   for u in range(db.n_vertices) for p in range(self.A.n_states))
        self.test("Link chains equal the queues", same)
        self.test("Checksum is stable", R.checksum() == R.checksum())
        other = Trimmer.resumable_trim_annotation(
            Annotator.annotate(db, self.A, db.vertex_id('Alix'), eve))
        self.test("Checksum tells indexes apart", other.checksum() != R.checksum())

    def test_step_counts(self):
        """Trim does one step per (incoming slot, state)"""
        print("\n--- Testing Step Counts ---")
        counter = StepCounter()
        Trimmer.trim_annotation(self.annotation, counter)
        expected = self.db.n_edges * self.A.n_states
        self.test("trim steps = |E| x |Q|", counter.total == expected, f"{counter.total}")
        counter = StepCounter()
        Trimmer.resumable_trim_annotation(self.annotation, counter)
        self.test("resumable trim steps = |E| x |Q|", counter.total == expected)


def run_trim_tests():
    """Run trim tests"""
    suite = TrimTestSuite()
    suite.run_all_tests()
    return suite.failed == 0


def test_trim_suite():
    assert run_trim_tests()


if __name__ == "__main__":
    success = run_trim_tests()
    sys.exit(0 if success else 1)
