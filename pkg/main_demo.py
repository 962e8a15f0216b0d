"""
main_demo.py

Complete walkthrough of the query engine on the bank example.
Shows every stage from loading to memoryless resumption.

Simple explanation:
- Five people, eight transfers labeled h (high value) and s (suspicious)
- Query: walks from Alix to Bob whose labels match h* s (h|s)*
- The four shortest such walks (length 3) come out once each
"""

import os
import sys

# Add project root to path
sys.path.append(os.path.dirname(__file__))

from config.engine_config import EngineConfig
from config.logging_config import LoggingConfig

from models.annotation.annotate import Annotator
from models.annotation.annotation_dump import AnnotationDump
from models.annotation.cheapest import CheapestAnnotator
from models.automaton.nfa_loader import NfaLoader
from models.automaton.thompson import ThompsonBuilder
from models.enumeration.enumerate import Enumerator
from models.enumeration.memoryless import Exhausted, MemorylessEnumerator
from models.enumeration.trim import Trimmer
from models.graph.graph_loader import GraphLoader
from models.graph.walk import WalkFormatter
from utils.step_counter import StepCounter

DATA = os.path.join(os.path.dirname(__file__), 'data')
REGEX = "h* s (h|s)*"


def print_section(title: str):
    """Print section header"""
    print()
    print(f"  {title}")
    print("  " + "-" * len(title))


def demo_loading():
    print_section("GRAPH & QUERY")
    db = GraphLoader.load_file(os.path.join(DATA, 'bank.graph'))
    A = NfaLoader.load_file(os.path.join(DATA, 'bank.nfa'))
    for key, value in db.get_summary().items():
        print(f"    {key:15s}: {value}")
    print(f"    automaton      : {A}")
    print(f"    regex          : {REGEX} -> {ThompsonBuilder.compile_regex(REGEX)}")
    return db, A


def demo_annotation(db, A):
    print_section("ANNOTATION (L and B per vertex)")
    s, t = db.vertex_id('Alix'), db.vertex_id('Bob')
    counter = StepCounter()
    annotation = Annotator.annotate(db, A, s, t, counter=counter)
    for line in AnnotationDump.render(annotation).splitlines():
        print(f"    {line}")
    print(f"    preprocessing steps: {counter.total}")

    raw = Annotator.annotate(db, A, s, t, dedupe=False)
    slot = db.incoming(t).index(db.edge_id('e8'))
    print(f"    raw back-map B_Bob[1][e8] = {raw.B[t][1][slot]} "
          f"(deduplicated: {annotation.B[t][1][slot]})")
    return annotation


def demo_trim(annotation):
    print_section("TRIMMED QUEUES")
    C = Trimmer.trim_annotation(annotation)
    for (vertex, state), entries in C.dump().items():
        listed = ", ".join(f"({e}, {list(states)})" for e, states in entries)
        print(f"    C_{vertex}[{state}] = [{listed}]")
    return C


def demo_enumeration(db, A):
    print_section("ANSWERS (canonical order) WITH MULTIPLICITIES")
    s, t = db.vertex_id('Alix'), db.vertex_id('Bob')
    delay = StepCounter()
    result = Enumerator.run_query(db, A, s, t, multiplicity='recompute', delay_counter=delay)
    print(f"    lambda = {result.lam}")
    for output in result:
        print(f"    {WalkFormatter.full_format(db, output.walk):45s} x{output.multiplicity}")
    ann = result.annotation
    bound = EngineConfig.delay_bound(ann.lam, ann.automaton.n_transitions, ann.automaton.n_states)
    print(f"    max steps between outputs: {delay.max_lap} (bound {bound})")

    regex_result = Enumerator.run_query(db, ThompsonBuilder.compile_regex(REGEX), s, t)
    same = [o.walk for o in regex_result] == [o.walk for o in Enumerator.run_query(db, A, s, t)]
    print(f"    Thompson automaton of the regex gives the same answers: {same}")


def demo_multi_target(db, A):
    print_section("ALL TARGETS FROM ALIX")
    s = db.vertex_id('Alix')
    for t, result in Enumerator.run_query_multi(db, A, s, range(db.n_vertices)).items():
        if not result.ok:
            print(f"    {db.vertex_names[t]:7s}: unreachable")
            continue
        answers = [WalkFormatter.edges_format(db, o.walk) for o in result]
        print(f"    {db.vertex_names[t]:7s}: lambda={result.lam}  {answers}")


def demo_cheapest(A):
    print_section("CHEAPEST WALKS (cost(e7) = 10)")
    db = GraphLoader.load_file(os.path.join(DATA, 'bank_costs.graph'), with_costs=True)
    s, t = db.vertex_id('Alix'), db.vertex_id('Bob')
    annotation = CheapestAnnotator.annotate_cheapest(db, A, s, t)
    print(f"    minimal cost = {annotation.lam:g}")
    result = Enumerator.run_query(db, A, s, t, mode='cheapest')
    for output in result:
        print(f"    {WalkFormatter.edges_format(db, output.walk)}")


def demo_memoryless(db, annotation):
    print_section("MEMORYLESS RESUMPTION")
    R = Trimmer.resumable_trim_annotation(annotation)
    t = annotation.target
    checksum = R.checksum()
    current = MemorylessEnumerator.first_output(R, t)
    while current is not Exhausted:
        following = MemorylessEnumerator.next_output(R, None, None, current)
        nxt = "Exhausted" if following is Exhausted else WalkFormatter.edges_format(db, following)
        print(f"    after {WalkFormatter.edges_format(db, current):10s} -> {nxt}")
        current = following
    print(f"    index unchanged: {checksum == R.checksum()}")


def main():
    LoggingConfig.configure(0)
    print("=" * 60)
    print("  DISTINCT SHORTEST WALKS - BANK EXAMPLE")
    print("=" * 60)

    db, A = demo_loading()
    annotation = demo_annotation(db, A)
    demo_trim(annotation)
    demo_enumeration(db, A)
    demo_multi_target(db, A)
    demo_cheapest(A)
    demo_memoryless(db, annotation)
    print()


if __name__ == "__main__":
    main()
