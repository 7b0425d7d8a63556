import os
import random
import unittest

import sympy as sp

from dwd.errors import NotTotallyPositive, ScopeTooLarge
from dwd.labels import class_key, decode_key, non_fixed_minors
from dwd.laurent import LaurentPoly, VarTable, render
from dwd.paths import MovePath, class_moves, find_paths_to_minors
from dwd.phi_graph import enumerate_phi
from dwd.positivity import (MinorExpressions, Scope, binomial_matrix, check_totally_positive, exchange,
                            express_minor, minor, numeric_check, plan_tasks, symb_identity_check,
                            tp_matrix, verify_conjecture)
from dwd.quiver import apply_move, detect_moves
from dwd.wiring import chamber_labels, parse_word, random_word
from tests.helpers import DATA_DIR, LONG_TESTS, L, long_test

WORKED_BASE = "R1 R3 R2 B2 R1 R3 R2 B1 B3 B2 B1 B3"


def find_move(s, center, replacement):
    for move in detect_moves(s):
        if move.center == center and move.replacement == replacement:
            return move
    raise AssertionError(f"no move {center} -> {replacement}")


class TestExpressMinor(unittest.TestCase):

    def test_target_in_base(self):
        base = class_key(chamber_labels(parse_word("R1 B1", 2)))
        report = express_minor(base, L("1|1"))
        self.assertEqual(len(report.path), 0)
        self.assertEqual(report.term_count, 1)
        self.assertEqual(report.expression, LaurentPoly.variable(report.expression.table, 0))

    def test_n2(self):
        base = class_key(chamber_labels(parse_word("R1 B1", 2)))
        report = express_minor(base, L("2|2"))
        self.assertEqual(len(report.path), 1)
        self.assertEqual(str(report.expression), "D[1,1]^-1*D[2,1]*D[1,2] + D[1,1]^-1*D[12,12]")
        self.assertTrue(report.positive)
        self.assertTrue(numeric_check(base, report, sp.Matrix([[1, 1], [1, 2]])))

    def test_worked_example_chain(self):
        with open(os.path.join(DATA_DIR, "worked_example.txt")) as f:
            expected = f.read().splitlines()

        s = chamber_labels(parse_word(WORKED_BASE, 4))
        table = VarTable(class_key(s))
        values = {label: LaurentPoly.of_label(table, label) for label in s}
        rendered = []
        for center, replacement in (("13|12", "34|13"), ("3|1", "14|13"), ("34|13", "14|12")):
            move = find_move(s, L(center), L(replacement))
            values[move.replacement] = exchange(values, move)
            del values[move.center]
            s = apply_move(s, move)
            rendered.append(f"{move.replacement.minor_name()} = {render(values[move.replacement])}")
        self.assertEqual(rendered, expected)

    def test_worked_example_shortest_path_agrees(self):
        with open(os.path.join(DATA_DIR, "worked_example.txt")) as f:
            final = f.read().splitlines()[-1]
        base = class_key(chamber_labels(parse_word(WORKED_BASE, 4)))
        report = express_minor(base, L("14|12"))
        self.assertEqual(len(report.path), 1)
        self.assertEqual(f"D[14,12] = {report.expression}", final)
        self.assertTrue(report.positive)

    def test_path_independence(self):
        graph, _ = enumerate_phi(3)
        rng = random.Random(9)
        for _ in range(10):
            base = rng.choice(graph.keys)
            expressions = MinorExpressions(base)
            for target in non_fixed_minors(3):
                direct = express_minor(base, target, expressions).expression
                # detour through the first neighbor, then a shortest path from there
                first, neighbor = class_moves(base)[0]
                onward = find_paths_to_minors(neighbor, [target])[target]
                detour = MovePath(base, (first,) + onward.steps)
                self.assertEqual(MinorExpressions(base).express(target, detour), direct)


class TestVerify(unittest.TestCase):

    def test_n2_full(self):
        report = verify_conjecture(2, Scope.full())
        self.assertEqual(report.classes, 2)
        self.assertEqual(report.pairs, 4)
        self.assertEqual(report.positive, 4)
        self.assertTrue(report.ok)

    def test_n3_full(self):
        report = verify_conjecture(3, Scope.full())
        self.assertEqual(report.classes, 34)
        self.assertEqual(report.pairs, 476)
        self.assertEqual(report.positive, 476)
        self.assertEqual(report.failures, [])
        data = report.to_json()
        self.assertEqual(data["pairs"], 476)

    def test_sample_is_seeded(self):
        self.assertEqual(plan_tasks(3, Scope(50), seed=1), plan_tasks(3, Scope(50), seed=1))
        self.assertEqual(sum(len(codes) for _, codes in plan_tasks(3, Scope(50), seed=1)), 50)

    def test_scope_limits(self):
        with self.assertRaises(ScopeTooLarge):
            plan_tasks(5, Scope.full())
        with self.assertRaises(ScopeTooLarge):
            plan_tasks(6, Scope(10))

    def test_parallel_matches_serial(self):
        serial = verify_conjecture(3, Scope(60), seed=4)
        parallel = verify_conjecture(3, Scope(60), seed=4, threads=2)
        self.assertEqual(serial.to_json()["max_terms"], parallel.to_json()["max_terms"])
        self.assertEqual((serial.pairs, serial.positive), (parallel.pairs, parallel.positive))

    @long_test
    def test_n4_sample(self):
        report = verify_conjecture(4, Scope(1000), seed=2026)
        self.assertEqual(report.pairs, 1000)
        self.assertTrue(report.ok)
        self.assertGreater(report.max_terms, 100)

    @long_test
    def test_n4_full(self):
        report = verify_conjecture(4, Scope.full(), threads=os.cpu_count() or 1)
        self.assertEqual(report.pairs, 303428)
        self.assertTrue(report.ok)


class TestMatrices(unittest.TestCase):

    def test_binomial_is_totally_positive(self):
        m = tp_matrix(3)
        self.assertEqual(m, sp.Matrix([[1, 1, 1], [1, 2, 3], [1, 3, 6]]))
        self.assertEqual(m, binomial_matrix(3))

    def test_identity_is_rejected(self):
        with self.assertRaises(NotTotallyPositive):
            check_totally_positive(sp.eye(3))

    def test_seeded_factorization(self):
        for n in (2, 3, 4):
            m = tp_matrix(n, seed=n)
            self.assertGreater(m.det(), 0)
            self.assertEqual(m, tp_matrix(n, seed=n))

    def test_minor(self):
        m = binomial_matrix(3)
        self.assertEqual(minor(m, L("23|23")), 2 * 6 - 3 * 3)
        self.assertEqual(minor(m, L("-|-")), 1)

    def test_numeric_oracle_n3(self):
        rng = random.Random(13)
        graph, _ = enumerate_phi(3)
        minors = non_fixed_minors(3)
        for trial in range(100):
            base = rng.choice(graph.keys)
            report = express_minor(base, rng.choice(minors))
            self.assertTrue(numeric_check(base, report, tp_matrix(3, seed=trial)))

    @long_test
    def test_numeric_oracle_n4(self):
        rng = random.Random(17)
        graph, _ = enumerate_phi(4)
        minors = non_fixed_minors(4)
        for trial in range(100):
            base = rng.choice(graph.keys)
            report = express_minor(base, rng.choice(minors))
            self.assertTrue(numeric_check(base, report, tp_matrix(4, seed=trial)))


class TestSymbolicIdentity(unittest.TestCase):

    def test_n2(self):
        s = chamber_labels(parse_word("R1 B1", 2))
        (move,) = detect_moves(s)
        self.assertTrue(symb_identity_check(s, move))

    def test_every_move_of_phi3(self):
        graph, _ = enumerate_phi(3)
        checked = 0
        for key in graph.keys:
            s = decode_key(key)
            for move in detect_moves(s):
                self.assertTrue(symb_identity_check(s, move, 3))
                checked += 1
        self.assertEqual(checked, 120)

    def test_random_moves_n4(self):
        rng = random.Random(31)
        count = 100 if LONG_TESTS else 15
        for _ in range(count):
            s = chamber_labels(random_word(4, rng))
            move = rng.choice(detect_moves(s))
            self.assertTrue(symb_identity_check(s, move, 4))


if __name__ == "__main__":
    unittest.main()
