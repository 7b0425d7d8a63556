import random
import unittest
from fractions import Fraction

from dwd.errors import NotDivisible, VarTableMismatch, ZeroDenominator
from dwd.labels import class_key
from dwd.laurent import (ArithOp, LaurentPoly, VarTable, lp_arith, lp_eval, lp_exact_div,
                         lp_is_positive, render)
from dwd.wiring import chamber_labels, parse_word, standard_word

TABLE = VarTable(class_key(chamber_labels(parse_word("R1 B1", 2))))


def x(i: int, power: int = 1) -> LaurentPoly:
    return LaurentPoly.variable(TABLE, i, power)


def const(value: int) -> LaurentPoly:
    return LaurentPoly.constant(TABLE, value)


def random_poly(rng: random.Random, terms: int) -> LaurentPoly:
    out = {}
    for _ in range(terms):
        exponents = tuple(rng.randint(-2, 2) for _ in range(len(TABLE)))
        out[exponents] = rng.choice([-3, -2, -1, 1, 2, 3])
    return LaurentPoly(TABLE, out)


class TestVarTable(unittest.TestCase):

    def test_variables_in_code_order(self):
        self.assertEqual([str(label) for label in TABLE.labels], ["1|1", "2|1", "1|2", "12|12"])

    def test_unit_label_is_one(self):
        unit = [label for label in chamber_labels(parse_word("R1 B1", 2)) if label.is_unit][0]
        self.assertEqual(LaurentPoly.of_label(TABLE, unit), LaurentPoly.one(TABLE))


class TestArithmetic(unittest.TestCase):

    def test_identities(self):
        p = x(0) * x(1, -1) + const(2) * x(2)
        self.assertEqual(p + LaurentPoly.zero(TABLE), p)
        self.assertEqual(p * LaurentPoly.one(TABLE), p)
        self.assertEqual(x(0) * x(0, -1), LaurentPoly.one(TABLE))

    def test_difference_of_squares(self):
        product = lp_arith(x(0) + x(1), x(0) - x(1), ArithOp.MUL)
        self.assertEqual(product, x(0) * x(0) - x(1) * x(1))

    def test_zero_terms_are_dropped(self):
        self.assertTrue((x(0) - x(0)).is_zero())
        self.assertEqual((x(0) - x(0)).terms, {})

    def test_ring_axioms(self):
        rng = random.Random(2)
        for _ in range(20):
            a, b, c = (random_poly(rng, 3) for _ in range(3))
            self.assertEqual((a * b) * c, a * (b * c))
            self.assertEqual(a * (b + c), a * b + a * c)
            self.assertEqual(a + b, b + a)

    def test_table_mismatch(self):
        other = VarTable(class_key(chamber_labels(standard_word(3))))
        with self.assertRaises(VarTableMismatch):
            x(0) + LaurentPoly.variable(other, 0)


class TestDivision(unittest.TestCase):

    def test_monomial_divisor(self):
        quotient = lp_exact_div(x(0) * x(1) + x(2) * x(2), x(3))
        self.assertEqual(quotient, x(0) * x(1) * x(3, -1) + x(2) * x(2) * x(3, -1))

    def test_polynomial_divisor(self):
        self.assertEqual(lp_exact_div(x(0) * x(0) - x(1) * x(1), x(0) - x(1)), x(0) + x(1))

    def test_laurent_divisor(self):
        den = x(0, -1) + x(1) * x(2, -2)
        num = den * (x(3) + const(5) * x(0, -3))
        self.assertEqual(num / den, x(3) + const(5) * x(0, -3))

    def test_not_divisible(self):
        with self.assertRaises(NotDivisible):
            lp_exact_div(x(0) + x(1), x(0) + const(2) * x(1))
        with self.assertRaises(NotDivisible):
            lp_exact_div(x(0), const(2))

    def test_division_round_trip(self):
        rng = random.Random(7)
        for _ in range(30):
            p = random_poly(rng, 4)
            d = random_poly(rng, 3)
            if d.is_zero():
                continue
            self.assertEqual(lp_exact_div(p * d, d), p)


class TestEvalAndRender(unittest.TestCase):

    def test_eval(self):
        self.assertEqual(lp_eval(LaurentPoly.one(TABLE), [5, 6, 7, 8]), 1)
        self.assertEqual(lp_eval(x(0) * x(1, -1), [3, 2, 1, 1]), Fraction(3, 2))
        with self.assertRaises(ZeroDenominator):
            lp_eval(x(0) * x(1, -1), [3, 0, 1, 1])

    def test_eval_of_quotient(self):
        rng = random.Random(4)
        num = (x(0) + x(1)) * (x(2) + const(3) * x(3, -1))
        den = x(0) + x(1)
        quotient = lp_exact_div(num, den)
        for _ in range(10):
            point = [Fraction(rng.randint(1, 9), rng.randint(1, 9)) for _ in range(4)]
            self.assertEqual(lp_eval(quotient, point) * lp_eval(den, point), lp_eval(num, point))

    def test_positivity(self):
        self.assertTrue(lp_is_positive(x(0) * x(1, -1) + const(2) * x(2)))
        self.assertFalse(lp_is_positive(x(0) - x(1)))
        self.assertFalse(lp_is_positive(LaurentPoly.zero(TABLE)))

    def test_render(self):
        p = x(0, -1) * x(1) * x(2) + x(0, -1) * x(3)
        self.assertEqual(render(p), "D[1,1]^-1*D[2,1]*D[1,2] + D[1,1]^-1*D[12,12]")
        self.assertEqual(render(const(3) * x(2) * x(2) - const(1)), "3*D[1,2]^2 - 1")
        self.assertEqual(render(LaurentPoly.zero(TABLE)), "0")

    def test_canonical_form_ignores_construction_order(self):
        a = x(0) + x(1) * x(2) - x(3)
        b = (x(3) * const(-1)) + (x(2) * x(1)) + x(0)
        self.assertEqual(a.terms, b.terms)
        self.assertEqual(str(a), str(b))


if __name__ == "__main__":
    unittest.main()
