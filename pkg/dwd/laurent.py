"""
Exact Laurent polynomials in the chamber minors of a base class.

A polynomial is a map from dense exponent tuples (one slot per non-unit base label,
exponents may be negative) to Python ints. Terms are ordered graded-lex: total degree
first, then the exponent tuple lexicographically.
"""

from enum import Enum
from fractions import Fraction
from operator import add, sub
from typing import Dict, Iterable, List, Mapping, Sequence, Tuple

from .errors import NotDivisible, VarTableMismatch, ZeroDenominator
from .labels import ChamberLabel, ClassKey, decode_key

Exponents = Tuple[int, ...]


class VarTable:
    """Bijection between the non-unit labels of a base class and variable slots."""

    def __init__(self, base: ClassKey):
        self.base = tuple(base)
        self.labels: List[ChamberLabel] = sorted(
            (label for label in decode_key(self.base) if not label.is_unit), key=lambda l: l.code)
        self.index: Dict[ChamberLabel, int] = {label: i for i, label in enumerate(self.labels)}

    def __len__(self) -> int:
        return len(self.labels)

    def __eq__(self, other) -> bool:
        return isinstance(other, VarTable) and self.base == other.base

    def __hash__(self) -> int:
        return hash(self.base)

    def __repr__(self) -> str:
        return f"VarTable({len(self.labels)} variables)"


class ArithOp(Enum):
    ADD = "add"
    SUB = "sub"
    MUL = "mul"


def grlex_key(exponents: Exponents) -> Tuple[int, Exponents]:
    return (sum(exponents), exponents)


class LaurentPoly:
    __slots__ = ("table", "terms")

    def __init__(self, table: VarTable, terms: Mapping[Exponents, int] = ()):
        self.table = table
        self.terms: Dict[Exponents, int] = {e: c for e, c in dict(terms).items() if c}

    @classmethod
    def zero(cls, table: VarTable) -> "LaurentPoly":
        return cls(table)

    @classmethod
    def constant(cls, table: VarTable, value: int) -> "LaurentPoly":
        return cls(table, {(0,) * len(table): value})

    @classmethod
    def one(cls, table: VarTable) -> "LaurentPoly":
        return cls.constant(table, 1)

    @classmethod
    def variable(cls, table: VarTable, index: int, power: int = 1) -> "LaurentPoly":
        exponents = [0] * len(table)
        exponents[index] = power
        return cls(table, {tuple(exponents): 1})

    @classmethod
    def of_label(cls, table: VarTable, label: ChamberLabel) -> "LaurentPoly":
        """The base chamber minor of a label; the unit label is the constant 1."""
        if label.is_unit:
            return cls.one(table)
        return cls.variable(table, table.index[label])

    @property
    def term_count(self) -> int:
        return len(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def ordered_terms(self) -> List[Tuple[Exponents, int]]:
        return sorted(self.terms.items(), key=lambda item: grlex_key(item[0]), reverse=True)

    def __eq__(self, other) -> bool:
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.table == other.table and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.table, frozenset(self.terms.items())))

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        return lp_arith(self, other, ArithOp.ADD)

    def __sub__(self, other: "LaurentPoly") -> "LaurentPoly":
        return lp_arith(self, other, ArithOp.SUB)

    def __mul__(self, other: "LaurentPoly") -> "LaurentPoly":
        return lp_arith(self, other, ArithOp.MUL)

    def __truediv__(self, other: "LaurentPoly") -> "LaurentPoly":
        return lp_exact_div(self, other)

    def __repr__(self) -> str:
        return f"LaurentPoly({render(self)})"

    def __str__(self) -> str:
        return render(self)


def _check_tables(p: LaurentPoly, q: LaurentPoly) -> None:
    if p.table != q.table:
        raise VarTableMismatch("polynomials are over different base classes")


def _add_into(acc: Dict[Exponents, int], exponents: Exponents, coefficient: int) -> None:
    total = acc.get(exponents, 0) + coefficient
    if total:
        acc[exponents] = total
    else:
        acc.pop(exponents, None)


def _times_term(p: Mapping[Exponents, int], exponents: Exponents, coefficient: int) -> Dict[Exponents, int]:
    return {tuple(map(add, e, exponents)): c * coefficient for e, c in p.items()}


def lp_arith(p: LaurentPoly, q: LaurentPoly, op: ArithOp) -> LaurentPoly:
    _check_tables(p, q)
    if op is ArithOp.MUL:
        acc: Dict[Exponents, int] = {}
        for e1, c1 in p.terms.items():
            for e2, c2 in q.terms.items():
                _add_into(acc, tuple(map(add, e1, e2)), c1 * c2)
        return LaurentPoly(p.table, acc)
    sign = 1 if op is ArithOp.ADD else -1
    acc = dict(p.terms)
    for e, c in q.terms.items():
        _add_into(acc, e, sign * c)
    return LaurentPoly(p.table, acc)


def monomial_content(terms: Iterable[Exponents]) -> Exponents:
    """Componentwise minimum exponent over all terms."""
    return tuple(min(column) for column in zip(*terms))


def _shift(terms: Mapping[Exponents, int], by: Exponents) -> Dict[Exponents, int]:
    return {tuple(map(sub, e, by)): c for e, c in terms.items()}


def lp_exact_div(num: LaurentPoly, den: LaurentPoly) -> LaurentPoly:
    """Exact quotient num/den; raises NotDivisible when a remainder would be left."""
    _check_tables(num, den)
    if den.is_zero():
        raise ZeroDivisionError("division by the zero Laurent polynomial")
    if num.is_zero():
        return LaurentPoly(num.table)

    num_content = monomial_content(list(num.terms))
    den_content = monomial_content(list(den.terms))
    remainder = _shift(num.terms, num_content)
    divisor = _shift(den.terms, den_content)

    lead_exp, lead_coef = max(divisor.items(), key=lambda item: grlex_key(item[0]))
    quotient: Dict[Exponents, int] = {}
    while remainder:
        exp, coef = max(remainder.items(), key=lambda item: grlex_key(item[0]))
        step = tuple(map(sub, exp, lead_exp))
        if min(step) < 0 or coef % lead_coef:
            raise NotDivisible(f"leading term of the remainder is not divisible ({len(remainder)} terms left)")
        factor = coef // lead_coef
        quotient[step] = factor
        for e, c in _times_term(divisor, step, factor).items():
            _add_into(remainder, e, -c)

    shift = tuple(map(sub, num_content, den_content))
    return LaurentPoly(num.table, {tuple(map(add, e, shift)): c for e, c in quotient.items()})


def lp_is_positive(p: LaurentPoly) -> bool:
    return bool(p.terms) and all(c > 0 for c in p.terms.values())


def lp_eval(p: LaurentPoly, point: Sequence) -> Fraction:
    values = [Fraction(v) for v in point]
    total = Fraction(0)
    for exponents, coefficient in p.terms.items():
        term = Fraction(coefficient)
        for i, power in enumerate(exponents):
            if not power:
                continue
            if power < 0 and values[i] == 0:
                raise ZeroDenominator(f"{p.table.labels[i].minor_name()} is zero at a negative exponent")
            term *= values[i] ** power
        total += term
    return total


def _render_term(table: VarTable, exponents: Exponents, coefficient: int) -> str:
    factors = []
    for i, power in enumerate(exponents):
        if power == 1:
            factors.append(table.labels[i].minor_name())
        elif power:
            factors.append(f"{table.labels[i].minor_name()}^{power}")
    magnitude = abs(coefficient)
    if not factors:
        return str(magnitude)
    if magnitude != 1:
        factors.insert(0, str(magnitude))
    return "*".join(factors)


def render(p: LaurentPoly) -> str:
    if p.is_zero():
        return "0"
    out = ""
    for k, (exponents, coefficient) in enumerate(p.ordered_terms()):
        body = _render_term(p.table, exponents, coefficient)
        if k == 0:
            out = body if coefficient > 0 else f"-{body}"
        else:
            out += f" + {body}" if coefficient > 0 else f" - {body}"
    return out
