"""
Positivity verification of minors as Laurent polynomials in chamber minors.

For a base class and a target minor, a shortest move path is found to a class that
contains the target; each move's exchange relation X*Y = P1*P2 + P3*P4 is solved for the
new label Y over the base class's variables. The result must be a Laurent polynomial
with positive coefficients.

Two independent oracles back this up: a symbolic expansion of every exchange identity
in generic matrix entries, and exact evaluation on totally positive rational matrices.
"""

import logging
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import sympy as sp

from .errors import NotTotallyPositive, ScopeTooLarge
from .labels import (ChamberLabel, ClassKey, LabelSet, all_minors, class_key, decode_key,
                     elements_of, key_n, non_fixed_minors)
from .laurent import LaurentPoly, VarTable, lp_eval, lp_exact_div, lp_is_positive
from .paths import MovePath, find_paths_to_minors
from .phi_graph import EnumerateOptions, enumerate_phi
from .quiver import Move, replace_label
from .wiring import Color, chamber_labels, random_word, standard_word

logger = logging.getLogger("verify")

FULL_MAX_N = 4
SAMPLE_MAX_N = 5


def exchange(values: Dict[ChamberLabel, LaurentPoly], move: Move) -> LaurentPoly:
    """New label of a move: Y = (P1*P2 + P3*P4) / X."""
    (p1, p2), (p3, p4) = move.factors
    numerator = values[p1] * values[p2] + values[p3] * values[p4]
    return lp_exact_div(numerator, values[move.center])


class MinorExpressions:
    """Label polynomials of classes reached from one base class.

    Values only depend on the class, not on the path used to reach it, so they are
    cached by class key.
    """

    def __init__(self, base: ClassKey):
        self.base = base
        self.table = VarTable(base)
        self._values: Dict[ClassKey, Dict[ChamberLabel, LaurentPoly]] = {
            base: {label: LaurentPoly.of_label(self.table, label) for label in decode_key(base)}
        }

    def values_along(self, path: MovePath) -> Dict[ChamberLabel, LaurentPoly]:
        key = path.start
        values = self._values[key]
        for move in path.steps:
            following = class_key(replace_label(decode_key(key), move))
            cached = self._values.get(following)
            if cached is None:
                cached = dict(values)
                del cached[move.center]
                cached[move.replacement] = exchange(values, move)
                self._values[following] = cached
            key, values = following, cached
        return values

    def express(self, target: ChamberLabel, path: MovePath) -> LaurentPoly:
        return self.values_along(path)[target]


@dataclass
class ExpressionReport:
    base: ClassKey
    target: ChamberLabel
    path: MovePath
    expression: LaurentPoly

    @property
    def positive(self) -> bool:
        return lp_is_positive(self.expression)

    @property
    def term_count(self) -> int:
        return self.expression.term_count


def express_minor(base: ClassKey, target: ChamberLabel,
                  expressions: Optional[MinorExpressions] = None) -> ExpressionReport:
    path = find_paths_to_minors(base, [target])[target]
    expressions = expressions or MinorExpressions(base)
    return ExpressionReport(base, target, path, expressions.express(target, path))


@dataclass(frozen=True)
class PairResult:
    base: ClassKey
    target_code: int
    positive: bool
    term_count: int
    path_length: int


def verify_base(base: ClassKey, target_codes: Sequence[int]) -> List[PairResult]:
    """Express several minors over one base class, sharing one BFS and one cache."""
    targets = [ChamberLabel.from_code(code) for code in target_codes]
    paths = find_paths_to_minors(base, targets)
    expressions = MinorExpressions(base)
    out = []
    for target in targets:
        path = paths[target]
        expression = expressions.express(target, path)
        out.append(PairResult(base, target.code, lp_is_positive(expression), expression.term_count, len(path)))
    return out


def _verify_task(task: Tuple[ClassKey, Tuple[int, ...]]) -> List[PairResult]:
    return verify_base(*task)


@dataclass(frozen=True)
class Scope:
    sample: Optional[int] = None  # None means every class and every non-fixed minor

    @classmethod
    def full(cls) -> "Scope":
        return cls(None)

    @property
    def is_full(self) -> bool:
        return self.sample is None


@dataclass
class VerificationReport:
    n: int
    pairs: int = 0
    positive: int = 0
    classes: int = 0
    failures: List[dict] = field(default_factory=list)
    max_terms: int = 0
    max_terms_pair: Optional[dict] = None
    max_path_length: int = 0
    wall_seconds: float = 0.0

    @property
    def ok(self) -> bool:
        return not self.failures and self.positive == self.pairs

    def add(self, result: PairResult) -> None:
        self.pairs += 1
        pair = {"base": list(result.base), "minor": str(ChamberLabel.from_code(result.target_code))}
        if result.positive:
            self.positive += 1
        else:
            self.failures.append(pair)
        if result.term_count > self.max_terms:
            self.max_terms = result.term_count
            self.max_terms_pair = pair
        self.max_path_length = max(self.max_path_length, result.path_length)

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "pairs": self.pairs,
            "positive": self.positive,
            "classes": self.classes,
            "failures": self.failures,
            "max_terms": self.max_terms,
            "max_terms_pair": self.max_terms_pair,
            "max_path_length": self.max_path_length,
            "wall_seconds": round(self.wall_seconds, 3),
        }


Task = Tuple[ClassKey, Tuple[int, ...]]
TaskRunner = Callable[[Sequence[Task]], List[List[PairResult]]]


def plan_tasks(n: int, scope: Scope, seed: int = 0) -> List[Task]:
    """(base, minor codes) tasks, sorted by base key."""
    if n < 2:
        raise ScopeTooLarge(f"n must be at least 2, got {n}")
    if scope.is_full and n > FULL_MAX_N:
        raise ScopeTooLarge(f"full verification is not feasible for n={n}; use a sample")
    if n > SAMPLE_MAX_N:
        raise ScopeTooLarge(f"verification is limited to n <= {SAMPLE_MAX_N}")
    minors = [label.code for label in non_fixed_minors(n)]

    if scope.is_full:
        graph, _ = enumerate_phi(n, EnumerateOptions())
        return [(key, tuple(minors)) for key in graph.keys]

    rng = random.Random(seed)
    if n <= FULL_MAX_N:
        graph, _ = enumerate_phi(n, EnumerateOptions())
        draw = lambda: rng.choice(graph.keys)
    else:
        draw = lambda: class_key(chamber_labels(random_word(n, rng)))
    grouped: Dict[ClassKey, List[int]] = {}
    for _ in range(scope.sample):
        grouped.setdefault(draw(), []).append(rng.choice(minors))
    return [(key, tuple(codes)) for key, codes in sorted(grouped.items())]


def verify_conjecture(n: int, scope: Scope, seed: int = 0, threads: int = 1,
                      runner: Optional[TaskRunner] = None) -> VerificationReport:
    started = time.time()
    tasks = plan_tasks(n, scope, seed)
    report = VerificationReport(n, classes=len(tasks))
    logger.info(f"n={n}: {sum(len(codes) for _, codes in tasks)} pairs over {len(tasks)} classes")

    if runner is not None:
        batches = runner(tasks)
    elif threads > 1:
        with ProcessPoolExecutor(max_workers=threads) as pool:
            batches = list(pool.map(_verify_task, tasks, chunksize=max(1, len(tasks) // (threads * 8))))
    else:
        batches = map(_verify_task, tasks)

    for i, results in enumerate(batches, 1):
        for result in results:
            report.add(result)
        if i % 500 == 0:
            logger.info(f"{i}/{len(tasks)} classes, {report.pairs} pairs, max terms {report.max_terms}")
    report.wall_seconds = time.time() - started
    logger.info(f"n={n}: {report.positive}/{report.pairs} positive, max terms {report.max_terms}, "
                f"{report.wall_seconds:.1f}s")
    return report


# Matrix oracles

def minor(m: sp.Matrix, label: ChamberLabel):
    if label.is_unit:
        return sp.Integer(1)
    rows = [k - 1 for k in elements_of(label.red)]
    cols = [k - 1 for k in elements_of(label.blue)]
    return m.extract(rows, cols).det(method="berkowitz")


def is_totally_positive(m: sp.Matrix) -> bool:
    n = m.rows
    return all(minor(m, label) > 0 for label in all_minors(n))


def binomial_matrix(n: int) -> sp.Matrix:
    return sp.Matrix(n, n, lambda i, j: sp.binomial(i + j, i))


def _random_positive(rng: random.Random) -> sp.Rational:
    return sp.Rational(rng.randint(1, 9), rng.randint(1, 9))


def tp_matrix(n: int, seed: Optional[int] = None) -> sp.Matrix:
    """A totally positive rational matrix.

    With a seed: lower bidiagonal factors along the red letters of the standard word,
    a positive diagonal, then upper bidiagonal factors along the blue letters, all with
    random positive rational parameters. Without one: the binomial matrix.
    """
    if seed is None:
        m = binomial_matrix(n)
    else:
        rng = random.Random(seed)
        lower, upper = sp.eye(n), sp.eye(n)
        for letter in standard_word(n).letters:
            i = letter.level
            factor = sp.eye(n)
            if letter.color is Color.RED:
                factor[i, i - 1] = _random_positive(rng)
                lower = lower * factor
            else:
                factor[i - 1, i] = _random_positive(rng)
                upper = upper * factor
        diagonal = sp.diag(*[_random_positive(rng) for _ in range(n)])
        m = lower * diagonal * upper
    check_totally_positive(m)
    return m


def check_totally_positive(m: sp.Matrix) -> None:
    if not is_totally_positive(m):
        raise NotTotallyPositive("matrix has a minor that is not positive")


def chamber_point(table: VarTable, m: sp.Matrix) -> List[Fraction]:
    """Values of the base chamber minors at m, in variable order."""
    out = []
    for label in table.labels:
        value = sp.Rational(minor(m, label))
        out.append(Fraction(int(value.p), int(value.q)))
    return out


def numeric_check(base: ClassKey, report: ExpressionReport, m: sp.Matrix) -> bool:
    table = report.expression.table
    if table.base != tuple(base):
        raise ValueError("report was not computed over this base class")
    value = lp_eval(report.expression, chamber_point(table, m))
    expected = sp.Rational(minor(m, report.target))
    return value == Fraction(int(expected.p), int(expected.q))


def generic_matrix(n: int) -> sp.Matrix:
    return sp.Matrix(n, n, lambda i, j: sp.Symbol(f"m{i + 1}{j + 1}"))


def symb_identity_check(s: LabelSet, move: Move, n: Optional[int] = None) -> bool:
    """Expand X*Y - P1*P2 - P3*P4 in generic matrix entries and test for zero."""
    if n is None:
        n = key_n(class_key(s))
    m = generic_matrix(n)
    (p1, p2), (p3, p4) = move.factors
    d = lambda label: minor(m, label)
    difference = d(move.center) * d(move.replacement) - d(p1) * d(p2) - d(p3) * d(p4)
    return sp.expand(difference) == 0
