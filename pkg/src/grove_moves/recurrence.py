"""
Exact Laurent polynomials and the cube recurrence.

Arithmetic runs in a sympy sparse integer polynomial ring after shifting
each operand by its minimum exponent in every variable; Laurent division is
exact precisely when the shifted divisor divides the shifted dividend.
"""

from __future__ import annotations

import logging
import threading
from dataclasses import dataclass
from typing import Any, Callable, Dict, Iterable, List, NamedTuple, Optional, Tuple

from sympy import ZZ
from sympy.polys.orderings import lex
from sympy.polys.rings import ring

from .config import DEFAULT_SETTINGS, Settings
from .exceptions import DivisionByZeroError, InexactDivisionError, RecurrenceError

logger = logging.getLogger(__name__)


class VarId(NamedTuple):
    i: int
    j: int
    k: int

    @property
    def level(self) -> int:
        return self.i + self.j + self.k

    def __str__(self) -> str:
        return f"x[{self.i},{self.j},{self.k}]"


Exponents = Tuple[Tuple[VarId, int], ...]
Term = Tuple[Exponents, int]


def _monomial_str(exps: Exponents) -> str:
    parts = []
    for var, e in exps:
        parts.append(str(var) if e == 1 else f"{var}^{e}")
    return "*".join(parts)


@dataclass(frozen=True)
class LaurentPoly:
    """Canonical Laurent polynomial: merged terms, no zero data, sorted by monomial."""

    terms: Tuple[Term, ...] = ()

    @classmethod
    def from_terms(cls, terms: Iterable[Tuple[Dict[VarId, int], int]]) -> "LaurentPoly":
        merged: Dict[Exponents, int] = {}
        for exps, coeff in terms:
            key = tuple(sorted((VarId(*v), e) for v, e in exps.items() if e))
            merged[key] = merged.get(key, 0) + coeff
        return cls(tuple(sorted((m, c) for m, c in merged.items() if c)))

    @classmethod
    def variable(cls, var: Tuple[int, int, int]) -> "LaurentPoly":
        return cls(((((VarId(*var), 1),), 1),))

    @classmethod
    def constant(cls, value: int) -> "LaurentPoly":
        return cls(((((), value),) if value else ()))

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def variables(self) -> List[VarId]:
        return sorted({v for exps, _ in self.terms for v, _ in exps})

    @property
    def term_count(self) -> int:
        return len(self.terms)

    def coefficients(self) -> List[int]:
        return [c for _, c in self.terms]

    def rename(self, fn: Callable[[VarId], VarId]) -> "LaurentPoly":
        return LaurentPoly.from_terms(
            ({fn(v): e for v, e in exps}, c) for exps, c in self.terms
        )

    def shift(self, offset: Tuple[int, int, int]) -> "LaurentPoly":
        di, dj, dk = offset
        return self.rename(lambda v: VarId(v.i + di, v.j + dj, v.k + dk))

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        return poly_arith(self, other, "add")

    def __mul__(self, other: "LaurentPoly") -> "LaurentPoly":
        return poly_arith(self, other, "mul")

    def div_exact(self, other: "LaurentPoly") -> "LaurentPoly":
        return poly_arith(self, other, "div_exact")

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        out = []
        for exps, c in self.terms:
            mono = _monomial_str(exps)
            if not mono:
                text = str(c)
            elif c == 1:
                text = mono
            elif c == -1:
                text = f"-{mono}"
            else:
                text = f"{c}*{mono}"
            out.append(text)
        return " + ".join(out).replace("+ -", "- ")


class _Frame:
    """A polynomial ring over the union of the operands' variables."""

    def __init__(self, variables: List[VarId]):
        self.variables = variables or [VarId(0, 0, 0)]
        self.index = {v: n for n, v in enumerate(self.variables)}
        names = [f"v{n}" for n in range(len(self.variables))]
        self.ring = ring(names, ZZ, lex)[0]

    def floor(self, p: LaurentPoly) -> List[int]:
        low = [0] * len(self.variables)
        first = True
        for exps, _ in p.terms:
            vec = self._vector(exps)
            low = vec if first else [min(a, b) for a, b in zip(low, vec)]
            first = False
        return low

    def _vector(self, exps: Exponents) -> List[int]:
        vec = [0] * len(self.variables)
        for v, e in exps:
            vec[self.index[v]] = e
        return vec

    def lift(self, p: LaurentPoly, shift: List[int]):
        data = {}
        for exps, c in p.terms:
            vec = self._vector(exps)
            data[tuple(a - s for a, s in zip(vec, shift))] = c
        return self.ring.from_dict(data)

    def lower(self, element: Any, shift: List[int]) -> LaurentPoly:
        return LaurentPoly.from_terms(
            (
                {v: int(e) + s for v, e, s in zip(self.variables, monom, shift)},
                int(coeff),
            )
            for monom, coeff in element.terms()
        )


def poly_arith(p: LaurentPoly, q: LaurentPoly, op: str) -> LaurentPoly:
    """Exact ``add``, ``mul`` or ``div_exact`` on Laurent polynomials.

    Args:
        p: Left operand (dividend for ``div_exact``).
        q: Right operand (divisor for ``div_exact``).
        op: One of ``add``, ``mul``, ``div_exact``.

    Returns:
        LaurentPoly: The exact result. For ``div_exact`` the quotient times
        ``q`` reproduces ``p``.

    Raises:
        DivisionByZeroError: If ``q`` is zero in a division.
        InexactDivisionError: If ``q`` does not divide ``p``; the witness is
            the leading term of the remainder.
        ValueError: For an unknown operation name.
    """
    if op not in ("add", "mul", "div_exact"):
        raise ValueError(f"Unknown polynomial operation '{op}'")
    if op == "div_exact" and q.is_zero:
        raise DivisionByZeroError()
    frame = _Frame(sorted(set(p.variables) | set(q.variables)))
    sp, sq = frame.floor(p), frame.floor(q)

    if op == "add":
        shift = [min(a, b) for a, b in zip(sp, sq)]
        return frame.lower(frame.lift(p, shift) + frame.lift(q, shift), shift)
    if op == "mul":
        shift = [a + b for a, b in zip(sp, sq)]
        return frame.lower(frame.lift(p, sp) * frame.lift(q, sq), shift)

    if p.is_zero:
        return p
    quotient, remainder = frame.lift(p, sp).div(frame.lift(q, sq))
    if remainder:
        rest = frame.lower(remainder, sp)
        witness = str(LaurentPoly((rest.terms[-1],)))
        raise InexactDivisionError(witness)
    return frame.lower(quotient, [a - b for a, b in zip(sp, sq)])


class CubeRecurrence:
    """Memoized cube recurrence over flat initial slices.

    Cells with ``base_level <= i + j + k <= base_level + 2`` are the initial
    variables; every deeper cell is

        (f[i-1,j,k] f[i,j-1,k-1] + f[i,j-1,k] f[i-1,j,k-1] + f[i,j,k-1] f[i-1,j-1,k])
        / f[i-1,j-1,k-1]

    The memo may be shared between threads; values are computed outside the
    lock and the first stored value wins.
    """

    def __init__(self, base_level: int = -1):
        self.base_level = base_level
        self._memo: Dict[VarId, LaurentPoly] = {}
        self._lock = threading.Lock()

    def f(self, cell: Tuple[int, int, int]) -> LaurentPoly:
        """Evaluate the recurrence at ``cell``.

        Raises:
            RecurrenceError: If the cell lies below the initial slices.
            InexactDivisionError: If a division leaves a remainder.
        """
        key = VarId(*cell)
        if key.level < self.base_level:
            raise RecurrenceError(
                f"Cell {tuple(key)} has level {key.level}, below {self.base_level}"
            )
        with self._lock:
            cached = self._memo.get(key)
        if cached is not None:
            return cached
        if key.level <= self.base_level + 2:
            value = LaurentPoly.variable(key)
        else:
            i, j, k = key
            numerator = (
                self.f((i - 1, j, k)) * self.f((i, j - 1, k - 1))
                + self.f((i, j - 1, k)) * self.f((i - 1, j, k - 1))
                + self.f((i, j, k - 1)) * self.f((i - 1, j - 1, k))
            )
            try:
                value = numerator.div_exact(self.f((i - 1, j - 1, k - 1)))
            except InexactDivisionError:
                logger.error("Cube recurrence division failed at cell %s", tuple(key))
                raise
            logger.debug("f%s has %d terms", tuple(key), value.term_count)
        with self._lock:
            return self._memo.setdefault(key, value)


_default = CubeRecurrence()


def cube_f(cell: Tuple[int, int, int]) -> LaurentPoly:
    return _default.f(cell)


def balanced_cell(level: int) -> VarId:
    q, r = divmod(level, 3)
    return VarId(q + (r > 0), q + (r > 1), q)


@dataclass
class LevelSummary:
    level: int
    cell: VarId
    term_count: int
    max_abs_coefficient: int
    all_coefficients_one: bool
    exponent_patterns: List[List[Tuple[Tuple[int, int, int], int]]]

    def to_dict(self, include_patterns: bool = True) -> Dict[str, Any]:
        data: Dict[str, Any] = {
            "level": self.level,
            "cell": list(self.cell),
            "term_count": self.term_count,
            "max_abs_coefficient": self.max_abs_coefficient,
            "all_coefficients_one": self.all_coefficients_one,
        }
        if include_patterns:
            data["exponent_patterns"] = [
                [[list(v), e] for v, e in pattern] for pattern in self.exponent_patterns
            ]
        return data


def level_summary(
    m: int,
    settings: Settings = DEFAULT_SETTINGS,
    recurrence: Optional[CubeRecurrence] = None,
) -> LevelSummary:
    """Term count and coefficient check for the balanced cell at level ``m``.

    Raises:
        RecurrenceError: If ``m < 1``.
        BudgetExceededError: If ``m`` is above the recurrence budget.
    """
    if isinstance(m, bool) or not isinstance(m, int) or m < 1:
        raise RecurrenceError(f"Level must be a positive integer, got {m!r}")
    settings.check("recurrence_budget", m)
    engine = recurrence or _default
    cell = balanced_cell(m)
    poly = engine.f(cell)
    coefficients = poly.coefficients()
    summary = LevelSummary(
        level=m,
        cell=cell,
        term_count=poly.term_count,
        max_abs_coefficient=max(abs(c) for c in coefficients),
        all_coefficients_one=all(c == 1 for c in coefficients),
        exponent_patterns=[
            [(tuple(v), e) for v, e in exps] for exps, _ in poly.terms  # type: ignore[misc]
        ],
    )
    logger.info(
        "Level %d cell %s: %d terms, all coefficients one: %s",
        m,
        tuple(cell),
        summary.term_count,
        summary.all_coefficients_one,
    )
    return summary
