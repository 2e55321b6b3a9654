# poly.py
"""
Álgebra exata de polinômios multilineares e os elementos da base de Young.

Um monômio squarefree é a tupla ordenada dos seus índices; () é o monômio constante.
"""
import logging
from collections import Counter, defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from math import comb
from typing import Dict, Iterable, List, Mapping, Tuple, Union

import sympy

from combinatorics import (
    Sequence,
    TopSet,
    companion_sequence,
    enumerate_top_sets,
    smaller_sequences,
)
from errors import InvalidInputError


Monomial = Tuple[int, ...]
Rational = Union[int, Fraction]


@dataclass(frozen=True)
class MultilinearPolynomial:
    """Polinômio multilinear em x_1, ..., x_n com coeficientes racionais não nulos."""

    n: int
    terms: Dict[Monomial, Fraction] = field(default_factory=dict)

    def __post_init__(self):
        if self.n < 1:
            raise InvalidInputError(f"n deve ser positivo (recebido {self.n})")

        cleaned: Dict[Monomial, Fraction] = defaultdict(Fraction)
        for monomial, coefficient in dict(self.terms).items():
            key = tuple(sorted(int(i) for i in monomial))
            if len(set(key)) != len(key):
                raise InvalidInputError(f"Monômio não é squarefree: {monomial}")
            if key and not (1 <= key[0] and key[-1] <= self.n):
                raise InvalidInputError(f"Monômio fora de [1, {self.n}]: {monomial}")
            cleaned[key] += Fraction(coefficient)

        object.__setattr__(self, "terms", {m: c for m, c in cleaned.items() if c != 0})

    def __hash__(self):
        return hash((self.n, frozenset(self.terms.items())))

    # ---------------------------------------------
    # Construtores
    # ---------------------------------------------
    @classmethod
    def zero(cls, n: int) -> "MultilinearPolynomial":
        return cls(n, {})

    @classmethod
    def constant(cls, n: int, value: Rational) -> "MultilinearPolynomial":
        return cls(n, {(): Fraction(value)})

    @classmethod
    def variable(cls, n: int, index: int) -> "MultilinearPolynomial":
        return cls(n, {(index,): Fraction(1)})

    # ---------------------------------------------
    # Consultas
    # ---------------------------------------------
    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def degree(self) -> int:
        """Grau total; o polinômio nulo tem grau -1."""
        return max((len(m) for m in self.terms), default=-1)

    def is_homogeneous(self, d: int) -> bool:
        return all(len(m) == d for m in self.terms)

    def coefficient(self, monomial: Iterable[int]) -> Fraction:
        """cf(P, x_S)"""
        return self.terms.get(tuple(sorted(monomial)), Fraction(0))

    def evaluate(self, point: Mapping[int, Rational]) -> Fraction:
        """Avalia P com x_i = point[i] (índices ausentes valem 0)."""
        total = Fraction(0)
        for monomial, coefficient in self.terms.items():
            value = coefficient
            for i in monomial:
                value *= point.get(i, 0)
                if not value:
                    break
            total += value
        return total

    def evaluate_on_subset(self, subset: Iterable[int]) -> Fraction:
        """Valor no ponto 0/1 com x_i = 1 sse i ∈ subset."""
        members = set(subset)
        return sum(
            (c for m, c in self.terms.items() if members.issuperset(m)),
            Fraction(0),
        )

    # ---------------------------------------------
    # Aritmética
    # ---------------------------------------------
    def __add__(self, other: "MultilinearPolynomial") -> "MultilinearPolynomial":
        return add(self, other)

    def __sub__(self, other: "MultilinearPolynomial") -> "MultilinearPolynomial":
        return add(self, scale(other, -1))

    def __neg__(self) -> "MultilinearPolynomial":
        return scale(self, -1)

    def __mul__(self, value: Rational) -> "MultilinearPolynomial":
        return scale(self, value)

    __rmul__ = __mul__

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for monomial in sorted(self.terms, key=lambda m: (len(m), m)):
            coefficient = self.terms[monomial]
            name = "*".join(f"x{i}" for i in monomial)
            if not name:
                body = str(abs(coefficient))
            elif abs(coefficient) == 1:
                body = name
            else:
                body = f"{abs(coefficient)}*{name}"
            sign = "-" if coefficient < 0 else "+"
            parts.append(f"{sign} {body}")
        text = " ".join(parts)
        return text[2:] if text.startswith("+ ") else "-" + text[2:]


@dataclass(frozen=True, order=True)
class ExponentMonomial:
    """Monômio geral ∏ x_i^{e_i}, com e_i >= 1; aparece em produtos f·g."""

    powers: Tuple[Tuple[int, int], ...]

    def __post_init__(self):
        merged: Dict[int, int] = defaultdict(int)
        for index, exponent in self.powers:
            if exponent < 1:
                raise InvalidInputError(f"Expoente deve ser >= 1 (x{index}^{exponent})")
            merged[int(index)] += int(exponent)
        object.__setattr__(self, "powers", tuple(sorted(merged.items())))

    @classmethod
    def from_mapping(cls, exponents: Mapping[int, int]) -> "ExponentMonomial":
        return cls(tuple(exponents.items()))

    @property
    def support(self) -> Tuple[int, ...]:
        return tuple(index for index, _ in self.powers)

    @property
    def signature(self) -> Tuple[int, ...]:
        """Multiconjunto de expoentes; é tudo o que uma medida permutável enxerga."""
        return tuple(sorted(exponent for _, exponent in self.powers))

    def __str__(self) -> str:
        if not self.powers:
            return "1"
        return "*".join(f"x{i}" if e == 1 else f"x{i}^{e}" for i, e in self.powers)


# ---------------------------------------------
# Operações do módulo
# ---------------------------------------------
def _check_same_n(P: MultilinearPolynomial, Q: MultilinearPolynomial):
    if P.n != Q.n:
        raise InvalidInputError(f"Polinômios em ambientes diferentes: n={P.n} e n={Q.n}")


def add(P: MultilinearPolynomial, Q: MultilinearPolynomial) -> MultilinearPolynomial:
    _check_same_n(P, Q)
    terms: Dict[Monomial, Fraction] = defaultdict(Fraction, P.terms)
    for monomial, coefficient in Q.terms.items():
        terms[monomial] += coefficient
    return MultilinearPolynomial(P.n, terms)


def scale(P: MultilinearPolynomial, value: Rational) -> MultilinearPolynomial:
    value = Fraction(value)
    return MultilinearPolynomial(P.n, {m: c * value for m, c in P.terms.items()})


def multiply_to_exponents(
    P: MultilinearPolynomial, Q: MultilinearPolynomial
) -> Dict[ExponentMonomial, Fraction]:
    """Produto formal sem reduzir x_i^2; cada expoente fica <= 2."""
    _check_same_n(P, Q)
    product: Dict[ExponentMonomial, Fraction] = defaultdict(Fraction)
    for left, a in P.terms.items():
        for right, b in Q.terms.items():
            exponents = Counter(left)
            exponents.update(right)
            product[ExponentMonomial.from_mapping(exponents)] += a * b
    return {m: c for m, c in product.items() if c != 0}


def harmonic_defect(P: MultilinearPolynomial) -> MultilinearPolynomial:
    """Σ_i ∂P/∂x_i, calculado exatamente."""
    defect: Dict[Monomial, Fraction] = defaultdict(Fraction)
    for monomial, coefficient in P.terms.items():
        for position in range(len(monomial)):
            defect[monomial[:position] + monomial[position + 1:]] += coefficient
    return MultilinearPolynomial(P.n, defect)


def is_harmonic(P: MultilinearPolynomial) -> bool:
    return harmonic_defect(P).is_zero


# ---------------------------------------------
# Base de Frankl–Graham e base de Young
# ---------------------------------------------
def chi_pair(A: Sequence, B: Sequence) -> MultilinearPolynomial:
    """χ_{A,B} = ∏_i (x_{a_i} - x_{b_i}), expandido (2^d termos com coeficientes ±1)."""
    if A.n != B.n:
        raise InvalidInputError(f"Sequências em ambientes diferentes: n={A.n} e n={B.n}")
    if len(A) != len(B):
        raise InvalidInputError(f"Tamanhos diferentes: |A|={len(A)}, |B|={len(B)}")
    if not A.is_disjoint(B):
        raise InvalidInputError(f"A={A} e B={B} não são disjuntas")

    terms: Dict[Monomial, Fraction] = {(): Fraction(1)}
    for a, b in zip(A.entries, B.entries):
        expanded: Dict[Monomial, Fraction] = {}
        for monomial, coefficient in terms.items():
            expanded[monomial + (a,)] = coefficient
            expanded[monomial + (b,)] = -coefficient
        terms = expanded
    return MultilinearPolynomial(A.n, terms)


@lru_cache(maxsize=None)
def _chi_top_terms(entries: Tuple[int, ...], n: int) -> Tuple[Tuple[Monomial, Fraction], ...]:
    B = TopSet(entries, n)
    accumulated: Dict[Monomial, Fraction] = defaultdict(Fraction)
    for A in smaller_sequences(B):
        for monomial, coefficient in chi_pair(A, B).terms.items():
            accumulated[monomial] += coefficient
    total = MultilinearPolynomial(n, accumulated)
    logging.debug(f"🔮 χ_{B} expandido com {len(total.terms)} monômios")
    return tuple(sorted(total.terms.items()))


def chi_top(B: TopSet) -> MultilinearPolynomial:
    """χ_B = Σ_{A < B} χ_{A,B} (memoizado por (n, B))."""
    if not isinstance(B, TopSet):
        raise InvalidInputError(f"{B} não é um TopSet")
    return MultilinearPolynomial(B.n, dict(_chi_top_terms(B.entries, B.n)))


def chi_d(d: int, n: int) -> MultilinearPolynomial:
    """χ_d = ∏_{i<=d} (x_{2i-1} - x_{2i})"""
    if d < 0 or 2 * d > n:
        raise InvalidInputError(f"χ_d exige 0 <= 2d <= n (d={d}, n={n})")
    odds = Sequence(tuple(range(1, 2 * d, 2)), n)
    evens = Sequence(tuple(range(2, 2 * d + 1, 2)), n)
    return chi_pair(odds, evens)


def frankl_graham_basis(n: int, d: int) -> List[MultilinearPolynomial]:
    return [chi_pair(companion_sequence(B), B) for B in enumerate_top_sets(n, d)]


def harmonicity_witness(n: int, d: int) -> MultilinearPolynomial:
    """
    Polinômio homogêneo de grau d cujo defeito harmônico é exatamente x_1 ⋯ x_{d-1}:

        P = (1/d) Σ_{t=1}^{d} (-1)^{t+1} C(d,t) E_{A ⊆ [d-1], |A|=d-t; B ⊆ [n]∖[d-1], |B|=t} x_A x_B
    """
    if d < 1 or 2 * d > n:
        raise InvalidInputError(f"Exige 1 <= d <= n/2 (n={n}, d={d})")

    head = range(1, d)
    tail = range(d, n + 1)
    terms: Dict[Monomial, Fraction] = defaultdict(Fraction)
    for t in range(1, d + 1):
        a_sets = list(combinations(head, d - t))
        b_sets = list(combinations(tail, t))
        share = Fraction((-1) ** (t + 1) * comb(d, t), d * len(a_sets) * len(b_sets))
        for a_set in a_sets:
            for b_set in b_sets:
                terms[a_set + b_set] += share
    return MultilinearPolynomial(n, terms)


def dimension(n: int, d: int) -> Tuple[int, int]:
    """(dim 𝐻_{n,d}, dim do subespaço homogêneo de grau d) = (C(n,d), C(n,d) - C(n,d-1))."""
    if d < 0 or 2 * d > n:
        raise InvalidInputError(f"Exige 0 <= d <= n/2 (n={n}, d={d})")
    below = comb(n, d - 1) if d >= 1 else 0
    return comb(n, d), comb(n, d) - below


# ---------------------------------------------
# Posto exato (sympy)
# ---------------------------------------------
def _to_sympy(value: Fraction) -> sympy.Rational:
    return sympy.Rational(value.numerator, value.denominator)


def polynomial_rank(polys: List[MultilinearPolynomial]) -> int:
    """Posto sobre Q do conjunto de polinômios (vetores de coeficientes)."""
    if not polys:
        return 0
    columns = sorted({m for P in polys for m in P.terms})
    if not columns:
        return 0
    rows = [[_to_sympy(P.coefficient(m)) for m in columns] for P in polys]
    return sympy.Matrix(rows).rank()


def harmonic_subspace_dimension(n: int, d: int) -> int:
    """
    Dimensão dos polinômios harmônicos homogêneos de grau d, pelo posto das restrições:
    C(n,d) menos o posto de Σ_i ∂_i do grau d para o grau d-1.
    """
    if d < 0 or 2 * d > n:
        raise InvalidInputError(f"Exige 0 <= d <= n/2 (n={n}, d={d})")
    monomials = list(combinations(range(1, n + 1), d))
    if d == 0:
        return len(monomials)
    images = [harmonic_defect(MultilinearPolynomial(n, {m: 1})) for m in monomials]
    return len(monomials) - polynomial_rank(images)
