# expansion.py
"""
Funções na fatia ([n] escolhe k) e a expansão de Young–Fourier

    f = Σ_B f̂(B) χ_B,   |B| <= k.
"""
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from math import comb
from typing import Callable, Dict, Iterable, Mapping, Tuple

from combinatorics import TopSet, all_top_sets, top_set_key
from errors import InvalidInputError
from measures import (
    ExchangeableMeasure,
    ProductMu,
    UniformSlice,
    chi_norm_sq,
    inner_product,
)
from poly import MultilinearPolynomial, chi_top, harmonic_defect


Subset = Tuple[int, ...]


@lru_cache(maxsize=None)
def slice_points(n: int, k: int) -> Tuple[Subset, ...]:
    """Os k-subconjuntos de [n] em ordem lexicográfica (ordem canônica das tabelas)."""
    return tuple(combinations(range(1, n + 1), k))


def _check_slice(n: int, k: int):
    if n < 2 or not 1 <= k <= n // 2:
        raise InvalidInputError(f"Fatia inválida: exige 1 <= k <= n/2 (n={n}, k={k})")


@dataclass(frozen=True)
class SliceFunction:
    """Tabela exata de valores racionais indexada pelos k-subconjuntos de [n]."""

    n: int
    k: int
    values: Dict[Subset, Fraction] = field(default_factory=dict)

    def __post_init__(self):
        _check_slice(self.n, self.k)
        table = {}
        for subset, value in dict(self.values).items():
            key = tuple(sorted(int(i) for i in subset))
            if len(key) != self.k or len(set(key)) != self.k or not all(1 <= i <= self.n for i in key):
                raise InvalidInputError(f"{subset} não é um {self.k}-subconjunto de [{self.n}]")
            if key in table:
                raise InvalidInputError(f"Conjunto repetido: {key}")
            table[key] = Fraction(value)
        if len(table) != comb(self.n, self.k):
            raise InvalidInputError(
                f"Esperados {comb(self.n, self.k)} valores na fatia ({self.n},{self.k}), recebidos {len(table)}"
            )
        object.__setattr__(self, "values", {S: table[S] for S in slice_points(self.n, self.k)})

    def __hash__(self):
        return hash((self.n, self.k, tuple(self.values.values())))

    # ---------------------------------------------
    # Construtores
    # ---------------------------------------------
    @classmethod
    def from_callable(cls, n: int, k: int, rule: Callable[[Subset], object]) -> "SliceFunction":
        _check_slice(n, k)
        return cls(n, k, {S: Fraction(rule(S)) for S in slice_points(n, k)})

    @classmethod
    def from_polynomial(cls, P: MultilinearPolynomial, k: int) -> "SliceFunction":
        """Interpreta P : R^n -> R como função na fatia."""
        return cls.from_callable(P.n, k, P.evaluate_on_subset)

    @classmethod
    def constant(cls, n: int, k: int, value) -> "SliceFunction":
        return cls.from_callable(n, k, lambda S: value)

    @classmethod
    def coordinate(cls, n: int, k: int, index: int) -> "SliceFunction":
        """x_i na fatia."""
        if not 1 <= index <= n:
            raise InvalidInputError(f"Coordenada {index} fora de [1, {n}]")
        return cls.from_callable(n, k, lambda S: 1 if index in S else 0)

    # ---------------------------------------------
    # Consultas
    # ---------------------------------------------
    def __getitem__(self, subset: Iterable[int]) -> Fraction:
        return self.values[tuple(sorted(subset))]

    @property
    def is_boolean(self) -> bool:
        return all(v in (0, 1) for v in self.values.values())

    def mean(self) -> Fraction:
        return sum(self.values.values(), Fraction(0)) / len(self.values)

    def map(self, rule: Callable[[Fraction], object]) -> "SliceFunction":
        return SliceFunction(self.n, self.k, {S: rule(v) for S, v in self.values.items()})

    def _combine(self, other: "SliceFunction", rule) -> "SliceFunction":
        if not isinstance(other, SliceFunction) or (other.n, other.k) != (self.n, self.k):
            raise InvalidInputError("Operação entre funções de fatias diferentes")
        return SliceFunction(self.n, self.k, {S: rule(v, other.values[S]) for S, v in self.values.items()})

    def __add__(self, other: "SliceFunction") -> "SliceFunction":
        return self._combine(other, lambda a, b: a + b)

    def __sub__(self, other: "SliceFunction") -> "SliceFunction":
        return self._combine(other, lambda a, b: a - b)

    def __mul__(self, value) -> "SliceFunction":
        value = Fraction(value)
        return self.map(lambda v: v * value)

    __rmul__ = __mul__


@dataclass(frozen=True)
class YoungExpansion:
    """Coeficientes f̂(B) para top sets com |B| <= k; coeficientes nulos não são guardados."""

    n: int
    k: int
    coefficients: Dict[TopSet, Fraction] = field(default_factory=dict)

    def __post_init__(self):
        _check_slice(self.n, self.k)
        cleaned = {}
        for B, value in dict(self.coefficients).items():
            if not isinstance(B, TopSet) or B.n != self.n:
                raise InvalidInputError(f"{B} não é um top set em [{self.n}]")
            if len(B) > self.k:
                raise InvalidInputError(f"|B| = {len(B)} excede k = {self.k} para B = {B}")
            value = Fraction(value)
            if value != 0:
                cleaned[B] = value
        object.__setattr__(
            self, "coefficients", {B: cleaned[B] for B in sorted(cleaned, key=top_set_key)}
        )

    def __hash__(self):
        return hash((self.n, self.k, frozenset(self.coefficients.items())))

    @classmethod
    def unit(cls, B: TopSet, k: int) -> "YoungExpansion":
        return cls(B.n, k, {B: Fraction(1)})

    def coefficient(self, B: TopSet) -> Fraction:
        return self.coefficients.get(B, Fraction(0))

    @property
    def max_degree(self) -> int:
        """Maior |B| com coeficiente não nulo (0 se não houver)."""
        return max((len(B) for B in self.coefficients), default=0)

    def map_coefficients(self, rule: Callable[[TopSet, Fraction], object]) -> "YoungExpansion":
        return YoungExpansion(self.n, self.k, {B: rule(B, c) for B, c in self.coefficients.items()})


@dataclass(frozen=True)
class Moments:
    mean: Fraction
    variance: Fraction
    l2: Fraction


# ---------------------------------------------
# Base restrita à fatia
# ---------------------------------------------
@lru_cache(maxsize=None)
def _basis_values(entries: Tuple[int, ...], n: int, k: int) -> Tuple[Fraction, ...]:
    P = chi_top(TopSet(entries, n))
    return tuple(P.evaluate_on_subset(S) for S in slice_points(n, k))


def basis_function(B: TopSet, k: int) -> SliceFunction:
    """χ_B restrito à fatia (B.n, k); memoizado."""
    values = _basis_values(B.entries, B.n, k)
    return SliceFunction(B.n, k, dict(zip(slice_points(B.n, k), values)))


# ---------------------------------------------
# Operações do módulo
# ---------------------------------------------
def expand(f: SliceFunction) -> YoungExpansion:
    """f̂(B) = ⟨f, χ_B⟩ / ‖χ_B‖² na medida uniforme da fatia."""
    measure = UniformSlice(f.n, f.k)
    coefficients = {}
    for B in all_top_sets(f.n, f.k):
        coefficients[B] = inner_product(f, basis_function(B, f.k), measure) / chi_norm_sq(B, measure)
    logging.debug(f"🔮 Expansão na fatia ({f.n},{f.k}): {len(coefficients)} coeficientes")
    return YoungExpansion(f.n, f.k, coefficients)


def synthesize(e: YoungExpansion) -> SliceFunction:
    """Avalia Σ f̂(B) χ_B ponto a ponto; inversa exata de expand."""
    points = slice_points(e.n, e.k)
    totals = [Fraction(0)] * len(points)
    for B, coefficient in e.coefficients.items():
        for position, value in enumerate(_basis_values(B.entries, e.n, e.k)):
            if value:
                totals[position] += coefficient * value
    return SliceFunction(e.n, e.k, dict(zip(points, totals)))


def moments(e: YoungExpansion) -> Moments:
    """Média f̂(∅), variância Σ_{B≠∅} f̂(B)² c_B ‖χ_{|B|}‖² e E[f²]."""
    measure = UniformSlice(e.n, e.k)
    mean = Fraction(0)
    variance = Fraction(0)
    for B, coefficient in e.coefficients.items():
        if len(B) == 0:
            mean = coefficient
        else:
            variance += coefficient ** 2 * chi_norm_sq(B, measure)
    return Moments(mean=mean, variance=variance, l2=variance + mean ** 2)


def _check_m(e: YoungExpansion, m: int):
    if not 1 <= m <= e.n:
        raise InvalidInputError(f"m deve estar em [1, {e.n}] (recebido {m})")


def average_first_m(e: YoungExpansion, m: int) -> YoungExpansion:
    """
    Média de f sobre todas as permutações das m primeiras coordenadas.
    Mantém exatamente os B com B ∩ [m] = ∅ (isto é, b_1 > m).
    """
    _check_m(e, m)
    return YoungExpansion(
        e.n, e.k, {B: c for B, c in e.coefficients.items() if B.intersection_size(m) == 0}
    )


def is_invariant_first_m(e: YoungExpansion, m: int) -> bool:
    """f é invariante por S_m sse f̂(B) = 0 sempre que B intersecta [m]."""
    _check_m(e, m)
    return all(B.intersection_size(m) == 0 for B in e.coefficients)


def expand_polynomial(
    P: MultilinearPolynomial, measure: ExchangeableMeasure = None
) -> Dict[TopSet, Fraction]:
    """
    Coordenadas de um polinômio harmônico na base de Young, ⟨P, χ_B⟩ / ‖χ_B‖².
    Qualquer medida com normas não nulas dá os mesmos coeficientes; o padrão é μ_{1/2}.
    """
    defect = harmonic_defect(P)
    if not defect.is_zero:
        raise InvalidInputError(f"Polinômio não é harmônico: Σ ∂P/∂x_i = {defect}")
    measure = measure or ProductMu(Fraction(1, 2))

    coefficients = {}
    for B in all_top_sets(P.n, max(P.degree, 0)):
        norm = chi_norm_sq(B, measure)
        if norm == 0:
            raise InvalidInputError(f"‖χ_{B}‖² = 0 na medida {measure}")
        value = inner_product(P, chi_top(B), measure) / norm
        if value != 0:
            coefficients[B] = value
    return coefficients


def synthesize_polynomial(coefficients: Mapping[TopSet, Fraction], n: int) -> MultilinearPolynomial:
    """Σ coef · χ_B como polinômio."""
    total = MultilinearPolynomial.zero(n)
    for B, coefficient in coefficients.items():
        total = total + chi_top(B) * coefficient
    return total
