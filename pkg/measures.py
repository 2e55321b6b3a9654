# measures.py
"""
Medidas permutáveis (invariantes por permutação dos índices) expostas como
oráculos de momentos exatos, e os produtos internos que dependem delas.
"""
from abc import ABC, abstractmethod
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, perm, prod
from typing import List, Tuple

from combinatorics import TopSet, c_coefficient
from errors import InvalidInputError
from poly import ExponentMonomial, MultilinearPolynomial, multiply_to_exponents


class ExchangeableMeasure(ABC):
    """Distribuição sobre x_1, ..., x_n invariante por permutação dos índices."""

    @abstractmethod
    def monomial_moment(self, monomial: ExponentMonomial) -> Fraction:
        """E[∏ x_i^{e_i}] exato."""

    def chi_d_norm_sq(self, d: int) -> Fraction:
        """
        ‖χ_d‖² = 2^d N_d, com
        N_d = Σ_j (-1)^j C(d,j) E[x_1² ⋯ x_{d-j}² · x_{d-j+1} ⋯ x_{d+j}].
        As famílias concretas sobrescrevem com a forma fechada.
        """
        if d < 0:
            raise InvalidInputError(f"Grau negativo: {d}")
        total = Fraction(0)
        for j in range(d + 1):
            squares = {i: 2 for i in range(1, d - j + 1)}
            singles = {d - j + i: 1 for i in range(1, 2 * j + 1)}
            moment = self.monomial_moment(ExponentMonomial.from_mapping({**squares, **singles}))
            total += (-1) ** j * comb(d, j) * moment
        return 2 ** d * total


def _check_probability(p) -> Fraction:
    p = Fraction(p)
    if not 0 <= p <= 1:
        raise InvalidInputError(f"p deve estar em [0, 1] (recebido {p})")
    return p


@lru_cache(maxsize=None)
def _slice_moment(n: int, k: int, r: int) -> Fraction:
    return Fraction(perm(k, r), perm(n, r))


@dataclass(frozen=True)
class UniformSlice(ExchangeableMeasure):
    """Medida uniforme na fatia ([n] escolhe k): x ∈ {0,1}^n com exatamente k uns."""

    n: int
    k: int

    def __post_init__(self):
        if self.n < 2 or not 1 <= self.k <= self.n // 2:
            raise InvalidInputError(f"Fatia inválida: exige 1 <= k <= n/2 (n={self.n}, k={self.k})")

    def monomial_moment(self, monomial: ExponentMonomial) -> Fraction:
        support = monomial.support
        if any(not 1 <= i <= self.n for i in support):
            raise InvalidInputError(f"Monômio {monomial} fora de [1, {self.n}]")
        if len(support) > self.n:
            raise InvalidInputError(f"Monômio {monomial} com mais de n={self.n} índices")
        # x_i ∈ {0,1}: os expoentes colapsam, só importa o número de índices distintos
        return _slice_moment(self.n, self.k, len(support))

    def chi_d_norm_sq(self, d: int) -> Fraction:
        """2^d k^(d) (n-k)^(d) / n^(2d), com potências fatoriais decrescentes."""
        if d < 0 or 2 * d > self.n:
            raise InvalidInputError(f"χ_d exige 0 <= 2d <= n (d={d}, n={self.n})")
        return Fraction(2 ** d * perm(self.k, d) * perm(self.n - self.k, d), perm(self.n, 2 * d))

    def __str__(self) -> str:
        return f"UniformSlice({self.n},{self.k})"


@dataclass(frozen=True)
class ProductMu(ExchangeableMeasure):
    """x_i independentes com Pr[x_i = 1] = p e Pr[x_i = 0] = 1 - p."""

    p: Fraction

    def __post_init__(self):
        object.__setattr__(self, "p", _check_probability(self.p))

    def monomial_moment(self, monomial: ExponentMonomial) -> Fraction:
        return self.p ** len(monomial.support)

    def chi_d_norm_sq(self, d: int) -> Fraction:
        return (2 * self.p * (1 - self.p)) ** d

    def __str__(self) -> str:
        return f"ProductMu({self.p})"


@dataclass(frozen=True)
class ProductNu(ExchangeableMeasure):
    """x_i independentes com Pr[x_i = -p] = 1 - p e Pr[x_i = 1 - p] = p (Bernoulli centrada)."""

    p: Fraction

    def __post_init__(self):
        object.__setattr__(self, "p", _check_probability(self.p))

    def central_moment(self, exponent: int) -> Fraction:
        """E[(x - p)^e] para x ~ Bernoulli(p)."""
        p = self.p
        return (1 - p) * (-p) ** exponent + p * (1 - p) ** exponent

    def monomial_moment(self, monomial: ExponentMonomial) -> Fraction:
        return prod((self.central_moment(e) for e in monomial.signature), start=Fraction(1))

    def chi_d_norm_sq(self, d: int) -> Fraction:
        return (2 * self.p * (1 - self.p)) ** d

    def __str__(self) -> str:
        return f"ProductNu({self.p})"


# ---------------------------------------------
# Operações do módulo
# ---------------------------------------------
def monomial_moment(measure: ExchangeableMeasure, monomial: ExponentMonomial) -> Fraction:
    return measure.monomial_moment(monomial)


def _polynomial_inner_product(
    f: MultilinearPolynomial, g: MultilinearPolynomial, measure: ExchangeableMeasure
) -> Fraction:
    if isinstance(measure, UniformSlice) and measure.n != f.n:
        raise InvalidInputError(f"Polinômio em n={f.n} com medida {measure}")
    return sum(
        (c * measure.monomial_moment(m) for m, c in multiply_to_exponents(f, g).items()),
        Fraction(0),
    )


def inner_product(f, g, measure: ExchangeableMeasure = None) -> Fraction:
    """
    ⟨f, g⟩ = E_μ[f g].

    Dois polinômios: via produto formal e momentos (exige a medida).
    Com ao menos uma função na fatia: soma direta sobre ([n] escolhe k); o polinômio,
    se houver, é restrito à fatia, e a medida só pode ser a uniforme nessa fatia.
    """
    # import tardio: expansion depende deste módulo
    from expansion import SliceFunction

    if isinstance(f, MultilinearPolynomial) and isinstance(g, MultilinearPolynomial):
        if measure is None:
            raise InvalidInputError("Produto interno de polinômios exige uma medida")
        if f.n != g.n:
            raise InvalidInputError(f"Polinômios em ambientes diferentes: n={f.n} e n={g.n}")
        return _polynomial_inner_product(f, g, measure)

    reference = f if isinstance(f, SliceFunction) else g
    if not isinstance(reference, SliceFunction):
        raise InvalidInputError(f"Tipos não suportados: {type(f).__name__}, {type(g).__name__}")
    n, k = reference.n, reference.k
    if measure is not None and measure != UniformSlice(n, k):
        raise InvalidInputError(f"Função na fatia ({n},{k}) não combina com a medida {measure}")

    left = _as_slice_function(f, n, k)
    right = _as_slice_function(g, n, k)
    total = sum((left.values[S] * right.values[S] for S in left.values), Fraction(0))
    return total / len(left.values)


def _as_slice_function(value, n: int, k: int):
    from expansion import SliceFunction

    if isinstance(value, MultilinearPolynomial):
        if value.n != n:
            raise InvalidInputError(f"Polinômio em n={value.n} contra fatia ({n},{k})")
        return SliceFunction.from_polynomial(value, k)
    if isinstance(value, SliceFunction):
        if (value.n, value.k) != (n, k):
            raise InvalidInputError(f"Fatias diferentes: ({value.n},{value.k}) e ({n},{k})")
        return value
    raise InvalidInputError(f"Tipo não suportado: {type(value).__name__}")


def norm_sq(f, measure: ExchangeableMeasure = None) -> Fraction:
    return inner_product(f, f, measure)


def chi_norm_sq(B: TopSet, measure: ExchangeableMeasure) -> Fraction:
    """‖χ_B‖² = c_B ‖χ_{|B|}‖² para qualquer medida permutável."""
    if isinstance(measure, UniformSlice) and B.n != measure.n:
        raise InvalidInputError(f"Top set em n={B.n} com medida {measure}")
    return c_coefficient(B) * measure.chi_d_norm_sq(len(B))


PROBABILITIES = (Fraction(1, 3), Fraction(1, 2), Fraction(2, 5))


def standard_measures(n: int, probabilities: Tuple[Fraction, ...] = PROBABILITIES) -> List[ExchangeableMeasure]:
    """Grade usada nas verificações: todas as fatias (n,k) e as duas famílias produto."""
    grid = [UniformSlice(n, k) for k in range(1, n // 2 + 1)]
    for p in probabilities:
        grid.append(ProductMu(p))
        grid.append(ProductNu(p))
    return grid
