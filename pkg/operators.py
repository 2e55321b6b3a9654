# operators.py
"""
Operadores sobre funções na fatia: transposições, influências, as fórmulas
espectrais λ_m(B) e τ_m(B), Laplaciano, ruído e a álgebra de Bose–Mesner.
"""
import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import comb
from typing import Dict, List, Mapping, Tuple, Union

import numpy as np

from combinatorics import TopSet, count_top_sets, enumerate_top_sets
from errors import InvalidInputError, VerificationError
from expansion import (
    SliceFunction,
    YoungExpansion,
    basis_function,
    moments,
    slice_points,
)
from measures import UniformSlice, chi_norm_sq, norm_sq
from poly import MultilinearPolynomial


SliceOrPolynomial = Union[SliceFunction, MultilinearPolynomial]


# ---------------------------------------------
# Tipos
# ---------------------------------------------
@dataclass(frozen=True)
class IntersectionProfile:
    """
    Matriz M na fatia (n,k) com M_{S,T} = w_{|S ∩ T|}.
    weights[j] é o peso quando |S ∩ T| = j, para j = 0..k.
    """

    n: int
    k: int
    weights: Tuple[Fraction, ...]

    def __post_init__(self):
        if self.n < 2 or not 1 <= self.k <= self.n // 2:
            raise InvalidInputError(f"Fatia inválida: exige 1 <= k <= n/2 (n={self.n}, k={self.k})")
        weights = tuple(Fraction(w) for w in self.weights)
        if len(weights) != self.k + 1:
            raise InvalidInputError(f"O perfil precisa de k+1 = {self.k + 1} pesos (recebidos {len(weights)})")
        object.__setattr__(self, "weights", weights)

    @classmethod
    def from_weights(cls, n: int, k: int, entries: Mapping[int, object]) -> "IntersectionProfile":
        weights = [Fraction(0)] * (k + 1)
        for j, value in entries.items():
            weights[j] = Fraction(value)
        return cls(n, k, tuple(weights))

    @classmethod
    def johnson(cls, n: int, k: int) -> "IntersectionProfile":
        """Grafo de Johnson J(n,k): vizinhos quando |S ∩ T| = k-1."""
        return cls.from_weights(n, k, {k - 1: 1})

    @classmethod
    def kneser(cls, n: int, k: int) -> "IntersectionProfile":
        """Grafo de Kneser K(n,k): vizinhos quando S e T são disjuntos."""
        return cls.from_weights(n, k, {0: 1})

    @classmethod
    def identity(cls, n: int, k: int) -> "IntersectionProfile":
        return cls.from_weights(n, k, {k: 1})

    @classmethod
    def transpositions(cls, n: int, k: int) -> "IntersectionProfile":
        """Matriz de f ↦ Σ_{i<j} f^{(i j)}."""
        return cls.from_weights(n, k, {k: comb(k, 2) + comb(n - k, 2), k - 1: 1})

    def weight(self, S: Tuple[int, ...], T: Tuple[int, ...]) -> Fraction:
        return self.weights[len(set(S) & set(T))]


@dataclass(frozen=True)
class RealExpansion:
    """Como YoungExpansion, mas com coeficientes em ponto flutuante (saída do ruído)."""

    n: int
    k: int
    coefficients: Dict[TopSet, float] = field(default_factory=dict)

    def __post_init__(self):
        for B in self.coefficients:
            if not isinstance(B, TopSet) or B.n != self.n or len(B) > self.k:
                raise InvalidInputError(f"{B} não é um top set válido para a fatia ({self.n},{self.k})")

    def coefficient(self, B: TopSet) -> float:
        return self.coefficients.get(B, 0.0)

    def evaluate(self) -> Dict[Tuple[int, ...], float]:
        """Σ c_B χ_B ponto a ponto na fatia."""
        totals = {S: 0.0 for S in slice_points(self.n, self.k)}
        for B, coefficient in self.coefficients.items():
            for S, value in basis_function(B, self.k).values.items():
                if value:
                    totals[S] += coefficient * float(value)
        return totals


@dataclass(frozen=True)
class SpectrumRow:
    degree: int
    eigenvalue: Fraction
    multiplicity: int


@dataclass(frozen=True)
class PoincareBounds:
    variance: Fraction
    total_influence: Fraction
    degree_bound: Fraction

    @property
    def holds(self) -> bool:
        return self.variance <= self.total_influence <= self.degree_bound


# ---------------------------------------------
# Permutações de coordenadas
# ---------------------------------------------
def _check_permutation(mapping: Mapping[int, int], n: int) -> Dict[int, int]:
    full = {i: i for i in range(1, n + 1)}
    full.update({int(a): int(b) for a, b in mapping.items()})
    if sorted(full) != list(range(1, n + 1)) or sorted(full.values()) != list(range(1, n + 1)):
        raise InvalidInputError(f"{dict(mapping)} não é uma permutação de [{n}]")
    return full


def apply_permutation(f: SliceOrPolynomial, mapping: Mapping[int, int]) -> SliceOrPolynomial:
    """
    Renomeia as coordenadas: a coordenada i passa a se chamar σ(i).
    Para funções na fatia, F(σ(S)) = f(S); para polinômios, x_i ↦ x_{σ(i)}.
    Índices ausentes de mapping ficam fixos.
    """
    sigma = _check_permutation(mapping, f.n)
    if isinstance(f, MultilinearPolynomial):
        return MultilinearPolynomial(
            f.n, {tuple(sorted(sigma[i] for i in monomial)): c for monomial, c in f.terms.items()}
        )
    if isinstance(f, SliceFunction):
        return SliceFunction(f.n, f.k, {tuple(sorted(sigma[i] for i in S)): v for S, v in f.values.items()})
    raise InvalidInputError(f"Tipo não suportado: {type(f).__name__}")


def apply_transposition(f: SliceOrPolynomial, i: int, j: int) -> SliceOrPolynomial:
    """f^{(i j)}: troca o papel das coordenadas i e j (involução)."""
    if i == j:
        raise InvalidInputError(f"Transposição exige i ≠ j (recebido {i}, {j})")
    for index in (i, j):
        if not 1 <= index <= f.n:
            raise InvalidInputError(f"Coordenada {index} fora de [1, {f.n}]")
    return apply_permutation(f, {i: j, j: i})


# ---------------------------------------------
# Influências
# ---------------------------------------------
def influence_pair(f: SliceOrPolynomial, i: int, j: int, measure=None) -> Fraction:
    """Inf_ij[f] = ½ ‖f^{(i j)} - f‖²; na fatia, a medida é a uniforme."""
    return norm_sq(apply_transposition(f, i, j) - f, measure) / 2


def _check_m(n: int, m: int, low: int):
    if not low <= m <= n:
        raise InvalidInputError(f"m deve estar em [{low}, {n}] (recebido {m})")


def total_influence_m(f: SliceOrPolynomial, m: int, measure=None) -> Fraction:
    """Inf^m[f] = (1/m) Σ_{i<j<=m} Inf_ij[f]."""
    _check_m(f.n, m, 2)
    total = sum(
        (influence_pair(f, i, j, measure) for i, j in combinations(range(1, m + 1), 2)), Fraction(0)
    )
    return total / m


def total_influence(f: SliceOrPolynomial, measure=None) -> Fraction:
    return total_influence_m(f, f.n, measure)


def _spectral_weight(e: YoungExpansion, B: TopSet) -> Fraction:
    """f̂(B)² c_B ‖χ_{|B|}‖² na fatia uniforme."""
    return e.coefficient(B) ** 2 * chi_norm_sq(B, UniformSlice(e.n, e.k))


def influence_spectral(e: YoungExpansion, m: int) -> Fraction:
    """Inf^m[f] = Σ_B t(m+1-t)/m · f̂(B)² c_B ‖χ_{|B|}‖², com t = |B ∩ [m]|."""
    _check_m(e.n, m, 2)
    total = Fraction(0)
    for B in e.coefficients:
        t = B.intersection_size(m)
        total += Fraction(t * (m + 1 - t), m) * _spectral_weight(e, B)
    return total


# ---------------------------------------------
# Fórmulas espectrais
# ---------------------------------------------
def lambda_coefficient(B: TopSet, m: int) -> int:
    """
    λ_m(B) com sentinelas b_0 = -∞ e b_{d+1} = +∞:
    i - 2 se b_i = m; m - i se b_{i-1} < m < b_i.
    """
    _check_m(B.n, m, 1)
    for i, b in enumerate(B.entries, 1):
        if b == m:
            return i - 2
        if b > m:
            return m - i
    return m - (len(B) + 1)


def tau_coefficient(B: TopSet, m: int) -> int:
    """τ_m(B) = m(m-1)/2 - t(m+1-t), t = |B ∩ [m]|."""
    _check_m(B.n, m, 2)
    t = B.intersection_size(m)
    return m * (m - 1) // 2 - t * (m + 1 - t)


def laplacian_eigenvalue(degree: int, n: int) -> Fraction:
    """2d(n+1-d) / (n(n-1))"""
    return Fraction(2 * degree * (n + 1 - degree), n * (n - 1))


def transposition_sum(f: SliceFunction, m: int) -> SliceFunction:
    """Σ_{1<=i<m} f^{(i m)}; vazio (função nula) quando m = 1."""
    _check_m(f.n, m, 1)
    total = SliceFunction.constant(f.n, f.k, 0)
    for i in range(1, m):
        total = total + apply_transposition(f, i, m)
    return total


def adjacent_transposition_expansion(e: YoungExpansion, m: int) -> YoungExpansion:
    """
    Coeficientes de f^{(m m+1)} a partir dos de f. Com i = |B ∩ [m-1]| e r = m - 2i:
      m, m+1 ambos em B ou ambos fora: χ_B fixo;
      m ∈ B, m+1 ∉ B: χ_B ↦ (1/r) χ_B + ((r-1)/r) χ_{B'}, B' = B com m trocado por m+1;
      m+1 ∈ B, m ∉ B: χ_B ↦ -(1/r) χ_B + ((r+1)/r) χ_C, C = B com m+1 trocado por m.
    Se C não é top set, χ_C = 0 e o termo some.
    """
    _check_m(e.n, m, 1)
    if m == e.n:
        raise InvalidInputError(f"m deve estar em [1, {e.n - 1}] (recebido {m})")

    result: Dict[TopSet, Fraction] = {}

    def add(B: TopSet, value: Fraction):
        result[B] = result.get(B, Fraction(0)) + value

    for B, c in e.coefficients.items():
        has_m, has_next = m in B, (m + 1) in B
        if has_m == has_next:
            add(B, c)
            continue
        i = sum(1 for b in B.entries if b < m)
        r = m - 2 * i
        if has_m:
            swapped = TopSet(tuple(m + 1 if b == m else b for b in B.entries), e.n)
            add(B, c / r)
            add(swapped, c * (r - 1) / r)
        else:
            add(B, -c / r)
            lowered = tuple(m if b == m + 1 else b for b in B.entries)
            if r >= 2:
                add(TopSet(lowered, e.n), c * (r + 1) / r)
    return YoungExpansion(e.n, e.k, result)


# ---------------------------------------------
# Laplaciano e ruído
# ---------------------------------------------
def laplacian(e: YoungExpansion) -> YoungExpansion:
    """L χ_B = 2|B|(n+1-|B|)/(n(n-1)) · χ_B."""
    return e.map_coefficients(lambda B, c: c * laplacian_eigenvalue(len(B), e.n))


def laplacian_direct(f: SliceFunction) -> SliceFunction:
    """Lf = f - C(n,2)^{-1} Σ_{i<j} f^{(i j)}."""
    total = SliceFunction.constant(f.n, f.k, 0)
    for i, j in combinations(range(1, f.n + 1), 2):
        total = total + apply_transposition(f, i, j)
    return f - total * Fraction(1, comb(f.n, 2))


def laplacian_matrix(n: int, k: int) -> np.ndarray:
    """I - T / C(n,2), onde T é a matriz das transposições."""
    T = scheme_matrix(IntersectionProfile.transpositions(n, k))
    return np.eye(T.shape[0]) - T / comb(n, 2)


def noise(e: Union[YoungExpansion, RealExpansion], t: float) -> RealExpansion:
    """H_t f = Σ exp(-t · 2|B|(n+1-|B|)/(n(n-1))) f̂(B) χ_B."""
    t = float(t)
    if not math.isfinite(t) or t < 0:
        raise InvalidInputError(f"t deve ser finito e >= 0 (recebido {t})")
    coefficients = {
        B: float(c) * math.exp(-t * float(laplacian_eigenvalue(len(B), e.n)))
        for B, c in e.coefficients.items()
    }
    return RealExpansion(e.n, e.k, coefficients)


def noise_direct(f: SliceFunction, t: float) -> Dict[Tuple[int, ...], float]:
    """e^{-tL} f pela exponencial de matriz densa."""
    from scipy.linalg import expm

    t = float(t)
    if not math.isfinite(t) or t < 0:
        raise InvalidInputError(f"t deve ser finito e >= 0 (recebido {t})")
    points = slice_points(f.n, f.k)
    vector = np.array([float(f.values[S]) for S in points])
    damped = expm(-t * laplacian_matrix(f.n, f.k)) @ vector
    return dict(zip(points, damped.tolist()))


# ---------------------------------------------
# Álgebra de Bose–Mesner
# ---------------------------------------------
def scheme_apply(profile: IntersectionProfile, f: SliceFunction) -> SliceFunction:
    """(Mf)(S) = Σ_T w_{|S ∩ T|} f(T)."""
    if (f.n, f.k) != (profile.n, profile.k):
        raise InvalidInputError(f"Perfil na fatia ({profile.n},{profile.k}) e função em ({f.n},{f.k})")
    points = slice_points(f.n, f.k)
    return SliceFunction(
        f.n,
        f.k,
        {S: sum((profile.weight(S, T) * f.values[T] for T in points), Fraction(0)) for S in points},
    )


def scheme_matrix(profile: IntersectionProfile) -> np.ndarray:
    points = slice_points(profile.n, profile.k)
    return np.array([[float(profile.weight(S, T)) for T in points] for S in points])


def _eigenvalue_of(profile: IntersectionProfile, B: TopSet) -> Fraction:
    chi = basis_function(B, profile.k)
    image = scheme_apply(profile, chi)
    S = next(S for S, v in chi.values.items() if v != 0)
    theta = image.values[S] / chi.values[S]
    if image != chi * theta:
        raise VerificationError(f"χ_{B} não é autovetor do perfil {profile.weights}")
    return theta


def scheme_eigenvalues(profile: IntersectionProfile, check_all: bool = False) -> List[Fraction]:
    """
    θ_0, ..., θ_k com M χ_B = θ_d χ_B para |B| = d, obtidos aplicando M a um χ_B
    representativo de cada grau. Com check_all, todos os representantes são conferidos.
    """
    eigenvalues = []
    for d in range(profile.k + 1):
        representatives = enumerate_top_sets(profile.n, d)
        theta = _eigenvalue_of(profile, representatives[0])
        if check_all:
            for B in representatives[1:]:
                other = _eigenvalue_of(profile, B)
                if other != theta:
                    raise VerificationError(f"Autovalores diferentes no grau {d}: {theta} e {other} (B = {B})")
        eigenvalues.append(theta)
    logging.debug(f"🔮 Autovalores do perfil {profile.weights}: {eigenvalues}")
    return eigenvalues


def scheme_spectrum(profile: IntersectionProfile, check_all: bool = False) -> List[SpectrumRow]:
    """Autovalor por grau com multiplicidade |ℬ_{n,d}|."""
    return [
        SpectrumRow(degree=d, eigenvalue=theta, multiplicity=count_top_sets(profile.n, d))
        for d, theta in enumerate(scheme_eigenvalues(profile, check_all))
    ]


# ---------------------------------------------
# Desigualdades
# ---------------------------------------------
def triangle_check(f: SliceFunction, i: int, j: int, k: int) -> bool:
    """Inf_ij <= (9/2)(Inf_ik + Inf_jk)."""
    if len({i, j, k}) != 3:
        raise InvalidInputError(f"Índices devem ser distintos: {i}, {j}, {k}")
    return influence_pair(f, i, j) <= Fraction(9, 2) * (influence_pair(f, i, k) + influence_pair(f, j, k))


def poincare_bounds(e: YoungExpansion) -> PoincareBounds:
    """(V[f], Inf[f], d·V[f]) com d o maior grau de coeficiente não nulo."""
    variance = moments(e).variance
    return PoincareBounds(
        variance=variance,
        total_influence=influence_spectral(e, e.n),
        degree_bound=e.max_degree * variance,
    )


def spectral_tail(e: YoungExpansion, d: int) -> Fraction:
    """Σ_{|B|>=d} f̂(B)² c_B ‖χ_{|B|}‖²"""
    return sum((_spectral_weight(e, B) for B in e.coefficients if len(B) >= d), Fraction(0))


def tail_bound(e: YoungExpansion, d: int) -> Fraction:
    """n / (d(n+1-d)) · Inf[f], cota superior para spectral_tail(e, d)."""
    if not 1 <= d <= e.n // 2:
        raise InvalidInputError(f"d deve estar em [1, {e.n // 2}] (recebido {d})")
    return Fraction(e.n, d * (e.n + 1 - d)) * influence_spectral(e, e.n)
