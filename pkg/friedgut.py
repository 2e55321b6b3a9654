# friedgut.py
"""
Aproximação de funções booleanas na fatia por juntas:
coordenadas importantes via emparelhamento maximal, simetrização do
complemento e arredondamento.
"""
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Dict, Iterable, List, Tuple

import networkx as nx

from errors import InvalidInputError
from expansion import SliceFunction, average_first_m, expand, synthesize
from measures import norm_sq
from operators import apply_permutation, apply_transposition, influence_pair


Pair = Tuple[int, int]
HALF = Fraction(1, 2)


@dataclass
class JuntaReport:
    important_set: Tuple[int, ...]
    tau: Fraction
    junta: SliceFunction
    distance: Fraction
    coordinate_count: int
    permutation: Dict[int, int] = field(default_factory=dict)  # original -> reordenada
    matching: List[Pair] = field(default_factory=list)
    averaged: SliceFunction = None
    rounding_bound: Fraction = Fraction(0)
    total_influence: Fraction = Fraction(0)


# ---------------------------------------------
# Conjunto importante
# ---------------------------------------------
def influence_table(f: SliceFunction) -> Dict[Pair, Fraction]:
    """Inf_ij para todos os pares i < j, em ordem lexicográfica."""
    return {(i, j): influence_pair(f, i, j) for i, j in combinations(range(1, f.n + 1), 2)}


def influence_matching(
    f: SliceFunction, tau, influences: Dict[Pair, Fraction] = None
) -> Tuple[Dict[Pair, Fraction], List[Pair]]:
    """
    Grafo com as arestas Inf_ij >= τ e emparelhamento maximal guloso.
    As arestas entram em ordem lexicográfica, o que torna o resultado determinístico.
    """
    tau = Fraction(tau)
    if tau <= 0:
        raise InvalidInputError(f"τ deve ser positivo (recebido {tau})")
    influences = influences if influences is not None else influence_table(f)

    graph = nx.Graph()
    graph.add_nodes_from(range(1, f.n + 1))
    graph.add_edges_from(pair for pair, value in influences.items() if value >= tau)
    matching = sorted(tuple(sorted(edge)) for edge in nx.maximal_matching(graph))
    logging.debug(f"🔮 τ={tau}: {graph.number_of_edges()} arestas, {len(matching)} no emparelhamento")
    return influences, matching


def important_set(f: SliceFunction, tau) -> Tuple[int, ...]:
    """Extremos do emparelhamento; fora dele todo par tem Inf_ij < τ."""
    _, matching = influence_matching(f, tau)
    return tuple(sorted(i for edge in matching for i in edge))


def depends_only_on(f: SliceFunction, S: Iterable[int]) -> bool:
    """f = f^{(i j)} para todos i, j fora de S."""
    inside = set(S)
    outside = [i for i in range(1, f.n + 1) if i not in inside]
    return all(apply_transposition(f, i, j) == f for i, j in combinations(outside, 2))


# ---------------------------------------------
# Junta
# ---------------------------------------------
def _round(value: Fraction) -> int:
    # empate em 1/2 vai para 1
    return 1 if value >= HALF else 0


def _build_report(f: SliceFunction, tau: Fraction, influences: Dict[Pair, Fraction]) -> JuntaReport:
    _, matching = influence_matching(f, tau, influences)
    S = tuple(sorted(i for edge in matching for i in edge))

    # complemento nas primeiras coordenadas, S nas últimas
    order = [i for i in range(1, f.n + 1) if i not in S] + list(S)
    permutation = {old: new for new, old in enumerate(order, 1)}
    inverse = {new: old for old, new in permutation.items()}

    expansion = expand(apply_permutation(f, permutation))
    free = f.n - len(S)
    if free >= 1:
        expansion = average_first_m(expansion, free)
    h = apply_permutation(synthesize(expansion), inverse)
    g = h.map(_round)

    mismatches = sum(1 for point, v in f.values.items() if g.values[point] != v)
    return JuntaReport(
        important_set=S,
        tau=tau,
        junta=g,
        distance=Fraction(mismatches, len(f.values)),
        coordinate_count=len(S),
        permutation=permutation,
        matching=matching,
        averaged=h,
        rounding_bound=2 * norm_sq(f - h),
        total_influence=sum(influences.values(), Fraction(0)) / f.n,
    )


def _check_boolean(f: SliceFunction):
    if not f.is_boolean:
        raise InvalidInputError("A aproximação por junta exige f booleana (valores em {0,1})")


def junta_approximate(f: SliceFunction, tau) -> JuntaReport:
    """
    S = conjunto importante; h = média de f sobre as permutações do complemento de S;
    g = arredondamento de h. Relata Pr[f ≠ g] e a cota 2‖f - h‖².
    """
    _check_boolean(f)
    tau = Fraction(tau)
    if tau <= 0:
        raise InvalidInputError(f"τ deve ser positivo (recebido {tau})")
    report = _build_report(f, tau, influence_table(f))
    logging.info(f"🟢 Junta em {report.coordinate_count} coordenadas {report.important_set}, distância {report.distance}")
    return report


def junta_for_epsilon(f: SliceFunction, epsilon, ratio=HALF, steps: int = 12) -> JuntaReport:
    """
    Varre τ numa grade geométrica (maior influência · ratio^j) mais a menor influência
    positiva, que sempre dá distância 0. Devolve a junta com menos coordenadas entre as
    de distância <= ε; empate favorece o τ maior.
    """
    _check_boolean(f)
    epsilon, ratio = Fraction(epsilon), Fraction(ratio)
    if not 0 <= epsilon <= 1:
        raise InvalidInputError(f"ε deve estar em [0, 1] (recebido {epsilon})")
    if not 0 < ratio < 1 or steps < 1:
        raise InvalidInputError(f"Grade inválida: ratio={ratio}, steps={steps}")

    influences = influence_table(f)
    positive = [v for v in influences.values() if v > 0]
    if not positive:
        # todas as influências nulas: f é simétrica, logo constante na fatia
        return _build_report(f, Fraction(1), influences)

    grid = {max(positive) * ratio ** j for j in range(steps)} | {min(positive)}
    best = None
    for tau in sorted(grid, reverse=True):
        report = _build_report(f, tau, influences)
        logging.debug(f"🔮 τ={tau}: {report.coordinate_count} coordenadas, distância {report.distance}")
        if report.distance <= epsilon and (best is None or report.coordinate_count < best.coordinate_count):
            best = report
    return best
