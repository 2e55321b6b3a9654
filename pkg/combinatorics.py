# combinatorics.py
"""
Sequências, top sets e a contagem tipo "ballot" que indexa a base de Young.

Todos os índices são 1-based, em [n] = {1, ..., n}.
"""
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import accumulate, combinations
from math import comb, prod
from typing import Iterable, Iterator, List, Optional, Tuple

from errors import InvalidInputError


@dataclass(frozen=True)
class Sequence:
    """Sequência s_1, ..., s_d de índices distintos em [n]. A ordem importa."""

    entries: Tuple[int, ...]
    n: int

    def __post_init__(self):
        entries = tuple(int(e) for e in self.entries)
        object.__setattr__(self, "entries", entries)

        if self.n < 1:
            raise InvalidInputError(f"n deve ser positivo (recebido {self.n})")
        if len(set(entries)) != len(entries):
            raise InvalidInputError(f"Índices repetidos em {entries}")
        bad = [e for e in entries if not 1 <= e <= self.n]
        if bad:
            raise InvalidInputError(f"Índices fora de [1, {self.n}]: {bad}")

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self) -> Iterator[int]:
        return iter(self.entries)

    def __contains__(self, index: int) -> bool:
        return index in self.entries

    def __getitem__(self, position: int) -> int:
        return self.entries[position]

    def __str__(self) -> str:
        return "(" + ",".join(str(e) for e in self.entries) + ")"

    def is_disjoint(self, other: "Sequence") -> bool:
        return not set(self.entries) & set(other.entries)

    def is_smaller_than(self, other: "Sequence") -> bool:
        """A < B: mesmo tamanho, disjuntas e a_i < b_i para todo i."""
        return (
            len(self) == len(other)
            and self.is_disjoint(other)
            and all(a < b for a, b in zip(self.entries, other.entries))
        )


@dataclass(frozen=True)
class TopSet(Sequence):
    """Sequência crescente B que admite uma sequência disjunta A < B."""

    def __post_init__(self):
        super().__post_init__()
        if not is_top_set(self.entries, self.n):
            raise InvalidInputError(f"{self.entries} não é um top set em [{self.n}]")

    @property
    def degree(self) -> int:
        return len(self.entries)

    def intersection_size(self, m: int) -> int:
        """|B ∩ [m]|"""
        return sum(1 for b in self.entries if b <= m)


def top_set_key(B: TopSet) -> Tuple[int, Tuple[int, ...]]:
    """Ordem canônica: primeiro pelo grau, depois lexicográfica."""
    return len(B.entries), B.entries


# ---------------------------------------------
# Codificação ballot
# ---------------------------------------------
def _validate_increasing(candidate: Iterable[int], n: int) -> Tuple[int, ...]:
    entries = tuple(int(e) for e in candidate)
    if n < 1:
        raise InvalidInputError(f"n deve ser positivo (recebido {n})")
    if any(a >= b for a, b in zip(entries, entries[1:])):
        raise InvalidInputError(f"Sequência não é estritamente crescente: {entries}")
    if entries and not (1 <= entries[0] and entries[-1] <= n):
        raise InvalidInputError(f"Índices fora de [1, {n}]: {entries}")
    return entries


def ballot_encoding(candidate: Iterable[int], n: int) -> List[int]:
    """β_0 = 1 e, para i em [n], β_i = -1 se i ∈ B, senão +1."""
    members = set(_validate_increasing(candidate, n))
    return [1] + [-1 if i in members else 1 for i in range(1, n + 1)]


def _satisfies_doubling(entries: Tuple[int, ...]) -> bool:
    # b_i >= 2i, equivalente à condição ballot
    return all(b >= 2 * i for i, b in enumerate(entries, 1))


def is_top_set(candidate: Iterable[int], n: int) -> bool:
    """Verdadeiro sse todas as somas parciais da codificação ballot são positivas."""
    return all(total > 0 for total in accumulate(ballot_encoding(candidate, n)))


# ---------------------------------------------
# Enumeração e contagem
# ---------------------------------------------
@lru_cache(maxsize=None)
def _top_set_entries(n: int, d: int) -> Tuple[Tuple[int, ...], ...]:
    return tuple(c for c in combinations(range(1, n + 1), d) if _satisfies_doubling(c))


def enumerate_top_sets(n: int, d: int) -> List[TopSet]:
    """
    Todos os B em ℬ_{n,d}, em ordem lexicográfica.
    Para d > n/2 devolve lista vazia (não é erro).
    """
    if n < 1 or d < 0:
        raise InvalidInputError(f"Parâmetros inválidos: n={n}, d={d}")
    if 2 * d > n:
        return []
    return [TopSet(entries, n) for entries in _top_set_entries(n, d)]


def all_top_sets(n: int, max_degree: Optional[int] = None) -> List[TopSet]:
    """ℬ_n (opcionalmente só |B| <= max_degree), na ordem canônica."""
    top = n // 2 if max_degree is None else min(max_degree, n // 2)
    return [B for d in range(top + 1) for B in enumerate_top_sets(n, d)]


def count_top_sets(n: int, d: int) -> int:
    """|ℬ_{n,d}| = C(n,d) - C(n,d-1), com C(n,-1) = 0."""
    if n < 1 or d < 0 or 2 * d > n:
        raise InvalidInputError(f"Exige 0 <= d <= n/2 (n={n}, d={d})")
    return comb(n, d) - (comb(n, d - 1) if d >= 1 else 0)


# ---------------------------------------------
# Sequências menores que B
# ---------------------------------------------
def companion_sequence(B: TopSet) -> Sequence:
    """
    φ(B) guloso: a_i é o menor índice < b_i fora de B e ainda não usado.
    A existência é garantida por b_i >= 2i.
    """
    used = set(B.entries)
    chosen = []
    for b in B.entries:
        a = next(c for c in range(1, b) if c not in used)
        used.add(a)
        chosen.append(a)
    return Sequence(tuple(chosen), B.n)


@lru_cache(maxsize=None)
def _smaller_entries(entries: Tuple[int, ...]) -> Tuple[Tuple[int, ...], ...]:
    forbidden = set(entries)
    found = []

    def extend(prefix: List[int]):
        position = len(prefix)
        if position == len(entries):
            found.append(tuple(prefix))
            return
        for a in range(1, entries[position]):
            if a not in forbidden and a not in prefix:
                prefix.append(a)
                extend(prefix)
                prefix.pop()

    extend([])
    return tuple(found)


def smaller_sequences(B: TopSet) -> List[Sequence]:
    """Todas as sequências A (não necessariamente crescentes) com A < B."""
    return [Sequence(entries, B.n) for entries in _smaller_entries(B.entries)]


def smaller_sequence_count(B: TopSet) -> int:
    return prod(b - 2 * (i - 1) - 1 for i, b in enumerate(B.entries, 1))


def c_coefficient(B: TopSet) -> Fraction:
    """c_B = ∏ (b_i - 2(i-1)) (b_i - 2(i-1) - 1) / 2"""
    return prod(
        (Fraction((b - 2 * (i - 1)) * (b - 2 * (i - 1) - 1), 2) for i, b in enumerate(B.entries, 1)),
        start=Fraction(1),
    )
