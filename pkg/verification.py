# verification.py
"""
Suítes de verificação: cada fórmula fechada é confrontada com um oráculo de
força bruta, exato sempre que possível. O resultado é uma tabela pass/fail.
"""
import logging
import math
from dataclasses import asdict, dataclass
from fractions import Fraction
from itertools import combinations, permutations, product
from math import comb, factorial
from typing import Callable, Dict, Iterable, List, Optional, Tuple

import numpy as np
import polars as pl
from tqdm import tqdm

from combinatorics import (
    all_top_sets,
    count_top_sets,
    enumerate_top_sets,
    smaller_sequence_count,
    smaller_sequences,
)
from expansion import (
    SliceFunction,
    average_first_m,
    expand,
    slice_points,
    synthesize,
)
from friedgut import depends_only_on, influence_table, junta_approximate
from measures import ExchangeableMeasure, UniformSlice, chi_norm_sq, inner_product, standard_measures
from operators import (
    IntersectionProfile,
    adjacent_transposition_expansion,
    apply_permutation,
    apply_transposition,
    influence_spectral,
    lambda_coefficient,
    laplacian,
    laplacian_direct,
    noise,
    noise_direct,
    poincare_bounds,
    scheme_matrix,
    scheme_spectrum,
    tau_coefficient,
    total_influence_m,
    transposition_sum,
)
from poly import chi_top, dimension, harmonic_subspace_dimension, polynomial_rank


SUITES = (
    "orthogonality",
    "norms",
    "counting",
    "eigen",
    "spectral",
    "inequalities",
    "averaging",
    "noise",
    "junta",
)
NOISE_TIMES = (0.1, 1.0, 10.0)
DENSE_TOLERANCE = 1e-9
SEMIGROUP_TOLERANCE = 1e-12


@dataclass
class CheckResult:
    suite: str
    property: str
    n: int
    k: Optional[int]
    measure: str
    cases: int
    passed: bool


def slices(low: int, high: int) -> List[Tuple[int, int]]:
    return [(n, k) for n in range(low, high + 1) for k in range(1, n // 2 + 1)]


def random_function(rng: np.random.Generator, n: int, k: int, boolean: bool = False) -> SliceFunction:
    points = slice_points(n, k)
    if boolean:
        values = rng.integers(0, 2, size=len(points))
        return SliceFunction(n, k, {S: int(v) for S, v in zip(points, values)})
    numerators = rng.integers(-9, 10, size=len(points))
    denominators = rng.integers(1, 6, size=len(points))
    return SliceFunction(
        n, k, {S: Fraction(int(a), int(b)) for S, a, b in zip(points, numerators, denominators)}
    )


def planted_junta(rng: np.random.Generator, n: int, k: int, size: int) -> Tuple[SliceFunction, Tuple[int, ...]]:
    """f(S) depende só de S ∩ R, com R sorteado de tamanho `size` e tabela booleana aleatória."""
    R = tuple(sorted(int(i) for i in rng.choice(np.arange(1, n + 1), size=size, replace=False)))
    table = {
        part: int(rng.integers(0, 2)) for r in range(size + 1) for part in combinations(R, r)
    }
    f = SliceFunction.from_callable(n, k, lambda S: table[tuple(i for i in S if i in R)])
    return f, R


def direct_average(f: SliceFunction, m: int) -> SliceFunction:
    """Média de f sobre as m! permutações de [m], por força bruta."""
    total = SliceFunction.constant(f.n, f.k, 0)
    for image in permutations(range(1, m + 1)):
        total = total + apply_permutation(f, dict(zip(range(1, m + 1), image)))
    return total * Fraction(1, factorial(m))


class VerificationRunner:
    """Executa as suítes até max_n; funções aleatórias vêm de numpy com semente fixa."""

    def __init__(
        self,
        max_n: int = 6,
        seed: int = 2016,
        random_functions: int = 50,
        boolean_functions: int = 200,
        show_progress: bool = True,
    ):
        if max_n < 2:
            raise ValueError(f"max_n deve ser >= 2 (recebido {max_n})")
        self.max_n = max_n
        self.seed = seed
        self.random_functions = random_functions
        self.boolean_functions = boolean_functions
        self.show_progress = show_progress
        self.results: List[CheckResult] = []

    def _rng(self, *salt: int) -> np.random.Generator:
        return np.random.default_rng([self.seed, *salt])

    def _progress(self, items: Iterable, desc: str):
        items = list(items)
        return tqdm(items, desc=desc, disable=not self.show_progress, leave=False)

    def _record(self, suite: str, prop: str, n: int, k: Optional[int], cases: int, passed: bool, measure: str = ""):
        self.results.append(CheckResult(suite, prop, n, k, measure, cases, bool(passed)))
        if not passed:
            logging.warning(f"⚠️ Falhou: {suite}/{prop} (n={n}, k={k}, {measure})")

    # ---------------------------------------------
    # Bases e normas
    # ---------------------------------------------
    def _measure_grid(self) -> List[Tuple[int, ExchangeableMeasure]]:
        return [(n, mu) for n in range(2, self.max_n + 1) for mu in standard_measures(n)]

    @staticmethod
    def _tops_for(n: int, measure: ExchangeableMeasure):
        return all_top_sets(n, measure.k if isinstance(measure, UniformSlice) else None)

    def orthogonality(self):
        for n, measure in self._progress(self._measure_grid(), "🔮 orthogonality"):
            tops = self._tops_for(n, measure)
            pairs = list(combinations(tops, 2))
            ok = all(inner_product(chi_top(A), chi_top(B), measure) == 0 for A, B in pairs)
            k = measure.k if isinstance(measure, UniformSlice) else None
            self._record("orthogonality", "⟨χ_B1, χ_B2⟩ = 0", n, k, len(pairs), ok, str(measure))

    def norms(self):
        for n, measure in self._progress(self._measure_grid(), "🔮 norms"):
            tops = self._tops_for(n, measure)
            k = measure.k if isinstance(measure, UniformSlice) else None
            ok = all(inner_product(chi_top(B), chi_top(B), measure) == chi_norm_sq(B, measure) for B in tops)
            self._record("norms", "‖χ_B‖² = c_B ‖χ_|B|‖²", n, k, len(tops), ok, str(measure))

            degrees = range(0, (k if k is not None else n // 2) + 1)
            ok = all(
                ExchangeableMeasure.chi_d_norm_sq(measure, d) == measure.chi_d_norm_sq(d) for d in degrees
            )
            self._record("norms", "‖χ_d‖² genérico = forma fechada", n, k, len(degrees), ok, str(measure))

    def counting(self):
        for n in self._progress(range(1, max(12, self.max_n) + 1), "🔮 counting"):
            degrees = range(0, n // 2 + 1)
            ok = all(len(enumerate_top_sets(n, d)) == count_top_sets(n, d) for d in degrees)
            self._record("counting", "|ℬ_{n,d}| = C(n,d) - C(n,d-1)", n, None, len(degrees), ok)

            if n > self.max_n:
                continue
            tops = all_top_sets(n)
            ok = all(len(smaller_sequences(B)) == smaller_sequence_count(B) for B in tops)
            self._record("counting", "|{A < B}| = ∏(b_i - 2(i-1) - 1)", n, None, len(tops), ok)

            ok = all(
                harmonic_subspace_dimension(n, d) == dimension(n, d)[1]
                and polynomial_rank([chi_top(B) for B in enumerate_top_sets(n, d)]) == count_top_sets(n, d)
                for d in degrees
            )
            self._record("counting", "dim harmônica = posto de 𝒴_{n,d}", n, None, len(degrees), ok)

    # ---------------------------------------------
    # Espectros
    # ---------------------------------------------
    def _profiles(self, n: int, k: int) -> Dict[str, IntersectionProfile]:
        rng = self._rng(n, k)
        return {
            "johnson": IntersectionProfile.johnson(n, k),
            "kneser": IntersectionProfile.kneser(n, k),
            "identity": IntersectionProfile.identity(n, k),
            "transpositions": IntersectionProfile.transpositions(n, k),
            "random": IntersectionProfile(n, k, tuple(int(w) for w in rng.integers(-3, 4, size=k + 1))),
        }

    def eigen(self):
        for n, k in self._progress(slices(2, self.max_n), "🔮 eigen"):
            for name, profile in self._profiles(n, k).items():
                rows = scheme_spectrum(profile, check_all=True)
                expected = sorted(float(r.eigenvalue) for r in rows for _ in range(r.multiplicity))
                dense = np.sort(np.linalg.eigvalsh(scheme_matrix(profile)))
                ok = len(expected) == comb(n, k) and np.allclose(dense, expected, rtol=0, atol=DENSE_TOLERANCE)
                self._record("eigen", f"espectro denso ({name})", n, k, comb(n, k), ok)

            rows = scheme_spectrum(IntersectionProfile.johnson(n, k))
            ok = all(r.eigenvalue == k * (n - k) - r.degree * (n + 1 - r.degree) for r in rows)
            self._record("eigen", "J(n,k): θ_d = k(n-k) - d(n+1-d)", n, k, len(rows), ok)

    def spectral(self):
        for n, k in self._progress(slices(2, self.max_n), "🔮 spectral"):
            rng = self._rng(n, k, 1)
            checks = {
                "expand∘synthesize = id": True,
                "Σ f^{(i m)} tem coeficientes λ_m(B) f̂(B)": True,
                "troca adjacente pela reescrita": True,
                "Inf^m combinatória = espectral": True,
                "Laplaciano espectral = definição": True,
            }
            for _ in range(self.random_functions):
                f = random_function(rng, n, k)
                e = expand(f)
                checks["expand∘synthesize = id"] &= synthesize(e) == f and expand(synthesize(e)) == e
                checks["Σ f^{(i m)} tem coeficientes λ_m(B) f̂(B)"] &= all(
                    expand(transposition_sum(f, m)) == e.map_coefficients(lambda B, c: lambda_coefficient(B, m) * c)
                    for m in range(1, n + 1)
                )
                checks["troca adjacente pela reescrita"] &= all(
                    synthesize(adjacent_transposition_expansion(e, m)) == apply_transposition(f, m, m + 1)
                    for m in range(1, n)
                )
                checks["Inf^m combinatória = espectral"] &= all(
                    total_influence_m(f, m) == influence_spectral(e, m) for m in range(2, n + 1)
                )
                checks["Laplaciano espectral = definição"] &= laplacian(e) == expand(laplacian_direct(f))
            for prop, ok in checks.items():
                self._record("spectral", prop, n, k, self.random_functions, ok)

        for n in range(2, self.max_n + 1):
            tops = all_top_sets(n)
            ok = all(
                tau_coefficient(B, m) == sum(lambda_coefficient(B, j) for j in range(2, m + 1))
                for B in tops
                for m in range(2, n + 1)
            )
            self._record("spectral", "τ_m(B) = Σ_{j=2}^m λ_j(B)", n, None, len(tops) * (n - 1), ok)

    # ---------------------------------------------
    # Desigualdades
    # ---------------------------------------------
    @staticmethod
    def _inequalities_hold(f: SliceFunction) -> Tuple[bool, bool]:
        bounds = poincare_bounds(expand(f))
        table = influence_table(f)

        def inf(a: int, b: int) -> Fraction:
            return table[(min(a, b), max(a, b))]

        triangle = all(
            inf(i, j) <= Fraction(9, 2) * (inf(i, k) + inf(j, k))
            for i, j, k in permutations(range(1, f.n + 1), 3)
        )
        return bounds.holds, triangle

    def inequalities(self):
        families: List[Tuple[int, int, List[SliceFunction]]] = []
        points = slice_points(4, 2)
        exhaustive = [
            SliceFunction(4, 2, dict(zip(points, bits))) for bits in product((0, 1), repeat=len(points))
        ]
        families.append((4, 2, exhaustive))
        for n in range(5, self.max_n + 1):
            rng = self._rng(n, 2)
            families.append(
                (n, n // 2, [random_function(rng, n, n // 2, boolean=True) for _ in range(self.boolean_functions)])
            )

        for n, k, functions in families:
            poincare, triangle = True, True
            for f in self._progress(functions, f"🔮 inequalities ({n},{k})"):
                p, t = self._inequalities_hold(f)
                poincare &= p
                triangle &= t
            self._record("inequalities", "V[f] <= Inf[f] <= d V[f]", n, k, len(functions), poincare)
            self._record("inequalities", "Inf_ij <= 9/2 (Inf_ik + Inf_jk)", n, k, len(functions), triangle)

    # ---------------------------------------------
    # Média, ruído e juntas
    # ---------------------------------------------
    def averaging(self):
        for n, k in self._progress(slices(2, min(self.max_n, 7)), "🔮 averaging"):
            rng = self._rng(n, k, 3)
            functions = [random_function(rng, n, k) for _ in range(2)]
            for m in range(1, min(5, n) + 1):
                ok = all(synthesize(average_first_m(expand(f), m)) == direct_average(f, m) for f in functions)
                self._record("averaging", f"média sobre S_{m} = filtro B ∩ [m] = ∅", n, k, len(functions), ok)

    def noise(self):
        for n, k in self._progress(slices(2, self.max_n), "🔮 noise"):
            rng = self._rng(n, k, 4)
            functions = [random_function(rng, n, k) for _ in range(2)]
            dense_ok, semigroup_ok = True, True
            for f in functions:
                e = expand(f)
                for t in NOISE_TIMES:
                    spectral = noise(e, t).evaluate()
                    direct = noise_direct(f, t)
                    dense_ok &= all(
                        math.isclose(spectral[S], direct[S], rel_tol=DENSE_TOLERANCE, abs_tol=DENSE_TOLERANCE)
                        for S in direct
                    )
                for s, t in product(NOISE_TIMES, repeat=2):
                    composed = noise(noise(e, s), t)
                    joined = noise(e, s + t)
                    semigroup_ok &= all(
                        math.isclose(composed.coefficient(B), c, rel_tol=SEMIGROUP_TOLERANCE)
                        for B, c in joined.coefficients.items()
                    )
            self._record("noise", "H_t espectral = e^{-tL} denso", n, k, len(functions) * len(NOISE_TIMES), dense_ok)
            self._record("noise", "H_s H_t = H_{s+t}", n, k, len(functions) * len(NOISE_TIMES) ** 2, semigroup_ok)

    def junta(self):
        sizes = sorted(set(range(4, self.max_n + 1)) | {7})
        for n in self._progress(sizes, "🔮 junta"):
            k = n // 2
            rng = self._rng(n, k, 5)
            exact, covered, rounding, local = True, True, True, True
            cases = 0
            for size in range(1, min(3, n // 2) + 1):
                for _ in range(3):
                    f, R = planted_junta(rng, n, k, size)
                    table = influence_table(f)
                    positive = [v for v in table.values() if v > 0]
                    tau = min(positive) if positive else Fraction(1)
                    report = junta_approximate(f, tau)
                    essential = {
                        r for r in R if any(table[tuple(sorted((r, j)))] > 0 for j in range(1, n + 1) if j not in R)
                    }
                    exact &= report.distance == 0 and report.junta == f
                    covered &= essential <= set(report.important_set)
                    rounding &= report.distance <= report.rounding_bound
                    local &= depends_only_on(report.junta, report.important_set) and all(
                        v < tau
                        for (i, j), v in table.items()
                        if i not in report.important_set and j not in report.important_set
                    )
                    cases += 1
            self._record("junta", "junta plantada: distância 0", n, k, cases, exact)
            self._record("junta", "conjunto importante cobre as coordenadas essenciais", n, k, cases, covered)
            self._record("junta", "Pr[f ≠ g] <= 2‖f - h‖²", n, k, cases, rounding)
            self._record("junta", "g depende só do conjunto importante", n, k, cases, local)

    # ---------------------------------------------
    # Execução
    # ---------------------------------------------
    def run(self, suites: Iterable[str] = SUITES) -> pl.DataFrame:
        suites = list(suites)
        unknown = [s for s in suites if s not in SUITES]
        if unknown:
            raise ValueError(f"Suítes desconhecidas: {unknown}")
        runners: Dict[str, Callable[[], None]] = {name: getattr(self, name) for name in SUITES}
        for name in suites:
            logging.info(f"🔮 Suíte {name} (max_n={self.max_n})")
            runners[name]()
        frame = self.to_frame()
        logging.info(f"✅ {frame['passed'].sum()}/{frame.height} propriedades confirmadas")
        return frame

    def to_frame(self) -> pl.DataFrame:
        schema = {
            "suite": pl.Utf8,
            "property": pl.Utf8,
            "n": pl.Int64,
            "k": pl.Int64,
            "measure": pl.Utf8,
            "cases": pl.Int64,
            "passed": pl.Boolean,
        }
        return pl.DataFrame([asdict(r) for r in self.results], schema=schema)

    @property
    def all_passed(self) -> bool:
        return all(r.passed for r in self.results)
