# config.py
import os
from dataclasses import dataclass
from fractions import Fraction

from dotenv import load_dotenv

from errors import InvalidInputError

load_dotenv()


@dataclass(frozen=True)
class Settings:
    log_level: str = "WARNING"
    seed: int = 2016
    verify_max_n: int = 6
    random_functions: int = 50
    boolean_functions: int = 200
    junta_tau_ratio: Fraction = Fraction(1, 2)
    junta_tau_steps: int = 12
    noise_digits: int = 15


def _read(name: str, default, parse):
    raw = os.getenv(name)
    if raw is None or not raw.strip():
        return default
    try:
        return parse(raw.strip())
    except (ValueError, ZeroDivisionError) as e:
        raise InvalidInputError(f"Variável {name} inválida ({raw!r}): {e}") from e


def _positive_int(raw: str) -> int:
    value = int(raw)
    if value < 1:
        raise ValueError("deve ser um inteiro positivo")
    return value


def _ratio(raw: str) -> Fraction:
    value = Fraction(raw)
    if not 0 < value < 1:
        raise ValueError("deve estar em (0, 1)")
    return value


def load_settings() -> Settings:
    """Lê a configuração do ambiente (e do .env, se existir)."""
    level = _read("YOUNG_LOG_LEVEL", Settings.log_level, str.upper)
    if level not in {"DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"}:
        raise InvalidInputError(f"Variável YOUNG_LOG_LEVEL inválida ({level!r})")

    return Settings(
        log_level=level,
        seed=_read("YOUNG_SEED", Settings.seed, int),
        verify_max_n=_read("YOUNG_VERIFY_MAX_N", Settings.verify_max_n, _positive_int),
        random_functions=_read("YOUNG_RANDOM_FUNCTIONS", Settings.random_functions, _positive_int),
        boolean_functions=_read("YOUNG_BOOLEAN_FUNCTIONS", Settings.boolean_functions, _positive_int),
        junta_tau_ratio=_read("YOUNG_JUNTA_TAU_RATIO", Settings.junta_tau_ratio, _ratio),
        junta_tau_steps=_read("YOUNG_JUNTA_TAU_STEPS", Settings.junta_tau_steps, _positive_int),
        noise_digits=_read("YOUNG_NOISE_DIGITS", Settings.noise_digits, _positive_int),
    )
