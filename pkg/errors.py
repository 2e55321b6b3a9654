# errors.py
from typing import Optional


class InvalidInputError(ValueError):
    """Entrada inválida para uma operação (índices fora de [n], tamanhos incompatíveis, etc.)."""


class InputFileError(InvalidInputError):
    """Erro em um arquivo de entrada; identifica o registro problemático quando possível."""

    def __init__(self, message: str, record: Optional[int] = None):
        self.record = record
        if record is not None:
            message = f"registro {record}: {message}"
        super().__init__(message)


class VerificationError(AssertionError):
    """Uma checagem interna de consistência falhou."""
