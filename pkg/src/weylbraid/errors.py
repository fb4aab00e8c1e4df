"""Exception hierarchy shared by every module.

Each error carries a short machine-readable ``code`` so the command line can
emit a JSON error object without inspecting message text.
"""

from __future__ import annotations


class WeylBraidError(Exception):
    code = "error"

    def to_dict(self) -> dict:
        return {"error": self.code, "message": str(self)}


class ClassificationError(WeylBraidError, ValueError):
    code = "classification"


class FoldError(WeylBraidError, ValueError):
    code = "fold"

    def __init__(self, message: str, orbit: tuple = ()):
        super().__init__(message)
        self.orbit = orbit

    def to_dict(self) -> dict:
        out = super().to_dict()
        out["orbit"] = list(self.orbit)
        return out


class MonodromyError(WeylBraidError, ValueError):
    code = "monodromy"


class UnsupportedError(WeylBraidError, ValueError):
    code = "unsupported"


class BudgetError(WeylBraidError, RuntimeError):
    code = "budget"


class UnknownNodeError(WeylBraidError, IndexError):
    code = "unknown-node"


class DiagramMismatchError(WeylBraidError, ValueError):
    code = "diagram-mismatch"


class InvalidClassError(WeylBraidError, ValueError):
    code = "invalid-class"


class EmbeddingNotFoundError(WeylBraidError, LookupError):
    code = "embedding-not-found"


class InvalidSphericalClassError(WeylBraidError, ValueError):
    code = "invalid-spherical-class"


class ContractError(WeylBraidError, ValueError):
    code = "contract"


class BFieldError(WeylBraidError, ValueError):
    code = "bfield"


class ModelError(WeylBraidError, ValueError):
    code = "model"
