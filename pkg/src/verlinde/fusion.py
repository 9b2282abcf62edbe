from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Dict, List, Tuple

import numpy as np
import pandas as pd

from src.errors import InvalidInputError
from src.lie.root_system import Weight


@dataclass(frozen=True, eq=False)
class FusionRing:
    """Level-h fusion ring: basis of dominant weights and N[a][b][c] = N_ab^c."""

    family: str
    rank: int
    level: int
    basis: Tuple[Weight, ...]
    constants: np.ndarray
    unit: int

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FusionRing):
            return NotImplemented
        return (
            (self.family, self.rank, self.level, self.basis, self.unit)
            == (other.family, other.rank, other.level, other.basis, other.unit)
            and np.array_equal(self.constants, other.constants)
        )

    __hash__ = None  # type: ignore[assignment]

    @property
    def size(self) -> int:
        return len(self.basis)

    @property
    def group(self) -> str:
        return f"{self.family}{self.rank}"

    def index(self, w: Weight) -> int:
        try:
            return self.basis.index(w)
        except ValueError:
            raise InvalidInputError(f"{w} is not a level-{self.level} weight of {self.group}") from None

    def fusion_matrix(self, a: int) -> np.ndarray:
        """(N_a)[b][c] = N_ab^c."""
        return self.constants[a]

    def product(self, a: Weight, b: Weight) -> Dict[Weight, int]:
        row = self.constants[self.index(a), self.index(b)]
        return {self.basis[c]: int(n) for c, n in enumerate(row) if n}

    def dual(self, a: int) -> int:
        """The index a* with N[a][a*][unit] = 1."""
        hits = [b for b in range(self.size) if self.constants[a, b, self.unit] == 1]
        if len(hits) != 1:
            raise InvalidInputError(f"{self.basis[a]} has no unique dual in this ring")
        return hits[0]

    def axiom_violations(self) -> List[str]:
        """Empty when the ring is commutative, unital, nonnegative and associative."""
        n = self.size
        N = self.constants
        problems: List[str] = []
        if (N < 0).any():
            problems.append("negative structure constant")
        if not np.array_equal(N, N.transpose(1, 0, 2)):
            problems.append("N[a][b][c] != N[b][a][c]")
        if not np.array_equal(N[self.unit], np.eye(n, dtype=N.dtype)):
            problems.append("unit row is not the identity")
        lhs = np.einsum("abe,ecd->abcd", N, N)
        rhs = np.einsum("bce,aed->abcd", N, N)
        if not np.array_equal(lhs, rhs):
            problems.append("associativity fails")
        return problems

    def matrices_commute(self) -> bool:
        mats = [self.fusion_matrix(a) for a in range(self.size)]
        return all(np.array_equal(x @ y, y @ x) for i, x in enumerate(mats) for y in mats[i + 1 :])

    def triples(self) -> List[Tuple[int, int, int, int]]:
        a, b, c = np.nonzero(self.constants)
        return [(int(i), int(j), int(k), int(self.constants[i, j, k])) for i, j, k in zip(a, b, c)]

    def to_json(self) -> Dict[str, Any]:
        return {
            "family": self.family,
            "rank": self.rank,
            "level": self.level,
            "basis": [list(w.coords) for w in self.basis],
            "unit": self.unit,
            "constants": [list(t) for t in self.triples()],
        }

    @classmethod
    def from_json(cls, payload: Dict[str, Any]) -> "FusionRing":
        try:
            basis = tuple(Weight(tuple(int(x) for x in w)) for w in payload["basis"])
            n = len(basis)
            constants = np.zeros((n, n, n), dtype=np.int64)
            for a, b, c, v in payload["constants"]:
                a, b, c = int(a), int(b), int(c)
                if not (0 <= a < n and 0 <= b < n and 0 <= c < n):
                    raise ValueError(f"index ({a}, {b}, {c}) outside a basis of size {n}")
                constants[a, b, c] = int(v)
            unit = int(payload["unit"])
            if not 0 <= unit < n:
                raise ValueError(f"unit {unit} outside a basis of size {n}")
            return cls(
                family=str(payload["family"]),
                rank=int(payload["rank"]),
                level=int(payload["level"]),
                basis=basis,
                constants=constants,
                unit=unit,
            )
        except (KeyError, TypeError, ValueError, IndexError) as e:
            raise InvalidInputError(f"malformed fusion ring document: {e}") from e

    def to_frame(self) -> pd.DataFrame:
        rows = [
            {"a": str(self.basis[a]), "b": str(self.basis[b]), "c": str(self.basis[c]), "N": n}
            for a, b, c, n in self.triples()
        ]
        return pd.DataFrame(rows, columns=["a", "b", "c", "N"])
