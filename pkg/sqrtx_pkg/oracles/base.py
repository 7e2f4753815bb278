from abc import ABC, abstractmethod

from ..linalg import SpdMatrix, SymMatrix


class FrechetOracle(ABC):
    name: str = "abstract"

    @abstractmethod
    def frechet(self, a: SpdMatrix, h: SymMatrix) -> SymMatrix:
        ...
