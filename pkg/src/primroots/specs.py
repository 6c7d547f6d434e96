"""Configuration requests: which tuple of offsets, under which restriction."""

from __future__ import annotations

from dataclasses import dataclass

RESTRICTIONS = ("none", "squarefree", "spowerfree", "coprime", "squarefree_coprime")


@dataclass(frozen=True)
class TupleSpec:
    """Tuple ``n + a_0, ..., n + a_k`` of residues required to be primitive roots.

    ``restriction`` adds an arithmetic side condition on every member:
    ``squarefree`` (mu^2), ``spowerfree`` (mu_s with parameter ``s``),
    ``coprime`` (gcd with ``q`` is 1) or ``squarefree_coprime`` (both).
    For the quasi-consecutive pair ``n, n + a`` use ``offsets=(0, a)``.
    """

    offsets: tuple[int, ...]
    restriction: str = "none"
    s: int = 2
    q: int = 1
    wraparound: bool = True

    def __post_init__(self):
        offs = tuple(int(a) for a in self.offsets)
        object.__setattr__(self, "offsets", offs)
        if not offs:
            raise ValueError("offsets must be non-empty")
        if any(b <= a for a, b in zip(offs, offs[1:])):
            raise ValueError(f"offsets must be strictly increasing, got {offs}")
        if self.restriction not in RESTRICTIONS:
            raise ValueError(f"unknown restriction {self.restriction!r}")
        if self.s < 2:
            raise ValueError("s must be >= 2")
        if self.q < 1:
            raise ValueError("q must be >= 1")

    @property
    def k(self) -> int:
        return len(self.offsets) - 1

    @property
    def sieve_s(self) -> int | None:
        """Power-freeness exponent imposed by the restriction, if any."""
        if self.restriction in ("squarefree", "squarefree_coprime"):
            return 2
        if self.restriction == "spowerfree":
            return self.s
        return None

    @property
    def uses_coprime(self) -> bool:
        return self.restriction in ("coprime", "squarefree_coprime")

    def summary(self) -> str:
        offs = "[" + " ".join(str(a) for a in self.offsets) + "]"
        kind = self.restriction
        if kind == "spowerfree":
            kind = f"spowerfree(s={self.s})"
        elif kind in ("coprime", "squarefree_coprime"):
            kind = f"{kind}(q={self.q})"
        tail = "" if self.wraparound else " nowrap"
        return f"{offs} {kind}{tail}"
