from dataclasses import dataclass, fields


@dataclass
class OpCounter:
    """Accumulates dominant-cost operations for one party in one context.

    ``complex_modexp`` counts Gaussian-integer modular exponentiations,
    ``int_modexp`` integer modular exponentiations mod p (the norm inverse)
    and ``modexp_n2`` Paillier exponentiations modulo n^2.
    """

    complex_modexp: int = 0
    int_modexp: int = 0
    modexp_n2: int = 0

    def equivalent_int_modexp(self) -> int:
        # one complex modular multiplication costs four integer ones
        return 4 * self.complex_modexp + self.int_modexp

    def merge(self, other: "OpCounter") -> None:
        for f in fields(self):
            setattr(self, f.name, getattr(self, f.name) + getattr(other, f.name))
