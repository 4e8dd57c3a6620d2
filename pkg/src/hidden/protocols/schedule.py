import hashlib
import hmac
from dataclasses import dataclass

from ..errors import DomainError


@dataclass(frozen=True)
class WatermarkSchedule:
    """Time-dependent watermarks ``w_1..w_M`` derived from a shared secret seed.

    ``w_k`` is HMAC-SHA256(seed, k) truncated to its top ``B`` bits. Passing
    ``values`` pins the sequence explicitly (used to replay worked examples).
    """

    seed: bytes
    B: int
    M: int
    values: tuple | None = None

    def __post_init__(self):
        if self.B < 1 or self.M < 1:
            raise DomainError("B and M must be positive")
        if self.values is not None:
            if len(self.values) != self.M:
                raise DomainError(f"expected {self.M} explicit watermarks")
            if any(not 0 <= w < (1 << self.B) for w in self.values):
                raise DomainError(f"explicit watermarks must lie in [0, 2^{self.B})")

    @property
    def max_value(self):
        return (1 << self.B) - 1

    def watermark_at(self, k):
        if not 1 <= k <= self.M:
            raise DomainError(f"round {k} outside 1..{self.M}")
        if self.values is not None:
            return self.values[k - 1]
        stream = b""
        block = 0
        while 8 * len(stream) < self.B:
            msg = b"wm" + k.to_bytes(8, "big") + block.to_bytes(4, "big")
            stream += hmac.new(self.seed, msg, hashlib.sha256).digest()
            block += 1
        return int.from_bytes(stream, "big") >> (8 * len(stream) - self.B)


def watermark_at(schedule, k):
    return schedule.watermark_at(k)
