"""Round transcripts, verdicts and the in-memory network with an adversary hook."""

import json
from dataclasses import dataclass, field

from ..counters import OpCounter
from ..errors import DomainError

WATERMARK_MISMATCH = "watermark mismatch"
DIVISIBILITY_FAILURE = "divisibility failure"
AUTH_FAILURE = "symmetric-auth failure"
MALFORMED = "malformed ciphertext"


@dataclass
class Message:
    round: int
    sender: str
    receiver: str
    kind: str
    payload: dict

    @property
    def nbytes(self):
        return len(json.dumps(self.payload, sort_keys=True, separators=(",", ":")).encode())

    def to_json(self):
        return {
            "round": self.round,
            "from": self.sender,
            "to": self.receiver,
            "kind": self.kind,
            "payload": self.payload,
        }


@dataclass(frozen=True)
class Verdict:
    status: str
    data: int | None = None
    watermark: int | None = None
    reason: str | None = None

    @classmethod
    def accepted(cls, data, watermark):
        return cls("accepted", data, watermark)

    @classmethod
    def rejected(cls, reason):
        return cls("rejected", reason=reason)

    @property
    def ok(self):
        return self.status == "accepted"

    def to_json(self):
        if self.ok:
            return {"status": "accepted", "data": str(self.data), "watermark": str(self.watermark)}
        return {"status": "rejected", "reason": self.reason}

    @classmethod
    def from_json(cls, obj):
        if obj["status"] == "accepted":
            return cls.accepted(int(obj["data"]), int(obj["watermark"]))
        return cls.rejected(obj["reason"])


@dataclass
class RoundTranscript:
    round: int
    protocol: str
    n_sensors: int = 1
    messages: list = field(default_factory=list)
    dc: OpCounter = field(default_factory=OpCounter)
    sensors: list = field(default_factory=list)
    padding: OpCounter = field(default_factory=OpCounter)
    verdict: Verdict | None = None

    def __post_init__(self):
        if not self.sensors:
            self.sensors = [OpCounter() for _ in range(self.n_sensors)]

    def set_verdict(self, verdict):
        if self.verdict is not None:
            raise DomainError(f"verdict for round {self.round} already set")
        self.verdict = verdict
        return verdict

    @property
    def counters(self):
        """Per-round cost summary; ``*_sensor`` entries are the per-sensor maximum."""
        return {
            "protocol": self.protocol,
            "n_sensors": self.n_sensors,
            "complex_modexp_sensor": max(s.complex_modexp for s in self.sensors),
            "complex_modexp_dc": self.dc.complex_modexp,
            "int_modexp_sensor": max(s.int_modexp for s in self.sensors),
            "int_modexp_dc": self.dc.int_modexp,
            "modexp_n2_sensor": max(s.modexp_n2 for s in self.sensors),
            "modexp_n2_dc": self.dc.modexp_n2,
            "modexp_n2_padding": self.padding.modexp_n2,
            "modexp_n2_per_sensor": [s.modexp_n2 for s in self.sensors],
            "messages_total": len(self.messages),
        }

    def jsonl_records(self):
        for m in self.messages:
            yield m.to_json()
        yield {
            "round": self.round,
            "counters": self.counters,
            "verdict": self.verdict.to_json() if self.verdict else None,
        }


def write_jsonl(path, records):
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        for rec in records:
            fh.write(json.dumps(rec, sort_keys=True, separators=(",", ":")) + "\n")


def read_jsonl(path):
    with open(path, encoding="utf-8") as fh:
        return [json.loads(line) for line in fh if line.strip()]


class Network:
    """Delivers messages in order, letting an adversary rewrite each one.

    The transcript records what was delivered, i.e. what the wire carried.
    """

    def __init__(self, transcript, adversary=None):
        self.transcript = transcript
        self.adversary = adversary

    def send(self, msg):
        if self.adversary is not None:
            msg = self.adversary.intercept(msg)
        self.transcript.messages.append(msg)
        return msg
