"""Scenario configs: build both parties from JSON and drive a run of M rounds."""

import hashlib
import random
import secrets
from dataclasses import dataclass, field
from functools import lru_cache

from .. import elgamal, paillier
from ..errors import ConfigError, DomainError
from ..gaussian import GaussianInt, GModRing, find_generator
from ..numtheory import eg_parameters, unit_group_factors
from .aggp import AggPDataCollector, AggPSensor, aggp_round, aggp_setup
from .attacks import make_adversary
from .channel import make_cipher
from .eg import EGDataCollector, EGSensor, eg_round
from .schedule import WatermarkSchedule


@dataclass
class ScenarioConfig:
    protocol: str
    N: int = 1
    B: int = 16
    M: int = 1
    seed: object = None
    key_seed: object = None
    data: object = None
    data_bound: int | None = None
    p: int | None = None
    p_bits: int | None = None
    gamma: str | None = None
    order_factors: list | None = None
    a: int | None = None
    paillier_bits: int | None = None
    paillier_p: int | None = None
    paillier_q: int | None = None
    lam: str | None = None
    lambda_max: int | None = None
    data_offset: int = 0
    watermarks: list | None = None
    cipher: str = "aes-gcm"
    padding: str = "pad"
    attack: object = "none"
    extra: dict = field(default_factory=dict)

    @classmethod
    def from_dict(cls, raw):
        raw = dict(raw)
        known = {f for f in cls.__dataclass_fields__ if f != "extra"}
        if "lambda" in raw:
            raw["lam"] = raw.pop("lambda")
        for key in ("p", "a", "paillier_p", "paillier_q", "data_bound", "lambda_max"):
            if isinstance(raw.get(key), str):
                raw[key] = int(raw[key])
        cfg = cls(**{k: v for k, v in raw.items() if k in known})
        cfg.extra = {k: v for k, v in raw.items() if k not in known}
        cfg.validate()
        return cfg

    def validate(self):
        if self.protocol not in ("eg", "aggp"):
            raise ConfigError(f"protocol must be 'eg' or 'aggp', not {self.protocol!r}")
        if self.protocol == "eg" and self.N != 1:
            raise ConfigError("the EG protocol runs one sensor (N=1)")
        if self.N < 1 or self.M < 1 or self.B < 1:
            raise ConfigError("N, M and B must be positive")
        if self.protocol == "eg" and self.p is None and self.p_bits is None:
            raise ConfigError("EG scenario needs 'p' or 'p_bits'")
        if self.protocol == "aggp" and self.paillier_bits is None and self.paillier_p is None:
            raise ConfigError("AggP scenario needs 'paillier_bits' or 'paillier_p'/'paillier_q'")


class Rngs:
    """Independent named RNG streams derived from one seed.

    With a seed every stream is a ``random.Random`` (reproducible); without
    one every stream is the OS CSPRNG.
    """

    def __init__(self, seed):
        self.seed = seed

    def __call__(self, label):
        if self.seed is None:
            return secrets.SystemRandom()
        return random.Random(f"{self.seed}/{label}")

    def secret(self, label):
        if self.seed is None:
            return secrets.token_bytes(32)
        return hashlib.sha256(f"{self.seed}/{label}".encode()).digest()


def _data_rounds(cfg, rng):
    """Readings per round as a list of M lists of N integers."""
    data = cfg.data
    if isinstance(data, dict) and "uniform" in data:
        lo, hi = (int(x) for x in data["uniform"])
        return [[rng.randint(lo, hi) for _ in range(cfg.N)] for _ in range(cfg.M)]
    if data is None:
        raise ConfigError("scenario needs 'data'")
    rounds = []
    for entry in data:
        row = entry if isinstance(entry, list) else [entry]
        rounds.append([int(x) for x in row])
    if len(rounds) == 1 and cfg.M > 1:
        rounds *= cfg.M
    if len(rounds) != cfg.M or any(len(r) != cfg.N for r in rounds):
        raise ConfigError(f"data must give {cfg.N} readings for each of {cfg.M} rounds")
    return rounds


def _data_bound(cfg, rounds):
    if cfg.data_bound is not None:
        return cfg.data_bound
    if isinstance(cfg.data, dict):
        return max(abs(int(x)) for x in cfg.data["uniform"])
    return max(abs(x) for row in rounds for x in row)


def _cached(fn):
    cached = lru_cache(maxsize=32)(fn)

    def wrapper(*args):
        # unseeded key material must be fresh on every call
        return fn(*args) if args[-1] is None else cached(*args)

    return wrapper


@_cached
def _eg_material(p, p_bits, gamma, factors, a, seed):
    rngs = Rngs(seed)
    if p is None:
        p, factors = eg_parameters(p_bits, rngs("eg-params"))
    ring = GModRing(p)
    factors = tuple(factors) if factors else tuple(unit_group_factors(p))
    gamma = GaussianInt.of(gamma) if gamma else find_generator(ring, factors, rngs("eg-gen"))
    return elgamal.keygen(ring, gamma, rngs("eg-key"), factors, a)


@_cached
def _paillier_material(bits, p, q, seed):
    return paillier.keygen(bits=bits, p=p, q=q, rng=Rngs(seed)("paillier-key"))


def schedule_for(cfg, rngs):
    values = tuple(cfg.watermarks) if cfg.watermarks is not None else None
    return WatermarkSchedule(rngs.secret("schedule"), cfg.B, cfg.M, values)


@dataclass
class Run:
    config: ScenarioConfig
    setup: object
    rounds: list

    @property
    def all_accepted(self):
        return all(t.verdict.ok for t in self.rounds)

    def jsonl_records(self):
        if self.setup is not None:
            yield from (m.to_json() for m in self.setup.messages)
        for t in self.rounds:
            yield from t.jsonl_records()


def run_scenario(cfg, seed=None):
    """Execute every round of ``cfg``. ``seed`` overrides ``cfg.seed``."""
    if isinstance(cfg, dict):
        cfg = ScenarioConfig.from_dict(cfg)
    seed = cfg.seed if seed is None else seed
    rngs = Rngs(seed)
    schedule = schedule_for(cfg, rngs)
    rounds = _data_rounds(cfg, rngs("data"))
    bound = _data_bound(cfg, rounds)
    try:
        if cfg.protocol == "eg":
            return _run_eg(cfg, seed, rngs, schedule, rounds, bound)
        return _run_aggp(cfg, seed, rngs, schedule, rounds, bound)
    except DomainError as exc:
        raise ConfigError(str(exc)) from exc


def _key_seed(cfg, seed):
    return seed if cfg.key_seed is None else cfg.key_seed


def _run_eg(cfg, seed, rngs, schedule, rounds, bound):
    factors = tuple(int(q) for q in cfg.order_factors) if cfg.order_factors else None
    pub, priv = _eg_material(cfg.p, cfg.p_bits, cfg.gamma, factors, cfg.a, _key_seed(cfg, seed))
    dc = EGDataCollector(pub, priv, schedule, bound, rngs("dc"), cfg.lam, cfg.lambda_max,
                         cfg.data_offset)
    sensor = EGSensor(pub, schedule, bound, rngs("sensor-1"), cfg.data_offset)
    adversary = make_adversary(cfg.attack, "eg", pub, rngs("adversary"), cfg.B, bound)
    out = [eg_round(dc, sensor, row[0], k, adversary) for k, row in enumerate(rounds, 1)]
    return Run(cfg, None, out)


def _run_aggp(cfg, seed, rngs, schedule, rounds, bound):
    pub, priv = _paillier_material(cfg.paillier_bits, cfg.paillier_p, cfg.paillier_q,
                                   _key_seed(cfg, seed))
    cipher = make_cipher(cfg.cipher)
    dc = AggPDataCollector(pub, priv, schedule, cfg.N, bound, rngs("dc"), cipher, cfg.lam,
                           cfg.lambda_max if cfg.lambda_max is not None else 1 << 32)
    sensors = [AggPSensor(j, pub, schedule, cfg.N, bound, rngs(f"sensor-{j}"), cipher)
               for j in range(1, cfg.N + 1)]
    adversary = make_adversary(cfg.attack, "aggp", pub, rngs("adversary"), cfg.B, bound, cfg.N)
    setup = aggp_setup(dc, sensors, adversary)
    out = [aggp_round(dc, sensors, row, k, adversary, cfg.padding)
           for k, row in enumerate(rounds, 1)]
    return Run(cfg, setup, out)


def attack(scenario, protocol="eg", seed=0, **overrides):
    """Run a baseline honest configuration under ``scenario`` and return the attacked round.

    ``scenario`` is one of ``none``, ``replay``, ``tamper``, ``false_injection``,
    ``masquerade`` or a full attack dict. The attacked round is round 2.
    """
    base = dict(BASELINES[protocol])
    base["seed"] = seed
    attack_cfg = scenario if isinstance(scenario, dict) else {"type": scenario}
    if attack_cfg["type"] != "none":
        attack_cfg = {"at": 2, **attack_cfg}
        if attack_cfg["type"] == "replay":
            attack_cfg.setdefault("from", 1)
    base["attack"] = attack_cfg
    base.update(overrides)
    run = run_scenario(base)
    return run.rounds[1]


# 64-bit p whose p^2-1 factorization is known, so EG runs need no factoring.
EG_BASELINE_P = 12698008784270543659
EG_BASELINE_FACTORS = [2, 3, 5, 56401, 37523001318743, 634900439213527183]

BASELINES = {
    "eg": {
        "protocol": "eg",
        "p": EG_BASELINE_P,
        "order_factors": EG_BASELINE_FACTORS,
        "B": 16,
        "M": 3,
        "data": {"uniform": [-1000, 1000]},
        "data_offset": 1001,
        "key_seed": "baseline",
    },
    "aggp": {
        "protocol": "aggp",
        "paillier_bits": 512,
        "key_seed": "baseline",
        "N": 4,
        "B": 16,
        "M": 3,
        "data": {"uniform": [-1000, 1000]},
    },
}
