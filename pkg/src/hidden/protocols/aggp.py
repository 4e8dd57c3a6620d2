"""Joint watermarking, Paillier encryption and tree aggregation over N sensors."""

import math

from .. import paillier
from ..counters import OpCounter
from ..errors import AuthenticationError, ConfigError, MalformedCiphertextError
from ..gaussian import GaussianInt, exact_div
from ..paillier import GPaillierCiphertext
from .channel import KEY_BYTES, SymmetricChannel, chunks_to_key, key_to_chunks
from .eg import product_bound, sample_lambda
from .transcript import (
    AUTH_FAILURE,
    DIVISIBILITY_FAILURE,
    MALFORMED,
    WATERMARK_MISMATCH,
    Message,
    Network,
    RoundTranscript,
    Verdict,
)


def sensor_name(j):
    return f"S{j}"


class AggPDataCollector:
    def __init__(self, pub, priv, schedule, n_sensors, data_bound, rng, cipher,
                 fixed_lambda=None, lambda_max=1 << 32):
        self.pub = pub
        self.priv = priv
        self.schedule = schedule
        self.n_sensors = n_sensors
        self.data_bound = data_bound
        self.rng = rng
        self.cipher = cipher
        self.fixed_lambda = None if fixed_lambda is None else GaussianInt.of(fixed_lambda)
        self.lambda_max = lambda_max
        self.channels = {}
        self.lambdas = {}

    def accept_key(self, j, chunks, counter=None):
        """Decrypt a sensor's Paillier-wrapped symmetric key."""
        try:
            plain = [paillier.dec_int(c, self.priv, self.pub, counter) for c in chunks]
        except MalformedCiphertextError as exc:
            raise ConfigError(f"setup abort: key from sensor {j} does not decrypt") from exc
        key = chunks_to_key(plain, self.pub.n)
        self.channels[j] = SymmetricChannel(j, key, self.cipher)

    def _fits(self, lam):
        bound = product_bound(lam, self.data_bound, self.schedule.max_value)
        return 2 * self.n_sensors * bound < self.pub.n

    def choose_lambda(self, k):
        if self.fixed_lambda is not None:
            lam = self.fixed_lambda
        else:
            span = self.data_bound + self.schedule.max_value
            limit = (self.pub.n - 1) // (2 * self.n_sensors * span)
            if self.lambda_max is not None:
                limit = min(limit, self.lambda_max)
            if limit < 1:
                raise ConfigError("Paillier modulus too small for N, data and watermark range")
            lam = sample_lambda(self.rng, limit)
        if lam.re == 0 or lam.im == 0:
            raise ConfigError("challenge factor needs nonzero real and imaginary parts")
        if not self._fits(lam):
            raise ConfigError(f"lambda={lam} lets the aggregate wrap around mod n")
        self.lambdas[k] = lam
        return lam

    def distribute(self, k):
        lam = self.choose_lambda(k)
        return {j: ch.seal(k, lam) for j, ch in sorted(self.channels.items())}

    def verify(self, k, ct, counter=None):
        try:
            sigma = paillier.dec_gauss(ct, self.priv, self.pub, counter)
        except MalformedCiphertextError:
            return Verdict.rejected(MALFORMED)
        unscaled = exact_div(sigma, self.lambdas[k])
        if unscaled is None or unscaled.im % self.n_sensors:
            return Verdict.rejected(DIVISIBILITY_FAILURE)
        w = unscaled.im // self.n_sensors
        if w != self.schedule.watermark_at(k):
            return Verdict.rejected(WATERMARK_MISMATCH)
        return Verdict.accepted(unscaled.re, w)


class AggPSensor:
    def __init__(self, j, pub, schedule, n_sensors, data_bound, rng, cipher):
        self.j = j
        self.pub = pub
        self.schedule = schedule
        self.n_sensors = n_sensors
        self.data_bound = data_bound
        self.rng = rng
        self.channel = SymmetricChannel(j, rng.randbytes(KEY_BYTES), cipher)
        self.lam = None

    def key_chunks(self, counter=None):
        return [
            paillier.enc_int(c, paillier.random_r(self.pub, self.rng), self.pub, counter)
            for c in key_to_chunks(self.channel.key, self.pub.n)
        ]

    def receive_lambda(self, k, blob):
        self.lam = self.channel.open(k, blob)
        return self.lam

    def contribute(self, k, d, counter=None):
        if abs(d) > self.data_bound:
            raise ConfigError(f"reading {d} outside the configured bound {self.data_bound}")
        scaled = self.lam * GaussianInt(d, self.schedule.watermark_at(k))
        if 2 * self.n_sensors * max(abs(scaled.re), abs(scaled.im)) >= self.pub.n:
            raise ConfigError("scaled reading could overflow the Paillier plaintext space")
        return paillier.enc_gauss(scaled, self.pub, self.rng, counter)


def tree_aggregate(ciphertexts, pub, padding="pad", rng=None, counter=None, send=None):
    """Sum ciphertexts pairwise up a binary tree.

    Returns ``(ciphertext, levels, messages)``. Leaf ``i`` belongs to sensor
    ``i + 1``; at each pair the right node's holder sends its partial sum to
    the left node's holder, so N-1 messages are exchanged. With
    ``padding="pad"`` the leaves are completed to a power of two with fresh
    encryptions of 0+0i, generated by the aggregator that consumes them and
    never sent. ``send(src, dst, ct)`` may replace a ciphertext in transit.
    """
    if not ciphertexts:
        raise ValueError("nothing to aggregate")
    nodes = [(ct, i + 1) for i, ct in enumerate(ciphertexts)]
    levels = math.ceil(math.log2(len(nodes))) if len(nodes) > 1 else 0
    if padding == "pad":
        zero_counter = counter if counter is not None else OpCounter()
        while len(nodes) < 1 << levels:
            nodes.append((paillier.enc_gauss(GaussianInt(0, 0), pub, rng, zero_counter), None))
    elif padding != "unbalanced":
        raise ConfigError(f"unknown padding mode {padding!r}")

    messages = 0
    while len(nodes) > 1:
        nxt = []
        for i in range(0, len(nodes) - 1, 2):
            (left, lo), (right, ro) = nodes[i], nodes[i + 1]
            if lo is not None and ro is not None:
                messages += 1
                if send is not None:
                    right = send(ro, lo, right)
            nxt.append((paillier.hom_add_gauss(left, right, pub), lo if lo is not None else ro))
        if len(nodes) % 2:
            nxt.append(nodes[-1])
        nodes = nxt
    return nodes[0][0], levels, messages


def _parse_gct(payload):
    try:
        return GPaillierCiphertext.from_json(payload)
    except (KeyError, TypeError, ValueError):
        return None


def aggp_setup(dc, sensors, adversary=None):
    """Each sensor ships its symmetric key to the DC under Paillier (round 0)."""
    t = RoundTranscript(0, "aggp-setup", len(sensors))
    net = Network(t, adversary)
    for s, counter in zip(sensors, t.sensors):
        chunks = s.key_chunks(counter)
        got = net.send(Message(0, sensor_name(s.j), "DC", "key",
                               {"chunks": [str(c) for c in chunks]}))
        dc.accept_key(s.j, [int(c) for c in got.payload["chunks"]], t.dc)
    return t


class _Abort(Exception):
    pass


def aggp_round(dc, sensors, data, k, adversary=None, padding="pad", rng=None):
    """Run one aggregation round; ``data[j-1]`` is sensor j's reading."""
    n = len(sensors)
    if len(data) != n:
        raise ConfigError(f"{n} sensors but {len(data)} readings")
    t = RoundTranscript(k, "aggp", n)
    net = Network(t, adversary)

    auth_ok = True
    for s, (j, blob) in zip(sensors, dc.distribute(k).items()):
        got = net.send(Message(k, "DC", sensor_name(j), "challenge", {"blob": blob.hex()}))
        try:
            s.receive_lambda(k, bytes.fromhex(got.payload["blob"]))
        except (AuthenticationError, ValueError, KeyError, TypeError):
            auth_ok = False
    if not auth_ok:
        t.set_verdict(Verdict.rejected(AUTH_FAILURE))
        return t

    leaves = [s.contribute(k, d, c) for s, d, c in zip(sensors, data, t.sensors)]

    def send(src, dst, ct):
        got = net.send(Message(k, sensor_name(src), sensor_name(dst), "partial", ct.to_json()))
        parsed = _parse_gct(got.payload)
        if parsed is None:
            raise _Abort
        return parsed

    try:
        total, _, _ = tree_aggregate(leaves, dc.pub, padding, rng or sensors[-1].rng,
                                     t.padding, send)
    except _Abort:
        t.set_verdict(Verdict.rejected(MALFORMED))
        return t
    got = net.send(Message(k, sensor_name(1), "DC", "aggregate", total.to_json()))
    total = _parse_gct(got.payload)
    if total is None:
        t.set_verdict(Verdict.rejected(MALFORMED))
        return t
    t.set_verdict(dc.verify(k, total, t.dc))
    return t
