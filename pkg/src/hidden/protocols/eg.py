"""Joint watermarking and ElGamal encryption of single readings.

Per round the data collector (DC) encrypts a fresh challenge factor λ_k and
sends it to the sensor. The sensor encrypts ``d_k + i*w_k`` and multiplies
the two ciphertexts, so the DC decrypts ``λ_k (d_k + i*w_k)``, divides λ_k
out and checks the watermark.
"""

from .. import elgamal
from ..errors import ConfigError, DomainError, MalformedCiphertextError
from ..gaussian import GaussianInt, centered_lift, exact_div
from .transcript import (
    DIVISIBILITY_FAILURE,
    MALFORMED,
    WATERMARK_MISMATCH,
    Message,
    Network,
    RoundTranscript,
    Verdict,
)


def product_bound(lam, data_bound, wm_bound):
    """Largest possible |component| of ``lam * (d + iw)`` over the data range."""
    a, b = abs(lam.re), abs(lam.im)
    return max(a * data_bound + b * wm_bound, b * data_bound + a * wm_bound)


def sample_lambda(rng, limit):
    def nonzero():
        v = rng.randrange(1, limit + 1)
        return v if rng.getrandbits(1) else -v

    return GaussianInt(nonzero(), nonzero())


class EGDataCollector:
    def __init__(self, pub, priv, schedule, data_bound, rng, fixed_lambda=None,
                 lambda_max=None, data_offset=0):
        self.pub = pub
        self.priv = priv
        self.ring = pub.ring
        self.schedule = schedule
        self.rng = rng
        self.data_offset = data_offset
        self.value_bound = data_bound + abs(data_offset)
        self.fixed_lambda = None if fixed_lambda is None else GaussianInt.of(fixed_lambda)
        self.lambda_max = lambda_max
        self.lambdas = {}

    def _fits(self, lam):
        return 2 * product_bound(lam, self.value_bound, self.schedule.max_value) < self.ring.p

    def choose_lambda(self, k):
        if self.fixed_lambda is not None:
            lam = self.fixed_lambda
        else:
            limit = (self.ring.p - 1) // (2 * (self.value_bound + self.schedule.max_value))
            if self.lambda_max is not None:
                limit = min(limit, self.lambda_max)
            if limit < 1:
                raise ConfigError(f"p={self.ring.p} too small for the data and watermark range")
            lam = sample_lambda(self.rng, limit)
        if lam.re == 0 or lam.im == 0:
            raise ConfigError("challenge factor needs nonzero real and imaginary parts")
        if not self._fits(lam):
            raise ConfigError(f"lambda={lam} can wrap around mod p for the configured range")
        self.lambdas[k] = lam
        return lam

    def challenge(self, k, counter=None):
        lam = self.choose_lambda(k)
        return elgamal.encrypt(lam, self.pub, rng=self.rng, counter=counter)

    def verify(self, k, ct, counter=None):
        try:
            mu = elgamal.decrypt(ct, self.priv, self.ring, counter)
        except MalformedCiphertextError:
            return Verdict.rejected(MALFORMED)
        delta = exact_div(centered_lift(mu, self.ring), self.lambdas[k])
        if delta is None:
            return Verdict.rejected(DIVISIBILITY_FAILURE)
        if delta.im != self.schedule.watermark_at(k):
            return Verdict.rejected(WATERMARK_MISMATCH)
        return Verdict.accepted(delta.re - self.data_offset, delta.im)


class EGSensor:
    def __init__(self, pub, schedule, data_bound, rng, data_offset=0):
        self.pub = pub
        self.ring = pub.ring
        self.schedule = schedule
        self.data_bound = data_bound
        self.data_offset = data_offset
        self.rng = rng

    def respond(self, k, d, challenge, counter=None):
        if abs(d) > self.data_bound:
            raise ConfigError(f"reading {d} outside the configured bound {self.data_bound}")
        delta = GaussianInt(d + self.data_offset, self.schedule.watermark_at(k))
        if not delta:
            raise ConfigError("d + i*w is zero; configure a data offset")
        own = elgamal.encrypt(delta, self.pub, rng=self.rng, counter=counter)
        return elgamal.ct_mul(challenge, own, self.ring)


def _parse_ct(payload):
    try:
        return elgamal.EGCiphertext.from_json(payload)
    except (KeyError, TypeError, ValueError):
        return None


def eg_round(dc, sensor, d, k, adversary=None):
    """Run one round and return its transcript.

    Bound violations raise ConfigError; detection outcomes are verdicts.
    """
    t = RoundTranscript(k, "eg", 1)
    net = Network(t, adversary)

    challenge = dc.challenge(k, t.dc)
    got = net.send(Message(k, "DC", "S1", "challenge", challenge.to_json()))
    challenge = _parse_ct(got.payload)
    if challenge is None:
        t.set_verdict(Verdict.rejected(MALFORMED))
        return t

    try:
        combined = sensor.respond(k, d, challenge, t.sensors[0])
    except DomainError:
        t.set_verdict(Verdict.rejected(MALFORMED))
        return t
    got = net.send(Message(k, "S1", "DC", "data", combined.to_json()))
    combined = _parse_ct(got.payload)
    if combined is None:
        t.set_verdict(Verdict.rejected(MALFORMED))
        return t

    t.set_verdict(dc.verify(k, combined, t.dc))
    return t
