import pytest

from hidden.protocols import attack, run_scenario
from hidden.protocols.attacks import SCENARIOS, make_adversary
from hidden.protocols.scenario import BASELINES

DETECTION_REASONS = {"watermark mismatch", "divisibility failure", "symmetric-auth failure",
                     "malformed ciphertext"}


@pytest.mark.parametrize("protocol", ["eg", "aggp"])
@pytest.mark.parametrize("scenario", [s for s in SCENARIOS if s != "none"])
def test_attacks_rejected(protocol, scenario):
    for seed in range(8):
        v = attack(scenario, protocol, seed=seed).verdict
        assert not v.ok and v.reason in DETECTION_REASONS, (seed, v)


@pytest.mark.parametrize("protocol", ["eg", "aggp"])
def test_control_accepted(protocol):
    for seed in range(8):
        assert attack("none", protocol, seed=seed).verdict.ok


@pytest.mark.parametrize("protocol", ["eg", "aggp"])
def test_only_attacked_round_fails(protocol):
    cfg = dict(BASELINES[protocol], seed=4, attack={"type": "tamper", "at": 2})
    ok = [t.verdict.ok for t in run_scenario(cfg).rounds]
    assert ok == [True, False, True]


def test_replay_with_fixed_factor_is_watermark_mismatch():
    t = attack("replay", "eg", seed=0, **{"lambda": "12345+6789i"})
    assert t.verdict.reason == "watermark mismatch"


def test_replay_with_fresh_factor_fails_division():
    assert attack("replay", "eg", seed=0).verdict.reason == "divisibility failure"


def test_forgery_with_correct_division_still_needs_watermark():
    # the EG forger reuses the encrypted challenge, so division succeeds and
    # only the watermark guess stands between it and acceptance
    reasons = {attack("false_injection", "eg", seed=s).verdict.reason for s in range(8)}
    assert reasons == {"watermark mismatch"}


@pytest.mark.parametrize("protocol,target", [
    ("eg", "challenge.psi1.re"),
    ("eg", "challenge.psi2.im"),
    ("eg", "data.psi1.im"),
    ("aggp", "partial.cR"),
    ("aggp", "partial.cI"),
    ("aggp", "aggregate.cI"),
    ("aggp", "challenge.blob"),
])
def test_tamper_targets(protocol, target):
    for seed in range(5):
        v = attack({"type": "tamper", "target": target}, protocol, seed=seed).verdict
        assert not v.ok, (seed, v)


def test_blob_tamper_is_auth_failure():
    v = attack({"type": "tamper", "target": "challenge.blob"}, "aggp", seed=0).verdict
    assert v.reason == "symmetric-auth failure"


def test_unknown_attack():
    with pytest.raises(ValueError):
        make_adversary("ddos", "eg", None, None, 16, 10)
    assert make_adversary({"type": "none"}, "eg", None, None, 16, 10) is None
