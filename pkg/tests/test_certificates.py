"""Certificate serialization round trips and independent replay."""

import dataclasses
import json

import pytest

import brieskorn as bk
from brieskorn.certificates import (
    Certificate,
    RuleId,
    Status,
    Witness,
    certificate_from_dict,
    certificate_from_json,
    certificate_id,
    certificate_to_json,
)
from brieskorn.errors import CertificateError


def classified(entries):
    cert = bk.classify(entries).certificate
    assert cert is not None
    return cert


SAMPLES = [
    (2, 3, 3, 2),
    (10, 3, 3, 4),
    (2, 5, 7, 3, 3, 3),
    (8, 8, 8, 8),
    (4, 4, 4, 12),
    (2, 3, 7),
    (2, 3, 5),
    (7, 5, 6, 8),
    (5, 10, 15, 20, 25),
]


class TestSerialization:
    @pytest.mark.parametrize("entries", SAMPLES)
    def test_round_trip_is_lossless(self, entries):
        cert = classified(entries)
        parsed = certificate_from_json(certificate_to_json(cert))
        assert parsed == cert
        # and stable under a second round trip
        assert certificate_to_json(parsed) == certificate_to_json(cert)

    def test_schema_field_names(self):
        payload = classified((2, 5, 7, 3, 3, 3)).to_dict()
        assert set(payload) == {"rule", "tuple", "permutation", "witness", "children", "status"}
        assert payload["witness"] is not None and "subsets" in payload["witness"]
        child = payload["children"][0]
        assert set(child) == {"rule", "tuple", "permutation", "witness", "children", "status"}

    def test_certificate_id_is_content_derived(self):
        cert = classified((10, 3, 3, 4))
        assert certificate_id(cert) == certificate_id(classified((10, 3, 3, 4)))
        assert certificate_id(cert) != certificate_id(classified((2, 3, 3, 2)))

    def test_parser_rejects_malformed_payloads(self):
        good = classified((2, 3, 3, 2)).to_dict()
        for mutate in (
            lambda d: d.pop("rule"),
            lambda d: d.update(rule="NO_SUCH_RULE"),
            lambda d: d.update(status="MAYBE"),
            lambda d: d.update(tuple=[2, "3"]),
            lambda d: d.update(children="nope"),
        ):
            broken = json.loads(json.dumps(good))
            mutate(broken)
            with pytest.raises(CertificateError):
                certificate_from_dict(broken)

    def test_parser_rejects_invalid_json(self):
        with pytest.raises(CertificateError):
            certificate_from_json("{not json")


class TestReplay:
    @pytest.mark.parametrize("entries", SAMPLES)
    def test_classifier_output_replays(self, entries):
        assert bk.replay(classified(entries))

    def test_replay_after_round_trip(self):
        cert = classified((2, 5, 7, 3, 3, 3))
        assert bk.replay(certificate_from_json(certificate_to_json(cert)))

    def test_handcrafted_transfer_replays(self):
        sibling = classified((4, 4, 4, 12))
        cert = Certificate(
            RuleId.TRANSFER,
            (4, 4, 4, 24),
            Status.RIGID,
            (1, 2, 3, 4),
            Witness(index=4, exponents=(4, 4, 4, 4), sibling=(4, 4, 4, 12)),
            (sibling,),
        )
        assert bk.replay(cert)

    def test_tampered_witness_index_fails(self):
        cert = classified((4, 4, 4, 12))
        assert cert.rule is RuleId.DESCEND
        bad = dataclasses.replace(cert, witness=dataclasses.replace(cert.witness, index=2))
        assert not bk.replay(bad)

    def test_tampered_status_fails(self):
        cert = classified((10, 3, 3, 4))
        bad = dataclasses.replace(cert, status=Status.STABLY_RIGID)
        assert not bk.replay(bad)

    def test_tampered_tuple_fails(self):
        cert = classified((10, 3, 3, 4))
        bad = dataclasses.replace(cert, exponents=(10, 3, 3, 6))
        assert not bk.replay(bad)

    def test_tampered_child_fails_with_path(self):
        cert = classified((2, 5, 7, 3, 3, 3))
        children = list(cert.children)
        children[1] = dataclasses.replace(children[1], exponents=(5, 3, 3, 9))
        bad = dataclasses.replace(cert, children=tuple(children))
        with pytest.raises(CertificateError) as excinfo:
            bk.verify_certificate(bad)
        assert "children[1]" in excinfo.value.path

    def test_missing_child_fails(self):
        cert = classified((2, 5, 7, 3, 3, 3))
        bad = dataclasses.replace(cert, children=cert.children[:2])
        assert not bk.replay(bad)

    def test_unknown_status_never_replays(self):
        cert = Certificate(
            RuleId.NOT_IN_TN, (2, 3, 3, 2), Status.UNKNOWN, (1, 2, 3, 4)
        )
        assert not bk.replay(cert)

    def test_wrong_rule_claim_fails(self):
        # claims the equal-exponent criterion for a tuple below the length bound
        cert = Certificate(
            RuleId.EQUAL_EXPONENTS, (3, 3, 3, 3), Status.RIGID, (1, 2, 3, 4)
        )
        assert not bk.replay(cert)

    def test_transfer_requires_shared_tuple_below_both(self):
        sibling = classified((4, 4, 4, 12))
        cert = Certificate(
            RuleId.TRANSFER,
            (4, 4, 4, 24),
            Status.RIGID,
            (1, 2, 3, 4),
            # 4,4,4,5 is not below (4,4,4,12) at coordinate 4 (5 does not divide 12)
            Witness(index=4, exponents=(4, 4, 4, 5), sibling=(4, 4, 4, 12)),
            (sibling,),
        )
        assert not bk.replay(cert)
