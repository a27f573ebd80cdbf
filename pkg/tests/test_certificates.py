"""Every true verdict re-checks, and every single-element corruption of a stored subgroup is caught."""

import copy

import numpy as np
import pytest

from ultrasolv.certificates import (
    ChainCertificate,
    ChiefSeriesRecord,
    DecompositionCertificate,
    DerivedSeriesRecord,
    HallCertificate,
    StrictPClosedCertificate,
    check_certificate,
)
from ultrasolv.classify import (
    aut_supersolvable,
    condition2,
    has_sylow_tower_tail,
    is_fully_solvable,
    is_solvable,
    is_strictly_p_closed,
    is_supersolvable,
    is_ultrasolvable,
)
from ultrasolv.core import SubgroupMask, abelian_of_type, cyclic, dihedral, direct_product, klein_four, symmetric
from ultrasolv.errors import CertificateError
from ultrasolv.harness.serialize import certificate_to_json, check_serialized
from ultrasolv.morphisms import enumerate_automorphisms

C6xC2 = direct_product(cyclic(6), cyclic(2))
C3xS3 = direct_product(cyclic(3), symmetric(3))


def cases():
    D8 = dihedral(4)
    C2xC4 = abelian_of_type([2, 4])
    S4 = symmetric(4)
    S3 = symmetric(3)
    return [
        ("ultra D8", D8, is_ultrasolvable(D8), {}),
        ("full C2xC4", C2xC4, is_fully_solvable(C2xC4), {}),
        ("chief C3xS3", C3xS3, is_supersolvable(C3xS3), {"require_prime": True}),
        ("derived S4", S4, is_solvable(S4), {}),
        ("decomposition C6xC2", C6xC2, condition2(C6xC2), {}),
        ("hall C3xS3", C3xS3, has_sylow_tower_tail(C3xS3, 3), {}),
        ("strict S3", S3, is_strictly_p_closed(S3, 3), {}),
        ("aut chief D8", D8, aut_supersolvable(D8), {"require_prime": True}),
    ]


CASES = cases()
IDS = [c[0] for c in CASES]


def mask_slots(cert):
    """(getter, setter) pairs for every subgroup mask held by a certificate."""
    if isinstance(cert, (ChainCertificate, ChiefSeriesRecord, DerivedSeriesRecord)):
        return [(lambda c, i=i: c.steps[i], lambda c, m, i=i: c.steps.__setitem__(i, m))
                for i in range(len(cert.steps))]
    if isinstance(cert, DecompositionCertificate):
        return [(lambda c: c.odd_part, lambda c, m: setattr(c, "odd_part", m)),
                (lambda c: c.klein, lambda c, m: setattr(c, "klein", m))]
    if isinstance(cert, HallCertificate):
        return [(lambda c: c.subgroup, lambda c, m: setattr(c, "subgroup", m))]
    if isinstance(cert, StrictPClosedCertificate):
        return [(lambda c: c.sylow, lambda c, m: setattr(c, "sylow", m))]
    raise AssertionError(type(cert))


@pytest.mark.parametrize("name,G,verdict,kwargs", CASES, ids=IDS)
def test_genuine_certificate_passes(name, G, verdict, kwargs):
    assert verdict.value
    check_certificate(verdict.group or G, verdict.certificate, **kwargs)
    check_serialized(G, certificate_to_json(verdict), **kwargs)


@pytest.mark.parametrize("name,G,verdict,kwargs", CASES, ids=IDS)
def test_every_single_bit_flip_is_detected(name, G, verdict, kwargs):
    host = verdict.group or G
    flips = 0
    for get, put in mask_slots(verdict.certificate):
        H = get(verdict.certificate)
        for x in range(host.order):
            bad = copy.copy(verdict.certificate)
            if hasattr(bad, "steps"):
                bad.steps = list(bad.steps)
            m = H.members.copy()
            m[x] = not m[x]
            put(bad, SubgroupMask(host, m))
            with pytest.raises(CertificateError):
                check_certificate(host, bad, **kwargs)
            flips += 1
    assert flips > 0


def _stored_lists(data):
    """Paths to every element list in a serialized certificate."""
    t = data["type"]
    if t in ("chain", "chief", "derived"):
        return [("steps", i) for i in range(len(data["steps"]))]
    if t == "decomposition":
        out = [("odd_part",), ("klein",)]
        if data["odd_chain"]:
            out += [("odd_chain", "steps", i) for i in range(len(data["odd_chain"]["steps"]))]
        return out
    if t == "hall":
        return [("subgroup",)]
    if t == "strict_p_closed":
        return [("sylow",)]
    return []


def _get(data, path):
    for k in path:
        data = data[k]
    return data


@pytest.mark.parametrize("name,G,verdict,kwargs", [c for c in CASES if c[0] != "aut chief D8"],
                         ids=[i for i in IDS if i != "aut chief D8"])
def test_serialized_flips_are_detected(name, G, verdict, kwargs):
    data = certificate_to_json(verdict)
    for path in _stored_lists(data):
        universe = G.order
        if path[0] == "odd_chain":
            universe = len(data["odd_part"])
        for x in range(universe):
            bad = copy.deepcopy(data)
            parent, key = _get(bad, path[:-1]), path[-1]
            elems = set(parent[key])
            elems ^= {x}
            parent[key] = sorted(elems)
            with pytest.raises(CertificateError):
                check_serialized(G, bad, **kwargs)


def test_serialized_aut_chief_corruption():
    G = dihedral(4)
    data = certificate_to_json(aut_supersolvable(G))
    assert data["type"] == "aut_chief"
    check_serialized(G, data)
    # swapping two images breaks the homomorphism property
    bad = copy.deepcopy(data)
    im = bad["aut_generators"][0]
    im[1], im[2] = im[2], im[1]
    with pytest.raises(CertificateError):
        check_serialized(G, bad)
    # dropping the generators of a middle step changes its order
    bad = copy.deepcopy(data)
    bad["steps"][1] = []
    with pytest.raises(CertificateError):
        check_serialized(G, bad)
    bad = copy.deepcopy(data)
    bad["aut_order"] += 1
    with pytest.raises(CertificateError):
        check_serialized(G, bad)


def test_witness_and_map_corruption():
    G = dihedral(4)
    v = is_ultrasolvable(G)
    bad = copy.copy(v.certificate)
    bad.witnesses = [0] + list(bad.witnesses[1:])
    with pytest.raises(CertificateError):
        check_certificate(G, bad)
    data = certificate_to_json(v)
    data["maps"][0] = list(range(G.order))[::-1]
    with pytest.raises(CertificateError):
        check_serialized(G, data)


def test_klein_chain_is_not_invariant():
    # a valid cyclic series of V that is not characteristic
    V = klein_four()
    good = is_ultrasolvable(dihedral(4)).certificate
    steps = [SubgroupMask(V, np.array(m, dtype=bool)) for m in ([1, 0, 0, 0], [1, 1, 0, 0], [1, 1, 1, 1])]
    cert = ChainCertificate(steps, [1, 2], "automorphisms", enumerate_automorphisms(V))
    with pytest.raises(CertificateError):
        check_certificate(V, cert)
    assert good.invariance_kind == "automorphisms"


def test_malformed_serialized_data():
    G = cyclic(4)
    with pytest.raises(CertificateError):
        check_serialized(G, {"type": "chain", "kind": "none", "steps": [[0], [0, 9]], "witnesses": [1], "maps": []})
    with pytest.raises(CertificateError):
        check_serialized(G, {"type": "mystery"})
    with pytest.raises(CertificateError):
        check_serialized(G, {"type": "hall"})


def test_wrong_group_is_rejected():
    G, H = dihedral(4), dihedral(4)
    v = is_ultrasolvable(G)
    with pytest.raises(CertificateError):
        check_certificate(H, v.certificate)
