"""Certificates as plain JSON, and their re-validation without re-searching.

Subgroups are stored as sorted element lists.  Invariance maps are stored as
image arrays; a complete automorphism list is replaced by a generating set.
A chief series of the automorphism group is stored through automorphism
generators: the group is rebuilt by closure and each step is the subgroup
generated by its listed maps.
"""

from __future__ import annotations

import numpy as np

from ..certificates import (
    ChainCertificate,
    ChiefSeriesRecord,
    DecompositionCertificate,
    DerivedSeriesRecord,
    HallCertificate,
    StrictPClosedCertificate,
    check_certificate,
    check_chief_series,
)
from ..classify import Verdict
from ..core import FiniteGroup, GroupMap, PermSpec, SubgroupMask, generate, permutation_closure, subgroup_as_group, table_from_permutations
from ..errors import CertificateError, GroupError
from ..morphisms import AUTOMORPHISMS, MapSet, automorphism_generators

MAX_STORED_MAPS = 64


def _elements(H: SubgroupMask) -> list[int]:
    return H.elements.tolist()


def _mask(G: FiniteGroup, elements) -> SubgroupMask:
    m = np.zeros(G.order, dtype=bool)
    try:
        m[np.asarray(elements, dtype=np.int64)] = True
    except (IndexError, ValueError):
        raise CertificateError("stored subgroup lists an element outside the group") from None
    return SubgroupMask(G, m)


def _maps_to_json(maps) -> list[list[int]]:
    if maps is None or not maps.maps:
        return []
    if maps.kind == AUTOMORPHISMS and maps.complete and len(maps) > MAX_STORED_MAPS:
        maps = automorphism_generators(maps.group)
    return [m.images.tolist() for m in maps.maps]


def chain_to_json(cert: ChainCertificate) -> dict:
    return {"type": "chain", "kind": cert.invariance_kind,
            "steps": [_elements(H) for H in cert.steps],
            "witnesses": [int(w) for w in cert.witnesses],
            "maps": _maps_to_json(cert.maps)}


def certificate_to_json(verdict: Verdict) -> dict | None:
    cert = verdict.certificate
    if cert is None:
        return None
    if isinstance(cert, ChainCertificate):
        return chain_to_json(cert)
    if isinstance(cert, ChiefSeriesRecord):
        if verdict.group is None:
            return {"type": "chief", "steps": [_elements(H) for H in cert.steps]}
        A, maps = verdict.group, verdict.element_maps
        return {"type": "aut_chief", "aut_order": A.order,
                "aut_generators": [maps[g].tolist() for g in A.gens],
                "steps": [[maps[g].tolist() for g in H.gens] for H in cert.steps]}
    if isinstance(cert, DerivedSeriesRecord):
        return {"type": "derived", "steps": [_elements(H) for H in cert.steps]}
    if isinstance(cert, DecompositionCertificate):
        return {"type": "decomposition", "odd_part": _elements(cert.odd_part),
                "klein": _elements(cert.klein),
                "odd_chain": chain_to_json(cert.odd_chain) if cert.odd_chain else None}
    if isinstance(cert, HallCertificate):
        return {"type": "hall", "subgroup": _elements(cert.subgroup), "pi": sorted(cert.pi)}
    if isinstance(cert, StrictPClosedCertificate):
        return {"type": "strict_p_closed", "sylow": _elements(cert.sylow), "p": cert.p}
    raise CertificateError(f"cannot serialize {type(cert).__name__}")


def verdict_to_json(verdict: Verdict, with_certificate: bool = True) -> dict:
    out = {"value": verdict.value, "skipped": verdict.skipped, "note": verdict.note}
    if with_certificate and verdict.value:
        out["certificate"] = certificate_to_json(verdict)
    return out


def _chain_from_json(G: FiniteGroup, data: dict) -> ChainCertificate:
    maps = None
    if data["kind"] != "none":
        gm = [GroupMap(G, G, np.asarray(im, dtype=np.int64)) for im in data["maps"]]
        for m in gm:
            if not m.is_homomorphism():
                raise CertificateError("a stored invariance map is not an endomorphism")
            if data["kind"] == AUTOMORPHISMS and not m.is_bijective():
                raise CertificateError("a stored automorphism is not bijective")
        maps = MapSet(G, gm, data["kind"], complete=False)
    steps = [_mask(G, s) for s in data["steps"]]
    return ChainCertificate(steps, list(data["witnesses"]), data["kind"], maps)


def _check_aut_chief(G: FiniteGroup, data: dict) -> None:
    gens = data["aut_generators"]
    for im in gens:
        if not GroupMap(G, G, np.asarray(im, dtype=np.int64)).is_automorphism():
            raise CertificateError("a stored automorphism generator is not an automorphism")
    try:
        elems, _ = permutation_closure(PermSpec(G.order, gens), cap=int(data["aut_order"]) + 1)
    except GroupError as exc:
        raise CertificateError(f"automorphism group does not rebuild: {exc}") from None
    if len(elems) != data["aut_order"]:
        raise CertificateError("rebuilt automorphism group has the wrong order")
    A = FiniteGroup(table_from_permutations(elems))
    index = {tuple(row): i for i, row in enumerate(elems.tolist())}
    steps = []
    for step in data["steps"]:
        try:
            steps.append(generate(A, [index[tuple(im)] for im in step]))
        except KeyError:
            raise CertificateError("a step generator lies outside the automorphism group") from None
    check_chief_series(A, ChiefSeriesRecord(steps), require_prime=True)


def check_serialized(G: FiniteGroup, data: dict, require_prime: bool = False) -> None:
    """Re-validate a serialized certificate; raises CertificateError."""
    try:
        _check_serialized(G, data, require_prime)
    except CertificateError:
        raise
    except (GroupError, ArithmeticError, KeyError, TypeError, ValueError) as exc:
        raise CertificateError(f"malformed certificate: {exc}") from None


def _check_serialized(G: FiniteGroup, data: dict, require_prime: bool) -> None:
    kind = data.get("type")
    if kind == "chain":
        check_certificate(G, _chain_from_json(G, data))
    elif kind == "chief":
        rec = ChiefSeriesRecord([_mask(G, s) for s in data["steps"]])
        check_chief_series(G, rec, require_prime=require_prime)
    elif kind == "aut_chief":
        _check_aut_chief(G, data)
    elif kind == "derived":
        check_certificate(G, DerivedSeriesRecord([_mask(G, s) for s in data["steps"]]))
    elif kind == "decomposition":
        H = _mask(G, data["odd_part"])
        chain = None
        if data["odd_chain"] is not None:
            HG, _ = subgroup_as_group(H)
            chain = _chain_from_json(HG, data["odd_chain"])
        check_certificate(G, DecompositionCertificate(H, _mask(G, data["klein"]), chain))
    elif kind == "hall":
        check_certificate(G, HallCertificate(_mask(G, data["subgroup"]), frozenset(data["pi"])))
    elif kind == "strict_p_closed":
        check_certificate(G, StrictPClosedCertificate(_mask(G, data["sylow"]), int(data["p"])))
    else:
        raise CertificateError(f"unknown certificate type {kind!r}")
