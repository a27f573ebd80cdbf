"""Witness records and their independent checker.

The checker re-derives everything by brute force from the multiplication
table (``ultrasolv.core`` only); it never calls the searches that produced the
certificates.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .core import FiniteGroup, SubgroupMask, generate, is_prime, is_subgroup_mask, subgroup_as_group
from .errors import CertificateError


@dataclass
class ChainCertificate:
    """A series ``1 = H_0 < ... < H_k = G`` with cyclic factors.

    ``witnesses[i]`` is an element whose coset generates ``H_{i+1}/H_i``.
    ``maps`` holds the acting maps (a MapSet) when ``invariance_kind`` is
    "automorphisms" or "endomorphisms".
    """

    steps: list[SubgroupMask]
    witnesses: list[int]
    invariance_kind: str = "none"
    maps: object = None

    @property
    def factor_orders(self) -> list[int]:
        return [b.order // a.order if a.order else 0 for a, b in zip(self.steps, self.steps[1:])]

    def __len__(self):
        return len(self.steps) - 1


@dataclass
class ChiefSeriesRecord:
    """A series of subgroups normal in the whole group."""

    steps: list[SubgroupMask]
    factor_orders: list[int] = field(default_factory=list)

    def __post_init__(self):
        if not self.factor_orders:
            # an empty mask is invalid; leave it for the checker to reject
            self.factor_orders = [b.order // a.order if a.order else 0
                                  for a, b in zip(self.steps, self.steps[1:])]


@dataclass
class DerivedSeriesRecord:
    """``G = D_0 > D_1 > ...`` with ``D_{i+1} = [D_i, D_i]``, ending where it stabilizes."""

    steps: list[SubgroupMask]


@dataclass
class DecompositionCertificate:
    """``G = H x V`` with ``V`` a Klein four group and ``H`` of odd order.

    ``odd_chain`` is a characteristic cyclic series of ``H`` taken as a group
    in its own right (elements in increasing parent order).
    """

    odd_part: SubgroupMask
    klein: SubgroupMask
    odd_chain: ChainCertificate | None


@dataclass
class HallCertificate:
    """A normal subgroup whose order is the full pi-part of the group order."""

    subgroup: SubgroupMask
    pi: frozenset


@dataclass
class StrictPClosedCertificate:
    """Normal Sylow p-subgroup with abelian quotient of exponent dividing p - 1."""

    sylow: SubgroupMask
    p: int


def _fail(msg: str):
    raise CertificateError(msg)


def _normal_in(G: FiniteGroup, N: SubgroupMask, K: SubgroupMask) -> bool:
    T, inv = G.table, G.inverse
    ks, ns = K.elements, N.elements
    conj = T[T[np.ix_(inv[ks], ns)], ks[:, None]]
    return bool(N.members[conj].all())


def check_chain(G: FiniteGroup, cert: ChainCertificate) -> None:
    steps = cert.steps
    if not steps or steps[0].order != 1 or not steps[0].members[0]:
        _fail("series does not start at the trivial subgroup")
    if steps[-1].order != G.order:
        _fail("series does not end at the whole group")
    if len(cert.witnesses) != len(steps) - 1:
        _fail("wrong number of cyclic witnesses")
    for H in steps:
        if H.parent is not G or not is_subgroup_mask(G, H.members):
            _fail("a step is not a subgroup")
    images = None
    if cert.invariance_kind != "none":
        if cert.maps is None:
            _fail("invariant series without maps")
        images = np.stack([m.images for m in cert.maps.maps]) if cert.maps.maps else None
    for i, (H, K) in enumerate(zip(steps, steps[1:])):
        if np.any(H.members & ~K.members) or H.order >= K.order:
            _fail(f"step {i} is not a proper inclusion")
        if not _normal_in(G, H, K):
            _fail(f"step {i} is not normal in the next step")
        w = int(cert.witnesses[i])
        if not K.members[w]:
            _fail(f"witness {i} lies outside its step")
        span = generate(G, H.elements.tolist() + [w])
        if not np.array_equal(span.members, K.members):
            _fail(f"factor {i} is not generated by its witness")
    if images is not None:
        for i, H in enumerate(steps):
            if not H.members[images[:, H.elements]].all():
                _fail(f"step {i} is not invariant under the maps")


def check_chief_series(G: FiniteGroup, rec: ChiefSeriesRecord, require_prime: bool = False) -> None:
    steps = rec.steps
    if not steps or steps[0].order != 1 or steps[-1].order != G.order:
        _fail("series must run from the trivial subgroup to the whole group")
    full = SubgroupMask(G, np.ones(G.order, dtype=bool))
    for H in steps:
        if H.parent is not G or not is_subgroup_mask(G, H.members):
            _fail("a step is not a subgroup")
        if not _normal_in(G, H, full):
            _fail("a step is not normal in the group")
    for i, (H, K) in enumerate(zip(steps, steps[1:])):
        if np.any(H.members & ~K.members) or H.order >= K.order:
            _fail(f"step {i} is not a proper inclusion")
        if rec.factor_orders[i] != K.order // H.order:
            _fail(f"recorded factor order {i} is wrong")
        if require_prime and not is_prime(K.order // H.order):
            _fail(f"factor {i} does not have prime order")


def check_derived_series(G: FiniteGroup, rec: DerivedSeriesRecord, require_trivial: bool = True) -> None:
    steps = rec.steps
    if not steps or steps[0].order != G.order:
        _fail("derived series must start at the whole group")
    T, inv = G.table, G.inverse
    for H, K in zip(steps, steps[1:]):
        hs = H.elements
        comms = T[T[np.ix_(inv[hs], inv[hs])], T[np.ix_(hs, hs)]]
        span = generate(G, np.unique(comms))
        if not np.array_equal(span.members, K.members):
            _fail("a term is not the commutator subgroup of the previous one")
    if require_trivial and steps[-1].order != 1:
        _fail("derived series does not reach the trivial subgroup")


def check_decomposition(G: FiniteGroup, cert: DecompositionCertificate) -> None:
    H, V = cert.odd_part, cert.klein
    for X in (H, V):
        if X.parent is not G or not is_subgroup_mask(G, X.members):
            _fail("a factor is not a subgroup")
    if V.order != 4 or np.any(G.element_order[V.elements] > 2):
        _fail("second factor is not a Klein four group")
    if H.order % 2 == 0 or H.order * 4 != G.order:
        _fail("first factor does not have odd order |G|/4")
    if np.count_nonzero(H.members & V.members) != 1:
        _fail("factors intersect nontrivially")
    T = G.table
    hs, vs = H.elements, V.elements
    if not np.array_equal(T[np.ix_(hs, vs)], T[np.ix_(vs, hs)].T):
        _fail("factors do not commute elementwise")
    if cert.odd_chain is not None:
        HG, _ = subgroup_as_group(H)
        chain = cert.odd_chain
        if chain.steps and chain.steps[0].parent.order != HG.order:
            _fail("odd-part chain belongs to a different group")
        check_chain(chain.steps[0].parent, chain)


def _pi_part(n: int, pi) -> int:
    out = 1
    for q in pi:
        while n % q == 0:
            n //= q
            out *= q
    return out


def check_hall(G: FiniteGroup, cert: HallCertificate) -> None:
    H = cert.subgroup
    if H.parent is not G or not is_subgroup_mask(G, H.members):
        _fail("Hall candidate is not a subgroup")
    if H.order != _pi_part(G.order, cert.pi):
        _fail("Hall candidate does not have the full pi-part as order")
    full = SubgroupMask(G, np.ones(G.order, dtype=bool))
    if not _normal_in(G, H, full):
        _fail("Hall candidate is not normal")


def check_strict_p_closed(G: FiniteGroup, cert: StrictPClosedCertificate) -> None:
    check_hall(G, HallCertificate(cert.sylow, frozenset({cert.p})))
    P, T, inv = cert.sylow, G.table, G.inverse
    ar = np.arange(G.order)
    comms = T[T[np.ix_(inv, inv)], T]
    if not P.members[comms].all():
        _fail("quotient by the Sylow subgroup is not abelian")
    power = np.zeros(G.order, dtype=np.int64)
    for _ in range(cert.p - 1):
        power = T[power, ar]
    if not P.members[power].all():
        _fail("quotient exponent does not divide p - 1")


def check_certificate(G: FiniteGroup, cert, **kwargs) -> None:
    """Dispatch on certificate type; raises CertificateError on failure."""
    if isinstance(cert, ChainCertificate):
        check_chain(G, cert)
    elif isinstance(cert, ChiefSeriesRecord):
        check_chief_series(G, cert, **kwargs)
    elif isinstance(cert, DerivedSeriesRecord):
        check_derived_series(G, cert)
    elif isinstance(cert, DecompositionCertificate):
        check_decomposition(G, cert)
    elif isinstance(cert, HallCertificate):
        check_hall(G, cert)
    elif isinstance(cert, StrictPClosedCertificate):
        check_strict_p_closed(G, cert)
    else:
        _fail(f"unknown certificate type {type(cert).__name__}")
