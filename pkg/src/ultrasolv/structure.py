"""Normal structure: closures, chief series, O_pi, Hall subgroups, Frattini, abelian invariants."""

from __future__ import annotations

import random
from typing import Iterable

import numpy as np

from .certificates import ChainCertificate, ChiefSeriesRecord
from .core import (
    FiniteGroup,
    SubgroupMask,
    _classes,
    center,
    derived_subgroup,
    generate,
    identity_mask,
    normal_closure,
    pi_part,
    preimage,
    prime_divisors,
    quotient,
)
from .errors import CertificateError, InvalidParameter, InvariantsNotStrict, NotAbelian, NotPGroup, TrivialGroup

__all__ = [
    "ChiefSeriesRecord", "normal_closure", "minimal_normal_subgroups", "chief_series",
    "normal_subgroups", "o_pi", "o_pp_prime", "normal_hall", "frattini_pgroup",
    "omega_center", "abelian_invariants", "abelian_char_series", "is_p_group",
]


def _pi_number(n: int, pi: Iterable[int]) -> bool:
    pi = set(pi)
    return all(q in pi for q in prime_divisors(n))


def class_closures(G: FiniteGroup) -> list[SubgroupMask]:
    """Normal closure of each non-identity conjugacy class, deduplicated."""
    def compute():
        seen = {}
        for c in _classes(G)[1:]:
            N = generate(G, c)
            seen.setdefault(N.key, N)
        return sorted(seen.values(), key=lambda N: N.sort_key)
    return G.cached("class_closures", compute)


def minimal_normal_subgroups(G: FiniteGroup) -> list[SubgroupMask]:
    """All minimal normal subgroups, sorted by (order, least non-identity member)."""
    if G.order == 1:
        raise TrivialGroup("the trivial group has no minimal normal subgroups")
    closures = class_closures(G)
    return [N for N in closures if not any(M < N for M in closures)]


def chief_series(G: FiniteGroup, rng: random.Random | None = None) -> ChiefSeriesRecord:
    """Chief series built bottom-up through successive quotients.

    At each stage the minimal normal subgroup of the current quotient with the
    least (order, least member) is taken; with ``rng`` a random one is chosen
    instead.
    """
    if rng is None and "chief" in G._cache:
        return G._cache["chief"]
    steps = [identity_mask(G)]
    Q = G
    proj = None
    while Q.order > 1:
        mins = minimal_normal_subgroups(Q)
        N = rng.choice(mins) if rng is not None else mins[0]
        Q2, p2 = quotient(Q, N)
        images = p2.images if proj is None else p2.images[proj]
        steps.append(SubgroupMask(G, images == 0))
        Q, proj = Q2, images
    rec = ChiefSeriesRecord(steps)
    if rng is None:
        G._cache["chief"] = rec
    return rec


def normal_subgroups(G: FiniteGroup) -> list[SubgroupMask]:
    """Every normal subgroup: joins of conjugacy-class closures, plus the identity."""
    def compute():
        atoms = class_closures(G)
        found = {identity_mask(G).key: identity_mask(G)}
        queue = [identity_mask(G)]
        while queue:
            A = queue.pop()
            for C in atoms:
                if C <= A:
                    continue
                J = generate(G, C.gens, base=A)
                if J.key not in found:
                    found[J.key] = J
                    queue.append(J)
        return sorted(found.values(), key=lambda N: N.sort_key)
    return list(G.cached("normal_subgroups", compute))


def o_pi(G: FiniteGroup, pi: Iterable[int]) -> SubgroupMask:
    """Largest normal pi-subgroup.

    A normal pi-subgroup is the join of the class closures it contains, each a
    pi-group, and a join of normal pi-subgroups is a pi-group; so the result is
    the join of all class closures of pi-order.
    """
    pi = frozenset(pi)
    def compute():
        gens: list[int] = []
        for N in class_closures(G):
            if _pi_number(N.order, pi):
                gens.extend(N.gens)
        return generate(G, gens)
    return G.cached(("o_pi", pi), compute)


def p_complement_primes(G: FiniteGroup, p: int) -> set[int]:
    return set(prime_divisors(G.order)) - {p}


def o_pp_prime(G: FiniteGroup, p: int) -> SubgroupMask:
    """Preimage of ``O_{p'}(G / O_p(G))``."""
    Op = o_pi(G, {p})
    Q, proj = quotient(G, Op)
    K = o_pi(Q, p_complement_primes(Q, p))
    return preimage(proj, K)


def normal_hall(G: FiniteGroup, pi: Iterable[int]) -> SubgroupMask | None:
    """The normal Hall pi-subgroup, or None if there is none."""
    pi = set(pi)
    O = o_pi(G, pi)
    return O if O.order == pi_part(G.order, pi) else None


def sylow_if_normal(G: FiniteGroup, p: int) -> SubgroupMask | None:
    return normal_hall(G, {p})


def is_p_group(G: FiniteGroup, p: int) -> bool:
    return _pi_number(G.order, {p})


def _require_p_group(P: FiniteGroup, p: int) -> None:
    if not is_p_group(P, p):
        raise NotPGroup(f"group of order {P.order} is not a {p}-group")


def frattini_pgroup(P: FiniteGroup, p: int) -> SubgroupMask:
    """Frattini subgroup of a p-group: generated by commutators and p-th powers."""
    _require_p_group(P, p)
    return P.cached(("frattini", p), lambda: generate(
        P, np.unique(P.powers(p)).tolist(), base=derived_subgroup(P)))


def omega_center(P: FiniteGroup, p: int) -> SubgroupMask:
    """Central elements of order dividing p."""
    _require_p_group(P, p)
    return SubgroupMask(P, center(P).members & (P.powers(p) == 0))


def _greedy_complement(G: FiniteGroup, cur: SubgroupMask, C: SubgroupMask) -> SubgroupMask:
    # in an abelian p-group, a subgroup maximal among those meeting a cyclic
    # subgroup of maximal order trivially is a complement to it
    K = identity_mask(G)
    target = cur.order // C.order
    for y in cur.elements:
        if K.order == target:
            break
        if K.members[y] or C.members[y]:
            continue
        K2 = generate(G, [int(y)], base=K)
        if np.count_nonzero(K2.members & C.members) == 1:
            K = K2
    if K.order != target:
        raise InvalidParameter("complement search failed")
    return K


def abelian_invariants(G: FiniteGroup) -> dict[int, list[int]]:
    """Exponents of the cyclic factors of each Sylow subgroup, ascending.

    ``{p: [a_1, ..., a_n]}`` with ``a_1 <= ... <= a_n``: the Sylow
    p-subgroup is ``C_{p^a_1} x ... x C_{p^a_n}``.  Found by splitting off a
    cyclic subgroup of maximal order and recursing into a complement.
    """
    if not G.is_abelian:
        raise NotAbelian("abelian invariants need an abelian group")
    out: dict[int, list[int]] = {}
    for p in prime_divisors(G.order):
        orders = G.element_order
        pmask = np.array([_pi_number(int(o), {p}) for o in orders])
        cur = SubgroupMask(G, pmask)
        exps = []
        while cur.order > 1:
            el = cur.elements
            x = int(el[np.argmax(orders[el])])
            C = generate(G, [x])
            a = 0
            while p ** a < C.order:
                a += 1
            exps.append(a)
            cur = _greedy_complement(G, cur, C)
        out[p] = sorted(exps)
    return out


def _agemo(G: FiniteGroup, k: int) -> SubgroupMask:
    """Subgroup of k-th powers (a subgroup since G is abelian)."""
    return generate(G, np.unique(G.powers(k)).tolist())


def _omega(G: FiniteGroup, within: SubgroupMask, k: int) -> np.ndarray:
    return within.members & (G.powers(k) == 0)


def abelian_char_series(P: FiniteGroup, p: int, autos=None) -> ChainCertificate:
    """Characteristic series with factors of order p for an abelian p-group
    whose cyclic factors have pairwise distinct orders.

    Between ``Q = P^(p^j)`` and ``Phi(Q) = P^(p^(j+1))`` the steps are
    ``Omega_b(Q) Phi(Q)`` for the exponents ``b`` of ``Q``.
    """
    _require_p_group(P, p)
    if not P.is_abelian:
        raise NotAbelian("group is not abelian")
    exps = abelian_invariants(P).get(p, [])
    if any(a == b for a, b in zip(exps, exps[1:])):
        raise InvariantsNotStrict(f"cyclic factor exponents {exps} are not strictly increasing")
    steps = {identity_mask(P).key: identity_mask(P)}
    j = 0
    while True:
        Q = _agemo(P, p ** j)
        if Q.order == 1:
            break
        below = _agemo(P, p ** (j + 1))
        for b in sorted({a - j for a in exps if a > j}):
            S = generate(P, np.flatnonzero(_omega(P, Q, p ** b)).tolist(), base=below)
            steps.setdefault(S.key, S)
        j += 1
    ordered = sorted(steps.values(), key=lambda S: S.order)
    witnesses = [int(np.flatnonzero(K.members & ~H.members)[0]) for H, K in zip(ordered, ordered[1:])]
    kind = "none"
    if autos is not None:
        images = autos.images
        for S in ordered:
            if not S.members[images[:, S.elements]].all():
                raise CertificateError("a step of the abelian series is not invariant")
        kind = autos.kind
    return ChainCertificate(ordered, witnesses, kind, autos)


def chief_factor_orders(G: FiniteGroup) -> list[int]:
    return chief_series(G).factor_orders
