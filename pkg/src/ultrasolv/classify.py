"""Solvability predicates and the invariant cyclic-series search."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

import numpy as np

from .certificates import (
    ChainCertificate,
    DecompositionCertificate,
    DerivedSeriesRecord,
    HallCertificate,
    StrictPClosedCertificate,
)
from .core import (
    FiniteGroup,
    SubgroupMask,
    center,
    derived_subgroup,
    full_mask,
    generate,
    identity_mask,
    is_normal,
    is_prime,
    p_part,
    prime_divisors,
    quotient,
    subgroup_as_group,
)
from .errors import CapExceeded, DetectorMismatch, InvalidParameter, ProductExceedsCap
from .morphisms import (
    AUTOMORPHISMS,
    DEFAULT_AUT_CAP,
    MapSet,
    aut_as_group,
    automorphism_order,
    automorphism_generators,
    endomorphism_witnesses,
    enumerate_automorphisms,
)
from .structure import chief_series, normal_hall, normal_subgroups

EXHAUSTIVE_DECOMPOSITION_BOUND = 200


@dataclass
class Verdict:
    """Outcome of a predicate.

    ``value`` is None when the computation was skipped, with the reason in
    ``skipped``.  A true verdict carries a certificate; ``group`` names the
    group the certificate lives in when that is not the input group (for
    the automorphism group, ``element_maps[i]`` is the image array of its
    element ``i``).
    """

    value: bool | None
    certificate: object = None
    skipped: str | None = None
    note: str = ""
    group: FiniteGroup | None = None
    element_maps: np.ndarray | None = None

    @property
    def is_skipped(self) -> bool:
        return self.value is None

    @classmethod
    def skip(cls, reason: str, note: str = "") -> "Verdict":
        return cls(None, skipped=reason, note=note)

    def label(self) -> str:
        if self.value is None:
            return f"skipped({self.skipped})"
        return "true" if self.value else "false"


# plain solvability classes


def _commutator_subgroup(G: FiniteGroup, H: SubgroupMask) -> SubgroupMask:
    if H.is_full():
        return derived_subgroup(G)
    HG, emb = subgroup_as_group(H)
    D = derived_subgroup(HG)
    return generate(G, emb[D.elements].tolist())


def derived_series(G: FiniteGroup) -> DerivedSeriesRecord:
    steps = [full_mask(G)]
    while True:
        D = _commutator_subgroup(G, steps[-1])
        if D == steps[-1]:
            break
        steps.append(D)
    return DerivedSeriesRecord(steps)


def is_solvable(G: FiniteGroup) -> Verdict:
    rec = derived_series(G)
    if rec.steps[-1].order == 1:
        return Verdict(True, rec)
    return Verdict(False, note=f"derived series stops at order {rec.steps[-1].order}")


def is_supersolvable(G: FiniteGroup) -> Verdict:
    """All chief factors of prime order (checked on one chief series)."""
    rec = chief_series(G)
    bad = [f for f in rec.factor_orders if not is_prime(f)]
    if bad:
        return Verdict(False, note=f"chief factor of order {bad[0]}")
    return Verdict(True, rec)


def has_sylow_tower_tail(G: FiniteGroup, n: int) -> Verdict:
    """Normal Hall subgroup for the primes ``p >= n`` dividing ``|G|``."""
    pi = frozenset(p for p in prime_divisors(G.order) if p >= n)
    H = normal_hall(G, pi)
    if H is None:
        return Verdict(False, note=f"no normal Hall subgroup for primes >= {n}")
    return Verdict(True, HallCertificate(H, pi))


def is_2_nilpotent(G: FiniteGroup) -> Verdict:
    return has_sylow_tower_tail(G, 3)


def is_strictly_p_closed(G: FiniteGroup, p: int) -> Verdict:
    if not is_prime(p):
        raise InvalidParameter(f"{p} is not prime")
    P = normal_hall(G, {p})
    if P is None:
        return Verdict(False, note="Sylow subgroup not normal")
    Q, _ = quotient(G, P)
    if not Q.is_abelian:
        return Verdict(False, note="quotient by the Sylow subgroup is not abelian")
    if np.any((p - 1) % Q.element_order):
        return Verdict(False, note=f"quotient exponent does not divide {p - 1}")
    return Verdict(True, StrictPClosedCertificate(P, p))


# invariant cyclic series


def _cyclic_witness(G: FiniteGroup, H: SubgroupMask, K: SubgroupMask) -> int | None:
    """Least ``y`` in ``K`` whose coset generates ``K/H``, or None if ``K/H`` is not cyclic."""
    index = K.order // H.order
    ys = np.flatnonzero(K.members & ~H.members)
    T = G.table
    cur = ys.copy()
    for _ in range(1, index):
        # keep only cosets whose k-th power is still outside H
        alive = ~H.members[cur]
        ys, cur = ys[alive], cur[alive]
        if ys.size == 0:
            return None
        cur = T[cur, ys].astype(np.int64)
    return int(ys[0]) if ys.size else None


def _refine(G: FiniteGroup, steps: list[SubgroupMask], wits: list[int]) -> tuple[list, list]:
    # subgroups between H and K correspond to subgroups of the cyclic K/H,
    # which every map preserving H and K also preserves
    out_steps, out_wits = [steps[0]], []
    for H, K, w in zip(steps, steps[1:], wits):
        m = K.order // H.order
        cur = H
        for p in _prime_factors(m)[:-1]:
            m //= p
            y = G.power(w, m)
            cur = generate(G, [y], base=cur)
            out_steps.append(cur)
            out_wits.append(y)
        out_steps.append(K)
        out_wits.append(w)
    return out_steps, out_wits


def _prime_factors(m: int) -> list[int]:
    out = []
    for p in prime_divisors(m):
        while m % p == 0:
            out.append(p)
            m //= p
    return out


def _chain_search(G: FiniteGroup, maps: MapSet, normal_in_group: bool) -> ChainCertificate | None:
    n = G.order
    start = identity_mask(G)
    kind = maps.kind if maps.maps else "none"
    if n == 1:
        return ChainCertificate([start], [], kind, maps)
    by_orbit = maps.kind == AUTOMORPHISMS
    closures: dict[int, np.ndarray] = {}

    def closure(x: int) -> np.ndarray:
        if x not in closures:
            c = maps.closure([x])
            if by_orbit:
                for y in np.flatnonzero(c):
                    closures[int(y)] = c
            else:
                closures[x] = c
        return closures[x]

    parent: dict[bytes, tuple[bytes, int] | None] = {start.key: None}
    nodes = {start.key: start}
    queue = deque([start])
    while queue:
        H = queue.popleft()
        done = H.members.copy()
        for x in range(n):
            if done[x]:
                continue
            orb = closure(x)
            if by_orbit:
                done |= orb
            K = generate(G, np.flatnonzero(orb & ~H.members), base=H)
            if K.key in parent:
                continue
            if normal_in_group and not is_normal(G, K):
                continue
            if not is_normal(G, H, within=K):
                continue
            w = _cyclic_witness(G, H, K)
            if w is None:
                continue
            parent[K.key] = (H.key, w)
            nodes[K.key] = K
            if K.is_full():
                steps, wits = [K], []
                key = K.key
                while parent[key] is not None:
                    key, w = parent[key]
                    steps.append(nodes[key])
                    wits.append(w)
                steps, wits = _refine(G, steps[::-1], wits[::-1])
                return ChainCertificate(steps, wits, kind, maps)
            queue.append(K)
    return None


def is_A_solvable(G: FiniteGroup, maps: MapSet | None = None, normal_in_group: bool = False) -> Verdict:
    """Whether ``G`` has a series of ``maps``-invariant subgroups with cyclic factors.

    Steps need only be normal in the next step.  With ``normal_in_group``
    every step must also be normal in ``G``.  For automorphisms a generating
    set of the acting group suffices.
    """
    if maps is None:
        maps = MapSet(G, [], AUTOMORPHISMS, complete=False)
    cert = _chain_search(G, maps, normal_in_group)
    if cert is None:
        return Verdict(False, note="no invariant series with cyclic factors")
    return Verdict(True, cert)


def automorphisms_for_search(G: FiniteGroup, aut_cap: int = DEFAULT_AUT_CAP) -> MapSet:
    """Every automorphism when ``|Aut(G)|`` is within the cap, else a generating set."""
    if automorphism_order(G) <= aut_cap:
        return complete_automorphisms(G, aut_cap)
    return automorphism_generators(G)


def complete_automorphisms(G: FiniteGroup, aut_cap: int = DEFAULT_AUT_CAP) -> MapSet:
    cached = G._cache.get("autos")
    if cached is None:
        cached = enumerate_automorphisms(G, aut_cap)
        G._cache["autos"] = cached
    elif len(cached) > aut_cap:
        raise ProductExceedsCap(len(cached), aut_cap)
    return cached


def is_ultrasolvable(G: FiniteGroup, aut_cap: int = DEFAULT_AUT_CAP) -> Verdict:
    maps = automorphisms_for_search(G, aut_cap)
    v = is_A_solvable(G, maps)
    if not maps.complete:
        v.note = (v.note + "; " if v.note else "") + "searched with automorphism generators"
    return v


def is_fully_solvable(G: FiniteGroup, maps: MapSet | None = None) -> Verdict:
    """Series of fully invariant subgroups with cyclic factors.

    By default the search runs over a small set of endomorphisms whose forward
    closure gives every endomorphic image; invariance under it is invariance
    under all of End(G).
    """
    if maps is None:
        maps = endomorphism_witnesses(G)
    return is_A_solvable(G, maps)


def abelian_aut_supersolvable_rule(invariants: dict[int, list[int]]) -> bool:
    """Aut-supersolvability of an abelian group read off its invariants."""
    for p, exps in invariants.items():
        exps = sorted(exps)
        if p == 2 and exps == [1, 1]:
            continue
        if any(a >= b for a, b in zip(exps, exps[1:])):
            return False
    return True


# odd part times Klein four


def _decomposition_shortcut(G: FiniteGroup) -> tuple[SubgroupMask, SubgroupMask] | None:
    n = G.order
    if p_part(n, 2) != 4:
        return None
    orders = G.element_order
    odd = orders % 2 == 1
    two = (orders & (orders - 1)) == 0
    if np.count_nonzero(two) != 4 or np.any(orders[two] > 2):
        return None
    if np.count_nonzero(odd) != n // 4:
        return None
    T = G.table
    el = np.flatnonzero(odd)
    if not odd[T[np.ix_(el, el)]].all():
        return None
    if not center(G).members[two].all():
        return None
    return SubgroupMask(G, odd), SubgroupMask(G, two)


def _decomposition_exhaustive(G: FiniteGroup) -> tuple[SubgroupMask, SubgroupMask] | None:
    n = G.order
    if n % 4 or (n // 4) % 2 == 0:
        return None
    normals = normal_subgroups(G)
    klein = [V for V in normals if V.order == 4 and np.all(G.element_order[V.elements] <= 2)]
    odd = [H for H in normals if H.order == n // 4]
    T = G.table
    for V in klein:
        for H in odd:
            if np.count_nonzero(H.members & V.members) != 1:
                continue
            hs, vs = H.elements, V.elements
            if np.array_equal(T[np.ix_(hs, vs)], T[np.ix_(vs, hs)].T):
                return H, V
    return None


def find_odd_klein_decomposition(G: FiniteGroup) -> tuple[SubgroupMask, SubgroupMask] | None:
    """``(H, V)`` with ``G = H x V``, ``|H|`` odd and ``V`` Klein four, if such exist."""
    fast = _decomposition_shortcut(G)
    if G.order <= EXHAUSTIVE_DECOMPOSITION_BOUND:
        slow = _decomposition_exhaustive(G)
        if (fast is None) != (slow is None) or (
                fast is not None and (fast[0] != slow[0] or fast[1] != slow[1])):
            raise DetectorMismatch(f"decomposition detectors disagree on a group of order {G.order}")
    return fast


def condition2(G: FiniteGroup, aut_cap: int = DEFAULT_AUT_CAP) -> Verdict:
    """Ultrasolvable, or an ultrasolvable group of odd order times a Klein four group."""
    ultra = is_ultrasolvable(G, aut_cap)
    if ultra.value:
        return ultra
    split = find_odd_klein_decomposition(G)
    if split is None:
        return Verdict(False, note="not ultrasolvable and no odd x Klein four splitting")
    H, V = split
    HG, _ = subgroup_as_group(H)
    inner = is_ultrasolvable(HG, aut_cap)
    if not inner.value:
        return Verdict(False, note="odd factor is not ultrasolvable")
    return Verdict(True, DecompositionCertificate(H, V, inner.certificate))


def aut_supersolvable(G: FiniteGroup, aut_cap: int = DEFAULT_AUT_CAP) -> Verdict:
    """Supersolvability of Aut(G), computed on its multiplication table."""
    order = automorphism_order(G)
    if order > aut_cap:
        return Verdict.skip("AutCapExceeded", note=f"|Aut| = {order}")
    try:
        autos = complete_automorphisms(G, aut_cap)
        A, position = aut_as_group(autos, cap=max(aut_cap, order))
    except CapExceeded:
        return Verdict.skip("AutCapExceeded", note=f"|Aut| = {order}")
    v = is_supersolvable(A)
    v.group = A
    v.element_maps = autos.images[np.argsort(position)]
    return v
