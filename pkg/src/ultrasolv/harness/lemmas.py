"""Property suites run over catalog slices, one report row per group."""

from __future__ import annotations

import random
from dataclasses import dataclass, field

import numpy as np

from ..certificates import check_certificate
from ..classify import (
    abelian_aut_supersolvable_rule,
    aut_supersolvable,
    automorphisms_for_search,
    has_sylow_tower_tail,
    is_A_solvable,
    is_fully_solvable,
    is_solvable,
    is_strictly_p_closed,
    is_supersolvable,
    is_ultrasolvable,
)
from ..core import (
    FiniteGroup,
    GroupMap,
    PermSpec,
    SubgroupMask,
    permutation_closure,
    prime_divisors,
    prime_power,
    quotient,
    subgroup_as_group,
    table_from_permutations,
)
from ..errors import CapExceeded, CertificateError, UnknownLemma
from ..morphisms import (
    AUTOMORPHISMS,
    DEFAULT_AUT_CAP,
    MapSet,
    aut_as_group,
    automorphism_order,
    enumerate_automorphisms,
    inner_automorphisms,
)
from ..structure import abelian_invariants, frattini_pgroup, o_pi, o_pp_prime
from .catalog import CatalogEntry

# GL(4,2) has 20160 elements; the sampled-subgroup suite needs all of it
PGROUP_EQUIV_AUT_CAP = 25000
PGROUP_EQUIV_MAX_ORDER = 16
RANDOM_SUBGROUPS = 20

PASS, FAIL, SKIP = "pass", "fail", "skip"


@dataclass
class LemmaRow:
    id: str
    status: str
    detail: str = ""


@dataclass
class LemmaReport:
    lemma: str
    rows: list[LemmaRow] = field(default_factory=list)

    @property
    def counts(self) -> dict[str, int]:
        out = {PASS: 0, FAIL: 0, SKIP: 0}
        for r in self.rows:
            out[r.status] += 1
        return out

    @property
    def passed(self) -> bool:
        return self.counts[FAIL] == 0

    def format(self, verbose: bool = False) -> str:
        lines = []
        for r in self.rows:
            if verbose or r.status != PASS:
                lines.append(f"{r.id:>8}  {r.status:<4}  {r.detail}")
        c = self.counts
        lines.append(f"{self.lemma}: {c[PASS]} pass, {c[FAIL]} fail, {c[SKIP]} skip"
                     f" -> {'PASS' if self.passed else 'FAIL'}")
        return "\n".join(lines)


def _p_of(G: FiniteGroup) -> int | None:
    pp = prime_power(G.order)
    return pp[0] if pp else None


def _verified(G, verdict, **kwargs) -> bool | None:
    if verdict.value:
        check_certificate(verdict.group or G, verdict.certificate, **kwargs)
    return verdict.value


def _sylow_tower(G: FiniteGroup, ctx) -> tuple[str, str] | None:
    if not _verified(G, is_supersolvable(G), require_prime=True):
        return PASS, "not supersolvable"
    for p in prime_divisors(G.order):
        if not _verified(G, has_sylow_tower_tail(G, p)):
            return FAIL, f"no normal Hall subgroup for primes >= {p}"
    return PASS, f"normal Hall subgroups for every threshold over {prime_divisors(G.order)}"


def _nonabelian_p_group(G: FiniteGroup) -> int | None:
    p = _p_of(G)
    return p if p is not None and not G.is_abelian else None


def _pcore(G: FiniteGroup, ctx) -> tuple[str, str] | None:
    p = _nonabelian_p_group(G)
    if p is None:
        return None
    if automorphism_order(G) > ctx.aut_cap:
        return SKIP, f"AutCapExceeded (|Aut| = {automorphism_order(G)})"
    A, _ = aut_as_group(enumerate_automorphisms(G, ctx.aut_cap), cap=max(ctx.aut_cap, G.order))
    core = o_pi(A, set(prime_divisors(A.order)) - {p})
    if core.order != 1:
        return FAIL, f"largest normal {p}'-subgroup of Aut has order {core.order}"
    return PASS, f"|Aut| = {A.order}"


def _baer(G: FiniteGroup, ctx) -> tuple[str, str] | None:
    closed = [p for p in prime_divisors(G.order) if _verified(G, is_strictly_p_closed(G, p))]
    if closed and not _verified(G, is_supersolvable(G), require_prime=True):
        return FAIL, f"strictly {closed[0]}-closed but not supersolvable"
    return PASS, f"strictly p-closed for p in {closed}"


def _strict_p_closed(G: FiniteGroup, ctx) -> tuple[str, str] | None:
    if not is_supersolvable(G).value:
        return None
    for p in prime_divisors(G.order):
        closed = _verified(G, is_strictly_p_closed(G, p))
        if o_pi(G, set(prime_divisors(G.order)) - {p}).order == 1 and not closed:
            return FAIL, f"trivial {p}'-core but not strictly {p}-closed"
        top, _ = quotient(*_as_group_with(o_pp_prime(G, p), o_pi(G, {p})))
        criterion = top.is_abelian and not np.any((p - 1) % top.element_order)
        if criterion != closed:
            return FAIL, f"p = {p}: quotient criterion {criterion}, direct test {closed}"
    return PASS, ""


def _as_group_with(K: SubgroupMask, N: SubgroupMask) -> tuple[FiniteGroup, SubgroupMask]:
    # K as a group together with N inside it
    KG, emb = subgroup_as_group(K)
    return KG, SubgroupMask(KG, N.members[emb])


def _abelian_rule(G: FiniteGroup, ctx) -> tuple[str, str] | None:
    if not G.is_abelian:
        return None
    inv = abelian_invariants(G)
    rule = abelian_aut_supersolvable_rule(inv)
    ultra = _verified(G, is_ultrasolvable(G, ctx.aut_cap))
    full = _verified(G, is_fully_solvable(G))
    if ultra != full:
        return FAIL, f"ultrasolvable {ultra} but fully solvable {full}"
    aut = aut_supersolvable(G, ctx.aut_cap)
    if aut.is_skipped:
        return SKIP, f"AutCapExceeded ({aut.note}); invariants {inv}, rule {rule}"
    if _verified(G, aut, require_prime=True) != rule:
        return FAIL, f"invariants {inv}: rule {rule}, computed {aut.value}"
    return PASS, f"invariants {inv}: {rule}"


def _two_group_corollary(G: FiniteGroup, ctx) -> tuple[str, str] | None:
    if G.order == 1 or _p_of(G) != 2:
        return None
    n = automorphism_order(G)
    two = n & (n - 1) == 0
    ultra = _verified(G, is_ultrasolvable(G, ctx.aut_cap))
    if ultra != two:
        return FAIL, f"|Aut| = {n} but ultrasolvable {ultra}"
    return PASS, f"|Aut| = {n}, ultrasolvable {ultra}"


def _corsi_tani(G: FiniteGroup, ctx) -> tuple[str, str] | None:
    p = _p_of(G)
    if G.order == 1 or p is None:
        return None
    if G.order == 4 and np.all(G.element_order <= 2):
        return None
    aut = aut_supersolvable(G, ctx.aut_cap)
    if aut.is_skipped:
        return SKIP, f"AutCapExceeded ({aut.note})"
    a = _verified(G, aut, require_prime=True)
    u = _verified(G, is_ultrasolvable(G, ctx.aut_cap))
    if a != u:
        return FAIL, f"Aut supersolvable {a}, ultrasolvable {u}"
    return PASS, f"both {a}"


def _durbin_mcdonald(G: FiniteGroup, ctx) -> tuple[str, str] | None:
    if not _verified(G, is_ultrasolvable(G, ctx.aut_cap)):
        return PASS, "not ultrasolvable"
    aut = aut_supersolvable(G, ctx.aut_cap)
    if aut.is_skipped:
        return SKIP, f"AutCapExceeded ({aut.note})"
    if not _verified(G, aut, require_prime=True):
        return FAIL, "ultrasolvable but Aut is not supersolvable"
    return PASS, "ultrasolvable, Aut supersolvable"


def _hierarchy(G: FiniteGroup, ctx) -> tuple[str, str] | None:
    full = _verified(G, is_fully_solvable(G))
    autos = automorphisms_for_search(G, ctx.aut_cap)
    ultra = _verified(G, is_A_solvable(G, autos))
    inn_maps = inner_automorphisms(G)
    inn = _verified(G, is_A_solvable(G, inn_maps))
    solv = _verified(G, is_solvable(G))
    sup = _verified(G, is_supersolvable(G), require_prime=True)
    chain = [("fully solvable", full), ("ultrasolvable", ultra), ("Inn-solvable", inn), ("solvable", solv)]
    for (a, x), (b, y) in zip(chain, chain[1:]):
        if x and not y:
            return FAIL, f"{a} but not {b}"
    if inn != sup:
        return FAIL, f"Inn-solvable {inn} but supersolvable {sup}"
    strict = is_A_solvable(G, autos, normal_in_group=True).value
    if strict != ultra:
        return FAIL, f"characteristic series with steps normal in G: {strict}, without: {ultra}"
    return PASS, " ".join(f"{a}={x}" for a, x in chain)


# sampled automorphism subgroups of small p-groups


def _induced_maps(P: FiniteGroup, gens: list[GroupMap], Q: FiniteGroup, proj: np.ndarray) -> list[GroupMap]:
    reps = np.array([np.flatnonzero(proj == i)[0] for i in range(Q.order)])
    return [GroupMap(Q, Q, proj[g.images[reps]]) for g in gens]


def _cyclic_generators(autos: MapSet) -> list[list[GroupMap]]:
    seen = set()
    out = []
    ident = np.arange(autos.group.order)
    for a in autos.maps:
        cur, keys = a.images, []
        while True:
            keys.append(cur.tobytes())
            if np.array_equal(cur, ident):
                break
            cur = a.images[cur]
        key = frozenset(keys)
        if key not in seen:
            seen.add(key)
            out.append([a])
    return out


def _pgroup_equiv(G: FiniteGroup, ctx) -> tuple[str, str] | None:
    p = _p_of(G)
    if G.order == 1 or p is None or G.order > PGROUP_EQUIV_MAX_ORDER:
        return None
    try:
        autos = enumerate_automorphisms(G, PGROUP_EQUIV_AUT_CAP)
    except CapExceeded as exc:
        return SKIP, str(exc)
    Q, proj = quotient(G, frattini_pgroup(G, p))
    rng = random.Random(f"{ctx.seed}:{ctx.entry_id}")
    subsets = _cyclic_generators(autos)
    n_cyclic = len(subsets)
    for _ in range(RANDOM_SUBGROUPS):
        subsets.append([autos.maps[rng.randrange(len(autos))], autos.maps[rng.randrange(len(autos))]])
    closed_cache: dict[bytes, bool] = {}
    literal_vs_normal = 0
    for gens in subsets:
        maps = MapSet(G, gens, AUTOMORPHISMS, complete=False)
        on_p = _verified(G, is_A_solvable(G, maps))
        induced = MapSet(Q, _induced_maps(G, gens, Q, proj.images), AUTOMORPHISMS, complete=False)
        on_top = _verified(Q, is_A_solvable(Q, induced))
        elems, _ = permutation_closure(PermSpec(G.order, [g.images for g in gens]), PGROUP_EQUIV_AUT_CAP)
        key = np.sort(elems.view(np.dtype((np.void, elems.dtype.itemsize * elems.shape[1]))).ravel()).tobytes()
        if key not in closed_cache:
            A = FiniteGroup(table_from_permutations(elems))
            closed_cache[key] = _verified(A, is_strictly_p_closed(A, p))
        closed = closed_cache[key]
        if not (on_p == on_top == closed):
            return FAIL, (f"subgroup generated by {len(gens)} map(s): on P {on_p}, "
                          f"on P/Phi {on_top}, strictly p-closed {closed}")
        # the normal-in-G variant is stricter, so it can only differ on a true verdict
        if on_p:
            literal_vs_normal += not is_A_solvable(G, maps, normal_in_group=True).value
    return PASS, (f"{n_cyclic} cyclic and {RANDOM_SUBGROUPS} random subgroups of Aut (|Aut| = {len(autos)}); "
                  f"normal-in-G variant differs on {literal_vs_normal}")


LEMMAS = {
    "sylow-tower": _sylow_tower,
    "pcore": _pcore,
    "baer": _baer,
    "strict-p-closed": _strict_p_closed,
    "abelian-rule": _abelian_rule,
    "pgroup-equiv": _pgroup_equiv,
    "two-group-corollary": _two_group_corollary,
    "corsi-tani": _corsi_tani,
    "durbin-mcdonald": _durbin_mcdonald,
    "hierarchy": _hierarchy,
}


@dataclass
class _Context:
    aut_cap: int
    seed: int
    entry_id: str = ""


def verify_lemma(entries: list[CatalogEntry], lemma_id: str, aut_cap: int = DEFAULT_AUT_CAP,
                 seed: int = 0) -> LemmaReport:
    """Run one property suite; entries it does not apply to are left out of the report."""
    try:
        check = LEMMAS[lemma_id]
    except KeyError:
        raise UnknownLemma(f"unknown lemma {lemma_id!r}; choose from {', '.join(LEMMAS)}") from None
    ctx = _Context(aut_cap, seed)
    report = LemmaReport(lemma_id)
    for e in entries:
        G = e.build()
        ctx.entry_id = e.id
        try:
            outcome = check(G, ctx)
        except CertificateError as exc:
            outcome = FAIL, f"certificate rejected: {exc}"
        if outcome is not None:
            report.rows.append(LemmaRow(e.id, *outcome))
    return report
