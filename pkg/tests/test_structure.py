import random
from collections import Counter
from itertools import combinations_with_replacement

import numpy as np
import pytest

from ultrasolv.core import (
    abelian_of_type,
    alternating,
    cyclic,
    dihedral,
    direct_product,
    elementary_abelian,
    identity_mask,
    is_normal,
    is_prime,
    klein_four,
    normal_closure,
    prime_divisors,
    prime_power,
    quaternion8,
    subgroup_as_group,
    symmetric,
)
from ultrasolv.certificates import check_chain
from ultrasolv.errors import InvariantsNotStrict, NotAbelian, NotPGroup, TrivialGroup
from ultrasolv.morphisms import enumerate_automorphisms
from ultrasolv.structure import (
    abelian_char_series,
    abelian_invariants,
    chief_series,
    frattini_pgroup,
    minimal_normal_subgroups,
    normal_hall,
    normal_subgroups,
    o_pi,
    o_pp_prime,
    omega_center,
)

from oracles import (
    _normal_in,
    all_subgroups,
    chief_factor_multiset_bruteforce,
    frattini_by_maximals,
    invariants_from_omega_counts,
)


def element_of_order(G, n):
    return int(np.flatnonzero(G.element_order == n)[0])


class TestNormalClosure:
    def test_identity_seed(self):
        G = symmetric(3)
        assert normal_closure(G, [0]) == identity_mask(G)

    def test_s3(self):
        G = symmetric(3)
        assert normal_closure(G, [element_of_order(G, 3)]).order == 3
        assert normal_closure(G, [element_of_order(G, 2)]).order == 6


class TestMinimalNormal:
    def test_cyclic6(self):
        assert sorted(N.order for N in minimal_normal_subgroups(cyclic(6))) == [2, 3]

    def test_klein(self):
        assert [N.order for N in minimal_normal_subgroups(klein_four())] == [2, 2, 2]

    def test_a4(self):
        assert [N.order for N in minimal_normal_subgroups(alternating(4))] == [4]

    def test_trivial_group(self):
        with pytest.raises(TrivialGroup):
            minimal_normal_subgroups(cyclic(1))


class TestChiefSeries:
    def test_examples(self):
        assert chief_series(cyclic(1)).factor_orders == []
        assert chief_series(symmetric(3)).factor_orders == [3, 2]
        assert chief_series(alternating(4)).factor_orders == [4, 3]

    def test_steps_normal_and_product(self):
        for G in (symmetric(4), dihedral(6), quaternion8(), direct_product(cyclic(3), symmetric(3))):
            rec = chief_series(G)
            assert int(np.prod(rec.factor_orders)) == G.order
            for H in rec.steps:
                assert is_normal(G, H)
            assert all(a < b for a, b in zip(rec.steps, rec.steps[1:]))

    def test_jordan_holder_with_random_choices(self, catalog):
        rng = random.Random(7)
        for e in catalog:
            if e.order > 48:
                continue
            G = e.build()
            base = Counter(chief_series(G).factor_orders)
            for _ in range(3):
                assert Counter(chief_series(G, rng=rng).factor_orders) == base, e.id

    @pytest.mark.parametrize("G", [symmetric(4), dihedral(4), alternating(4),
                                   direct_product(cyclic(2), symmetric(3)), quaternion8()],
                             ids=["S4", "D8", "A4", "C2xS3", "Q8"])
    def test_matches_bruteforce(self, G):
        assert sorted(chief_series(G).factor_orders) == chief_factor_multiset_bruteforce(G)

    def test_supersolvable_reference(self, catalog, gap):
        wrong = []
        for e in catalog:
            if e.order > 63:
                continue
            got = all(is_prime(f) for f in chief_series(e.build()).factor_orders)
            if got != gap[e.id]["supersolvable"]:
                wrong.append(e.id)
        assert wrong == []


class TestNormalSubgroups:
    def test_examples(self):
        assert len(normal_subgroups(cyclic(7))) == 2
        assert len(normal_subgroups(symmetric(3))) == 3
        assert len(normal_subgroups(dihedral(4))) == 6

    @pytest.mark.parametrize("G", [symmetric(4), dihedral(6), quaternion8(), elementary_abelian(2, 3)],
                             ids=["S4", "D12", "Q8", "C2^3"])
    def test_matches_bruteforce(self, G):
        full = normal_subgroups(G)[-1]
        brute = {H.key for H in all_subgroups(G) if _normal_in(G, H, full)}
        assert {N.key for N in normal_subgroups(G)} == brute


class TestOpi:
    def test_examples(self):
        S3 = symmetric(3)
        assert o_pi(S3, {2, 3}).is_full()
        assert o_pi(S3, {3}).order == 3
        assert o_pi(S3, {2}).order == 1

    def test_idempotent_and_monotone(self):
        for G in (symmetric(4), direct_product(cyclic(3), symmetric(3)), dihedral(10)):
            for pi in ({2}, {3}, {5}, {2, 3}):
                O = o_pi(G, pi)
                H, _ = subgroup_as_group(O)
                assert o_pi(H, pi).order == O.order
                assert O <= o_pi(G, pi | {7, 5, 3})

    def test_pp_prime(self):
        assert o_pp_prime(dihedral(4), 2).is_full()
        assert o_pp_prime(symmetric(3), 3).is_full()
        assert o_pp_prime(symmetric(3), 2).order == 3

    def test_normal_hall(self):
        S3 = symmetric(3)
        assert normal_hall(S3, {2, 3}).is_full()
        assert normal_hall(S3, {3}).order == 3
        assert normal_hall(alternating(4), {3}) is None
        H = normal_hall(direct_product(cyclic(5), symmetric(3)), {3, 5})
        assert H.order == 15


class TestPGroups:
    def test_frattini_examples(self):
        assert frattini_pgroup(elementary_abelian(3, 2), 3).order == 1
        assert frattini_pgroup(cyclic(8), 2).order == 4
        assert frattini_pgroup(dihedral(4), 2).order == 2

    def test_frattini_needs_p_group(self):
        with pytest.raises(NotPGroup):
            frattini_pgroup(symmetric(3), 2)

    def test_frattini_against_maximals(self, catalog):
        for e in catalog:
            pp = prime_power(e.order)
            if pp is None or e.order > 32:
                continue
            G = e.build()
            assert frattini_pgroup(G, pp[0]) == frattini_by_maximals(G), e.id

    def test_omega_center(self):
        assert omega_center(elementary_abelian(2, 3), 2).is_full()
        assert omega_center(cyclic(8), 2).order == 2
        assert omega_center(quaternion8(), 2).order == 2


def types_up_to(limit):
    prime_powers = [q for q in range(2, limit + 1)
                    if len({p for p in range(2, q + 1) if q % p == 0 and all(p % r for r in range(2, p))}) == 1]
    out = []
    for k in range(1, 4):
        for combo in combinations_with_replacement(prime_powers, k):
            if int(np.prod(combo)) <= limit:
                out.append(list(combo))
    return out


class TestAbelianInvariants:
    def test_examples(self):
        assert abelian_invariants(klein_four()) == {2: [1, 1]}
        assert abelian_invariants(cyclic(12)) == {2: [2], 3: [1]}
        assert abelian_invariants(abelian_of_type([2, 4])) == {2: [1, 2]}
        assert abelian_invariants(cyclic(1)) == {}

    def test_not_abelian(self):
        with pytest.raises(NotAbelian):
            abelian_invariants(symmetric(3))

    def test_reconstructs_every_type(self):
        for t in types_up_to(128):
            G = abelian_of_type(t)
            expected = {}
            for q in t:
                p = min(d for d in range(2, q + 1) if q % d == 0)
                a = round(np.log(q) / np.log(p))
                expected.setdefault(p, []).append(a)
            assert abelian_invariants(G) == {p: sorted(v) for p, v in sorted(expected.items())}, t

    def test_agrees_with_omega_counts(self, catalog, gap):
        for e in catalog:
            pp = prime_power(e.order)
            if pp is None or not gap[e.id]["abelian"]:
                continue
            G = e.build()
            assert abelian_invariants(G)[pp[0]] == invariants_from_omega_counts(G, pp[0]), e.id


class TestAbelianCharSeries:
    def test_cyclic_prime_power(self):
        cert = abelian_char_series(cyclic(27), 3)
        assert cert.factor_orders == [3, 3, 3]

    def test_type_2_4(self):
        G = abelian_of_type([2, 4])
        cert = abelian_char_series(G, 2, enumerate_automorphisms(G))
        assert cert.factor_orders == [2, 2, 2]
        check_chain(G, cert)

    def test_klein_rejected(self):
        with pytest.raises(InvariantsNotStrict):
            abelian_char_series(klein_four(), 2)

    def test_invariant_for_distinct_exponents(self):
        for t in ([2, 8], [4, 8, 2], [3, 9], [2, 4, 16]):
            G = abelian_of_type(t)
            p = prime_divisors(G.order)[0]
            cert = abelian_char_series(G, p, enumerate_automorphisms(G))
            assert all(f == p for f in cert.factor_orders)
            check_chain(G, cert)
