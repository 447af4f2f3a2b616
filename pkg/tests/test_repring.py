"""The rational representation ring: character tables, functorial maps,
and the exact lemmas the engine relies on."""
from fractions import Fraction

import pytest

from equichi.cyclo import Cyclotomic
from equichi.groups import Subgroup, builtin_group, quotient
from equichi.repring import (NotSubgroup, RepClass, character_table,
                             orbit_assemble)

from helpers import group_pool, rng


def rand_class(r, G, effective=False):
    tab = character_table(G)
    lo = 0 if effective else -3
    mults = [Fraction(r.randint(lo, 4), r.choice([1, 1, 2])) for _ in tab.dims]
    return RepClass.from_mults(G, mults)


def rand_subgroup(r, G):
    k = r.randint(0, 2)
    return Subgroup(G, [r.choice(G.elements) for _ in range(k)])


# ---------------------------------------------------------------------------
# character tables


def test_row_and_column_orthogonality():
    for label, _, G in group_pool():
        tab = character_table(G)
        n = len(tab)
        for i in range(n):
            for j in range(n):
                a = RepClass.from_classfn(tab.irreducibles[i])
                b = RepClass.from_classfn(tab.irreducibles[j])
                assert a.inner(b) == (1 if i == j else 0), (label, i, j)
        # column orthogonality: sum_chi chi(g) conj(chi(h)) = |C_G(g)| delta
        for ci in range(n):
            for cj in range(n):
                acc = Cyclotomic.zero()
                for irr in tab.irreducibles:
                    acc = acc + irr.values[ci] * irr.values[cj].conj()
                want = (Fraction(G.order, G.class_sizes[ci])
                        if ci == cj else 0)
                assert acc.to_rational() == want, (label, ci, cj)


def test_sum_of_squares_and_trivial_first():
    for label, _, G in group_pool():
        tab = character_table(G)
        assert sum(d * d for d in tab.dims) == G.order, label
        assert all(v == Cyclotomic.one() for v in tab.irreducibles[0].values)


def test_regular_representation():
    for _, _, G in group_pool():
        reg = RepClass.regular(G)
        assert reg.degree() == G.order
        tab = character_table(G)
        assert list(reg.mults()) == [Fraction(d) for d in tab.dims]


# ---------------------------------------------------------------------------
# functorial identities


def test_frobenius_reciprocity_randomized():
    r = rng("frobenius")
    for _ in range(60):
        _, _, G = r.choice(group_pool())
        H = rand_subgroup(r, G)
        a = rand_class(r, H.to_group())
        b = rand_class(r, G)
        assert a.induce(G).inner(b) == a.inner(b.restrict(H.to_group()))


def test_induction_restriction_quotient_square():
    # inflating an induced class from a quotient equals inducing the
    # inflated class from the preimage subgroup
    r = rng("indres1")
    count = 0
    while count < 50:
        _, _, G = r.choice(group_pool())
        N = rand_subgroup(r, G)
        if not N.is_normal_in():
            continue
        q = quotient(G, N)
        Gbar = q.group
        Kbar = rand_subgroup(r, Gbar)
        abar = rand_class(r, Kbar.to_group())
        left = abar.induce(Gbar).inflate(q)
        # preimage K of Kbar, and the explicit pullback of abar to K
        kset = {g for g in G.elements if q.project(g) in Kbar}
        K = Subgroup(G, sorted(kset)).to_group()
        vals = [abar.values[abar.group.class_of(q.project(k))]
                for k in K.class_reps]
        right = RepClass(K, vals).induce(G)
        assert left == right
        count += 1


def test_inflated_regular_is_induced_trivial():
    r = rng("indres2")
    count = 0
    while count < 50:
        _, _, G = r.choice(group_pool())
        N = rand_subgroup(r, G)
        if not N.is_normal_in():
            continue
        q = quotient(G, N)
        left = RepClass.regular(q.group).inflate(q)
        right = RepClass.trivial(N).induce(G)
        assert left == right
        count += 1


def test_induce_restrict_projection_formula():
    # Ind_N^G Res_N(a) = (Ind_N^G 1) tensor a for normal N
    r = rng("indres3")
    count = 0
    while count < 50:
        _, _, G = r.choice(group_pool())
        N = rand_subgroup(r, G)
        if not N.is_normal_in():
            continue
        a = rand_class(r, G)
        left = a.restrict(N.to_group()).induce(G)
        right = RepClass.trivial(N).induce(G).tensor(a)
        assert left == right
        count += 1


def test_tensor_with_regular():
    r = rng("mkg")
    for _ in range(60):
        _, _, G = r.choice(group_pool())
        a = rand_class(r, G, effective=True)
        assert a.tensor(RepClass.regular(G)) \
            == a.degree() * RepClass.regular(G)


def test_standard_s3_times_regular():
    G = builtin_group("symmetric", 3)
    tab = character_table(G)
    std = next(RepClass.from_classfn(irr) for irr in tab.irreducibles
               if irr.values[0] == Cyclotomic.from_rational(2))
    assert std.tensor(RepClass.regular(G)) == 2 * RepClass.regular(G)


def test_conj_dual_involution_and_degree():
    r = rng("dual")
    for _ in range(30):
        _, _, G = r.choice(group_pool())
        a = rand_class(r, G)
        assert a.conj_dual().conj_dual() == a
        assert a.conj_dual().degree() == a.degree()


def test_mults_round_trip():
    r = rng("mults")
    for _ in range(30):
        _, _, G = r.choice(group_pool())
        a = rand_class(r, G)
        assert RepClass.from_mults(G, list(a.mults())) == a


def test_character_from_exponents():
    G = builtin_group("cyclic", 4)
    gen = (1, 2, 3, 0)
    exps, cur = {}, G.identity
    for k in range(4):
        exps[cur] = k % 4
        cur = tuple(gen[i] for i in cur)
    chi = RepClass.character(G, exps, 4)
    assert chi.degree() == 1
    assert chi.tensor(chi).tensor(chi).tensor(chi) == RepClass.trivial(G)


def test_orbit_assemble_matches_manual_sum():
    G = builtin_group("symmetric", 3)
    H = Subgroup(G, [(1, 2, 0)])
    a = RepClass.regular(H.to_group())
    got = orbit_assemble([(H, a)], G)
    assert got == Fraction(H.order, G.order) * a.induce(G)


def test_induce_to_non_overgroup_raises():
    G = builtin_group("cyclic", 3)
    H = builtin_group("cyclic", 4)
    with pytest.raises(NotSubgroup):
        RepClass.trivial(G).induce(H)


def test_effectivity():
    G = builtin_group("cyclic", 3)
    assert RepClass.regular(G).is_effective()
    assert not (RepClass.trivial(G) - RepClass.regular(G)).is_effective()
