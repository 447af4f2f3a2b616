"""Acceptance suite: one test (one pass/fail line under pytest -v) per
criterion.  All comparisons are exact; there are no tolerances anywhere."""
import itertools
import json
import math
import time
from fractions import Fraction
from math import gcd

from equichi.cli import bundled_text, evaluate_scenario, list_bundled
from equichi.engine import (PathMismatch, bound_certificates, chi_g, deg_g,
                            dual_graph_chi, gamma_node_orbit, h0_class,
                            hodge_h1_class, invariant_dim, psi_class,
                            topo_chi)
from equichi.gcurve import SheafSpec, gcurve_build, sheaf_resolve
from equichi.groups import Subgroup, builtin_group, quotient
from equichi.oracle import (OracleError, character_exponent_mults,
                            graph_homology_rep, rational_nodal_h0,
                            superelliptic_genus, superelliptic_h0,
                            superelliptic_mults, superelliptic_scenario)
from equichi.repring import RepClass, character_table

from helpers import (bump_degrees, closed_form_value, cyc, group_pool, rng,
                     sample_free, sample_generic_sheaf, sample_nodal_cyclic,
                     sample_rational_graph, sample_smooth_cyclic,
                     total_degree)


def build_hyperelliptic(g):
    return gcurve_build({
        "group": {"builtin": "cyclic", "n": 2},
        "components": [{"id": "c0", "genus": g,
                        "decomposition": {"gens": [[1, 0]]},
                        "inertia": {"gens": []},
                        "marked": [{"id": f"w{i}",
                                    "stabilizer": {"gens": [[1, 0]]},
                                    "theta": {"exponents": [1]}}
                                   for i in range(2 * g + 2)]}],
        "nodes": [],
    })


def cyclic_character(C, r, n):
    gen = cyc(n)
    exps, cur = {}, C.group.identity
    for k in range(n):
        exps[cur] = (k * r) % n
        cur = tuple(gen[i] for i in cur)
    return RepClass.character(C.group, exps, n)


# ---------------------------------------------------------------------------


def test_criterion_01_hyperelliptic_closed_form():
    for g in (2, 3, 4):
        C = build_hyperelliptic(g)
        tau = cyclic_character(C, 1, 2)
        reg = RepClass.regular(C.group)
        for q in range(7):
            md = {f"w{i}": {"theta_power": 1} for i in range(1, 2 * g + 2)}
            md["w0"] = {"theta_power": 1 - q}
            spec = SheafSpec("generic", rank=1,
                             component_data={"c0": [{"irr": 0, "rank": 1,
                                                     "degree": 2 * g - 2 + q}]},
                             marked_data=md)
            eps = 1 if q % 2 == 0 else 0
            want = math.floor(Fraction(q - 1, 2)) * reg + (g + eps) * tau
            assert chi_g(C, spec).value == want, (g, q)


def test_criterion_02_cyclic_p5_example():
    smooth = json.loads(bundled_text("p5_smooth"))
    C = gcurve_build(smooth["curve"])
    h0 = h0_class(C, SheafSpec.omega(1))
    mults = [h0.inner(cyclic_character(C, r, 5)) for r in range(5)]
    assert mults == [0, 2, 1, 1, 0]

    nodal = json.loads(bundled_text("p5_nodal"))
    Cn = gcurve_build(nodal["curve"])
    h0n = h0_class(Cn, SheafSpec.omega(1))
    multsn = [h0n.inner(cyclic_character(Cn, r, 5)) for r in range(5)]
    assert multsn == [2, 2, 1, 1, 0]  # adds exactly 2 [1_G]
    assert invariant_dim(Cn, 1)["dimension"] == 2
    assert invariant_dim(Cn, 2)["dimension"] == 3
    from equichi.engine import def_dim
    assert def_dim(Cn) == 1


def test_criterion_03_free_action_law():
    r = rng("acc3")
    seen_groups = set()
    for i in range(20):
        C, datum = sample_free(r)
        seen_groups.add(datum["group"].get("builtin", "perm")
                        + str(datum["group"].get("n", "")))
        if i % 2 == 0:
            spec = SheafSpec.omega(r.randint(1, 3))
        else:
            spec = sample_generic_sheaf(r, C)
        rep = chi_g(C, spec)
        chi = rep.resolved.chi_global()
        assert rep.value == Fraction(chi, C.group.order) \
            * RepClass.regular(C.group), (i, datum)
    assert {"cyclic2", "cyclic3", "cyclic4", "cyclic5", "cyclic6",
            "symmetric3", "dihedral4"} & seen_groups


def test_criterion_04_induced_components_counterexample():
    sc = json.loads(bundled_text("etale_nonfree"))
    C = gcurve_build(sc["curve"])
    rep = chi_g(C, SheafSpec.omega(1))
    chi = rep.resolved.chi_global()
    G, I = C.group, C.components[0].inertia
    want = Fraction(chi * I.order, G.order) * RepClass.trivial(I).induce(G)
    assert rep.value == want
    free_law = Fraction(chi, G.order) * RepClass.regular(G)
    assert rep.value != free_law


def test_criterion_05_identity_suite():
    # (a,b,c) degree-zero contributions, total degree, equivariant RR
    r = rng("acc5-core")
    count = 0
    pool = []
    while count < 50:
        which = count % 3
        if which == 0:
            C, _ = sample_smooth_cyclic(r)
        elif which == 1:
            C, _ = sample_nodal_cyclic(r)
        else:
            C, _ = sample_free(r)
        spec = sample_generic_sheaf(r, C) if count % 2 else \
            SheafSpec.omega(r.randint(1, 3))
        rep = chi_g(C, spec)
        for gamma in rep.gammas().values():
            assert gamma.degree() == 0
        assert rep.value.degree() == rep.resolved.chi_global()
        d = deg_g(C, spec)
        rk = rep.resolved.rank
        assert rep.value == rk * chi_g(C, SheafSpec.structure()).value + d
        pool.append((C, spec))
        count += 1

    # (d) smoothable fast path vs general path
    r = rng("acc5-smoothable")
    checked = 0
    while checked < 50:
        C, _ = sample_nodal_cyclic(r, smoothable_only=True)
        spec = SheafSpec.omega(r.randint(1, 2))
        resolved = sheaf_resolve(C, spec)
        for node in C.nodes:
            if not node.smoothable:
                continue
            total = gamma_node_orbit(C, node, resolved)  # asserts internally
            if node.kind == "S1":
                assert total.is_zero(), node.id
            checked += 1
    # the S2 smoothable shortcut, on the exchanged-branch example
    sc = json.loads(bundled_text("klein_s2_node"))
    CK = gcurve_build(sc["curve"])
    node = CK.nodes[0]
    assert node.smoothable and node.kind == "S2"
    resolved = sheaf_resolve(CK, SheafSpec.omega(1))
    total = gamma_node_orbit(CK, node, resolved)
    fib = resolved.node_fiber[node.id]
    fast = Fraction(1, 2) * fib.tensor(
        RepClass.trivial(node.stabilizer) - node.chi_class()).induce(CK.group)
    assert total == fast

    # (e) pullback-twist law and (f) E-vs-F difference law
    r = rng("acc5-twist")
    for i in range(50):
        C, _ = (sample_smooth_cyclic(r) if i % 2 else sample_nodal_cyclic(r))
        F = sample_generic_sheaf(r, C)
        rk = F.rank
        n = C.group.order
        # (f): same fibers everywhere, shifted component degree
        shift = r.randint(-4, 6)
        E = bump_degrees(F, {"c0": shift})
        diff = chi_g(C, E).value - chi_g(C, F).value
        want = Fraction(total_degree(C, E) - total_degree(C, F), n) \
            * RepClass.regular(C.group)
        assert diff == want
        # (e): twist by the pullback of a degree-dM sheaf of rank s on D
        dM = r.randint(-3, 4)
        s = r.randint(1, 2)
        comp_data = {"c0": [{"irr": 0, "rank": s * rk,
                             "degree": s * F.component_data["c0"][0]["degree"]
                             + rk * n * dM}]}
        md = {k: {"mults": [s * x for x in v["mults"]]}
              for k, v in F.marked_data.items()}
        nd = {k: {"fiber": {"mults": [s * x for x in v["fiber"]["mults"]]}}
              for k, v in F.node_data.items()}
        FM = SheafSpec("generic", rank=s * rk, component_data=comp_data,
                       marked_data=md, node_data=nd)
        lhs = chi_g(C, FM).value - s * chi_g(C, F).value
        assert lhs == rk * dM * RepClass.regular(C.group)

    # (g) Frobenius reciprocity
    r = rng("acc5-frob")
    for _ in range(50):
        _, _, G = r.choice(group_pool())
        H = Subgroup(G, [r.choice(G.elements)
                         for _ in range(r.randint(0, 2))])
        tabH = character_table(H.to_group())
        a = RepClass.from_mults(H.to_group(),
                                [Fraction(r.randint(-3, 4)) for _ in tabH.dims])
        tabG = character_table(G)
        b = RepClass.from_mults(G, [Fraction(r.randint(-3, 4))
                                    for _ in tabG.dims])
        assert a.induce(G).inner(b) == a.inner(b.restrict(H.to_group()))

    # (h) induction/restriction lemmas for quotients
    r = rng("acc5-indres")
    done = 0
    while done < 50:
        _, _, G = r.choice(group_pool())
        N = Subgroup(G, [r.choice(G.elements)
                         for _ in range(r.randint(0, 2))])
        if not N.is_normal_in():
            continue
        q = quotient(G, N)
        # (2) inflated regular = induced trivial
        assert RepClass.regular(q.group).inflate(q) \
            == RepClass.trivial(N).induce(G)
        # (3) projection formula for the normal subgroup
        tabG = character_table(G)
        a = RepClass.from_mults(G, [Fraction(r.randint(-3, 4))
                                    for _ in tabG.dims])
        assert a.restrict(N.to_group()).induce(G) \
            == RepClass.trivial(N).induce(G).tensor(a)
        # (1) quotient square
        Kbar = Subgroup(q.group, [r.choice(q.group.elements)])
        tabK = character_table(Kbar.to_group())
        abar = RepClass.from_mults(Kbar.to_group(),
                                   [Fraction(r.randint(-3, 4))
                                    for _ in tabK.dims])
        left = abar.induce(q.group).inflate(q)
        kset = sorted(g for g in G.elements if q.project(g) in Kbar)
        K = Subgroup(G, kset).to_group()
        vals = [abar.values[abar.group.class_of(q.project(k))]
                for k in K.class_reps]
        right = RepClass(K, vals).induce(G)
        assert left == right
        done += 1

    # (i) tensoring with the regular class
    r = rng("acc5-mkg")
    for _ in range(50):
        _, _, G = r.choice(group_pool())
        tab = character_table(G)
        a = RepClass.from_mults(G, [Fraction(r.randint(0, 4))
                                    for _ in tab.dims])
        assert a.tensor(RepClass.regular(G)) \
            == a.degree() * RepClass.regular(G)

    # (j) orthogonality of every character table in the pool
    for _, _, G in group_pool():
        tab = character_table(G)
        for i in range(len(tab)):
            for j in range(len(tab)):
                a = RepClass.from_classfn(tab.irreducibles[i])
                b = RepClass.from_classfn(tab.irreducibles[j])
                assert a.inner(b) == (1 if i == j else 0)


def test_criterion_06_invariant_dimension_closed_forms():
    r = rng("acc6-smooth")
    for _ in range(20):
        C, _ = sample_smooth_cyclic(r)
        for m in range(1, 7):
            out = invariant_dim(C, m)  # raises on closed-form mismatch
            assert out["euler_inner"] == closed_form_value(C, m)
    r = rng("acc6-nodal")
    for _ in range(20):
        C, _ = sample_nodal_cyclic(r)
        for m in range(1, 7):
            out = invariant_dim(C, m)
            assert out["euler_inner"] == closed_form_value(C, m)


def _superelliptic_catalog():
    cat = []
    for n in range(2, 8):
        seen = set()
        per_n = 0
        units = [x for x in range(1, n) if gcd(x, n) == 1]
        for b in range(1, 7):
            for a in itertools.product(units, repeat=b):
                key = tuple(sorted(a))
                if key in seen:
                    continue
                d = gcd(sum(a), n)
                if d not in (1, n):
                    continue
                try:
                    g = superelliptic_genus(n, a)
                except OracleError:
                    continue
                if not 1 <= g <= 12:
                    continue
                seen.add(key)
                cat.append((n, a))
                per_n += 1
                if per_n >= 5:
                    break
            if per_n >= 5:
                break
    return cat


def test_criterion_07_oracle_equivalence():
    cat = _superelliptic_catalog()
    assert len(cat) >= 15
    for n, a in cat:
        C = gcurve_build(superelliptic_scenario(n, a))
        gen = cyc(n)
        for m in (1, 2, 3):
            if m > 1 and not C.stable:
                continue
            dims = superelliptic_h0(n, a, m)
            want = superelliptic_mults(n, dims)
            got = character_exponent_mults(
                C, h0_class(C, SheafSpec.omega(m)), gen, n)
            assert got == want, (n, a, m)
    r = rng("acc7-graphs")
    s3_seen = cyclic_seen = 0
    count = 0
    while count < 10 or not (s3_seen and cyclic_seen):
        C, datum = sample_rational_graph(r)
        if datum["group"]["builtin"] == "symmetric":
            s3_seen += 1
        else:
            cyclic_seen += 1
        assert h0_class(C, SheafSpec.omega(1)) == rational_nodal_h0(C)
        count += 1


def test_criterion_08_topological_formula():
    C2 = build_hyperelliptic(2)
    tau = cyclic_character(C2, 1, 2)
    assert topo_chi(C2) == 2 * RepClass.trivial(C2.group) - 4 * tau
    Cn = gcurve_build(json.loads(bundled_text("p5_nodal"))["curve"])
    t = topo_chi(Cn)
    assert t == 2 * RepClass.trivial(Cn.group) - 2 * RepClass.regular(Cn.group)
    assert t.degree() == -8
    # degree consistency on randomized scenarios (asserted inside topo_chi,
    # and re-derived here)
    r = rng("acc8")
    for _ in range(15):
        kind = r.randrange(3)
        C, _ = (sample_smooth_cyclic(r) if kind == 0 else
                sample_nodal_cyclic(r) if kind == 1 else
                sample_rational_graph(r))
        plain = sum((2 - 2 * c.genus)
                    * (C.group.order // c.decomposition.order)
                    for c in C.components) - C.expanded_node_count()
        assert topo_chi(C).degree() == plain
    # [H^1(C, C)] = [H^0(omega)] on all-rational curves, three pipelines
    r = rng("acc8-rational")
    for _ in range(10):
        C, _ = sample_rational_graph(r)
        via_topology = hodge_h1_class(C)
        via_euler = h0_class(C, SheafSpec.omega(1))
        via_graph = rational_nodal_h0(C)
        assert via_topology == via_euler == via_graph


def test_criterion_09_pathology_regressions():
    for name in ("pathology_trivial_component", "p5_nodal"):
        sc = json.loads(bundled_text(name))
        C = gcurve_build(sc["curve"])
        qs = C.quotient_summary()
        assert qs["p_a_D"] >= 2, name
        h0 = h0_class(C, SheafSpec.omega(1))
        assert any(m == 0 for m in h0.mults()), name
        certs = {c["name"]: c for c in bound_certificates(C)}
        assert certs["all_irreducibles_in_h0_omega"]["holds"] is False, name


def test_criterion_10_desk_scale_reproduction():
    # every bundled worked example re-evaluates, with its frozen values and
    # oracle comparisons, in well under the desk-scale budget
    for name in list_bundled():
        t0 = time.monotonic()
        rep = evaluate_scenario(json.loads(bundled_text(name)), check=True)
        assert rep["ok"], name
        assert time.monotonic() - t0 < 10.0, name
