"""Shared randomized-scenario samplers for the test suite.

All randomness is drawn from per-suite generators seeded from EQUICHI_SEED
(default fixed), so every run is reproducible and byte-identical.
"""
import os
import random
from fractions import Fraction
from math import gcd

from equichi.gcurve import SheafSpec, gcurve_build
from equichi.groups import builtin_group

SEED = os.environ.get("EQUICHI_SEED", "20260824")


def rng(tag):
    return random.Random(f"{SEED}:{tag}")


def cyc(n):
    return [(i + 1) % n for i in range(n)]


def group_pool():
    """(label, group-spec, PermGroup) triples used across randomized suites."""
    out = []
    for n in (2, 3, 4, 5, 6):
        out.append((f"Z{n}", {"builtin": "cyclic", "n": n},
                    builtin_group("cyclic", n)))
    out.append(("S3", {"builtin": "symmetric", "n": 3},
                builtin_group("symmetric", 3)))
    out.append(("D4", {"builtin": "dihedral", "n": 4},
                builtin_group("dihedral", 4)))
    return out


# ---------------------------------------------------------------------------
# curve samplers (all with trivial component inertia, so the generic action
# is free and the closed-form regimes apply)


def _fix_parity_and_genus(n, orbits, r):
    """Given full-stabilizer orbit ramification indices, return a genus
    making Riemann-Hurwitz integral with quotient genus >= 0."""
    ram = sum((n // e) * (e - 1) for e in orbits)
    if ram % 2:
        orbits.append(n)          # add one more totally ramified orbit
        ram += n - 1
        if ram % 2:               # n even: add a second one
            orbits.append(n)
            ram += n - 1
    gd = r.randint(0, 2)
    while n * (2 * gd - 2) + ram < -2 or (n * (2 * gd - 2) + ram + 2) // 2 < 2:
        gd += 1
    g = (n * (2 * gd - 2) + ram + 2) // 2
    return orbits, g


def sample_smooth_cyclic(r):
    """A smooth curve with a cyclic group acting with totally or partially
    ramified marked orbits (trivial inertia, faithful)."""
    n = r.randint(2, 6)
    gen = cyc(n)
    divisors = [e for e in range(2, n + 1) if n % e == 0]
    k = r.randint(1, 4)
    es = [r.choice(divisors) for _ in range(k)]
    es, g = _fix_parity_and_genus(n, es, r)
    marked = []
    for i, e in enumerate(es):
        sub = cyc(n) if e == n else [
            tuple((j + n // e) % n for j in range(n))]
        stab_gen = gen if e == n else list(sub[0])
        x = r.choice([x for x in range(1, e) if gcd(x, e) == 1])
        marked.append({"id": f"p{i}", "stabilizer": {"gens": [stab_gen]},
                       "theta": {"exponents": [x]},
                       "in_T": r.random() < 0.3})
    datum = {
        "group": {"builtin": "cyclic", "n": n},
        "components": [{"id": "c0", "genus": g,
                        "decomposition": {"gens": [gen]},
                        "inertia": {"gens": []},
                        "marked": marked}],
        "nodes": [],
    }
    return gcurve_build(datum), datum


def sample_nodal_cyclic(r, smoothable_only=False):
    """A one-component nodal curve with fixed and free nodes under a cyclic
    group (trivial inertia, faithful)."""
    n = r.randint(2, 6)
    gen = cyc(n)
    orbits = []
    nodes = []
    n_fixed = r.randint(1, 2)
    for i in range(n_fixed):
        x = r.choice([x for x in range(1, n) if gcd(x, n) == 1])
        if smoothable_only:
            y = (-x) % n
            if gcd(y, n) != 1:
                continue
        else:
            y = r.choice([y for y in range(1, n) if gcd(y, n) == 1])
        nodes.append({"id": f"nf{i}", "kind": "S1",
                      "stabilizer": {"gens": [gen]},
                      "branches": [{"component": "c0",
                                    "theta": {"exponents": [x]}},
                                   {"component": "c0",
                                    "theta": {"exponents": [y]}}]})
        orbits += [n, n]
    if r.random() < 0.5:
        nodes.append({"id": "nfree", "kind": "S1", "stabilizer": {"gens": []},
                      "branches": [{"component": "c0",
                                    "theta": {"exponents": []}},
                                   {"component": "c0",
                                    "theta": {"exponents": []}}]})
        orbits += [1, 1]
    marked = []
    n_marked = r.randint(0, 2)
    for i in range(n_marked):
        x = r.choice([x for x in range(1, n) if gcd(x, n) == 1])
        marked.append({"id": f"p{i}", "stabilizer": {"gens": [gen]},
                       "theta": {"exponents": [x]},
                       "in_T": r.random() < 0.3})
        orbits.append(n)
    k0 = len(orbits)
    extra, g = _fix_parity_and_genus(n, orbits, r)
    for j in range(k0, len(extra)):
        marked.append({"id": f"q{j}", "stabilizer": {"gens": [gen]},
                       "theta": {"exponents": [1]}, "in_T": False})
    datum = {
        "group": {"builtin": "cyclic", "n": n},
        "components": [{"id": "c0", "genus": g,
                        "decomposition": {"gens": [gen]},
                        "inertia": {"gens": []},
                        "marked": marked}],
        "nodes": nodes,
    }
    return gcurve_build(datum), datum


def sample_free(r):
    """A connected curve with a free action of Z/n, S_3, or D_4."""
    label, spec, G = r.choice(group_pool())
    gd = r.randint(2, 4)
    g = G.order * (gd - 1) + 1
    datum = {
        "group": spec,
        "components": [{"id": "c0", "genus": g,
                        "decomposition": {"gens": [list(x)
                                                   for x in G.generators]},
                        "inertia": {"gens": []},
                        "marked": []}],
        "nodes": [],
    }
    return gcurve_build(datum), datum


def sample_rational_graph(r):
    """A nodal curve with rational components whose dual graph carries the
    group action: cycles of lines, generalized theta graphs, and free
    Cayley-type gluings over Z/n and S_3."""
    kind = r.choice(["cycle", "theta", "cayley_s3", "wheel"])
    if kind == "cycle":
        n = r.randint(3, 7)
        j = r.randint(1, n - 1)
        att = [(i + j) % n for i in range(n)]
        datum = {
            "group": {"builtin": "cyclic", "n": n},
            "components": [{"id": "c0", "genus": 0,
                            "decomposition": {"gens": []},
                            "inertia": {"gens": []}, "marked": []}],
            "nodes": [{"id": "n0", "kind": "S1", "stabilizer": {"gens": []},
                       "branches": [{"component": "c0",
                                     "theta": {"exponents": []}},
                                    {"component": "c0",
                                     "theta": {"exponents": []},
                                     "attach": att}]}],
        }
    elif kind == "theta":
        n = r.randint(2, 5)
        gen = cyc(n)
        x = r.choice([x for x in range(1, n) if gcd(x, n) == 1])
        comps = []
        for cid in ("a", "b"):
            comps.append({"id": cid, "genus": 0,
                          "decomposition": {"gens": [gen]},
                          "inertia": {"gens": []},
                          "marked": [{"id": f"{cid}0",
                                      "stabilizer": {"gens": [gen]},
                                      "theta": {"exponents": [x]}},
                                     {"id": f"{cid}1",
                                      "stabilizer": {"gens": [gen]},
                                      "theta": {"exponents": [(-x) % n]}}]})
        nodes = [{"id": "n0", "kind": "S1", "stabilizer": {"gens": []},
                  "branches": [{"component": "a", "theta": {"exponents": []}},
                               {"component": "b", "theta": {"exponents": []}}]}]
        datum = {"group": {"builtin": "cyclic", "n": n},
                 "components": comps, "nodes": nodes}
    elif kind == "wheel":
        # fixed hub line with two ramified marks, free rim lines in a cycle,
        # spokes joining each rim line to the hub
        n = r.randint(3, 6)
        gen = cyc(n)
        x = r.choice([x for x in range(1, n) if gcd(x, n) == 1])
        att = [(i + 1) % n for i in range(n)]
        datum = {
            "group": {"builtin": "cyclic", "n": n},
            "components": [
                {"id": "hub", "genus": 0, "decomposition": {"gens": [gen]},
                 "inertia": {"gens": []},
                 "marked": [{"id": "h0", "stabilizer": {"gens": [gen]},
                             "theta": {"exponents": [x]}},
                            {"id": "h1", "stabilizer": {"gens": [gen]},
                             "theta": {"exponents": [(-x) % n]}}]},
                {"id": "rim", "genus": 0, "decomposition": {"gens": []},
                 "inertia": {"gens": []}, "marked": []},
            ],
            "nodes": [
                {"id": "spoke", "kind": "S1", "stabilizer": {"gens": []},
                 "branches": [{"component": "rim", "theta": {"exponents": []}},
                              {"component": "hub", "theta": {"exponents": []}}]},
                {"id": "ring", "kind": "S1", "stabilizer": {"gens": []},
                 "branches": [{"component": "rim", "theta": {"exponents": []}},
                              {"component": "rim", "theta": {"exponents": []},
                               "attach": att}]},
            ],
        }
    else:  # cayley_s3
        G = builtin_group("symmetric", 3)
        ident = G.identity
        others = [list(g) for g in G.elements if g != ident]
        n_edges = r.randint(1, 3)
        nodes = []
        for i in range(n_edges):
            att = r.choice(others)
            nodes.append({"id": f"e{i}", "kind": "S1",
                          "stabilizer": {"gens": []},
                          "branches": [{"component": "c0",
                                        "theta": {"exponents": []}},
                                       {"component": "c0",
                                        "theta": {"exponents": []},
                                        "attach": att}]})
        datum = {
            "group": {"builtin": "symmetric", "n": 3},
            "components": [{"id": "c0", "genus": 0,
                            "decomposition": {"gens": []},
                            "inertia": {"gens": []}, "marked": []}],
            "nodes": nodes,
        }
    return gcurve_build(datum), datum


# ---------------------------------------------------------------------------
# generic-sheaf samplers on trivial-inertia curves


def _composition(r, total, parts):
    out = [0] * parts
    for _ in range(total):
        out[r.randrange(parts)] += 1
    return out


def sample_generic_sheaf(r, curve, rank=None):
    """A random generic-mode sheaf spec on a curve with trivial component
    inertia: random isotypic degrees and random fiber classes of the right
    degree at every marked point and node."""
    from equichi.repring import character_table
    rank = rank or r.randint(1, 3)
    comp_data, marked_data, node_data = {}, {}, {}
    for comp in curve.components:
        comp_data[comp.id] = [{"irr": 0, "rank": rank,
                               "degree": r.randint(-5, 8)}]
        for mk in comp.marked:
            tab = character_table(mk.stabilizer)
            marked_data[mk.id] = {"mults": _composition(r, rank, len(tab))}
    for node in curve.nodes:
        tab = character_table(node.stabilizer)
        node_data[node.id] = {"fiber": {"mults": _composition(r, rank,
                                                              len(tab))}}
    return SheafSpec("generic", rank=rank, component_data=comp_data,
                     marked_data=marked_data, node_data=node_data)


def bump_degrees(spec, bumps):
    """A copy of a generic spec with per-component degree shifts and the
    same fiber data everywhere."""
    comp_data = {cid: [dict(p) for p in pieces]
                 for cid, pieces in spec.component_data.items()}
    for cid, d in bumps.items():
        comp_data[cid][0]["degree"] += d
    return SheafSpec("generic", rank=spec.rank, component_data=comp_data,
                     marked_data=spec.marked_data, node_data=spec.node_data)


def total_degree(curve, spec):
    """deg E = chi(E) - r chi(O) for a generic spec."""
    from equichi.gcurve import sheaf_resolve
    res = sheaf_resolve(curve, spec)
    return res.chi_global() - res.rank * curve.chi_structure()


def closed_form_value(curve, m):
    """Independent evaluation of the invariant-dimension closed form from the
    quotient data."""
    qs = curve.quotient_summary()
    val = (1 - qs["p_a_D"]) + m * (2 * qs["p_a_D"] - 2 + qs["T_bar"])
    val += (m - m % 2) * qs["S2_bar"]
    for comp in curve.components:
        for mk in comp.marked:
            if mk.e > 1 and not mk.in_T:
                val += (m * (mk.e - 1)) // mk.e
    return val
