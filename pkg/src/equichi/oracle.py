"""Independent brute-force checks for the main engine.

Two oracles, both avoiding the localized character formulas entirely:

* superelliptic curves y^n = prod (x - x_i)^{a_i}: eigenspaces of
  pluricanonical sections are enumerated from explicit valuation bounds on a
  monomial basis;
* curves with rational components: [H^0(omega)] is read off from the
  G-action on the dual graph by counting fixed vertices, fixed edges (with
  orientation signs), and fixed connected components.
"""
from __future__ import annotations

from fractions import Fraction
from math import gcd

from .cyclo import Cyclotomic
from .groups import compose, inverse
from .repring import RepClass


class OracleError(ValueError):
    pass


# ---------------------------------------------------------------------------
# superelliptic curves


def superelliptic_genus(n, exponents):
    """Genus of the smooth model of y^n = prod (x - x_i)^{a_i}."""
    _check_superelliptic(n, exponents)
    total = sum(exponents)
    d = gcd(total, n)          # number of places at infinity
    b = len(exponents)
    two_g = -2 * n + b * (n - 1) + (n - d) + 2
    if two_g % 2:
        raise OracleError("parity failure in the genus count")
    return two_g // 2


def _check_superelliptic(n, exponents):
    if n < 2:
        raise OracleError("need a covering degree n >= 2")
    for a in exponents:
        if gcd(a % n, n) != 1:
            raise OracleError("branch exponents must be prime to n "
                              "(total ramification over each branch point)")


def superelliptic_h0(n, exponents, m):
    """Eigenspace dimensions of H^0(C, omega^m) for the cyclic cover
    y^n = prod (x - x_i)^{a_i} with pairwise distinct x_i.

    The space is decomposed by the exponent b of y^{-b}; candidate sections
    are x^j * prod (x - x_i)^{-k_i} * y^{-b} (dx)^m with maximal k_i allowed
    by the valuations over x_i, and the count of admissible j comes from the
    valuations at infinity.  Returns {b: dimension}.
    """
    _check_superelliptic(n, exponents)
    if m < 0:
        raise OracleError("only nonnegative pluricanonical powers")
    total = sum(exponents)
    d = gcd(total, n)
    e_inf = n // d
    dims = {}
    for b in range(n):
        ks = [(m * (n - 1) - b * a) // n for a in exponents]
        # valuation at each place over infinity:
        #   -e j + e sum(k) + b total/d - m (e + 1) >= 0
        num = b * (total // d) - m * (e_inf + 1)
        j_max = sum(ks) + _floor_div(num, e_inf)
        dims[b] = max(0, j_max + 1)
    if m == 1:
        g = superelliptic_genus(n, exponents)
        if sum(dims.values()) != g:
            raise OracleError("holomorphic differentials do not add up to "
                              "the genus")
    return dims


def _floor_div(a, b):
    return a // b


def superelliptic_scenario(n, exponents, name="superelliptic"):
    """Engine-side description of the same curve: a cyclic group of order n
    acting on the smooth model, with one totally ramified marked orbit per
    branch point.  Cotangent characters: the exponent at branch i is the
    inverse of a_i mod n; over infinity it is the inverse of -sum(a_i)
    when that place is totally ramified.
    """
    _check_superelliptic(n, exponents)
    total = sum(exponents)
    d = gcd(total, n)
    if d not in (1, n):
        raise OracleError("only split or totally ramified infinity supported")
    gen = [(i + 1) % n for i in range(n)]
    marked = []
    for i, a in enumerate(exponents):
        marked.append({"id": f"p{i}", "stabilizer": {"gens": [gen]},
                       "theta": {"exponents": [pow(a, -1, n)]}})
    if d == 1:
        marked.append({"id": "pinf", "stabilizer": {"gens": [gen]},
                       "theta": {"exponents": [pow(-total, -1, n)]}})
    return {
        "name": name,
        "group": {"builtin": "cyclic", "n": n},
        "components": [{"id": "c0", "genus": superelliptic_genus(n, exponents),
                        "decomposition": {"gens": [gen]},
                        "inertia": {"gens": []},
                        "marked": marked}],
        "nodes": [],
    }


def superelliptic_mults(n, dims):
    """Translate {b: dim} into engine multiplicities: the y^{-b} eigenspace
    carries the character sending the canonical generator to zeta_n^{-b}."""
    return {(-b) % n: dim for b, dim in dims.items()}


def character_exponent_mults(curve, cls, gen, n):
    """Multiplicity of each power of the order-n character determined by
    gen -> zeta_n in a RepClass over a cyclic group."""
    G = curve.group
    out = {}
    for r in range(n):
        exps = {}
        cur = G.identity
        for k in range(n):
            exps[cur] = (k * r) % n
            cur = compose(tuple(gen), cur)
        chi = RepClass.character(G, exps, n)
        out[r] = cls.inner(chi)
    return out


# ---------------------------------------------------------------------------
# dual-graph homology by direct orbit counting


def _edge_keys(curve):
    out = []
    for a, b, nid, y in curve._eedges:
        node = next(nd for nd in curve.nodes if nd.id == nid)
        coset = frozenset(compose(y, h) for h in node.stabilizer.elements)
        out.append((node, coset, y))
    return out


def graph_homology_rep(curve):
    """([H_0], [H_1]) of the dual graph of C as G-representation classes,
    computed from fixed-point counts of every group element."""
    G = curve.group
    edges = _edge_keys(curve)
    comps = curve._expanded_components
    vals0, vals1 = [], []
    for g in G.class_reps:
        # fixed connected components (setwise)
        tc = 0
        for cc in comps:
            img = {curve._vkey_of(ci, compose(g, x)) for ci, x in cc}
            if img == cc:
                tc += 1
        # fixed vertices
        t0 = sum(1 for ci, x in curve._vkeys
                 if curve._vkey_of(ci, compose(g, x)) == (ci, x))
        # fixed edges with orientation sign
        t1 = 0
        for node, coset, y in edges:
            img = frozenset(compose(g, z) for z in coset)
            if img != coset:
                continue
            if node.kind == "S1":
                t1 += 1
            else:
                h = compose(inverse(y), compose(g, y))
                t1 += 1 if h in node.branch_stabilizer else -1
        vals0.append(tc)
        vals1.append(t1 - t0 + tc)
    h0 = RepClass(G, [Cyclotomic.from_rational(v) for v in vals0])
    h1 = RepClass(G, [Cyclotomic.from_rational(v) for v in vals1])
    return h0, h1


def rational_nodal_h0(curve):
    """[H^0(C, omega_C)] for a nodal curve whose components are all rational:
    equal to the first homology class of the dual graph."""
    if any(c.genus != 0 for c in curve.components):
        raise OracleError("this oracle needs all components rational")
    _, h1 = graph_homology_rep(curve)
    return h1
