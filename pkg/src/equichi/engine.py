"""Exact equivariant Euler characteristics of sheaves on curves with group
actions.

The central quantity is the class chi_G(E) in R_k(G)_Q, assembled as a
rational multiple of the regular representation plus degree-zero local
contributions attached to component orbits, ramified smooth points, and
nodes.  Derived quantities: equivariant degree, global-section classes,
invariant-section dimensions, the equivariant deformation dimension, and
dual-graph / topological Euler classes with built-in cross-identities.
"""
from __future__ import annotations

from fractions import Fraction

from .gcurve import GCurve, SheafSpec, sheaf_resolve
from .repring import RepClass


class EngineInvariantViolation(AssertionError):
    """An internal exact identity of the computation failed."""


class PathMismatch(EngineInvariantViolation):
    """General and smoothable-node evaluations disagree."""


class ClosedFormMismatch(EngineInvariantViolation):
    """Character-sum value disagrees with the closed-form count."""


class NotAmple(ValueError):
    """No vanishing regime applies, so only the Euler class is available."""


class NotApplicable(ValueError):
    """A derived quantity's hypotheses are not met by this curve."""


# ---------------------------------------------------------------------------
# local contributions


def psi_class(theta):
    """The weight class Psi_P over the stabilizer: ((e-1)/2) R - sum d theta^d,
    with R the inflated regular representation of the cyclic quotient."""
    Hg = theta.H.to_group()
    e = theta.e
    if e == 1:
        return RepClass.zero(Hg)
    kset = set(theta.K.elements)
    R = RepClass(Hg, [e if rep in kset else 0 for rep in Hg.class_reps])
    acc = Fraction(e - 1, 2) * R
    for d in range(1, e):
        acc = acc - d * theta.power_class(d)
    return acc


def gamma_point_orbit(G, inertia, theta, fiber):
    """Orbit total of the smooth-point contributions: (|I|/|G_P|) Ind(Psi x fib)."""
    cls = psi_class(theta).tensor(fiber)
    return Fraction(inertia.order, theta.H.order) * cls.induce(G)


def gamma_component_orbit(curve, comp, resolved):
    """Orbit total of the component contributions."""
    I = comp.inertia
    chi_i = resolved.comp_chi_inertia[comp.id]
    chi_plain = resolved.comp_chi_plain[comp.id]
    inner = chi_i - Fraction(chi_plain, I.order) * RepClass.regular(I)
    return Fraction(I.order, comp.decomposition.order) * inner.induce(curve.group)


def gamma_node_orbit(curve, node, resolved):
    """Orbit total of the node contributions: branch pullback terms plus the
    torsion correction; cross-checked against the smoothable shortcut when
    the latter's hypotheses (smoothable action, trivial inertia) hold."""
    G = curve.group
    total = RepClass.zero(G)
    trivial_inertia = True
    for bi, br in enumerate(node.branches):
        I = curve.components[br.component_index].inertia
        trivial_inertia = trivial_inertia and I.order == 1
        fib = resolved.branch_fiber[(node.id, bi)]
        total = total + Fraction(I.order, br.stabilizer.order) \
            * psi_class(br.theta).tensor(fib).induce(G)
    Gp = node.stabilizer
    r = resolved.rank
    local = Fraction(r, Gp.order) * RepClass.regular(Gp) \
        - resolved.node_fiber_tensor_s[node.id]
    total = total + local.induce(G)
    if node.smoothable and trivial_inertia:
        if node.kind == "S1":
            fast = RepClass.zero(G)
        else:
            fib = resolved.node_fiber[node.id]
            chi_p = node.chi_class()
            fast = Fraction(1, 2) * fib.tensor(
                RepClass.trivial(Gp) - chi_p).induce(G)
        if fast != total:
            raise PathMismatch(
                f"node {node.id!r}: smoothable shortcut disagrees with the "
                "general evaluation")
    return total


# ---------------------------------------------------------------------------
# the main class


class ChiReport:
    """chi_G(E) together with its localized breakdown."""

    def __init__(self, curve, resolved, value, regular_mult, gamma_components,
                 gamma_marked, gamma_nodes):
        self.curve = curve
        self.resolved = resolved
        self.value = value
        self.regular_mult = regular_mult
        self.gamma_components = gamma_components
        self.gamma_marked = gamma_marked
        self.gamma_nodes = gamma_nodes

    def gammas(self):
        out = {}
        out.update(self.gamma_components)
        out.update(self.gamma_marked)
        out.update(self.gamma_nodes)
        return out


def chi_g(curve, resolved):
    """Assemble chi_G(E) from the global Euler characteristic and the local
    degree-zero contributions.  Every invariant is checked exactly."""
    if isinstance(resolved, SheafSpec):
        resolved = sheaf_resolve(curve, resolved)
    G = curve.group
    chi = resolved.chi_global()
    regular_mult = Fraction(chi, G.order)
    value = regular_mult * RepClass.regular(G)
    gcomp, gmark, gnode = {}, {}, {}
    for comp in curve.components:
        g = gamma_component_orbit(curve, comp, resolved)
        if g.degree() != 0:
            raise EngineInvariantViolation(
                f"component {comp.id!r}: contribution has nonzero degree")
        gcomp[comp.id] = g
        value = value + g
        for mk in comp.marked:
            gm = gamma_point_orbit(G, comp.inertia, mk.theta,
                                   resolved.marked_fiber[mk.id])
            if gm.degree() != 0:
                raise EngineInvariantViolation(
                    f"marked orbit {mk.id!r}: contribution has nonzero degree")
            gmark[mk.id] = gm
            value = value + gm
    for node in curve.nodes:
        gn = gamma_node_orbit(curve, node, resolved)
        if gn.degree() != 0:
            raise EngineInvariantViolation(
                f"node {node.id!r}: contribution has nonzero degree")
        gnode[node.id] = gn
        value = value + gn
    if value.degree() != chi:
        raise EngineInvariantViolation("chi_G degree differs from chi(E)")
    return ChiReport(curve, resolved, value, regular_mult, gcomp, gmark, gnode)


def deg_g(curve, resolved):
    """Equivariant degree: (deg E/|G|)[k[G]] + sum (Gamma_E - r Gamma_O)."""
    if isinstance(resolved, SheafSpec):
        resolved = sheaf_resolve(curve, resolved)
    rep_e = chi_g(curve, resolved)
    rep_o = chi_g(curve, sheaf_resolve(curve, SheafSpec.structure()))
    r = resolved.rank
    value = rep_e.value - r * rep_o.value
    deg = resolved.chi_global() - r * curve.chi_structure()
    if value.degree() != deg:
        raise EngineInvariantViolation(
            "equivariant degree is inconsistent with Riemann-Roch")
    return value


# ---------------------------------------------------------------------------
# global sections


def pi0_class(curve):
    """[H^0(C, O_C)]: the permutation class of G on connected components."""
    G = curve.group
    total = RepClass.zero(G)
    for stab in curve.pi0_orbit_stabilizers():
        total = total + RepClass.trivial(stab).induce(G)
    return total


def h0_class(curve, resolved):
    """[H^0(C, E)] in the regimes where higher cohomology is controlled."""
    if isinstance(resolved, SheafSpec):
        resolved = sheaf_resolve(curve, resolved)
    spec = resolved.spec
    if spec.mode == "structure":
        return pi0_class(curve)
    if spec.mode == "omega":
        m = spec.m
        t = curve.t_point_count()
        if m == 1 and t == 0:
            # H^1(omega) is dual to H^0(O), a self-dual permutation class
            return chi_g(curve, resolved).value + pi0_class(curve)
        if m + t >= 2 and m >= 1 and curve.stable:
            return chi_g(curve, resolved).value
        raise NotAmple("no vanishing regime for this twist of the canonical "
                       "sheaf (need a stable curve and m + #T >= 2)")
    if spec.ample:
        return chi_g(curve, resolved).value
    raise NotAmple("generic sheaf without an ampleness declaration")


def invariant_dim(curve, m):
    """<[1], chi_G(omega(T)^m)>, with the closed-form cross-check and, when a
    vanishing regime applies, the dimension of the invariant sections."""
    resolved = sheaf_resolve(curve, SheafSpec.omega(m))
    rep = chi_g(curve, resolved)
    inner = rep.value.inner(RepClass.trivial(curve.group))
    closed = None
    free_generically = all(c.inertia.order == 1 for c in curve.components)
    if curve.faithful and free_generically:
        qs = curve.quotient_summary()
        pa_d, t_bar, s2 = qs["p_a_D"], qs["T_bar"], qs["S2_bar"]
        closed = (1 - pa_d) + m * (2 * pa_d - 2 + t_bar)
        closed += (m - (m % 2)) * s2
        for comp in curve.components:
            for mk in comp.marked:
                if mk.e > 1 and not mk.in_T:
                    closed += (m * (mk.e - 1)) // mk.e
        if closed != inner:
            raise ClosedFormMismatch(
                f"invariant Euler number {inner} differs from the "
                f"closed form {closed} (m={m})")
    t = curve.t_point_count()
    if m == 1 and t == 0:
        dim = int(inner + curve.pi0_quotient())
    elif m + t >= 2 and m >= 1 and curve.stable:
        dim = int(inner)
    else:
        dim = None
    return {"euler_inner": inner, "closed_form": closed, "dimension": dim}


def def_dim(curve):
    """Dimension of the equivariant deformation space of a stable curve:
    3(p_a(D)-1) + #B + 2#S2bar - #Sbar + #S3bar."""
    if not curve.stable:
        raise NotApplicable("deformation dimension requires a stable curve")
    if not curve.faithful:
        raise NotApplicable("deformation dimension requires a faithful action")
    qs = curve.quotient_summary()
    return (3 * (qs["p_a_D"] - 1) + len(qs["B"]) + 2 * qs["S2_bar"]
            - qs["S_bar"] + qs["S3_bar"])


# ---------------------------------------------------------------------------
# dual graph and topology


def dual_graph_chi(curve):
    """Equivariant Euler class of the dual graph and the induced relation
    between H^0(omega) on the curve and on its normalization."""
    G = curve.group
    c0 = RepClass.zero(G)
    for comp in curve.components:
        c0 = c0 + RepClass.trivial(comp.decomposition).induce(G)
    c1 = RepClass.zero(G)
    for node in curve.nodes:
        if node.kind == "S1":
            c1 = c1 + RepClass.trivial(node.stabilizer).induce(G)
        else:
            c1 = c1 + node.chi_class().induce(G)
    graph = c0 - c1
    norm = curve.normalization()
    h0_tilde = chi_g(norm, sheaf_resolve(norm, SheafSpec.omega(1))).value \
        + pi0_class(norm)
    if pi0_class(norm) != c0:
        raise EngineInvariantViolation(
            "components of the normalization do not match the graph vertices")
    out = {"vertices_class": c0, "edges_class": c1, "graph_class": graph,
           "h0_omega_normalization": h0_tilde}
    if curve.connected:
        h0_graph = h0_tilde + RepClass.trivial(G) - graph
        h0_direct = h0_class(curve, SheafSpec.omega(1))
        if h0_graph != h0_direct:
            raise EngineInvariantViolation(
                "dual-graph expression for [H^0(omega)] disagrees with the "
                "direct computation")
        out["h0_omega"] = h0_graph
    return out


def topo_chi(curve):
    """Equivariant topological Euler characteristic, assembled stratum by
    stratum (open parts of components, ramified marked orbits, nodes)."""
    G = curve.group
    total = RepClass.zero(G)
    for ci, comp in enumerate(curve.components):
        punctures = sum(1 for mk in comp.marked if mk.e > 1)
        for node in curve.nodes:
            for br in node.branches:
                if br.component_index == ci:
                    punctures += 1
        chi_open = 2 - 2 * comp.quotient_genus - punctures
        total = total + chi_open * RepClass.trivial(comp.inertia).induce(G)
    for comp in curve.components:
        for mk in comp.marked:
            if mk.e > 1:
                total = total + RepClass.trivial(mk.stabilizer).induce(G)
    for node in curve.nodes:
        total = total + RepClass.trivial(node.stabilizer).induce(G)
    plain = sum((2 - 2 * c.genus) * (G.order // c.decomposition.order)
                for c in curve.components) - curve.expanded_node_count()
    if total.degree() != plain:
        raise EngineInvariantViolation(
            "stratified Euler characteristic differs from the plain count")
    return total


def hodge_h1_class(curve):
    """[H^1(C, Q)] from the topological Euler class: [H^0] + [H^2] - chi_top."""
    G = curve.group
    h0 = pi0_class(curve)
    h2 = RepClass.zero(G)
    for comp in curve.components:
        h2 = h2 + RepClass.trivial(comp.decomposition).induce(G)
    h1 = h0 + h2 - topo_chi(curve)
    if h1.conj_dual() != h1:
        raise EngineInvariantViolation("[H^1(C, Q)] is not self-dual")
    return h1


# ---------------------------------------------------------------------------
# effectivity certificates


def bound_certificates(curve):
    """Evaluate representation-theoretic lower bounds on section classes.

    Each certificate records its hypotheses and whether the bound holds for
    this curve; bounds whose hypotheses fail in the singular setting are
    still evaluated so that counterexamples are visible.
    """
    G = curve.group
    certs = []
    qs = curve.quotient_summary()
    if curve.connected and curve.faithful and qs["p_a_D"] >= 2:
        h0 = h0_class(curve, SheafSpec.omega(1))
        mults = h0.mults()
        certs.append({
            "name": "h0_omega_contains_regular",
            "hypotheses_met": not curve.nodes,
            "holds": (h0 - RepClass.regular(G)).is_effective(),
        })
        certs.append({
            "name": "all_irreducibles_in_h0_omega",
            "hypotheses_met": not curve.nodes,
            "holds": all(mu > 0 for mu in mults),
        })
    free_generically = all(c.inertia.order == 1 for c in curve.components)
    if curve.stable and free_generically:
        # E = omega^2, so E x omega^{-1} = omega is ample on a stable curve
        resolved = sheaf_resolve(curve, SheafSpec.omega(2))
        chi2 = chi_g(curve, resolved).value
        for node in curve.nodes:
            fib = resolved.node_fiber[node.id]
            certs.append({
                "name": f"chi_bounds_node_fiber:{node.id}",
                "hypotheses_met": True,
                "holds": (chi2 - fib.induce(G)).is_effective(),
            })
            if node.stabilizer.order == 1:
                certs.append({
                    "name": f"chi_contains_regular_free_node:{node.id}",
                    "hypotheses_met": True,
                    "holds": (chi2 - RepClass.regular(G)).is_effective(),
                })
    return certs
