"""Orbit-level data model of a proper reduced nodal curve with a group action.

A curve is described by one record per G-orbit of irreducible components,
smooth marked points, and nodes.  Validation covers subgroup containments,
cyclicity and faithfulness of the cotangent characters, Riemann-Hurwitz
integrality of every component orbit, and (on request) stability and
faithfulness of the whole action.
"""
from __future__ import annotations

from fractions import Fraction

from .groups import (PermGroup, Subgroup, builtin_group, compose, inverse,
                     group_generate)
from .repring import RepClass, character_table


class SchemaError(ValueError):
    pass


class RHInconsistent(ValueError):
    pass


class NotFaithful(ValueError):
    pass


class NotStable(ValueError):
    pass


class NotConnected(ValueError):
    pass


class InconsistentSpec(ValueError):
    pass


def _attached(sub, attach):
    """The subgroup attached to the component attach * (base component):
    the conjugate attach * sub * attach^-1 (or sub itself for the base)."""
    if attach is None or attach == tuple(range(len(attach or ()))):
        return sub
    return sub.conjugate(attach)


# ---------------------------------------------------------------------------
# characters of stabilizers defined modulo an inertia kernel


class ThetaChar:
    """A character of a stabilizer H with values in mu_e, trivial exactly on K.

    Encoded by generator exponents; the full exponent map is computed by
    closure and checked for multiplicativity, surjectivity onto Z/e, and
    kernel exactly K (so H/K is cyclic and the character is faithful on it).
    """

    def __init__(self, H, K, gen_exponents, where="theta"):
        self.H = H
        self.K = K
        if K.order and H.order % K.order != 0:
            raise SchemaError(f"{where}: kernel does not divide the stabilizer")
        self.e = H.order // K.order
        if len(gen_exponents) != len(H.generators):
            raise SchemaError(f"{where}: one exponent per stabilizer generator "
                              f"required ({len(H.generators)} generators)")
        e = self.e
        ident = H.to_group().identity
        exps = {ident: 0}
        frontier = [ident]
        gens = list(zip(H.generators, [x % e for x in gen_exponents]))
        while frontier:
            nxt = []
            for h in frontier:
                for g, x in gens:
                    y = compose(h, g)
                    v = (exps[h] + x) % e if e > 1 else 0
                    if y in exps:
                        if exps[y] != v:
                            raise SchemaError(f"{where}: exponents do not define "
                                              "a character (multiplicativity fails)")
                    else:
                        exps[y] = v
                        nxt.append(y)
            frontier = nxt
        if len(exps) != H.order:
            raise SchemaError(f"{where}: generator closure mismatch")
        kernel = {h for h, v in exps.items() if v == 0}
        if kernel != set(K.elements):
            raise SchemaError(f"{where}: character kernel is not the inertia "
                              "(theta must be faithful on the cyclic quotient)")
        if e > 1 and set(exps.values()) != set(range(e)):
            raise SchemaError(f"{where}: character image is not all of Z/e")
        self.exponents = exps

    def value_exponent(self, h):
        return self.exponents[tuple(h)]

    def as_fraction(self, h):
        """The value as an element of Q/Z (exponent / e)."""
        return Fraction(self.value_exponent(h), self.e)

    def power_class(self, k):
        """RepClass of theta^k over the stabilizer group."""
        Hg = self.H.to_group()
        if self.e == 1:
            return RepClass.trivial(Hg)
        return RepClass.character(Hg,
                                  {h: (v * k) % self.e
                                   for h, v in self.exponents.items()},
                                  self.e)

    def rep_class(self):
        return self.power_class(1)


# ---------------------------------------------------------------------------
# orbit records


class MarkedOrbit:
    def __init__(self, oid, component_index, stabilizer, theta, in_T,
                 attach=None):
        self.id = oid
        self.component_index = component_index
        self.stabilizer = stabilizer
        self.theta = theta
        self.in_T = in_T
        # the base point lies on attach * (base component of the orbit)
        self.attach = attach

    @property
    def e(self):
        return self.theta.e


class NodeBranch:
    def __init__(self, component_index, stabilizer, theta, attach=None):
        self.component_index = component_index
        self.stabilizer = stabilizer          # G_Ptilde for this branch
        self.theta = theta
        # the branch point lies on attach * (base component of the orbit)
        self.attach = attach


class NodeOrbit:
    def __init__(self, oid, kind, stabilizer, branch_stabilizer, branches, sigma):
        self.id = oid
        self.kind = kind                      # "S1" | "S2"
        self.stabilizer = stabilizer          # G_P
        self.branch_stabilizer = branch_stabilizer  # G_Ptilde
        self.branches = branches              # two for S1, one for S2
        self.sigma = sigma                    # S2 only: element of G_P - G_Ptilde
        self.smoothable = None                # filled by validation

    def sign_exponents(self):
        """Exponent map of chi_P (order-2 character of G_P/G_Ptilde), S2 only."""
        bset = set(self.branch_stabilizer.elements)
        return {h: 0 if h in bset else 1 for h in self.stabilizer.elements}

    def chi_class(self):
        """[S|_P]: trivial for S1, the sign character chi_P for S2."""
        Gp = self.stabilizer.to_group()
        if self.kind == "S1":
            return RepClass.trivial(Gp)
        return RepClass.character(Gp, self.sign_exponents(), 2)


class ComponentOrbit:
    def __init__(self, oid, genus, decomposition, inertia, marked):
        self.id = oid
        self.genus = genus
        self.decomposition = decomposition    # G_i
        self.inertia = inertia                # I_i
        self.marked = marked
        self.quotient_genus = None            # g(D_j), from RH validation

    @property
    def n_eff(self):
        """|Gbar_i| = |G_i| / |I_i|."""
        return self.decomposition.order // self.inertia.order


class DualGraph:
    """Orbit-level dual graph plus its orbit-expanded plain graph."""

    def __init__(self, vertices, edges, expanded_vertices, expanded_edges,
                 expanded_components, vertex_action):
        self.vertices = vertices              # list of ComponentOrbit
        self.edges = edges                    # list of NodeOrbit
        self.expanded_vertices = expanded_vertices
        self.expanded_edges = expanded_edges  # list of (vkey, vkey, node_orbit_id)
        self.expanded_components = expanded_components  # list of frozensets
        self.vertex_action = vertex_action    # g -> permutation dict on vkeys

    def betti1(self):
        return (len(self.expanded_edges) - len(self.expanded_vertices)
                + len(self.expanded_components))


# ---------------------------------------------------------------------------
# the curve


class GCurve:
    def __init__(self, group, components, nodes):
        self.group = group
        self.components = components
        self.nodes = nodes
        self._validate_containments()
        self._build_expansion()
        self._validate_rh()
        for n in self.nodes:
            n.smoothable = node_smoothable(n)
        self.faithful = self._compute_faithful()
        self.stable = self._compute_stable()

    # -- lookups ------------------------------------------------------------

    def component_by_id(self, cid):
        for i, c in enumerate(self.components):
            if c.id == cid:
                return i
        raise SchemaError(f"unknown component id {cid!r}")

    def orbit_size_of(self, sub):
        return self.group.order // sub.order

    # -- validation ---------------------------------------------------------

    def _validate_containments(self):
        seen = set()
        for c in self.components:
            if c.id in seen:
                raise SchemaError(f"duplicate component id {c.id!r}")
            seen.add(c.id)
            if c.genus < 0:
                raise SchemaError("negative genus")
            if not c.inertia.is_normal_in(c.decomposition):
                raise SchemaError(f"inertia not normal in decomposition "
                                  f"group of component {c.id!r}")
            if not c.decomposition.contains_subgroup(c.inertia):
                raise SchemaError("inertia not contained in decomposition group")
            for m in c.marked:
                dec = _attached(c.decomposition, m.attach)
                iner = _attached(c.inertia, m.attach)
                if not dec.contains_subgroup(m.stabilizer):
                    raise SchemaError(f"marked orbit {m.id!r}: stabilizer not in "
                                      "the decomposition group of its component")
                if not m.stabilizer.contains_subgroup(iner):
                    raise SchemaError(f"marked orbit {m.id!r}: stabilizer does "
                                      "not contain the inertia group")
        for n in self.nodes:
            if n.kind == "S1":
                if n.branch_stabilizer.elements != n.stabilizer.elements:
                    raise SchemaError(f"node {n.id!r}: S1 requires "
                                      "branch stabilizer = stabilizer")
                if len(n.branches) != 2:
                    raise SchemaError(f"node {n.id!r}: S1 needs two branches")
            else:
                if len(n.branches) != 1:
                    raise SchemaError(f"node {n.id!r}: S2 needs one branch")
                if not n.stabilizer.contains_subgroup(n.branch_stabilizer) or \
                        n.stabilizer.order != 2 * n.branch_stabilizer.order:
                    raise SchemaError(f"node {n.id!r}: S2 requires the branch "
                                      "stabilizer to have index 2")
            for br in n.branches:
                comp = self.components[br.component_index]
                dec = _attached(comp.decomposition, br.attach)
                iner = _attached(comp.inertia, br.attach)
                if not dec.contains_subgroup(br.stabilizer):
                    raise SchemaError(f"node {n.id!r}: branch stabilizer not in "
                                      "the component decomposition group")
                if not br.stabilizer.contains_subgroup(iner):
                    raise SchemaError(f"node {n.id!r}: branch stabilizer does "
                                      "not contain the component inertia")

    def _component_point_orbits(self, ci):
        """All (stabilizer, e) point orbits on component orbit ci, with sources."""
        comp = self.components[ci]
        out = []
        for m in comp.marked:
            out.append(("marked", m, m.stabilizer, m.e))
        for n in self.nodes:
            for br in n.branches:
                if br.component_index == ci:
                    out.append(("branch", (n, br), br.stabilizer, br.theta.e))
        return out

    def _validate_rh(self):
        for ci, comp in enumerate(self.components):
            n = comp.n_eff
            ram = 0
            for _, _, stab, e in self._component_point_orbits(ci):
                ram += (n // e) * (e - 1)
            num = 2 * comp.genus - 2 - ram + 2 * n
            if num % (2 * n) != 0:
                raise RHInconsistent(
                    f"component {comp.id!r}: Riemann-Hurwitz has no integer "
                    f"quotient genus (2g-2 = {2*comp.genus-2}, ram = {ram}, "
                    f"|Gbar| = {n})")
            gd = num // (2 * n)
            if gd < 0:
                raise RHInconsistent(
                    f"component {comp.id!r}: negative quotient genus {gd}")
            comp.quotient_genus = gd

    def _build_expansion(self):
        G = self.group
        vkeys = []
        self._coset_index = {}
        for ci, comp in enumerate(self.components):
            reps = comp.decomposition.left_coset_reps(G)
            cosets = {}
            for x in reps:
                key = frozenset(compose(x, h)
                                for h in comp.decomposition.elements)
                cosets[key] = (ci, x)
            self._coset_index[ci] = cosets
            vkeys.extend((ci, x) for x in reps)
        self._vkeys = vkeys

        def vkey_of(ci, g):
            """Vertex key of the component g * (base component of orbit ci)."""
            comp = self.components[ci]
            key = frozenset(compose(g, h) for h in comp.decomposition.elements)
            return self._coset_index[ci][key]

        self._vkey_of = vkey_of
        eedges = []
        for n in self.nodes:
            reps = n.stabilizer.left_coset_reps(G)
            n.expanded_size = len(reps)
            ident = self.group.identity
            at = [br.attach if br.attach is not None else ident
                  for br in n.branches]
            for y in reps:
                if n.kind == "S1":
                    a = vkey_of(n.branches[0].component_index,
                                compose(y, at[0]))
                    b = vkey_of(n.branches[1].component_index,
                                compose(y, at[1]))
                else:
                    a = vkey_of(n.branches[0].component_index,
                                compose(y, at[0]))
                    b = vkey_of(n.branches[0].component_index,
                                compose(compose(y, n.sigma), at[0]))
                eedges.append((a, b, n.id, y))
        self._eedges = eedges
        # connected components of the expanded graph
        parent = {v: v for v in vkeys}

        def find(v):
            while parent[v] != v:
                parent[v] = parent[parent[v]]
                v = parent[v]
            return v

        for a, b, _, _ in eedges:
            ra, rb = find(a), find(b)
            if ra != rb:
                parent[ra] = rb
        groupsets = {}
        for v in vkeys:
            groupsets.setdefault(find(v), set()).add(v)
        self._expanded_components = [frozenset(s) for s in groupsets.values()]
        self.connected = len(self._expanded_components) == 1

    def _compute_faithful(self):
        G = self.group
        kernel = set(G.elements)
        for comp in self.components:
            core = set(comp.inertia.elements)
            for g in G.elements:
                gi = inverse(g)
                core &= {compose(compose(g, h), gi)
                         for h in comp.inertia.elements}
            kernel &= core
        return len(kernel) == 1

    def _compute_stable(self):
        if not self.connected:
            return False
        for ci, comp in enumerate(self.components):
            special = 0
            for n in self.nodes:
                for br in n.branches:
                    if br.component_index == ci:
                        # S2: the single branch orbit already covers both
                        # preimages of every node in the orbit
                        special += comp.decomposition.order // br.stabilizer.order
            if comp.genus == 0 and special < 3:
                return False
            if comp.genus == 1 and special < 1:
                return False
        return True

    # -- derived global data -------------------------------------------------

    def expanded_component_count(self):
        return len(self._vkeys)

    def expanded_node_count(self):
        return sum(n.expanded_size for n in self.nodes)

    def pi0(self):
        return len(self._expanded_components)

    def p_a(self):
        b1 = (self.expanded_node_count() - self.expanded_component_count()
              + self.pi0())
        total_genus = sum(c.genus * (self.group.order // c.decomposition.order)
                          for c in self.components)
        return total_genus + b1

    def chi_structure(self):
        """Plain chi(O_C) = sum chi(O_{Ctilde_i}) - #nodes."""
        s = sum((1 - c.genus) * (self.group.order // c.decomposition.order)
                for c in self.components)
        return s - self.expanded_node_count()

    def pi0_quotient(self):
        """Connected components of D = C/G: G-orbits of components of C."""
        G = self.group
        comps = self._expanded_components
        seen = set()
        count = 0
        for i, cc in enumerate(comps):
            if i in seen:
                continue
            count += 1
            seen.add(i)
            sample = next(iter(cc))
            for g in G.elements:
                img = self._vkey_of(sample[0], compose(g, sample[1]))
                for j, other in enumerate(comps):
                    if img in other:
                        seen.add(j)
                        break
        return count

    def pi0_orbit_stabilizers(self):
        """One stabilizer Subgroup per G-orbit of connected components of C."""
        G = self.group
        comps = self._expanded_components
        loc = {v: i for i, cc in enumerate(comps) for v in cc}
        seen = set()
        out = []
        for i, cc in enumerate(comps):
            if i in seen:
                continue
            sample = next(iter(cc))
            stab = []
            orbit = set()
            for g in G.elements:
                j = loc[self._vkey_of(sample[0], compose(g, sample[1]))]
                orbit.add(j)
                if j == i:
                    stab.append(g)
            seen |= orbit
            out.append(Subgroup(G, stab))
        return out

    def dual_graph(self):
        action = None
        return DualGraph(self.components, self.nodes, list(self._vkeys),
                         [(a, b, nid) for a, b, nid, _ in self._eedges],
                         self._expanded_components, action)

    def quotient_summary(self):
        s1 = [n for n in self.nodes if n.kind == "S1"]
        s2 = [n for n in self.nodes if n.kind == "S2"]
        branch_orbits = [m for c in self.components for m in c.marked if m.e > 1]
        t_orbits = [m for c in self.components for m in c.marked if m.in_T]
        pi0_d = self.pi0_quotient()
        p_a_d = (sum(c.quotient_genus for c in self.components)
                 + len(s1) - len(self.components) + pi0_d)
        return {
            "quotient_genera": {c.id: c.quotient_genus for c in self.components},
            "p_a_D": p_a_d,
            "pi0_D": pi0_d,
            "S_bar": len(self.nodes),
            "S1_bar": len(s1),
            "S2_bar": len(s2),
            "S3_bar": sum(1 for n in self.nodes if n.smoothable),
            "B": [(m.id, m.e, m.in_T) for m in branch_orbits],
            "T_bar": len(t_orbits),
        }

    def t_point_count(self):
        """Number of points of T on C (orbit-expanded)."""
        return sum(self.group.order // m.stabilizer.order
                   for c in self.components for m in c.marked if m.in_T)

    def normalization(self):
        """The smooth curve Ctilde: node branches become marked orbits.

        Twist flags are dropped; the result is treated as a bare smooth curve.
        """
        comps = []
        for ci, comp in enumerate(self.components):
            marked = [MarkedOrbit(m.id, ci, m.stabilizer, m.theta, False,
                                  attach=m.attach)
                      for m in comp.marked]
            for n in self.nodes:
                for bi, br in enumerate(n.branches):
                    if br.component_index == ci:
                        marked.append(MarkedOrbit(f"{n.id}.b{bi}", ci,
                                                  br.stabilizer, br.theta,
                                                  False, attach=br.attach))
            comps.append(ComponentOrbit(comp.id, comp.genus,
                                        comp.decomposition, comp.inertia,
                                        marked))
        return GCurve(self.group, comps, [])


def node_smoothable(n):
    """Character-level smoothability criterion for a node orbit."""
    if n.kind == "S1":
        t1, t2 = n.branches[0].theta, n.branches[1].theta
        for tau in n.stabilizer.elements:
            if (t1.as_fraction(tau) + t2.as_fraction(tau)) % 1 != 0:
                return False
        return True
    t1 = n.branches[0].theta
    sigma = n.sigma
    sigma_inv = inverse(sigma)
    for tau in n.branch_stabilizer.elements:
        conj = compose(compose(sigma, tau), sigma_inv)
        if (t1.as_fraction(tau) + t1.as_fraction(conj)) % 1 != 0:
            return False
    if t1.as_fraction(compose(sigma, sigma)) % 1 != 0:
        return False
    return True


# ---------------------------------------------------------------------------
# sheaf specification and resolution


class SheafSpec:
    def __init__(self, mode, m=1, rank=1, component_data=None, marked_data=None,
                 node_data=None, ample=False):
        self.mode = mode                      # structure | omega | generic
        self.m = m
        self.rank = rank
        self.component_data = component_data or {}
        self.marked_data = marked_data or {}
        self.node_data = node_data or {}
        self.ample = ample                    # generic mode: user asserts ampleness

    @staticmethod
    def structure():
        return SheafSpec("structure")

    @staticmethod
    def omega(m=1):
        return SheafSpec("omega", m=m)


class ResolvedSheaf:
    def __init__(self, curve, spec):
        self.curve = curve
        self.spec = spec
        self.rank = 1 if spec.mode in ("structure", "omega") else spec.rank
        self.comp_chi_plain = {}      # component id -> Fraction (integer)
        self.comp_chi_inertia = {}    # component id -> RepClass over I_i
        self.marked_fiber = {}        # marked id -> RepClass over G_P
        self.node_fiber = {}          # node id -> RepClass over G_P
        self.node_s_class = {}        # node id -> RepClass over G_P
        self.node_fiber_tensor_s = {} # node id -> RepClass over G_P
        self.branch_fiber = {}        # (node id, branch index) -> RepClass
        self._resolve()

    def _node_preimage_count(self, ci):
        comp = self.curve.components[ci]
        count = 0
        for n in self.curve.nodes:
            for br in n.branches:
                if br.component_index == ci:
                    count += comp.decomposition.order // br.stabilizer.order
        return count

    def _t_count(self, ci):
        comp = self.curve.components[ci]
        return sum(comp.decomposition.order // m.stabilizer.order
                   for m in comp.marked if m.in_T)

    def _resolve(self):
        spec, curve = self.spec, self.curve
        if spec.mode in ("structure", "omega"):
            m = 0 if spec.mode == "structure" else spec.m
            for ci, comp in enumerate(curve.components):
                deg = m * (2 * comp.genus - 2 + self._node_preimage_count(ci)
                           + self._t_count(ci))
                chi = deg + 1 - comp.genus
                self.comp_chi_plain[comp.id] = chi
                self.comp_chi_inertia[comp.id] = \
                    chi * RepClass.trivial(comp.inertia)
                for mk in comp.marked:
                    if m == 0 or mk.in_T:
                        self.marked_fiber[mk.id] = \
                            RepClass.trivial(mk.stabilizer)
                    else:
                        self.marked_fiber[mk.id] = mk.theta.power_class(m)
            for n in curve.nodes:
                s = n.chi_class()
                self.node_s_class[n.id] = s
                if spec.mode == "structure" or n.kind == "S1":
                    fib = RepClass.trivial(n.stabilizer)
                else:
                    fib = n.chi_class() if m % 2 else RepClass.trivial(n.stabilizer)
                self.node_fiber[n.id] = fib
                self.node_fiber_tensor_s[n.id] = fib.tensor(s)
                for bi, br in enumerate(n.branches):
                    self.branch_fiber[(n.id, bi)] = \
                        RepClass.trivial(br.stabilizer)
            return

        # generic mode
        r = spec.rank
        for ci, comp in enumerate(curve.components):
            data = spec.component_data.get(comp.id)
            if data is None:
                raise InconsistentSpec(f"no sheaf data for component {comp.id!r}")
            itab = character_table(comp.inertia)
            total_rank = 0
            chi_plain = 0
            chi_cls = RepClass.zero(comp.inertia)
            for piece in data:
                idx, prank, pdeg = piece["irr"], piece["rank"], piece["degree"]
                dim = itab.dims[idx]
                total_rank += prank * dim
                chi_v = prank * (1 - comp.genus) + pdeg
                chi_plain += chi_v * dim
                chi_cls = chi_cls + chi_v * RepClass.from_classfn(
                    itab.irreducibles[idx])
            if total_rank != r:
                raise InconsistentSpec(
                    f"component {comp.id!r}: isotypic ranks sum to "
                    f"{total_rank}, expected rank {r}")
            self.comp_chi_plain[comp.id] = chi_plain
            self.comp_chi_inertia[comp.id] = chi_cls
            for mk in comp.marked:
                self.marked_fiber[mk.id] = self._fiber_class(
                    spec.marked_data.get(mk.id), mk.stabilizer, mk.theta,
                    f"marked orbit {mk.id!r}")
                self._check_fiber(self.marked_fiber[mk.id], comp, data,
                                  f"marked orbit {mk.id!r}")
        for n in curve.nodes:
            s = n.chi_class()
            self.node_s_class[n.id] = s
            ndata = spec.node_data.get(n.id) or {}
            fib = self._fiber_class(ndata.get("fiber"), n.stabilizer, None,
                                    f"node {n.id!r}")
            self.node_fiber[n.id] = fib
            if "fiber_tensor_S" in ndata:
                ets = self._fiber_class(ndata["fiber_tensor_S"], n.stabilizer,
                                        None, f"node {n.id!r} (E tensor S)")
            else:
                ets = fib.tensor(s)
            self.node_fiber_tensor_s[n.id] = ets
            for bi, br in enumerate(n.branches):
                self.branch_fiber[(n.id, bi)] = fib.restrict(
                    br.stabilizer.to_group())

    def _fiber_class(self, data, stabilizer, theta, where):
        r = self.rank
        if data is None:
            if r == 1:
                return RepClass.trivial(stabilizer)
            raise InconsistentSpec(f"{where}: fiber class required for rank > 1")
        if "theta_power" in data:
            if theta is None:
                raise InconsistentSpec(f"{where}: theta_power needs a marked "
                                       "point with a cotangent character")
            cls = theta.power_class(data["theta_power"])
            if r != 1:
                raise InconsistentSpec(f"{where}: theta_power only for rank 1")
            return cls
        mults = [Fraction(x) for x in data["mults"]]
        cls = RepClass.from_mults(stabilizer, mults)
        if cls.degree() != r:
            raise InconsistentSpec(
                f"{where}: fiber class degree {cls.degree()} != rank {r}")
        return cls

    def _check_fiber(self, fiber, comp, pieces, where):
        """Restriction of the fiber to the inertia must match the isotypic fiber."""
        itab = character_table(comp.inertia)
        want = RepClass.zero(comp.inertia)
        for piece in pieces:
            want = want + piece["rank"] * RepClass.from_classfn(
                itab.irreducibles[piece["irr"]])
        got = fiber.restrict(comp.inertia.to_group())
        if got != want:
            raise InconsistentSpec(
                f"{where}: fiber restricted to the inertia does not match "
                "the isotypic decomposition")

    def chi_global(self):
        G = self.curve.group
        total = 0
        for comp in self.curve.components:
            total += (G.order // comp.decomposition.order) \
                * self.comp_chi_plain[comp.id]
        total -= self.rank * self.curve.expanded_node_count()
        return total


def sheaf_resolve(curve, spec):
    return ResolvedSheaf(curve, spec)


# ---------------------------------------------------------------------------
# JSON parsing


def _parse_group(obj):
    if "builtin" in obj:
        kind = obj["builtin"]
        if kind == "product":
            factors = [_parse_group(f) for f in obj["factors"]]
            if len(factors) != 2:
                raise SchemaError("product expects exactly two factors")
            return builtin_group("product", *factors)
        return builtin_group(kind, obj["n"])
    if "degree" in obj and "generators" in obj:
        return group_generate(obj["degree"],
                              [tuple(g) for g in obj["generators"]])
    raise SchemaError("group must give builtin/n or degree/generators")


def _parse_attach(G, obj, where):
    if obj is None:
        return None
    g = tuple(obj)
    if g not in G:
        raise SchemaError(f"{where}: attach element is not in the group")
    return g


def _parse_subgroup(G, obj, where):
    try:
        return Subgroup(G, [tuple(g) for g in obj.get("gens", [])])
    except Exception as exc:
        raise SchemaError(f"{where}: bad subgroup ({exc})") from exc


def gcurve_build(datum):
    """Build and validate a GCurve from a JSON-style dict."""
    if not isinstance(datum, dict):
        raise SchemaError("curve datum must be an object")
    try:
        G = _parse_group(datum["group"])
    except KeyError as exc:
        raise SchemaError("missing 'group'") from exc
    comps = []
    for i, cobj in enumerate(datum.get("components", [])):
        cid = cobj.get("id", f"c{i}")
        dec = _parse_subgroup(G, cobj.get("decomposition", {"gens": []}),
                              f"component {cid!r} decomposition")
        # default decomposition group: the whole group
        if "decomposition" not in cobj:
            dec = Subgroup(G, G.generators)
        iner = _parse_subgroup(G, cobj.get("inertia", {"gens": []}),
                               f"component {cid!r} inertia")
        marked = []
        for j, mobj in enumerate(cobj.get("marked", [])):
            mid = mobj.get("id", f"{cid}.m{j}")
            stab = _parse_subgroup(G, mobj.get("stabilizer", {"gens": []}),
                                   f"marked {mid!r} stabilizer")
            attach = _parse_attach(G, mobj.get("attach"), f"marked {mid!r}")
            kernel = stab.intersection(_attached(iner, attach))
            theta = ThetaChar(stab, kernel,
                              mobj.get("theta", {}).get("exponents", []),
                              where=f"marked {mid!r}")
            marked.append(MarkedOrbit(mid, i, stab, theta,
                                      bool(mobj.get("in_T", False)),
                                      attach=attach))
        if "genus" not in cobj:
            raise SchemaError(f"component {cid!r}: missing genus")
        comps.append(ComponentOrbit(cid, int(cobj["genus"]), dec, iner, marked))
    ids = {c.id: i for i, c in enumerate(comps)}
    nodes = []
    for k, nobj in enumerate(datum.get("nodes", [])):
        nid = nobj.get("id", f"n{k}")
        kind = nobj.get("kind")
        if kind not in ("S1", "S2"):
            raise SchemaError(f"node {nid!r}: kind must be S1 or S2")
        stab = _parse_subgroup(G, nobj.get("stabilizer", {"gens": []}),
                               f"node {nid!r} stabilizer")
        if kind == "S1":
            bstab = stab
        else:
            bstab = _parse_subgroup(G, nobj.get("branch_stabilizer",
                                                {"gens": []}),
                                    f"node {nid!r} branch stabilizer")
        branches = []
        for bobj in nobj.get("branches", []):
            if bobj.get("component") not in ids:
                raise SchemaError(f"node {nid!r}: unknown component "
                                  f"{bobj.get('component')!r}")
            ci = ids[bobj["component"]]
            attach = _parse_attach(G, bobj.get("attach"),
                                   f"node {nid!r} branch")
            kernel = bstab.intersection(_attached(comps[ci].inertia, attach))
            theta = ThetaChar(bstab, kernel,
                              bobj.get("theta", {}).get("exponents", []),
                              where=f"node {nid!r} branch")
            branches.append(NodeBranch(ci, bstab, theta, attach=attach))
        sigma = None
        if kind == "S2":
            bset = set(bstab.elements)
            sigma = next(g for g in stab.elements if g not in bset)
        nodes.append(NodeOrbit(nid, kind, stab, bstab, branches, sigma))
    return GCurve(G, comps, nodes)


def parse_sheaf(obj):
    mode = obj.get("mode")
    if mode == "structure":
        return SheafSpec.structure()
    if mode == "omega":
        return SheafSpec.omega(int(obj.get("m", 1)))
    if mode == "generic":
        return SheafSpec("generic", rank=int(obj.get("rank", 1)),
                         component_data=obj.get("components", {}),
                         marked_data=obj.get("marked", {}),
                         node_data=obj.get("nodes", {}),
                         ample=bool(obj.get("ample", False)))
    raise SchemaError("sheaf mode must be structure, omega, or generic")
