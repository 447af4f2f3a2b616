"""Concrete finite groups as permutation groups.

Elements are tuples of images (a bijection of {0..d-1}).  Groups are fully
enumerated (breadth-first closure, capped at 512 elements) with a
deterministic lexicographic element ordering, conjugacy classes computed by
conjugation orbits, and minimal-element class representatives.
"""
from __future__ import annotations

from functools import lru_cache

ORDER_CAP = 512


class TooLarge(ValueError):
    """Closure exceeded the group-order cap."""


class NotInParent(ValueError):
    """Subgroup generators are not elements of the parent group."""


class NotNormal(ValueError):
    """Quotient requested by a non-normal subgroup."""


class UnsupportedParams(ValueError):
    """Builtin group family parameters out of range."""


def identity_perm(degree):
    return tuple(range(degree))


def compose(a, b):
    """The permutation 'a after b': (a*b)(i) = a(b(i))."""
    return tuple(a[b[i]] for i in range(len(a)))


def inverse(a):
    out = [0] * len(a)
    for i, j in enumerate(a):
        out[j] = i
    return tuple(out)


def perm_order(a):
    e = identity_perm(len(a))
    p, n = a, 1
    while p != e:
        p = compose(p, a)
        n += 1
    return n


def is_perm(images, degree):
    return (len(images) == degree and sorted(images) == list(range(degree)))


def _closure(degree, gens, cap=ORDER_CAP):
    e = identity_perm(degree)
    seen = {e}
    frontier = [e]
    gens = [tuple(g) for g in gens]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = compose(x, g)
                if y not in seen:
                    if len(seen) >= cap:
                        raise TooLarge(f"group closure exceeds {cap} elements")
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return sorted(seen)


class PermGroup:
    """A fully enumerated permutation group with conjugacy-class data."""

    def __init__(self, degree, generators, name=None, _elements=None):
        self.degree = degree
        self.generators = [tuple(g) for g in generators]
        for g in self.generators:
            if not is_perm(g, degree):
                raise ValueError(f"{g} is not a permutation of degree {degree}")
        if _elements is None:
            self.elements = _closure(degree, self.generators)
        else:
            self.elements = sorted(_elements)
        self.name = name
        self._index = {g: i for i, g in enumerate(self.elements)}
        self.identity = identity_perm(degree)
        self._build_classes()

    def _build_classes(self):
        unassigned = set(self.elements)
        classes = []
        for g in self.elements:          # lexicographic order: reps are minimal
            if g not in unassigned:
                continue
            orbit = {g}
            frontier = [g]
            while frontier:
                x = frontier.pop()
                for h in self.elements:
                    y = compose(compose(h, x), inverse(h))
                    if y not in orbit:
                        orbit.add(y)
                        frontier.append(y)
            unassigned -= orbit
            classes.append(sorted(orbit))
        self.classes = classes
        self.class_reps = [c[0] for c in classes]
        self.class_sizes = [len(c) for c in classes]
        self._class_of = {}
        for i, c in enumerate(classes):
            for g in c:
                self._class_of[g] = i

    @property
    def order(self):
        return len(self.elements)

    def __len__(self):
        return len(self.elements)

    def __contains__(self, g):
        return tuple(g) in self._index

    def __eq__(self, other):
        return (isinstance(other, PermGroup)
                and self.degree == other.degree
                and self.elements == other.elements)

    def __hash__(self):
        return hash((self.degree, tuple(self.elements)))

    def class_of(self, g):
        return self._class_of[tuple(g)]

    def multiply(self, a, b):
        return compose(a, b)

    def inverse(self, a):
        return inverse(a)

    def element_order(self, g):
        return perm_order(g)

    def exponent(self):
        from math import lcm
        return lcm(*(perm_order(r) for r in self.class_reps))

    def is_abelian(self):
        return all(s == 1 for s in self.class_sizes)

    def subgroup(self, gens):
        return Subgroup(self, gens)

    def trivial_subgroup(self):
        return Subgroup(self, [])

    def full_subgroup(self):
        return Subgroup(self, self.generators)

    def __repr__(self):
        label = self.name or f"degree-{self.degree}"
        return f"PermGroup({label}, order={self.order})"


class Subgroup:
    """A subgroup given relative to a fixed parent PermGroup."""

    def __init__(self, parent, gens):
        self.parent = parent
        self.generators = [tuple(g) for g in gens]
        for g in self.generators:
            if g not in parent:
                raise NotInParent(f"{g} is not in the parent group")
        self.elements = _closure(parent.degree, self.generators, cap=parent.order)
        self._set = set(self.elements)
        if parent.order % len(self.elements) != 0:
            raise AssertionError("Lagrange violation (corrupt group data)")
        self._group = None

    @property
    def order(self):
        return len(self.elements)

    def __len__(self):
        return len(self.elements)

    def __contains__(self, g):
        return tuple(g) in self._set

    def __eq__(self, other):
        return (isinstance(other, Subgroup) and self.parent == other.parent
                and self.elements == other.elements)

    def __hash__(self):
        return hash((self.parent, tuple(self.elements)))

    def to_group(self):
        """The subgroup as a standalone PermGroup (same degree, own classes)."""
        if self._group is None:
            self._group = PermGroup(self.parent.degree, self.generators,
                                    _elements=self.elements)
        return self._group

    def is_normal_in(self, ambient=None):
        """Brute-force normality check in `ambient` (default: the parent)."""
        amb = ambient.elements if ambient is not None else self.parent.elements
        for g in amb:
            gi = inverse(g)
            for h in self.elements:
                if compose(compose(g, h), gi) not in self._set:
                    return False
        return True

    def contains_subgroup(self, other):
        return all(h in self._set for h in other.elements)

    def intersection(self, other):
        common = [g for g in self.elements if g in other]
        return Subgroup(self.parent, common)

    def conjugate(self, g):
        gi = inverse(g)
        return Subgroup(self.parent,
                        [compose(compose(g, h), gi) for h in self.elements])

    def left_coset_reps(self, ambient=None):
        """Deterministic (minimal-element) reps of cosets x*H in the ambient group."""
        amb = ambient.elements if ambient is not None else self.parent.elements
        seen = set()
        reps = []
        for x in amb:          # lexicographic order: reps are minimal in coset
            coset = frozenset(compose(x, h) for h in self.elements)
            if coset not in seen:
                seen.add(coset)
                reps.append(x)
        return reps

    def __repr__(self):
        return f"Subgroup(order={self.order} of {self.parent!r})"


class QuotientGroup:
    """G/N realized as a PermGroup via the regular action on left cosets."""

    def __init__(self, parent, kernel):
        if not kernel.is_normal_in():
            raise NotNormal("kernel is not normal in the parent")
        self.parent = parent
        self.kernel = kernel
        reps = kernel.left_coset_reps()
        self.coset_reps = reps
        cosets = [frozenset(compose(x, h) for h in kernel.elements) for x in reps]
        self._coset_index = {}
        for i, cs in enumerate(cosets):
            for g in cs:
                self._coset_index[g] = i
        # left-regular action of each coset on the list of cosets
        perms = []
        for x in reps:
            perms.append(tuple(self._coset_index[compose(x, y)] for y in reps))
        self.group = PermGroup(len(reps), perms, _elements=perms,
                               name=f"quotient-of-{parent.name or 'group'}")
        self._proj = {g: p for g, p in zip(reps, perms)}

    @property
    def order(self):
        return self.group.order

    def project(self, g):
        """Image of a parent element in the quotient PermGroup."""
        i = self._coset_index[tuple(g)]
        rep = self.coset_reps[i]
        return self._proj[rep]

    def __repr__(self):
        return f"QuotientGroup(order={self.order} of {self.parent!r})"


def group_generate(degree, gens, name=None):
    return PermGroup(degree, gens, name=name)


def quotient(G, N):
    return QuotientGroup(G, N)


def subgroup_of(G, gens):
    return Subgroup(G, gens)


def _cycle_perm(n):
    return tuple((i + 1) % n for i in range(n))


@lru_cache(maxsize=None)
def builtin_group(kind, *params):
    """Builtin families: cyclic(n), dihedral(n), symmetric(n<=6), product(a, b)."""
    if kind == "cyclic":
        (n,) = params
        if n < 1:
            raise UnsupportedParams("cyclic requires n >= 1")
        if n == 1:
            return PermGroup(1, [], name="cyclic_1")
        return PermGroup(n, [_cycle_perm(n)], name=f"cyclic_{n}")
    if kind == "dihedral":
        (n,) = params
        if n < 2:
            raise UnsupportedParams("dihedral requires n >= 2")
        if n == 2:
            # Klein four-group; degree 2 cannot host it, use two 2-cycles
            return PermGroup(4, [(1, 0, 2, 3), (0, 1, 3, 2)], name="dihedral_2")
        rot = _cycle_perm(n)
        refl = tuple((n - i) % n for i in range(n))
        return PermGroup(n, [rot, refl], name=f"dihedral_{n}")
    if kind == "symmetric":
        (n,) = params
        if not 1 <= n <= 6:
            raise UnsupportedParams("symmetric requires 1 <= n <= 6")
        if n == 1:
            return PermGroup(1, [], name="symmetric_1")
        swap = (1, 0) + tuple(range(2, n))
        return PermGroup(n, [swap, _cycle_perm(n)], name=f"symmetric_{n}")
    if kind == "product":
        a, b = params
        d = a.degree + b.degree
        gens = [g + tuple(range(a.degree, d)) for g in a.generators]
        gens += [tuple(range(a.degree)) + tuple(x + a.degree for x in g)
                 for g in b.generators]
        return PermGroup(d, gens, name=f"product({a.name},{b.name})")
    raise UnsupportedParams(f"unknown builtin kind {kind!r}")
