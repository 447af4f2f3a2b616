"""The rational Grothendieck ring R_k(G)_Q of a finite group.

A RepClass is canonically a class function with exact cyclotomic values; the
multiplicity view over the irreducible characters is computed on demand.
Virtual classes with rational multiplicities are first-class citizens.
"""
from __future__ import annotations

from fractions import Fraction

from .chartab import table_rows
from .cyclo import Cyclotomic, NotRational
from .groups import PermGroup, Subgroup, QuotientGroup, compose, inverse


class GroupMismatch(ValueError):
    pass


class NotSubgroup(ValueError):
    pass


class QuotientMismatch(ValueError):
    pass


class ClassFunction:
    """A function on conjugacy classes with exact cyclotomic values."""

    __slots__ = ("group", "values")

    def __init__(self, group, values):
        if len(values) != len(group.classes):
            raise ValueError("one value per conjugacy class required")
        self.group = group
        self.values = tuple(v if isinstance(v, Cyclotomic)
                            else Cyclotomic.from_rational(v) for v in values)

    def __call__(self, g):
        return self.values[self.group.class_of(g)]

    def __eq__(self, other):
        return (isinstance(other, ClassFunction) and self.group == other.group
                and all(a == b for a, b in zip(self.values, other.values)))

    def __hash__(self):
        return hash((self.group, len(self.values)))

    def __repr__(self):
        return f"ClassFunction({self.group!r}, {list(self.values)})"


class CharacterTable:
    """Complete table of irreducible characters over characteristic zero."""

    def __init__(self, group):
        rows, dims = table_rows(group)
        self.group = group
        self.irreducibles = [ClassFunction(group, row) for row in rows]
        self.dims = dims
        self.labels = [f"chi{i}" if i else "1" for i in range(len(rows))]

    def __len__(self):
        return len(self.irreducibles)


_TABLE_CACHE = {}


def character_table(G):
    if isinstance(G, Subgroup):
        G = G.to_group()
    tab = _TABLE_CACHE.get(G)
    if tab is None:
        tab = CharacterTable(G)
        _TABLE_CACHE[G] = tab
    return tab


def _as_group(H):
    return H.to_group() if isinstance(H, Subgroup) else H


class RepClass:
    """An element of R_k(G)_Q, stored as its class function."""

    __slots__ = ("group", "values", "_mults")

    def __init__(self, group, values):
        group = _as_group(group)
        self.group = group
        vals = []
        for v in values:
            vals.append(v if isinstance(v, Cyclotomic)
                        else Cyclotomic.from_rational(v))
        if len(vals) != len(group.classes):
            raise ValueError("one value per conjugacy class required")
        self.values = tuple(vals)
        self._mults = None

    # -- constructors -------------------------------------------------------

    @staticmethod
    def zero(group):
        group = _as_group(group)
        return RepClass(group, [0] * len(group.classes))

    @staticmethod
    def trivial(group):
        group = _as_group(group)
        return RepClass(group, [1] * len(group.classes))

    @staticmethod
    def regular(group):
        group = _as_group(group)
        vals = [group.order if len(c) == 1 and c[0] == group.identity else 0
                for c in group.classes]
        return RepClass(group, vals)

    @staticmethod
    def from_classfn(cf):
        return RepClass(cf.group, cf.values)

    @staticmethod
    def irreducible(group, i):
        tab = character_table(_as_group(group))
        return RepClass(tab.group, tab.irreducibles[i].values)

    @staticmethod
    def from_mults(group, mults):
        tab = character_table(_as_group(group))
        out = RepClass.zero(tab.group)
        for m, irr in zip(mults, tab.irreducibles):
            if m:
                out = out + Fraction(m) * RepClass.from_classfn(irr)
        out._mults = tuple(Fraction(m) for m in mults)
        return out

    @staticmethod
    def character(group, hom_exponents, order):
        """Degree-1 character from a total map element -> exponent of zeta_order."""
        group = _as_group(group)
        vals = [Cyclotomic.root_of_unity(order, hom_exponents[r] % order)
                if order > 1 else Cyclotomic.one()
                for r in group.class_reps]
        return RepClass(group, vals)

    # -- ring structure -----------------------------------------------------

    def _check(self, other):
        if self.group != other.group:
            raise GroupMismatch("operands live over different groups")

    def __add__(self, other):
        self._check(other)
        return RepClass(self.group,
                        [a + b for a, b in zip(self.values, other.values)])

    def __sub__(self, other):
        self._check(other)
        return RepClass(self.group,
                        [a - b for a, b in zip(self.values, other.values)])

    def __neg__(self):
        return RepClass(self.group, [-a for a in self.values])

    def __mul__(self, scalar):
        return RepClass(self.group, [a * scalar for a in self.values])

    __rmul__ = __mul__

    def tensor(self, other):
        self._check(other)
        return RepClass(self.group,
                        [a * b for a, b in zip(self.values, other.values)])

    def conj_dual(self):
        """The class of the dual representation (complex-conjugate character)."""
        return RepClass(self.group, [a.conj() for a in self.values])

    def __eq__(self, other):
        if not isinstance(other, RepClass):
            return NotImplemented
        return (self.group == other.group
                and all(a == b for a, b in zip(self.values, other.values)))

    def __hash__(self):
        return hash((self.group, len(self.values)))

    def is_zero(self):
        return all(v.is_zero() for v in self.values)

    def __call__(self, g):
        return self.values[self.group.class_of(g)]

    # -- derived quantities -------------------------------------------------

    def degree(self):
        return self.values[0].to_rational()

    def inner(self, other):
        """(1/|G|) sum_g self(g) * conj(other(g)), as an exact Fraction."""
        self._check(other)
        acc = Cyclotomic.zero()
        for size, a, b in zip(self.group.class_sizes, self.values, other.values):
            acc = acc + size * (a * b.conj())
        return acc.to_rational() / self.group.order

    def mults(self):
        """Rational multiplicity vector over Irr(G), lazily computed and cached."""
        if self._mults is None:
            tab = character_table(self.group)
            self._mults = tuple(self.inner(RepClass.from_classfn(irr))
                                for irr in tab.irreducibles)
        return self._mults

    def is_effective(self):
        return all(m >= 0 for m in self.mults())

    # -- functorial operations ---------------------------------------------

    def restrict(self, H):
        """Restriction to a subgroup (Subgroup of this group, or sub-PermGroup)."""
        Hg = _as_group(H)
        if Hg.degree != self.group.degree or any(
                h not in self.group for h in Hg.generators):
            raise NotSubgroup("restriction target is not a subgroup")
        vals = [self.values[self.group.class_of(r)] for r in Hg.class_reps]
        return RepClass(Hg, vals)

    def induce(self, G):
        """Induction to an overgroup containing this class's group."""
        G = _as_group(G)
        H = self.group
        if G.degree != H.degree or any(h not in G for h in H.generators):
            raise NotSubgroup("induction target does not contain the group")
        hset = set(H.elements)
        vals = []
        for g in G.class_reps:
            acc = Cyclotomic.zero()
            for x in G.elements:
                y = compose(compose(inverse(x), g), x)
                if y in hset:
                    acc = acc + self.values[H.class_of(y)]
            vals.append(acc * Fraction(1, H.order))
        return RepClass(G, vals)

    def inflate(self, quotient_structure):
        """Pullback along the projection of a QuotientGroup to its parent."""
        q = quotient_structure
        if not isinstance(q, QuotientGroup) or q.group != self.group:
            raise QuotientMismatch("class does not live over the given quotient")
        G = q.parent
        vals = [self.values[self.group.class_of(q.project(g))]
                for g in G.class_reps]
        return RepClass(G, vals)

    # -- reporting ----------------------------------------------------------

    def mult_strings(self):
        return [str(m) for m in self.mults()]

    def describe(self):
        tab = character_table(self.group)
        parts = [f"{m}*[{lab}]" for m, lab in zip(self.mults(), tab.labels) if m]
        return " + ".join(parts) if parts else "0"

    def __repr__(self):
        return f"RepClass({self.group!r}, {self.describe()})"


# ---------------------------------------------------------------------------
# functional API mirroring the operation names

def rc_tensor(a, b):
    return a.tensor(b)


def rc_restrict(a, H):
    return a.restrict(H)


def rc_induce(a, G):
    return a.induce(G)


def rc_inflate(a, q):
    return a.inflate(q)


def rc_inner(a, b):
    return a.inner(b)


def rc_degree(a):
    return a.degree()


def rc_is_effective(a):
    return a.is_effective()


def orbit_assemble(parts, G):
    """Sum of (|G_i|/|G|) Ind_{G_i}^G [M_i] over (subgroup, class) parts."""
    G = _as_group(G)
    total = RepClass.zero(G)
    for H, cls in parts:
        Hg = _as_group(H)
        if cls.group != Hg:
            raise GroupMismatch("part class does not live over its subgroup")
        total = total + Fraction(Hg.order, G.order) * cls.induce(G)
    return total
