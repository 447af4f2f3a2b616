"""Irreducible character tables of permutation groups.

Three construction paths, all exact:
  * abelian groups: dual-group enumeration through a polycyclic normal form;
  * builtin dihedral groups: the classical 1- and 2-dimensional families;
  * general groups: Dixon's method (simultaneous diagonalization of the
    class-sum matrices over a suitable prime field, then discrete-Fourier
    lifting of the eigenvalue systems to exact cyclotomic values).

The module returns raw rows (tuples of Cyclotomic values indexed by the
group's conjugacy-class order) plus dimensions; the representation-ring layer
wraps them.
"""
from __future__ import annotations

from fractions import Fraction
from math import gcd, isqrt

from .cyclo import Cyclotomic
from .groups import compose, inverse, perm_order


class TableFailure(AssertionError):
    """Internal bug sentinel: a computed table failed validation."""


def _root(n, j):
    g = gcd(j % n, n)
    if g == 0:
        return Cyclotomic.one()
    return Cyclotomic.root_of_unity(n // g, (j % n) // g)


# ---------------------------------------------------------------------------
# abelian path

def _abelian_rows(G):
    L = G.exponent()
    gens = [g for g in G.generators if g != G.identity]
    # polycyclic layers: chars are dicts element -> exponent of zeta_L
    chars = [{G.identity: 0}]
    covered = {G.identity}
    covered_list = [G.identity]
    for g in gens:
        if g in covered:
            continue
        # coset order of g over the part already covered
        m = 1
        p = g
        while p not in covered:
            m += 1
            p = compose(p, g)
        # p = g^m lies in the covered part
        new_chars = []
        for chi in chars:
            a = chi[p]
            if a % m != 0:
                raise TableFailure("abelian extension step failed")
            for t in range(m):
                e = a // m + t * (L // m)
                ext = dict(chi)
                for h in covered_list:
                    x = h
                    for j in range(1, m):
                        x = compose(x, g)
                        ext[x] = (chi[h] + j * e) % L
                new_chars.append(ext)
        chars = new_chars
        new_elems = []
        for h in covered_list:
            x = h
            for _ in range(1, m):
                x = compose(x, g)
                new_elems.append(x)
        covered.update(new_elems)
        covered_list.extend(new_elems)
    if len(covered) != G.order:
        raise TableFailure("abelian enumeration did not cover the group")
    rows = []
    for chi in chars:
        rows.append(tuple(_root(L, chi[r]) for r in G.class_reps))
    return rows


# ---------------------------------------------------------------------------
# dihedral path (builtin realization: n-cycle + reflection on {0..n-1})

def _dihedral_decompose(G, g):
    """Write g as ('r', k) or ('s', k) meaning rot^k or rot^k * refl."""
    n = G.degree
    k = g[0]
    rot_k = tuple((i + k) % n for i in range(n))
    if g == rot_k:
        return ("r", k)
    refl = tuple((n - i) % n for i in range(n))
    comp = compose(rot_k, refl)
    if g == comp:
        return ("s", k)
    raise TableFailure("element is not in the dihedral normal form")


def _dihedral_rows(G):
    n = G.degree
    decomp = [_dihedral_decompose(G, r) for r in G.class_reps]
    rows = []

    def onedim(a_exp_mod, b_sign):
        # rot -> (-1)^{a}, refl -> b
        vals = []
        for kind, k in decomp:
            v = Fraction(-1 if (a_exp_mod * k) % 2 else 1)
            if kind == "s":
                v *= b_sign
            vals.append(Cyclotomic.from_rational(v))
        return tuple(vals)

    rows.append(onedim(0, 1))           # trivial
    rows.append(onedim(0, -1))          # sign on reflections
    if n % 2 == 0:
        rows.append(onedim(1, 1))
        rows.append(onedim(1, -1))
    for j in range(1, (n - 1) // 2 + 1 if n % 2 else n // 2):
        vals = []
        for kind, k in decomp:
            if kind == "r":
                vals.append(_root(n, j * k) + _root(n, -j * k))
            else:
                vals.append(Cyclotomic.zero())
        rows.append(tuple(vals))
    return rows


# ---------------------------------------------------------------------------
# Dixon path

def _is_prime(n):
    if n < 2:
        return False
    for q in range(2, isqrt(n) + 1):
        if n % q == 0:
            return False
    return True


def dixon_prime(order, exponent):
    """Smallest prime p = 1 mod exponent with p > 2*sqrt(order)."""
    bound = 2 * isqrt(order)
    p = exponent + 1
    while True:
        if p > bound and _is_prime(p):
            return p
        p += exponent


def _primitive_root(p):
    for w in range(2, p):
        x, order = w, 1
        while x != 1:
            x = x * w % p
            order += 1
        if order == p - 1:
            return w
    raise TableFailure("no primitive root found")


def _mat_vec(M, v, p):
    return [sum(M[i][j] * v[j] for j in range(len(v))) % p for i in range(len(M))]


def _rref(rows, p):
    """Row-reduce over F_p; returns (reduced rows, pivot column list)."""
    rows = [list(r) for r in rows]
    pivots = []
    r = 0
    ncols = len(rows[0]) if rows else 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c] % p), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = pow(rows[r][c], p - 2, p)
        rows[r] = [x * inv % p for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] % p:
                f = rows[i][c]
                rows[i] = [(x - f * y) % p for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows[:r], pivots


def _kernel_basis(M, p):
    """Basis of the null space of a square matrix over F_p."""
    n = len(M)
    rows, pivots = _rref(M, p)
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for fc in free:
        v = [0] * n
        v[fc] = 1
        for r, pc in enumerate(pivots):
            v[pc] = (-rows[r][fc]) % p
        basis.append(v)
    return basis


def _coords(basis, vec, p):
    """Coordinates of vec in the span of basis (rows), over F_p."""
    n = len(vec)
    m = len(basis)
    aug = [[basis[j][i] for j in range(m)] + [vec[i]] for i in range(n)]
    rows, pivots = _rref(aug, p)
    out = [0] * m
    for r, pc in enumerate(pivots):
        if pc == m:
            raise TableFailure("vector not in subspace")
        out[pc] = rows[r][m]
    # verify (guards against inconsistent systems with no pivot in last col)
    for i in range(n):
        if sum(out[j] * basis[j][i] for j in range(m)) % p != vec[i] % p:
            raise TableFailure("coordinate solve failed")
    return out


def _restrict(M, basis, p):
    imgs = [_mat_vec(M, b, p) for b in basis]
    return [_coords(basis, img, p) for img in imgs]


def _charpoly(A, p):
    """Characteristic polynomial mod p via Hessenberg reduction (monic, low first)."""
    n = len(A)
    H = [row[:] for row in A]
    for c in range(n - 2):
        piv = next((r for r in range(c + 1, n) if H[r][c] % p), None)
        if piv is None:
            continue
        if piv != c + 1:
            H[c + 1], H[piv] = H[piv], H[c + 1]
            for r in range(n):
                H[r][c + 1], H[r][piv] = H[r][piv], H[r][c + 1]
        inv = pow(H[c + 1][c], p - 2, p)
        for r in range(c + 2, n):
            if H[r][c] % p:
                f = H[r][c] * inv % p
                for k in range(n):
                    H[r][k] = (H[r][k] - f * H[c + 1][k]) % p
                for k in range(n):
                    H[k][c + 1] = (H[k][c + 1] + f * H[k][r]) % p
    # recurrence on leading principal minors of (xI - H)
    polys = [[1]]
    for m in range(1, n + 1):
        # p_m = (x - H[m-1][m-1]) p_{m-1}
        #       - sum_k H[k-1][m-1] (prod of subdiagonal entries) p_{k-1}
        prev = polys[m - 1]
        term = [0] * (len(prev) + 1)
        for i, c0 in enumerate(prev):
            term[i + 1] = (term[i + 1] + c0) % p
            term[i] = (term[i] - H[m - 1][m - 1] * c0) % p
        beta = 1
        for k in range(m - 1, 0, -1):
            beta = beta * H[k][k - 1] % p
            coef = beta * H[k - 1][m - 1] % p
            pk = polys[k - 1]
            for i, c0 in enumerate(pk):
                term[i] = (term[i] - coef * c0) % p
        polys.append(term)
    return polys[n]


def _poly_roots(poly, p):
    roots = []
    for x in range(p):
        acc = 0
        for c in reversed(poly):
            acc = (acc * x + c) % p
        if acc == 0:
            roots.append(x)
    return roots


def _dixon_rows(G):
    k = len(G.classes)
    reps = G.class_reps
    sizes = G.class_sizes
    order = G.order
    e = G.exponent()
    p = dixon_prime(order, e)
    cls = G.class_of
    inv_class = [cls(inverse(r)) for r in reps]

    # class matrices (M_i)[j][l] = #{(x, y) in C_i x C_j : x y = rep_l}
    mats = []
    for Ci in G.classes:
        M = [[0] * k for _ in range(k)]
        for l, gl in enumerate(reps):
            for x in Ci:
                y = compose(inverse(x), gl)
                M[cls(y)][l] += 1
        mats.append(M)

    # split F_p^k into common eigenspaces
    spaces = [[[1 if i == j else 0 for j in range(k)] for i in range(k)]]
    for M in mats[1:]:
        if all(len(s) == 1 for s in spaces):
            break
        new_spaces = []
        for basis in spaces:
            if len(basis) == 1:
                new_spaces.append(basis)
                continue
            R = _restrict(M, basis, p)
            # transpose: _restrict returns rows of images; eigen problem on R^T
            RT = [[R[j][i] for j in range(len(R))] for i in range(len(R))]
            split_dim = 0
            for lam in set(_poly_roots(_charpoly(RT, p), p)):
                A = [[(RT[i][j] - (lam if i == j else 0)) % p
                      for j in range(len(RT))] for i in range(len(RT))]
                eig = []
                for kv in _kernel_basis(A, p):
                    eig.append([sum(kv[j] * basis[j][i]
                                    for j in range(len(basis))) % p
                                for i in range(k)])
                if eig:
                    split_dim += len(eig)
                    new_spaces.append(eig)
            if split_dim != len(basis):
                raise TableFailure("class matrix is not diagonalizable mod p")
        spaces = new_spaces
    if len(spaces) != k or any(len(s) != 1 for s in spaces):
        raise TableFailure("class-sum diagonalization did not fully split")

    w = _primitive_root(p)
    z = pow(w, (p - 1) // e, p)

    rows = []
    for basis in spaces:
        v = basis[0]
        if v[0] % p == 0:
            raise TableFailure("eigenvector vanishes on the identity class")
        inv0 = pow(v[0], p - 2, p)
        omega = [x * inv0 % p for x in v]
        denom = sum(omega[l] * omega[inv_class[l]] * pow(sizes[l], p - 2, p)
                    for l in range(k)) % p
        target = order * pow(denom, p - 2, p) % p
        d = next((t for t in range(1, isqrt(order) + 1)
                  if t * t % p == target), None)
        if d is None:
            raise TableFailure("no integer dimension matches the eigensystem")
        chi_p = [d * omega[l] * pow(sizes[l], p - 2, p) % p for l in range(k)]
        # discrete-Fourier lift to exact cyclotomic values
        vals = []
        for l, g in enumerate(reps):
            o = perm_order(g)
            zo = pow(z, e // o, p)
            powers = []
            x = G.identity
            for _ in range(o):
                powers.append(chi_p[cls(x)])
                x = compose(x, g)
            inv_o = pow(o, p - 2, p)
            val = Cyclotomic.zero()
            for t in range(o):
                m_t = sum(powers[s] * pow(zo, -s * t % (p - 1), p)
                          for s in range(o)) * inv_o % p
                if m_t > d:
                    raise TableFailure("Fourier multiplicity out of range")
                if m_t:
                    val = val + m_t * _root(o, t)
            vals.append(val)
        rows.append(tuple(vals))
    return rows


# ---------------------------------------------------------------------------
# assembly and validation

def _sort_key(row):
    dim = row[0].to_rational()
    ser = tuple((c.conductor, c.coeffs) for c in row)
    return (dim, ser)


def _validate(G, rows, full):
    k = len(G.classes)
    dims = []
    for row in rows:
        d = row[0].to_rational()
        if d.denominator != 1 or d <= 0:
            raise TableFailure("non-positive-integer dimension")
        dims.append(int(d))
    if sum(d * d for d in dims) != G.order:
        raise TableFailure("sum of squared dimensions != |G|")
    if len(rows) != k:
        raise TableFailure("wrong number of irreducibles")
    if full:
        sizes = G.class_sizes
        for i, a in enumerate(rows):
            for j, b in enumerate(rows):
                acc = Cyclotomic.zero()
                for l in range(k):
                    acc = acc + sizes[l] * (a[l] * b[l].conj())
                val = acc.to_rational()
                if val != (G.order if i == j else 0):
                    raise TableFailure("row orthogonality failed")


def table_rows(G):
    """Return (rows, dims): exact irreducible characters in deterministic order."""
    if G.is_abelian():
        rows = _abelian_rows(G)
        path = "abelian"
    elif G.name and G.name.startswith("dihedral_"):
        rows = _dihedral_rows(G)
        path = "dihedral"
    else:
        rows = _dixon_rows(G)
        path = "dixon"
    trivial = tuple(Cyclotomic.one() for _ in G.classes)
    rest = [r for r in rows if r != trivial]
    if len(rest) != len(rows) - 1:
        raise TableFailure("trivial character missing or duplicated")
    rows = [trivial] + sorted(rest, key=_sort_key)
    full = (path == "dixon" and len(rows) <= 40) or G.order <= 24
    _validate(G, rows, full=full)
    dims = [int(r[0].to_rational()) for r in rows]
    return rows, dims
