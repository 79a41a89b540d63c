"""Brute-force linear-algebra oracles, independent of the Groebner engine.

Everything here builds degree slices as explicit coordinate vectors over
monomial bases and row-reduces them; only polynomial multiplication from
the ring layer is reused.
"""

from biliaison.ring import Polynomial, monomials_of_degree


def row_reduce(rows, p):
    """In-place reduced row echelon over GF(p); returns (basis rows, pivots)."""
    rows = [list(r) for r in rows if any(v % p for v in r)]
    pivots = []
    rank = 0
    ncols = len(rows[0]) if rows else 0
    for col in range(ncols):
        piv = next((r for r in range(rank, len(rows)) if rows[r][col] % p), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        inv = pow(rows[rank][col], p - 2, p)
        rows[rank] = [v * inv % p for v in rows[rank]]
        for r in range(len(rows)):
            if r != rank and rows[r][col] % p:
                c = rows[r][col]
                rows[r] = [(a - c * b) % p for a, b in zip(rows[r], rows[rank])]
        rank += 1
        pivots.append(col)
        if rank == len(rows):
            break
    return rows[:rank], pivots


def poly_to_coords(poly, monos):
    index = {m: i for i, m in enumerate(monos)}
    out = [0] * len(monos)
    for m, c in poly.terms.items():
        out[index[m]] = c
    return out


def ideal_slice_dim(ring, gens, degree):
    """dim of the degree-d piece of (gens) by spanning monomial multiples."""
    p = ring.field.p
    monos = monomials_of_degree(ring.num_vars, degree)
    rows = []
    for g in gens:
        d = g.homogeneous_degree()
        if d > degree:
            continue
        for m in monomials_of_degree(ring.num_vars, degree - d):
            rows.append(poly_to_coords(g.term_mul(m), monos))
    if not rows:
        return 0
    basis, _ = row_reduce(rows, p)
    return len(basis)


def quotient_slice_dim(ring, gens, degree):
    """dim (S/I)_degree by brute force."""
    total = len(monomials_of_degree(ring.num_vars, degree))
    return total - ideal_slice_dim(ring, gens, degree)


def membership(ring, gens, f):
    """Is the homogeneous f in the ideal (gens)?  Degree-slice solve."""
    if f.is_zero():
        return True
    p = ring.field.p
    d = f.homogeneous_degree()
    monos = monomials_of_degree(ring.num_vars, d)
    rows = []
    for g in gens:
        dg = g.homogeneous_degree()
        if dg > d:
            continue
        for m in monomials_of_degree(ring.num_vars, d - dg):
            rows.append(poly_to_coords(g.term_mul(m), monos))
    target = poly_to_coords(f, monos)
    if not rows:
        return False
    basis, pivots = row_reduce(rows, p)
    # reduce target against the echelon basis
    t = list(target)
    for row, col in zip(basis, pivots):
        if t[col]:
            c = t[col]
            t = [(a - c * b) % p for a, b in zip(t, row)]
    return not any(t)


def kernel_slice_dim(matrix, degree):
    """dim of the degree-d slice of ker(matrix) by brute force.

    Unknown vectors live in the source free module; the linear system says
    the image in each target coordinate vanishes identically.
    """
    ring = matrix.ring
    p = ring.field.p
    src = matrix.source
    tgt = matrix.target
    cols = []
    # unknowns: (source position j, monomial of degree  degree + src.twists[j])
    unknowns = []
    for j in range(src.rank):
        dj = degree + src.twists[j]
        if dj < 0:
            continue
        for m in monomials_of_degree(ring.num_vars, dj):
            unknowns.append((j, m))
    if not unknowns:
        return 0
    # equations: coefficients of each monomial in each target coordinate
    eq_index = {}
    rows = []
    for u, (j, m) in enumerate(unknowns):
        contributions = {}
        for i in range(tgt.rank):
            e = matrix.entries[i][j]
            if e.is_zero():
                continue
            prod = e.term_mul(m)
            for mm, c in prod.terms.items():
                key = (i, mm)
                contributions[key] = (contributions.get(key, 0) + c) % p
        for key, c in contributions.items():
            if key not in eq_index:
                eq_index[key] = len(eq_index)
                rows.append([0] * len(unknowns))
            rows[eq_index[key]][u] = c
    if not rows:
        return len(unknowns)
    basis, _ = row_reduce(rows, p)
    return len(unknowns) - len(basis)


def module_slice_dim(free, columns, degree):
    """dim of the degree-d slice of the column span inside a free module.

    columns are Vec dicts {(pos, mono): coeff}.
    """
    ring = free.ring
    p = ring.field.p
    # coordinates of the degree-d slice of the ambient free module
    coords = []
    for i in range(free.rank):
        di = degree + free.twists[i]
        if di < 0:
            continue
        for m in monomials_of_degree(ring.num_vars, di):
            coords.append((i, m))
    if not coords:
        return 0
    index = {c: k for k, c in enumerate(coords)}
    rows = []
    for col in columns:
        from biliaison.modgb import vec_degree

        d0 = vec_degree(col, free.twists)
        if d0 is None or d0 > degree:
            continue
        for m in monomials_of_degree(ring.num_vars, degree - d0):
            row = [0] * len(coords)
            ok = True
            for (pos, mm), c in col.items():
                key = (pos, tuple(a + b for a, b in zip(mm, m)))
                if key not in index:
                    ok = False
                    break
                row[index[key]] = c
            if ok:
                rows.append(row)
    if not rows:
        return 0
    basis, _ = row_reduce(rows, p)
    return len(basis)
