"""Groebner engine for graded submodules of twisted free modules.

Conventions fixed here and used by every other layer:

* A free module ``⊕ S(a_i)`` stores its twists ``(a_1, ..., a_r)``; the
  i-th generator has degree ``-a_i``.
* A matrix maps source to target through its columns; a homogeneous entry
  at (i, j) has degree ``target.twists[i] - source.twists[j]``.
* A homogeneous element of ``⊕ S(a_i)`` of degree d has component
  polynomials of degree ``d + a_i``.
* The module term order is term-over-position: degrevlex on monomials,
  ties broken toward the smaller position index.
* Over a hypersurface quotient S/(q) every submodule computation silently
  adjoins ``q·e_i``; all arithmetic stays in the free polynomial ring.
"""

from __future__ import annotations

import itertools
from functools import lru_cache
from math import comb

from .errors import AlgebraError, DegreeMismatchError, NonHomogeneousError
from .ring import (
    Polynomial,
    RingContext,
    mono_deg,
    mono_div,
    mono_gcd,
    mono_key,
    mono_lcm,
    mono_mul,
)

# counters inspected by the CLI's deterministic "timings"
REDUCTION_STEPS = {"count": 0}


def term_key(term):
    """Sort key for module terms (pos, mono); bigger key = bigger term."""
    pos, m = term
    k = mono_key(m)
    return (k[0], k[1], -pos)


class FreeModule:
    """⊕ S(a_i) over a RingContext; rank 0 is the zero module."""

    __slots__ = ("ring", "twists")

    def __init__(self, ring: RingContext, twists):
        self.ring = ring
        self.twists = tuple(int(t) for t in twists)

    @property
    def rank(self):
        return len(self.twists)

    def dual(self, twist=0):
        """Hom(self, S(twist)) as a free module."""
        return FreeModule(self.ring, tuple(twist - a for a in self.twists))

    def shift(self, n):
        return FreeModule(self.ring, tuple(a + n for a in self.twists))

    def direct_sum(self, other):
        return FreeModule(self.ring, self.twists + other.twists)

    def slice_dim(self, degree):
        return sum(self.ring.slice_dim(degree + a) for a in self.twists)

    def __eq__(self, other):
        return (
            isinstance(other, FreeModule)
            and self.ring.same_ring(other.ring)
            and self.twists == other.twists
        )

    def __repr__(self):
        if not self.twists:
            return "0"
        return " + ".join(f"S({a})" for a in self.twists)


class GradedMatrix:
    """Matrix of homogeneous polynomials realizing a degree-0 map."""

    __slots__ = ("source", "target", "entries")

    def __init__(self, source: FreeModule, target: FreeModule, entries, check=True):
        self.source = source
        self.target = target
        self.entries = tuple(tuple(row) for row in entries)
        if len(self.entries) != target.rank or any(
            len(row) != source.rank for row in self.entries
        ):
            raise AlgebraError("matrix shape does not match source/target ranks")
        if check:
            for i, row in enumerate(self.entries):
                for j, e in enumerate(row):
                    if e.is_zero():
                        continue
                    want = target.twists[i] - source.twists[j]
                    if not e.is_homogeneous() or e.homogeneous_degree() != want:
                        raise NonHomogeneousError(
                            f"entry ({i},{j}) must be homogeneous of degree {want}"
                        )

    @property
    def ring(self):
        return self.target.ring

    @staticmethod
    def zero(source, target):
        z = Polynomial.zero(target.ring)
        return GradedMatrix(
            source, target, [[z] * source.rank for _ in range(target.rank)], check=False
        )

    @staticmethod
    def identity(free):
        one = Polynomial.constant(free.ring, 1)
        z = Polynomial.zero(free.ring)
        rows = [[one if i == j else z for j in range(free.rank)] for i in range(free.rank)]
        return GradedMatrix(free, free, rows, check=False)

    @staticmethod
    def from_columns(target: FreeModule, columns, source_twists=None):
        """Build from Vec columns; source twists inferred from homogeneity."""
        ring = target.ring
        twists = []
        rows = [[] for _ in range(target.rank)]
        for k, col in enumerate(columns):
            if source_twists is not None:
                twists.append(source_twists[k])
            else:
                d = vec_degree(col, target.twists)
                if d is None:
                    raise NonHomogeneousError("zero column needs explicit twist")
                twists.append(-d)
            polys = vec_to_polys(col, target, ring)
            for i in range(target.rank):
                rows[i].append(polys[i])
        return GradedMatrix(FreeModule(ring, twists), target, rows)

    def column_vec(self, j):
        out = {}
        for i, row in enumerate(self.entries):
            for m, c in row[j].terms.items():
                out[(i, m)] = c
        return out

    def columns_as_vecs(self):
        return [self.column_vec(j) for j in range(self.source.rank)]

    def transpose_dual(self, twist=0):
        """Hom(-, S(twist)) applied to the map: the transpose matrix."""
        rows = [
            [self.entries[i][j] for i in range(self.target.rank)]
            for j in range(self.source.rank)
        ]
        return GradedMatrix(self.target.dual(twist), self.source.dual(twist), rows)

    def compose(self, other):
        """self ∘ other (apply other first)."""
        if not other.target == self.source:
            raise AlgebraError("composition shape mismatch")
        z = Polynomial.zero(self.ring)
        rows = []
        for i in range(self.target.rank):
            row = []
            for j in range(other.source.rank):
                acc = z
                for k in range(self.source.rank):
                    a = self.entries[i][k]
                    b = other.entries[k][j]
                    if a.is_zero() or b.is_zero():
                        continue
                    acc = acc + a * b
                row.append(acc)
            rows.append(row)
        return GradedMatrix(other.source, self.target, rows)

    def shift(self, n):
        return GradedMatrix(self.source.shift(n), self.target.shift(n), self.entries)

    def augment(self, other):
        """Columns of self followed by columns of other (same target)."""
        if not other.target == self.target:
            raise AlgebraError("augment target mismatch")
        rows = [
            tuple(self.entries[i]) + tuple(other.entries[i])
            for i in range(self.target.rank)
        ]
        return GradedMatrix(self.source.direct_sum(other.source), self.target, rows)

    def direct_sum(self, other):
        z = Polynomial.zero(self.ring)
        rows = []
        for i in range(self.target.rank):
            rows.append(tuple(self.entries[i]) + tuple([z] * other.source.rank))
        for i in range(other.target.rank):
            rows.append(tuple([z] * self.source.rank) + tuple(other.entries[i]))
        return GradedMatrix(
            self.source.direct_sum(other.source),
            self.target.direct_sum(other.target),
            rows,
        )

    def is_zero(self):
        return all(e.is_zero() for row in self.entries for e in row)

    def has_scalar_entry(self):
        return any(e.is_scalar() for row in self.entries for e in row)

    def __repr__(self):
        return f"GradedMatrix({self.target.rank}x{self.source.rank}: {self.source} -> {self.target})"


# ---------------------------------------------------------------------------
# Vec helpers: module elements as {(pos, mono): coeff}


def vec_degree(v, twists):
    """Degree of a homogeneous Vec, None for zero; raises when mixed."""
    if not v:
        return None
    degs = {mono_deg(m) - twists[pos] for (pos, m) in v}
    if len(degs) != 1:
        raise NonHomogeneousError("vector is not homogeneous")
    return degs.pop()


def vec_to_polys(v, free: FreeModule, ring: RingContext):
    comps = [dict() for _ in range(free.rank)]
    for (pos, m), c in v.items():
        comps[pos][m] = c
    return [Polynomial(ring, t) for t in comps]


def polys_to_vec(polys):
    out = {}
    for pos, poly in enumerate(polys):
        for m, c in poly.terms.items():
            out[(pos, m)] = c
    return out


def vec_lead(v):
    return max(v, key=term_key)


def _vec_axpy(dst, src, mono, coeff, p):
    """dst += coeff * x^mono * src, in place."""
    for (pos, m), c in src.items():
        key = (pos, mono_mul(m, mono))
        val = (dst.get(key, 0) + coeff * c) % p
        if val:
            dst[key] = val
        else:
            dst.pop(key, None)


# ---------------------------------------------------------------------------
# incremental Buchberger worker


class GBWorker:
    """Buchberger driver supporting incremental insertion and tracking.

    In tracked mode no pair criteria are applied, so the recorded standard
    representations of all S-pairs generate the full syzygy module of the
    final basis.
    """

    def __init__(self, p, num_vars, rank1=False, track=False):
        self.p = p
        self.num_vars = num_vars
        self.rank1 = rank1
        self.track = track
        self.elems = []  # monic Vecs
        self.buckets = {}  # pos -> [(idx, lead mono)]
        self.reps = [] if track else None  # Vec over input tags
        self.syz = [] if track else None  # Vecs over input tags
        self._pairs = []
        self._tags = 0

    # -- reduction ----------------------------------------------------------

    def reduce_full(self, v, track_quotients=False):
        p = self.p
        work = dict(v)
        rem = {}
        quot = {} if track_quotients else None
        steps = 0
        while work:
            t = max(work, key=term_key)
            c = work[t]
            pos, m = t
            hit = None
            for idx, ltm in self.buckets.get(pos, ()):
                q = mono_div(m, ltm)
                if q is not None:
                    hit = (idx, q)
                    break
            if hit is None:
                rem[t] = c
                del work[t]
            else:
                idx, q = hit
                _vec_axpy(work, self.elems[idx], q, p - c, p)
                steps += 1
                if track_quotients:
                    qd = quot.setdefault(idx, {})
                    v2 = (qd.get(q, 0) + c) % p
                    if v2:
                        qd[q] = v2
                    else:
                        qd.pop(q, None)
        REDUCTION_STEPS["count"] += steps
        return rem, quot

    # -- insertion ----------------------------------------------------------

    def _store(self, v, rep=None):
        lt = vec_lead(v)
        c = v[lt]
        if c != 1:
            inv = pow(c, self.p - 2, self.p)
            v = {t: (x * inv) % self.p for t, x in v.items()}
            if rep is not None:
                rep = {t: (x * inv) % self.p for t, x in rep.items()}
        idx = len(self.elems)
        self.elems.append(v)
        self.buckets.setdefault(lt[0], []).append((idx, lt[1]))
        if self.track:
            self.reps.append(rep if rep is not None else {})
        for k in range(idx):
            lk = vec_lead(self.elems[k])
            if lk[0] != lt[0]:
                continue
            L = mono_lcm(lk[1], lt[1])
            self._pairs.append((mono_deg(L), k, idx))
        return idx

    def add_generator(self, v, tag=None):
        """Insert one generator (Vec); returns True when it was new."""
        if tag is None:
            tag = self._tags
        self._tags = max(self._tags, tag + 1)
        g = dict(v)
        one_mono = (0,) * self.num_vars
        if not g:
            if self.track:
                self.syz.append({(tag, one_mono): 1})
            return False
        rem, quot = self.reduce_full(g, track_quotients=self.track)
        comb_rep = None
        if self.track:
            comb_rep = {(tag, one_mono): 1}
            for bi, qd in (quot or {}).items():
                for m, c in qd.items():
                    _vec_axpy(comb_rep, self.reps[bi], m, self.p - c, self.p)
        if not rem:
            if self.track and comb_rep:
                self.syz.append(comb_rep)
            return False
        self._store(rem, comb_rep)
        return True

    def drain(self):
        """Process all pending S-pairs."""
        p = self.p
        while self._pairs:
            self._pairs.sort(reverse=True)
            _, i, j = self._pairs.pop()
            vi, vj = self.elems[i], self.elems[j]
            (pi, mi) = vec_lead(vi)
            (pj, mj) = vec_lead(vj)
            if pi != pj:
                continue
            if (
                not self.track
                and self.rank1
                and mono_deg(mono_gcd(mi, mj)) == 0
            ):
                continue  # product criterion, ideals only
            L = mono_lcm(mi, mj)
            qi, qj = mono_div(L, mi), mono_div(L, mj)
            s = {}
            _vec_axpy(s, vi, qi, 1, p)
            _vec_axpy(s, vj, qj, p - 1, p)
            if not s:
                if self.track:
                    srel = {}
                    _vec_axpy(srel, self.reps[i], qi, 1, p)
                    _vec_axpy(srel, self.reps[j], qj, p - 1, p)
                    if srel:
                        self.syz.append(srel)
                continue
            rem, quot = self.reduce_full(s, track_quotients=self.track)
            rep = None
            if self.track:
                rep = {}
                _vec_axpy(rep, self.reps[i], qi, 1, p)
                _vec_axpy(rep, self.reps[j], qj, p - 1, p)
                for bi, qd in (quot or {}).items():
                    for m, c in qd.items():
                        _vec_axpy(rep, self.reps[bi], m, self.p - c, self.p)
            if rem:
                self._store(rem, rep)
            elif self.track and rep:
                self.syz.append(rep)


def buchberger(gens, p, num_vars, rank1=False, track=False):
    w = GBWorker(p, num_vars, rank1=rank1, track=track)
    for k, g in enumerate(gens):
        w.add_generator(g, tag=k)
        w.drain()
    return w


def reduced_basis(elems, p):
    """Interreduce: minimal leading terms, monic, fully tail-reduced,
    sorted ascending by leading term.  The output is the unique reduced
    basis of the module the input generates."""
    elems = [dict(v) for v in elems if v]
    elems.sort(key=lambda v: term_key(vec_lead(v)))
    kept = []
    leads = []
    for v in elems:
        pos, m = vec_lead(v)
        if any(lp == pos and mono_div(m, lm) is not None for lp, lm in leads):
            continue
        kept.append(v)
        leads.append((pos, m))
    nv = 0
    for v in kept:
        nv = len(next(iter(v))[1])
        break
    changed = True
    while changed:
        changed = False
        for i in range(len(kept)):
            w = GBWorker(p, nv)
            for j in range(len(kept)):
                if j != i:
                    w._store(dict(kept[j]))
            rem, _ = w.reduce_full(kept[i])
            lt = vec_lead(rem)
            c = rem[lt]
            if c != 1:
                inv = pow(c, p - 2, p)
                rem = {t: (x * inv) % p for t, x in rem.items()}
            if rem != kept[i]:
                kept[i] = rem
                changed = True
    kept.sort(key=lambda v: term_key(vec_lead(v)))
    return kept


# ---------------------------------------------------------------------------
# public layer


class SubmodulePresentation:
    """Submodule of a twisted free module, given by generator columns."""

    def __init__(self, ambient: FreeModule, generators: GradedMatrix):
        if not generators.target == ambient:
            raise AlgebraError("generator matrix must land in the ambient module")
        self.ambient = ambient
        self.generators = generators
        self._gb = None
        self._worker = None

    @property
    def ring(self):
        return self.ambient.ring

    def quotient_relation_vecs(self):
        if self.ring.relation is None:
            return []
        q = self.ring.relation
        return [
            {(i, m): c for m, c in q.terms.items()} for i in range(self.ambient.rank)
        ]

    def groebner(self):
        if self._gb is None:
            p = self.ring.field.p
            cols = [c for c in self.generators.columns_as_vecs() if c]
            cols += self.quotient_relation_vecs()
            w = buchberger(cols, p, self.ring.num_vars, rank1=(self.ambient.rank == 1))
            self._gb = reduced_basis(w.elems, p)
            v = GBWorker(p, self.ring.num_vars)
            for e in self._gb:
                v._store(dict(e))
            self._worker = v
        return self._gb

    def _nf_worker(self):
        self.groebner()
        return self._worker

    def normal_form_vec(self, v):
        rem, _ = self._nf_worker().reduce_full(dict(v))
        return rem

    def contains_vec(self, v):
        return not self.normal_form_vec(v)

    def lead_monomials(self):
        out = {}
        for v in self.groebner():
            pos, m = vec_lead(v)
            out.setdefault(pos, []).append(m)
        return out

    def slice_dim(self, degree):
        return self.ambient.slice_dim(degree) - _complement_dim(self, degree)

    def __repr__(self):
        return f"Submodule({self.generators.source.rank} gens of {self.ambient})"


class ModulePresentation:
    """Finitely generated graded module as a cokernel."""

    def __init__(self, relations: GradedMatrix):
        self.free_cover = relations.target
        self.relations = relations
        self._sub = SubmodulePresentation(self.free_cover, relations)

    @property
    def ring(self):
        return self.free_cover.ring

    def relation_submodule(self):
        return self._sub

    def hilbert_function(self, degree):
        return _complement_dim(self._sub, degree)

    def is_zero_module(self):
        nv = self.ring.num_vars
        return all(
            self._sub.contains_vec({(i, (0,) * nv): 1})
            for i in range(self.free_cover.rank)
        )

    def shift(self, n):
        return ModulePresentation(self.relations.shift(n))

    def krull_dim(self):
        return module_dimension(self)

    def __repr__(self):
        return (
            f"Module(coker {self.free_cover.rank}x{self.relations.source.rank}"
            f" over {self.ring})"
        )


def free_presentation(free: FreeModule) -> ModulePresentation:
    return ModulePresentation(GradedMatrix.zero(FreeModule(free.ring, ()), free))


def ideal(ring: RingContext, polys) -> SubmodulePresentation:
    """Homogeneous ideal as a submodule of S."""
    amb = FreeModule(ring, (0,))
    gens = []
    for g in polys:
        if isinstance(g, str):
            from .ring import parse_polynomial

            g = parse_polynomial(g, ring)
        if g.is_zero():
            continue
        if not g.is_homogeneous():
            raise NonHomogeneousError(f"ideal generator must be homogeneous: {g}")
        gens.append(g)
    twists = tuple(-g.homogeneous_degree() for g in gens)
    return SubmodulePresentation(
        amb, GradedMatrix(FreeModule(ring, twists), amb, [gens])
    )


def ideal_gens(sub: SubmodulePresentation):
    return [
        sub.generators.entries[0][j]
        for j in range(sub.generators.source.rank)
        if not sub.generators.entries[0][j].is_zero()
    ]


def groebner_basis(sub: SubmodulePresentation) -> SubmodulePresentation:
    """The reduced Groebner basis, repackaged with the basis cached."""
    gb = sub.groebner()
    if not gb:
        mat = GradedMatrix.zero(FreeModule(sub.ring, ()), sub.ambient)
    else:
        mat = GradedMatrix.from_columns(sub.ambient, [dict(v) for v in gb])
    out = SubmodulePresentation(sub.ambient, mat)
    out._gb = sub._gb
    out._worker = sub._worker
    return out


def normal_form(element, sub: SubmodulePresentation):
    """Fully reduced remainder of a polynomial or module element."""
    if isinstance(element, Polynomial):
        if sub.ambient.rank != 1:
            raise DegreeMismatchError("polynomial input needs a rank-1 ambient")
        v = {(0, m): c for m, c in element.terms.items()}
        rem = sub.normal_form_vec(v)
        return Polynomial(sub.ring, {m: c for (_, m), c in rem.items()})
    return sub.normal_form_vec(element)


def syzygy_module(m: GradedMatrix) -> GradedMatrix:
    """Generating matrix for ker(m); over a quotient ring the kernel as an
    S/(q)-module, computed by adjoining q·e_i and projecting those slots."""
    ring = m.ring
    p = ring.field.p
    nv = ring.num_vars
    cols = m.columns_as_vecs()
    ncols = len(cols)
    extra = []
    if ring.relation is not None:
        q = ring.relation
        extra = [
            {(i, mm): c for mm, c in q.terms.items()} for i in range(m.target.rank)
        ]
    all_cols = cols + extra
    syz_cols = []
    live = []
    for k, c in enumerate(all_cols):
        if c:
            live.append(k)
        elif k < ncols:
            syz_cols.append({(k, (0,) * nv): 1})
    gens = [all_cols[k] for k in live]
    if gens:
        w = buchberger(gens, p, nv, track=True)
        raw = [dict(s) for s in w.syz if s]
        for k in range(len(gens)):
            rem, quot = w.reduce_full(dict(gens[k]), track_quotients=True)
            if rem:
                raise AlgebraError("generator failed to reduce against its basis")
            col = {(k, (0,) * nv): 1}
            for bi, qd in (quot or {}).items():
                for mm, c in qd.items():
                    _vec_axpy(col, w.reps[bi], mm, p - c, p)
            if col:
                raw.append(col)
        for s in raw:
            proj = {}
            for (k, mm), c in s.items():
                orig = live[k]
                if orig < ncols:
                    proj[(orig, mm)] = c
            if proj:
                syz_cols.append(proj)
    syz_cols.sort(key=lambda v: (vec_degree(v, m.source.twists), sorted(v.items())))
    seen = set()
    uniq = []
    for v in syz_cols:
        key = tuple(sorted(v.items()))
        if key not in seen:
            seen.add(key)
            uniq.append(v)
    if not uniq:
        return GradedMatrix.zero(FreeModule(ring, ()), m.source)
    return GradedMatrix.from_columns(m.source, uniq)


def min_gens_vecs(cols, ambient: FreeModule, extra_submodule=None):
    """Minimal generating subset of homogeneous columns, modulo an optional
    already-included submodule; lowest degree first, ties by index.
    Returns [(original index, Vec)]."""
    ring = ambient.ring
    p = ring.field.p
    nv = ring.num_vars
    live = [
        (vec_degree(c, ambient.twists), k, dict(c)) for k, c in enumerate(cols) if c
    ]
    live.sort(key=lambda t: (t[0], t[1]))
    w = GBWorker(p, nv, rank1=(ambient.rank == 1))
    if ring.relation is not None:
        q = ring.relation
        for i in range(ambient.rank):
            w.add_generator({(i, mm): c for mm, c in q.terms.items()})
            w.drain()
    for v in extra_submodule or []:
        w.add_generator(dict(v))
        w.drain()
    kept = []
    for _, k, v in live:
        if w.add_generator(dict(v)):
            kept.append((k, v))
        w.drain()
    return kept


def minimal_generators(m: GradedMatrix) -> GradedMatrix:
    """Columns reduced to a minimal generating set of the column module."""
    kept = min_gens_vecs(m.columns_as_vecs(), m.target)
    if not kept:
        return GradedMatrix.zero(FreeModule(m.ring, ()), m.target)
    return GradedMatrix.from_columns(m.target, [v for _, v in kept])


# ---------------------------------------------------------------------------
# ideal operations


def colon(I: SubmodulePresentation, J: SubmodulePresentation) -> SubmodulePresentation:
    """I : J = {f : f·J ⊆ I} for homogeneous ideals, via syzygies."""
    ring = I.ring
    result = None
    base = ideal_gens(I)
    for g in ideal_gens(J):
        cols = base + [g]
        amb = FreeModule(ring, (0,))
        twists = tuple(-c.homogeneous_degree() for c in cols)
        mat = GradedMatrix(FreeModule(ring, twists), amb, [cols])
        syz = syzygy_module(mat)
        gpos = len(cols) - 1
        quots = [
            syz.entries[gpos][j]
            for j in range(syz.source.rank)
            if not syz.entries[gpos][j].is_zero()
        ]
        Ig = groebner_basis(ideal(ring, base + quots))
        result = Ig if result is None else intersect(result, Ig)
    if result is None:
        return groebner_basis(I)
    return groebner_basis(result)


def intersect(I: SubmodulePresentation, J: SubmodulePresentation) -> SubmodulePresentation:
    """I ∩ J for homogeneous ideals, via a two-row syzygy computation."""
    ring = I.ring
    gi, gj = ideal_gens(I), ideal_gens(J)
    one = Polynomial.constant(ring, 1)
    z = Polynomial.zero(ring)
    row0 = [one] + gi + [z] * len(gj)
    row1 = [one] + [z] * len(gi) + gj
    twists = (
        (0,)
        + tuple(-g.homogeneous_degree() for g in gi)
        + tuple(-g.homogeneous_degree() for g in gj)
    )
    amb = FreeModule(ring, (0, 0))
    mat = GradedMatrix(FreeModule(ring, twists), amb, [row0, row1])
    syz = syzygy_module(mat)
    gens = [
        syz.entries[0][j]
        for j in range(syz.source.rank)
        if not syz.entries[0][j].is_zero()
    ]
    return groebner_basis(ideal(ring, gens))


def saturate(I: SubmodulePresentation) -> SubmodulePresentation:
    """I : m^∞ by iterating the colon with the irrelevant ideal."""
    ring = I.ring
    m = ideal(ring, ring.variables())
    cur = groebner_basis(I)
    while True:
        nxt = colon(cur, m)
        if same_submodule(cur, nxt):
            return cur
        cur = nxt


def same_submodule(A: SubmodulePresentation, B: SubmodulePresentation) -> bool:
    ga = [tuple(sorted(v.items())) for v in A.groebner()]
    gb = [tuple(sorted(v.items())) for v in B.groebner()]
    return ga == gb


def annihilator(M: ModulePresentation) -> SubmodulePresentation:
    """ann(M) = ∩_i (relations : e_i), via syzygies."""
    ring = M.ring
    result = None
    amb = M.free_cover
    nv = ring.num_vars
    for i in range(amb.rank):
        cols = M.relations.columns_as_vecs() + [{(i, (0,) * nv): 1}]
        twists = tuple(M.relations.source.twists) + (amb.twists[i],)
        mat = GradedMatrix.from_columns(amb, cols, source_twists=twists)
        syz = syzygy_module(mat)
        k = len(cols) - 1
        quots = [
            syz.entries[k][j]
            for j in range(syz.source.rank)
            if not syz.entries[k][j].is_zero()
        ]
        Ii = groebner_basis(ideal(ring, quots))
        result = Ii if result is None else intersect(result, Ii)
    if result is None:
        return groebner_basis(ideal(ring, [Polynomial.constant(ring, 1)]))
    return groebner_basis(result)


# ---------------------------------------------------------------------------
# dimension / height / rank from leading terms


def _min_cover_size(supports, num_vars):
    supports = [s for s in supports if s]
    if not supports:
        return 0
    for size in range(1, num_vars + 1):
        for combo in itertools.combinations(range(num_vars), size):
            cset = set(combo)
            if all(cset & s for s in supports):
                return size
    return num_vars


def monomial_ideal_dimension(monos, num_vars):
    """Krull dimension of S/(monomial ideal); -1 for the unit ideal."""
    supports = []
    for m in monos:
        s = frozenset(i for i, e in enumerate(m) if e)
        if not s:
            return -1
        supports.append(s)
    return num_vars - _min_cover_size(supports, num_vars)


def module_dimension(M) -> int:
    """Krull dimension of a module / of S/I for an ideal, from lead terms.
    Returns -1 for the zero module (unit ideal)."""
    if isinstance(M, SubmodulePresentation):
        if M.ambient.rank != 1:
            raise AlgebraError("dimension of a submodule only supported for ideals")
        leads = M.lead_monomials().get(0, [])
        return monomial_ideal_dimension(leads, M.ring.num_vars)
    leads = M.relation_submodule().lead_monomials()
    nv = M.ring.num_vars
    if M.free_cover.rank == 0:
        return -1
    return max(
        monomial_ideal_dimension(leads.get(i, []), nv)
        for i in range(M.free_cover.rank)
    )


def height(X) -> int:
    """ring.dim − KrullDim(support); ring.dim + 1 encodes +infinity."""
    d = module_dimension(X)
    ring = X.ring
    if d < 0:
        return ring.dim + 1
    return ring.dim - d


def _complement_dim(sub: SubmodulePresentation, degree):
    leads = sub.lead_monomials()
    ring = sub.ring
    total = 0
    for i, a in enumerate(sub.ambient.twists):
        total += _quotient_count(
            tuple(sorted(leads.get(i, []))), ring.num_vars, degree + a
        )
    return total


@lru_cache(maxsize=None)
def _hilbert_numerator_cached(monos, num_vars):
    return tuple(sorted(_hilbert_numerator(list(monos), num_vars).items()))


def _hilbert_numerator(monos, num_vars):
    """Numerator of Hilb(S/I) = N(t)/(1-t)^n for a monomial ideal I,
    as {degree: int} over the integers."""
    monos = _minimalize_monos(monos)
    if not monos:
        return {0: 1}
    if any(mono_deg(m) == 0 for m in monos):
        return {}
    if _pairwise_coprime(monos):
        out = {0: 1}
        for m in monos:
            d = mono_deg(m)
            nxt = {}
            for k, c in out.items():
                nxt[k] = nxt.get(k, 0) + c
                nxt[k + d] = nxt.get(k + d, 0) - c
            out = {k: c for k, c in nxt.items() if c}
        return out
    pivot = _choose_pivot(monos)
    plus = _hilbert_numerator(monos + [pivot], num_vars)
    col = _hilbert_numerator([_mono_colon(m, pivot) for m in monos], num_vars)
    d = mono_deg(pivot)
    out = dict(plus)
    for k, c in col.items():
        out[k + d] = out.get(k + d, 0) + c
    return {k: c for k, c in out.items() if c}


def _minimalize_monos(monos):
    monos = sorted(set(monos), key=lambda m: (mono_deg(m), m))
    out = []
    for m in monos:
        if not any(mono_div(m, k) is not None for k in out):
            out.append(m)
    return out


def _pairwise_coprime(monos):
    for a, b in itertools.combinations(monos, 2):
        if mono_deg(mono_gcd(a, b)) > 0:
            return False
    return True


def _mono_colon(m, piv):
    return tuple(max(e - f, 0) for e, f in zip(m, piv))


def _choose_pivot(monos):
    nv = len(monos[0])
    counts = [0] * nv
    for m in monos:
        for i, e in enumerate(m):
            if e:
                counts[i] += 1
    var = max(range(nv), key=lambda i: counts[i])
    exps = sorted(m[var] for m in monos if m[var])
    e = exps[len(exps) // 2]
    piv = [0] * nv
    piv[var] = e
    return tuple(piv)


def _quotient_count(lead_monos, num_vars, degree):
    if degree < 0:
        return 0
    num = _hilbert_numerator_cached(tuple(lead_monos), num_vars)
    total = 0
    for k, c in num:
        if degree - k >= 0:
            total += c * comb(degree - k + num_vars - 1, num_vars - 1)
    return total


def module_hilbert_numerator(M: ModulePresentation):
    """Laurent numerator N with Hilb(M) = N(t)/(1-t)^{num_vars}, twists
    included; {exponent: int} over the integers."""
    leads = M.relation_submodule().lead_monomials()
    nv = M.ring.num_vars
    out = {}
    for i, a in enumerate(M.free_cover.twists):
        for k, c in _hilbert_numerator_cached(
            tuple(sorted(leads.get(i, []))), nv
        ):
            out[k - a] = out.get(k - a, 0) + c
    return {k: c for k, c in out.items() if c}


def module_rank(M: ModulePresentation) -> int:
    """Generic rank, exactly, from the Hilbert numerator: N(1) over the
    free ring; -N'(1)/deg(q) over a hypersurface quotient."""
    num = module_hilbert_numerator(M)
    n1 = sum(num.values())
    if M.ring.relation is None:
        return n1
    if n1 != 0:
        raise AlgebraError("quotient-ring module with full ambient dimension")
    d1 = sum(k * c for k, c in num.items())
    dq = M.ring.relation.homogeneous_degree()
    if (-d1) % dq:
        raise AlgebraError("rank computation: numerator not divisible by deg q")
    return -d1 // dq


def matrix_generic_rank(m: GradedMatrix) -> int:
    """Rank of the matrix over the fraction field, exactly."""
    if m.target.rank == 0 or m.source.rank == 0:
        return 0
    return m.target.rank - module_rank(ModulePresentation(m))


# ---------------------------------------------------------------------------
# minors and Fitting ideals


def _det_memo(entries, rows, cols, memo, ring):
    key = (rows, cols)
    got = memo.get(key)
    if got is not None:
        return got
    if len(rows) == 1:
        val = entries[rows[0]][cols[0]]
    else:
        val = Polynomial.zero(ring)
        r0 = rows[0]
        rest = rows[1:]
        for idx, c in enumerate(cols):
            e = entries[r0][c]
            if e.is_zero():
                continue
            sub = _det_memo(entries, rest, cols[:idx] + cols[idx + 1:], memo, ring)
            if sub.is_zero():
                continue
            term = e * sub
            val = val + term if idx % 2 == 0 else val - term
    memo[key] = val
    return val


def iterate_minors(m: GradedMatrix, k: int):
    """All k x k minors, deterministic order, shared-subminor expansion."""
    nr, nc = m.target.rank, m.source.rank
    if k <= 0 or k > min(nr, nc):
        return
    memo = {}
    for rows in itertools.combinations(range(nr), k):
        for cols in itertools.combinations(range(nc), k):
            yield _det_memo(m.entries, rows, cols, memo, m.ring)


def fitting_ideal(M: ModulePresentation, r: int) -> SubmodulePresentation:
    """Fitt_r(M): ideal of (n − r)-minors of the relation matrix."""
    if r < 0:
        raise AlgebraError("fitting index must be nonnegative")
    ring = M.ring
    n = M.free_cover.rank
    k = n - r
    if k <= 0:
        return groebner_basis(ideal(ring, [Polynomial.constant(ring, 1)]))
    if k > min(n, M.relations.source.rank):
        return groebner_basis(ideal(ring, []))
    gens = [d for d in iterate_minors(M.relations, k) if not d.is_zero()]
    return groebner_basis(ideal(ring, gens))


def fitting_height_at_least(M: ModulePresentation, r: int, bound: int) -> bool:
    """Certified test height(Fitt_r(M)) >= bound; a growing pool of minors
    can only under-report height, so early acceptance is sound and the
    exhausted pool decides the negative case exactly."""
    ring = M.ring
    n = M.free_cover.rank
    k = n - r
    if k <= 0:
        return True
    if k > min(n, M.relations.source.rank):
        return bound <= 0
    found = []
    batch = []
    for d in iterate_minors(M.relations, k):
        if d.is_zero():
            continue
        batch.append(d)
        if len(batch) >= 24:
            found.extend(batch)
            batch = []
            if height(ideal(ring, found)) >= bound:
                return True
    found.extend(batch)
    if not found:
        return bound <= 0
    return height(ideal(ring, found)) >= bound
