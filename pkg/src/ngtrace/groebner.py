"""Buchberger Groebner bases, toric ideals by saturation, module syzygies.

Everything is deterministic: S-pairs are processed by smallest weighted
degree of the pair lcm, ties broken by creation index, and the returned
basis is auto-reduced, monic and sorted.  Size and degree caps raise
ResourceLimit explicitly rather than truncating.
"""

from __future__ import annotations

import heapq
import math
from fractions import Fraction

from .errors import ResourceLimit
from .polyring import (
    Mono,
    PolyRing,
    Polynomial,
    mono_coprime,
    mono_div,
    mono_lcm,
    mono_mul,
)

DEFAULT_MAX_BASIS = 5000
DEGREE_CAP_FACTOR = 10


def _default_degree_cap(ring: PolyRing) -> int:
    return DEGREE_CAP_FACTOR * sum(ring.weights)


def _reduce_terms(terms: dict, leads, key) -> dict:
    """Core division loop on raw term dicts against precomputed lead data.

    ``leads`` holds (lead monomial, lead coefficient, tail term items).
    """
    work = dict(terms)
    remainder: dict[Mono, object] = {}
    while work:
        m = max(work, key=key)
        c = work.pop(m)
        hit = None
        for lm, lc, tail in leads:
            q = mono_div(m, lm)
            if q is not None:
                hit = (q, lc, tail)
                break
        if hit is None:
            remainder[m] = c
            continue
        q, lc, tail = hit
        factor = c if lc == 1 else (-c if lc == -1 else Fraction(c) / Fraction(lc))
        for gm, gc in tail:
            mm = mono_mul(gm, q)
            s = work.get(mm, 0) - factor * gc
            if s == 0:
                work.pop(mm, None)
            else:
                work[mm] = s
    return remainder


def _lead_entry(g: Polynomial):
    lm, lc = g.lt()
    tail = [(m, c) for m, c in g.terms.items() if m != lm]
    return (lm, lc, tail)


def reduce_full(p: Polynomial, basis: list[Polynomial]) -> Polynomial:
    """Remainder of p under multivariate division by basis (all terms reduced)."""
    ring = p.ring
    leads = [_lead_entry(g) for g in basis if not g.is_zero()]
    return Polynomial(ring, _reduce_terms(p.terms, leads, ring.sort_key))


def normal_form(p: Polynomial, basis) -> Polynomial:
    """Normal form against a list of polynomials or a GroebnerBasis."""
    if isinstance(basis, GroebnerBasis):
        basis = basis.polys
    return reduce_full(p, list(basis))


class GroebnerBasis:
    """Reduced basis plus the ring (which carries the order)."""

    __slots__ = ("ring", "polys")

    def __init__(self, ring: PolyRing, polys):
        self.ring = ring
        self.polys = tuple(polys)

    def normal_form(self, p: Polynomial) -> Polynomial:
        return reduce_full(p, list(self.polys))

    def contains(self, p: Polynomial) -> bool:
        return self.normal_form(p).is_zero()

    def self_check(self) -> bool:
        """Re-verify the defining closure: every S-polynomial reduces to zero."""
        polys = list(self.polys)
        for i in range(len(polys)):
            for j in range(i + 1, len(polys)):
                s = _spoly(polys[i], polys[j])
                if not reduce_full(s, polys).is_zero():
                    return False
        return True

    def __iter__(self):
        return iter(self.polys)

    def __len__(self):
        return len(self.polys)

    def __repr__(self):
        return f"GroebnerBasis({len(self.polys)} elements over {self.ring!r})"


def _spoly(f: Polynomial, g: Polynomial) -> Polynomial:
    gamma = mono_lcm(f.lm(), g.lm())
    uf = mono_div(gamma, f.lm())
    ug = mono_div(gamma, g.lm())
    cf, cg = f.lc(), g.lc()
    ratio = 1 if cf == cg else Fraction(cf) / Fraction(cg)
    return f.term_mul(uf) - g.term_mul(ug, ratio)


def _interreduce(ring: PolyRing, polys: list[Polynomial]) -> list[Polynomial]:
    polys = [p.monic() for p in polys if not p.is_zero()]
    polys.sort(key=lambda p: ring.sort_key(p.lm()))
    kept: list[Polynomial] = []
    for p in polys:
        lm = p.lm()
        if any(mono_div(lm, q.lm()) is not None for q in kept):
            continue
        kept.append(p)
    entries = [_lead_entry(p) for p in kept]
    reduced = []
    for i, p in enumerate(kept):
        others = entries[:i] + entries[i + 1 :]
        reduced.append(
            Polynomial(ring, _reduce_terms(p.terms, others, ring.sort_key)).monic()
        )
    reduced.sort(key=lambda p: ring.sort_key(p.lm()))
    return reduced


def buchberger(
    gens,
    *,
    ring: PolyRing | None = None,
    max_basis: int = DEFAULT_MAX_BASIS,
    max_wdeg: int | None = None,
    verify: bool = False,
) -> GroebnerBasis:
    """Reduced Groebner basis of the ideal generated by gens.

    Pair selection is the normal strategy: smallest weighted degree of the
    pair lcm first, ties by pair creation index.  The product criterion and
    the classic chain criterion (both companion pairs already treated) prune
    superfluous pairs.
    """
    gens = [g for g in gens if not g.is_zero()]
    if not gens:
        return GroebnerBasis(ring if ring is not None else PolyRing(("X",), (1,)), ())
    ring = gens[0].ring
    key = ring.sort_key
    cap = _default_degree_cap(ring) if max_wdeg is None else max_wdeg

    basis: list[Polynomial] = []
    leads: list[tuple] = []
    lms: list[Mono] = []

    def admit(p: Polynomial):
        if ring.wdeg(p.lm()) > cap:
            raise ResourceLimit(
                f"basis element degree {ring.wdeg(p.lm())} exceeds cap {cap}"
            )
        basis.append(p)
        if len(basis) > max_basis:
            raise ResourceLimit(f"basis size exceeds cap {max_basis}")
        leads.append(_lead_entry(p))
        lms.append(p.lm())

    for g in gens:
        r = Polynomial(ring, _reduce_terms(g.terms, leads, key)).monic()
        if not r.is_zero():
            admit(r)

    pairs: list[tuple[int, int, int, int]] = []
    seq = 0
    done: set[tuple[int, int]] = set()

    def push_pairs(j: int):
        nonlocal seq
        for i in range(j):
            gamma = mono_lcm(lms[i], lms[j])
            heapq.heappush(pairs, (ring.wdeg(gamma), seq, i, j))
            seq += 1

    for j in range(len(basis)):
        push_pairs(j)

    while pairs:
        _, _, i, j = heapq.heappop(pairs)
        if (i, j) in done:
            continue
        if mono_coprime(lms[i], lms[j]):
            done.add((i, j))
            continue
        gamma = mono_lcm(lms[i], lms[j])
        chained = False
        for k in range(len(basis)):
            if k == i or k == j:
                continue
            if mono_div(gamma, lms[k]) is None:
                continue
            a = (min(i, k), max(i, k))
            b = (min(j, k), max(j, k))
            if a in done and b in done:
                chained = True
                break
        done.add((i, j))
        if chained:
            continue
        s = _spoly(basis[i], basis[j])
        r = Polynomial(ring, _reduce_terms(s.terms, leads, key))
        if r.is_zero():
            continue
        admit(r.monic())
        push_pairs(len(basis) - 1)

    gb = GroebnerBasis(ring, _interreduce(ring, basis))
    if verify and not gb.self_check():
        raise AssertionError("S-polynomial closure failed after interreduction")
    return gb


def ideal_membership(p: Polynomial, gens) -> bool:
    if p.is_zero():
        return True
    return buchberger(list(gens)).contains(p)


def two_minors(matrix: list[list[Polynomial]]) -> list[Polynomial]:
    """All 2x2 minors of a 2-row matrix, column pairs in lexicographic order.

    Sign convention: top[i]*bottom[j] - top[j]*bottom[i] for i < j.
    """
    if len(matrix) != 2:
        raise ValueError("expected a matrix with exactly 2 rows")
    top, bottom = matrix
    if len(top) != len(bottom):
        raise ValueError("rows of different lengths")
    n = len(top)
    return [
        top[i] * bottom[j] - top[j] * bottom[i]
        for i in range(n)
        for j in range(i + 1, n)
    ]


# -- toric ideals -----------------------------------------------------------


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    return a, x0, y0


def _size_reduce(vectors: list[list[int]]) -> list[list[int]]:
    """Greedy pairwise reduction keeping kernel vectors (so binomial degrees) small."""

    def norm(v):
        return sum(x * x for x in v)

    vecs = [list(v) for v in vectors]
    changed = True
    rounds = 0
    while changed and rounds < 100:
        changed = False
        rounds += 1
        for i in range(len(vecs)):
            for j in range(len(vecs)):
                if i == j:
                    continue
                vi, vj = vecs[i], vecs[j]
                nj = norm(vj)
                if nj == 0:
                    continue
                t = round(sum(a * b for a, b in zip(vi, vj)) / nj)
                if t == 0:
                    continue
                cand = [a - t * b for a, b in zip(vi, vj)]
                if norm(cand) < norm(vi):
                    vecs[i] = cand
                    changed = True
    return vecs


def _kernel_basis(weights: tuple[int, ...]) -> list[list[int]]:
    """Basis of the integer kernel of the 1xn matrix (weights)."""
    n = len(weights)
    cols = [[1 if i == j else 0 for i in range(n)] for j in range(n)]
    vals = list(weights)
    for i in range(1, n):
        g, x, y = _xgcd(vals[0], vals[i])
        c0, ci = cols[0], cols[i]
        new0 = [x * a + y * b for a, b in zip(c0, ci)]
        newi = [(vals[i] // g) * a - (vals[0] // g) * b for a, b in zip(c0, ci)]
        cols[0], cols[i] = new0, newi
        vals[0], vals[i] = g, 0
    return _size_reduce(cols[1:])


def _binomial_from_vector(ring: PolyRing, v: list[int]) -> Polynomial:
    pos = tuple(max(x, 0) for x in v)
    neg = tuple(max(-x, 0) for x in v)
    return ring.monomial(pos) - ring.monomial(neg)


def toric_ideal(
    weights,
    *,
    names=None,
    seed=(),
    max_basis: int = DEFAULT_MAX_BASIS,
    max_wdeg: int | None = None,
) -> GroebnerBasis:
    """Groebner basis of the kernel of X_i -> t^(w_i).

    The lattice-basis ideal is saturated by the product of the variables via
    one auxiliary variable and elimination.  Optional ``seed`` polynomials
    must already lie in the kernel (each a weight-homogeneous binomial);
    they can only speed up saturation, never change the result.
    """
    weights = tuple(int(w) for w in weights)
    n = len(weights)
    if n > 6:
        raise ResourceLimit(f"toric ideals limited to 6 variables, got {n}")
    if max(weights) > 200:
        raise ResourceLimit(
            f"toric ideals limited to weights <= 200, got {max(weights)}"
        )
    if math.gcd(*weights) != 1:
        raise ValueError("weights must have gcd 1")
    if names is None:
        names = [f"X{i+1}" for i in range(n)]
    ring = PolyRing(names, weights)

    ring_t = PolyRing(tuple(names) + ("T_sat",), weights + (1,), elim=n)
    lift = list(range(n))
    gens = [_binomial_from_vector(ring_t, v + [0]) for v in _kernel_basis(weights)]
    for p in seed:
        # only difference-of-equal-degree-monomials seeds are guaranteed members
        terms = list(p.terms.items())
        if (
            len(terms) != 2
            or terms[0][1] + terms[1][1] != 0
            or not p.is_homogeneous()
        ):
            raise ValueError(f"seed {p} is not a homogeneous cancelling binomial")
        gens.append(p.map_to(ring_t, lift))
    gens.append(ring_t.monomial(tuple([1] * n + [1])) - ring_t.one())

    gb_t = buchberger(gens, max_basis=max_basis, max_wdeg=max_wdeg)
    kept = []
    for p in gb_t:
        if all(m[n] == 0 for m in p.terms):
            q = Polynomial(ring, {m[:n]: c for m, c in p.terms.items()})
            if not q.is_homogeneous():
                raise AssertionError(f"toric basis element {q} is not homogeneous")
            kept.append(q)
    kept.sort(key=lambda p: ring.sort_key(p.lm()))
    return GroebnerBasis(ring, kept)


# -- left kernels over a quotient ring (module syzygies) ----------------------
#
# Vectors live in a free module with "value" positions 0..q-1 and "tag"
# positions q..q+r-1.  A position-over-term order with value positions
# dominating makes the tag parts of basis elements with vanishing value part
# a generating set of {f : f.N = 0 over ring/ideal}.

VecTerm = tuple[int, Mono]


def _vec_lt(v: dict, key) -> VecTerm:
    return max(v, key=lambda t: (-t[0], key(t[1])))


def _vec_monic(v: dict, key) -> dict:
    c = v[_vec_lt(v, key)]
    if c == 1:
        return v
    if c == -1:
        return {t: -x for t, x in v.items()}
    inv = Fraction(1) / Fraction(c)
    out = {}
    for t, x in v.items():
        y = x * inv
        out[t] = int(y) if isinstance(y, Fraction) and y.denominator == 1 else y
    return out


def _vec_reduce(v: dict, basis: list[tuple[VecTerm, object, dict]], key) -> dict:
    work = dict(v)
    remainder: dict[VecTerm, object] = {}
    while work:
        t = max(work, key=lambda u: (-u[0], key(u[1])))
        c = work.pop(t)
        pos, mono = t
        hit = None
        for lead, blc, bterms in basis:
            if lead[0] != pos:
                continue
            q = mono_div(mono, lead[1])
            if q is not None:
                hit = (lead, q, blc, bterms)
                break
        if hit is None:
            remainder[t] = c
            continue
        lead, q, blc, bterms = hit
        factor = c if blc == 1 else (-c if blc == -1 else Fraction(c) / Fraction(blc))
        for bt, bc in bterms.items():
            if bt == lead:
                continue
            tt = (bt[0], mono_mul(bt[1], q))
            s = work.get(tt, 0) - factor * bc
            if s == 0:
                work.pop(tt, None)
            else:
                work[tt] = s
    return remainder


def _module_groebner(vectors: list[dict], ring: PolyRing, max_basis: int) -> list[dict]:
    """Buchberger for submodules of a free module, position-over-term order."""
    key = ring.sort_key
    basis: list[dict] = []
    leads: list[tuple[VecTerm, object, dict]] = []

    def admit(v: dict):
        v = _vec_reduce(v, leads, key)
        if not v:
            return
        v = _vec_monic(v, key)
        basis.append(v)
        lead = _vec_lt(v, key)
        leads.append((lead, v[lead], v))

    for v in vectors:
        admit(v)

    pairs: list[tuple[int, int, int, int]] = []
    seq = 0

    def push(j: int):
        nonlocal seq
        lj = _vec_lt(basis[j], key)
        for i in range(j):
            li = _vec_lt(basis[i], key)
            if li[0] != lj[0]:
                continue
            gamma = mono_lcm(li[1], lj[1])
            heapq.heappush(pairs, (ring.wdeg(gamma), seq, i, j))
            seq += 1

    for j in range(len(basis)):
        push(j)

    while pairs:
        _, _, i, j = heapq.heappop(pairs)
        vi, vj = basis[i], basis[j]
        li, lj = _vec_lt(vi, key), _vec_lt(vj, key)
        gamma = mono_lcm(li[1], lj[1])
        qi = mono_div(gamma, li[1])
        qj = mono_div(gamma, lj[1])
        s: dict[VecTerm, object] = {}
        for t, c in vi.items():
            tt = (t[0], mono_mul(t[1], qi))
            s[tt] = s.get(tt, 0) + c
        for t, c in vj.items():
            tt = (t[0], mono_mul(t[1], qj))
            x = s.get(tt, 0) - c
            if x == 0:
                s.pop(tt, None)
            else:
                s[tt] = x
        r = _vec_reduce(s, leads, key)
        if not r:
            continue
        r = _vec_monic(r, key)
        basis.append(r)
        if len(basis) > max_basis:
            raise ResourceLimit(f"module basis size exceeds cap {max_basis}")
        lead = _vec_lt(r, key)
        leads.append((lead, r[lead], r))
        push(len(basis) - 1)

    return basis


def kernel_over_quotient(
    rows: list[list[Polynomial]],
    ideal_gens: list[Polynomial],
    *,
    max_basis: int = DEFAULT_MAX_BASIS,
) -> list[tuple[Polynomial, ...]]:
    """Generators of the left kernel {f : f.N = 0 over ring/ideal}.

    ``rows`` are the rows of the matrix N.  Returns tag rows f (length =
    number of rows of N); every returned row satisfies f.N = 0 modulo the
    ideal, which is asserted before returning.
    """
    if not rows:
        return []
    r = len(rows)
    q = len(rows[0])
    ring = (rows[0][0]).ring
    if r > 4:
        raise ResourceLimit(f"kernel computation limited to 4 rows, got {r}")
    if ring.nvars > 6:
        raise ResourceLimit(
            f"kernel computation limited to 6 ring variables, got {ring.nvars}"
        )
    if any(len(row) != q for row in rows):
        raise ValueError("ragged matrix")

    zero_mono = (0,) * ring.nvars
    vectors: list[dict] = []
    for i, row in enumerate(rows):
        v: dict[VecTerm, object] = {}
        for j, p in enumerate(row):
            for m, c in p.terms.items():
                v[(j, m)] = c
        v[(q + i, zero_mono)] = 1
        vectors.append(v)
    for h in ideal_gens:
        if h.is_zero():
            continue
        for j in range(q):
            vectors.append({(j, m): c for m, c in h.terms.items()})

    gb = _module_groebner(vectors, ring, max_basis)

    ideal_gb = buchberger(ideal_gens, ring=ring) if ideal_gens else None
    out: list[tuple[Polynomial, ...]] = []
    seen = set()
    for v in gb:
        if any(t[0] < q for t in v):
            continue
        comps = []
        for i in range(r):
            terms = {t[1]: c for t, c in v.items() if t[0] == q + i}
            comps.append(Polynomial(ring, terms))
        if all(p.is_zero() for p in comps):
            continue
        if ideal_gb is not None and all(
            ideal_gb.normal_form(p).is_zero() for p in comps
        ):
            continue  # the zero row of the quotient; contributes nothing
        sig = tuple(frozenset(p.terms.items()) for p in comps)
        if sig in seen:
            continue
        seen.add(sig)
        for j in range(q):
            entry = ring.zero()
            for i in range(r):
                entry = entry + comps[i] * rows[i][j]
            residue = entry if ideal_gb is None else ideal_gb.normal_form(entry)
            if not residue.is_zero():
                raise AssertionError(
                    f"kernel row fails f.N = 0 at column {j}: remainder {residue}"
                )
        out.append(tuple(comps))
    return out
