"""The twisted box algebra: multiplication by vertical stacking with a sigma
phase, comultiplication by horizontal splitting with a tau phase, and the
antipode built from the box rotation.

All structure constants are exact roots of unity; axiom verification reduces
every scalar to the cyclotomic field of the pair's denominator lcm, so the
checks are exact integer arithmetic.
"""

from __future__ import annotations

from fractions import Fraction

from .cohomology import OpextPair, check_opext_pair
from .cyclotomic import Cyclo, CyclotomicField
from .errors import InvalidPairError
from .groupoids import ValidationReport
from .matched_pairs import BoxSystem
from .phases import Phase


class PhasedSum:
    """A Z[zeta_L]-combination of basis keys, held as exponent counts."""

    __slots__ = ("L", "terms")

    def __init__(self, L: int):
        self.L = L
        self.terms: dict = {}

    def add(self, key, exp: int, count: int = 1) -> None:
        vec = self.terms.get(key)
        if vec is None:
            vec = [0] * self.L
            self.terms[key] = vec
        vec[exp % self.L] += count

    def reduced(self, field: CyclotomicField) -> dict:
        out = {}
        for key, counts in self.terms.items():
            val = field.from_exponent_counts(counts)
            if not val.is_zero:
                out[key] = val
        return out

    def equals(self, other: "PhasedSum", field: CyclotomicField) -> bool:
        keys = set(self.terms) | set(other.terms)
        for key in keys:
            a = field.from_exponent_counts(self.terms.get(key, [0] * self.L))
            b = field.from_exponent_counts(other.terms.get(key, [0] * self.L))
            if a != b:
                return False
        return True

    def is_zero(self, field: CyclotomicField) -> bool:
        return not self.reduced(field)


class WeakHopfAlgebra:
    """Box-indexed basis with exact structure constants."""

    def __init__(self, boxes: BoxSystem, pair: OpextPair):
        self.boxes = boxes
        self.pair = pair
        self.L = max(1, pair.denominator_lcm())
        self.field = CyclotomicField(self.L)
        n = boxes.n_boxes
        L = self.L

        def as_exp(p: Phase) -> int:
            q = p.exponent
            return q.numerator * (L // q.denominator) % L

        self.sigma_e = {k: as_exp(v) for k, v in pair.sigma.data.items()}
        self.tau_e = {k: as_exp(v) for k, v in pair.tau.data.items()}
        # multiplication: (a, b) -> (exponent, box), None when not stackable
        self._mult = {}
        for a in range(n):
            for b in range(n):
                c = boxes.v_compose_or_none(a, b)
                if c is not None:
                    self._mult[(a, b)] = (self.sigma_e.get((a, b), 0), c)
        # comultiplication: a -> tuple of (exponent, left factor, right factor)
        h = boxes.mp.h
        self._comult = []
        for a in range(n):
            terms = []
            x, g = boxes.pairs[a]
            for x1 in h.arrows():
                for x2 in h.arrows_from(h.target[x1]):
                    if h.compose(x1, x2) != x:
                        continue
                    right = boxes.fill(x2, g)
                    left = boxes.fill(x1, boxes.mp.left(x2, g))
                    terms.append((self.tau_e.get((left, right), 0), left, right))
            self._comult.append(tuple(terms))
        self._counit = tuple(1 if h.is_identity(boxes.top[a]) else 0
                             for a in range(n))
        self._antipode = []
        for a in range(n):
            hi = boxes.h_inverse(a)
            rot = boxes.rotate(a)
            exp = (-self.tau_e.get((a, hi), 0)
                   - self.sigma_e.get((rot, hi), 0)) % L
            self._antipode.append((exp, rot))
        self.unit_boxes = tuple(boxes.idv)

    @property
    def dim(self) -> int:
        return self.boxes.n_boxes

    def mult(self, a: int, b: int):
        return self._mult.get((a, b))

    def comult(self, a: int):
        return self._comult[a]

    def counit(self, a: int) -> int:
        return self._counit[a]

    def antipode(self, a: int):
        return self._antipode[a]

    # -- element arithmetic (exact) ----------------------------------------

    def elem_mult(self, x: dict, y: dict) -> dict:
        """Product of two elements given as {box: Cyclo}."""
        out: dict[int, Cyclo] = {}
        for a, ca in x.items():
            for b, cb in y.items():
                m = self.mult(a, b)
                if m is None:
                    continue
                exp, c = m
                val = ca * cb * self.field.root(exp)
                out[c] = out.get(c, self.field.zero()) + val
        return {k: v for k, v in out.items() if not v.is_zero}

    def unit_element(self) -> dict:
        return {b: self.field.one() for b in self.unit_boxes}

    def counit_element(self, x: dict) -> Cyclo:
        out = self.field.zero()
        for a, ca in x.items():
            if self._counit[a]:
                out = out + ca
        return out

    def comult_element(self, x: dict) -> dict:
        out: dict[tuple, Cyclo] = {}
        for a, ca in x.items():
            for exp, b, c in self._comult[a]:
                val = ca * self.field.root(exp)
                key = (b, c)
                out[key] = out.get(key, self.field.zero()) + val
        return {k: v for k, v in out.items() if not v.is_zero}

    def eps_source(self, a: int) -> dict:
        """epsilon_s on a basis box, as an element {box: Cyclo}."""
        out = PhasedSum(self.L)
        for exp1, b1, b2 in self._comult_of_unit():
            m = self.mult(a, b2)
            if m is None or not self._counit[m[1]]:
                continue
            out.add(b1, exp1 + m[0])
        return out.reduced(self.field)

    def eps_target(self, a: int) -> dict:
        out = PhasedSum(self.L)
        for exp1, b1, b2 in self._comult_of_unit():
            m = self.mult(b1, a)
            if m is None or not self._counit[m[1]]:
                continue
            out.add(b2, exp1 + m[0])
        return out.reduced(self.field)

    def _comult_of_unit(self):
        cache = getattr(self, "_unit_comult", None)
        if cache is None:
            cache = []
            for u in self.unit_boxes:
                cache.extend(self._comult[u])
            self._unit_comult = tuple(cache)
        return self._unit_comult

    def partial_units(self) -> tuple[dict, dict]:
        """Candidate partial units keyed by object: (by r(x), by l(x))."""
        h = self.boxes.mp.h
        by_r: dict[int, dict] = {}
        by_l: dict[int, dict] = {}
        for x in h.arrows():
            b = self.boxes.idv[x]
            by_r.setdefault(h.target[x], {})[b] = self.field.one()
            by_l.setdefault(h.source[x], {})[b] = self.field.one()
        return by_r, by_l


def build_weak_hopf(boxes: BoxSystem, pair: OpextPair,
                    validate: bool = True) -> WeakHopfAlgebra:
    if validate:
        rep = check_opext_pair(boxes, pair)
        if not rep.ok:
            raise InvalidPairError(rep.summary())
    return WeakHopfAlgebra(boxes, pair)


def verify_weak_hopf_axioms(w: WeakHopfAlgebra) -> ValidationReport:
    """Exact check of every weak Hopf axiom instance on basis elements."""
    bad: list[str] = []
    boxes, L, field = w.boxes, w.L, w.field
    n = boxes.n_boxes

    # associativity: sigma 2-cocycle identity over stackable triples
    for a in range(n):
        for b in range(n):
            mab = w.mult(a, b)
            if mab is None:
                continue
            for c in range(n):
                mbc = w.mult(b, c)
                m_ab_c = w.mult(mab[1], c)
                if (mbc is None) != (m_ab_c is None):
                    bad.append(f"associativity pattern broken at ({a},{b},{c})")
                    continue
                if mbc is None:
                    continue
                m_a_bc = w.mult(a, mbc[1])
                if m_a_bc is None or m_a_bc[1] != m_ab_c[1]:
                    bad.append(f"associativity boxes differ at ({a},{b},{c})")
                elif (mab[0] + m_ab_c[0] - mbc[0] - m_a_bc[0]) % L:
                    bad.append(f"associativity phases differ at ({a},{b},{c})")

    # unit
    unit = w.unit_element()
    for a in range(n):
        x = {a: field.one()}
        if w.elem_mult(unit, x) != x or w.elem_mult(x, unit) != x:
            bad.append(f"unit law fails at {a}")

    # coassociativity: tau 2-cocycle identity over splitting triples
    for a in range(n):
        lhs, rhs = PhasedSum(L), PhasedSum(L)
        for exp1, e, d in w.comult(a):
            for exp2, b, c in w.comult(e):
                lhs.add((b, c, d), exp1 + exp2)
        for exp1, b, f in w.comult(a):
            for exp2, c, d in w.comult(f):
                rhs.add((b, c, d), exp1 + exp2)
        if not lhs.equals(rhs, field):
            bad.append(f"coassociativity fails at {a}")

    # counit laws
    for a in range(n):
        left, right = PhasedSum(L), PhasedSum(L)
        for exp, b, c in w.comult(a):
            if w.counit(b):
                left.add(c, exp)
            if w.counit(c):
                right.add(b, exp)
        expect = PhasedSum(L)
        expect.add(a, 0)
        if not left.equals(expect, field) or not right.equals(expect, field):
            bad.append(f"counit law fails at {a}")

    # comultiplication is multiplicative
    for a in range(n):
        for b in range(n):
            lhs = PhasedSum(L)
            mab = w.mult(a, b)
            if mab is not None:
                for exp, c1, c2 in w.comult(mab[1]):
                    lhs.add((c1, c2), mab[0] + exp)
            rhs = PhasedSum(L)
            for exp1, a1, a2 in w.comult(a):
                for exp2, b1, b2 in w.comult(b):
                    m1, m2 = w.mult(a1, b1), w.mult(a2, b2)
                    if m1 is None or m2 is None:
                        continue
                    rhs.add((m1[1], m2[1]), exp1 + exp2 + m1[0] + m2[0])
            if not lhs.equals(rhs, field):
                bad.append(f"Delta multiplicativity fails at ({a},{b})")

    # weak unit axiom: (D(1)x1)(1xD(1)) = (D x id)D(1) = (1xD(1))(D(1)x1)
    d1 = w._comult_of_unit()
    mid = PhasedSum(L)
    for exp1, b1, b2 in d1:
        for exp2, c1, c2 in w.comult(b2):
            mid.add((b1, c1, c2), exp1 + exp2)
    lhs, rhs = PhasedSum(L), PhasedSum(L)
    for exp1, b1, b2 in d1:
        for exp2, c1, c2 in d1:
            m = w.mult(b2, c1)
            if m is not None:
                lhs.add((b1, m[1], c2), exp1 + exp2 + m[0])
            m2 = w.mult(c1, b2)
            if m2 is not None:
                rhs.add((b1, m2[1], c2), exp1 + exp2 + m2[0])
    if not lhs.equals(mid, field):
        bad.append("weak unit axiom (left form) fails")
    if not rhs.equals(mid, field):
        bad.append("weak unit axiom (right form) fails")

    # weak counit axiom: eps(fgh) = sum eps(f g1) eps(g2 h) = eps(f g2) eps(g1 h)
    h_arrows = boxes.mp.h
    id_top = [f for f in range(n) if h_arrows.is_identity(boxes.top[f])]
    for f in id_top:
        for g in range(n):
            for hh in range(n):
                direct = PhasedSum(L)
                mfg = w.mult(f, g)
                if mfg is not None:
                    m2 = w.mult(mfg[1], hh)
                    if m2 is not None and w.counit(m2[1]):
                        direct.add("s", mfg[0] + m2[0])
                s1, s2 = PhasedSum(L), PhasedSum(L)
                for exp, g1, g2 in w.comult(g):
                    ma, mb = w.mult(f, g1), w.mult(g2, hh)
                    if (ma is not None and w.counit(ma[1])
                            and mb is not None and w.counit(mb[1])):
                        s1.add("s", exp + ma[0] + mb[0])
                    mc, md = w.mult(f, g2), w.mult(g1, hh)
                    if (mc is not None and w.counit(mc[1])
                            and md is not None and w.counit(md[1])):
                        s2.add("s", exp + mc[0] + md[0])
                if not direct.equals(s1, field) or not direct.equals(s2, field):
                    bad.append(f"weak counit axiom fails at ({f},{g},{hh})")

    # antipode axioms
    for a in range(n):
        lhs1, lhs2 = PhasedSum(L), PhasedSum(L)
        for exp, a1, a2 in w.comult(a):
            sexp, sbox = w.antipode(a2)
            m = w.mult(a1, sbox)
            if m is not None:
                lhs1.add(m[1], exp + sexp + m[0])
            sexp1, sbox1 = w.antipode(a1)
            m2 = w.mult(sbox1, a2)
            if m2 is not None:
                lhs2.add(m2[1], sexp1 + exp + m2[0])
        if lhs1.reduced(field) != w.eps_target(a):
            bad.append(f"antipode target axiom fails at {a}")
        if lhs2.reduced(field) != w.eps_source(a):
            bad.append(f"antipode source axiom fails at {a}")
        # S(a1) a2 S(a3) = S(a)
        triple = PhasedSum(L)
        for exp1, a1, rest in w.comult(a):
            for exp2, a2, a3 in w.comult(rest):
                s1e, s1b = w.antipode(a1)
                s3e, s3b = w.antipode(a3)
                m = w.mult(s1b, a2)
                if m is None:
                    continue
                m2 = w.mult(m[1], s3b)
                if m2 is None:
                    continue
                triple.add(m2[1], exp1 + exp2 + s1e + s3e + m[0] + m2[0])
        sa = PhasedSum(L)
        se, sb = w.antipode(a)
        sa.add(sb, se)
        if not triple.equals(sa, field):
            bad.append(f"antipode composite axiom fails at {a}")

    return ValidationReport(tuple(bad))


def counital_subalgebras(w: WeakHopfAlgebra):
    """Bases of the images of eps_source and eps_target, with a report.

    Both subalgebras must be commutative of dimension equal to the number of
    objects, spanned by the partial units (source by r, target by l).
    """
    field = w.field
    src_rows = [w.eps_source(a) for a in range(w.dim)]
    tgt_rows = [w.eps_target(a) for a in range(w.dim)]
    src_basis = _row_reduce_elements(src_rows, field)
    tgt_basis = _row_reduce_elements(tgt_rows, field)
    bad = []
    n_obj = w.boxes.mp.h.n_objects
    if len(src_basis) != n_obj:
        bad.append(f"source subalgebra has dimension {len(src_basis)} != {n_obj}")
    if len(tgt_basis) != n_obj:
        bad.append(f"target subalgebra has dimension {len(tgt_basis)} != {n_obj}")
    for name, basis in (("source", src_basis), ("target", tgt_basis)):
        for i, x in enumerate(basis):
            for y in basis[i + 1:]:
                if w.elem_mult(x, y) != w.elem_mult(y, x):
                    bad.append(f"{name} subalgebra not commutative")
    by_r, by_l = w.partial_units()
    if not _same_span(src_basis, list(by_r.values()), field):
        bad.append("source subalgebra is not spanned by the r-partial units")
    if not _same_span(tgt_basis, list(by_l.values()), field):
        bad.append("target subalgebra is not spanned by the l-partial units")
    return src_basis, tgt_basis, ValidationReport(tuple(bad))


def semisimplicity_check(w: WeakHopfAlgebra) -> bool:
    """Nondegeneracy of the trace form of the left regular representation."""
    n = w.dim
    field = w.field
    gram = [[field.zero()] * n for _ in range(n)]
    for a in range(n):
        for b in range(n):
            m = w.mult(a, b)
            if m is None:
                continue
            exp, c = m
            # trace of left multiplication by the box c
            tr = 0
            for x in range(n):
                mx = w.mult(c, x)
                if mx is not None and mx[1] == x:
                    tr += 1  # the phase is 0 whenever c.x = x (c is an identity)
            if tr:
                gram[a][b] = field.root(exp).scale(tr)
    return _det_nonzero(gram, field)


def _row_reduce_elements(rows, field):
    """Echelon basis of the span of {box: Cyclo} elements."""
    basis: list[tuple[int, dict]] = []  # (pivot key, element with pivot 1)
    for row in rows:
        cur = dict(row)
        for pivot, vec in basis:
            coef = cur.get(pivot)
            if coef is not None and not coef.is_zero:
                for k, v in vec.items():
                    upd = cur.get(k, field.zero()) - coef * v
                    if upd.is_zero:
                        cur.pop(k, None)
                    else:
                        cur[k] = upd
        cur = {k: v for k, v in cur.items() if not v.is_zero}
        if cur:
            pivot = min(cur)
            inv = cur[pivot].inverse()
            basis.append((pivot, {k: v * inv for k, v in cur.items()}))
    basis.sort(key=lambda pv: pv[0])
    return [vec for _, vec in basis]


def _same_span(basis_a, vecs_b, field) -> bool:
    ra = _row_reduce_elements(basis_a, field)
    rb = _row_reduce_elements(vecs_b, field)
    rab = _row_reduce_elements(basis_a + vecs_b, field)
    return len(ra) == len(rb) == len(rab)


def _det_nonzero(mat, field) -> bool:
    n = len(mat)
    m = [row[:] for row in mat]
    for col in range(n):
        piv = None
        for r in range(col, n):
            if not m[r][col].is_zero:
                piv = r
                break
        if piv is None:
            return False
        m[col], m[piv] = m[piv], m[col]
        inv = m[col][col].inverse()
        for r in range(col + 1, n):
            if m[r][col].is_zero:
                continue
            factor = m[r][col] * inv
            for c in range(col, n):
                m[r][c] = m[r][c] - factor * m[col][c]
    return True
