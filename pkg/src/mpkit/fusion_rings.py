"""Fusion rings: labeled bases with non-negative integer structure constants,
a unit, a duality involution, and exact isomorphism search."""

from __future__ import annotations

from dataclasses import dataclass

from .groupoids import ValidationReport


@dataclass(frozen=True)
class FusionRing:
    labels: tuple                 # canonical label order
    dims: dict                    # label -> positive int
    unit: object                  # unit label
    n_table: dict                 # (i, j, k) -> positive int (zeros absent)
    dual: dict                    # label -> label

    def n(self, i, j, k) -> int:
        return self.n_table.get((i, j, k), 0)

    @property
    def rank(self) -> int:
        return len(self.labels)

    def validate(self) -> ValidationReport:
        bad = []
        L = self.labels
        if self.unit not in L:
            return ValidationReport(("unit label missing",))
        for i in L:
            for k in L:
                if self.n(self.unit, i, k) != (1 if i == k else 0):
                    bad.append(f"left unit fails at ({i},{k})")
                if self.n(i, self.unit, k) != (1 if i == k else 0):
                    bad.append(f"right unit fails at ({i},{k})")
        for i in L:
            for j in L:
                # Frobenius duality: N(i,j,unit) = delta_{j, i*}
                expect = 1 if j == self.dual[i] else 0
                if self.n(i, j, self.unit) != expect:
                    bad.append(f"duality fails at ({i},{j})")
        for i in L:
            for j in L:
                for k in L:
                    for m in L:
                        lhs = sum(self.n(i, j, t) * self.n(t, k, m) for t in L)
                        rhs = sum(self.n(j, k, t) * self.n(i, t, m) for t in L)
                        if lhs != rhs:
                            bad.append(f"associativity fails at ({i},{j},{k},{m})")
        # dimension homomorphism
        for i in L:
            for j in L:
                if self.dims[i] * self.dims[j] != sum(
                        self.n(i, j, k) * self.dims[k] for k in L):
                    bad.append(f"dimension count fails at ({i},{j})")
        return ValidationReport(tuple(bad))

    def row_fingerprint(self, i) -> tuple:
        """Isomorphism-invariant data of one label (for candidate pruning)."""
        mults = sorted((self.n(i, j, k) for j in self.labels
                        for k in self.labels))
        return (self.dims[i], i == self.dual[i],
                self.n(i, i, i), tuple(mults))

    def to_json(self) -> dict:
        return {
            "labels": [str(l) for l in self.labels],
            "dims": {str(l): self.dims[l] for l in self.labels},
            "unit": str(self.unit),
            "dual": {str(l): str(self.dual[l]) for l in self.labels},
            "table": sorted([str(i), str(j), str(k), n]
                            for (i, j, k), n in self.n_table.items()),
        }

    def to_tsv(self) -> str:
        lines = ["# i\tj\tk\tN"]
        for (i, j, k), n in sorted(self.n_table.items(),
                                   key=lambda kv: tuple(map(str, kv[0]))):
            lines.append(f"{i}\t{j}\t{k}\t{n}")
        return "\n".join(lines) + "\n"


def fusion_ring_from_table(dims: list[int], unit: int, table: dict) -> FusionRing:
    """Build a ring over integer labels 0..r-1 from a dense-ish table."""
    labels = tuple(range(len(dims)))
    n_table = {k: v for k, v in table.items() if v}
    dual = {}
    for i in labels:
        partners = [j for j in labels if n_table.get((i, j, unit), 0) == 1
                    and all(n_table.get((i, jj, unit), 0) == 0
                            for jj in labels if jj != j)]
        if len(partners) != 1:
            raise ValueError(f"no unique dual for label {i}")
        dual[i] = partners[0]
    return FusionRing(labels, {i: dims[i] for i in labels}, unit, n_table, dual)


def group_ring(table) -> FusionRing:
    """The fusion ring Z[G] of a finite group multiplication table."""
    n = len(table)
    labels = tuple(range(n))
    n_table = {(i, j, table[i][j]): 1 for i in range(n) for j in range(n)}
    inv = {i: next(j for j in range(n) if table[i][j] == 0) for i in range(n)}
    return FusionRing(labels, {i: 1 for i in labels}, 0, n_table, inv)


def fusion_ring_isomorphic(r1: FusionRing, r2: FusionRing):
    """A unit/dim/dual/table-preserving bijection, or None.

    Deterministic backtracking with candidates ordered by label fingerprints.
    """
    if r1.rank != r2.rank:
        return None
    if sorted(r1.dims.values()) != sorted(r2.dims.values()):
        return None
    fp2: dict = {}
    for l in r2.labels:
        fp2.setdefault(r2.row_fingerprint(l), []).append(l)
    order = sorted(r1.labels, key=lambda l: (l != r1.unit, str(l)))
    assign: dict = {}
    used: set = set()

    def consistent(i, m) -> bool:
        if (i == r1.unit) != (m == r2.unit):
            return False
        if r1.dims[i] != r2.dims[m]:
            return False
        di = r1.dual[i]
        if di in assign and assign[di] != r2.dual[m]:
            return False
        if di == i and r2.dual[m] != m:
            return False
        trial = dict(assign)
        trial[i] = m
        keys = list(trial)
        for a in keys:
            for b in keys:
                for c in keys:
                    if r1.n(a, b, c) != r2.n(trial[a], trial[b], trial[c]):
                        return False
        return True

    def backtrack(pos: int):
        if pos == len(order):
            return dict(assign)
        i = order[pos]
        fp = r1.row_fingerprint(i)
        for m in fp2.get(fp, []):
            if m in used:
                continue
            if not consistent(i, m):
                continue
            assign[i] = m
            used.add(m)
            res = backtrack(pos + 1)
            if res is not None:
                return res
            del assign[i]
            used.discard(m)
        return None

    return backtrack(0)
