"""Cops, hooligans and the compressed PSS-poset of a shelling language."""
from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Optional

from .core import FacetFamily, full_mask, indices_of, is_covered_by
from .rows import Clause, DualHornFormula, Row012e, row_cardinality, row_contains, solve_dual_horn


@dataclass(frozen=True)
class SuffixClass:
    """Classification of all ``j != k`` relative to the suffix ``k``."""

    cops: int
    policeable: dict[int, int]  # hooligan index -> mask of all cops policing it
    non_policeable: int


@dataclass(frozen=True)
class CopHooliganTable:
    n: int
    intersections: tuple[tuple[int, ...], ...]  # [i][k] = F_i ∩ F_k (0-based)
    per_suffix: tuple[SuffixClass, ...]  # index k - 1

    def __getitem__(self, k: int) -> SuffixClass:
        return self.per_suffix[k - 1]

    def cops(self, k: int) -> int:
        return self.per_suffix[k - 1].cops


def classify(fam: FacetFamily) -> CopHooliganTable:
    n = fam.n
    facets = fam.facets
    inter = tuple(tuple(f & g for g in facets) for f in facets)
    table = []
    for k in range(n):
        fk = facets[k]
        cops = [j for j in range(n) if j != k and is_covered_by(inter[j][k], fk)]
        cop_mask = sum(1 << j for j in cops)
        policeable: dict[int, int] = {}
        non_policeable = 0
        for i in range(n):
            if i == k or cop_mask >> i & 1:
                continue
            ik = inter[i][k]
            police = sum(1 << j for j in cops if ik & ~inter[j][k] == 0)
            if police:
                policeable[i + 1] = police
            else:
                non_policeable |= 1 << i
        table.append(SuffixClass(cop_mask, policeable, non_policeable))
    return CopHooliganTable(n, inter, tuple(table))


def build_formula(t: CopHooliganTable, k: int) -> DualHornFormula:
    """Dual Horn formula whose models are the potential setments of ``k``."""
    cls = t[k]
    universe = full_mask(t.n) & ~(1 << (k - 1))
    clauses = tuple(Clause(i, cops) for i, cops in sorted(cls.policeable.items()))
    return DualHornFormula(universe, cls.non_policeable, clauses)


@dataclass(frozen=True)
class PssRowFamily:
    """For every suffix ``k``, disjoint rows whose union is its potential setments."""

    n: int
    rows: tuple[tuple[Row012e, ...], ...]  # index k - 1

    def rows_for(self, k: int) -> tuple[Row012e, ...]:
        return self.rows[k - 1]

    def pss_total(self) -> int:
        return sum(row_cardinality(r) for rs in self.rows for r in rs)

    def row_total(self) -> int:
        return sum(len(rs) for rs in self.rows)

    def predicate(self):
        """Fast ``(a, k) -> bool`` membership closure over raw tuples."""
        raw = [[(r.zeros, r.ones, r.bubbles) for r in rs] for rs in self.rows]

        def is_member(a: int, k: int) -> bool:
            for z, o, bs in raw[k - 1]:
                if a & z or a & o != o:
                    continue
                for b in bs:
                    if not a & b:
                        break
                else:
                    return True
            return False

        return is_member


def is_pss(p: PssRowFamily, a: int, k: int) -> bool:
    return any(row_contains(r, a) for r in p.rows[k - 1])


def pss_rows(fam: FacetFamily, threads: int = 1) -> PssRowFamily:
    t = classify(fam)
    return pss_rows_from_table(t, threads)


def pss_rows_from_table(t: CopHooliganTable, threads: int = 1) -> PssRowFamily:
    def solve(k: int) -> tuple[Row012e, ...]:
        return tuple(solve_dual_horn(build_formula(t, k)))

    ks = range(1, t.n + 1)
    if threads > 1:
        with ThreadPoolExecutor(threads) as pool:
            rows = tuple(pool.map(solve, ks))
    else:
        rows = tuple(map(solve, ks))
    return PssRowFamily(t.n, rows)


# -- failure detection -----------------------------------------------------

@dataclass
class FailureReport:
    type1: Optional[list[int]] = None
    type2: bool = False
    type2_witnesses: dict[int, int] = field(default_factory=dict)
    type3: bool = False
    type4: Optional[bool] = None
    max_partial_length: Optional[int] = None

    def to_json(self) -> dict:
        return {
            "type1": self.type1,
            "type2": self.type2,
            "type2Witnesses": {str(k): v for k, v in sorted(self.type2_witnesses.items())},
            "type3": self.type3,
            "type4": self.type4,
            "maxPartialLength": self.max_partial_length,
        }


def detect_type1(t: CopHooliganTable) -> Optional[list[int]]:
    copless = [k for k in range(1, t.n + 1) if not t.cops(k)]
    return copless if len(copless) >= 2 else None


def detect_type2(t: CopHooliganTable) -> tuple[bool, dict[int, int]]:
    """True with one non-policeable hooligan per suffix, or False and {}."""
    witnesses = {}
    for k in range(1, t.n + 1):
        np_mask = t[k].non_policeable
        if not np_mask:
            return False, {}
        witnesses[k] = indices_of(np_mask)[0]
    return True, witnesses


def detect_type3(p: PssRowFamily) -> bool:
    full = full_mask(p.n)
    return not any(is_pss(p, full & ~(1 << (k - 1)), k) for k in range(1, p.n + 1))


def failure_report(t: Optional[CopHooliganTable], p: PssRowFamily) -> FailureReport:
    rep = FailureReport()
    if t is not None:
        rep.type1 = detect_type1(t)
        rep.type2, rep.type2_witnesses = detect_type2(t)
    rep.type3 = detect_type3(p)
    return rep


def render_table(fam: FacetFamily, t: CopHooliganTable) -> str:
    """Text matrix of all intersections ``F_j ∩ F_k`` in the row of ``F_k``.

    Cops are bracketed, hooligans plain, non-policeable hooligans get ``!``.
    """
    def show(mask: int) -> str:
        toks = [fam.vertex_names[v - 1] for v in indices_of(mask)]
        if all(len(x) == 1 for x in toks):
            return "".join(toks) or "∅"
        return ",".join(toks) or "∅"

    cells = []
    for k in range(1, t.n + 1):
        cls = t[k]
        row = []
        for j in range(1, t.n + 1):
            if j == k:
                row.append("·")
                continue
            s = show(t.intersections[j - 1][k - 1])
            if cls.cops >> (j - 1) & 1:
                s = f"[{s}]"
            elif cls.non_policeable >> (j - 1) & 1:
                s += "!"
            row.append(s)
        cells.append(row)
    width = max(len(c) for row in cells for c in row)
    width = max(width, len(f"F{t.n}"))
    head = " " * 5 + " ".join(f"F{j}".rjust(width) for j in range(1, t.n + 1))
    lines = [head]
    for k, row in enumerate(cells, 1):
        lines.append(f"F{k}".ljust(5) + " ".join(c.rjust(width) for c in row))
    lines.append("[..] cop   plain hooligan   ! non-policeable hooligan")
    return "\n".join(lines)


__all__ = [
    "CopHooliganTable", "FailureReport", "PssRowFamily", "SuffixClass",
    "build_formula", "classify", "detect_type1", "detect_type2", "detect_type3",
    "failure_report", "is_pss", "pss_rows", "pss_rows_from_table",
    "render_table",
]
