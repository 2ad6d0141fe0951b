"""Generating functions, Hilbert numerators and graded Betti tables.

Two families of squarefree monomial ideals on the edge variables of the
complete k-ary tree T(k, n):

* the path ideal, generated by the k^n root-to-leaf edge-path monomials;
* the cut ideal, its Alexander dual, generated by the minimal-cut monomials.

Their graded Betti numbers are packaged as the bivariate generating function
G(x, t) = sum beta_{i,j}(S/I) x^i t^j over i, j > 0, computed by exact
recursions:

    path:  G_{k,1} = (1 + t x)^k - 1,
           G_{k,n} = (1 + t G_{k,n-1})^k - 1;
    cut:   Gc_{k,1} = t^k x,
           Gc_{k,n} = x^-(k-1) * ((1 + t x)(1 + Gc_{k,n-1}) - 1)^k,

where the x-division in the cut recursion is exact at every step (each factor
has no x-free term).  The Hilbert-series numerator is H(x, t) = -G(-x, t); its
x = 1 specialization at t = p is the probability that an operative-edge path
exists (path side) resp. that all paths are blocked (cut side, t = q = 1 - p).

All tables use the quotient convention beta_{i,j}(S/I) internally, with
beta_{0,0} = 1; the ideal convention is the index shift beta_{i-1,j}(I).
"""

from __future__ import annotations

from math import comb
from typing import Iterable, Mapping, Sequence

from .bivar import BivarPoly
from .limits import DEFAULT_BUDGET, Budget

GradedEntries = dict[tuple[int, int], int]


class BettiTable:
    """Graded Betti numbers beta_{i,j}(S/I) as positive big integers.

    Invariants: beta_{0,0} = 1 is present and is the only entry with i = 0;
    all stored entries are strictly positive.
    """

    __slots__ = ("_entries",)

    def __init__(self, entries: Mapping[tuple[int, int], int]) -> None:
        clean: GradedEntries = {}
        for (i, j), beta in entries.items():
            if beta == 0:
                continue
            if beta < 0:
                raise ValueError(f"negative Betti number at ({i}, {j})")
            if i < 0 or j < 0:
                raise ValueError(f"negative index at ({i}, {j})")
            if i == 0 and (j, beta) != (0, 1):
                raise ValueError("the only homological-degree-0 entry is beta_{0,0} = 1")
            clean[(i, j)] = beta
        if clean.get((0, 0)) != 1:
            raise ValueError("a quotient-convention table must contain beta_{0,0} = 1")
        self._entries = clean

    # -- access -------------------------------------------------------------

    def entry(self, i: int, j: int) -> int:
        return self._entries.get((i, j), 0)

    def entries(self) -> tuple[tuple[int, int, int], ...]:
        """(i, j, beta) triples sorted by (i, j)."""
        return tuple((i, j, self._entries[(i, j)]) for (i, j) in sorted(self._entries))

    def as_dict(self) -> GradedEntries:
        return dict(self._entries)

    @property
    def max_i(self) -> int:
        return max(i for i, _ in self._entries)

    @property
    def max_j(self) -> int:
        return max(j for _, j in self._entries)

    def total(self, i: int) -> int:
        return sum(beta for (ii, _), beta in self._entries.items() if ii == i)

    def totals(self) -> tuple[int, ...]:
        """Total Betti numbers (sum over j) for i = 0..max_i."""
        return tuple(self.total(i) for i in range(self.max_i + 1))

    def offset_row(self, r: int, max_i: int | None = None) -> tuple[int, ...]:
        """The row beta_{i, i+r} for i = 1..max_i (default: the table's max_i)."""
        hi = self.max_i if max_i is None else max_i
        return tuple(self.entry(i, i + r) for i in range(1, hi + 1))

    def max_offset(self) -> int:
        return max(j - i for (i, j) in self._entries)

    def ideal_convention(self) -> GradedEntries:
        """The same module shifted to the ideal convention: {(i-1, j): beta}."""
        return {(i - 1, j): beta for (i, j), beta in self._entries.items() if i > 0}

    # -- comparisons ---------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if isinstance(other, BettiTable):
            return self._entries == other._entries
        return NotImplemented

    def __hash__(self) -> int:
        return hash(frozenset(self._entries.items()))

    def __repr__(self) -> str:
        return f"BettiTable({len(self._entries)} entries, totals {self.totals()})"

    # -- serialization -------------------------------------------------------

    def to_csv(self) -> str:
        lines = ["i,j,beta"]
        lines.extend(f"{i},{j},{beta}" for i, j, beta in self.entries())
        return "\n".join(lines) + "\n"

    def to_json_obj(self) -> list[dict[str, object]]:
        return [{"i": i, "j": j, "beta": str(beta)} for i, j, beta in self.entries()]

    @classmethod
    def from_json_obj(cls, obj: Iterable[Mapping[str, object]]) -> "BettiTable":
        return cls({(int(e["i"]), int(e["j"])): int(str(e["beta"])) for e in obj})

    def render_layout(self, max_i: int | None = None, max_offset: int | None = None) -> str:
        """Text table in the printed layout: columns i, rows r = j - i.

        A "total" row leads; zero cells print as ".".
        """
        hi = self.max_i if max_i is None else max_i
        hr = self.max_offset() if max_offset is None else max_offset
        cols = list(range(1, hi + 1))
        rows: list[list[str]] = []
        rows.append(["total"] + [str(self.total(i)) for i in cols])
        for r in range(1, hr + 1):
            cells = [str(self.entry(i, i + r)) if self.entry(i, i + r) else "." for i in cols]
            rows.append([str(r)] + cells)
        header = ["j-i \\ i"] + [str(i) for i in cols]
        widths = [max(len(header[c]), *(len(row[c]) for row in rows)) for c in range(len(header))]
        out_lines = ["  ".join(h.rjust(w) for h, w in zip(header, widths))]
        for row in rows:
            out_lines.append("  ".join(cell.rjust(w) for cell, w in zip(row, widths)))
        return "\n".join(out_lines) + "\n"


# -- generating functions ----------------------------------------------------


def _check_poly_budget(poly: BivarPoly, budget: Budget) -> None:
    budget.check_terms(poly.term_count())
    budget.check_bits(poly.max_coeff_bits())


def _validate_kn(k: int, n: int) -> None:
    if k < 2:
        raise ValueError("branching factor k must be >= 2")
    if n < 1:
        raise ValueError("depth n must be >= 1")


def path_gf(k: int, n: int, *, x_truncation: int | None = None,
            budget: Budget = DEFAULT_BUDGET) -> BivarPoly:
    """G_{k,n}(x, t) for the path ideal, by the recursion (1 + t*G)^k - 1.

    With ``x_truncation=m`` every intermediate product is truncated at
    x-degree m; the result equals the full polynomial truncated at m (the
    dropped terms can never feed back into lower x-degrees).
    """
    _validate_kn(k, n)
    tx = BivarPoly.monomial(1, 1)
    g = (BivarPoly.one() + tx).power(k, x_truncation) - 1
    t = BivarPoly.monomial(0, 1)
    for _ in range(2, n + 1):
        g = (BivarPoly.one() + t * g).power(k, x_truncation) - 1
        _check_poly_budget(g, budget)
    return g


def cut_x_degree(k: int, n: int) -> int:
    """x-degree of the cut generating function: d_n = k*d_{n-1} + 1, d_1 = 1."""
    _validate_kn(k, n)
    return (k ** n - 1) // (k - 1)


def cut_gf(k: int, n: int, *, x_truncation: int | None = None,
           budget: Budget = DEFAULT_BUDGET) -> BivarPoly:
    """Gc_{k,n}(x, t) for the cut ideal (the Alexander dual of the path ideal).

    Recursion: base t^k x, step x^-(k-1) * ((1+tx)(1+Gc) - 1)^k.  Every factor
    in the k-th power has minimum x-degree 1, so the power has minimum
    x-degree k and the division by x^(k-1) is exact; a failure there raises
    InexactDivisionError (it would mean the recursion invariant broke).

    With ``x_truncation=m``: factors are pre-truncated at m and the power at
    m + k - 1, which after the exact shift yields precisely the full result
    truncated at m.
    """
    _validate_kn(k, n)
    g = BivarPoly.monomial(1, k)
    if x_truncation is not None and x_truncation < 1:
        g = g.truncate_x(x_truncation)
    one_plus_tx = BivarPoly.one() + BivarPoly.monomial(1, 1)
    for _ in range(2, n + 1):
        f = one_plus_tx * (BivarPoly.one() + g) - 1
        power_trunc = None
        if x_truncation is not None:
            f = f.truncate_x(x_truncation)
            power_trunc = x_truncation + k - 1
        g = f.power(k, power_trunc).exact_divide_x(k - 1)
        if x_truncation is not None:
            g = g.truncate_x(x_truncation)
        _check_poly_budget(g, budget)
    return g


def gf_to_numerator(g: BivarPoly) -> BivarPoly:
    """Hilbert-series numerator H(x, t) = -G(-x, t)."""
    return -g.negate_x()


def numerator_to_gf(h: BivarPoly) -> BivarPoly:
    """Inverse of gf_to_numerator (the map is an involution)."""
    return -h.negate_x()


def betti_table(g: BivarPoly) -> BettiTable:
    """Read the graded Betti table off a generating function.

    Entry (i, j) is the coefficient of x^i t^j; beta_{0,0} = 1 is added.
    Rejects polynomials that are not generating functions (negative
    coefficients or x-free terms).
    """
    entries: GradedEntries = {(0, 0): 1}
    for i, j, c in g.terms():
        if c < 0:
            raise ValueError(f"negative coefficient at x^{i} t^{j}: not a generating function")
        if i == 0:
            raise ValueError("generating functions have no x-free terms")
        entries[(i, j)] = c
    return BettiTable(entries)


# -- independent recursive route for path Betti numbers ----------------------


def _convolve(a: GradedEntries, b: GradedEntries) -> GradedEntries:
    out: GradedEntries = {}
    for (ia, ja), va in a.items():
        for (ib, jb), vb in b.items():
            key = (ia + ib, ja + jb)
            out[key] = out.get(key, 0) + va * vb
    return out


def path_betti_recursive(k: int, n: int, budget: Budget = DEFAULT_BUDGET) -> BettiTable:
    """beta_{i,j}(S/I_{k,n}) by direct convolution, no polynomial engine.

    Level step: choose s of the k branches to be homologically active
    (weight C(k, s)), distribute homological degree over the s branches with
    positive parts, add s to the internal degree for the connecting edges.
    Must agree with betti_table(path_gf(k, n)); the two routes share no code.
    """
    _validate_kn(k, n)
    table: GradedEntries = {(0, 0): 1}
    for i in range(1, k + 1):
        table[(i, i)] = comb(k, i)
    for _ in range(2, n + 1):
        nontrivial = {key: v for key, v in table.items() if key != (0, 0)}
        new: GradedEntries = {(0, 0): 1}
        conv: GradedEntries = {(0, 0): 1}
        for s in range(1, k + 1):
            conv = _convolve(conv, nontrivial)
            weight = comb(k, s)
            for (i, j), v in conv.items():
                key = (i, j + s)
                new[key] = new.get(key, 0) + weight * v
        budget.check_terms(len(new), "Betti entry count")
        table = new
    return BettiTable(table)


# -- tensor combination rules (ideals in disjoint variable sets) -------------


def tensor_sum_betti(tables: Sequence[BettiTable]) -> BettiTable:
    """Betti table of S/(I_1 + ... + I_r) from the tables of the S/I_l.

    Valid when the ideals live in pairwise disjoint variable sets (the
    resolutions tensor): a plain convolution of quotient-convention tables.
    The empty list yields the unit table {beta_{0,0} = 1}.
    """
    acc: GradedEntries = {(0, 0): 1}
    for tb in tables:
        acc = _convolve(acc, tb.as_dict())
    return BettiTable(acc)


def tensor_product_betti(tables: Sequence[BettiTable]) -> BettiTable:
    """Betti table of S/(I_1 * ... * I_r) for disjoint-variable ideals.

    The resolution of the product is the tensor of the ideal resolutions, so
    ideal-convention tables convolve directly; the result shifts back to the
    quotient convention.  (In numerator language this is the product of the
    numerators divided by x^(r-1), which is exact because each numerator has
    minimum x-degree 1 — here the shift is structural, never inexact.)
    """
    if not tables:
        raise ValueError("tensor_product_betti needs at least one table")
    acc: GradedEntries | None = None
    for tb in tables:
        d = tb.ideal_convention()
        acc = d if acc is None else _convolve(acc, d)
    assert acc is not None
    out: GradedEntries = {(i + 1, j): v for (i, j), v in acc.items()}
    out[(0, 0)] = 1
    return BettiTable(out)
