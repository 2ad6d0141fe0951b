"""Exact sparse bivariate polynomial arithmetic over arbitrary-precision ints.

Polynomials live in Z[x, t] with nonnegative exponents.  The variable ``x``
marks homological degree, ``t`` marks total (internal) degree; everything in
the package flows through this ring: generating functions have nonnegative
coefficients, numerators alternate signs in x, truncations drop high x-powers.

Representation: a dict mapping ``(x_degree, t_degree) -> coefficient`` with no
zero coefficients stored.  Serialization orders terms canonically (x-degree
major, t-degree minor) so equal polynomials serialize identically.

Products switch between schoolbook convolution and Kronecker substitution
(packing each polynomial into one huge integer so Python's subquadratic int
multiplication does the convolution).  The packing handles signed coefficients
by splitting into positive and negative parts; slot width is chosen from the
product of absolute-coefficient sums, which bounds every convolution entry.
If gmpy2 is installed its multiplication is used for very large packed
integers; the pure-Python fallback is exact and fast enough for all documented
workloads.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Union

try:  # optional GMP fast path, see pyproject extra "perf"
    from gmpy2 import mpz as _mpz  # type: ignore
except ImportError:  # pragma: no cover - environment dependent
    _mpz = None

Term = tuple[int, int, int]

# Above this bit size, gmpy2 (when present) beats Python's int multiply
# enough to matter; below it the conversion overhead dominates.
_GMP_BITS = 1 << 16
# Schoolbook beats packing overhead for small term-count products.
_SCHOOLBOOK_OPS = 20_000


def _big_mul(a: int, b: int) -> int:
    if _mpz is not None and a.bit_length() + b.bit_length() > _GMP_BITS:
        return int(_mpz(a) * _mpz(b))
    return a * b


def _mul_schoolbook(a: dict[tuple[int, int], int], b: dict[tuple[int, int], int]) -> dict[tuple[int, int], int]:
    out: dict[tuple[int, int], int] = {}
    get = out.get
    for (ia, ja), ca in a.items():
        for (ib, jb), cb in b.items():
            key = (ia + ib, ja + jb)
            v = get(key, 0) + ca * cb
            if v:
                out[key] = v
            elif key in out:
                del out[key]
    return out


def _pack_parts(d: dict[tuple[int, int], int], width: int, slot_bytes: int) -> tuple[int, int]:
    """Pack positive and negative parts of d into two little-endian integers.

    Slot index of term (i, j) is i*width + j; each slot is slot_bytes wide.
    """
    max_slot = 0
    for (i, j) in d:
        s = i * width + j
        if s > max_slot:
            max_slot = s
    pos = bytearray((max_slot + 1) * slot_bytes)
    neg = bytearray((max_slot + 1) * slot_bytes)
    has_pos = has_neg = False
    for (i, j), c in d.items():
        off = (i * width + j) * slot_bytes
        if c > 0:
            pos[off:off + slot_bytes] = c.to_bytes(slot_bytes, "little")
            has_pos = True
        else:
            neg[off:off + slot_bytes] = (-c).to_bytes(slot_bytes, "little")
            has_neg = True
    return (int.from_bytes(pos, "little") if has_pos else 0,
            int.from_bytes(neg, "little") if has_neg else 0)


def _mul_kronecker(a: dict[tuple[int, int], int], b: dict[tuple[int, int], int]) -> dict[tuple[int, int], int]:
    deg_xa = max(i for i, _ in a)
    deg_ta = max(j for _, j in a)
    deg_xb = max(i for i, _ in b)
    deg_tb = max(j for _, j in b)
    width = deg_ta + deg_tb + 1  # t-slots per x-degree in the product grid
    # Any product coefficient is bounded by the product of absolute-sum norms,
    # so this slot width can never overflow into the neighbouring slot.
    bound = sum(abs(c) for c in a.values()) * sum(abs(c) for c in b.values())
    slot_bytes = (bound.bit_length() + 8) // 8
    ap, an = _pack_parts(a, width, slot_bytes)
    bp, bn = _pack_parts(b, width, slot_bytes)
    prod_pos = prod_neg = 0
    if ap and bp:
        prod_pos += _big_mul(ap, bp)
    if an and bn:
        prod_pos += _big_mul(an, bn)
    if ap and bn:
        prod_neg += _big_mul(ap, bn)
    if an and bp:
        prod_neg += _big_mul(an, bp)
    nslots = (deg_xa + deg_xb) * width + deg_ta + deg_tb + 1
    nbytes = nslots * slot_bytes
    raw_pos = prod_pos.to_bytes(nbytes, "little")
    raw_neg = prod_neg.to_bytes(nbytes, "little")
    out: dict[tuple[int, int], int] = {}
    frombytes = int.from_bytes
    off = 0
    for s in range(nslots):
        end = off + slot_bytes
        c = frombytes(raw_pos[off:end], "little") - frombytes(raw_neg[off:end], "little")
        if c:
            out[divmod(s, width)] = c
        off = end
    return out


class BivarPoly:
    """Immutable exact polynomial in Z[x, t]."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Union[Mapping[tuple[int, int], int], Iterable[Term], None] = None) -> None:
        clean: dict[tuple[int, int], int] = {}
        if terms is not None:
            items: Iterable[tuple[tuple[int, int], int]]
            if isinstance(terms, Mapping):
                items = terms.items()
            else:
                items = (((i, j), c) for i, j, c in terms)
            for (i, j), c in items:
                if not (isinstance(i, int) and isinstance(j, int) and isinstance(c, int)):
                    raise TypeError("term degrees and coefficients must be ints")
                if i < 0 or j < 0:
                    raise ValueError("negative exponents are not representable")
                if c:
                    key = (i, j)
                    v = clean.get(key, 0) + c
                    if v:
                        clean[key] = v
                    elif key in clean:
                        del clean[key]
        self._terms = clean

    @classmethod
    def _raw(cls, terms: dict[tuple[int, int], int]) -> "BivarPoly":
        # internal constructor: terms already canonical (no zeros, valid keys)
        p = object.__new__(cls)
        p._terms = terms
        return p

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls) -> "BivarPoly":
        return cls._raw({})

    @classmethod
    def one(cls) -> "BivarPoly":
        return cls._raw({(0, 0): 1})

    @classmethod
    def constant(cls, c: int) -> "BivarPoly":
        return cls._raw({(0, 0): c} if c else {})

    @classmethod
    def monomial(cls, x_degree: int, t_degree: int, coefficient: int = 1) -> "BivarPoly":
        if x_degree < 0 or t_degree < 0:
            raise ValueError("negative exponents are not representable")
        return cls._raw({(x_degree, t_degree): coefficient} if coefficient else {})

    @classmethod
    def from_terms(cls, terms: Iterable[Term]) -> "BivarPoly":
        return cls(terms)

    # -- inspection --------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self._terms

    @property
    def deg_x(self) -> int:
        """Largest x-degree, or -1 for the zero polynomial."""
        return max((i for i, _ in self._terms), default=-1)

    @property
    def deg_t(self) -> int:
        return max((j for _, j in self._terms), default=-1)

    def term_count(self) -> int:
        return len(self._terms)

    def max_coeff_bits(self) -> int:
        return max((abs(c).bit_length() for c in self._terms.values()), default=0)

    def coefficient(self, x_degree: int, t_degree: int) -> int:
        return self._terms.get((x_degree, t_degree), 0)

    def x_coefficient(self, x_degree: int) -> "UniPoly":
        """The coefficient of x^i as a univariate polynomial in t."""
        return UniPoly({j: c for (i, j), c in self._terms.items() if i == x_degree})

    def terms(self) -> tuple[Term, ...]:
        """Canonically ordered terms: x-degree major, t-degree minor."""
        return tuple((i, j, self._terms[(i, j)]) for (i, j) in sorted(self._terms))

    def __iter__(self) -> Iterator[Term]:
        return iter(self.terms())

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, BivarPoly):
            return self._terms == other._terms
        if isinstance(other, int):
            return self._terms == ({(0, 0): other} if other else {})
        return NotImplemented

    def __hash__(self) -> int:
        return hash(frozenset(self._terms.items()))

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other: Union["BivarPoly", int]) -> "BivarPoly":
        if isinstance(other, int):
            other = BivarPoly.constant(other)
        if not isinstance(other, BivarPoly):
            return NotImplemented
        out = dict(self._terms)
        for key, c in other._terms.items():
            v = out.get(key, 0) + c
            if v:
                out[key] = v
            elif key in out:
                del out[key]
        return BivarPoly._raw(out)

    __radd__ = __add__

    def __neg__(self) -> "BivarPoly":
        return BivarPoly._raw({key: -c for key, c in self._terms.items()})

    def __sub__(self, other: Union["BivarPoly", int]) -> "BivarPoly":
        if isinstance(other, int):
            other = BivarPoly.constant(other)
        if not isinstance(other, BivarPoly):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other: int) -> "BivarPoly":
        return BivarPoly.constant(other) + (-self)

    def __mul__(self, other: Union["BivarPoly", int]) -> "BivarPoly":
        if isinstance(other, int):
            if not other:
                return BivarPoly.zero()
            return BivarPoly._raw({key: c * other for key, c in self._terms.items()})
        if not isinstance(other, BivarPoly):
            return NotImplemented
        a, b = self._terms, other._terms
        if not a or not b:
            return BivarPoly.zero()
        if len(a) * len(b) <= _SCHOOLBOOK_OPS:
            return BivarPoly._raw(_mul_schoolbook(a, b))
        return BivarPoly._raw(_mul_kronecker(a, b))

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> "BivarPoly":
        return self.power(exponent)

    def power(self, exponent: int, x_truncation: int | None = None) -> "BivarPoly":
        """a**exponent, optionally truncated at x-degree ``x_truncation``.

        Truncation is applied to the base and after every multiplication, and
        the result equals the full power truncated at that x-degree: discarded
        terms have x-degree > m and can never contribute back down.
        """
        if exponent < 0:
            raise ValueError("negative exponents are not supported")
        base = self if x_truncation is None else self.truncate_x(x_truncation)
        result = BivarPoly.one()
        e = exponent
        while e:
            if e & 1:
                result = result * base
                if x_truncation is not None:
                    result = result.truncate_x(x_truncation)
            e >>= 1
            if e:
                base = base * base
                if x_truncation is not None:
                    base = base.truncate_x(x_truncation)
        return result

    def truncate_x(self, m: int) -> "BivarPoly":
        """Keep terms with x-degree <= m, drop the rest."""
        if m >= self.deg_x:
            return self
        return BivarPoly._raw({key: c for key, c in self._terms.items() if key[0] <= m})

    def negate_x(self) -> "BivarPoly":
        """Substitute x -> -x: term (i, j, c) becomes (i, j, (-1)^i c)."""
        return BivarPoly._raw({key: (-c if key[0] & 1 else c) for key, c in self._terms.items()})

    def exact_divide_x(self, d: int) -> "BivarPoly":
        """Divide by x^d; every term must have x-degree >= d.

        A failure signals a violated divisibility invariant in the cut
        recursion, so it raises instead of truncating.
        """
        from .limits import InexactDivisionError

        if d < 0:
            raise ValueError("d must be nonnegative")
        if d == 0:
            return self
        out: dict[tuple[int, int], int] = {}
        for (i, j), c in self._terms.items():
            if i < d:
                raise InexactDivisionError(f"term x^{i} t^{j} has x-degree below divisor x^{d}")
            out[(i - d, j)] = c
        return BivarPoly._raw(out)

    def shift_x(self, d: int) -> "BivarPoly":
        """Multiply by x^d."""
        if d < 0:
            raise ValueError("d must be nonnegative")
        if d == 0:
            return self
        return BivarPoly._raw({(i + d, j): c for (i, j), c in self._terms.items()})

    # -- evaluation --------------------------------------------------------

    def eval_x1(self) -> "UniPoly":
        """Collapse x = 1: sum coefficients over x-degree for each t-degree."""
        out: dict[int, int] = {}
        for (_, j), c in self._terms.items():
            v = out.get(j, 0) + c
            if v:
                out[j] = v
            elif j in out:
                del out[j]
        return UniPoly._raw(out)

    def eval_exact(self, x_value: Fraction | int, t_value: Fraction | int) -> Fraction:
        """Exact evaluation at rational points (small polynomials only)."""
        total = Fraction(0)
        for (i, j), c in self._terms.items():
            total += c * Fraction(x_value) ** i * Fraction(t_value) ** j
        return total

    # -- serialization -----------------------------------------------------

    def to_json_obj(self) -> list[dict[str, object]]:
        """JSON form: [{"x": i, "t": j, "c": "<decimal>"}] in canonical order."""
        return [{"x": i, "t": j, "c": str(c)} for i, j, c in self.terms()]

    @classmethod
    def from_json_obj(cls, obj: Iterable[Mapping[str, object]]) -> "BivarPoly":
        return cls((int(e["x"]), int(e["t"]), int(str(e["c"]))) for e in obj)

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for i, j, c in self.terms():
            body = []
            if abs(c) != 1 or (i == 0 and j == 0):
                body.append(str(abs(c)))
            if i:
                body.append("x" if i == 1 else f"x^{i}")
            if j:
                body.append("t" if j == 1 else f"t^{j}")
            txt = "*".join(body)
            parts.append(("- " if c < 0 else "+ ") + txt)
        out = " ".join(parts)
        return out[2:] if out.startswith("+ ") else "-" + out[2:]

    def __repr__(self) -> str:
        return f"BivarPoly({self})"


class UniPoly:
    """Immutable exact univariate polynomial in t (the x = 1 specialization)."""

    __slots__ = ("_coeffs",)

    def __init__(self, coeffs: Union[Mapping[int, int], Iterable[tuple[int, int]], None] = None) -> None:
        clean: dict[int, int] = {}
        if coeffs is not None:
            items = coeffs.items() if isinstance(coeffs, Mapping) else coeffs
            for d, c in items:
                if d < 0:
                    raise ValueError("negative exponents are not representable")
                if c:
                    v = clean.get(d, 0) + c
                    if v:
                        clean[d] = v
                    elif d in clean:
                        del clean[d]
        self._coeffs = clean

    @classmethod
    def _raw(cls, coeffs: dict[int, int]) -> "UniPoly":
        p = object.__new__(cls)
        p._coeffs = coeffs
        return p

    @property
    def is_zero(self) -> bool:
        return not self._coeffs

    @property
    def degree(self) -> int:
        return max(self._coeffs, default=-1)

    def coefficient(self, t_degree: int) -> int:
        return self._coeffs.get(t_degree, 0)

    def terms(self) -> tuple[tuple[int, int], ...]:
        """(t_degree, coefficient) pairs in increasing degree."""
        return tuple(sorted(self._coeffs.items()))

    def __eq__(self, other: object) -> bool:
        if isinstance(other, UniPoly):
            return self._coeffs == other._coeffs
        if isinstance(other, int):
            return self._coeffs == ({0: other} if other else {})
        return NotImplemented

    def __hash__(self) -> int:
        return hash(frozenset(self._coeffs.items()))

    def __add__(self, other: "UniPoly") -> "UniPoly":
        out = dict(self._coeffs)
        for d, c in other._coeffs.items():
            v = out.get(d, 0) + c
            if v:
                out[d] = v
            elif d in out:
                del out[d]
        return UniPoly._raw(out)

    def __neg__(self) -> "UniPoly":
        return UniPoly._raw({d: -c for d, c in self._coeffs.items()})

    def __sub__(self, other: "UniPoly") -> "UniPoly":
        return self + (-other)

    def __rsub__(self, other: int) -> "UniPoly":
        return UniPoly({0: other}) + (-self)

    def evaluate(self, t_value):
        """Horner evaluation; exact for Fraction/int inputs, float for float."""
        zero = t_value * 0
        acc = zero
        for d in range(self.degree, -1, -1):
            acc = acc * t_value + self._coeffs.get(d, 0)
        return acc + zero

    def substitute_one_minus_t(self) -> "UniPoly":
        """The exact polynomial u(1 - t)."""
        acc: dict[int, int] = {}
        for d in range(self.degree, -1, -1):
            nxt: dict[int, int] = {}
            for e, c in acc.items():  # acc * (1 - t)
                nxt[e] = nxt.get(e, 0) + c
                nxt[e + 1] = nxt.get(e + 1, 0) - c
            c0 = self._coeffs.get(d, 0)
            if c0:
                nxt[0] = nxt.get(0, 0) + c0
            acc = {e: c for e, c in nxt.items() if c}
        return UniPoly._raw(acc)

    def __str__(self) -> str:
        if not self._coeffs:
            return "0"
        parts = []
        for d, c in self.terms():
            body = []
            if abs(c) != 1 or d == 0:
                body.append(str(abs(c)))
            if d:
                body.append("t" if d == 1 else f"t^{d}")
            parts.append(("- " if c < 0 else "+ ") + "*".join(body))
        out = " ".join(parts)
        return out[2:] if out.startswith("+ ") else "-" + out[2:]

    def __repr__(self) -> str:
        return f"UniPoly({self})"


def eval_rational(u: UniPoly, p: Fraction | int | str) -> Fraction:
    """Exact Horner evaluation of a univariate polynomial at a rational point."""
    return u.evaluate(Fraction(p))
