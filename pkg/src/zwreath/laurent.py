"""Sparse exact-integer Laurent polynomials and augmentation-ideal tools.

Polynomials live in Z[a1, a1^-1, ..., am, am^-1], the integer group ring of a
free abelian group of rank m written multiplicatively.  Coefficients are plain
Python ints, so every operation is exact.  The augmentation ideal -- the
kernel of the sum-of-coefficients map, generated by a1-1, ..., am-1 -- induces
the valuation computed by :func:`aug_valuation`; membership in its k-th power
is decided exactly by :func:`delta_membership` and witnessed constructively by
:func:`delta_decompose`.
"""

from __future__ import annotations

import itertools
import math
from types import MappingProxyType

from .errors import ParseError, PreconditionError, SpecMismatchError

# Exponent vectors are plain int tuples; the all-zero tuple is the identity
# monomial.
Monomial = tuple

#: Valuation of the zero polynomial (compares above every integer).
INFINITY = math.inf


class LaurentPoly:
    """A finitely supported integer combination of monomials a^gamma.

    Instances are immutable; `terms` maps exponent vectors of length `rank`
    to nonzero int coefficients.  Two polynomials are equal iff they have the
    same rank and the same term mapping.
    """

    __slots__ = ("rank", "_terms")

    def __init__(self, rank, terms=None):
        if not isinstance(rank, int) or rank < 1:
            raise PreconditionError(f"polynomial rank must be a positive int, got {rank!r}")
        items = terms.items() if hasattr(terms, "items") else (terms or ())
        clean = {}
        for mono, coeff in items:
            mono = tuple(mono)
            if len(mono) != rank or not all(isinstance(e, int) for e in mono):
                raise PreconditionError(
                    f"exponent vector {mono!r} invalid for rank {rank}")
            if not isinstance(coeff, int):
                raise PreconditionError(f"coefficient {coeff!r} is not an int")
            if coeff:
                clean[mono] = clean.get(mono, 0) + coeff
                if not clean[mono]:
                    del clean[mono]
        object.__setattr__(self, "rank", rank)
        object.__setattr__(self, "_terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("LaurentPoly is immutable")

    @property
    def terms(self):
        """Read-only view of the term mapping."""
        return MappingProxyType(self._terms)

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, rank):
        return cls(rank)

    @classmethod
    def constant(cls, rank, value):
        return cls(rank, {(0,) * rank: value})

    @classmethod
    def one(cls, rank):
        return cls.constant(rank, 1)

    @classmethod
    def monomial(cls, rank, exponents, coeff=1):
        return cls(rank, {tuple(exponents): coeff})

    @classmethod
    def variable(cls, rank, index):
        """The generator a_index (1-based)."""
        if not 1 <= index <= rank:
            raise PreconditionError(f"variable index {index} out of range 1..{rank}")
        expo = tuple(1 if i == index - 1 else 0 for i in range(rank))
        return cls(rank, {expo: 1})

    # -- ring structure ----------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, LaurentPoly):
            if other.rank != self.rank:
                raise SpecMismatchError(
                    f"rank mismatch: {self.rank} vs {other.rank}")
            return other
        if isinstance(other, int):
            return LaurentPoly.constant(self.rank, other)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        out = dict(self._terms)
        for mono, c in other._terms.items():
            s = out.get(mono, 0) + c
            if s:
                out[mono] = s
            else:
                out.pop(mono, None)
        return LaurentPoly(self.rank, out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly(self.rank, {m: -c for m, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        out = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                mono = tuple(e1 + e2 for e1, e2 in zip(m1, m2))
                s = out.get(mono, 0) + c1 * c2
                if s:
                    out[mono] = s
                else:
                    del out[mono]
        return LaurentPoly(self.rank, out)

    __rmul__ = __mul__

    def __pow__(self, exponent):
        if not isinstance(exponent, int) or exponent < 0:
            raise PreconditionError(f"polynomial power must be a non-negative int, got {exponent!r}")
        result = LaurentPoly.one(self.rank)
        base = self
        e = exponent
        while e:
            if e & 1:
                result = result * base
            base = base * base if e > 1 else base
            e >>= 1
        return result

    def times_monomial(self, exponents):
        """Multiply by the unit monomial a^exponents."""
        shift = tuple(exponents)
        if len(shift) != self.rank:
            raise SpecMismatchError(f"monomial shift {shift!r} invalid for rank {self.rank}")
        return LaurentPoly(
            self.rank,
            {tuple(e + s for e, s in zip(m, shift)): c for m, c in self._terms.items()})

    def substitute_one(self, index):
        """Set the (0-based) variable `index` to 1, collapsing exponents."""
        out = {}
        for mono, c in self._terms.items():
            key = tuple(0 if i == index else e for i, e in enumerate(mono))
            s = out.get(key, 0) + c
            if s:
                out[key] = s
            else:
                del out[key]
        return LaurentPoly(self.rank, out)

    # -- comparisons / hashing --------------------------------------------

    def __eq__(self, other):
        if isinstance(other, int):
            if other == 0:
                return not self._terms
            return self._terms == {(0,) * self.rank: other}
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.rank == other.rank and self._terms == other._terms

    def __hash__(self):
        return hash((self.rank, frozenset(self._terms.items())))

    def __bool__(self):
        return bool(self._terms)

    def is_zero(self):
        return not self._terms

    def sort_key(self):
        """Deterministic total-order key (deglex-descending term list)."""
        return tuple((m, self._terms[m]) for m in _ordered_monomials(self._terms))

    def __str__(self):
        return poly_str(self)

    def __repr__(self):
        return f"LaurentPoly({self.rank}, {poly_str(self)!r})"


# -- augmentation-ideal machinery -----------------------------------------


def _shift_variables(terms, delta):
    """Substitute v_i := v_i + delta in a dict of non-negative-exponent terms.

    Expands exactly via binomials; exponents in the input must be >= 0.
    """
    out = {}
    for mono, coeff in terms.items():
        per_var = []
        for e in mono:
            per_var.append([(j, math.comb(e, j) * delta ** (e - j)) for j in range(e + 1)])
        for combo in itertools.product(*per_var):
            new_mono = tuple(j for j, _ in combo)
            c = coeff
            for _, factor in combo:
                c *= factor
            if c:
                s = out.get(new_mono, 0) + c
                if s:
                    out[new_mono] = s
                else:
                    del out[new_mono]
    return out


def _cleared_terms(p):
    """Shift exponents so the componentwise minimum is zero.

    Returns (terms, mins) with p = a^mins * terms; multiplying by the unit
    a^-mins does not change membership in powers of the augmentation ideal.
    """
    mins = tuple(min(m[i] for m in p._terms) for i in range(p.rank))
    terms = {tuple(e - lo for e, lo in zip(m, mins)): c for m, c in p._terms.items()}
    return terms, mins


def aug_valuation(p):
    """Largest k with p in the k-th power of the augmentation ideal.

    Returns INFINITY for the zero polynomial.  Computed by clearing the
    denominator monomial, substituting a_i := y_i + 1 and taking the minimum
    total degree in y; the clearing step is harmless because each 1 + y_i is
    invertible modulo any power of (y_1, ..., y_m).
    """
    if p.is_zero():
        return INFINITY
    terms, _ = _cleared_terms(p)
    expanded = _shift_variables(terms, 1)
    return min(sum(m) for m in expanded)


def delta_membership(p, k):
    """True iff p lies in the k-th power of the augmentation ideal."""
    if not isinstance(k, int) or k < 0:
        raise PreconditionError(f"ideal power must be a non-negative int, got {k!r}")
    return aug_valuation(p) >= k


def delta_generator_product(beta, rank):
    """The generator product (a1-1)^beta1 * ... * (am-1)^betam."""
    result = LaurentPoly.one(rank)
    for i, b in enumerate(beta):
        gen = LaurentPoly.variable(rank, i + 1) - 1
        result = result * gen ** b
    return result


def _least_beta(gamma, k):
    """Lexicographically least beta <= gamma with |beta| = k (needs |gamma| >= k)."""
    beta = []
    remaining = k
    tail = sum(gamma)
    for g in gamma:
        tail -= g
        b = max(0, remaining - tail)
        beta.append(b)
        remaining -= b
    return tuple(beta)


def delta_decompose(p, k):
    """Write p as a combination of degree-k generator products.

    Returns a dict mapping each beta (|beta| = k) to q_beta with
    p = sum_beta delta_generator_product(beta) * q_beta, exactly.  Requires
    p to lie in the k-th ideal power; raises PreconditionError otherwise,
    naming the valuation found.

    The splitting works on the y-expansion after clearing the denominator
    monomial: every y-monomial of degree >= k is assigned to the
    lexicographically least beta below its exponent vector, y^beta is divided
    out, and the remainder is converted back through y_i = a_i - 1 with the
    clearing monomial divided back out (a unit, so the division is exact).
    """
    if not isinstance(k, int) or k < 1:
        raise PreconditionError(f"ideal power must be a positive int, got {k!r}")
    if p.is_zero():
        return {}
    val = aug_valuation(p)
    if val < k:
        raise PreconditionError(
            f"polynomial has augmentation valuation {val}, not in ideal power {k}")
    terms, mins = _cleared_terms(p)
    expanded = _shift_variables(terms, 1)
    buckets = {}
    for gamma, c in expanded.items():
        beta = _least_beta(gamma, k)
        residue = tuple(g - b for g, b in zip(gamma, beta))
        bucket = buckets.setdefault(beta, {})
        s = bucket.get(residue, 0) + c
        if s:
            bucket[residue] = s
        else:
            del bucket[residue]
    out = {}
    for beta in sorted(buckets):
        back = _shift_variables(buckets[beta], -1)
        if back:
            out[beta] = LaurentPoly(p.rank, back).times_monomial(mins)
    return out


def geom_series(gamma, rank=1):
    """The partial geometric series s in a1 with s * (a1 - 1) = a1^gamma - 1.

    Explicitly sum(a1^j for 0 <= j < gamma) for gamma > 0, zero for
    gamma = 0, and -sum(a1^-j for 1 <= j <= |gamma|) for gamma < 0.
    """
    if not isinstance(gamma, int):
        raise PreconditionError(f"exponent must be an int, got {gamma!r}")
    tail = (0,) * (rank - 1)
    if gamma > 0:
        terms = {(j,) + tail: 1 for j in range(gamma)}
    else:
        terms = {(-j,) + tail: -1 for j in range(1, -gamma + 1)}
    return LaurentPoly(rank, terms)


def divisible_by_a1_minus_1(p):
    """True iff a1 - 1 divides p, i.e. substituting a1 := 1 yields zero."""
    return p.substitute_one(0).is_zero()


# -- text form -------------------------------------------------------------


def _ordered_monomials(terms):
    return sorted(terms, key=lambda m: (sum(m), m), reverse=True)


def poly_str(p):
    """Canonical text form: terms in degree-lexicographic descending order."""
    if p.is_zero():
        return "0"
    pieces = []
    for mono in _ordered_monomials(p._terms):
        coeff = p._terms[mono]
        var_part = "*".join(
            f"a{i + 1}" + (f"^{e}" if e != 1 else "")
            for i, e in enumerate(mono) if e)
        mag = abs(coeff)
        if var_part:
            body = var_part if mag == 1 else f"{mag}*{var_part}"
        else:
            body = str(mag)
        if not pieces:
            pieces.append(("-" if coeff < 0 else "") + body)
        else:
            pieces.append(("- " if coeff < 0 else "+ ") + body)
    return " ".join(pieces)


def parse_poly(text, rank, *, line=None, col_offset=0):
    """Parse the polynomial grammar: `2*a1^3 - a2^-1 + 7`.

    Signed integer coefficients, `*` for products, `a<i>^<e>` powers with any
    integer exponent, terms joined by `+`/`-`; whitespace insignificant.
    """
    tokens = _lex_poly(text, line, col_offset)
    pos = 0
    total = {}

    def peek():
        return tokens[pos] if pos < len(tokens) else ("END", None, col_offset + len(text) + 1)

    def take(kind=None):
        nonlocal pos
        tok = peek()
        if kind is not None and tok[0] != kind:
            raise ParseError(f"expected {kind}, found {tok[1]!r}", line, tok[2])
        pos += 1
        return tok

    def parse_term(sign):
        coeff = sign
        expo = [0] * rank
        saw_factor = False
        while True:
            kind, value, col = peek()
            if kind == "INT":
                take()
                coeff *= value
            elif kind == "VAR":
                take()
                index = value
                if not 1 <= index <= rank:
                    raise ParseError(f"variable a{index} out of range for rank {rank}", line, col)
                e = 1
                if peek()[0] == "CARET":
                    take()
                    e = take("INT")[1]
                expo[index - 1] += e
            else:
                raise ParseError(f"expected coefficient or variable, found {value!r}", line, col)
            saw_factor = True
            if peek()[0] == "STAR":
                take()
                continue
            break
        if not saw_factor:
            raise ParseError("empty term", line, peek()[2])
        return coeff, tuple(expo)

    sign = 1
    kind, value, col = peek()
    if kind == "SIGN":
        take()
        sign = value
    while True:
        coeff, expo = parse_term(sign)
        total[expo] = total.get(expo, 0) + coeff
        kind, value, col = peek()
        if kind == "END":
            break
        if kind != "SIGN":
            raise ParseError(f"expected '+' or '-', found {value!r}", line, col)
        take()
        sign = value
    return LaurentPoly(rank, total)


def _lex_poly(text, line, col_offset):
    tokens = []
    i = 0
    n = len(text)
    while i < n:
        c = text[i]
        col = col_offset + i + 1
        if c.isspace():
            i += 1
        elif c == "+":
            tokens.append(("SIGN", 1, col))
            i += 1
        elif c == "-":
            # After '^' a minus starts a negative exponent, not a new term.
            if tokens and tokens[-1][0] == "CARET":
                j = i + 1
                while j < n and text[j].isspace():
                    j += 1
                start = j
                while j < n and text[j].isdigit():
                    j += 1
                if start == j:
                    raise ParseError("expected digits after '^-'", line, col)
                tokens.append(("INT", -int(text[start:j]), col))
                i = j
            else:
                tokens.append(("SIGN", -1, col))
                i += 1
        elif c == "*":
            tokens.append(("STAR", "*", col))
            i += 1
        elif c == "^":
            tokens.append(("CARET", "^", col))
            i += 1
        elif c.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            tokens.append(("INT", int(text[i:j]), col))
            i = j
        elif c == "a" and i + 1 < n and text[i + 1].isdigit():
            j = i + 1
            while j < n and text[j].isdigit():
                j += 1
            tokens.append(("VAR", int(text[i + 1:j]), col))
            i = j
        else:
            raise ParseError(f"unexpected character {c!r} in polynomial", line, col)
    return tokens
