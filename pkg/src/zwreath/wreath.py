"""Restricted wreath products Z^n wr Z^m in exact coordinate normal form.

An element is a pair (active, base): an integer exponent vector for the
acting free abelian group of rank m, and n Laurent-polynomial coordinates of
rank m for the base part, one per base generator.  Conjugating a base element
by the active monomial a^gamma multiplies every coordinate by a^gamma, which
turns the base subgroup into a free module over the group ring with the base
generators as basis.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

from .errors import ParseError, PreconditionError, SpecMismatchError
from .laurent import LaurentPoly, delta_membership, parse_poly, poly_str


@dataclass(frozen=True)
class GroupSpec:
    """Ambient group Z^n wr Z^m: `m` active generators, `n` base generators."""

    m: int
    n: int

    def __post_init__(self):
        if not (isinstance(self.m, int) and self.m >= 1):
            raise PreconditionError(f"active rank must be a positive int, got {self.m!r}")
        if not (isinstance(self.n, int) and self.n >= 1):
            raise PreconditionError(f"base rank must be a positive int, got {self.n!r}")

    def identity(self):
        return WreathElement(self, (0,) * self.m, (LaurentPoly.zero(self.m),) * self.n)

    def active_gen(self, i):
        """The generator a_i of the acting group (1-based)."""
        if not 1 <= i <= self.m:
            raise PreconditionError(f"active generator index {i} out of range 1..{self.m}")
        return WreathElement(
            self,
            tuple(1 if j == i - 1 else 0 for j in range(self.m)),
            (LaurentPoly.zero(self.m),) * self.n)

    def base_gen(self, j, power=1):
        """The generator b_j of the base group (1-based), optionally raised."""
        if not 1 <= j <= self.n:
            raise PreconditionError(f"base generator index {j} out of range 1..{self.n}")
        return self.element(base={j: LaurentPoly.constant(self.m, power)})

    def element(self, active=None, base=None):
        """Build an element from an exponent vector and a {j: poly} mapping."""
        act = tuple(active) if active is not None else (0,) * self.m
        coords = [LaurentPoly.zero(self.m)] * self.n
        for j, poly in (base or {}).items():
            if not 1 <= j <= self.n:
                raise PreconditionError(f"base coordinate b{j} out of range 1..{self.n}")
            coords[j - 1] = poly
        return WreathElement(self, act, tuple(coords))

    # Literal bridge used by the equation/assignment parsers.
    def parse_element(self, text, *, line=None, col=None):
        return parse_element(text, self, line=line, col=col)

    def serialize_element(self, g):
        return element_str(g)


class WreathElement:
    """Normal form a * f: active exponent vector plus base coordinates."""

    __slots__ = ("spec", "active", "base")

    def __init__(self, spec, active, base):
        active = tuple(active)
        base = tuple(base)
        if len(active) != spec.m or not all(isinstance(e, int) for e in active):
            raise PreconditionError(f"active vector {active!r} invalid for rank {spec.m}")
        if len(base) != spec.n:
            raise PreconditionError(f"expected {spec.n} base coordinates, got {len(base)}")
        for poly in base:
            if not isinstance(poly, LaurentPoly) or poly.rank != spec.m:
                raise PreconditionError(f"base coordinate {poly!r} must have rank {spec.m}")
        object.__setattr__(self, "spec", spec)
        object.__setattr__(self, "active", active)
        object.__setattr__(self, "base", base)

    def __setattr__(self, name, value):
        raise AttributeError("WreathElement is immutable")

    def _check_spec(self, other):
        if not isinstance(other, WreathElement):
            raise SpecMismatchError(f"cannot combine WreathElement with {type(other).__name__}")
        if other.spec != self.spec:
            raise SpecMismatchError(f"group mismatch: {self.spec} vs {other.spec}")

    def __mul__(self, other):
        self._check_spec(other)
        active = tuple(x + y for x, y in zip(self.active, other.active))
        base = tuple(
            p.times_monomial(other.active) + q for p, q in zip(self.base, other.base))
        return WreathElement(self.spec, active, base)

    def inverse(self):
        neg = tuple(-x for x in self.active)
        base = tuple((-p).times_monomial(neg) for p in self.base)
        return WreathElement(self.spec, neg, base)

    def __pow__(self, exponent):
        if not isinstance(exponent, int):
            raise PreconditionError(f"group power must be an int, got {exponent!r}")
        if exponent < 0:
            return self.inverse() ** -exponent
        result = self.spec.identity()
        base = self
        e = exponent
        while e:
            if e & 1:
                result = result * base
            base = base * base if e > 1 else base
            e >>= 1
        return result

    def commutator(self, other):
        """[g, h] = g^-1 h^-1 g h."""
        return self.inverse() * other.inverse() * self * other

    def is_identity(self):
        return not any(self.active) and all(p.is_zero() for p in self.base)

    def __eq__(self, other):
        if not isinstance(other, WreathElement):
            return NotImplemented
        return (self.spec == other.spec and self.active == other.active
                and self.base == other.base)

    def __hash__(self):
        return hash((self.spec, self.active, self.base))

    def sort_key(self):
        return (self.active,) + tuple(p.sort_key() for p in self.base)

    def __str__(self):
        return element_str(self)

    def __repr__(self):
        return f"WreathElement({element_str(self)!r})"


def commutator(g, h):
    """[g, h] = g^-1 h^-1 g h."""
    return g.commutator(h)


def left_normed_commutator(elements):
    """[g1, ..., gr] folded left: [[g1, g2], g3], ..."""
    elements = list(elements)
    if not elements:
        raise PreconditionError("left-normed commutator needs at least one element")
    acc = elements[0]
    for g in elements[1:]:
        acc = acc.commutator(g)
    return acc


def in_N(g):
    """True iff g lies in the base subgroup (active part trivial)."""
    return not any(g.active)


def in_A(g):
    """True iff g lies in the acting subgroup (all base coordinates zero)."""
    return all(p.is_zero() for p in g.base)


def module_action(u, p):
    """u^p for u in the base subgroup: multiply every coordinate by p."""
    if not in_N(u):
        raise PreconditionError("module action is defined on base-subgroup elements only")
    if p.rank != u.spec.m:
        raise SpecMismatchError(f"polynomial rank {p.rank} does not match active rank {u.spec.m}")
    return WreathElement(u.spec, u.active, tuple(q * p for q in u.base))


def in_delta_power(g, k):
    """True iff g is in the base subgroup with every coordinate in the k-th ideal power.

    For k >= 1 this decides membership in the (k+1)-st lower-central-series
    term of the ambient wreath product.
    """
    return in_N(g) and all(delta_membership(p, k) for p in g.base)


# -- lower central series ----------------------------------------------------


@dataclass(frozen=True)
class LcsBasisElement:
    """Basis commutator [b_k, a_j1, ..., a_j(i-1)] with j1 <= ... <= j(i-1)."""

    k: int
    js: tuple

    def __post_init__(self):
        if list(self.js) != sorted(self.js):
            raise PreconditionError(f"conjugator indices {self.js!r} must be non-decreasing")

    def as_element(self, spec):
        parts = [spec.base_gen(self.k)] + [spec.active_gen(j) for j in self.js]
        return left_normed_commutator(parts)


def lcs_basis(i, spec):
    """Free basis of the i-th versus (i+1)-st lower-central-series quotient."""
    if not isinstance(i, int) or i < 2:
        raise PreconditionError(f"lower-central-series index must be an int >= 2, got {i!r}")
    out = []
    for k in range(1, spec.n + 1):
        for js in itertools.combinations_with_replacement(range(1, spec.m + 1), i - 1):
            out.append(LcsBasisElement(k, js))
    return out


def lcs_rank(i, spec):
    """Rank of the i-th lower-central-series quotient: n * C(i+m-2, m-1)."""
    if not isinstance(i, int) or i < 2:
        raise PreconditionError(f"lower-central-series index must be an int >= 2, got {i!r}")
    return spec.n * math.comb(i + spec.m - 2, spec.m - 1)


# -- element literals --------------------------------------------------------


def element_str(g):
    """Canonical literal: `{ active: (e1,...,em); b1: poly, ... }`."""
    vec = "(" + ",".join(str(e) for e in g.active) + ")"
    entries = [
        f"b{j + 1}: {poly_str(p)}" for j, p in enumerate(g.base) if not p.is_zero()]
    body = " " + ", ".join(entries) + " " if entries else " "
    return "{ active: " + vec + ";" + body + "}"


def parse_element(text, spec, *, line=None, col=None):
    """Parse the element literal grammar; omitted base coordinates are zero."""
    s = text.strip()
    if not (s.startswith("{") and s.endswith("}")):
        raise ParseError(f"element literal must be brace-delimited, got {text!r}", line, col)
    inner = s[1:-1].strip()
    head, semi, rest = inner.partition(";")
    head = head.strip()
    if not head.startswith("active"):
        raise ParseError("element literal must start with 'active:'", line, col)
    head = head[len("active"):].lstrip()
    if not head.startswith(":"):
        raise ParseError("expected ':' after 'active'", line, col)
    vec_text = head[1:].strip()
    active = _parse_vector(vec_text, spec.m, line, col)
    base = {}
    rest = rest.strip()
    if rest:
        for entry in rest.split(","):
            entry = entry.strip()
            if not entry:
                raise ParseError("empty base entry in element literal", line, col)
            name, colon, ptext = entry.partition(":")
            name = name.strip()
            if not colon or not (name.startswith("b") and name[1:].isdigit()):
                raise ParseError(f"malformed base entry {entry!r}", line, col)
            j = int(name[1:])
            if not 1 <= j <= spec.n:
                raise ParseError(f"base coordinate b{j} out of range 1..{spec.n}", line, col)
            if j in base:
                raise ParseError(f"duplicate base coordinate b{j}", line, col)
            base[j] = parse_poly(ptext.strip(), spec.m, line=line)
    return spec.element(active=active, base=base)


def _parse_vector(text, length, line, col):
    s = text.strip()
    if not (s.startswith("(") and s.endswith(")")):
        raise ParseError(f"expected parenthesized vector, got {text!r}", line, col)
    body = s[1:-1].strip()
    parts = [p.strip() for p in body.split(",")] if body else []
    if parts and parts[-1] == "":
        parts.pop()
    if len(parts) != length:
        raise ParseError(f"vector {text!r} has {len(parts)} entries, expected {length}", line, col)
    vals = []
    for part in parts:
        try:
            vals.append(int(part))
        except ValueError:
            raise ParseError(f"invalid integer {part!r} in vector", line, col) from None
    return tuple(vals)
