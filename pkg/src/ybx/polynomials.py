"""Multivariate polynomials and rational functions over Q(i) in named parameters.

These carry the symbolic solution families: matrix templates are linear in
the parameters, the constraint systems they generate are quadratic, and
branch assignments may be ratios of polynomials.  Canonical form everywhere:
no zero coefficients, monomials sorted, terms in degree-lexicographic order,
denominators monic.  Values are immutable.

Text syntax (used by the file formats): terms ``coef*p1*p2`` joined by ``+``
or ``-``, parameters as bare identifiers, powers written as repeated factors
(``x*x``), complex coefficients with both parts nonzero parenthesized, and
rational functions as ``(<poly>)/(<poly>)``.
"""

from __future__ import annotations

import re as _re
from dataclasses import dataclass
from typing import Mapping, Sequence

from .errors import MissingParameter, ParseError
from .matrices import DimensionMismatch, ExactMatrix
from .scalars import ONE, ZERO, GaussianRational, as_gaussian, format_scalar, parse_scalar

Monomial = tuple[str, ...]

_IDENT_RE = _re.compile(r"^[A-Za-z_][A-Za-z0-9_]*$")


def _term_key(item: tuple[Monomial, GaussianRational]) -> tuple[int, Monomial]:
    mono, _ = item
    return (len(mono), mono)


@dataclass(frozen=True, slots=True)
class ParamPolynomial:
    """Polynomial in named parameters, terms in ascending degree-lex order."""

    terms: tuple[tuple[Monomial, GaussianRational], ...]

    @classmethod
    def from_dict(cls, d: Mapping[Monomial, GaussianRational]) -> "ParamPolynomial":
        items = [(tuple(m), c) for m, c in d.items() if c]
        items.sort(key=_term_key)
        return cls(tuple(items))

    @classmethod
    def zero(cls) -> "ParamPolynomial":
        return cls(())

    @classmethod
    def constant(cls, value) -> "ParamPolynomial":
        c = as_gaussian(value)
        return cls((((), c),)) if c else cls(())

    @classmethod
    def variable(cls, name: str) -> "ParamPolynomial":
        return cls((((name,), ONE),))

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(not mono for mono, _ in self.terms)

    def constant_value(self) -> GaussianRational:
        if not self.terms:
            return ZERO
        if not self.is_constant():
            raise ValueError(f"not a constant polynomial: {self}")
        return self.terms[0][1]

    def degree(self) -> int:
        return max((len(mono) for mono, _ in self.terms), default=0)

    def variables(self) -> tuple[str, ...]:
        seen: set[str] = set()
        for mono, _ in self.terms:
            seen.update(mono)
        return tuple(sorted(seen))

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __add__(self, other):
        other = _as_poly(other)
        if other is None:
            return NotImplemented
        acc = dict(self.terms)
        for mono, c in other.terms:
            acc[mono] = acc.get(mono, ZERO) + c
        return ParamPolynomial.from_dict(acc)

    __radd__ = __add__

    def __sub__(self, other):
        other = _as_poly(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = _as_poly(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __neg__(self) -> "ParamPolynomial":
        return ParamPolynomial(tuple((m, -c) for m, c in self.terms))

    def __mul__(self, other):
        if isinstance(other, (GaussianRational, int)):
            s = as_gaussian(other)
            if not s:
                return ParamPolynomial.zero()
            return ParamPolynomial(tuple((m, c * s) for m, c in self.terms))
        other = _as_poly(other)
        if other is None:
            return NotImplemented
        acc: dict[Monomial, GaussianRational] = {}
        for m1, c1 in self.terms:
            for m2, c2 in other.terms:
                mono = tuple(sorted(m1 + m2))
                prod = c1 * c2
                prev = acc.get(mono)
                acc[mono] = prod if prev is None else prev + prod
        return ParamPolynomial.from_dict(acc)

    __rmul__ = __mul__

    def leading(self) -> tuple[Monomial, GaussianRational]:
        """Largest term in degree-lex order."""
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        return self.terms[-1]

    def monic(self) -> tuple["ParamPolynomial", GaussianRational]:
        """(self / leading coefficient, the leading coefficient)."""
        if not self.terms:
            return self, ONE
        _, lead = self.leading()
        inv = lead.reciprocal()
        return ParamPolynomial(tuple((m, c * inv) for m, c in self.terms)), lead

    def degree_in(self, name: str) -> int:
        return max((mono.count(name) for mono, _ in self.terms), default=0)

    def coefficient_of(self, name: str, power: int) -> "ParamPolynomial":
        """Polynomial coefficient of name**power (with name factored out)."""
        acc: dict[Monomial, GaussianRational] = {}
        for mono, c in self.terms:
            if mono.count(name) == power:
                rest = tuple(v for v in mono if v != name)
                acc[rest] = acc.get(rest, ZERO) + c
        return ParamPolynomial.from_dict(acc)

    def common_variables(self) -> tuple[str, ...]:
        """Variables appearing in every monomial (the shared monomial factor)."""
        if not self.terms:
            return ()
        shared = set(self.terms[0][0])
        for mono, _ in self.terms[1:]:
            shared &= set(mono)
            if not shared:
                break
        return tuple(sorted(shared))

    def divide_by_variable(self, name: str) -> "ParamPolynomial":
        """Quotient by one power of `name`; every monomial must contain it."""
        acc: dict[Monomial, GaussianRational] = {}
        for mono, c in self.terms:
            if name not in mono:
                raise ValueError(f"{self} is not divisible by {name}")
            lst = list(mono)
            lst.remove(name)
            acc[tuple(lst)] = c
        return ParamPolynomial.from_dict(acc)

    def substitute(self, mapping: Mapping[str, "ParamPolynomial"]) -> "ParamPolynomial":
        out = ParamPolynomial.zero()
        for mono, c in self.terms:
            term = ParamPolynomial.constant(c)
            for var in mono:
                factor = mapping.get(var)
                if factor is None:
                    factor = ParamPolynomial.variable(var)
                term = term * factor
            out = out + term
        return out

    def rename(self, mapping: Mapping[str, str]) -> "ParamPolynomial":
        return self.substitute({old: ParamPolynomial.variable(new) for old, new in mapping.items()})

    def substitute_rational(
        self, mapping: Mapping[str, "RationalFunction"]
    ) -> "RationalFunction":
        """Substitute rational functions for parameters.

        The common denominator is the product over mapped variables of their
        denominators raised to the maximum power used, so denominators do not
        blow up term by term.
        """
        used = {
            var: max(mono.count(var) for mono, _ in self.terms)
            for var in {v for mono, _ in self.terms for v in mono if v in mapping}
        }
        den = ParamPolynomial.constant(1)
        for var, top in sorted(used.items()):
            for _ in range(top):
                den = den * mapping[var].denominator
        num = ParamPolynomial.zero()
        for mono, c in self.terms:
            term = ParamPolynomial.constant(c)
            counts: dict[str, int] = {}
            for var in mono:
                if var in used:
                    counts[var] = counts.get(var, 0) + 1
                    term = term * mapping[var].numerator
                else:
                    term = term * ParamPolynomial.variable(var)
            for var, top in used.items():
                deficit = top - counts.get(var, 0)
                for _ in range(deficit):
                    term = term * mapping[var].denominator
            num = num + term
        return RationalFunction.make(num, den)

    def evaluate(self, assignment: Mapping[str, GaussianRational]) -> GaussianRational:
        missing = sorted({v for mono, _ in self.terms for v in mono} - set(assignment))
        if missing:
            raise MissingParameter(missing)
        total = ZERO
        for mono, c in self.terms:
            value = c
            for var in mono:
                value = value * assignment[var]
            total = total + value
        return total

    def __str__(self) -> str:
        return format_polynomial(self)

    def __repr__(self) -> str:
        return f"ParamPolynomial({format_polynomial(self)!r})"


def _as_poly(value) -> ParamPolynomial | None:
    if isinstance(value, ParamPolynomial):
        return value
    if isinstance(value, (GaussianRational, int)):
        return ParamPolynomial.constant(value)
    return None


@dataclass(frozen=True, slots=True)
class RationalFunction:
    """Ratio of two polynomials, denominator monic (1 for plain polynomials)."""

    numerator: ParamPolynomial
    denominator: ParamPolynomial

    @classmethod
    def make(cls, num: ParamPolynomial, den: ParamPolynomial) -> "RationalFunction":
        if den.is_zero():
            raise ZeroDivisionError("zero denominator in rational function")
        if num.is_zero():
            return cls(num, ParamPolynomial.constant(1))
        if den.is_constant():
            return cls(num * den.constant_value().reciprocal(), ParamPolynomial.constant(1))
        den_monic, lead = den.monic()
        return cls(num * lead.reciprocal(), den_monic)

    @classmethod
    def from_polynomial(cls, p: ParamPolynomial) -> "RationalFunction":
        return cls.make(p, ParamPolynomial.constant(1))

    @classmethod
    def constant(cls, value) -> "RationalFunction":
        return cls.from_polynomial(ParamPolynomial.constant(value))

    def is_polynomial(self) -> bool:
        return self.denominator.is_constant()

    def variables(self) -> tuple[str, ...]:
        return tuple(sorted(set(self.numerator.variables()) | set(self.denominator.variables())))

    def __neg__(self) -> "RationalFunction":
        return RationalFunction(-self.numerator, self.denominator)

    def __add__(self, other):
        other = _as_rational(other)
        if other is None:
            return NotImplemented
        if self.denominator == other.denominator:
            return RationalFunction.make(self.numerator + other.numerator, self.denominator)
        return RationalFunction.make(
            self.numerator * other.denominator + other.numerator * self.denominator,
            self.denominator * other.denominator,
        )

    __radd__ = __add__

    def __sub__(self, other):
        other = _as_rational(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        other = _as_rational(other)
        if other is None:
            return NotImplemented
        return RationalFunction.make(
            self.numerator * other.numerator, self.denominator * other.denominator
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _as_rational(other)
        if other is None:
            return NotImplemented
        if other.numerator.is_zero():
            raise ZeroDivisionError("division by zero rational function")
        return RationalFunction.make(
            self.numerator * other.denominator, self.denominator * other.numerator
        )

    def same_value(self, other: "RationalFunction") -> bool:
        """Semantic equality via cross multiplication (no gcd reduction)."""
        return self.numerator * other.denominator == other.numerator * self.denominator

    def substitute_rational(
        self, mapping: Mapping[str, "RationalFunction"]
    ) -> "RationalFunction":
        num = self.numerator.substitute_rational(mapping)
        den = self.denominator.substitute_rational(mapping)
        return num / den

    def rename(self, mapping: Mapping[str, str]) -> "RationalFunction":
        return RationalFunction.make(
            self.numerator.rename(mapping), self.denominator.rename(mapping)
        )

    def evaluate(self, assignment: Mapping[str, GaussianRational]) -> GaussianRational:
        den = self.denominator.evaluate(assignment)
        if not den:
            raise ZeroDivisionError(f"denominator {self.denominator} vanishes")
        return self.numerator.evaluate(assignment) / den

    def __str__(self) -> str:
        return format_rational_function(self)

    def __repr__(self) -> str:
        return f"RationalFunction({format_rational_function(self)!r})"


def _as_rational(value) -> RationalFunction | None:
    if isinstance(value, RationalFunction):
        return value
    poly = _as_poly(value)
    if poly is not None:
        return RationalFunction.from_polynomial(poly)
    return None


@dataclass(frozen=True, slots=True)
class ParamMatrix:
    """Matrix with polynomial entries."""

    rows: int
    cols: int
    entries: tuple[ParamPolynomial, ...]

    def __post_init__(self):
        if self.rows < 1 or self.cols < 1:
            raise ValueError(f"matrix dimensions must be positive, got {self.rows}x{self.cols}")
        if len(self.entries) != self.rows * self.cols:
            raise ValueError("entry count does not match shape")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[ParamPolynomial]]) -> "ParamMatrix":
        width = len(rows[0])
        if any(len(r) != width for r in rows):
            raise ValueError("ragged rows")
        return cls(len(rows), width, tuple(p for r in rows for p in r))

    @classmethod
    def from_exact(cls, m: ExactMatrix) -> "ParamMatrix":
        return cls(m.rows, m.cols, tuple(ParamPolynomial.constant(x) for x in m.entries))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "ParamMatrix":
        return cls(rows, cols, (ParamPolynomial.zero(),) * (rows * cols))

    def __getitem__(self, key: tuple[int, int]) -> ParamPolynomial:
        i, j = key
        return self.entries[i * self.cols + j]

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def is_zero(self) -> bool:
        return all(p.is_zero() for p in self.entries)

    def variables(self) -> tuple[str, ...]:
        seen: set[str] = set()
        for p in self.entries:
            seen.update(p.variables())
        return tuple(sorted(seen))

    def __add__(self, other: "ParamMatrix") -> "ParamMatrix":
        if self.shape != other.shape:
            raise DimensionMismatch("add", self.shape, other.shape)
        return ParamMatrix(
            self.rows, self.cols, tuple(a + b for a, b in zip(self.entries, other.entries))
        )

    def __sub__(self, other: "ParamMatrix") -> "ParamMatrix":
        if self.shape != other.shape:
            raise DimensionMismatch("sub", self.shape, other.shape)
        return ParamMatrix(
            self.rows, self.cols, tuple(a - b for a, b in zip(self.entries, other.entries))
        )

    def __neg__(self) -> "ParamMatrix":
        return ParamMatrix(self.rows, self.cols, tuple(-a for a in self.entries))

    def scale(self, factor) -> "ParamMatrix":
        return ParamMatrix(self.rows, self.cols, tuple(p * factor for p in self.entries))

    def __matmul__(self, other: "ParamMatrix") -> "ParamMatrix":
        if self.cols != other.rows:
            raise DimensionMismatch("matmul", self.shape, other.shape)
        out: list[ParamPolynomial] = []
        for i in range(self.rows):
            row = self.entries[i * self.cols : (i + 1) * self.cols]
            for j in range(other.cols):
                acc = ParamPolynomial.zero()
                for k, left in enumerate(row):
                    right = other[k, j]
                    if left and right:
                        acc = acc + left * right
                out.append(acc)
        return ParamMatrix(self.rows, other.cols, tuple(out))

    def substitute(self, mapping: Mapping[str, ParamPolynomial]) -> "ParamMatrix":
        return ParamMatrix(self.rows, self.cols, tuple(p.substitute(mapping) for p in self.entries))

    def substitute_rational(
        self, mapping: Mapping[str, RationalFunction]
    ) -> list[list[RationalFunction]]:
        return [
            [self[i, j].substitute_rational(mapping) for j in range(self.cols)]
            for i in range(self.rows)
        ]

    def evaluate(self, assignment: Mapping[str, GaussianRational]) -> ExactMatrix:
        return ExactMatrix(
            self.rows, self.cols, tuple(p.evaluate(assignment) for p in self.entries)
        )

    def __str__(self) -> str:
        return "\n".join(
            "  ".join(format_polynomial(self[i, j]) for j in range(self.cols))
            for i in range(self.rows)
        )


def _needs_parens(scalar_text: str) -> bool:
    return "+" in scalar_text[1:] or "-" in scalar_text[1:]


def format_polynomial(p: ParamPolynomial) -> str:
    """Canonical text form, terms in ascending degree-lex order."""
    if not p.terms:
        return "0"
    pieces: list[str] = []
    for mono, coeff in p.terms:
        if not mono:
            text = format_scalar(coeff)
            pieces.append(text if pieces and text.startswith("-") else ("+" + text if pieces else text))
            continue
        negative = coeff.re < 0 or (coeff.re == 0 and coeff.im < 0)
        sign = "-" if negative else "+"
        mag = -coeff if negative else coeff
        body = "*".join(mono)
        if mag != ONE:
            mag_text = format_scalar(mag)
            if _needs_parens(mag_text):
                mag_text = f"({mag_text})"
            body = f"{mag_text}*{body}"
        if pieces:
            pieces.append(sign + body)
        else:
            pieces.append(body if sign == "+" else "-" + body)
    return "".join(pieces)


def _split_top_level(text: str, separators: str) -> list[str]:
    parts: list[str] = []
    depth = 0
    current = []
    for idx, ch in enumerate(text):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
            if depth < 0:
                raise ParseError(f"unbalanced parentheses in {text!r}")
        if ch in separators and depth == 0 and idx > 0:
            parts.append("".join(current))
            current = [ch]
        else:
            current.append(ch)
    if depth != 0:
        raise ParseError(f"unbalanced parentheses in {text!r}")
    parts.append("".join(current))
    return parts


def parse_polynomial(text: str) -> ParamPolynomial:
    """Parse the polynomial grammar; inverse of format_polynomial."""
    compact = "".join(text.split())
    if not compact:
        raise ParseError("empty polynomial text")
    acc: dict[Monomial, GaussianRational] = {}
    for raw in _split_top_level(compact, "+-"):
        sign = ONE
        body = raw
        while body and body[0] in "+-":
            if body[0] == "-":
                sign = -sign
            body = body[1:]
        if not body:
            raise ParseError(f"dangling sign in {text!r}")
        if body.startswith("*"):
            raise ParseError(f"term starts with '*' in {text!r}")
        coeff = sign
        names: list[str] = []
        for idx, token in enumerate(_split_top_level(body, "*")):
            token = token.lstrip("*")
            if not token:
                raise ParseError(f"empty factor in {text!r}")
            if idx == 0:
                inner = token[1:-1] if token.startswith("(") and token.endswith(")") else token
                try:
                    coeff = coeff * parse_scalar(inner)
                    continue
                except ParseError:
                    pass
            if not _IDENT_RE.match(token):
                raise ParseError(f"bad factor {token!r} in {text!r}")
            names.append(token)
        mono = tuple(sorted(names))
        acc[mono] = acc.get(mono, ZERO) + coeff
    return ParamPolynomial.from_dict(acc)


def format_rational_function(rf: RationalFunction) -> str:
    if rf.is_polynomial():
        return format_polynomial(rf.numerator)
    return f"({format_polynomial(rf.numerator)})/({format_polynomial(rf.denominator)})"


def parse_rational_function(text: str) -> RationalFunction:
    """Parse ``(<poly>)/(<poly>)`` or a plain polynomial."""
    compact = "".join(text.split())
    if compact.startswith("("):
        depth = 0
        for idx, ch in enumerate(compact):
            if ch == "(":
                depth += 1
            elif ch == ")":
                depth -= 1
                if depth == 0:
                    rest = compact[idx + 1 :]
                    if rest.startswith("/(") and rest.endswith(")"):
                        num = parse_polynomial(compact[1:idx])
                        den = parse_polynomial(rest[2:-1])
                        if den.is_zero():
                            raise ParseError(f"zero denominator in {text!r}")
                        return RationalFunction.make(num, den)
                    break
    return RationalFunction.from_polynomial(parse_polynomial(compact))
