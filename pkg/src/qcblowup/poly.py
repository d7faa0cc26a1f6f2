"""Exact sparse multivariate polynomials over a fixed, weighted variable set.

A polynomial is a map from exponent tuples to ``fractions.Fraction``
coefficients; the zero polynomial is the empty map and zero coefficients are
never stored.  All arithmetic is exact.  Values are immutable after
construction and every operation is a pure function, so polynomials can be
shared freely between threads.

Variables carry positive integer degree weights.  Two presets cover the
geometry in this package: projective-bundle coordinates ``(xi, h, q1, q2)``
and blow-up coordinates ``(k, eta, q1, q2)``.  The divisor variables have
weight 1 while the deformation parameters ``q1``, ``q2`` weigh ``r`` and
``n``, which keeps the deformed ring relations homogeneous.

Canonical text format (also consumed by the command line): terms sorted in
descending graded-lex order with the declared variable precedence, each term
rendered as ``[sign]coef*var^exp*...`` with unit coefficients and exponent 1
omitted, e.g. ``h^4 - xi*q2 + 2*h*q2``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Union

from .errors import ParseError, UsageError

# A scalar is an exact rational number; Fraction keeps gcd-reduced form with
# positive denominator, which is exactly the invariant required here.
Scalar = Fraction

# A monomial is one non-negative exponent per variable of the VariableSet.
Mono = tuple[int, ...]

ScalarLike = Union[int, Fraction]

LEX = "lex"
GRLEX = "grlex"
GREVLEX = "grevlex"


@dataclass(frozen=True)
class VariableSet:
    """An ordered list of named variables with integer degree weights.

    The listing order is the comparison precedence (most significant first).
    ``display`` permutes the names for rendering factors inside a term; the
    bundle preset writes base powers before fiber powers even though the
    fiber class has higher precedence.  The first ``divisor_count`` variables
    are geometric divisor classes; the remaining ones are deformation
    parameters.
    """

    names: tuple[str, ...]
    weights: tuple[int, ...]
    divisor_count: int = -1
    display: tuple[str, ...] = ()

    def __post_init__(self) -> None:
        if len(set(self.names)) != len(self.names):
            raise UsageError(f"duplicate variable names in {self.names}")
        if len(self.weights) != len(self.names):
            raise UsageError("one weight per variable required")
        if any(w <= 0 for w in self.weights):
            raise UsageError(f"weights must be positive, got {self.weights}")
        if self.divisor_count == -1:
            object.__setattr__(self, "divisor_count", len(self.names))
        if not 0 <= self.divisor_count <= len(self.names):
            raise UsageError("divisor_count out of range")
        if not self.display:
            object.__setattr__(self, "display", self.names)
        if sorted(self.display) != sorted(self.names):
            raise UsageError("display must be a permutation of the variable names")

    def __len__(self) -> int:
        return len(self.names)

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise UsageError(f"unknown variable {name!r} (have {self.names})") from None

    @property
    def parameter_indices(self) -> range:
        return range(self.divisor_count, len(self.names))

    def weighted_degree(self, mono: Mono) -> int:
        return sum(e * w for e, w in zip(mono, self.weights))

    def is_parameter_free(self, mono: Mono) -> bool:
        return all(mono[i] == 0 for i in self.parameter_indices)


def bundle_variables(r: int, n: int) -> VariableSet:
    """Projective-bundle coordinates (xi, h, q1, q2) with weights (1,1,r,n).

    Comparison precedence is xi > h > q1 > q2; terms display as h-power
    times xi-power, the customary way to write the basis monomials.
    """
    return VariableSet(
        ("xi", "h", "q1", "q2"),
        (1, 1, r, n),
        divisor_count=2,
        display=("h", "xi", "q1", "q2"),
    )


def blowup_variables(r: int, n: int) -> VariableSet:
    """Blow-up coordinates (k, eta, q1, q2) with weights (1,1,r,n)."""
    return VariableSet(("k", "eta", "q1", "q2"), (1, 1, r, n), divisor_count=2)


def mono_mul(a: Mono, b: Mono) -> Mono:
    return tuple(x + y for x, y in zip(a, b))


def mono_divides(a: Mono, b: Mono) -> bool:
    """True iff monomial a divides monomial b."""
    return all(x <= y for x, y in zip(a, b))


def mono_div(a: Mono, b: Mono) -> Mono:
    """Quotient a / b; requires b | a."""
    if not mono_divides(b, a):
        raise UsageError(f"{b} does not divide {a}")
    return tuple(x - y for x, y in zip(a, b))


def mono_lcm(a: Mono, b: Mono) -> Mono:
    return tuple(max(x, y) for x, y in zip(a, b))


@dataclass(frozen=True)
class MonomialOrder:
    """A global monomial order: lex, graded-lex or graded-reverse-lex.

    Grading uses total degree with every variable counting 1; ties are broken
    by the variable precedence declared in the VariableSet.  1 is minimal and
    the order is multiplicative in all three flavours.
    """

    kind: str = GRLEX

    def __post_init__(self) -> None:
        if self.kind not in (LEX, GRLEX, GREVLEX):
            raise UsageError(f"unknown monomial order {self.kind!r}")

    def key(self, mono: Mono):
        """Sort key; ascending in the order."""
        if self.kind == LEX:
            return mono
        deg = sum(mono)
        if self.kind == GRLEX:
            return (deg, mono)
        return (deg, tuple(-e for e in reversed(mono)))

    def compare(self, a: Mono, b: Mono) -> int:
        """-1, 0 or 1 as a <, =, > b."""
        if len(a) != len(b):
            raise UsageError("monomials over different variable sets")
        ka, kb = self.key(a), self.key(b)
        return (ka > kb) - (ka < kb)

    def max(self, monos: Iterable[Mono]) -> Mono:
        return max(monos, key=self.key)


def monomial_compare(order: MonomialOrder, a: Mono, b: Mono) -> int:
    """Compare two monomials in the given order (-1, 0, 1)."""
    return order.compare(a, b)


#: Order used for canonical rendering and staircase listings.
DISPLAY_ORDER = MonomialOrder(GRLEX)

_NUMBER_RE = re.compile(r"(\d+)(?:/(\d+))?\Z")
_FACTOR_RE = re.compile(r"([A-Za-z_][A-Za-z_0-9]*)(?:\^(\d+))?\Z")
_TERM_SPLIT_RE = re.compile(r"[+-]?[^+-]+")


class Polynomial:
    """A sparse polynomial with exact rational coefficients.

    Instances are immutable; arithmetic returns new objects.  Operands of
    binary operations must share the same VariableSet.
    """

    __slots__ = ("variables", "terms", "_hash")

    def __init__(
        self,
        variables: VariableSet,
        terms: Mapping[Mono, ScalarLike] | Iterable[tuple[Mono, ScalarLike]] = (),
    ) -> None:
        items = terms.items() if isinstance(terms, Mapping) else terms
        nvars = len(variables)
        clean: dict[Mono, Fraction] = {}
        for mono, coeff in items:
            mono = tuple(mono)
            if len(mono) != nvars:
                raise UsageError(f"exponent tuple {mono} has wrong length for {variables.names}")
            if any(e < 0 or not isinstance(e, int) for e in mono):
                raise UsageError(f"exponents must be non-negative integers: {mono}")
            c = clean.get(mono, Fraction(0)) + Fraction(coeff)
            if c:
                clean[mono] = c
            else:
                clean.pop(mono, None)
        object.__setattr__(self, "variables", variables)
        object.__setattr__(self, "terms", clean)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):  # pragma: no cover - guard only
        raise AttributeError("Polynomial is immutable")

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls, variables: VariableSet) -> Polynomial:
        return cls(variables)

    @classmethod
    def one(cls, variables: VariableSet) -> Polynomial:
        return cls.constant(variables, 1)

    @classmethod
    def constant(cls, variables: VariableSet, value: ScalarLike) -> Polynomial:
        return cls(variables, {(0,) * len(variables): Fraction(value)})

    @classmethod
    def variable(cls, variables: VariableSet, name: str) -> Polynomial:
        mono = [0] * len(variables)
        mono[variables.index(name)] = 1
        return cls(variables, {tuple(mono): Fraction(1)})

    @classmethod
    def monomial(cls, variables: VariableSet, mono: Mono, coeff: ScalarLike = 1) -> Polynomial:
        return cls(variables, {tuple(mono): Fraction(coeff)})

    # -- basic queries -------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def coefficient(self, mono: Mono) -> Fraction:
        return self.terms.get(tuple(mono), Fraction(0))

    def constant_term(self) -> Fraction:
        return self.coefficient((0,) * len(self.variables))

    def iter_terms(self, order: MonomialOrder = DISPLAY_ORDER, descending: bool = True) -> Iterator[tuple[Mono, Fraction]]:
        monos = sorted(self.terms, key=order.key, reverse=descending)
        for m in monos:
            yield m, self.terms[m]

    def total_degree(self) -> int:
        """Largest unweighted degree among terms; -1 for the zero polynomial."""
        return max((sum(m) for m in self.terms), default=-1)

    def weighted_degree(self) -> int:
        """Largest weighted degree among terms; -1 for the zero polynomial."""
        wd = self.variables.weighted_degree
        return max((wd(m) for m in self.terms), default=-1)

    def is_homogeneous(self) -> bool:
        """True when all terms share one weighted degree (zero counts)."""
        degs = {self.variables.weighted_degree(m) for m in self.terms}
        return len(degs) <= 1

    def homogeneous_degree(self) -> int:
        """Weighted degree of a nonzero homogeneous polynomial."""
        degs = {self.variables.weighted_degree(m) for m in self.terms}
        if len(degs) != 1:
            raise UsageError("polynomial is zero or not homogeneous")
        return degs.pop()

    def is_integral(self) -> bool:
        """True when every coefficient has denominator 1."""
        return all(c.denominator == 1 for c in self.terms.values())

    def is_parameter_free(self) -> bool:
        """True when no deformation parameter occurs."""
        return all(self.variables.is_parameter_free(m) for m in self.terms)

    def leading_term(self, order: MonomialOrder) -> tuple[Mono, Fraction]:
        if self.is_zero:
            raise UsageError("the zero polynomial has no leading term")
        m = order.max(self.terms)
        return m, self.terms[m]

    def leading_monomial(self, order: MonomialOrder) -> Mono:
        return self.leading_term(order)[0]

    # -- arithmetic ----------------------------------------------------------

    def _check_same_variables(self, other: Polynomial) -> None:
        if self.variables != other.variables:
            raise UsageError(
                f"mixed variable sets: {self.variables.names} vs {other.variables.names}"
            )

    def _coerce(self, other) -> Polynomial | None:
        if isinstance(other, Polynomial):
            self._check_same_variables(other)
            return other
        if isinstance(other, (int, Fraction)):
            return Polynomial.constant(self.variables, other)
        return None

    def __add__(self, other) -> Polynomial:
        rhs = self._coerce(other)
        if rhs is None:
            return NotImplemented
        out = dict(self.terms)
        for m, c in rhs.terms.items():
            s = out.get(m, Fraction(0)) + c
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        return Polynomial(self.variables, out)

    __radd__ = __add__

    def __neg__(self) -> Polynomial:
        return Polynomial(self.variables, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other) -> Polynomial:
        rhs = self._coerce(other)
        if rhs is None:
            return NotImplemented
        return self + (-rhs)

    def __rsub__(self, other) -> Polynomial:
        rhs = self._coerce(other)
        if rhs is None:
            return NotImplemented
        return rhs + (-self)

    def __mul__(self, other) -> Polynomial:
        if isinstance(other, (int, Fraction)):
            c = Fraction(other)
            if not c:
                return Polynomial.zero(self.variables)
            return Polynomial(self.variables, {m: c * v for m, v in self.terms.items()})
        if not isinstance(other, Polynomial):
            return NotImplemented
        self._check_same_variables(other)
        out: dict[Mono, Fraction] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = mono_mul(m1, m2)
                s = out.get(m, Fraction(0)) + c1 * c2
                if s:
                    out[m] = s
                else:
                    out.pop(m, None)
        return Polynomial(self.variables, out)

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> Polynomial:
        if not isinstance(exponent, int) or exponent < 0:
            raise UsageError(f"exponent must be a non-negative integer, got {exponent!r}")
        result = Polynomial.one(self.variables)
        base = self
        e = exponent
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = Polynomial.constant(self.variables, other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.variables == other.variables and self.terms == other.terms

    def __hash__(self) -> int:
        h = self._hash
        if h is None:
            h = hash((self.variables, frozenset(self.terms.items())))
            object.__setattr__(self, "_hash", h)
        return h

    # -- substitution --------------------------------------------------------

    def substitute(self, values: Mapping[str, Polynomial | ScalarLike]) -> Polynomial:
        """Replace named variables by polynomials or scalars over the same set."""
        images: dict[int, Polynomial] = {}
        for name, val in values.items():
            idx = self.variables.index(name)
            if not isinstance(val, Polynomial):
                val = Polynomial.constant(self.variables, val)
            else:
                self._check_same_variables(val)
            images[idx] = val
        out = Polynomial.zero(self.variables)
        for mono, coeff in self.terms.items():
            residual = list(mono)
            factor = Polynomial.constant(self.variables, coeff)
            for idx, img in images.items():
                if mono[idx]:
                    factor = factor * img ** mono[idx]
                    residual[idx] = 0
            out = out + factor * Polynomial.monomial(self.variables, tuple(residual))
        return out

    def map_variables(
        self, target: VariableSet, images: Mapping[str, Polynomial]
    ) -> Polynomial:
        """Rewrite over a different variable set.

        Variables without an explicit image must exist under the same name in
        the target set.  Every image must be a polynomial over ``target``.
        """
        by_index: list[Polynomial | None] = []
        for name in self.variables.names:
            img = images.get(name)
            if img is None:
                img = Polynomial.variable(target, name)
            elif img.variables != target:
                raise UsageError("image polynomial is not over the target variable set")
            by_index.append(img)
        out = Polynomial.zero(target)
        for mono, coeff in self.terms.items():
            factor = Polynomial.constant(target, coeff)
            for idx, e in enumerate(mono):
                if e:
                    factor = factor * by_index[idx] ** e
            out = out + factor
        return out

    # -- text format ---------------------------------------------------------

    def render(self) -> str:
        """Canonical text form; inverse of :meth:`parse`."""
        if self.is_zero:
            return "0"
        display_indices = [self.variables.names.index(n) for n in self.variables.display]
        pieces: list[str] = []
        for i, (mono, coeff) in enumerate(self.iter_terms()):
            factors = [
                f"{self.variables.names[idx]}^{mono[idx]}"
                if mono[idx] > 1
                else self.variables.names[idx]
                for idx in display_indices
                if mono[idx]
            ]
            mag = abs(coeff)
            if mag != 1 or not factors:
                factors.insert(0, str(mag))
            body = "*".join(factors)
            if i == 0:
                pieces.append(("-" if coeff < 0 else "") + body)
            else:
                pieces.append((" - " if coeff < 0 else " + ") + body)
        return "".join(pieces)

    @classmethod
    def parse(cls, variables: VariableSet, text: str) -> Polynomial:
        """Parse the canonical text format (no parentheses, ``^`` powers)."""
        s = text.replace(" ", "")
        if not s:
            raise ParseError("empty polynomial expression")
        if s == "0":
            return cls.zero(variables)
        chunks = _TERM_SPLIT_RE.findall(s)
        if "".join(chunks) != s:
            raise ParseError(f"cannot tokenize {text!r}")
        terms: list[tuple[Mono, Fraction]] = []
        for chunk in chunks:
            sign = Fraction(1)
            body = chunk
            if body[0] in "+-":
                if body[0] == "-":
                    sign = Fraction(-1)
                body = body[1:]
            if not body:
                raise ParseError(f"dangling sign in {text!r}")
            coeff = sign
            exps = [0] * len(variables)
            for part in body.split("*"):
                num = _NUMBER_RE.match(part)
                if num:
                    coeff *= Fraction(int(num.group(1)), int(num.group(2) or 1))
                    continue
                fac = _FACTOR_RE.match(part)
                if not fac:
                    raise ParseError(f"bad factor {part!r} in {text!r}")
                exps[variables.index(fac.group(1))] += int(fac.group(2) or 1)
            terms.append((tuple(exps), coeff))
        return cls(variables, terms)

    def __str__(self) -> str:
        return self.render()

    def __repr__(self) -> str:
        return f"Polynomial({self.render()!r})"
