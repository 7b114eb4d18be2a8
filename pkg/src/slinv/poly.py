"""Exact Laurent polynomial arithmetic.

Two representations:

* LaurentPoly — multivariate, integer coefficients, exponents stored as
  scaled integers (per-variable scale d means a stored exponent n denotes
  the power n/d; the default scale 1 is the ordinary integer case).
* JKPoly — two-variable polynomials in (t, z) where the t-exponent is a
  quarter-integer stored as 4x its value and the z-exponent is a
  nonnegative integer.

Both are immutable after construction and hash/compare by value.
Canonical text looks like ``3*V*X^-1 + 6`` and ``-t^-9/2 + 6*z*t^-3``;
JSON is a list of ``{"coeff": c, "exps": [...]}`` objects in the same
canonical term order.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .errors import NonMonomialDenominator, ZeroPolynomial

_TERM_SPLIT = re.compile(r"\s([+-])\s")
_FACTOR = re.compile(r"^([A-Za-z_]\w*)(?:\^(-?\d+(?:/\d+)?))?$")
_INT = re.compile(r"^-?\d+$")


def _exp_str(stored: int, scale: int) -> str:
    q = Fraction(stored, scale)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


class LaurentPoly:
    """Multivariate Laurent polynomial with integer coefficients."""

    __slots__ = ("variables", "scales", "terms")

    def __init__(
        self,
        variables: Sequence[str],
        terms: Mapping[tuple[int, ...], int] | None = None,
        scales: Sequence[int] | None = None,
    ) -> None:
        object.__setattr__(self, "variables", tuple(variables))
        object.__setattr__(
            self, "scales", tuple(scales) if scales is not None else (1,) * len(self.variables)
        )
        if len(self.scales) != len(self.variables):
            raise ValueError("scales and variables must align")
        clean: dict[tuple[int, ...], int] = {}
        for exps, coeff in (terms or {}).items():
            if len(exps) != len(self.variables):
                raise ValueError(f"exponent vector {exps} has wrong length")
            if coeff:
                clean[tuple(int(e) for e in exps)] = int(coeff)
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name: str, value) -> None:  # pragma: no cover
        raise AttributeError("LaurentPoly is immutable")

    # -- constructors ----------------------------------------------------

    @classmethod
    def zero(cls, variables: Sequence[str], scales: Sequence[int] | None = None) -> "LaurentPoly":
        return cls(variables, {}, scales)

    @classmethod
    def const(cls, variables: Sequence[str], c: int, scales: Sequence[int] | None = None) -> "LaurentPoly":
        return cls(variables, {(0,) * len(tuple(variables)): c}, scales)

    @classmethod
    def term(
        cls,
        variables: Sequence[str],
        coeff: int,
        exps: Sequence[int],
        scales: Sequence[int] | None = None,
    ) -> "LaurentPoly":
        return cls(variables, {tuple(exps): coeff}, scales)

    @classmethod
    def var(cls, variables: Sequence[str], name: str, scales: Sequence[int] | None = None) -> "LaurentPoly":
        variables = tuple(variables)
        exps = [0] * len(variables)
        exps[variables.index(name)] = (tuple(scales) if scales else (1,) * len(variables))[
            variables.index(name)
        ]
        return cls(variables, {tuple(exps): 1}, scales)

    # -- ring structure --------------------------------------------------

    def _check_compatible(self, other: "LaurentPoly") -> None:
        if self.variables != other.variables or self.scales != other.scales:
            raise ValueError("polynomials live in different rings")

    def __add__(self, other: "LaurentPoly | int") -> "LaurentPoly":
        if isinstance(other, int):
            other = LaurentPoly.const(self.variables, other, self.scales)
        self._check_compatible(other)
        out = dict(self.terms)
        for exps, coeff in other.terms.items():
            new = out.get(exps, 0) + coeff
            if new:
                out[exps] = new
            else:
                out.pop(exps, None)
        return LaurentPoly(self.variables, out, self.scales)

    __radd__ = __add__

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly(self.variables, {e: -c for e, c in self.terms.items()}, self.scales)

    def __sub__(self, other: "LaurentPoly | int") -> "LaurentPoly":
        if isinstance(other, int):
            other = LaurentPoly.const(self.variables, other, self.scales)
        return self + (-other)

    def __mul__(self, other: "LaurentPoly | int") -> "LaurentPoly":
        if isinstance(other, int):
            other = LaurentPoly.const(self.variables, other, self.scales)
        self._check_compatible(other)
        out: dict[tuple[int, ...], int] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                key = tuple(a + b for a, b in zip(e1, e2))
                new = out.get(key, 0) + c1 * c2
                if new:
                    out[key] = new
                else:
                    out.pop(key, None)
        return LaurentPoly(self.variables, out, self.scales)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "LaurentPoly":
        if n < 0:
            return self._inverse() ** (-n)
        result = LaurentPoly.const(self.variables, 1, self.scales)
        for _ in range(n):
            result = result * self
        return result

    def _inverse(self) -> "LaurentPoly":
        if len(self.terms) != 1:
            raise NonMonomialDenominator(f"cannot invert non-monomial {self.to_text()!r}")
        (exps, coeff), = self.terms.items()
        if coeff not in (1, -1):
            raise NonMonomialDenominator(f"cannot invert coefficient {coeff} over the integers")
        return LaurentPoly(self.variables, {tuple(-e for e in exps): coeff}, self.scales)

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, LaurentPoly)
            and self.variables == other.variables
            and self.scales == other.scales
            and self.terms == other.terms
        )

    def __hash__(self) -> int:
        return hash((self.variables, self.scales, frozenset(self.terms.items())))

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __repr__(self) -> str:
        return f"LaurentPoly({'+'.join(self.variables)}: {self.to_text()})"

    # -- queries ----------------------------------------------------------

    def coefficient(self, exps: Sequence[int]) -> int:
        """Coefficient of the monomial with the given stored exponents."""
        return self.terms.get(tuple(exps), 0)

    def coefficient_of(self, **powers: int | Fraction) -> int:
        """Coefficient lookup by variable name, e.g. coefficient_of(X=1, V=1)."""
        exps = []
        for name, scale in zip(self.variables, self.scales):
            stored = Fraction(powers.get(name, 0)) * scale
            if stored.denominator != 1:
                return 0
            exps.append(int(stored))
        return self.terms.get(tuple(exps), 0)

    def evaluate(self, values: Mapping[str, int | Fraction]) -> Fraction:
        """Exact evaluation; scaled variables take the value of the scaled root
        (a scale-2 variable t evaluates t^(n/2) as values['t']**n)."""
        total = Fraction(0)
        for exps, coeff in self.terms.items():
            prod = Fraction(coeff)
            for name, e in zip(self.variables, exps):
                prod *= Fraction(values[name]) ** e
            total += prod
        return total

    def sorted_terms(self) -> list[tuple[tuple[int, ...], int]]:
        return sorted(self.terms.items(), key=lambda kv: kv[0], reverse=True)

    # -- substitution -----------------------------------------------------

    def substitute(self, assignments: Mapping[str, "LaurentPoly"]) -> "LaurentPoly":
        """Map each variable to a Laurent polynomial of a common target ring.

        Negative powers require the target to be an invertible monomial
        (single term, coefficient +-1); otherwise NonMonomialDenominator.
        """
        targets = [assignments[name] for name in self.variables]
        ring = targets[0]
        for t in targets[1:]:
            ring._check_compatible(t)
        result = LaurentPoly.zero(ring.variables, ring.scales)
        for exps, coeff in self.terms.items():
            prod = LaurentPoly.const(ring.variables, coeff, ring.scales)
            for target, e in zip(targets, exps):
                if e:
                    prod = prod * (target ** e)
            result = result + prod
        return result

    # -- text / JSON ------------------------------------------------------

    def _render_term(self, exps: tuple[int, ...], coeff: int) -> tuple[int, str]:
        factors = [
            name if stored == scale else f"{name}^{_exp_str(stored, scale)}"
            for name, scale, stored in zip(self.variables, self.scales, exps)
            if stored
        ]
        mag = abs(coeff)
        if not factors:
            body = str(mag)
        elif mag == 1:
            body = "*".join(factors)
        else:
            body = f"{mag}*" + "*".join(factors)
        return (1 if coeff > 0 else -1), body

    def to_text(self) -> str:
        if not self.terms:
            return "0"
        parts: list[str] = []
        for exps, coeff in self.sorted_terms():
            sign, body = self._render_term(exps, coeff)
            if not parts:
                parts.append(body if sign > 0 else f"-{body}")
            else:
                parts.append(f"{'+' if sign > 0 else '-'} {body}")
        return " ".join(parts)

    def to_json(self) -> list[dict]:
        return [{"coeff": c, "exps": list(e)} for e, c in self.sorted_terms()]

    @classmethod
    def from_json(
        cls,
        data: Iterable[Mapping],
        variables: Sequence[str],
        scales: Sequence[int] | None = None,
    ) -> "LaurentPoly":
        terms: dict[tuple[int, ...], int] = {}
        for row in data:
            terms[tuple(row["exps"])] = terms.get(tuple(row["exps"]), 0) + row["coeff"]
        return cls(variables, terms, scales)

    @classmethod
    def parse(
        cls,
        text: str,
        variables: Sequence[str],
        scales: Sequence[int] | None = None,
    ) -> "LaurentPoly":
        """Parse the canonical rendering (also accepts unspaced +/- between terms)."""
        variables = tuple(variables)
        scales = tuple(scales) if scales is not None else (1,) * len(variables)
        text = text.strip()
        if text == "0" or not text:
            return cls.zero(variables, scales)
        chunks = _TERM_SPLIT.split(text)
        pieces: list[tuple[int, str]] = []
        first = chunks[0].strip()
        sign = 1
        if first.startswith("-"):
            sign, first = -1, first[1:].strip()
        elif first.startswith("+"):
            first = first[1:].strip()
        pieces.append((sign, first))
        for op, chunk in zip(chunks[1::2], chunks[2::2]):
            pieces.append((1 if op == "+" else -1, chunk.strip()))
        terms: dict[tuple[int, ...], int] = {}
        for sign, body in pieces:
            coeff = sign
            exps = [0] * len(variables)
            for factor in body.split("*"):
                factor = factor.strip()
                if _INT.match(factor):
                    coeff *= int(factor)
                    continue
                m = _FACTOR.match(factor)
                if not m:
                    raise ValueError(f"bad factor {factor!r}")
                name, exp = m.group(1), m.group(2)
                if name not in variables:
                    raise ValueError(f"unknown variable {name!r}")
                idx = variables.index(name)
                q = Fraction(exp) if exp is not None else Fraction(1)
                stored = q * scales[idx]
                if stored.denominator != 1:
                    raise ValueError(f"exponent {q} not representable at scale {scales[idx]}")
                exps[idx] += int(stored)
            key = tuple(exps)
            new = terms.get(key, 0) + coeff
            if new:
                terms[key] = new
            else:
                terms.pop(key, None)
        return cls(variables, terms, scales)


class JKPoly:
    """Polynomial in t^(1/4) and z: terms map (t_quarter, z_pow) -> coeff.

    t_quarter is 4x the t-exponent; z_pow must be >= 0.
    """

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[tuple[int, int], int] | None = None) -> None:
        clean: dict[tuple[int, int], int] = {}
        for (tq, zp), coeff in (terms or {}).items():
            if zp < 0:
                raise ValueError(f"negative z-power {zp}")
            if coeff:
                clean[(int(tq), int(zp))] = int(coeff)
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name: str, value) -> None:  # pragma: no cover
        raise AttributeError("JKPoly is immutable")

    @classmethod
    def zero(cls) -> "JKPoly":
        return cls()

    @classmethod
    def term(cls, coeff: int, t_quarter: int, z_pow: int = 0) -> "JKPoly":
        return cls({(t_quarter, z_pow): coeff})

    @classmethod
    def const(cls, c: int) -> "JKPoly":
        return cls.term(c, 0, 0)

    def __add__(self, other: "JKPoly | int") -> "JKPoly":
        if isinstance(other, int):
            other = JKPoly.const(other)
        out = dict(self.terms)
        for key, coeff in other.terms.items():
            new = out.get(key, 0) + coeff
            if new:
                out[key] = new
            else:
                out.pop(key, None)
        return JKPoly(out)

    __radd__ = __add__

    def __neg__(self) -> "JKPoly":
        return JKPoly({k: -c for k, c in self.terms.items()})

    def __sub__(self, other: "JKPoly | int") -> "JKPoly":
        if isinstance(other, int):
            other = JKPoly.const(other)
        return self + (-other)

    def __mul__(self, other: "JKPoly | int") -> "JKPoly":
        if isinstance(other, int):
            other = JKPoly.const(other)
        out: dict[tuple[int, int], int] = {}
        for (t1, z1), c1 in self.terms.items():
            for (t2, z2), c2 in other.terms.items():
                key = (t1 + t2, z1 + z2)
                new = out.get(key, 0) + c1 * c2
                if new:
                    out[key] = new
                else:
                    out.pop(key, None)
        return JKPoly(out)

    __rmul__ = __mul__

    def __eq__(self, other: object) -> bool:
        return isinstance(other, JKPoly) and self.terms == other.terms

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __repr__(self) -> str:
        return f"JKPoly({self.to_text()})"

    # -- queries ----------------------------------------------------------

    def coefficient(self, t_quarter: int, z_pow: int = 0) -> int:
        return self.terms.get((t_quarter, z_pow), 0)

    def z_collapsed(self) -> dict[int, int]:
        """Coefficients of t^(q/4) after setting z = 1."""
        out: dict[int, int] = {}
        for (tq, _), coeff in self.terms.items():
            new = out.get(tq, 0) + coeff
            if new:
                out[tq] = new
            else:
                out.pop(tq, None)
        return out

    def t_span(self) -> Fraction:
        """Span of t-exponents of the z=1 slice."""
        collapsed = self.z_collapsed()
        if not collapsed:
            raise ZeroPolynomial("span of the zero polynomial is undefined")
        return Fraction(max(collapsed) - min(collapsed), 4)

    def has_z_terms(self) -> bool:
        return any(zp for (_, zp) in self.terms)

    def jones_specialization(self) -> LaurentPoly:
        """Set z = -t^(-1/2) - t^(1/2); returns a Laurent polynomial in t
        (scale 4, so quarter-exponents remain representable)."""
        binomial = JKPoly({(-2, 0): -1, (2, 0): -1})
        powers = [JKPoly.const(1)]
        max_z = max((zp for (_, zp) in self.terms), default=0)
        for _ in range(max_z):
            powers.append(powers[-1] * binomial)
        total = JKPoly.zero()
        for (tq, zp), coeff in self.terms.items():
            total = total + JKPoly.term(coeff, tq) * powers[zp]
        return LaurentPoly(("t",), {(tq,): c for (tq, _), c in total.terms.items()}, (4,))

    def sorted_terms(self) -> list[tuple[tuple[int, int], int]]:
        return sorted(self.terms.items(), key=lambda kv: (kv[0][1], kv[0][0]))

    # -- conversions ------------------------------------------------------

    @classmethod
    def from_laurent(cls, poly: LaurentPoly) -> "JKPoly":
        """Convert from the ring (t scale 4, z scale 1)."""
        if poly.variables != ("t", "z") or poly.scales != (4, 1):
            raise ValueError("expected a polynomial in t (scale 4) and z (scale 1)")
        return cls({(tq, zp): c for (tq, zp), c in poly.terms.items()})

    def to_laurent(self) -> LaurentPoly:
        return LaurentPoly(("t", "z"), {k: c for k, c in self.terms.items()}, (4, 1))

    # -- text / JSON ------------------------------------------------------

    def _render_term(self, tq: int, zp: int, coeff: int) -> tuple[int, str]:
        factors = []
        if zp:
            factors.append("z" if zp == 1 else f"z^{zp}")
        if tq:
            factors.append("t" if tq == 4 else f"t^{_exp_str(tq, 4)}")
        mag = abs(coeff)
        if not factors:
            body = str(mag)
        elif mag == 1:
            body = "*".join(factors)
        else:
            body = f"{mag}*" + "*".join(factors)
        return (1 if coeff > 0 else -1), body

    def to_text(self) -> str:
        if not self.terms:
            return "0"
        parts: list[str] = []
        for (tq, zp), coeff in self.sorted_terms():
            sign, body = self._render_term(tq, zp, coeff)
            if not parts:
                parts.append(body if sign > 0 else f"-{body}")
            else:
                parts.append(f"{'+' if sign > 0 else '-'} {body}")
        return " ".join(parts)

    def to_json(self) -> list[dict]:
        return [{"coeff": c, "exps": list(k)} for k, c in self.sorted_terms()]

    @classmethod
    def from_json(cls, data: Iterable[Mapping]) -> "JKPoly":
        terms: dict[tuple[int, int], int] = {}
        for row in data:
            key = (row["exps"][0], row["exps"][1])
            terms[key] = terms.get(key, 0) + row["coeff"]
        return cls(terms)

    @classmethod
    def parse(cls, text: str) -> "JKPoly":
        poly = LaurentPoly.parse(text, ("t", "z"), (4, 1))
        return cls.from_laurent(poly)
