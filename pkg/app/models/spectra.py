"""
Spectral value types: matrix kinds, exact characteristic polynomials,
numeric spectra and symbolic closed-form spectra
"""
import hashlib
import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Any, Dict, List, Optional, Sequence, Tuple, Union

import numpy as np
from pydantic import BaseModel

from app.utils.exceptions import InvariantBreachError, MalformedSpectrumError, ValidationError

Exact = Union[int, Fraction]


class MatrixKind(str, Enum):
    ADJACENCY = "A"
    LAPLACIAN = "L"
    SIGNLESS_LAPLACIAN = "Q"

    @classmethod
    def parse(cls, text: str) -> "MatrixKind":
        aliases = {
            "a": cls.ADJACENCY, "adjacency": cls.ADJACENCY,
            "l": cls.LAPLACIAN, "laplacian": cls.LAPLACIAN,
            "q": cls.SIGNLESS_LAPLACIAN, "signless": cls.SIGNLESS_LAPLACIAN,
            "signless_laplacian": cls.SIGNLESS_LAPLACIAN,
        }
        try:
            return aliases[text.strip().lower()]
        except KeyError:
            raise ValidationError(f"Unknown matrix kind: {text}", field="kind", value=text)


@dataclass(frozen=True)
class CharPoly:
    """Monic integer polynomial det(xI - M), coefficients in descending degree"""
    coeffs: Tuple[int, ...]
    kind: Optional[MatrixKind] = None

    def __post_init__(self):
        if not self.coeffs or self.coeffs[0] != 1:
            raise InvariantBreachError("characteristic polynomial must be monic", "CharPoly")

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def coefficient(self, power: int) -> int:
        """Coefficient of x**power"""
        if not 0 <= power <= self.degree:
            return 0
        return self.coeffs[self.degree - power]

    def evaluate(self, x):
        """Horner evaluation; exact for int/Fraction arguments"""
        acc = 0
        for c in self.coeffs:
            acc = acc * x + c
        return acc

    def __mul__(self, other: "CharPoly") -> "CharPoly":
        return CharPoly(poly_multiply(self.coeffs, other.coeffs), self.kind if self.kind == other.kind else None)

    def divide_linear(self, root: Exact) -> Tuple[Tuple[Exact, ...], Exact]:
        """Synthetic division by (x - root): (quotient coefficients, remainder)"""
        out: List[Exact] = []
        acc: Exact = 0
        for c in self.coeffs:
            acc = acc * root + c
            out.append(acc)
        return tuple(out[:-1]), out[-1]

    def root_multiplicity(self, root: Exact) -> int:
        """Largest k with (x - root)^k dividing the polynomial, decided exactly"""
        coeffs: Tuple[Exact, ...] = self.coeffs
        k = 0
        while len(coeffs) > 1:
            acc: Exact = 0
            out: List[Exact] = []
            for c in coeffs:
                acc = acc * root + c
                out.append(acc)
            if out[-1] != 0:
                break
            coeffs = tuple(out[:-1])
            k += 1
        return k

    def has_root(self, root: Exact) -> bool:
        return self.evaluate(root) == 0

    def shifted(self, r: Exact) -> Tuple[Exact, ...]:
        """Coefficients of p(x + r), descending (Taylor shift)"""
        coeffs = list(self.coeffs)
        n = len(coeffs)
        for i in range(n - 1):
            for j in range(1, n - i):
                coeffs[j] += r * coeffs[j - 1]
        return tuple(coeffs)

    def roots_above(self, r: Exact) -> int:
        """Number of roots > r; exact because characteristic polynomials are real-rooted"""
        return sign_changes(self.shifted(r))

    def to_json(self) -> List[str]:
        return [str(c) for c in self.coeffs]

    @property
    def fingerprint(self) -> str:
        return hashlib.sha256(",".join(self.to_json()).encode("ascii")).hexdigest()

    def __str__(self) -> str:
        terms = []
        for power in range(self.degree, -1, -1):
            c = self.coefficient(power)
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            body = "" if (mag == 1 and power) else str(mag)
            if power:
                body += "x" if power == 1 else f"x^{power}"
            terms.append(f"{sign} {body}")
        text = " ".join(terms)
        return text[2:] if text.startswith("+ ") else "-" + text[2:]


def poly_multiply(a: Sequence[int], b: Sequence[int]) -> Tuple[int, ...]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return tuple(out)


def sign_changes(coeffs: Sequence[Exact]) -> int:
    signs = [c > 0 for c in coeffs if c != 0]
    return sum(1 for s, t in zip(signs, signs[1:]) if s != t)


class NumericSpectrum(BaseModel):
    """Descending floating eigenvalues with multiplicity groups"""
    kind: MatrixKind
    tol: float
    values: List[float]
    groups: List[Tuple[float, int]]

    @property
    def distinct(self) -> List[float]:
        return [value for value, _ in self.groups]

    def to_report(self) -> Dict[str, Any]:
        return {
            "kind": self.kind.value,
            "tol": self.tol,
            "groups": [[round(value, 12) + 0.0, mult] for value, mult in self.groups],
        }


@dataclass(frozen=True)
class MainAngles:
    """Per distinct eigenvalue mu_i and vertex j, the norm of e_j projected on the mu_i eigenspace"""
    eigenvalues: Tuple[float, ...]
    alphas: np.ndarray  # shape (distinct eigenvalue count, vertex count)

    def squared_sums(self) -> np.ndarray:
        return (self.alphas ** 2).sum(axis=0)


# Closed-form eigenvalue descriptors

def _rational_half_cosine(k: int, n: int) -> Optional[Fraction]:
    """2cos(2 pi k / n) when it is rational, else None"""
    turn = Fraction(k, n) % 1
    table = {
        Fraction(0): 2, Fraction(1, 6): 1, Fraction(1, 4): 0, Fraction(1, 3): -1,
        Fraction(1, 2): -2, Fraction(2, 3): -1, Fraction(3, 4): 0, Fraction(5, 6): 1,
    }
    value = table.get(turn)
    return None if value is None else Fraction(value)


@dataclass(frozen=True)
class EigenvalueDescriptor:
    mult: int

    def value(self) -> float:
        raise NotImplementedError

    def exact_value(self) -> Optional[Fraction]:
        return None

    def negated(self) -> "EigenvalueDescriptor":
        raise NotImplementedError

    def shifted(self, t: int) -> "EigenvalueDescriptor":
        raise NotImplementedError

    def with_mult(self, mult: int) -> "EigenvalueDescriptor":
        raise NotImplementedError

    def to_json(self) -> Dict[str, Any]:
        raise NotImplementedError


def _fraction_json(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


@dataclass(frozen=True)
class RationalEigenvalue(EigenvalueDescriptor):
    q: Fraction = Fraction(0)

    def value(self) -> float:
        return float(self.q)

    def exact_value(self) -> Optional[Fraction]:
        return self.q

    def negated(self):
        return RationalEigenvalue(self.mult, -self.q)

    def shifted(self, t: int):
        return RationalEigenvalue(self.mult, self.q + t)

    def with_mult(self, mult: int):
        return RationalEigenvalue(mult, self.q)

    def to_json(self):
        return {"type": "rational", "params": {"q": _fraction_json(self.q)}, "mult": self.mult}

    def __str__(self):
        return _fraction_json(self.q)


@dataclass(frozen=True)
class CosineEigenvalue(EigenvalueDescriptor):
    """a + b*cos(2 pi k / n)"""
    a: Fraction = Fraction(0)
    b: Fraction = Fraction(2)
    k: int = 1
    n: int = 3

    def value(self) -> float:
        return float(self.a) + float(self.b) * math.cos(2 * math.pi * self.k / self.n)

    def exact_value(self) -> Optional[Fraction]:
        twice = _rational_half_cosine(self.k, self.n)
        if twice is None:
            return None
        return self.a + self.b * twice / 2

    def negated(self):
        return CosineEigenvalue(self.mult, -self.a, -self.b, self.k, self.n)

    def shifted(self, t: int):
        return CosineEigenvalue(self.mult, self.a + t, self.b, self.k, self.n)

    def with_mult(self, mult: int):
        return CosineEigenvalue(mult, self.a, self.b, self.k, self.n)

    def to_json(self):
        return {
            "type": "cosine",
            "params": {"a": _fraction_json(self.a), "b": _fraction_json(self.b), "k": self.k, "n": self.n},
            "mult": self.mult,
        }

    def __str__(self):
        return f"{_fraction_json(self.a)}{'+' if self.b >= 0 else '-'}{_fraction_json(abs(self.b))}cos(2pi*{self.k}/{self.n})"


@dataclass(frozen=True)
class QuadraticSurd(EigenvalueDescriptor):
    """(omega + sign*sqrt(omega^2 - 4*gamma)) / 2, a root of x^2 - omega*x + gamma"""
    omega: int = 0
    gamma: int = 0
    sign: int = 1

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise ValidationError("Surd sign must be +1 or -1", field="sign", value=self.sign)
        if self.discriminant < 0:
            raise MalformedSpectrumError(f"negative discriminant {self.discriminant}")

    @property
    def discriminant(self) -> int:
        return self.omega * self.omega - 4 * self.gamma

    def value(self) -> float:
        return (self.omega + self.sign * math.sqrt(self.discriminant)) / 2

    def exact_value(self) -> Optional[Fraction]:
        root = math.isqrt(self.discriminant)
        if root * root != self.discriminant:
            return None
        return Fraction(self.omega + self.sign * root, 2)

    def negated(self):
        return QuadraticSurd(self.mult, -self.omega, self.gamma, -self.sign)

    def shifted(self, t: int):
        return QuadraticSurd(self.mult, self.omega + 2 * t, self.gamma + t * self.omega + t * t, self.sign)

    def with_mult(self, mult: int):
        return QuadraticSurd(mult, self.omega, self.gamma, self.sign)

    def to_json(self):
        return {
            "type": "quadratic_surd",
            "params": {"omega": self.omega, "gamma": self.gamma, "sign": self.sign},
            "mult": self.mult,
        }

    def __str__(self):
        return f"({self.omega}{'+' if self.sign > 0 else '-'}sqrt({self.discriminant}))/2"


def cosine_eigenvalue(mult: int, a: Exact, b: Exact, k: int, n: int) -> EigenvalueDescriptor:
    """Cosine descriptor, normalised to a rational one when 2cos(2 pi k/n) is rational"""
    descriptor = CosineEigenvalue(mult, Fraction(a), Fraction(b), k, n)
    exact = descriptor.exact_value()
    return descriptor if exact is None else RationalEigenvalue(mult, exact)


@dataclass(frozen=True)
class ClosedSpectrum:
    kind: MatrixKind
    descriptors: Tuple[EigenvalueDescriptor, ...]

    def __post_init__(self):
        for d in self.descriptors:
            if d.mult < 1:
                raise MalformedSpectrumError(f"multiplicity {d.mult} of {d} is not positive")

    @property
    def vertex_count(self) -> int:
        return sum(d.mult for d in self.descriptors)

    def float_values(self) -> List[float]:
        values: List[float] = []
        for d in self.descriptors:
            values.extend([d.value()] * d.mult)
        return sorted(values, reverse=True)

    def matches(self, values: Sequence[float], tol: float = 1e-9) -> bool:
        mine = self.float_values()
        theirs = sorted(values, reverse=True)
        return len(mine) == len(theirs) and all(abs(x - y) <= tol for x, y in zip(mine, theirs))

    def to_json(self) -> Dict[str, Any]:
        return {
            "kind": self.kind.value,
            "descriptors": [d.to_json() for d in self.descriptors],
            "values": [round(v, 12) + 0.0 for v in self.float_values()],
        }

    def __str__(self) -> str:
        return "{" + ", ".join(f"[{d}]^{d.mult}" for d in self.descriptors) + "}"
