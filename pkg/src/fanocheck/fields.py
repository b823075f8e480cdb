"""Exact scalar arithmetic: the rationals and prime fields.

Every coefficient in this package is either a ``fractions.Fraction`` (over the
rationals) or a plain ``int`` in ``range(p)`` (over a prime field).  The field
objects below supply the arithmetic on those raw scalars; nothing here ever
rounds.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction


class FieldError(ValueError):
    """Invalid field construction or an operation the field cannot do."""


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, valid far beyond any modulus used here."""
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@dataclass(frozen=True)
class FieldSpec:
    """Descriptor of the coefficient field: ``rational`` or ``prime`` (F_p)."""

    kind: str
    modulus: int | None = None

    def __post_init__(self) -> None:
        if self.kind == "rational":
            if self.modulus is not None:
                raise FieldError("rational field takes no modulus")
        elif self.kind == "prime":
            if self.modulus is None or self.modulus < 2 or not is_prime(self.modulus):
                raise FieldError(f"modulus must be prime, got {self.modulus!r}")
        else:
            raise FieldError(f"unknown field kind {self.kind!r}")

    def to_json(self) -> dict:
        if self.kind == "rational":
            return {"kind": "rational"}
        return {"kind": "prime", "p": self.modulus}

    @staticmethod
    def from_json(obj: dict) -> "FieldSpec":
        kind = obj.get("kind")
        if kind == "rational":
            return FieldSpec("rational")
        if kind == "prime":
            return FieldSpec("prime", obj.get("p"))
        raise FieldError(f"unknown field kind {kind!r}")


class Field:
    """Arithmetic on raw scalars for one FieldSpec.

    Instances are stateless and safe to share; two fields compare equal iff
    their specs do.
    """

    def __init__(self, spec: FieldSpec):
        self.spec = spec

    # -- construction -----------------------------------------------------
    @staticmethod
    def rationals() -> "Field":
        return RationalField(FieldSpec("rational"))

    @staticmethod
    def prime(p: int) -> "Field":
        return PrimeField(FieldSpec("prime", p))

    @staticmethod
    def from_spec(spec: FieldSpec) -> "Field":
        if spec.kind == "rational":
            return RationalField(spec)
        return PrimeField(spec)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Field) and self.spec == other.spec

    def __hash__(self) -> int:
        return hash(self.spec)

    def __repr__(self) -> str:
        if self.spec.kind == "rational":
            return "QQ"
        return f"GF({self.spec.modulus})"

    # -- interface (overridden) -------------------------------------------
    characteristic: int = 0

    def add(self, a, b):
        raise NotImplementedError

    def sub(self, a, b):
        raise NotImplementedError

    def mul(self, a, b):
        raise NotImplementedError

    def neg(self, a):
        raise NotImplementedError

    def inv(self, a):
        raise NotImplementedError

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def from_int(self, n: int):
        raise NotImplementedError

    def parse(self, s) -> object:
        """Parse ``"num/den"`` strings or integers, exactly."""
        raise NotImplementedError

    def format(self, a) -> str:
        raise NotImplementedError

    def random(self, rng):
        """A uniformly random element (for F_p) or a small random rational."""
        raise NotImplementedError

    def random_nonzero(self, rng):
        while True:
            a = self.random(rng)
            if a != self.zero:
                return a

    zero = None
    one = None


class RationalField(Field):
    characteristic = 0
    zero = Fraction(0)
    one = Fraction(1)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of 0")
        return 1 / Fraction(a)

    def from_int(self, n: int):
        return Fraction(n)

    def parse(self, s):
        if isinstance(s, int):
            return Fraction(s)
        return Fraction(str(s))

    def format(self, a) -> str:
        return str(a)

    def random(self, rng):
        # Small numerators/denominators keep downstream arithmetic readable.
        return Fraction(rng.randint(-9, 9), rng.randint(1, 9))


class PrimeField(Field):
    def __init__(self, spec: FieldSpec):
        super().__init__(spec)
        self.p = spec.modulus
        self.characteristic = self.p
        self.zero = 0
        self.one = 1 % self.p

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise ZeroDivisionError("inverse of 0")
        return pow(a, self.p - 2, self.p)

    def from_int(self, n: int):
        return n % self.p

    def parse(self, s):
        if isinstance(s, int):
            return s % self.p
        text = str(s)
        if "/" in text:
            num, den = text.split("/", 1)
            return self.div(int(num) % self.p, int(den) % self.p)
        return int(text) % self.p

    def format(self, a) -> str:
        return str(a % self.p)

    def random(self, rng):
        return rng.randrange(self.p)


QQ = Field.rationals()
