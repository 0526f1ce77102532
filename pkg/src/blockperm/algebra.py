"""Prime fields, polynomials over F_p and the residue group (F_p[x]/(f^2))^x.

Polynomials are stored lowest degree first with no trailing zeros; the zero
polynomial has an empty coefficient tuple and degree -1 (standing in for
minus infinity).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from typing import List, Sequence, Tuple

from .errors import ParameterError, SizeMismatch

Coeffs = Tuple[int, ...]


# -- primes ---------------------------------------------------------------------

def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for small in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % small == 0:
            return n == small
    # deterministic Miller-Rabin for n < 3.3e24
    d, r = n - 1, 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41):
        if a % n == 0:
            continue
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def smallest_prime_geq(n: int) -> int:
    if n < 2:
        raise ParameterError("n must be at least 2")
    p = n
    while not is_prime(p):
        p += 1
    return p


def smallest_prime_geq_half(n: int) -> int:
    """Least prime q >= floor(n/2); Bertrand keeps it <= n."""
    if n < 4:
        raise ParameterError("n must be at least 4")
    return smallest_prime_geq(n // 2)


# -- raw coefficient-list arithmetic ---------------------------------------------

def _trim(c: List[int]) -> Coeffs:
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def _add(a: Sequence[int], b: Sequence[int], p: int) -> Coeffs:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, v in enumerate(b):
        out[i] = (out[i] + v) % p
    return _trim(out)


def _sub(a: Sequence[int], b: Sequence[int], p: int) -> Coeffs:
    return _add(a, [(-v) % p for v in b], p)


def _mul(a: Sequence[int], b: Sequence[int], p: int) -> Coeffs:
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _trim([v % p for v in out])


def _divmod(a: Sequence[int], b: Sequence[int], p: int) -> Tuple[Coeffs, Coeffs]:
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    rem = list(a)
    db = len(b) - 1
    inv_lead = pow(b[-1], p - 2, p)
    if len(rem) <= db:
        return (), _trim(rem)
    quot = [0] * (len(rem) - db)
    for k in range(len(rem) - 1 - db, -1, -1):
        coef = rem[k + db] * inv_lead % p
        quot[k] = coef
        if coef:
            for j, bj in enumerate(b):
                rem[k + j] = (rem[k + j] - coef * bj) % p
    return _trim(quot), _trim(rem[:db])


def _mod(a: Sequence[int], b: Sequence[int], p: int) -> Coeffs:
    return _divmod(a, b, p)[1]


def _powmod(base: Sequence[int], e: int, mod: Sequence[int], p: int) -> Coeffs:
    result: Coeffs = (1,)
    base = _mod(base, mod, p)
    while e:
        if e & 1:
            result = _mod(_mul(result, base, p), mod, p)
        e >>= 1
        if e:
            base = _mod(_mul(base, base, p), mod, p)
    return _mod(result, mod, p)


def _gcd(a: Sequence[int], b: Sequence[int], p: int) -> Coeffs:
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        a, b = b, _mod(a, b, p)
    if not a:
        return ()
    inv = pow(a[-1], p - 2, p)
    return tuple(v * inv % p for v in a)


# -- Poly ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Poly:
    """Polynomial over F_p, coefficients lowest degree first."""

    coeffs: Coeffs
    p: int

    def __post_init__(self):
        object.__setattr__(self, "coeffs", _trim([int(c) % self.p for c in self.coeffs]))

    @classmethod
    def parse(cls, text: str, p: int) -> "Poly":
        """Parse a low-first coefficient list such as ``"2,0,1"``."""
        try:
            return cls(tuple(int(t) for t in text.split(",")), p)
        except ValueError:
            raise ParameterError(f"bad coefficient list {text!r}") from None

    @classmethod
    def x_minus(cls, alpha: int, p: int) -> "Poly":
        return cls((-alpha, 1), p)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def _check(self, other: "Poly") -> None:
        if not isinstance(other, Poly):
            raise TypeError("Poly operand expected")
        if other.p != self.p:
            raise SizeMismatch(f"field mismatch: F_{self.p} vs F_{other.p}")

    def __add__(self, other: "Poly") -> "Poly":
        self._check(other)
        return Poly(_add(self.coeffs, other.coeffs, self.p), self.p)

    def __sub__(self, other: "Poly") -> "Poly":
        self._check(other)
        return Poly(_sub(self.coeffs, other.coeffs, self.p), self.p)

    def __mul__(self, other: "Poly") -> "Poly":
        self._check(other)
        return Poly(_mul(self.coeffs, other.coeffs, self.p), self.p)

    def __divmod__(self, other: "Poly") -> Tuple["Poly", "Poly"]:
        self._check(other)
        q, r = _divmod(self.coeffs, other.coeffs, self.p)
        return Poly(q, self.p), Poly(r, self.p)

    def __mod__(self, other: "Poly") -> "Poly":
        return divmod(self, other)[1]

    def __floordiv__(self, other: "Poly") -> "Poly":
        return divmod(self, other)[0]

    def __call__(self, x: int) -> int:
        acc = 0
        for c in reversed(self.coeffs):
            acc = (acc * x + c) % self.p
        return acc

    def gcd(self, other: "Poly") -> "Poly":
        self._check(other)
        return Poly(_gcd(self.coeffs, other.coeffs, self.p), self.p)

    def pow_mod(self, e: int, mod: "Poly") -> "Poly":
        self._check(mod)
        return Poly(_powmod(self.coeffs, e, mod.coeffs, self.p), self.p)

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for i, c in enumerate(self.coeffs):
            terms.append(str(c) if i == 0 else f"{c}*x" if i == 1 else f"{c}*x^{i}")
        return " + ".join(terms)

    def to_list_string(self) -> str:
        return ",".join(str(c) for c in self.coeffs)


# -- irreducibility ---------------------------------------------------------------

def _prime_factors(m: int) -> List[int]:
    out, k = [], 2
    while k * k <= m:
        if m % k == 0:
            out.append(k)
            while m % k == 0:
                m //= k
        k += 1
    if m > 1:
        out.append(m)
    return out


def is_irreducible(f: Poly) -> bool:
    """Rabin's test: x^(p^m) = x mod f and gcd(x^(p^(m/r)) - x, f) = 1 for primes r | m."""
    m, p = f.degree, f.p
    if m < 1:
        return False
    if m == 1:
        return True
    monic = Poly(tuple(c * pow(f.coeffs[-1], p - 2, p) for c in f.coeffs), p)
    x = Poly((0, 1), p)
    for r in _prime_factors(m):
        h = x.pow_mod(p ** (m // r), monic) - x
        if monic.gcd(h).degree != 0:
            return False
    return (x.pow_mod(p ** m, monic) - x).is_zero()


@lru_cache(maxsize=None)
def find_irreducible(p: int, m: int) -> Poly:
    """First monic irreducible of degree m, ordering (c_{m-1}, ..., c_0) ascending."""
    if m < 1:
        raise ParameterError("degree must be at least 1")
    if not is_prime(p):
        raise ParameterError(f"{p} is not prime")
    for high_first in product(range(p), repeat=m):
        f = Poly(tuple(reversed(high_first)) + (1,), p)
        if is_irreducible(f):
            return f
    raise AssertionError("unreachable: irreducibles exist in every degree")


# -- residue group G = (F_p[x]/(f^2))^x -------------------------------------------

@dataclass(frozen=True)
class PolyResidue:
    """Class of ``value`` in F_p[x]/(f^2)."""

    value: Coeffs
    f: Poly

    def __post_init__(self):
        p = self.f.p
        v = _mod([int(c) % p for c in self.value], self.modulus_coeffs, p)
        object.__setattr__(self, "value", v)

    @classmethod
    def of(cls, poly: Poly, f: Poly) -> "PolyResidue":
        if poly.p != f.p:
            raise SizeMismatch("field mismatch")
        return cls(poly.coeffs, f)

    @classmethod
    def one(cls, f: Poly) -> "PolyResidue":
        return cls((1,), f)

    @property
    def p(self) -> int:
        return self.f.p

    @property
    def modulus_coeffs(self) -> Coeffs:
        return _mul(self.f.coeffs, self.f.coeffs, self.f.p)

    def is_unit(self) -> bool:
        return _gcd(self.value, self.f.coeffs, self.p) == (1,)

    def _check(self, other: "PolyResidue") -> None:
        if not isinstance(other, PolyResidue):
            raise TypeError("PolyResidue operand expected")
        if other.f != self.f:
            raise SizeMismatch("modulus mismatch")

    def __mul__(self, other: "PolyResidue") -> "PolyResidue":
        self._check(other)
        return PolyResidue(_mul(self.value, other.value, self.p), self.f)

    def __pow__(self, e: int) -> "PolyResidue":
        if e < 0:
            raise ParameterError("negative exponent")
        return PolyResidue(_powmod(self.value, e, self.modulus_coeffs, self.p), self.f)


def quotient_map(h: PolyResidue) -> Tuple[int, ...]:
    """Homomorphism G -> (F_p^m, +) with kernel exactly G^p.

    Raising to ``p^m - 1`` kills the cyclic part of G and leaves
    ``u = 1 + f*g`` with deg g < m; the coefficients of g are returned.
    """
    if not h.is_unit():
        raise ParameterError("residue shares a factor with f; not a unit")
    f, p = h.f, h.p
    m = f.degree
    u = h ** (p ** m - 1)
    g, rem = _divmod(_sub(u.value, (1,), p), f.coeffs, p)
    if rem:
        raise AssertionError("h^(p^m-1) is not 1 mod f")
    return tuple(g) + (0,) * (m - len(g))
