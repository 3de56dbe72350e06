"""One-variable states given by Jacobi recursion data.

A state mu on polynomials in one variable is encoded by its recursion
coefficients: monic orthogonal polynomials satisfy

    x * P_n(x) = P_{n+1}(x) + beta_n * P_n(x) + gamma_n * P_{n-1}(x),

with P_0 = 1 and gamma_0 = 0 by convention.  Moments are recovered by
expanding powers of x in the P-basis and reading off the constant
coefficient, so everything stays exact.

A finite stored prefix plus an extension policy ("repeat" the last entry,
extend by "zero", or "error" out) describes an eventually-constant
coefficient sequence.  A zero gamma_n marks a state supported on n points;
once a gamma is zero, all later gammas must be zero as well.

JacobiData is an immutable value type and every operation here is pure.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping

from .ncpoly import NCPolynomial, format_rational, parse_rational

EXTENSION_POLICIES = ("repeat", "zero", "error")

_POLICY_ALIASES = {"repeat-last": "repeat", "repeat_last": "repeat"}


class JacobiRangeError(IndexError):
    """Raised when data under the "error" extension policy is exhausted."""


@dataclass(frozen=True)
class JacobiData:
    """Jacobi coefficients (beta_0, beta_1, ...) and (gamma_1, gamma_2, ...)."""

    beta: tuple[Fraction, ...]
    gamma: tuple[Fraction, ...]
    extend: str = "repeat"

    def __post_init__(self):
        object.__setattr__(self, "beta", tuple(Fraction(b) for b in self.beta))
        object.__setattr__(self, "gamma", tuple(Fraction(g) for g in self.gamma))
        policy = _POLICY_ALIASES.get(self.extend, self.extend)
        if policy not in EXTENSION_POLICIES:
            raise ValueError(f"unknown extension policy {self.extend!r}")
        object.__setattr__(self, "extend", policy)
        seen_zero = False
        for g in self.gamma:
            if g < 0:
                raise ValueError(f"negative gamma {g} would not define a state")
            if seen_zero and g != 0:
                raise ValueError("gamma must stay zero after its first zero entry")
            if g == 0:
                seen_zero = True

    def beta_at(self, n: int) -> Fraction:
        if n < 0:
            raise ValueError("beta index must be nonnegative")
        if n < len(self.beta):
            return self.beta[n]
        if self.extend == "repeat":
            return self.beta[-1] if self.beta else Fraction(0)
        if self.extend == "zero":
            return Fraction(0)
        raise JacobiRangeError(f"beta_{n} beyond stored prefix of length {len(self.beta)}")

    def gamma_at(self, n: int) -> Fraction:
        """gamma_n for n >= 1; gamma_0 is identically zero."""
        if n < 0:
            raise ValueError("gamma index must be nonnegative")
        if n == 0:
            return Fraction(0)
        if n - 1 < len(self.gamma):
            return self.gamma[n - 1]
        if self.extend == "repeat":
            return self.gamma[-1] if self.gamma else Fraction(0)
        if self.extend == "zero":
            return Fraction(0)
        raise JacobiRangeError(f"gamma_{n} beyond stored prefix of length {len(self.gamma)}")

    def support_size(self) -> int | None:
        """Number of support points if finite, else None.

        The state is supported on n points exactly when gamma_n is the first
        vanishing gamma.
        """
        for idx, g in enumerate(self.gamma):
            if g == 0:
                return idx + 1
        if self.extend == "zero":
            return len(self.gamma) + 1
        if self.extend == "repeat" and not self.gamma:
            return 1  # every gamma extends to zero
        return None

    def is_faithful_to(self, depth: int) -> bool:
        """True when gamma_1 .. gamma_depth are all strictly positive."""
        return all(self.gamma_at(n) > 0 for n in range(1, depth + 1))


def orthogonal_polynomial(
    data: JacobiData, n: int, *, letter: int = 1, alphabet: int = 1
) -> NCPolynomial:
    """Monic orthogonal polynomial P_n in the variable x_letter."""
    if n < 0:
        raise ValueError("polynomial index must be nonnegative")
    prev = NCPolynomial.one(alphabet)
    if n == 0:
        return prev
    x = NCPolynomial.variable(letter, alphabet)
    current = x - data.beta_at(0)
    for k in range(1, n):
        current, prev = (x - data.beta_at(k)) * current - data.gamma_at(k) * prev, current
    return current


def moment(data: JacobiData, n: int) -> Fraction:
    """n-th moment mu[x^n], via the transfer action on the P-basis."""
    if n < 0:
        raise ValueError("moment index must be nonnegative")
    vec = [Fraction(1)]
    for _ in range(n):
        nxt = [Fraction(0)] * (len(vec) + 1)
        for m, coeff in enumerate(vec):
            if not coeff:
                continue
            nxt[m + 1] += coeff
            b = data.beta_at(m)
            if b:
                nxt[m] += coeff * b
            if m:
                g = data.gamma_at(m)
                if g:
                    nxt[m - 1] += coeff * g
        vec = nxt
    return vec[0]


def expectation(data: JacobiData, poly: NCPolynomial) -> Fraction:
    """Apply the state to a polynomial in a single variable."""
    total = Fraction(0)
    for word, coeff in poly.terms.items():
        if len(set(word)) > 1:
            raise ValueError("expectation only applies to one-variable polynomials")
        total += coeff * moment(data, len(word))
    return total


def moment_sequence(data: JacobiData, order: int) -> list[Fraction]:
    return [moment(data, n) for n in range(order + 1)]


PRESET_NAMES = ("semicircle", "q-gaussian", "gaussian", "point-mass", "bernoulli", "custom")


def preset(name: str, *, terms: int = 24, **params) -> JacobiData:
    """Build common Jacobi data by name.

    Presets whose coefficient sequences are not eventually constant
    (q-gaussian, gaussian) materialize ``terms`` entries and repeat the last
    one beyond that, so moments are exact up to order ~2*terms.
    """
    if name == "semicircle":
        _reject_params(name, params)
        return JacobiData(beta=(Fraction(0),), gamma=(Fraction(1),))
    if name == "q-gaussian":
        q = _required_rational(name, params, "q")
        _reject_params(name, params)
        if q == 1:
            raise ValueError('q = 1 is not allowed; use preset("gaussian") for that limit')
        gamma = []
        power = Fraction(1)
        total = Fraction(0)
        for _ in range(terms):
            total += power  # gamma_n = 1 + q + ... + q^(n-1)
            power *= q
            gamma.append(total)
        return JacobiData(beta=(Fraction(0),), gamma=tuple(gamma))
    if name == "gaussian":
        _reject_params(name, params)
        return JacobiData(
            beta=(Fraction(0),), gamma=tuple(Fraction(n) for n in range(1, terms + 1))
        )
    if name == "point-mass":
        c = _required_rational(name, params, "c")
        _reject_params(name, params)
        return JacobiData(beta=(c,), gamma=(Fraction(0),))
    if name == "bernoulli":
        p = _required_rational(name, params, "p")
        a = _required_rational(name, params, "a")
        b = _required_rational(name, params, "b")
        _reject_params(name, params)
        if not 0 <= p <= 1:
            raise ValueError("bernoulli weight p must lie in [0, 1]")
        mean = p * a + (1 - p) * b
        variance = p * a * a + (1 - p) * b * b - mean * mean
        return JacobiData(beta=(mean, a + b - mean), gamma=(variance, Fraction(0)))
    if name == "custom":
        beta = tuple(Fraction(x) for x in params.pop("beta", ()))
        gamma = tuple(Fraction(x) for x in params.pop("gamma", ()))
        extend = params.pop("extend", "repeat")
        _reject_params(name, params)
        return JacobiData(beta=beta, gamma=gamma, extend=extend)
    raise ValueError(f"unknown preset {name!r}; known: {', '.join(PRESET_NAMES)}")


def _required_rational(name: str, params: dict, key: str) -> Fraction:
    if key not in params:
        raise ValueError(f"preset {name!r} requires parameter {key!r}")
    return Fraction(params.pop(key))


def _reject_params(name: str, params: Mapping) -> None:
    if params:
        raise ValueError(f"preset {name!r} got unexpected parameters {sorted(params)}")


def jacobi_to_json(data: JacobiData) -> dict:
    return {
        "beta": [format_rational(b) for b in data.beta],
        "gamma": [format_rational(g) for g in data.gamma],
        "extend": data.extend,
    }


def jacobi_from_json(obj: Mapping) -> JacobiData:
    """Read {"beta": [...], "gamma": [...], "extend": ...} or {"preset": ...}."""
    if "preset" in obj:
        params = {k: v for k, v in obj.items() if k != "preset"}
        name = obj["preset"]
        if "terms" in params:
            params["terms"] = int(params.pop("terms"))
        for key in list(params):
            if key in ("q", "c", "p", "a", "b"):
                params[key] = parse_rational(params[key])
        return preset(name, **params)
    return JacobiData(
        beta=tuple(parse_rational(x) for x in obj.get("beta", [])),
        gamma=tuple(parse_rational(x) for x in obj.get("gamma", [])),
        extend=obj.get("extend", "repeat"),
    )
