"""Exact big-integer evaluation of the named constant recurrences used
by the covering, dichotomy and separability machinery.

Every evaluator is pure and exact. Tower-type growth is refused loudly
through a decimal digit cap (default 10000), estimated before any large
loop or exponentiation runs; nothing is ever silently truncated.

Greek names follow the recurrences they evaluate:

    beta(a, q, n)        beta_1 = (2a)^(a(q-2)),  beta_n = a(beta_{n-1} + beta_1)
    gamma(a, m)          product_threshold(m, 2, a)
    f(a, m, n)           f(1, n) = n,  f(m, n) = f(m-1, (2*gamma_{m-1})^(gamma_{m-1}(n-1)))
    zeta(a, q, m)        subset_threshold(2^(2m^2), 2, max(2a, q, 3))
    eta(a, q, m)         f(a+1, m, zeta(a, q, m))
    hit_vs_anti_bound    sum_{m=1..b} m * eta_m
    end_forcing_bound    subset_threshold(b^2, 2, s)
    disentangle_bounds   (subset_threshold(2^(6brt), 3, max(3a, s, 6)),
                          product_threshold(2^(2 c^2 r^2), c, max(a, t, 2)))
                         with c = C(first, 2)
    far_bounds           theta, kappa, lambda, mu, nu and the derived
                         hitting/pair thresholds for the capped-length
                         path dichotomy
    separability_bounds  xi, xi', rho, sigma, tau and the final loose
                         separability thresholds
    assembly_bound       10c + 5d
    packing_domination_bound   3r^2 + base
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .errors import CapExceeded
from .ramsey import (DEFAULT_DIGIT_CAP, _check_pow_digits, _digits_of,
                     product_threshold, subset_threshold)


def twograph_bound(a: int, q: int, digit_cap: int = DEFAULT_DIGIT_CAP) -> int:
    """(2a)^(a(q-1)): the covering bound for two graphs."""
    if a < 1 or q < 1:
        raise ValueError("arguments must be positive")
    exp = a * (q - 1)
    _check_pow_digits(2 * a, exp, 0.0, digit_cap)
    return (2 * a) ** exp


def beta(a: int, q: int, n: int, digit_cap: int = DEFAULT_DIGIT_CAP) -> int:
    """n-th term of the covering recurrence for parameters (a, q)."""
    if a < 1 or n < 1:
        raise ValueError("arguments must be positive")
    if q < 2:
        raise ValueError("beta requires q >= 2")
    exp = a * (q - 2)
    _check_pow_digits(2 * a, exp, 0.0, digit_cap)
    beta1 = (2 * a) ** exp
    if a == 1:
        val = n * beta1  # the recurrence telescopes to n * beta_1
        if _digits_of(val) > digit_cap:
            raise CapExceeded(f"beta_{n} exceeds {digit_cap} digits")
        return val
    if (n - 1) * 30103 > digit_cap * 100000:
        raise CapExceeded(f"beta_{n} exceeds {digit_cap} digits")
    val = beta1
    for _ in range(n - 1):
        val = a * (val + beta1)
        if _digits_of(val) > digit_cap:
            raise CapExceeded(f"beta_{n} exceeds {digit_cap} digits")
    return val


def gamma(a: int, m: int, digit_cap: int = DEFAULT_DIGIT_CAP) -> int:
    """Product-threshold plug-in used by the many-graph recursion."""
    return product_threshold(m, 2, a, digit_cap)


def f(a: int, m: int, n: int, digit_cap: int = DEFAULT_DIGIT_CAP) -> int:
    """Many-graph covering bound f(m, n) for the fixed parameter a."""
    if a < 1 or m < 1 or n < 1:
        raise ValueError("arguments must be positive")
    val = n
    for k in range(m - 1, 0, -1):
        g = gamma(a, k, digit_cap)
        if _digits_of(val) > 30:
            # exponent gamma*(val-1) already dwarfs any digit cap
            raise CapExceeded(f"f({m},{n}) exceeds {digit_cap} digits")
        exp = g * (val - 1)
        _check_pow_digits(2 * g, exp, 0.0, digit_cap)
        val = (2 * g) ** exp if exp else 1
    return val


def zeta(a: int, q: int, m: int, digit_cap: int = DEFAULT_DIGIT_CAP) -> int:
    if a < 1 or q < 1 or m < 1:
        raise ValueError("arguments must be positive")
    if 2 * m * m > 10 ** 6:
        raise CapExceeded("palette exponent 2m^2 too large to even materialize")
    palette = 2 ** (2 * m * m)
    return subset_threshold(palette, 2, max(2 * a, q, 3), digit_cap)


def eta(a: int, q: int, m: int, digit_cap: int = DEFAULT_DIGIT_CAP) -> int:
    return f(a + 1, m, zeta(a, q, m, digit_cap), digit_cap)


def hit_vs_anti_bound(a: int, b: int, q: int, digit_cap: int = DEFAULT_DIGIT_CAP) -> int:
    """Hitting-set threshold of the hit-vs-anticomplete dichotomy."""
    if b < 1:
        raise ValueError("b must be positive")
    return sum(m * eta(a, q, m, digit_cap) for m in range(1, b + 1))


def end_forcing_bound(b: int, s: int, digit_cap: int = DEFAULT_DIGIT_CAP) -> int:
    """System size that forces s members with identical path ends."""
    if b < 1 or s < 1:
        raise ValueError("arguments must be positive")
    return subset_threshold(b * b, 2, s, digit_cap)


def disentangle_bounds(a: int, b: int, r: int, s: int, t: int,
                       digit_cap: int = DEFAULT_DIGIT_CAP) -> tuple[int, int]:
    """(system size, family size) needed by the disentangling extraction."""
    for name, v in (("a", a), ("b", b), ("r", r), ("s", s), ("t", t)):
        if v < 1:
            raise ValueError(f"{name} must be positive")
    if 6 * b * r * t > 10 ** 6:
        raise CapExceeded("palette exponent 6brt too large to even materialize")
    c_val = subset_threshold(2 ** (6 * b * r * t), 3, max(3 * a, s, 6), digit_cap)
    if _digits_of(c_val) > 15:
        raise CapExceeded("pair count C(c,2) too large for the product palette")
    cc = math.comb(c_val, 2)
    if 2 * cc * cc * r * r > 10 ** 6:
        raise CapExceeded("palette exponent 2c^2r^2 too large to even materialize")
    d_val = product_threshold(2 ** (2 * cc * cc * r * r), cc, max(a, t, 2), digit_cap)
    return c_val, d_val


def far_bounds(a: int, b: int, q: int, r: int,
               digit_cap: int = DEFAULT_DIGIT_CAP) -> dict[str, int]:
    """Constants of the capped-length path dichotomy."""
    theta, nu = disentangle_bounds(a, 2, r, 2 * a, 1, digit_cap)
    kappa = end_forcing_bound(b, theta, digit_cap)
    lam = max(q, kappa)
    mu = subset_threshold(2, 2, lam, digit_cap)
    c_val = hit_vs_anti_bound(a, b, mu, digit_cap)
    d_val = hit_vs_anti_bound(a, r, b * b * nu, digit_cap)
    return {"theta": theta, "kappa": kappa, "lambda": lam, "mu": mu, "nu": nu,
            "c": c_val, "d": d_val}


def separability_bounds(a: int, b: int, r: int,
                        digit_cap: int = DEFAULT_DIGIT_CAP) -> dict[str, int]:
    """Constants making every K_{a,a}-free F-free graph (|V(F)| = r)
    loosely alpha-separable."""
    xi, xi_prime = disentangle_bounds(a, 2, r, r + 1, r, digit_cap)
    rho = end_forcing_bound(b, xi, digit_cap)
    far = far_bounds(a, b, rho, r, digit_cap)
    tau = hit_vs_anti_bound(a, r, b * b * xi_prime, digit_cap)
    return {"xi": xi, "xi_prime": xi_prime, "rho": rho,
            "sigma": far["d"], "tau": tau,
            "c": far["c"], "d": far["d"] + tau}


def dichotomy_constants(a: int, b: int, q: int, r: int,
                        digit_cap: int = DEFAULT_DIGIT_CAP) -> dict[str, int]:
    """Named bundle of every dichotomy/separability constant for one
    (a, b, q, r). Raises CapExceeded on the first value over the cap."""
    out = far_bounds(a, b, q, r, digit_cap)
    sep = separability_bounds(a, b, r, digit_cap)
    out.update({f"sep_{k}": v for k, v in sep.items()})
    return out


def assembly_bound(c: int, d: int) -> int:
    """Decomposition measure guaranteed by the separator assembly."""
    if c < 0 or d < 0:
        raise ValueError("arguments must be nonnegative")
    return 10 * c + 5 * d


def packing_domination_bound(r: int, base: int) -> int:
    """Domination bound after packing subdivided claws: 3r^2 + base."""
    if r < 1 or base < 0:
        raise ValueError("bad arguments")
    return 3 * r * r + base


@dataclass
class BoundsTable:
    """Evaluator bundle with a shared digit cap, mainly for the CLI."""

    digit_cap: int = DEFAULT_DIGIT_CAP
    registry: dict = field(default_factory=dict, init=False, repr=False)

    def __post_init__(self):
        cap = self.digit_cap
        self.registry = {
            "twograph": (("a", "q"), lambda a, q: twograph_bound(a, q, cap)),
            "beta": (("a", "q", "n"), lambda a, q, n: beta(a, q, n, cap)),
            "gamma": (("a", "m"), lambda a, m: gamma(a, m, cap)),
            "f": (("a", "m", "n"), lambda a, m, n: f(a, m, n, cap)),
            "zeta": (("a", "q", "m"), lambda a, q, m: zeta(a, q, m, cap)),
            "eta": (("a", "q", "m"), lambda a, q, m: eta(a, q, m, cap)),
            "hit_vs_anti": (("a", "b", "q"),
                            lambda a, b, q: hit_vs_anti_bound(a, b, q, cap)),
            "end_forcing": (("b", "s"), lambda b, s: end_forcing_bound(b, s, cap)),
            "subset_threshold": (("r", "s", "t"),
                                 lambda r, s, t: subset_threshold(r, s, t, cap)),
            "product_threshold": (("r", "s", "t"),
                                  lambda r, s, t: product_threshold(r, s, t, cap)),
            "assembly": (("c", "d"), assembly_bound),
            "packing_domination": (("r", "base"), packing_domination_bound),
        }

    def names(self) -> list[str]:
        return sorted(self.registry)

    def evaluate(self, name: str, args: list[int]) -> int:
        if name not in self.registry:
            raise ValueError(f"unknown constant {name!r}; known: {', '.join(self.names())}")
        argnames, fn = self.registry[name]
        if len(args) != len(argnames):
            raise ValueError(f"{name} expects {len(argnames)} arguments "
                             f"({', '.join(argnames)})")
        return fn(*args)
