"""Families of functions with a nonnegative derivative of a given order.

A function whose ``(m+1)``-th derivative is nonnegative is m-convex, so each
generator below yields m-convex test functions: exponentials, even-shifted
monomials, truncated powers (the derivative is nonnegative in the
distributional sense) and random conical combinations of those.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .expr import Expr, differentiate, parse


@dataclass(frozen=True)
class CorpusFunction:
    name: str
    text: str
    expr: Expr = field(compare=False, repr=False)

    @classmethod
    def from_text(cls, text: str, name: str | None = None) -> "CorpusFunction":
        return cls(name or text, text, parse(text))

    def __call__(self, x: float) -> float:
        return self.expr.evaluate(x)

    def derivative(self, order: int = 1) -> Expr:
        return differentiate(self.expr, order)

    @property
    def kinked(self) -> bool:
        return self.expr.kinked


def _fmt(v: float) -> str:
    return repr(round(v, 6))


def _shift(c: float) -> str:
    """``x - c`` as text without a doubled sign."""
    c = round(c, 6)
    return f"x - {c!r}" if c >= 0 else f"x + {-c!r}"


def generators(m: int, rng: random.Random) -> list[str]:
    """Expression texts with nonnegative derivative of order ``m + 1``."""
    d = m + 1
    out = ["exp(x)"]
    for c in (0.5, 1.5, 2.0, 3.0):
        out.append(f"exp({c}*x)")
    if d % 2 == 0:
        out += ["exp(-x)", "exp(-2.0*x)", "exp(x) + exp(-x)"]
    out += [f"x^{d}", f"x^{d + 2}", f"x^{d + 4}"]
    for p in (d, d + 1, d + 3):
        c = rng.uniform(-0.9, 0.9)
        out.append(f"max({_shift(c)}, 0)^{p}")
    if d % 2 == 0:
        c = rng.uniform(-0.9, 0.9)
        out.append(f"max({_fmt(c)} - x, 0)^{d}")
    return out


def convex_corpus(m: int, size: int = 25, seed: int = 0) -> list[CorpusFunction]:
    """``size`` m-convex functions; the tail is random conical combinations."""
    if m < 1:
        raise ValueError(f"m must be positive, got {m}")
    rng = random.Random(seed * 1009 + m)
    base = generators(m, rng)
    texts = list(base[:size])
    while len(texts) < size:
        k = rng.randint(2, 3)
        picks = rng.sample(base, k)
        terms = [f"{_fmt(rng.uniform(0.1, 2.0))}*({t})" for t in picks]
        texts.append(" + ".join(terms))
    return [CorpusFunction.from_text(t) for t in texts]


def random_polynomial(degree: int, rng: random.Random) -> CorpusFunction:
    """A polynomial of exactly ``degree`` with coefficients in [-1, 1]."""
    coefs = [rng.uniform(-1.0, 1.0) for _ in range(degree + 1)]
    text = " + ".join(f"({_fmt(c)})*x^{j}" for j, c in enumerate(coefs))
    return CorpusFunction.from_text(text)
