"""Shared test helpers: random elements and an independent reference
multiplication that reorders one adjacent letter pair at a time."""

from __future__ import annotations

import random
from fractions import Fraction

from dmodloc.weyl import WeylContext, WeylElement


def rand_element(rng: random.Random, ctx: WeylContext, max_terms: int = 3,
                 max_exp: int = 2, fractions: bool = False,
                 allow_zero: bool = False) -> WeylElement:
    terms = {}
    for _ in range(rng.randint(0 if allow_zero else 1, max_terms)):
        mono = tuple(rng.randint(0, max_exp) for _ in range(ctx.ngens))
        num = rng.randint(-5, 5)
        if fractions:
            coeff = Fraction(num, rng.randint(1, 4))
        else:
            coeff = Fraction(num)
        if coeff:
            terms[mono] = terms.get(mono, 0) + coeff
    return WeylElement(ctx, terms)


def _mono_to_word(ctx: WeylContext, mono) -> tuple:
    word = []
    for idx, exp in enumerate(mono):
        word.extend([idx] * exp)
    return tuple(word)


def _word_normalize(ctx: WeylContext, word: tuple, coeff) -> dict:
    """Sort a word of generator letters using single commutator steps."""
    conj = {}
    for xi, di in ctx.pairs:
        conj[di] = xi
    out = {}
    stack = [(list(word), coeff)]
    while stack:
        w, c = stack.pop()
        for k in range(len(w) - 1):
            a, b = w[k], w[k + 1]
            if a <= b:
                continue
            swapped = w[:k] + [b, a] + w[k + 2:]
            if conj.get(a) == b:
                # Dx followed by its x: Dx*x = x*Dx + h^2 (or + 1)
                extra = w[:k] + ([ctx.h_index, ctx.h_index]
                                 if ctx.has_hom else []) + w[k + 2:]
                stack.append((extra, c))
            stack.append((swapped, c))
            break
        else:
            mono = [0] * ctx.ngens
            for letter in w:
                mono[letter] += 1
            key = tuple(mono)
            out[key] = out.get(key, 0) + c
    return out


def naive_mul(p: WeylElement, q: WeylElement) -> WeylElement:
    """Reference product: concatenate letter words, fix one inversion at a
    time with Dx*x -> x*Dx + 1 (or + h^2); independent of the closed-form
    reordering used by the library."""
    ctx = p.ctx
    acc = {}
    for m1, c1 in p.terms.items():
        for m2, c2 in q.terms.items():
            word = _mono_to_word(ctx, m1) + _mono_to_word(ctx, m2)
            for mono, c in _word_normalize(ctx, word, c1 * c2).items():
                acc[mono] = acc.get(mono, 0) + c
    return WeylElement(ctx, acc)
