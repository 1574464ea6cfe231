"""Normal ordering in the localized enveloping algebra of osp(1|2) x osp(1|2).

Nine non-Cartan generators, ordered

    X(-2) < X(-1) < t(-2) < t(-1) < th < t(1) < t(2) < X(1) < X(2)

where X(k) are the diagonal root vectors, t(k) the anti-diagonal ones and
th the anti-diagonal Cartan element.  The diagonal Cartan H is absorbed
into the coefficient ring: coefficients are rational functions f(H) kept
on the left of each monomial, and cross generators via H -> H + k.

Elements are dicts  {monomial: RationalFunction}  with monomials stored as
ascending ((generator, exponent), ...) tuples; odd generators (|k| = 1)
appear with exponent at most 1, squares rewrite through the half-bracket.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Iterable, Sequence

from .coeffs import RF_ONE, RF_ZERO, Polynomial, RationalFunction, as_rf

Word = tuple  # ((gen, exp), ...) ascending


class MixedParityError(ValueError):
    """Super-bracket argument is not parity-homogeneous."""


@dataclass(frozen=True)
class GenInfo:
    index: int
    token: str
    diagonal: bool  # diagonal copy X vs anti-diagonal tilde
    root: int  # k with weight shift -k under H
    odd: bool


GENERATORS: tuple[GenInfo, ...] = tuple(
    GenInfo(i, tok, diag, root, abs(root) == 1)
    for i, (tok, diag, root) in enumerate(
        [
            ("X(-2)", True, -2),
            ("X(-1)", True, -1),
            ("t(-2)", False, -2),
            ("t(-1)", False, -1),
            ("th", False, 0),
            ("t(1)", False, 1),
            ("t(2)", False, 2),
            ("X(1)", True, 1),
            ("X(2)", True, 2),
        ]
    )
)

TOKEN_TO_GEN = {g.token: g.index for g in GENERATORS}

# Convenient named indices.
XN2, XN1, TN2, TN1, TH, T1, T2, X1, X2 = range(9)

DIAGONAL_GENS = (XN2, XN1, X1, X2)
TILDE_GENS = (TN2, TN1, TH, T1, T2)
RAISING_GENS = (X1, X2)
LOWERING_GENS = (XN2, XN1)

_ROOT = tuple(g.root for g in GENERATORS)
_ODD = tuple(g.odd for g in GENERATORS)


def _base_bracket(j: int, k: int) -> dict[int, int]:
    """Supercommutator table of osp(1|2) on root labels; 0 stands for h.

    Returns {label: integer coefficient}.
    """
    if j == 0:
        return {k: -k} if k else {}
    if k == 0:
        return {j: j}
    table = {
        (1, 1): {2: -2},
        (-1, -1): {-2: 2},
        (1, -2): {-1: 1},
        (-2, 1): {-1: -1},
        (-1, 2): {1: 1},
        (2, -1): {1: -1},
        (1, -1): {0: 1},
        (-1, 1): {0: 1},
        (-2, 2): {0: 1},
        (2, -2): {0: -1},
    }
    return table.get((j, k), {})


class UeaElement:
    """Finite sum of PBW-ordered monomials with left RationalFunction coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms: dict[Word, RationalFunction] | None = None):
        clean = {m: c for m, c in (terms or {}).items() if c}
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, *a):  # pragma: no cover
        raise AttributeError("UeaElement is immutable")

    # -- constructors -------------------------------------------------
    @classmethod
    def zero(cls) -> "UeaElement":
        return _ZERO

    @classmethod
    def one(cls) -> "UeaElement":
        return _ONE

    @classmethod
    def gen(cls, g: int) -> "UeaElement":
        return cls({((g, 1),): RF_ONE})

    @classmethod
    def coeff(cls, f) -> "UeaElement":
        return cls({(): as_rf(f)})

    @classmethod
    def monomial(cls, word: Word, c=RF_ONE) -> "UeaElement":
        return cls({word: as_rf(c)})

    # -- structure ----------------------------------------------------
    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        if not isinstance(other, UeaElement):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __iter__(self):
        return iter(self.terms.items())

    def __add__(self, other: "UeaElement") -> "UeaElement":
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, RF_ZERO) + c
        return UeaElement(out)

    def __neg__(self) -> "UeaElement":
        return UeaElement({m: -c for m, c in self.terms.items()})

    def __sub__(self, other: "UeaElement") -> "UeaElement":
        return self + (-other)

    def scale(self, f) -> "UeaElement":
        f = as_rf(f)
        return UeaElement({m: f * c for m, c in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, UeaElement):
            return mul(self, other)
        return NotImplemented

    def __rmul__(self, other):
        # scalar * element, scalar in the coefficient ring (acts from the left)
        return self.scale(other)

    def parity(self) -> int:
        """0 or 1 for homogeneous elements; raises MixedParityError otherwise."""
        ps = {word_parity(m) for m in self.terms} or {0}
        if len(ps) > 1:
            raise MixedParityError("element mixes even and odd monomials")
        return ps.pop()

    def support_degrees(self) -> set[int]:
        return {word_degree(m) for m in self.terms}

    def max_degree(self) -> int:
        return max((word_degree(m) for m in self.terms), default=0)

    # -- coset reductions ---------------------------------------------
    def mod_i(self) -> "UeaElement":
        """Canonical representative modulo the left ideal generated by X(1), X(2)."""
        return UeaElement(
            {m: c for m, c in self.terms.items() if not any(g in (X1, X2) for g, _ in m)}
        )

    def mod_ii(self) -> "UeaElement":
        """Canonical representative modulo g_-*U + U*g_+ (pure tilde monomials)."""
        return UeaElement(
            {
                m: c
                for m, c in self.terms.items()
                if all(g not in (XN2, XN1, X1, X2) for g, _ in m)
            }
        )

    def is_pure_tilde(self) -> bool:
        return all(
            g not in (XN2, XN1, X1, X2) for m in self.terms for g, _ in m
        )

    def __repr__(self):
        from .text import render_uea

        return f"UeaElement({render_uea(self)})"


_ZERO = UeaElement({})
_ONE = UeaElement({(): RF_ONE})


def word_degree(m: Word) -> int:
    return sum(e for _, e in m)


def word_parity(m: Word) -> int:
    return sum(e for g, e in m if _ODD[g]) & 1


def word_weight(m: Word) -> int:
    """H-weight: eigenvalue of ad H, i.e. -sum(root * exponent)."""
    return -sum(_ROOT[g] * e for g, e in m)


def word_root_sum(m: Word) -> int:
    return sum(_ROOT[g] * e for g, e in m)


def word_letters(m: Word) -> list[int]:
    out = []
    for g, e in m:
        out.extend([g] * e)
    return out


@lru_cache(maxsize=None)
def commutator_table(a: int, b: int) -> UeaElement:
    """[a, b] for single generators, as a canonical element.

    Weight-zero diagonal brackets land in the coefficient ring as the
    polynomial H (or -H).
    """
    ga, gb = GENERATORS[a], GENERATORS[b]
    base = _base_bracket(ga.root, gb.root)
    # Copy rule: diag/diag -> diag, mixed -> tilde, tilde/tilde -> diag.
    # th behaves as the tilde image of h.
    a_diag = ga.diagonal
    b_diag = gb.diagonal
    result_diag = a_diag == b_diag
    terms: dict[Word, RationalFunction] = {}
    for label, coeff in base.items():
        if label == 0:
            if result_diag:
                terms[()] = terms.get((), RF_ZERO) + coeff * as_rf(Polynomial.var())
            else:
                terms[((TH, 1),)] = terms.get(((TH, 1),), RF_ZERO) + as_rf(coeff)
        else:
            if result_diag:
                g = next(g.index for g in GENERATORS if g.diagonal and g.root == label)
            else:
                g = next(
                    g.index for g in GENERATORS if not g.diagonal and g.root == label
                )
            terms[((g, 1),)] = terms.get(((g, 1),), RF_ZERO) + as_rf(coeff)
    return UeaElement(terms)


def _swap_sign(a: int, b: int) -> int:
    return -1 if (_ODD[a] and _ODD[b]) else 1


# ---------------------------------------------------------------------------
# Straightening


def straighten(
    items: Sequence,
    coeff=RF_ONE,
    chooser: Callable[[list[int], list], int] | None = None,
) -> UeaElement:
    """Normal-order a raw word.

    `items` is a sequence of generator indices (ints) and coefficient values
    (anything `as_rf` accepts).  `chooser(violations, word)` picks which
    violation to rewrite next; the default takes the leftmost, which is also
    what the cached fast path uses.  Any strategy yields the same canonical
    element (confluence; property-tested).
    """
    out: dict[Word, RationalFunction] = {}
    agenda: list[tuple[RationalFunction, list]] = [(as_rf(coeff), _normalize_items(items))]
    while agenda:
        c, w = agenda.pop()
        if chooser is None:
            i = _first_violation(w)
            if i < 0:
                mono = _pack(w)
                if mono is not None:
                    m, f = mono
                    out[m] = out.get(m, RF_ZERO) + c * f
                continue
        else:
            viols = _violations(w)
            if not viols:
                mono = _pack(w)
                if mono is not None:
                    m, f = mono
                    out[m] = out.get(m, RF_ZERO) + c * f
                continue
            i = viols[chooser(viols, w)]
        for nc, nw in _rewrite_at(c, w, i):
            if nc:
                agenda.append((nc, nw))
    return UeaElement(out)


def _normalize_items(items: Sequence) -> list:
    out = []
    for it in items:
        if isinstance(it, int):
            out.append(it)
        else:
            out.append(as_rf(it))
    return out


def _first_violation(w: list) -> int:
    """Index of the leftmost violation, or -1 (same order as _violations)."""
    n = len(w)
    for i in range(n):
        it = w[i]
        if type(it) is int:
            if i + 1 < n:
                nxt = w[i + 1]
                if type(nxt) is int and (it > nxt or (it == nxt and _ODD[it])):
                    return i
        elif i > 0:
            return i
    return -1


def _violations(w: list) -> list[int]:
    viols = []
    for i, it in enumerate(w):
        if isinstance(it, RationalFunction):
            if i > 0:
                viols.append(i)
            continue
        if i + 1 < len(w):
            nxt = w[i + 1]
            if isinstance(nxt, int):
                if it > nxt or (it == nxt and _ODD[it]):
                    viols.append(i)
    # a leading coefficient is fine only if it is the whole prefix
    if w and isinstance(w[0], RationalFunction):
        viols = [v for v in viols if v != 0]
    return viols


def _rewrite_at(c: RationalFunction, w: list, i: int):
    it = w[i]
    if isinstance(it, RationalFunction):
        # move the coefficient one slot left across a generator
        left = w[i - 1]
        if isinstance(left, RationalFunction):
            yield c, w[: i - 1] + [left * it] + w[i + 1 :]
        else:
            yield c, w[: i - 1] + [it.shift(_ROOT[left]), left] + w[i + 1 :]
        return
    a, b = w[i], w[i + 1]
    pre, post = w[:i], w[i + 2 :]
    if a == b:  # odd square: g*g = (1/2)[g, g]
        half = Fraction(1, 2)
        for m, f in commutator_table(a, a):
            yield c, pre + [half * f] + word_letters(m) + post
        return
    sign = _swap_sign(a, b)
    yield (c if sign == 1 else -c), pre + [b, a] + post
    for m, f in commutator_table(a, b):
        yield c, pre + [f] + word_letters(m) + post


def _pack(w: list) -> tuple[Word, RationalFunction] | None:
    """Collapse a violation-free item list into (monomial, inner coefficient)."""
    f = RF_ONE
    mono: list[list[int]] = []
    for it in w:
        if isinstance(it, RationalFunction):
            f = f * it
            continue
        if mono and mono[-1][0] == it:
            mono[-1][1] += 1
        else:
            mono.append([it, 1])
    return tuple((g, e) for g, e in mono), f


@lru_cache(maxsize=None)
def _word_times_gen(word: Word, g: int) -> UeaElement:
    return straighten(word_letters(word) + [g])


@lru_cache(maxsize=None)
def _word_times_word(mu: Word, mv: Word) -> UeaElement:
    acc = {mu: RF_ONE}
    for g in word_letters(mv):
        nxt: dict[Word, RationalFunction] = {}
        for m, f in acc.items():
            for m2, f2 in _word_times_gen(m, g):
                nxt[m2] = nxt.get(m2, RF_ZERO) + f * f2
        acc = {m: f for m, f in nxt.items() if f}
    return UeaElement(acc)


def mul(u: UeaElement, v: UeaElement) -> UeaElement:
    """Product of canonical elements, returned in canonical form."""
    out: dict[Word, RationalFunction] = {}
    for mu, cu in u:
        su = word_root_sum(mu)
        for mv, cv in v:
            c = cu * cv.shift(su)
            if c.is_one():
                for m, f in _word_times_word(mu, mv):
                    out[m] = out.get(m, RF_ZERO) + f
            else:
                for m, f in _word_times_word(mu, mv):
                    out[m] = out.get(m, RF_ZERO) + c * f
    return UeaElement(out)


def normal_order(raw, chooser=None) -> UeaElement:
    """Normal-order raw input: an item sequence, an element, or a list of
    (coeff, items) terms."""
    if isinstance(raw, UeaElement):
        return raw
    raw = list(raw)
    if raw and isinstance(raw[0], (tuple, list)) and len(raw[0]) == 2 and isinstance(raw[0][1], (tuple, list)):
        total = UeaElement.zero()
        for c, items in raw:
            total = total + straighten(items, c, chooser)
        return total
    return straighten(raw, RF_ONE, chooser)


def super_bracket(u: UeaElement, v: UeaElement) -> UeaElement:
    """[u, v] = u v - (-1)^{|u||v|} v u for parity-homogeneous u, v."""
    if not u or not v:
        return UeaElement.zero()
    pu, pv = u.parity(), v.parity()
    uv = mul(u, v)
    vu = mul(v, u)
    return uv - vu if pu * pv == 0 else uv + vu


_THETA_IMAGE = {
    XN2: (X2, -1),
    XN1: (X1, 1),
    TN2: (T2, -1),
    TN1: (T1, 1),
    TH: (TH, 1),
    T1: (TN1, 1),
    T2: (TN2, -1),
    X1: (XN1, 1),
    X2: (XN2, -1),
}


def theta(u: UeaElement) -> UeaElement:
    """Involutive anti-automorphism: reverses products, fixes the Cartan,
    sends root vectors k -> -k with sign -(-1)^parity."""
    total = UeaElement.zero()
    for m, c in u:
        sign = 1
        rev: list = []
        for g in reversed(word_letters(m)):
            img, s = _THETA_IMAGE[g]
            sign *= s
            rev.append(img)
        rev.append(c)  # theta fixes f(H); it ends up on the right, to be shifted left
        total = total + straighten(rev, sign)
    return total


def reduce_mod_I(u: UeaElement) -> UeaElement:
    return u.mod_i()


def reduce_mod_II(u: UeaElement) -> UeaElement:
    return u.mod_ii()


def tilde_word(exponents: Sequence[int]) -> Word:
    """Monomial t(-2)^p t(-1)^q th^r t(1)^s t(2)^t from (p, q, r, s, t)."""
    p, q, r, s, t = exponents
    if q > 1 or s > 1:
        raise ValueError("odd exponents must be at most 1")
    word = []
    for g, e in zip(TILDE_GENS, (p, q, r, s, t)):
        if e:
            word.append((g, e))
    return tuple(word)


def tilde_exponents(m: Word) -> tuple[int, int, int, int, int]:
    exps = [0, 0, 0, 0, 0]
    for g, e in m:
        if g not in TILDE_GENS:
            raise ValueError("not a pure tilde monomial")
        exps[TILDE_GENS.index(g)] = e
    return tuple(exps)
