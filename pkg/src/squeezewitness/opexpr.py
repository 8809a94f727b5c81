"""A small expression language for two-mode ladder-operator polynomials.

Expressions are sums of complex-weighted words over the alphabet
``a, ad, b, bd`` (annihilation/creation on modes A and B).  Two distinct
rewriting passes are provided and must not be confused:

* :func:`reorder` rewrites every word into the canonical shape
  ``ad^m a^n bd^p b^q`` while *preserving the operator*, i.e. it inserts
  the commutator corrections ``[a, ad] = [b, bd] = 1``.
* :func:`formal_normal_order` moves creation operators of the selected
  modes to the left *formally*, dropping the commutator corrections for
  those modes.  This is a prescription, not an operator identity; it is
  what turns a measured variance into a witness.

The textual syntax accepted by :func:`parse` covers sums/differences of
products of operator symbols, decimal literals, the imaginary unit ``i``,
phase factors ``cis(x)`` (meaning ``exp(i x)``), and ``(re,im)`` pairs as
emitted by the canonical printer.
"""

from __future__ import annotations

import cmath
import re
from functools import lru_cache
from typing import Iterable

__all__ = [
    "OperatorExpr",
    "ExpressionError",
    "ExpressionSyntaxError",
    "parse",
    "reorder",
    "formal_normal_order",
    "adjoint_product",
    "difference_observable",
]

LETTERS = ("a", "ad", "b", "bd")
MODE = {"a": "A", "ad": "A", "b": "B", "bd": "B"}
IS_DAGGER = {"a": False, "ad": True, "b": False, "bd": True}
CONJUGATE = {"a": "ad", "ad": "a", "b": "bd", "bd": "b"}
# Target letter order of a canonical word: ad^m a^n bd^p b^q.
PRIORITY = {"ad": 0, "a": 1, "bd": 2, "b": 3}

MAX_DEGREE = 8


class ExpressionError(ValueError):
    """Raised for invalid operator expressions (e.g. degree cap exceeded)."""


class ExpressionSyntaxError(ExpressionError):
    """Raised by :func:`parse`; carries the offending position."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class OperatorExpr:
    """An immutable sum of complex-weighted ladder-operator words.

    Words preserve the order in which operators were written; canonical
    form only sorts the *terms*, merges duplicates, and drops exact-zero
    coefficients.  Words longer than ``MAX_DEGREE`` letters are rejected.
    """

    __slots__ = ("_terms",)

    def __init__(self, terms: dict[tuple[str, ...], complex] | None = None):
        merged: dict[tuple[str, ...], complex] = {}
        for word, coeff in (terms or {}).items():
            word = tuple(word)
            for letter in word:
                if letter not in LETTERS:
                    raise ExpressionError(f"unknown operator letter {letter!r}")
            if len(word) > MAX_DEGREE:
                raise ExpressionError(
                    f"word degree {len(word)} exceeds the cap of {MAX_DEGREE}"
                )
            value = merged.get(word, 0j) + complex(coeff)
            merged[word] = value
        self._terms = {w: c for w, c in merged.items() if c != 0}

    @classmethod
    def constant(cls, value: complex) -> "OperatorExpr":
        return cls({(): value})

    @classmethod
    def word(cls, letters: Iterable[str], coeff: complex = 1.0) -> "OperatorExpr":
        return cls({tuple(letters): coeff})

    @property
    def terms(self) -> tuple[tuple[tuple[str, ...], complex], ...]:
        """Terms as ``(word, coeff)`` pairs, words sorted lexicographically."""
        return tuple(sorted(self._terms.items(), key=lambda kv: kv[0]))

    @property
    def degree(self) -> int:
        return max((len(w) for w in self._terms), default=0)

    def is_zero(self) -> bool:
        return not self._terms

    def dagger(self) -> "OperatorExpr":
        """Hermitian adjoint: reverse words, conjugate letters and weights."""
        return OperatorExpr(
            {
                tuple(CONJUGATE[letter] for letter in reversed(word)): coeff.conjugate()
                for word, coeff in self._terms.items()
            }
        )

    def __add__(self, other):
        other = _as_expr(other)
        if other is NotImplemented:
            return NotImplemented
        out = dict(self._terms)
        for word, coeff in other._terms.items():
            out[word] = out.get(word, 0j) + coeff
        return OperatorExpr(out)

    __radd__ = __add__

    def __sub__(self, other):
        other = _as_expr(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return _as_expr(other) - self

    def __neg__(self):
        return OperatorExpr({w: -c for w, c in self._terms.items()})

    def __mul__(self, other):
        other = _as_expr(other)
        if other is NotImplemented:
            return NotImplemented
        out: dict[tuple[str, ...], complex] = {}
        for w1, c1 in self._terms.items():
            for w2, c2 in other._terms.items():
                word = w1 + w2
                out[word] = out.get(word, 0j) + c1 * c2
        return OperatorExpr(out)

    def __rmul__(self, other):
        # Scalars commute with everything, so left/right products agree.
        return self * other

    def __eq__(self, other):
        if not isinstance(other, OperatorExpr):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        return hash(self.terms)

    def to_text(self) -> str:
        """Canonical text form: ``(re,im)`` coefficients, '*'-joined words."""
        if not self._terms:
            return "(0.0,0.0)"
        parts = []
        for word, coeff in self.terms:
            coeff_s = f"({float(coeff.real)!r},{float(coeff.imag)!r})"
            parts.append(coeff_s if not word else coeff_s + "*" + "*".join(word))
        return " + ".join(parts)

    def __repr__(self):
        return f"OperatorExpr({self.to_text()})"


def _as_expr(value) -> OperatorExpr:
    if isinstance(value, OperatorExpr):
        return value
    if isinstance(value, (int, float, complex)):
        return OperatorExpr.constant(value)
    return NotImplemented


def difference_observable(theta: float) -> OperatorExpr:
    """The balanced photon-number difference, ``cis(theta) ad b + cis(-theta) a bd``."""
    return OperatorExpr(
        {("ad", "b"): cmath.exp(1j * theta), ("a", "bd"): cmath.exp(-1j * theta)}
    )


# ---------------------------------------------------------------------------
# Rewriting passes
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def _reorder_word(word: tuple[str, ...]) -> tuple[tuple[tuple[str, ...], int], ...]:
    """Rewrite one word into canonical order, keeping the operator identical."""
    for i in range(len(word) - 1):
        x, y = word[i], word[i + 1]
        if PRIORITY[x] > PRIORITY[y]:
            swapped = word[:i] + (y, x) + word[i + 2:]
            out = dict(_reorder_word(swapped))
            if MODE[x] == MODE[y]:
                # Same mode and out of order means (lowering, raising):
                # x y = y x + 1.
                for w, c in _reorder_word(word[:i] + word[i + 2:]):
                    out[w] = out.get(w, 0) + c
            return tuple(sorted(out.items()))
    return ((word, 1),)


def reorder(expr: OperatorExpr) -> OperatorExpr:
    """Bring every word into ``ad^m a^n bd^p b^q`` form, operator-preserving.

    Applies ``[a, ad] = 1`` and ``[b, bd] = 1`` plus cross-mode
    commutativity, so the result equals the input as an operator.
    """
    out: dict[tuple[str, ...], complex] = {}
    for word, coeff in expr.terms:
        for new_word, mult in _reorder_word(word):
            out[new_word] = out.get(new_word, 0j) + coeff * mult
    return OperatorExpr(out)


def _mode_counts(sub: tuple[str, ...]) -> dict[tuple[int, int], int]:
    """Operator-preserving single-mode reorder, as dagger/lowering counts."""
    out: dict[tuple[int, int], int] = {}
    for word, mult in _reorder_word(sub):
        daggers = sum(1 for letter in word if IS_DAGGER[letter])
        out[(daggers, len(word) - daggers)] = mult
    return out


def formal_normal_order(expr: OperatorExpr, modes: Iterable[str]) -> OperatorExpr:
    """Formally normal-order the selected modes, dropping their commutators.

    Within each word, creation operators of every mode in ``modes`` are
    moved to the left of that mode's annihilation operators *without*
    commutator corrections; the remaining mode is reordered
    operator-preservingly.  The pass is linear and idempotent.
    """
    mode_set = frozenset(modes)
    if not mode_set:
        raise ValueError("at least one mode must be selected")
    if not mode_set <= {"A", "B"}:
        raise ValueError(f"modes must be a subset of {{'A', 'B'}}, got {set(modes)}")

    out: dict[tuple[str, ...], complex] = {}
    for word, coeff in expr.terms:
        per_mode: list[dict[tuple[int, int], int]] = []
        for mode in ("A", "B"):
            sub = tuple(letter for letter in word if MODE[letter] == mode)
            if mode in mode_set:
                daggers = sum(1 for letter in sub if IS_DAGGER[letter])
                per_mode.append({(daggers, len(sub) - daggers): 1})
            else:
                per_mode.append(_mode_counts(sub))
        for (ma, na), ca in per_mode[0].items():
            for (mb, nb), cb in per_mode[1].items():
                new_word = ("ad",) * ma + ("a",) * na + ("bd",) * mb + ("b",) * nb
                out[new_word] = out.get(new_word, 0j) + coeff * ca * cb
    return OperatorExpr(out)


def adjoint_product(expr: OperatorExpr) -> OperatorExpr:
    """Return ``expr^dag * expr``, expanded into a sum of words."""
    return expr.dagger() * expr


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------

_TOKEN_RE = re.compile(
    r"\s*(?:"
    r"(?P<number>\d+(?:\.\d*)?(?:[eE][+-]?\d+)?|\.\d+(?:[eE][+-]?\d+)?)"
    r"|(?P<ident>[A-Za-z_][A-Za-z_0-9]*)"
    r"|(?P<op>[+*(),]|-|−)"
    r")"
)


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        match = _TOKEN_RE.match(text, pos)
        if match is None:
            stripped = text[pos:].lstrip()
            if not stripped:
                break
            bad_pos = len(text) - len(stripped)
            raise ExpressionSyntaxError(f"unexpected character {text[bad_pos]!r}", bad_pos)
        if match.lastgroup == "number":
            tokens.append(("number", match.group("number"), match.start("number")))
        elif match.lastgroup == "ident":
            tokens.append(("ident", match.group("ident"), match.start("ident")))
        else:
            op = match.group("op")
            if op == "−":
                op = "-"
            tokens.append((op, op, match.start("op")))
        pos = match.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, tokens, theta):
        self.tokens = tokens
        self.index = 0
        self.theta = theta

    def peek(self):
        return self.tokens[self.index]

    def advance(self):
        token = self.tokens[self.index]
        self.index += 1
        return token

    def expect(self, kind):
        token = self.advance()
        if token[0] != kind:
            raise ExpressionSyntaxError(
                f"expected {kind!r} but found {token[1]!r}", token[2]
            )
        return token

    def parse_expression(self) -> OperatorExpr:
        sign = 1.0
        if self.peek()[0] in ("+", "-"):
            sign = -1.0 if self.advance()[0] == "-" else 1.0
        result = sign * self.parse_term()
        while self.peek()[0] in ("+", "-"):
            op = self.advance()[0]
            term = self.parse_term()
            result = result + term if op == "+" else result - term
        return result

    def parse_term(self) -> OperatorExpr:
        result = self.parse_factor()
        while True:
            kind = self.peek()[0]
            if kind == "*":
                self.advance()
                result = result * self.parse_factor()
            elif kind in ("number", "ident", "("):
                # Juxtaposition is multiplication.
                result = result * self.parse_factor()
            else:
                return result

    def parse_factor(self) -> OperatorExpr:
        kind, value, pos = self.peek()
        if kind == "number":
            self.advance()
            return OperatorExpr.constant(float(value))
        if kind == "ident":
            self.advance()
            if value in LETTERS:
                return OperatorExpr.word((value,))
            if value == "i":
                return OperatorExpr.constant(1j)
            if value == "cis":
                self.expect("(")
                phase = self.parse_phase_argument()
                self.expect(")")
                return OperatorExpr.constant(cmath.exp(1j * phase))
            if value == "theta":
                raise ExpressionSyntaxError(
                    "'theta' may only appear inside cis(...)", pos
                )
            raise ExpressionSyntaxError(f"unknown symbol {value!r}", pos)
        if kind == "(":
            self.advance()
            first = self.parse_expression()
            if self.peek()[0] == ",":
                self.advance()
                second = self.parse_expression()
                self.expect(")")
                return OperatorExpr.constant(
                    self._scalar(first, pos) + 1j * self._scalar(second, pos)
                )
            self.expect(")")
            return first
        raise ExpressionSyntaxError(f"unexpected token {value!r}", pos)

    def parse_phase_argument(self) -> float:
        sign = 1.0
        if self.peek()[0] in ("+", "-"):
            sign = -1.0 if self.advance()[0] == "-" else 1.0
        kind, value, pos = self.advance()
        if kind == "number":
            return sign * float(value)
        if kind == "ident" and value == "theta":
            if self.theta is None:
                raise ExpressionSyntaxError("'theta' used without a binding", pos)
            return sign * float(self.theta)
        raise ExpressionSyntaxError(
            "cis(...) takes a decimal or the bound symbol 'theta'", pos
        )

    @staticmethod
    def _scalar(expr: OperatorExpr, pos: int) -> complex:
        if expr.is_zero():
            return 0j
        terms = expr.terms
        if len(terms) == 1 and terms[0][0] == ():
            return terms[0][1]
        raise ExpressionSyntaxError("pair literal entries must be scalar", pos)


def parse(text: str, theta: float | None = None) -> OperatorExpr:
    """Parse an operator expression.

    Parameters
    ----------
    text : str
        Sums/differences of products of ``a``, ``ad``, ``b``, ``bd``,
        decimal literals, ``i``, ``cis(x)``, ``(re,im)`` pairs, and
        parenthesised sub-expressions.  Juxtaposition multiplies.
    theta : float, optional
        Value bound to the symbol ``theta`` inside ``cis(...)``.

    Raises
    ------
    ExpressionSyntaxError
        On malformed input or unknown symbols, with the position.
    """
    parser = _Parser(_tokenize(text), theta)
    result = parser.parse_expression()
    end = parser.advance()
    if end[0] != "end":
        raise ExpressionSyntaxError(f"unexpected trailing input {end[1]!r}", end[2])
    return result
