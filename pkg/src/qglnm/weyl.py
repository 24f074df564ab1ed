"""Operator engine for the graded Weyl algebra of n-1 bosonic and m
fermionic oscillator pairs.

Operators are formal sums of words in raising/lowering atoms and diagonal
factors, applied lazily to individual occupation states.  Lazy action keeps
every computation exact with no truncation: a word may pass through states
of higher degree than any fixed matrix cap would allow.

Words are written left to right as in printed operator products and are
applied right to left, so a diagonal factor written to the left of a
lowering operator is evaluated on the already-lowered state.

Two basis conventions are supported.  In the "monomial" convention the
basis vectors are the unnormalized ordered monomials in the raising
operators, so bosonic raising has coefficient 1 and lowering has
coefficient l; all coefficients stay in the exact fraction field.  In the
"orthonormal" convention both carry square roots and the engine is
numeric.  Fermionic modes anticommute: raising or lowering mode i picks
up the sign (-1)**(number of occupied fermionic modes strictly left of i).

Numeric scalars are complex: with integer p, square-root factors such as
sqrt([p - N]) have negative radicands on states far enough above the
occupation threshold, and the principal branch keeps all operator
identities valid (the radical pairs inside any defining relation match
up, so relation residuals are real up to rounding).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction

from .coeff import CoeffExact, LaurentPoly, bracket_affine, bracket_int, bracket_value
from .fock import EVEN, FockState, Signature, mode_parity


@dataclass(frozen=True)
class Affine:
    """Integer affine expression const + p_coeff*p + sum_i mode_coeffs[i]*N_i."""

    const: int = 0
    p_coeff: int = 0
    mode_coeffs: tuple[int, ...] = ()

    def eval_parts(self, state: FockState) -> tuple[int, int]:
        """Return (occupation part evaluated on the state, coefficient of p)."""
        c = self.const + sum(k * l for k, l in zip(self.mode_coeffs, state))
        return c, self.p_coeff

    def __add__(self, other: "Affine") -> "Affine":
        return Affine(
            self.const + other.const,
            self.p_coeff + other.p_coeff,
            _zip_add(self.mode_coeffs, other.mode_coeffs),
        )

    def __neg__(self) -> "Affine":
        return Affine(-self.const, -self.p_coeff, tuple(-k for k in self.mode_coeffs))

    def __sub__(self, other: "Affine") -> "Affine":
        return self + (-other)

    def shift(self, c: int) -> "Affine":
        return Affine(self.const + c, self.p_coeff, self.mode_coeffs)


def _zip_add(a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
    if len(a) < len(b):
        a = a + (0,) * (len(b) - len(a))
    elif len(b) < len(a):
        b = b + (0,) * (len(a) - len(b))
    return tuple(x + y for x, y in zip(a, b))


def affine_mode(sig: Signature, i: int, coeff: int = 1) -> Affine:
    """The occupation number N_i as an affine expression."""
    coeffs = [0] * sig.num_modes
    coeffs[i - 1] = coeff
    return Affine(0, 0, tuple(coeffs))


def affine_total(sig: Signature) -> Affine:
    """The total occupation N = N_1 + ... + N_{r-1}."""
    return Affine(0, 0, (1,) * sig.num_modes)


def affine_p_minus_total(sig: Signature, shift: int = 0) -> Affine:
    """p - N + shift, the recurring first-mode diagonal argument."""
    return Affine(shift, 1, (-1,) * sig.num_modes)


# Diagonal factor kinds:
#   affine        value of the affine expression itself
#   bracket       q-bracket [affine]
#   bracket_ratio [N_mode + shift] / (N_mode + shift)
#   angle         ([N_mode + shift] / (N_mode + shift)) ** 1/2 on bosonic
#                 modes, identically 1 on fermionic modes
#   sqrt_bracket  sqrt([affine]), numeric only
#   qpow          q ** affine
@dataclass(frozen=True)
class Diag:
    kind: str
    affine: Affine | None = None
    mode: int | None = None
    shift: int = 0


@dataclass(frozen=True)
class Raise:
    mode: int


@dataclass(frozen=True)
class Lower:
    mode: int


Atom = Raise | Lower | Diag
Word = tuple


def atom_parity(sig: Signature, atom: Atom) -> int:
    if isinstance(atom, (Raise, Lower)):
        return mode_parity(sig, atom.mode)
    return EVEN


def word_parity(sig: Signature, word: Word) -> int:
    return sum(atom_parity(sig, a) for a in word) % 2


def word_degree_shift(word: Word) -> int:
    """Net change in total occupation caused by the word."""
    return sum(1 if isinstance(a, Raise) else -1 if isinstance(a, Lower) else 0 for a in word)


class OperatorExpr:
    """Formal linear combination of scalar-weighted atom words.

    Scalars are exact coefficients; the evaluation engine specializes them
    when running numerically.  Multiplication concatenates words (scalars
    are central).
    """

    __slots__ = ("terms",)

    def __init__(self, terms=()):
        self.terms = tuple((c, tuple(w)) for c, w in terms)

    @classmethod
    def from_word(cls, *atoms, scalar: CoeffExact | int = 1) -> "OperatorExpr":
        if isinstance(scalar, int):
            scalar = CoeffExact.from_int(scalar)
        return cls([(scalar, tuple(atoms))])

    @classmethod
    def identity(cls) -> "OperatorExpr":
        return cls.from_word()

    @classmethod
    def zero(cls) -> "OperatorExpr":
        return cls()

    def __add__(self, other: "OperatorExpr") -> "OperatorExpr":
        return OperatorExpr(self.terms + other.terms)

    def __neg__(self) -> "OperatorExpr":
        return OperatorExpr([(-c, w) for c, w in self.terms])

    def __sub__(self, other: "OperatorExpr") -> "OperatorExpr":
        return self + (-other)

    def __mul__(self, other: "OperatorExpr") -> "OperatorExpr":
        return OperatorExpr(
            [(c1 * c2, w1 + w2) for c1, w1 in self.terms for c2, w2 in other.terms]
        )

    def scaled(self, scalar: CoeffExact | int) -> "OperatorExpr":
        if isinstance(scalar, int):
            scalar = CoeffExact.from_int(scalar)
        return OperatorExpr([(scalar * c, w) for c, w in self.terms])

    def collect(self) -> "OperatorExpr":
        """Merge terms with identical words, dropping exact zeros."""
        merged: dict[Word, CoeffExact] = {}
        for c, w in self.terms:
            merged[w] = merged[w] + c if w in merged else c
        return OperatorExpr([(c, w) for w, c in merged.items() if not c.is_zero()])

    def parity(self, sig: Signature) -> int:
        parities = {word_parity(sig, w) for _, w in self.terms}
        if len(parities) > 1:
            raise ValueError("expression is not parity-homogeneous")
        return parities.pop() if parities else EVEN

    def degree_shifts(self) -> set[int]:
        return {word_degree_shift(w) for _, w in self.terms}

    def __repr__(self):
        return f"OperatorExpr({len(self.terms)} terms)"


def super_commutator(
    sig: Signature, x: OperatorExpr, y: OperatorExpr, qfactor: CoeffExact | None = None
) -> OperatorExpr:
    """x*y - (-1)**(deg x * deg y) * qfactor * y*x for homogeneous x, y."""
    sign = -1 if x.parity(sig) and y.parity(sig) else 1
    yx = (y * x).scaled(sign)
    if qfactor is not None:
        yx = yx.scaled(qfactor)
    return x * y - yx


class EngineError(ValueError):
    pass


class Engine:
    """Evaluation context: exact or numeric arithmetic, basis convention,
    and the values (or formal status) of q and p.

    mode="exact" works over the fraction field with q formal and p either
    formal or an integer; classical=True specializes q = 1 there, turning
    every bracket into its plain affine argument.  mode="numeric" fixes
    real q > 0 (q = 1 gets the same classical bracket limit) and real p.
    The orthonormal convention introduces square roots and therefore
    requires numeric mode.
    """

    def __init__(self, sig: Signature, mode="exact", convention="monomial",
                 q=None, p=None, classical=False):
        if mode not in ("exact", "numeric"):
            raise EngineError(f"unknown mode {mode!r}")
        if convention not in ("monomial", "orthonormal"):
            raise EngineError(f"unknown convention {convention!r}")
        if mode == "exact":
            if q is not None:
                raise EngineError("exact mode keeps q formal; use numeric mode for a q value")
            if convention == "orthonormal":
                raise EngineError("orthonormal convention needs square roots; use numeric mode")
            if p is not None and not isinstance(p, int):
                raise EngineError("exact mode accepts only formal (None) or integer p")
        else:
            if q is None:
                raise EngineError("numeric mode requires a value for q")
            if q <= 0:
                raise EngineError("q must be positive")
            if classical:
                raise EngineError("classical flag applies to exact mode; use q=1 numerically")
        self.sig = sig
        self.mode = mode
        self.convention = convention
        self.q = q
        self.p = p
        self.classical = classical

    # -- scalar domain -------------------------------------------------

    def one(self):
        return CoeffExact.one() if self.mode == "exact" else 1.0

    def from_int(self, k: int):
        return CoeffExact.from_int(k) if self.mode == "exact" else float(k)

    def from_coeff(self, c: CoeffExact):
        """Bring an exact coefficient into this engine's scalar domain."""
        if self.mode == "exact":
            if self.p is not None:
                c = c.subst_p_int(self.p)
            return c.subst_q1() if self.classical else c
        needs_p = any(b or pw for (_, b, pw) in list(c.num.terms) + list(c.den.terms))
        return c.eval_numeric(self.q, self._p_value(allow_missing=not needs_p))

    def is_zero(self, scalar) -> bool:
        if self.mode == "exact":
            return scalar.is_zero()
        return scalar == 0

    def _p_value(self, allow_missing=False) -> float:
        if self.p is None:
            if allow_missing:
                return 0.0
            raise EngineError("this evaluation needs a numeric value for p")
        return float(self.p)

    # -- diagonal factors ----------------------------------------------

    def eval_diag(self, d: Diag, state: FockState):
        kind = d.kind
        if kind == "affine":
            c, pc = d.affine.eval_parts(state)
            return self._affine_scalar(c, pc)
        if kind == "bracket":
            c, pc = d.affine.eval_parts(state)
            if self.mode == "exact":
                if self.classical:
                    return self._affine_scalar(c, pc)
                return bracket_affine(c, pc, p_value=self.p)
            return bracket_value(c + pc * self._p_value(allow_missing=pc == 0), self.q)
        if kind == "bracket_ratio":
            v = state[d.mode - 1] + d.shift
            if v == 0:
                raise ZeroDivisionError("bracket ratio evaluated at argument 0")
            if self.mode == "exact":
                if self.classical:
                    return CoeffExact.one()
                return bracket_int(v) / v
            return bracket_value(v, self.q) / v
        if kind == "angle":
            if self.sig.is_fermionic(d.mode):
                return self.one()
            v = state[d.mode - 1] + d.shift
            if v == 0:
                raise ZeroDivisionError("angle bracket evaluated at argument 0")
            if self.mode == "exact":
                if self.classical:
                    return CoeffExact.one()
                raise EngineError("angle brackets on bosonic modes are numeric only")
            return math.sqrt(bracket_value(v, self.q) / v)
        if kind == "sqrt_bracket":
            if self.mode == "exact":
                raise EngineError("sqrt brackets are numeric only")
            c, pc = d.affine.eval_parts(state)
            x = c + pc * self._p_value(allow_missing=pc == 0)
            if x == 0:
                return 0.0
            val = bracket_value(x, self.q)
            if val == 0.0:
                return 0.0
            if val < 0:
                return cmath.sqrt(val)
            return math.sqrt(val)
        if kind == "qpow":
            c, pc = d.affine.eval_parts(state)
            if self.mode == "exact":
                if self.classical:
                    return CoeffExact.one()
                if self.p is not None:
                    return CoeffExact(LaurentPoly.monomial(q_exp=c + pc * self.p))
                return CoeffExact(LaurentPoly.monomial(q_exp=c, P_exp=pc))
            return self.q ** (c + pc * self._p_value(allow_missing=pc == 0))
        raise EngineError(f"unknown diagonal kind {kind!r}")

    def _affine_scalar(self, c: int, pc: int):
        if self.mode == "numeric":
            return c + pc * self._p_value(allow_missing=pc == 0)
        if self.p is not None:
            return CoeffExact.from_int(c + pc * self.p)
        if pc == 0:
            return CoeffExact.from_int(c)
        return CoeffExact(LaurentPoly({(0, 0, 0): Fraction(c), (0, 0, 1): Fraction(pc)}))

    # -- state action ---------------------------------------------------

    def apply_atom(self, atom: Atom, state: FockState):
        """Apply one atom to a basis state; returns (scalar, state) or None
        when the result is zero."""
        if isinstance(atom, Diag):
            val = self.eval_diag(atom, state)
            if self.is_zero(val):
                return None
            return val, state
        i = atom.mode
        li = state[i - 1]
        if self.sig.is_fermionic(i):
            if isinstance(atom, Raise):
                if li == 1:
                    return None
                new_occ = 1
            else:
                if li == 0:
                    return None
                new_occ = 0
            sign = -1 if self._fermi_count_left(state, i) % 2 else 1
            new = state[: i - 1] + (new_occ,) + state[i:]
            return self.from_int(sign), new
        if isinstance(atom, Raise):
            new = state[: i - 1] + (li + 1,) + state[i:]
            if self.convention == "monomial":
                return self.one(), new
            return math.sqrt(li + 1), new
        if li == 0:
            return None
        new = state[: i - 1] + (li - 1,) + state[i:]
        if self.convention == "monomial":
            return self.from_int(li), new
        return math.sqrt(li), new

    def _fermi_count_left(self, state: FockState, i: int) -> int:
        return sum(state[k - 1] for k in range(self.sig.n, i))

    def apply_word(self, word: Word, state: FockState) -> dict:
        """Apply a word (atoms right to left) to a single state."""
        vec = {state: self.one()}
        for atom in reversed(word):
            nxt: dict = {}
            for s, c in vec.items():
                res = self.apply_atom(atom, s)
                if res is None:
                    continue
                a, s2 = res
                acc = nxt.get(s2)
                nxt[s2] = c * a if acc is None else acc + c * a
            vec = nxt
            if not vec:
                break
        return vec

    def compile(self, expr: OperatorExpr) -> list:
        """Specialize the term scalars of an expression into this engine's
        scalar domain once, for repeated application."""
        return [(self.from_coeff(c), w) for c, w in expr.terms]

    def apply_compiled(self, compiled: list, state: FockState) -> dict:
        out: dict = {}
        for c, w in compiled:
            if self.is_zero(c):
                continue
            for s, a in self.apply_word(w, state).items():
                acc = out.get(s)
                v = c * a if acc is None else acc + c * a
                out[s] = v
        return {s: v for s, v in out.items() if not self.is_zero(v)}

    def apply(self, expr: OperatorExpr, target) -> dict:
        """Apply an expression to a state or to a {state: coeff} vector."""
        compiled = self.compile(expr)
        if isinstance(target, tuple):
            return self.apply_compiled(compiled, target)
        out: dict = {}
        for state, coeff in target.items():
            for s, v in self.apply_compiled(compiled, state).items():
                acc = out.get(s)
                w = coeff * v if acc is None else acc + coeff * v
                out[s] = w
        return {s: v for s, v in out.items() if not self.is_zero(v)}

    def max_abs(self, vec: dict) -> float:
        """Largest coefficient magnitude of a numeric state vector."""
        return max((abs(v) for v in vec.values()), default=0.0)
