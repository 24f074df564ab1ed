"""Representation-level analysis of the Fock-space modules.

Finite generator matrices on the occupation-bounded subspace, invariance
of the threshold subspaces, unitarizability via the transpose test in
the orthonormal basis, highest weights, the essentially-typical
criterion on integer weights, inequivalence of different thresholds, and
cyclicity evidence for irreducibility.

Matrix columns follow the graded-lex basis order, so the block structure
by total degree is visible in the sparse pattern: the first e generator
strictly lowers the degree block, the first f generator raises it, and
every other generator is block-diagonal.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .coeff import CoeffExact, numeric_str
from .fock import BasisIndex, Signature, dim_F0, enumerate_up_to, split_F0_F1, total, vacuum
from .presentation import E, F, H, GenSymbol, HBracket, build_relations
from .realize import DYSON, HP, realization, tilde_ops
from .weyl import Engine, OperatorExpr, super_commutator

SUBSPACES = ("F0", "F1-slice", "quotient-F0")


@dataclass
class GeneratorMatrix:
    """Sparse matrix of one realized generator on an explicit basis."""

    symbol: GenSymbol
    basis: BasisIndex
    entries: dict  # (row, col) -> coefficient (exact or numeric)

    def to_numpy(self) -> np.ndarray:
        mat = np.zeros((len(self.basis), len(self.basis)), dtype=complex)
        for (r, c), v in self.entries.items():
            mat[r, c] = v
        return mat

    def triplets(self):
        return sorted(self.entries.items())


def _subspace_basis(sig: Signature, p: int, subspace: str, cap: int | None) -> BasisIndex:
    if subspace in ("F0", "quotient-F0"):
        return enumerate_up_to(sig, p)
    if subspace == "F1-slice":
        if cap is None:
            cap = p + 4
        return split_F0_F1(sig, p, cap)[1]
    raise ValueError(f"unknown subspace {subspace!r}; expected one of {SUBSPACES}")


def materialize(
    sig: Signature,
    kind: str,
    p: int,
    q: float | None = None,
    subspace: str = "F0",
    cap: int | None = None,
    convention: str = "orthonormal",
    mutation: str | None = None,
) -> dict[GenSymbol, GeneratorMatrix]:
    """Matrices of every generator image on the chosen subspace.

    "quotient-F0" projects image components of degree > p to zero (the
    quotient by the invariant high-degree subspace); "F0" is the plain
    restriction and insists that nothing leaks out, which holds for the
    Holstein-Primakoff realizations but not for Dyson.  "F1-slice"
    restricts to the degree window p < total <= cap, dropping components
    above the cap.
    """
    if not isinstance(p, int) or p < 0:
        raise ValueError("materialization needs an integer p >= 0")
    real = realization(kind, sig, mutation)
    if q is None:
        eng = Engine(sig, mode="exact", convention="monomial", p=p)
        if convention == "orthonormal":
            raise ValueError("orthonormal matrices need a numeric q")
    else:
        eng = Engine(sig, mode="numeric", convention=convention, q=q, p=p)
    basis = _subspace_basis(sig, p, subspace, cap)
    out = {}
    for g, expr in real.images.items():
        entries = {}
        compiled = eng.compile(expr)
        for col, state in enumerate(basis.states):
            for s, v in eng.apply_compiled(compiled, state).items():
                row = basis.index.get(s)
                if row is None:
                    if subspace == "quotient-F0" and total(s) > p:
                        continue
                    if subspace == "F1-slice" and cap is not None and total(s) > cap:
                        continue
                    raise ValueError(
                        f"image of {g} leaves the {subspace} subspace at state {state} "
                        f"(reached {s}); use quotient-F0 for the Dyson realization"
                    )
                entries[(row, col)] = v
        out[g] = GeneratorMatrix(g, basis, entries)
    return out


# -- invariance -------------------------------------------------------


@dataclass
class InvarianceReport:
    kind: str
    p: int
    cap: int
    f1_invariant: bool
    f0_invariant: bool
    f0_witness: str = ""
    f1_witness: str = ""

    def summary(self) -> str:
        lines = [
            f"{self.kind}: high subspace (degree > {self.p}) invariant: {self.f1_invariant}",
            f"{self.kind}: low subspace (degree <= {self.p}) invariant: {self.f0_invariant}",
        ]
        if self.f0_witness:
            lines.append(f"  low-subspace escape witness: {self.f0_witness}")
        if self.f1_witness:
            lines.append(f"  high-subspace escape witness: {self.f1_witness}")
        return "\n".join(lines)


def check_invariance(
    sig: Signature, kind: str, p: int, cap: int | None = None, q: float | None = None,
    tolerance: float = 1e-10,
) -> InvarianceReport:
    """Whether the two threshold subspaces are stable under all generator
    images, by lazy application to every state of the probe window.

    The Dyson realization keeps only the high subspace invariant (the
    boundary bracket [p - N] evaluates to the exact zero [0] on the way
    down, while the bare raising image of the first f generator leaks
    upward out of the low subspace).  The Holstein-Primakoff realization
    keeps both: the square-root boundary factor vanishes before any leak.
    """
    if cap is None:
        cap = p + 4
    real = realization(kind, sig)
    if kind == DYSON:
        eng = Engine(sig, mode="exact", convention="monomial", p=p)
    else:
        if q is None:
            raise ValueError("numeric q required for this realization")
        eng = Engine(sig, mode="numeric", convention="orthonormal", q=q, p=p)
    f0, f1 = split_F0_F1(sig, p, cap)
    f1_ok, f1_wit = _stable(eng, real, f1.states, lambda s: total(s) > p, tolerance)
    f0_ok, f0_wit = _stable(eng, real, f0.states, lambda s: total(s) <= p, tolerance)
    return InvarianceReport(kind, p, cap, f1_ok, f0_ok, f0_wit, f1_wit)


def _stable(eng, real, states, keep, tolerance):
    for g, expr in real.images.items():
        compiled = eng.compile(expr)
        for s in states:
            for s2, v in eng.apply_compiled(compiled, s).items():
                if keep(s2):
                    continue
                if eng.mode == "numeric" and abs(v) <= tolerance:
                    continue
                val = v.canonical_str() if isinstance(v, CoeffExact) else numeric_str(v)
                return False, f"{g} maps {s} to {s2} with coefficient {val}"
    return True, ""


# -- unitarity --------------------------------------------------------


@dataclass
class UnitarityReport:
    hp_max_residual: float
    hp_pass: bool
    h_diagonal_real: bool
    dyson_max_residual: float
    dyson_fails: bool
    dyson_witness: str = ""

    def summary(self) -> str:
        return "\n".join([
            f"hp transpose test: max |e^T - f| = {self.hp_max_residual!r} "
            f"({'pass' if self.hp_pass else 'FAIL'})",
            f"hp h-matrices real diagonal: {self.h_diagonal_real}",
            f"dyson transpose test: max |e^T - f| = {self.dyson_max_residual!r} "
            f"({'fails as expected' if self.dyson_fails else 'UNEXPECTEDLY PASSES'})",
            f"  dyson witness: {self.dyson_witness}" if self.dyson_witness else "",
        ]).rstrip()


def check_unitarity(sig: Signature, p: int, q: float, tolerance: float = 1e-10) -> UnitarityReport:
    """Transpose test on the low subspace in the orthonormal basis: for the
    Holstein-Primakoff matrices each e-matrix transposed equals the
    corresponding f-matrix and the h-matrices are real diagonal; the same
    test on the (quotient) Dyson matrices fails, with a witness entry."""
    hp_mats = materialize(sig, HP, p, q=q, subspace="F0")
    dy_mats = materialize(sig, DYSON, p, q=q, subspace="quotient-F0")

    def transpose_residual(mats):
        worst, wit = 0.0, ""
        for i in range(1, sig.r):
            em = mats[GenSymbol(E, i)].to_numpy()
            fm = mats[GenSymbol(F, i)].to_numpy()
            diff = np.abs(em.T - fm)
            r = float(diff.max()) if diff.size else 0.0
            if r > worst:
                worst = r
                a, b = np.unravel_index(np.argmax(diff), diff.shape)
                wit = (f"generator pair index {i}: entry ({a},{b}): "
                       f"e^T={numeric_str(em.T[a, b])} f={numeric_str(fm[a, b])}")
        return worst, wit

    hp_res, _ = transpose_residual(hp_mats)
    dy_res, dy_wit = transpose_residual(dy_mats)
    h_real = True
    for i in range(1, sig.r + 1):
        hm = hp_mats[GenSymbol(H, i)].to_numpy()
        if np.abs(hm - np.diag(np.diag(hm).real)).max() > tolerance:
            h_real = False
    return UnitarityReport(
        hp_max_residual=hp_res,
        hp_pass=hp_res <= tolerance,
        h_diagonal_real=h_real,
        dyson_max_residual=dy_res,
        dyson_fails=dy_res > tolerance,
        dyson_witness=dy_wit,
    )


# -- weights and typicality -------------------------------------------


def highest_weight(sig: Signature, p: int) -> tuple[int, ...]:
    """Eigenvalues of all h_i on the vacuum, which is a highest-weight
    vector: every e image annihilates it (each ends in a lowering atom)."""
    real = realization(DYSON, sig)
    eng = Engine(sig, mode="exact", convention="monomial", p=p)
    vac = vacuum(sig)
    weights = []
    for i in range(1, sig.r + 1):
        vec = eng.apply(real.images[GenSymbol(H, i)], vac)
        coeff = vec.get(vac, CoeffExact.zero())
        weights.append(_as_int(coeff))
    for i in range(1, sig.r):
        if eng.apply(real.images[GenSymbol(E, i)], vac):
            raise AssertionError(f"e_{i} does not annihilate the vacuum")
    return tuple(weights)


def _as_int(c: CoeffExact) -> int:
    for k in range(-10000, 10001):
        if c == CoeffExact.from_int(k):
            return k
    raise ValueError("weight eigenvalue is not a small integer")


@dataclass
class TypicalityReport:
    left_set: tuple[int, ...]
    right_set: tuple[int, ...]
    intersection: tuple[int, ...]
    essentially_typical: bool


def essentially_typical(sig: Signature, weight) -> TypicalityReport:
    """Criterion on an integer highest weight (m_1, ..., m_r): form
    l_i = m_i - i + n + 1 for i <= n and l_j = -m_j + j - n for j > n;
    the weight is essentially typical when {l_1..l_n} avoids the integer
    interval [l_{n+1}, l_r].  Fock-module weights (p, 0, ..., 0) always
    land in the interval (l_n = 1 is its left end), so they are atypical.
    """
    weight = tuple(weight)
    if len(weight) != sig.r:
        raise ValueError(f"weight must have length r = {sig.r}")
    n = sig.n
    left = tuple(weight[i - 1] - i + n + 1 for i in range(1, n + 1))
    odd = [-weight[j - 1] + j - n for j in range(n + 1, sig.r + 1)]
    right = tuple(range(odd[0], odd[-1] + 1)) if odd else ()
    inter = tuple(sorted(set(left) & set(right)))
    return TypicalityReport(left, right, inter, not inter)


# -- inequivalence and cyclicity --------------------------------------


@dataclass
class InequivalenceReport:
    p1: int
    p2: int
    dim1: int
    dim2: int
    spectrum1: tuple
    spectrum2: tuple
    inequivalent: bool

    def summary(self) -> str:
        return (
            f"dim F0(p={self.p1}) = {self.dim1}, dim F0(p={self.p2}) = {self.dim2}; "
            f"h_1 spectra {list(self.spectrum1)} vs {list(self.spectrum2)}; "
            f"inequivalent: {self.inequivalent}"
        )


def inequivalence(sig: Signature, p1: int, p2: int) -> InequivalenceReport:
    """Distinguish the modules with thresholds p1 != p2 by dimension and by
    the h_1 spectrum (the multiset {p - degree} over the basis)."""
    if p1 == p2:
        raise ValueError("thresholds must differ")
    d1, d2 = dim_F0(sig, p1), dim_F0(sig, p2)
    s1 = tuple(sorted(p1 - total(s) for s in enumerate_up_to(sig, p1)))
    s2 = tuple(sorted(p2 - total(s) for s in enumerate_up_to(sig, p2)))
    return InequivalenceReport(p1, p2, d1, d2, s1, s2, d1 != d2 or s1 != s2)


@dataclass
class CyclicityReport:
    dim: int
    ranks: dict
    full_from_all: bool

    def summary(self) -> str:
        worst = min(self.ranks.values())
        return (
            f"module dimension {self.dim}; span rank from every start vector: "
            f"min {worst} ({'full' if self.full_from_all else 'NOT full'})"
        )


def _scaled_rank(columns: np.ndarray, threshold: float) -> int:
    """Numeric rank with max-norm column scaling."""
    cols = []
    for c in columns.T:
        m = np.abs(c).max()
        if m > 0:
            cols.append(c / m)
    if not cols:
        return 0
    sv = np.linalg.svd(np.array(cols).T, compute_uv=False)
    return int((sv > threshold * sv[0]).sum()) if sv.size else 0


def cyclicity(sig: Signature, p: int, q: float, threshold: float = 1e-8) -> CyclicityReport:
    """Evidence of irreducibility: the span of repeated generator images
    applied to a start vector reaches the whole module, for the vacuum and
    for every basis vector.  (If every vector is cyclic, no proper
    invariant subspace exists.)"""
    mats = materialize(sig, HP, p, q=q, subspace="F0")
    gens = [m.to_numpy() for m in mats.values()]
    dim = len(next(iter(mats.values())).basis)
    ranks = {}
    for start in range(dim):
        v = np.zeros(dim, dtype=complex)
        v[start] = 1.0
        span = v.reshape(-1, 1)
        rank = 1
        while True:
            new = [span] + [g @ span for g in gens]
            span = np.hstack(new)
            r = _scaled_rank(span, threshold)
            # re-orthonormalize to keep the column count bounded
            qmat, _ = np.linalg.qr(span)
            span = qmat[:, :r]
            if r == rank:
                break
            rank = r
            if rank == dim:
                break
        ranks[start] = rank
    return CyclicityReport(dim, ranks, all(r == dim for r in ranks.values()))


# -- quotient consistency (exact matrix relations) --------------------


def _exact_matmul(a, b):
    size = len(a)
    zero = CoeffExact.zero()
    out = [[zero for _ in range(size)] for _ in range(size)]
    for i in range(size):
        for k in range(size):
            aik = a[i][k]
            if aik.is_zero():
                continue
            row_b = b[k]
            row_o = out[i]
            for j in range(size):
                if not row_b[j].is_zero():
                    row_o[j] = row_o[j] + aik * row_b[j]
    return out


def _exact_dense(gm: GeneratorMatrix):
    size = len(gm.basis)
    zero = CoeffExact.zero()
    out = [[zero for _ in range(size)] for _ in range(size)]
    for (r, c), v in gm.entries.items():
        out[r][c] = v
    return out


def quotient_relations_check(sig: Signature, p: int) -> list[str]:
    """Exact check that the quotient matrices of the Dyson realization on
    the low subspace satisfy every defining relation; returns the names of
    failing relations (empty when the quotient is a representation)."""
    mats = materialize(sig, DYSON, p, subspace="quotient-F0", convention="monomial")
    basis = next(iter(mats.values())).basis
    size = len(basis)
    dense = {g: _exact_dense(m) for g, m in mats.items()}
    real = realization(DYSON, sig)
    failures = []
    for rel in build_relations(sig):
        acc = [[CoeffExact.zero() for _ in range(size)] for _ in range(size)]
        for sign, side in ((1, rel.lhs), (-1, rel.rhs)):
            for scalar, word in side:
                term = None
                for letter in word:
                    if isinstance(letter, HBracket):
                        m = _hbracket_matrix(sig, letter, basis, p)
                    else:
                        m = dense[letter]
                    term = m if term is None else _exact_matmul(term, m)
                if term is None:
                    term = _exact_identity(size)
                s = scalar * sign if sign == 1 else -scalar
                for i in range(size):
                    for j in range(size):
                        if not term[i][j].is_zero():
                            acc[i][j] = acc[i][j] + s * term[i][j]
        if any(not acc[i][j].is_zero() for i in range(size) for j in range(size)):
            failures.append(rel.name)
    return failures


def _exact_identity(size):
    zero, one = CoeffExact.zero(), CoeffExact.one()
    return [[one if i == j else zero for j in range(size)] for i in range(size)]


def _hbracket_matrix(sig, letter: HBracket, basis: BasisIndex, p: int):
    from .realize import h_affine
    from .coeff import bracket_int

    size = len(basis)
    zero = CoeffExact.zero()
    out = [[zero for _ in range(size)] for _ in range(size)]
    for k, s in enumerate(basis.states):
        arg = 0
        for i in letter.plus:
            c, pc = h_affine(sig, i).eval_parts(s)
            arg += c + pc * p
        for j in letter.minus:
            c, pc = h_affine(sig, j).eval_parts(s)
            arg -= c + pc * p
        out[k][k] = bracket_int(arg)
    return out


# -- deformed oscillator checks ---------------------------------------


@dataclass
class DeformedOpsReport:
    bosonic_max_residual: float
    bosonic_pass: bool
    fermionic_plus_residual: float
    fermionic_minus_residual: float
    fermionic_exponent: str  # which exponent variant of the mode relation holds
    agreement_residual: float
    agreement_pass: bool

    def summary(self) -> str:
        if self.fermionic_exponent in ("+", "-"):
            ferm = (f"fermionic exponent variant: q^{{{self.fermionic_exponent}N}} holds "
                    f"(+N residual {self.fermionic_plus_residual!r}, "
                    f"-N residual {self.fermionic_minus_residual!r})")
        elif self.fermionic_exponent == "n/a":
            ferm = "fermionic exponent variant: n/a (no fermionic modes)"
        else:
            ferm = (f"fermionic exponent variant: NEITHER holds "
                    f"(+N residual {self.fermionic_plus_residual!r}, "
                    f"-N residual {self.fermionic_minus_residual!r})")
        return "\n".join([
            f"bosonic deformed-oscillator relations: max residual "
            f"{self.bosonic_max_residual!r} ({'pass' if self.bosonic_pass else 'FAIL'})",
            ferm,
            f"two Holstein-Primakoff forms agree: max residual "
            f"{self.agreement_residual!r} ({'pass' if self.agreement_pass else 'FAIL'})",
        ])


def deformed_ops_check(
    sig: Signature, p: int, q: float, cap: int = 6, tolerance: float = 1e-12
) -> DeformedOpsReport:
    """Numeric verification of the deformed-oscillator algebra and of the
    equality of the two Holstein-Primakoff forms.

    Bosonic modes satisfy the q-commutator relation with exponent -N;
    on the ordered fermionic basis the relation holds with exponent +N
    instead, and both variants are measured so the report documents which
    one holds rather than silently choosing.  The number-operator and
    cross-mode relations are exponent-independent; their residuals are
    folded into the first figure.
    """
    from .weyl import Diag, affine_mode

    eng = Engine(sig, mode="numeric", convention="orthonormal", q=q, p=p)
    ops = tilde_ops(sig)
    states = list(enumerate_up_to(sig, cap))

    def qpow_n(i, sign):
        return OperatorExpr.from_word(Diag("qpow", affine=affine_mode(sig, i, sign)))

    def max_res(expr):
        compiled = eng.compile(expr)
        return max((eng.max_abs(eng.apply_compiled(compiled, s)) for s in states), default=0.0)

    bos_res = 0.0
    ferm_plus = ferm_minus = 0.0
    qfac = _q_factor()
    for i in range(1, sig.num_modes + 1):
        fermionic = sig.is_fermionic(i)
        mode_rel_minus = super_commutator(sig, ops[("-", i)], ops[("+", i)], qfactor=qfac) - qpow_n(i, -1)
        mode_rel_plus = super_commutator(sig, ops[("-", i)], ops[("+", i)], qfactor=qfac) - qpow_n(i, +1)
        if fermionic:
            ferm_minus = max(ferm_minus, max_res(mode_rel_minus))
            ferm_plus = max(ferm_plus, max_res(mode_rel_plus))
        else:
            bos_res = max(bos_res, max_res(mode_rel_minus))
        for j in range(1, sig.num_modes + 1):
            number_rel = (
                ops[("N", i)] * ops[("+", j)]
                - ops[("+", j)] * ops[("N", i)]
                - (ops[("+", j)] if i == j else OperatorExpr.zero())
            )
            bos_res = max(bos_res, max_res(number_rel))
            number_rel = (
                ops[("N", i)] * ops[("-", j)]
                - ops[("-", j)] * ops[("N", i)]
                + (ops[("-", j)] if i == j else OperatorExpr.zero())
            )
            bos_res = max(bos_res, max_res(number_rel))
            if i != j:
                for a in ("+", "-"):
                    for b in ("+", "-"):
                        bos_res = max(bos_res, max_res(super_commutator(sig, ops[(a, i)], ops[(b, j)])))

    hp_real = realization(HP, sig)
    hpd_real = realization("hp-deformed", sig)
    agree = 0.0
    for g, expr in hp_real.images.items():
        diff = expr - hpd_real.images[g]
        agree = max(agree, max_res(diff))

    if sig.m == 0:
        exponent = "n/a"
    elif ferm_plus <= tolerance < ferm_minus:
        exponent = "+"
    elif ferm_minus <= tolerance < ferm_plus:
        exponent = "-"
    else:
        exponent = "neither"
    return DeformedOpsReport(
        bosonic_max_residual=bos_res,
        bosonic_pass=bos_res <= tolerance,
        fermionic_plus_residual=ferm_plus,
        fermionic_minus_residual=ferm_minus,
        fermionic_exponent=exponent,
        agreement_residual=agree,
        agreement_pass=agree <= tolerance,
    )


def _q_factor() -> CoeffExact:
    """The symbolic scalar q (specialized by whichever engine evaluates it)."""
    from .coeff import LaurentPoly

    return CoeffExact(LaurentPoly.monomial(q_exp=1))
