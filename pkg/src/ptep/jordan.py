"""Transition matrices Q with H Q = Q S at the EPs of the family.

Chain convention: the last chain vector is the first unit vector of the
block and ``q_{m-1} = (C - e I) q_m``, so ``H q_k = e q_k + q_{k-1}``.
For model blocks the chain is also available exactly: writing
``H = D T D^-1`` with ``T`` rational (unit subdiagonal, ``-z`` superdiagonal)
and ``D = diag(1, -a_1, a_1 a_2, ...)``, every entry of Q is a rational
multiple of a single surd.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .eplocus import ep_cascade, inner_block_z
from .errors import NotDefectiveEnoughError, NotEpTimeError
from .model import Surd, build_hamiltonian, extract_blocks, partition, z_of_t

CHAIN_TOL = 1e-8


def jordan_block(size: int, e: complex = 0.0) -> np.ndarray:
    return np.eye(size, dtype=complex) * e + np.eye(size, k=1, dtype=complex)


def chain_columns(c, e: complex = 0.0) -> np.ndarray:
    """Unchecked chain: columns q_1..q_N generated from q_N = e_1."""
    c = np.asarray(c, dtype=complex)
    size = c.shape[0]
    shifted = c - e * np.eye(size)
    q = np.zeros((size, size), dtype=complex)
    q[0, size - 1] = 1.0
    for m in range(size - 1, 0, -1):
        q[:, m - 1] = shifted @ q[:, m]
    return q


def chain_residual(c, e: complex = 0.0) -> float:
    """Relative size of (C - e I) q_1; zero iff the chain closes."""
    c = np.asarray(c, dtype=complex)
    q = chain_columns(c, e)
    shifted = c - e * np.eye(c.shape[0])
    top = np.max(np.abs(shifted @ q[:, 0]), initial=0.0)
    if top == 0:
        return 0.0
    return float(top / (np.max(np.abs(shifted)) * np.max(np.abs(q[:, 0]))))


def _equilibrated_rank(q) -> int:
    # chain entries span many orders of magnitude; rescale rows and columns first
    q = np.array(q, dtype=complex)
    for axis in (0, 1):
        norms = np.max(np.abs(q), axis=axis, keepdims=True)
        q = q / np.where(norms == 0, 1.0, norms)
    return int(np.linalg.matrix_rank(q))


def jordan_chain_block(c, e: complex = 0.0, tol: float = CHAIN_TOL) -> np.ndarray:
    """Chain columns of a single full Jordan block of ``c`` at eigenvalue ``e``.

    Raises :class:`NotDefectiveEnoughError` when the chain does not close or
    its columns are dependent (kernel of ``c - e I`` not one-dimensional at full length).
    """
    c = np.asarray(c, dtype=complex)
    q = chain_columns(c, e)
    res = chain_residual(c, e)
    if res > tol:
        raise NotDefectiveEnoughError(
            f"(C - eI) q_1 does not vanish (relative residual {res:.3e})", residual=res)
    if c.shape[0] and _equilibrated_rank(q) < c.shape[0]:
        raise NotDefectiveEnoughError("chain vectors are linearly dependent", residual=res)
    return q


def exact_chain(z) -> list[list[Surd]]:
    """Exact chain matrix for the model block with rational couplings ``z``.

    Returns rows of :class:`Surd`; ``float``/``complex`` conversion gives the
    same matrix as :func:`jordan_chain_block` at eigenvalue 0.
    """
    z = [Fraction(v) for v in z]
    size = 2 * len(z)
    diag = [Fraction(2 * k - 1 - size) for k in range(1, size + 1)]
    upper = [-z[min(p, size - p) - 1] for p in range(1, size)]

    def apply_t(v):
        out = [diag[i] * v[i] for i in range(size)]
        for i in range(size - 1):
            out[i] += upper[i] * v[i + 1]
            out[i + 1] += v[i]
        return out

    x = [[Fraction(0)] * size for _ in range(size)]
    col = [Fraction(0)] * size
    col[0] = Fraction(1)
    for m in range(size - 1, -1, -1):
        for i in range(size):
            x[i][m] = col[i]
        col = apply_t(col)
    d = [Surd(1)]
    for p in range(1, size):
        d.append(d[-1] * -Surd.sqrt_of(z[min(p, size - p) - 1]))
    return [[d[i] * x[i][m] for m in range(size)] for i in range(size)]


def exact_chain_residual(z) -> Fraction:
    """Max |T X - X J| over the rational chain; zero iff H Q = Q J exactly."""
    z = [Fraction(v) for v in z]
    size = 2 * len(z)
    rows = exact_chain(z)
    d = [Surd(1)]
    for p in range(1, size):
        d.append(d[-1] * -Surd.sqrt_of(z[min(p, size - p) - 1]))
    # recover the rational X = D^-1 Q; d[i] is nonzero for positive z
    x = []
    for i in range(size):
        row = []
        for entry in rows[i]:
            if entry.is_zero():
                row.append(Fraction(0))
            else:
                assert entry.radicand == d[i].radicand and entry.phase == d[i].phase
                row.append(entry.coeff / d[i].coeff)
        x.append(row)
    diag = [Fraction(2 * k - 1 - size) for k in range(1, size + 1)]
    upper = [-z[min(p, size - p) - 1] for p in range(1, size)]
    worst = Fraction(0)
    for i in range(size):
        for m in range(size):
            tx = diag[i] * x[i][m]
            if i + 1 < size:
                tx += upper[i] * x[i + 1][m]
            if i > 0:
                tx += x[i - 1][m]
            xj = x[i][m - 1] if m > 0 else Fraction(0)
            worst = max(worst, abs(tx - xj))
    return worst


@dataclass(frozen=True, eq=False)
class JordanForm:
    """Canonical form ``s`` and transition matrix ``q`` with H q = q s.

    ``blocks`` lists (size, eigenvalue) in column order: the chain block first,
    then the A eigenvalues, then the B eigenvalues (each ascending).
    """

    s: np.ndarray
    q: np.ndarray
    blocks: tuple

    @property
    def ep_order(self) -> int:
        return self.blocks[0][0] if self.blocks and self.blocks[0][0] > 1 else 1

    def det_q(self) -> float:
        return float(abs(np.linalg.det(self.q)))

    def cond_q(self) -> float:
        return float(np.linalg.cond(self.q))


def canonical_matrix(blocks) -> np.ndarray:
    size = sum(b for b, _ in blocks)
    s = np.zeros((size, size), dtype=complex)
    i = 0
    for b, e in blocks:
        s[i:i + b, i:i + b] = jordan_block(b, e)
        i += b
    return s


def _hermitian_eig(block):
    w, v = np.linalg.eigh(block)
    for k in range(v.shape[1]):
        col = v[:, k]
        pivot = col[np.argmax(np.abs(col))]
        v[:, k] = col * (abs(pivot) / pivot)
    return w, v


def assemble_Q(n: int, t) -> JordanForm:
    """Jordan form of H^(n)(t) at an EP time ``t`` of the cascade."""
    if t not in ep_cascade(n).times:
        raise NotEpTimeError(f"t={t} is not an EP time for n={n}")
    z = z_of_t(n, t)
    h = build_hamiltonian(z)
    p = partition(z)
    q = np.zeros((n, n), dtype=complex)
    blocks = []
    col = 0
    if p.k:
        if p.m:
            _, c, _ = extract_blocks(h, p)
        else:
            c = h.dense()
        chain = np.array([[complex(v) for v in row] for row in exact_chain(inner_block_z(n, t))])
        jordan_chain_block(c, 0.0)  # validates the float chain closes
        r = p.c_range
        q[r.start:r.stop, 0:2 * p.k] = chain
        blocks.append((2 * p.k, 0.0))
        col = 2 * p.k
    if p.m:
        a, _, b = extract_blocks(h, p)
        for block, r in ((a, p.a_range), (b, p.b_range)):
            w, v = _hermitian_eig(block)
            q[r.start:r.stop, col:col + p.m] = v
            blocks.extend((1, float(x)) for x in w)
            col += p.m
    blocks = tuple(blocks)
    return JordanForm(canonical_matrix(blocks), q, blocks)


def jordan_residual(h, jf: JordanForm) -> float:
    """Max-norm of H q - q s."""
    mat = h.dense() if hasattr(h, "dense") else np.asarray(h, dtype=complex)
    return float(np.max(np.abs(mat @ jf.q - jf.q @ jf.s)))


def single_block_form(c, e: complex = 0.0, tol: float = CHAIN_TOL) -> JordanForm:
    """Jordan form of an arbitrary matrix that is one full Jordan block at ``e``."""
    c = np.asarray(c, dtype=complex)
    q = jordan_chain_block(c, e, tol)
    blocks = ((c.shape[0], e),)
    return JordanForm(canonical_matrix(blocks), q, blocks)
