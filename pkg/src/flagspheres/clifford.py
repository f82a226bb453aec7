"""Explicit real matrix models of the Euclidean Clifford algebras Cl(n).

Base models for n <= 8 come from division-algebra left multiplications: the
n = 8 defining map acts on pairs of octonions by c(x) = [[0, -L_{x*}], [L_x, 0]],
and the smaller models are restrictions of its leading generators to invariant
subspaces (eigenspaces of intermediate volume elements).  Models for n > 8 are
tensor extensions

    c(u + v) = c_{n-8}(u) (x) w8  +  I (x) c_8(v)

where w8 is the image of the degree-8 volume element, which squares to +I and
anticommutes with every c_8 generator.  All generators are sparse, orthogonal,
and skew-symmetric, so the standard Euclidean inner product is a spin metric
on every model.

The module also houses the Radon-Hurwitz arithmetic, spinor module dimensions,
Z2-gradings, and the mod-8 classification data used by the maximality oracle.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np
import scipy.sparse as sp

from flagspheres.linalg import Subspace

__all__ = [
    "CliffordError",
    "CliffordRep",
    "SpinorModule",
    "Grading",
    "N_MAX",
    "radon_hurwitz",
    "spinor_dim",
    "module_dim",
    "clifford_model",
    "clifford_vector_op",
    "clifford_apply",
    "clifford_residual",
    "spin_metric_check",
    "spin_submodule",
    "sphere_to_spin_op",
    "z2_grading",
    "maximality_class",
    "grothendieck_row",
    "volume_element",
]

N_MAX = 24


class CliffordError(ValueError):
    """Unsupported dimension or malformed input."""


def radon_hurwitz(d):
    """Radon-Hurwitz number: for d = (2l+1) 16^m 2^j with 0 <= j <= 3, 8m + 2^j."""
    if d < 1:
        raise CliffordError("radon_hurwitz needs d >= 1")
    m = 0
    while d % 16 == 0:
        d //= 16
        m += 1
    j = 0
    while d % 2 == 0 and j < 3:
        d //= 2
        j += 1
    return 8 * m + 2**j


def spinor_dim(n):
    """Dimension d(n) of an irreducible degree-n spinor module.

    Writing n = 8k + r with 1 <= r <= 8: 16^k, 2*16^k, 4*16^k, 8*16^k for
    r = 1; 2; 3,4; 5,6,7,8 respectively.
    """
    if n < 1:
        raise CliffordError("spinor_dim needs n >= 1")
    k, r = divmod(n - 1, 8)
    r += 1
    base = {1: 1, 2: 2, 3: 4, 4: 4, 5: 8, 6: 8, 7: 8, 8: 8}[r]
    return base * 16**k


def module_dim(n):
    """Dimension of an irreducible real Cl(n)-module."""
    if n < 1:
        raise CliffordError("module_dim needs n >= 1")
    k, r = divmod(n - 1, 8)
    r += 1
    base = {1: 2, 2: 4, 3: 4, 4: 8, 5: 8, 6: 8, 7: 8, 8: 16}[r]
    return base * 16**k


@dataclass(frozen=True)
class CliffordRep:
    """A defining map c: R^n -> End(R^D) with sparse orthogonal generators.

    The spin metric of every constructed model is the standard Euclidean inner
    product; ``spin_metric_check`` certifies this rather than any averaging.
    """

    n: int
    D: int
    generators: tuple

    @property
    def metric(self):
        return sp.identity(self.D, format="csr")

    def generator_dense(self, i):
        return self.generators[i].toarray()

    def to_json(self):
        if self.D > 64:
            raise CliffordError("dense JSON dump supported only for D <= 64")
        return {
            "n": self.n,
            "D": self.D,
            "generators": [[list(row) for row in g.toarray()] for g in self.generators],
        }


@dataclass(frozen=True)
class SpinorModule:
    """An irreducible even-subalgebra submodule of a Clifford module."""

    parent: CliffordRep
    basis: np.ndarray
    plus_dim: int

    @property
    def projector(self):
        return self.basis @ self.basis.T


@dataclass(frozen=True)
class Grading:
    """A splitting W0 + W1 exchanged by every generator."""

    w0: Subspace
    w1: Subspace


def _octonion_blocks():
    from flagspheres.algebras import CompAlgebra

    oct_alg = CompAlgebra((-1, -1, -1))
    eye = np.eye(8)
    lmats, lconj = [], []
    for i in range(8):
        e = eye[:, i]
        lmats.append(np.column_stack([oct_alg.mult_coords(e, eye[:, j]) for j in range(8)]))
        ec = oct_alg.conj_coords(e)
        lconj.append(np.column_stack([oct_alg.mult_coords(ec, eye[:, j]) for j in range(8)]))
    return lmats, lconj


def _csr(mat):
    out = sp.csr_matrix(mat)
    out.eliminate_zeros()
    return out


@lru_cache(maxsize=None)
def _base_model_16():
    """The n = 8 model on R^16 built from octonion left multiplications."""
    lmats, lconj = _octonion_blocks()
    gens = []
    for i in range(8):
        top = np.hstack([np.zeros((8, 8)), -lconj[i]])
        bot = np.hstack([lmats[i], np.zeros((8, 8))])
        gens.append(_csr(np.vstack([top, bot])))
    return CliffordRep(8, 16, tuple(gens))


def volume_element(rep, m=None):
    """Sparse image of the degree-m volume element e_1 ... e_m (default m = n)."""
    m = rep.n if m is None else m
    out = sp.identity(rep.D, format="csr")
    for i in range(m):
        out = out @ rep.generators[i]
    return out


def _plus_minus_eigenbasis(sym_involution):
    """Orthonormal eigenbases (B_plus, B_minus) of a symmetric involution."""
    mat = sym_involution.toarray() if sp.issparse(sym_involution) else np.asarray(sym_involution)
    eig, vecs = np.linalg.eigh(mat)
    return vecs[:, eig > 0.5], vecs[:, eig < -0.5]


def _restrict(rep, n_keep, basis):
    gens = tuple(_csr(basis.T @ (rep.generators[i] @ basis)) for i in range(n_keep))
    return CliffordRep(n_keep, basis.shape[1], gens)


@lru_cache(maxsize=None)
def _base_model(n):
    """Models for 1 <= n <= 8 by restriction down the chain from n = 8."""
    if n == 8:
        return _base_model_16()
    if n == 7:
        parent = _base_model(8)
        b_plus, _ = _plus_minus_eigenbasis(volume_element(parent, 7))
        return _restrict(parent, 7, b_plus)
    if n in (4, 5, 6):
        return _restrict(_base_model(n + 1), n, np.eye(8))
    if n == 3:
        parent = _base_model(4)
        b_plus, _ = _plus_minus_eigenbasis(volume_element(parent, 3))
        return _restrict(parent, 3, b_plus)
    if n == 2:
        return _restrict(_base_model(3), 2, np.eye(4))
    if n == 1:
        parent = _base_model(2)
        w0 = np.zeros(4)
        w0[0] = 1.0
        w1 = parent.generators[0] @ w0
        return _restrict(parent, 1, np.column_stack([w0, w1]))
    raise CliffordError("base models exist for 1 <= n <= 8")


@lru_cache(maxsize=None)
def clifford_model(n, n_max=N_MAX):
    """An irreducible Cl(n)-model with sparse generators, 1 <= n <= n_max."""
    if not 1 <= n <= n_max:
        raise CliffordError(f"clifford_model supports 1 <= n <= {n_max}")
    if n <= 8:
        return _base_model(n)
    small = clifford_model(n - 8, n_max)
    big = _base_model(8)
    omega = volume_element(big, 8)
    eye_small = sp.identity(small.D, format="csr")
    gens = [sp.kron(small.generators[i], omega, format="csr") for i in range(n - 8)]
    gens += [sp.kron(eye_small, big.generators[j], format="csr") for j in range(8)]
    return CliffordRep(n, small.D * 16, tuple(gens))


def clifford_vector_op(rep, v):
    """Sparse matrix of c(v) = sum_i v_i c(e_i)."""
    v = np.asarray(v, dtype=float)
    if v.shape != (rep.n,):
        raise CliffordError("vector length does not match generator count")
    out = v[0] * rep.generators[0]
    for i in range(1, rep.n):
        if v[i] != 0.0:
            out = out + v[i] * rep.generators[i]
    return out


def clifford_apply(rep, v, w):
    """Apply c(v) to a module vector w."""
    w = np.asarray(w, dtype=float)
    if w.shape[0] != rep.D:
        raise CliffordError("module vector length does not match D")
    return clifford_vector_op(rep, v) @ w


def clifford_residual(rep):
    """Max over i <= j of || c_i c_j + c_j c_i + 2 delta_ij I ||_max."""
    worst = 0.0
    eye = sp.identity(rep.D, format="csr")
    for i in range(rep.n):
        for j in range(i, rep.n):
            acomm = rep.generators[i] @ rep.generators[j] + rep.generators[j] @ rep.generators[i]
            if i == j:
                acomm = acomm + 2.0 * eye
            if acomm.nnz:
                worst = max(worst, float(np.max(np.abs(acomm.data))))
    return worst


def spin_metric_check(rep):
    """Max residual of orthogonality and skew-adjointness of the generators."""
    worst = 0.0
    eye = sp.identity(rep.D, format="csr")
    for g in rep.generators:
        ortho = g.T @ g - eye
        skew = g.T + g
        for mat in (ortho, skew):
            if mat.nnz:
                worst = max(worst, float(np.max(np.abs(mat.data))))
    return worst


@lru_cache(maxsize=None)
def _grading_bases(n):
    """Orthonormal bases (B0, B1) of the Z2-grading of the degree-n model."""
    if n % 8 not in (0, 1, 2, 4):
        raise CliffordError("Z2-graded modules exist only for n = 0,1,2,4 mod 8")
    rep = clifford_model(n)
    if n == 1:
        return np.eye(2)[:, :1], np.eye(2)[:, 1:]
    if n == 2:
        w0 = np.zeros(4)
        w0[0] = 1.0
        c1, c2 = (rep.generators[i].toarray() for i in range(2))
        b0 = np.column_stack([w0, c1 @ (c2 @ w0)])
        b1 = np.column_stack([c1 @ w0, c2 @ w0])
        return b0, b1
    if n in (4, 8):
        return _plus_minus_eigenbasis(volume_element(rep))
    small0, small1 = _grading_bases(n - 8)
    big0, big1 = _grading_bases(8)
    b0 = np.hstack([np.kron(small0, big0), np.kron(small1, big1)])
    b1 = np.hstack([np.kron(small1, big0), np.kron(small0, big1)])
    return b0, b1


def z2_grading(rep):
    """The grading W0 + W1 of a model with n = 0,1,2,4 mod 8."""
    b0, b1 = _grading_bases(rep.n)
    return Grading(Subspace(rep.D, b0), Subspace(rep.D, b1))


def spin_submodule(n, minus=False):
    """Projector data for an irreducible even-subalgebra submodule.

    For n = 3,5,6,7 mod 8 the full module stays irreducible and the projector
    is the identity.  Otherwise the two components of the Z2-grading are the
    two non-isomorphic submodules; ``minus`` selects the second one.
    """
    rep = clifford_model(n)
    if n % 8 in (3, 5, 6, 7):
        basis = np.eye(rep.D)
    else:
        b0, b1 = _grading_bases(n)
        basis = b1 if minus else b0
    sm = SpinorModule(rep, basis, basis.shape[1])
    if sm.plus_dim != spinor_dim(n):
        raise CliffordError("submodule dimension disagrees with spinor_dim")
    return sm


def sphere_to_spin_op(sm, x0, x):
    """Orthogonal d x d matrix of c(x0) c(x) restricted to the submodule."""
    x0 = np.asarray(x0, dtype=float)
    x = np.asarray(x, dtype=float)
    for v in (x0, x):
        if abs(np.linalg.norm(v) - 1.0) > 1e-9:
            raise CliffordError("sphere_to_spin_op needs unit vectors")
    rep = sm.parent
    moved = clifford_vector_op(rep, x0) @ (clifford_vector_op(rep, x) @ sm.basis)
    return sm.basis.T @ moved


def maximality_class(n):
    """True iff spinor spheres of sphere dimension n-1 are maximally transverse."""
    if n < 2:
        raise CliffordError("maximality_class needs n >= 2")
    return n % 8 in (0, 1, 2, 4)


_GROTHENDIECK_TABLE = {
    0: ("Z", "Z", "Z", "Z"),
    1: ("Z", "Z2", "Z2", "Z2"),
    2: ("Z", "Z2", "Z2", "Z2"),
    3: ("Z+Z", "0", "0", "0"),
    4: ("Z", "Z", "Z", "Z"),
    5: ("Z", "0", "0", "0"),
    6: ("Z", "0", "0", "0"),
    7: ("Z+Z", "0", "0", "0"),
}


def grothendieck_row(n):
    """Classification data keyed by n mod 8.

    Returns the Grothendieck group of ungraded module classes, the quotient by
    restrictions from one degree up, the reduced KO-group of the n-sphere, and
    the stable homotopy group it matches.
    """
    if n < 0:
        raise CliffordError("grothendieck_row needs n >= 0")
    m_n, quotient, ko, stable = _GROTHENDIECK_TABLE[n % 8]
    return {"M_n": m_n, "quotient": quotient, "KO_tilde": ko, "stable_pi": stable}
