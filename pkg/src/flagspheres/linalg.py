"""Dense linear algebra over indefinite symmetric bilinear forms.

Everything downstream (isotropic flags, transversality predicates, sphere
verification) reduces to Gram matrices, normalized minor determinants, and
numerical ranks computed here.  All values are immutable after construction
and every operation is a pure function.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "FormError",
    "DegenerateError",
    "SignMismatchError",
    "BilinearForm",
    "Subspace",
    "VerificationTolerances",
    "DEFAULT_TOL",
    "make_form",
    "gram",
    "pairing_nondegenerate",
    "normalized_det",
    "leading_minors",
    "span_rank",
    "orthonormalize",
    "signature_counts",
    "orthogonal_complement",
    "subspace_distance",
    "contains_subspace",
]


class FormError(ValueError):
    """Invalid form construction or dimension mismatch."""


class DegenerateError(ValueError):
    """A restriction of the form is numerically degenerate."""


class SignMismatchError(ValueError):
    """Gram-Schmidt produced self-pairings with the wrong signs."""


def _frozen(a):
    out = np.array(a, dtype=float)
    out.flags.writeable = False
    return out


@dataclass(frozen=True)
class VerificationTolerances:
    """Numerical thresholds used by all predicates.

    det_tol bounds normalized minor determinants away from zero, rank_tol is
    the relative singular-value cutoff, residual_tol bounds residuals of
    algebraic identities.
    """

    det_tol: float = 1e-9
    rank_tol: float = 1e-10
    residual_tol: float = 1e-10

    def __post_init__(self):
        if not (self.det_tol > 0 and self.rank_tol > 0 and self.residual_tol > 0):
            raise ValueError("tolerances must be strictly positive")


DEFAULT_TOL = VerificationTolerances()


def signature_counts(matrix, tol=1e-9):
    """Return (n_positive, n_negative, n_zero) eigenvalue counts of a symmetric matrix."""
    eig = np.linalg.eigvalsh(np.asarray(matrix, dtype=float))
    scale = max(np.max(np.abs(eig)), 1.0)
    pos = int(np.sum(eig > tol * scale))
    neg = int(np.sum(eig < -tol * scale))
    return pos, neg, len(eig) - pos - neg


@dataclass(frozen=True)
class BilinearForm:
    """A signature-(p, q) symmetric bilinear form with a distinguished basis."""

    p: int
    q: int
    matrix: np.ndarray
    convention: str = "diagonal"

    def __post_init__(self):
        object.__setattr__(self, "matrix", _frozen(self.matrix))
        m = self.matrix
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise FormError("form matrix must be square")
        if m.shape[0] != self.p + self.q:
            raise FormError("form size does not match p+q")
        if np.max(np.abs(m - m.T)) > 1e-12:
            raise FormError("form matrix must be symmetric")
        pos, neg, zero = signature_counts(m)
        if (pos, neg) != (self.p, self.q) or zero:
            raise FormError(f"matrix has signature ({pos},{neg}), expected ({self.p},{self.q})")

    @property
    def dim(self):
        return self.p + self.q

    def apply(self, u, v):
        """Evaluate the form on a pair of vectors."""
        return float(np.asarray(u) @ self.matrix @ np.asarray(v))

    def q_value(self, u):
        return self.apply(u, u)

    def to_json(self):
        return {"p": self.p, "q": self.q, "convention": self.convention}

    @staticmethod
    def from_json(data):
        return make_form(int(data["p"]), int(data["q"]), data.get("convention", "diagonal"))


def make_form(p, q, convention="diagonal"):
    """Build a standard form of signature (p, q) in one of three basis conventions.

    ``diagonal`` is diag(+1 x p, -1 x q).  ``antidiagonal`` (requires p == q)
    has ones on the antidiagonal.  ``B-split`` (requires q == p + 1) is the
    antidiagonal matrix of size 2p+1 whose middle entry is -1; both split
    conventions make the standard basis vectors isotropic.
    """
    if p < 0 or q < 0 or p + q < 1:
        raise FormError("need p, q >= 0 and p + q >= 1")
    n = p + q
    if convention == "diagonal":
        m = np.diag(np.concatenate([np.ones(p), -np.ones(q)]))
    elif convention == "antidiagonal":
        if p != q:
            raise FormError("antidiagonal convention requires p == q")
        m = np.fliplr(np.eye(n))
    elif convention == "B-split":
        if q != p + 1:
            raise FormError("B-split convention requires q == p + 1")
        m = np.fliplr(np.eye(n))
        m[p, p] = -1.0
    else:
        raise FormError(f"unknown convention {convention!r}")
    return BilinearForm(p, q, m, convention)


@dataclass(frozen=True)
class Subspace:
    """A subspace of R^n given by a basis matrix whose columns span it."""

    ambient_dim: int
    basis: np.ndarray
    dim: int = field(default=-1)

    def __post_init__(self):
        b = np.array(self.basis, dtype=float)
        if b.ndim == 1:
            b = b[:, None]
        object.__setattr__(self, "basis", _frozen(b))
        if b.shape[0] != self.ambient_dim:
            raise FormError("basis rows must match ambient dimension")
        if self.dim == -1:
            object.__setattr__(self, "dim", b.shape[1])
        if self.dim != b.shape[1]:
            raise FormError("dim must equal the number of basis columns")
        if b.shape[1] and span_rank(b.T) != b.shape[1]:
            raise DegenerateError("basis columns are not linearly independent")

    @staticmethod
    def from_vectors(vectors):
        cols = np.column_stack([np.asarray(v, dtype=float) for v in vectors])
        return Subspace(cols.shape[0], cols)

    def orthonormal_basis(self):
        """Euclidean-orthonormal basis of the same subspace (QR)."""
        if self.dim == 0:
            return np.zeros((self.ambient_dim, 0))
        qmat, _ = np.linalg.qr(self.basis)
        return qmat[:, : self.dim]

    def to_json(self):
        return {"ambient_dim": self.ambient_dim, "columns": [list(c) for c in self.basis.T]}

    @staticmethod
    def from_json(data):
        cols = np.array(data["columns"], dtype=float).T
        if cols.size == 0:
            cols = cols.reshape(int(data["ambient_dim"]), 0)
        return Subspace(int(data["ambient_dim"]), cols)


def gram(form, u, w):
    """Gram matrix G with G_ij = <u_i, w_j> for the basis columns of two subspaces."""
    if u.ambient_dim != form.dim or w.ambient_dim != form.dim:
        raise FormError("subspace ambient dimension does not match the form")
    return u.basis.T @ form.matrix @ w.basis


def normalized_det(g):
    """|det G| divided by the product of Euclidean row norms of G.

    The Hadamard bound makes the ratio scale-invariant and at most 1; a zero
    row yields 0.  Empty matrices count as nondegenerate (ratio 1).
    """
    g = np.asarray(g, dtype=float)
    if g.shape[0] == 0:
        return 1.0
    row_norms = np.linalg.norm(g, axis=1)
    if np.any(row_norms == 0.0):
        return 0.0
    return float(np.abs(np.linalg.det(g)) / np.prod(row_norms))


def pairing_nondegenerate(form, u, w, tol=DEFAULT_TOL):
    """True iff the form pairs two equal-dimensional subspaces nondegenerately.

    The test is scale-invariant: |det gram| is compared against det_tol times
    the product of the Gram matrix row norms.
    """
    if u.dim != w.dim:
        raise FormError("pairing requires subspaces of equal dimension")
    return normalized_det(gram(form, u, w)) > tol.det_tol


def leading_minors(matrix):
    """Determinants of the top-left m x m blocks, m = 1..size."""
    m = np.asarray(matrix, dtype=float)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise FormError("leading minors need a square matrix")
    return [float(np.linalg.det(m[:k, :k])) for k in range(1, m.shape[0] + 1)]


def span_rank(vectors, tol=DEFAULT_TOL):
    """Numerical rank of the span of a list of vectors via singular values."""
    arr = np.atleast_2d(np.asarray(vectors, dtype=float))
    if arr.size == 0:
        raise ValueError("span_rank needs a nonempty input")
    sing = np.linalg.svd(arr, compute_uv=False)
    if sing.size == 0 or sing[0] == 0.0:
        return 0
    return int(np.sum(sing > tol.rank_tol * sing[0]))


def orthonormalize(form, vectors, expected_signs, tol=DEFAULT_TOL):
    """Gram-Schmidt for an indefinite form, pivoting on the largest |self-pairing|.

    Returns vectors v_i with <v_i, v_j> = sign_i * delta_ij.  Raises
    DegenerateError when the restricted form degenerates and SignMismatchError
    when the produced sign sequence differs from ``expected_signs``.
    """
    vecs = [np.array(v, dtype=float) for v in vectors]
    if len(expected_signs) != len(vecs):
        raise ValueError("one expected sign per vector")
    out, signs = [], []
    remaining = list(vecs)
    while remaining:
        selfp = [form.apply(v, v) for v in remaining]
        scale = max(max(float(np.linalg.norm(v)) ** 2 for v in remaining), 1e-300)
        idx = int(np.argmax(np.abs(selfp)))
        if abs(selfp[idx]) <= tol.residual_tol * scale:
            raise DegenerateError("restricted form is degenerate (no usable pivot)")
        v = remaining.pop(idx)
        qv = form.apply(v, v)
        sgn = 1 if qv > 0 else -1
        v = v / np.sqrt(abs(qv))
        out.append(v)
        signs.append(sgn)
        remaining = [w - sgn * form.apply(w, v) * v for w in remaining]
    if signs != [int(s) for s in expected_signs]:
        raise SignMismatchError(f"produced signs {signs}, expected {list(expected_signs)}")
    return out


def orthogonal_complement(form, sub, tol=DEFAULT_TOL):
    """Orthogonal complement of a subspace with respect to the form."""
    if sub.dim == 0:
        return Subspace(form.dim, np.eye(form.dim))
    constraints = sub.basis.T @ form.matrix
    _, sing, vt = np.linalg.svd(constraints)
    cutoff = tol.rank_tol * (sing[0] if sing.size else 1.0)
    rank = int(np.sum(sing > cutoff))
    kernel = vt[rank:].T
    return Subspace(form.dim, kernel)


def subspace_distance(u, w):
    """sin of the largest principal angle between two equal-dimensional subspaces."""
    if u.dim != w.dim:
        return 1.0
    if u.dim == 0:
        return 0.0
    bu, bw = u.orthonormal_basis(), w.orthonormal_basis()
    proj_diff = bu @ bu.T - bw @ bw.T
    return float(np.linalg.norm(proj_diff, 2))


def contains_subspace(big, small, tol=DEFAULT_TOL):
    """True iff every basis vector of ``small`` lies in ``big`` (projection residual)."""
    if small.dim == 0:
        return True
    b = big.orthonormal_basis()
    res = small.basis - b @ (b.T @ small.basis)
    scale = max(float(np.linalg.norm(small.basis)), 1e-300)
    return float(np.linalg.norm(res)) <= max(tol.rank_tol * scale * 100, 1e-12 * scale)
