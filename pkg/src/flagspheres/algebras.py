"""Real composition algebras via the (split) Cayley-Dickson doubling process.

The seven algebras R, C, C', H, H', O, O' are realized on flat coordinate
vectors of length 2^k; a doubling step with sign eps multiplies pairs by

    (a, b) (c, d) = (a c + eps d b*,  a* d + c b)

so eps = -1 doubles R -> C -> H -> O and eps = +1 produces the split forms.
The split octonions carry the seven-dimensional cross product of signature
(3, 4) used by the exceptional geometry: x X y = Im(x y) on imaginary
elements, with annihilator three-planes of null vectors.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from flagspheres.linalg import DEFAULT_TOL, BilinearForm, Subspace, make_form

__all__ = [
    "AlgebraError",
    "NonNullError",
    "CompAlgebra",
    "AlgebraElement",
    "CrossProductSpace",
    "CANONICAL_TOWERS",
    "build_algebra",
    "multiply",
    "conjugate",
    "norm",
    "bilinear",
    "left_mult_operator",
    "cross_product",
    "cross_operator",
    "cross_space",
    "annihilator",
    "r_cross_basis",
    "cross_structure_constants",
]


class AlgebraError(ValueError):
    """Algebra construction or mixing error."""


class NonNullError(ValueError):
    """Annihilator requested for a vector that is not null."""


# With the pairing (a, b) <-> a + l b, the right-handed quaternion triple
# (i, j, k) sits at coordinate indices (1, 3, 2): i * e3 = e2.
QUATERNION_IJK = (1, 3, 2)

# Realization sequences fixed once and for all: each composition algebra is
# reached from R by the recorded signs of the doubling steps.
CANONICAL_TOWERS = {
    "R": (),
    "C": (-1,),
    "C'": (+1,),
    "H": (-1, -1),
    "H'": (-1, +1),
    "O": (-1, -1, -1),
    "O'": (-1, -1, +1),
}


def _mult_rec(tower, x, y):
    """Cayley-Dickson product; x, y have shape (..., 2^len(tower))."""
    if not tower:
        return x * y
    half = x.shape[-1] // 2
    eps = tower[-1]
    sub = tower[:-1]
    a, b = x[..., :half], x[..., half:]
    c, d = y[..., :half], y[..., half:]
    bs = _conj_rec(sub, b)
    astar = _conj_rec(sub, a)
    top = _mult_rec(sub, a, c) + eps * _mult_rec(sub, d, bs)
    bot = _mult_rec(sub, astar, d) + _mult_rec(sub, c, b)
    return np.concatenate([top, bot], axis=-1)


def _conj_rec(tower, x):
    if not tower:
        return x
    half = x.shape[-1] // 2
    return np.concatenate([_conj_rec(tower[:-1], x[..., :half]), -x[..., half:]], axis=-1)


def _signature(tower):
    p, q = 1, 0
    for eps in tower:
        if eps == -1:
            p, q = 2 * p, 2 * q
        else:
            p, q = p + q, q + p
    return p, q


@dataclass(frozen=True)
class CompAlgebra:
    """A composition algebra fixed by its tower of doubling signs."""

    epsilon_tower: tuple

    def __post_init__(self):
        tower = tuple(int(e) for e in self.epsilon_tower)
        if any(e not in (-1, 1) for e in tower):
            raise AlgebraError("tower entries must be +1 or -1")
        if len(tower) > 3:
            raise AlgebraError("towers longer than 3 are out of scope (sedenions)")
        object.__setattr__(self, "epsilon_tower", tower)

    @property
    def dim(self):
        return 2 ** len(self.epsilon_tower)

    @property
    def form_signature(self):
        return _signature(self.epsilon_tower)

    @property
    def name(self):
        for name, tower in CANONICAL_TOWERS.items():
            if tower == self.epsilon_tower:
                return name
        return f"CD{list(self.epsilon_tower)}"

    def element(self, coords):
        return AlgebraElement(self, np.asarray(coords, dtype=float))

    def unit(self):
        coords = np.zeros(self.dim)
        coords[0] = 1.0
        return self.element(coords)

    def basis_element(self, i):
        coords = np.zeros(self.dim)
        coords[i] = 1.0
        return self.element(coords)

    def mult_coords(self, x, y):
        """Product on raw coordinate arrays; broadcasts over leading axes."""
        return _mult_rec(self.epsilon_tower, np.asarray(x, dtype=float), np.asarray(y, dtype=float))

    def conj_coords(self, x):
        return _conj_rec(self.epsilon_tower, np.asarray(x, dtype=float))

    def norm_coords(self, x):
        """Quadratic form q(x) = Re(x x*); broadcasts over leading axes."""
        x = np.asarray(x, dtype=float)
        return self.mult_coords(x, self.conj_coords(x))[..., 0]

    def bilinear_coords(self, x, y):
        return 0.5 * (self.norm_coords(np.asarray(x) + np.asarray(y)) - self.norm_coords(x) - self.norm_coords(y))

    def coordinate_signs(self):
        """Diagonal of the quadratic form in coordinate order."""
        sig = np.ones(self.dim)
        for level, eps in enumerate(self.epsilon_tower):
            block = 2 ** (level + 1)
            half = block // 2
            for r in range(self.dim // block):
                lo = r * block + half
                sig[lo : lo + half] *= -eps
        return sig

    def form(self):
        p, q = self.form_signature
        sig = self.coordinate_signs()
        assert int(np.sum(sig > 0)) == p and int(np.sum(sig < 0)) == q
        return BilinearForm(p, q, np.diag(sig), "diagonal-cd")


@dataclass(frozen=True)
class AlgebraElement:
    """An element of a composition algebra as a flat coordinate vector."""

    algebra: CompAlgebra
    coords: np.ndarray

    def __post_init__(self):
        c = np.array(self.coords, dtype=float)
        c.flags.writeable = False
        object.__setattr__(self, "coords", c)
        if c.shape != (self.algebra.dim,):
            raise AlgebraError("coordinate length does not match algebra dimension")

    def to_json(self):
        return {"tower": list(self.algebra.epsilon_tower), "coords": list(self.coords)}

    @staticmethod
    def from_json(data):
        return AlgebraElement(CompAlgebra(tuple(data["tower"])), np.array(data["coords"], dtype=float))


def build_algebra(tower):
    """Composition algebra for a tower of doubling signs (length <= 3)."""
    return CompAlgebra(tuple(tower))


def algebra_by_name(name):
    if name not in CANONICAL_TOWERS:
        raise AlgebraError(f"unknown algebra {name!r}; choose from {sorted(CANONICAL_TOWERS)}")
    return CompAlgebra(CANONICAL_TOWERS[name])


def multiply(x, y):
    if x.algebra != y.algebra:
        raise AlgebraError("cannot multiply elements of different algebras")
    return AlgebraElement(x.algebra, x.algebra.mult_coords(x.coords, y.coords))


def conjugate(x):
    return AlgebraElement(x.algebra, x.algebra.conj_coords(x.coords))


def norm(x):
    """q(x) = Re(x x*); indefinite for the split algebras."""
    return float(x.algebra.norm_coords(x.coords))


def bilinear(x, y):
    if x.algebra != y.algebra:
        raise AlgebraError("cannot pair elements of different algebras")
    return float(x.algebra.bilinear_coords(x.coords, y.coords))


def left_mult_operator(x):
    """Matrix of y -> x y in the standard coordinate basis."""
    alg = x.algebra
    columns = alg.mult_coords(x.coords, np.eye(alg.dim))
    return columns.T


# --- the split-octonion cross product on R^{3,4} ---------------------------

_OSPLIT = CompAlgebra(CANONICAL_TOWERS["O'"])
# imaginary coordinates of O' in order (i, j, k, l, li, lj, lk)
_IM_LABELS = ("i", "j", "k", "l", "li", "lj", "lk")


def _embed_im(v):
    v = np.asarray(v, dtype=float)
    out = np.zeros(v.shape[:-1] + (8,))
    out[..., 1:] = v
    return out


def cross_product(u, v):
    """Cross product on R^{3,4}: the imaginary part of the split-octonion product.

    Accepts arrays of shape (..., 7) and broadcasts.
    """
    u = np.asarray(u, dtype=float)
    v = np.asarray(v, dtype=float)
    if u.shape[-1] != 7 or v.shape[-1] != 7:
        raise AlgebraError("cross product is defined on 7-vectors")
    prod = _OSPLIT.mult_coords(_embed_im(u), _embed_im(v))
    return prod[..., 1:]


def cross_operator(x):
    """7x7 matrix of y -> x X y."""
    return np.column_stack([cross_product(x, np.eye(7)[:, j]) for j in range(7)])


@dataclass(frozen=True)
class CrossProductSpace:
    """R^{3,4} with the split-octonion cross product and its form."""

    basis_labels: tuple
    form: BilinearForm

    def q(self, u):
        return self.form.q_value(u)

    def pair(self, u, v):
        return self.form.apply(u, v)


def cross_space():
    form = BilinearForm(3, 4, np.diag([1.0, 1.0, 1.0, -1.0, -1.0, -1.0, -1.0]))
    return CrossProductSpace(_IM_LABELS, form)


def annihilator(x, tol=DEFAULT_TOL):
    """The 3-dimensional isotropic kernel of y -> x X y for a null x != 0.

    A non-null input is an error: the callers always intend null vectors and a
    silent fall-back to span{x} would hide bugs.
    """
    x = np.asarray(x, dtype=float)
    nx = float(np.linalg.norm(x))
    if nx == 0.0:
        raise NonNullError("annihilator of the zero vector is undefined")
    space = cross_space()
    if abs(space.q(x)) > 1e-8 * nx * nx:
        raise NonNullError("annihilator is 3-dimensional only for null vectors")
    op = cross_operator(x)
    _, sing, vt = np.linalg.svd(op)
    kernel = vt[sing <= tol.rank_tol * sing[0]].T
    if kernel.shape[1] != 3:
        raise NonNullError(f"kernel dimension {kernel.shape[1]} != 3; input too far from the null cone")
    return Subspace(7, kernel)


_SQ2 = np.sqrt(0.5)

# Null basis of Im(O') adapted to a maximal split torus: x_i X x_j lands on
# x_{i+j} (or vanishes), the Gram matrix is antidiagonal with middle -1, and
# Ann(x_3) = span{x_3, x_2, x_1}.  Rows are coordinates in (i,j,k,l,li,lj,lk).
_R_CROSS_COLUMNS = np.array(
    [
        [_SQ2, 0, 0, 0, _SQ2, 0, 0],  # x_3  = (i + li)/sqrt2
        [0, _SQ2, 0, 0, 0, -_SQ2, 0],  # x_2  = (j - lj)/sqrt2
        [0, 0, _SQ2, 0, 0, 0, -_SQ2],  # x_1  = (k - lk)/sqrt2
        [0, 0, 0, 1.0, 0, 0, 0],  # x_0  = l
        [0, 0, _SQ2, 0, 0, 0, _SQ2],  # x_-1 = (k + lk)/sqrt2
        [0, _SQ2, 0, 0, 0, _SQ2, 0],  # x_-2 = (j + lj)/sqrt2
        [_SQ2, 0, 0, 0, -_SQ2, 0, 0],  # x_-3 = (i - li)/sqrt2
    ]
).T

R_CROSS_LABELS = (3, 2, 1, 0, -1, -2, -3)


def r_cross_basis():
    """The graded null basis (x_3, ..., x_-3) of R^{3,4}, as a dict by label."""
    return {lab: np.array(_R_CROSS_COLUMNS[:, idx]) for idx, lab in enumerate(R_CROSS_LABELS)}


def cross_structure_constants(tol=1e-12):
    """Rows (i, j, i+j, c) with x_i X x_j = c x_{i+j}, nonzero entries only.

    Raises if any product fails to be a multiple of the graded basis vector,
    which certifies the basis really is graded.
    """
    basis = r_cross_basis()
    rows = []
    for li in R_CROSS_LABELS:
        for lj in R_CROSS_LABELS:
            prod = cross_product(basis[li], basis[lj])
            mag = float(np.linalg.norm(prod))
            if mag <= tol:
                continue
            lk = li + lj
            if lk not in basis:
                raise AlgebraError(f"x_{li} X x_{lj} nonzero but index {lk} is absent")
            target = basis[lk]
            coeff = float(prod @ target) / float(target @ target)
            if float(np.linalg.norm(prod - coeff * target)) > 1e-10:
                raise AlgebraError(f"x_{li} X x_{lj} is not a multiple of x_{lk}")
            rows.append((li, lj, lk, coeff))
    return rows
