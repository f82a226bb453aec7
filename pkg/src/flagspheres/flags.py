"""Flags and transversality predicates for types A, B, D and split G2.

A flag is a nested chain of subspaces indexed by a symmetric index set.  For
the isotropic kinds the components are totally isotropic for the recorded
form and transversality of a pair means each pair of same-index components is
paired nondegenerately by the form; for type A it means complementary-index
components span the ambient space.

Type D full flags are stored in the sub-maximal model (indices 1..p-1) with
the two maximal isotropic parents derived on demand; a stored "p+" component
is a view into the positive orbit.  Mixed-signature isotropic flags that
arise inside direct sums use the internal kind "ISO".
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from flagspheres.algebras import annihilator, cross_operator, cross_product, cross_space
from flagspheres.linalg import (
    DEFAULT_TOL,
    BilinearForm,
    FormError,
    Subspace,
    contains_subspace,
    gram,
    make_form,
    normalized_det,
    orthogonal_complement,
    pairing_nondegenerate,
    span_rank,
    subspace_distance,
)

__all__ = [
    "FlagError",
    "FlagType",
    "Flag",
    "FlagPath",
    "TOP_PLUS",
    "TOP_MINUS",
    "is_transverse",
    "d_orbit_sign",
    "two_parents",
    "project_flag",
    "embed",
    "EMBEDDINGS",
    "pad_negative",
    "pad_positive",
    "isotropic_flag_to_a",
    "iso_direct_sum",
    "flag_direct_sum",
    "validate_flag_path",
    "flag_path_exists",
    "g2_pointed_photon",
    "flag_distance",
]

TOP_PLUS = "p+"
TOP_MINUS = "p-"


class FlagError(ValueError):
    """Malformed flag, mismatched pair, or unsupported operation."""


@dataclass(frozen=True)
class FlagType:
    """Kind and parameters of a flag manifold.

    kind "A" with params (d,); "B" with params (p,) for R^{p,p+1}; "D" with
    params (p,) for R^{p,p}; "G2" with no params (fixed R^{3,4}); internal
    kind "ISO" with params (p, q) for isotropic flags of a general signature.
    """

    kind: str
    params: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "params", tuple(int(x) for x in self.params))
        kind, params = self.kind, self.params
        if kind == "A":
            if len(params) != 1 or params[0] < 1:
                raise FlagError("type A needs params (d,) with d >= 1")
        elif kind == "B":
            if len(params) != 1 or params[0] < 1:
                raise FlagError("type B needs params (p,) with p >= 1")
        elif kind == "D":
            if len(params) != 1 or params[0] < 2:
                raise FlagError("type D needs params (p,) with p >= 2")
        elif kind == "G2":
            if params:
                raise FlagError("type G2 takes no params")
        elif kind == "ISO":
            if len(params) != 2 or min(params) < 0 or sum(params) < 1:
                raise FlagError("kind ISO needs params (p, q)")
        else:
            raise FlagError(f"unknown flag kind {kind!r}")

    @property
    def ambient_dim(self):
        if self.kind == "A":
            return self.params[0]
        if self.kind == "B":
            return 2 * self.params[0] + 1
        if self.kind == "D":
            return 2 * self.params[0]
        if self.kind == "G2":
            return 7
        return self.params[0] + self.params[1]

    def default_form(self):
        """Standard diagonal-convention form for the isotropic kinds."""
        if self.kind == "A":
            return None
        if self.kind == "B":
            return make_form(self.params[0], self.params[0] + 1)
        if self.kind == "D":
            return make_form(self.params[0], self.params[0])
        if self.kind == "G2":
            return cross_space().form
        return make_form(self.params[0], self.params[1])


def _theta_key(k):
    return (1, 0) if isinstance(k, str) else (0, int(k))


@dataclass(frozen=True)
class Flag:
    """A nested chain of subspaces indexed by theta."""

    flag_type: FlagType
    theta: tuple
    subspaces: dict
    form: BilinearForm = None
    validate: bool = field(default=True, compare=False)

    def __post_init__(self):
        theta = tuple(self.theta)
        object.__setattr__(self, "theta", theta)
        if self.form is None and self.flag_type.kind != "A":
            object.__setattr__(self, "form", self.flag_type.default_form())
        if self.validate:
            self._check(DEFAULT_TOL)

    def _check(self, tol):
        kind = self.flag_type.kind
        dim = self.flag_type.ambient_dim
        keys = sorted(self.theta, key=_theta_key)
        if list(self.theta) != keys:
            raise FlagError("theta must be ascending (top label last)")
        for k in self.theta:
            if k not in self.subspaces:
                raise FlagError(f"missing subspace for index {k}")
        if kind == "A":
            numeric = [k for k in self.theta]
            if any(isinstance(k, str) for k in numeric):
                raise FlagError("type A indices are integers")
            for k in numeric:
                if (dim - k) not in numeric:
                    raise FlagError(f"theta not symmetric: {k} present, {dim - k} missing")
        if kind in ("B", "D", "G2", "ISO"):
            qmat = self.form.matrix
            for k in self.theta:
                b = self.subspaces[k].basis
                if b.shape[1]:
                    scale = max(float(np.linalg.norm(b)) ** 2, 1e-300)
                    if float(np.max(np.abs(b.T @ qmat @ b))) > 1e-8 * scale:
                        raise FlagError(f"component {k} is not totally isotropic")
        if kind == "D":
            p = self.flag_type.params[0]
            tops = [k for k in self.theta if isinstance(k, str)]
            if tops and p % 2 == 1:
                raise FlagError("labeled top components are self-opposite only for even p")
            if TOP_PLUS in self.theta and d_orbit_sign(self.subspaces[TOP_PLUS], self.form, tol) != 1:
                raise FlagError("component labeled p+ has orbit sign -1")
            if TOP_MINUS in self.theta and d_orbit_sign(self.subspaces[TOP_MINUS], self.form, tol) != -1:
                raise FlagError("component labeled p- has orbit sign +1")
        if kind == "G2":
            if tuple(self.theta) != (1, 2):
                raise FlagError("G2 flags have theta (1, 2)")
            line = self.subspaces[1]
            photon = self.subspaces[2]
            if line.dim != 1 or photon.dim != 2:
                raise FlagError("G2 flag needs a line and a plane")
            u, v = photon.basis[:, 0], photon.basis[:, 1]
            scale = max(float(np.linalg.norm(u)) * float(np.linalg.norm(v)), 1e-300)
            if float(np.linalg.norm(cross_product(u, v))) > 1e-8 * scale:
                raise FlagError("photon is not closed under the cross product")
        chain = [k for k in self.theta]
        for lo, hi in zip(chain, chain[1:]):
            if not contains_subspace(self.subspaces[hi], self.subspaces[lo]):
                raise FlagError(f"component {lo} is not contained in component {hi}")

    @property
    def numeric_theta(self):
        return tuple(k for k in self.theta if not isinstance(k, str))

    def component(self, k):
        return self.subspaces[k]

    def to_json(self):
        params = {"d": self.flag_type.params[0]} if self.flag_type.kind == "A" else (
            {"p": self.flag_type.params[0]} if self.flag_type.kind in ("B", "D") else (
                {} if self.flag_type.kind == "G2" else
                {"p": self.flag_type.params[0], "q": self.flag_type.params[1]}))
        return {
            "kind": self.flag_type.kind,
            "params": params,
            "theta": [k if isinstance(k, str) else int(k) for k in self.theta],
            "subspaces": {str(k): [list(c) for c in self.subspaces[k].basis.T] for k in self.theta},
        }

    @staticmethod
    def from_json(data):
        kind = data["kind"]
        params = data.get("params", {})
        if kind == "A":
            ft = FlagType("A", (params["d"],))
        elif kind in ("B", "D"):
            ft = FlagType(kind, (params["p"],))
        elif kind == "G2":
            ft = FlagType("G2")
        else:
            ft = FlagType("ISO", (params["p"], params["q"]))
        dim = ft.ambient_dim
        theta = tuple(k if isinstance(k, str) else int(k) for k in data["theta"])
        subs = {}
        for k in theta:
            cols = np.array(data["subspaces"][str(k)], dtype=float).T
            if cols.size == 0:
                cols = cols.reshape(dim, 0)
            subs[k] = Subspace(dim, cols)
        return Flag(ft, theta, subs)


def _require_comparable(f1, f2):
    if f1.flag_type != f2.flag_type or tuple(f1.theta) != tuple(f2.theta):
        raise FlagError("flags live in different flag manifolds")
    if f1.flag_type.kind != "A" and not np.allclose(f1.form.matrix, f2.form.matrix, atol=1e-12):
        raise FlagError("flags carry different forms")


def is_transverse(f1, f2, tol=DEFAULT_TOL):
    """Transversality of a pair of flags in the same self-opposite manifold."""
    _require_comparable(f1, f2)
    kind = f1.flag_type.kind
    if kind == "A":
        d = f1.flag_type.ambient_dim
        for k in f1.theta:
            if k in (0, d):
                continue
            together = np.hstack([f1.subspaces[k].basis, f2.subspaces[d - k].basis])
            if together.shape[1] == d:
                if normalized_det(together) <= tol.det_tol:
                    return False
            elif span_rank(together.T, tol) < d:
                return False
        return True
    for k in f1.theta:
        if f1.subspaces[k].dim == 0:
            continue
        if not pairing_nondegenerate(f1.form, f1.subspaces[k], f2.subspaces[k], tol):
            return False
    return True


def _split_reference(form):
    """Orthonormal bases (U, V) of the positive and negative reference factors."""
    if form.convention in ("diagonal", "diagonal-cd"):
        p = form.p
        eye = np.eye(form.dim)
        return eye[:, :p], eye[:, p:]
    if form.convention == "antidiagonal":
        p = form.p
        n = form.dim
        u = np.zeros((n, p))
        v = np.zeros((n, p))
        s = np.sqrt(0.5)
        for i in range(p):
            u[i, i] = s
            u[n - 1 - i, i] = s
            v[i, i] = s
            v[n - 1 - i, i] = -s
        return u, v
    eig, vecs = np.linalg.eigh(form.matrix)
    return vecs[:, eig > 0], vecs[:, eig < 0]


def d_orbit_sign(t, form, tol=DEFAULT_TOL):
    """Orbit sign of a maximal isotropic subspace of R^{p,p}.

    The subspace is written as the graph of an anti-isometry from the fixed
    positive reference factor to the negative one; the sign of the graph
    matrix determinant in the reference orientations is the orbit invariant,
    normalized so the standard isotropic coordinate plane has sign +1.
    """
    if form.p != form.q:
        raise FlagError("orbit signs exist only in split signature (p, p)")
    if t.dim != form.p:
        raise FlagError("orbit signs are defined for maximal isotropic subspaces")
    u, v = _split_reference(form)
    coords_p = u.T @ t.basis
    coords_n = v.T @ t.basis
    det_p, det_n = np.linalg.det(coords_p), np.linalg.det(coords_n)
    if abs(det_p) < 1e-300:
        raise FlagError("subspace is not a graph over the reference factor")
    return 1 if det_p * det_n > 0 else -1


def two_parents(t, form, tol=DEFAULT_TOL):
    """The two maximal isotropic extensions of an isotropic (p-1)-plane.

    Returns (t_plus, t_minus) labeled by d_orbit_sign.
    """
    p = form.p
    if form.p != form.q:
        raise FlagError("two_parents needs split signature (p, p)")
    if t.dim != p - 1:
        raise FlagError(f"two_parents needs an isotropic plane of dimension {p - 1}")
    perp = orthogonal_complement(form, t, tol)
    tb = t.orthonormal_basis()
    rest = perp.basis - tb @ (tb.T @ perp.basis)
    qmat, rmat = np.linalg.qr(rest)
    keep = np.abs(np.diag(rmat)) > 1e-9 * max(np.max(np.abs(rmat)), 1e-300)
    c = qmat[:, keep]
    if c.shape[1] != 2:
        raise FlagError("complement of T inside its perp is not 2-dimensional")
    small = c.T @ form.matrix @ c
    eig, vecs = np.linalg.eigh(small)
    if not (eig[0] < 0 < eig[1]):
        raise FlagError("induced form on the complement is not of signature (1,1)")
    w_neg = c @ vecs[:, 0] / np.sqrt(-eig[0])
    w_pos = c @ vecs[:, 1] / np.sqrt(eig[1])
    lines = [w_pos + w_neg, w_pos - w_neg]
    exts = [Subspace(form.dim, np.column_stack([t.basis, z])) for z in lines]
    signs = [d_orbit_sign(e, form, tol) for e in exts]
    if signs[0] == signs[1]:
        raise FlagError("parents received equal orbit signs; input too degenerate")
    plus = exts[0] if signs[0] == 1 else exts[1]
    minus = exts[1] if signs[0] == 1 else exts[0]
    return plus, minus


def project_flag(flag, theta_prime):
    """Restriction of the subspace map to a sub-index-set."""
    theta_prime = tuple(sorted(theta_prime, key=_theta_key))
    for k in theta_prime:
        if k not in flag.theta:
            raise FlagError(f"index {k} is not part of the flag")
    if flag.flag_type.kind == "A":
        d = flag.flag_type.ambient_dim
        base = set(theta_prime) | {0, d}
        for k in theta_prime:
            if (d - k) not in base:
                raise FlagError("projected index set is not symmetric")
        theta_prime = tuple(sorted(base))
    subs = {k: flag.subspaces[k] for k in theta_prime}
    return Flag(flag.flag_type, theta_prime, subs, flag.form, validate=False)


def pad_negative(flag, extra=1):
    """Reinterpret an isotropic flag after adding negative directions to the ambient space."""
    kind = flag.flag_type.kind
    if kind == "A":
        raise FlagError("padding applies to isotropic flags")
    p, q = flag.form.p, flag.form.q
    new_form = make_form(p, q + extra)
    new_dim = p + q + extra
    subs = {}
    for k in flag.theta:
        b = flag.subspaces[k].basis
        nb = np.zeros((new_dim, b.shape[1]))
        nb[: p + q] = b
        subs[k] = Subspace(new_dim, nb)
    new_type = _iso_type(p, q + extra)
    return Flag(new_type, flag.theta, subs, new_form, validate=False)


def pad_positive(flag, extra=1):
    """Reinterpret an isotropic flag after adding positive directions to the ambient space."""
    kind = flag.flag_type.kind
    if kind == "A":
        raise FlagError("padding applies to isotropic flags")
    p, q = flag.form.p, flag.form.q
    new_form = make_form(p + extra, q)
    new_dim = p + q + extra
    subs = {}
    for k in flag.theta:
        b = flag.subspaces[k].basis
        nb = np.zeros((new_dim, b.shape[1]))
        nb[:p] = b[:p]
        nb[p + extra :] = b[p:]
        subs[k] = Subspace(new_dim, nb)
    new_type = _iso_type(p + extra, q)
    return Flag(new_type, flag.theta, subs, new_form, validate=False)


def _iso_type(p, q):
    if q == p:
        return FlagType("D", (p,))
    if q == p + 1:
        return FlagType("B", (p,))
    return FlagType("ISO", (p, q))


def isotropic_flag_to_a(flag, tol=DEFAULT_TOL):
    """The type A flag (F^i, ..., (F^i)^perp, ...) built from an isotropic flag.

    A component of dimension exactly half the ambient dimension is self-dual
    and contributes the single middle index.
    """
    if flag.flag_type.kind == "A":
        raise FlagError("input is already a type A flag")
    d = flag.form.dim
    subs = {0: Subspace(d, np.zeros((d, 0))), d: Subspace(d, np.eye(d))}
    for k in flag.theta:
        comp = flag.subspaces[k]
        subs[comp.dim] = comp
        if 2 * comp.dim != d:
            subs[d - comp.dim] = orthogonal_complement(flag.form, comp, tol)
    theta = tuple(sorted(subs))
    return Flag(FlagType("A", (d,)), theta, subs, None, validate=False)


def _top_component(flag, tol):
    """The maximal isotropic "+"-component of a D flag, stored or derived."""
    if TOP_PLUS in flag.theta:
        return flag.subspaces[TOP_PLUS]
    p = flag.form.p
    sub_max = flag.subspaces.get(p - 1)
    if sub_max is None:
        raise FlagError("need index p-1 (or a stored top) to derive the maximal component")
    plus, _ = two_parents(sub_max, flag.form, tol)
    return plus


def embed(flag, target, tol=DEFAULT_TOL):
    """Catalogued transversality-preserving embeddings between flag manifolds."""
    if target not in EMBEDDINGS:
        raise FlagError(f"unsupported embedding {target!r}; known: {sorted(EMBEDDINGS)}")
    return EMBEDDINGS[target](flag, tol)


def _embed_d_to_a(flag, tol):
    if flag.flag_type.kind != "D" or flag.flag_type.params[0] % 2:
        raise FlagError("this embedding needs a type D flag with p even")
    p = flag.flag_type.params[0]
    if tuple(flag.numeric_theta) != tuple(range(1, p)):
        raise FlagError("this embedding needs a full type D flag")
    top = _top_component(flag, tol)
    subs = dict(flag.subspaces)
    subs[TOP_PLUS] = top
    theta = tuple([k for k in flag.theta if not isinstance(k, str)] + [TOP_PLUS])
    staged = Flag(flag.flag_type, theta, subs, flag.form, validate=False)
    return isotropic_flag_to_a(staged, tol)


def _embed_d_to_b(flag, tol):
    if flag.flag_type.kind != "D" or flag.flag_type.params[0] % 2:
        raise FlagError("this embedding needs a type D flag with p even (no odd analogue exists)")
    p = flag.flag_type.params[0]
    top = _top_component(flag, tol)
    padded_subs = {}
    new_form = make_form(p, p + 1)
    for k in list(flag.numeric_theta) + [p]:
        b = top.basis if k == p else flag.subspaces[k].basis
        nb = np.zeros((2 * p + 1, b.shape[1]))
        nb[: 2 * p] = b
        padded_subs[k] = Subspace(2 * p + 1, nb)
    theta = tuple(list(flag.numeric_theta) + [p])
    return Flag(FlagType("B", (p,)), theta, padded_subs, new_form, validate=False)


def _embed_b_to_d(flag, tol):
    if flag.flag_type.kind != "B":
        raise FlagError("this embedding needs a type B flag")
    return pad_positive(flag, 1)


def _embed_b_to_a(flag, tol):
    if flag.flag_type.kind != "B":
        raise FlagError("this embedding needs a type B flag")
    return isotropic_flag_to_a(flag, tol)


def _embed_d_to_a_minus_mid(flag, tol):
    if flag.flag_type.kind != "D":
        raise FlagError("this embedding needs a type D flag")
    if any(isinstance(k, str) for k in flag.theta):
        flag = project_flag(flag, flag.numeric_theta)
    return isotropic_flag_to_a(flag, tol)


def _embed_g2_to_b3(flag, tol):
    if flag.flag_type.kind != "G2":
        raise FlagError("this embedding needs a G2 flag")
    line = flag.subspaces[1]
    ann = annihilator(line.basis[:, 0], tol)
    subs = {1: line, 2: flag.subspaces[2], 3: ann}
    return Flag(FlagType("B", (3,)), (1, 2, 3), subs, cross_space().form, validate=False)


def _embed_d_odd_to_b(flag, tol):
    raise FlagError("no equivariant transversality-preserving map exists for odd p here")


EMBEDDINGS = {
    "D2n->A4n-1": _embed_d_to_a,
    "D2n->B2n": _embed_d_to_b,
    "Bn->Dn+1": _embed_b_to_d,
    "Bn->A2n": _embed_b_to_a,
    "Dn->A2n_minus_mid": _embed_d_to_a_minus_mid,
    "G2->B3": _embed_g2_to_b3,
    "D2n+1->B2n+1": _embed_d_odd_to_b,
}


def _flag_index_list(flag):
    """Theta as (key, dimension) pairs in ascending order."""
    return [(k, flag.subspaces[k].dim) for k in flag.theta]


def iso_direct_sum(f1, f2, tol=DEFAULT_TOL):
    """Block direct sum of two isotropic flags.

    The first flag's chain is kept as-is and the second chain is appended on
    top of the first flag's largest component.  Both ambient factors must be
    strictly pseudo-Euclidean.
    """
    for f in (f1, f2):
        if f.flag_type.kind == "A":
            raise FlagError("iso_direct_sum applies to isotropic flags")
        if f.form.p < 1 or f.form.q < 1:
            raise FlagError("both factors must be strictly pseudo-Euclidean")
    p1, q1 = f1.form.p, f1.form.q
    p2, q2 = f2.form.p, f2.form.q
    d1, d2 = p1 + q1, p2 + q2
    dim = d1 + d2
    qmat = np.zeros((dim, dim))
    qmat[:d1, :d1] = f1.form.matrix
    qmat[d1:, d1:] = f2.form.matrix
    form = BilinearForm(p1 + p2, q1 + q2, qmat, "block")

    def lift1(b):
        nb = np.zeros((dim, b.shape[1]))
        nb[:d1] = b
        return nb

    def lift2(b):
        nb = np.zeros((dim, b.shape[1]))
        nb[d1:] = b
        return nb

    subs = {}
    theta = []
    for k, kdim in _flag_index_list(f1):
        key = kdim
        subs[key] = Subspace(dim, lift1(f1.subspaces[k].basis))
        theta.append(key)
    if f1.theta:
        top_key = f1.theta[-1]
        top1 = lift1(f1.subspaces[top_key].basis)
        both_plus = isinstance(top_key, str)
    else:
        top1 = np.zeros((dim, 0))
        both_plus = False
    top1_dim = top1.shape[1]
    for k, kdim in _flag_index_list(f2):
        new_dim = top1_dim + kdim
        cols = np.hstack([top1, lift2(f2.subspaces[k].basis)])
        if isinstance(k, str) and both_plus and (p1 + p2) == (q1 + q2):
            key = TOP_PLUS
        else:
            key = new_dim
        subs[key] = Subspace(dim, cols)
        theta.append(key)
    out_type = _iso_type(p1 + p2, q1 + q2)
    return Flag(out_type, tuple(theta), subs, form, validate=False)


@dataclass(frozen=True)
class FlagPath:
    """A symmetric monotone lattice path from (0,0) to (n,m)."""

    steps: tuple
    n: int
    m: int

    def __post_init__(self):
        steps = tuple((int(a), int(b)) for a, b in self.steps)
        object.__setattr__(self, "steps", steps)
        if not validate_flag_path(steps, self.n, self.m):
            raise FlagError(f"not a valid ({self.n},{self.m})-flag path")

    def points(self):
        pts = [(0, 0)]
        for dx, dy in self.steps:
            x, y = pts[-1]
            pts.append((x + dx, y + dy))
        return pts


def validate_flag_path(steps, n, m):
    """Endpoint, step-set, and symmetry checks for a candidate flag path.

    A valid path is a palindromic sequence of unit right/up steps ending at
    (n, m); palindromy makes the summed index set symmetric, and it forces n
    or m to be even, so no valid path exists when both are odd.
    """
    steps = [tuple(s) for s in steps]
    if any(s not in ((1, 0), (0, 1)) for s in steps):
        return False
    x = sum(s[0] for s in steps)
    y = sum(s[1] for s in steps)
    if (x, y) != (n, m):
        return False
    return steps == steps[::-1]


def flag_path_exists(n, m):
    return n % 2 == 0 or m % 2 == 0


def flag_direct_sum(f1, f2, path, tol=DEFAULT_TOL):
    """Deluxe direct sum of two type A flags along a flag path.

    Both flags must be full symmetric chains including indices 0 and d; the
    path's (x, y) coordinates walk through the two chains and each lattice
    point contributes the sum of the pointed components.
    """
    for f in (f1, f2):
        if f.flag_type.kind != "A":
            raise FlagError("flag_direct_sum applies to type A flags")
    t1, t2 = list(f1.theta), list(f2.theta)
    d1, d2 = f1.flag_type.ambient_dim, f2.flag_type.ambient_dim
    if t1[0] != 0 or t1[-1] != d1 or t2[0] != 0 or t2[-1] != d2:
        raise FlagError("summands must record the 0 and full components")
    k1, k2 = len(t1) - 1, len(t2) - 1
    if isinstance(path, FlagPath):
        if (path.n, path.m) != (k1, k2):
            raise FlagError(f"need a ({k1},{k2})-flag path")
        pts = path.points()
    else:
        if not validate_flag_path(path, k1, k2):
            raise FlagError(f"not a valid ({k1},{k2})-flag path")
        pts = FlagPath(tuple(path), k1, k2).points()
    dim = d1 + d2

    def lift(b, offset, total):
        nb = np.zeros((total, b.shape[1]))
        nb[offset : offset + b.shape[0]] = b
        return nb

    subs = {}
    theta = []
    for x, y in pts:
        i1, i2 = t1[x], t2[y]
        key = i1 + i2
        cols = np.hstack(
            [lift(f1.subspaces[i1].basis, 0, dim), lift(f2.subspaces[i2].basis, d1, dim)]
        )
        subs[key] = Subspace(dim, cols)
        theta.append(key)
    return Flag(FlagType("A", (dim,)), tuple(theta), subs, None, validate=False)


def g2_pointed_photon(line, photon, tol=DEFAULT_TOL):
    """Assemble and validate a G2 flag from a null line and an annihilator photon."""
    line = line if isinstance(line, Subspace) else Subspace(7, np.asarray(line, dtype=float))
    photon = photon if isinstance(photon, Subspace) else Subspace.from_vectors(photon)
    space = cross_space()
    ell = line.basis[:, 0]
    if abs(space.q(ell)) > 1e-8 * float(ell @ ell):
        raise FlagError("base line is not null")
    u, v = photon.basis[:, 0], photon.basis[:, 1]
    g = photon.basis.T @ space.form.matrix @ photon.basis
    if float(np.max(np.abs(g))) > 1e-8 * max(float(np.linalg.norm(photon.basis)) ** 2, 1e-300):
        raise FlagError("photon is not isotropic")
    scale = max(float(np.linalg.norm(u)) * float(np.linalg.norm(v)), 1e-300)
    if float(np.linalg.norm(cross_product(u, v))) > 1e-8 * scale:
        raise FlagError("plane is not an annihilator photon (not cross-closed)")
    if not contains_subspace(photon, line, tol):
        raise FlagError("line is not contained in the photon")
    return Flag(FlagType("G2"), (1, 2), {1: line, 2: photon}, space.form, validate=False)


def flag_distance(f1, f2):
    """Max over indices of the principal-angle distance between components."""
    _require_comparable(f1, f2)
    worst = 0.0
    for k in f1.theta:
        worst = max(worst, subspace_distance(f1.subspaces[k], f2.subspaces[k]))
    return worst
