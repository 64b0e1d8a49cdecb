"""2x2 quaternionic and right-complex-linear matrices and their eigenstructure.

A quaternionic matrix acts on column 2-vectors with eigenvalues applied from
the right, M Psi = Psi z.  Splitting every entry into its symplectic pair
embeds the matrix as a 4x4 complex matrix (the complex counterpart) whose
spectrum comes in conjugate pairs {z, conj(z)}; one representative per pair
with non-negative imaginary part is the canonical eigenvalue.  Counterpart
coordinates of a 2-vector (psi1, psi2) are ordered (first symplectic
components, then second): (z1(psi1), z1(psi2), z2(psi1), z2(psi2)).  This
convention is pinned by the anti-hermitian worked example in the tests.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .quatcore import Quaternion, RightLinearScalarOp, solve_linear_system

# rank decisions on the 4x4 counterpart
_RANK_TOL = 1e-9
# numerical threshold deciding quaternionic linear independence
_INDEP_TOL = 1e-10


class DefectiveMatrixError(ValueError):
    """Eigenvectors do not span; the matrix needs its Jordan form."""


def svec(v: Sequence[Quaternion]) -> np.ndarray:
    """Counterpart coordinates of a quaternionic 2-vector."""
    a1, a2 = v[0].symplectic()
    b1, b2 = v[1].symplectic()
    return np.array([a1, b1, a2, b2])


def lift(v: np.ndarray) -> tuple[Quaternion, Quaternion]:
    """Inverse of svec."""
    return (Quaternion.from_symplectic(v[0], v[2]),
            Quaternion.from_symplectic(v[1], v[3]))


class Matrix2H:
    """2x2 matrix of quaternions acting from the left."""

    def __init__(self, entries):
        self.m = tuple(tuple(_as_quaternion(e) for e in row) for row in entries)
        if len(self.m) != 2 or any(len(r) != 2 for r in self.m):
            raise ValueError("expected a 2x2 array of quaternions")

    @classmethod
    def identity(cls) -> "Matrix2H":
        return cls([[1, 0], [0, 1]])

    @classmethod
    def diagonal(cls, d1, d2) -> "Matrix2H":
        return cls([[d1, 0], [0, d2]])

    @classmethod
    def from_columns(cls, c1, c2) -> "Matrix2H":
        return cls([[c1[0], c2[0]], [c1[1], c2[1]]])

    def __getitem__(self, idx):
        return self.m[idx[0]][idx[1]]

    def __matmul__(self, other: "Matrix2H") -> "Matrix2H":
        a, b = self.m, other.m
        return Matrix2H([
            [a[0][0] * b[0][0] + a[0][1] * b[1][0],
             a[0][0] * b[0][1] + a[0][1] * b[1][1]],
            [a[1][0] * b[0][0] + a[1][1] * b[1][0],
             a[1][0] * b[0][1] + a[1][1] * b[1][1]],
        ])

    def __add__(self, other: "Matrix2H") -> "Matrix2H":
        return Matrix2H([[self.m[r][c] + other.m[r][c] for c in range(2)]
                         for r in range(2)])

    def __sub__(self, other: "Matrix2H") -> "Matrix2H":
        return Matrix2H([[self.m[r][c] - other.m[r][c] for c in range(2)]
                         for r in range(2)])

    def matvec(self, v) -> tuple[Quaternion, Quaternion]:
        return (self.m[0][0] * v[0] + self.m[0][1] * v[1],
                self.m[1][0] * v[0] + self.m[1][1] * v[1])

    def dagger(self) -> "Matrix2H":
        return Matrix2H([[self.m[0][0].conjugate(), self.m[1][0].conjugate()],
                         [self.m[0][1].conjugate(), self.m[1][1].conjugate()]])

    def norm(self) -> float:
        return float(np.sqrt(sum(e.norm2() for row in self.m for e in row)))

    def counterpart(self) -> np.ndarray:
        """4x4 complex matrix in the svec coordinates."""
        m1 = np.empty((2, 2), dtype=complex)
        m2 = np.empty((2, 2), dtype=complex)
        for r in range(2):
            for c in range(2):
                m1[r, c], m2[r, c] = self.m[r][c].symplectic()
        return np.block([[m1, -np.conj(m2)], [m2, np.conj(m1)]])

    def inverse(self) -> "Matrix2H":
        cols = []
        for rhs in ((Quaternion(1), Quaternion()), (Quaternion(), Quaternion(1))):
            cols.append(solve_linear_system([list(r) for r in self.m], list(rhs)))
        return Matrix2H.from_columns(cols[0], cols[1])

    def __repr__(self):
        return f"Matrix2H({self.m!r})"


class Matrix2CL:
    """2x2 matrix of right-complex-linear scalar operators."""

    def __init__(self, entries):
        self.m = tuple(tuple(_as_op(e) for e in row) for row in entries)
        if len(self.m) != 2 or any(len(r) != 2 for r in self.m):
            raise ValueError("expected a 2x2 array of scalar operators")

    @classmethod
    def companion(cls, a_op: RightLinearScalarOp, b_op: RightLinearScalarOp
                  ) -> "Matrix2CL":
        """Matrix form [[0, 1], [-b, -a]] of phi'' + a(phi') + b(phi) = 0."""
        zero = RightLinearScalarOp(Quaternion(), Quaternion())
        one = RightLinearScalarOp(Quaternion(1), Quaternion())
        neg_b = RightLinearScalarOp(-b_op.A, -b_op.B)
        neg_a = RightLinearScalarOp(-a_op.A, -a_op.B)
        return cls([[zero, one], [neg_b, neg_a]])

    def matvec(self, v) -> tuple[Quaternion, Quaternion]:
        return (self.m[0][0](v[0]) + self.m[0][1](v[1]),
                self.m[1][0](v[0]) + self.m[1][1](v[1]))

    def counterpart(self) -> np.ndarray:
        a1 = np.empty((2, 2), dtype=complex)
        a2 = np.empty((2, 2), dtype=complex)
        b1 = np.empty((2, 2), dtype=complex)
        b2 = np.empty((2, 2), dtype=complex)
        for r in range(2):
            for c in range(2):
                op = self.m[r][c]
                a1[r, c], a2[r, c] = op.A.symplectic()
                b1[r, c], b2[r, c] = op.B.symplectic()
        # right multiplication by i is the scalar i on both symplectic slots
        return np.block([
            [a1 + 1j * b1, -(np.conj(a2) + 1j * np.conj(b2))],
            [a2 + 1j * b2, np.conj(a1) + 1j * np.conj(b1)],
        ])

    def __repr__(self):
        return f"Matrix2CL({self.m!r})"


def _as_quaternion(e) -> Quaternion:
    if isinstance(e, Quaternion):
        return e
    return Quaternion.from_complex(e) if isinstance(e, complex) else Quaternion(e)

def _as_op(e) -> RightLinearScalarOp:
    if isinstance(e, RightLinearScalarOp):
        return e
    return RightLinearScalarOp(_as_quaternion(e), Quaternion())


def complex_counterpart(m) -> np.ndarray:
    """Counterpart of either matrix flavor (4x4 complex)."""
    return m.counterpart()


def dieudonne(m: Matrix2H) -> float:
    """Non-negative determinant functional sqrt(det of the counterpart)."""
    d = np.linalg.det(m.counterpart())
    return float(np.sqrt(max(d.real, 0.0)))


@dataclass(frozen=True)
class EigenDecomposition:
    """Canonical right eigenstructure of a 2x2 quaternionic matrix."""

    eigenvalues: tuple[complex, ...]
    eigenvectors: tuple[tuple[Quaternion, Quaternion], ...]
    form: str                       # "diagonal" or "jordan"
    defective: bool = False
    transform: Optional[Matrix2H] = None
    transform_inv: Optional[Matrix2H] = None


def _nullspace(mat: np.ndarray, tol: float) -> np.ndarray:
    """Orthonormal nullspace basis (columns), smallest singular directions."""
    u, s, vh = np.linalg.svd(mat)
    dim = int(np.sum(s <= tol))
    if dim == 0:
        dim = 1  # eigenvalue known only to roundoff: keep the best direction
    return vh[-dim:].conj().T


def _normalize_phase(v: np.ndarray) -> np.ndarray:
    v = v / np.linalg.norm(v)
    k = int(np.argmax(np.abs(v)))
    ph = v[k] / abs(v[k])
    return v * np.conj(ph)


def _canonical_pairs(lam: np.ndarray) -> list[complex]:
    """Fold the conjugate-closed 4-spectrum into 2 canonical eigenvalues."""
    remaining = list(lam)
    canon = []
    for _ in range(2):
        k = max(range(len(remaining)), key=lambda i: remaining[i].imag)
        z = remaining.pop(k)
        kk = min(range(len(remaining)),
                 key=lambda i: abs(remaining[i] - z.conjugate()))
        zbar = remaining.pop(kk)
        canon.append(complex((z.real + zbar.real) / 2.0,
                             (abs(z.imag) + abs(zbar.imag)) / 2.0))
    canon.sort(key=lambda w: (w.imag, w.real))
    return canon


def right_eigenpairs(m: Matrix2H) -> EigenDecomposition:
    """Canonical eigenvalues (imaginary part >= 0) and lifted eigenvectors.

    A defective matrix (double eigenvalue, one-dimensional eigenspace) is
    returned with defective=True and the single eigenvector; jordanize then
    completes the similarity transform.
    """
    c = m.counterpart()
    scale = 1.0 + np.linalg.norm(c)
    tol = _RANK_TOL * scale
    # a defective pair splits its computed eigenvalues by O(sqrt(eps)), so
    # the merge decision must be far looser than the rank tolerance
    merge_tol = 1e-6 * scale
    lam = np.linalg.eigvals(c)
    z1, z2 = _canonical_pairs(lam)
    if abs(z1 - z2) > merge_tol:
        vecs = []
        for z in (z1, z2):
            ns = _nullspace(c - z * np.eye(4), tol)
            vecs.append(lift(_normalize_phase(ns[:, 0])))
        return EigenDecomposition((z1, z2), tuple(vecs), form="diagonal")
    # double canonical eigenvalue; the mean is eps-accurate even though the
    # individual values are not
    z = complex((z1.real + z2.real) / 2.0, (z1.imag + z2.imag) / 2.0)
    rank_tol = max(tol, 2.0 * abs(z1 - z2))
    ns = _nullspace(c - z * np.eye(4), rank_tol)
    needed = 4 if abs(z.imag) <= merge_tol else 2  # real z pairs with itself
    if ns.shape[1] >= needed:
        cands = [lift(_normalize_phase(ns[:, k])) for k in range(ns.shape[1])]
        first = cands[0]
        for other in cands[1:]:
            s = Matrix2H.from_columns(first, other)
            if dieudonne(s) > _INDEP_TOL * max(1.0, m.norm()) ** 2:
                return EigenDecomposition((z, z), (first, other), form="diagonal")
    psi = lift(_normalize_phase(ns[:, 0]))
    return EigenDecomposition((z, z), (psi,), form="jordan", defective=True)


def diagonalize(m: Matrix2H) -> EigenDecomposition:
    """Similarity transform S with M = S diag(z1, z2) S^-1."""
    dec = right_eigenpairs(m)
    if dec.defective:
        raise DefectiveMatrixError("defective matrix: use jordanize")
    s = Matrix2H.from_columns(dec.eigenvectors[0], dec.eigenvectors[1])
    if dieudonne(s) <= _INDEP_TOL * max(1.0, m.norm()) ** 2:
        raise DefectiveMatrixError("eigenvectors quaternionically dependent")
    return EigenDecomposition(dec.eigenvalues, dec.eigenvectors,
                              form="diagonal", transform=s,
                              transform_inv=s.inverse())


def jordanize(m: Matrix2H) -> EigenDecomposition:
    """Similarity transform J with M = J [[z, 1], [0, z]] J^-1."""
    dec = right_eigenpairs(m)
    if not dec.defective:
        raise ValueError("matrix is diagonalizable: use diagonalize")
    z = dec.eigenvalues[0]
    psi = dec.eigenvectors[0]
    # pin the gauge: unit complex part on the leading component, and no
    # complex part of that component in the generalized eigenvector
    scale = max(1.0, psi[0].norm() + psi[1].norm())
    idx = 0 if abs(psi[0].symplectic()[0]) > 1e-8 * scale else 1
    comp = psi[idx].symplectic()[0]
    if abs(comp) <= 1e-8 * scale:
        raise DefectiveMatrixError("cannot gauge-fix the eigenvector")
    psi = tuple(p * Quaternion.from_complex(1.0 / comp) for p in psi)
    c = m.counterpart()
    tol = _RANK_TOL * (1.0 + np.linalg.norm(c))
    rhs = svec(psi)
    w, *_ = np.linalg.lstsq(c - z * np.eye(4), rhs, rcond=None)
    if np.linalg.norm((c - z * np.eye(4)) @ w - rhs) > 1e3 * tol:
        raise DefectiveMatrixError("no generalized eigenvector: chain broken")
    gen = lift(w)
    gauge = Quaternion.from_complex(gen[idx].symplectic()[0])
    gen = tuple(g - p * gauge for g, p in zip(gen, psi))
    j = Matrix2H.from_columns(psi, gen)
    return EigenDecomposition((z, z), (psi,), form="jordan", defective=True,
                              transform=j, transform_inv=j.inverse())


@dataclass(frozen=True)
class ExpTerm:
    """(L + x Lx) * exp(z x) * R with quaternionic L, Lx, R and complex z."""

    L: Quaternion
    z: complex
    R: Quaternion
    Lx: Optional[Quaternion] = None

    def value(self, x: float) -> Quaternion:
        e = Quaternion.from_complex(cmath.exp(self.z * x))
        lead = self.L if self.Lx is None else self.L + x * self.Lx
        return lead * e * self.R

    def derivative(self, x: float) -> Quaternion:
        e = Quaternion.from_complex(cmath.exp(self.z * x))
        ez = Quaternion.from_complex(self.z * cmath.exp(self.z * x))
        lead = self.L if self.Lx is None else self.L + x * self.Lx
        out = lead * ez * self.R
        if self.Lx is not None:
            out = out + self.Lx * e * self.R
        return out

    def second(self, x: float) -> Quaternion:
        ezz = Quaternion.from_complex(self.z * self.z * cmath.exp(self.z * x))
        lead = self.L if self.Lx is None else self.L + x * self.Lx
        out = lead * ezz * self.R
        if self.Lx is not None:
            ez = Quaternion.from_complex(self.z * cmath.exp(self.z * x))
            out = out + 2.0 * (self.Lx * ez * self.R)
        return out


@dataclass(frozen=True)
class MatrixSolution:
    """Closed-form ODE solution assembled from a similarity transform."""

    terms: tuple[ExpTerm, ...]
    decomposition: EigenDecomposition

    def value(self, x: float) -> Quaternion:
        out = Quaternion()
        for t in self.terms:
            out = out + t.value(x)
        return out

    def derivative(self, x: float) -> Quaternion:
        out = Quaternion()
        for t in self.terms:
            out = out + t.derivative(x)
        return out

    def second(self, x: float) -> Quaternion:
        out = Quaternion()
        for t in self.terms:
            out = out + t.second(x)
        return out


def companion_matrix(a: Quaternion, b: Quaternion) -> Matrix2H:
    """Matrix form [[0, 1], [-b, -a]] of phi'' + a phi' + b phi = 0."""
    return Matrix2H([[Quaternion(), Quaternion(1)], [-b, -a]])


def solve_ode_via_matrix(a: Quaternion, b: Quaternion,
                         phi0: Quaternion, dphi0: Quaternion) -> MatrixSolution:
    """Solve the IVP through diagonalization or the Jordan form."""
    m = companion_matrix(a, b)
    try:
        dec = diagonalize(m)
    except DefectiveMatrixError:
        dec = jordanize(m)
    s, si = dec.transform, dec.transform_inv
    r1 = si[0, 0] * phi0 + si[0, 1] * dphi0
    r2 = si[1, 0] * phi0 + si[1, 1] * dphi0
    z1, z2 = dec.eigenvalues
    if dec.form == "diagonal":
        terms = (ExpTerm(L=s[0, 0], z=z1, R=r1),
                 ExpTerm(L=s[0, 1], z=z2, R=r2))
    else:
        terms = (ExpTerm(L=s[0, 0], z=z1, R=r1),
                 ExpTerm(L=s[0, 1], z=z1, R=r2, Lx=s[0, 0]))
    return MatrixSolution(terms=terms, decomposition=dec)


def hermitian_from_antihermitian(
        lambdas, vecs) -> Matrix2H:
    """H = sum Psi_r lambda_r Psi_r^dagger."""
    total = Matrix2H([[0, 0], [0, 0]])
    for lam, v in zip(lambdas, vecs):
        outer = Matrix2H([[v[0] * lam * v[0].conjugate(), v[0] * lam * v[1].conjugate()],
                          [v[1] * lam * v[0].conjugate(), v[1] * lam * v[1].conjugate()]])
        total = total + outer
    return total


def reconstruct_antihermitian(lambdas, vecs) -> Matrix2H:
    """A = sum Psi_r (lambda_r i) Psi_r^dagger."""
    total = Matrix2H([[0, 0], [0, 0]])
    for lam, v in zip(lambdas, vecs):
        li = Quaternion(0.0, lam)
        outer = Matrix2H([[v[0] * li * v[0].conjugate(), v[0] * li * v[1].conjugate()],
                          [v[1] * li * v[0].conjugate(), v[1] * li * v[1].conjugate()]])
        total = total + outer
    return total


def spectral_decompose_antihermitian(a: Matrix2H):
    """Real eigenvalues, orthonormal eigenvectors, and hermitian H for A = -A^dagger.

    Returns (lambdas, eigenvectors, H) with A = sum Psi lambda i Psi^dagger and
    H Psi_m = Psi_m lambda_m.
    """
    scale = max(1.0, a.norm())
    if (a + a.dagger()).norm() > 1e-12 * scale:
        raise ValueError("matrix is not anti-hermitian")
    dec = right_eigenpairs(a)
    if dec.defective:
        raise DefectiveMatrixError("anti-hermitian matrix must be diagonalizable")
    lambdas = []
    vecs = []
    for z, v in zip(dec.eigenvalues, dec.eigenvectors):
        if abs(z.real) > 1e-9 * scale:
            raise ValueError("eigenvalue not purely imaginary")
        lambdas.append(z.imag)
        vecs.append(v)
    # quaternionic Gram-Schmidt; a no-op when eigenvalues differ
    v1, v2 = vecs
    n1 = np.sqrt(v1[0].norm2() + v1[1].norm2())
    v1 = (v1[0] / n1, v1[1] / n1)
    overlap = v1[0].conjugate() * v2[0] + v1[1].conjugate() * v2[1]
    v2 = (v2[0] - v1[0] * overlap, v2[1] - v1[1] * overlap)
    n2 = np.sqrt(v2[0].norm2() + v2[1].norm2())
    v2 = (v2[0] / n2, v2[1] / n2)
    vecs = [v1, v2]
    h = hermitian_from_antihermitian(lambdas, vecs)
    return lambdas, vecs, h
