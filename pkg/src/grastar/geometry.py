"""Points of the matrix space upstairs, invariant functions, and the Wick product.

A point is a full-rank (p+q) x p complex matrix z; the Grassmannian point
it represents is its column space.  The computable function algebra is
generated by the scalars tr(B Pi(z)) with Pi(z) = z (z^t z)^-1 z^t the
orthogonal projector onto the column space and B an arbitrary constant
matrix: these are invariant under the right Gl(p, C) action, closed under
complex conjugation (B -> B^t), and separate points.

Holomorphic and antiholomorphic arguments are passed separately (Z, Zbar)
so that jet evaluation can differentiate them independently; for a plain
numeric point Zbar is just the conjugate transpose of Z.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from grastar.center import LambdaSeries
from grastar.errors import GrastarError
from grastar.jets import JetRing, MatrixJet, mat_inv_sqrt, mat_inverse

RANK_THRESHOLD = 1e-6


@dataclass(frozen=True)
class SpaceConfig:
    """Shape of the matrix space: (p+q) x p matrices, momentum level mu."""

    p: int
    q: int
    mu: Fraction = Fraction(1)

    def __post_init__(self):
        if self.p < 1 or self.q < 1:
            raise ValueError("p and q must be >= 1")
        object.__setattr__(self, "mu", Fraction(self.mu))
        if self.mu <= 0:
            raise ValueError("mu must be positive")

    @property
    def n(self) -> int:
        return self.p + self.q

    @property
    def nslots(self) -> int:
        """Number of independent holomorphic coordinates."""
        return (self.p + self.q) * self.p


@dataclass(frozen=True)
class PointZ:
    """A full-rank (p+q) x p matrix; rank is checked on construction."""

    z: np.ndarray

    def __init__(self, z):
        z = np.array(z, dtype=complex)
        if z.ndim != 2 or z.shape[0] <= z.shape[1]:
            raise ValueError(f"expected a tall (p+q) x p matrix, got shape {z.shape}")
        sv = np.linalg.svd(z, compute_uv=False)
        if sv[-1] <= RANK_THRESHOLD * sv[0]:
            raise GrastarError("matrix is (numerically) rank deficient")
        object.__setattr__(self, "z", z)

    @property
    def p(self) -> int:
        return self.z.shape[1]

    @property
    def zbar(self) -> np.ndarray:
        return self.z.conj().T


def sample_point(cfg: SpaceConfig, seed: int) -> PointZ:
    """Seeded complex Gaussian point; deterministic per seed."""
    rng = np.random.default_rng(seed)
    for _ in range(100):
        z = (
            rng.standard_normal((cfg.n, cfg.p)) + 1j * rng.standard_normal((cfg.n, cfg.p))
        ) / np.sqrt(2)
        sv = np.linalg.svd(z, compute_uv=False)
        if sv[-1] > RANK_THRESHOLD * sv[0]:
            return PointZ(z)
    raise GrastarError("could not sample a full-rank point in 100 tries")


def gram(z: PointZ) -> np.ndarray:
    """x = z^t z, hermitian positive definite."""
    return z.zbar @ z.z


def momentum(z: PointZ) -> np.ndarray:
    """The momentum map value (i/2) x."""
    return 0.5j * gram(z)


def _inv_sqrt_hermitian(x: np.ndarray) -> np.ndarray:
    w, U = np.linalg.eigh(x)
    return U @ np.diag(1.0 / np.sqrt(w)) @ U.conj().T


def level_representative(z: PointZ, mu) -> PointZ:
    """zeta = z (z^t z)^(-1/2) mu^(1/2): same Grassmannian point, on the level set."""
    mu = float(Fraction(mu))
    zeta = z.z @ _inv_sqrt_hermitian(gram(z)) * np.sqrt(mu)
    return PointZ(zeta)


def level_representative_jet(Z: MatrixJet, Zbar: MatrixJet, mu) -> tuple[MatrixJet, MatrixJet]:
    """Jet version: (zeta, zetabar) with zetabar zeta = mu * identity.

    Z and Zbar are independent jet arguments; the inverse square root of
    the Gram jet is propagated through Denman-Beavers iteration.
    """
    mu = float(Fraction(mu))
    root_mu = np.sqrt(mu)
    R = mat_inv_sqrt(Zbar @ Z)
    zeta = (Z @ R).scale(root_mu)
    zetabar = (R @ Zbar).scale(root_mu)
    return zeta, zetabar


# ---------------------------------------------------------------------------
# invariant function expressions


class FunctionExpr:
    """Polynomial in the invariant generators tr(B Pi(z)).

    ``terms`` is a list of (coefficient, [B matrices]) pairs; an empty
    factor list is the constant function 1.
    """

    __slots__ = ("terms",)

    def __init__(self, terms):
        norm = []
        for coeff, factors in terms:
            norm.append(
                (
                    complex(coeff),
                    tuple(np.array(B, dtype=complex) for B in factors),
                )
            )
        self.terms = tuple(norm)

    @classmethod
    def one(cls) -> "FunctionExpr":
        return cls([(1.0, [])])

    @classmethod
    def constant(cls, value) -> "FunctionExpr":
        return cls([(value, [])])

    @classmethod
    def generator(cls, B) -> "FunctionExpr":
        return cls([(1.0, [B])])

    def conjugate(self) -> "FunctionExpr":
        """Pointwise complex conjugate: conjugated coefficients, B -> B^t."""
        return FunctionExpr(
            [
                (np.conj(coeff), [B.conj().T for B in factors])
                for coeff, factors in self.terms
            ]
        )

    def __add__(self, other: "FunctionExpr") -> "FunctionExpr":
        return FunctionExpr(list(self.terms) + list(other.terms))

    def scale(self, factor) -> "FunctionExpr":
        return FunctionExpr(
            [(coeff * factor, factors) for coeff, factors in self.terms]
        )

    # -- JSON wire format -------------------------------------------------

    def to_json_obj(self) -> dict:
        return {
            "terms": [
                {
                    "coeff": [term[0].real, term[0].imag],
                    "factors": [
                        {"B": [[[x.real, x.imag] for x in row] for row in B]}
                        for B in term[1]
                    ],
                }
                for term in self.terms
            ]
        }

    @classmethod
    def from_json_obj(cls, obj: dict) -> "FunctionExpr":
        terms = []
        for t in obj["terms"]:
            coeff = complex(t["coeff"][0], t["coeff"][1])
            factors = [
                np.array(
                    [[complex(x[0], x[1]) for x in row] for row in f["B"]],
                    dtype=complex,
                )
                for f in t.get("factors", [])
            ]
            terms.append((coeff, factors))
        return cls(terms)

    def dumps(self) -> str:
        return json.dumps(self.to_json_obj())

    @classmethod
    def loads(cls, text: str) -> "FunctionExpr":
        return cls.from_json_obj(json.loads(text))


def random_function_expr(cfg: SpaceConfig, rng, nterms: int = 2, maxdeg: int = 2) -> FunctionExpr:
    """A small random element of the generator algebra (for tests/suites)."""
    n = cfg.n
    terms = []
    for _ in range(nterms):
        coeff = complex(rng.standard_normal(), rng.standard_normal())
        deg = int(rng.integers(1, maxdeg + 1))
        factors = [
            (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))) / n
            for _ in range(deg)
        ]
        terms.append((coeff, factors))
    return FunctionExpr(terms)


def _trace_prod_jet(B: np.ndarray, Pi: MatrixJet):
    """tr(B Pi) for a constant matrix B and a jet matrix Pi."""
    acc = None
    n = Pi.rows
    for a in range(n):
        for c in range(n):
            coeff = B[a, c]
            if coeff == 0:
                continue
            term = Pi.data[c][a] * coeff
            acc = term if acc is None else acc + term
    return acc if acc is not None else Pi.ring.const(0.0)


def eval_function(f: FunctionExpr, Z, Zbar=None):
    """Evaluate an invariant expression at a numeric point or a jet point.

    With a ``PointZ`` or numpy matrix argument the result is a complex
    number; with ``MatrixJet`` arguments (Z holomorphic, Zbar
    antiholomorphic) the result is a jet.
    """
    if isinstance(Z, PointZ):
        Zbar = Z.zbar
        Z = Z.z
    if isinstance(Z, MatrixJet):
        x = Zbar @ Z
        Pi = Z @ mat_inverse(x) @ Zbar
        total = Pi.ring.const(0.0)
        cache = {}
        for coeff, factors in f.terms:
            term = Pi.ring.const(coeff)
            for B in factors:
                key = B.tobytes()
                if key not in cache:
                    cache[key] = _trace_prod_jet(B, Pi)
                term = term * cache[key]
            total = total + term
        return total
    Z = np.asarray(Z, dtype=complex)
    if Zbar is None:
        Zbar = Z.conj().T
    x = Zbar @ Z
    Pi = Z @ np.linalg.inv(x) @ Zbar
    total = 0.0 + 0.0j
    for coeff, factors in f.terms:
        term = coeff
        for B in factors:
            term *= np.trace(B @ Pi)
        total += term
    return complex(total)


def check_invariant_u(f: FunctionExpr, z: PointZ, U: np.ndarray, tol: float = 1e-10) -> bool:
    """Invariance of f under the right unitary action z -> zU."""
    return abs(eval_function(f, PointZ(z.z @ U)) - eval_function(f, z)) < tol


# ---------------------------------------------------------------------------
# the Wick product upstairs


def _as_evaluator(f):
    if isinstance(f, FunctionExpr):
        return lambda Z, Zbar: eval_function(f, Z, Zbar)
    return f


def holomorphic_jet_point(z: PointZ, order: int):
    """(Z, Zbar) with fresh holomorphic offsets; slot (A, i) is variable A*p + i."""
    n, p = z.z.shape
    ring = JetRing(n * p, order)
    Z = MatrixJet(
        ring,
        [[ring.var(A * p + i, z.z[A, i]) for i in range(p)] for A in range(n)],
    )
    Zbar = MatrixJet.from_numeric(ring, z.zbar)
    return ring, Z, Zbar


def antiholomorphic_jet_point(z: PointZ, order: int):
    """(Z, Zbar) with fresh antiholomorphic offsets; slot (A, i) again A*p + i."""
    n, p = z.z.shape
    ring = JetRing(n * p, order)
    Z = MatrixJet.from_numeric(ring, z.z)
    Zbar = MatrixJet(
        ring,
        [[ring.var(A * p + i, z.zbar[i, A]) for A in range(n)] for i in range(p)],
    )
    return ring, Z, Zbar


def wick_product(F, G, z: PointZ, order: int) -> LambdaSeries:
    """Truncated Wick star product of two functions at a point.

    Pairs holomorphic derivatives of F with antiholomorphic derivatives of
    G over all matrix entries: the coefficient of lambda^r is
    sum_{|m|=r} m! * (Taylor coeff of F) * (Taylor coeff of G).
    F and G may be ``FunctionExpr`` or callables (Z, Zbar) -> Jet.
    """
    ring_h, Zh, Zbarh = holomorphic_jet_point(z, order)
    ring_a, Za, Zbara = antiholomorphic_jet_point(z, order)
    jf = _as_evaluator(F)(Zh, Zbarh)
    jg = _as_evaluator(G)(Za, Zbara)
    # the two rings have identical monomial bases, so coefficients align
    out = LambdaSeries(order, [0j] * (order + 1))
    weights = ring_h.dfact  # prod of factorials per monomial
    prods = jf.coeffs * jg.coeffs * weights
    for idx in np.nonzero(prods)[0]:
        out.coeffs[int(ring_h.degree[idx])] += complex(prods[idx])
    return out


def poisson_bracket(F, G, z: PointZ) -> complex:
    """{F, G} normalized so the first-order Wick commutator is (i lambda/2){F, G}."""
    ring_h, Zh, Zbarh = holomorphic_jet_point(z, 1)
    ring_a, Za, Zbara = antiholomorphic_jet_point(z, 1)
    fh = _as_evaluator(F)(Zh, Zbarh).coeffs
    fa = _as_evaluator(F)(Za, Zbara).coeffs
    gh = _as_evaluator(G)(Zh, Zbarh).coeffs
    ga = _as_evaluator(G)(Za, Zbara).coeffs
    first = ring_h.degree == 1
    acc = np.sum(fh[first] * ga[first]) - np.sum(gh[first] * fa[first])
    return complex(-2j * acc)
