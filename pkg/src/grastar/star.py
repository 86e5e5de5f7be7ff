"""The reduced star product on complex Grassmannians.

The deformed product of two invariant functions is a power series in the
deformation parameter lambda.  Its coefficient of order r contracts the
r-th holomorphic derivative tensor of one factor with the r-th
antiholomorphic derivative tensor of the other, both taken at the level
representative zeta, through a central element of the symmetric group
algebra C[S_r] acting on the column slots.  In the frame (Young) basis the
central element is diagonal: each frame [m] with at most p rows
contributes its projector weighted by mu^r / t_[m](c), where
t_[m](c) is one linear factor (c + column - row) per box and
c = mu/lambda + p.

Everything here works either with a fixed numeric lambda or with the
formal truncated series in lambda; in the latter case the frame weights
are expanded by ``lambda_coefficient_series``.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from functools import cache
from math import factorial

import numpy as np

from grastar.center import (
    CentralElement,
    LambdaSeries,
    e_to_k,
    lambda_coefficient_series,
    s_coeffs,
)
from grastar.errors import PoleError
from grastar.geometry import (
    FunctionExpr,
    PointZ,
    SpaceConfig,
    antiholomorphic_jet_point,
    eval_function,
    holomorphic_jet_point,
    level_representative,
    level_representative_jet,
    poisson_bracket,
    random_function_expr,
    sample_point,
    wick_product,
)
from grastar.jets import Jet, JetRing, MatrixJet
from grastar.partitions import Frame, conj_classes_of, partitions_of
from grastar.tensor_action import projector, rho_central


def t_value(frame: Frame, c):
    """The coefficient polynomial of a frame at c: prod of (c + col - row).

    Exact for Fraction c, complex otherwise.
    """
    acc = Fraction(1) if isinstance(c, Fraction) else complex(1)
    for i, m_i in enumerate(frame.rows, start=1):
        for j in range(1, m_i + 1):
            acc = acc * (c + (j - i))
    return acc


def coefficient_operator(r: int, c_value, method: str = "frames") -> CentralElement:
    """The central element carrying the order-r product coefficients.

    This is the inverse of sum_alpha c^|alpha| k_alpha, expressed in the
    class basis.  The ``frames`` path assembles it as
    sum_[m] (1/t_[m](c)) e_[m]; the ``classes`` path solves for the class
    coefficients directly.  Both are exact and must agree.
    """
    c_value = Fraction(c_value)
    if method == "classes":
        return CentralElement(r, s_coeffs(r, c_value))
    if method != "frames":
        raise ValueError(f"unknown method {method!r}")
    weights = {}
    for frame in partitions_of(r):
        t = t_value(frame, c_value)
        if t == 0:
            raise PoleError(frame, c_value)
        weights[frame] = 1 / t
    return e_to_k(weights, r)


@cache
def _admissible_frames(r: int, p: int) -> tuple[Frame, ...]:
    if r == 0:
        return (Frame(()),)
    return tuple(f for f in partitions_of(r) if f.num_rows <= p)


@cache
def _frame_projectors(r: int, p: int):
    """[(frame, complex projector matrix on column-slot tensors)]."""
    if r == 0:
        return ((Frame(()), np.ones((1, 1), dtype=complex)),)
    return tuple(
        (frame, projector(frame, p).to_complex().entries)
        for frame in _admissible_frames(r, p)
    )


@cache
def _slot_tables(n: int, p: int, r: int):
    """Row/column tensor indices for every r-tuple of matrix slots.

    Slot A*p + i refers to matrix entry (row A, column i); the k-th
    returned arrays give, for the k-th tuple in lexicographic order, the
    flat row-tuple index (base n) and flat column-tuple index (base p).
    """
    count = (n * p) ** r
    a_idx = np.zeros(count, dtype=np.int64)
    i_idx = np.zeros(count, dtype=np.int64)
    tuples = []
    for k, tup in enumerate(itertools.product(range(n * p), repeat=r)):
        a = 0
        ii = 0
        for s in tup:
            A, i = divmod(s, p)
            a = a * n + A
            ii = ii * p + i
        a_idx[k] = a
        i_idx[k] = ii
        tuples.append(tup)
    return a_idx, i_idx, tuples


def _ring_tuple_indices(ring: JetRing, r: int, n: int, p: int) -> np.ndarray:
    """Monomial index in ``ring`` for each slot tuple of length r (cached)."""
    cache_attr = getattr(ring, "_slot_index_cache", None)
    if cache_attr is None:
        cache_attr = {}
        ring._slot_index_cache = cache_attr
    key = (r, n, p)
    if key not in cache_attr:
        _, _, tuples = _slot_tables(n, p, r)
        idx = np.zeros(len(tuples), dtype=np.int64)
        for k, tup in enumerate(tuples):
            md = [0] * ring.nvars
            for s in tup:
                md[s] += 1
            idx[k] = ring.index_of(tuple(md))
        cache_attr[key] = idx
    return cache_attr[key]


def derivative_tensor(jet: Jet, n: int, p: int, r: int) -> np.ndarray:
    """All order-r mixed partials of a jet over the n*p matrix slots.

    Returns the (n^r, p^r) array whose (row-tuple, column-tuple) entry is
    the derivative with respect to the corresponding r slots.
    """
    ring = jet.ring
    a_idx, i_idx, _ = _slot_tables(n, p, r)
    ridx = _ring_tuple_indices(ring, r, n, p)
    vals = jet.coeffs[ridx] * ring.dfact[ridx]
    out = np.zeros((n**r, p**r), dtype=complex)
    out[a_idx, i_idx] = vals
    return out


def _pairing_series(DFs, DGs, p: int, mu, order: int) -> LambdaSeries:
    """Contract derivative tensors into the formal product series."""
    out = LambdaSeries(order, [0j] * (order + 1))
    for r in range(order + 1):
        B_f = DFs[r]
        B_g = DGs[r]
        inv_rfact = 1.0 / factorial(r)
        for frame, P in _frame_projectors(r, p):
            scal = complex(np.einsum("ij,ai,aj->", P, B_f, B_g))
            ser = lambda_coefficient_series(frame, mu, p, order)
            for t in range(r, order + 1):
                w = ser.coeffs[t]
                if w:
                    out.coeffs[t] += float(w) * inv_rfact * scal
    return out


def _pairing_fixed(DFs, DGs, p: int, mu, lam, order: int) -> complex:
    """Contract derivative tensors at a fixed numeric deformation parameter."""
    mu = Fraction(mu)
    if isinstance(lam, (int, Fraction)):
        lam = Fraction(lam)
        if lam == 0:
            return complex(DFs[0][0, 0] * DGs[0][0, 0])
        c = mu / lam + p
    else:
        lam = complex(lam)
        if lam == 0:
            return complex(DFs[0][0, 0] * DGs[0][0, 0])
        c = complex(mu) / lam + p
    total = 0j
    for r in range(order + 1):
        for frame, P in _frame_projectors(r, p):
            t = t_value(frame, c)
            if t == 0:
                raise PoleError(frame, c)
            scal = complex(np.einsum("ij,ai,aj->", P, DFs[r], DGs[r]))
            total += float(mu) ** r / factorial(r) / complex(t) * scal
    return total


def _derivative_tensors_at(f, zeta: PointZ, order: int, holomorphic: bool):
    """Jets of f at the level representative and all derivative tensors."""
    n, p = zeta.z.shape
    if holomorphic:
        ring, Z, Zbar = holomorphic_jet_point(zeta, order)
    else:
        ring, Z, Zbar = antiholomorphic_jet_point(zeta, order)
    jf = eval_function(f, Z, Zbar) if isinstance(f, FunctionExpr) else f(Z, Zbar)
    return [derivative_tensor(jf, n, p, r) for r in range(order + 1)]


def star_eval(f, g, cfg: SpaceConfig, z: PointZ, order: int, lam=None):
    """The deformed product of two invariant functions at a point.

    With ``lam=None`` the result is the truncated formal power series in
    the deformation parameter (a ``LambdaSeries`` with complex
    coefficients); with a numeric ``lam`` the series coefficients are
    resummed exactly and a single complex value is returned (raising
    ``PoleError`` if the parameter hits a coefficient pole).
    """
    zeta = level_representative(z, cfg.mu)
    DFs = _derivative_tensors_at(f, zeta, order, holomorphic=True)
    DGs = _derivative_tensors_at(g, zeta, order, holomorphic=False)
    if lam is None:
        return _pairing_series(DFs, DGs, cfg.p, cfg.mu, order)
    return _pairing_fixed(DFs, DGs, cfg.p, cfg.mu, lam, order)


def projective_star_eval(f, g, cfg: SpaceConfig, z: PointZ, order: int, lam=None):
    """Independent closed form for p = 1 (complex projective space).

    Here the order-r coefficient is a plain sum of r-th derivative
    products divided by the single rising factorial [c]_r; no symmetric
    group machinery enters.  Used as a cross-check of ``star_eval``.
    """
    if cfg.p != 1:
        raise ValueError("closed form only applies to p = 1")
    mu = Fraction(cfg.mu)
    zeta = level_representative(z, cfg.mu)
    n = cfg.n
    ring_h, Zh, Zbh = holomorphic_jet_point(zeta, order)
    ring_a, Za, Zba = antiholomorphic_jet_point(zeta, order)
    jf = eval_function(f, Zh, Zbh) if isinstance(f, FunctionExpr) else f(Zh, Zbh)
    jg = eval_function(g, Za, Zba) if isinstance(g, FunctionExpr) else g(Za, Zba)
    # sum over slot tuples of order r = r! * sum over monomials m of m! c^f_m c^g_m
    per_order = [0j] * (order + 1)
    prods = jf.coeffs * jg.coeffs * ring_h.dfact
    for idx in np.nonzero(prods)[0]:
        per_order[int(ring_h.degree[idx])] += complex(prods[idx])
    if lam is not None:
        lam = Fraction(lam) if isinstance(lam, (int, Fraction)) else complex(lam)
        total = 0j
        for r in range(order + 1):
            factor = Fraction(1) if isinstance(lam, Fraction) else complex(1)
            for s in range(1, r + 1):
                denom = mu + s * lam if isinstance(lam, Fraction) else float(mu) + s * lam
                if denom == 0:
                    raise PoleError(Frame((r,)), lam)
                factor = factor * (mu * lam) / denom
            total += complex(factor) * per_order[r]
        return total
    out = LambdaSeries(order, [0j] * (order + 1))
    for r in range(order + 1):
        # mu^r lambda^r / ((mu + lambda) ... (mu + r lambda)) as a series
        factor = LambdaSeries.constant(Fraction(1), order)
        for s in range(1, r + 1):
            geom = LambdaSeries(
                order, [(Fraction(-s) / mu) ** k for k in range(order + 1)]
            )
            factor = factor * geom
        factor = factor.shift(r) if r <= order else LambdaSeries(order)
        for t in range(order + 1):
            out.coeffs[t] += float(factor.coeffs[t]) * per_order[r]
    return out


# ---------------------------------------------------------------------------
# reductions of non-invariant building blocks (identity checks)


def proj_scalar_power(r: int, mu, lam):
    """Reduction of the r-th power of the squared radius for p = 1.

    For positive powers this is prod_{s=0}^{r-1} (mu - lam*s); the
    reduction of the (-r)-th power is prod_{s=1}^{r} 1/(mu + lam*s).
    Pass a negative ``r`` for the inverse power.
    """
    mu = Fraction(mu)
    lam = Fraction(lam)
    if r >= 0:
        acc = Fraction(1)
        for s in range(r):
            acc *= mu - lam * s
        return acc
    acc = Fraction(1)
    for s in range(1, -r + 1):
        denom = mu + lam * s
        if denom == 0:
            raise PoleError(Frame((-r,)), lam)
        acc /= denom
    return acc


def tensor_power(M: np.ndarray, r: int) -> np.ndarray:
    """r-fold Kronecker power (first factor most significant)."""
    out = np.eye(1, dtype=complex)
    for _ in range(r):
        out = np.kron(out, np.asarray(M, dtype=complex))
    return out


def slot_coefficient_matrix(r: int, p: int, c) -> np.ndarray:
    """Matrix of the coefficient central element on column-slot tensors.

    Equals sum over frames with at most p rows of projector / t(c); the
    frames with more rows act as zero on (C^p)^{x r}.
    """
    dim = p**r
    out = np.zeros((dim, dim), dtype=complex)
    for frame, P in _frame_projectors(r, p):
        t = t_value(frame, c)
        if t == 0:
            raise PoleError(frame, c)
        out += P / complex(t)
    return out


def proj_sandwich_power(zeta: np.ndarray, mu, lam, r: int) -> np.ndarray:
    """Reduction of the r-th tensor power of z x^-2 z^t (x the Gram matrix).

    The result factors through the level representative as
    (lam*mu)^-r  zeta^{x r} . rho(coefficient element) . zetabar^{x r}.
    """
    mu = Fraction(mu)
    lam = Fraction(lam)
    p = zeta.shape[1]
    c = mu / lam + p
    U = rho_central(coefficient_operator(r, c), p).to_complex().entries
    Zk = tensor_power(zeta, r)
    scale = (float(mu) * float(lam)) ** (-r)
    return scale * (Zk @ U @ Zk.conj().T)


def proj_outer_power(zeta: np.ndarray, mu, lam, r: int) -> np.ndarray:
    """Reduction of the r-th tensor power of z z^t.

    Each conjugacy class alpha contributes (-lam/mu)^(transposition count)
    times its class sum, sandwiched between tensor powers of the level
    representative.
    """
    mu = Fraction(mu)
    lam = Fraction(lam)
    p = zeta.shape[1]
    ratio = -lam / mu
    w = CentralElement(
        r, {alpha: ratio ** (r - alpha.num_cycles) for alpha in conj_classes_of(r)}
    )
    U = rho_central(w, p).to_complex().entries
    Zk = tensor_power(zeta, r)
    return Zk @ U @ Zk.conj().T


def unsandwich(X: np.ndarray, zeta: np.ndarray, mu, r: int) -> np.ndarray:
    """Recover the column-slot operator from a zeta-sandwiched tensor.

    Uses the left inverse (zetabar/mu)^{x r} of zeta^{x r}, valid because
    zetabar zeta = mu * identity on the level set.
    """
    mu = float(Fraction(mu))
    Zplus = tensor_power(zeta.conj().T / mu, r)
    return Zplus @ X @ Zplus.conj().T


# ---------------------------------------------------------------------------
# the product with a jet-valued result (for associativity)


def star_jet_series(f, g, zeta0: PointZ, cfg: SpaceConfig, order: int, outer_holomorphic: bool):
    """The deformed product as jets around a base point on the level set.

    Returns (ring, [jet per lambda order]): the lambda^t coefficient of
    f*g as a truncated expansion in offsets of the base point, either in
    the holomorphic matrix entries (``outer_holomorphic=True``, conjugate
    entries frozen) or in the antiholomorphic ones.  The base point must
    already satisfy zetabar zeta = mu, so that it is its own level
    representative.
    """
    n, p = cfg.n, cfg.p
    nz = n * p
    mu = Fraction(cfg.mu)
    R_out = JetRing(nz, order)
    total = JetRing(
        2 * nz, 2 * order, caps=((0, nz, order), (nz, 2 * nz, order))
    ).warm()
    base = zeta0.z
    basebar = zeta0.zbar
    if outer_holomorphic:
        Zpt = MatrixJet(
            total,
            [[total.var(A * p + i, base[A, i]) for i in range(p)] for A in range(n)],
        )
        Zbpt = MatrixJet.from_numeric(total, basebar)
    else:
        Zpt = MatrixJet.from_numeric(total, base)
        Zbpt = MatrixJet(
            total,
            [[total.var(A * p + i, basebar[i, A]) for A in range(n)] for i in range(p)],
        )
    zeta, zetabar = level_representative_jet(Zpt, Zbpt, mu)
    # factor f sees fresh holomorphic inner offsets, g antiholomorphic ones
    Zf = MatrixJet(
        total,
        [
            [zeta.data[A][i] + total.var(nz + A * p + i) for i in range(p)]
            for A in range(n)
        ],
    )
    jf = eval_function(f, Zf, zetabar) if isinstance(f, FunctionExpr) else f(Zf, zetabar)
    Zbg = MatrixJet(
        total,
        [
            [zetabar.data[i][A] + total.var(nz + A * p + i) for A in range(n)]
            for i in range(p)
        ],
    )
    jg = eval_function(g, zeta, Zbg) if isinstance(g, FunctionExpr) else g(zeta, Zbg)

    # outer monomial positions inside the total ring
    emap = R_out.embed_map(total, 0)
    outer_keys = total.keys[emap]

    out = [R_out.zero() for _ in range(order + 1)]
    for r in range(order + 1):
        a_idx, i_idx, tuples = _slot_tables(n, p, r)
        inner_weights = total._weights[nz : 2 * nz]
        # per slot tuple: outer-jet coefficient vectors of the r-th partials
        DF = {}
        DG = {}
        for k, tup in enumerate(tuples):
            key = 0
            w_in = 1
            counts = {}
            for s in tup:
                key += int(inner_weights[s])
                counts[s] = counts.get(s, 0) + 1
            for cnt in counts.values():
                w_in *= factorial(cnt)
            tidx = np.searchsorted(total.keys, outer_keys + key)
            DF[(int(a_idx[k]), int(i_idx[k]))] = jf.coeffs[tidx] * w_in
            DG[(int(a_idx[k]), int(i_idx[k]))] = jg.coeffs[tidx] * w_in
        inv_rfact = 1.0 / factorial(r)
        pr = p**r
        nr = n**r
        for frame, P in _frame_projectors(r, p):
            scal = np.zeros(R_out.size, dtype=complex)
            for icol in range(pr):
                for jcol in range(pr):
                    w = P[icol, jcol]
                    if w == 0:
                        continue
                    acc = np.zeros(R_out.size, dtype=complex)
                    for a in range(nr):
                        acc += R_out.multiply(DF[(a, icol)], DG[(a, jcol)])
                    scal += w * acc
            ser = lambda_coefficient_series(frame, mu, p, order)
            for t in range(r, order + 1):
                wt = ser.coeffs[t]
                if wt:
                    out[t] = out[t] + Jet(R_out, float(wt) * inv_rfact * scal)
    return R_out, out


def associativity_residuals(f, g, h, cfg: SpaceConfig, z: PointZ, order: int):
    """Per-lambda-order residual of ((f*g)*h - f*(g*h)) at a point."""
    zeta0 = level_representative(z, cfg.mu)
    n, p = cfg.n, cfg.p

    # left association: jets of f*g in holomorphic offsets, then pair with h
    _, fg = star_jet_series(f, g, zeta0, cfg, order, outer_holomorphic=True)
    DH = _derivative_tensors_at(h, zeta0, order, holomorphic=False)
    left = [0j] * (order + 1)
    for s in range(order + 1):
        DFs = [derivative_tensor(fg[s], n, p, r) for r in range(order + 1)]
        ser = _pairing_series(DFs, DH, p, cfg.mu, order)
        for u in range(order + 1 - s):
            left[s + u] += ser.coeffs[u]

    # right association: jets of g*h in antiholomorphic offsets, pair with f
    _, gh = star_jet_series(g, h, zeta0, cfg, order, outer_holomorphic=False)
    DF0 = _derivative_tensors_at(f, zeta0, order, holomorphic=True)
    right = [0j] * (order + 1)
    for s in range(order + 1):
        DGs = [derivative_tensor(gh[s], n, p, r) for r in range(order + 1)]
        ser = _pairing_series(DF0, DGs, p, cfg.mu, order)
        for u in range(order + 1 - s):
            right[s + u] += ser.coeffs[u]

    return [abs(a - b) for a, b in zip(left, right)]


# ---------------------------------------------------------------------------
# verification suite


def verify_suite(
    cfg: SpaceConfig,
    order: int = 2,
    seed: int = 0,
    tolerance: float = 1e-7,
    npoints: int = 1,
) -> dict:
    """Run the structural checks of the product at desk scale.

    Returns a JSON-serializable report; each entry records the check name,
    its parameters, the residual, the tolerance and a pass flag.  Fully
    deterministic for a fixed seed.
    """
    rng = np.random.default_rng(seed)
    checks = []
    params = {
        "p": cfg.p,
        "q": cfg.q,
        "mu": str(cfg.mu),
        "order": order,
        "seed": seed,
    }

    def record(name, residual, tol):
        checks.append(
            {
                "check": name,
                "params": params,
                "residual": float(residual),
                "tolerance": float(tol),
                "pass": bool(residual <= tol),
            }
        )

    tight = min(tolerance, 1e-10)
    for _ in range(npoints):
        z = sample_point(cfg, int(rng.integers(0, 2**31)))
        f = random_function_expr(cfg, rng)
        g = random_function_expr(cfg, rng)
        h = random_function_expr(cfg, rng)
        zeta = level_representative(z, cfg.mu)

        one = FunctionExpr.one()
        fz = eval_function(f, zeta)
        s_left = star_eval(one, f, cfg, z, order)
        s_right = star_eval(f, one, cfg, z, order)
        res_unit = max(
            max(abs(a) for a in (s_left - LambdaSeries.constant(fz, order)).coeffs),
            max(abs(a) for a in (s_right - LambdaSeries.constant(fz, order)).coeffs),
        )
        record("unit", res_unit, tight)

        fg = star_eval(f, g, cfg, z, order)
        gf = star_eval(g, f, cfg, z, order)
        pb = poisson_bracket(f, g, zeta)
        record("first_order_commutator", abs(fg.coeffs[1] - gf.coeffs[1] - 0.5j * pb), 1e-9)

        wick = wick_product(f, g, zeta, 1)
        record("zeroth_order", abs(fg.coeffs[0] - wick.coeffs[0]), tight)

        if cfg.p == 1:
            cp = projective_star_eval(f, g, cfg, z, order)
            record(
                "projective_closed_form",
                max(abs(a - b) for a, b in zip(fg.coeffs, cp.coeffs)),
                1e-11,
            )

        res_assoc = max(associativity_residuals(f, g, h, cfg, z, order))
        record("associativity", res_assoc, tolerance)

    return {"config": params, "checks": checks, "pass": all(c["pass"] for c in checks)}
