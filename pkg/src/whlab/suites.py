"""Named verification suites behind the command-line driver.

Each suite is a list of cases; a case draws its own generator seeded from
(config seed, case name), so cases are order-independent and a report is a
pure function of its configuration.  Every suite ships at least one
deliberately broken variant (wrong sign, dropped normalizer, wrong shift
direction, missing reflection) and the corresponding case passes exactly
when the break is flagged.
"""

from __future__ import annotations

import hashlib
import math
import time
from dataclasses import asdict, dataclass

import numpy as np

from . import fell, fibers, groupoid, homotopy, jordan, moebius, spectra, toeplitz
from .errors import InputValidationError, WitnessNotFoundError
from .fell import INF
from .sampling import (
    random_complex,
    random_hermitian,
    random_positive,
    random_positive_definite,
    random_unitary,
)


@dataclass
class SuiteConfig:
    suite: str
    dim: int = 4
    trials: int = 40
    seed: int = 0
    tol: float = 1e-9
    n: int = 16
    grid_step: float = 0.25
    model: str | None = None
    out: str | None = None

    def __post_init__(self):
        if self.trials < 1:
            raise InputValidationError("trials must be >= 1")
        if self.tol <= 0:
            raise InputValidationError("tol must be positive")
        if self.dim < 1:
            raise InputValidationError("dim must be >= 1")


@dataclass
class CaseResult:
    name: str
    status: str
    max_error: float | None
    tolerance: float | None
    details: str = ""

    def as_dict(self) -> dict:
        err = self.max_error
        if err is not None and not math.isfinite(err):
            err = None  # non-finite errors are reported through details
        return {
            "name": self.name,
            "status": self.status,
            "max_error": err,
            "tolerance": self.tolerance,
            "details": self.details,
        }


def case_rng(cfg: SuiteConfig, name: str) -> np.random.Generator:
    digest = hashlib.sha256(f"{cfg.seed}:{name}".encode()).digest()
    return np.random.default_rng(int.from_bytes(digest[:8], "big"))


def _bounded(name, err, tol, details="") -> CaseResult:
    status = "pass" if err <= tol else "fail"
    return CaseResult(name, status, float(err), float(tol), details)


def _flagged(name, detected: bool, details="") -> CaseResult:
    status = "pass" if detected else "fail"
    return CaseResult(name, status, None, None, details)


def _dims(cfg: SuiteConfig):
    return range(1, cfg.dim + 1)


# ---------------------------------------------------------------------------
# moebius


def _case_action_law(cfg):
    rng = case_rng(cfg, "moebius.action_law")
    worst = 0.0
    for dim in _dims(cfg):
        for _ in range(cfg.trials):
            u = random_unitary(rng, dim)
            a = random_hermitian(rng, dim)
            b = random_hermitian(rng, dim)
            lhs = moebius.boxplus(moebius.boxplus(u, a), b)
            rhs = moebius.boxplus(u, a + b)
            worst = max(worst, spectra.operator_norm(lhs - rhs))
    return _bounded("moebius.action_law", worst, cfg.tol, "(U[+]A)[+]B = U[+](A+B)")


def _case_cayley_equivariance(cfg):
    rng = case_rng(cfg, "moebius.cayley_equivariance")
    worst = 0.0
    for dim in _dims(cfg):
        for _ in range(cfg.trials):
            a = random_hermitian(rng, dim)
            b = random_hermitian(rng, dim)
            lhs = moebius.boxplus(spectra.cayley(a), b)
            rhs = spectra.cayley(a + b)
            worst = max(worst, spectra.operator_norm(lhs - rhs))
    return _bounded("moebius.cayley_equivariance", worst, cfg.tol, "cayley(A)[+]B = cayley(A+B)")


def _case_invertibility_margin(cfg):
    rng = case_rng(cfg, "moebius.invertibility_margin")
    floor = math.inf
    per_dim = max(cfg.trials * 5, 100)
    for dim in range(1, max(cfg.dim, 6) + 1):
        eye = np.eye(dim)
        for _ in range(per_dim):
            u = random_unitary(rng, dim)
            b = random_hermitian(rng, dim)
            smin = np.linalg.svd(b @ u + 2j * eye - b, compute_uv=False)[-1]
            floor = min(floor, float(smin))
    result = CaseResult(
        "moebius.invertibility_margin",
        "pass" if floor >= 1e-6 else "fail",
        float(floor),
        1e-6,
        "smallest singular value of BU+2i-B (must stay above tolerance)",
    )
    return result


def _case_z_stability(cfg):
    rng = case_rng(cfg, "moebius.z_stability")
    bad = 0
    for dim in _dims(cfg):
        for _ in range(cfg.trials):
            z = moebius.random_zpoint(rng, dim)
            b = random_positive(rng, dim)
            if moebius.classify_zpoint(moebius.boxplus(z.u, b)) == moebius.ZClass.OUTSIDE:
                bad += 1
    return _flagged("moebius.z_stability", bad == 0, f"{bad} translated Z points left Z")


def _case_contraction_range(cfg):
    rng = case_rng(cfg, "moebius.contraction_range")
    worst = 0.0
    order_failures = 0
    for dim in _dims(cfg):
        for _ in range(cfg.trials):
            b = random_positive_definite(rng, dim)
            b_inv = np.linalg.inv(b)
            a = random_positive(rng, dim)
            c = moebius.moebius_contraction(a, b)
            if jordan.order_compare(c, 0.5 * (b_inv + b_inv.conj().T)) != jordan.OrderRelation.LT:
                order_failures += 1
            recovered = moebius.contraction_inverse(c, b)
            worst = max(worst, spectra.operator_norm(moebius.moebius_contraction(recovered, b) - c))
            worst = max(worst, spectra.operator_norm(recovered - a))
    err = worst if order_failures == 0 else math.inf
    return _bounded(
        "moebius.contraction_range",
        err,
        1e-8,
        f"round-trip error; {order_failures} images violated C < B^-1",
    )


def _case_contraction_chart(cfg):
    rng = case_rng(cfg, "moebius.contraction_chart")
    worst = 0.0
    for dim in _dims(cfg):
        for _ in range(max(cfg.trials // 2, 5)):
            a = random_positive(rng, dim)
            b = random_positive(rng, dim)
            via_chart = moebius.moebius_contraction(a, b)
            composite = moebius.psi_inv(moebius.boxplus(moebius.psi(a), b))
            worst = max(worst, spectra.operator_norm(via_chart - composite))
    return _bounded(
        "moebius.contraction_chart", worst, 1e-8, "A(BA+1)^-1 matches psi^-1(psi(A)[+]B)"
    )


def _case_pair_roundtrip(cfg):
    rng = case_rng(cfg, "moebius.pair_roundtrip")
    worst = 0.0
    for dim in _dims(cfg):
        for _ in range(cfg.trials):
            z = moebius.random_zpoint(rng, dim)
            pair = moebius.pair_encode(z)
            worst = max(worst, spectra.operator_norm(moebius.pair_decode(pair).u - z.u))
    return _bounded("moebius.pair_roundtrip", worst, 1e-8, "decode(encode(U)) = U")


def _case_pair_translation(cfg):
    rng = case_rng(cfg, "moebius.pair_translation")
    worst = 0.0
    for dim in _dims(cfg):
        for _ in range(cfg.trials):
            z = moebius.random_zpoint(rng, dim)
            pair = moebius.pair_encode(z)
            b = random_positive(rng, dim)
            comp = np.eye(dim) - pair.e
            shifted = moebius.PairRep(e=pair.e, a=pair.a + comp @ b @ comp, tol=pair.tol)
            lhs = moebius.boxplus(moebius.pair_decode(pair).u, b)
            worst = max(worst, spectra.operator_norm(lhs - moebius.pair_decode(shifted).u))
    return _bounded(
        "moebius.pair_translation", worst, 1e-8, "U_(E,A)[+]B = U_(E, A+(1-E)B(1-E))"
    )


def _case_qset_a2(cfg):
    rng = case_rng(cfg, "moebius.qset_a2")
    origin = None
    mismatches = 0
    probes = 0
    for dim in _dims(cfg):
        origin = moebius.PairRep(e=np.zeros((dim, dim)), a=np.zeros((dim, dim)))
        for _ in range(cfg.trials * 4):
            kind = rng.integers(3)
            if kind == 0:
                b = random_positive(rng, dim)
            elif kind == 1:
                b = random_hermitian(rng, dim)
            else:
                b = random_positive(rng, dim)
                b = b - spectra.lambda_min(b) * np.eye(dim)  # plant a zero eigenvalue
            in_qset = moebius.qset_contains(origin, b, tol=cfg.tol)
            in_cone = spectra.lambda_min(0.5 * (b + b.conj().T)) >= -cfg.tol
            probes += 1
            if in_qset != in_cone:
                mismatches += 1
    return _flagged(
        "moebius.qset_a2", mismatches == 0, f"{mismatches}/{probes} probes disagreed with Q"
    )


def _case_separate_points(cfg):
    rng = case_rng(cfg, "moebius.separate_points")
    false_equal = 0
    not_found = 0
    total = 0
    for dim in _dims(cfg):
        for _ in range(cfg.trials):
            p1 = moebius.pair_encode(moebius.random_zpoint(rng, dim))
            p2 = moebius.pair_encode(moebius.random_zpoint(rng, dim))
            if p1.close_to(p2, tol=1e-8):
                continue
            total += 1
            try:
                witness = moebius.separate_points(p1, p2)
            except WitnessNotFoundError:
                not_found += 1
                continue
            if witness is None:
                false_equal += 1
    detected = false_equal == 0 and not_found == 0 and total > 0
    return _flagged(
        "moebius.separate_points",
        detected,
        f"{total} distinct pairs, {false_equal} false equal, {not_found} without witness",
    )


def _case_moebius_mutation(cfg):
    rng = case_rng(cfg, "moebius.mutation_sign_flip")

    def broken_boxplus(u, b):
        eye = np.eye(u.shape[0])
        numer = (2j * eye + b) @ u + b  # wrong sign on the affine term
        denom = b @ u + 2j * eye - b
        return np.linalg.solve(denom.T, numer.T).T

    worst = 0.0
    for _ in range(cfg.trials):
        a = random_hermitian(rng, 3)
        b = random_hermitian(rng, 3)
        lhs = broken_boxplus(spectra.cayley(a), b)
        worst = max(worst, spectra.operator_norm(lhs - spectra.cayley(a + b)))
    return _flagged(
        "moebius.mutation_sign_flip",
        worst > 1e-3,
        f"sign-flipped action reached equivariance error {worst:.3e} (must be flagged)",
    )


def suite_moebius(cfg: SuiteConfig):
    return [
        _case_action_law(cfg),
        _case_cayley_equivariance(cfg),
        _case_invertibility_margin(cfg),
        _case_z_stability(cfg),
        _case_contraction_range(cfg),
        _case_contraction_chart(cfg),
        _case_pair_roundtrip(cfg),
        _case_pair_translation(cfg),
        _case_qset_a2(cfg),
        _case_separate_points(cfg),
        _case_moebius_mutation(cfg),
    ]


# ---------------------------------------------------------------------------
# jordan


def _case_jordan_idempotent(cfg):
    rng = case_rng(cfg, "jordan.closure_idempotent")
    ok = True
    details = []
    for dim in range(2, max(cfg.dim, 2) + 1):
        gens = [random_hermitian(rng, dim) for _ in range(2)]
        alg = jordan.generate_algebra(gens, dim=dim)
        again = jordan.generate_algebra(alg.basis, dim=dim)
        if alg.rank != again.rank:
            ok = False
            details.append(f"dim {dim}: rank {alg.rank} -> {again.rank}")
        if any(not again.contains(b) for b in alg.basis):
            ok = False
            details.append(f"dim {dim}: containment broken")
    return _flagged("jordan.closure_idempotent", ok, "; ".join(details) or "stable closure")


def _case_jordan_cone(cfg):
    rng = case_rng(cfg, "jordan.cone_axioms")
    bad = 0
    for dim in _dims(cfg):
        alg = jordan.hermitian_algebra(dim)
        for _ in range(cfg.trials):
            a = random_positive(rng, dim) + 0.1 * np.eye(dim)
            b = random_positive(rng, dim) + 0.1 * np.eye(dim)
            t = float(rng.uniform(0.1, 5.0))
            if jordan.classify(alg, a) != jordan.ConeClass.INTERIOR:
                bad += 1
            if jordan.classify(alg, a + b) != jordan.ConeClass.INTERIOR:
                bad += 1
            if jordan.classify(alg, t * a) != jordan.ConeClass.INTERIOR:
                bad += 1
            lam = spectra.lambda_min(a)
            eps = 0.5 * lam
            if jordan.classify(alg, a - eps * np.eye(dim)) != jordan.ConeClass.INTERIOR:
                bad += 1
    return _flagged("jordan.cone_axioms", bad == 0, f"{bad} cone-axiom violations")


def _case_jordan_mutation(cfg):
    # wrong-sign order comparison must disagree with the contract on (0, I)
    def broken_order(a, b, tol=1e-9):
        lam = spectra.lambda_min(np.asarray(a, dtype=complex) - np.asarray(b, dtype=complex))
        if lam > tol:
            return jordan.OrderRelation.LT
        if lam >= -tol:
            return jordan.OrderRelation.LEQ
        return jordan.OrderRelation.INCOMPARABLE_OR_GT

    eye = np.eye(2)
    zero = np.zeros((2, 2))
    detected = broken_order(zero, eye) != jordan.order_compare(zero, eye)
    return _flagged("jordan.mutation_order_sign", detected, "flipped order comparison flagged")


def suite_jordan(cfg: SuiteConfig):
    return [
        _case_jordan_idempotent(cfg),
        _case_jordan_cone(cfg),
        _case_jordan_mutation(cfg),
    ]


# ---------------------------------------------------------------------------
# fell


def _case_fell_qset(cfg):
    mismatches = 0
    for n in list(range(0, 12)) + [INF]:
        x = fell.discrete(n)
        for g in range(-12, 13):
            if fell.omega_qset(x, g) != fell.point_contains(x, -g):
                mismatches += 1
    for xv in [0.0, 0.5, 1.0, 2.5, 7.0, INF]:
        x = fell.halfline(xv)
        for g in np.linspace(-8, 8, 65):
            if fell.omega_qset(x, float(g)) != fell.point_contains(x, -float(g)):
                mismatches += 1
    return _flagged("fell.qset_vs_membership", mismatches == 0, f"{mismatches} mismatches")


def _case_fell_limits(cfg):
    window = (-5.0, 5.0)
    step = cfg.grid_step
    constant = [fell.ray(1.0, "R", window, step) for _ in range(8)]
    escaping = [fell.ray(float(n), "R", window, step) for n in range(14)]
    alternating = [fell.ray(float(n % 2), "R", window, step) for n in range(12)]

    res_const = fell.fell_limit(constant)
    res_esc = fell.fell_limit(escaping)
    res_alt = fell.fell_limit(alternating)

    ok = res_const.converged and res_esc.converged and not res_alt.converged
    if ok:
        expected = np.array([constant[0].near(p) for p in res_const.grid])
        ok = bool(np.array_equal(res_const.liminf_mask, expected))
        ok = ok and bool(np.all(res_esc.liminf_mask))
    return _flagged(
        "fell.canonical_limits",
        ok,
        "constant -> itself, escaping -> window, alternating -> diverges",
    )


def _case_fell_orbit_continuity(cfg):
    window = (-4.0, 4.0)
    step = cfg.grid_step
    target = 1.5
    seq = [fell.ray(target + 2.0 ** (-n), "R", window, step) for n in range(12)]
    res = fell.fell_limit(seq)
    ok = res.converged
    if ok:
        expected_set = fell.ray(target, "R", window, step)
        expected = np.array([expected_set.near(p) for p in res.grid])
        ok = bool(np.array_equal(res.liminf_mask, expected))
    return _flagged("fell.orbit_continuity", ok, "translates converge to the translate limit")


def _case_fell_p_invariance(cfg):
    bad = 0
    for n in list(range(0, 8)) + [INF]:
        for a in range(0, 6):
            image = fell.translate(fell.discrete(n), a)
            if not fell.in_omega(image):
                bad += 1
    for xv in [0.0, 0.25, 3.0, INF]:
        for a in np.linspace(0, 5, 11):
            if not fell.in_omega(fell.translate(fell.halfline(xv), float(a))):
                bad += 1
    return _flagged("fell.p_invariance", bad == 0, f"{bad} translations left the compactification")


def _case_fell_mutation(cfg):
    def broken_qset(x, g):
        return True if x.is_infinite else x.value + g > 0  # strict: drops the boundary case

    x = fell.discrete(0)
    detected = broken_qset(x, 0) != fell.omega_qset(x, 0)
    return _flagged("fell.mutation_strict_inequality", detected, "boundary case distinguishes")


def suite_fell(cfg: SuiteConfig):
    return [
        _case_fell_qset(cfg),
        _case_fell_limits(cfg),
        _case_fell_orbit_continuity(cfg),
        _case_fell_p_invariance(cfg),
        _case_fell_mutation(cfg),
    ]


# ---------------------------------------------------------------------------
# toeplitz


def _toeplitz_actions(rng, k_values=(1, 2)):
    acts = []
    for k in k_values:
        if k == 1:
            acts.append(toeplitz.trivial_action(1))
        else:
            acts.append(toeplitz.conjugation_action(random_unitary(rng, k)))
    return acts


def _case_covariance(cfg):
    rng = case_rng(cfg, "toeplitz.covariance")
    worst = 0.0
    n = max(cfg.n, 16)
    for act in _toeplitz_actions(rng):
        for a in range(0, 9):
            for _ in range(max(cfg.trials // 8, 3)):
                x = random_complex(rng, act.k)
                worst = max(worst, toeplitz.covariance_residual(x, a, act, n))
    return _bounded("toeplitz.covariance", worst, 1e-12, "V_a* pi(x) V_a = pi(alpha_a(x))")


def _case_isometry_laws(cfg):
    n = max(cfg.n, 16)
    k = 1
    worst = 0.0
    for a in range(0, min(6, n)):
        wide = toeplitz.isometry_V(a, n + a, k)
        prod = (wide.adjoint() @ wide).subwindow(n)
        worst = max(worst, (prod - toeplitz.TruncatedOperator.identity(n, k)).norm())
    v1 = toeplitz.isometry_V(1, n, k)
    proj0 = toeplitz.TruncatedOperator.zeros(n, k)
    proj0.blocks[0, 0] = np.eye(k)
    worst = max(
        worst,
        ((v1 @ v1.adjoint()) - (toeplitz.TruncatedOperator.identity(n, k) - proj0)).norm(),
    )
    for a in range(0, 4):
        for b in range(0, 4):
            if a + b > n:
                continue
            lhs = toeplitz.isometry_V(b, n, k) @ toeplitz.isometry_V(a, n, k)
            worst = max(worst, (lhs - toeplitz.isometry_V(a + b, n, k)).norm())
    return _bounded("toeplitz.isometry_laws", worst, 1e-12, "shift semigroup laws on the truncation")


def _case_intertwine(cfg):
    rng = case_rng(cfg, "toeplitz.intertwine")
    n = max(cfg.n, 16)
    worst = 0.0
    for act in _toeplitz_actions(rng):
        for a in range(0, 6):
            x = random_complex(rng, act.k)
            v = toeplitz.isometry_V(a, n, act.k)
            lhs = v.adjoint() @ toeplitz.rep_pi(x, act, n)
            rhs = toeplitz.rep_pi(act.apply(a, x), act, n) @ v.adjoint()
            worst = max(worst, (lhs - rhs).norm())
    return _bounded("toeplitz.intertwine", worst, 1e-12, "V_a* x = alpha_a(x) V_a* exactly")


def _random_symbol(rng, k, radius, scale=1.0):
    values = {}
    for g in range(-radius, radius + 1):
        if rng.uniform() < 0.7:
            values[g] = scale * random_complex(rng, k)
    if not values:
        values[0] = scale * random_complex(rng, k)
    return toeplitz.SymbolFunction(k=k, values=values)


def _case_symbol_product_interior(cfg):
    rng = case_rng(cfg, "toeplitz.symbol_product_interior")
    n = max(cfg.n, 24)
    act = toeplitz.trivial_action(1)
    worst = 0.0
    for _ in range(max(cfg.trials // 4, 5)):
        f = _random_symbol(rng, 1, 3)
        h = _random_symbol(rng, 1, 3)
        margin = 6
        lhs = toeplitz.wiener_hopf(f, act, n) @ toeplitz.wiener_hopf(h, act, n)
        rhs = toeplitz.wiener_hopf(f.convolve(h), act, n)
        diff = lhs.interior(margin) - rhs.interior(margin)
        worst = max(worst, float(np.linalg.norm(diff, 2)))
    return _bounded(
        "toeplitz.symbol_product_interior", worst, 1e-10, "Toeplitz semi-multiplicativity away from the boundary"
    )


def _case_adjoint_symbol(cfg):
    rng = case_rng(cfg, "toeplitz.adjoint_symbol")
    n = max(cfg.n, 24)
    worst = 0.0
    for act in _toeplitz_actions(rng):
        for _ in range(max(cfg.trials // 8, 3)):
            f = _random_symbol(rng, act.k, 3)
            margin = 3
            lhs = toeplitz.wiener_hopf(f, act, n).adjoint().interior(margin)
            rhs = toeplitz.wiener_hopf(f.twisted_reflection(act), act, n).interior(margin)
            worst = max(worst, float(np.linalg.norm(lhs - rhs, 2)))
    return _bounded("toeplitz.adjoint_symbol", worst, 1e-10, "W_f* = W_{f reflected} on interior blocks")


def _case_toeplitz_mutation(cfg):
    rng = case_rng(cfg, "toeplitz.mutation_shift_direction")
    n = 16
    act = toeplitz.conjugation_action(random_unitary(rng, 2))
    x = random_complex(rng, 2)
    a = 3
    wide_v = toeplitz.isometry_V(a, n + a, 2)
    wrong_v = wide_v.adjoint()  # transposed shift: wrong direction
    pix = toeplitz.rep_pi(x, act, n + a)
    residual = ((wrong_v.adjoint() @ pix @ wrong_v).subwindow(n) - toeplitz.rep_pi(act.apply(a, x), act, n)).norm()
    return _flagged(
        "toeplitz.mutation_shift_direction",
        residual > 1e-6,
        f"wrong-direction shift covariance residual {residual:.3e} (must be flagged)",
    )


def suite_toeplitz(cfg: SuiteConfig):
    return [
        _case_covariance(cfg),
        _case_isometry_laws(cfg),
        _case_intertwine(cfg),
        _case_symbol_product_interior(cfg),
        _case_adjoint_symbol(cfg),
        _case_toeplitz_mutation(cfg),
    ]


# ---------------------------------------------------------------------------
# groupoid


def _random_section(rng, bundle, window, points=6, scale=1.0, x_bound=None, g_bound=None):
    """Random finitely supported section; x_bound/g_bound keep the support
    small enough that iterated products stay inside the window."""
    s = groupoid.GroupoidSection(bundle, window)
    x_bound = window.max_x if x_bound is None else x_bound
    g_bound = window.max_g if g_bound is None else g_bound
    units = list(range(x_bound + 1)) + ([INF] if window.include_inf else [])
    for _ in range(points):
        x = units[int(rng.integers(len(units)))]
        lo = -g_bound if x == INF else -min(int(x), g_bound)
        hi = g_bound if x == INF else min(g_bound, window.max_x - int(x))
        if lo > hi:
            continue
        g = int(rng.integers(lo, hi + 1))
        s.set((x, g), scale * random_complex(rng, bundle.k))
    if not s.values:
        s.set((0, 0), scale * random_complex(rng, bundle.k))
    return s


def _case_groupoid_algebra(cfg):
    rng = case_rng(cfg, "groupoid.algebra")
    window = groupoid.Window(max_x=20, max_g=14)
    worst = 0.0
    banach_bad = 0
    iso_bad = 0
    for k in (1, 2):
        bundle = (
            groupoid.trivial_bundle(1)
            if k == 1
            else groupoid.MatrixBundle(toeplitz.conjugation_action(random_unitary(rng, 2)))
        )
        for _ in range(max(cfg.trials // 2, 10)):
            phi = _random_section(rng, bundle, window, points=4, x_bound=8, g_bound=4)
            psi = _random_section(rng, bundle, window, points=4, x_bound=8, g_bound=4)
            chi = _random_section(rng, bundle, window, points=3, x_bound=8, g_bound=4)
            lhs = groupoid.convolve(groupoid.convolve(phi, psi), chi)
            rhs = groupoid.convolve(phi, groupoid.convolve(psi, chi))
            keys = set(lhs.values) | set(rhs.values)
            for e in keys:
                worst = max(worst, bundle.norm(e.x, lhs(e) - rhs(e)))
            if groupoid.i_norm(groupoid.convolve(phi, psi)) > groupoid.i_norm(phi) * groupoid.i_norm(psi) + 1e-9:
                banach_bad += 1
            if abs(groupoid.i_norm(groupoid.involute(phi)) - groupoid.i_norm(phi)) > 1e-9:
                iso_bad += 1
            inv2 = groupoid.involute(groupoid.involute(phi))
            for e in set(phi.values) | set(inv2.values):
                worst = max(worst, bundle.norm(e.x, phi(e) - inv2(e)))
    err = worst if banach_bad == 0 and iso_bad == 0 else math.inf
    return _bounded(
        "groupoid.algebra",
        err,
        1e-9,
        f"associativity/involution; {banach_bad} Banach violations, {iso_bad} isometry violations",
    )


def _case_lambda_bound(cfg):
    rng = case_rng(cfg, "groupoid.lambda_bound")
    n = 12
    window = groupoid.Window(max_x=n, max_g=n)
    violations = 0
    for k in (1, 2):
        bundle = (
            groupoid.trivial_bundle(1)
            if k == 1
            else groupoid.MatrixBundle(toeplitz.conjugation_action(random_unitary(rng, 2)))
        )
        for _ in range(max(cfg.trials, 20)):
            phi = _random_section(rng, bundle, window, points=5)
            if groupoid.lambda_rep(phi, n).norm() > groupoid.i_norm(phi) + 1e-9:
                violations += 1
    return _flagged("groupoid.lambda_bound", violations == 0, f"{violations} norm-bound violations")


def _case_central_identity(cfg):
    rng = case_rng(cfg, "groupoid.central_identity")
    n = max(cfg.n, 16)
    window = groupoid.Window(max_x=n, max_g=n)
    worst = 0.0
    for act in _toeplitz_actions(rng):
        for _ in range(max(cfg.trials // 2, 10)):
            f = _random_symbol(rng, act.k, min(8, n // 2))
            lifted, hat = groupoid.lift_and_hat(f, window, act=act)
            lhs = groupoid.lambda_rep(lifted, n)
            rhs = toeplitz.wiener_hopf(hat, act, n)
            worst = max(worst, float(np.max(np.abs(lhs.blocks - rhs.blocks))))
    return _bounded("groupoid.central_identity", worst, 1e-12, "Lambda(f~) = W_{f^} entrywise")


def _case_star_hom_interior(cfg):
    rng = case_rng(cfg, "groupoid.star_hom_interior")
    n = max(cfg.n, 16)
    window = groupoid.Window(max_x=2 * n, max_g=2 * n)
    bundle = groupoid.trivial_bundle(1)
    worst = 0.0
    for _ in range(max(cfg.trials // 4, 5)):
        phi = _random_section(rng, bundle, window, points=4, x_bound=n, g_bound=4)
        psi = _random_section(rng, bundle, window, points=4, x_bound=n, g_bound=4)
        margin = max(abs(e.g) for s in (phi, psi) for e in s.values)
        conv = groupoid.convolve(phi, psi)
        lhs = groupoid.lambda_rep(conv, n)
        rhs = groupoid.lambda_rep(phi, n) @ groupoid.lambda_rep(psi, n)
        if 2 * margin >= n:
            continue
        diff = lhs.interior(margin) - rhs.interior(margin)
        worst = max(worst, float(np.linalg.norm(diff, 2)))
    return _bounded(
        "groupoid.star_hom_interior", worst, 1e-10, "Lambda(phi*psi) = Lambda(phi)Lambda(psi) inside the margin"
    )


def _case_units_agree(cfg):
    mismatches = 0
    for x in list(range(0, 15)) + [INF]:
        for g in range(-15, 16):
            if groupoid.in_groupoid(x, g) != fell.omega_qset(fell.discrete(x), g):
                mismatches += 1
    return _flagged("groupoid.units_agree", mismatches == 0, f"{mismatches} membership mismatches")


def _case_shift_laws(cfg):
    rng = case_rng(cfg, "groupoid.shift_laws")
    window = groupoid.Window(max_x=14, max_g=14)
    bundle = groupoid.trivial_bundle(1)
    worst = 0.0
    for _ in range(max(cfg.trials // 2, 10)):
        # support kept small enough that composed shifts stay in-window
        psi = _random_section(rng, bundle, window, points=4, x_bound=6, g_bound=4)
        r0 = groupoid.shift_R(0, psi)
        for e in set(psi.values) | set(r0.values):
            worst = max(worst, bundle.norm(e.x, psi(e) - r0(e)))
        a, b = int(rng.integers(0, 4)), int(rng.integers(0, 4))
        lhs = groupoid.shift_R(a, groupoid.shift_R(b, psi))
        rhs = groupoid.shift_R(a + b, psi)
        for e in set(lhs.values) | set(rhs.values):
            worst = max(worst, bundle.norm(e.x, lhs(e) - rhs(e)))
    return _bounded("groupoid.shift_laws", worst, 1e-12, "R_0 = id and R_a R_b = R_{a+b}")


def _case_hat_laws(cfg):
    rng = case_rng(cfg, "groupoid.hat_laws")
    f = _random_symbol(rng, 2, 5)
    double = groupoid.hat_symbol(groupoid.hat_symbol(f))
    worst = 0.0
    for g in set(f.values) | set(double.values):
        worst = max(worst, float(np.max(np.abs(f(g) - double(g)))))
    return _bounded("groupoid.hat_laws", worst, 0.0, "hat is an involution")


def _case_groupoid_mutation(cfg):
    rng = case_rng(cfg, "groupoid.mutation_unreflected_hat")
    n = 12
    window = groupoid.Window(max_x=n, max_g=n)
    act = toeplitz.trivial_action(1)
    f = toeplitz.SymbolFunction(k=1, values={2: [[1.0]]})  # asymmetric support
    lifted = groupoid.lift_symbol(f, window, act=act)
    lhs = groupoid.lambda_rep(lifted, n)
    rhs = toeplitz.wiener_hopf(f, act, n)  # hat skipped: no reflection
    err = float(np.max(np.abs(lhs.blocks - rhs.blocks)))
    return _flagged(
        "groupoid.mutation_unreflected_hat",
        err > 0.5,
        f"skipping the reflection breaks the representation identity by {err:.3e}",
    )


def suite_groupoid(cfg: SuiteConfig):
    return [
        _case_groupoid_algebra(cfg),
        _case_lambda_bound(cfg),
        _case_central_identity(cfg),
        _case_star_hom_interior(cfg),
        _case_units_agree(cfg),
        _case_shift_laws(cfg),
        _case_hat_laws(cfg),
        _case_groupoid_mutation(cfg),
    ]


# ---------------------------------------------------------------------------
# fibers


def kernel_member(f: "fibers.PiecewisePoly", cut: float) -> "fibers.PiecewisePoly":
    """Flatten a piecewise-linear function to zero on [0, cut]."""
    breaks = np.union1d(np.asarray(f.breaks), [min(cut, 1.0)])
    vals = [0.0 if b <= cut + 1e-15 else f(b) for b in breaks]
    return fibers.PiecewisePoly.from_breakpoints(breaks, vals)


def _case_kernel_identity(cfg):
    rng = case_rng(cfg, "fibers.kernel_identity")
    bad = 0
    checked = 0
    for _ in range(max(cfg.trials * 2, 40)):
        n = int(rng.integers(0, 11))
        f = fibers.random_dyadic_pl(rng, level=4)
        cut = 2.0 ** (-n)
        member = kernel_member(f, cut)
        checked += 1
        # Ker(alpha_n) -> ideal: the flattened function is in both
        if not fibers.ideal_contains(n, member, tol=cfg.tol):
            bad += 1
        if member.sup_abs(0.0, cut) > cfg.tol:
            bad += 1
        # ideal -> Ker(alpha_n): production membership against the direct-sup oracle
        in_ideal = fibers.ideal_contains(n, f, tol=cfg.tol)
        killed = f.sup_abs(0.0, cut) <= cfg.tol
        if in_ideal != killed:
            bad += 1
    return _flagged("fibers.kernel_identity", bad == 0, f"{bad} failures over {checked} draws")


def _case_quotient_oracle(cfg):
    rng = case_rng(cfg, "fibers.quotient_oracle")
    worst = 0.0
    for _ in range(max(cfg.trials, 30)):
        f = fibers.random_dyadic_pl(rng, level=4)
        for n in range(0, 11):
            production = fibers.quotient_norm(n, f)
            oracle = f.sup_abs(0.0, 2.0 ** (-n))
            worst = max(worst, abs(production - oracle))
        worst = max(worst, abs(fibers.quotient_norm(INF, f) - abs(f(0.0))))
    return _bounded("fibers.quotient_oracle", worst, 1e-12, "norm formula matches the direct sup")


def _case_cstar_seminorm(cfg):
    rng = case_rng(cfg, "fibers.cstar_seminorm")
    bad = 0
    points = [0, 1, 3, 7, INF]
    for _ in range(max(cfg.trials, 30)):
        x = fibers.random_dyadic_pl(rng, level=3)
        y = fibers.random_dyadic_pl(rng, level=3)
        for p in points:
            qx = fibers.quotient_norm(p, x)
            qy = fibers.quotient_norm(p, y)
            if fibers.quotient_norm(p, x + y) > qx + qy + 1e-10:
                bad += 1
            if fibers.quotient_norm(p, x * y) > qx * qy + 1e-10:
                bad += 1
            if abs(fibers.quotient_norm(p, x.star() * x) - qx * qx) > 1e-10:
                bad += 1
    return _flagged("fibers.cstar_seminorm", bad == 0, f"{bad} seminorm violations")


def _case_usc_infinity(cfg):
    rng = case_rng(cfg, "fibers.usc_infinity")
    bad = 0
    for _ in range(max(cfg.trials, 20)):
        f = fibers.random_dyadic_pl(rng, level=4)
        limit = fibers.quotient_norm(INF, f)
        values = [fibers.quotient_norm(n, f) for n in range(0, 41, 5)]
        if any(values[i] < values[i + 1] - 1e-12 for i in range(len(values) - 1)):
            bad += 1  # the sequence must be nonincreasing for this action
        if values[-1] > limit + cfg.tol:
            bad += 1
    return _flagged("fibers.usc_infinity", bad == 0, f"{bad} upper-semicontinuity violations")


def _case_fiber_action(cfg):
    rng = case_rng(cfg, "fibers.action_welldefined")
    worst = 0.0
    iso_bad = 0
    for _ in range(max(cfg.trials, 20)):
        f = fibers.random_dyadic_pl(rng, level=3)
        g = int(rng.integers(-5, 6))
        xv = int(rng.integers(max(0, -g), 8))
        src = xv + g
        q = fibers.QuotientElement(x=src, rep=f)
        base = fibers.fiber_action(xv, g, q)
        for extra in (1, 2, 3):
            a, b = max(g, 0) + extra, max(-g, 0) + extra
            other = fibers.fiber_action(xv, g, q, decomposition=(a, b))
            worst = max(worst, fibers.quotient_norm(xv, base.rep - other.rep))
        if abs(base.seminorm - q.seminorm) > 1e-9:
            iso_bad += 1
    err = worst if iso_bad == 0 else math.inf
    return _bounded(
        "fibers.action_welldefined", err, 1e-9, f"decomposition independence; {iso_bad} isometry failures"
    )


def _case_dilation(cfg):
    rng = case_rng(cfg, "fibers.dilation")
    ok = True
    details = []
    for _ in range(max(cfg.trials // 2, 10)):
        x = fibers.random_trig(rng, degree=3)
        e0 = fibers.dilation_embed(0, x)
        e1 = fibers.dilation_embed(1, x.dilate(1))
        if not fibers.dilation_equal(e0, e1):
            ok = False
            details.append("defining identification broken")
        y = fibers.random_trig(rng, degree=3)
        if fibers.dilation_equal(fibers.dilation_embed(0, x), fibers.dilation_embed(0, x + y)) and y.coeffs:
            ok = False
            details.append("distinct payloads compared equal")
        if abs(fibers.dilation_norm(fibers.dilation_embed(5, x)) - x.norm()) > 1e-9:
            ok = False
            details.append("level promotion changed the norm")
        # fibers over finite points collapse to a single payload at that level
        supp = {g: complex(rng.standard_normal(), rng.standard_normal()) for g in range(-3, 4)}
        cert = fibers.fiber_section_F(x, supp, 3)
        if cert.element.level > 3 or not cert.check():
            ok = False
            details.append("certificate failed")
        cert_inf = fibers.fiber_section_F(x, supp, INF)
        if not cert_inf.check():
            ok = False
            details.append("infinite-fiber certificate failed")
        if not all(g <= 5 for g, _ in cert.witnesses):  # monotone into larger fibers
            ok = False
            details.append("monotonicity broken")
    return _flagged("fibers.dilation", ok, "; ".join(sorted(set(details))) or "dilation laws hold")


def _case_fibers_mutation(cfg):
    rng = case_rng(cfg, "fibers.mutation_wrong_window")

    def broken_quotient_norm(n, f):
        return f.sup_abs(0.0, 2.0 ** (-max(n - 1, 0)))  # sups over twice the window

    f = fibers.random_dyadic_pl(rng, level=3)
    breaks = np.asarray(f.breaks)
    member = fibers.PiecewisePoly.from_breakpoints(
        breaks, [0.0 if b <= 0.25 + 1e-15 else 1.0 + abs(f(b)) for b in breaks]
    )
    n = 2
    true_zero = fibers.quotient_norm(n, member) <= 1e-9
    broken_zero = broken_quotient_norm(n, member) <= 1e-9
    return _flagged(
        "fibers.mutation_wrong_window",
        true_zero and not broken_zero,
        "kernel member separates the correct window from the doubled one",
    )


def suite_fibers(cfg: SuiteConfig):
    return [
        _case_kernel_identity(cfg),
        _case_quotient_oracle(cfg),
        _case_cstar_seminorm(cfg),
        _case_usc_infinity(cfg),
        _case_fiber_action(cfg),
        _case_dilation(cfg),
        _case_fibers_mutation(cfg),
    ]


# ---------------------------------------------------------------------------
# homotopy


def unitary_samples(rng, count=50, dim=3, tol=1e-9):
    samples = []
    samples.append(moebius.zpoint(-np.eye(dim)))
    samples.append(moebius.zpoint(np.eye(dim)))
    while len(samples) < count:
        force_boundary = len(samples) % 3 == 0
        samples.append(moebius.random_zpoint(rng, dim, force_boundary=force_boundary))
    return samples


def _case_homotopy_halfline(cfg):
    rng = case_rng(cfg, "homotopy.halfline")
    spec = homotopy.make_halfline_homotopy()
    report = homotopy.verify_condition_h(spec, samples=homotopy.halfline_samples(rng, max(cfg.trials, 50)))
    return _flagged("homotopy.halfline", report["passed"], "; ".join(report["failures"][:3]) or "all clauses pass")


def _case_homotopy_unitary(cfg):
    rng = case_rng(cfg, "homotopy.unitary")
    spec = homotopy.make_unitary_homotopy()
    samples = unitary_samples(rng, count=max(cfg.trials, 50), dim=min(cfg.dim, 3) if cfg.dim >= 2 else 2)
    report = homotopy.verify_condition_h(spec, samples=samples)
    return _flagged("homotopy.unitary", report["passed"], "; ".join(report["failures"][:3]) or "all clauses pass")


def _case_homotopy_mutants(cfg):
    rng = case_rng(cfg, "homotopy.mutants")
    half = homotopy.verify_condition_h(
        homotopy.make_halfline_mutant(), samples=homotopy.halfline_samples(rng, 20)
    )
    unit = homotopy.verify_condition_h(
        homotopy.make_unitary_mutant(), samples=unitary_samples(rng, count=10, dim=2)
    )
    detected = (not half["passed"]) and (not unit["passed"])
    return _flagged(
        "homotopy.mutants_flagged",
        detected,
        f"halfline mutant passed={half['passed']}, unitary mutant passed={unit['passed']}",
    )


def suite_homotopy(cfg: SuiteConfig):
    cases = []
    if cfg.model in (None, "halfline"):
        cases.append(_case_homotopy_halfline(cfg))
    if cfg.model in (None, "unitary"):
        cases.append(_case_homotopy_unitary(cfg))
    cases.append(_case_homotopy_mutants(cfg))
    return cases


# ---------------------------------------------------------------------------
# driver


SUITES = {
    "moebius": suite_moebius,
    "jordan": suite_jordan,
    "fell": suite_fell,
    "toeplitz": suite_toeplitz,
    "groupoid": suite_groupoid,
    "fibers": suite_fibers,
    "homotopy": suite_homotopy,
}


def run(cfg: SuiteConfig, inject_failure: bool = False) -> dict:
    """Run a suite (or all of them); returns the report dict with cases
    sorted by name.  Wall time is reported for the console but excluded from
    the serialized report so identical configurations emit identical bytes.
    """
    if cfg.suite == "all":
        names = sorted(SUITES)
    elif cfg.suite in SUITES:
        names = [cfg.suite]
    else:
        raise InputValidationError(f"unknown suite {cfg.suite!r}")

    start = time.perf_counter()
    cases: list[CaseResult] = []
    for name in names:
        cases.extend(SUITES[name](cfg))
    if inject_failure:
        cases.append(CaseResult("injected_failure", "fail", 1.0, 0.0, "requested failure"))
    cases.sort(key=lambda c: c.name)
    wall = time.perf_counter() - start

    config_echo = asdict(cfg)
    config_echo.pop("out", None)  # where the report goes is not what was computed
    report = {
        "suite": cfg.suite,
        "config": config_echo,
        "cases": [c.as_dict() for c in cases],
    }
    return {"report": report, "wall_time": wall, "failed": any(c.status == "fail" for c in cases)}
