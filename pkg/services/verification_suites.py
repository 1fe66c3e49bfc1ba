"""
Property suites run by `verify`.

A suite pairs a generator, which turns a random stream into a JSON instance,
with a checker that deserializes the instance and measures how far each
invariant is from failing. Checkers only ever see the JSON form, so a stored
counterexample replays exactly.
"""

from dataclasses import dataclass
from typing import Callable, Dict, List

import numpy as np

from modules.algebra import (
    apply,
    element_leq,
    elements_close,
    interpolate_pregap,
    pushforward_spectral_bound_check,
    sandwich_pullback,
)
from modules.calkin import (
    badpq_overlap,
    essential_leq,
    essential_norm_estimate,
    essential_spectrum_estimate,
    tail_sup_excluding_one,
)
from modules.errors import ConstructionError
from modules.projorder import (
    DensityState,
    complement,
    glb_criterion,
    glb_norm_check,
    join_span,
    leq,
    lub_glb_duality_report,
    meet_nullspace,
    meet_spectral,
    nonzero_meet_check,
    separativity_witness,
    spectrum_identity_report,
    state_centred_check,
    strictly_below,
    witness_report,
)
from modules.sequences import (
    ScheduleConfig,
    chain_bound_report,
    decreasing_equalizer_recursive,
    decreasing_equalizer_spectral,
    ee_inequality_check,
    gap_element,
    increasing_equalizer,
    spectral_sandwich_sequence,
    techcon_check,
)
from modules.sequences.estimates import CHAIN_SLACK, EE_SLACK
from modules.spectra import (
    Projection,
    ToleranceConfig,
    decompose,
    frobenius_distance,
    operator_norm,
)
from .instance_generator import InstanceGenerator as gen
from .serialization_service import SerializationService as ser

MEET_TOL = 1e-8
IDENTITY_TOL = 1e-7
CALKIN_N = 200
CALKIN_TARGETS = (0.5, 0.8, 0.9)


@dataclass(frozen=True)
class CheckOutcome:
    ok: bool
    violation: float = 0.0
    detail: str = ""


@dataclass(frozen=True)
class Suite:
    name: str
    invariant: str
    default_count: int
    generate: Callable[[np.random.Generator, int, int], dict]
    check: Callable[[dict, ToleranceConfig], CheckOutcome]
    fixed_count: bool = False


def outcome(excess: Dict[str, float]) -> CheckOutcome:
    """ok when every excess is ≤ 0; the violation is the largest positive excess."""
    failing = sorted(name for name, value in excess.items() if value > 0)
    worst = max([0.0] + [float(v) for v in excess.values()])
    return CheckOutcome(ok=not failing, violation=worst, detail=", ".join(failing))


def _flag(holds: bool) -> float:
    return 0.0 if holds else 1.0


def _mats(ms) -> List[dict]:
    return [ser.matrix_to_json(m) for m in ms]


def _projs(docs, cfg: ToleranceConfig) -> List[Projection]:
    return [ser.projection_from_json(d, cfg) for d in docs]


def _decreasing_excess(qs: List[Projection], cfg: ToleranceConfig) -> float:
    gaps = [operator_norm(b.matrix - a.matrix @ b.matrix) for a, b in zip(qs, qs[1:])]
    return max([0.0] + gaps) - cfg.order_tol


def _planted_family(rng, n: int, k: int) -> List[np.ndarray]:
    meet_rank = int(rng.integers(1, n)) if rng.random() < 0.5 else 0
    ps, _ = gen.family_with_meet(rng, n, k, meet_rank)
    return ps


# ----- spectral families ----------------------------------------------

def gen_spectral_family(rng, max_dim: int, index: int) -> dict:
    S = gen.hermitian(rng, gen.dim(rng, max_dim))
    w = np.linalg.eigvalsh(S)
    t = float(rng.uniform(w.min() - 0.5, w.max() + 0.5))
    return {"S": ser.matrix_to_json(S), "t": t, "t2": t + float(rng.uniform(0.01, 1.0))}


def check_spectral_family(doc: dict, cfg: ToleranceConfig) -> CheckOutcome:
    S = ser.hermitian_from_json(doc["S"], cfg)
    t, t2 = doc["t"], doc["t2"]
    dec = decompose(S, cfg)
    lower, lower_open, higher = dec.family_at(t), dec.family_at(t, "open_below"), dec.family_at(t2)
    upper = dec.upper_family_at(t)
    s = S.matrix

    def forms(P: Projection) -> List[float]:
        return [float(np.real(np.vdot(v, s @ v))) for v in P.range_basis.T]

    norm = operator_norm(s)
    return outcome({
        "family monotone in t": _flag(leq(lower, higher, cfg)),
        "E(t−) ≤ E(t)": _flag(leq(lower_open, lower, cfg)),
        "⟨Sv,v⟩ ≤ t on E(t)": max([-1.0] + [x - t - 1e-8 for x in forms(lower)]),
        "⟨Sv,v⟩ > t on E⊥(t)": max([-1.0] + [t - 1e-8 - x for x in forms(upper)]),
        "E(t) + E⊥(t) = I": operator_norm(lower.matrix + upper.matrix - np.eye(S.dim)) - 1e-8,
        "reconstruction": operator_norm(s - dec.reconstruct()) - 1e-8 * (1 + norm),
        "norm = max |σ|": abs(norm - max(abs(x) for x in dec.eigenvalues)) - 1e-9,
    })


# ----- meets and spectral identities ------------------------------------

def gen_meet(rng, max_dim: int, index: int) -> dict:
    n = gen.dim(rng, max_dim)
    return {"projections": _mats(_planted_family(rng, n, int(rng.integers(2, 5))))}


def check_meet(doc: dict, cfg: ToleranceConfig) -> CheckOutcome:
    ps = _projs(doc["projections"], cfg)
    return outcome({"meet_spectral = meet_nullspace": frobenius_distance(meet_spectral(ps, cfg), meet_nullspace(ps, cfg)) - MEET_TOL})


def gen_identities(rng, max_dim: int, index: int) -> dict:
    P, Q = _planted_family(rng, gen.dim(rng, max_dim), 2)
    return {"P": ser.matrix_to_json(P), "Q": ser.matrix_to_json(Q)}


def check_identities(doc: dict, cfg: ToleranceConfig) -> CheckOutcome:
    P, Q = _projs([doc["P"], doc["Q"]], cfg)
    return outcome({
        "product spectra and norms": spectrum_identity_report(P, Q, cfg).max_discrepancy - IDENTITY_TOL,
        "σ(PQ) = σ(P⊥Q⊥) on (0,1)": lub_glb_duality_report(P, Q).discrepancy - IDENTITY_TOL,
        "P∧Q ≠ 0 iff ‖PQ‖ = 1": _flag(nonzero_meet_check(P, Q, cfg).consistent),
    })


def gen_glb(rng, max_dim: int, index: int) -> dict:
    n = gen.dim(rng, max_dim)
    ps, _ = gen.family_with_meet(rng, n, int(rng.integers(2, 5)), int(rng.integers(1, n)))
    return {"projections": _mats(ps)}


def check_glb(doc: dict, cfg: ToleranceConfig) -> CheckOutcome:
    ps = _projs(doc["projections"], cfg)
    meet = meet_nullspace(ps, cfg)
    at_meet = glb_norm_check(ps, meet, cfg)
    below = Projection.from_orthonormal(meet.range_basis[:, 1:])
    return outcome({
        "‖T − ⋀P‖ < 1": _flag(at_meet.is_glb),
        "R strictly below ⋀P": _flag(strictly_below(below, meet, cfg)),
        "‖T − R‖ ≥ 1 for R < ⋀P": (1 - cfg.order_tol) - glb_norm_check(ps, below, cfg).norm,
        "sup σ(T*T)∖{1} < 1": _flag(glb_criterion(ps, cfg).criterion_holds),
    })


def gen_separativity(rng, max_dim: int, index: int) -> dict:
    n = gen.dim(rng, max_dim)
    return {"P": ser.matrix_to_json(gen.projection(rng, n)), "Q": ser.matrix_to_json(gen.projection(rng, n))}


def check_separativity(doc: dict, cfg: ToleranceConfig) -> CheckOutcome:
    P, Q = _projs([doc["P"], doc["Q"]], cfg)
    if leq(P, Q, cfg):
        return CheckOutcome(ok=True, detail="comparable pair skipped")
    report = witness_report(P, Q, separativity_witness(P, Q, cfg), cfg)
    return outcome({
        "R ≠ 0": _flag(report.nonzero),
        "R ≤ P": _flag(report.below_p),
        "R ∧ Q = 0": _flag(report.meet_with_q_zero),
        "‖QR‖ ≤ √(1 − s)": report.qr_norm - report.qr_bound - 1e-8,
    })


# ----- sequences ---------------------------------------------------------

def gen_equalizers(rng, max_dim: int, index: int) -> dict:
    n = gen.dim(rng, max_dim, cap=12)
    return {"projections": _mats(_planted_family(rng, n, int(rng.integers(2, 7))))}


def check_equalizers(doc: dict, cfg: ToleranceConfig) -> CheckOutcome:
    ps = _projs(doc["projections"], cfg)
    oracle = meet_nullspace(ps, cfg)
    recursive = decreasing_equalizer_recursive(ps, cfg)
    spectral = decreasing_equalizer_spectral(ps, ScheduleConfig(), cfg)
    raw = spectral_sandwich_sequence(ps, ScheduleConfig(), cfg, length=len(spectral))
    chain = chain_bound_report(ps, raw)
    techcon = techcon_check(raw)
    increasing = increasing_equalizer(ps, cfg)
    rising = [complement(p) for p in increasing]
    return outcome({
        "recursive decreasing": _decreasing_excess(recursive, cfg),
        "recursive meet": frobenius_distance(meet_nullspace(recursive, cfg), oracle) - MEET_TOL,
        "spectral decreasing": _decreasing_excess(spectral, cfg),
        "spectral meet": frobenius_distance(meet_nullspace(spectral, cfg), oracle) - MEET_TOL,
        "chain bounds 1/(n+1)²": max(chain.projection_excess, chain.chain_excess) - CHAIN_SLACK,
        "partial sums ≤ 1/(n+1)": techcon.bound_excess - len(raw) * CHAIN_SLACK,
        "increasing": _decreasing_excess(rising, cfg),
        "increasing join": frobenius_distance(join_span(increasing, cfg), join_span(ps, cfg)) - MEET_TOL,
    })


def gen_ee(rng, max_dim: int, index: int) -> dict:
    n = gen.dim(rng, max_dim, cap=12)
    S = gen.hermitian(rng, n, scale=float(rng.uniform(0.1, 3.0)))
    norm = float(np.linalg.norm(S, 2))
    return {
        "S": ser.matrix_to_json(S),
        "P": ser.matrix_to_json(gen.projection(rng, n)),
        "s": float(rng.uniform(0, 0.95 * norm)),
        "t": float(rng.uniform(-norm, 0.95 * norm)),
    }


def check_ee(doc: dict, cfg: ToleranceConfig) -> CheckOutcome:
    report = ee_inequality_check(ser.hermitian_from_json(doc["S"], cfg), ser.projection_from_json(doc["P"], cfg),
                                 doc["s"], doc["t"], cfg)
    return outcome({"‖E_S(t)E⊥_PSP(s)‖² ≤ (‖S‖−s)/(‖S‖−t)": report.lhs - report.rhs - EE_SLACK})


def gen_gap(rng, max_dim: int, index: int) -> dict:
    n = gen.dim(rng, max_dim, cap=12)
    return {
        "P": ser.matrix_to_json(gen.projection(rng, n)),
        "Q": ser.matrix_to_json(gen.projection(rng, n)),
        "commuting": _mats([gen.commuting_projection(rng, n), gen.commuting_projection(rng, n)]),
    }


def check_gap(doc: dict, cfg: ToleranceConfig) -> CheckOutcome:
    P, Q = _projs([doc["P"], doc["Q"]], cfg)
    cert = gap_element(P, Q, cfg)
    try:
        gap_element(*_projs(doc["commuting"], cfg), cfg)
        commuting_rejected = False
    except ConstructionError:
        commuting_rejected = True
    return outcome({
        "S ≤ Q": -cfg.psd_tol - cert.min_eig_q_minus_s,
        "S ≤ P": -cfg.psd_tol - cert.min_eig_p_minus_s,
        "S incomparable with 0": _flag(cert.pos_value > 0 and cert.neg_value < 0),
        "witness ⊥ P∧Q": cert.meet_overlap - cfg.order_tol,
        "commuting pair rejected": _flag(commuting_rejected),
    })


# ----- block algebras ----------------------------------------------------

def gen_pullbacks(rng, max_dim: int, index: int) -> dict:
    m = gen.quotient_morphism(rng, min_target_dim=2)
    r_blocks, p_blocks, q_blocks = gen.nested_block_projections(rng, m)
    ps, qs = gen.pregap(rng, m.target)
    return {
        "morphism": ser.morphism_to_json(m),
        "R": ser.element_to_json(m.source.element(r_blocks)),
        "P": ser.element_to_json(m.source.element(p_blocks)),
        "q": ser.element_to_json(m.target.element(q_blocks)),
        "ps": [ser.element_to_json(m.target.element(b)) for b in ps],
        "qs": [ser.element_to_json(m.target.element(b)) for b in qs],
    }


def check_pullbacks(doc: dict, cfg: ToleranceConfig) -> CheckOutcome:
    m = ser.morphism_from_json(doc["morphism"])
    R = ser.element_from_json(doc["R"], m.source, "R")
    P = ser.element_from_json(doc["P"], m.source, "P")
    q = ser.element_from_json(doc["q"], m.target, "q")
    Q = sandwich_pullback(m, q, R, P, cfg)

    ps = [ser.element_from_json(x, m.target, "p") for x in doc["ps"]]
    qs = [ser.element_from_json(x, m.target, "q") for x in doc["qs"]]
    image = apply(m, interpolate_pregap(m, ps, qs, cfg))
    return outcome({
        "π(Q) = q": _flag(elements_close(apply(m, Q), q, cfg.order_tol)),
        "R ≤ Q ≤ P": _flag(element_leq(R, Q, cfg) and element_leq(Q, P, cfg)),
        "p ≤ π(X)": _flag(all(element_leq(p, image, cfg) for p in ps)),
        "π(X) ≤ q": _flag(all(element_leq(image, x, cfg) for x in qs)),
        "interpolant strict": _flag(not elements_close(image, ps[-1], cfg.order_tol)
                                    and not elements_close(image, qs[-1], cfg.order_tol)),
    })


def gen_pushforward(rng, max_dim: int, index: int) -> dict:
    m = gen.quotient_morphism(rng)
    s_blocks = [gen.hermitian(rng, d) for d in m.source.block_dims]
    t = float(rng.uniform(-1.5, 1.5))
    p_blocks = gen.spectral_subprojection(rng, s_blocks, t, upper=bool(rng.random() < 0.5))
    return {
        "morphism": ser.morphism_to_json(m),
        "S": ser.element_to_json(m.source.element(s_blocks)),
        "P": ser.element_to_json(m.source.element(p_blocks)),
        "t": t,
    }


def check_pushforward(doc: dict, cfg: ToleranceConfig) -> CheckOutcome:
    m = ser.morphism_from_json(doc["morphism"])
    S = ser.element_from_json(doc["S"], m.source, "S")
    P = ser.element_from_json(doc["P"], m.source, "P")
    return outcome({"spectral bounds pass to the quotient": _flag(pushforward_spectral_bound_check(m, P, S, doc["t"], cfg))})


# ----- states ------------------------------------------------------------

def gen_centred(rng, max_dim: int, index: int) -> dict:
    n = gen.dim(rng, max_dim)
    k = int(rng.integers(2, 5))
    if rng.random() < 0.5:
        frame = gen.unitary(rng, n)
        ps = []
        for _ in range(k):
            cols = [0] + [c for c in range(1, n) if rng.random() < 0.5]
            ps.append(gen.projector(frame[:, cols]))
        v = frame[:, 0]
    else:
        ps, common = gen.family_with_meet(rng, n, k, int(rng.integers(1, n)))
        coeff = rng.standard_normal(common.shape[1]) + 1j * rng.standard_normal(common.shape[1])
        v = common @ (coeff / np.linalg.norm(coeff))
    return {"projections": _mats(ps), "state": ser.matrix_to_json(np.outer(v, v.conj()))}


def check_centred(doc: dict, cfg: ToleranceConfig) -> CheckOutcome:
    ps = _projs(doc["projections"], cfg)
    report = state_centred_check(DensityState.from_matrix(ser.matrix_from_json(doc["state"]), cfg), ps)
    return outcome({
        "φ(P) = 1 for all P": _flag(report.all_one),
        "‖P_0⋯P_n‖ = 1": (1 - 1e-8) - report.product_norm,
    })


# ----- calkin model -------------------------------------------------------

def gen_calkin(rng, max_dim: int, index: int) -> dict:
    return {"family": ("badpq", "pomega")[index % 2], "N": CALKIN_N}


def _check_badpq(P, Q) -> Dict[str, float]:
    overlaps = [abs(operator_norm(P.block(n) @ Q.block(n)) ** 2 - badpq_overlap(n)) for n in range(P.N)]
    truncations = [Projection.from_matrix(X.truncation()) for X in (P, Q)]
    return {
        "‖π(P − Q)‖ ≤ 2/N": essential_norm_estimate(P - Q).estimate - 2 / P.N,
        "‖P_nQ_n‖² closed form": max(overlaps) - 1e-12,
        "π(P) = π(Q)": _flag(essential_leq(P, Q) and essential_leq(Q, P)),
        "P ∧ Q = 0 on truncations": _flag(meet_nullspace(truncations).is_zero()),
    }


def _check_pomega(P, Q) -> Dict[str, float]:
    persistent = essential_spectrum_estimate(P @ Q @ P)
    missing = {f"{x} ∈ σ_ess(PQP)": min([1.0] + [abs(v - x) for v in persistent]) - 1e-9 for x in CALKIN_TARGETS}
    sups = [tail_sup_excluding_one((P @ Q).with_truncation(N)) for N in (P.N // 8, P.N // 4, P.N // 2, P.N)]
    missing["tail sup σ(T*T)∖{1} non-decreasing"] = max(a - b for a, b in zip(sups, sups[1:]))
    return missing


def check_calkin(doc: dict, cfg: ToleranceConfig) -> CheckOutcome:
    P, Q = ser.family_from_json(doc)
    if doc["family"] == "badpq":
        return outcome(_check_badpq(P, Q))
    return outcome(_check_pomega(P, Q))


SUITES: List[Suite] = [
    Suite("spectral-family", "spectral family laws, E_S(t) inequalities and reconstruction", 200,
          gen_spectral_family, check_spectral_family),
    Suite("meet", "meet_spectral equals the null-space meet", 500, gen_meet, check_meet),
    Suite("identities", "product spectra, complement spectra and ‖PQ‖² = ‖PQP‖", 500,
          gen_identities, check_identities),
    Suite("glb", "‖T − R‖ < 1 characterizes the greatest lower bound", 100, gen_glb, check_glb),
    Suite("separativity", "separativity witness bounds", 200, gen_separativity, check_separativity),
    Suite("equalizers", "equalizers are monotone, keep the meet and obey the chain bounds", 100,
          gen_equalizers, check_equalizers),
    Suite("ee", "spectral family inequality", 300, gen_ee, check_ee),
    Suite("gap", "gap element certificate", 200, gen_gap, check_gap),
    Suite("pullbacks", "order-preserving pullbacks and pregap interpolation", 200, gen_pullbacks, check_pullbacks),
    Suite("pushforward", "spectral bounds pass to quotients", 200, gen_pushforward, check_pushforward),
    Suite("centred", "projections of value one under a state have a norm-one product", 100,
          gen_centred, check_centred),
    Suite("calkin", "block-model counterexamples match their closed forms", 2, gen_calkin, check_calkin,
          fixed_count=True),
]

SUITES_BY_NAME: Dict[str, Suite] = {s.name: s for s in SUITES}
