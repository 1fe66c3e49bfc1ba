"""
Handlers for toolkit subcommands.

Each handler takes a RunConfig and returns a HandlerResult; the payload is
rendered by the runner and `violated` names an invariant that failed
(exit code 1).
"""

import asyncio
import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Callable, Dict, Optional

from config import Config
from database.database import close_db, init_db
from modules.algebra import apply, interpolate_pregap, pullback_projection, sandwich_pullback
from modules.calkin import (
    closed_sum_diagnostic,
    essential_leq,
    essential_norm_estimate,
    essential_spectrum_estimate,
    identity_like,
    tail_sup_excluding_one,
)
from modules.errors import ArgumentError
from modules.projorder import (
    glb_criterion,
    glb_norm_check,
    join,
    join_span,
    meet_nullspace,
    meet_spectral,
    separativity_witness,
    witness_report,
)
from modules.projorder.separativity import separativity_level
from modules.sequences import (
    ScheduleConfig,
    chain_bound_report,
    decreasing_equalizer_recursive,
    decreasing_equalizer_spectral,
    ee_inequality_check,
    gap_element,
    increasing_equalizer,
    spectral_sandwich_sequence,
)
from modules.spectra import ToleranceConfig, frobenius_distance
from services.run_history_service import RunHistoryService
from services.serialization_service import SerializationService as ser
from services.verification_service import VerificationService
from .run_config import RunConfig

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class HandlerResult:
    payload: Any
    violated: Optional[str] = None


def _document(rc: RunConfig) -> Any:
    if not rc.input_path:
        raise ArgumentError(f"{rc.subcommand} needs --in")
    return ser.load_file(rc.input_path)


def _family(rc: RunConfig):
    return ser.projection_list_from_json(_document(rc), rc.tolerances)


def _pair(rc: RunConfig):
    ps = _family(rc)
    if len(ps) != 2:
        raise ArgumentError(f"{rc.subcommand} needs exactly two projections, got {len(ps)}")
    return ps


# ----- projection order ----------------------------------------------

def handle_meet(rc: RunConfig) -> HandlerResult:
    ps = _family(rc)
    meet = meet_spectral(ps, rc.tolerances)
    return HandlerResult({
        "meet": meet,
        "rank": meet.rank,
        "oracle_distance": frobenius_distance(meet, meet_nullspace(ps, rc.tolerances)),
    })


def handle_join(rc: RunConfig) -> HandlerResult:
    ps = _family(rc)
    result = join(ps, rc.tolerances)
    return HandlerResult({
        "join": result,
        "rank": result.rank,
        "oracle_distance": frobenius_distance(result, join_span(ps, rc.tolerances)),
    })


def handle_glb_check(rc: RunConfig) -> HandlerResult:
    return HandlerResult(glb_criterion(_family(rc), rc.tolerances))


def handle_norm_check(rc: RunConfig) -> HandlerResult:
    doc = _document(rc)
    if not isinstance(doc, dict) or "R" not in doc:
        raise ArgumentError("norm-check input needs 'projections' and 'R'")
    ps = ser.projection_list_from_json(doc, rc.tolerances)
    R = ser.projection_from_json(doc["R"], rc.tolerances, "R")
    return HandlerResult(glb_norm_check(ps, R, rc.tolerances))


def handle_sep_witness(rc: RunConfig) -> HandlerResult:
    P, Q = _pair(rc)
    R = separativity_witness(P, Q, rc.tolerances)
    report = witness_report(P, Q, R, rc.tolerances)
    return HandlerResult(
        {"witness": R, "level": separativity_level(P, Q), "report": report, "holds": report.holds},
        violated=None if report.holds else "separativity witness bounds",
    )


# ----- sequences -----------------------------------------------------------

def handle_gap(rc: RunConfig) -> HandlerResult:
    P, Q = _pair(rc)
    cert = gap_element(P, Q, rc.tolerances)
    holds = cert.holds(rc.tolerances)
    return HandlerResult({"certificate": cert, "holds": holds},
                         violated=None if holds else "gap element certificate")


def handle_decreasing(rc: RunConfig) -> HandlerResult:
    ps = _family(rc)
    cfg = rc.tolerances
    payload: Dict[str, Any] = {"method": rc.method}
    if rc.method == "spectral":
        sched = ScheduleConfig(rc.schedule_depth)
        qs = decreasing_equalizer_spectral(ps, sched, cfg)
        raw = spectral_sandwich_sequence(ps, sched, cfg, length=len(qs))
        payload["chain_bounds"] = chain_bound_report(ps, raw)
    else:
        qs = decreasing_equalizer_recursive(ps, cfg)
    payload["sequence"] = qs
    payload["ranks"] = [q.rank for q in qs]
    payload["meet_distance"] = frobenius_distance(meet_nullspace(qs, cfg), meet_nullspace(ps, cfg))
    violated = "equalizer keeps the meet" if payload["meet_distance"] > cfg.order_tol else None
    return HandlerResult(payload, violated)


def handle_increasing(rc: RunConfig) -> HandlerResult:
    ps = _family(rc)
    qs = increasing_equalizer(ps, rc.tolerances)
    distance = frobenius_distance(join_span(qs, rc.tolerances), join_span(ps, rc.tolerances))
    return HandlerResult(
        {"sequence": qs, "ranks": [q.rank for q in qs], "join_distance": distance},
        violated="equalizer keeps the join" if distance > rc.tolerances.order_tol else None,
    )


def handle_ee_check(rc: RunConfig) -> HandlerResult:
    doc = _document(rc)
    for key in ("S", "P", "s", "t"):
        if not isinstance(doc, dict) or key not in doc:
            raise ArgumentError(f"ee-check input needs '{key}'")
    S = ser.hermitian_from_json(doc["S"], rc.tolerances, "S")
    P = ser.projection_from_json(doc["P"], rc.tolerances, "P")
    report = ee_inequality_check(S, P, float(doc["s"]), float(doc["t"]), rc.tolerances)
    return HandlerResult(report, violated=None if report.holds else "spectral family inequality")


# ----- block algebras --------------------------------------------------------

def handle_pullback(rc: RunConfig) -> HandlerResult:
    doc = _document(rc)
    if not isinstance(doc, dict) or "morphism" not in doc:
        raise ArgumentError("pullback input needs 'morphism', 'q' and 'P'")
    m = ser.morphism_from_json(doc["morphism"])
    q = ser.element_from_json(doc.get("q"), m.target, "q")
    P = ser.element_from_json(doc.get("P"), m.source, "P")
    if doc.get("R") is not None:
        R = ser.element_from_json(doc["R"], m.source, "R")
        Q = sandwich_pullback(m, q, R, P, rc.tolerances)
    else:
        Q = pullback_projection(m, q, P, rc.tolerances)
    return HandlerResult({"Q": Q, "image": apply(m, Q)})


def handle_interpolate(rc: RunConfig) -> HandlerResult:
    doc = _document(rc)
    if not isinstance(doc, dict) or "morphism" not in doc:
        raise ArgumentError("interpolate input needs 'morphism', 'ps' and 'qs'")
    m = ser.morphism_from_json(doc["morphism"])
    ps = [ser.element_from_json(x, m.target, f"ps[{i}]") for i, x in enumerate(doc.get("ps", []))]
    qs = [ser.element_from_json(x, m.target, f"qs[{i}]") for i, x in enumerate(doc.get("qs", []))]
    X = interpolate_pregap(m, ps, qs, rc.tolerances)
    return HandlerResult({"interpolant": X, "image": apply(m, X)})


# ----- calkin model --------------------------------------------------------

def handle_calkin_demo(rc: RunConfig) -> HandlerResult:
    if rc.input_path:
        doc = _document(rc)
        P, Q = ser.family_from_json(doc, base_dir=str(Path(rc.input_path).parent))
        name = doc["family"]
    else:
        if not rc.family:
            raise ArgumentError("calkin-demo needs --family or --in")
        P, Q = ser.build_family(rc.family, rc.N)
        name = rc.family
    tol_ess, radius = Config.TOL_ESS, Config.ESS_CLUSTER
    return HandlerResult({
        "family": name,
        "N": P.N,
        "essential_norm_P_minus_Q": essential_norm_estimate(P - Q),
        "pi_P_leq_pi_Q": essential_leq(P, Q, tol_ess),
        "pi_Q_leq_pi_P": essential_leq(Q, P, tol_ess),
        "essential_spectrum_PQP": essential_spectrum_estimate(P @ Q @ P, radius),
        "tail_sup_excluding_one": tail_sup_excluding_one(P @ Q, rc.tolerances.eig_cluster),
        "closed_sum": closed_sum_diagnostic([P, Q], identity_like(P), tol_ess),
    })


# ----- verification and history -------------------------------------------

async def _verify(rc: RunConfig) -> HandlerResult:
    report = await VerificationService.verify(
        seed=rc.seed,
        cfg=rc.tolerances,
        max_dim=rc.max_dim,
        count=rc.count,
        suites=rc.suites,
        workers=rc.workers,
    )
    if rc.db_url:
        await init_db(rc.db_url)
        try:
            await RunHistoryService.record_run(report, rc.count)
        finally:
            await close_db()
    failed = [s.name for s in report.suites if not s.passed]
    return HandlerResult(VerificationService.report_view(report),
                         violated=", ".join(failed) if failed else None)


def handle_verify(rc: RunConfig) -> HandlerResult:
    return asyncio.run(_verify(rc))


async def _history(rc: RunConfig) -> HandlerResult:
    await init_db(rc.db_url)
    try:
        return HandlerResult({"runs": await RunHistoryService.list_runs(rc.limit)})
    finally:
        await close_db()


def handle_history(rc: RunConfig) -> HandlerResult:
    return asyncio.run(_history(rc))


async def _replay(rc: RunConfig) -> HandlerResult:
    await init_db(rc.db_url)
    try:
        stored = await RunHistoryService.get_counterexample(rc.record_id)
    finally:
        await close_db()
    if stored is None:
        raise ArgumentError(f"no stored counterexample with id {rc.record_id}")
    cfg = ToleranceConfig(**stored["tolerances"])
    result = VerificationService.replay(stored["suite"], stored["instance"], cfg)
    reproduced = not result.ok
    return HandlerResult(
        {"id": rc.record_id, "suite": stored["suite"], "reproduced": reproduced,
         "detail": result.detail, "violation": result.violation, "instance": stored["instance"]},
        violated=result.detail if reproduced else None,
    )


def handle_replay(rc: RunConfig) -> HandlerResult:
    return asyncio.run(_replay(rc))


HANDLERS: Dict[str, Callable[[RunConfig], HandlerResult]] = {
    "meet": handle_meet,
    "join": handle_join,
    "glb-check": handle_glb_check,
    "norm-check": handle_norm_check,
    "sep-witness": handle_sep_witness,
    "gap": handle_gap,
    "decreasing": handle_decreasing,
    "increasing": handle_increasing,
    "ee-check": handle_ee_check,
    "pullback": handle_pullback,
    "interpolate": handle_interpolate,
    "calkin-demo": handle_calkin_demo,
    "verify": handle_verify,
    "history": handle_history,
    "replay": handle_replay,
}
