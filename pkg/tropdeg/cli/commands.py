"""
Command Dispatch

``run(command, model, options)`` evaluates one command on a parsed model and
returns a :class:`Report`. Every command delegates to the library:

- classes: class counts on V per k
- hilbert: Hilbert-function sweep with exactness flags
- degree: degree bounds from the sweep (and the star recursion for stars)
- star: B, C, D and the lattice-point recursion per k, optional search
- verify: exact check of a serialized certificate (refuted -> exit 1)
- refine: refined certificate with the Newton-lift checks
- oracle: main path against brute-force enumeration on random matrices and
  on the model itself
"""

from __future__ import annotations

import logging
import random
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass
from typing import Any, Callable, Dict, List, Mapping, Optional

from .. import __version__
from ..errors import BudgetExceededError, PreconditionError
from ..geometry.prevariety import Prevariety
from ..hilbert.classes import count_classes
from ..hilbert.functions import hilbert_sweep
from ..hilbert.grids import MonomialGrid
from ..independence.certificates import Certificate, verify_certificate
from ..independence.matching import min_matching, tropical_rank
from ..independence.oracle import brute_matching, brute_max_independent, brute_rank, random_matrix
from ..independence.search import class_representatives, search_max_independent, witness_candidates
from ..independence.serialization import parse_certificate, serialize_certificate
from ..degree.bounds import degree_bounds
from ..degree.newton_lift import build_newton_lift, lower_hull_edge_check
from ..degree.refinement import run_refinement
from ..degree.star import star_constant, star_sweep
from ..settings import get_settings
from .model import Model
from .report import Report, build_metadata

logger = logging.getLogger(__name__)

COMMANDS = ("classes", "hilbert", "degree", "star", "verify", "refine", "oracle")


@dataclass(frozen=True)
class RunOptions:
    """Effective options after merging model parameters with CLI flags."""

    k_min: int = 1
    k_max: int = 4
    shape: str = "simplex"
    r: int = 2
    budget: Optional[int] = None
    seed: int = 0
    workers: int = 1
    search_k_max: Optional[int] = None
    trials: int = 50
    certificate: Optional[Mapping[str, Any]] = None

    @property
    def ks(self) -> List[int]:
        return list(range(self.k_min, self.k_max + 1))

    def recorded(self) -> Dict[str, Any]:
        """Options that determine the output (worker count and payloads excluded)."""

        values = asdict(self)
        values.pop("workers")
        values.pop("certificate")
        return values


def _classes(model: Model, options: RunOptions) -> Report:
    V = model.prevariety()

    def row(k: int) -> Dict[str, Any]:
        grid = MonomialGrid(V.n, k, options.shape)
        monomials = grid.monomials()
        piece_sum = sum(count_classes(piece.directions, grid).count for piece in V.pieces)
        return {"k": k, "shape": options.shape, "classes": len(class_representatives(monomials, V)), "piece_sum": piece_sum}

    with ThreadPoolExecutor(max_workers=max(1, options.workers)) as executor:
        rows = tuple(executor.map(row, options.ks))
    return Report("classes", ("k", "shape", "classes", "piece_sum"), rows)


def _hilbert(model: Model, options: RunOptions) -> Report:
    V = model.prevariety()
    records = hilbert_sweep(V, options.shape, options.ks, budget=options.budget, workers=options.workers)
    rows = []
    for record in records:
        grid = MonomialGrid(V.n, record.k, options.shape)
        rows.append(
            {
                "k": record.k,
                "shape": record.shape,
                "lower": record.lower,
                "upper": record.upper,
                "exact": record.exact,
                "classes": len(class_representatives(grid.monomials(), V)),
                "method": record.method,
            }
        )
    return Report("hilbert", ("k", "shape", "lower", "upper", "exact", "classes", "method"), tuple(rows))


def _degree(model: Model, options: RunOptions) -> Report:
    V = model.prevariety()
    bounds = degree_bounds(
        V,
        shape=options.shape,
        kmax=options.k_max,
        budget=options.budget,
        workers=options.workers,
        star=model.to_star(),
    )
    row = {
        "kmax": options.k_max,
        "shape": options.shape,
        "branches": V.branch_count,
        "lower": bounds.lower,
        "upper": bounds.upper,
        "evidence": " | ".join(bounds.evidence),
    }
    return Report("degree", tuple(row), (row,))


def _star(model: Model, options: RunOptions) -> Report:
    S = model.to_star()
    if S is None:
        raise PreconditionError("the star command needs a model with a 'star' geometry")
    C = star_constant(S)
    ks = [k for k in options.ks if k > C]
    if not ks:
        raise PreconditionError(f"no k in [{options.k_min}, {options.k_max}] above the construction threshold C={C}")
    if len(ks) < len(options.ks):
        logger.info("Skipping k <= C=%d", C)
    sweep = star_sweep(S, ks, search_k_max=options.search_k_max, budget=options.budget, workers=options.workers)
    rows = tuple(
        {
            "k": row.k,
            "B": row.B,
            "C": row.C,
            "D": row.D,
            "W": row.W,
            "kB-D": row.lower_target,
            "kB+1": row.upper,
            "search": row.search_value,
            "verified": row.verified,
        }
        for row in sweep.rows
    )
    columns = ("k", "B", "C", "D", "W", "kB-D", "kB+1", "search", "verified")
    return Report("star", columns, rows, {"slope_realized": str(sweep.slope_realized).lower()})


def _certificate(model: Model, options: RunOptions, V: Prevariety) -> Certificate:
    if options.certificate is not None:
        return parse_certificate(options.certificate, V)
    return model.to_certificate(V)


def _verify(model: Model, options: RunOptions) -> Report:
    V = model.prevariety()
    cert = _certificate(model, options, V)
    result = verify_certificate(cert, V)
    row = {"size": cert.size, "verified": result.ok, "diagnostic": result.diagnostic or None}
    return Report("verify", ("size", "verified", "diagnostic"), (row,), refuted=not result.ok, diagnostic=result.diagnostic or None)


def _refine(model: Model, options: RunOptions) -> Report:
    V = model.prevariety()
    cert = _certificate(model, options, V)
    lift = build_newton_lift(cert, V)
    checks = lower_hull_edge_check(lift)
    refined, params = run_refinement(cert, V, options.r)
    verified = verify_certificate(refined, V)
    row = {
        "r": options.r,
        "branches": V.branch_count,
        "size": cert.size,
        "refined": refined.size,
        "target": (cert.size - V.branch_count) * options.r,
        "components": lift.components,
        "edges": len(lift.edges),
        "hull_supported": all(c.supported for c in checks),
        "perturbed": lift.perturbed,
        "epsilon": params.epsilon if params is not None else None,
        "attempts": params.attempts if params is not None else 0,
        "verified": verified.ok,
    }
    return Report(
        "refine",
        tuple(row),
        (row,),
        refuted=not verified.ok,
        diagnostic=verified.diagnostic or None,
        attachment=serialize_certificate(refined),
    )


def _oracle_matrices(rng: random.Random, trials: int) -> List[Dict[str, Any]]:
    matching_agree = rank_agree = rank_total = 0
    first_mismatch: Optional[int] = None
    for trial in range(trials):
        size = rng.randint(1, 6)
        A = random_matrix(rng, size)
        main = min_matching(A)
        value, count = brute_matching(A)
        if main.value == value and main.unique == (count == 1):
            matching_agree += 1
        elif first_mismatch is None:
            first_mismatch = trial
        if size <= 4:
            rank_total += 1
            rank_agree += tropical_rank(A) == brute_rank(A)
    return [
        {
            "check": "matching",
            "k": None,
            "instances": trials,
            "agreements": matching_agree,
            "agree": matching_agree == trials,
            "note": f"first mismatch at trial {first_mismatch}" if first_mismatch is not None else None,
        },
        {
            "check": "rank",
            "k": None,
            "instances": rank_total,
            "agreements": rank_agree,
            "agree": rank_agree == rank_total,
            "note": None,
        },
    ]


def _oracle_search(V: Prevariety, options: RunOptions, k: int) -> Dict[str, Any]:
    depth = get_settings().budgets.candidate_depth
    grid = MonomialGrid(V.n, k, options.shape)
    monomials = grid.monomials()
    result = search_max_independent(monomials, V, budget=options.budget, candidate_depth=depth)
    reps = class_representatives(monomials, V)
    points = witness_candidates(reps, V, depth)
    row: Dict[str, Any] = {"check": "search", "k": k, "instances": 1, "agreements": 0, "agree": None, "note": None}
    try:
        brute = brute_max_independent(reps, points, limit=result.upper)
    except BudgetExceededError as exc:
        row["note"] = f"skipped: {exc}"
        return row
    agree = result.size == brute if not result.lower_bound_only else result.size <= brute
    row.update(agreements=int(agree), agree=agree, note=f"search {result.size}, brute force {brute}")
    return row


def _oracle(model: Model, options: RunOptions) -> Report:
    rng = random.Random(options.seed)
    rows = _oracle_matrices(rng, options.trials)
    V = model.prevariety()
    rows.extend(_oracle_search(V, options, k) for k in options.ks)
    refuted = any(row["agree"] is False for row in rows)
    columns = ("check", "k", "instances", "agreements", "agree", "note")
    return Report("oracle", columns, tuple(rows), refuted=refuted, diagnostic="oracle disagreement" if refuted else None)


_DISPATCH: Dict[str, Callable[[Model, RunOptions], Report]] = {
    "classes": _classes,
    "hilbert": _hilbert,
    "degree": _degree,
    "star": _star,
    "verify": _verify,
    "refine": _refine,
    "oracle": _oracle,
}


def run(command: str, model: Model, options: RunOptions, digest: str = "") -> Report:
    if command not in _DISPATCH:
        raise PreconditionError(f"unknown command {command!r}; expected one of {', '.join(COMMANDS)}")
    logger.info("Running %s on a %s model (k=%d..%d)", command, model.geometry, options.k_min, options.k_max)
    report = _DISPATCH[command](model, options)
    metadata = build_metadata(command, digest, options.recorded(), __version__, tuple(report.metadata.items()))
    return report.with_metadata(metadata)


def merge_options(model: Model, overrides: Mapping[str, Any]) -> RunOptions:
    """Model parameters first, explicit (non-None) overrides on top."""

    values: Dict[str, Any] = {
        "k_min": model.parameters.k_min,
        "k_max": model.parameters.k_max,
        "shape": model.grid or get_settings().runtime.default_shape,
        "r": model.parameters.r,
        "budget": model.parameters.budget,
        "seed": model.parameters.seed,
        "workers": get_settings().runtime.workers,
    }
    values.update({key: value for key, value in overrides.items() if value is not None})
    if values["k_min"] > values["k_max"]:
        raise PreconditionError(f"empty k range [{values['k_min']}, {values['k_max']}]")
    return RunOptions(**values)
