"""Check suites for the non-metrization commands.

Each runner returns a VerificationReport; domain errors raised while
building a space become failed records instead of propagating.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Optional, Sequence

from .metrize import (HOHLE, FilterBase, Grids, HypothesisError, compute_N0, construct_nu,
                      topology_records)
from .report import CheckRecord, Tally, VerificationReport
from .spaces import (PNSpaceSpec, Vector, check_M1_M2_M3, check_N1, check_N2, check_N3, check_N4,
                     check_serstnev, sample_pairs, sample_triples)
from .tnorm import TNorm, check_tnorm_axioms, hypothesis_records


def gate_record(T: TNorm, variant: str, delta=1) -> CheckRecord:
    """compute_N0 as a report record; a rejected hypothesis is a failure."""
    t = Tally("gate.N0")
    try:
        N0 = compute_N0(T, delta, variant)
    except HypothesisError as err:
        t.bad({"hypothesis": err.hypothesis, "detail": err.detail, "tnorm": T.name})
        t.values = {"variant": variant, "tnorm": T.name}
    else:
        t.ok()
        t.values = {"N0": N0, "variant": variant, "tnorm": T.name}
    return t.record()


def run_tnorm_checks(T: TNorm, grid: Optional[Sequence] = None, hypotheses: bool = True,
                     variant: str = HOHLE, delta=1, config: Optional[dict] = None) -> VerificationReport:
    report = VerificationReport("check-tnorm", dict(config or {}))
    report.extend(check_tnorm_axioms(T, grid))
    if hypotheses:
        report.extend(hypothesis_records(T, Fraction(delta), variant))
        report.add(gate_record(T, variant, delta))
    return report


def run_embedding_verification(spec: PNSpaceSpec, samples: Sequence[Vector], grids: Grids,
                               config: Optional[dict] = None, topology: bool = False) -> VerificationReport:
    """M1-M3, N1-N4, the scaling law and the tau_M splitting identity."""
    report = VerificationReport("embed", dict(config or {}))
    pairs = sample_pairs(samples)
    report.add(check_N1(spec, samples))
    report.add(check_N2(spec, samples))
    report.add(check_N3(spec, pairs))
    report.add(check_N4(spec, samples))
    report.extend(check_M1_M2_M3(spec.pm(), samples, sample_triples(samples, grids.triple_count, grids.seed)))
    report.extend(check_serstnev(spec, samples, expected=True))
    if topology:
        report.extend(topology_records(spec, None, samples, grids))
    return report


def run_metrization_topology(base: FilterBase, T: TNorm, variant: str, samples: Sequence[Vector],
                             grids: Grids, delta=1, config: Optional[dict] = None) -> VerificationReport:
    """Topology-only audit of the constructed space."""
    report = VerificationReport("topology-audit", dict(config or {}))
    gate = gate_record(T, variant, delta)
    report.add(gate)
    if gate.failed:
        return report
    result = construct_nu(base, T, variant, delta)
    spec = PNSpaceSpec.menger(result.nu, T, base.dim, grids.horizon,
                              lambda_grid=grids.lambda_grid, x_grid=grids.x_grid, name=result.nu.name)
    report.extend(topology_records(spec, base, samples, grids,
                                   strong_depth=result.N0 * (base.radii.n_max + 1) + 1))
    return report


def run_embedding_topology(spec: PNSpaceSpec, samples: Sequence[Vector], grids: Grids,
                           config: Optional[dict] = None) -> VerificationReport:
    report = VerificationReport("topology-audit", dict(config or {}))
    report.extend(topology_records(spec, None, samples, grids))
    return report
