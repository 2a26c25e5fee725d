"""Formality witnesses and obstructions.

Formality is never decided outright: a run returns a verified
quasi-isomorphism to cohomology, an obstruction, or "inconclusive".
"""

from __future__ import annotations

from dataclasses import dataclass, field

from ..gca import DEFAULT_BUDGET
from .algebras import SullivanAlgebra
from .cohomology import degree_data, homotopy_ranks
from .massey import massey_search
from .models import bigraded_model, cohomology_algebra, formality_witness_linear
from .morphisms import verify_quasi_iso

FORMAL = "formal"
NOT_FORMAL = "not-formal"
INCONCLUSIVE = "inconclusive"


@dataclass
class FormalityReport:
    verdict: str
    detector: str | None = None
    details: dict = field(default_factory=dict)
    checks: list = field(default_factory=list)   # (name, status, note)


def generator_count_mismatch(alg: SullivanAlgebra, cutoff: int, budget: int = DEFAULT_BUDGET):
    """Compare homotopy ranks of ``alg`` with those of the bigraded model
    of its cohomology (truncated above ``cutoff + 1``).  Returns the first
    degree ``<= cutoff`` where they differ, with both tables, or ``None``."""
    H, _ = cohomology_algebra(alg, cutoff + 1, budget, name="H")
    model, _ = bigraded_model(H, cutoff, budget)
    ours = homotopy_ranks(alg, cutoff)
    theirs = homotopy_ranks(model, cutoff)
    for q in range(cutoff + 1):
        if ours[q] != theirs[q]:
            return q, ours, theirs
    return None


def formality_report(alg: SullivanAlgebra, cutoff: int, budget: int = DEFAULT_BUDGET):
    report = FormalityReport(INCONCLUSIVE)
    if alg.is_linear():
        f = formality_witness_linear(alg, cutoff)
        qi = verify_quasi_iso(f, cutoff, budget)
        report.checks.append(("linear-witness", "pass" if qi else "fail", qi.witness))
        if qi:
            report.verdict, report.detector = FORMAL, "linear-witness"
            report.details["witness"] = {g.name: str(f.value(g.name)) for g in alg.generators}
            return report
    else:
        report.checks.append(("linear-witness", "skipped", "differential is not linear"))

    found = massey_search(alg, cutoff, budget)
    if found is not None:
        (x, y, z), res = found
        report.checks.append(("massey", "fired", f"degree {res.degree}"))
        report.verdict, report.detector = NOT_FORMAL, "massey"
        report.details.update({
            "x": str(x), "y": str(y), "z": str(z),
            "representative": str(res.representative),
            "degree": res.degree,
            "indeterminacy": [str(p) for p in res.indeterminacy],
        })
        return report
    report.checks.append(("massey", "silent", f"no nonzero triple product through degree {cutoff}"))

    if degree_data(alg, 1, budget).rank:
        report.checks.append(("generator-count", "skipped", "H^1 is nonzero"))
        return report
    mismatch = generator_count_mismatch(alg, cutoff, budget)
    if mismatch is not None:
        q, ours, theirs = mismatch
        report.checks.append(("generator-count", "fired", f"degree {q}"))
        report.verdict, report.detector = NOT_FORMAL, "generator-count"
        report.details.update({"degree": q, "homotopy": list(ours), "bigraded": list(theirs)})
        return report
    report.checks.append(("generator-count", "silent", f"ranks agree through degree {cutoff}"))
    return report
