"""
Renderers turning library results into CLI outcomes.

Every outcome carries a JSON-ready ``result`` (polynomials as grammar
strings, rationals as strings), the lines printed in human mode and, for
domain failures, a ``witness`` and a one-line diagnostic.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, List, Optional, Sequence

import numpy as np

from ncplush.freealg import Polynomial, Word
from ncplush.gram import Matrix
from ncplush.ncint import FrobeniusResult, HessianReport, IntegrabilityReport
from ncplush.ncparse import format_word
from ncplush.mateval import PositivityReport
from ncplush.plush import IsometryRelation, PlushResult, RelationResult, decomposition_to_dict


@dataclass
class Outcome:
    result: Any
    lines: List[str] = field(default_factory=list)
    witness: Optional[Dict[str, Any]] = None
    failed: bool = False
    message: Optional[str] = None


def _word(word: Optional[Word]) -> Optional[str]:
    return None if word is None else format_word(word)


def _matrix(matrix: Matrix) -> List[List[str]]:
    return [[str(value) for value in row] for row in matrix]


def _vector(values: Sequence[Fraction]) -> List[str]:
    return [str(value) for value in values]


def polynomial_outcome(p: Polynomial) -> Outcome:
    text = str(p)
    return Outcome(result=text, lines=[text])


def integral_outcome(antiderivative: Polynomial) -> Outcome:
    return polynomial_outcome(antiderivative)


def integrability_outcome(report: IntegrabilityReport) -> Outcome:
    if report.integrable:
        classes = [[_word(word) for word in wed.members] for wed in report.classes]
        lines = [f"integrable: {len(classes)} wed classes"]
        lines.extend("  {" + ", ".join(members) + "}" for members in classes)
        return Outcome(result={"integrable": True, "classes": classes}, lines=lines)
    return integrability_failure(report)


def integrability_failure(report: IntegrabilityReport) -> Outcome:
    witness = {
        "word": _word(report.witness),
        "missing": _word(report.missing),
        "reason": report.reason.value,
    }
    return Outcome(
        result={"integrable": False},
        lines=["not integrable"],
        witness=witness,
        failed=True,
        message=report.describe(),
    )


def frobenius_outcome(result: FrobeniusResult) -> Outcome:
    if result.integrable:
        potential = str(result.potential)
        return Outcome(
            result={"integrable": True, "potential": potential},
            lines=[f"integrable, potential: {potential}"],
        )
    witness: Dict[str, Any] = {"failure": result.failure.value, "indices": list(result.indices)}
    if result.report is not None:
        witness["word"] = _word(result.report.witness)
        witness["missing"] = _word(result.report.missing)
    return Outcome(
        result={"integrable": False},
        lines=["not integrable"],
        witness=witness,
        failed=True,
        message=result.describe(),
    )


def hessian_outcome(report: HessianReport) -> Outcome:
    if report.is_hessian:
        antiderivative = str(report.antiderivative)
        return Outcome(
            result={"is_hessian": True, "antiderivative": antiderivative},
            lines=[f"complex hessian of: {antiderivative}"],
        )
    return Outcome(
        result={"is_hessian": False},
        lines=["not a complex hessian"],
        witness={
            "violation": report.violation.value,
            "word": _word(report.witness),
            "missing": _word(report.missing),
        },
        failed=True,
        message=report.describe(),
    )


def plush_outcome(result: PlushResult) -> Outcome:
    if result.plush:
        data = decomposition_to_dict(result.decomposition)
        lines = ["plush"]
        for key, label in (("hereditary_squares", "f"), ("antihereditary_squares", "k")):
            for j, square in enumerate(data[key], start=1):
                lines.append(f"  {label}{j} = {square['factor']}  (weight {square['weight']})")
        lines.append(f"  F = {data['analytic_part']}")
        lines.append(f"  N_min = {data['n_min']}, M_min = {data['m_min']}")
        return Outcome(result={"plush": True, **data}, lines=lines)

    witness_data = result.witness
    witness: Dict[str, Any] = {"stage": witness_data.stage.value}
    if witness_data.side is not None:
        witness["side"] = witness_data.side.value
    if witness_data.word is not None:
        witness["word"] = _word(witness_data.word)
    if witness_data.vector is not None:
        witness["vector"] = _vector(witness_data.vector)
    if witness_data.gram is not None:
        witness["border"] = [_word(word) for word in witness_data.gram.border]
        witness["gram"] = _matrix(witness_data.gram.matrix)
    return Outcome(
        result={"plush": False},
        lines=["not plush"],
        witness=witness,
        failed=True,
        message=witness_data.describe(),
    )


def matrix_outcome(matrix: np.ndarray) -> Outcome:
    rows = matrix.tolist()
    return Outcome(result=rows, lines=[np.array2string(matrix, precision=6, suppress_small=True)])


def positivity_outcome(report: PositivityReport) -> Outcome:
    result = {
        "samples": report.samples,
        "min_eigenvalue": report.min_eigenvalue,
        "seed": report.seed,
        "tolerance": report.tolerance,
        "positive": report.positive,
    }
    lines = [
        f"samples: {report.samples}, seed: {report.seed}",
        f"minimum eigenvalue: {report.min_eigenvalue:.6g}",
    ]
    if report.positive:
        lines.append("no negative eigenvalue found")
        return Outcome(result=result, lines=lines)
    found = report.witness
    witness = {
        "trial": found.trial,
        "n": found.n,
        "eigenvalue": found.eigenvalue,
        "X": found.X.to_lists(),
        "H": found.H.to_lists() if found.H is not None else None,
    }
    lines.append(f"negative eigenvalue {found.eigenvalue:.6g} at trial {found.trial} (n={found.n})")
    return Outcome(
        result=result,
        lines=lines,
        witness=witness,
        failed=True,
        message=f"not matrix positive: eigenvalue {found.eigenvalue:.6g} at trial {found.trial}",
    )


def _isometry(relation: IsometryRelation) -> Dict[str, Any]:
    return {
        "weighted": _matrix(relation.weighted),
        "constants": _vector(relation.constants),
        "unweighted": _matrix(relation.unweighted) if relation.unweighted is not None else None,
        "rational_unweighted": relation.rational_unweighted,
    }


def relation_outcome(relation: RelationResult) -> Outcome:
    hereditary, antihereditary, reason = relation.hereditary, relation.antihereditary, relation.reason
    if not relation.related:
        return Outcome(
            result={"related": False},
            lines=["unrelated"],
            witness={"reason": reason},
            failed=True,
            message=reason,
        )
    result = {
        "related": True,
        "hereditary": _isometry(hereditary),
        "antihereditary": _isometry(antihereditary),
    }
    lines = ["related"]
    for name, side in (("hereditary", hereditary), ("antihereditary", antihereditary)):
        lines.append(f"  {name}: U = {_matrix(side.weighted)}, c = {_vector(side.constants)}")
        if not side.rational_unweighted and side.weighted:
            lines.append(f"  {name}: unweighted isometry is irrational")
    return Outcome(result=result, lines=lines)
