"""
Matrix substitution and numerical positivity sampling.
"""

import logging
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

import numpy as np

from .config import (
    DEFAULT_ENTRY_BOUND,
    DEFAULT_SEED,
    DEFAULT_SIZES,
    DEFAULT_TOLERANCE,
    DEFAULT_TRIALS,
    SYMMETRY_TOLERANCE,
)
from .errors import EvaluationError, PreconditionError
from .freealg import Family, Letter, Polynomial
from .plush import PlushDecomposition

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class MatrixTuple:
    """g real square matrices of a common size n."""

    matrices: Tuple[np.ndarray, ...]

    def __post_init__(self) -> None:
        matrices = tuple(np.asarray(m, dtype=float) for m in self.matrices)
        if not matrices:
            raise EvaluationError("a matrix tuple needs at least one matrix")
        n = matrices[0].shape[0] if matrices[0].ndim == 2 else -1
        for m in matrices:
            if m.ndim != 2 or m.shape != (n, n):
                raise EvaluationError(
                    f"all matrices must be square of one size, got shapes {[x.shape for x in matrices]}"
                )
        object.__setattr__(self, "matrices", matrices)

    @property
    def n(self) -> int:
        return self.matrices[0].shape[0]

    @property
    def g(self) -> int:
        return len(self.matrices)

    def __getitem__(self, index: int) -> np.ndarray:
        return self.matrices[index]

    @classmethod
    def from_lists(cls, data: Sequence[Sequence[Sequence[float]]]) -> "MatrixTuple":
        return cls(tuple(np.array(m, dtype=float) for m in data))

    def to_lists(self) -> List[List[List[float]]]:
        return [m.tolist() for m in self.matrices]


def random_tuple(rng: np.random.Generator, g: int, n: int, bound: float = DEFAULT_ENTRY_BOUND) -> MatrixTuple:
    return MatrixTuple(tuple(rng.uniform(-bound, bound, size=(n, n)) for _ in range(g)))


def _letter_matrix(letter: Letter, X: MatrixTuple, H: Optional[MatrixTuple]) -> np.ndarray:
    source = X if letter.family is Family.X else H
    matrix = source[letter.index - 1]
    return matrix.T if letter.transposed else matrix


def evaluate(p: Polynomial, X: MatrixTuple, H: Optional[MatrixTuple] = None) -> np.ndarray:
    """p(X, X^T)[H, H^T]; constants map to multiples of the identity."""
    if X.g != p.g:
        raise EvaluationError(f"polynomial has g={p.g} but {X.g} matrices were given")
    if p.h_degree() > 0:
        if H is None:
            raise EvaluationError("polynomial contains direction letters but no H tuple was given")
        if H.g != p.g or H.n != X.n:
            raise EvaluationError(
                f"H tuple has {H.g} matrices of size {H.n}, expected {p.g} of size {X.n}"
            )
    identity = np.eye(X.n)
    result = np.zeros((X.n, X.n))
    for word, coeff in p.items():
        product = identity
        for letter in word:
            product = product @ _letter_matrix(letter, X, H)
        result = result + float(coeff) * product
    return result


def min_eigenvalue(matrix: np.ndarray) -> float:
    symmetric = (matrix + matrix.T) / 2
    return float(np.linalg.eigvalsh(symmetric).min())


@dataclass(frozen=True, eq=False)
class PositivityWitness:
    X: MatrixTuple
    H: Optional[MatrixTuple]
    eigenvalue: float
    trial: int
    n: int


@dataclass(frozen=True)
class PositivityReport:
    samples: int
    min_eigenvalue: float
    witness: Optional[PositivityWitness]
    seed: int
    tolerance: float

    @property
    def positive(self) -> bool:
        return self.witness is None


def sample_positivity(
    q: Polynomial,
    sizes: Sequence[int] = DEFAULT_SIZES,
    trials: int = DEFAULT_TRIALS,
    seed: int = DEFAULT_SEED,
    tolerance: float = DEFAULT_TOLERANCE,
    bound: float = DEFAULT_ENTRY_BOUND,
) -> PositivityReport:
    """Search random matrix tuples for a negative eigenvalue of q.

    Trial t evaluates at size ``sizes[t % len(sizes)]``.
    """
    if not q.is_symmetric():
        raise PreconditionError("positivity sampling needs a symmetric polynomial")
    if q.h_degree() not in (0, 2):
        raise PreconditionError(f"expected h-degree 0 or 2, got {q.h_degree()}")
    if trials < 1 or not sizes or any(n < 1 for n in sizes):
        raise PreconditionError("sampling needs at least one trial and positive sizes")

    rng = np.random.default_rng(seed)
    needs_h = q.h_degree() > 0
    lowest = np.inf
    witness: Optional[PositivityWitness] = None
    for trial in range(trials):
        n = sizes[trial % len(sizes)]
        X = random_tuple(rng, q.g, n, bound)
        H = random_tuple(rng, q.g, n, bound) if needs_h else None
        value = evaluate(q, X, H)
        asymmetry = float(np.max(np.abs(value - value.T))) if n else 0.0
        if asymmetry > SYMMETRY_TOLERANCE * max(1.0, float(np.max(np.abs(value)))):
            logger.warning("trial %d: evaluation is asymmetric by %.3g", trial, asymmetry)
        eigenvalue = min_eigenvalue(value)
        lowest = min(lowest, eigenvalue)
        if witness is None and eigenvalue < -tolerance:
            witness = PositivityWitness(X, H, eigenvalue, trial, n)
            logger.debug("negative eigenvalue %.6g at trial %d (n=%d)", eigenvalue, trial, n)

    logger.info(
        "sampled %d tuples, minimum eigenvalue %.6g%s",
        trials,
        lowest,
        "" if witness is None else f", first witness at trial {witness.trial}",
    )
    return PositivityReport(trials, float(lowest), witness, seed, tolerance)


def eval_decomposition(decomposition: PlushDecomposition, X: MatrixTuple) -> np.ndarray:
    """Evaluate sum (s f)^T (s f) + sum (s k)(s k)^T + F + F^T with s = sqrt(weight)."""
    unweighted = decomposition.unweighted()
    result = np.zeros((X.n, X.n))
    for scale, f in unweighted["hereditary"]:
        value = scale * evaluate(f, X)
        result = result + value.T @ value
    for scale, k in unweighted["antihereditary"]:
        value = scale * evaluate(k, X)
        result = result + value @ value.T
    if decomposition.analytic_part is not None:
        analytic = evaluate(decomposition.analytic_part, X)
        result = result + analytic + analytic.T
    return result
