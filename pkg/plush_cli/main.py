import json
import re
import time
from pathlib import Path
from typing import Callable, List, Optional

import typer
from rich.markup import escape
from typing_extensions import Annotated

from ncplush.errors import NCPlushError, NotIntegrableError
from ncplush.mateval import MatrixTuple, evaluate, sample_positivity
from ncplush.nccalc import (
    complex_hessian,
    derivative,
    full_hessian,
    lth_derivative,
    partial_x,
    partial_xT,
)
from ncplush.ncint import (
    FrobeniusSystem,
    frobenius_check,
    integrate,
    integrate_in,
    is_complex_hessian,
    is_integrable,
    is_integrable_in,
)
from ncplush.ncparse import infer_context, parse, parse_corpus
from ncplush.plush import classify_plush, decomposition_from_dict, relate_representations

from .config import (
    CORPUS_COMMENT,
    DEFAULT_ENTRY_BOUND,
    DEFAULT_SEED,
    DEFAULT_SIZES_OPTION,
    DEFAULT_TOLERANCE,
    DEFAULT_TRIALS,
    EXIT_DOMAIN_FAILURE,
    EXIT_OK,
    EXIT_USAGE,
    JSON_INDENT,
)
from .formatting import (
    Outcome,
    frobenius_outcome,
    hessian_outcome,
    integrability_failure,
    integrability_outcome,
    integral_outcome,
    matrix_outcome,
    plush_outcome,
    polynomial_outcome,
    positivity_outcome,
    relation_outcome,
)
from .utils import configure_logging, console, err_console


# --- Typer Application ---
app = typer.Typer(
    help="Exact nc differentiation, integration and plush classification.",
    add_completion=False,
)

# --- Shared Options ---
ExpressionArg = Annotated[
    Optional[str],
    typer.Argument(help="Polynomial in the x/h grammar, e.g. \"x1'^2*x1^2\"."),
]
VarsOpt = Annotated[
    Optional[int],
    typer.Option("--vars", "-g", min=1, help="Variable count g. Default: largest index used."),
]
JsonOpt = Annotated[
    bool,
    typer.Option("--json", help="Emit one JSON document per input on stdout."),
]
CorpusOpt = Annotated[
    Optional[Path],
    typer.Option(
        "--corpus",
        exists=True,
        dir_okay=False,
        help="Run every expression of a corpus file (one per line, '#' comments).",
    ),
]


@app.callback()
def callback(
    verbose: Annotated[
        bool,
        typer.Option("--verbose", "-v", help="Log pipeline details to stderr."),
    ] = False,
):
    configure_logging(verbose)


# --- Execution ---

def _emit(command: str, text: str, outcome: Optional[Outcome], error: Optional[str], elapsed_ms: float, as_json: bool, line: Optional[int]) -> None:
    if as_json:
        document = {"command": command, "input": text}
        if line is not None:
            document["line"] = line
        if error is not None:
            document["error"] = error
        else:
            document["result"] = outcome.result
            if outcome.witness is not None:
                document["witness"] = outcome.witness
        document["timing_ms"] = round(elapsed_ms, 3)
        typer.echo(json.dumps(document, indent=JSON_INDENT))
        return

    prefix = f"line {line}: " if line is not None else ""
    if error is not None:
        err_console.print(f"[bold red]{escape(prefix)}Error:[/bold red] {escape(error)}")
        return
    for text_line in outcome.lines:
        console.print(f"{prefix}{text_line}", markup=False)
    if outcome.failed and outcome.message:
        err_console.print(f"[bold red]{escape(prefix)}{escape(outcome.message)}[/bold red]")


def _run_one(command: str, text: str, compute: Callable[[str], Outcome], as_json: bool, line: Optional[int]) -> int:
    start = time.perf_counter()
    outcome, error = None, None
    try:
        outcome = compute(text)
        status = EXIT_DOMAIN_FAILURE if outcome.failed else EXIT_OK
    except NCPlushError as e:
        error, status = str(e), EXIT_USAGE
    except (OSError, ValueError, KeyError) as e:
        error, status = f"{type(e).__name__}: {e}", EXIT_USAGE
    elapsed_ms = (time.perf_counter() - start) * 1000
    _emit(command, text, outcome, error, elapsed_ms, as_json, line)
    return status


def _execute(command: str, expression: Optional[str], corpus: Optional[Path], as_json: bool, compute: Callable[[str], Outcome]) -> None:
    if corpus is not None:
        inputs = list(parse_corpus(corpus.read_text(encoding="utf-8").splitlines(), CORPUS_COMMENT))
    elif expression is not None:
        inputs = [(None, expression)]
    else:
        err_console.print("[bold red]Error:[/bold red] give an expression or --corpus FILE.")
        raise typer.Exit(code=EXIT_USAGE)

    status = EXIT_OK
    for line, text in inputs:
        try:
            status = max(status, _run_one(command, text, compute, as_json, line))
        except Exception as e:
            err_console.print(f"[bold red]An unexpected error occurred:[/bold red] {escape(str(e))}")
            status = max(status, EXIT_DOMAIN_FAILURE)
    if status != EXIT_OK:
        raise typer.Exit(code=status)


_WRT_RE = re.compile(r"^\s*x(\d+)\s*('|\^T)?\s*$")


# --- Commands ---

@app.command()
def derive(
    expression: ExpressionArg = None,
    order: Annotated[
        Optional[int],
        typer.Option("--order", "-l", min=1, help="Return the l-th derivative instead of the first."),
    ] = None,
    g: VarsOpt = None,
    as_json: JsonOpt = False,
    corpus: CorpusOpt = None,
):
    """First derivative p'(x)[h], or the l-th derivative with --order."""

    def compute(text: str) -> Outcome:
        p = parse(text, g)
        return polynomial_outcome(derivative(p) if order is None else lth_derivative(p, order))

    _execute("derive", expression, corpus, as_json, compute)


@app.command()
def partial(
    expression: ExpressionArg = None,
    wrt: Annotated[
        str,
        typer.Option("--wrt", help="Variable to differentiate in: x2 for p_x2[h2], x2' for p_x2'[h2']."),
    ] = "x1",
    g: VarsOpt = None,
    as_json: JsonOpt = False,
    corpus: CorpusOpt = None,
):
    """Partial directional derivative in one variable."""
    match = _WRT_RE.match(wrt)
    if match is None:
        err_console.print(f"[bold red]Invalid --wrt:[/bold red] '{escape(wrt)}'. Use x<j> or x<j>'.")
        raise typer.Exit(code=EXIT_USAGE)
    index, transposed = int(match.group(1)), match.group(2) is not None

    def compute(text: str) -> Outcome:
        p = parse(text, g if g is not None else max(index, infer_context(text)))
        return polynomial_outcome(partial_xT(p, index) if transposed else partial_x(p, index))

    _execute("partial", expression, corpus, as_json, compute)


@app.command()
def hessian(
    expression: ExpressionArg = None,
    g: VarsOpt = None,
    as_json: JsonOpt = False,
    corpus: CorpusOpt = None,
):
    """Full second derivative p''(x)[h]."""
    _execute("hessian", expression, corpus, as_json, lambda text: polynomial_outcome(full_hessian(parse(text, g))))


@app.command("complex-hessian")
def complex_hessian_command(
    expression: ExpressionArg = None,
    x_first: Annotated[
        bool,
        typer.Option("--x-first", help="Differentiate in x before x'."),
    ] = False,
    g: VarsOpt = None,
    as_json: JsonOpt = False,
    corpus: CorpusOpt = None,
):
    """NC complex hessian (p_x'[h'])_x[h]."""
    order = "x-first" if x_first else "xT-first"
    _execute(
        "complex-hessian",
        expression,
        corpus,
        as_json,
        lambda text: polynomial_outcome(complex_hessian(parse(text, g), order=order)),
    )


@app.command("integrate")
def integrate_command(
    expression: ExpressionArg = None,
    var: Annotated[
        Optional[int],
        typer.Option("--var", min=1, help="Integrate in x_j only (p = partial_x(f, j))."),
    ] = None,
    g: VarsOpt = None,
    as_json: JsonOpt = False,
    corpus: CorpusOpt = None,
):
    """Antiderivative with zero constant term."""

    def compute(text: str) -> Outcome:
        p = parse(text, g)
        try:
            return integral_outcome(integrate(p) if var is None else integrate_in(p, var))
        except NotIntegrableError as e:
            return integrability_failure(e.report)

    _execute("integrate", expression, corpus, as_json, compute)


@app.command("check-integrable")
def check_integrable(
    expression: ExpressionArg = None,
    var: Annotated[
        Optional[int],
        typer.Option("--var", min=1, help="Test integrability in x_j only."),
    ] = None,
    g: VarsOpt = None,
    as_json: JsonOpt = False,
    corpus: CorpusOpt = None,
):
    """Decide integrability and list the wed classes."""

    def compute(text: str) -> Outcome:
        p = parse(text, g)
        return integrability_outcome(is_integrable(p) if var is None else is_integrable_in(p, var))

    _execute("check-integrable", expression, corpus, as_json, compute)


@app.command()
def frobenius(
    components: Annotated[
        Optional[List[str]],
        typer.Argument(help="Components f_1 .. f_g, f_i of degree one in h_i."),
    ] = None,
    as_json: JsonOpt = False,
    corpus: CorpusOpt = None,
):
    """Check a system f_1, ..., f_g for a common potential.

    Corpus lines list the components separated by ';'.
    """

    def compute(text: str) -> Outcome:
        pieces = [piece.strip() for piece in text.split(";")]
        system = FrobeniusSystem(tuple(parse(piece, len(pieces)) for piece in pieces))
        return frobenius_outcome(frobenius_check(system))

    expression = "; ".join(components) if components else None
    _execute("frobenius", expression, corpus, as_json, compute)


@app.command("check-hessian")
def check_hessian(
    expression: ExpressionArg = None,
    g: VarsOpt = None,
    as_json: JsonOpt = False,
    corpus: CorpusOpt = None,
):
    """Decide whether a polynomial is a complex hessian and recover its antiderivative."""
    _execute("check-hessian", expression, corpus, as_json, lambda text: hessian_outcome(is_complex_hessian(parse(text, g))))


@app.command()
def plush(
    expression: ExpressionArg = None,
    g: VarsOpt = None,
    as_json: JsonOpt = False,
    corpus: CorpusOpt = None,
):
    """Classify a symmetric polynomial as plush and print its decomposition."""
    _execute("plush", expression, corpus, as_json, lambda text: plush_outcome(classify_plush(parse(text, g))))


@app.command("eval")
def eval_command(
    expression: ExpressionArg = None,
    x_matrices: Annotated[
        Optional[List[str]],
        typer.Option("--x", "-x", help="Matrix X_j as a JSON nested list; repeat once per variable."),
    ] = None,
    h_matrices: Annotated[
        Optional[List[str]],
        typer.Option("--h", help="Direction matrix H_j as a JSON nested list; repeat once per variable."),
    ] = None,
    g: VarsOpt = None,
    as_json: JsonOpt = False,
    corpus: CorpusOpt = None,
):
    """Evaluate a polynomial on matrices."""
    if not x_matrices:
        err_console.print("[bold red]Error:[/bold red] give one --x matrix per variable.")
        raise typer.Exit(code=EXIT_USAGE)

    def compute(text: str) -> Outcome:
        X = MatrixTuple.from_lists([json.loads(m) for m in x_matrices])
        H = MatrixTuple.from_lists([json.loads(m) for m in h_matrices]) if h_matrices else None
        p = parse(text, g if g is not None else X.g)
        return matrix_outcome(evaluate(p, X, H))

    _execute("eval", expression, corpus, as_json, compute)


@app.command()
def sample(
    expression: ExpressionArg = None,
    of_hessian: Annotated[
        bool,
        typer.Option("--hessian", help="Sample the complex hessian of the expression."),
    ] = False,
    seed: Annotated[int, typer.Option("--seed", help="Random seed.")] = DEFAULT_SEED,
    sizes: Annotated[
        str,
        typer.Option("--sizes", help="Comma separated matrix sizes, cycled over trials."),
    ] = DEFAULT_SIZES_OPTION,
    trials: Annotated[int, typer.Option("--trials", min=1, help="Number of random tuples.")] = DEFAULT_TRIALS,
    tolerance: Annotated[
        float,
        typer.Option("--tol", min=0.0, help="Eigenvalues below -tol count as witnesses."),
    ] = DEFAULT_TOLERANCE,
    g: VarsOpt = None,
    as_json: JsonOpt = False,
    corpus: CorpusOpt = None,
):
    """Search random matrix tuples for a negative eigenvalue."""
    try:
        size_list = [int(n) for n in sizes.split(",") if n.strip()]
    except ValueError:
        err_console.print(f"[bold red]Invalid --sizes:[/bold red] '{escape(sizes)}'.")
        raise typer.Exit(code=EXIT_USAGE)

    def compute(text: str) -> Outcome:
        p = parse(text, g)
        q = complex_hessian(p) if of_hessian else p
        report = sample_positivity(q, size_list, trials, seed, tolerance, DEFAULT_ENTRY_BOUND)
        return positivity_outcome(report)

    _execute("sample", expression, corpus, as_json, compute)


@app.command()
def relate(
    other: Annotated[
        Path,
        typer.Option(
            "--other",
            exists=True,
            dir_okay=False,
            help="JSON decomposition, e.g. the output of `plush --json`.",
        ),
    ],
    expression: ExpressionArg = None,
    g: VarsOpt = None,
    as_json: JsonOpt = False,
    corpus: CorpusOpt = None,
):
    """Relate the minimal decomposition of EXPR to the one stored in --other."""

    def compute(text: str) -> Outcome:
        data = json.loads(other.read_text(encoding="utf-8"))
        data = data.get("result", data)
        stored = decomposition_from_dict(data)
        classified = classify_plush(parse(text, g if g is not None else stored.g))
        if not classified.plush:
            return plush_outcome(classified)
        return relation_outcome(relate_representations(classified.decomposition, stored))

    _execute("relate", expression, corpus, as_json, compute)


# --- Entry Point ---
# This allows running the CLI directly using `python -m plush_cli.main`
if __name__ == "__main__":
    app()
