import logging

from rich.console import Console
from rich.logging import RichHandler

# --- Rich Consoles ---
# Results go to stdout, diagnostics to stderr
console = Console(soft_wrap=True, highlight=False)
err_console = Console(stderr=True)


def configure_logging(verbose: bool) -> None:
    """Route library logging to stderr through rich."""
    logging.basicConfig(
        level=logging.DEBUG if verbose else logging.WARNING,
        format="%(message)s",
        datefmt="[%X]",
        handlers=[RichHandler(console=err_console, show_path=False)],
        force=True,
    )
