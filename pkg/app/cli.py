import logging
import os
import sys

sys.path.append(os.path.join(os.path.dirname(os.path.abspath(__file__)), '..', 'src'))

import click  # noqa: E402

import settings  # noqa: E402
from commands.conjecture import emit_system_command, schema, search  # noqa: E402
from commands.perms import perms, transversal  # noqa: E402
from commands.pinning import hyperb, pin  # noqa: E402
from commands.verify import verify  # noqa: E402
from geometry.errors import GeometryError  # noqa: E402
from reports import ErrorPayload  # noqa: E402
from tracking.run_log import log_run_event  # noqa: E402

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_NUMERICAL = 2


def configure_logging(level=None):
    logging.basicConfig(
        level=(level or settings.LOG_LEVEL).upper(),
        stream=sys.stderr,
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
    )


@click.group()
def cli():
    """Geometric permutations of disjoint unit balls: transversals, pinning, lemma checks and searches."""


cli.add_command(perms)
cli.add_command(transversal)
cli.add_command(pin)
cli.add_command(hyperb)
cli.add_command(verify)
cli.add_command(search)
cli.add_command(emit_system_command)
cli.add_command(schema)


def _error(kind, message, code):
    payload = ErrorPayload(error=kind, message=message)
    click.echo(payload.model_dump_json())
    log_run_event("error", {"error": kind, "message": message, "exit_code": code}, settings.RUN_LOG_DIR)
    return code


def main(argv=None):
    """Run the CLI and return its exit code instead of exiting."""
    configure_logging()
    args = list(sys.argv[1:] if argv is None else argv)
    try:
        rv = cli.main(args=args, prog_name="gpballs", standalone_mode=False)
    except GeometryError as e:
        logger.error("%s: %s", type(e).__name__, e)
        return _error(type(e).__name__, str(e), e.exit_code)
    except click.exceptions.Exit as e:
        return e.exit_code
    except click.ClickException as e:
        return _error(type(e).__name__, e.format_message(), EXIT_INVALID)
    except click.exceptions.Abort:
        return _error("Abort", "Aborted", EXIT_INVALID)
    except OSError as e:
        return _error(type(e).__name__, str(e), EXIT_INVALID)
    except (ArithmeticError, ValueError, RuntimeError) as e:
        logger.exception("Numerical failure")
        return _error(type(e).__name__, str(e), EXIT_NUMERICAL)
    return rv if isinstance(rv, int) else EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
