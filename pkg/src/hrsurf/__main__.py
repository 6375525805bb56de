"""Allow invoking the CLI with `python -m hrsurf`.

Run this way (or through the `hrsurf` console script), usage errors exit with code `64`.
"""

from __future__ import annotations

import logging
import sys

import click

from hrsurf.cli import EXIT_USAGE, app

logger = logging.getLogger(__name__)


def main() -> None:  # pylint: disable=missing-function-docstring  # noqa: D103
    try:
        code = app(prog_name='hrsurf', standalone_mode=False)
    except click.UsageError as exc:
        exc.show()
        code = EXIT_USAGE
    except click.ClickException as exc:
        exc.show()
        code = exc.exit_code
    except click.exceptions.Abort:
        code = 1

    sys.exit(code if isinstance(code, int) else 0)


if __name__ == '__main__':  # pragma: no cover
    main()
else:
    logger.debug('successfully imported %s', __name__)
