"""Prepare the namespace of the `doctest` examples in `src/hrsurf`."""

from __future__ import annotations

import logging
from typing import Any
from unittest.mock import MagicMock

import numpy as np
import pytest
import pytest_mock
import typer

from hrsurf.ambient import AmbientSpace
from hrsurf.families import get_family

# pylint: disable=redefined-outer-name


@pytest.fixture
def typer_context(mocker: pytest_mock.MockerFixture) -> MagicMock:
    """A `typer.Context` stand-in for calling option callbacks directly."""
    ctx = mocker.MagicMock(spec=typer.Context)
    ctx.resilient_parsing = False
    ctx.obj = {}
    return ctx  # type: ignore[no-any-return]


@pytest.fixture(autouse=True)
def src_doctest_namespace(
    doctest_namespace: dict[str, Any],
    typer_context: MagicMock,
    caplog: pytest.LogCaptureFixture,
    monkeypatch: pytest.MonkeyPatch,
    mocker: pytest_mock.MockerFixture,
) -> dict[str, Any]:
    """Expose numpy, the family catalog, and the CLI test doubles to every docstring."""
    mocker.patch('logging.basicConfig')
    monkeypatch.delenv('HRSURF_LOG', raising=False)
    caplog.set_level(logging.NOTSET)

    doctest_namespace.update(
        np=np,
        AmbientSpace=AmbientSpace,
        get_family=get_family,
        ctx=typer_context,
        caplog=caplog,
    )
    return doctest_namespace
