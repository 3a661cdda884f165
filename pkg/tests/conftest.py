"""Shared fixtures: family labels and a CLI runner."""

from __future__ import annotations

import pytest

from kdouble.classify import family_table

FAMILY_LABELS = tuple(f.label for f in family_table())


@pytest.fixture(scope="session")
def family_labels() -> tuple[str, ...]:
    return FAMILY_LABELS


@pytest.fixture()
def run_cli(capsys):
    """Invoke the CLI in-process; returns (exit_code, stdout, stderr)."""

    from kdouble.cli import main

    def _run(*argv: str):
        try:
            code = main(list(argv))
        except SystemExit as exc:
            code = exc.code if isinstance(exc.code, int) else 2
        captured = capsys.readouterr()
        return code, captured.out, captured.err

    return _run
