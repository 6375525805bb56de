"""Unit, CLI, and acceptance tests for `hrsurf`_.

Many of the smaller properties are checked by the doctests in `src/hrsurf`. Shared fixtures, including the RK4
reference integrator, live in `tests.fixtures`.

.. _hrsurf: https://hrsurf.readthedocs.io/
"""
