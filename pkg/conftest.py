"""Register the shared fixtures of the `hrsurf` test suite."""

pytest_plugins = 'tests.fixtures'
