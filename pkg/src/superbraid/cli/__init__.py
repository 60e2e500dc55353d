"""Command-line front end and embedded reference fixtures.

The entry point lives in :mod:`superbraid.cli.main`; it is not imported
here so that lower layers can use the fixtures without a cycle.
"""

from .fixtures import FIXTURES, UNKNOWN, Fixture, fixture, parse_cell

__all__ = ["FIXTURES", "UNKNOWN", "Fixture", "fixture", "parse_cell"]
