"""Certified constructions of U_m-numbers from Liouville-type series."""

__version__ = "0.1.0"

SCHEMA_VERSION = "umlab-cert/1"

# exactnum must finish loading before polyring (they import each other)
from . import exactnum  # noqa: E402,F401
