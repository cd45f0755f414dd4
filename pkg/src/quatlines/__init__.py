"""Exact quaternionic reflection groups, line systems and spherical designs."""

__version__ = "0.1.0"
