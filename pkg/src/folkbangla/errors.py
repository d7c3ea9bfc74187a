"""Shared exception base so the CLI can map failures to exit codes."""


class FolkBanglaError(Exception):
    """Base class for all data and processing errors raised by this package."""
