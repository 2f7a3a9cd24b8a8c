"""PGC clonability lab - Main package."""

__version__ = "0.1.0"
