"""
radicsum.version
================

Defines the version of radicsum.
"""
__version__ = "0.1.0"
