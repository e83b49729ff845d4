"""Cohen-Lenstra type partition measures for finite classical groups."""

__version__ = "0.1.0"
