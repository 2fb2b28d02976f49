"""Radical p-subgroups of finite classical groups: constructions and brute-force checks."""

__version__ = "0.1.0"
