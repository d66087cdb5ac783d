"""Exact verification of Yangian, boundary Yangian and factor Yangian identities."""

__version__ = "0.1.0"
