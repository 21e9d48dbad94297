"""Proof checker for a sized type theory with impredicative size
quantifiers, plus a small realizability model oracle."""

__version__ = "0.1.0"
