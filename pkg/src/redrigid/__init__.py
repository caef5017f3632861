"""Desk-scale experiments on reduction mod p: support-problem scans for elliptic
curves over Q, Weil-interval pigeonholes, finite-group rigidity checks and a
congruence-preserving non-polynomial map of Z."""

__version__ = "0.1.0"
