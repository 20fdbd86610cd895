"""Verification workbench for word-algebra counterexamples, clone catalogs,
and order-theoretic structure of endomorphism monoids."""

__version__ = "0.1.0"
