"""Modular Lie algebras over GF(p): divided powers, Poisson brackets, deformations, Meataxe."""

__version__ = "0.1.0"
