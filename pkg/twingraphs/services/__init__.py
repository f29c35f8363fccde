"""Computational services of the toolkit."""
