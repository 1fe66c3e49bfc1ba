"""Numeric modules and the command-line surface of the projection order toolkit."""
