"""S-adic subshifts, their factor languages and Bratteli-Vershik models."""
__version__ = "0.1.0"
