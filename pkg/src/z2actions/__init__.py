"""Fixed-point data of (Z_2)^k-actions: validation, cobordism tests and classification."""

__version__ = "0.1.0"
