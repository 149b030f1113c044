"""Higher-order SMT-LIB frontend, fine-grained proof calculus, and
proof-producing term processor."""

__version__ = "0.1.0"
