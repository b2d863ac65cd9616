"""derlie: exact rational computation with derivation complexes of free
graded Lie algebras, their symmetric-group actions, and stability tables."""

__version__ = "0.1.0"

# The engine version participates in every cache key; bump it whenever the
# meaning of any serialized result changes.
ENGINE_VERSION = __version__
