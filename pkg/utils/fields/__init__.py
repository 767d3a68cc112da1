from .miscellaneous import Dict, FlattenFields, Number, Plain, Rational

__all__ = ["Dict", "FlattenFields", "Number", "Plain", "Rational"]
