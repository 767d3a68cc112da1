import dataclasses
import math
from fractions import Fraction

import numpy as np


def Rational(value: Fraction) -> dict:
    value = Fraction(value)
    return {'num': value.numerator, 'den': value.denominator, 'float': float(value)}


def Number(value: float, digits: int = None):
    value = float(value)
    if not math.isfinite(value):
        return None
    if digits is None:
        return value
    return float(f'{value:.{digits}g}')


def Plain(obj, digits: int = None):
    """
    Turns report payloads into JSON-ready values.

    Fractions become {"num", "den", "float"}, sets become sorted lists, numpy
    arrays and scalars become Python numbers (rounded to `digits` significant
    digits when given), dataclasses become dicts of their public fields.
    """
    if obj is None or isinstance(obj, (bool, str)):
        return obj
    if isinstance(obj, np.bool_):
        return bool(obj)
    if isinstance(obj, Fraction):
        return Rational(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        return Number(obj, digits)
    if isinstance(obj, np.ndarray):
        return [Plain(value, digits) for value in obj.tolist()]
    if isinstance(obj, (set, frozenset)):
        return sorted(Plain(value, digits) for value in obj)
    if isinstance(obj, (list, tuple)):
        return [Plain(value, digits) for value in obj]
    if isinstance(obj, dict):
        return {str(key): Plain(value, digits) for key, value in obj.items()}
    if dataclasses.is_dataclass(obj):
        return Plain(Dict(obj), digits)
    raise TypeError(f"Cannot serialise {type(obj).__name__}")


def FlattenFields(data, prefix=""):
    fields = {}
    if isinstance(data, dict) and not ({'num', 'den'} <= set(data)):
        for key, value in data.items():
            full_key = f"{prefix}.{key}" if prefix else key
            fields.update(FlattenFields(value, prefix=full_key))
    elif isinstance(data, dict):
        fields[prefix] = f"{data['num']}/{data['den']}"
    elif isinstance(data, list):
        fields[prefix] = ' '.join(str(value) for value in data)
    else:
        fields[prefix] = data
    return fields


def Dict(obj):
    if dataclasses.is_dataclass(obj):
        names = [field.name for field in dataclasses.fields(obj)]
    else:
        names = list(obj.__dict__)
    return {
        key: getattr(obj, key)
        for key in names
        if not key.startswith('_')
    }
