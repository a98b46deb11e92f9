"""Single-field tampering of certificate documents."""

from __future__ import annotations

import copy
import random
import re
from fractions import Fraction

from umlab.certify.codec import document_hash, format_exact, parse_exact

# run inputs, not derived values: changing them changes the question, not the answer
INPUT_KEYS = frozenset(
    {"bit_budget", "range", "prime_budget", "coeff_bound", "height_bound", "base", "exponents", "budget"}
)

# per-kind inputs: the binomial and curve being asked about
KIND_INPUTS = {"binomial": frozenset({"m", "a"}), "genus": frozenset({"c"})}

_FLOAT_RE = re.compile(r"^-?(\d+\.\d*(e[+-]?\d+)?|inf|nan|\d+e[+-]?\d+)$")


def _is_numeric_text(value: str) -> bool:
    if _FLOAT_RE.match(value):
        return True
    try:
        parse_exact(value)
    except (ValueError, ZeroDivisionError):
        return False
    return True


def numeric_paths(node, path=(), inputs=INPUT_KEYS):
    """Paths of numeric leaves (ints, floats and numeric strings) outside the run inputs."""
    if isinstance(node, dict):
        for key, value in node.items():
            if key in inputs:
                continue
            yield from numeric_paths(value, path + (key,), inputs)
    elif isinstance(node, list):
        for i, value in enumerate(node):
            yield from numeric_paths(value, path + (i,), inputs)
    elif isinstance(node, bool) or node is None:
        return
    elif isinstance(node, (int, float)):
        yield path
    elif isinstance(node, str) and _is_numeric_text(node):
        yield path


def perturb(value, rng: random.Random):
    if isinstance(value, int):
        return value + rng.choice([-1, 1]) * rng.randint(1, 3)
    if isinstance(value, float):
        return value * (1 + rng.choice([-1, 1]) * 1e-6) + 1e-9
    if _FLOAT_RE.match(value):
        x = float(value)
        return repr(x * (1 + rng.choice([-1, 1]) * 1e-6) + 1e-9)
    x = parse_exact(value)
    step = max(abs(x), Fraction(1, x.denominator)) / (1 << rng.randint(8, 40))
    return format_exact(x + rng.choice([-1, 1]) * step)


def tamper(doc: dict, path: tuple, rng: random.Random) -> dict:
    """Copy of ``doc`` with one numeric leaf changed and the hash recomputed."""
    out = copy.deepcopy(doc)
    node = out["payload"]
    for key in path[:-1]:
        node = node[key]
    node[path[-1]] = perturb(node[path[-1]], rng)
    out["sha256"] = document_hash(out)
    return out


def document_paths(doc: dict) -> list[tuple]:
    inputs = INPUT_KEYS | KIND_INPUTS.get(doc["kind"], frozenset())
    return list(numeric_paths(doc["payload"], (), inputs))
