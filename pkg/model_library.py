# jordan-gpt/model_library.py
from typing import Optional

SQUARE_BIT = {
    "schema_version": 1,
    "backend": "polytopic",
    "name": "gbit",
    "outcomes": ["x0", "x1", "y0", "y1"],
    "tests": [["x0", "x1"], ["y0", "y1"]],
    # v00, v01, v10, v11 over (x0, x1, y0, y1)
    "vertices": [
        [1.0, 0.0, 1.0, 0.0],
        [1.0, 0.0, 0.0, 1.0],
        [0.0, 1.0, 1.0, 0.0],
        [0.0, 1.0, 0.0, 1.0],
    ],
}

BUILTIN_MODELS = {
    "qubit": {"schema_version": 1, "backend": "jordan", "name": "qubit", "kind": "complex", "size": 2},
    "rebit": {"schema_version": 1, "backend": "jordan", "name": "rebit", "kind": "real", "size": 2},
    "quabit": {"schema_version": 1, "backend": "jordan", "name": "quabit", "kind": "quaternion", "size": 2},
    "spin4": {"schema_version": 1, "backend": "jordan", "name": "spin4", "kind": "spin", "size": 4},
    "trit": {"schema_version": 1, "backend": "jordan", "name": "trit", "kind": "complex", "size": 3},
    "classical3": {"schema_version": 1, "backend": "classical", "name": "classical3",
                   "outcomes": ["a", "b", "c"]},
    "gbit": SQUARE_BIT,
}


def builtin_names() -> list[str]:
    return sorted(BUILTIN_MODELS)


def get_builtin_descriptor(name: str) -> Optional[dict]:
    """
    Look up a built-in descriptor by name ("qubit", "gbit.json", "GBIT" all work).
    Returns a fresh copy, or None when the name is unknown.
    """
    key = name.lower().strip()
    if key.endswith(".json"):
        key = key[: -len(".json")]
    if key not in BUILTIN_MODELS:
        return None
    descriptor = BUILTIN_MODELS[key]
    copied = dict(descriptor)
    for field in ("outcomes", "tests", "vertices"):
        if field in copied:
            copied[field] = [list(row) if isinstance(row, list) else row for row in copied[field]]
    return copied
