"""Reading and writing relation files (line-based text or JSON)."""

from __future__ import annotations

import json

from .errors import InputError
from .relcore import Relation


def parse_text(text: str) -> Relation:
    n = None
    pairs = []
    seen_header = False
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        words = line.split()
        if not seen_header:
            if words != ["relation"]:
                raise InputError(f"line {lineno}: expected header 'relation'")
            seen_header = True
            continue
        key = words[0]
        if key == "elements":
            if n is not None:
                raise InputError(f"line {lineno}: duplicate 'elements' line")
            if len(words) != 2:
                raise InputError(f"line {lineno}: 'elements' takes one integer")
            n = _to_int(words[1], lineno)
        elif key == "pair":
            if n is None:
                raise InputError(f"line {lineno}: 'pair' before 'elements'")
            if len(words) != 3:
                raise InputError(f"line {lineno}: 'pair' takes two integers")
            pairs.append((_to_int(words[1], lineno), _to_int(words[2], lineno)))
        else:
            raise InputError(f"line {lineno}: unknown keyword {key!r}")
    if not seen_header:
        raise InputError("empty relation file")
    if n is None:
        raise InputError("missing 'elements' line")
    return Relation(n, pairs)


def _to_int(tok, lineno):
    try:
        return int(tok)
    except ValueError:
        raise InputError(f"line {lineno}: not an integer: {tok!r}") from None


def parse_json(text: str) -> Relation:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"invalid JSON: {exc}") from None
    if not isinstance(doc, dict) or "elements" not in doc:
        raise InputError("JSON relation needs an 'elements' field")
    n = doc["elements"]
    pairs = doc.get("pairs", [])
    if not isinstance(n, int) or isinstance(n, bool):
        raise InputError("'elements' must be an integer")
    if not isinstance(pairs, list) or any(
        not isinstance(p, list) or len(p) != 2 or not all(type(v) is int for v in p) for p in pairs
    ):
        raise InputError("'pairs' must be a list of two-integer arrays")
    return Relation(n, [tuple(p) for p in pairs])


def parse(text: str) -> Relation:
    if text.lstrip().startswith("{"):
        return parse_json(text)
    return parse_text(text)


def load(path) -> Relation:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    return parse(text)


def format_text(r: Relation) -> str:
    lines = ["relation", f"elements {r.n}"]
    lines += [f"pair {i} {j}" for i, j in r.pairs()]
    return "\n".join(lines) + "\n"


def format_json(r: Relation) -> str:
    return json.dumps({"elements": r.n, "pairs": [list(p) for p in r.pairs()]}) + "\n"


def save(r: Relation, path, structured: bool = False):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(format_json(r) if structured else format_text(r))
