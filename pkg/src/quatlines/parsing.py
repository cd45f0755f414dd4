"""Text input for quaternions, vectors, matrices and generator files.

Expressions are parsed with :mod:`ast` and evaluated over a small whitelist:
integers, ``+ - * /``, integer powers, the units ``i j k``, the radicals
``r2 r3 r5 r6 r10 r15 r30``, ``sqrt(n)``, ``tau`` and ``omega``.  Division
is right division.  Nothing else is accepted.
"""
from __future__ import annotations

import ast
import json
from pathlib import Path

from . import constants as C
from .numfield import sqrt
from .quatalg import Quaternion, QI, QJ, QK
from .qlinalg import QuatMatrix, QuatVector

__all__ = [
    "InputError",
    "parse_quaternion",
    "parse_vector",
    "parse_matrix",
    "parse_generators",
    "load_generator_file",
    "resolve_group_generators",
    "NAMED_VECTORS",
]


class InputError(ValueError):
    """Malformed user input; the message names the offending token."""


_NAMES = {
    "i": QI,
    "j": QJ,
    "k": QK,
    "tau": Quaternion(C.tau),
    "omega": C.omega,
    **{f"r{n}": Quaternion(sqrt(n)) for n in (2, 3, 5, 6, 10, 15, 30)},
}

NAMED_VECTORS = {
    "w": C.w,
    "w_perp": C.w_perp,
    "e1": C.e1,
    "e2": C.e2,
    "fiducial15": C.FIDUCIAL_15,
    "fiducial20": C.FIDUCIAL_20,
    "fiducial30": C.FIDUCIAL_30,
}


def _eval(node, text):
    if isinstance(node, ast.Expression):
        return _eval(node.body, text)
    if isinstance(node, ast.Constant) and isinstance(node.value, int) and not isinstance(node.value, bool):
        return Quaternion(node.value)
    if isinstance(node, ast.Name):
        if node.id not in _NAMES:
            raise InputError(f"unknown name {node.id!r} in {text!r}")
        return _NAMES[node.id]
    if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
        v = _eval(node.operand, text)
        return -v if isinstance(node.op, ast.USub) else v
    if isinstance(node, ast.BinOp):
        if isinstance(node.op, ast.Pow):
            if not (isinstance(node.right, ast.Constant) and isinstance(node.right.value, int)):
                raise InputError(f"only integer powers are allowed in {text!r}")
            return _eval(node.left, text) ** node.right.value
        a, b = _eval(node.left, text), _eval(node.right, text)
        if isinstance(node.op, ast.Add):
            return a + b
        if isinstance(node.op, ast.Sub):
            return a - b
        if isinstance(node.op, ast.Mult):
            return a * b
        if isinstance(node.op, ast.Div):
            if b.is_zero():
                raise InputError(f"division by zero in {text!r}")
            return a / b
    if isinstance(node, ast.Call) and isinstance(node.func, ast.Name) and node.func.id == "sqrt":
        if len(node.args) != 1 or node.keywords:
            raise InputError(f"sqrt takes one argument in {text!r}")
        arg = _eval(node.args[0], text)
        if not arg.is_real() or not arg.real.is_rational():
            raise InputError(f"sqrt needs a rational argument in {text!r}")
        try:
            return Quaternion(sqrt(arg.real.to_fraction()))
        except ValueError as exc:
            raise InputError(f"{exc} in {text!r}") from None
    token = ast.get_source_segment(text, node) or type(node).__name__
    raise InputError(f"unsupported syntax {token!r} in {text!r}")


def parse_quaternion(text: str) -> Quaternion:
    text = text.strip()
    if not text:
        raise InputError("empty expression")
    try:
        tree = ast.parse(text, mode="eval")
    except SyntaxError as exc:
        bad = text[exc.offset - 1:] if exc.offset else text
        raise InputError(f"cannot parse {text!r} near {bad!r}") from None
    return _eval(tree, text)


def _split_top(text: str):
    """Split on commas not nested in parentheses."""
    parts, depth, cur = [], 0, []
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == "," and depth == 0:
            parts.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    parts.append("".join(cur))
    return parts


def parse_vector(text: str) -> QuatVector:
    """'(a, b, ...)' with quaternion expressions, or a named vector such as 'w'."""
    text = text.strip()
    if text in NAMED_VECTORS:
        return NAMED_VECTORS[text]
    if not (text.startswith("(") and text.endswith(")")):
        raise InputError(f"vector must look like '(a, b)' or be one of {sorted(NAMED_VECTORS)}, got {text!r}")
    entries = [parse_quaternion(p) for p in _split_top(text[1:-1])]
    return QuatVector(entries)


def parse_matrix(lines) -> QuatMatrix:
    """One row per line, entries separated by commas."""
    rows = [[parse_quaternion(e) for e in _split_top(line)] for line in lines]
    if len({len(r) for r in rows}) != 1:
        raise InputError("matrix rows have different lengths")
    return QuatMatrix(rows)


def parse_generators(text: str):
    """Matrices separated by blank lines; '#' starts a comment."""
    blocks, cur = [], []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            if cur:
                blocks.append(cur)
                cur = []
            continue
        cur.append(line)
    if cur:
        blocks.append(cur)
    if not blocks:
        raise InputError("no matrices found")
    return [parse_matrix(b) for b in blocks]


def load_generator_file(path):
    """Generators from a JSON file (as saved by the tool) or a plain-text file."""
    p = Path(path)
    try:
        text = p.read_text()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    if p.suffix == ".json":
        try:
            data = json.loads(text)
            return [QuatMatrix.from_json(g) for g in data["generators"]]
        except (ValueError, KeyError, TypeError) as exc:
            raise InputError(f"bad generator JSON in {path}: {exc}") from None
    return parse_generators(text)


def resolve_group_generators(source: str):
    """Built-in group name or path to a generator file -> (name, generators)."""
    if source in C.GROUP_GENERATORS:
        return source, list(C.GROUP_GENERATORS[source])
    if Path(source).exists():
        return Path(source).stem, load_generator_file(source)
    raise InputError(f"unknown group {source!r}: use one of {sorted(C.GROUP_GENERATORS)} or a generator file")
