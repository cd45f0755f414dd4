import json

import pytest

from quatlines import constants as C
from quatlines.grouplib import close_group, save_generators
from quatlines.numfield import sqrt
from quatlines.parsing import (
    InputError,
    load_generator_file,
    parse_generators,
    parse_quaternion,
    parse_vector,
    resolve_group_generators,
)
from quatlines.quatalg import QI, QJ, QK, Quaternion


@pytest.mark.parametrize("text,value", [
    ("1 + 2*i - k", Quaternion(1, 2, 0, -1)),
    ("i*j", QK),
    ("j*i", -QK),
    ("(1 + i)/r2", (1 + QI) / sqrt(2)),
    ("sqrt(12)", Quaternion(2 * sqrt(3))),
    ("sqrt(3/4) * j", QJ * (sqrt(3) / 2)),
    ("i**2", Quaternion(-1)),
    ("r6 - r2*r3", Quaternion(0)),
])
def test_parse_quaternion(text, value):
    assert parse_quaternion(text) == value


@pytest.mark.parametrize("text", ["", "x", "2**i", "__import__('os')", "1/0", "sqrt(7)", "i +", "a.b", "[1]"])
def test_parse_quaternion_rejects(text):
    with pytest.raises(InputError):
        parse_quaternion(text)


def test_parse_vector():
    v = parse_vector("(sqrt(2)*i, 1 + sqrt(3))")
    assert v.dim == 2 and v[0] == QI * sqrt(2)
    assert parse_vector("w") == C.w
    with pytest.raises(InputError):
        parse_vector("1, 2")


def test_parse_generators_text():
    text = """
    # Q8 acting diagonally
    i, 0
    0, -i

    j, 0
    0, j
    """
    gens = parse_generators(text)
    assert len(gens) == 2 and close_group(gens).order == 8


def test_ragged_matrix():
    with pytest.raises(InputError):
        parse_generators("1, 0\n0\n")


def test_generator_files(tmp_path):
    p = tmp_path / "h24.json"
    save_generators(close_group(C.GROUP_GENERATORS["h24"]), p)
    assert close_group(load_generator_file(p)).order == 24
    name, gens = resolve_group_generators(str(p))
    assert name == "h24" and len(gens) == len(json.loads(p.read_text())["generators"])
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    with pytest.raises(InputError):
        load_generator_file(bad)
    with pytest.raises(InputError):
        load_generator_file(tmp_path / "missing.txt")


def test_builtin_and_unknown_groups():
    assert resolve_group_generators("h720")[0] == "h720"
    with pytest.raises(InputError):
        resolve_group_generators("h99")
