import json

import pytest

from secluded.errors import ParseError
from secluded.graph import Solution
from secluded.io import parse_instance, solution_from_dict, solution_to_dict, write_instance
from secluded.oracle import brute_force_solve

from support import random_instance, rng


def test_parse_k2():
    inst = parse_instance("p secluded 2 1\ne 1 2\nt 1\nt 2\nk 2\n")
    assert inst.graph.n == 2 and inst.graph.has_edge(0, 1)
    assert inst.terminals == (0, 1) and inst.exposure_budget == 2 and inst.cost_budget is None
    assert inst.graph.omega == (1, 1)


def test_comments_weights_and_cost_budget():
    text = "c a comment\n# another\np secluded 3 2\ne 1 2\ne 2 3\nw 2 7\nt 1\nb 12\n"
    inst = parse_instance(text)
    assert inst.graph.omega == (1, 7, 1) and inst.cost_budget == 12


@pytest.mark.parametrize("text, line", [
    ("e 1 2\n", 1),                                    # missing header
    ("p secluded 2 1\ne 1 2\ne 2 1\nt 1\n", 3),        # duplicate edge
    ("p secluded 2 1\ne 1 2\nt 3\n", 3),               # terminal out of range
    ("p secluded 2 1\ne 1 2\nw 1 -4\nt 1\n", 3),       # negative weight
    ("p secluded 2 1\ne 1 x\nt 1\n", 2),               # malformed line
    ("p secluded 2 1\ne 1 2\nt 1\nt 1\n", 4),          # duplicate terminal
    ("p secluded 2 1\ne 1 1\nt 1\n", 2),               # self-loop
    ("p secluded 2 1\ne 1 2\nq 1\n", 3),               # unknown record
])
def test_parse_errors_carry_line_numbers(text, line):
    with pytest.raises(ParseError) as exc:
        parse_instance(text)
    assert exc.value.lineno == line
    assert f"line {line}" in str(exc.value)


def test_missing_header_and_edge_count():
    with pytest.raises(ParseError):
        parse_instance("t 1\n")
    with pytest.raises(ParseError):
        parse_instance("p secluded 3 2\ne 1 2\nt 1\n")


def test_round_trip_is_a_fixpoint():
    r = rng(5)
    for _ in range(100):
        inst = random_instance(r, 1, 12)
        text = write_instance(inst)
        back = parse_instance(text)
        assert back == inst
        assert write_instance(back) == text


def test_solution_json_round_trip_and_schema():
    inst = parse_instance("p secluded 4 3\ne 1 2\ne 2 3\ne 3 4\nt 1\nt 4\n")
    sol = brute_force_solve(inst)
    d = solution_to_dict(sol, "oracle", seed=0)
    assert set(d) == {"feasible", "exposure", "cost", "tree_vertices", "closed_neighborhood",
                      "engine", "stats", "seed"}
    assert d["tree_vertices"] == [1, 2, 3, 4] and d["exposure"] == 4
    back = solution_from_dict(json.loads(json.dumps(d)))
    assert isinstance(back, Solution) and back == sol
    none = solution_to_dict(None, "enum")
    assert none["feasible"] is False and none["exposure"] is None
