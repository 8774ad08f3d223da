import random
from fractions import Fraction as F

import pytest
from conftest import random_weighted_tripartite

from trireach.fileio import (
    Claim,
    FileFormatError,
    parse_graph_text,
    read_graph_file,
    render_graph_file,
    write_graph_file,
)
from trireach.graphs import Fn
from trireach.witnesses import interval_witness


def test_render_parse_round_trip_random_graphs():
    rng = random.Random(5)
    for _ in range(25):
        g = random_weighted_tripartite(rng)
        parsed = parse_graph_text(render_graph_file(g))
        assert parsed.graph == g


def test_witness_trailer_round_trip(tmp_path):
    w = interval_witness(5, 3, 1)
    path = tmp_path / "w.txt"
    write_graph_file(path, w.graph, w.claim, w.provenance, oracle="exhaustive")
    parsed = read_graph_file(path)
    assert parsed.claim == Claim(Fn.PSI, F(3, 5), F(1, 5), F(3, 5), False)
    assert parsed.provenance == "interval n=5 p=3 q=1"
    assert parsed.oracle == "exhaustive"


def test_render_is_deterministic():
    w = interval_witness(4, 2, 3)
    assert render_graph_file(w.graph, w.claim) == render_graph_file(w.graph, w.claim)


def test_weights_normalize_on_parse():
    text = (
        "sizes 1 1 1\n"
        "weights_a 2/2\nweights_b 1\nweights_c 3/3\n"
        "ab 0 0\nbc 0 0\n"
    )
    parsed = parse_graph_text(text)
    assert parsed.graph.weights_a == (F(1),)


@pytest.mark.parametrize(
    "text",
    [
        "weights_a 1\n",  # weights before sizes
        "sizes 1 1\n",  # wrong arity
        "sizes 1 1 1\nweights_a 1/0\nweights_b 1\nweights_c 1\n",
        "sizes 1 1 1\nweights_a 1 1\nweights_b 1\nweights_c 1\n",
        "sizes 1 1 1\nweights_a 1\nweights_b 1\nweights_c 1\nab 0 5\n",
        "sizes 1 1 1\nweights_a 1\nweights_b 1\nweights_c 1\nclaim psi 1 1\n",
        "sizes 1 1 1\nweights_a 1\nweights_b 1\nweights_c 1\nfrobnicate 1\n",
        "sizes 1 1 1\nweights_a 1\nweights_b 1\nweights_c 1\noracle guesswork\n",
        "sizes 1 1 1\nweights_a 1/2\nweights_b 1\nweights_c 1\n",  # bad sum
    ],
)
def test_malformed_inputs_rejected(text):
    with pytest.raises(FileFormatError):
        parse_graph_text(text)


def test_missing_sizes_rejected():
    with pytest.raises(FileFormatError, match="sizes"):
        parse_graph_text("")
