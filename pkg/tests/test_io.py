import pydot
import pytest
from hypothesis import given, settings, strategies as st

from signcons.diagnose import find_all_mics
from signcons.gen import GenParams, generate
from signcons.io import (
    BadSign,
    ParseError,
    export_asp_facts,
    export_dot,
    parse_instance,
    read_instance,
    write_instance,
)
from signcons.model import ConflictingObservation, DuplicateEdge, InstanceError, Sign, ValidatedInstance, validate, Instance
from randinst import random_instance

LAC_FACTS = """\
vertex("LacI").
vertex("LacY").
edge("LacI","LacY").
observedV("LacI",1).
observedE("LacI","LacY",-1).
"""


def test_parse_lac_fragment():
    inst = parse_instance("edge LacI LacY -\nobs LacI +")
    assert inst.names == ("LacI", "LacY")
    assert inst.edge_list()[0].sign is Sign.MINUS
    assert inst.profile == {"LacI": Sign.PLUS}


def test_parse_empty():
    inst = parse_instance("")
    assert inst.n == 0 and inst.m == 0


def test_bad_sign_reports_line():
    with pytest.raises(BadSign) as err:
        parse_instance("vertex a\nedge a b *\n")
    assert err.value.lineno == 2


@pytest.mark.parametrize(
    "text, exc",
    [
        ("edge a b\n", ParseError),
        ("frobnicate a\n", ParseError),
        ("obs a 0\n", BadSign),
        ("edge a b +\nedge a b -\n", DuplicateEdge),
        ("obs a +\nobs a -\n", ConflictingObservation),
        ('vertex "a"\n', ParseError),
    ],
)
def test_parse_errors(text, exc):
    with pytest.raises(exc):
        parse_instance(text)


def test_comments_and_blank_lines():
    text = "# header\n\nedge a b + # trailing\n   \nobs a+b -\n"
    inst = parse_instance(text)
    assert inst.m == 1
    assert inst.profile == {"a+b": Sign.MINUS}


def test_hash_inside_name_is_not_a_comment():
    assert parse_instance("vertex a#b\n").names == ("a#b",)


def test_leading_hash_name_rejected():
    with pytest.raises(InstanceError):
        validate(Instance(vertices=["#a"]))


def test_write_empty():
    assert write_instance(parse_instance("")) == ""


def test_write_small_core_counts(data_dir):
    lines = write_instance(read_instance(data_dir / "small_core.txt")).splitlines()
    kinds = [line.split()[0] for line in lines]
    assert kinds.count("vertex") == 5
    assert kinds.count("edge") == 9
    assert kinds.count("obs") == 2


def test_roundtrip_generated():
    for seed in range(100):
        inst = generate(GenParams(alpha=5 + seed % 40, gamma=0.3, seed=seed))
        assert parse_instance(write_instance(inst)) == inst


def test_roundtrip_random_features():
    for seed in range(300):
        inst = random_instance(seed)
        assert parse_instance(write_instance(inst)) == inst


names = st.text(
    alphabet=st.characters(blacklist_categories=("Cs", "Zs", "Zl", "Zp", "Cc"), blacklist_characters='"#'),
    min_size=1,
    max_size=6,
)


@settings(max_examples=150, deadline=None)
@given(st.data())
def test_roundtrip_arbitrary_names(data):
    vs = sorted(set(data.draw(st.lists(names, min_size=0, max_size=6))))
    n = len(vs)
    edges = {}
    if n:
        for s, d, g in data.draw(
            st.lists(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1), st.sampled_from([1, -1, 0])), max_size=10)
        ):
            edges[(s, d)] = g
        obs = data.draw(st.lists(st.sampled_from([1, -1, 0]), min_size=n, max_size=n))
        inputs = data.draw(st.lists(st.booleans(), min_size=n, max_size=n))
    else:
        obs, inputs = [], []
    inst = ValidatedInstance.build(vs, [(s, d, g) for (s, d), g in sorted(edges.items())], obs, inputs)
    assert parse_instance(write_instance(inst)) == inst


def test_asp_lac_block(data_dir):
    assert export_asp_facts(read_instance(data_dir / "lac.txt")) == LAC_FACTS


def test_asp_empty():
    assert export_asp_facts(parse_instance("")) == ""


def test_asp_unlabeled_edge_has_no_observed_fact():
    out = export_asp_facts(parse_instance("edge a b ?\n"))
    assert 'edge("a","b").' in out
    assert "observedE" not in out


def test_asp_line_count():
    for seed in range(200):
        inst = random_instance(seed)
        labeled = sum(1 for e in inst.edges if e[2])
        expected = inst.n + inst.m + labeled + sum(1 for s in inst.obs if s) + len(inst.inputs)
        assert len(export_asp_facts(inst).splitlines()) == expected


def _parsed(text):
    graphs = pydot.graph_from_dot_data(text)
    assert graphs and len(graphs) == 1
    return graphs[0]


def test_dot_small_core_with_mic(data_dir):
    inst = read_instance(data_dir / "small_core.txt")
    report = find_all_mics(inst)
    text = export_dot(inst, report.mics, report.merged)
    g = _parsed(text)
    assert g.get_type() == "digraph"
    assert len(g.get_edges()) == 9
    assert text.count("arrowhead=tee") == 3
    bold = {n.get_name().strip('"') for n in g.get_nodes() if "bold" in (n.get("style") or "")}
    assert bold == {"A", "D"}
    assert len(g.get_subgraphs()) == 1


def test_dot_operon(data_dir):
    text = export_dot(read_instance(data_dir / "operon.graph"))
    assert len(_parsed(text).get_edges()) == 13
    assert text.count("arrowhead=tee") == 6


def test_dot_empty():
    text = export_dot(parse_instance(""))
    assert text.replace("\n", "").replace(" ", "") == "digraph{}"
    _parsed(text)


def test_dot_styles():
    text = export_dot(parse_instance("edge a b ?\nobs a -\nobs b +\n"))
    assert "style=dashed" in text
    assert "fillcolor=black" in text and "fontcolor=white" in text
    assert "fillcolor=lightgray" in text


def test_dot_parses_on_random_and_odd_names():
    inst = parse_instance("edge a\\b c-d +\nedge x.y a\\b ?\nobs x.y -\n")
    _parsed(export_dot(inst))
    for seed in range(100):
        _parsed(export_dot(random_instance(seed)))
