import pytest

from colink import corpus
from colink.errors import DomainError, TangleError
from colink.evaluator import evaluate_link
from colink.kauffman import kauffman_unreduced_jones
from colink.parsing import (
    parse_diagram,
    parse_slice_word,
    pd_to_word,
    serialize_word,
    word_to_pd,
)


def test_parse_minimal_unknot():
    d = parse_slice_word("m=2\ncup@1\ncap@1\n")
    assert d.n_components == 1
    assert not d.trace.crossings


def test_parse_label_out_of_range():
    with pytest.raises((DomainError, TangleError)):
        parse_slice_word("m=3\ncup@1 k=5\ncap@1\n")


def test_parse_unbalanced():
    from colink.errors import NotClosedError

    with pytest.raises((TangleError, NotClosedError)):
        parse_slice_word("m=2\ncup@1\n")


def test_serialize_roundtrip():
    for name in ("trefoil", "whitehead", "trefoil_hopf_sum"):
        d = corpus.get(name)
        text = serialize_word(d.word)
        d2 = parse_slice_word(text)
        assert evaluate_link(d2) == evaluate_link(d)


def test_colour_table_applied():
    d = corpus.get("hopf_pos")
    text = serialize_word(d.word, colour_table=["0", "1"])
    d2 = parse_slice_word(text)
    assert set(d2.colour_values.values()) == {0, 1}


def test_pd_hopf_spec_example():
    d = parse_diagram("X 4 1 3 2\nX 2 3 1 4\n")
    assert d.n_components == 2
    assert len(d.trace.crossings) == 2


def test_pd_roundtrip_corpus():
    for name in corpus.PD_CORPUS:
        d = corpus.get(name)
        pd = word_to_pd(d)
        d2 = pd_to_word(pd)
        assert evaluate_link(d2) == evaluate_link(d), name
        assert d2.n_components == d.n_components


def test_pd_of_crossingless_component_rejected():
    with pytest.raises(TangleError):
        word_to_pd(corpus.unlink(2))


def test_oracle_on_generated_pd_matches_evaluator():
    for name in ("trefoil", "figure_eight", "whitehead"):
        d = corpus.get(name)
        pd = word_to_pd(d)
        assert kauffman_unreduced_jones(pd) == evaluate_link(d)


def test_parse_pd_text_format_variants():
    d1 = parse_diagram("X(1,4,2,5)\nX(3,6,4,1)\nX(5,2,6,3)")
    d2 = parse_diagram("X 1 4 2 5\nX 3 6 4 1\nX 5 2 6 3")
    assert evaluate_link(d1) == evaluate_link(d2)
