import pytest

from picard_omega import corpus, serialize
from picard_omega.chain import ChainMap, same_complex
from picard_omega.errors import ParseError
from picard_omega.omega import FiniteOmegaCat
from picard_omega.parity import oriental
from picard_omega.pic import from_pic, p_of


def roundtrip(obj):
    return serialize.loads(serialize.dumps(obj))


def test_complex_roundtrip():
    for c in list(corpus.finite_corpus().values()) + list(corpus.integer_corpus().values()):
        kind, back = serialize.load(roundtrip(serialize.complex_to_json(c)))
        assert kind == "complex" and same_complex(back, c)


def test_chain_map_roundtrip():
    f = corpus.quotient_example()
    kind, g = serialize.load(roundtrip(serialize.chain_map_to_json(f)))
    assert kind == "chain_map" and isinstance(g, ChainMap)
    assert all(g.component(n).equals(f.component(n)) for n in f.source.degrees)


def test_omega_roundtrip():
    for a in (from_pic(p_of(corpus.finite_corpus()["Z2-id->Z2"])), oriental(2).cat):
        kind, b = serialize.load(roundtrip(serialize.omega_to_json(a)))
        assert kind == "omega" and isinstance(b, FiniteOmegaCat)
        assert (b.labels, b.s, b.t, b.compose) == (a.labels, a.s, a.t, a.compose)


def test_presheaf_roundtrip():
    for f in (corpus.counterexample_identity(), corpus.random_presheaf(corpus.rng_for(3))):
        kind, g = serialize.load(roundtrip(serialize.presheaf_to_json(f)))
        assert kind == "presheaf"
        assert set(g.complexes) == set(f.complexes)
        assert all(g.restrict(a, b).equals(f.restrict(a, b)) for (a, b) in f.restrictions)


def test_simplicial_roundtrip():
    g = corpus.random_simplicial(corpus.rng_for(1), T=3)
    kind, h = serialize.load(roundtrip(serialize.simplicial_to_json(g)))
    assert kind == "simplicial"
    assert all(x.relations == y.relations for x, y in zip(g.levels, h.levels))


def test_dumps_is_deterministic():
    c = corpus.finite_corpus()["Z4-2->Z4"]
    assert serialize.dumps(serialize.complex_to_json(c)) == serialize.dumps(serialize.complex_to_json(c))


@pytest.mark.parametrize("text", ["{", "[]", '{"groups": 3, "differentials": []}', '{"kind": "teapot"}',
                                  '{"elements": ["a"], "stabilization": 0, "s": [[5]], "t": [[0]], "compose": [[]]}'])
def test_malformed_input(text):
    with pytest.raises(ParseError):
        serialize.load(serialize.loads(text))
