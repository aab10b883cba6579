import json
import math

import pytest
from hypothesis import given, settings

from numbersgame import EGCMGraph, act, simple_root, validate_matrix
from numbersgame.errors import (
    AsymmetricZeroPattern,
    BadDiagonal,
    InvalidAmplitudeProduct,
    NotOddNeighborly,
    ParseError,
    PositiveOffDiagonal,
    SameNode,
)

from conftest import tree_graphs


class TestValidation:
    def test_label_4_from_product_2(self):
        g = validate_matrix([[2, -1], [-2, 2]])
        assert g.edges == ((0, 1),)
        assert g.label(0, 1) == 4

    def test_label_3_from_unit_product(self):
        assert validate_matrix([[2, -1], [-1, 2]]).label(0, 1) == 3

    def test_label_inf_at_product_4(self):
        assert validate_matrix([[2, -2], [-2, 2]]).label(0, 1) == math.inf

    def test_product_in_gap_rejected(self):
        # 2.5 < 4 and no k in 3..360 puts 4cos^2(pi/k) within 1e-9 of it
        for k in range(3, 361):
            assert abs(4 * math.cos(math.pi / k) ** 2 - 2.5) > 1e-9
        with pytest.raises(InvalidAmplitudeProduct):
            validate_matrix([[2, -1], [-2.5, 2]])

    def test_bad_diagonal(self):
        with pytest.raises(BadDiagonal):
            validate_matrix([[1, -1], [-1, 2]])

    def test_positive_off_diagonal(self):
        with pytest.raises(PositiveOffDiagonal):
            validate_matrix([[2, 1], [-1, 2]])

    def test_asymmetric_zero_pattern(self):
        with pytest.raises(AsymmetricZeroPattern):
            validate_matrix([[2, 0], [-1, 2]])

    def test_non_square_rejected(self):
        with pytest.raises(BadDiagonal):
            validate_matrix([[2, -1, 0], [-1, 2, 0]])

    def test_explicit_label_override(self):
        # product for m=1000 is far outside the k <= 360 scan
        product = 4 * math.cos(math.pi / 1000) ** 2
        with pytest.raises(InvalidAmplitudeProduct):
            validate_matrix([[2, -1], [-product, 2]])
        g = EGCMGraph([[2, -1], [-product, 2]], explicit_labels={(0, 1): 1000})
        assert g.label(0, 1) == 1000

    def test_explicit_label_consistency_checked(self):
        with pytest.raises(InvalidAmplitudeProduct):
            EGCMGraph([[2, -1], [-1, 2]], explicit_labels={(0, 1): 7})


class TestLabels:
    def test_golden_product_gives_5(self):
        product = (3 + math.sqrt(5)) / 2
        g = validate_matrix([[2, -1], [-product, 2]])
        assert g.label(0, 1) == 5

    def test_non_adjacent_label_2(self):
        g = validate_matrix([[2, -1, 0], [-1, 2, -1], [0, -1, 2]])
        assert g.label(0, 2) == 2

    def test_product_3_gives_6(self):
        assert validate_matrix([[2, -1], [-3, 2]]).label(0, 1) == 6

    def test_same_node_rejected(self):
        with pytest.raises(SameNode):
            validate_matrix([[2, -1], [-1, 2]]).label(1, 1)

    @settings(max_examples=30, deadline=None)
    @given(tree_graphs())
    def test_label_symmetric(self, g):
        for i in range(g.n):
            for j in range(g.n):
                if i != j:
                    assert g.label(i, j) == g.label(j, i)


class TestOddStructure:
    def test_odd_asymmetry_flagged(self, a2_asym):
        assert a2_asym.odd_asymmetries() == ((0, 1),)

    def test_symmetric_edge_not_flagged(self):
        assert validate_matrix([[2, -1], [-1, 2]]).odd_asymmetries() == ()

    def test_even_label_not_an_odd_asymmetry(self, fig2):
        assert fig2.odd_asymmetries() == ()

    def test_a3_single_component(self):
        g = validate_matrix([[2, -1, 0], [-1, 2, -1], [0, -1, 2]])
        assert g.on_components() == (frozenset({0, 1, 2}),)

    def test_even_edge_splits_components(self, fig2):
        assert fig2.on_components() == (frozenset({0}), frozenset({1}))

    def test_f4_two_components(self):
        from numbersgame import template

        assert set(template("F4").on_components()) == {
            frozenset({0, 1}),
            frozenset({2, 3}),
        }


class TestOnPaths:
    def test_single_node_path(self, a2_asym):
        p = a2_asym.on_path([0])
        assert p.product == 1.0 and p.word == ()

    def test_transport_factor_value(self, a2_asym):
        # q / (2 cos(pi/3)) = 2 for the 1/2, 2 split
        p = a2_asym.on_path([0, 1])
        assert p.product == pytest.approx(2.0)

    def test_forth_and_back_cancels(self, a2_asym):
        p = a2_asym.on_path([0, 1, 0])
        assert p.product == pytest.approx(1.0)

    def test_even_edge_refused(self, fig2):
        with pytest.raises(NotOddNeighborly):
            fig2.on_path([0, 1])

    @settings(max_examples=30, deadline=None)
    @given(tree_graphs())
    def test_transport_invariant(self, g):
        # acting with the path word on the start direction scales the end one
        for comp in g.on_components():
            nodes = sorted(comp)
            if len(nodes) < 2:
                continue
            path = _some_on_path(g, nodes[0], nodes[-1])
            p = g.on_path(path)
            image = act(g, p.word, simple_root(g, p.start))
            expected = tuple(x * p.product for x in simple_root(g, p.end))
            assert image == pytest.approx(expected, abs=1e-9)


def _some_on_path(g, start, goal):
    odd = {}
    for i, j in g.odd_edges():
        odd.setdefault(i, []).append(j)
        odd.setdefault(j, []).append(i)
    prev = {start: None}
    queue = [start]
    while queue:
        v = queue.pop(0)
        for u in odd.get(v, ()):
            if u not in prev:
                prev[u] = v
                queue.append(u)
    path = [goal]
    while prev[path[-1]] is not None:
        path.append(prev[path[-1]])
    return list(reversed(path))


class TestUnital:
    def test_tree_always_unital(self, a2_asym):
        ok, witness = a2_asym.is_unital_on_cyclic()
        assert ok and witness is None

    def test_consistent_triangle_fails_with_product_8(self):
        g = validate_matrix([[2, -0.5, -2], [-2, 2, -0.5], [-0.5, -2, 2]])
        ok, witness = g.is_unital_on_cyclic()
        assert not ok
        assert witness.product == pytest.approx(8.0)
        assert witness.nodes[0] == witness.nodes[-1]

    def test_no_odd_asymmetries_implies_unital(self):
        g = validate_matrix([[2, -1, -1], [-1, 2, -1], [-1, -1, 2]])
        ok, _ = g.is_unital_on_cyclic()
        assert ok

    @settings(max_examples=30, deadline=None)
    @given(tree_graphs())
    def test_trees_unital(self, g):
        ok, _ = g.is_unital_on_cyclic()
        assert ok


class TestSerialization:
    def test_canonical_roundtrip(self, a2_asym):
        doc = a2_asym.to_json()
        assert set(doc) == {"n", "amplitudes"}
        again = EGCMGraph.from_json(doc)
        assert again.rows == a2_asym.rows

    def test_edge_sugar_form(self):
        doc = {"n": 2, "edges": [{"i": 1, "j": 2, "p": 1.0, "q": 2.0}]}
        g = EGCMGraph.from_json(doc)
        assert g.amplitudes[0, 1] == -1.0 and g.amplitudes[1, 0] == -2.0
        assert g.label(0, 1) == 4

    def test_edge_sugar_with_label(self):
        product = 4 * math.cos(math.pi / 500) ** 2
        doc = {"n": 2, "edges": [{"i": 1, "j": 2, "p": 1.0, "q": product, "m": 500}]}
        assert EGCMGraph.from_json(doc).label(0, 1) == 500

    def test_bad_documents(self, tmp_path):
        with pytest.raises(ParseError):
            EGCMGraph.from_json({"n": 2})
        with pytest.raises(ParseError):
            EGCMGraph.from_json({"n": 2, "amplitudes": [[2, -1]]})
        path = tmp_path / "bad.json"
        path.write_text("{not json")
        with pytest.raises(ParseError):
            EGCMGraph.from_file(path)

    def test_file_roundtrip(self, tmp_path, fig2):
        path = tmp_path / "g.json"
        path.write_text(json.dumps(fig2.to_json()))
        assert EGCMGraph.from_file(path).rows == fig2.rows

    def test_disconnected_accepted_by_validation(self):
        g = validate_matrix([[2, 0], [0, 2]])
        assert g.edges == ()
        assert not g.is_connected()
