import pytest

from qmat.context import build_context
from qmat.derivations import ad, basis_derivation, express_hh1
from qmat.errors import DimensionMismatchError, ParseError
from qmat.matrixalg import MatrixAlgebraElement, qdet
from qmat.rational import RationalFunction
from qmat.serialize import (
    derivation_from_json,
    derivation_to_json,
    det_poly_from_json,
    det_poly_to_json,
    element_from_json,
    element_to_json,
    hh1_to_json,
    rf_from_json,
)
from qmat.torus import TorusElement
from qmat.tower import build_table


class TestElements:
    def test_matrix_round_trip(self):
        ctx = build_context(2)
        x = qdet(ctx) + MatrixAlgebraElement.generator(ctx, (1, 2)).scale(
            RationalFunction.q_power(-1)
        )
        data = element_to_json(x)
        assert data["alg"] == "Mq"
        assert element_from_json(data) == x

    def test_torus_round_trip(self):
        ctx = build_context(3)
        x = TorusElement.monomial(
            ctx, (1, 0, -2, 0, 3, 0, 0, 0, -1), RationalFunction.from_fraction(2, 7)
        )
        data = element_to_json(x)
        assert data["alg"] == "torus"
        assert element_from_json(data) == x

    def test_sparse_triples(self):
        ctx = build_context(2)
        x = TorusElement.monomial(ctx, (0, 2, 0, -1))
        data = element_to_json(x)
        assert data["terms"][0]["exp"] == [[1, 2, 2], [2, 2, -1]]

    def test_dimension_mismatch(self):
        ctx = build_context(2)
        data = element_to_json(TorusElement.one(ctx))
        with pytest.raises(DimensionMismatchError):
            element_from_json(data, n=3)

    def test_algebra_mismatch(self):
        ctx = build_context(2)
        data = element_to_json(TorusElement.one(ctx))
        with pytest.raises(DimensionMismatchError):
            element_from_json(data, alg="Mq")

    def test_negative_exponent_rejected_for_matrix_algebra(self):
        data = {
            "n": 2,
            "alg": "Mq",
            "terms": [{"exp": [[1, 1, -1]], "coeff": {"num": [1], "den": [1]}}],
        }
        with pytest.raises(ParseError):
            element_from_json(data)

    def test_malformed_inputs(self):
        for bad in (
            [],
            {"n": "x", "terms": []},
            {"n": 2, "terms": [{"exp": [[0, 1, 1]], "coeff": {"num": [1], "den": [1]}}]},
            {"n": 2, "terms": [{"exp": [], "coeff": {"num": [1], "den": []}}]},
            {"n": 2, "alg": "weird", "terms": []},
        ):
            with pytest.raises(ParseError):
                element_from_json(bad)

    def test_rf_validation(self):
        with pytest.raises(ParseError):
            rf_from_json({"num": [1]})
        with pytest.raises(ParseError):
            rf_from_json({"num": ["x"], "den": [1]})
        with pytest.raises(ParseError):
            rf_from_json({"num": [1], "den": [0]})


class TestDerivations:
    def test_round_trip(self):
        ctx = build_context(2)
        d = basis_derivation(ctx, 2) + ad(
            MatrixAlgebraElement.generator(ctx, (1, 2))
        )
        data = derivation_to_json(d)
        assert derivation_from_json(data) == d

    def test_torus_round_trip(self):
        ctx = build_context(2)
        d = ad(TorusElement.monomial(ctx, (0, 1, 0, -1)))
        assert derivation_from_json(derivation_to_json(d)) == d

    def test_mixed_dimensions_rejected(self):
        ctx2, ctx3 = build_context(2), build_context(3)
        data = derivation_to_json(basis_derivation(ctx2, 1))
        data["images"][0]["value"] = element_to_json(qdet(ctx3))
        with pytest.raises(DimensionMismatchError):
            derivation_from_json(data)

    def test_bad_alg(self):
        with pytest.raises(ParseError):
            derivation_from_json({"alg": "nope", "images": []})


class TestHH1:
    def test_shape(self):
        ctx = build_context(2)
        table = build_table(ctx)
        coords = express_hh1(table, basis_derivation(ctx, 1))
        data = hh1_to_json(coords)
        assert set(data) == {"inner", "mu"}
        assert data["mu"][0] == [[0, {"num": [1], "den": [1]}]]
        assert data["mu"][1] == [] and data["mu"][2] == []
        assert data["inner"]["terms"] == []

    def test_det_poly_round_trip(self):
        p = {0: RationalFunction.q_power(1), 2: RationalFunction.from_int(-3)}
        assert det_poly_from_json(det_poly_to_json(p)) == p
