import random

import pytest

from qmat.context import build_context
from qmat.derivations import (
    DerivationSpec,
    _weighted_basis,
    ad,
    annihilates_qdet,
    basis_derivation,
    central_scaling_spec,
    check_derivation,
    check_z_condition,
    decompose_torus_derivation,
    express_hh1,
    gl_express,
    is_derivation,
    leibniz_extend,
    lift_to_torus,
    mu_sum_constraint,
    sl_basis_derivation,
    zero_derivation,
)
from qmat.errors import (
    InconsistentDecompositionError,
    IndexOutOfRangeError,
    NotADerivationError,
)
from qmat.matrixalg import MatrixAlgebraElement, qdet
from qmat.rational import RF_ONE, RationalFunction
from qmat.torus import TorusElement, delta_element
from qmat.tower import build_table, embed


@pytest.fixture(scope="module")
def t2():
    return build_table(build_context(2))


@pytest.fixture(scope="module")
def t3():
    return build_table(build_context(3))


def Y(ctx, i, a):
    return MatrixAlgebraElement.generator(ctx, (i, a))


def T(ctx, i, a):
    return TorusElement.generator(ctx, (i, a))


class TestLeibniz:
    def test_scaling_weights_cancel(self):
        ctx = build_context(2)
        d = basis_derivation(ctx, 2)
        # weights +1 on Y11 and -1 on Y22 cancel on the product
        assert leibniz_extend(d, Y(ctx, 1, 1) * Y(ctx, 2, 2)).is_zero()

    def test_derivation_kills_one(self):
        ctx = build_context(2)
        d = basis_derivation(ctx, 1)
        assert leibniz_extend(d, MatrixAlgebraElement.one(ctx)).is_zero()

    def test_ad_commutator_in_torus(self):
        ctx = build_context(2)
        d = ad(T(ctx, 1, 1))
        got = leibniz_extend(d, T(ctx, 1, 2))
        expected = (T(ctx, 1, 1) * T(ctx, 1, 2)).scale(
            RF_ONE - RationalFunction.q_power(-1)
        )
        assert got == expected

    def test_inverse_powers(self):
        ctx = build_context(2)
        d = ad(T(ctx, 1, 1))
        t12 = T(ctx, 1, 2)
        inv_image = leibniz_extend(
            d, t12.invert_monomial()
        )
        # D(t^-1) = -t^-1 D(t) t^-1
        expected = (
            t12.invert_monomial() * leibniz_extend(d, t12) * t12.invert_monomial()
        ).scale(-RF_ONE)
        assert inv_image == expected

    def test_product_rule_random(self):
        ctx = build_context(2)
        rng = random.Random(1)
        d = basis_derivation(ctx, 3) + ad(Y(ctx, 2, 1))
        gens = [Y(ctx, i, a) for (i, a) in ctx.generators]
        for _ in range(10):
            x = rng.choice(gens) * rng.choice(gens)
            y = rng.choice(gens) + rng.choice(gens)
            assert leibniz_extend(d, x * y) == leibniz_extend(d, x) * y + (
                x * leibniz_extend(d, y)
            )


class TestCheckDerivation:
    def test_basis_all_pass(self):
        for n in (2, 3):
            ctx = build_context(n)
            for j in range(1, 2 * n):
                assert is_derivation(basis_derivation(ctx, j))

    def test_inner_passes(self):
        ctx = build_context(2)
        assert is_derivation(ad(Y(ctx, 1, 1)))

    def test_bad_diagonal_fails_on_cross_relation(self):
        ctx = build_context(2)
        # weight 1 on Y11 only violates the interchange condition
        images = {
            gen: Y(ctx, *gen) if gen == (1, 1) else MatrixAlgebraElement(ctx)
            for gen in ctx.generators
        }
        report = check_derivation(DerivationSpec(ctx, "Mq", images))
        failed = [e["pair"] for e in report if not e["ok"]]
        assert failed == [((2, 2), (1, 1))]

    def test_torus_relations(self):
        ctx = build_context(2)
        assert is_derivation(ad(T(ctx, 1, 1)))
        assert is_derivation(
            central_scaling_spec(
                ctx, {gen: delta_element(ctx, 2) for gen in ctx.generators}
            )
        )


class TestBasisDerivations:
    def test_n2_column_fixing(self):
        ctx = build_context(2)
        d = basis_derivation(ctx, 1)
        assert d.images[(1, 2)] == Y(ctx, 1, 2)
        assert d.images[(2, 2)] == Y(ctx, 2, 2)
        assert d.images[(1, 1)].is_zero()
        assert d.images[(2, 1)].is_zero()

    def test_n2_middle(self):
        ctx = build_context(2)
        d = basis_derivation(ctx, 2)
        assert d.images[(1, 1)] == Y(ctx, 1, 1)
        assert d.images[(2, 2)] == Y(ctx, 2, 2).scale(-RF_ONE)
        assert d.images[(1, 2)].is_zero()
        assert d.images[(2, 1)].is_zero()

    def test_n2_row_fixing(self):
        ctx = build_context(2)
        d = basis_derivation(ctx, 3)
        assert d.images[(2, 1)] == Y(ctx, 2, 1)
        assert d.images[(2, 2)] == Y(ctx, 2, 2)
        assert d.images[(1, 1)].is_zero()

    def test_index_range(self):
        ctx = build_context(2)
        with pytest.raises(IndexOutOfRangeError):
            basis_derivation(ctx, 0)
        with pytest.raises(IndexOutOfRangeError):
            basis_derivation(ctx, 4)


class TestZCondition:
    def test_all_equal_passes(self):
        ctx = build_context(2)
        one = TorusElement.one(ctx)
        z = {gen: one for gen in ctx.generators}
        assert check_z_condition(ctx, z)

    def test_single_corner_fails(self):
        ctx = build_context(2)
        z = {gen: TorusElement(ctx) for gen in ctx.generators}
        z[(1, 1)] = TorusElement.one(ctx)
        assert not check_z_condition(ctx, z)

    def test_basis_weight_patterns_pass(self):
        ctx = build_context(3)
        for j in range(1, 6):
            base = basis_derivation(ctx, j)
            z = {}
            for gen in ctx.generators:
                w = base.images[gen]
                coeff = next(iter(w.terms.values()), None)
                z[gen] = (
                    TorusElement.scalar(ctx, coeff)
                    if coeff is not None
                    else TorusElement(ctx)
                )
            assert check_z_condition(ctx, z)


class TestLift:
    def test_lift_d1_n2(self, t2):
        ctx = t2.ctx
        lifted = lift_to_torus(t2, basis_derivation(ctx, 1))
        assert lifted.images[(1, 2)] == T(ctx, 1, 2)
        assert lifted.images[(2, 2)] == T(ctx, 2, 2)
        assert lifted.images[(1, 1)].is_zero()
        assert lifted.images[(2, 1)].is_zero()

    def test_lift_dn_weight_table_n2(self, t2):
        # the lifted diagonal derivation scales T(i,a) by the dictionary
        # weight mu(1,a) + mu(i,1) - mu(1,1) with unit entries
        ctx = t2.ctx
        lifted = lift_to_torus(t2, basis_derivation(ctx, 2))
        assert lifted.images[(1, 1)] == T(ctx, 1, 1)
        assert lifted.images[(1, 2)].is_zero()
        assert lifted.images[(2, 1)].is_zero()
        assert lifted.images[(2, 2)] == T(ctx, 2, 2).scale(-RF_ONE)

    def test_lift_inner_is_inner(self, t2):
        ctx = t2.ctx
        x = Y(ctx, 1, 1)
        lifted = lift_to_torus(t2, ad(x))
        assert lifted == ad(embed(t2, x))

    def test_lift_satisfies_torus_relations(self, t3):
        ctx = t3.ctx
        lifted = lift_to_torus(t3, basis_derivation(ctx, 4))
        assert is_derivation(lifted)

    def test_lift_rejects_non_derivation(self, t2):
        ctx = t2.ctx
        images = {
            gen: Y(ctx, *gen) if gen == (1, 1) else MatrixAlgebraElement(ctx)
            for gen in ctx.generators
        }
        with pytest.raises(NotADerivationError):
            lift_to_torus(t2, DerivationSpec(ctx, "Mq", images))


class TestDecompose:
    def test_inner_round_trip(self):
        ctx = build_context(2)
        x = T(ctx, 1, 1)
        dec = decompose_torus_derivation(ad(x))
        assert dec.x == x
        assert all(z.is_zero() for z in dec.z.values())

    def test_purely_central(self):
        ctx = build_context(2)
        weight = delta_element(ctx, 2)
        d = central_scaling_spec(ctx, {gen: weight for gen in ctx.generators})
        dec = decompose_torus_derivation(d)
        assert dec.x.is_zero()
        assert all(z == weight for z in dec.z.values())

    def test_central_summand_dropped(self):
        ctx = build_context(2)
        x = T(ctx, 1, 1) + delta_element(ctx, 2)
        dec = decompose_torus_derivation(ad(x))
        assert dec.x == T(ctx, 1, 1)
        assert all(z.is_zero() for z in dec.z.values())

    def test_inconsistent_input_rejected(self):
        ctx = build_context(2)
        # images that satisfy no Leibniz structure
        images = {gen: T(ctx, 2, 2) for gen in ctx.generators}
        with pytest.raises(InconsistentDecompositionError):
            decompose_torus_derivation(DerivationSpec(ctx, "torus", images))


class TestExpress:
    def test_basis_unit_coordinates(self, t2):
        ctx = t2.ctx
        for j in range(1, 4):
            coords = express_hh1(t2, basis_derivation(ctx, j))
            assert coords.inner.is_zero()
            for k in range(1, 4):
                assert coords.mu[k - 1] == ({0: RF_ONE} if k == j else {})

    def test_inner_coordinates(self, t2):
        ctx = t2.ctx
        coords = express_hh1(t2, ad(Y(ctx, 1, 2)))
        assert all(not m for m in coords.mu)
        assert coords.inner == Y(ctx, 1, 2)

    def test_det_weighted_basis(self, t2):
        ctx = t2.ctx
        d = _weighted_basis(ctx, 1, {1: RF_ONE})
        coords = express_hh1(t2, d)
        assert coords.mu[0] == {1: RF_ONE}
        assert coords.mu[1] == {} and coords.mu[2] == {}
        assert coords.inner.is_zero()

    def test_zero_spec(self, t2):
        coords = express_hh1(t2, zero_derivation(t2.ctx, "Mq"))
        assert coords.inner.is_zero() and all(not m for m in coords.mu)

    def test_mixed_recovery(self, t3):
        ctx = t3.ctx
        x = Y(ctx, 1, 2) * Y(ctx, 2, 1)
        d = ad(x) + _weighted_basis(ctx, 4, {0: RationalFunction.q_power(2)})
        coords = express_hh1(t3, d)
        assert coords.mu[3] == {0: RationalFunction.q_power(2)}
        assert sum(len(m) for k, m in enumerate(coords.mu) if k != 3) == 0
        assert (ad(coords.inner) - ad(x)).is_zero()


class TestSL:
    def test_n2_combinations(self):
        ctx = build_context(2)
        d1 = sl_basis_derivation(ctx, 1)
        assert d1 == basis_derivation(ctx, 1) - basis_derivation(ctx, 3)
        assert sl_basis_derivation(ctx, 2) == basis_derivation(ctx, 2)
        with pytest.raises(IndexOutOfRangeError):
            sl_basis_derivation(ctx, 3)

    def test_n3_combination(self):
        ctx = build_context(3)
        d = sl_basis_derivation(ctx, 1)
        assert d == basis_derivation(ctx, 1) + basis_derivation(ctx, 3)
        with pytest.raises(IndexOutOfRangeError):
            sl_basis_derivation(ctx, 3)

    def test_annihilation(self):
        for n in (2, 3):
            ctx = build_context(n)
            indices = [1, 2] if n == 2 else [i for i in range(1, 2 * n) if i != n]
            for i in indices:
                assert annihilates_qdet(sl_basis_derivation(ctx, i))

    def test_d1_alone_does_not_annihilate(self):
        ctx = build_context(2)
        assert not annihilates_qdet(basis_derivation(ctx, 1))

    def test_mu_sum_constraint(self, t3):
        ctx = t3.ctx
        for i in (1, 2, 4, 5):
            coords = express_hh1(t3, sl_basis_derivation(ctx, i))
            assert mu_sum_constraint(coords)
        assert not mu_sum_constraint(express_hh1(t3, basis_derivation(ctx, 1)))


class TestGL:
    def test_inverse_det_weight(self, t2):
        ctx = t2.ctx
        det_inv = embed(t2, qdet(ctx)).invert_monomial()
        base = basis_derivation(ctx, 1)
        images = {
            gen: det_inv * embed(t2, base.images[gen])
            for gen in ctx.generators
        }
        d = DerivationSpec(ctx, "torus", images)
        coords = gl_express(t2, d, 1)
        assert coords.mu[0] == {-1: RF_ONE}
        assert coords.mu[1] == {} and coords.mu[2] == {}
        assert coords.det_shift == -1

    def test_k_zero_matches_express(self, t2):
        ctx = t2.ctx
        d = basis_derivation(ctx, 2)
        coords = gl_express(t2, d, 0)
        direct = express_hh1(t2, d)
        assert coords.mu == direct.mu
        assert coords.det_shift == 0

    def test_inner_with_central_unit(self, t2):
        ctx = t2.ctx
        det_inv = embed(t2, qdet(ctx)).invert_monomial()
        x = embed(t2, Y(ctx, 1, 1)) * det_inv
        # images on the algebra generators, computed through the embedding
        images = {}
        for gen in ctx.generators:
            g = embed(t2, Y(ctx, *gen))
            images[gen] = x * g - g * x
        spec = DerivationSpec(ctx, "torus", images)
        coords = gl_express(t2, spec, 1)
        assert all(not m for m in coords.mu)
