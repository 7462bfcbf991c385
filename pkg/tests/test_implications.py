import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from acri.connectives import (
    BottomNegation,
    LukasiewiczTConorm,
    LukasiewiczTNorm,
    Maximum,
    Minimum,
    Product,
    ProbabilisticSum,
    StandardNegation,
)
from acri.errors import SpecError
from acri.generators import Generator, IdentityAutomorphism
from acri.implications import (
    AnImplication,
    ArchimedeanCopula,
    FImplication,
    FunctionImplication,
    GImplication,
    Lukasiewicz,
    LukasiewiczCopula,
    Probabilistic,
    ProbabilisticS,
    ProductCopula,
    QLOperation,
    Reichenbach,
    RImplication,
    TabulatedImplication,
    TPower,
    builtin_implications,
    check_copula,
    contrapositivise,
    eval_implication,
    implication_axioms,
    meet_join_conjugate,
    natural_negation,
    profile_implication,
)

Nc = StandardNegation()
unit = st.floats(0.0, 1.0)
I_LK, I_RC = Lukasiewicz(), Reichenbach()
YAGER = FImplication(Generator.of("neg-log", "f-generator"))
G_ID = GImplication(Generator.of("identity", "g-generator"))
T_LN = TPower(Generator.of("neg-log", "tnorm-additive"))


class TestValues:
    def test_reichenbach(self):
        assert eval_implication(I_RC, 0.9, 0.3) == pytest.approx(0.37)

    def test_yager(self):
        assert YAGER(0.5, 0.25) == pytest.approx(0.5)
        assert YAGER(0.0, 0.0) == 1.0  # 0 * inf = 0

    def test_lukasiewicz_left_neutral(self, grid101):
        assert all(I_LK(1.0, y) == pytest.approx(y, abs=1e-15) for y in grid101)

    def test_tpower_archimedean(self):
        assert T_LN(0.5, 0.8) == 1.0
        assert T_LN(0.8, 0.64) == pytest.approx(0.5)
        # t(x)/t(y) = ln 0.8 / ln 0.5 for x > y
        assert T_LN(0.8, 0.5) == pytest.approx(math.log(0.8) / math.log(0.5))
        assert T_LN(0.3, 0.0) == 0.0

    def test_tpower_min_is_two_valued(self, grid101):
        t = TPower()
        assert all(t(x, y) == (1.0 if x <= y else 0.0) for x, y in grid101.pairs())

    def test_g_implication_goguen_like(self):
        assert G_ID(0.5, 0.2) == pytest.approx(0.4)
        assert G_ID(0.0, 0.0) == 1.0
        assert G_ID(0.2, 0.5) == 1.0

    def test_an_implication_requires_disjunctor(self):
        with pytest.raises(SpecError):
            AnImplication(Minimum(), Nc)
        assert AnImplication(Maximum(), Nc)(0.3, 0.5) == pytest.approx(0.7)

    def test_r_implication_of_lukasiewicz(self, grid101):
        r = RImplication(LukasiewiczTNorm())
        assert all(abs(r(x, y) - I_LK(x, y)) <= 1e-6 for x, y in grid101.pairs())
        assert not r.exact

    def test_r_implication_goedel(self):
        r = RImplication(Minimum())
        assert r(0.6, 0.3) == pytest.approx(0.3, abs=1e-9)
        assert r(0.3, 0.6) == 1.0

    def test_ql_operation(self):
        q = QLOperation(LukasiewiczTConorm(), Product(), Nc)
        assert q(0.6, 0.5) == pytest.approx(I_RC(0.6, 0.5))

    def test_ql_operation_rejects_non_implication(self):
        # Zadeh's QL-operation max(1 - x, min(x, y)) is not decreasing in x
        with pytest.raises(SpecError):
            QLOperation(Maximum(), Minimum(), Nc)

    def test_probabilistic_families(self, grid101):
        pp = Probabilistic(ProductCopula())
        sw = ProbabilisticS(LukasiewiczCopula())
        for x, y in grid101.pairs():
            if x > 0:
                assert pp(x, y) == pytest.approx(y, abs=1e-9)
            assert sw(x, y) == pytest.approx(max(y, 1 - x), abs=1e-9)
        assert pp(0.0, 0.3) == 1.0

    def test_probabilistic_rejects_copula_violating_i1(self):
        # C(x,y)/x for W is not decreasing in x
        with pytest.raises(SpecError):
            Probabilistic(LukasiewiczCopula())

    def test_f_one_minus_equals_reichenbach(self, grid101):
        f = FImplication(Generator.of("one-minus", "f-generator"))
        assert all(abs(f(x, y) - I_RC(x, y)) <= 1e-9 for x, y in grid101.pairs())

    def test_tabulated(self):
        t = TabulatedImplication((0.0, 1.0), (0.0, 1.0), ((1.0, 1.0), (0.0, 1.0)))
        assert t(0.5, 0.5) == pytest.approx(0.75)


class TestCopulas:
    def test_archimedean_clayton(self):
        c = ArchimedeanCopula(Generator.of("clayton", theta=2.0))
        assert c(0.5, 1.0) == pytest.approx(0.5)
        assert c(0.5, 0.5) == pytest.approx((2 * 0.5**-2 - 1) ** -0.5)

    def test_check_copula_rejects_max(self):
        class Bad(ProductCopula):
            def __call__(self, x, y):
                return max(x, y) if min(x, y) > 0 else 0.0

        with pytest.raises(SpecError):
            check_copula(Bad())

    def test_builtin_copulas_valid(self, grid21):
        check_copula(ProductCopula(), grid21)
        check_copula(LukasiewiczCopula(), grid21)


class TestNaturalNegation:
    def test_lukasiewicz_gives_nc(self, grid101):
        n = natural_negation(I_LK)
        assert all(n(x) == pytest.approx(1 - x) for x in grid101)

    def test_g_implication_gives_bottom(self, grid101):
        n = natural_negation(G_ID)
        assert all(n(x) == BottomNegation()(x) for x in grid101)

    def test_probabilistic_s_product_gives_nc(self, grid101):
        n = natural_negation(ProbabilisticS(ProductCopula()))
        assert all(n(x) == pytest.approx(1 - x) for x in grid101)


class TestProfile:
    def test_lukasiewicz_has_everything(self, grid101):
        p = profile_implication(I_LK, Nc, grid101)
        assert p.np and p.ip and p.ep and p.op and p.cp and p.lb and p.rb
        assert p.witnesses == {}

    def test_reichenbach_lacks_op(self, grid101):
        p = profile_implication(I_RC, Nc, grid101)
        assert not p.op
        x, y = p.witnesses["op"]
        assert x <= y and I_RC(x, y) < 1

    def test_g_implication_lacks_cp(self, grid101):
        for n in (Nc, BottomNegation()):
            p = profile_implication(G_ID, n, grid101)
            assert not p.cp
            x, y = p.witnesses["cp"]
            assert G_ID(x, y) != G_ID(n(y), n(x))


class TestContrapositivisation:
    def test_branches(self):
        low = contrapositivise(I_RC, Nc, "lower")
        assert low(0.9, 0.3) == pytest.approx(0.37)
        assert low(0.3, 0.05) == pytest.approx(0.715)

    def test_result_satisfies_cp(self, grid101):
        for side in ("lower", "upper"):
            c = contrapositivise(G_ID, Nc, side)
            # 1 - (1 - x) may differ from x in the last bit
            assert all(abs(c(x, y) - c(Nc(y), Nc(x))) <= 1e-12 for x, y in grid101.pairs())

    def test_identity_on_cp_implications(self, grid101):
        c = contrapositivise(I_LK, Nc, "upper")
        assert all(abs(c(x, y) - I_LK(x, y)) <= 1e-12 for x, y in grid101.pairs())

    def test_non_strong_negation_warns(self):
        with pytest.warns(UserWarning):
            contrapositivise(I_LK, BottomNegation())


class TestAlgebra:
    def test_meet_value(self):
        assert meet_join_conjugate(I_LK, I_RC, "meet")(0.5, 0.5) == pytest.approx(0.75)

    def test_join_idempotent(self, grid21):
        j = meet_join_conjugate(I_RC, I_RC, "join")
        assert all(j(x, y) == I_RC(x, y) for x, y in grid21.pairs())

    def test_conjugate_identity(self, grid21):
        c = meet_join_conjugate(I_LK, IdentityAutomorphism(), "conjugate")
        assert all(c(x, y) == pytest.approx(I_LK(x, y)) for x, y in grid21.pairs())

    def test_unknown_operation(self):
        with pytest.raises(SpecError):
            meet_join_conjugate(I_LK, I_RC, "xor")


def test_function_implication_has_no_json_form():
    with pytest.raises(SpecError):
        FunctionImplication(lambda x, y: 1.0).to_dict()


def test_catalog_members_are_fuzzy_implications(grid101):
    for name, i in builtin_implications().items():
        axioms = implication_axioms(i, grid101)
        assert all(axioms.values()), (name, axioms)


def test_an_implication_from_probabilistic_sum():
    i = AnImplication(ProbabilisticSum(), Nc)
    assert i(0.5, 0.5) == pytest.approx(0.75)


@given(unit, unit, unit)
def test_catalog_monotonicity(x, y, z):
    lo, hi = sorted((y, z))
    for i in builtin_implications().values():
        assert i(lo, x) >= i(hi, x) - 1e-9
        assert i(x, lo) <= i(x, hi) + 1e-9
