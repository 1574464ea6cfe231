"""Tests for the polynomial-tensor-standard module and the induced
matrix representation of the reduction algebra."""

from fractions import Fraction

import pytest

from ospz.coeffs import H, RationalFunction, Sqrt2
from ospz.uea import T1, TILDE_GENS, TN1, X1, X2, XN1, XN2
from ospz.zalgebra import Z1, Z2, ZH, ZN1, ZN2, ZElement
from ospz.rep import (
    IrrepData,
    ModuleVector,
    NotPrimitive,
    PolyModule,
    TensorModule,
    TruncationOverflow,
    check_rep_relations,
    irreducibility_witness,
    span_dim,
)

SQRT2 = Sqrt2(0, 1)


def w1():
    return ModuleVector.basis(0, 2)


def w2():
    return ModuleVector.basis(0, 0) + ModuleVector.basis(1, 2).scale(SQRT2)


def w3():
    return (
        ModuleVector.basis(0, 1)
        - ModuleVector.basis(1, 0).scale(SQRT2)
        + ModuleVector.basis(2, 2)
    )


@pytest.fixture(scope="module")
def module():
    return TensorModule.standard(trunc=6)


class TestIrrepData:
    @pytest.mark.parametrize("lam", [0, 1, 2, 3])
    def test_defining_relations(self, lam):
        irrep = IrrepData.from_highest_weight(lam)
        irrep.validate()
        assert irrep.dimension == 2 * lam + 1

    def test_standard_copy_is_valid(self):
        irrep = IrrepData.standard()
        irrep.validate()
        assert sorted(
            irrep.h_eigenvalue(j) for j in range(3)
        ) == [-1, 0, 1]


class TestPolyModule:
    def test_cartan_spectrum(self):
        poly = PolyModule(6)
        assert [poly.h_eigenvalue(k) for k in range(3)] == [
            Fraction(1, 2),
            Fraction(3, 2),
            Fraction(5, 2),
        ]

    def test_ladder_bracket_is_cartan(self):
        # the anticommutator {x_alpha, x_-alpha} acts as h on x^k
        poly = PolyModule(6)
        for k in range(5):
            deg, c1 = poly.act(-1, k)
            _, c2 = poly.act(1, deg)
            total = c1 * c2
            if k > 0:
                deg, d1 = poly.act(1, k)
                _, d2 = poly.act(-1, deg)
                total = total + d1 * d2
            assert total == Sqrt2(poly.h_eigenvalue(k)), k

    def test_truncation_overflow(self):
        poly = PolyModule(2)
        with pytest.raises(TruncationOverflow):
            poly.act(-1, 2)


class TestTensorModule:
    def test_weight_compatibility(self, module):
        v = ModuleVector.basis(2, 1)
        mu = module.weight(2, 1)
        for g, root in ((XN2, -2), (XN1, -1), (X1, 1), (X2, 2)):
            image = module.act_gen(g, v)
            for k, i in image.coords:
                assert module.weight(k, i) == mu - root, g

    def test_supercommutators_hold_on_vectors(self, module):
        # spot-check the module property [a, b] v = a(bv) -+ b(av) for the
        # doubled algebra acting through the tensor construction
        from ospz.uea import GENERATORS, UeaElement, super_bracket

        probes = [ModuleVector.basis(k, i) for k in range(3) for i in range(3)]
        gens = (XN2, XN1, X1, X2, TILDE_GENS[0], TN1, T1)
        for a in gens:
            for b in gens:
                bracket = super_bracket(UeaElement.gen(a), UeaElement.gen(b))
                sign = -1 if (GENERATORS[a].odd and GENERATORS[b].odd) else 1
                for v in probes:
                    direct = module.act_uea(bracket, v)
                    ab = module.act(a, module.act(b, v))
                    ba = module.act(b, module.act(a, v))
                    two_sided = ab - ba.scale(Sqrt2(sign))
                    assert direct == two_sided, (a, b)

    def test_primitive_window(self, module):
        prims = module.primitive_vectors([Fraction(-1, 2), Fraction(1, 2)])
        assert len(prims) == 2
        support = [(0, 2), (0, 0), (1, 2)]
        rows = [
            [v.coords.get(key, Sqrt2(0)) for key in support]
            for v in prims + [w1(), w2()]
        ]
        assert span_dim(rows) == 2

    def test_full_primitive_space_is_three_dimensional(self, module):
        weights = [Fraction(2 * n - 1, 2) for n in range(0, 5)]
        prims = module.primitive_vectors(weights)
        assert len(prims) == 3
        # the third primitive vector sits at weight 3/2
        v3 = prims[2]
        assert all(module.weight(k, i) == Fraction(3, 2) for k, i in v3.coords)
        assert module.is_primitive(v3)

    def test_projector_fixes_primitives_and_kills_translates(self, module):
        assert module.apply_projector(w1()) == w1()
        assert module.apply_projector(w2()) == w2()
        lowered = module.act(XN1, w1())
        assert not module.apply_projector(lowered)

    def test_act_z_requires_primitive(self, module):
        with pytest.raises(NotPrimitive):
            module.act_z(ZElement.gen(Z1), ModuleVector.basis(1, 1))


class TestRho:
    @pytest.fixture()
    def rho(self, module):
        basis = [w1(), w2(), w3()]
        return {
            g: module.rho_matrix(ZElement.gen(g), basis) for g in range(5)
        }

    def test_corner_blocks_match_published_displays(self, rho):
        def corner(m):
            return [[m[i][j] for j in range(2)] for i in range(2)]

        z = Sqrt2(0)
        two = Sqrt2(2)
        assert corner(rho[Z1]) == [[z, two], [z, z]]
        assert corner(rho[ZN1]) == [[z, z], [two, z]]
        assert corner(rho[Z2]) == [[z, z], [z, z]]
        assert corner(rho[ZN2]) == [[z, z], [z, z]]
        assert corner(rho[ZH]) == [
            [Sqrt2(Fraction(3, 2)), z],
            [z, Sqrt2(Fraction(9, 2))],
        ]

    def test_full_matrices(self, rho):
        # the action does not vanish on the full primitive space: E(-2)
        # and E(-1) reach the weight-3/2 primitive vector
        assert rho[ZN2][2][0] == Sqrt2(-2)
        assert rho[ZN1][2][1] == Sqrt2(-6)
        assert rho[Z2][0][2] == Sqrt2(-2)
        assert rho[ZH][2][2] == Sqrt2(Fraction(-9, 2))

    def test_all_relation_families_hold_as_matrix_identities(self, rho):
        eigen = [Fraction(-1, 2), Fraction(1, 2), Fraction(3, 2)]
        report = check_rep_relations(rho, eigen)
        assert report["passed"], [
            c["name"] for c in report["checks"] if not c["pass"]
        ]

    def test_published_two_by_two_block_does_not_close(self):
        # Substituting the published 2x2 matrices alone into the relations
        # fails: the representation genuinely needs the third primitive
        # vector.
        z = Sqrt2(0)
        two = Sqrt2(2)
        rho2 = {
            Z1: [[z, two], [z, z]],
            ZN1: [[z, z], [two, z]],
            Z2: [[z, z], [z, z]],
            ZN2: [[z, z], [z, z]],
            ZH: [[Sqrt2(Fraction(3, 2)), z], [z, Sqrt2(Fraction(9, 2))]],
        }
        report = check_rep_relations(rho2, [Fraction(-1, 2), Fraction(1, 2)])
        assert not report["passed"]

    def test_irreducibility(self, rho):
        assert irreducibility_witness(rho, 3)

    def test_rho_of_coefficient_is_diagonal_evaluation(self, module):
        f = RationalFunction(1, H - 1)
        for v, mu in ((w1(), Fraction(-1, 2)), (w2(), Fraction(1, 2))):
            assert module.act_coeff(f, v) == v.scale(Sqrt2(f.eval(mu)))
