import pytest

from composita.ring import XPoly, binom, rat
from composita.families import (
    CORRECTIONS,
    EGF_FAMILIES,
    FAMILY_NAMES,
    VARIANTS,
    FamilySpec,
    bernoulli_number,
    default_specs,
    family_closed,
    family_oracle,
    family_reference,
    laguerre_front_binomial,
    laguerre_front_stirling,
    verify_family,
)
from composita.families import _lerch_gf, _oracle_polys
from helpers import P, mono

PARAM_FREE_TO_20 = [
    ("chebyshev_t", {}),
    ("chebyshev_u", {}),
    ("legendre", {}),
    ("hermite", {}),
    ("abel", {"a": 1}),
    ("euler", {}),
    ("mahler", {}),
]

EXTRA_BINDINGS = [
    ("gegenbauer", {"alpha": 1}),
    ("gegenbauer", {"alpha": 2}),
    ("laguerre", {"alpha": 0}),
    ("laguerre", {"alpha": 2}),
    ("gen_bernoulli", {"alpha": rat(1, 2)}),
    ("humbert", {"lambda": 2}),
    ("humbert", {"lambda": rat(1, 2)}),
    ("lerch", {"lambda": rat(1, 2)}),
    ("narumi", {"alpha": rat(1, 2)}),
    ("peters", {"lambda": rat(1, 2), "mu": 3}),
    ("abel", {"a": 2}),
    ("abel", {"a": rat(-1, 2)}),
]


class TestSpec:
    def test_egf_flags(self):
        assert EGF_FAMILIES == {
            "hermite",
            "stirling_poly",
            "abel",
            "bernoulli2",
            "gen_bernoulli",
            "euler",
            "peters",
            "narumi",
            "mahler",
        }
        assert FamilySpec("hermite").egf
        assert not FamilySpec("legendre").egf

    def test_validation(self):
        with pytest.raises(ValueError):
            FamilySpec("chebyshev_v")
        with pytest.raises(ValueError):
            FamilySpec("gegenbauer")  # missing alpha
        with pytest.raises(ValueError):
            FamilySpec("legendre", {"alpha": 1})  # takes none
        with pytest.raises(ValueError):
            FamilySpec("abel", {"a": 0})
        with pytest.raises(ValueError):
            FamilySpec("peters", {"lambda": 2, "mu": rat(1, 2)})

    def test_variant_map(self):
        two = {name for name, v in VARIANTS.items() if v == (1, 2)}
        assert two == {
            "gegenbauer",
            "stirling_poly",
            "bernoulli2",
            "gen_bernoulli",
            "peters",
            "narumi",
            "humbert",
        }
        with pytest.raises(ValueError):
            family_closed(FamilySpec("chebyshev_t"), 2, 3)

    def test_default_specs_cover_all(self):
        assert [s.family for s in default_specs()] == list(FAMILY_NAMES)


class TestKnownValues:
    def test_worked_examples(self):
        assert family_closed(FamilySpec("chebyshev_t"), 1, 3) == P(0, -3, 0, 4)
        assert family_closed(FamilySpec("chebyshev_u"), 1, 2) == P(-1, 0, 4)
        assert family_closed(FamilySpec("legendre"), 1, 2) == P("-1/2", 0, "3/2")
        assert family_closed(FamilySpec("hermite"), 1, 2) == P(-2, 0, 4)
        assert family_closed(FamilySpec("abel", {"a": 1}), 1, 3) == P(0, 9, -6, 1)
        assert family_oracle(FamilySpec("legendre"), 0) == XPoly.one()
        assert family_closed(FamilySpec("gegenbauer", {"alpha": 1}), 1, 2) == P(-1, 0, 4)
        humbert3 = family_closed(FamilySpec("humbert", {"lambda": 1}), 2, 3)
        assert humbert3 == family_oracle(FamilySpec("humbert", {"lambda": 1}), 3)
        assert humbert3 == P(-1, 0, 0, 27)

    def test_bernoulli_numbers_at_zero(self):
        spec = FamilySpec("gen_bernoulli", {"alpha": 1})
        assert family_oracle(spec, 2).eval(0) == rat(1, 6)
        for n in range(13):
            assert family_oracle(spec, n).eval(0) == bernoulli_number(n)
            assert family_closed(spec, 1, n).eval(0) == bernoulli_number(n)

    def test_euler_complement_identity(self):
        spec = FamilySpec("euler")
        shift = P(1, 1)
        for n in range(11):
            e = family_closed(spec, 1, n)
            assert e + e.compose(shift) == mono(2, n)

    def test_abel_product_form(self):
        for a in (1, 2, rat(-1, 2)):
            spec = FamilySpec("abel", {"a": a})
            for n in range(11):
                assert family_oracle(spec, n) == family_reference(spec, n)
                assert family_closed(spec, 1, n) == family_reference(spec, n)

    def test_gegenbauer_degenerations(self):
        for n in range(11):
            assert family_closed(
                FamilySpec("gegenbauer", {"alpha": 1}), 1, n
            ) == family_closed(FamilySpec("chebyshev_u"), 1, n)
            assert family_closed(
                FamilySpec("gegenbauer", {"alpha": rat(1, 2)}), 1, n
            ) == family_closed(FamilySpec("legendre"), 1, n)

    def test_laguerre_front_forms_agree(self):
        for alpha in (0, 1, rat(1, 2), rat(-3, 4), 3):
            for i in range(13):
                assert laguerre_front_binomial(i, rat(alpha)) == laguerre_front_stirling(
                    i, rat(alpha)
                )


class TestVerification:
    @pytest.mark.parametrize("spec", default_specs(), ids=lambda s: s.label())
    def test_default_bindings_to_12(self, spec):
        for verdict in verify_family(spec, 12):
            assert verdict.status in ("match", "corrected-match"), verdict

    @pytest.mark.parametrize("family,params", EXTRA_BINDINGS)
    def test_extra_bindings_to_10(self, family, params):
        for verdict in verify_family(FamilySpec(family, params), 10):
            assert verdict.status in ("match", "corrected-match"), verdict

    @pytest.mark.parametrize("family,params", PARAM_FREE_TO_20)
    def test_parameter_free_families_to_20(self, family, params):
        spec = FamilySpec(family, params)
        oracle = _oracle_polys(spec, 20)
        for n in range(21):
            assert family_closed(spec, 1, n) == oracle[n]

    def test_corrected_families_are_exactly_the_known_four(self):
        assert set(CORRECTIONS) == {
            ("bernoulli2", 2),
            ("peters", 1),
            ("narumi", 1),
            ("lerch", 1),
        }

    def test_raw_transcriptions_demonstrably_diverge(self):
        b2 = FamilySpec("bernoulli2")
        assert family_closed(b2, 2, 2, "raw") != family_oracle(b2, 2)
        assert family_closed(b2, 2, 2) == family_oracle(b2, 2)
        pe = FamilySpec("peters", {"lambda": 2, "mu": -2})
        assert family_closed(pe, 1, 0, "raw") != family_oracle(pe, 0)
        assert family_closed(pe, 1, 0) == family_oracle(pe, 0) == XPoly.constant(4)
        na = FamilySpec("narumi", {"alpha": 1})
        assert family_closed(na, 1, 1, "raw") != family_oracle(na, 1)
        assert family_closed(na, 1, 1) == family_oracle(na, 1)
        # lerch: the formula is fine; the transcribed exponent sign is not
        raw_gf = _lerch_gf(4, rat(2), corrected_sign=False)
        le = FamilySpec("lerch", {"lambda": 2})
        assert raw_gf[1] != family_closed(le, 1, 1)
        assert family_oracle(le, 1) == family_closed(le, 1, 1)

    def test_raw_equals_corrected_elsewhere(self):
        for spec in default_specs():
            for variant in VARIANTS[spec.family]:
                if (spec.family, variant) in CORRECTIONS:
                    continue
                for n in range(7):
                    assert family_closed(spec, variant, n, "raw") == family_closed(
                        spec, variant, n
                    )

    def test_verdict_details(self):
        verdicts = {
            (v.variant): v for v in verify_family(FamilySpec("bernoulli2"), 8)
        }
        assert verdicts[1].status == "match"
        v2 = verdicts[2]
        assert v2.status == "corrected-match"
        assert v2.first_mismatch == 2
        assert "n!" in v2.note and "[n-i, k]" in v2.note
        data = v2.to_json()
        assert data["family"] == "bernoulli2" and data["status"] == "corrected-match"
        lerch = verify_family(FamilySpec("lerch", {"lambda": 2}), 8)[0]
        assert lerch.status == "corrected-match"
        assert "sign" in lerch.note

    def test_mode_validation(self):
        with pytest.raises(ValueError):
            family_closed(FamilySpec("euler"), 1, 2, "verbatim")
        with pytest.raises(ValueError):
            family_closed(FamilySpec("euler"), 1, -1)


class TestRecurrenceCrossChecks:
    @pytest.mark.parametrize(
        "family,params",
        [
            ("chebyshev_t", {}),
            ("chebyshev_u", {}),
            ("legendre", {}),
            ("hermite", {}),
            ("gegenbauer", {"alpha": rat(1, 2)}),
            ("gegenbauer", {"alpha": 1}),
            ("gegenbauer", {"alpha": 2}),
        ],
    )
    def test_three_term_to_20(self, family, params):
        spec = FamilySpec(family, params)
        for n in range(21):
            assert family_closed(spec, 1, n) == family_reference(spec, n)

    def test_reference_none_where_absent(self):
        for name in ("euler", "mahler", "lerch", "peters", "narumi", "laguerre"):
            spec = FamilySpec(
                name,
                {
                    "lerch": {"lambda": 1},
                    "peters": {"lambda": 1, "mu": 1},
                    "narumi": {"alpha": 1},
                    "laguerre": {"alpha": 1},
                }.get(name, {}),
            )
            assert family_reference(spec, 3) is None
        assert family_reference(FamilySpec("gen_bernoulli", {"alpha": 2}), 3) is None


class TestShape:
    def test_degree_and_parity(self):
        even_odd = ("chebyshev_t", "chebyshev_u", "legendre", "hermite")
        for name in even_odd:
            spec = FamilySpec(name)
            for n in range(11):
                poly = family_closed(spec, 1, n)
                assert poly.degree == n
                for k, c in enumerate(poly.coeffs):
                    if (k - n) % 2 != 0:
                        assert c == 0
        spec = FamilySpec("gegenbauer", {"alpha": 2})
        for n in range(11):
            poly = family_closed(spec, 1, n)
            assert poly.degree == n
            for k, c in enumerate(poly.coeffs):
                if (k - n) % 2 != 0:
                    assert c == 0

    def test_degree_general(self):
        cases = [
            ("laguerre", {"alpha": rat(1, 2)}),
            ("stirling_poly", {}),
            ("abel", {"a": 2}),
            ("bernoulli2", {}),
            ("gen_bernoulli", {"alpha": 1}),
            ("euler", {}),
            ("peters", {"lambda": 2, "mu": -2}),
            ("narumi", {"alpha": 1}),
            ("humbert", {"lambda": 1}),
            ("lerch", {"lambda": 2}),
        ]
        for name, params in cases:
            spec = FamilySpec(name, params)
            for n in range(1, 9):
                assert family_closed(spec, 1, n).degree == n, (name, n)

    def test_mahler_degree_collapses(self):
        # the inner function 1 + t - e^t starts at t^2, so the degree is n/2
        spec = FamilySpec("mahler")
        assert family_closed(spec, 1, 0).degree == 0
        assert family_closed(spec, 1, 1).is_zero()
        for n in range(2, 13):
            assert family_closed(spec, 1, n).degree == n // 2
