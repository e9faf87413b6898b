use num_bigint::BigInt;
use proptest::prelude::*;
use purefield::exactmath::{residue_i64, Rational};
use purefield::newton::{index_lower_bound, pure_polynomial};
use purefield::oracle::{basis_discriminant, certify, CertifyOptions, FieldElement};
use purefield::periodicity::period_modulus;
use purefield::purebasis::{construct_basis, index_report, integral_basis, PureField};

fn field(n: u64, m: i64) -> Option<PureField> {
    PureField::new(n, m).ok()
}

#[test]
fn degree_twelve_discriminant() {
    let f = field(12, 53).unwrap();
    let (basis, report) = integral_basis(&f).unwrap();
    assert_eq!(report.total_index, BigInt::from(5184));
    assert_eq!(basis.denominator_product(), report.total_index);
    assert_eq!(basis_discriminant(&basis).unwrap(), Rational::from_integer(report.field_discriminant));
}

#[test]
fn polygon_bounds_composite_degrees() {
    for (n, m) in [(6u64, 19i64), (10, 51), (12, 17), (18, -53)] {
        let report = index_report(&field(n, m).unwrap()).unwrap();
        for (&p, &ind) in &report.per_prime {
            let (bound, exact) = index_lower_bound(&pure_polynomial(n, m), p).unwrap();
            assert!(bound <= ind, "n={n} m={m} p={p}");
            if exact {
                assert_eq!(bound, ind);
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn constructed_bases_certify(n in 2u64..=10, m in -150i64..150) {
        let Some(f) = field(n, m) else { return Ok(()) };
        let basis = construct_basis(&f).unwrap();
        let report = certify(&basis, &CertifyOptions::default()).unwrap();
        prop_assert!(report.certified() && !report.has_skips(), "{:?}", report.failures());
        for h in basis.polynomials() {
            prop_assert!(FieldElement::from_poly(&f, &h).is_algebraic_integer());
        }
    }

    #[test]
    fn basis_is_a_function_of_the_class(n in 2u64..=9, m in -120i64..120, shift in 1i64..4) {
        let n0 = period_modulus(n) as i64;
        let other = m + shift * n0;
        let (Some(f1), Some(f2)) = (field(n, m), field(n, other)) else { return Ok(()) };
        prop_assert_eq!(residue_i64(m, n0 as u64), residue_i64(other, n0 as u64));
        prop_assert_eq!(construct_basis(&f1).unwrap().polynomials(), construct_basis(&f2).unwrap().polynomials());
    }
}
