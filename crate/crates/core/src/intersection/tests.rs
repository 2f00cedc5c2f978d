use proptest::prelude::*;

use super::*;
use crate::text::parse_poly;

fn p(s: &str) -> LaurentPoly {
    parse_poly(s).unwrap()
}

fn e(n: i64, d: i64) -> Exp {
    Exp::new(n, d)
}

#[test]
fn resultant_examples() {
    assert_eq!(resultant_y(&p("y^2 - x"), &p("y")).unwrap(), p("-x"));
    assert_eq!(sylvester_resultant(&p("y^2 - x"), &p("y")).unwrap(), p("-x"));
    assert_eq!(resultant_y(&p("y^3 + x*y + 2"), &p("1")).unwrap(), p("1"));
    assert_eq!(resultant_y(&p("y - x^2 - 1"), &p("y - x")).unwrap(), p("x^2 - x + 1"));
    assert_eq!(resultant_y(&p("y - x^(1/2)"), &p("y^2 - x")).unwrap(), LaurentPoly::zero());
    assert_eq!(resultant_y(&p("x^-1*y^2 + y"), &p("y - x")).unwrap(), p("2*x"));
}

#[test]
fn i_number_examples() {
    assert_eq!(i_number(&p("y^2 - x"), &p("y")).unwrap(), e(1, 1));
    assert_eq!(i_number(&p("y - x"), &p("y - x - 1")).unwrap(), e(0, 1));
    assert_eq!(i_number(&p("(y - x)*(y + 1)"), &p("(y - x)*y")).unwrap_err(), Error::ResultantZero);
}

#[test]
fn sum_of_degrees_matches_resultant() {
    for (a, b) in [("y^2 - x^3", "y + x"), ("y^3 - x*y + 1", "y^2 + x^2*y - 3"), ("y^2 + x^2 + 1", "y - i*x + 2")] {
        let (pp, qq) = (parse_poly(a).unwrap(), parse_poly(b).unwrap());
        assert_eq!(sum_degrees_at_roots(&pp, &qq).unwrap(), i_number(&pp, &qq).unwrap(), "{a} / {b}");
    }
}

#[test]
fn major_report_is_consistent() {
    let pp = p("(y - x)*(y - x - 1)*(y + x) + 1");
    let qq = p("y^2 + x*y + 3");
    let r = i_major(&pp, &qq, &XiPolicy::Auto(6)).unwrap();
    assert_eq!(r.value, r.oracle);
    let all_minor = i_major(&p("(y - x)*(y - x - 1)"), &p("y - x + 5"), &XiPolicy::Auto(6)).unwrap();
    assert_eq!(all_minor.value, e(0, 1));
}

#[test]
fn minor_report_decomposes() {
    let pp = p("(y - x)*(y - x - 1)");
    let qq = p("y - x + 5");
    let r = i_minor_bound(&pp, &qq, &XiPolicy::Auto(6)).unwrap();
    assert_eq!(r.decomposition, r.i_resultant);
    // one minor final root {x, x + 1} with δ = 0
    assert_eq!(r.value, e(0, 1));
    assert_eq!(r.rows.len(), 1);
    assert_eq!(r.rows[0].delta, Some(e(0, 1)));
    let none = i_minor_bound(&p("y^2 - x^3"), &p("y + 1"), &XiPolicy::None).unwrap();
    assert_eq!(none.value, e(1, 1));
}

#[test]
fn derivative_check_examples() {
    let zero = PuiseuxSeries::exact(vec![]).unwrap();
    assert_eq!(jacobian_derivative_check(&p("y"), &p("x"), &zero).unwrap(), Check::True);
    let x = PuiseuxSeries::exact(vec![(e(1, 1), FieldElem::one())]).unwrap();
    assert_eq!(jacobian_derivative_check(&p("y^2"), &p("x"), &x).unwrap(), Check::False);
    let s = PuiseuxSeries::new(vec![(e(2, 1), FieldElem::from_int(3)), (e(-1, 2), FieldElem::one())], Some(e(-3, 1))).unwrap();
    assert_eq!(jacobian_derivative_check(&p("y"), &p("x"), &s).unwrap(), Check::True);
    let tiny = PuiseuxSeries::new(vec![], Some(e(2, 1))).unwrap();
    assert_eq!(jacobian_derivative_check(&p("y^2"), &p("x"), &tiny).unwrap(), Check::Inconclusive);
}

#[test]
fn shape_examples() {
    let c = shape_level_im(&[ShapeCorner { roots: 4, b: 3, k: 1, l: 4 }]).unwrap();
    assert_eq!(c.to_string(), "3*m");
    let vals: Vec<Exp> = (0..6).map(|j| c.eval(2 * j + 3)).collect();
    assert_eq!(vals, [9, 15, 21, 27, 33, 39].map(Exp::from_integer).to_vec());
    assert_eq!(shape_level_im(&[]).unwrap().to_string(), "0");
    assert_eq!(shape_level_im(&[ShapeCorner { roots: 1, b: 1, k: 1, l: 1 }]).unwrap().to_string(), "m");
}

fn arb_rat() -> impl Strategy<Value = FieldElem> {
    (-10i64..=10, 1i64..=10).prop_map(|(n, d)| FieldElem::from_ratio(n, d))
}

fn arb_ypoly() -> impl Strategy<Value = LaurentPoly> {
    prop::collection::vec((arb_rat(), 0i64..=3, 0i64..=4), 1..=6).prop_map(|ts| {
        LaurentPoly::from_terms(ts.into_iter().map(|(c, x, y)| (crate::laurent::ExponentPair::int(x, y), c))).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn prs_equals_sylvester(a in arb_ypoly(), b in arb_ypoly()) {
        prop_assert_eq!(resultant_y(&a, &b).unwrap(), sylvester_resultant(&a, &b).unwrap());
    }

    #[test]
    fn resultant_is_antisymmetric(a in arb_ypoly(), b in arb_ypoly()) {
        let (n, m) = (a.deg_y().unwrap_or(0), b.deg_y().unwrap_or(0));
        let r1 = resultant_y(&a, &b).unwrap();
        let r2 = resultant_y(&b, &a).unwrap();
        prop_assert_eq!(r1, if (n * m) % 2 == 1 { r2.neg() } else { r2 });
    }
}
