use proptest::prelude::*;

use super::*;
use crate::text::parse_poly;

fn p(s: &str) -> LaurentPoly {
    parse_poly(s).unwrap()
}

fn d(r: i64, s: i64) -> Direction {
    Direction::new(r, s).unwrap()
}

#[test]
fn bracket_examples() {
    assert_eq!(p("x").bracket(&p("y")).unwrap(), p("1"));
    let q = p("x^2*y + 3*y^3 - x");
    assert!(q.bracket(&q).unwrap().is_zero());
    assert_eq!(p("y^2").bracket(&p("x")).unwrap(), p("-2*y"));
}

#[test]
fn valuation_examples() {
    let f = p("x^2*y^3 + x^4");
    assert_eq!(f.valuation(&d(1, 1)).unwrap(), Exp::from_integer(5));
    assert_eq!(f.valuation(&d(2, -1)).unwrap(), Exp::from_integer(8));
    assert_eq!(p("y").valuation(&d(1, 0)).unwrap(), Exp::from_integer(0));
    assert_eq!(LaurentPoly::zero().valuation(&d(1, 0)).unwrap_err(), Error::ZeroPolynomial);
}

#[test]
fn leading_form_examples() {
    let f = p("(x+y)^2");
    let lf = f.leading_form(&d(1, 1)).unwrap();
    assert_eq!(lf.form, f);
    assert_eq!(lf.en, ExponentPair::int(0, 2));
    assert_eq!(lf.st, ExponentPair::int(2, 0));
    let g = p("y^2 - x^3");
    let lf = g.leading_form(&d(2, 3)).unwrap();
    assert_eq!(lf.form, g);
    assert_eq!((lf.en, lf.st), (ExponentPair::int(0, 2), ExponentPair::int(3, 0)));
    // a corner shape m(a,b) = 2(3,1) on top of lower terms
    let h = p("x^6*y^2 + x^2*y + 1");
    assert_eq!(h.leading_form(&d(1, 0)).unwrap().en, ExponentPair::int(6, 2));
}

#[test]
fn dir_set_examples() {
    assert_eq!(p("x + y").dir_set(), vec![d(1, 1)]);
    assert!(p("3*x^2*y").dir_set().is_empty());
    assert_eq!(p("y^2 - y").dir_set(), vec![d(1, 0)]);
    assert_eq!(p("y^2 - x^3").dir_set(), vec![d(2, 3)]);
    let full = p("x + y + 1").edge_directions();
    assert_eq!(full, vec![d(1, 1), d(-1, 0), d(0, -1)]);
}

#[test]
fn succ_pred_examples() {
    assert_eq!(p("y^2 - y").succ_pred(&d(1, 1)), (None, Some(d(1, 0))));
    assert_eq!(p("x^3*y").succ_pred(&d(1, 1)), (None, None));
    let f = p("(x+y)^2");
    assert_eq!(f.succ_pred(&d(1, 1)), (None, None));
    assert!(f.dir_set().contains(&d(1, 1)));
}

#[test]
fn shift_examples() {
    let f = p("y^2 - x^2");
    let one = FieldElem::one();
    assert_eq!(f.apply_shift(&[(Exp::from_integer(1), one)]).unwrap(), p("y^2 + 2*x*y"));
    assert_eq!(f.apply_shift(&[]).unwrap(), f);
    let g = p("x^(1/2)*y");
    let s = g.apply_shift(&[(Exp::new(1, 3), FieldElem::from_int(2))]).unwrap();
    assert_eq!(s, p("x^(1/2)*y + 2*x^(5/6)"));
    assert_eq!(s.l(), 6);
}

#[test]
fn psi_examples() {
    // x^{ma} y^{mb} with m = 2, (a,b) = (1,1)
    assert_eq!(p("x^2*y^2").psi().unwrap(), p("(x+y)^2*y^2"));
    assert!(p("x^(1/2)").psi().is_err());
}

#[test]
fn partials_examples() {
    assert_eq!(p("x*y").partials(), (p("y"), p("x")));
    assert_eq!(p("7").partials(), (LaurentPoly::zero(), LaurentPoly::zero()));
    assert_eq!(p("x^(3/2)*y^2").partial_x(), p("3/2*x^(1/2)*y^2"));
}

#[test]
fn dir_of_point_class() {
    for (x, y) in [(2, 1), (1, -2), (-3, 5), (0, 1), (4, 0)] {
        let e = ExponentPair::int(x, y);
        let dd = Direction::of_point(e).unwrap();
        assert_eq!(dd.weight(&e), Exp::from_integer(0));
        assert!(dd.total() > 0);
    }
}

fn arb_poly(max_terms: usize) -> impl Strategy<Value = LaurentPoly> {
    prop::collection::vec((-5i64..=5, -4i64..=4, 1i64..=2, 0i64..=3), 1..=max_terms).prop_map(|ts| {
        let terms = ts
            .into_iter()
            .filter(|t| t.0 != 0)
            .map(|(c, xn, xd, y)| (ExponentPair::new(Exp::new(xn, xd), y), FieldElem::from_int(c)));
        LaurentPoly::from_terms(terms).unwrap()
    })
}

fn arb_dir() -> impl Strategy<Value = Direction> {
    (-4i64..=4, -4i64..=4).prop_filter("nonzero", |(a, b)| *a != 0 || *b != 0).prop_map(|(a, b)| d(a, b))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn leading_form_is_multiplicative(a in arb_poly(5), b in arb_poly(5), dd in arb_dir()) {
        prop_assume!(!a.is_zero() && !b.is_zero());
        let ab = &a * &b;
        let la = a.leading_form(&dd).unwrap().form;
        let lb = b.leading_form(&dd).unwrap().form;
        prop_assert_eq!(ab.leading_form(&dd).unwrap().form, &la * &lb);
        prop_assert_eq!(ab.valuation(&dd).unwrap(), a.valuation(&dd).unwrap() + b.valuation(&dd).unwrap());
    }

    #[test]
    fn bracket_valuation_bound(a in arb_poly(4), b in arb_poly(4), dd in arb_dir()) {
        prop_assume!(!a.is_zero() && !b.is_zero());
        let br = a.bracket(&b).unwrap();
        if !br.is_zero() {
            let bound = a.valuation(&dd).unwrap() + b.valuation(&dd).unwrap() - Exp::from_integer(dd.total());
            prop_assert!(br.valuation(&dd).unwrap() <= bound);
        }
    }

    #[test]
    fn bracket_is_antisymmetric_and_bilinear(a in arb_poly(3), b in arb_poly(3), c in arb_poly(3)) {
        prop_assert_eq!(a.bracket(&b).unwrap(), b.bracket(&a).unwrap().neg());
        let lhs = a.bracket(&(&b + &c)).unwrap();
        prop_assert_eq!(lhs, &a.bracket(&b).unwrap() + &a.bracket(&c).unwrap());
    }

    #[test]
    fn derivative_of_leading_form(a in arb_poly(6), dd in arb_dir()) {
        prop_assume!(!a.is_zero());
        let lf = a.leading_form(&dd).unwrap();
        prop_assume!(lf.en.y > 0);
        prop_assert_eq!(a.partial_y().leading_form(&dd).unwrap().form, lf.form.partial_y());
    }

    #[test]
    fn en_st_consistency(a in arb_poly(6), dd in arb_dir()) {
        prop_assume!(!a.is_zero());
        let lf = a.leading_form(&dd).unwrap();
        prop_assert!(lf.en.y >= lf.st.y);
        prop_assert_eq!(lf.en == lf.st, lf.form.is_monomial());
    }

    #[test]
    fn dir_set_directions_have_edges(a in arb_poly(6)) {
        for dd in a.edge_directions() {
            prop_assert!(a.leading_form(&dd).unwrap().form.len() >= 2);
        }
        let dirs = a.dir_set();
        prop_assert!(dirs.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn dir_of_point_is_orthogonal(x in -6i64..=6, xd in 1i64..=3, y in -6i64..=6) {
        let e = ExponentPair::new(Exp::new(x, xd), y);
        prop_assume!(e.x != Exp::from_integer(y));
        let dd = Direction::of_point(e).unwrap();
        prop_assert_eq!(dd.weight(&e), Exp::from_integer(0));
        prop_assert!(dd.total() > 0);
    }

    #[test]
    fn shift_then_unshift(a in arb_poly(5), c in -3i64..=3, e in -2i64..=2) {
        let s = vec![(Exp::from_integer(e), FieldElem::from_int(c))];
        let back = vec![(Exp::from_integer(e), FieldElem::from_int(-c))];
        prop_assert_eq!(a.apply_shift(&s).unwrap().apply_shift(&back).unwrap(), a);
    }
}
