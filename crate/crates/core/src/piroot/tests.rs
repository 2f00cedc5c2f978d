use super::*;
use crate::text::parse_poly;

fn p(s: &str) -> LaurentPoly {
    parse_poly(s).unwrap()
}

fn e(n: i64, d: i64) -> Exp {
    Exp::new(n, d)
}

fn upoly(cs: &[i64]) -> UniPoly {
    UniPoly::from_ints(cs, Var::Pi)
}

#[test]
fn f_lambda_examples() {
    let r = f_lambda(&p("y^2 - x^3"), &[], e(3, 2)).unwrap();
    assert_eq!(r.f, upoly(&[-1, 0, 1]));
    assert_eq!((r.lambda, r.count), (e(3, 1), 2));
    let r = f_lambda(&p("y^2 - x^3"), &[], e(0, 1)).unwrap();
    assert_eq!(r.f, upoly(&[-1]));
    assert_eq!((r.lambda, r.count), (e(3, 1), 0));
    assert!(!r.is_pi_root());
}

#[test]
fn top_shape_multiplicities() {
    // ℓ_{1,1}(P) = (x+y)^2 y^3 on top of lower terms; (m, a, b) = (1, 2, 3)
    let pp = p("(x+y)^2*y^3 + x*y + 1");
    let r = f_lambda(&pp, &[], e(1, 1)).unwrap();
    assert_eq!(r.f.root_multiplicity(&FieldElem::from_int(-1)).unwrap(), 2);
    assert_eq!(r.f.root_multiplicity(&FieldElem::zero()).unwrap(), 3);
    let c = refine(&pp, &r, &FieldElem::from_int(-1)).unwrap();
    assert_eq!(c.count, 2);
    let c0 = refine(&pp, &r, &FieldElem::zero()).unwrap();
    assert_eq!(c0.count, 3);
    assert!(c0.j0 <= e(0, 1));
}

#[test]
fn refine_examples() {
    let pp = p("(y - x)*(y - x - 1)");
    let tau = f_lambda(&pp, &[], e(1, 1)).unwrap();
    assert_eq!(tau.f, upoly(&[1, -2, 1]));
    let t1 = refine(&pp, &tau, &FieldElem::one()).unwrap();
    assert_eq!(t1.j0, e(0, 1));
    assert_eq!(t1.f, upoly(&[0, -1, 1]));
    assert_eq!(t1.count, 2);
    let s = refine(&pp, &t1, &FieldElem::one()).unwrap();
    assert_eq!(s.count, 1);
    assert!(matches!(refine(&pp, &tau, &FieldElem::from_int(3)), Err(Error::NotARoot { .. })));
}

#[test]
fn lambda_monotone_examples() {
    let t = build_tree(&p("y^2 - x^3")).unwrap();
    assert_eq!((t.root.j0, t.root.lambda), (e(3, 2), e(3, 1)));
    assert!(check_lambda_monotone(&t));
    let t = build_tree(&p("(y - x)*(y - x - 1)")).unwrap();
    assert_eq!(t.root.lambda, e(2, 1));
    assert_eq!(t.children[0].root.lambda, e(0, 1));
    assert!(check_lambda_monotone(&t));
    let leaf = build_tree(&p("y + x^-3")).unwrap();
    assert!(check_lambda_monotone(&leaf));
}

#[test]
fn enumeration_covers_roots() {
    let pp = p("(y - x)*(y - x - 1)");
    let en = enumerate_final(&pp, None, &XiPolicy::None).unwrap();
    assert_eq!(en.covered(), 2);
    assert_eq!(en.finals.len(), 1);
    assert_eq!(en.finals[0].kind, RootKind::Minor);
    let en = enumerate_final(&p("y^2 + x^2 + 1"), None, &XiPolicy::None).unwrap();
    assert_eq!(en.covered(), 2);
}

#[test]
fn genericity_violation_and_xi() {
    // at j0 = 0 after the prefix x: f = π² (λ = 0)
    let pp = p("(y - x)^2 - x^-1");
    assert!(matches!(enumerate_final(&p("(y - x)^2"), None, &XiPolicy::None), Err(Error::Domain(_))));
    let r = enumerate_final(&pp, None, &XiPolicy::None);
    assert!(matches!(r, Err(Error::NeedsXiShift { .. })), "{r:?}");
    let (xi, cert) = choose_xi(&pp, None, 8).unwrap();
    assert!(!xi.is_zero());
    assert!(!cert.is_empty());
    let en = enumerate_final(&p("y^2 - x^3 + 1"), None, &XiPolicy::Auto(4)).unwrap();
    assert!(en.xi.is_zero());
}

#[test]
fn common_root_needs_xi() {
    // at j0 = 0: f_P = π² − 1 and f_Q = π − 1; ξ = 1 makes f_P = π², ξ = −1 works
    let pp = p("y^2 - 1 + x^-1");
    let qq = p("y - 1 + x^-1");
    let r = enumerate_final(&pp, Some(&qq), &XiPolicy::None);
    assert!(matches!(r, Err(Error::NeedsXiShift { .. })));
    let en = enumerate_final(&pp, Some(&qq), &XiPolicy::Auto(8)).unwrap();
    assert_eq!(en.xi, FieldElem::from_int(-1));
    assert!(en.certificate.iter().all(|c| c.resultant.as_ref().is_some_and(|r| !r.is_zero())));
}

#[test]
fn delta_examples() {
    let q = p("y - x");
    let one = FieldElem::one();
    let a = PuiseuxSeries::exact(vec![(e(1, 1), one.clone()), (e(0, 1), one.clone())]).unwrap();
    assert_eq!(delta_of_root(&a, &q).unwrap(), e(0, 1));
    let a = PuiseuxSeries::exact(vec![(e(1, 1), one.clone()), (e(-2, 1), one.clone())]).unwrap();
    assert_eq!(delta_of_root(&a, &q).unwrap(), e(-2, 1));
    let a = PuiseuxSeries::exact(vec![(e(1, 1), one.clone())]).unwrap();
    assert!(matches!(delta_of_root(&a, &q), Err(Error::Undecided { .. })));
    let a = PuiseuxSeries::exact(vec![(e(2, 1), one.clone())]).unwrap();
    assert_eq!(delta_of_root(&a, &q).unwrap(), e(2, 1));
}

#[test]
fn zero_lambda_examples() {
    let one = FieldElem::one();
    let z = check_zero_lambda_reachable(&p("y - x"), &PuiseuxSeries::exact(vec![(e(1, 1), one.clone())]).unwrap()).unwrap();
    assert_eq!(z, ZeroLambda { j0: e(0, 1), exact_root: true });
    let a = PuiseuxSeries::exact(vec![(e(1, 1), one.clone()), (e(0, 1), one.clone())]).unwrap();
    let z = check_zero_lambda_reachable(&p("(y - x)*(y - x - 1)"), &a).unwrap();
    assert_eq!(z.j0, e(0, 1));
    let a = PuiseuxSeries::exact(vec![(e(3, 2), one.clone())]).unwrap();
    let z = check_zero_lambda_reachable(&p("y^2 - x^3"), &a).unwrap();
    assert!(z.exact_root);
    let prefix: Vec<_> = a.terms().iter().filter(|(x, _)| *x > z.j0).cloned().collect();
    assert_eq!(f_lambda(&p("y^2 - x^3"), &prefix, z.j0).unwrap().lambda, e(0, 1));
}

#[test]
fn node_counts_match_expansion() {
    for s in ["(y - x)*(y - x - 1)", "y^3 - x^2*y + x", "y^2 + x^2 + 1", "(y^2 - x^3)*(y - 1) + 1"] {
        let pp = p(s);
        let t = build_tree(&pp).unwrap();
        let mut nodes = Vec::new();
        t.walk(&mut |n| nodes.push(n.root.clone()));
        for n in nodes {
            assert_eq!(count_by_expansion(&pp, &n).unwrap(), n.count, "{s} at {}", n.j0);
        }
    }
}

#[test]
fn jacobian_gate() {
    assert!(require_jacobian(&p("y"), &p("x")).is_ok());
    assert!(matches!(require_jacobian(&p("y^2"), &p("x")), Err(Error::HypothesisNotMet(_))));
}

#[test]
fn degree_invariance_on_tree() {
    for s in ["y^2 - x^3", "(y - x)*(y - x - 1)", "y^3 - x*y + x^2 + 1"] {
        let p = parse_poly(s).unwrap();
        let tree = build_tree(&p).unwrap();
        let tail = [(Exp::from_integer(-7), FieldElem::from_int(5))];
        tree.walk(&mut |n| {
            assert!(check_degree_invariance(&p, &n.root, 3, &[]).unwrap(), "{s}");
            assert!(check_degree_invariance(&p, &n.root, 2, &tail).unwrap(), "{s}");
        });
    }
}
