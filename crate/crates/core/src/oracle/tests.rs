use super::*;
use crate::coeff::VarTable;
use crate::formula::parse;

fn z(params: &[&str]) -> Ring {
    Ring::new(
        BaseDomain::Integers,
        VarTable::params(params.iter().copied()).unwrap(),
    )
}

fn formula(text: &str, params: &[&str]) -> (Ring, Formula) {
    parse(text, &z(params)).unwrap()
}

#[test]
fn quantifier_free_evaluation() {
    let f5 = ff_extension(5, 1).unwrap();
    let (r, u_nonzero) = formula("u != 0", &["u"]);
    assert!(eval_qf_at_point(&u_nonzero, &r, &Point::new(&f5, [("u", 3)])).unwrap());
    assert!(!eval_qf_at_point(&u_nonzero, &r, &Point::new(&f5, [("u", 0)])).unwrap());
    let f2 = ff_extension(2, 1).unwrap();
    let (r, two) = formula("2 = 0", &[]);
    assert!(eval_qf_at_point(&two, &r, &Point::new(&f2, Vec::<(&str, u64)>::new())).unwrap());
    let missing = eval_qf_at_point(&u_nonzero, &z(&["u"]), &Point::new(&f2, [("v", 1)]));
    assert!(matches!(missing, Err(Error::Usage(_))));
}

#[test]
fn rational_denominators_fail_mod_p() {
    let q = Ring::new(BaseDomain::Rationals, VarTable::params(["u"]).unwrap());
    let (q, f) = parse("u - 1/2 = 0", &q).unwrap();
    let f2 = ff_extension(2, 1).unwrap();
    assert!(matches!(
        eval_qf_at_point(&f, &q, &Point::new(&f2, [("u", 1)])),
        Err(Error::Eval(_))
    ));
}

#[test]
fn witnesses_come_from_extensions() {
    let cfg = OracleConfig::default();
    let f2 = ff_extension(2, 1).unwrap();
    let (r, f) = formula("exists x. x^2 + x + 1 = 0", &[]);
    let empty = Point::new(&f2, Vec::<(&str, u64)>::new());
    assert_eq!(brute_decide(&f, &r, &empty, &cfg).unwrap(), Some(true));

    let f5 = ff_extension(5, 1).unwrap();
    let (r, f) = formula("exists x. x^2 = u", &["u"]);
    assert_eq!(
        brute_decide(&f, &r, &Point::new(&f5, [("u", 2)]), &cfg).unwrap(),
        Some(true)
    );

    let (r, f) = formula("1 = 0", &[]);
    assert_eq!(brute_decide(&f, &r, &empty, &cfg).unwrap(), Some(false));
}

#[test]
fn roots_of_mixed_degree_are_found() {
    // x^3 + x^2 + x has its nonzero roots in F_4, which F_8 does not contain
    let f2 = ff_extension(2, 1).unwrap();
    let (r, f) = formula("exists x. x^3 + x^2 + x = 0 & x != 0", &[]);
    let empty = Point::new(&f2, Vec::<(&str, u64)>::new());
    assert_eq!(
        brute_decide(&f, &r, &empty, &OracleConfig::default()).unwrap(),
        Some(true)
    );
}

#[test]
fn witness_cap_truncates_to_inconclusive() {
    let f2 = ff_extension(2, 1).unwrap();
    let (r, f) = formula("forall x. exists y. y^2 = x", &[]);
    let empty = Point::new(&f2, Vec::<(&str, u64)>::new());
    let mut cfg = OracleConfig::default();
    assert_eq!(brute_decide(&f, &r, &empty, &cfg).unwrap(), Some(true));
    cfg.witness_cap = 1;
    assert_eq!(brute_decide(&f, &r, &empty, &cfg).unwrap(), None);
}

#[test]
fn linear_equation_equivalence() {
    let (lr, lhs) = formula("exists x. a*x + b = 0", &["a", "b"]);
    let (rr, rhs) = formula("a != 0 | a = 0 & b = 0", &["a", "b"]);
    let cfg = OracleConfig::default();
    let report = equiv_check(&lhs, &lr, &rhs, &rr, &cfg).unwrap();
    assert_eq!(report.verdict, Verdict::Pass);
    assert!(report.counterexamples.is_empty());
    // 2^2 + 4^2 + 3^2 + 9^2 + 5^2 + 25^2
    assert_eq!(report.points_tested, 4 + 16 + 9 + 81 + 25 + 625);

    let (rr, weak) = formula("a != 0", &["a", "b"]);
    let report = equiv_check(&lhs, &lr, &weak, &rr, &cfg).unwrap();
    assert_eq!(report.verdict, Verdict::Fail);
    let first = &report.counterexamples[0];
    assert_eq!(first.point.to_string(), "F_2: a = 0, b = 0");
    assert!(first.lhs && !first.rhs);

    let report = equiv_check(&lhs, &lr, &lhs, &lr, &cfg).unwrap();
    assert_eq!(report.verdict, Verdict::Pass);
}

#[test]
fn equivalence_is_symmetric() {
    let (lr, lhs) = formula("exists x. a*x + b = 0", &["a", "b"]);
    let (rr, rhs) = formula("b != 0", &["a", "b"]);
    let cfg = OracleConfig::default();
    let ab = equiv_check(&lhs, &lr, &rhs, &rr, &cfg).unwrap();
    let ba = equiv_check(&rhs, &rr, &lhs, &lr, &cfg).unwrap();
    assert_eq!(ab.verdict, ba.verdict);
    assert_eq!(ab.counterexamples.len(), ba.counterexamples.len());
    for (x, y) in ab.counterexamples.iter().zip(&ba.counterexamples) {
        assert_eq!((x.lhs, x.rhs), (y.rhs, y.lhs));
        assert_eq!(x.point.assignment, y.point.assignment);
    }
}

#[test]
fn only_inconclusive_comparisons() {
    let (lr, lhs) = formula("forall x. exists y. y^2 = x", &[]);
    let cfg = OracleConfig {
        witness_cap: 1,
        ..OracleConfig::default()
    };
    let report = equiv_check(&lhs, &lr, &Formula::True, &lr, &cfg).unwrap();
    assert_eq!(report.verdict, Verdict::Inconclusive);
    assert_eq!(report.definite, 0);
}

#[test]
fn mixed_characteristic() {
    let (lr, lhs) = formula("exists x. 2*x - 1 = 0", &[]);
    let (rr, rhs) = formula("2 != 0", &[]);
    let cfg = OracleConfig::default();
    assert_eq!(
        equiv_check(&lhs, &lr, &rhs, &rr, &cfg).unwrap().verdict,
        Verdict::Pass
    );
    let f2 = ff_extension(2, 1).unwrap();
    let empty = Point::new(&f2, Vec::<(&str, u64)>::new());
    assert_eq!(brute_decide(&lhs, &lr, &empty, &cfg).unwrap(), Some(false));
}

#[test]
fn sampling_is_seeded() {
    let (lr, lhs) = formula("exists x. a*x + b*c = 0", &["a", "b", "c"]);
    let (rr, rhs) = formula("a != 0 | b = 0 | c = 0", &["a", "b", "c"]);
    let cfg = OracleConfig {
        primes: vec![5],
        sample_cap: 50,
        ..OracleConfig::default()
    };
    let one = equiv_check(&lhs, &lr, &rhs, &rr, &cfg).unwrap();
    let two = equiv_check(&lhs, &lr, &rhs, &rr, &cfg).unwrap();
    assert_eq!(one, two);
    assert_eq!(one.verdict, Verdict::Pass);
    assert_eq!(one.points_tested, 100);
}

#[test]
fn compiled_and_reference_evaluation_agree() {
    let (r, f) = formula("a^2*b - 3*a + 1 = 0 | !(a*b = 2) & b^3 != a", &["a", "b"]);
    for (p, m) in [(2, 2), (3, 2), (5, 1)] {
        let field = ff_extension(p, m).unwrap();
        for i in 0..field.size() {
            for j in 0..field.size() {
                let pt = Point::new(&field, [("a", i), ("b", j)]);
                let slow = eval_qf_at_point(&f, &r, &pt).unwrap();
                let fast = brute_decide(&f, &r, &pt, &OracleConfig::default()).unwrap();
                assert_eq!(Some(slow), fast);
            }
        }
    }
}

#[test]
fn truth_is_stable_under_embedding() {
    let (r, f) = formula("a^2 + a + 1 = 0 & b != 0 | a*b = 1", &["a", "b"]);
    let f2 = ff_extension(2, 2).unwrap();
    let f4 = ff_extension(2, 4).unwrap();
    for i in 0..4 {
        for j in 0..4 {
            let pt = Point::new(&f2, [("a", i), ("b", j)]);
            let up = pt.embed(&f4).unwrap();
            assert_eq!(
                eval_qf_at_point(&f, &r, &pt).unwrap(),
                eval_qf_at_point(&f, &r, &up).unwrap()
            );
        }
    }
}

#[test]
fn bound_names_may_shadow_coordinates() {
    // `x` is free on the right and bound on the left
    let (lr, lhs) = formula("exists x. x = 0", &["x"]);
    let (rr, rhs) = formula("x = x", &["x"]);
    let report = equiv_check(&lhs, &lr, &rhs, &rr, &OracleConfig::default()).unwrap();
    assert_eq!(report.verdict, Verdict::Pass);
}
