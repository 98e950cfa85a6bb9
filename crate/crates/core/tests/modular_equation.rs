use qseries::modeq::{
    alpha_series, beta_series, degree_check, modular_eq_residual, multiplier_series, radical_terms, ModularTriple,
    Variant,
};
use qseries::rational::{exp, exp_int, int};
use qseries::{check_identity, parse, QSeries};

#[test]
fn derived_equation_vanishes_to_order_100() {
    let r = modular_eq_residual(100, Variant::Derived).unwrap();
    assert!(r.is_zero(), "residual {r}");
    assert_eq!(r.order(), exp_int(100));
}

#[test]
fn printed_equation_fails_early() {
    let r = modular_eq_residual(30, Variant::Printed).unwrap();
    let v = r.valuation().expect("nonzero residual");
    assert!(v < exp_int(5), "first discrepancy at {v}");
    assert!(r.has_integral_support());
}

#[test]
fn beta_is_alpha_at_q5() {
    let n = 120;
    let b = beta_series(n).unwrap();
    let a = alpha_series(n / 5 + 1).unwrap();
    for (e, c) in a.terms() {
        if e * exp_int(5) < exp_int(n) {
            assert_eq!(&b.coefficient(e * exp_int(5)).unwrap(), c);
        }
    }
    assert_eq!(b.valuation(), Some(exp_int(5)));
    assert_eq!(b.coefficient(exp_int(5)).unwrap(), int(16));
}

#[test]
fn radical_terms_stay_on_the_lattice() {
    let t = ModularTriple::new(40).unwrap();
    let r = radical_terms(&t).unwrap();
    assert_eq!(r.sqrt_ab.valuation(), Some(exp_int(3)));
    assert_eq!(r.mixed_root.valuation(), Some(exp_int(2)));
    assert_eq!(r.unit_root.coefficient(exp_int(0)).unwrap(), int(1));
    // Integer exponents only, even though the work lattice is q^(1/8).
    for s in [&r.sqrt_ab, &r.mixed_root, &r.unit_root] {
        assert!(s.has_integral_support());
        assert_eq!(s.coefficient(exp(1, 8)).unwrap(), int(0));
    }
}

#[test]
fn expression_form_agrees() {
    let a = "(16*q*psi(2)^4/phi(1)^4)";
    let b = "(16*q^5*psi(10)^4/phi(5)^4)";
    let m = "(phi(1)^2/phi(5)^2)";
    let lhs = format!("{m}^2 + 1 - 2*{m} + 8*root((1 - {b})^5/(1 - {a}), 8) - 8*(1 - {b})");
    let rhs = format!("{m}^2*{a} + {b} - 2*{m}*root({a}*{b}, 2) + 8*root({a}*{b}^3*(1 - {b})^5/(1 - {a}), 8)");
    let out = check_identity(&parse(&lhs).unwrap(), &parse(&rhs).unwrap(), &[], 40).unwrap();
    assert!(out.passed(), "{out:?}");
    let printed_lhs = lhs.replace(&format!("8*(1 - {b})"), &format!("8*root((1 - {a})*(1 - {b}), 2)"));
    let out = check_identity(&parse(&printed_lhs).unwrap(), &parse(&rhs).unwrap(), &[], 40).unwrap();
    assert!(!out.passed());
}

#[test]
fn multiplier_is_a_hypergeometric_ratio() {
    for q in [0.01, 0.05, 0.1, 0.15, 0.2] {
        let s = degree_check(q, 1e-9).unwrap();
        assert!(s.ratio_ok(), "q = {q}: ratio {}", s.ratio);
        assert!(s.multiplier_ok(), "q = {q}: m {} vs {}", s.m, s.m_hypergeometric);
        let m = multiplier_series(60).unwrap();
        assert!((m.eval_f64(q) - s.m).abs() < 1e-9);
    }
    assert!(degree_check(0.5, 1e-9).is_err());
    assert!(degree_check(0.0, 1e-9).is_err());
}

#[test]
fn moduli_sum_on_real_axis() {
    let q = 0.1;
    let a = alpha_series(80).unwrap().eval_f64(q);
    let s = degree_check(q, 1e-9).unwrap();
    assert!((a - s.alpha).abs() < 1e-12);
    let one_minus: QSeries = &QSeries::one(80) - &alpha_series(80).unwrap();
    assert!((one_minus.eval_f64(q) + a - 1.0).abs() < 1e-12);
}
