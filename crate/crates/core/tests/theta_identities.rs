mod common;

use num_traits::ToPrimitive;
use qseries::rational::{exp, exp_int};
use qseries::theta::{
    gamma_omega, named, named_at, pochhammer_inf, theta_product, theta_sum, GammaOmega, NamedFn, ThetaArgs,
};
use qseries::{parse, QSeries, SignedMonomial};

fn f(n: i64, k: i64) -> QSeries {
    named(NamedFn::EulerF, exp_int(k), n).unwrap()
}

fn t(r: i64, s: i64, n: i64) -> QSeries {
    theta_product(ThetaArgs::ints(r, s), n).unwrap()
}

fn inv(s: &QSeries) -> QSeries {
    s.inverse().unwrap()
}

fn assert_same(a: &QSeries, b: &QSeries, n: i64, what: &str) {
    let c = a.eq_to_order(b, exp_int(n));
    assert!(c.is_equal(), "{what}: {c:?}");
    assert_eq!(c.checked(), exp_int(n), "{what}: checked only to {}", c.checked());
}

#[test]
fn triple_product_to_order_200() {
    for (r, s) in [(1, 1), (1, 3), (-1, -2), (1, 9), (3, 7), (4, 6), (2, 8)] {
        let args = ThetaArgs::ints(r, s);
        let p = theta_product(args, 200).unwrap();
        let q = theta_sum(args, 200).unwrap();
        assert_same(&p, &q, 200, &format!("f({r}, {s})"));
    }
    for (r, s) in [(-1, -9), (-3, -7), (-4, -6), (1, -2)] {
        let args = ThetaArgs::ints(r, s);
        assert_same(&theta_product(args, 120).unwrap(), &theta_sum(args, 120).unwrap(), 120, "signed");
    }
    let half = ThetaArgs::new(SignedMonomial::q(exp(1, 2)), SignedMonomial::neg_q(exp(3, 2))).unwrap();
    assert_same(&theta_product(half, 60).unwrap(), &theta_sum(half, 60).unwrap(), 60, "half");
}

#[test]
fn pentagonal_theorem() {
    let e = pochhammer_inf(SignedMonomial::q_int(1), exp_int(1), 101).unwrap();
    for n in 0..=100 {
        let c = e.coefficient(exp_int(n)).unwrap().to_integer().to_i64().unwrap();
        assert_eq!(c, common::pentagonal(n), "q^{n}");
    }
}

#[test]
fn eta_quotients_to_order_200() {
    let n = 200;
    let (f1, f2, f4) = (f(n, 1), f(n, 2), f(n, 4));
    let phi_neg = theta_product(ThetaArgs::ints(-1, -1), n).unwrap();
    assert_same(&phi_neg, &(&f1.pow(2).unwrap() * &inv(&f2)), n, "phi(-q)");
    let phi = t(1, 1, n);
    let rhs = &f2.pow(5).unwrap() * &inv(&(&f1.pow(2).unwrap() * &f4.pow(2).unwrap()));
    assert_same(&phi, &rhs, n, "phi(q)");
    let psi_neg = t(-1, -3, n);
    assert_same(&psi_neg, &(&(&f1 * &f4) * &inv(&f2)), n, "psi(-q)");
    assert_same(&t(1, 3, n), &(&f2.pow(2).unwrap() * &inv(&f1)), n, "psi(q)");
    assert_same(&t(1, -2, n), &(&f2.pow(3).unwrap() * &inv(&(&f1 * &f4))), n, "f(q)");
}

#[test]
fn named_functions_match_definitions() {
    for fun in NamedFn::ALL {
        for k in [1, 2, 5] {
            let a = named(fun, exp_int(k), 80).unwrap();
            let b = named_at(fun, SignedMonomial::q_int(k), 80).unwrap();
            assert_same(&a, &b, 80, &format!("{fun:?} at q^{k}"));
        }
    }
    let psi2 = named(NamedFn::Psi, exp_int(2), 13).unwrap();
    assert_eq!(psi2.to_string(), "1 + q^2 + q^6 + q^12");
}

#[test]
fn lacunary_supports() {
    let phi = named(NamedFn::Phi, exp_int(1), 200).unwrap();
    let psi = named(NamedFn::Psi, exp_int(1), 200).unwrap();
    for k in 0..200i64 {
        let r = (k as f64).sqrt() as i64;
        let square = r * r == k;
        let c = phi.coefficient(exp_int(k)).unwrap().to_integer().to_i64().unwrap();
        assert_eq!(
            c,
            if k == 0 {
                1
            } else if square {
                2
            } else {
                0
            },
            "phi q^{k}"
        );
        let tri = (0..30).any(|m| m * (m + 1) / 2 == k);
        let c = psi.coefficient(exp_int(k)).unwrap().to_integer().to_i64().unwrap();
        assert_eq!(c, tri as i64, "psi q^{k}");
    }
}

#[test]
fn chi_products_against_naive_multiplication() {
    let n = 60;
    let odd: Vec<(bool, i64)> = (0..40).map(|k| (false, 2 * k + 1)).collect();
    assert_same(&named(NamedFn::ChiNeg, exp_int(1), n).unwrap(), &common::naive_product(&odd, n), n, "chi(-q)");
    let odd_pos: Vec<(bool, i64)> = (0..40).map(|k| (true, 2 * k + 1)).collect();
    assert_same(&named(NamedFn::ChiPos, exp_int(1), n).unwrap(), &common::naive_product(&odd_pos, n), n, "chi(q)");
}

#[test]
fn products_of_level_five_thetas() {
    let n = 150;
    let (f1, f5, f20) = (f(n, 1), f(n, 5), f(n, 20));
    let phi_neg5 = named(NamedFn::PhiNeg, exp_int(5), n).unwrap();
    let chi_neg = named(NamedFn::ChiNeg, exp_int(1), n).unwrap();
    let chi = named(NamedFn::ChiPos, exp_int(1), n).unwrap();
    let lhs = &t(1, 4, n) * &t(2, 3, n);
    assert_same(&lhs, &(&(&phi_neg5 * &f5) * &inv(&chi_neg)), n, "f(q,q^4)f(q^2,q^3)");
    assert_same(&(&t(-1, -4, n) * &t(-2, -3, n)), &(&f1 * &f5), n, "f(-q,-q^4)f(-q^2,-q^3)");
    assert_same(&(&t(1, 9, n) * &t(3, 7, n)), &(&(&chi * &f5) * &f20), n, "f(q,q^9)f(q^3,q^7)");
}

#[test]
fn gamma_omega_products() {
    let n = 60;
    let g = &gamma_omega(GammaOmega::Gamma1, n).unwrap() * &gamma_omega(GammaOmega::Gamma2, n).unwrap();
    let b = qseries::Bindings::new();
    let rhs = qseries::expr::evaluate(&parse("psi(1)*psineg(5)/(psineg(1)*psi(5))").unwrap(), &b, n, 1).unwrap();
    assert_same(&g, &rhs, n, "Gamma1 Gamma2");
    let o2 = gamma_omega(GammaOmega::Omega2, 20).unwrap();
    assert_eq!(o2.valuation(), Some(exp_int(1)));
    let g1 = gamma_omega(GammaOmega::Gamma1, 20).unwrap();
    assert_eq!(g1.coefficient(exp_int(0)).unwrap(), qseries::rational::int(1));
}
