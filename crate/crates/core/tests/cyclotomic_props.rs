use ftgates::numtheory::{cyclotomic_poly, divisors, is_cyclotomic, totient, RationalPolynomial, VerdictReason};
use num_complex::Complex;
use proptest::prelude::*;

#[test]
fn divisor_product_is_x_n_minus_one() {
    for n in 1..=50u64 {
        let prod = divisors(n)
            .into_iter()
            .map(|d| cyclotomic_poly(d).unwrap())
            .fold(RationalPolynomial::from_integers(&[1]), |acc, p| &acc * &p);
        let mut coefs = vec![0i64; n as usize + 1];
        coefs[0] = -1;
        coefs[n as usize] = 1;
        assert_eq!(prod, RationalPolynomial::from_integers(&coefs), "n = {n}");
    }
}

#[test]
fn degrees_are_totients_and_matched() {
    for n in 1..=50u64 {
        let p = cyclotomic_poly(n).unwrap();
        assert_eq!(p.degree(), Some(totient(n) as usize));
        let v = is_cyclotomic(&p).unwrap();
        assert!(v.rational);
        assert_eq!(v.witness_order, Some(n));
        assert_eq!(v.reason, VerdictReason::Matched);
    }
}

/// Integer coefficients of `∏ (x - e^{2πik/n})` over `k` coprime to `n`,
/// expanded in floating point and rounded.
fn numeric_cyclotomic(n: u64) -> Vec<i64> {
    let mut coefs = vec![Complex::new(1.0, 0.0)];
    for k in (1..=n).filter(|&k| num_integer::gcd(k, n) == 1) {
        let root = Complex::from_polar(1.0, std::f64::consts::TAU * k as f64 / n as f64);
        let mut next = vec![Complex::new(0.0, 0.0); coefs.len() + 1];
        for (i, c) in coefs.iter().enumerate() {
            next[i + 1] += c;
            next[i] -= c * root;
        }
        coefs = next;
    }
    coefs.iter().map(|c| c.re.round() as i64).collect()
}

fn matches_some_phi(coefs: &[i64]) -> Option<u64> {
    let deg = coefs.len() as u64 - 1;
    (1..=2 * deg * deg + 1).find(|&n| totient(n) == deg && numeric_cyclotomic(n) == coefs)
}

proptest! {
    #[test]
    fn brute_force_oracle(lower in proptest::collection::vec(-3i64..=3, 1..=6)) {
        let mut coefs = lower;
        coefs.push(1);
        let p = RationalPolynomial::from_integers(&coefs);
        let v = is_cyclotomic(&p).unwrap();
        match matches_some_phi(&coefs) {
            Some(n) => {
                prop_assert!(v.rational);
                prop_assert_eq!(v.witness_order, Some(n));
            }
            None => {
                prop_assert!(!v.rational);
                prop_assert_eq!(v.reason, VerdictReason::NoCyclotomicMatch);
            }
        }
    }
}

#[test]
fn oracle_finds_known_members() {
    assert_eq!(matches_some_phi(&[1, 1, 1]), Some(3));
    assert_eq!(matches_some_phi(&[1, 0, 1]), Some(4));
    assert_eq!(matches_some_phi(&[-1, 0, 1]), None);
}
