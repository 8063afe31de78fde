//! Rational roots of univariate polynomials over Q, without integer
//! factorization: find simple roots of the squarefree part modulo a small
//! prime, Hensel-lift them, and recover p/q by rational reconstruction.
//! Every candidate is verified exactly, so the output is sound; completeness
//! follows because every rational root survives reduction mod a good prime.

use crate::gcd::poly_gcd;
use crate::poly::{MultiPoly, Rational, Var};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

const PRIMES: [u64; 24] = [
    10007, 10009, 10037, 10039, 10061, 10067, 10069, 10079, 10091, 10093, 10099, 10103, 10111,
    10133, 10139, 10141, 10151, 10159, 10163, 10169, 10177, 10181, 10193, 10211,
];

/// All rational roots of `f` (nonzero, univariate in `v`) with multiplicities.
/// The second component is true when the rational roots account for the whole
/// degree, i.e. `f` splits into rational linear factors times a constant.
pub fn rational_roots(f: &MultiPoly, v: Var) -> (Vec<(Rational, usize)>, bool) {
    assert!(!f.is_zero(), "rational_roots of zero polynomial");
    let prim = f.normalized_primitive();
    let coeffs = prim
        .univariate_coeffs(v)
        .expect("rational_roots: polynomial must be univariate");
    let ints: Vec<BigInt> = coeffs.iter().map(|c| c.numer().clone()).collect();
    debug_assert!(coeffs.iter().all(|c| c.denom().is_one()));

    let mut roots: Vec<(Rational, usize)> = Vec::new();
    let mut work = ints;
    // strip the root at 0
    let mut zero_mult = 0usize;
    while work.len() > 1 && work[0].is_zero() {
        work.remove(0);
        zero_mult += 1;
    }
    if zero_mult > 0 {
        roots.push((Rational::zero(), zero_mult));
    }
    if work.len() <= 1 {
        let complete = work.len() <= 1;
        return (roots, complete);
    }

    for cand in candidate_roots(&work) {
        let mult = root_multiplicity(&mut work, &cand);
        if mult > 0 {
            roots.push((cand, mult));
        }
    }
    let complete = work.len() == 1;
    (roots, complete)
}

/// Divide out `(q*x - p)` as often as it divides, returning the multiplicity.
fn root_multiplicity(work: &mut Vec<BigInt>, r: &Rational) -> usize {
    let p = r.numer();
    let q = r.denom();
    let mut mult = 0usize;
    loop {
        let n = work.len();
        if n <= 1 {
            break;
        }
        // synthetic division by (q x - p), exact or bail out
        let mut quo: Vec<BigInt> = vec![BigInt::zero(); n - 1];
        let mut rem = work.clone();
        let mut ok = true;
        for i in (1..n).rev() {
            let (d, m) = rem[i].div_rem(q);
            if !m.is_zero() {
                ok = false;
                break;
            }
            quo[i - 1] = d.clone();
            let add = &d * p;
            rem[i - 1] += add;
        }
        if !ok || !rem[0].is_zero() {
            break;
        }
        *work = quo;
        mult += 1;
    }
    mult
}

/// Candidate rational roots of the integer polynomial `a` (trailing coeff
/// nonzero), via mod-p root finding and Hensel lifting of the squarefree part.
fn candidate_roots(a: &[BigInt]) -> Vec<Rational> {
    let f = int_poly_to_multipoly(a);
    let fp = f.derivative(Var::Z);
    let g = poly_gcd(&f, &fp);
    let sqfree = f.div_exact(&g).expect("gcd divides");
    let sc = sqfree
        .normalized_primitive()
        .univariate_coeffs(Var::Z)
        .unwrap();
    let s: Vec<BigInt> = sc.iter().map(|c| c.numer().clone()).collect();
    if s.len() <= 1 {
        return vec![];
    }
    // bound for rational reconstruction: |p| <= |a_0|, |q| <= |a_n| of the
    // squarefree primitive part
    let bound = s[0].abs().max(s.last().unwrap().abs());
    let modulus_target: BigInt = BigInt::from(2) * &bound * &bound + 1;

    for &p in &PRIMES {
        if let Some(cands) = try_prime(&s, p, &modulus_target) {
            return cands;
        }
    }
    // a prime is rejected only when it divides the leading coefficient or the
    // discriminant; 24 consecutive rejections means something is badly wrong
    panic!("rational root extraction: no usable prime for {f}");
}

fn int_poly_to_multipoly(a: &[BigInt]) -> MultiPoly {
    let mut f = MultiPoly::zero();
    for (i, c) in a.iter().enumerate() {
        let mut m = crate::poly::Monomial::one();
        m.0[Var::Z.index()] = i as u16;
        f.add_term(m, Rational::from(c.clone()));
    }
    f
}

fn try_prime(s: &[BigInt], p: u64, modulus_target: &BigInt) -> Option<Vec<Rational>> {
    let pp = BigInt::from(p);
    let sm: Vec<u64> = s
        .iter()
        .map(|c| {
            let r = c.mod_floor(&pp);
            r.to_string().parse::<u64>().unwrap()
        })
        .collect();
    if *sm.last().unwrap() == 0 {
        return None; // degree dropped
    }
    // f must stay squarefree mod p: gcd(f, f') constant
    if !squarefree_mod_p(&sm, p) {
        return None;
    }
    let mut out = Vec::new();
    for r in 0..p {
        if eval_mod_p(&sm, r, p) == 0 {
            // lift the simple root
            let lifted = hensel_lift(s, BigInt::from(r), p, modulus_target);
            if let Some(rat) = rational_reconstruct(&lifted.0, &lifted.1) {
                out.push(rat);
            }
        }
    }
    Some(out)
}

fn eval_mod_p(c: &[u64], x: u64, p: u64) -> u64 {
    let mut acc: u64 = 0;
    for ci in c.iter().rev() {
        acc = (acc.wrapping_mul(x) % p + ci) % p;
    }
    acc
}

fn squarefree_mod_p(c: &[u64], p: u64) -> bool {
    // Euclid on (f, f') over F_p; squarefree iff the gcd is a nonzero constant
    let mut a: Vec<u64> = c.to_vec();
    let mut b: Vec<u64> = c
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, ci)| (ci * (i as u64 % p)) % p)
        .collect();
    trim_u64(&mut a);
    trim_u64(&mut b);
    if b.is_empty() {
        return false;
    }
    while b.len() > 1 {
        let r = rem_mod_p(&a, &b, p);
        a = b;
        b = r;
    }
    !b.is_empty()
}

fn trim_u64(a: &mut Vec<u64>) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

fn rem_mod_p(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut r: Vec<u64> = a.to_vec();
    trim_u64(&mut r);
    let db = b.len() - 1;
    let inv_lb = mod_inverse(b[db], p);
    while r.len() > db {
        let dr = r.len() - 1;
        let q = r[dr] * inv_lb % p;
        for i in 0..=db {
            let sub = q * b[i] % p;
            let idx = dr - db + i;
            r[idx] = (r[idx] + p - sub) % p;
        }
        r.pop();
        trim_u64(&mut r);
    }
    r
}

fn mod_inverse(a: u64, p: u64) -> u64 {
    mod_pow(a % p, p - 2, p)
}

fn mod_pow(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc: u64 = 1;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

/// Newton-lift a simple root of `s` from mod p to mod p^(2^k) >= target.
fn hensel_lift(s: &[BigInt], r0: BigInt, p: u64, target: &BigInt) -> (BigInt, BigInt) {
    let mut modulus = BigInt::from(p);
    let mut r = r0;
    while &modulus < target {
        modulus = &modulus * &modulus;
        let fr = eval_big_mod(s, &r, &modulus);
        let fpr = eval_big_mod(&derive_big(s), &r, &modulus);
        let inv = mod_inverse_big(&fpr, &modulus).expect("simple root stays invertible");
        r = (&r - &(&fr * &inv)).mod_floor(&modulus);
    }
    (r, modulus)
}

fn derive_big(s: &[BigInt]) -> Vec<BigInt> {
    s.iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c * BigInt::from(i))
        .collect()
}

fn eval_big_mod(c: &[BigInt], x: &BigInt, m: &BigInt) -> BigInt {
    let mut acc = BigInt::zero();
    for ci in c.iter().rev() {
        acc = (&acc * x + ci).mod_floor(m);
    }
    acc
}

fn mod_inverse_big(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let e = a.extended_gcd(m);
    if e.gcd.is_one() {
        Some(e.x.mod_floor(m))
    } else {
        None
    }
}

/// Rational reconstruction: find p/q with t = p * q^{-1} mod m and
/// |p|, |q| <= sqrt(m/2), by the half-extended Euclidean algorithm.
fn rational_reconstruct(t: &BigInt, m: &BigInt) -> Option<Rational> {
    let bound = (m / BigInt::from(2)).sqrt();
    let (mut r0, mut r1) = (m.clone(), t.mod_floor(m));
    let (mut s0, mut s1) = (BigInt::zero(), BigInt::one());
    while r1.abs() > bound {
        let q = &r0 / &r1;
        let r2 = &r0 - &(&q * &r1);
        let s2 = &s0 - &(&q * &s1);
        r0 = r1;
        r1 = r2;
        s0 = s1;
        s1 = s2;
    }
    if s1.is_zero() || s1.abs() > bound {
        return None;
    }
    if s1.is_negative() {
        Some(Rational::new(-r1, -s1))
    } else {
        Some(Rational::new(r1, s1))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{rat, rat_int};

    fn poly_from_roots(roots: &[(i64, i64)], extra_irreducible: bool) -> MultiPoly {
        let z = MultiPoly::var(Var::Z);
        let mut f = MultiPoly::one();
        for &(p, q) in roots {
            let lin = &z.mul_scalar(&rat_int(q)) - &MultiPoly::constant(rat_int(p));
            f = &f * &lin;
        }
        if extra_irreducible {
            // z^2 + 1 has no rational roots
            let quad = &(&z * &z) + &MultiPoly::one();
            f = &f * &quad;
        }
        f
    }

    #[test]
    fn finds_simple_and_multiple_roots() {
        // (z - 2)^2 (3z + 5) (z^2 + 1)
        let z = MultiPoly::var(Var::Z);
        let f = {
            let a = &z - &MultiPoly::constant(rat_int(2));
            let b = &z.mul_scalar(&rat_int(3)) + &MultiPoly::constant(rat_int(5));
            &(&(&a * &a) * &b) * &(&(&z * &z) + &MultiPoly::one())
        };
        let (mut roots, complete) = rational_roots(&f, Var::Z);
        roots.sort_by(|a, b| a.0.cmp(&b.0));
        assert_eq!(roots, vec![(rat(-5, 3), 1), (rat_int(2), 2)]);
        assert!(!complete);
    }

    #[test]
    fn full_split_detection_and_zero_root() {
        // z^2 (2z - 1) (z + 7)
        let f = poly_from_roots(&[(0, 1), (0, 1), (1, 2), (-7, 1)], false);
        let (mut roots, complete) = rational_roots(&f, Var::Z);
        roots.sort_by(|a, b| a.0.cmp(&b.0));
        assert_eq!(
            roots,
            vec![(rat_int(-7), 1), (rat_int(0), 2), (rat(1, 2), 1)]
        );
        assert!(complete);
    }

    #[test]
    fn no_rational_roots() {
        let f = poly_from_roots(&[], true); // z^2 + 1
        let (roots, complete) = rational_roots(&f, Var::Z);
        assert!(roots.is_empty());
        assert!(!complete);
    }

    #[test]
    fn big_coefficient_roots() {
        // root 123456789/987654321-ish reduced: use (987654321 z - 123456789)
        let z = MultiPoly::var(Var::Z);
        let lin = &z.mul_scalar(&rat_int(987654321)) - &MultiPoly::constant(rat_int(123456789));
        let quad = &(&z * &z) + &MultiPoly::constant(rat_int(3));
        let f = &lin * &quad;
        let (roots, complete) = rational_roots(&f, Var::Z);
        assert_eq!(roots, vec![(rat(123456789, 987654321), 1)]);
        assert!(!complete);
    }
}
