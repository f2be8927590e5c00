//! Brute-force helpers shared by the integration tests. Nothing here calls
//! the library's factorization, irreducibility or enumeration code.
#![allow(dead_code)]

use gcdfam::{FieldChar, Poly};

pub fn fc(p: u64) -> FieldChar {
    FieldChar::new(p).unwrap()
}

pub fn f2(s: &str) -> Poly {
    Poly::parse(s, Some(FieldChar::TWO)).unwrap()
}

/// Every monic polynomial of degree `k`, built directly from coefficient
/// vectors.
pub fn all_monic(p: FieldChar, k: usize) -> Vec<Poly> {
    let q = u64::from(p.get());
    (0..q.pow(k as u32))
        .map(|mut v| {
            let mut coeffs: Vec<i64> = Vec::with_capacity(k + 1);
            for _ in 0..k {
                coeffs.push((v % q) as i64);
                v /= q;
            }
            coeffs.push(1);
            Poly::new(p, &coeffs)
        })
        .collect()
}

/// Irreducibility by dividing by every monic polynomial of degree
/// `1..=deg/2`.
pub fn brute_is_irreducible(f: &Poly) -> bool {
    let n = f.degree().expect("nonzero");
    assert!(n >= 1);
    (1..=n / 2).all(|k| {
        all_monic(f.field(), k)
            .iter()
            .all(|g| !f.divmod(g).unwrap().1.is_zero())
    })
}

/// Monic irreducibles of degree `k`, by exhaustive search.
pub fn brute_irreducibles(p: FieldChar, k: usize) -> Vec<Poly> {
    all_monic(p, k)
        .into_iter()
        .filter(brute_is_irreducible)
        .collect()
}

/// Random polynomial of degree exactly `deg` (monic if requested).
pub fn random_poly<R: rand::Rng>(rng: &mut R, p: FieldChar, deg: usize, monic: bool) -> Poly {
    let q = i64::from(p.get());
    let mut coeffs: Vec<i64> = (0..deg).map(|_| rng.gen_range(0..q)).collect();
    coeffs.push(if monic { 1 } else { rng.gen_range(1..q) });
    Poly::new(p, &coeffs)
}
