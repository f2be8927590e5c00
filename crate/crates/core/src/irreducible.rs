//! Counting and enumerating monic irreducibles per degree.
//!
//! `I_k` here always means the irreducibles of degree `k` with nonzero
//! constant term. For `k >= 2` that is every monic irreducible, so only
//! degree 1 differs from Gauss's count (the polynomial `x` is dropped).
//! `I_0` is the single constant `1`.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::poly::{FieldChar, Poly};

/// Largest candidate table the sieve will allocate (`p^k` entries).
pub const MAX_SIEVE_ENTRIES: u64 = 1 << 26;

/// Möbius function.
pub fn mobius(m: u64) -> Result<i8> {
    if m == 0 {
        return Err(Error::OutOfRange("mobius is undefined at 0".into()));
    }
    let mut rest = m;
    let mut sign = 1i8;
    let mut d = 2u64;
    while d * d <= rest {
        if rest.is_multiple_of(d) {
            rest /= d;
            if rest.is_multiple_of(d) {
                return Ok(0);
            }
            sign = -sign;
        }
        d += 1;
    }
    if rest > 1 {
        sign = -sign;
    }
    Ok(sign)
}

/// Number of monic irreducibles of degree `k >= 1` over GF(p),
/// `(1/k) * sum_{m | k} mu(m) p^(k/m)`.
pub fn gauss_count(p: FieldChar, k: u32) -> Result<BigUint> {
    if k == 0 {
        return Err(Error::OutOfRange("gauss_count needs k >= 1".into()));
    }
    let base = BigInt::from(p.get());
    let mut sum = BigInt::zero();
    for m in (1..=k).filter(|m| k.is_multiple_of(*m)) {
        match mobius(u64::from(m))? {
            0 => {}
            s => sum += BigInt::from(s) * base.pow(k / m),
        }
    }
    let (q, r) = (sum.clone() / k, sum % k);
    if !r.is_zero() {
        return Err(Error::Invariant(format!(
            "Gauss sum not divisible by k={k}"
        )));
    }
    q.to_biguint()
        .ok_or_else(|| Error::Invariant("negative Gauss count".into()))
}

/// `I_k`: irreducibles of degree `k` with nonzero constant term.
pub fn restricted_count(p: FieldChar, k: u32) -> BigUint {
    match k {
        0 => BigUint::one(),
        1 => BigUint::from(p.get() - 1),
        _ => gauss_count(p, k).expect("k >= 2"),
    }
}

/// The sorted list `I_k` for a single degree.
pub fn enumerate_irreducibles(p: FieldChar, k: usize) -> Result<Vec<Poly>> {
    if k == 0 {
        return Err(Error::OutOfRange("enumerate_irreducibles needs k >= 1".into()));
    }
    let index = IrreducibleIndex::new(p, k)?;
    Ok(index.irreducibles(k)?.to_vec())
}

/// Irreducibles with nonzero constant term for every degree up to a cap,
/// each list in canonical order.
#[derive(Debug, Clone)]
pub struct IrreducibleIndex {
    field: FieldChar,
    lists: Vec<Vec<Poly>>,
    gauss: Vec<BigUint>,
}

impl IrreducibleIndex {
    /// Sieves degrees `1..=max_degree` bottom-up. Every product `g * h` with
    /// `g` a lower-degree irreducible and `h` monic with nonzero constant term
    /// is struck out; the survivors are the irreducibles.
    pub fn new(field: FieldChar, max_degree: usize) -> Result<Self> {
        let p = u64::from(field.get());
        let table_size = |k: usize| {
            u32::try_from(k)
                .ok()
                .and_then(|k| p.checked_pow(k))
                .filter(|&t| t <= MAX_SIEVE_ENTRIES)
        };
        if table_size(max_degree).is_none() {
            return Err(Error::OutOfRange(format!(
                "degree {max_degree} over GF({p}) exceeds the enumeration cap of {MAX_SIEVE_ENTRIES} candidates"
            )));
        }
        let mut lists: Vec<Vec<Poly>> = vec![vec![Poly::one(field)]];
        let mut gauss = vec![BigUint::one()];
        for k in 1..=max_degree {
            let table = table_size(k).expect("checked against the cap above");
            let list = sieve_degree(field, k, table, &lists);
            lists.push(list);
            gauss.push(gauss_count(field, k as u32)?);
        }
        Ok(IrreducibleIndex {
            field,
            lists,
            gauss,
        })
    }

    pub fn field(&self) -> FieldChar {
        self.field
    }

    pub fn max_degree(&self) -> usize {
        self.lists.len() - 1
    }

    fn check_degree(&self, k: usize) -> Result<()> {
        if k > self.max_degree() {
            return Err(Error::DegreeNotIndexed {
                requested: k,
                available: self.max_degree(),
            });
        }
        Ok(())
    }

    /// `I_k` in canonical order; degree 0 gives `[1]`.
    pub fn irreducibles(&self, k: usize) -> Result<&[Poly]> {
        self.check_degree(k)?;
        Ok(&self.lists[k])
    }

    /// `|I_k|`.
    pub fn count(&self, k: usize) -> Result<usize> {
        Ok(self.irreducibles(k)?.len())
    }

    /// Gauss's count of all monic irreducibles of degree `k >= 1`.
    pub fn gauss_count(&self, k: usize) -> Result<&BigUint> {
        if k == 0 {
            return Err(Error::OutOfRange("gauss_count needs k >= 1".into()));
        }
        self.check_degree(k)?;
        Ok(&self.gauss[k])
    }

    /// Membership in `I_k` for `k = deg f`.
    pub fn contains(&self, f: &Poly) -> bool {
        match f.degree() {
            Some(k) if f.field() == self.field && k <= self.max_degree() => {
                self.lists[k].binary_search(f).is_ok()
            }
            _ => false,
        }
    }

    /// Sum of `I_i` over the inclusive range, as an exact integer.
    pub fn count_sum(&self, from: usize, to: usize) -> Result<BigUint> {
        let mut total = BigUint::zero();
        for k in from..=to {
            total += BigUint::from(self.count(k)?);
        }
        Ok(total)
    }
}

fn sieve_degree(field: FieldChar, k: usize, table: u64, lower: &[Vec<Poly>]) -> Vec<Poly> {
    let p = u64::from(field.get());
    // slot = value of the k lower coefficients; slots with zero constant
    // term are never candidates
    let mut composite = vec![false; table as usize];
    for (j, factors) in lower.iter().enumerate().take(k / 2 + 1).skip(1) {
        let cofactor_slots = p.pow((k - j) as u32);
        for g in factors {
            for slot in (0..cofactor_slots).filter(|s| s % p != 0) {
                let h = Poly::monic_from_index(field, k - j, slot);
                let prod = g * &h;
                composite[lower_value(&prod, k) as usize] = true;
            }
        }
    }
    (0..table)
        .filter(|&s| s % p != 0 && !composite[s as usize])
        .map(|s| Poly::monic_from_index(field, k, s))
        .collect()
}

fn lower_value(f: &Poly, k: usize) -> u64 {
    let p = u64::from(f.field().get());
    f.coeffs()[..k]
        .iter()
        .rev()
        .fold(0u64, |acc, &c| acc * p + u64::from(c))
}

/// Converts an exact count into a `usize`, for sizes that must be materialized.
pub fn to_usize(n: &BigUint) -> Result<usize> {
    n.to_usize()
        .ok_or_else(|| Error::OutOfRange(format!("count {n} does not fit in memory")))
}
