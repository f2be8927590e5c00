//! Families of polynomials in `S_n` and the pairwise-GCD membership test
//! for `M_n^d`.
//!
//! File format: a header line `q=<p> n=<n>`, then one polynomial per line in
//! canonical digit form. Lines starting with `#` and blank lines are ignored
//! on input. Output is always sorted canonically.

use std::collections::{BTreeSet, HashMap};
use std::fmt::Write as _;
use std::path::Path;

use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::irreducible::restricted_count;
use crate::poly::{FieldChar, Poly};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Family {
    field: FieldChar,
    n: usize,
    polys: BTreeSet<Poly>,
}

/// Largest pairwise GCD degree in a family, with a pair attaining it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GcdProfile {
    pub max_degree: usize,
    pub witness: Option<(Poly, Poly)>,
}

/// True iff `f` is monic of degree `n` with nonzero constant term.
pub fn in_sn(f: &Poly, n: usize) -> bool {
    f.degree() == Some(n) && f.is_monic() && f.constant_term() != 0
}

impl Family {
    pub fn new(field: FieldChar, n: usize) -> Self {
        Family {
            field,
            n,
            polys: BTreeSet::new(),
        }
    }

    /// Rejects polynomials outside `S_n` and repeated entries.
    pub fn from_polys<I>(field: FieldChar, n: usize, polys: I) -> Result<Self>
    where
        I: IntoIterator<Item = Poly>,
    {
        let mut family = Family::new(field, n);
        for f in polys {
            let shown = f.to_human();
            if !family.insert(f)? {
                return Err(Error::Invariant(format!("duplicate member {shown}")));
            }
        }
        Ok(family)
    }

    pub fn field(&self) -> FieldChar {
        self.field
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.polys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.polys.is_empty()
    }

    pub fn contains(&self, f: &Poly) -> bool {
        self.polys.contains(f)
    }

    /// Members in canonical order.
    pub fn iter(&self) -> impl Iterator<Item = &Poly> + '_ {
        self.polys.iter()
    }

    pub fn polys(&self) -> &BTreeSet<Poly> {
        &self.polys
    }

    /// Adds `f`; returns false if it was already present.
    pub fn insert(&mut self, f: Poly) -> Result<bool> {
        if f.field() != self.field {
            return Err(Error::FieldMismatch {
                left: self.field.get(),
                right: f.field().get(),
            });
        }
        if !in_sn(&f, self.n) {
            return Err(Error::NotInSn {
                poly: f.to_human(),
                p: self.field.get(),
                n: self.n,
            });
        }
        Ok(self.polys.insert(f))
    }

    pub fn remove(&mut self, f: &Poly) -> bool {
        self.polys.remove(f)
    }

    /// Each member is factored once and every monic divisor of it is
    /// recorded. The largest pairwise GCD degree is the largest degree of a
    /// divisor shared by two members, and the first two members recorded
    /// for such a divisor give the first attaining pair in canonical order.
    pub fn max_pairwise_gcd_degree(&self) -> GcdProfile {
        let members: Vec<&Poly> = self.polys.iter().collect();
        let mut factor_ids: HashMap<Poly, u32> = HashMap::new();
        let mut factor_degrees: Vec<usize> = Vec::new();
        // divisor (as sorted factor-id/exponent pairs) -> first two holders
        let mut holders: HashMap<Vec<(u32, u32)>, Holders> = HashMap::new();
        for (i, f) in members.iter().enumerate() {
            let factors: Vec<(u32, u32)> = f
                .factorize()
                .expect("members are monic of positive degree")
                .factors()
                .iter()
                .map(|(h, m)| {
                    let next = factor_ids.len() as u32;
                    let id = *factor_ids.entry(h.clone()).or_insert_with(|| {
                        factor_degrees.push(h.degree().unwrap_or(0));
                        next
                    });
                    (id, *m)
                })
                .collect();
            for_each_divisor(&factors, |divisor| {
                match holders.get_mut(divisor) {
                    Some((_, second @ None)) => *second = Some(i),
                    Some(_) => {}
                    None => {
                        holders.insert(divisor.to_vec(), (i, None));
                    }
                }
            });
        }
        let mut best: Option<(usize, usize, usize)> = None;
        for (divisor, holder) in &holders {
            let (i, Some(j)) = *holder else { continue };
            let deg: usize = divisor
                .iter()
                .map(|&(id, m)| factor_degrees[id as usize] * m as usize)
                .sum();
            let better = match best {
                None => true,
                Some((b, bi, bj)) => deg > b || (deg == b && (i, j) < (bi, bj)),
            };
            if better {
                best = Some((deg, i, j));
            }
        }
        match best {
            None => GcdProfile {
                max_degree: 0,
                witness: None,
            },
            Some((deg, i, j)) => GcdProfile {
                max_degree: deg,
                witness: Some((members[i].clone(), members[j].clone())),
            },
        }
    }

    /// Membership in `M_n^d`, `0 <= d <= n`.
    pub fn is_member(&self, d: usize) -> Result<bool> {
        if d > self.n {
            return Err(Error::OutOfRange(format!(
                "d must lie in 0..={} (got {d})",
                self.n
            )));
        }
        Ok(self.max_pairwise_gcd_degree().max_degree <= d)
    }

    pub fn to_file_string(&self) -> String {
        let mut out = format!("q={} n={}\n", self.field, self.n);
        for f in &self.polys {
            let _ = writeln!(out, "{f}");
        }
        out
    }

    pub fn parse_file(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let (hline, header) = lines
            .next()
            .ok_or_else(|| Error::Parse("empty family file".into()))?;
        let (field, n) = parse_header(header).map_err(|msg| Error::FamilyFile { line: hline, msg })?;
        let mut family = Family::new(field, n);
        for (line, text) in lines {
            let at = |msg: String| Error::FamilyFile { line, msg };
            let f = Poly::parse(text, Some(field)).map_err(|e| at(e.to_string()))?;
            let shown = f.to_human();
            match family.insert(f) {
                Ok(true) => {}
                Ok(false) => return Err(at(format!("duplicate member {shown}"))),
                Err(e) => return Err(at(e.to_string())),
            }
        }
        Ok(family)
    }

    pub fn write_to(&self, path: impl AsRef<Path>) -> Result<()> {
        std::fs::write(path, self.to_file_string())?;
        Ok(())
    }

    pub fn read_from(path: impl AsRef<Path>) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Self::parse_file(&text)
    }
}

/// First and second family index seen for a divisor.
type Holders = (usize, Option<usize>);

/// Calls `visit` on every sub-multiset of `factors`, the empty one included.
fn for_each_divisor(factors: &[(u32, u32)], mut visit: impl FnMut(&[(u32, u32)])) {
    fn walk(
        factors: &[(u32, u32)],
        current: &mut Vec<(u32, u32)>,
        visit: &mut impl FnMut(&[(u32, u32)]),
    ) {
        let Some((&(id, mult), rest)) = factors.split_first() else {
            visit(current);
            return;
        };
        walk(rest, current, visit);
        for e in 1..=mult {
            current.push((id, e));
            walk(rest, current, visit);
            current.pop();
        }
    }
    walk(factors, &mut Vec::new(), &mut visit);
}

fn parse_header(header: &str) -> std::result::Result<(FieldChar, usize), String> {
    let mut q = None;
    let mut n = None;
    for part in header.split_whitespace() {
        match part.split_once('=') {
            Some(("q", v)) => q = v.parse::<u64>().ok(),
            Some(("n", v)) => n = v.parse::<usize>().ok(),
            _ => return Err(format!("unexpected header field `{part}`")),
        }
    }
    match (q, n) {
        (Some(q), Some(n)) if n >= 1 => {
            let field = FieldChar::new(q).map_err(|e| e.to_string())?;
            Ok((field, n))
        }
        _ => Err(format!("header must read `q=<p> n=<n>`, got `{header}`")),
    }
}

/// `sum_{i=1}^{n/2} I_i + sum_{i=n-d}^{n-1} I_i + I_n`, for `d < n/2`.
pub fn lower_bound_cardinality(p: FieldChar, n: usize, d: usize) -> Result<BigUint> {
    check_lower_bound_range(n, d)?;
    let count = |k: usize| restricted_count(p, k as u32);
    let mut total = count(n);
    for i in 1..=n / 2 {
        total += count(i);
    }
    for i in n - d..n {
        total += count(i);
    }
    Ok(total)
}

pub(crate) fn check_lower_bound_range(n: usize, d: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::OutOfRange("n must be at least 1".into()));
    }
    if 2 * d >= n {
        return Err(Error::OutOfRange(format!(
            "the lower-bound construction requires d < n/2 (got n={n}, d={d})"
        )));
    }
    Ok(())
}

/// `N_n = sum_{i=1}^{n/2} I_i + I_{n-1} + I_n` over GF(2), for `n >= 3`.
///
/// For `n = 2` the formula gives 3 while `|S_2| = 2`, so it is refused.
pub fn maximal_cardinality_f2_d1(n: usize) -> Result<BigUint> {
    if n < 3 {
        return Err(Error::OutOfRange(format!(
            "the maximal cardinality formula needs n >= 3 (got n={n}); |S_2| = 2 already beats it"
        )));
    }
    let count = |k: usize| restricted_count(FieldChar::TWO, k as u32);
    let mut total = count(n) + count(n - 1);
    for i in 1..=n / 2 {
        total += count(i);
    }
    Ok(total)
}
