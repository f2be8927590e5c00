//! Deterministic constructions of large families in `M_n^d`.
//!
//! Every free choice ("pick some g", "pick an unused h") resolves to the
//! canonically first admissible polynomial, so the same parameters always
//! give the same family.

use crate::error::{Error, Result};
use crate::family::{check_lower_bound_range, lower_bound_cardinality, maximal_cardinality_f2_d1, Family};
use crate::irreducible::{to_usize, IrreducibleIndex};
use crate::poly::{FieldChar, Poly};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ConstructionParams {
    pub field: FieldChar,
    pub n: usize,
    pub d: usize,
}

impl ConstructionParams {
    /// Requires `n >= 1` and `d < n/2`.
    pub fn new(field: FieldChar, n: usize, d: usize) -> Result<Self> {
        check_lower_bound_range(n, d)?;
        Ok(ConstructionParams { field, n, d })
    }
}

fn check_index(index: &IrreducibleIndex, field: FieldChar, n: usize) -> Result<()> {
    if index.field() != field {
        return Err(Error::FieldMismatch {
            left: field.get(),
            right: index.field().get(),
        });
    }
    if index.max_degree() < n {
        return Err(Error::DegreeNotIndexed {
            requested: n,
            available: index.max_degree(),
        });
    }
    Ok(())
}

/// Collects products and refuses to silently merge two steps that happen
/// to produce the same polynomial.
struct Builder {
    family: Family,
}

impl Builder {
    fn push(&mut self, f: Poly, step: &str) -> Result<()> {
        let shown = f.to_human();
        if !self.family.insert(f)? {
            return Err(Error::Invariant(format!(
                "{step} produced {shown} twice"
            )));
        }
        Ok(())
    }

    fn finish(self, expected: usize) -> Result<Family> {
        if self.family.len() != expected {
            return Err(Error::Invariant(format!(
                "construction produced {} polynomials, formula gives {expected}",
                self.family.len()
            )));
        }
        Ok(self.family)
    }
}

/// Pairs every `g` of `I_i`, for `i` in `degrees`, with the first unused `h`
/// of `I_{n-i}`.
fn pair_with_unused(
    builder: &mut Builder,
    index: &IrreducibleIndex,
    n: usize,
    degrees: std::ops::RangeInclusive<usize>,
) -> Result<()> {
    for i in degrees {
        // n - i > n/2 >= i, so each partner degree is visited once
        let partners = index.irreducibles(n - i)?;
        let mut unused = partners.iter();
        for g in index.irreducibles(i)? {
            let h = unused.next().ok_or_else(|| {
                Error::Invariant(format!(
                    "ran out of unused degree-{} partners for degree {i}",
                    n - i
                ))
            })?;
            builder.push(g * h, "pairing step")?;
        }
    }
    Ok(())
}

fn push_squares(builder: &mut Builder, index: &IrreducibleIndex, n: usize) -> Result<()> {
    if n.is_multiple_of(2) {
        for g in index.irreducibles(n / 2)? {
            builder.push(g.pow(2), "square step")?;
        }
    }
    Ok(())
}

/// The lower-bound construction for `d < n/2` over any prime field.
///
/// 1. all of `I_n`;
/// 2. for `i <= d`, `g_i * h` for every `h` in `I_{n-i}`, with `g_i` the first
///    element of `I_i`;
/// 3. for `d < i <= (n-1)/2`, every `g` in `I_i` times a fresh `h` in `I_{n-i}`;
/// 4. `g^2` for `g` in `I_{n/2}` when `n` is even;
/// 5. for `i <= d`, `g^(n div i) * h` for every `g` in `I_i`, with `h` the first
///    element of `I_{n mod i}` (so `h = 1` when `i | n`).
pub fn construct_lower_bound(params: &ConstructionParams, index: &IrreducibleIndex) -> Result<Family> {
    let ConstructionParams { field, n, d } = *params;
    check_lower_bound_range(n, d)?;
    check_index(index, field, n)?;
    let expected = to_usize(&lower_bound_cardinality(field, n, d)?)?;
    let mut builder = Builder {
        family: Family::new(field, n),
    };

    for f in index.irreducibles(n)? {
        builder.push(f.clone(), "step 1")?;
    }
    for i in 1..=d {
        let g = &index.irreducibles(i)?[0];
        for h in index.irreducibles(n - i)? {
            builder.push(g * h, "step 2")?;
        }
    }
    pair_with_unused(&mut builder, index, n, d + 1..=(n - 1) / 2)?;
    push_squares(&mut builder, index, n)?;
    for i in 1..=d {
        let h = &index.irreducibles(n % i)?[0];
        for g in index.irreducibles(i)? {
            builder.push(&g.pow((n / i) as u32) * h, "step 5")?;
        }
    }
    builder.finish(expected)
}

/// The maximal construction in `M_n^1` over GF(2), `n >= 3`:
/// `I_n`, `(x+1) g` for `g` in `I_{n-1}`, fresh pairings for degrees
/// `2..=(n-1)/2`, squares of `I_{n/2}` when `n` is even, and `(x+1)^n`.
pub fn construct_maximal_f2(n: usize, index: &IrreducibleIndex) -> Result<Family> {
    let expected = to_usize(&maximal_cardinality_f2_d1(n)?)?;
    let field = FieldChar::TWO;
    check_index(index, field, n)?;
    let x1 = Poly::linear(field, 1);
    let mut builder = Builder {
        family: Family::new(field, n),
    };

    for f in index.irreducibles(n)? {
        builder.push(f.clone(), "step 1")?;
    }
    for g in index.irreducibles(n - 1)? {
        builder.push(&x1 * g, "step 2")?;
    }
    pair_with_unused(&mut builder, index, n, 2..=(n - 1) / 2)?;
    push_squares(&mut builder, index, n)?;
    builder.push(x1.pow(n as u32), "step 5")?;
    builder.finish(expected)
}
