//! Dense univariate polynomials over a prime field GF(p).
//!
//! Coefficients are stored constant term first. The stored vector never ends
//! in a zero, so the zero polynomial is the empty vector and has no degree.
//!
//! Polynomials are totally ordered by degree and then by their coefficients
//! read from the leading term down. Equivalently, a polynomial compares like
//! the integer `sum c_i p^i`. That order is used for enumeration, for tie
//! breaks in [`Poly::lowest_factor`] and for every canonical listing.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};

/// Characteristic of a prime field.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldChar(u32);

impl FieldChar {
    pub const TWO: FieldChar = FieldChar(2);

    pub fn new(p: u64) -> Result<Self> {
        if p > u64::from(u32::MAX) || !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(FieldChar(p as u32))
    }

    #[inline]
    pub fn get(self) -> u32 {
        self.0
    }

    #[inline]
    fn reduce(self, v: i64) -> u32 {
        v.rem_euclid(i64::from(self.0)) as u32
    }

    #[inline]
    fn add(self, a: u32, b: u32) -> u32 {
        ((u64::from(a) + u64::from(b)) % u64::from(self.0)) as u32
    }

    #[inline]
    fn sub(self, a: u32, b: u32) -> u32 {
        ((u64::from(a) + u64::from(self.0) - u64::from(b)) % u64::from(self.0)) as u32
    }

    #[inline]
    fn mul(self, a: u32, b: u32) -> u32 {
        ((u64::from(a) * u64::from(b)) % u64::from(self.0)) as u32
    }

    /// Multiplicative inverse of a nonzero residue, via Fermat.
    fn inv(self, a: u32) -> u32 {
        debug_assert!(a != 0);
        let mut result = 1u32;
        let mut base = a;
        let mut e = self.0 - 2;
        while e > 0 {
            if e & 1 == 1 {
                result = self.mul(result, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        result
    }
}

impl fmt::Display for FieldChar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    field: FieldChar,
    coeffs: Vec<u32>,
}

/// Builds a polynomial from integer coefficients (constant term first),
/// reducing every entry mod `p`.
pub fn make_poly(p: u64, coeffs: &[i64]) -> Result<Poly> {
    Ok(Poly::new(FieldChar::new(p)?, coeffs))
}

impl Poly {
    pub fn new(field: FieldChar, coeffs: &[i64]) -> Self {
        let coeffs = coeffs.iter().map(|&c| field.reduce(c)).collect();
        Self::from_residues(field, coeffs)
    }

    /// Takes residues that are already in `[0, p)`.
    pub fn from_residues(field: FieldChar, mut coeffs: Vec<u32>) -> Self {
        debug_assert!(coeffs.iter().all(|&c| c < field.get()));
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Poly { field, coeffs }
    }

    pub fn zero(field: FieldChar) -> Self {
        Poly {
            field,
            coeffs: Vec::new(),
        }
    }

    pub fn one(field: FieldChar) -> Self {
        Poly {
            field,
            coeffs: vec![1],
        }
    }

    pub fn x(field: FieldChar) -> Self {
        Poly {
            field,
            coeffs: vec![0, 1],
        }
    }

    /// `x + c`.
    pub fn linear(field: FieldChar, c: i64) -> Self {
        Poly::new(field, &[c, 1])
    }

    /// The monic polynomial of degree `k` whose lower coefficients are the
    /// base-p digits of `index`. Iterating `index` over `0..p^k` walks the
    /// monic degree-k polynomials in canonical order.
    pub fn monic_from_index(field: FieldChar, k: usize, mut index: u64) -> Self {
        let p = u64::from(field.get());
        let mut coeffs = Vec::with_capacity(k + 1);
        for _ in 0..k {
            coeffs.push((index % p) as u32);
            index /= p;
        }
        coeffs.push(1);
        Poly { field, coeffs }
    }

    #[inline]
    pub fn field(&self) -> FieldChar {
        self.field
    }

    /// Residues, constant term first.
    #[inline]
    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }

    /// `None` for the zero polynomial.
    #[inline]
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    #[inline]
    pub fn is_one(&self) -> bool {
        self.coeffs == [1]
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last() == Some(&1)
    }

    pub fn leading_coeff(&self) -> u32 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn constant_term(&self) -> u32 {
        self.coeffs.first().copied().unwrap_or(0)
    }

    /// Coefficient of `x^i`.
    pub fn coeff(&self, i: usize) -> u32 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    /// The value `sum c_i p^i`, or `None` if it does not fit in 128 bits.
    pub fn to_index(&self) -> Option<u128> {
        let p = u128::from(self.field.get());
        let mut acc: u128 = 0;
        for &c in self.coeffs.iter().rev() {
            acc = acc.checked_mul(p)?.checked_add(u128::from(c))?;
        }
        Some(acc)
    }

    fn degree_str(&self) -> String {
        match self.degree() {
            Some(d) => d.to_string(),
            None => "-inf".to_string(),
        }
    }

    fn check_field(&self, other: &Poly) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch {
                left: self.field.get(),
                right: other.field.get(),
            });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Poly) -> Result<Poly> {
        self.check_field(other)?;
        Ok(self.add_unchecked(other))
    }

    pub fn try_sub(&self, other: &Poly) -> Result<Poly> {
        self.check_field(other)?;
        Ok(self.sub_unchecked(other))
    }

    pub fn try_mul(&self, other: &Poly) -> Result<Poly> {
        self.check_field(other)?;
        Ok(self.mul_unchecked(other))
    }

    fn add_unchecked(&self, other: &Poly) -> Poly {
        let f = self.field;
        let len = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..len)
            .map(|i| f.add(self.coeff(i), other.coeff(i)))
            .collect();
        Poly::from_residues(f, coeffs)
    }

    fn sub_unchecked(&self, other: &Poly) -> Poly {
        let f = self.field;
        let len = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..len)
            .map(|i| f.sub(self.coeff(i), other.coeff(i)))
            .collect();
        Poly::from_residues(f, coeffs)
    }

    fn mul_unchecked(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero(self.field);
        }
        let p = u64::from(self.field.get());
        let mut acc = vec![0u64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                acc[i + j] = (acc[i + j] + u64::from(a) * u64::from(b)) % p;
            }
        }
        Poly::from_residues(self.field, acc.into_iter().map(|c| c as u32).collect())
    }

    /// Multiplies every coefficient by the residue `c`.
    pub fn scale(&self, c: u32) -> Poly {
        let f = self.field;
        let c = c % f.get();
        Poly::from_residues(f, self.coeffs.iter().map(|&a| f.mul(a, c)).collect())
    }

    /// The monic associate. Zero stays zero.
    pub fn monic(&self) -> Poly {
        match self.coeffs.last() {
            None | Some(1) => self.clone(),
            Some(&lc) => self.scale(self.field.inv(lc)),
        }
    }

    /// Quotient and remainder with `self = q * divisor + r` and `deg r < deg divisor`.
    pub fn divmod(&self, divisor: &Poly) -> Result<(Poly, Poly)> {
        self.check_field(divisor)?;
        if divisor.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.divmod_unchecked(divisor))
    }

    fn divmod_unchecked(&self, divisor: &Poly) -> (Poly, Poly) {
        let f = self.field;
        let dl = divisor.coeffs.len();
        if self.coeffs.len() < dl {
            return (Poly::zero(f), self.clone());
        }
        let lead_inv = f.inv(divisor.leading_coeff());
        let mut rem = self.coeffs.clone();
        let mut quot = vec![0u32; rem.len() - dl + 1];
        for shift in (0..quot.len()).rev() {
            let top = rem[shift + dl - 1];
            if top == 0 {
                continue;
            }
            let factor = f.mul(top, lead_inv);
            quot[shift] = factor;
            for (j, &dc) in divisor.coeffs.iter().enumerate() {
                rem[shift + j] = f.sub(rem[shift + j], f.mul(factor, dc));
            }
        }
        rem.truncate(dl - 1);
        (Poly::from_residues(f, quot), Poly::from_residues(f, rem))
    }

    fn rem_unchecked(&self, divisor: &Poly) -> Poly {
        self.divmod_unchecked(divisor).1
    }

    /// True iff `self` divides `other` exactly. The zero polynomial divides
    /// only zero.
    pub fn divides(&self, other: &Poly) -> bool {
        if self.field != other.field {
            return false;
        }
        if self.is_zero() {
            return other.is_zero();
        }
        other.rem_unchecked(self).is_zero()
    }

    /// Exact quotient, if `divisor` divides `self`.
    pub fn exact_div(&self, divisor: &Poly) -> Option<Poly> {
        if self.field != divisor.field || divisor.is_zero() {
            return None;
        }
        let (q, r) = self.divmod_unchecked(divisor);
        r.is_zero().then_some(q)
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Poly) -> Result<Poly> {
        self.check_field(other)?;
        if self.is_zero() && other.is_zero() {
            return Err(Error::GcdOfZeros);
        }
        Ok(self.gcd_unchecked(other))
    }

    fn gcd_unchecked(&self, other: &Poly) -> Poly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem_unchecked(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn pow(&self, mut k: u32) -> Poly {
        let mut result = Poly::one(self.field);
        let mut base = self.clone();
        while k > 0 {
            if k & 1 == 1 {
                result = result.mul_unchecked(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul_unchecked(&base);
            }
        }
        result
    }

    fn pow_mod(&self, mut k: u64, modulus: &Poly) -> Poly {
        let mut result = Poly::one(self.field).rem_unchecked(modulus);
        let mut base = self.rem_unchecked(modulus);
        while k > 0 {
            if k & 1 == 1 {
                result = result.mul_unchecked(&base).rem_unchecked(modulus);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul_unchecked(&base).rem_unchecked(modulus);
            }
        }
        result
    }

    fn require_degree(&self, op: &'static str, min: usize) -> Result<usize> {
        match self.degree() {
            Some(d) if d >= min => Ok(d),
            _ => Err(Error::DegreeTooSmall {
                op,
                min,
                got: self.degree_str(),
            }),
        }
    }

    /// Irreducibility over GF(p).
    ///
    /// A polynomial of degree `n` is irreducible iff it has no irreducible
    /// factor of degree `k <= n/2`, and the degree-k irreducible factors of a
    /// squarefree-or-not `f` are exactly those of `gcd(f, x^(p^k) - x)`.
    pub fn is_irreducible(&self) -> Result<bool> {
        let n = self.require_degree("is_irreducible", 1)?;
        let f = self.monic();
        let mut frob = DegreeScreen::new(&f);
        for k in 1..=n / 2 {
            if !frob.next_factor_product(k).is_one() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Complete factorization into monic irreducibles.
    ///
    /// For each degree `k` in increasing order, `gcd(rem, x^(p^k) - x)` tells
    /// whether a degree-k factor is present; the factors themselves are
    /// extracted by trial division over the monic degree-k candidates in
    /// canonical order. Once `2k > deg rem`, what is left is irreducible.
    pub fn factorize(&self) -> Result<Factorization> {
        self.require_degree("factorize", 1)?;
        if !self.is_monic() {
            return Err(Error::NotMonic { op: "factorize" });
        }
        let field = self.field;
        let p = u64::from(field.get());
        let x = Poly::x(field);
        let mut rem = self.clone();
        // x^(p^k) mod rem; stays valid when rem shrinks to a divisor of itself
        let mut frobenius = x.rem_unchecked(&rem);
        let mut factors: Vec<(Poly, u32)> = Vec::new();
        let mut k = 1usize;
        while let Some(deg) = rem.degree().filter(|&d| d > 0) {
            if 2 * k > deg {
                factors.push((rem, 1));
                break;
            }
            frobenius = frobenius.pow_mod(p, &rem);
            let mut product = rem.gcd_unchecked(&frobenius.sub_unchecked(&x));
            if !product.is_one() {
                // beyond degree 1 an irreducible has nonzero constant term
                let candidates = (0..p.pow(k as u32)).filter(|i| k == 1 || i % p != 0);
                for index in candidates {
                    if product.is_one() {
                        break;
                    }
                    let cand = Poly::monic_from_index(field, k, index);
                    if let Some(q) = product.exact_div(&cand) {
                        product = q;
                        let mut mult = 0u32;
                        while let Some(q) = rem.exact_div(&cand) {
                            rem = q;
                            mult += 1;
                        }
                        factors.push((cand, mult));
                    }
                }
                frobenius = frobenius.rem_unchecked(&rem);
            }
            k += 1;
        }
        factors.sort();
        Ok(Factorization { factors })
    }

    /// The irreducible factor of least degree, ties broken by the canonical
    /// order.
    pub fn lowest_factor(&self) -> Result<Poly> {
        self.require_degree("lowest_factor", 1)?;
        let f = self.monic();
        let mut screen = DegreeScreen::new(&f);
        let n = f.degree().unwrap_or(0);
        for k in 1..=n / 2 {
            let product = screen.next_factor_product(k);
            if product.is_one() {
                continue;
            }
            let candidates = u64::from(f.field.get()).pow(k as u32);
            for index in 0..candidates {
                let cand = Poly::monic_from_index(f.field, k, index);
                if cand.divides(&product) {
                    return Ok(cand);
                }
            }
            unreachable!("gcd with x^(p^k) - x contains a degree-{k} factor");
        }
        Ok(f)
    }

    /// Human-readable form, e.g. `x^4+x^3+1` or `2x^2+1`.
    pub fn to_human(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut terms = Vec::new();
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let coef = if c == 1 && i > 0 {
                String::new()
            } else {
                c.to_string()
            };
            let term = match i {
                0 => coef,
                1 => format!("{coef}x"),
                _ => format!("{coef}x^{i}"),
            };
            terms.push(term);
        }
        terms.join("+")
    }

    /// Canonical text with field prefix, e.g. `p2:10011`.
    pub fn to_prefixed(&self) -> String {
        format!("p{}:{}", self.field, self)
    }

    /// Parses either the canonical digit form (`10011`, optionally prefixed
    /// with `p2:`) or a human-readable form (`x^4+x^3+1`). A prefix, when
    /// present, must agree with `field` if both are given.
    pub fn parse(text: &str, field: Option<FieldChar>) -> Result<Poly> {
        let text = text.trim();
        let (field, body) = match text.split_once(':') {
            Some((prefix, body)) => {
                let p: u64 = prefix
                    .strip_prefix('p')
                    .and_then(|s| s.parse().ok())
                    .ok_or_else(|| Error::Parse(format!("bad field prefix `{prefix}`")))?;
                let pf = FieldChar::new(p)?;
                if let Some(expected) = field {
                    if expected != pf {
                        return Err(Error::FieldMismatch {
                            left: expected.get(),
                            right: pf.get(),
                        });
                    }
                }
                (pf, body.trim())
            }
            None => (
                field.ok_or_else(|| {
                    Error::Parse(format!("`{text}` needs a `p<prime>:` prefix"))
                })?,
                text,
            ),
        };
        if body.is_empty() {
            return Err(Error::Parse("empty polynomial".into()));
        }
        if body.chars().all(|c| c.is_ascii_alphanumeric()) && !body.contains(['x', 'X']) {
            parse_digits(body, field)
        } else {
            parse_human(body, field)
        }
    }
}

fn parse_digits(body: &str, field: FieldChar) -> Result<Poly> {
    let p = field.get();
    if p > 36 {
        return Err(Error::Parse(format!(
            "digit form supports p <= 36, got p={p}"
        )));
    }
    let coeffs = body
        .chars()
        .map(|c| {
            c.to_digit(36)
                .filter(|&d| d < p)
                .ok_or_else(|| Error::Parse(format!("`{c}` is not a base-{p} digit")))
        })
        .collect::<Result<Vec<u32>>>()?;
    Ok(Poly::from_residues(field, coeffs))
}

fn parse_human(body: &str, field: FieldChar) -> Result<Poly> {
    let cleaned: String = body.chars().filter(|c| !c.is_whitespace()).collect();
    let bad = || Error::Parse(format!("cannot parse `{body}`"));
    let mut coeffs: Vec<i64> = Vec::new();
    let mut rest = cleaned.as_str();
    let mut first = true;
    while !rest.is_empty() {
        let sign = match rest.as_bytes()[0] {
            b'+' => {
                rest = &rest[1..];
                1
            }
            b'-' => {
                rest = &rest[1..];
                -1
            }
            _ if first => 1,
            _ => return Err(bad()),
        };
        first = false;
        let end = rest[1.min(rest.len())..]
            .find(['+', '-'])
            .map_or(rest.len(), |i| i + 1);
        let term = &rest[..end];
        rest = &rest[end..];
        let (coef, exp) = match term.find(['x', 'X']) {
            None => (term.parse::<i64>().map_err(|_| bad())?, 0usize),
            Some(pos) => {
                let c = term[..pos].trim_end_matches('*');
                let c = if c.is_empty() {
                    1
                } else {
                    c.parse::<i64>().map_err(|_| bad())?
                };
                let tail = &term[pos + 1..];
                let e = if tail.is_empty() {
                    1
                } else {
                    tail.strip_prefix('^')
                        .and_then(|s| s.parse::<usize>().ok())
                        .ok_or_else(bad)?
                };
                (c, e)
            }
        };
        if coeffs.len() <= exp {
            coeffs.resize(exp + 1, 0);
        }
        coeffs[exp] += sign * coef;
    }
    Ok(Poly::new(field, &coeffs))
}

/// Iterates `x^(p^k) mod f` for increasing `k` and yields the product of the
/// distinct irreducible factors of `f` whose degree divides `k`.
struct DegreeScreen<'a> {
    modulus: &'a Poly,
    frobenius: Poly,
    k: usize,
}

impl<'a> DegreeScreen<'a> {
    fn new(modulus: &'a Poly) -> Self {
        DegreeScreen {
            modulus,
            frobenius: Poly::x(modulus.field).rem_unchecked(modulus),
            k: 0,
        }
    }

    fn advance_to(&mut self, k: usize) {
        let p = u64::from(self.modulus.field.get());
        while self.k < k {
            self.frobenius = self.frobenius.pow_mod(p, self.modulus);
            self.k += 1;
        }
    }

    /// `gcd(f, x^(p^k) - x)`; `k` must not decrease between calls.
    fn next_factor_product(&mut self, k: usize) -> Poly {
        self.advance_to(k);
        let diff = self.frobenius.sub_unchecked(&Poly::x(self.modulus.field));
        self.modulus.gcd_unchecked(&diff)
    }
}

impl PartialOrd for Poly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Poly {
    fn cmp(&self, other: &Self) -> Ordering {
        self.field
            .cmp(&other.field)
            .then(self.coeffs.len().cmp(&other.coeffs.len()))
            .then_with(|| self.coeffs.iter().rev().cmp(other.coeffs.iter().rev()))
    }
}

/// Canonical digit form, constant term first. The zero polynomial prints as `0`.
impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for &c in &self.coeffs {
            let digit = char::from_digit(c, 36).ok_or(fmt::Error)?;
            write!(f, "{digit}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} [{}]", self.to_prefixed(), self.to_human())
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident, $inner:ident) => {
        /// Panics if the operands live in different fields; use the `try_`
        /// methods for a checked variant.
        impl $trait<&Poly> for &Poly {
            type Output = Poly;
            fn $method(self, rhs: &Poly) -> Poly {
                assert_eq!(self.field, rhs.field, "mismatched field characteristics");
                self.$inner(rhs)
            }
        }
    };
}

binop!(Add, add, add_unchecked);
binop!(Sub, sub, sub_unchecked);
binop!(Mul, mul, mul_unchecked);

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly::zero(self.field).sub_unchecked(self)
    }
}

/// Monic irreducible factors with multiplicities, in canonical order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    factors: Vec<(Poly, u32)>,
}

impl Factorization {
    pub fn factors(&self) -> &[(Poly, u32)] {
        &self.factors
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn multiplicity(&self, g: &Poly) -> u32 {
        self.factors
            .iter()
            .find(|(h, _)| h == g)
            .map_or(0, |&(_, m)| m)
    }

    pub fn product(&self, field: FieldChar) -> Poly {
        self.factors
            .iter()
            .fold(Poly::one(field), |acc, (g, m)| &acc * &g.pow(*m))
    }
}

impl fmt::Display for Factorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .factors
            .iter()
            .map(|(g, m)| {
                if *m == 1 {
                    format!("({})", g.to_human())
                } else {
                    format!("({})^{m}", g.to_human())
                }
            })
            .collect();
        f.write_str(&parts.join("*"))
    }
}
