//! Maximality certificates for families in `M_n^1` over GF(2).
//!
//! The central device is the map `L` on `B = F \ I_n`: the lowest irreducible
//! factor of `f`, or of `f / (x+1)` when `x+1` divides `f`. On a family of
//! maximum size `L` is a bijection onto `I_1 ∪ ... ∪ I_{n/2} ∪ I_{n-1}`.
//!
//! [`check_certificate`] evaluates the structural clauses one by one:
//!
//! * every element of `I_n` is present;
//! * when `n` is even, every square `g^2` with `g` in `I_{n/2}` is present;
//! * every `g` in `I_i`, `1 < i < n/2`, divides exactly one member `f`, of one
//!   of four shapes (`g^a`, `(x+1) g^a`, `g^a h`, `(x+1) g^a h`, with the
//!   degree conditions below), and in the last two shapes `h` divides no
//!   other member;
//! * `(x+1)^n` is present, or some `(x+1)^a h` with `1 < a < n/2` and `h` in
//!   `I_{n-a}`.
//!
//! Those clauses alone accept some non-maximal families: they never ask for
//! the `(x+1) h`, `h` in `I_{n-1}`, and the bound for `(x+1) g^a h` allows `h`
//! of degree `<= n/2`, letting one member serve two middle-degree
//! irreducibles. The report therefore also checks membership in `M_n^1`,
//! the degree `n-1` clause, and that `L` is a bijection onto its codomain.
//! The verdict is the conjunction of all clauses.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::{Error, Result};
use crate::family::Family;
use crate::irreducible::IrreducibleIndex;
use crate::poly::{Factorization, FieldChar, Poly};

fn x_plus_one() -> Poly {
    Poly::linear(FieldChar::TWO, 1)
}

/// `L(f)`: `lowest_factor(f)` if `x+1` does not divide `f`, else
/// `lowest_factor(f / (x+1))`. Callers restrict the domain to non-irreducible
/// members of a family; any `f` of degree `>= 2` is accepted.
pub fn l_map(f: &Poly) -> Result<Poly> {
    if f.field() != FieldChar::TWO {
        return Err(Error::NotBinary("the L-map"));
    }
    if f.degree().is_none_or(|d| d < 2) {
        return Err(Error::DegreeTooSmall {
            op: "l_map",
            min: 2,
            got: f.degree().map_or("-inf".into(), |d| d.to_string()),
        });
    }
    let f = f.monic();
    match f.exact_div(&x_plus_one()) {
        Some(q) => q.lowest_factor(),
        None => f.lowest_factor(),
    }
}

/// `I_1 ∪ ... ∪ I_{n/2} ∪ I_{n-1}`.
pub fn l_codomain(index: &IrreducibleIndex, n: usize) -> Result<BTreeSet<Poly>> {
    let mut out = BTreeSet::new();
    for i in (1..=n / 2).chain(std::iter::once(n - 1)) {
        out.extend(index.irreducibles(i)?.iter().cloned());
    }
    Ok(out)
}

/// Behaviour of `L` on `F \ I_n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LMapSummary {
    pub injective: bool,
    pub image_in_codomain: bool,
    pub image: BTreeSet<Poly>,
    pub codomain: BTreeSet<Poly>,
}

impl LMapSummary {
    pub fn is_bijection(&self) -> bool {
        self.injective && self.image == self.codomain
    }
}

fn binary_family_checks(family: &Family, index: &IrreducibleIndex) -> Result<usize> {
    if family.field() != FieldChar::TWO {
        return Err(Error::NotBinary("maximality certificates"));
    }
    if index.field() != FieldChar::TWO {
        return Err(Error::FieldMismatch {
            left: 2,
            right: index.field().get(),
        });
    }
    let n = family.degree();
    if n < 3 {
        return Err(Error::OutOfRange(format!(
            "maximality certificates need n >= 3 (got n={n})"
        )));
    }
    if index.max_degree() < n {
        return Err(Error::DegreeNotIndexed {
            requested: n,
            available: index.max_degree(),
        });
    }
    Ok(n)
}

pub fn l_map_summary(family: &Family, index: &IrreducibleIndex) -> Result<LMapSummary> {
    let n = binary_family_checks(family, index)?;
    let codomain = l_codomain(index, n)?;
    let mut image = BTreeSet::new();
    let mut injective = true;
    for f in family.iter().filter(|f| !index.contains(f)) {
        if !image.insert(l_map(f)?) {
            injective = false;
        }
    }
    let image_in_codomain = image.is_subset(&codomain);
    Ok(LMapSummary {
        injective,
        image_in_codomain,
        image,
        codomain,
    })
}

/// True iff `L` is injective on `F \ I_n` with image inside the codomain.
/// `F` must lie in `M_n^1`.
pub fn check_l_injectivity(family: &Family, index: &IrreducibleIndex) -> Result<bool> {
    binary_family_checks(family, index)?;
    if !family.is_member(1)? {
        return Err(Error::NotMember {
            n: family.degree(),
            d: 1,
        });
    }
    let summary = l_map_summary(family, index)?;
    Ok(summary.injective && summary.image_in_codomain)
}

/// Shape of the unique member divisible by a middle-degree irreducible `g`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DivisorForm {
    /// `g^a`, `a = n / i`.
    Power { a: u32 },
    /// `(x+1) g^a`, `a = (n-1) / i`.
    LinearTimesPower { a: u32 },
    /// `g^a h`, `a i < n/2`, `h` in `I_{n - a i}`.
    PowerTimesIrreducible { a: u32, h: Poly },
    /// `(x+1) g^a h`, `a i < n/2 + 1`, `h` in `I_{n - a i - 1}`.
    LinearPowerIrreducible { a: u32, h: Poly },
}

impl fmt::Display for DivisorForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DivisorForm::Power { a } => write!(f, "g^{a}"),
            DivisorForm::LinearTimesPower { a } => write!(f, "(x+1)*g^{a}"),
            DivisorForm::PowerTimesIrreducible { a, h } => write!(f, "g^{a}*h h={h}"),
            DivisorForm::LinearPowerIrreducible { a, h } => write!(f, "(x+1)*g^{a}*h h={h}"),
        }
    }
}

/// Evidence gathered for one irreducible `g` of middle degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MiddleEvidence {
    pub g: Poly,
    /// Members divisible by `g`.
    pub divisors: Vec<Poly>,
    /// The admissible shape of the sole divisor, if it has one.
    pub form: Option<DivisorForm>,
    /// For a sole divisor `g^a h` or `(x+1) g^a h` with `h` irreducible
    /// (degree bound aside): whether `h` divides no other member.
    pub h_unique: Option<bool>,
    /// Factorization of a sole divisor whose shape is not admissible.
    pub unexpected: Option<Factorization>,
}

impl MiddleEvidence {
    pub fn holds(&self) -> bool {
        self.divisors.len() == 1 && self.form.is_some() && self.h_unique != Some(false)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CertificateReport {
    pub n: usize,
    pub size: usize,
    pub contains_all_irreducibles: bool,
    /// `None` when `n` is odd.
    pub squares_clause: Option<bool>,
    pub middle: Vec<MiddleEvidence>,
    pub middle_clause: bool,
    pub linear_clause: bool,
    pub degree_n_minus_1_clause: bool,
    pub pairwise_gcd_clause: bool,
    pub l_bijection_clause: bool,
    pub verdict: bool,
}

impl CertificateReport {
    pub fn h_uniqueness(&self) -> bool {
        self.middle.iter().all(|m| m.h_unique != Some(false))
    }

    /// `key=value` lines, one clause per line, then one line per middle-degree
    /// irreducible and the verdict last.
    pub fn to_lines(&self) -> Vec<String> {
        let mut out = vec![
            format!("n={}", self.n),
            format!("size={}", self.size),
            format!("contains_all_irreducibles={}", self.contains_all_irreducibles),
            format!(
                "squares_clause={}",
                self.squares_clause.map_or("n/a".to_string(), |b| b.to_string())
            ),
            format!("middle_clause={}", self.middle_clause),
            format!("h_uniqueness={}", self.h_uniqueness()),
            format!("linear_clause={}", self.linear_clause),
            format!("degree_n_minus_1_clause={}", self.degree_n_minus_1_clause),
            format!("pairwise_gcd_clause={}", self.pairwise_gcd_clause),
            format!("l_bijection_clause={}", self.l_bijection_clause),
        ];
        for m in &self.middle {
            let mut line = format!(
                "middle.{}={} divisors={}",
                m.g,
                m.holds(),
                m.divisors.len()
            );
            if let Some(form) = &m.form {
                line.push_str(&format!(" form={form}"));
            }
            if let Some(u) = m.h_unique {
                line.push_str(&format!(" h_unique={u}"));
            }
            if let Some(fac) = &m.unexpected {
                line.push_str(&format!(" factorization={fac}"));
            }
            out.push(line);
        }
        out.push(format!("verdict={}", self.verdict));
        out
    }
}

/// Classifies `f` relative to `g` of degree `i`, returning the admissible
/// form if any, and the irreducible cofactor `h` if `f` has the shape
/// `g^a h` or `(x+1) g^a h` at all.
fn classify(
    g: &Poly,
    i: usize,
    n: usize,
    fac: &Factorization,
) -> (Option<DivisorForm>, Option<Poly>) {
    let x1 = x_plus_one();
    let a = fac.multiplicity(g);
    let ai = a as usize * i;
    let e = fac.multiplicity(&x1);
    let rest: Vec<&(Poly, u32)> = fac
        .factors()
        .iter()
        .filter(|(p, _)| p != g && *p != x1)
        .collect();
    match (e, rest.as_slice()) {
        (0, []) => {
            let form = (ai == n).then_some(DivisorForm::Power { a });
            (form, None)
        }
        (1, []) => {
            let form = (ai + 1 == n).then_some(DivisorForm::LinearTimesPower { a });
            (form, None)
        }
        (0, [(h, 1)]) => {
            let form = (2 * ai < n)
                .then(|| DivisorForm::PowerTimesIrreducible { a, h: h.clone() });
            (form, Some(h.clone()))
        }
        (1, [(h, 1)]) => {
            let form = (2 * ai < n + 2)
                .then(|| DivisorForm::LinearPowerIrreducible { a, h: h.clone() });
            (form, Some(h.clone()))
        }
        _ => (None, None),
    }
}

pub fn check_certificate(family: &Family, index: &IrreducibleIndex) -> Result<CertificateReport> {
    let n = binary_family_checks(family, index)?;
    let x1 = x_plus_one();

    let contains_all_irreducibles = index.irreducibles(n)?.iter().all(|g| family.contains(g));

    let squares_clause = if n % 2 == 0 {
        Some(
            index
                .irreducibles(n / 2)?
                .iter()
                .all(|g| family.contains(&g.pow(2))),
        )
    } else {
        None
    };

    let mut factorizations: BTreeMap<&Poly, Factorization> = BTreeMap::new();
    for f in family.iter() {
        factorizations.insert(f, f.factorize()?);
    }

    let mut middle = Vec::new();
    for i in (2..).take_while(|&i| 2 * i < n) {
        for g in index.irreducibles(i)? {
            let divisors: Vec<Poly> = factorizations
                .iter()
                .filter(|(_, fac)| fac.multiplicity(g) > 0)
                .map(|(f, _)| (*f).clone())
                .collect();
            let mut evidence = MiddleEvidence {
                g: g.clone(),
                divisors,
                form: None,
                h_unique: None,
                unexpected: None,
            };
            if let [f] = evidence.divisors.as_slice() {
                let fac = &factorizations[f];
                let (form, h) = classify(g, i, n, fac);
                if let Some(h) = h {
                    let unique = family.iter().filter(|other| *other != f).all(|other| {
                        factorizations[other].multiplicity(&h) == 0
                    });
                    evidence.h_unique = Some(unique);
                }
                if form.is_none() {
                    evidence.unexpected = Some(fac.clone());
                }
                evidence.form = form;
            }
            middle.push(evidence);
        }
    }
    let middle_clause = middle.iter().all(MiddleEvidence::holds);

    let linear_clause = family.contains(&x1.pow(n as u32))
        || (2..)
            .take_while(|&a| 2 * a < n)
            .any(|a| -> bool {
                let lin = x1.pow(a as u32);
                index
                    .irreducibles(n - a)
                    .map(|hs| hs.iter().any(|h| family.contains(&(&lin * h))))
                    .unwrap_or(false)
            });

    let degree_n_minus_1_clause = index
        .irreducibles(n - 1)?
        .iter()
        .all(|h| family.contains(&(&x1 * h)));

    let pairwise_gcd_clause = family.is_member(1)?;
    let l_bijection_clause = l_map_summary(family, index)?.is_bijection();

    let verdict = contains_all_irreducibles
        && squares_clause.unwrap_or(true)
        && middle_clause
        && linear_clause
        && degree_n_minus_1_clause
        && pairwise_gcd_clause
        && l_bijection_clause;

    Ok(CertificateReport {
        n,
        size: family.len(),
        contains_all_irreducibles,
        squares_clause,
        middle,
        middle_clause,
        linear_clause,
        degree_n_minus_1_clause,
        pairwise_gcd_clause,
        l_bijection_clause,
        verdict,
    })
}
