//! Acceptance suite. Prints one `criterion N: PASS|FAIL` line per criterion
//! and exits nonzero if any criterion fails.

mod common;

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use common::{all_monic, brute_irreducibles, fc, random_poly};
use gcdfam::characterization::{check_certificate, l_map_summary};
use gcdfam::constructions::{construct_lower_bound, construct_maximal_f2, ConstructionParams};
use gcdfam::family::{in_sn, lower_bound_cardinality, maximal_cardinality_f2_d1};
use gcdfam::irreducible::{enumerate_irreducibles, gauss_count, restricted_count};
use gcdfam::oracle::{max_family_bruteforce, solve, CompatGraph, OracleConfig};
use gcdfam::{Family, FieldChar, IrreducibleIndex, Poly};
use num_bigint::BigUint;
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};

const C1_LIMIT: Duration = Duration::from_secs(10);
const C2_LIMIT: Duration = Duration::from_secs(300);
const C3_LIMIT: Duration = Duration::from_secs(30);
const C5_LIMIT: Duration = Duration::from_secs(120);
const C7_CASES: usize = 10_000;
const C7_MAX_DEGREE: usize = 12;
const C7_SEED: u64 = 0x5eed_f00d;
const SHUFFLES: u64 = 4;

/// Oracle-feasible part of the lower-bound grid: `(p, largest n)`.
const ORACLE_SUBGRID: [(u64, usize); 2] = [(2, 10), (3, 7)];
const ORACLE_CAP: usize = 2048;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(failures: &[String], elapsed: Duration, limit: Option<Duration>, summary: String) -> Outcome {
    let mut problems = failures.to_vec();
    if let Some(limit) = limit {
        if elapsed > limit {
            problems.push(format!("took {elapsed:.2?}, limit {limit:?}"));
        }
    }
    let timing = match limit {
        Some(limit) => format!("{elapsed:.2?} of {limit:?}"),
        None => format!("{elapsed:.2?}"),
    };
    if problems.is_empty() {
        Outcome {
            pass: true,
            detail: format!("{summary}; {timing}"),
        }
    } else {
        let shown: Vec<&String> = problems.iter().take(5).collect();
        Outcome {
            pass: false,
            detail: format!("{} problem(s): {:?}; {timing}", problems.len(), shown),
        }
    }
}

fn n_max(n: usize) -> usize {
    maximal_cardinality_f2_d1(n).unwrap().try_into().unwrap()
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let mut failures = Vec::new();
    let mut checked = 0;
    for (p, max_k) in [(2u64, 12usize), (3, 6), (5, 6)] {
        let field = fc(p);
        for k in 1..=max_k {
            let all = brute_irreducibles(field, k);
            let restricted: Vec<Poly> = all.iter().filter(|g| g.constant_term() != 0).cloned().collect();
            if gauss_count(field, k as u32).unwrap() != BigUint::from(all.len()) {
                failures.push(format!("p={p} k={k}: Gauss count vs {}", all.len()));
            }
            if restricted_count(field, k as u32) != BigUint::from(restricted.len()) {
                failures.push(format!("p={p} k={k}: restricted count vs {}", restricted.len()));
            }
            if enumerate_irreducibles(field, k).unwrap() != restricted {
                failures.push(format!("p={p} k={k}: enumeration differs"));
            }
            checked += 1;
        }
    }
    outcome(
        &failures,
        start.elapsed(),
        Some(C1_LIMIT),
        format!("{checked} (p, k) pairs match exhaustive search"),
    )
}

/// Returns the outcome and the maximum families found.
fn criterion_2() -> (Outcome, Vec<Family>) {
    let start = Instant::now();
    let cfg = OracleConfig::default();
    let mut failures = Vec::new();
    let mut witnesses = Vec::new();
    let mut sizes = Vec::new();
    for n in 3..=8 {
        let expected = n_max(n);
        let graph = CompatGraph::build(FieldChar::TWO, n, 1, &cfg).unwrap();
        let base = solve(&graph).unwrap();
        sizes.push(format!("n={n}:{}", base.size));
        if base.size != expected {
            failures.push(format!("n={n}: oracle {} vs N_n {expected}", base.size));
        }
        let mut found = BTreeSet::new();
        found.insert(base.witness.to_file_string());
        witnesses.push(base.witness);
        let mut rng = StdRng::seed_from_u64(n as u64);
        for _ in 0..SHUFFLES {
            let mut order: Vec<usize> = (0..graph.len()).collect();
            order.shuffle(&mut rng);
            let res = solve(&graph.permuted(&order).unwrap()).unwrap();
            if res.size != expected {
                failures.push(format!("n={n}: shuffled oracle {} vs {expected}", res.size));
            }
            if found.insert(res.witness.to_file_string()) {
                witnesses.push(res.witness);
            }
        }
    }
    let summary = format!(
        "oracle max equals N_n ({}); {} distinct witnesses",
        sizes.join(" "),
        witnesses.len()
    );
    (outcome(&failures, start.elapsed(), Some(C2_LIMIT), summary), witnesses)
}

fn criterion_3() -> Outcome {
    let start = Instant::now();
    let mut failures = Vec::new();
    let index = IrreducibleIndex::new(FieldChar::TWO, 16).unwrap();
    for n in 3..=16 {
        let fam = construct_maximal_f2(n, &index).unwrap();
        if fam.len() != n_max(n) {
            failures.push(format!("n={n}: size {} vs {}", fam.len(), n_max(n)));
        }
        if !fam.is_member(1).unwrap() {
            failures.push(format!("n={n}: not in M_n^1"));
        }
        if !check_certificate(&fam, &index).unwrap().verdict {
            failures.push(format!("n={n}: certificate verdict false"));
        }
    }
    outcome(
        &failures,
        start.elapsed(),
        Some(C3_LIMIT),
        "n=3..16 member, size N_n, verdict true".into(),
    )
}

fn criterion_4() -> (Outcome, Vec<String>) {
    let start = Instant::now();
    let mut failures = Vec::new();
    let mut gaps = Vec::new();
    let mut grid = 0;
    let mut compared = 0;
    let cfg = OracleConfig {
        max_vertices: ORACLE_CAP,
    };
    for p in [2u64, 3] {
        let field = fc(p);
        let index = IrreducibleIndex::new(field, 12).unwrap();
        let oracle_max_n = ORACLE_SUBGRID.iter().find(|(q, _)| *q == p).map_or(0, |(_, n)| *n);
        for n in 1..=12usize {
            for d in (0..n).filter(|d| 2 * d < n) {
                grid += 1;
                let fam = construct_lower_bound(&ConstructionParams::new(field, n, d).unwrap(), &index).unwrap();
                let formula = lower_bound_cardinality(field, n, d).unwrap();
                if BigUint::from(fam.len()) != formula {
                    failures.push(format!("p={p} n={n} d={d}: size {} vs formula {formula}", fam.len()));
                }
                if !fam.is_member(d).unwrap() {
                    failures.push(format!("p={p} n={n} d={d}: not a member"));
                }
                if n > oracle_max_n {
                    continue;
                }
                compared += 1;
                let best = max_family_bruteforce(field, n, d, &cfg).unwrap().size;
                if best < fam.len() {
                    failures.push(format!("p={p} n={n} d={d}: oracle {best} below construction {}", fam.len()));
                }
                if p == 2 && d == 1 && n >= 3 && best != fam.len() {
                    failures.push(format!("p=2 n={n} d=1: oracle {best} vs construction {}", fam.len()));
                }
                if best != fam.len() {
                    gaps.push(format!(
                        "  p={p} n={n} d={d} oracle={best} construction={} gap={}",
                        fam.len(),
                        best - fam.len()
                    ));
                }
            }
        }
    }
    let summary = format!(
        "{grid} grid points exact; oracle compared on {compared} (p=2 n<=10, p=3 n<=7), {} with a gap",
        gaps.len()
    );
    (outcome(&failures, start.elapsed(), None, summary), gaps)
}

/// Bitmasks over `count` items with exactly `size` bits set.
fn subsets_of_size(count: usize, size: usize) -> Vec<u32> {
    (0u32..1 << count).filter(|m| m.count_ones() as usize == size).collect()
}

fn criterion_5() -> (Outcome, Vec<Family>) {
    let start = Instant::now();
    let mut failures = Vec::new();
    let mut maxima = Vec::new();
    let mut counts = Vec::new();
    let index = IrreducibleIndex::new(FieldChar::TWO, 8).unwrap();
    for n in 3..=5 {
        let sn: Vec<Poly> = all_monic(FieldChar::TWO, n).into_iter().filter(|f| in_sn(f, n)).collect();
        let target = n_max(n);
        let mut found = 0;
        for mask in subsets_of_size(sn.len(), target) {
            let picked = sn.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, f)| f.clone());
            let fam = Family::from_polys(FieldChar::TWO, n, picked).unwrap();
            if !fam.is_member(1).unwrap() {
                continue;
            }
            found += 1;
            if !check_certificate(&fam, &index).unwrap().verdict {
                failures.push(format!("n={n}: maximum family with verdict false: {}", fam.to_file_string()));
            }
            maxima.push(fam);
        }
        if found == 0 {
            failures.push(format!("n={n}: no member of size N_n"));
        }
        for mask in subsets_of_size(sn.len(), target + 1) {
            let picked = sn.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, f)| f.clone());
            if Family::from_polys(FieldChar::TWO, n, picked).unwrap().is_member(1).unwrap() {
                failures.push(format!("n={n}: member larger than N_n"));
                break;
            }
        }
        counts.push(format!("n={n}:{found}"));
    }

    let x1 = Poly::linear(FieldChar::TWO, 1);
    let rejected = |fam: &Family| -> bool {
        !fam.is_member(1).unwrap() || !check_certificate(fam, &index).unwrap().verdict
    };
    let mut mutations = 0;
    for n in 3..=8 {
        let base = construct_maximal_f2(n, &index).unwrap();
        let top = x1.pow(n as u32);

        let mut removed = base.clone();
        assert!(removed.remove(&top));
        mutations += 1;
        if !rejected(&removed) {
            failures.push(format!("n={n}: removing (x+1)^n kept the verdict"));
        }

        if n >= 5 {
            let h1 = &index.irreducibles(3).unwrap()[0];
            let mut reused = removed.clone();
            let replacement = &x1.pow(n as u32 - 3) * h1;
            if reused.insert(replacement).unwrap() {
                mutations += 1;
                if !rejected(&reused) {
                    failures.push(format!("n={n}: reusing h1 kept the verdict"));
                }
            }
        }

        for f in all_monic(FieldChar::TWO, n).into_iter().filter(|f| in_sn(f, n) && !base.contains(f)) {
            let mut grown = base.clone();
            grown.insert(f.clone()).unwrap();
            mutations += 1;
            if !rejected(&grown) {
                failures.push(format!("n={n}: inserting {} kept the verdict", f.to_human()));
            }
        }
    }
    let summary = format!(
        "maximum families enumerated ({}), all verdict true; {mutations} mutations all rejected",
        counts.join(" ")
    );
    (outcome(&failures, start.elapsed(), Some(C5_LIMIT), summary), maxima)
}

fn criterion_6(families: &[Family]) -> Outcome {
    let start = Instant::now();
    let mut failures = Vec::new();
    let index = IrreducibleIndex::new(FieldChar::TWO, 8).unwrap();
    for fam in families {
        let summary = l_map_summary(fam, &index).unwrap();
        if !summary.injective || summary.image != summary.codomain {
            failures.push(format!(
                "n={}: L not a bijection (injective={}, |image|={}, |codomain|={})",
                fam.degree(),
                summary.injective,
                summary.image.len(),
                summary.codomain.len()
            ));
        }
    }
    outcome(
        &failures,
        start.elapsed(),
        None,
        format!("L bijective onto its codomain for {} maximum families", families.len()),
    )
}

/// Irreducibility by dividing by every listed irreducible of degree up to
/// half of `g`'s.
fn irreducible_by_table(g: &Poly, table: &[Vec<Poly>]) -> bool {
    let k = g.degree().unwrap();
    (1..=k / 2).all(|j| table[j].iter().all(|h| !g.divmod(h).unwrap().1.is_zero()))
}

fn criterion_7() -> Outcome {
    let start = Instant::now();
    let mut failures = Vec::new();
    let mut rng = StdRng::seed_from_u64(C7_SEED);
    for p in [2u64, 3, 5] {
        let field = fc(p);
        let table: Vec<Vec<Poly>> = (0..=C7_MAX_DEGREE / 2)
            .map(|k| if k == 0 { Vec::new() } else { brute_irreducibles(field, k) })
            .collect();
        for case in 0..C7_CASES {
            let da = rng.gen_range(0..=C7_MAX_DEGREE);
            let db = rng.gen_range(0..=C7_MAX_DEGREE);
            let a = random_poly(&mut rng, field, da, false);
            let b = random_poly(&mut rng, field, db, false);
            let tag = format!("p={p} case={case}");

            let (q, r) = a.divmod(&b).unwrap();
            if &(&q * &b) + &r != a || r.degree() >= b.degree() {
                failures.push(format!("{tag}: divmod"));
            }

            let g = a.gcd(&b).unwrap();
            let dc = rng.gen_range(0..=C7_MAX_DEGREE / 2);
            let c = random_poly(&mut rng, field, dc, true);
            let scaled = (&a * &c).gcd(&(&b * &c)).unwrap();
            if !g.is_monic() || !g.divides(&a) || !g.divides(&b) || scaled != &g * &c {
                failures.push(format!("{tag}: gcd"));
            }

            let f = a.monic();
            if f.degree().unwrap() >= 1 {
                let fac = f.factorize().unwrap();
                let sorted = fac.factors().windows(2).all(|w| w[0].0 < w[1].0);
                let irreducible = fac.factors().iter().all(|(h, _)| irreducible_by_table(h, &table));
                if fac.product(field) != f || !sorted || !irreducible {
                    failures.push(format!("{tag}: factorization of {}", f.to_human()));
                }
            }
        }
    }
    outcome(
        &failures,
        start.elapsed(),
        None,
        format!("{C7_CASES} cases per p in {{2,3,5}}, degree <= {C7_MAX_DEGREE}, seed {C7_SEED:#x}: divmod, gcd and factorization exact"),
    )
}

fn main() -> ExitCode {
    let mut all_pass = true;
    let mut report = |id: usize, o: &Outcome| {
        let status = if o.pass { "PASS" } else { "FAIL" };
        println!("criterion {id}: {status} {}", o.detail);
        all_pass &= o.pass;
    };

    report(1, &criterion_1());
    let (c2, oracle_families) = criterion_2();
    report(2, &c2);
    report(3, &criterion_3());
    let (c4, gaps) = criterion_4();
    report(4, &c4);
    for line in &gaps {
        println!("{line}");
    }
    let (c5, enumerated) = criterion_5();
    report(5, &c5);
    let families: Vec<Family> = oracle_families.into_iter().chain(enumerated).collect();
    report(6, &criterion_6(&families));
    report(7, &criterion_7());

    if all_pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
