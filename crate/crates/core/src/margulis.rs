//! Margulis-style generator synthesis for SL(2,p).
//!
//! Generators have the form g = C * [[1,eta],[0,1]] * C^-1 with C an
//! integer matrix of determinant 1, so every g lies in the congruence
//! subgroup mod eta. That property rules out short multiplicative
//! relations and is what buys the logarithmic girth of the resulting
//! Cayley graphs.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::code::{assemble_code, CssCode};
use crate::error::{Error, Result};
use crate::sl2::{enumerate_group, GroupElement};

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// A pair (m, q) with gcd(m, q) = 1 and both entries at most eta/2.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoprimePair {
    pub m: u32,
    pub q: u32,
}

/// Integer matrix C = [[m, a], [q, b]] with det C = m*b - a*q = 1 and
/// |a|, |b| < eta/2.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntegerLift {
    /// Row-major entries (m, a, q, b).
    pub c: [i64; 4],
    pub eta: u32,
}

impl IntegerLift {
    pub fn det(&self) -> i64 {
        self.c[0] * self.c[3] - self.c[1] * self.c[2]
    }
}

/// A validated Margulis generator selection: the left-acting set A, the
/// right-acting set B, and the integer data they came from.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GeneratorSpec {
    pub p: u32,
    pub eta: u32,
    pub pairs: Vec<CoprimePair>,
    pub lifts: Vec<IntegerLift>,
    pub set_a: Vec<GroupElement>,
    pub set_b: Vec<GroupElement>,
    /// Pairs (i, j) with generator i equal to the inverse of generator j,
    /// nonempty only when the inverse-collision screen was relaxed.
    #[serde(default)]
    pub inverse_collisions: Vec<[usize; 2]>,
}

impl GeneratorSpec {
    pub fn generator_count(&self) -> usize {
        self.set_a.len() + self.set_b.len()
    }

    pub fn all_generators(&self) -> impl Iterator<Item = &GroupElement> {
        self.set_a.iter().chain(self.set_b.iter())
    }
}

/// All coprime pairs (m, q) with 0 <= m, q <= floor(eta/2), excluding
/// (0, 0), in lexicographic order.
pub fn enumerate_coprime_pairs(eta: u32) -> Vec<CoprimePair> {
    let half = eta / 2;
    let mut out = Vec::new();
    for m in 0..=half {
        for q in 0..=half {
            if (m, q) != (0, 0) && gcd(m, q) == 1 {
                out.push(CoprimePair { m, q });
            }
        }
    }
    out
}

/// Find integers (a, b) with m*b - a*q = 1 and |a|, |b| < eta/2.
///
/// Candidates are scanned in balanced order 0, 1, -1, 2, -2, ... on a and
/// then on b, so the lift is deterministic and biased toward small entries.
pub fn lift_pair(pair: CoprimePair, eta: u32) -> Result<IntegerLift> {
    let (m, q) = (pair.m as i64, pair.q as i64);
    if gcd(pair.m, pair.q) != 1 {
        return Err(Error::Validation(format!(
            "pair ({}, {}) is not coprime",
            pair.m, pair.q
        )));
    }
    let bound = eta as i64; // |x| < eta/2  <=>  2|x| < eta
    let balanced = |limit: i64| {
        (0..).map(|k: i64| if k % 2 == 1 { (k + 1) / 2 } else { -(k / 2) })
            .take_while(move |x| 2 * x.abs() < limit)
    };
    for a in balanced(bound) {
        for b in balanced(bound) {
            if m * b - a * q == 1 {
                return Ok(IntegerLift {
                    c: [m, a, q, b],
                    eta,
                });
            }
        }
    }
    Err(Error::LiftNotFound {
        m: pair.m,
        q: pair.q,
        eta,
    })
}

/// Conjugate the shear [[1, eta], [0, 1]] by the lift, over the integers,
/// then reduce mod p.
pub fn make_generator(lift: &IntegerLift, p: u32) -> Result<GroupElement> {
    let [m, a, q, b] = lift.c;
    if lift.det() != 1 {
        return Err(Error::Validation(format!(
            "lift {:?} has determinant {}, expected 1",
            lift.c,
            lift.det()
        )));
    }
    let eta = lift.eta as i64;
    // C * [[1, eta], [0, 1]]
    let t = [m, m * eta + a, q, q * eta + b];
    // ... * C^-1, with C^-1 = [[b, -a], [-q, m]]
    let g = [
        t[0] * b + t[1] * (-q),
        t[0] * (-a) + t[1] * m,
        t[2] * b + t[3] * (-q),
        t[2] * (-a) + t[3] * m,
    ];
    // Membership in the congruence subgroup mod eta.
    debug_assert!(g[0].rem_euclid(eta) == 1 % eta && g[3].rem_euclid(eta) == 1 % eta);
    debug_assert!(g[1].rem_euclid(eta) == 0 && g[2].rem_euclid(eta) == 0);
    GroupElement::from_integers(p, g)
}

/// Integer-level generator, before reduction; used by tests to check the
/// congruence g = I (mod eta).
pub fn make_generator_integer(lift: &IntegerLift) -> [i64; 4] {
    let [m, a, q, b] = lift.c;
    let eta = lift.eta as i64;
    let t = [m, m * eta + a, q, q * eta + b];
    [
        t[0] * b + t[1] * (-q),
        t[0] * (-a) + t[1] * m,
        t[2] * b + t[3] * (-q),
        t[2] * (-a) + t[3] * m,
    ]
}

/// How the eta parameter is picked.
#[derive(Clone, Copy, Debug)]
pub enum EtaChoice {
    /// Smallest eta with at least r+1 coprime pairs whose screen passes.
    Auto,
    Fixed(u32),
}

/// How candidate pairs are ordered before the validity screen.
#[derive(Clone, Debug)]
pub enum PairSelection {
    /// Lexicographic pair order shuffled by a seeded generator.
    Seeded(u64),
    /// An explicit pair list, screened in the given order.
    Explicit(Vec<CoprimePair>),
}

const ETA_SEARCH_CAP: u32 = 200;

struct ScreenOutcome {
    pairs: Vec<CoprimePair>,
    lifts: Vec<IntegerLift>,
    gens: Vec<GroupElement>,
    collisions: Vec<[usize; 2]>,
}

/// Walk candidate pairs in order, keeping the first r whose generators are
/// non-identity, pairwise distinct, and (unless relaxed) free of inverse
/// collisions.
fn screen_candidates(
    p: u32,
    eta: u32,
    candidates: &[CoprimePair],
    r: usize,
    allow_inverse_collisions: bool,
) -> Result<ScreenOutcome> {
    let mut out = ScreenOutcome {
        pairs: Vec::new(),
        lifts: Vec::new(),
        gens: Vec::new(),
        collisions: Vec::new(),
    };
    for &pair in candidates {
        if out.gens.len() == r {
            break;
        }
        let Ok(lift) = lift_pair(pair, eta) else {
            continue;
        };
        let g = make_generator(&lift, p)?;
        if g.is_identity() {
            continue;
        }
        if out.gens.contains(&g) {
            continue;
        }
        let inv = g.inverse();
        let collision = out.gens.iter().position(|h| *h == inv);
        if let Some(j) = collision {
            if !allow_inverse_collisions {
                continue;
            }
            out.collisions.push([out.gens.len(), j]);
        }
        // A self-inverse generator is a length-2 relation on its own.
        if g == inv && !allow_inverse_collisions {
            continue;
        }
        out.pairs.push(pair);
        out.lifts.push(lift);
        out.gens.push(g);
    }
    if out.gens.len() < r {
        return Err(Error::Exhausted(format!(
            "eta {eta}: only {} of {r} valid generators for p = {p}",
            out.gens.len()
        )));
    }
    Ok(out)
}

fn ordered_pairs(eta: u32, selection: &PairSelection) -> Result<Vec<CoprimePair>> {
    match selection {
        PairSelection::Seeded(seed) => {
            let mut pairs = enumerate_coprime_pairs(eta);
            let mut rng = ChaCha8Rng::seed_from_u64(*seed);
            for i in (1..pairs.len()).rev() {
                pairs.swap(i, rng.gen_range(0..=i));
            }
            Ok(pairs)
        }
        PairSelection::Explicit(pairs) => {
            let half = eta / 2;
            for (i, a) in pairs.iter().enumerate() {
                if gcd(a.m, a.q) != 1 || a.m > half || a.q > half || (a.m, a.q) == (0, 0) {
                    return Err(Error::Validation(format!(
                        "explicit pair ({}, {}) invalid for eta {eta}",
                        a.m, a.q
                    )));
                }
                if pairs[..i].contains(a) {
                    return Err(Error::Validation(format!(
                        "explicit pair list contains duplicate ({}, {})",
                        a.m, a.q
                    )));
                }
            }
            Ok(pairs.clone())
        }
    }
}

/// Build a screened generator selection, splitting the first `size_a`
/// accepted generators into the left set and the next `size_b` into the
/// right set.
pub fn build_generating_sets(
    p: u32,
    size_a: usize,
    size_b: usize,
    eta: EtaChoice,
    selection: &PairSelection,
    allow_inverse_collisions: bool,
) -> Result<GeneratorSpec> {
    if size_a < 1 || size_b < 1 {
        return Err(Error::Validation(
            "generator set sizes must be at least 1".into(),
        ));
    }
    let r = size_a + size_b;
    let etas: Vec<u32> = match eta {
        EtaChoice::Fixed(e) => vec![e],
        EtaChoice::Auto => (2..=ETA_SEARCH_CAP).collect(),
    };
    let mut last_err = None;
    for eta in etas {
        // The construction selects r+1 pairs; the surplus one is spare
        // capacity for the screen.
        if enumerate_coprime_pairs(eta).len() < r + 1 {
            last_err = Some(Error::Exhausted(format!(
                "eta {eta} has fewer than {} coprime pairs",
                r + 1
            )));
            continue;
        }
        let candidates = ordered_pairs(eta, selection)?;
        match screen_candidates(p, eta, &candidates, r, allow_inverse_collisions) {
            Ok(sc) => {
                return Ok(GeneratorSpec {
                    p,
                    eta,
                    pairs: sc.pairs,
                    lifts: sc.lifts,
                    set_a: sc.gens[..size_a].to_vec(),
                    set_b: sc.gens[size_a..].to_vec(),
                    inverse_collisions: sc.collisions,
                });
            }
            Err(e) => last_err = Some(e),
        }
    }
    Err(last_err.unwrap_or_else(|| Error::Exhausted("no feasible eta".into())))
}

/// One evaluated (or screen-rejected) candidate in a code search.
#[derive(Clone, Debug, Serialize)]
pub struct CandidateRecord {
    pub index: usize,
    pub eta: u32,
    pub pairs: Vec<CoprimePair>,
    pub size_a: usize,
    pub girth_x: Option<u32>,
    pub girth_z: Option<u32>,
    pub k: Option<usize>,
    pub rejected: Option<String>,
}

#[derive(Debug, Serialize)]
pub struct SearchLog {
    pub p: u32,
    pub size_a: usize,
    pub size_b: usize,
    pub target_girth: u32,
    pub seed: u64,
    pub budget: usize,
    pub candidates_examined: usize,
    /// Margulis' sufficiency bound sqrt(7r), recorded for diagnostics; not
    /// enforced, since small r leaves too few coprime pairs below it.
    pub eta_sufficiency_bound: f64,
    pub records: Vec<CandidateRecord>,
}

pub struct SearchOutcome {
    pub best_spec: GeneratorSpec,
    pub best_code: CssCode,
    pub reached_target: bool,
    pub log: SearchLog,
}

/// Rank: larger min girth first, then larger k, then earlier candidate.
fn better(
    a: (u32, usize, usize), // (min_girth, k, index) with u32::MAX for infinite girth
    b: (u32, usize, usize),
) -> bool {
    (a.0, a.1, std::cmp::Reverse(a.2)) > (b.0, b.1, std::cmp::Reverse(b.2))
}

/// Randomized search over eta values, pair subsets, and A/B splits for a
/// code maximizing (min girth, k). Deterministic for a fixed seed; batch
/// evaluation may run in parallel without affecting the outcome.
pub fn search_code(
    p: u32,
    size_a: usize,
    size_b: usize,
    target_girth: u32,
    budget: usize,
    seed: u64,
) -> Result<SearchOutcome> {
    if budget < 1 {
        return Err(Error::Validation("search budget must be at least 1".into()));
    }
    let r = size_a + size_b;
    let index = enumerate_group(p)?;

    // Pre-screen a generator pool per eta: distinct non-identity generators
    // with their originating pair and lift.
    let mut pools: Vec<(u32, Vec<(CoprimePair, IntegerLift, GroupElement)>)> = Vec::new();
    for eta in 2..=60u32 {
        let pairs = enumerate_coprime_pairs(eta);
        if pairs.len() < r + 1 {
            continue;
        }
        let mut pool = Vec::new();
        let mut seen = Vec::new();
        for pair in pairs {
            let Ok(lift) = lift_pair(pair, eta) else { continue };
            let g = make_generator(&lift, p)?;
            if g.is_identity() || seen.contains(&g) {
                continue;
            }
            seen.push(g);
            pool.push((pair, lift, g));
        }
        if pool.len() >= r {
            pools.push((eta, pool));
        }
        if pools.len() >= 12 {
            break;
        }
    }
    if pools.is_empty() {
        return Err(Error::Exhausted(format!(
            "no eta below {ETA_SEARCH_CAP} yields {r} distinct generators for p = {p}"
        )));
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut records = Vec::new();
    let mut best: Option<(u32, usize, usize)> = None;
    let mut best_result: Option<(GeneratorSpec, CssCode)> = None;
    let mut reached = false;
    let mut cand = 0usize;

    const BATCH: usize = 32;
    'outer: while cand < budget {
        // Draw a batch of candidate specs sequentially from the rng, then
        // evaluate them in parallel; merging is by candidate index so the
        // outcome is schedule-independent.
        let mut batch: Vec<(usize, GeneratorSpec)> = Vec::new();
        while batch.len() < BATCH && cand < budget {
            let my_index = cand;
            cand += 1;
            let (eta, pool) = &pools[my_index % pools.len()];
            // Partial Fisher-Yates draw of r distinct pool entries.
            let mut order: Vec<usize> = (0..pool.len()).collect();
            for i in 0..r {
                let j = rng.gen_range(i..order.len());
                order.swap(i, j);
            }
            let chosen: Vec<_> = order[..r].iter().map(|&i| &pool[i]).collect();
            // Inverse-collision screen across the whole selection.
            let mut collision = false;
            for i in 0..r {
                for j in i..r {
                    if chosen[i].2.inverse() == chosen[j].2 {
                        collision = true;
                    }
                }
            }
            if collision {
                records.push(CandidateRecord {
                    index: my_index,
                    eta: *eta,
                    pairs: chosen.iter().map(|c| c.0).collect(),
                    size_a,
                    girth_x: None,
                    girth_z: None,
                    k: None,
                    rejected: Some("inverse collision".into()),
                });
                continue;
            }
            batch.push((
                my_index,
                GeneratorSpec {
                    p,
                    eta: *eta,
                    pairs: chosen.iter().map(|c| c.0).collect(),
                    lifts: chosen.iter().map(|c| c.1).collect(),
                    set_a: chosen[..size_a].iter().map(|c| c.2).collect(),
                    set_b: chosen[size_a..].iter().map(|c| c.2).collect(),
                    inverse_collisions: Vec::new(),
                },
            ));
        }

        let evaluated: Vec<(usize, GeneratorSpec, Result<CssCode>)> = batch
            .into_par_iter()
            .map(|(i, spec)| {
                let code = assemble_code(&index, &spec);
                (i, spec, code)
            })
            .collect();

        for (i, spec, code) in evaluated {
            match code {
                Ok(code) => {
                    // None means acyclic (infinite girth).
                    let min_girth = code
                        .girth_x
                        .unwrap_or(u32::MAX)
                        .min(code.girth_z.unwrap_or(u32::MAX));
                    records.push(CandidateRecord {
                        index: i,
                        eta: spec.eta,
                        pairs: spec.pairs.clone(),
                        size_a,
                        girth_x: code.girth_x,
                        girth_z: code.girth_z,
                        k: Some(code.k),
                        rejected: None,
                    });
                    let key = (min_girth, code.k, i);
                    if best.is_none() || better(key, best.unwrap()) {
                        best = Some(key);
                        best_result = Some((spec, code));
                    }
                    if min_girth >= target_girth {
                        reached = true;
                        break 'outer;
                    }
                }
                Err(e) => {
                    records.push(CandidateRecord {
                        index: i,
                        eta: spec.eta,
                        pairs: spec.pairs.clone(),
                        size_a,
                        girth_x: None,
                        girth_z: None,
                        k: None,
                        rejected: Some(e.to_string()),
                    });
                }
            }
        }
    }

    let (best_spec, best_code) = best_result.ok_or_else(|| {
        Error::Exhausted("every candidate was rejected by the screen".into())
    })?;
    let examined = records.len();
    Ok(SearchOutcome {
        best_spec,
        best_code,
        reached_target: reached,
        log: SearchLog {
            p,
            size_a,
            size_b,
            target_girth,
            seed,
            budget,
            candidates_examined: examined,
            eta_sufficiency_bound: (7.0 * r as f64).sqrt(),
            records,
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn coprime_pairs_eta5() {
        let pairs = enumerate_coprime_pairs(5);
        let expected = [(0, 1), (1, 0), (1, 1), (1, 2), (2, 1)];
        assert_eq!(
            pairs.iter().map(|p| (p.m, p.q)).collect::<Vec<_>>(),
            expected
        );
    }

    #[test]
    fn coprime_pairs_eta2() {
        let pairs = enumerate_coprime_pairs(2);
        let expected = [(0, 1), (1, 0), (1, 1)];
        assert_eq!(
            pairs.iter().map(|p| (p.m, p.q)).collect::<Vec<_>>(),
            expected
        );
    }

    #[test]
    fn coprime_pairs_are_coprime() {
        for eta in 2..30 {
            for pair in enumerate_coprime_pairs(eta) {
                assert_eq!(gcd(pair.m, pair.q), 1);
            }
        }
    }

    #[test]
    fn lift_identity_pair() {
        let lift = lift_pair(CoprimePair { m: 1, q: 0 }, 5).unwrap();
        assert_eq!(lift.c, [1, 0, 0, 1]);
    }

    #[test]
    fn lift_two_one() {
        let lift = lift_pair(CoprimePair { m: 2, q: 1 }, 5).unwrap();
        assert_eq!(lift.c, [2, 1, 1, 1]);
        assert_eq!(lift.det(), 1);
    }

    #[test]
    fn lift_zero_one() {
        let lift = lift_pair(CoprimePair { m: 0, q: 1 }, 5).unwrap();
        assert_eq!(lift.c, [0, -1, 1, 0]);
        assert_eq!(lift.det(), 1);
    }

    #[test]
    fn lifts_exist_and_have_det_one() {
        for eta in 3..20 {
            for pair in enumerate_coprime_pairs(eta) {
                if let Ok(lift) = lift_pair(pair, eta) {
                    assert_eq!(lift.det(), 1);
                    assert!(2 * lift.c[1].abs() < eta as i64);
                    assert!(2 * lift.c[3].abs() < eta as i64);
                }
            }
        }
    }

    #[test]
    fn generator_from_identity_lift() {
        let lift = IntegerLift {
            c: [1, 0, 0, 1],
            eta: 5,
        };
        let g = make_generator(&lift, 7).unwrap();
        assert_eq!(g.entries(), [1, 5, 0, 1]);
    }

    #[test]
    fn generator_congruent_to_identity_mod_eta() {
        for eta in 3..20u32 {
            for pair in enumerate_coprime_pairs(eta) {
                let Ok(lift) = lift_pair(pair, eta) else { continue };
                let g = make_generator_integer(&lift);
                let e = eta as i64;
                assert_eq!(g[0].rem_euclid(e), 1 % e, "lift {:?}", lift.c);
                assert_eq!(g[3].rem_euclid(e), 1 % e);
                assert_eq!(g[1].rem_euclid(e), 0);
                assert_eq!(g[2].rem_euclid(e), 0);
                // Determinant 1 survives the conjugation.
                assert_eq!(g[0] * g[3] - g[1] * g[2], 1);
            }
        }
    }

    #[test]
    fn generator_det_one_mod_p() {
        let lift = lift_pair(CoprimePair { m: 2, q: 1 }, 5).unwrap();
        let g = make_generator(&lift, 7).unwrap();
        assert_eq!(g.det(), 1);
    }

    #[test]
    fn build_sets_p7() {
        let spec = build_generating_sets(
            7,
            2,
            3,
            EtaChoice::Auto,
            &PairSelection::Seeded(0),
            false,
        )
        .unwrap();
        assert_eq!(spec.set_a.len(), 2);
        assert_eq!(spec.set_b.len(), 3);
        let all: Vec<_> = spec.all_generators().collect();
        for (i, g) in all.iter().enumerate() {
            assert!(!g.is_identity());
            assert_eq!(g.det(), 1);
            for h in &all[i + 1..] {
                assert_ne!(**g, **h);
                assert_ne!(g.inverse(), **h);
            }
        }
        assert!(spec.inverse_collisions.is_empty());
    }

    #[test]
    fn build_sets_deterministic() {
        let mk = || {
            build_generating_sets(
                11,
                2,
                3,
                EtaChoice::Auto,
                &PairSelection::Seeded(42),
                false,
            )
            .unwrap()
        };
        let a = mk();
        let b = mk();
        assert_eq!(a.eta, b.eta);
        assert_eq!(a.pairs, b.pairs);
        assert_eq!(a.set_a, b.set_a);
        assert_eq!(a.set_b, b.set_b);
    }

    #[test]
    fn explicit_duplicate_pairs_rejected() {
        let dup = vec![CoprimePair { m: 1, q: 0 }, CoprimePair { m: 1, q: 0 }];
        let err = build_generating_sets(
            7,
            1,
            1,
            EtaChoice::Fixed(7),
            &PairSelection::Explicit(dup),
            false,
        )
        .unwrap_err();
        assert!(matches!(err, Error::Validation(_)));
    }

    #[test]
    fn zero_budget_search_rejected() {
        assert!(matches!(
            search_code(5, 2, 3, 8, 0, 0),
            Err(Error::Validation(_))
        ));
    }

    #[test]
    fn low_target_search_returns_quickly() {
        let out = search_code(3, 1, 1, 4, 50, 7).unwrap();
        assert!(out.reached_target);
        let g = out
            .best_code
            .girth_x
            .unwrap_or(u32::MAX)
            .min(out.best_code.girth_z.unwrap_or(u32::MAX));
        assert!(g >= 4);
        assert!(out.log.candidates_examined <= 50);
    }
}
