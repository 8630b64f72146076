//! Seeded fuzzing of the three stability criteria against each other.
//!
//! Randomness comes from xoshiro256++ seeded through SplitMix64
//! (`seed_from_u64`), so a run replays identically on every platform. Quiver
//! number `i` of a run uses the base generator advanced by `i` jumps of `2^128`
//! steps, which keeps results independent of the thread count.

use itertools::Itertools;
use rand::{Rng, RngExt, SeedableRng};
use rand_xoshiro::Xoshiro256PlusPlus;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::charge::CentralCharge;
use crate::error::{Error, Result};
use crate::quiver::{Quiver, Sign, StringModule};
use crate::rational::Rational;
use crate::stability::{ChargeView, Criterion, Stability};

pub const DEFAULT_TRIALS: usize = 1000;
pub const DEFAULT_MAX_DENOMINATOR: i64 = 64;

/// One candidate module on which the criteria disagree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Mismatch {
    pub quiver: String,
    pub charge: CentralCharge,
    pub module: StringModule,
    pub oracle: Stability,
    pub chord: Stability,
    pub wire: Stability,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuiverReport {
    pub quiver: String,
    pub trials: usize,
    pub modules_checked: usize,
    pub mismatches: Vec<Mismatch>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub seed: u64,
    pub trials: usize,
    pub max_denominator: i64,
    pub quivers: Vec<QuiverReport>,
}

impl VerifyReport {
    pub fn mismatch_count(&self) -> usize {
        self.quivers.iter().map(|r| r.mismatches.len()).sum()
    }

    pub fn modules_checked(&self) -> usize {
        self.quivers.iter().map(|r| r.modules_checked).sum()
    }
}

/// `p/q` with `p` in `lo..=d` and `q` in `1..=d`.
fn random_rational<R: Rng>(rng: &mut R, lo: i64, d: i64) -> Rational {
    Rational::new(rng.random_range(lo..=d), rng.random_range(1..=d))
}

/// A random charge on `n` vertices: `a_i = p/q` with `|p| <= d`, `b_i = p/q`
/// with `1 <= p <= d`, and `1 <= q <= d` throughout.
pub fn random_charge<R: Rng>(rng: &mut R, n: usize, d: i64) -> CentralCharge {
    assert!(d >= 1, "max denominator must be positive");
    let a = (0..n).map(|_| random_rational(rng, -d, d)).collect();
    let b = (0..n).map(|_| random_rational(rng, 1, d)).collect();
    CentralCharge::new(a, b).expect("positive b")
}

/// Every affine sign word with `a, b >= 1` and `a + b <= max_n`.
pub fn affine_quivers(max_n: usize) -> Vec<Quiver> {
    (2..=max_n)
        .flat_map(|n| {
            (0..n)
                .map(|_| [Sign::Plus, Sign::Minus])
                .multi_cartesian_product()
                .filter(|w| w.contains(&Sign::Plus) && w.contains(&Sign::Minus))
        })
        .map(|w| Quiver::affine(w).expect("mixed signs"))
        .collect()
}

/// Every orientation of `A_n`.
pub fn finite_quivers(n: usize) -> Vec<Quiver> {
    (0..n.saturating_sub(1))
        .map(|_| [Sign::Minus, Sign::Plus])
        .multi_cartesian_product()
        .map(Quiver::finite)
        .collect()
}

/// The default fuzz family: every affine quiver with `a + b <= 6`,
/// every orientation of `A_n` for `n <= 6`, and the cycles `Q_4, Q_5, Q_6`.
pub fn default_family() -> Vec<Quiver> {
    let mut out = affine_quivers(6);
    for n in 1..=6 {
        out.extend(finite_quivers(n));
    }
    for n in 4..=6 {
        out.push(Quiver::cycle(n).expect("n >= 4"));
    }
    out
}

fn run_one(q: &Quiver, mut rng: Xoshiro256PlusPlus, trials: usize, d: i64) -> QuiverReport {
    let mut report = QuiverReport {
        quiver: q.to_string(),
        trials,
        modules_checked: 0,
        mismatches: Vec::new(),
    };
    let cands = crate::stability::candidates(q);
    for _ in 0..trials {
        let z = random_charge(&mut rng, q.n(), d);
        let view = ChargeView::new(q, &z).expect("charge sized for quiver");
        for &m in &cands {
            let [o, c, w] = Criterion::ALL.map(|cr| view.classify(m, cr));
            report.modules_checked += 1;
            if o != c || o != w {
                report.mismatches.push(Mismatch {
                    quiver: report.quiver.clone(),
                    charge: z.clone(),
                    module: m,
                    oracle: o,
                    chord: c,
                    wire: w,
                });
            }
        }
    }
    report
}

/// Runs `trials` random charges per quiver on a pool of `jobs` threads
/// (`0` means rayon's default). The report lists quivers in input order and
/// does not depend on `jobs`.
pub fn verify_equivalence(
    quivers: &[Quiver],
    trials: usize,
    seed: u64,
    max_denominator: i64,
    jobs: usize,
) -> Result<VerifyReport> {
    if max_denominator < 1 {
        return Err(Error::Precondition(format!(
            "max denominator must be at least 1, got {max_denominator}"
        )));
    }
    let mut base = Xoshiro256PlusPlus::seed_from_u64(seed);
    let streams: Vec<Xoshiro256PlusPlus> = quivers
        .iter()
        .map(|_| {
            let s = base.clone();
            base.jump();
            s
        })
        .collect();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| Error::Precondition(format!("thread pool: {e}")))?;
    let reports = pool.install(|| {
        quivers
            .par_iter()
            .zip(streams)
            .map(|(q, rng)| run_one(q, rng, trials, max_denominator))
            .collect()
    });
    Ok(VerifyReport {
        seed,
        trials,
        max_denominator,
        quivers: reports,
    })
}
