//! Stability of string modules: three equivalent criteria, wall membership,
//! stable sets, maximal green sequences and two-segment spliced paths.

use std::cmp::Ordering;
use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::charge::CentralCharge;
use crate::error::{Error, NonGenericReason, Result};
pub use crate::lattice::Stability;
use crate::lattice::Lattice;
use crate::quiver::{Quiver, QuiverKind, StringModule};
use crate::rational::Rational;

/// Which of the three equivalent stability tests to run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Criterion {
    /// Compare slopes with every proper indecomposable submodule.
    Oracle,
    /// Position of dual vertices relative to the chord `V_ij`.
    Chord,
    /// Order of wires at the crossing time of `L_i` and `L_j`.
    Wire,
}

impl Criterion {
    pub const ALL: [Criterion; 3] = [Criterion::Oracle, Criterion::Chord, Criterion::Wire];
}

/// Position of a point `x` relative to the wall `D(M)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum WallMembership {
    /// `x . dim M = 0` and `x . dim M' < 0` for every proper nonzero submodule.
    Interior,
    /// In `D(M)` but some proper submodule has `x . dim M' = 0`.
    Boundary,
    /// On the hyperplane `x . dim M = 0` but outside `D(M)`.
    HyperplaneOnly,
    Outside,
}

/// A module in a green sequence together with the slope at which it is crossed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GreenEntry {
    #[serde(flatten)]
    pub module: StringModule,
    pub slope: Rational,
}

/// Stable modules in crossing order, slopes strictly increasing.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GreenSequence {
    pub entries: Vec<GreenEntry>,
}

impl GreenSequence {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn modules(&self) -> Vec<StringModule> {
        self.entries.iter().map(|e| e.module).collect()
    }
}

/// A charge prepared for repeated exact queries.
pub struct ChargeView<'a> {
    q: &'a Quiver,
    z: &'a CentralCharge,
    lat: Lattice,
    reach: i64,
}

impl<'a> ChargeView<'a> {
    pub fn new(q: &'a Quiver, z: &'a CentralCharge) -> Result<ChargeView<'a>> {
        z.check_for(q)?;
        let reach = 5 * q.n() as i64;
        Ok(ChargeView {
            q,
            z,
            lat: Lattice::new(q, z, reach),
            reach,
        })
    }

    pub fn quiver(&self) -> &Quiver {
        self.q
    }

    pub fn charge(&self) -> &CentralCharge {
        self.z
    }

    fn with_lattice<R>(&self, m: StringModule, f: impl FnOnce(&Lattice) -> R) -> R {
        let far = m.i.abs().max(m.j.abs());
        if far <= self.reach {
            f(&self.lat)
        } else {
            f(&Lattice::new(self.q, self.z, far))
        }
    }

    /// Classifies `m` with the chosen criterion.
    pub fn classify(&self, m: StringModule, criterion: Criterion) -> Stability {
        debug_assert!(m.i < m.j);
        self.with_lattice(m, |lat| match criterion {
            Criterion::Oracle => lat.oracle(self.q, m),
            Criterion::Chord => lat.chord(self.q, m),
            Criterion::Wire => lat.wire(self.q, m),
        })
    }

    pub fn slope(&self, m: StringModule) -> Rational {
        self.z.slope(self.q, m)
    }

    pub fn cmp_slopes(&self, m1: StringModule, m2: StringModule) -> Ordering {
        let far = [m1.i, m1.j, m2.i, m2.j].iter().map(|v| v.abs()).max().unwrap_or(0);
        if far <= self.reach {
            self.lat.cmp_slopes(m1, m2)
        } else {
            Lattice::new(self.q, self.z, far).cmp_slopes(m1, m2)
        }
    }

    /// Sign of `sigma(m)`.
    pub fn slope_sign(&self, m: StringModule) -> Ordering {
        self.with_lattice(m, |lat| lat.slope_sign(m))
    }

    /// Classifies every candidate module (see [`candidates`]) of length below
    /// `max_len`, without checking finiteness.
    pub fn scan(&self, max_len: i64, criterion: Criterion) -> Vec<(StringModule, Stability)> {
        self.q
            .modules_up_to(max_len)
            .into_iter()
            .map(|m| (m, self.classify(m, criterion)))
            .collect()
    }
}

/// Candidate modules for stable-set enumeration: every module of `A_n` or of the
/// cycle, and exceptional canonical modules of length below `2n` on affine quivers.
pub fn candidates(q: &Quiver) -> Vec<StringModule> {
    q.modules_up_to(2 * q.n() as i64)
}

pub fn classify(q: &Quiver, z: &CentralCharge, m: StringModule, criterion: Criterion) -> Result<Stability> {
    Ok(ChargeView::new(q, z)?.classify(m, criterion))
}

pub fn is_stable_oracle(q: &Quiver, z: &CentralCharge, m: StringModule) -> Result<bool> {
    Ok(classify(q, z, m, Criterion::Oracle)?.is_stable())
}

pub fn is_semistable_oracle(q: &Quiver, z: &CentralCharge, m: StringModule) -> Result<bool> {
    Ok(classify(q, z, m, Criterion::Oracle)?.is_semistable())
}

pub fn is_stable_chord(q: &Quiver, z: &CentralCharge, m: StringModule) -> Result<bool> {
    Ok(classify(q, z, m, Criterion::Chord)?.is_stable())
}

pub fn is_semistable_chord(q: &Quiver, z: &CentralCharge, m: StringModule) -> Result<bool> {
    Ok(classify(q, z, m, Criterion::Chord)?.is_semistable())
}

pub fn is_stable_wire(q: &Quiver, z: &CentralCharge, m: StringModule) -> Result<bool> {
    Ok(classify(q, z, m, Criterion::Wire)?.is_stable())
}

pub fn is_semistable_wire(q: &Quiver, z: &CentralCharge, m: StringModule) -> Result<bool> {
    Ok(classify(q, z, m, Criterion::Wire)?.is_semistable())
}

/// The point `t b - a` of the linear green path of `z` at time `t`.
pub fn green_point(z: &CentralCharge, t: &Rational) -> Vec<Rational> {
    z.a().iter().zip(z.b()).map(|(a, b)| &(t * b) - a).collect()
}

fn dot(x: &[Rational], d: &[u32]) -> Rational {
    x.iter()
        .zip(d)
        .filter(|(_, &k)| k > 0)
        .map(|(x, &k)| x * &Rational::from(k as i64))
        .sum()
}

/// Where `x` sits relative to the wall of `m`. Indecomposable submodules suffice
/// because the defining inequalities are closed under direct sums.
pub fn in_wall(q: &Quiver, x: &[Rational], m: StringModule) -> Result<WallMembership> {
    if x.len() != q.n() {
        return Err(Error::Precondition(format!(
            "point has {} coordinates but {q} has {} vertices",
            x.len(),
            q.n()
        )));
    }
    if !dot(x, &q.dim_vector(m)).is_zero() {
        return Ok(WallMembership::Outside);
    }
    let mut boundary = false;
    for s in q.submodule_intervals(m) {
        if s == m {
            continue;
        }
        let v = dot(x, &q.dim_vector(s));
        if v.is_positive() {
            return Ok(WallMembership::HyperplaneOnly);
        }
        if v.is_zero() {
            boundary = true;
        }
    }
    Ok(if boundary {
        WallMembership::Boundary
    } else {
        WallMembership::Interior
    })
}

fn ensure_finite(q: &Quiver, z: &CentralCharge) -> Result<()> {
    if q.kind() == QuiverKind::AffineA && !z.is_finite(q)? {
        return Err(Error::InfiniteStableSet);
    }
    Ok(())
}

/// Every candidate classified by the oracle. Fails on infinite affine charges.
pub fn classify_all(q: &Quiver, z: &CentralCharge) -> Result<Vec<(StringModule, Stability)>> {
    ensure_finite(q, z)?;
    let view = ChargeView::new(q, z)?;
    Ok(candidates(q)
        .into_iter()
        .map(|m| (m, view.classify(m, Criterion::Oracle)))
        .collect())
}

/// Stable modules (semistable ones too when `include_semistable`), canonical and sorted.
pub fn stable_set_with(q: &Quiver, z: &CentralCharge, include_semistable: bool) -> Result<Vec<StringModule>> {
    Ok(classify_all(q, z)?
        .into_iter()
        .filter(|(_, s)| {
            if include_semistable {
                s.is_semistable()
            } else {
                s.is_stable()
            }
        })
        .map(|(m, _)| m)
        .collect())
}

pub fn stable_set(q: &Quiver, z: &CentralCharge) -> Result<Vec<StringModule>> {
    stable_set_with(q, z, false)
}

pub fn semistable_set(q: &Quiver, z: &CentralCharge) -> Result<Vec<StringModule>> {
    stable_set_with(q, z, true)
}

fn sort_by_slope(view: &ChargeView, mods: &mut [StringModule]) {
    mods.sort_by(|a, b| view.cmp_slopes(*a, *b).then(a.cmp(b)));
}

fn entries(view: &ChargeView, mods: &[StringModule]) -> Vec<GreenEntry> {
    mods.iter()
        .map(|&m| GreenEntry {
            module: m,
            slope: view.slope(m),
        })
        .collect()
}

/// Modules involved in slope ties, in the sorted order.
fn tied(view: &ChargeView, sorted: &[StringModule]) -> Vec<StringModule> {
    let mut out = BTreeSet::new();
    for w in sorted.windows(2) {
        if view.cmp_slopes(w[0], w[1]) == Ordering::Equal {
            out.insert(w[0]);
            out.insert(w[1]);
        }
    }
    out.into_iter().collect()
}

/// Stable modules ordered by slope, ties broken by `(i, j)`. Unlike [`mgs`] this
/// accepts charges with slope ties or strictly semistable modules.
pub fn slope_order(q: &Quiver, z: &CentralCharge) -> Result<Vec<GreenEntry>> {
    let view = ChargeView::new(q, z)?;
    let mut mods = stable_set(q, z)?;
    sort_by_slope(&view, &mut mods);
    Ok(entries(&view, &mods))
}

/// The maximal green sequence of a generic finite charge.
pub fn mgs(q: &Quiver, z: &CentralCharge) -> Result<GreenSequence> {
    let all = classify_all(q, z)?;
    let strict: Vec<StringModule> = all
        .iter()
        .filter(|(_, s)| *s == Stability::StrictlySemistable)
        .map(|(m, _)| *m)
        .collect();
    if !strict.is_empty() {
        return Err(Error::NonGeneric {
            reason: NonGenericReason::StrictSemistable,
            culprits: strict,
        });
    }
    let view = ChargeView::new(q, z)?;
    let mut mods: Vec<StringModule> = all
        .into_iter()
        .filter(|(_, s)| s.is_stable())
        .map(|(m, _)| m)
        .collect();
    sort_by_slope(&view, &mut mods);
    let ties = tied(&view, &mods);
    if !ties.is_empty() {
        return Err(Error::NonGeneric {
            reason: NonGenericReason::Tie,
            culprits: ties,
        });
    }
    Ok(GreenSequence {
        entries: entries(&view, &mods),
    })
}

/// Two linear green paths with the same `a`, joined at slope 0: follow `z` for
/// negative slopes and `z_prime` for positive ones.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplicedPath {
    pub z: CentralCharge,
    pub z_prime: CentralCharge,
}

impl SplicedPath {
    /// Checks the shared `a`, finiteness of both charges and the absence of
    /// semistable modules of slope 0.
    pub fn new(q: &Quiver, z: CentralCharge, z_prime: CentralCharge) -> Result<SplicedPath> {
        z.check_for(q)?;
        z_prime.check_for(q)?;
        if z.a() != z_prime.a() {
            return Err(Error::SpliceInvalid("the two charges have different a-vectors".into()));
        }
        for c in [&z, &z_prime] {
            let view = ChargeView::new(q, c)?;
            let zero: Vec<String> = semistable_set(q, c)?
                .into_iter()
                .filter(|m| view.slope_sign(*m) == Ordering::Equal)
                .map(|m| m.to_string())
                .collect();
            if !zero.is_empty() {
                return Err(Error::SpliceInvalid(format!(
                    "semistable modules of slope 0: {}",
                    zero.join(", ")
                )));
            }
        }
        Ok(SplicedPath { z, z_prime })
    }
}

/// Halves of a splice: modules of `z` with negative slope, of `z'` with positive slope.
fn splice_parts(q: &Quiver, p: &SplicedPath, include_semistable: bool) -> Result<[Vec<StringModule>; 2]> {
    let mut parts = [Vec::new(), Vec::new()];
    for (slot, (c, want)) in [(&p.z, Ordering::Less), (&p.z_prime, Ordering::Greater)]
        .into_iter()
        .enumerate()
    {
        let view = ChargeView::new(q, c)?;
        parts[slot] = stable_set_with(q, c, include_semistable)?
            .into_iter()
            .filter(|m| view.slope_sign(*m) == want)
            .collect();
    }
    Ok(parts)
}

/// Stable modules of the spliced path.
pub fn spliced_stable_set(q: &Quiver, p: &SplicedPath) -> Result<Vec<StringModule>> {
    let [neg, pos] = splice_parts(q, p, false)?;
    let all: BTreeSet<StringModule> = neg.into_iter().chain(pos).collect();
    Ok(all.into_iter().collect())
}

/// Semistable modules of the spliced path.
pub fn spliced_semistable_set(q: &Quiver, p: &SplicedPath) -> Result<Vec<StringModule>> {
    let [neg, pos] = splice_parts(q, p, true)?;
    let all: BTreeSet<StringModule> = neg.into_iter().chain(pos).collect();
    Ok(all.into_iter().collect())
}

/// The green sequence of a spliced path: the `z` part then the `z'` part.
pub fn spliced_mgs(q: &Quiver, p: &SplicedPath) -> Result<GreenSequence> {
    let [neg, pos] = splice_parts(q, p, false)?;
    let [neg_semi, pos_semi] = splice_parts(q, p, true)?;
    let strict: Vec<StringModule> = neg_semi
        .iter()
        .filter(|m| !neg.contains(m))
        .chain(pos_semi.iter().filter(|m| !pos.contains(m)))
        .copied()
        .collect();
    if !strict.is_empty() {
        return Err(Error::NonGeneric {
            reason: NonGenericReason::StrictSemistable,
            culprits: strict,
        });
    }
    let twice: Vec<String> = neg.iter().filter(|m| pos.contains(m)).map(|m| m.to_string()).collect();
    if !twice.is_empty() {
        return Err(Error::SpliceInvalid(format!(
            "modules crossed on both segments: {}",
            twice.join(", ")
        )));
    }
    let mut out = Vec::new();
    for (c, mut mods) in [(&p.z, neg), (&p.z_prime, pos)] {
        let view = ChargeView::new(q, c)?;
        sort_by_slope(&view, &mut mods);
        let ties = tied(&view, &mods);
        if !ties.is_empty() {
            return Err(Error::NonGeneric {
                reason: NonGenericReason::Tie,
                culprits: ties,
            });
        }
        out.extend(entries(&view, &mods));
    }
    Ok(GreenSequence { entries: out })
}
