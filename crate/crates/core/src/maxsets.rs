//! The maximum-size stable sets `S_kl` of affine quivers and `S_k` of the cycle.

use std::collections::BTreeSet;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quiver::{Quiver, QuiverKind, StringModule};

/// The set `S_kl` with the index sets it is built from.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MaxSetDescriptor {
    pub k: i64,
    pub l: i64,
    /// `A_kl`: `l` and the positive indices strictly between `k` and `k + n`.
    #[serde(rename = "A")]
    pub a_set: Vec<i64>,
    /// `B_kl`: `k` and the negative indices strictly between `l - n` and `l`.
    #[serde(rename = "B")]
    pub b_set: Vec<i64>,
    /// Canonical modules, sorted.
    pub modules: Vec<StringModule>,
}

/// A descriptor with the index of its equality class.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassifiedMaxSet {
    #[serde(flatten)]
    pub descriptor: MaxSetDescriptor,
    pub class_id: usize,
}

fn binom2(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

fn require_affine(q: &Quiver) -> Result<()> {
    if q.kind() != QuiverKind::AffineA {
        return Err(Error::Precondition(format!("{q} is not an affine quiver")));
    }
    Ok(())
}

/// Checks `eps(k) = +`, `eps(l) = -` and `k < l < k + n`.
pub fn check_pair(q: &Quiver, k: i64, l: i64) -> Result<()> {
    require_affine(q)?;
    let n = q.n() as i64;
    if !q.is_plus(k) || !q.is_minus(l) {
        return Err(Error::Precondition(format!(
            "need eps(k) = + and eps(l) = -, got eps({k}) = {} and eps({l}) = {}",
            q.eps(k),
            q.eps(l)
        )));
    }
    if !(k < l && l < k + n) {
        return Err(Error::Precondition(format!("need k < l < k + n, got ({k}, {l}) with n = {n}")));
    }
    Ok(())
}

/// All valid pairs `(k, l)` with `1 <= k <= n`; there are `ab` of them.
pub fn valid_pairs(q: &Quiver) -> Vec<(i64, i64)> {
    if q.kind() != QuiverKind::AffineA {
        return Vec::new();
    }
    let n = q.n() as i64;
    (1..=n)
        .filter(|&k| q.is_plus(k))
        .flat_map(|k| ((k + 1)..(k + n)).filter(|&l| q.is_minus(l)).map(move |l| (k, l)))
        .collect()
}

/// Builds `S_kl`: pairs inside `A`, pairs inside `B`, and for `i` in `B`, `j` in `A`
/// both `M(i,j)` and `M(i, j-n)` with the endpoints put in order.
pub fn build_skl(q: &Quiver, k: i64, l: i64) -> Result<MaxSetDescriptor> {
    check_pair(q, k, l)?;
    let n = q.n() as i64;
    let a_set: Vec<i64> = std::iter::once(l)
        .chain(((k + 1)..(k + n)).filter(|&j| q.is_plus(j)))
        .sorted()
        .collect();
    let b_set: Vec<i64> = std::iter::once(k)
        .chain(((l - n + 1)..l).filter(|&i| q.is_minus(i)))
        .sorted()
        .collect();
    let ordered = |u: i64, v: i64| q.canonicalize(StringModule::new(u.min(v), u.max(v)));
    let mut mods = BTreeSet::new();
    for set in [&a_set, &b_set] {
        for [&u, &v] in set.iter().array_combinations() {
            mods.insert(ordered(u, v));
        }
    }
    for &j in &a_set {
        for &i in &b_set {
            mods.insert(ordered(i, j));
            mods.insert(ordered(i, j - n));
        }
    }
    let expected = max_mgs_length(q);
    if mods.len() != expected {
        return Err(Error::VerificationFailed(format!(
            "S({k},{l}) has {} modules, expected {expected}",
            mods.len()
        )));
    }
    if let Some(bad) = mods.iter().find(|m| !q.is_valid_interval(m.i, m.j)) {
        return Err(Error::VerificationFailed(format!("S({k},{l}) contains the non-exceptional {bad}")));
    }
    Ok(MaxSetDescriptor {
        k,
        l,
        a_set,
        b_set,
        modules: mods.into_iter().collect(),
    })
}

/// `S_k = { M(i,j) : k <= i < j <= k + n, j - i < n }` for the oriented cycle.
pub fn build_sk(q: &Quiver, k: i64) -> Result<Vec<StringModule>> {
    if q.kind() != QuiverKind::CycleNilpotent {
        return Err(Error::Precondition(format!("{q} is not an oriented cycle")));
    }
    let n = q.n() as i64;
    if !(1..=n).contains(&k) {
        return Err(Error::Precondition(format!("k = {k} is outside 1..={n}")));
    }
    let mods: BTreeSet<StringModule> = (k..(k + n))
        .flat_map(|i| ((i + 1)..=(k + n)).filter(move |&j| j - i < n).map(move |j| (i, j)))
        .map(|(i, j)| q.canonicalize(StringModule::new(i, j)))
        .collect();
    Ok(mods.into_iter().collect())
}

/// One descriptor per valid pair, grouped into classes of equal module sets.
/// Class ids count from 0 in order of first appearance.
pub fn enumerate_max_sets(q: &Quiver) -> Result<Vec<ClassifiedMaxSet>> {
    require_affine(q)?;
    let mut seen: Vec<Vec<StringModule>> = Vec::new();
    let mut out = Vec::new();
    for (k, l) in valid_pairs(q) {
        let d = build_skl(q, k, l)?;
        let class_id = match seen.iter().position(|s| *s == d.modules) {
            Some(c) => c,
            None => {
                seen.push(d.modules.clone());
                seen.len() - 1
            }
        };
        out.push(ClassifiedMaxSet {
            descriptor: d,
            class_id,
        });
    }
    Ok(out)
}

/// Number of distinct module sets among the descriptors.
pub fn class_count(sets: &[ClassifiedMaxSet]) -> usize {
    sets.iter().map(|s| s.class_id).collect::<BTreeSet<_>>().len()
}

/// Largest possible number of stable modules of a finite charge:
/// `C(a+b, 2) + ab` on `Ã_{a,b}`, `C(n, 2) + n - 1` on the cycle and
/// `n(n+1)/2` (every module) on `A_n`.
pub fn max_mgs_length(q: &Quiver) -> usize {
    let n = q.n();
    match q.kind() {
        QuiverKind::AffineA => binom2(n) + q.a() * q.b(),
        QuiverKind::CycleNilpotent => binom2(n) + n - 1,
        QuiverKind::FiniteA => n * (n + 1) / 2,
    }
}
