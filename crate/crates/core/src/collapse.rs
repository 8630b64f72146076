//! Collapsing arrows of an affine quiver and projecting modules, sets and charges.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::charge::CentralCharge;
use crate::error::{Error, Result};
use crate::quiver::{Quiver, QuiverKind, Sign, StringModule};
use crate::rational::Rational;

/// The result of collapsing a set of arrows: the target quiver and the index map `pi`.
#[derive(Debug, Clone, Serialize)]
pub struct ProjectionMap {
    pub source: Quiver,
    /// Collapsed arrow indices in `1..=n`.
    pub arrows: BTreeSet<i64>,
    pub target: Quiver,
    /// `pi(1), ..., pi(n)`; other values follow from `pi(t + n) = pi(t) + n'`.
    table: Vec<i64>,
}

impl ProjectionMap {
    /// The monotone index map: `pi(1) = 1`, and `pi(t+1) = pi(t)` exactly when the
    /// arrow at position `t` is collapsed.
    pub fn pi(&self, t: i64) -> i64 {
        let n = self.source.n() as i64;
        let np = self.target.n() as i64;
        let (reps, r) = ((t - 1).div_euclid(n), (t - 1).rem_euclid(n));
        self.table[r as usize] + reps * np
    }

    /// Whether position `t` carries a collapsed arrow (indices read mod `n`).
    pub fn hits(&self, t: i64) -> bool {
        let n = self.source.n() as i64;
        let r = (t - 1).rem_euclid(n) + 1;
        self.arrows.contains(&r)
    }
}

/// Collapses the arrows at positions `arrows` (given in `1..=n`). The target sign
/// word is the source word with those positions removed. A target with only `+`
/// signs is the oriented cycle; one with only `-` signs is rejected.
pub fn collapse(q: &Quiver, arrows: &[i64]) -> Result<ProjectionMap> {
    if q.kind() != QuiverKind::AffineA {
        return Err(Error::InvalidCollapse(format!(
            "collapsing is defined for affine quivers, not {q}"
        )));
    }
    let n = q.n() as i64;
    let set: BTreeSet<i64> = arrows.iter().copied().collect();
    if let Some(bad) = set.iter().find(|&&x| !(1..=n).contains(&x)) {
        return Err(Error::InvalidCollapse(format!("arrow index {bad} is outside 1..={n}")));
    }
    if set.len() as i64 > n - 2 {
        return Err(Error::InvalidCollapse(format!(
            "cannot collapse {} of {n} arrows; at most {} allowed",
            set.len(),
            n - 2
        )));
    }
    let word: Vec<Sign> = (1..=n)
        .filter(|t| !set.contains(t))
        .map(|t| q.sign(t).expect("periodic sign"))
        .collect();
    let target = if !word.contains(&Sign::Minus) {
        Quiver::cycle(word.len()).map_err(|e| Error::InvalidCollapse(e.to_string()))?
    } else if !word.contains(&Sign::Plus) {
        return Err(Error::InvalidCollapse(
            "the remaining arrows all have sign -, which is not a supported quiver".into(),
        ));
    } else {
        Quiver::affine(word)?
    };
    let mut table = Vec::with_capacity(n as usize);
    let mut v = 1;
    for t in 1..=n {
        table.push(v);
        if !set.contains(&t) {
            v += 1;
        }
    }
    Ok(ProjectionMap {
        source: q.clone(),
        arrows: set,
        target,
        table,
    })
}

/// `None` when an endpoint sits on a collapsed arrow, else `M(pi(i), pi(j))`, canonical.
pub fn project_module(p: &ProjectionMap, m: StringModule) -> Option<StringModule> {
    if p.hits(m.i) || p.hits(m.j) {
        return None;
    }
    Some(p.target.canonicalize(StringModule::new(p.pi(m.i), p.pi(m.j))))
}

/// Nonzero projections of a set of modules.
pub fn project_set(p: &ProjectionMap, mods: &[StringModule]) -> Vec<StringModule> {
    let out: BTreeSet<StringModule> = mods.iter().filter_map(|&m| project_module(p, m)).collect();
    out.into_iter().collect()
}

/// Sums `a` and `b` over the fibres of `pi` on vertices. Slopes of every module
/// that survives the projection are unchanged.
pub fn project_charge(p: &ProjectionMap, z: &CentralCharge) -> Result<CentralCharge> {
    z.check_for(&p.source)?;
    let np = p.target.n() as i64;
    let mut a = vec![Rational::zero(); np as usize];
    let mut b = vec![Rational::zero(); np as usize];
    for v in 1..=p.source.n() as i64 {
        let s = (p.pi(v) - 1).rem_euclid(np) as usize;
        a[s] += &z.a()[(v - 1) as usize];
        b[s] += &z.b()[(v - 1) as usize];
    }
    CentralCharge::new(a, b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::parse_quiver;

    fn m(i: i64, j: i64) -> StringModule {
        StringModule::new(i, j)
    }

    #[test]
    fn collapse_targets() {
        let q = parse_quiver("At:-++--").unwrap();
        let p = collapse(&q, &[1]).unwrap();
        assert_eq!(p.target.to_string(), "At:++--");
        assert_eq!((p.pi(1), p.pi(2), p.pi(3), p.pi(6)), (1, 1, 2, 5));

        let q = parse_quiver("At:++++-").unwrap();
        let p = collapse(&q, &[5]).unwrap();
        assert_eq!(p.target.kind(), QuiverKind::CycleNilpotent);
        assert_eq!(p.target.n(), 4);

        assert!(collapse(&q, &[1, 2, 3, 4, 5]).is_err());
        assert_eq!(collapse(&q, &[1, 2, 3]).unwrap().target.to_string(), "At:+-");
        assert!(collapse(&q, &[1, 2, 3, 4]).is_err());
        assert!(collapse(&q, &[0]).is_err());
        assert!(collapse(&parse_quiver("At:+--").unwrap(), &[1]).is_err());
    }

    #[test]
    fn module_projection() {
        let q = parse_quiver("At:-++--").unwrap();
        let p = collapse(&q, &[1]).unwrap();
        assert_eq!(project_module(&p, m(0, 1)), None);
        // an endpoint on the collapsed arrow kills the module
        assert_eq!(project_module(&p, m(1, 3)), None);
        assert_eq!(project_module(&p, m(2, 3)), Some(m(1, 2)));
        assert_eq!(project_module(&p, m(3, 7)), Some(m(2, 5)));
        assert!(project_set(&p, &[]).is_empty());

        let id = collapse(&q, &[]).unwrap();
        for mm in q.modules_up_to(10) {
            assert_eq!(project_module(&id, mm), Some(mm));
        }
    }

    #[test]
    fn charge_projection_keeps_slopes() {
        let q = parse_quiver("At:-++--").unwrap();
        let z = CentralCharge::from_ints(&[3, -1, 4, -1, 5], &[2, 7, 1, 8, 2]).unwrap();
        let p = collapse(&q, &[2, 5]).unwrap();
        let zp = project_charge(&p, &z).unwrap();
        for mm in q.modules_up_to(10) {
            if let Some(t) = project_module(&p, mm) {
                assert_eq!(z.slope(&q, mm), zp.slope(&p.target, t), "{mm} -> {t}");
            }
        }
    }
}
