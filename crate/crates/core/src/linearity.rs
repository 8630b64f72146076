//! Which `S_kl` come from a single linear charge, and explicit witnesses:
//! linear charges, spliced paths, all-stable charges on `A_n` and the cycle charges.

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::charge::CentralCharge;
use crate::error::{Error, Result};
use crate::maxsets::{build_sk, build_skl, check_pair, max_mgs_length};
use crate::quiver::{Quiver, QuiverKind, Sign};
use crate::rational::{q as r, Rational};
use crate::stability::{semistable_set, spliced_stable_set, stable_set, SplicedPath};

/// The two sufficient conditions for linearity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Condition {
    /// No positive index precedes a negative one strictly between `k` and `l`.
    Cond1,
    /// No negative index precedes a positive one strictly between `l` and `k + n`.
    Cond2,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinearityVerdict {
    pub linear: bool,
    /// `(k', l', l'', k'')` with `k < k' < l' < l < l'' < k'' < k + n`, `k', k''`
    /// positive and `l', l''` negative. Present exactly when `linear` is false.
    pub witness: Option<(i64, i64, i64, i64)>,
    /// A condition that holds, `Cond1` reported first when both do.
    pub satisfied: Option<Condition>,
}

/// First `(u, v)` with `u < v` in `range`, `sign(u) = first` and `sign(v) = second`.
fn first_pattern(q: &Quiver, range: std::ops::Range<i64>, first: Sign, second: Sign) -> Option<(i64, i64)> {
    let u = range.clone().find(|&u| q.sign(u) == Some(first) && ((u + 1)..range.end).any(|v| q.sign(v) == Some(second)))?;
    let v = ((u + 1)..range.end).find(|&v| q.sign(v) == Some(second))?;
    Some((u, v))
}

/// Decides whether `S_kl` is the stable set of some linear charge.
pub fn is_linear_set(q: &Quiver, k: i64, l: i64) -> Result<LinearityVerdict> {
    check_pair(q, k, l)?;
    let n = q.n() as i64;
    let inner = first_pattern(q, (k + 1)..l, Sign::Plus, Sign::Minus);
    let outer = first_pattern(q, (l + 1)..(k + n), Sign::Minus, Sign::Plus);
    let satisfied = match (inner, outer) {
        (None, _) => Some(Condition::Cond1),
        (_, None) => Some(Condition::Cond2),
        _ => None,
    };
    let witness = match (inner, outer) {
        (Some((k1, l1)), Some((l2, k2))) => Some((k1, l1, l2, k2)),
        _ => None,
    };
    Ok(LinearityVerdict {
        linear: witness.is_none(),
        witness,
        satisfied,
    })
}

fn spread(m: usize, lo: Rational, hi: Rational) -> Vec<Rational> {
    match m {
        0 => Vec::new(),
        1 => vec![(lo + hi) / r(2, 1)],
        _ => {
            let step = (&hi - &lo) / Rational::from((m - 1) as i64);
            (0..m).map(|t| &lo + &(&step * &Rational::from(t as i64))).collect()
        }
    }
}

/// Charge whose dual vertices `p_k, ..., p_{k+n}` are `pts` (with `p_{k+n}` last).
fn charge_from_window(n: usize, k: i64, pts: &[(Rational, Rational)]) -> Result<CentralCharge> {
    let mut a = vec![Rational::zero(); n];
    let mut b = vec![Rational::zero(); n];
    for (s, w) in pts.windows(2).enumerate() {
        let t = k + s as i64 + 1;
        let idx = (t - 1).rem_euclid(n as i64) as usize;
        a[idx] = &w[1].1 - &w[0].1;
        b[idx] = &w[1].0 - &w[0].0;
    }
    CentralCharge::new(a, b)
}

fn reduce_pair(n: i64, k: i64, l: i64) -> (i64, i64) {
    let shift = (k - 1).div_euclid(n) * n;
    (k - shift, l - shift)
}

/// The two-band template behind the linear witnesses, valid when `Cond2` holds:
/// `p_k` at the origin, `p_l` at height `e`, positive vertices on a concave arc near
/// height 2 and negative vertices on a convex arc near -2, period 13.
fn cond2_template(q: &Quiver, k: i64, l: i64, e: &Rational) -> Result<CentralCharge> {
    let n = q.n() as i64;
    let d = r(1, 50);
    let period = r(13, 1);
    let top = |x: &Rational| {
        let u = x - &r(5, 1);
        r(2, 1) - &d * &(&u * &u)
    };
    let bot = |x: &Rational| {
        let u = x - &r(2, 1);
        r(-2, 1) + &d * &(&u * &u)
    };
    let inner: Vec<i64> = ((k + 1)..l).collect();
    let outer = (l + 1)..(k + n);
    let (outer_pos, outer_neg): (Vec<i64>, Vec<i64>) = outer.partition(|&t| q.is_plus(t));

    let mut pts = vec![(Rational::zero(), Rational::zero())];
    for (t, x) in inner.iter().zip(spread(inner.len(), r(2, 1), r(4, 1))) {
        let y = if q.is_plus(*t) { top(&x) } else { bot(&x) };
        pts.push((x, y));
    }
    pts.push((r(6, 1), e.clone()));
    let xs_pos = spread(outer_pos.len(), r(7, 1), r(29, 4));
    let xs_neg = spread(outer_neg.len(), r(12, 1), r(25, 2));
    let (mut ip, mut ineg) = (0, 0);
    for t in (l + 1)..(k + n) {
        if q.is_plus(t) {
            let x = xs_pos[ip].clone();
            ip += 1;
            pts.push((x.clone(), top(&x)));
        } else {
            let x = xs_neg[ineg].clone();
            ineg += 1;
            pts.push((x.clone(), bot(&(&x - &period))));
        }
    }
    pts.push((period, Rational::zero()));
    charge_from_window(q.n(), k, &pts)
}

/// The quiver with `eps'(s) = eps(-s)`. Reflecting the dual vertices in the vertical
/// axis turns a charge for one into a charge for the other and swaps `Cond1` and `Cond2`.
fn mirror_quiver(q: &Quiver) -> Quiver {
    let n = q.n() as i64;
    let signs = (1..=n).map(|s| q.sign(-s).expect("periodic sign")).collect();
    Quiver::affine(signs).expect("mirror keeps both signs")
}

fn mirror_charge(z: &CentralCharge) -> CentralCharge {
    let n = z.n() as i64;
    let a = (1..=n).map(|s| -&z.a()[(-s).rem_euclid(n) as usize]).collect();
    let b = (1..=n).map(|s| z.b()[(-s).rem_euclid(n) as usize].clone()).collect();
    CentralCharge::new(a, b).expect("mirroring keeps b positive")
}

/// Values of the template parameter tried in order.
pub const EPSILON_SCHEDULE: [(i64, i64); 4] = [(1, 5), (1, 10), (1, 20), (1, 40)];

/// A linear charge whose stable set is exactly `S_kl`, with no strictly semistable
/// modules. The result is checked before it is returned.
pub fn witness_linear(q: &Quiver, k: i64, l: i64) -> Result<CentralCharge> {
    let verdict = is_linear_set(q, k, l)?;
    if !verdict.linear {
        return Err(Error::Precondition(format!(
            "S({k},{l}) is not linear; use a spliced witness"
        )));
    }
    let n = q.n() as i64;
    let (k, l) = reduce_pair(n, k, l);
    let target = build_skl(q, k, l)?.modules;
    let cond2 = first_pattern(q, (l + 1)..(k + n), Sign::Minus, Sign::Plus).is_none();
    for (num, den) in EPSILON_SCHEDULE {
        let e = r(num, den);
        let z = if cond2 {
            cond2_template(q, k, l, &e)?
        } else {
            let mq = mirror_quiver(q);
            let km = (-k).rem_euclid(n);
            let km = if km == 0 { n } else { km };
            let lm = (n - l - km).rem_euclid(n) + km;
            mirror_charge(&cond2_template(&mq, km, lm, &e)?)
        };
        if stable_set(q, &z)? == target && semistable_set(q, &z)? == target {
            return Ok(z);
        }
    }
    Err(Error::WitnessSearchFailed { k, l })
}

fn pos_arc(x: &Rational) -> Rational {
    let c = r(1, 1000);
    let u = x + &r(10, 1);
    r(21, 1) - &(&r(2, 21) * &u) + &c * &(&u * &(r(11, 1) - x.clone()))
}

fn neg_arc(x: &Rational) -> Rational {
    let c = r(1, 1000);
    let u = x - &r(10, 1);
    r(-19, 1) - &(&r(2, 21) * &u) - &c * &(&u * &(r(31, 1) - x.clone()))
}

fn splice_template(q: &Quiver, k: i64, l: i64, shift: &Rational) -> Result<CentralCharge> {
    let n = q.n() as i64;
    let mut pts = vec![(r(-14, 1) - shift.clone(), r(-1, 1))];
    let inner: Vec<i64> = ((k + 1)..l).collect();
    for (t, x) in inner.iter().zip(spread(inner.len(), r(-10, 1), r(-9, 1))) {
        let y = if q.is_plus(*t) {
            pos_arc(&x)
        } else {
            neg_arc(&(&x + &r(40, 1)))
        };
        pts.push((x, y));
    }
    pts.push((r(-5, 1) + shift.clone(), r(1, 1)));
    let outer: Vec<i64> = ((l + 1)..(k + n)).collect();
    for (t, x) in outer.iter().zip(spread(outer.len(), r(10, 1), r(11, 1))) {
        let y = if q.is_plus(*t) { pos_arc(&x) } else { neg_arc(&x) };
        pts.push((x, y));
    }
    pts.push((r(26, 1) - shift.clone(), r(-1, 1)));
    charge_from_window(q.n(), k, &pts)
}

/// A spliced path whose stable set is exactly `S_kl`. Works for every valid pair,
/// linear or not. `z'` moves `p_k` (and so every translate of it) ten units left and `p_l` ten units right.
pub fn witness_spliced(q: &Quiver, k: i64, l: i64) -> Result<SplicedPath> {
    check_pair(q, k, l)?;
    let (k, l) = reduce_pair(q.n() as i64, k, l);
    let target = build_skl(q, k, l)?.modules;
    let z = splice_template(q, k, l, &Rational::zero())?;
    let zp = splice_template(q, k, l, &r(10, 1))?;
    let path = match SplicedPath::new(q, z, zp) {
        Ok(p) => p,
        Err(Error::SpliceInvalid(_) | Error::InfiniteStableSet) => {
            return Err(Error::WitnessSearchFailed { k, l })
        }
        Err(e) => return Err(e),
    };
    if spliced_stable_set(q, &path)? != target {
        return Err(Error::WitnessSearchFailed { k, l });
    }
    Ok(path)
}

fn require_kind(q: &Quiver, kind: QuiverKind) -> Result<()> {
    if q.kind() != kind {
        return Err(Error::Precondition(format!("{q} is not of type {}", kind.tag())));
    }
    Ok(())
}

/// Whether the dual vertices of a finite-type charge are in strictly convex position
/// with no three collinear.
pub fn is_strictly_convex(q: &Quiver, z: &CentralCharge) -> bool {
    let n = q.n() as i64;
    let pts: Vec<(Rational, Rational)> = (0..=n).map(|t| z.dual_vertex(q, t)).collect();
    let cross = |o: &(Rational, Rational), a: &(Rational, Rational), b: &(Rational, Rational)| {
        (&a.0 - &o.0) * (&b.1 - &o.1) - (&a.1 - &o.1) * (&b.0 - &o.0)
    };
    let no_collinear = pts
        .iter()
        .array_combinations()
        .all(|[a, b, c]| !cross(a, b, c).is_zero());
    let chain_ok = |keep: &dyn Fn(i64) -> bool, turn_sign: i8| {
        let chain: Vec<&(Rational, Rational)> =
            (0..=n).filter(|&t| t == 0 || t == n || keep(t)).map(|t| &pts[t as usize]).collect();
        chain.windows(3).all(|w| {
            let c = cross(w[0], w[1], w[2]);
            if turn_sign < 0 {
                c.is_negative()
            } else {
                c.is_positive()
            }
        })
    };
    no_collinear && chain_ok(&|t| q.is_plus(t), -1) && chain_ok(&|t| q.is_minus(t), 1)
}

/// A standard charge on `A_n` with every indecomposable module stable. Dual vertices
/// sit on parabolas `y = s(n-s)` (positive indices, scaled by 1, 2 or 3) and
/// `y = -s(n-s)` (negative indices). Slope ties are possible; the result need not
/// be generic.
pub fn reineke_charge(q: &Quiver) -> Result<CentralCharge> {
    require_kind(q, QuiverKind::FiniteA)?;
    let n = q.n() as i64;
    for factor in [1, 2, 3] {
        let y = |s: i64| -> i64 {
            let h = s * (n - s);
            match q.eps(s) {
                1 => factor * h,
                -1 => -h,
                _ => 0,
            }
        };
        let a = (1..=n).map(|s| Rational::from(y(s) - y(s - 1))).collect();
        let z = CentralCharge::standard(a)?;
        if is_strictly_convex(q, &z) && stable_set(q, &z)?.len() == max_mgs_length(q) {
            return Ok(z);
        }
    }
    Err(Error::VerificationFailed(format!("no all-stable parabola charge for {q}")))
}

/// A standard charge on the oriented cycle with stable set `S_k`: the dual
/// vertices `p_k, ..., p_{k+n}` follow the parabola `c_j = -(2k + n - 2j)^2`.
pub fn dn_charge(q: &Quiver, k: i64) -> Result<CentralCharge> {
    require_kind(q, QuiverKind::CycleNilpotent)?;
    let n = q.n() as i64;
    let target = build_sk(q, k)?;
    let c = |j: i64| -(2 * k + n - 2 * j).pow(2);
    let mut a = vec![Rational::zero(); q.n()];
    for j in (k + 1)..=(k + n) {
        a[(j - 1).rem_euclid(n) as usize] = Rational::from(c(j) - c(j - 1));
    }
    let z = CentralCharge::standard(a)?;
    if stable_set(q, &z)? != target {
        return Err(Error::VerificationFailed(format!("parabola charge misses S_{k} on {q}")));
    }
    Ok(z)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::parse_quiver;

    #[test]
    fn verdicts_on_the_3_3_quiver() {
        let q = parse_quiver("At:+++---").unwrap();
        let v = is_linear_set(&q, 2, 5).unwrap();
        assert!(!v.linear);
        assert_eq!(v.witness, Some((3, 4, 6, 7)));
        assert_eq!(v.satisfied, None);
        let v = is_linear_set(&q, 1, 4).unwrap();
        assert!(v.linear);
        assert!(v.witness.is_none());
        let nonlinear = crate::maxsets::valid_pairs(&q)
            .into_iter()
            .filter(|&(k, l)| !is_linear_set(&q, k, l).unwrap().linear)
            .count();
        assert_eq!(nonlinear, 1);
    }

    #[test]
    fn kronecker_witnesses() {
        let q = parse_quiver("At:+-").unwrap();
        let z = witness_linear(&q, 1, 2).unwrap();
        assert_eq!(stable_set(&q, &z).unwrap().len(), 2);
        let p = witness_spliced(&q, 1, 2).unwrap();
        assert_eq!(spliced_stable_set(&q, &p).unwrap().len(), 2);
    }

    #[test]
    fn nonlinear_input_is_rejected() {
        let q = parse_quiver("At:+++---").unwrap();
        assert!(matches!(witness_linear(&q, 2, 5), Err(Error::Precondition(_))));
        let p = witness_spliced(&q, 2, 5).unwrap();
        assert_eq!(spliced_stable_set(&q, &p).unwrap(), build_skl(&q, 2, 5).unwrap().modules);
    }

    #[test]
    fn reineke_small_cases() {
        let a3 = parse_quiver("A:-+").unwrap();
        let z = reineke_charge(&a3).unwrap();
        assert_eq!(z.a(), &[r(-2, 1), r(4, 1), r(-2, 1)]);
        let a1 = parse_quiver("A:").unwrap();
        assert_eq!(reineke_charge(&a1).unwrap().a(), &[r(0, 1)]);
        let a5 = parse_quiver("A:-+-+").unwrap();
        assert_eq!(stable_set(&a5, &reineke_charge(&a5).unwrap()).unwrap().len(), 15);
    }

    #[test]
    fn cycle_charges() {
        let q5 = parse_quiver("Dcyc:5").unwrap();
        let z = dn_charge(&q5, 1).unwrap();
        let want: Vec<Rational> = [-16, 16, 8, 0, -8].iter().map(|&v| Rational::from(v as i64)).collect();
        assert_eq!(z.a(), want.as_slice());
        assert_eq!(stable_set(&q5, &z).unwrap().len(), 14);
        let q4 = parse_quiver("Dcyc:4").unwrap();
        assert_eq!(stable_set(&q4, &dn_charge(&q4, 2).unwrap()).unwrap().len(), 9);
    }
}
