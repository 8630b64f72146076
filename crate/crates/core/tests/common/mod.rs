//! Test-side oracles built from the representations themselves, sharing no
//! code with the library's interval rules.

#![allow(dead_code)]

use std::collections::BTreeSet;

use greenseq::{CentralCharge, Quiver, QuiverKind, Rational, Sign, StringModule};
use num::{BigRational, One, Zero};

/// Positions carrying an arrow: `1..n` on `A_n`, `1..=n` on periodic quivers.
fn arrow_positions(q: &Quiver) -> Vec<i64> {
    let n = q.n() as i64;
    match q.kind() {
        QuiverKind::FiniteA => (1..n).collect(),
        _ => (1..=n).collect(),
    }
}

fn vertex(q: &Quiver, t: i64) -> i64 {
    (t - 1).rem_euclid(q.n() as i64)
}

/// Basis of `M(i,j)`: one vector per cover vertex `t` in `(i, j]`.
fn basis(m: StringModule) -> Vec<i64> {
    ((m.i + 1)..=m.j).collect()
}

/// Image of the basis vector `e_t` under the arrow at position `p`, if nonzero.
/// The arrow joins cover vertices `p` and `p+1`; it points left when the sign at
/// `p` is `+` and right when it is `-`.
fn arrow_image(q: &Quiver, m: StringModule, p: i64, t: i64) -> Option<i64> {
    let plus = q.sign(p) == Some(Sign::Plus);
    let (src, dst) = if plus { (t, t - 1) } else { (t, t + 1) };
    let at_source = if plus { vertex(q, src) == vertex(q, p + 1) } else { vertex(q, src) == vertex(q, p) };
    // the map only links consecutive cover vertices through this position
    let linked = if plus { vertex(q, dst) == vertex(q, p) } else { vertex(q, dst) == vertex(q, p + 1) };
    if at_source && linked && m.i < dst && dst <= m.j {
        Some(dst)
    } else {
        None
    }
}

/// Source and target vertex of the arrow at position `p`.
fn arrow_ends(q: &Quiver, p: i64) -> (i64, i64) {
    if q.sign(p) == Some(Sign::Plus) {
        (vertex(q, p + 1), vertex(q, p))
    } else {
        (vertex(q, p), vertex(q, p + 1))
    }
}

fn rank(mut rows: Vec<Vec<BigRational>>, cols: usize) -> usize {
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else { continue };
        rows.swap(r, p);
        let inv = rows[r][c].clone().recip();
        for x in rows[r].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let f = rows[i][c].clone();
                let pivot = rows[r].clone();
                for (x, y) in rows[i].iter_mut().zip(&pivot) {
                    *x = &*x - &(&f * y);
                }
            }
        }
        r += 1;
    }
    r
}

/// `dim Hom(M, N)` as the nullspace dimension of the intertwiner equations
/// `f_dst . M_a = N_a . f_src` over every arrow `a`.
pub fn hom_nullspace(q: &Quiver, m: StringModule, n: StringModule) -> usize {
    let (bm, bn) = (basis(m), basis(n));
    let mut unknowns = Vec::new();
    for &t in &bm {
        for &u in &bn {
            if vertex(q, t) == vertex(q, u) {
                unknowns.push((t, u));
            }
        }
    }
    let idx = |t: i64, u: i64| unknowns.iter().position(|&x| x == (t, u));
    let mut rows = Vec::new();
    for p in arrow_positions(q) {
        let (s, d) = arrow_ends(q, p);
        for &t in bm.iter().filter(|&&t| vertex(q, t) == s) {
            for &u2 in bn.iter().filter(|&&u| vertex(q, u) == d) {
                let mut row = vec![BigRational::zero(); unknowns.len()];
                if let Some(t2) = arrow_image(q, m, p, t) {
                    if let Some(c) = idx(t2, u2) {
                        row[c] += BigRational::one();
                    }
                }
                for &u in bn.iter().filter(|&&u| vertex(q, u) == s) {
                    if arrow_image(q, n, p, u) == Some(u2) {
                        if let Some(c) = idx(t, u) {
                            row[c] -= BigRational::one();
                        }
                    }
                }
                if row.iter().any(|x| !x.is_zero()) {
                    rows.push(row);
                }
            }
        }
    }
    unknowns.len() - rank(rows, unknowns.len())
}

/// Whether every vertex carries at most one basis vector.
pub fn is_thin(q: &Quiver, m: StringModule) -> bool {
    !q.kind().is_periodic() || m.len() <= q.n() as i64
}

/// Coordinate subrepresentations of `m` other than `0` and `m`, as bitmasks over
/// the basis. On thin modules these are all subrepresentations.
pub fn proper_subreps(q: &Quiver, m: StringModule) -> Vec<u64> {
    let b = basis(m);
    let len = b.len();
    assert!(len < 63);
    let positions = arrow_positions(q);
    let images: Vec<Vec<usize>> = b
        .iter()
        .map(|&t| {
            positions
                .iter()
                .filter_map(|&p| arrow_image(q, m, p, t))
                .map(|d| (d - m.i - 1) as usize)
                .collect()
        })
        .collect();
    let full = (1u64 << len) - 1;
    (1..full)
        .filter(|&mask| {
            (0..len)
                .filter(|&s| mask >> s & 1 == 1)
                .all(|s| images[s].iter().all(|&d| mask >> d & 1 == 1))
        })
        .collect()
}

fn value(z: &CentralCharge, q: &Quiver, m: StringModule, mask: u64) -> (Rational, Rational) {
    let mut re = Rational::zero();
    let mut im = Rational::zero();
    for (s, t) in basis(m).into_iter().enumerate() {
        if mask >> s & 1 == 1 {
            let v = vertex(q, t) as usize;
            re += &z.a()[v];
            im += &z.b()[v];
        }
    }
    (re, im)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Unstable,
    Semistable,
    Stable,
}

/// Brute-force stability of a thin module: every proper subrepresentation must
/// have slope at least (for stability, strictly above) the slope of `m`.
pub fn brute_stability(q: &Quiver, z: &CentralCharge, m: StringModule) -> Verdict {
    assert!(is_thin(q, m), "{m} is not thin");
    let len = m.len() as u32;
    let (re, im) = value(z, q, m, (1u64 << len) - 1);
    let mut strict = true;
    for mask in proper_subreps(q, m) {
        let (r2, i2) = value(z, q, m, mask);
        // slope(sub) vs slope(m), denominators positive
        let lhs = &r2 * &im;
        let rhs = &re * &i2;
        if lhs < rhs {
            return Verdict::Unstable;
        }
        if lhs == rhs {
            strict = false;
        }
    }
    if strict {
        Verdict::Stable
    } else {
        Verdict::Semistable
    }
}

/// Slope of `m` from its dimension vector, computed on the test side.
pub fn dim_slope(q: &Quiver, z: &CentralCharge, m: StringModule) -> Rational {
    let (re, im) = value(z, q, m, (1u64 << m.len()) - 1);
    re / im
}

/// Every `+/-` word of length `n` containing both signs.
pub fn affine_words(n: usize) -> Vec<String> {
    (0u32..(1 << n))
        .map(|mask| (0..n).map(|t| if mask >> t & 1 == 1 { '+' } else { '-' }).collect::<String>())
        .filter(|w| w.contains('+') && w.contains('-'))
        .collect()
}

/// Every affine quiver with `2 <= a + b <= max_n`, one per sign word.
pub fn all_affine(max_n: usize) -> Vec<Quiver> {
    (2..=max_n)
        .flat_map(affine_words)
        .map(|w| greenseq::parse_quiver(&format!("At:{w}")).unwrap())
        .collect()
}

/// Every orientation of `A_n`.
pub fn all_finite(n: usize) -> Vec<Quiver> {
    (0u32..(1 << (n - 1)))
        .map(|mask| {
            let w: String = (0..n - 1).map(|t| if mask >> t & 1 == 1 { '+' } else { '-' }).collect();
            greenseq::parse_quiver(&format!("A:{w}")).unwrap()
        })
        .collect()
}

/// Whether the words `(k', l', l'', k'')` pattern exists: positive then negative
/// inside `(k, l)`, negative then positive inside `(l, k + n)`. Brute force.
pub fn has_pattern(q: &Quiver, k: i64, l: i64) -> bool {
    let n = q.n() as i64;
    let inner = ((k + 1)..l).any(|a| q.is_plus(a) && ((a + 1)..l).any(|b| q.is_minus(b)));
    let outer = ((l + 1)..(k + n)).any(|a| q.is_minus(a) && ((a + 1)..(k + n)).any(|b| q.is_plus(b)));
    inner && outer
}

pub fn binom2(n: usize) -> usize {
    n * (n - 1) / 2
}

pub fn set_of(v: &[StringModule]) -> BTreeSet<StringModule> {
    v.iter().copied().collect()
}
