//! Central charges `Z(x) = a.x + i b.x` and the data derived from them.

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::Lattice;
use crate::quiver::{Quiver, QuiverKind, StringModule};
use crate::rational::Rational;

/// A central charge given by its real part `a` and its positive imaginary part `b`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct CentralCharge {
    a: Vec<Rational>,
    b: Vec<Rational>,
}

#[derive(Deserialize)]
struct RawCharge {
    a: Vec<Rational>,
    b: Vec<Rational>,
}

impl<'de> Deserialize<'de> for CentralCharge {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = RawCharge::deserialize(d)?;
        CentralCharge::new(raw.a, raw.b).map_err(serde::de::Error::custom)
    }
}

impl CentralCharge {
    /// Checks that the vectors have equal nonzero length and that `b` is positive.
    pub fn new(a: Vec<Rational>, b: Vec<Rational>) -> Result<CentralCharge> {
        if a.len() != b.len() {
            return Err(Error::InvalidCharge(format!(
                "a has {} entries but b has {}",
                a.len(),
                b.len()
            )));
        }
        if a.is_empty() {
            return Err(Error::InvalidCharge("empty charge".into()));
        }
        if let Some(pos) = b.iter().position(|x| !x.is_positive()) {
            return Err(Error::InvalidCharge(format!(
                "b_{} = {} is not positive",
                pos + 1,
                b[pos]
            )));
        }
        Ok(CentralCharge { a, b })
    }

    /// A standard charge: `b = (1, ..., 1)`.
    pub fn standard(a: Vec<Rational>) -> Result<CentralCharge> {
        let b = vec![Rational::one(); a.len()];
        CentralCharge::new(a, b)
    }

    pub fn from_ints(a: &[i64], b: &[i64]) -> Result<CentralCharge> {
        CentralCharge::new(
            a.iter().map(|&v| Rational::from(v)).collect(),
            b.iter().map(|&v| Rational::from(v)).collect(),
        )
    }

    pub fn a(&self) -> &[Rational] {
        &self.a
    }

    pub fn b(&self) -> &[Rational] {
        &self.b
    }

    pub fn n(&self) -> usize {
        self.a.len()
    }

    pub fn is_standard(&self) -> bool {
        self.b.iter().all(|x| *x == 1)
    }

    pub fn sum_a(&self) -> Rational {
        self.a.iter().sum()
    }

    pub fn sum_b(&self) -> Rational {
        self.b.iter().sum()
    }

    /// Multiplies both vectors by a positive constant.
    pub fn scaled(&self, c: &Rational) -> CentralCharge {
        assert!(c.is_positive(), "scale factor must be positive");
        CentralCharge {
            a: self.a.iter().map(|x| x * c).collect(),
            b: self.b.iter().map(|x| x * c).collect(),
        }
    }

    /// Same `b`, `a` replaced by `a - s b`. Every slope drops by `s`.
    pub fn shifted(&self, s: &Rational) -> CentralCharge {
        CentralCharge {
            a: self.a.iter().zip(&self.b).map(|(a, b)| a - &(s * b)).collect(),
            b: self.b.clone(),
        }
    }

    /// Checks the charge length against the quiver.
    pub fn check_for(&self, q: &Quiver) -> Result<()> {
        if self.n() != q.n() {
            return Err(Error::InvalidCharge(format!(
                "charge has {} entries but {q} has {} vertices",
                self.n(),
                q.n()
            )));
        }
        Ok(())
    }

    /// `(a . dim m, b . dim m)`.
    pub fn evaluate(&self, q: &Quiver, m: StringModule) -> (Rational, Rational) {
        let d = q.dim_vector(m);
        let mut re = Rational::zero();
        let mut im = Rational::zero();
        for (t, &k) in d.iter().enumerate() {
            if k > 0 {
                let k = Rational::from(k as i64);
                re += &(&self.a[t] * &k);
                im += &(&self.b[t] * &k);
            }
        }
        (re, im)
    }

    /// Slope `sigma(m) = (a . dim m) / (b . dim m)`.
    pub fn slope(&self, q: &Quiver, m: StringModule) -> Rational {
        let (re, im) = self.evaluate(q, m);
        re / im
    }

    /// Dual vertex `p_t = (b_1 + ... + b_t, a_1 + ... + a_t)`, periodic on the cover.
    pub fn dual_vertex(&self, q: &Quiver, t: i64) -> (Rational, Rational) {
        let n = self.n() as i64;
        let (reps, r) = if q.kind().is_periodic() {
            (t.div_euclid(n), t.rem_euclid(n) as usize)
        } else {
            assert!((0..=n).contains(&t), "vertex {t} outside 0..={n}");
            (0, t as usize)
        };
        let mut x: Rational = self.b[..r].iter().sum();
        let mut y: Rational = self.a[..r].iter().sum();
        if reps != 0 {
            let reps = Rational::from(reps);
            x += &(&reps * &self.sum_b());
            y += &(&reps * &self.sum_a());
        }
        (x, y)
    }

    /// Wire value `f_i(t) = y_i - t x_i`.
    pub fn wire_value(&self, q: &Quiver, i: i64, t: &Rational) -> Rational {
        let (x, y) = self.dual_vertex(q, i);
        y - t * &x
    }

    /// Replaces `a` by `a - c b` with `c = sum(a) / sum(b)`, so that `sum(a) = 0`.
    pub fn normalize(&self) -> CentralCharge {
        let c = self.sum_a() / self.sum_b();
        self.shifted(&c)
    }

    /// The slope `c = sum(a) / sum(b)` of the null root, where all translates of a
    /// wire meet.
    pub fn critical_slope(&self, q: &Quiver) -> Result<Rational> {
        if q.kind() == QuiverKind::FiniteA {
            return Err(Error::Precondition(
                "the critical slope is defined only for periodic quivers".into(),
            ));
        }
        Ok(self.sum_a() / self.sum_b())
    }

    /// Indices `1..=n` grouped by the value `f_i(c)` on the critical line, lowest first.
    pub fn height_order(&self, q: &Quiver) -> Result<Vec<Vec<usize>>> {
        self.check_for(q)?;
        self.critical_slope(q)?;
        let lat = Lattice::new(q, self, q.n() as i64);
        let cmp = lat.critical_order();
        let mut idx: Vec<usize> = (0..q.n()).collect();
        idx.sort_by(|&u, &v| cmp[u][v].then(u.cmp(&v)));
        let mut groups: Vec<Vec<usize>> = Vec::new();
        for u in idx {
            match groups.last_mut() {
                Some(g) if cmp[g[0]][u] == Ordering::Equal => g.push(u),
                _ => groups.push(vec![u]),
            }
        }
        Ok(groups
            .into_iter()
            .map(|g| g.into_iter().map(|u| u + 1).collect())
            .collect())
    }

    /// Pairs `(k, l)` in `1..=n` with `k` positive, `l` negative and `f_k(c) < f_l(c)`.
    pub fn essential_pairs(&self, q: &Quiver) -> Result<Vec<(i64, i64)>> {
        self.check_for(q)?;
        self.critical_slope(q)?;
        let lat = Lattice::new(q, self, q.n() as i64);
        let cmp = lat.critical_order();
        let n = q.n();
        let mut out = Vec::new();
        for k in 1..=n {
            if !q.is_plus(k as i64) {
                continue;
            }
            for l in 1..=n {
                if q.is_minus(l as i64) && cmp[k - 1][l - 1] == Ordering::Less {
                    out.push((k as i64, l as i64));
                }
            }
        }
        Ok(out)
    }

    /// Whether only finitely many modules are stable. Always true for `A_n` and
    /// the cycle; on affine quivers this is the existence of an essential pair.
    pub fn is_finite(&self, q: &Quiver) -> Result<bool> {
        self.check_for(q)?;
        match q.kind() {
            QuiverKind::AffineA => Ok(!self.essential_pairs(q)?.is_empty()),
            _ => Ok(true),
        }
    }

    /// Whether some positive and some negative index tie on the critical line.
    /// The finiteness results assume this does not happen.
    pub fn has_critical_sign_tie(&self, q: &Quiver) -> Result<bool> {
        self.check_for(q)?;
        self.critical_slope(q)?;
        let cmp = Lattice::new(q, self, q.n() as i64).critical_order();
        let n = q.n();
        Ok((1..=n).any(|k| {
            q.is_plus(k as i64)
                && (1..=n).any(|l| q.is_minus(l as i64) && cmp[k - 1][l - 1] == Ordering::Equal)
        }))
    }
}

/// Lifts an essential pair from `1..=n` indices to `k < l < k + n`.
pub fn lift_pair(n: usize, (k, l): (i64, i64)) -> (i64, i64) {
    if l < k {
        (k, l + n as i64)
    } else {
        (k, l)
    }
}

/// Binds a charge to a quiver, checking the length.
pub fn make_charge(q: &Quiver, a: Vec<Rational>, b: Vec<Rational>) -> Result<CentralCharge> {
    let z = CentralCharge::new(a, b)?;
    z.check_for(q)?;
    Ok(z)
}
