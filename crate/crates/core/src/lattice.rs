//! Integer coordinates for exact geometric tests.
//!
//! A charge `(a, b)` is rescaled to `(La * a, Lb * b)` where `La`, `Lb` are the
//! least common multiples of the denominators. Slopes get multiplied by the
//! positive constant `La / Lb` and dual vertices move by a positive diagonal
//! map, so every comparison made here has the same outcome as on the original
//! charge. Coordinates that fit comfortably in 60 bits use `i128`, which cannot
//! overflow for any product formed below; anything larger falls back to `BigInt`.

use std::cmp::Ordering;
use std::ops::{Add, Mul, Sub};

use num::bigint::BigInt;
use num::{Integer, One, Signed, ToPrimitive, Zero};

use crate::charge::CentralCharge;
use crate::quiver::{Quiver, StringModule};

pub(crate) trait Int:
    Clone + Ord + Zero + Add<Output = Self> + Sub<Output = Self> + Mul<Output = Self>
{
    fn from_i64(v: i64) -> Self;
}

impl Int for i128 {
    fn from_i64(v: i64) -> Self {
        v as i128
    }
}

impl Int for BigInt {
    fn from_i64(v: i64) -> Self {
        BigInt::from(v)
    }
}

/// Classification of a module under a charge.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Stability {
    Unstable,
    /// Semistable but not stable.
    StrictlySemistable,
    Stable,
}

impl Stability {
    pub fn is_semistable(self) -> bool {
        !matches!(self, Stability::Unstable)
    }

    pub fn is_stable(self) -> bool {
        matches!(self, Stability::Stable)
    }
}

/// Prefix sums of the integerized charge.
#[derive(Clone, Debug)]
pub(crate) struct Geo<T> {
    n: i64,
    periodic: bool,
    xs: Vec<T>,
    ys: Vec<T>,
    px: T,
    py: T,
}

impl<T: Int> Geo<T> {
    fn new(periodic: bool, a: &[BigInt], b: &[BigInt], conv: impl Fn(&BigInt) -> T) -> Self {
        let n = a.len();
        let mut xs = Vec::with_capacity(n + 1);
        let mut ys = Vec::with_capacity(n + 1);
        let (mut x, mut y) = (T::zero(), T::zero());
        xs.push(x.clone());
        ys.push(y.clone());
        for t in 0..n {
            x = x + conv(&b[t]);
            y = y + conv(&a[t]);
            xs.push(x.clone());
            ys.push(y.clone());
        }
        Geo {
            n: n as i64,
            periodic,
            px: x,
            py: y,
            xs,
            ys,
        }
    }

    /// Dual vertex `p_t`, extended periodically on the cover.
    pub fn point(&self, t: i64) -> (T, T) {
        if !self.periodic {
            return (self.xs[t as usize].clone(), self.ys[t as usize].clone());
        }
        let (q, r) = (t.div_euclid(self.n), t.rem_euclid(self.n) as usize);
        let q = T::from_i64(q);
        (
            q.clone() * self.px.clone() + self.xs[r].clone(),
            q * self.py.clone() + self.ys[r].clone(),
        )
    }

    /// `(a . dim m, b . dim m)` up to the positive rescaling.
    fn delta(&self, m: StringModule) -> (T, T) {
        let (xi, yi) = self.point(m.i);
        let (xj, yj) = self.point(m.j);
        (yj - yi, xj - xi)
    }

    /// Compares slopes of two modules.
    pub fn cmp_slopes(&self, m1: StringModule, m2: StringModule) -> Ordering {
        let (n1, d1) = self.delta(m1);
        let (n2, d2) = self.delta(m2);
        (n1 * d2).cmp(&(n2 * d1))
    }

    /// Sign of the slope of `m`.
    pub fn slope_sign(&self, m: StringModule) -> Ordering {
        self.delta(m).0.cmp(&T::zero())
    }

    /// Definition-level test: compare the slope of `m` with every proper indecomposable submodule.
    pub fn oracle(&self, q: &Quiver, m: StringModule) -> Stability {
        let mut tie = false;
        for s in q.submodule_intervals(m) {
            if s == m {
                continue;
            }
            match self.cmp_slopes(s, m) {
                Ordering::Less => return Stability::Unstable,
                Ordering::Equal => tie = true,
                Ordering::Greater => {}
            }
        }
        if tie {
            Stability::StrictlySemistable
        } else {
            Stability::Stable
        }
    }

    /// Chord test: positive vertices above the chord from `p_i` to `p_j`, negative ones below.
    pub fn chord(&self, q: &Quiver, m: StringModule) -> Stability {
        let (xi, yi) = self.point(m.i);
        let (xj, yj) = self.point(m.j);
        let (dx, dy) = (xj - xi.clone(), yj - yi.clone());
        let mut tie = false;
        for k in (m.i + 1)..m.j {
            let (xk, yk) = self.point(k);
            // positive when p_k lies strictly above the line through p_i and p_j
            let cross = dx.clone() * (yk - yi.clone()) - dy.clone() * (xk - xi.clone());
            let want = if q.is_plus(k) {
                Ordering::Greater
            } else {
                Ordering::Less
            };
            match cross.cmp(&T::zero()) {
                Ordering::Equal => tie = true,
                o if o == want => {}
                _ => return Stability::Unstable,
            }
        }
        if tie {
            Stability::StrictlySemistable
        } else {
            Stability::Stable
        }
    }

    /// Wire test: at the crossing time `t = N/D` of `L_i` and `L_j`, each positive wire
    /// `L_k` must be above and each negative wire below. Values are `D * f_k(t)`.
    pub fn wire(&self, q: &Quiver, m: StringModule) -> Stability {
        let (num, den) = self.delta(m);
        let f = |k: i64| {
            let (xk, yk) = self.point(k);
            yk * den.clone() - num.clone() * xk
        };
        let fi = f(m.i);
        let mut tie = false;
        for k in (m.i + 1)..m.j {
            let fk = f(k);
            let want = if q.is_plus(k) {
                Ordering::Greater
            } else {
                Ordering::Less
            };
            match fk.cmp(&fi) {
                Ordering::Equal => tie = true,
                o if o == want => {}
                _ => return Stability::Unstable,
            }
        }
        if tie {
            Stability::StrictlySemistable
        } else {
            Stability::Stable
        }
    }

    /// `PX * f_i(c)` for `i` in `1..=n`, where `c = PY / PX` is the critical slope.
    pub fn critical_heights(&self) -> Vec<T> {
        (1..=self.n)
            .map(|i| {
                let (x, y) = self.point(i);
                y * self.px.clone() - self.py.clone() * x
            })
            .collect()
    }
}

/// Integerized charge with the numeric backend picked from the coordinate size.
#[derive(Clone, Debug)]
pub(crate) enum Lattice {
    Small(Geo<i128>),
    Big(Geo<BigInt>),
}

macro_rules! dispatch {
    ($self:expr, $g:ident => $body:expr) => {
        match $self {
            Lattice::Small($g) => $body,
            Lattice::Big($g) => $body,
        }
    };
}

fn lcm_of_denominators<'a>(xs: impl Iterator<Item = &'a crate::Rational>) -> BigInt {
    xs.fold(BigInt::one(), |acc, r| acc.lcm(r.denom()))
}

impl Lattice {
    /// Prepares a charge for queries on modules whose endpoints lie in `[-n, reach]`.
    pub fn new(q: &Quiver, z: &CentralCharge, reach: i64) -> Lattice {
        let la = lcm_of_denominators(z.a().iter());
        let lb = lcm_of_denominators(z.b().iter());
        let a: Vec<BigInt> = z.a().iter().map(|r| (r.as_big() * &la).to_integer()).collect();
        let b: Vec<BigInt> = z.b().iter().map(|r| (r.as_big() * &lb).to_integer()).collect();
        let periodic = q.kind().is_periodic();
        let total: BigInt = a.iter().map(|v| v.abs()).sum::<BigInt>() + b.iter().sum::<BigInt>();
        let n = a.len().max(1) as i64;
        let periods = if periodic { reach.abs() / n + 2 } else { 1 };
        let bound = total * BigInt::from(periods);
        let fits = bound.bits() < 60;
        if fits {
            Lattice::Small(Geo::new(periodic, &a, &b, |v| v.to_i128().expect("checked bound")))
        } else {
            Lattice::Big(Geo::new(periodic, &a, &b, |v| v.clone()))
        }
    }

    #[cfg(test)]
    pub fn is_small(&self) -> bool {
        matches!(self, Lattice::Small(_))
    }

    pub fn cmp_slopes(&self, m1: StringModule, m2: StringModule) -> Ordering {
        dispatch!(self, g => g.cmp_slopes(m1, m2))
    }

    pub fn slope_sign(&self, m: StringModule) -> Ordering {
        dispatch!(self, g => g.slope_sign(m))
    }

    pub fn oracle(&self, q: &Quiver, m: StringModule) -> Stability {
        dispatch!(self, g => g.oracle(q, m))
    }

    pub fn chord(&self, q: &Quiver, m: StringModule) -> Stability {
        dispatch!(self, g => g.chord(q, m))
    }

    pub fn wire(&self, q: &Quiver, m: StringModule) -> Stability {
        dispatch!(self, g => g.wire(q, m))
    }

    /// Strict order of `f_i(c)` values, as signs of pairwise differences.
    pub fn critical_order(&self) -> Vec<Vec<Ordering>> {
        fn table<T: Int>(h: Vec<T>) -> Vec<Vec<Ordering>> {
            h.iter().map(|x| h.iter().map(|y| x.cmp(y)).collect()).collect()
        }
        dispatch!(self, g => table(g.critical_heights()))
    }
}
