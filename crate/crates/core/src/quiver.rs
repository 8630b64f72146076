//! Sign-function quivers and their string modules.
//!
//! Vertices and arrows are indexed by integers. For the finite quiver `A_n` the
//! sign word covers the interior positions `1..n-1`; for the affine and cyclic
//! quivers it has length `n` and is read `n`-periodically on the universal cover.
//! The arrow at position `t` joins vertex `t` and vertex `t+1`; it points
//! `t <- t+1` when the sign is `+` and `t -> t+1` when it is `-`.
//!
//! The string module `M(i,j)` is supported on the interval `(i, j]` of the cover,
//! with identity maps along every arrow inside the interval.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Minus => '-',
        }
    }

    fn from_char(c: char) -> Option<Sign> {
        match c {
            '+' => Some(Sign::Plus),
            '-' | '\u{2212}' => Some(Sign::Minus),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum QuiverKind {
    /// Linear quiver `A_n` with `n` vertices.
    FiniteA,
    /// Affine `Ã_{a,b}`: an `n`-cycle with `a` clockwise and `b` counterclockwise arrows.
    AffineA,
    /// The oriented `n`-cycle with `rad^{n-1} = 0`.
    CycleNilpotent,
}

impl QuiverKind {
    pub fn tag(self) -> &'static str {
        match self {
            QuiverKind::FiniteA => "A",
            QuiverKind::AffineA => "At",
            QuiverKind::CycleNilpotent => "Dcyc",
        }
    }

    pub fn is_periodic(self) -> bool {
        !matches!(self, QuiverKind::FiniteA)
    }
}

/// Sign word of a quiver. Construction goes through [`Quiver`], which checks
/// the kind-specific invariants.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SignFunction {
    kind: QuiverKind,
    signs: Vec<Sign>,
}

impl SignFunction {
    /// `ε(i)` as `-1`, `0` or `1`.
    pub fn eps(&self, i: i64) -> i8 {
        match self.sign(i) {
            Some(Sign::Plus) => 1,
            Some(Sign::Minus) => -1,
            None => 0,
        }
    }

    /// The sign at position `i`, or `None` at the two ends of a finite quiver.
    pub fn sign(&self, i: i64) -> Option<Sign> {
        match self.kind {
            QuiverKind::FiniteA => {
                let n = self.signs.len() as i64 + 1;
                assert!((0..=n).contains(&i), "position {i} outside A_{n}");
                if i == 0 || i == n {
                    None
                } else {
                    Some(self.signs[(i - 1) as usize])
                }
            }
            QuiverKind::AffineA | QuiverKind::CycleNilpotent => {
                let n = self.signs.len() as i64;
                Some(self.signs[(i - 1).rem_euclid(n) as usize])
            }
        }
    }

    pub fn word(&self) -> &[Sign] {
        &self.signs
    }
}

/// A quiver of one of the three supported families.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Quiver {
    sign: SignFunction,
    n: usize,
}

/// A string module `M(i,j)`, an interval `(i, j]` on the universal cover.
///
/// Values produced by [`Quiver::string_module`] are validated and canonical.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct StringModule {
    pub i: i64,
    pub j: i64,
}

impl StringModule {
    pub const fn new(i: i64, j: i64) -> StringModule {
        StringModule { i, j }
    }

    pub fn len(&self) -> i64 {
        self.j - self.i
    }

    pub fn is_empty(&self) -> bool {
        self.j <= self.i
    }

    pub fn is_simple(&self) -> bool {
        self.j - self.i == 1
    }

    pub fn shift(&self, by: i64) -> StringModule {
        StringModule::new(self.i + by, self.j + by)
    }
}

impl fmt::Display for StringModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "M({},{})", self.i, self.j)
    }
}

impl Quiver {
    /// Finite `A_n` from its `n-1` interior signs.
    pub fn finite(signs: Vec<Sign>) -> Quiver {
        let n = signs.len() + 1;
        Quiver {
            sign: SignFunction {
                kind: QuiverKind::FiniteA,
                signs,
            },
            n,
        }
    }

    pub fn affine(signs: Vec<Sign>) -> Result<Quiver> {
        if !signs.contains(&Sign::Plus) || !signs.contains(&Sign::Minus) {
            return Err(Error::InvalidQuiver(
                "an affine sign word needs at least one + and one -".into(),
            ));
        }
        let n = signs.len();
        Ok(Quiver {
            sign: SignFunction {
                kind: QuiverKind::AffineA,
                signs,
            },
            n,
        })
    }

    pub fn cycle(n: usize) -> Result<Quiver> {
        if n < 4 {
            return Err(Error::InvalidQuiver(format!(
                "the oriented cycle needs n >= 4, got {n}"
            )));
        }
        Ok(Quiver {
            sign: SignFunction {
                kind: QuiverKind::CycleNilpotent,
                signs: vec![Sign::Plus; n],
            },
            n,
        })
    }

    /// Builds a quiver from a kind and a sign word (ignored for cycles, which use `n`).
    pub fn from_parts(kind: QuiverKind, signs: Vec<Sign>, n: usize) -> Result<Quiver> {
        match kind {
            QuiverKind::FiniteA => Ok(Quiver::finite(signs)),
            QuiverKind::AffineA => Quiver::affine(signs),
            QuiverKind::CycleNilpotent => Quiver::cycle(n),
        }
    }

    pub fn kind(&self) -> QuiverKind {
        self.sign.kind
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn sign_function(&self) -> &SignFunction {
        &self.sign
    }

    pub fn signs(&self) -> &[Sign] {
        &self.sign.signs
    }

    pub fn eps(&self, i: i64) -> i8 {
        self.sign.eps(i)
    }

    pub fn sign(&self, i: i64) -> Option<Sign> {
        self.sign.sign(i)
    }

    pub fn is_plus(&self, i: i64) -> bool {
        self.sign(i) == Some(Sign::Plus)
    }

    pub fn is_minus(&self, i: i64) -> bool {
        self.sign(i) == Some(Sign::Minus)
    }

    /// Number of `+` signs in the word.
    pub fn a(&self) -> usize {
        self.signs().iter().filter(|s| **s == Sign::Plus).count()
    }

    /// Number of `-` signs in the word.
    pub fn b(&self) -> usize {
        self.signs().iter().filter(|s| **s == Sign::Minus).count()
    }

    /// The sign word as text, e.g. `-++--`.
    pub fn word(&self) -> String {
        self.signs().iter().map(|s| s.as_char()).collect()
    }

    /// Quiver with every sign flipped (opposite arrows).
    pub fn negated(&self) -> Quiver {
        let signs = self.signs().iter().map(|s| s.flip()).collect();
        Quiver {
            sign: SignFunction {
                kind: self.kind(),
                signs,
            },
            n: self.n,
        }
    }

    /// Whether `(i, j)` names a module of this quiver: range checks for `A_n`,
    /// exceptionality for affine quivers, length below `n` for the cycle.
    pub fn is_valid_interval(&self, i: i64, j: i64) -> bool {
        if i >= j {
            return false;
        }
        let n = self.n as i64;
        match self.kind() {
            QuiverKind::FiniteA => 0 <= i && j <= n,
            QuiverKind::AffineA => !(self.sign(i) == self.sign(j) && j - i >= n),
            QuiverKind::CycleNilpotent => j - i < n,
        }
    }

    fn check_interval(&self, i: i64, j: i64) -> Result<()> {
        if i >= j {
            return Err(Error::InvalidModule(format!("need i < j, got ({i},{j})")));
        }
        if self.is_valid_interval(i, j) {
            return Ok(());
        }
        let n = self.n;
        Err(Error::InvalidModule(match self.kind() {
            QuiverKind::FiniteA => format!("({i},{j}) is outside 0 <= i < j <= {n}"),
            QuiverKind::AffineA => format!(
                "({i},{j}) is not exceptional: equal signs at both ends and length {} >= {n}",
                j - i
            ),
            QuiverKind::CycleNilpotent => {
                format!("({i},{j}) has length {} but the cycle allows at most {}", j - i, n - 1)
            }
        }))
    }

    /// Validated, canonical string module.
    pub fn string_module(&self, i: i64, j: i64) -> Result<StringModule> {
        self.check_interval(i, j)?;
        Ok(self.canonicalize(StringModule::new(i, j)))
    }

    /// Shifts a module of a periodic quiver so that `0 <= i < n`. Identity on `A_n`.
    pub fn canonicalize(&self, m: StringModule) -> StringModule {
        if !self.kind().is_periodic() {
            return m;
        }
        let n = self.n as i64;
        m.shift(-m.i.div_euclid(n) * n)
    }

    /// Dimension vector, indexed by vertices `1..=n` at positions `0..n`.
    pub fn dim_vector(&self, m: StringModule) -> Vec<u32> {
        let n = self.n as i64;
        let mut d = vec![0u32; self.n];
        for t in (m.i + 1)..=m.j {
            d[(t - 1).rem_euclid(n) as usize] += 1;
        }
        d
    }

    /// Every valid canonical module of the quiver whose length is below `max_len`.
    /// For `A_n` and the cycle the bound is ignored; all modules are returned.
    pub fn modules_up_to(&self, max_len: i64) -> Vec<StringModule> {
        let n = self.n as i64;
        let mut out = Vec::new();
        match self.kind() {
            QuiverKind::FiniteA => {
                for i in 0..n {
                    for j in (i + 1)..=n {
                        out.push(StringModule::new(i, j));
                    }
                }
            }
            QuiverKind::CycleNilpotent => {
                for i in 0..n {
                    for j in (i + 1)..(i + n) {
                        out.push(StringModule::new(i, j));
                    }
                }
            }
            QuiverKind::AffineA => {
                for i in 0..n {
                    for j in (i + 1)..(i + max_len) {
                        if self.is_valid_interval(i, j) {
                            out.push(StringModule::new(i, j));
                        }
                    }
                }
            }
        }
        out
    }

    /// Sub-intervals of `(i, j]` that are submodules, in cover coordinates,
    /// `m` itself included.
    pub fn submodule_intervals(&self, m: StringModule) -> Vec<StringModule> {
        let mut out = Vec::new();
        for a in m.i..m.j {
            if a != m.i && !self.is_minus(a) {
                continue;
            }
            for b in (a + 1)..=m.j {
                if b == m.j || self.is_plus(b) {
                    out.push(StringModule::new(a, b));
                }
            }
        }
        out
    }

    /// Sub-intervals of `(i, j]` that are quotient modules, `m` itself included.
    pub fn quotient_intervals(&self, m: StringModule) -> Vec<StringModule> {
        let mut out = Vec::new();
        for a in m.i..m.j {
            if a != m.i && !self.is_plus(a) {
                continue;
            }
            for b in (a + 1)..=m.j {
                if b == m.j || self.is_minus(b) {
                    out.push(StringModule::new(a, b));
                }
            }
        }
        out
    }

    /// Indecomposable submodules of `m`, canonicalized, `m` included.
    pub fn indecomposable_submodules(&self, m: StringModule) -> BTreeSet<StringModule> {
        self.submodule_intervals(m)
            .into_iter()
            .map(|x| self.canonicalize(x))
            .collect()
    }

    /// Indecomposable quotients of `m`, canonicalized, `m` included.
    pub fn indecomposable_quotients(&self, m: StringModule) -> BTreeSet<StringModule> {
        self.quotient_intervals(m)
            .into_iter()
            .map(|x| self.canonicalize(x))
            .collect()
    }

    /// `dim Hom(m, n)`: the number of pairs (quotient occurrence in `m`, submodule
    /// occurrence in a lift of `n`) with the same underlying interval.
    ///
    /// On periodic quivers every lift of `n` that overlaps `m` is tried. For
    /// modules shorter than `2n` that is the two-period window on either side.
    pub fn hom_dim(&self, m: StringModule, n: StringModule) -> usize {
        let shifts: Vec<i64> = if self.kind().is_periodic() {
            let p = self.n as i64;
            // lift n + s*p overlaps (m.i, m.j] iff n.i + s*p < m.j and n.j + s*p > m.i
            let lo = (m.i - n.j).div_euclid(p) + 1;
            let hi = (m.j - n.i - 1).div_euclid(p);
            (lo..=hi).map(|s| s * p).collect()
        } else {
            vec![0]
        };
        let quotients = self.quotient_intervals(m);
        let mut count = 0;
        for s in shifts {
            let lift = n.shift(s);
            for x in &quotients {
                if self.is_submodule_interval(lift, *x) {
                    count += 1;
                }
            }
        }
        count
    }

    /// Whether the interval `x` is a submodule of `m` (same cover coordinates).
    pub fn is_submodule_interval(&self, m: StringModule, x: StringModule) -> bool {
        m.i <= x.i
            && x.j <= m.j
            && x.i < x.j
            && (x.i == m.i || self.is_minus(x.i))
            && (x.j == m.j || self.is_plus(x.j))
    }
}

impl fmt::Display for Quiver {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind() {
            QuiverKind::CycleNilpotent => write!(f, "Dcyc:{}", self.n),
            kind => write!(f, "{}:{}", kind.tag(), self.word()),
        }
    }
}

fn parse_signs(s: &str) -> Result<Vec<Sign>> {
    s.chars()
        .map(|c| {
            Sign::from_char(c).ok_or_else(|| Error::Parse(format!("unexpected sign character {c:?}")))
        })
        .collect()
}

/// Parses `A:<signs>`, `At:<signs>` or `Dcyc:<n>`.
pub fn parse_quiver(spec: &str) -> Result<Quiver> {
    let spec = spec.trim();
    let (tag, body) = spec
        .split_once(':')
        .ok_or_else(|| Error::Parse(format!("expected KIND:BODY, got {spec:?}")))?;
    match tag {
        "A" => Ok(Quiver::finite(parse_signs(body)?)),
        "At" => {
            let signs = parse_signs(body)?;
            if signs.is_empty() {
                return Err(Error::Parse("empty affine sign word".into()));
            }
            Quiver::affine(signs)
        }
        "Dcyc" => {
            let n: usize = body
                .parse()
                .map_err(|_| Error::Parse(format!("cycle size must be an integer, got {body:?}")))?;
            Quiver::cycle(n)
        }
        _ => Err(Error::Parse(format!("unknown quiver kind {tag:?}"))),
    }
}

impl FromStr for Quiver {
    type Err = Error;

    fn from_str(s: &str) -> Result<Quiver> {
        parse_quiver(s)
    }
}

#[derive(Serialize, Deserialize)]
struct QuiverJson {
    kind: String,
    #[serde(default)]
    signs: String,
    #[serde(default)]
    n: Option<usize>,
}

impl Serialize for Quiver {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        QuiverJson {
            kind: self.kind().tag().to_string(),
            signs: self.word(),
            n: Some(self.n),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Quiver {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Quiver, D::Error> {
        use serde::de::Error as _;
        let raw = QuiverJson::deserialize(d)?;
        let q = match raw.kind.as_str() {
            "Dcyc" => {
                let n = raw.n.ok_or_else(|| D::Error::custom("Dcyc needs n"))?;
                Quiver::cycle(n)
            }
            tag => parse_quiver(&format!("{tag}:{}", raw.signs)),
        }
        .map_err(D::Error::custom)?;
        if let Some(n) = raw.n {
            if n != q.n() {
                return Err(D::Error::custom(format!(
                    "n = {n} does not match the sign word (n = {})",
                    q.n()
                )));
            }
        }
        Ok(q)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(i: i64, j: i64) -> StringModule {
        StringModule::new(i, j)
    }

    fn set(v: &[(i64, i64)]) -> BTreeSet<StringModule> {
        v.iter().map(|&(i, j)| m(i, j)).collect()
    }

    #[test]
    fn parses_the_three_families() {
        let q = parse_quiver("At:-++--").unwrap();
        assert_eq!((q.kind(), q.n(), q.a(), q.b()), (QuiverKind::AffineA, 5, 2, 3));
        let q = parse_quiver("A:-+").unwrap();
        assert_eq!((q.kind(), q.n()), (QuiverKind::FiniteA, 3));
        assert_eq!((q.eps(0), q.eps(1), q.eps(2), q.eps(3)), (0, -1, 1, 0));
        let q = parse_quiver("Dcyc:5").unwrap();
        assert_eq!(q.n(), 5);
        assert!((-7..7).all(|i| q.eps(i) == 1));
        assert_eq!(parse_quiver("A:").unwrap().n(), 1);
    }

    #[test]
    fn rejects_bad_specs() {
        assert!(matches!(parse_quiver("At:+++"), Err(Error::InvalidQuiver(_))));
        assert!(matches!(parse_quiver("Dcyc:3"), Err(Error::InvalidQuiver(_))));
        assert!(matches!(parse_quiver("B:+-"), Err(Error::Parse(_))));
        assert!(matches!(parse_quiver("At:+x-"), Err(Error::Parse(_))));
        assert!(matches!(parse_quiver("+-"), Err(Error::Parse(_))));
    }

    #[test]
    fn affine_signs_are_periodic() {
        let q = parse_quiver("At:-++--").unwrap();
        assert_eq!(q.eps(0), q.eps(5));
        assert_eq!(q.eps(-4), q.eps(1));
        assert_eq!(q.eps(7), 1);
    }

    #[test]
    fn string_module_dims_and_errors() {
        let a3 = parse_quiver("A:++").unwrap();
        let full = a3.string_module(0, 3).unwrap();
        assert_eq!(a3.dim_vector(full), vec![1, 1, 1]);
        assert!(a3.string_module(0, 4).is_err());
        assert!(a3.string_module(2, 2).is_err());

        let q = parse_quiver("At:-++--").unwrap();
        let m07 = q.string_module(0, 7).unwrap();
        assert_eq!(q.dim_vector(m07), vec![2, 2, 1, 1, 1]);
        assert!(matches!(q.string_module(1, 6), Err(Error::InvalidModule(_))));

        let c = parse_quiver("Dcyc:4").unwrap();
        assert!(c.string_module(1, 4).is_ok());
        assert!(c.string_module(1, 5).is_err());
    }

    #[test]
    fn canonical_forms() {
        let q = parse_quiver("At:++--").unwrap();
        assert_eq!(q.canonicalize(m(5, 7)), m(1, 3));
        assert_eq!(q.canonicalize(m(1, 3)), m(1, 3));
        assert_eq!(q.canonicalize(m(-1, 2)), m(3, 6));
        assert_eq!(q.string_module(5, 7).unwrap(), m(1, 3));
    }

    #[test]
    fn submodules_follow_the_sign_rule() {
        let q = parse_quiver("A:-+").unwrap();
        assert_eq!(
            q.indecomposable_submodules(m(0, 3)),
            set(&[(0, 3), (0, 2), (1, 3), (1, 2)])
        );
        assert_eq!(q.indecomposable_submodules(m(1, 2)), set(&[(1, 2)]));
        let kr = parse_quiver("At:+-").unwrap();
        assert_eq!(kr.indecomposable_submodules(m(0, 2)), set(&[(0, 2), (0, 1)]));
    }

    #[test]
    fn quotients_follow_the_flipped_rule() {
        let q = parse_quiver("A:-+").unwrap();
        assert_eq!(
            q.indecomposable_quotients(m(0, 3)),
            set(&[(0, 3), (0, 1), (2, 3)])
        );
        let a2 = parse_quiver("A:-").unwrap();
        assert_eq!(a2.indecomposable_quotients(m(0, 2)), set(&[(0, 2), (0, 1)]));
    }

    #[test]
    fn cycle_modules_are_uniserial() {
        let q = parse_quiver("Dcyc:5").unwrap();
        let sub = q.submodule_intervals(m(2, 6));
        assert_eq!(sub, vec![m(2, 3), m(2, 4), m(2, 5), m(2, 6)]);
    }

    #[test]
    fn hom_small_cases() {
        let a2 = parse_quiver("A:-").unwrap();
        assert_eq!(a2.hom_dim(m(0, 2), m(0, 1)), 1);
        assert_eq!(a2.hom_dim(m(0, 2), m(1, 2)), 0);
        assert_eq!(a2.hom_dim(m(1, 2), m(0, 2)), 1);
        assert_eq!(a2.hom_dim(m(0, 2), m(0, 2)), 1);
        // Kronecker: Hom(P, P') between the preprojectives M(0,1) = S_1 and M(1,2)
        let kr = parse_quiver("At:+-").unwrap();
        assert_eq!(kr.hom_dim(m(1, 2), m(1, 2)), 1);
        assert_eq!(kr.hom_dim(m(1, 4), m(1, 4)), 1);
    }

    #[test]
    fn json_round_trip() {
        for spec in ["A:-+", "At:-++--", "Dcyc:6", "A:"] {
            let q = parse_quiver(spec).unwrap();
            let s = serde_json::to_string(&q).unwrap();
            let back: Quiver = serde_json::from_str(&s).unwrap();
            assert_eq!(back, q);
            assert_eq!(back.to_string(), spec);
        }
        let q: Quiver = serde_json::from_str(r#"{"kind":"At","signs":"-++--","n":5}"#).unwrap();
        assert_eq!(q.n(), 5);
        assert!(serde_json::from_str::<Quiver>(r#"{"kind":"At","signs":"-+","n":5}"#).is_err());
    }
}
