//! Young diagrams, Frobenius coordinates, point configurations on `ℤ + 1/2`,
//! exact dimensions, and Plancherel samplers.

mod sampling;

pub use sampling::{sample_plancherel, sample_poissonized, sample_poisson, stream, PlancherelSample, MAX_POISSON_THETA};

use std::cmp::Ordering;
use std::fmt;
use std::ops::Neg;

use num_bigint::BigUint;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// A point of `ℤ' = ℤ + 1/2`, stored as the odd integer `2x`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "i64", into = "i64")]
pub struct HalfInteger(i64);

impl HalfInteger {
    /// From the doubled value `2x`, which must be odd.
    pub fn from_doubled(d: i64) -> Result<Self> {
        if d.rem_euclid(2) == 1 {
            Ok(Self(d))
        } else {
            Err(Error::Invalid(format!("{d} is not twice a half-integer")))
        }
    }

    /// `k + 1/2`.
    pub fn plus_half(k: i64) -> Self {
        Self(2 * k + 1)
    }

    /// `k - 1/2`.
    pub fn minus_half(k: i64) -> Self {
        Self(2 * k - 1)
    }

    pub fn doubled(self) -> i64 {
        self.0
    }

    pub fn value<T: Scalar>(self) -> T {
        T::from_int(self.0) * T::lit(0.5)
    }

    pub fn is_positive(self) -> bool {
        self.0 > 0
    }

    /// `x - 1/2` for positive points, `-x - 1/2` for negative ones: the arm
    /// or leg length the point encodes.
    pub fn depth(self) -> u32 {
        ((self.0.abs() - 1) / 2) as u32
    }
}

impl Neg for HalfInteger {
    type Output = Self;
    fn neg(self) -> Self {
        Self(-self.0)
    }
}

impl TryFrom<i64> for HalfInteger {
    type Error = Error;
    fn try_from(d: i64) -> Result<Self> {
        Self::from_doubled(d)
    }
}

impl From<HalfInteger> for i64 {
    fn from(x: HalfInteger) -> i64 {
        x.0
    }
}

impl fmt::Display for HalfInteger {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/2", self.0)
    }
}

/// A partition `λ₁ ≥ λ₂ ≥ … > 0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct YoungDiagram {
    parts: Vec<u32>,
}

impl YoungDiagram {
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::Invalid("partition parts must be positive".into()));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::Invalid("partition parts must be weakly decreasing".into()));
        }
        Ok(Self { parts })
    }

    pub fn empty() -> Self {
        Self::default()
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    /// Number of boxes.
    pub fn n(&self) -> usize {
        self.parts.iter().map(|&p| p as usize).sum()
    }

    /// Number of rows.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// `λ_i` with 1-based `i`, zero beyond the last row.
    pub fn part(&self, i: usize) -> u32 {
        if i == 0 {
            return 0;
        }
        self.parts.get(i - 1).copied().unwrap_or(0)
    }

    pub fn conjugate(&self) -> Self {
        let width = self.parts.first().copied().unwrap_or(0);
        let parts = (1..=width).map(|j| self.parts.iter().take_while(|&&p| p >= j).count() as u32).collect();
        Self { parts }
    }
}

impl TryFrom<Vec<u32>> for YoungDiagram {
    type Error = Error;
    fn try_from(parts: Vec<u32>) -> Result<Self> {
        Self::new(parts)
    }
}

impl From<YoungDiagram> for Vec<u32> {
    fn from(d: YoungDiagram) -> Vec<u32> {
        d.parts
    }
}

/// Frobenius coordinates `(p | q)`: arm and leg lengths along the diagonal.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FrobeniusCoords {
    pub p: Vec<u32>,
    pub q: Vec<u32>,
}

impl FrobeniusCoords {
    pub fn d(&self) -> usize {
        self.p.len()
    }

    /// Rebuilds the diagram: row `i ≤ d` has `p_i + i` boxes, and row `i > d`
    /// has as many boxes as there are legs reaching it, `#{j : q_j + j ≥ i}`.
    pub fn to_diagram(&self) -> Result<YoungDiagram> {
        let d = self.d();
        if self.q.len() != d {
            return Err(Error::Invalid("p and q must have equal length".into()));
        }
        let strictly_decreasing = |v: &[u32]| v.windows(2).all(|w| w[0] > w[1]);
        if !strictly_decreasing(&self.p) || !strictly_decreasing(&self.q) {
            return Err(Error::Invalid("Frobenius coordinates must be strictly decreasing".into()));
        }
        let mut parts: Vec<u32> = (0..d).map(|i| self.p[i] + i as u32 + 1).collect();
        let rows = self.q.first().map(|&q| q as usize + 1).unwrap_or(0);
        for i in d + 1..=rows {
            let len = self.q.iter().enumerate().filter(|&(j, &q)| q as usize + j + 1 >= i).count();
            parts.push(len as u32);
        }
        YoungDiagram::new(parts)
    }
}

/// Frobenius coordinates `p_i = λ_i - i`, `q_i = λ'_i - i` for `i ≤ d`.
pub fn frobenius(lambda: &YoungDiagram) -> FrobeniusCoords {
    let conj = lambda.conjugate();
    let d = (1..=lambda.len()).take_while(|&i| lambda.part(i) as usize >= i).count();
    FrobeniusCoords {
        p: (1..=d).map(|i| lambda.part(i) - i as u32).collect(),
        q: (1..=d).map(|i| conj.part(i) - i as u32).collect(),
    }
}

/// A finite subset of `ℤ'`, kept sorted. Serialises as the sorted doubled values.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(try_from = "Vec<HalfInteger>", into = "Vec<HalfInteger>")]
pub struct PointConfiguration {
    points: Vec<HalfInteger>,
}

impl PointConfiguration {
    pub fn new(mut points: Vec<HalfInteger>) -> Result<Self> {
        points.sort();
        if points.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::Invalid("configuration points must be distinct".into()));
        }
        Ok(Self { points })
    }

    pub fn points(&self) -> &[HalfInteger] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn contains(&self, x: HalfInteger) -> bool {
        self.points.binary_search(&x).is_ok()
    }

    pub fn contains_all(&self, xs: &[HalfInteger]) -> bool {
        xs.iter().all(|&x| self.contains(x))
    }

    /// The reflected configuration `-X`.
    pub fn negated(&self) -> Self {
        let mut points: Vec<HalfInteger> = self.points.iter().map(|&x| -x).collect();
        points.reverse();
        Self { points }
    }
}

impl TryFrom<Vec<HalfInteger>> for PointConfiguration {
    type Error = Error;
    fn try_from(points: Vec<HalfInteger>) -> Result<Self> {
        Self::new(points)
    }
}

impl From<PointConfiguration> for Vec<HalfInteger> {
    fn from(c: PointConfiguration) -> Vec<HalfInteger> {
        c.points
    }
}

/// `X(λ) = {p_i + 1/2} ∪ {-q_i - 1/2}`.
pub fn point_config(lambda: &YoungDiagram) -> PointConfiguration {
    let fc = frobenius(lambda);
    let mut points: Vec<HalfInteger> = fc.q.iter().map(|&q| -HalfInteger::plus_half(q as i64)).collect();
    points.extend(fc.p.iter().map(|&p| HalfInteger::plus_half(p as i64)));
    points.sort();
    PointConfiguration { points }
}

/// Inverse of [`point_config`] on configurations with as many positive as negative points.
pub fn diagram_from_config(x: &PointConfiguration) -> Result<YoungDiagram> {
    let mut p: Vec<u32> = x.points.iter().filter(|h| h.is_positive()).map(|h| h.depth()).collect();
    let mut q: Vec<u32> = x.points.iter().filter(|h| !h.is_positive()).map(|h| h.depth()).collect();
    if p.len() != q.len() {
        return Err(Error::Invalid("configuration is not balanced".into()));
    }
    p.sort_unstable_by(|a, b| b.cmp(a));
    q.sort_unstable_by(|a, b| b.cmp(a));
    FrobeniusCoords { p, q }.to_diagram()
}

/// `dim λ = n! / Π hook(□)`, exactly.
pub fn dimension(lambda: &YoungDiagram) -> BigUint {
    let conj = lambda.conjugate();
    let mut hooks = BigUint::one();
    for (i, &row) in lambda.parts().iter().enumerate() {
        for j in 0..row as usize {
            let arm = row as usize - j - 1;
            let leg = conj.parts()[j] as usize - i - 1;
            hooks *= BigUint::from(arm + leg + 1);
        }
    }
    factorial(lambda.n()) / hooks
}

pub fn factorial(n: usize) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, k| acc * BigUint::from(k))
}

/// All partitions of `n` in reverse lexicographic order, starting from `(n)`.
pub fn enumerate_partitions(n: usize) -> Vec<YoungDiagram> {
    fn rec(rest: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<YoungDiagram>) {
        if rest == 0 {
            out.push(YoungDiagram { parts: cur.clone() });
            return;
        }
        for first in (1..=rest.min(max)).rev() {
            cur.push(first);
            rec(rest - first, first, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n as u32, n as u32, &mut Vec::new(), &mut out);
    out
}

/// Shape of the Robinson–Schensted insertion tableau of a permutation of `1..=n`.
pub fn rsk_shape(perm: &[usize]) -> Result<YoungDiagram> {
    let n = perm.len();
    let mut seen = vec![false; n];
    for &v in perm {
        if v == 0 || v > n || std::mem::replace(&mut seen[v - 1], true) {
            return Err(Error::Invalid(format!("not a permutation of 1..={n}")));
        }
    }
    let mut rows: Vec<Vec<usize>> = Vec::new();
    for &v in perm {
        let mut x = v;
        let mut r = 0;
        loop {
            if r == rows.len() {
                rows.push(vec![x]);
                break;
            }
            let row = &mut rows[r];
            let pos = row.partition_point(|&e| e.cmp(&x) == Ordering::Less);
            if pos == row.len() {
                row.push(x);
                break;
            }
            x = std::mem::replace(&mut row[pos], x);
            r += 1;
        }
    }
    YoungDiagram::new(rows.iter().map(|r| r.len() as u32).collect())
}
