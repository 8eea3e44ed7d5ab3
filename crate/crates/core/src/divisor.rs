//! Invariant divisor classes and intersection numbers.
//!
//! A class is stored as integer coefficients against the invariant curves
//! `D_0, ..., D_{e-1}` in ray order. The degree vector `t_i = L . D_i` is
//! computed from the neighbour recursion `t_i = b_{i-1} + b_{i+1} + d_i b_i`
//! and satisfies the closure constraint `sum_i t_i v_i = 0`. Linear
//! equivalence is decided through a normal form that pins the coefficients
//! of the first two rays to zero, which is always possible because the first
//! two rays form a lattice basis.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::fan::{Fan, LatticeVector};

/// Errors for divisor-class arithmetic.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DivisorError {
    /// The two classes live on different fans.
    #[error("divisor classes live on different fans")]
    FanMismatch,
    /// Coefficient or degree list has the wrong length.
    #[error("expected {expected} entries, found {found}")]
    LengthMismatch {
        /// Ray count of the fan.
        expected: usize,
        /// Length supplied.
        found: usize,
    },
    /// A degree vector violating the closure constraint matches no class.
    #[error("degrees do not satisfy the closure constraint sum(t_i * v_i) = 0")]
    InconsistentDegrees,
}

/// An invariant divisor class, written `sum_i b_i D_i`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DivisorClass {
    fan: Fan,
    coefficients: Vec<BigInt>,
}

impl DivisorClass {
    /// Wraps coefficients after checking the length against the fan.
    pub fn new(fan: Fan, coefficients: Vec<BigInt>) -> Result<Self, DivisorError> {
        if coefficients.len() != fan.euler() {
            return Err(DivisorError::LengthMismatch {
                expected: fan.euler(),
                found: coefficients.len(),
            });
        }
        Ok(Self { fan, coefficients })
    }

    /// Convenience constructor from machine integers.
    pub fn from_i64(fan: &Fan, coefficients: &[i64]) -> Result<Self, DivisorError> {
        Self::new(fan.clone(), coefficients.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// The class with every coefficient equal to `value`.
    pub fn constant(fan: &Fan, value: impl Into<BigInt>) -> Self {
        let v = value.into();
        Self { fan: fan.clone(), coefficients: vec![v; fan.euler()] }
    }

    /// The canonical class `K = -sum_i D_i`.
    pub fn canonical(fan: &Fan) -> Self {
        Self::constant(fan, -1)
    }

    /// The anticanonical class `-K = sum_i D_i`.
    pub fn anticanonical(fan: &Fan) -> Self {
        Self::constant(fan, 1)
    }

    /// The class of the single invariant curve `D_index`.
    pub fn ray_divisor(fan: &Fan, index: usize) -> Self {
        assert!(index < fan.euler(), "ray index out of range");
        let mut coefficients = vec![BigInt::zero(); fan.euler()];
        coefficients[index] = BigInt::one();
        Self { fan: fan.clone(), coefficients }
    }

    /// The underlying fan.
    pub fn fan(&self) -> &Fan {
        &self.fan
    }

    /// Coefficients against the invariant curves, in ray order.
    pub fn coefficients(&self) -> &[BigInt] {
        &self.coefficients
    }

    fn expect_same_fan(&self, other: &Self) -> Result<(), DivisorError> {
        if self.fan == other.fan {
            Ok(())
        } else {
            Err(DivisorError::FanMismatch)
        }
    }

    /// Componentwise sum. Panics when the fans differ; use only on classes
    /// of one surface.
    pub fn plus(&self, other: &Self) -> Self {
        assert_eq!(self.fan, other.fan, "sum of classes on different fans");
        let coefficients =
            self.coefficients.iter().zip(&other.coefficients).map(|(a, b)| a + b).collect();
        Self { fan: self.fan.clone(), coefficients }
    }

    /// Componentwise difference; same contract as [`DivisorClass::plus`].
    pub fn minus(&self, other: &Self) -> Self {
        assert_eq!(self.fan, other.fan, "difference of classes on different fans");
        let coefficients =
            self.coefficients.iter().zip(&other.coefficients).map(|(a, b)| a - b).collect();
        Self { fan: self.fan.clone(), coefficients }
    }

    /// Scalar multiple.
    pub fn scaled(&self, k: impl Into<BigInt>) -> Self {
        let k = k.into();
        let coefficients = self.coefficients.iter().map(|b| &k * b).collect();
        Self { fan: self.fan.clone(), coefficients }
    }

    /// The degree vector `t_i = L . D_i`.
    pub fn degree_vector(&self) -> DegreeVector {
        let e = self.fan.euler();
        let d = self.fan.self_intersections();
        let b = &self.coefficients;
        let mut values = Vec::with_capacity(e);
        for i in 0..e {
            let prev = &b[self.fan.cyclic(i, -1)];
            let next = &b[self.fan.cyclic(i, 1)];
            values.push(prev + next + &d.0[i] * &b[i]);
        }
        debug_assert!(closure_holds(&self.fan, &values));
        DegreeVector { fan: self.fan.clone(), values }
    }

    /// Intersection number `L . M`, bilinear and symmetric.
    pub fn intersect(&self, other: &Self) -> Result<BigInt, DivisorError> {
        self.expect_same_fan(other)?;
        let t = other.degree_vector();
        Ok(self.coefficients.iter().zip(t.values()).map(|(b, t)| b * t).sum())
    }

    /// Self-intersection `L . L`.
    pub fn self_intersection(&self) -> BigInt {
        self.intersect(self).expect("same fan")
    }

    /// True when every invariant curve meets the class non-negatively.
    pub fn is_nef(&self) -> bool {
        self.degree_vector().values().iter().all(|t| !t.is_negative())
    }

    /// True when every invariant curve meets the class positively.
    pub fn is_ample(&self) -> bool {
        self.degree_vector().values().iter().all(|t| t.is_positive())
    }

    /// Sectional genus `g(L) = 1 + (L^2 + K.L) / 2`.
    pub fn sectional_genus(&self) -> BigInt {
        let k = DivisorClass::canonical(&self.fan);
        let s = self.self_intersection() + self.intersect(&k).expect("same fan");
        assert!(!s.bit(0), "L^2 + K.L is always even");
        BigInt::one() + (s >> 1)
    }

    /// The linearly equivalent representative whose first two coefficients
    /// vanish. Idempotent; two classes are linearly equivalent exactly when
    /// their normal forms agree.
    pub fn normalize(&self) -> DivisorClass {
        let rays = self.fan.rays();
        let (v0, v1) = (&rays[0], &rays[1]);
        let (b0, b1) = (&self.coefficients[0], &self.coefficients[1]);
        // Solve a*v0 + c*v1 applied coordinatewise so that the character
        // divisor div(x^(a,c)) = sum <(a,c), v_i> D_i cancels b0 and b1;
        // det(v0, v1) = 1 makes the solution integral.
        let a = b0 * &v1.y - b1 * &v0.y;
        let c = &v0.x * b1 - &v1.x * b0;
        let coefficients = self
            .coefficients
            .iter()
            .zip(rays)
            .map(|(b, v)| b - &a * &v.x - &c * &v.y)
            .collect();
        Self { fan: self.fan.clone(), coefficients }
    }

    /// Whether the two classes differ by the divisor of a character.
    pub fn linearly_equivalent(&self, other: &Self) -> Result<bool, DivisorError> {
        self.expect_same_fan(other)?;
        Ok(self.normalize().coefficients == other.normalize().coefficients)
    }

    /// True for the trivial class.
    pub fn is_trivial(&self) -> bool {
        self.normalize().coefficients.iter().all(Zero::is_zero)
    }

    /// Recovers the class with the given degree vector, in normal form.
    ///
    /// Degrees are solvable exactly when they satisfy the closure constraint
    /// `sum_i t_i v_i = 0`; the recursion then determines the (unique)
    /// normalized solution.
    pub fn from_degrees(fan: &Fan, degrees: &[BigInt]) -> Result<Self, DivisorError> {
        let e = fan.euler();
        if degrees.len() != e {
            return Err(DivisorError::LengthMismatch { expected: e, found: degrees.len() });
        }
        if !closure_holds(fan, degrees) {
            return Err(DivisorError::InconsistentDegrees);
        }
        let d = fan.self_intersections();
        let mut b = vec![BigInt::zero(); e];
        for i in 1..=e - 2 {
            let next = &degrees[i] - &b[i - 1] - &d.0[i] * &b[i];
            b[i + 1] = next;
        }
        let class = Self { fan: fan.clone(), coefficients: b };
        if class.degree_vector().values() != degrees {
            return Err(DivisorError::InconsistentDegrees);
        }
        Ok(class)
    }
}

impl serde::Serialize for DivisorClass {
    /// A class serializes as its coefficient array, each entry a decimal
    /// string, so reports never pass through floating point.
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        crate::serial::bigint_vec(&self.coefficients, serializer)
    }
}

impl fmt::Display for DivisorClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, b) in self.coefficients.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{b}")?;
        }
        write!(f, "]")
    }
}

fn closure_holds(fan: &Fan, values: &[BigInt]) -> bool {
    let mut sum = LatticeVector::new(0, 0);
    for (t, v) in values.iter().zip(fan.rays()) {
        sum = sum.add(&v.scaled(t));
    }
    sum == LatticeVector::new(0, 0)
}

/// A vector of intersection numbers against the invariant curves.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DegreeVector {
    fan: Fan,
    values: Vec<BigInt>,
}

impl DegreeVector {
    /// The underlying fan.
    pub fn fan(&self) -> &Fan {
        &self.fan
    }

    /// The intersection numbers in ray order.
    pub fn values(&self) -> &[BigInt] {
        &self.values
    }

    /// Sum of all degrees, i.e. `-K . L`.
    pub fn total(&self) -> BigInt {
        self.values.iter().sum()
    }

    /// Least entry.
    pub fn min(&self) -> &BigInt {
        self.values.iter().min().expect("fans have rays")
    }

    /// The normalized class with these degrees.
    pub fn class(&self) -> DivisorClass {
        DivisorClass::from_degrees(&self.fan, &self.values)
            .expect("constructed degree vectors satisfy closure")
    }
}

/// Enumerates all degree vectors with every entry in `[lo, hi]`.
///
/// The first `e - 2` entries range freely; the last two are forced by the
/// closure constraint because the final pair of rays is a lattice basis.
/// Output is lexicographically sorted and deterministic.
pub fn enumerate_degree_vectors(fan: &Fan, lo: i64, hi: i64) -> Vec<DegreeVector> {
    let e = fan.euler();
    if lo > hi {
        return Vec::new();
    }
    let rays = fan.rays();
    let (u, w) = (&rays[e - 2], &rays[e - 1]);
    let lo_big = BigInt::from(lo);
    let hi_big = BigInt::from(hi);
    let mut out = Vec::new();
    let mut prefix = vec![lo; e - 2];
    loop {
        // Solve t_u * u + t_w * w = -(prefix part); det(u, w) = 1.
        let mut rest = LatticeVector::new(0, 0);
        for (t, v) in prefix.iter().zip(rays) {
            rest = rest.add(&v.scaled(&BigInt::from(*t)));
        }
        let target = rest.scaled(&BigInt::from(-1));
        let t_u = target.cross(w);
        let t_w = u.cross(&target);
        if t_u >= lo_big && t_u <= hi_big && t_w >= lo_big && t_w <= hi_big {
            let mut values: Vec<BigInt> = prefix.iter().map(|&t| BigInt::from(t)).collect();
            values.push(t_u);
            values.push(t_w);
            debug_assert!(closure_holds(fan, &values));
            out.push(DegreeVector { fan: fan.clone(), values });
        }
        // Odometer step over the prefix, most significant digit first.
        let mut pos = prefix.len();
        loop {
            if pos == 0 {
                return out;
            }
            pos -= 1;
            if prefix[pos] < hi {
                prefix[pos] += 1;
                for later in prefix.iter_mut().skip(pos + 1) {
                    *later = lo;
                }
                break;
            }
        }
    }
}
