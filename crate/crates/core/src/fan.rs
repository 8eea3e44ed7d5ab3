//! Fans of smooth complete toric surfaces.
//!
//! A surface is encoded by the ordered list of primitive ray generators of
//! its fan, stored counterclockwise. Validity means: at least three rays,
//! every ray primitive, every adjacent pair a positively oriented lattice
//! basis (`det(v_i, v_{i+1}) = +1`), and total winding exactly one. The ray
//! count equals the topological Euler characteristic, so it is called `e`
//! throughout.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

/// A vector in the two-dimensional ray lattice.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LatticeVector {
    /// First coordinate.
    pub x: BigInt,
    /// Second coordinate.
    pub y: BigInt,
}

impl LatticeVector {
    /// Builds a vector from anything convertible to big integers.
    pub fn new(x: impl Into<BigInt>, y: impl Into<BigInt>) -> Self {
        Self { x: x.into(), y: y.into() }
    }

    /// The determinant `self.x * other.y - self.y * other.x`.
    pub fn cross(&self, other: &Self) -> BigInt {
        &self.x * &other.y - &self.y * &other.x
    }

    /// Componentwise sum.
    pub fn add(&self, other: &Self) -> Self {
        Self { x: &self.x + &other.x, y: &self.y + &other.y }
    }

    /// Scalar multiple.
    pub fn scaled(&self, k: &BigInt) -> Self {
        Self { x: k * &self.x, y: k * &self.y }
    }

    /// True for nonzero vectors with coprime coordinates.
    pub fn is_primitive(&self) -> bool {
        self.x.gcd(&self.y).is_one()
    }

    fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }

    /// Angular half-plane: 0 for angles in `[0, pi)`, 1 for `[pi, 2*pi)`.
    fn half(&self) -> u8 {
        if self.y.is_positive() || (self.y.is_zero() && self.x.is_positive()) {
            0
        } else {
            1
        }
    }

    /// Strict comparison of ray angles measured in `[0, 2*pi)`.
    fn angle_less(&self, other: &Self) -> bool {
        match self.half().cmp(&other.half()) {
            std::cmp::Ordering::Less => true,
            std::cmp::Ordering::Greater => false,
            std::cmp::Ordering::Equal => self.cross(other).is_positive(),
        }
    }
}

impl fmt::Debug for LatticeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

impl fmt::Display for LatticeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// Why a ray list fails to be the fan of a smooth complete toric surface,
/// or why a fan operation is not applicable.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FanError {
    /// Fewer than three rays can never wind around the origin.
    #[error("a complete fan needs at least 3 rays, found {found}")]
    TooFewRays {
        /// Number of rays supplied.
        found: usize,
    },
    /// A ray generator must be primitive (coprime coordinates, nonzero).
    #[error("ray {index} is not primitive")]
    NonPrimitiveRay {
        /// Index of the offending ray.
        index: usize,
    },
    /// Adjacent rays must span the lattice with positive orientation.
    #[error("rays {index} and its successor do not form a positively oriented basis")]
    NotUnimodular {
        /// Index of the first ray of the offending cone.
        index: usize,
    },
    /// The rays must wind around the origin exactly once counterclockwise.
    #[error("rays wind {winding} times around the origin, expected 1")]
    NotComplete {
        /// Observed winding number.
        winding: usize,
    },
    /// A self-intersection profile admits no closed smooth fan.
    #[error("profile is not realizable: {detail}")]
    NotRealizable {
        /// Which closure or validity check failed.
        detail: String,
    },
    /// Blowdown requires a ray whose divisor is a (-1)-curve.
    #[error("ray {index} is not contractible: neighbours do not sum to it")]
    NotContractible {
        /// Index of the ray that was asked to be removed.
        index: usize,
    },
}

/// The fan of a smooth complete toric surface.
///
/// Immutable and cheap to clone. Construction validates every invariant;
/// ray order is taken exactly as given and never silently reordered.
#[derive(Clone)]
pub struct Fan {
    rays: Arc<Vec<LatticeVector>>,
}

impl PartialEq for Fan {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.rays, &other.rays) || self.rays == other.rays
    }
}

impl Eq for Fan {}

impl fmt::Debug for Fan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Fan{:?}", self.rays.as_slice())
    }
}

impl Fan {
    /// Validates a counterclockwise ray list and wraps it into a fan.
    pub fn new(rays: Vec<LatticeVector>) -> Result<Self, FanError> {
        let e = rays.len();
        if e < 3 {
            return Err(FanError::TooFewRays { found: e });
        }
        for (i, v) in rays.iter().enumerate() {
            if v.is_zero() || !v.is_primitive() {
                return Err(FanError::NonPrimitiveRay { index: i });
            }
        }
        for i in 0..e {
            let j = (i + 1) % e;
            if !rays[i].cross(&rays[j]).is_one() {
                return Err(FanError::NotUnimodular { index: i });
            }
        }
        // With all consecutive turns strictly counterclockwise and below pi,
        // the winding number equals the number of cyclic angle descents.
        let winding = (0..e)
            .filter(|&i| !rays[i].angle_less(&rays[(i + 1) % e]))
            .count();
        if winding != 1 {
            return Err(FanError::NotComplete { winding });
        }
        Ok(Self { rays: Arc::new(rays) })
    }

    /// Number of rays; equals the Euler characteristic of the surface.
    pub fn euler(&self) -> usize {
        self.rays.len()
    }

    /// The ray generators in counterclockwise order.
    pub fn rays(&self) -> &[LatticeVector] {
        &self.rays
    }

    /// Ray index shifted cyclically by `offset` (may be negative).
    pub fn cyclic(&self, index: usize, offset: isize) -> usize {
        let e = self.euler() as isize;
        let i = (index as isize + offset).rem_euclid(e);
        i as usize
    }

    /// Self-intersection numbers of the invariant divisors, in ray order.
    ///
    /// `d_i` is defined by `v_{i-1} + v_{i+1} = -d_i * v_i`; smoothness
    /// guarantees the neighbour sum is an exact multiple of `v_i`.
    pub fn self_intersections(&self) -> SelfIntersectionProfile {
        let e = self.euler();
        let mut d = Vec::with_capacity(e);
        for i in 0..e {
            let prev = &self.rays[self.cyclic(i, -1)];
            let next = &self.rays[self.cyclic(i, 1)];
            let sum = prev.add(next);
            let v = &self.rays[i];
            let c = if !v.x.is_zero() { &sum.x / &v.x } else { &sum.y / &v.y };
            debug_assert_eq!(v.scaled(&c), sum, "neighbour sum must be parallel to the ray");
            d.push(-c);
        }
        SelfIntersectionProfile(d)
    }

    /// Canonical form of the profile: invariant of the surface up to lattice
    /// isomorphism and relabelling of the ray cycle.
    pub fn canonical_profile(&self) -> SelfIntersectionProfile {
        self.self_intersections().canonical()
    }

    /// Star subdivision of the cone spanned by rays `corner` and `corner+1`:
    /// the equivariant blowup of the corresponding fixed point.
    ///
    /// Panics if `corner >= e`; the result is always a valid fan.
    pub fn blowup(&self, corner: usize) -> Fan {
        let e = self.euler();
        assert!(corner < e, "corner index {corner} out of range for {e} rays");
        let inserted = self.rays[corner].add(&self.rays[(corner + 1) % e]);
        let mut rays = Vec::with_capacity(e + 1);
        rays.extend_from_slice(&self.rays[..=corner]);
        rays.push(inserted);
        rays.extend_from_slice(&self.rays[corner + 1..]);
        Fan::new(rays).expect("blowup of a valid fan stays valid")
    }

    /// Removes the ray of a (-1)-curve, the inverse of [`Fan::blowup`].
    pub fn blowdown(&self, ray: usize) -> Result<(Fan, BlowdownRecord), FanError> {
        let e = self.euler();
        assert!(ray < e, "ray index {ray} out of range for {e} rays");
        if e <= 3 {
            return Err(FanError::TooFewRays { found: e - 1 });
        }
        let prev = &self.rays[self.cyclic(ray, -1)];
        let next = &self.rays[self.cyclic(ray, 1)];
        if prev.add(next) != self.rays[ray] {
            return Err(FanError::NotContractible { index: ray });
        }
        let mut rays = Vec::with_capacity(e - 1);
        rays.extend_from_slice(&self.rays[..ray]);
        rays.extend_from_slice(&self.rays[ray + 1..]);
        let child = Fan::new(rays)?;
        let record = BlowdownRecord { parent: self.clone(), child: child.clone(), removed_ray: ray };
        Ok((record.child.clone(), record))
    }

    /// The projective plane: rays `(1,0), (0,1), (-1,-1)`.
    pub fn projective_plane() -> Fan {
        Fan::new(vec![
            LatticeVector::new(1, 0),
            LatticeVector::new(0, 1),
            LatticeVector::new(-1, -1),
        ])
        .expect("standard plane fan is valid")
    }

    /// The Hirzebruch surface `F_a`: rays `(1,0), (0,1), (-1,a), (0,-1)`.
    pub fn hirzebruch(a: u32) -> Fan {
        Fan::new(vec![
            LatticeVector::new(1, 0),
            LatticeVector::new(0, 1),
            LatticeVector::new(-1, i64::from(a)),
            LatticeVector::new(0, -1),
        ])
        .expect("Hirzebruch fan is valid")
    }

    /// The hexagonal fan: the plane blown up in its three fixed points,
    /// the unique surface with six rays all of self-intersection -1.
    pub fn hexagon() -> Fan {
        Fan::new(vec![
            LatticeVector::new(1, 0),
            LatticeVector::new(1, 1),
            LatticeVector::new(0, 1),
            LatticeVector::new(-1, 0),
            LatticeVector::new(-1, -1),
            LatticeVector::new(0, -1),
        ])
        .expect("hexagonal fan is valid")
    }

    /// Sum of all ray generators. Zero exactly when the constant degree
    /// vector `(1, ..., 1)` is the degree vector of some divisor class.
    pub fn ray_sum(&self) -> LatticeVector {
        let mut s = LatticeVector::new(0, 0);
        for v in self.rays.iter() {
            s = s.add(v);
        }
        s
    }
}

/// Reconstructs a fan from a self-intersection profile, if possible.
///
/// Starting from the lattice basis `v_0 = (1,0), v_1 = (0,1)`, rays are
/// propagated by the transfer recursion `v_{i+1} = -d_i * v_i - v_{i-1}`.
/// The two remaining neighbour relations and the winding condition are then
/// checked; any failure reports the profile as not realizable.
pub fn realize_profile(profile: &[BigInt]) -> Result<Fan, FanError> {
    let n = profile.len();
    if n < 3 {
        return Err(FanError::TooFewRays { found: n });
    }
    let mut rays = Vec::with_capacity(n);
    rays.push(LatticeVector::new(1, 0));
    rays.push(LatticeVector::new(0, 1));
    for i in 1..=n - 2 {
        let next = rays[i].scaled(&-&profile[i]).add(&rays[i - 1].scaled(&BigInt::from(-1)));
        rays.push(next);
    }
    for (at, lhs, rhs) in [
        (n - 1, rays[n - 2].add(&rays[0]), rays[n - 1].scaled(&-&profile[n - 1])),
        (0, rays[n - 1].add(&rays[1]), rays[0].scaled(&-&profile[0])),
    ] {
        if lhs != rhs {
            return Err(FanError::NotRealizable {
                detail: format!("closure relation fails at ray {at}"),
            });
        }
    }
    Fan::new(rays).map_err(|err| FanError::NotRealizable { detail: err.to_string() })
}

/// Convenience wrapper over [`realize_profile`] for plain integer slices.
pub fn realize_profile_i64(profile: &[i64]) -> Result<Fan, FanError> {
    let d: Vec<BigInt> = profile.iter().map(|&x| BigInt::from(x)).collect();
    realize_profile(&d)
}

/// The ordered list of self-intersection numbers of the invariant curves.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct SelfIntersectionProfile(pub Vec<BigInt>);

impl SelfIntersectionProfile {
    /// The entries in ray order.
    pub fn values(&self) -> &[BigInt] {
        &self.0
    }

    /// Number of rays.
    pub fn euler(&self) -> usize {
        self.0.len()
    }

    /// Sum of all entries; `12 - 3e` on every smooth complete surface.
    pub fn sum(&self) -> BigInt {
        self.0.iter().sum()
    }

    /// Lexicographically least representative over all rotations of the
    /// profile and of its reversal. Two fans describe isomorphic surfaces
    /// exactly when their canonical profiles agree.
    pub fn canonical(&self) -> SelfIntersectionProfile {
        let e = self.0.len();
        let mut best: Option<Vec<BigInt>> = None;
        let reversed: Vec<BigInt> = self.0.iter().rev().cloned().collect();
        for seq in [&self.0, &reversed] {
            for shift in 0..e {
                let mut rot = Vec::with_capacity(e);
                rot.extend_from_slice(&seq[shift..]);
                rot.extend_from_slice(&seq[..shift]);
                if best.as_ref().map_or(true, |b| rot < *b) {
                    best = Some(rot);
                }
            }
        }
        SelfIntersectionProfile(best.expect("profile is nonempty"))
    }
}

impl fmt::Display for SelfIntersectionProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, d) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{d}")?;
        }
        write!(f, ")")
    }
}

/// The data of one equivariant contraction of a (-1)-curve.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlowdownRecord {
    /// The fan before the contraction.
    pub parent: Fan,
    /// The fan after the contraction.
    pub child: Fan,
    /// Index (in the parent) of the removed ray.
    pub removed_ray: usize,
}
