//! Instability of rank-two bundles: destabilizing subsheaf search with
//! exact positivity filters, the discriminant-versus-cycle inequality,
//! the two-parameter infeasibility oracle, and the small-second-Chern
//! restriction check.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::chern::{BoundReport, ChernData};
use crate::divisor::{enumerate_degree_vectors, DivisorClass};
use crate::fan::Fan;

/// Errors for instability analysis.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BogomolovError {
    /// Rank-two-only operation received another rank.
    #[error("operation requires rank 2, found rank {rank}")]
    RankNotTwo {
        /// Offending rank.
        rank: u32,
    },
    /// The data does not satisfy the instability inequality.
    #[error("c1^2 <= 4 c2: the bundle data is not unstable")]
    NotUnstable,
    /// The determinant of a rank-two ample bundle must meet every
    /// invariant curve at least twice.
    #[error("determinant degree {found} below 2 on ray {index}")]
    DeterminantTooSmall {
        /// Ray where the degree is too small.
        index: usize,
        /// The offending degree.
        found: BigInt,
    },
    /// The quotient square must be positive before comparing with its
    /// square root.
    #[error("quotient class has nonpositive self-intersection")]
    NonPositiveSquare,
    /// Degree enumeration found no ample class within the cap.
    #[error("no ample class with degrees within the cap")]
    NoAmpleFound,
}

/// Whether rank-two data lies strictly above the discriminant boundary.
pub fn is_unstable(data: &ChernData) -> Result<bool, BogomolovError> {
    if data.rank != 2 {
        return Err(BogomolovError::RankNotTwo { rank: data.rank });
    }
    Ok(data.c1_sq > BigInt::from(4) * &data.c2)
}

/// A destabilizing-subsheaf candidate that passed every exact filter.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DestabilizerCandidate {
    /// The sub-line-bundle class `A`, in normalized coordinates.
    pub sub: DivisorClass,
    /// The quotient determinant `Q = H - A`.
    pub quotient: DivisorClass,
    /// The twist `T = 2A - H` witnessing the slope inequality.
    pub twist: DivisorClass,
    /// Length of the residual cycle, `c2 - A.Q` (nonnegative).
    #[serde(serialize_with = "crate::serial::bigint")]
    pub cycle_degree: BigInt,
}

/// Outcome of a destabilizer search over a coefficient box.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DestabilizerSearch {
    /// Candidates in lexicographic order of the normalized coefficients.
    pub candidates: Vec<DestabilizerCandidate>,
    /// Half-width of the coefficient box that was scanned.
    pub box_radius: i64,
    /// Records that positivity of the twist was checked against the
    /// polarization (and the anticanonical class when nef), not against
    /// the full ample cone.
    pub positivity_note: String,
}

fn check_determinant(h: &DivisorClass) -> Result<(), BogomolovError> {
    let two = BigInt::from(2);
    for (index, degree) in h.degree_vector().values().iter().enumerate() {
        if *degree < two {
            return Err(BogomolovError::DeterminantTooSmall { index, found: degree.clone() });
        }
    }
    Ok(())
}

/// Iterates over all normalized classes whose free coefficients lie in
/// `[-box_radius, box_radius]`, lexicographically.
fn normalized_box(fan: &Fan, box_radius: i64) -> impl Iterator<Item = DivisorClass> + '_ {
    let free = fan.euler() - 2;
    let width = 2 * box_radius + 1;
    let total = (width as u128).pow(free as u32);
    (0..total).map(move |mut code| {
        let mut coefficients = vec![BigInt::zero(); 2];
        let mut digits = vec![0i64; free];
        for slot in (0..free).rev() {
            digits[slot] = (code % width as u128) as i64 - box_radius;
            code /= width as u128;
        }
        coefficients.extend(digits.into_iter().map(BigInt::from));
        DivisorClass::new(fan.clone(), coefficients).expect("length matches")
    })
}

/// Scans the normalized coefficient box for sub-line-bundle classes `A`
/// that destabilize a rank-two bundle with determinant `h` and second
/// Chern number `c2`: the twist `2A - h` must have positive square and
/// positive degree against the polarization (and against `-K` when `-K`
/// is nef), the quotient `h - A` must be ample, and the residual cycle
/// degree `c2 - A.(h-A)` must be nonnegative.
pub fn destabilizer_search(
    h: &DivisorClass,
    c2: &BigInt,
    box_radius: i64,
) -> Result<DestabilizerSearch, BogomolovError> {
    check_determinant(h)?;
    let data = ChernData::with_class(2, h.clone(), c2.clone());
    if !is_unstable(&data)? {
        return Err(BogomolovError::NotUnstable);
    }
    let fan = h.fan();
    let minus_k = DivisorClass::anticanonical(fan);
    let minus_k_nef = minus_k.is_nef();
    let mut candidates = Vec::new();
    for sub in normalized_box(fan, box_radius) {
        let twist = sub.scaled(2).minus(h);
        if !twist.self_intersection().is_positive() {
            continue;
        }
        if !twist.intersect(h).expect("same fan").is_positive() {
            continue;
        }
        if minus_k_nef && !twist.intersect(&minus_k).expect("same fan").is_positive() {
            continue;
        }
        let quotient = h.minus(&sub);
        if !quotient.is_ample() {
            continue;
        }
        let product = sub.intersect(&quotient).expect("same fan");
        if &product > c2 {
            continue;
        }
        candidates.push(DestabilizerCandidate {
            cycle_degree: c2 - &product,
            sub,
            quotient,
            twist,
        });
    }
    Ok(DestabilizerSearch {
        candidates,
        box_radius,
        positivity_note: "twist positivity checked against the polarization and, when nef, \
                          the anticanonical class; the full ample cone is not quantified"
            .into(),
    })
}

/// The square-root inequality tying a destabilizer to the residual
/// cycle: with `Q = h - sub` and `s = sub.Q - Q^2`, requires `Q^2 > 0`
/// and returns whether `s >= sqrt(Q^2)` (evaluated exactly as `s >= 0`
/// and `s^2 >= Q^2`).
pub fn eq1_check(sub: &DivisorClass, h: &DivisorClass) -> Result<bool, BogomolovError> {
    let quotient = h.minus(sub);
    let q_sq = quotient.self_intersection();
    if !q_sq.is_positive() {
        return Err(BogomolovError::NonPositiveSquare);
    }
    let s = sub.intersect(&quotient).expect("same fan") - &q_sq;
    Ok(!s.is_negative() && &s * &s >= q_sq)
}

/// The index-one Hodge inequality `(P.T)^2 >= P^2 T^2` for an ample `P`.
pub fn hodge_inequality_holds(p: &DivisorClass, t: &DivisorClass) -> bool {
    let pt = p.intersect(t).expect("same fan");
    &pt * &pt >= p.self_intersection() * t.self_intersection()
}

/// One integer solution of the two-parameter constraint system.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Case2Solution {
    /// Hirzebruch parameter.
    pub eps: i64,
    /// Determinant fiber coordinate.
    pub x: i64,
    /// Determinant section coordinate.
    pub y: i64,
    /// Subsheaf fiber coordinate.
    pub alpha: i64,
    /// Subsheaf section coordinate.
    pub beta: i64,
}

/// Enumerates integer solutions of the constraint system
///
/// 1. `eps >= 1`, `x >= 3`, `y >= x*eps + 2`;
/// 2. `x - alpha > 0`, `y - beta > 0`, `y >= beta + (x - alpha)*eps + 1`;
/// 3. (midpoint, only when `enforce_midpoint`) `2*alpha > x` and
///    `2*beta > y`;
/// 4. `(2*alpha - x) * (4*beta - 2*y - (2*alpha - x)*eps) > 0`;
/// 5. `-alpha*(x - alpha)*eps + beta*(x - alpha) + alpha*(y - beta) <= 4`.
///
/// With the midpoint pair enforced the system is expected to be empty;
/// dropping the pair admits solutions, which shows the remaining
/// constraints are not vacuous.
pub fn case2_search(
    x_max: i64,
    y_max: i64,
    eps_max: i64,
    enforce_midpoint: bool,
) -> Vec<Case2Solution> {
    let mut out = Vec::new();
    for eps in 1..=eps_max {
        for x in 3..=x_max {
            for y in x * eps + 2..=y_max {
                for alpha in 1..x {
                    for beta in 1..y {
                        if y < beta + (x - alpha) * eps + 1 {
                            continue;
                        }
                        if enforce_midpoint && !(2 * alpha > x && 2 * beta > y) {
                            continue;
                        }
                        let u = 2 * alpha - x;
                        if u * (4 * beta - 2 * y - u * eps) <= 0 {
                            continue;
                        }
                        if -alpha * (x - alpha) * eps + beta * (x - alpha) + alpha * (y - beta)
                            > 4
                        {
                            continue;
                        }
                        out.push(Case2Solution { eps, x, y, alpha, beta });
                    }
                }
            }
        }
    }
    out
}

/// Runs the full constraint system over the given caps and reports
/// whether it is empty (the expected outcome).
pub fn case2_infeasibility_oracle(x_max: i64, y_max: i64, eps_max: i64) -> BoundReport {
    let solutions = case2_search(x_max, y_max, eps_max, true);
    let count = solutions.len();
    BoundReport {
        instance: format!("x <= {x_max}, y <= {y_max}, eps <= {eps_max}"),
        bound: "two-parameter-infeasibility".into(),
        lhs: BigRational::from_integer(BigInt::from(count)),
        rhs: BigRational::from_integer(BigInt::zero()),
        verdict: count == 0,
        equality: count == 0,
    }
}

/// Minimum self-intersection over all ample classes whose degrees are
/// capped by `t_max`. The value is exact for the truncated search space:
/// it is an upper bound for the untruncated minimum and agrees with it
/// whenever the true minimizer has degrees within the cap.
pub fn min_ample_square(fan: &Fan, t_max: i64) -> Result<BigInt, BogomolovError> {
    enumerate_degree_vectors(fan, 1, t_max)
        .iter()
        .map(|t| t.class().self_intersection())
        .min()
        .ok_or(BogomolovError::NoAmpleFound)
}

/// Outcome of the small-second-Chern restriction check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RestrictionReport {
    /// Euler number of the surface.
    pub euler: usize,
    /// Whether the data is unstable.
    pub unstable: bool,
    /// Whether `c2 <= e + sqrt(e)` holds exactly.
    pub c2_small: bool,
    /// Whether the surface is the plane or one of the first three
    /// Hirzebruch surfaces (where unstable small-`c2` bundles do live).
    pub standard_surface: bool,
    /// True when all three gates above make the restriction bite.
    pub applicable: bool,
    /// Box radius used for the search (zero when inapplicable).
    pub box_radius: i64,
    /// Candidates surviving both the search filters and the square-root
    /// inequality; expected empty whenever applicable.
    pub survivors: Vec<DestabilizerCandidate>,
    /// Survivors whose quotient is the anticanonical class of the
    /// six-ray Del Pezzo surface: the one family the classification
    /// argument leaves open, flagged rather than suppressed.
    pub flagged_del_pezzo: Vec<DestabilizerCandidate>,
    /// Human-readable summary.
    pub note: String,
}

/// Exact check of `c2 <= e + sqrt(e)`.
fn c2_within_root_slack(c2: &BigInt, e: usize) -> bool {
    let e_int = BigInt::from(e);
    if *c2 <= e_int {
        return true;
    }
    let excess = c2 - &e_int;
    &excess * &excess <= e_int
}

fn standard_profiles() -> Vec<Vec<BigInt>> {
    let mut profiles = vec![Fan::projective_plane().self_intersections().canonical().values().to_vec()];
    for a in 0..=2 {
        profiles.push(Fan::hirzebruch(a).self_intersections().canonical().values().to_vec());
    }
    profiles
}

/// Tests the restriction that an unstable rank-two bundle with
/// `c2 <= e + sqrt(e)` forces the surface to be the plane or a
/// Hirzebruch surface of parameter at most two: on any other surface,
/// every destabilizer candidate inside the box must fail the
/// square-root inequality. Survivors, if any, are reported; quotients
/// matching the six-ray anticanonical class are flagged separately.
pub fn bog_restriction_check(
    h: &DivisorClass,
    c2: &BigInt,
    box_radius: i64,
) -> Result<RestrictionReport, BogomolovError> {
    check_determinant(h)?;
    let fan = h.fan();
    let euler = fan.euler();
    let data = ChernData::with_class(2, h.clone(), c2.clone());
    let unstable = is_unstable(&data)?;
    let c2_small = c2_within_root_slack(c2, euler);
    let canonical_profile = fan.self_intersections().canonical().values().to_vec();
    let standard_surface = standard_profiles().contains(&canonical_profile);
    let applicable = unstable && c2_small && !standard_surface;
    if !applicable {
        return Ok(RestrictionReport {
            euler,
            unstable,
            c2_small,
            standard_surface,
            applicable,
            box_radius: 0,
            survivors: Vec::new(),
            flagged_del_pezzo: Vec::new(),
            note: "restriction not applicable: needs instability, small second Chern \
                   number, and a non-standard surface"
                .into(),
        });
    }
    let search = destabilizer_search(h, c2, box_radius)?;
    let hexagon_profile = Fan::hexagon().self_intersections().canonical().values().to_vec();
    let mut survivors = Vec::new();
    let mut flagged = Vec::new();
    for candidate in search.candidates {
        if !eq1_check(&candidate.sub, h).unwrap_or(false) {
            continue;
        }
        let anti_canonical_quotient = euler == 6
            && canonical_profile == hexagon_profile
            && candidate
                .quotient
                .linearly_equivalent(&DivisorClass::anticanonical(fan))
                .expect("same fan");
        if anti_canonical_quotient {
            flagged.push(candidate);
        } else {
            survivors.push(candidate);
        }
    }
    let note = if survivors.is_empty() && flagged.is_empty() {
        "no candidate satisfies the square-root inequality inside the box".into()
    } else if survivors.is_empty() {
        "only anticanonical-quotient candidates on the six-ray surface survive; \
         that family is flagged, not suppressed"
            .into()
    } else {
        "candidates survive the square-root inequality: restriction violated".into()
    };
    Ok(RestrictionReport {
        euler,
        unstable,
        c2_small,
        standard_surface,
        applicable,
        box_radius,
        survivors,
        flagged_del_pezzo: flagged,
        note,
    })
}
