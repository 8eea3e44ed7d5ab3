//! Exhaustive desk-scale verification: enumerate smooth complete toric
//! surfaces by repeated corner blowups, sweep polarizations over degree
//! boxes, and stress-test every invariant of the reduction and bound
//! machinery, recording counterexamples instead of panicking.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use num_bigint::BigInt;
use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;

use crate::adjunction::{
    classify_adjoint, iterated_sequence, kl_check, telescoped_genus_check, ReductionOutcome,
};
use crate::divisor::{enumerate_degree_vectors, DegreeVector, DivisorClass};
use crate::fan::{Fan, SelfIntersectionProfile};

/// How a surface in the inventory was constructed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Provenance {
    /// Name of the starting surface (`P2` or `F0`..`Fa`).
    pub seed: String,
    /// Corner indices blown up, in order, each relative to the fan at
    /// that step.
    pub corners: Vec<usize>,
}

/// One surface of the inventory: a representative fan, its canonical
/// profile (the isomorphism invariant used for deduplication), and its
/// construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SurfaceEntry {
    /// Representative fan, as constructed.
    pub fan: Fan,
    /// Canonical self-intersection profile.
    pub profile: SelfIntersectionProfile,
    /// Construction recipe.
    pub provenance: Provenance,
}

/// All surfaces reachable from the seeds by corner blowups, one per
/// isomorphism class, sorted by ray count then canonical profile.
#[derive(Debug, Clone)]
pub struct SurfaceInventory {
    /// Deduplicated entries.
    pub entries: Vec<SurfaceEntry>,
    /// Ray-count cap used for the closure.
    pub e_max: usize,
    /// Largest Hirzebruch parameter among the seeds.
    pub a_max: u32,
}

/// Enumerates the blowup closure of the plane and the Hirzebruch
/// surfaces of parameter at most `a_max`, up to `e_max` rays, one entry
/// per canonical profile.
pub fn enumerate_surfaces(e_max: usize, a_max: u32) -> SurfaceInventory {
    assert!(e_max >= 3, "need room for at least the plane");
    let mut entries: Vec<SurfaceEntry> = Vec::new();
    let mut seen: BTreeSet<Vec<BigInt>> = BTreeSet::new();
    let mut queue: VecDeque<usize> = VecDeque::new();
    let push = |fan: Fan, provenance: Provenance, entries: &mut Vec<SurfaceEntry>,
                    seen: &mut BTreeSet<Vec<BigInt>>,
                    queue: &mut VecDeque<usize>| {
        let profile = fan.self_intersections().canonical();
        if seen.insert(profile.values().to_vec()) {
            entries.push(SurfaceEntry { fan, profile, provenance });
            queue.push_back(entries.len() - 1);
        }
    };
    push(
        Fan::projective_plane(),
        Provenance { seed: "P2".into(), corners: Vec::new() },
        &mut entries,
        &mut seen,
        &mut queue,
    );
    if e_max >= 4 {
        for a in 0..=a_max {
            push(
                Fan::hirzebruch(a),
                Provenance { seed: format!("F{a}"), corners: Vec::new() },
                &mut entries,
                &mut seen,
                &mut queue,
            );
        }
    }
    while let Some(index) = queue.pop_front() {
        let (fan, provenance) = (entries[index].fan.clone(), entries[index].provenance.clone());
        if fan.euler() >= e_max {
            continue;
        }
        for corner in 0..fan.euler() {
            let child = fan.blowup(corner);
            let mut corners = provenance.corners.clone();
            corners.push(corner);
            push(
                child,
                Provenance { seed: provenance.seed.clone(), corners },
                &mut entries,
                &mut seen,
                &mut queue,
            );
        }
    }
    entries.sort_by(|a, b| {
        (a.fan.euler(), a.profile.values()).cmp(&(b.fan.euler(), b.profile.values()))
    });
    SurfaceInventory { entries, e_max, a_max }
}

/// All ample degree vectors on a fan with degrees in `[1, t_max]`.
pub fn enumerate_ample_degrees(fan: &Fan, t_max: i64) -> Vec<DegreeVector> {
    enumerate_degree_vectors(fan, 1, t_max)
}

/// Aggregated outcome of one named check across the sweep.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct CheckStats {
    /// Instances that passed.
    pub pass: u64,
    /// Instances that failed (each also appears in the counterexample
    /// list).
    pub fail: u64,
    /// Noteworthy boundary instances (equalities, matched exceptions,
    /// out-of-scope floors), deduplicated and sorted.
    pub equality_cases: Vec<String>,
}

/// One failed check instance.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CounterexampleRecord {
    /// Name of the failed check.
    pub check: String,
    /// Canonical profile of the surface.
    pub profile: String,
    /// Degree vector of the polarization.
    pub degrees: String,
    /// Rank, for rank-dependent checks.
    pub rank: Option<i64>,
    /// What went wrong.
    pub detail: String,
}

/// Sweep configuration, echoed into the report.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SweepParams {
    /// Smallest ray count swept.
    pub e_min: usize,
    /// Largest ray count in the inventory.
    pub e_max: usize,
    /// Largest Hirzebruch seed parameter.
    pub a_max: u32,
    /// Degree cap for polarizations.
    pub t_max: i64,
    /// Ranks checked.
    pub r_set: Vec<i64>,
}

/// Full result of a verification sweep.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    /// Configuration of the sweep.
    pub params: SweepParams,
    /// Surfaces visited.
    pub surface_count: usize,
    /// Polarized instances visited.
    pub instance_count: u64,
    /// Per-check tallies, keyed by check name.
    pub checks: BTreeMap<String, CheckStats>,
    /// Every failure, in deterministic sweep order.
    pub counterexamples: Vec<CounterexampleRecord>,
}

/// A canonicalized `(profile, degrees, rank)` triple: the joint
/// lexicographic minimum over all rotations and reflections, so equal
/// fingerprints mean isomorphic polarized surfaces.
pub type Fingerprint = (Vec<BigInt>, Vec<BigInt>, i64);

/// Joint canonical form of a profile/degree pair under the dihedral
/// symmetries of the ray cycle.
pub fn canonical_pair(profile: &[BigInt], degrees: &[BigInt]) -> (Vec<BigInt>, Vec<BigInt>) {
    let n = profile.len();
    assert_eq!(n, degrees.len());
    let mut best: Option<(Vec<BigInt>, Vec<BigInt>)> = None;
    let mut consider = |p: Vec<BigInt>, d: Vec<BigInt>| match &best {
        Some((bp, bd)) if (&p, &d) >= (bp, bd) => {}
        _ => best = Some((p, d)),
    };
    for reversed in [false, true] {
        let (mut p, mut d) = (profile.to_vec(), degrees.to_vec());
        if reversed {
            p.reverse();
            d.reverse();
        }
        for shift in 0..n {
            let rotate = |v: &[BigInt]| {
                let mut out = v[shift..].to_vec();
                out.extend_from_slice(&v[..shift]);
                out
            };
            consider(rotate(&p), rotate(&d));
        }
    }
    best.expect("nonempty cycle")
}

fn fingerprint_of(fan: &Fan, degrees: &[BigInt], rank: i64) -> Fingerprint {
    let profile = fan.self_intersections();
    let (p, d) = canonical_pair(profile.values(), degrees);
    (p, d, rank)
}

fn fingerprint_string(fp: &Fingerprint) -> String {
    let join = |v: &[BigInt]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
    format!("profile[{}] degrees[{}] r={}", join(&fp.0), join(&fp.1), fp.2)
}

/// The nine polarized surfaces allowed to have `c1^2 <= r e`: the plane
/// with its line (and the rank-two and rank-three sums of lines), the
/// quadric with the four low bidegrees and the rank-two diagonal sum,
/// the first two Hirzebruch twists, and the six-ray anticanonical
/// surface.
pub fn exception_fingerprints() -> BTreeSet<Fingerprint> {
    let plane = Fan::projective_plane();
    let quadric = Fan::hirzebruch(0);
    let f1 = Fan::hirzebruch(1);
    let f2 = Fan::hirzebruch(2);
    let hexagon = Fan::hexagon();
    let ints = |v: &[i64]| v.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>();
    [
        (&plane, vec![1, 1, 1], 1),
        (&quadric, vec![1, 1, 1, 1], 1),
        (&quadric, vec![2, 1, 2, 1], 1),
        (&f1, vec![1, 1, 1, 2], 1),
        (&f2, vec![1, 1, 1, 3], 1),
        (&hexagon, vec![1, 1, 1, 1, 1, 1], 1),
        (&plane, vec![2, 2, 2], 2),
        (&quadric, vec![2, 2, 2, 2], 2),
        (&plane, vec![3, 3, 3], 3),
    ]
    .into_iter()
    .map(|(fan, degrees, rank)| fingerprint_of(fan, &ints(&degrees), rank))
    .collect()
}

struct SurfaceOutcome {
    stats: BTreeMap<&'static str, CheckStats>,
    counterexamples: Vec<CounterexampleRecord>,
    instances: u64,
}

fn bigints_string(values: &[BigInt]) -> String {
    let inner = values.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
    format!("[{inner}]")
}

const CHECK_NAMES: [&str; 8] = [
    "degree-floor",
    "square-lower-bound",
    "exception-fingerprints",
    "reduction-tower",
    "telescoped-degree",
    "genus-floor",
    "fibration-invariants",
    "twisted-adjoint-nef",
];

fn check_surface(
    entry: &SurfaceEntry,
    t_max: i64,
    r_set: &[i64],
    expected: &BTreeSet<Fingerprint>,
) -> SurfaceOutcome {
    let fan = &entry.fan;
    let e = fan.euler();
    let e_int = BigInt::from(e);
    let profile = fan.self_intersections();
    let profile_str = bigints_string(entry.profile.values());
    let mut stats: BTreeMap<&'static str, CheckStats> =
        CHECK_NAMES.iter().map(|&name| (name, CheckStats::default())).collect();
    let mut counterexamples = Vec::new();
    let mut instances = 0u64;
    let minus_two_k_degrees: Vec<BigInt> =
        profile.values().iter().map(|d| BigInt::from(2) + d).collect();
    for t in enumerate_degree_vectors(fan, 1, t_max) {
        instances += 1;
        let l = t.class();
        let degrees_str = bigints_string(t.values());
        let record = |name: &'static str,
                          ok: bool,
                          rank: Option<i64>,
                          detail: &dyn Fn() -> String,
                          stats: &mut BTreeMap<&'static str, CheckStats>,
                          counterexamples: &mut Vec<CounterexampleRecord>| {
            let stat = stats.get_mut(name).expect("known check");
            if ok {
                stat.pass += 1;
            } else {
                stat.fail += 1;
                counterexamples.push(CounterexampleRecord {
                    check: name.into(),
                    profile: profile_str.clone(),
                    degrees: degrees_str.clone(),
                    rank,
                    detail: detail(),
                });
            }
        };

        // Reduction tower, telescoped degree identity, genus floor.
        match iterated_sequence(&l) {
            Err(err) => {
                record(
                    "reduction-tower",
                    false,
                    None,
                    &|| format!("sequence error: {err}"),
                    &mut stats,
                    &mut counterexamples,
                );
            }
            Ok(seq) => {
                record(
                    "reduction-tower",
                    seq.euler_steps_ok(),
                    None,
                    &|| {
                        let sizes: Vec<usize> =
                            seq.stages().iter().map(|(f, _)| f.euler()).collect();
                        format!("ray counts along the tower out of range: {sizes:?}")
                    },
                    &mut stats,
                    &mut counterexamples,
                );
                let telescope = telescoped_genus_check(&seq);
                record(
                    "telescoped-degree",
                    telescope.identity_holds(),
                    None,
                    &|| {
                        format!(
                            "direct {} != telescoped {}",
                            telescope.direct, telescope.telescoped
                        )
                    },
                    &mut stats,
                    &mut counterexamples,
                );
                if telescope.genus_floor_expected {
                    record(
                        "genus-floor",
                        telescope.genus_floor_met,
                        None,
                        &|| format!("value {} below -2 with spanned terminal", telescope.direct),
                        &mut stats,
                        &mut counterexamples,
                    );
                } else {
                    let stat = stats.get_mut("genus-floor").expect("known check");
                    stat.pass += 1;
                    if !telescope.genus_floor_met {
                        stat.equality_cases.push(format!(
                            "out-of-scope floor {} at profile {} degrees {}",
                            telescope.direct, profile_str, degrees_str
                        ));
                    }
                }
            }
        }

        // Fibration invariants of the immediate classification.
        if let Ok(ReductionOutcome::Fibration { fiber_degree, .. }) = classify_adjoint(&l) {
            let euler_cap = BigInt::from(2) + BigInt::from(2) * &fiber_degree;
            record(
                "fibration-invariants",
                fiber_degree == BigInt::from(2) && BigInt::from(e) <= euler_cap,
                None,
                &|| format!("fiber degree {fiber_degree} with {e} rays"),
                &mut stats,
                &mut counterexamples,
            );
        }

        let l_sq = l.self_intersection();
        let total = t.total();
        for &r in r_set {
            if *t.min() < BigInt::from(r) {
                continue;
            }
            // Degree floor with equality classification.
            let floor_ok = kl_check(&l, r);
            record(
                "degree-floor",
                floor_ok,
                Some(r),
                &|| format!("total degree {total} below {r} * {e}"),
                &mut stats,
                &mut counterexamples,
            );
            if floor_ok && total == BigInt::from(r) * &e_int {
                let uniform = t.values().iter().all(|x| *x == BigInt::from(r));
                record(
                    "degree-floor",
                    uniform,
                    Some(r),
                    &|| "degree-sum equality without uniform degrees".into(),
                    &mut stats,
                    &mut counterexamples,
                );
                if uniform {
                    let stat = stats.get_mut("degree-floor").expect("known check");
                    stat.equality_cases
                        .push(format!("equality at profile {profile_str} degrees {degrees_str} r={r}"));
                }
            }

            if e >= 5 {
                // Square lower bound with equality classification.
                let square_floor = BigInt::from(r) * r * &e_int;
                let sq_ok = l_sq >= square_floor;
                let equality = l_sq == square_floor;
                let mut classified_ok = sq_ok;
                if equality {
                    let target = DivisorClass::canonical(fan).scaled(-r);
                    classified_ok = e == 6 && l.linearly_equivalent(&target).expect("same fan");
                }
                record(
                    "square-lower-bound",
                    classified_ok,
                    Some(r),
                    &|| {
                        if equality {
                            format!("square equals {r}^2 * {e} but class is not -{r}K on six rays")
                        } else {
                            format!("square {l_sq} below {r}^2 * {e}")
                        }
                    },
                    &mut stats,
                    &mut counterexamples,
                );
                if equality && classified_ok {
                    let stat = stats.get_mut("square-lower-bound").expect("known check");
                    stat.equality_cases
                        .push(format!("equality at profile {profile_str} degrees {degrees_str} r={r}"));
                }

                // Twisted adjoint nef: rK + L has no negative degree.
                let twisted_ok = t
                    .values()
                    .iter()
                    .zip(&minus_two_k_degrees)
                    .all(|(degree, k_deg)| degree - BigInt::from(r) * k_deg >= BigInt::zero());
                record(
                    "twisted-adjoint-nef",
                    twisted_ok,
                    Some(r),
                    &|| format!("{r}K + L has a negative degree"),
                    &mut stats,
                    &mut counterexamples,
                );
            }

            // Exceptional small-square instances must be catalogued.
            if l_sq <= BigInt::from(r) * &e_int {
                let fp = fingerprint_of(fan, t.values(), r);
                let known = expected.contains(&fp);
                record(
                    "exception-fingerprints",
                    known,
                    Some(r),
                    &|| format!("uncatalogued small-square instance {}", fingerprint_string(&fp)),
                    &mut stats,
                    &mut counterexamples,
                );
                if known {
                    let stat = stats.get_mut("exception-fingerprints").expect("known check");
                    stat.equality_cases.push(fingerprint_string(&fp));
                }
            }
        }
    }
    SurfaceOutcome { stats, counterexamples, instances }
}

/// Sweeps every inventory surface with at least `e_min` rays over all
/// ample degree vectors capped by `t_max`, running the full battery of
/// checks for each rank in `r_set` whose degree precondition holds.
/// Deterministic: results are merged in inventory order regardless of
/// thread scheduling.
pub fn run_verification(
    inventory: &SurfaceInventory,
    e_min: usize,
    t_max: i64,
    r_set: &[i64],
) -> VerificationReport {
    let expected = exception_fingerprints();
    let entries: Vec<&SurfaceEntry> =
        inventory.entries.iter().filter(|s| s.fan.euler() >= e_min).collect();
    let outcomes: Vec<SurfaceOutcome> = entries
        .par_iter()
        .map(|entry| check_surface(entry, t_max, r_set, &expected))
        .collect();
    let mut checks: BTreeMap<String, CheckStats> = CHECK_NAMES
        .iter()
        .map(|&name| (name.to_string(), CheckStats::default()))
        .collect();
    let mut counterexamples = Vec::new();
    let mut instance_count = 0u64;
    for outcome in outcomes {
        for (name, stat) in outcome.stats {
            let merged = checks.get_mut(name).expect("known check");
            merged.pass += stat.pass;
            merged.fail += stat.fail;
            merged.equality_cases.extend(stat.equality_cases);
        }
        counterexamples.extend(outcome.counterexamples);
        instance_count += outcome.instances;
    }
    for stat in checks.values_mut() {
        stat.equality_cases.sort();
        stat.equality_cases.dedup();
    }
    VerificationReport {
        params: SweepParams {
            e_min,
            e_max: inventory.e_max,
            a_max: inventory.a_max,
            t_max,
            r_set: r_set.to_vec(),
        },
        surface_count: entries.len(),
        instance_count,
        checks,
        counterexamples,
    }
}

/// A polarized surface meeting the degree floor with equality at rank
/// one: total degree equal to the ray count, which forces every degree
/// to be one.
#[derive(Debug, Clone)]
pub struct ExtremalInstance {
    /// Canonical profile of the surface.
    pub profile: SelfIntersectionProfile,
    /// The all-ones degree vector.
    pub degrees: DegreeVector,
}

/// Finds every inventory surface whose all-ones degree vector is a
/// genuine polarization (equivalently, whose rays sum to zero): exactly
/// the instances where the rank-one degree floor is attained.
pub fn find_extremal(inventory: &SurfaceInventory) -> Vec<ExtremalInstance> {
    inventory
        .entries
        .iter()
        .filter(|entry| {
            let sum = entry.fan.ray_sum();
            sum.x.is_zero() && sum.y.is_zero()
        })
        .map(|entry| {
            let ones = vec![BigInt::from(1); entry.fan.euler()];
            let class = DivisorClass::from_degrees(&entry.fan, &ones)
                .expect("zero ray sum makes the all-ones vector consistent");
            ExtremalInstance { profile: entry.profile.clone(), degrees: class.degree_vector() }
        })
        .collect()
}

/// Audit of the printed twelve-ray extremal example.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RemarkReport {
    /// The alternating `(-3, -1)` profile, as realized.
    #[serde(serialize_with = "crate::serial::bigint_vec")]
    pub profile: Vec<BigInt>,
    /// Coefficients exactly as printed in the source table.
    #[serde(serialize_with = "crate::serial::bigint_vec")]
    pub printed_coefficients: Vec<BigInt>,
    /// Degrees of the printed class.
    #[serde(serialize_with = "crate::serial::bigint_vec")]
    pub printed_degrees: Vec<BigInt>,
    /// One-based positions where the printed degree differs from one.
    pub degree_violations: Vec<usize>,
    /// One-based positions where the printed coefficient differs from
    /// the corrected alternating pattern.
    pub coefficient_deviations: Vec<usize>,
    /// Corrected coefficients (alternating three and five).
    #[serde(serialize_with = "crate::serial::bigint_vec")]
    pub corrected_coefficients: Vec<BigInt>,
    /// Whether the corrected class has every degree equal to one.
    pub corrected_degrees_all_one: bool,
    /// Total degree of the corrected class (equals the ray count).
    #[serde(serialize_with = "crate::serial::bigint")]
    pub minus_k_dot_l: BigInt,
    /// Self-intersection of the corrected class.
    #[serde(serialize_with = "crate::serial::bigint")]
    pub l_squared: BigInt,
    /// Sectional genus of the corrected class.
    #[serde(serialize_with = "crate::serial::bigint")]
    pub genus: BigInt,
}

/// Rebuilds the printed twelve-ray example: realizes the alternating
/// `(-3, -1)` fan, evaluates the coefficients exactly as printed
/// (finding the rows where they break the claimed unit degrees), and
/// verifies the corrected alternating `(3, 5)` class is the extremal
/// polarization the example intends.
pub fn remark_report() -> RemarkReport {
    let profile: Vec<i64> =
        (0..12).map(|i| if i % 2 == 0 { -3 } else { -1 }).collect();
    let fan = crate::fan::realize_profile_i64(&profile).expect("realizable profile");
    let printed: Vec<BigInt> =
        [3, 5, 3, 5, 3, 5, 3, 5, 3, 3, 3, 5].into_iter().map(BigInt::from).collect();
    let corrected: Vec<BigInt> =
        (0..12).map(|i| BigInt::from(if i % 2 == 0 { 3 } else { 5 })).collect();
    let printed_class = DivisorClass::new(fan.clone(), printed.clone()).expect("twelve coefficients");
    let corrected_class =
        DivisorClass::new(fan.clone(), corrected.clone()).expect("twelve coefficients");
    let printed_degrees = printed_class.degree_vector().values().to_vec();
    let one = BigInt::from(1);
    let degree_violations: Vec<usize> = printed_degrees
        .iter()
        .enumerate()
        .filter(|(_, t)| **t != one)
        .map(|(i, _)| i + 1)
        .collect();
    let coefficient_deviations: Vec<usize> = printed
        .iter()
        .zip(&corrected)
        .enumerate()
        .filter(|(_, (p, c))| p != c)
        .map(|(i, _)| i + 1)
        .collect();
    let corrected_degrees = corrected_class.degree_vector();
    RemarkReport {
        profile: fan.self_intersections().values().to_vec(),
        printed_coefficients: printed,
        printed_degrees,
        degree_violations,
        coefficient_deviations,
        corrected_coefficients: corrected,
        corrected_degrees_all_one: corrected_degrees.values().iter().all(|t| *t == one),
        minus_k_dot_l: corrected_degrees.total(),
        l_squared: corrected_class.self_intersection(),
        genus: corrected_class.sectional_genus(),
    }
}
