//! Problem instances: depot configurations, offline and online request
//! lists, and generators for the adversarial and random test families.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::metric::{MetricError, MetricSpace, Point};
use crate::scalar::{cast, Scalar};

/// How many fresh depot sets a rejection-sampling generator draws before
/// giving up.
pub const REJECTION_BUDGET: usize = 100_000;

/// Validation errors for instances and generator parameters.
///
/// Indices stored here are 0-based; messages render them 1-based to match
/// the file format and reports.
#[derive(Clone, Debug, PartialEq)]
pub enum InstanceError {
    NoDepots,
    DuplicateDepots {
        i: usize,
        j: usize,
    },
    BadDepot {
        index: usize,
        source: MetricError,
    },
    BadRequest {
        index: usize,
        source: MetricError,
    },
    UnsortedReleaseDates {
        index: usize,
    },
    NegativeReleaseDate {
        index: usize,
    },
    ReleaseCountMismatch {
        requests: usize,
        dates: usize,
    },
    BadParameter {
        name: &'static str,
        reason: &'static str,
    },
    RejectionBudgetExhausted {
        family: &'static str,
        attempts: usize,
    },
}

impl fmt::Display for InstanceError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InstanceError::NoDepots => write!(f, "at least one depot is required"),
            InstanceError::DuplicateDepots { i, j } => {
                write!(f, "depots {} and {} coincide", i + 1, j + 1)
            }
            InstanceError::BadDepot { index, source } => {
                write!(f, "depot {}: {source}", index + 1)
            }
            InstanceError::BadRequest { index, source } => {
                write!(f, "request {}: {source}", index + 1)
            }
            InstanceError::UnsortedReleaseDates { index } => write!(
                f,
                "release date {} is smaller than its predecessor",
                index + 1
            ),
            InstanceError::NegativeReleaseDate { index } => {
                write!(f, "release date {} is negative", index + 1)
            }
            InstanceError::ReleaseCountMismatch { requests, dates } => {
                write!(f, "{dates} release dates given for {requests} requests")
            }
            InstanceError::BadParameter { name, reason } => {
                write!(f, "parameter {name}: {reason}")
            }
            InstanceError::RejectionBudgetExhausted { family, attempts } => write!(
                f,
                "family {family}: no admissible depot set after {attempts} draws"
            ),
        }
    }
}

impl std::error::Error for InstanceError {}

/// The `m` distinct depots together with their ambient space.
#[derive(Clone, Debug, PartialEq)]
pub struct DepotConfig<S> {
    space: MetricSpace<S>,
    depots: Vec<Point<S>>,
}

impl<S: Scalar> DepotConfig<S> {
    /// Builds a configuration, checking that every depot belongs to the
    /// space and that depots are pairwise distinct (positive distance).
    pub fn new(space: MetricSpace<S>, depots: Vec<Point<S>>) -> Result<Self, InstanceError> {
        if depots.is_empty() {
            return Err(InstanceError::NoDepots);
        }
        for (index, depot) in depots.iter().enumerate() {
            space
                .contains(depot)
                .map_err(|source| InstanceError::BadDepot { index, source })?;
        }
        for i in 0..depots.len() {
            for j in (i + 1)..depots.len() {
                if space.dist(&depots[i], &depots[j]) <= S::zero() {
                    return Err(InstanceError::DuplicateDepots { i, j });
                }
            }
        }
        Ok(DepotConfig { space, depots })
    }

    pub fn space(&self) -> &MetricSpace<S> {
        &self.space
    }

    pub fn depots(&self) -> &[Point<S>] {
        &self.depots
    }

    pub fn depot(&self, i: usize) -> &Point<S> {
        &self.depots[i]
    }

    /// Number of servers `m`.
    pub fn len(&self) -> usize {
        self.depots.len()
    }

    pub fn is_empty(&self) -> bool {
        false // construction requires at least one depot
    }

    /// Smallest distance between two depots; `None` when `m = 1`.
    pub fn min_pairwise_distance(&self) -> Option<S> {
        let mut best: Option<S> = None;
        for i in 0..self.depots.len() {
            for j in (i + 1)..self.depots.len() {
                let d = self.space.dist(&self.depots[i], &self.depots[j]);
                best = Some(match best {
                    Some(b) if b <= d => b,
                    _ => d,
                });
            }
        }
        best
    }
}

/// An offline instance: depots plus the full request list.
#[derive(Clone, Debug, PartialEq)]
pub struct OfflineInstance<S> {
    depots: DepotConfig<S>,
    requests: Vec<Point<S>>,
}

impl<S: Scalar> OfflineInstance<S> {
    pub fn new(depots: DepotConfig<S>, requests: Vec<Point<S>>) -> Result<Self, InstanceError> {
        for (index, request) in requests.iter().enumerate() {
            depots
                .space()
                .contains(request)
                .map_err(|source| InstanceError::BadRequest { index, source })?;
        }
        Ok(OfflineInstance { depots, requests })
    }

    pub fn depots(&self) -> &DepotConfig<S> {
        &self.depots
    }

    pub fn space(&self) -> &MetricSpace<S> {
        self.depots.space()
    }

    pub fn requests(&self) -> &[Point<S>] {
        &self.requests
    }

    pub fn request_count(&self) -> usize {
        self.requests.len()
    }

    pub fn server_count(&self) -> usize {
        self.depots.len()
    }

    /// Attaches release dates (one per request, in request order) to form
    /// an online instance.
    pub fn with_release_dates(self, dates: Vec<S>) -> Result<OnlineInstance<S>, InstanceError> {
        if dates.len() != self.requests.len() {
            return Err(InstanceError::ReleaseCountMismatch {
                requests: self.requests.len(),
                dates: dates.len(),
            });
        }
        let requests = dates
            .into_iter()
            .zip(self.requests)
            .map(|(release, location)| OnlineRequest { release, location })
            .collect();
        OnlineInstance::new(self.depots, requests)
    }
}

/// A request with its release date.
#[derive(Clone, Debug, PartialEq)]
pub struct OnlineRequest<S> {
    pub release: S,
    pub location: Point<S>,
}

/// An online instance: requests become known at their release dates,
/// which must be nonnegative and nondecreasing. Requests with equal
/// release dates keep their list order.
#[derive(Clone, Debug, PartialEq)]
pub struct OnlineInstance<S> {
    depots: DepotConfig<S>,
    requests: Vec<OnlineRequest<S>>,
}

impl<S: Scalar> OnlineInstance<S> {
    pub fn new(
        depots: DepotConfig<S>,
        requests: Vec<OnlineRequest<S>>,
    ) -> Result<Self, InstanceError> {
        for (index, request) in requests.iter().enumerate() {
            depots
                .space()
                .contains(&request.location)
                .map_err(|source| InstanceError::BadRequest { index, source })?;
            if !request.release.is_finite() || request.release < S::zero() {
                return Err(InstanceError::NegativeReleaseDate { index });
            }
            if index > 0 && request.release < requests[index - 1].release {
                return Err(InstanceError::UnsortedReleaseDates { index });
            }
        }
        Ok(OnlineInstance { depots, requests })
    }

    pub fn depots(&self) -> &DepotConfig<S> {
        &self.depots
    }

    pub fn space(&self) -> &MetricSpace<S> {
        self.depots.space()
    }

    pub fn requests(&self) -> &[OnlineRequest<S>] {
        &self.requests
    }

    pub fn request_count(&self) -> usize {
        self.requests.len()
    }

    pub fn server_count(&self) -> usize {
        self.depots.len()
    }

    /// Largest release date, zero for the empty instance.
    pub fn last_release(&self) -> S {
        self.requests
            .last()
            .map(|r| r.release)
            .unwrap_or_else(S::zero)
    }

    /// Drops the release dates, keeping the request locations.
    pub fn locations(&self) -> OfflineInstance<S> {
        OfflineInstance {
            depots: self.depots.clone(),
            requests: self.requests.iter().map(|r| r.location.clone()).collect(),
        }
    }
}

/// Parameters selecting one instance family.
#[derive(Clone, Debug, PartialEq)]
pub enum FamilyParams<S> {
    /// Depots `(0, i)` and requests `(k, i)` for `i = 1..=m` in the plane.
    LineVoronoi { m: usize, k: S },
    /// Depots at the unit basis vectors of `R^m`, requests at `eps * e_j`.
    Simplex { m: usize, eps: S },
    /// Line depots `0, 1, f + 1` with a single request at `1.25`.
    LocalAdversarial { f: S },
    /// Random collinear depots on the x-axis with requests in a 2-D strip.
    RandomLine { m: usize, n: usize, seed: u64 },
    /// Random planar depots whose pairwise-distance ratio is at most
    /// `max_ratio`, enforced by rejection.
    RandomBoundedRatio {
        m: usize,
        n: usize,
        max_ratio: S,
        seed: u64,
    },
}

impl<S: Scalar> FamilyParams<S> {
    pub fn name(&self) -> &'static str {
        match self {
            FamilyParams::LineVoronoi { .. } => "line_voronoi",
            FamilyParams::Simplex { .. } => "simplex",
            FamilyParams::LocalAdversarial { .. } => "local_adversarial",
            FamilyParams::RandomLine { .. } => "random_line",
            FamilyParams::RandomBoundedRatio { .. } => "random_bounded_ratio",
        }
    }

    pub fn generate(&self) -> Result<OfflineInstance<S>, InstanceError> {
        match self {
            FamilyParams::LineVoronoi { m, k } => line_voronoi(*m, *k),
            FamilyParams::Simplex { m, eps } => simplex(*m, *eps),
            FamilyParams::LocalAdversarial { f } => local_adversarial(*f),
            FamilyParams::RandomLine { m, n, seed } => random_line(*m, *n, *seed),
            FamilyParams::RandomBoundedRatio {
                m,
                n,
                max_ratio,
                seed,
            } => random_bounded_ratio(*m, *n, *max_ratio, *seed),
        }
    }
}

/// Planar family with depots stacked on the y-axis and every request at
/// horizontal offset `k` from its own depot.
pub fn line_voronoi<S: Scalar>(m: usize, k: S) -> Result<OfflineInstance<S>, InstanceError> {
    if m < 2 {
        return Err(InstanceError::BadParameter {
            name: "m",
            reason: "must be at least 2",
        });
    }
    if !(k > S::zero()) {
        return Err(InstanceError::BadParameter {
            name: "k",
            reason: "must be positive",
        });
    }
    let space = MetricSpace::euclidean(2);
    let depots = (1..=m)
        .map(|i| Point::euclidean(vec![S::zero(), S::from_usize(i).unwrap()]))
        .collect();
    let requests = (1..=m)
        .map(|j| Point::euclidean(vec![k, S::from_usize(j).unwrap()]))
        .collect();
    OfflineInstance::new(DepotConfig::new(space, depots)?, requests)
}

/// `m`-dimensional family with depots at the unit basis vectors and
/// requests at `eps * e_j`, clustered near the origin.
pub fn simplex<S: Scalar>(m: usize, eps: S) -> Result<OfflineInstance<S>, InstanceError> {
    if m < 2 {
        return Err(InstanceError::BadParameter {
            name: "m",
            reason: "must be at least 2",
        });
    }
    if !(eps > S::zero() && eps < S::one()) {
        return Err(InstanceError::BadParameter {
            name: "eps",
            reason: "must lie in (0, 1)",
        });
    }
    let basis = |i: usize, scale: S| {
        let mut coords = vec![S::zero(); m];
        coords[i] = scale;
        Point::euclidean(coords)
    };
    let space = MetricSpace::euclidean(m);
    let depots = (0..m).map(|i| basis(i, S::one())).collect();
    let requests = (0..m).map(|j| basis(j, eps)).collect();
    OfflineInstance::new(DepotConfig::new(space, depots)?, requests)
}

/// Line family with depots `0, 1, f + 1` and one request at `1.25`: the
/// request sits on the boundary of the middle depot's local ball, so the
/// remainder server has to make the long trip.
pub fn local_adversarial<S: Scalar>(f: S) -> Result<OfflineInstance<S>, InstanceError> {
    if !(f >= S::one()) {
        return Err(InstanceError::BadParameter {
            name: "f",
            reason: "must be at least 1",
        });
    }
    let space = MetricSpace::line();
    let depots = vec![
        Point::line(S::zero()),
        Point::line(S::one()),
        Point::line(f + S::one()),
    ];
    let requests = vec![Point::line(cast(1.25))];
    OfflineInstance::new(DepotConfig::new(space, depots)?, requests)
}

fn sample<S: Scalar>(rng: &mut ChaCha8Rng, lo: f64, hi: f64) -> S {
    cast(rng.gen_range(lo..hi))
}

/// Random instance with collinear depots.
///
/// Depots are placed on the x-axis of the Euclidean plane in increasing
/// order (so the index order is the line order) and requests fall in the
/// strip `[-1, 11] x [-2, 2]`. Deterministic for a fixed seed.
pub fn random_line<S: Scalar>(
    m: usize,
    n: usize,
    seed: u64,
) -> Result<OfflineInstance<S>, InstanceError> {
    if m < 2 {
        return Err(InstanceError::BadParameter {
            name: "m",
            reason: "must be at least 2",
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let space = MetricSpace::euclidean(2);
    let mut attempts = 0;
    let depots = loop {
        attempts += 1;
        if attempts > REJECTION_BUDGET {
            return Err(InstanceError::RejectionBudgetExhausted {
                family: "random_line",
                attempts: REJECTION_BUDGET,
            });
        }
        let mut xs: Vec<f64> = (0..m).map(|_| rng.gen_range(0.0..10.0)).collect();
        xs.sort_by(|a, b| a.partial_cmp(b).unwrap());
        // Re-draw near-coincident depots rather than emit degenerate lines.
        if xs.windows(2).all(|w| w[1] - w[0] > 1e-2) {
            break xs
                .into_iter()
                .map(|x| Point::euclidean(vec![cast(x), S::zero()]))
                .collect::<Vec<_>>();
        }
    };
    let requests = (0..n)
        .map(|_| {
            let x: S = sample(&mut rng, -1.0, 11.0);
            let y: S = sample(&mut rng, -2.0, 2.0);
            Point::euclidean(vec![x, y])
        })
        .collect();
    OfflineInstance::new(DepotConfig::new(space, depots)?, requests)
}

/// Random planar instance whose depot set satisfies
/// `max pairwise distance / min pairwise distance <= max_ratio`,
/// enforced by redrawing the whole depot set. Deterministic for a fixed
/// seed; fails once the rejection budget is exhausted.
pub fn random_bounded_ratio<S: Scalar>(
    m: usize,
    n: usize,
    max_ratio: S,
    seed: u64,
) -> Result<OfflineInstance<S>, InstanceError> {
    if m < 2 {
        return Err(InstanceError::BadParameter {
            name: "m",
            reason: "must be at least 2",
        });
    }
    if !(max_ratio >= S::one()) {
        return Err(InstanceError::BadParameter {
            name: "max_ratio",
            reason: "must be at least 1",
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let space = MetricSpace::euclidean(2);
    let mut attempts = 0;
    let depots = loop {
        attempts += 1;
        if attempts > REJECTION_BUDGET {
            return Err(InstanceError::RejectionBudgetExhausted {
                family: "random_bounded_ratio",
                attempts: REJECTION_BUDGET,
            });
        }
        let candidate: Vec<Point<S>> = (0..m)
            .map(|_| {
                let x: S = sample(&mut rng, 0.0, 10.0);
                let y: S = sample(&mut rng, 0.0, 10.0);
                Point::euclidean(vec![x, y])
            })
            .collect();
        let mut min = S::infinity();
        let mut max = S::zero();
        for i in 0..m {
            for j in (i + 1)..m {
                let d = space.dist(&candidate[i], &candidate[j]);
                min = min.min(d);
                max = max.max(d);
            }
        }
        if min > cast(1e-2) && max <= max_ratio * min {
            break candidate;
        }
    };
    let requests = (0..n)
        .map(|_| {
            let x: S = sample(&mut rng, 0.0, 10.0);
            let y: S = sample(&mut rng, 0.0, 10.0);
            Point::euclidean(vec![x, y])
        })
        .collect();
    OfflineInstance::new(DepotConfig::new(space, depots)?, requests)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::approx_eq;

    #[test]
    fn line_voronoi_matches_construction() {
        let inst = line_voronoi::<f64>(3, 5.0).unwrap();
        assert_eq!(inst.server_count(), 3);
        assert_eq!(
            inst.depots().depots(),
            &[
                Point::euclidean(vec![0.0, 1.0]),
                Point::euclidean(vec![0.0, 2.0]),
                Point::euclidean(vec![0.0, 3.0]),
            ]
        );
        assert_eq!(
            inst.requests(),
            &[
                Point::euclidean(vec![5.0, 1.0]),
                Point::euclidean(vec![5.0, 2.0]),
                Point::euclidean(vec![5.0, 3.0]),
            ]
        );
    }

    #[test]
    fn line_voronoi_smallest_member() {
        let inst = line_voronoi::<f64>(2, 1.0).unwrap();
        assert_eq!(inst.server_count(), 2);
        assert_eq!(inst.request_count(), 2);
    }

    #[test]
    fn line_voronoi_scaled() {
        let inst = line_voronoi::<f64>(9, 100.0).unwrap();
        assert_eq!(inst.request_count(), 9);
        for (j, r) in inst.requests().iter().enumerate() {
            assert_eq!(r, &Point::euclidean(vec![100.0, (j + 1) as f64]));
        }
    }

    #[test]
    fn simplex_matches_construction() {
        let inst = simplex::<f64>(3, 0.1).unwrap();
        assert_eq!(
            inst.depots().depot(0),
            &Point::euclidean(vec![1.0, 0.0, 0.0])
        );
        assert_eq!(
            inst.depots().depot(2),
            &Point::euclidean(vec![0.0, 0.0, 1.0])
        );
        assert_eq!(inst.requests()[1], Point::euclidean(vec![0.0, 0.1, 0.0]));
    }

    #[test]
    fn simplex_two_dimensional() {
        let inst = simplex::<f64>(2, 0.5).unwrap();
        assert_eq!(inst.space(), &MetricSpace::euclidean(2));
    }

    #[test]
    fn simplex_request_nearest_depot_is_its_own() {
        // Request eps * e_j lies at distance 1 - eps from depot e_j and
        // farther from every other depot.
        let eps = 0.01;
        let inst = simplex::<f64>(4, eps).unwrap();
        let space = inst.space();
        for (j, r) in inst.requests().iter().enumerate() {
            let own = space.dist(r, inst.depots().depot(j));
            assert!(approx_eq(own, 1.0 - eps));
            for i in 0..4 {
                if i != j {
                    assert!(space.dist(r, inst.depots().depot(i)) > own);
                }
            }
        }
    }

    #[test]
    fn local_adversarial_layouts() {
        for f in [10.0, 1.0, 100.0] {
            let inst = local_adversarial::<f64>(f).unwrap();
            assert_eq!(
                inst.depots().depots(),
                &[Point::line(0.0), Point::line(1.0), Point::line(f + 1.0)]
            );
            assert_eq!(inst.requests(), &[Point::line(1.25)]);
        }
    }

    #[test]
    fn generators_reject_bad_parameters() {
        assert!(line_voronoi::<f64>(1, 5.0).is_err());
        assert!(line_voronoi::<f64>(3, 0.0).is_err());
        assert!(simplex::<f64>(3, 1.0).is_err());
        assert!(local_adversarial::<f64>(0.5).is_err());
    }

    #[test]
    fn random_line_depots_are_collinear_and_ordered() {
        let inst = random_line::<f64>(5, 6, 1).unwrap();
        assert_eq!(inst.server_count(), 5);
        assert_eq!(inst.request_count(), 6);
        let space = inst.space();
        let depots = inst.depots().depots();
        for i in 0..5 {
            for j in (i + 1)..5 {
                for k in (j + 1)..5 {
                    let sum =
                        space.dist(&depots[i], &depots[j]) + space.dist(&depots[j], &depots[k]);
                    assert!(approx_eq(sum, space.dist(&depots[i], &depots[k])));
                }
            }
        }
    }

    #[test]
    fn random_bounded_ratio_obeys_bound() {
        let inst = random_bounded_ratio::<f64>(4, 5, 2.0, 7).unwrap();
        let space = inst.space();
        let depots = inst.depots().depots();
        let mut min = f64::INFINITY;
        let mut max = 0.0_f64;
        for i in 0..4 {
            for j in (i + 1)..4 {
                let d = space.dist(&depots[i], &depots[j]);
                min = min.min(d);
                max = max.max(d);
            }
        }
        assert!(max <= 2.0 * min);
    }

    #[test]
    fn random_families_support_empty_request_lists() {
        assert_eq!(random_line::<f64>(3, 0, 9).unwrap().request_count(), 0);
        assert_eq!(
            random_bounded_ratio::<f64>(3, 0, 4.0, 9)
                .unwrap()
                .request_count(),
            0
        );
    }

    #[test]
    fn impossible_spread_bound_exhausts_the_rejection_budget() {
        // Three depots with all pairwise distances equal never come out
        // of uniform sampling.
        let err = random_bounded_ratio::<f64>(3, 0, 1.0, 0).unwrap_err();
        assert_eq!(
            err,
            InstanceError::RejectionBudgetExhausted {
                family: "random_bounded_ratio",
                attempts: REJECTION_BUDGET,
            }
        );
    }

    #[test]
    fn random_generation_is_reproducible() {
        let a = random_line::<f64>(4, 5, 42).unwrap();
        let b = random_line::<f64>(4, 5, 42).unwrap();
        assert_eq!(a, b);
        let c = random_bounded_ratio::<f64>(3, 4, 3.0, 42).unwrap();
        let d = random_bounded_ratio::<f64>(3, 4, 3.0, 42).unwrap();
        assert_eq!(c, d);
        assert_ne!(a, random_line::<f64>(4, 5, 43).unwrap());
    }

    #[test]
    fn depot_config_rejects_duplicates() {
        let space = MetricSpace::<f64>::line();
        let err = DepotConfig::new(space, vec![Point::line(1.0), Point::line(1.0)]);
        assert_eq!(
            err.unwrap_err(),
            InstanceError::DuplicateDepots { i: 0, j: 1 }
        );
    }

    #[test]
    fn depot_config_rejects_foreign_points() {
        let space = MetricSpace::<f64>::euclidean(2);
        let err = DepotConfig::new(space, vec![Point::line(1.0)]);
        assert!(matches!(err, Err(InstanceError::BadDepot { index: 0, .. })));
    }

    #[test]
    fn online_instance_requires_sorted_releases() {
        let depots = DepotConfig::new(
            MetricSpace::<f64>::line(),
            vec![Point::line(0.0), Point::line(10.0)],
        )
        .unwrap();
        let err = OnlineInstance::new(
            depots.clone(),
            vec![
                OnlineRequest {
                    release: 2.0,
                    location: Point::line(1.0),
                },
                OnlineRequest {
                    release: 1.0,
                    location: Point::line(2.0),
                },
            ],
        );
        assert_eq!(
            err.unwrap_err(),
            InstanceError::UnsortedReleaseDates { index: 1 }
        );

        let err = OnlineInstance::new(
            depots,
            vec![OnlineRequest {
                release: -1.0,
                location: Point::line(1.0),
            }],
        );
        assert_eq!(
            err.unwrap_err(),
            InstanceError::NegativeReleaseDate { index: 0 }
        );
    }

    #[test]
    fn equal_release_dates_keep_list_order() {
        let depots = DepotConfig::new(
            MetricSpace::<f64>::line(),
            vec![Point::line(0.0), Point::line(10.0)],
        )
        .unwrap();
        let inst = OnlineInstance::new(
            depots,
            vec![
                OnlineRequest {
                    release: 1.0,
                    location: Point::line(3.0),
                },
                OnlineRequest {
                    release: 1.0,
                    location: Point::line(2.0),
                },
            ],
        )
        .unwrap();
        assert_eq!(inst.requests()[0].location, Point::line(3.0));
        assert_eq!(inst.last_release(), 1.0);
    }

    #[test]
    fn locations_projection_drops_release_dates() {
        let inst = local_adversarial::<f64>(2.0)
            .unwrap()
            .with_release_dates(vec![4.0])
            .unwrap();
        let offline = inst.locations();
        assert_eq!(offline.requests(), &[Point::line(1.25)]);
        assert_eq!(offline.server_count(), 3);
    }

    #[test]
    fn rejects_non_finite_coordinates() {
        let space = MetricSpace::<f64>::line();
        let err = DepotConfig::new(space, vec![Point::line(f64::NAN)]);
        assert!(matches!(err, Err(InstanceError::BadDepot { .. })));
    }
}
