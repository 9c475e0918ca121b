//! Static partition schemes: request-independent rules mapping every
//! point of the space to exactly one server.
//!
//! Three schemes are provided. The Voronoi partition assigns each point
//! to its nearest depot and works for any depot configuration. The Level
//! partition needs collinear depots and nests closed-disk regions over
//! dyadic index levels. The Local partition needs a bounded spread: it
//! keeps a small ball around each of the first `m - 1` depots and hands
//! the rest of the space to the last server.

use std::fmt;

use crate::instance::{DepotConfig, OfflineInstance};
use crate::metric::{MetricSpace, Point};
use crate::scalar::{approx_eq, approx_le, cast, Scalar};

/// Default disk-growth factor for the Level partition; any fixed value
/// strictly between 1/2 and 1 works.
pub const DEFAULT_LAMBDA: f64 = 0.75;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SchemeKind {
    Voronoi,
    Level,
    Local,
}

impl fmt::Display for SchemeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SchemeKind::Voronoi => write!(f, "voronoi"),
            SchemeKind::Level => write!(f, "level"),
            SchemeKind::Local => write!(f, "local"),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum PartitionError {
    /// Level partition: depots are not collinear in index order.
    /// The triple is reported with 0-based indices.
    NotCollinear { i: usize, j: usize, k: usize },
    /// Scheme needs more depots than the configuration has.
    TooFewDepots { m: usize, need: usize },
    /// Level partition: lambda outside `(1/2, 1)`.
    BadLambda { lambda: f64 },
}

impl fmt::Display for PartitionError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PartitionError::NotCollinear { i, j, k } => write!(
                f,
                "depots {}, {}, {} do not lie on a line in this order",
                i + 1,
                j + 1,
                k + 1
            ),
            PartitionError::TooFewDepots { m, need } => {
                write!(f, "scheme needs at least {need} depots, got {m}")
            }
            PartitionError::BadLambda { lambda } => {
                write!(f, "lambda {lambda} outside (1/2, 1)")
            }
        }
    }
}

impl std::error::Error for PartitionError {}

/// The closed region `tau_i` scanned by the Level partition.
#[derive(Clone, Debug)]
enum Tau<S> {
    /// The whole space (index 0).
    All,
    /// Single closed ball (index `2^k`).
    Ball { center: usize, radius: S },
    /// Intersection of two closed balls (interior indices).
    Lens { a: usize, ra: S, b: usize, rb: S },
}

/// Precomputed Level-partition data over `2^k + 1` virtual servers.
///
/// When `m` is not of the form `2^k + 1`, copies of the last depot pad
/// the index range; assignments to padded indices collapse onto the last
/// real server.
#[derive(Clone, Debug)]
pub struct LevelTable<S> {
    k: u32,
    lambda: S,
    /// Real depots followed by padding copies of the last one.
    points: Vec<Point<S>>,
    /// `levels[l]` lists the virtual indices of level `l`, ascending;
    /// `l` runs from 0 to `k + 1`.
    levels: Vec<Vec<usize>>,
    level_of: Vec<usize>,
    taus: Vec<Tau<S>>,
    real: usize,
}

impl<S: Scalar> LevelTable<S> {
    pub fn build(depots: &DepotConfig<S>, lambda: S) -> Result<Self, PartitionError> {
        let lam = lambda.to_f64().unwrap_or(f64::NAN);
        if !(lam > 0.5 && lam < 1.0) {
            return Err(PartitionError::BadLambda { lambda: lam });
        }
        let m = depots.len();
        let space = depots.space();
        let pts = depots.depots();

        // The construction assumes the depot indices follow the line, so
        // betweenness must hold for every index-ordered triple.
        for i in 0..m {
            for j in (i + 1)..m {
                for k in (j + 1)..m {
                    let via = space.dist(&pts[i], &pts[j]) + space.dist(&pts[j], &pts[k]);
                    if !approx_eq(via, space.dist(&pts[i], &pts[k])) {
                        return Err(PartitionError::NotCollinear { i, j, k });
                    }
                }
            }
        }

        let mut k = 0u32;
        while (1usize << k) + 1 < m {
            k += 1;
        }
        let virtual_count = (1usize << k) + 1;
        let mut points: Vec<Point<S>> = pts.to_vec();
        while points.len() < virtual_count {
            points.push(pts[m - 1].clone());
        }

        let mut levels: Vec<Vec<usize>> = Vec::with_capacity(k as usize + 2);
        for l in 0..k {
            let members = (0..(1usize << (k - l - 1)))
                .map(|t| (1usize << l) * (2 * t + 1))
                .collect();
            levels.push(members);
        }
        levels.push(vec![1usize << k]);
        levels.push(vec![0]);

        let mut level_of = vec![0usize; virtual_count];
        for (l, members) in levels.iter().enumerate() {
            for &i in members {
                level_of[i] = l;
            }
        }

        let dist = |a: usize, b: usize| space.dist(&points[a], &points[b]);
        let top = 1usize << k;
        let taus = (0..virtual_count)
            .map(|i| {
                if i == 0 {
                    Tau::All
                } else if i == top {
                    Tau::Ball {
                        center: top,
                        radius: lambda * dist(0, top),
                    }
                } else {
                    let step = 1usize << level_of[i];
                    let (a, b) = (i - step, i + step);
                    let (da, db) = (dist(a, i), dist(b, i));
                    Tau::Lens {
                        a,
                        ra: da + lambda * db,
                        b,
                        rb: db + lambda * da,
                    }
                }
            })
            .collect();

        Ok(LevelTable {
            k,
            lambda,
            points,
            levels,
            level_of,
            taus,
            real: m,
        })
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn lambda(&self) -> S {
        self.lambda
    }

    /// Number of virtual servers, `2^k + 1`.
    pub fn virtual_count(&self) -> usize {
        self.points.len()
    }

    /// Virtual index lists per level, for diagnostics.
    pub fn levels(&self) -> &[Vec<usize>] {
        &self.levels
    }

    /// Level of a virtual index.
    pub fn level_of(&self, i: usize) -> usize {
        self.level_of[i]
    }

    /// Maps a virtual index to the real server that owns it.
    pub fn real_server(&self, i: usize) -> usize {
        i.min(self.real - 1)
    }

    /// Closed-region membership `p ∈ tau_i`, straight from the disk data.
    pub fn tau_contains(&self, space: &MetricSpace<S>, i: usize, p: &Point<S>) -> bool {
        match &self.taus[i] {
            Tau::All => true,
            Tau::Ball { center, radius } => {
                approx_le(space.dist(p, &self.points[*center]), *radius)
            }
            Tau::Lens { a, ra, b, rb } => {
                approx_le(space.dist(p, &self.points[*a]), *ra)
                    && approx_le(space.dist(p, &self.points[*b]), *rb)
            }
        }
    }

    fn assign(&self, space: &MetricSpace<S>, p: &Point<S>) -> usize {
        for members in &self.levels {
            for &i in members {
                if self.tau_contains(space, i, p) {
                    return self.real_server(i);
                }
            }
        }
        unreachable!("tau_0 covers the whole space")
    }
}

#[derive(Clone, Debug)]
enum Rule<S> {
    Voronoi,
    Level(LevelTable<S>),
    Local { radius: S },
}

/// A realized point-to-server assignment rule.
///
/// Built once from the depot configuration and immutable afterwards;
/// assignment never looks at the request set.
#[derive(Clone, Debug)]
pub struct PartitionScheme<S> {
    depots: DepotConfig<S>,
    rule: Rule<S>,
}

impl<S: Scalar> PartitionScheme<S> {
    /// Nearest-depot rule; ties go to the lowest server index.
    pub fn voronoi(depots: DepotConfig<S>) -> Self {
        PartitionScheme {
            depots,
            rule: Rule::Voronoi,
        }
    }

    /// Level rule for collinear depots, listed in line order.
    pub fn level(depots: DepotConfig<S>, lambda: S) -> Result<Self, PartitionError> {
        let table = LevelTable::build(&depots, lambda)?;
        Ok(PartitionScheme {
            depots,
            rule: Rule::Level(table),
        })
    }

    /// Local rule: open balls of radius (min pairwise depot distance)/4
    /// around the first `m - 1` depots, remainder to the last server.
    pub fn local(depots: DepotConfig<S>) -> Result<Self, PartitionError> {
        if depots.len() < 2 {
            return Err(PartitionError::TooFewDepots {
                m: depots.len(),
                need: 2,
            });
        }
        let radius = depots.min_pairwise_distance().expect("m >= 2") / cast(4.0);
        Ok(PartitionScheme {
            depots,
            rule: Rule::Local { radius },
        })
    }

    /// Builds the scheme named by `kind`; `lambda` applies to the Level
    /// scheme and defaults to [`DEFAULT_LAMBDA`].
    pub fn build(
        kind: SchemeKind,
        depots: DepotConfig<S>,
        lambda: Option<S>,
    ) -> Result<Self, PartitionError> {
        match kind {
            SchemeKind::Voronoi => Ok(Self::voronoi(depots)),
            SchemeKind::Level => {
                Self::level(depots, lambda.unwrap_or_else(|| cast(DEFAULT_LAMBDA)))
            }
            SchemeKind::Local => Self::local(depots),
        }
    }

    pub fn kind(&self) -> SchemeKind {
        match &self.rule {
            Rule::Voronoi => SchemeKind::Voronoi,
            Rule::Level(_) => SchemeKind::Level,
            Rule::Local { .. } => SchemeKind::Local,
        }
    }

    pub fn depots(&self) -> &DepotConfig<S> {
        &self.depots
    }

    /// Level-partition internals, for diagnostics; `None` for other kinds.
    pub fn level_table(&self) -> Option<&LevelTable<S>> {
        match &self.rule {
            Rule::Level(table) => Some(table),
            _ => None,
        }
    }

    /// Ball radius of the Local partition; `None` for other kinds.
    pub fn local_radius(&self) -> Option<S> {
        match &self.rule {
            Rule::Local { radius } => Some(*radius),
            _ => None,
        }
    }

    /// The server (0-based) responsible for `p`. Total and deterministic:
    /// every point of the space maps to exactly one server.
    pub fn assign(&self, p: &Point<S>) -> usize {
        let space = self.depots.space();
        match &self.rule {
            Rule::Voronoi => {
                let mut best = S::infinity();
                let mut pick = 0;
                for (i, depot) in self.depots.depots().iter().enumerate() {
                    let d = space.dist(p, depot);
                    if d < best {
                        best = d;
                        pick = i;
                    }
                }
                pick
            }
            Rule::Level(table) => table.assign(space, p),
            Rule::Local { radius } => {
                let m = self.depots.len();
                for i in 0..(m - 1) {
                    // Strictly open balls: boundary points fall through.
                    if space.dist(p, self.depots.depot(i)) < *radius {
                        return i;
                    }
                }
                m - 1
            }
        }
    }

    /// Splits an instance's requests into the per-server sets
    /// `S_i = M_i ∩ I`, preserving request order inside each set.
    ///
    /// Panics when the instance was built on a different depot
    /// configuration.
    pub fn assign_all(&self, inst: &OfflineInstance<S>) -> Vec<Vec<usize>> {
        assert_eq!(
            inst.depots(),
            &self.depots,
            "instance and scheme share the depot configuration"
        );
        let mut sets = vec![Vec::new(); self.depots.len()];
        for (j, request) in inst.requests().iter().enumerate() {
            sets[self.assign(request)].push(j);
        }
        sets
    }
}
