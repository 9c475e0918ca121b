//! Event-driven simulation of the distributed online algorithm and the
//! online lower bound.
//!
//! Each server reacts only to releases inside its own region: it abandons
//! its current route, returns to its depot, and re-runs the exact tour
//! over everything released to it so far, revisiting already-served
//! stops. Servers never communicate, so the simulation runs one server
//! at a time.

use std::fmt;

use crate::instance::OnlineInstance;
use crate::metric::{MetricSpace, Point, SpaceKind};
use crate::offline::{self, EvalError, EvalLimits, OracleKind};
use crate::partition::PartitionScheme;
use crate::scalar::{approx_eq, Scalar};
use crate::tsp::{self, TspError};

/// One unit-speed motion segment; `end - start` equals the travelled
/// distance. Servers park in place between segments.
#[derive(Clone, Debug)]
pub struct MotionSegment<S> {
    pub start: S,
    pub end: S,
    pub from: Point<S>,
    pub to: Point<S>,
}

/// The full trajectory of one server.
#[derive(Clone, Debug)]
pub struct ServerTimeline<S> {
    pub server: usize,
    pub depot: Point<S>,
    /// Motion segments in time order, possibly with parked gaps between
    /// them; position at `t = 0` is the depot.
    pub segments: Vec<MotionSegment<S>>,
}

impl<S: Scalar> ServerTimeline<S> {
    /// Server position at time `t`.
    pub fn position_at(&self, space: &MetricSpace<S>, t: S) -> Point<S> {
        let mut last_stop = &self.depot;
        for seg in &self.segments {
            if t < seg.start {
                return last_stop.clone();
            }
            if t <= seg.end {
                let frac = (t - seg.start) / (seg.end - seg.start);
                return space
                    .interpolate(&seg.from, &seg.to, frac)
                    .expect("geodesic space");
            }
            last_stop = &seg.to;
        }
        last_stop.clone()
    }

    /// When this server's own schedule ends: the final return to its
    /// depot, ignoring how long other servers keep working. Zero for a
    /// server that never moves.
    pub fn own_return_time(&self) -> S {
        self.segments.last().map_or_else(S::zero, |seg| seg.end)
    }
}

/// Costs of one online run.
#[derive(Clone, Debug)]
pub struct OnlineReport<S> {
    /// Completion time per request, in instance order.
    pub completion_times: Vec<S>,
    /// Per-server cost: earliest time back at the depot once every
    /// request is completed.
    pub per_server: Vec<S>,
    pub total: S,
    pub timelines: Vec<ServerTimeline<S>>,
}

/// Outcome of checking the online-to-offline reduction on one instance.
///
/// The summed bound compared here does not cover the waiting built into
/// the per-server cost: a server that finishes early still pays until the
/// globally last completion, which `2 r_n` alone cannot absorb, so
/// `holds` can legitimately come out false on unbalanced instances. The
/// per-schedule form of the bound — every server's own final return is at
/// most `2 r_n` plus its own tour — is the one that holds universally;
/// see [`ServerTimeline::own_return_time`].
#[derive(Clone, Copy, Debug)]
pub struct ReductionReport<S> {
    /// Total online cost.
    pub online_total: S,
    /// `2 m r_n` plus the scheme's offline cost on the request locations.
    pub offline_bound: S,
    /// Valid lower bound on the optimal online cost.
    pub lower_bound: S,
    /// `online_total / lower_bound`, an upper estimate of the realized
    /// competitive ratio.
    pub realized_ratio: S,
    /// Whether `online_total <= offline_bound` within tolerance.
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub enum SimError {
    /// Online motion needs a geodesic space; explicit matrices have none.
    NoGeodesic,
    Eval(EvalError),
}

impl fmt::Display for SimError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SimError::NoGeodesic => {
                write!(f, "online simulation requires a euclidean or line space")
            }
            SimError::Eval(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for SimError {}

impl From<EvalError> for SimError {
    fn from(e: EvalError) -> Self {
        SimError::Eval(e)
    }
}

impl From<TspError> for SimError {
    fn from(e: TspError) -> Self {
        SimError::Eval(EvalError::from(e))
    }
}

/// Drops all motion after time `t`, cutting the segment in progress.
fn truncate<S: Scalar>(space: &MetricSpace<S>, segments: &mut Vec<MotionSegment<S>>, t: S) {
    while segments.last().is_some_and(|seg| seg.start >= t) {
        segments.pop();
    }
    if let Some(last) = segments.last_mut() {
        if last.end > t {
            let frac = (t - last.start) / (last.end - last.start);
            last.to = space
                .interpolate(&last.from, &last.to, frac)
                .expect("geodesic space");
            last.end = t;
        }
    }
}

/// Earliest time `>= t0` at which the trajectory is at the depot,
/// including pass-throughs in the middle of a segment.
fn first_time_at_depot<S: Scalar>(
    space: &MetricSpace<S>,
    segments: &[MotionSegment<S>],
    depot: &Point<S>,
    t0: S,
) -> S {
    if segments.is_empty() {
        return t0;
    }
    if space.dist(&segments[0].from, depot) <= S::TOL && t0 <= segments[0].start {
        return t0; // still parked at the depot when the horizon passes
    }
    for (i, seg) in segments.iter().enumerate() {
        // Pass through the depot while moving?
        let to_depot = space.dist(&seg.from, depot);
        if approx_eq(
            to_depot + space.dist(depot, &seg.to),
            space.dist(&seg.from, &seg.to),
        ) {
            let crossing = seg.start + to_depot;
            if crossing >= t0 - S::TOL {
                return crossing.max(t0);
            }
        }
        // Parked at the depot between this segment and the next?
        if space.dist(&seg.to, depot) <= S::TOL {
            let reached = seg.end.max(t0);
            match segments.get(i + 1) {
                None => return reached,
                Some(next) if reached <= next.start => return reached,
                _ => {}
            }
        }
    }
    unreachable!("every route ends parked at its depot")
}

/// Runs the distributed online algorithm under `scheme`.
///
/// Panics when the instance was built on a different depot configuration;
/// fails on explicit-matrix spaces and when a server accumulates more
/// requests than the exact tour cap.
pub fn run_doa<S: Scalar>(
    scheme: &PartitionScheme<S>,
    inst: &OnlineInstance<S>,
    limits: &EvalLimits,
) -> Result<OnlineReport<S>, SimError> {
    let space = inst.space();
    if space.kind() == SpaceKind::Explicit {
        return Err(SimError::NoGeodesic);
    }
    assert_eq!(
        inst.depots(),
        scheme.depots(),
        "instance and scheme share the depot configuration"
    );

    let m = inst.server_count();
    let n = inst.request_count();
    let mut by_server = vec![Vec::new(); m];
    for (j, request) in inst.requests().iter().enumerate() {
        by_server[scheme.assign(&request.location)].push(j);
    }

    let mut completion = vec![S::infinity(); n];
    let mut timelines = Vec::with_capacity(m);
    for (server, indices) in by_server.iter().enumerate() {
        let depot = scheme.depots().depot(server);
        let mut segments: Vec<MotionSegment<S>> = Vec::new();
        // (arrival time, request index); arrivals the next interruption
        // cuts off never happened.
        let mut arrivals: Vec<(S, usize)> = Vec::new();
        let mut released: Vec<usize> = Vec::new();

        let mut next = 0;
        while next < indices.len() {
            // Simultaneous releases in one region are one interruption.
            let t = inst.requests()[indices[next]].release;
            while next < indices.len() && inst.requests()[indices[next]].release == t {
                released.push(indices[next]);
                next += 1;
            }

            truncate(space, &mut segments, t);
            arrivals.retain(|&(at, _)| at <= t);
            let position = segments
                .last()
                .map_or_else(|| depot.clone(), |seg| seg.to.clone());

            let mut now = t;
            let back = space.dist(&position, depot);
            if back > S::zero() {
                segments.push(MotionSegment {
                    start: now,
                    end: now + back,
                    from: position,
                    to: depot.clone(),
                });
                now = now + back;
            }

            // Full tour over everything released so far, visited stops
            // included.
            let points: Vec<Point<S>> = released
                .iter()
                .map(|&j| inst.requests()[j].location.clone())
                .collect();
            let tour = tsp::exact(space, depot, &points, limits.exact_cap)?;
            let mut at = depot.clone();
            for &k in &tour.order {
                let stop = points[k].clone();
                let leg = space.dist(&at, &stop);
                if leg > S::zero() {
                    segments.push(MotionSegment {
                        start: now,
                        end: now + leg,
                        from: at,
                        to: stop.clone(),
                    });
                    now = now + leg;
                }
                arrivals.push((now, released[k]));
                at = stop;
            }
            let home = space.dist(&at, depot);
            if home > S::zero() {
                segments.push(MotionSegment {
                    start: now,
                    end: now + home,
                    from: at,
                    to: depot.clone(),
                });
            }
        }

        for &(at, j) in &arrivals {
            if at < completion[j] {
                completion[j] = at;
            }
        }
        timelines.push(ServerTimeline {
            server,
            depot: depot.clone(),
            segments,
        });
    }

    // Every server waits for the globally last completion before its cost
    // clock can stop.
    let horizon = completion.iter().copied().fold(S::zero(), S::max);
    let per_server: Vec<S> = timelines
        .iter()
        .map(|tl| first_time_at_depot(space, &tl.segments, &tl.depot, horizon))
        .collect();
    let total = per_server.iter().copied().sum();

    Ok(OnlineReport {
        completion_times: completion,
        per_server,
        total,
        timelines,
    })
}

/// Lower bound on the optimal online cost: every server must stay out
/// until the last release, and total return times dominate total travel.
pub fn opt_lower_bound<S: Scalar>(
    inst: &OnlineInstance<S>,
    limits: &EvalLimits,
) -> Result<S, EvalError> {
    let offline = offline::opt_offline(&inst.locations(), limits)?.total;
    let servers = S::from_usize(inst.server_count()).expect("server count fits the scalar");
    Ok(offline.max(servers * inst.last_release()))
}

/// Checks the online cost against its offline reduction bound
/// `2 m r_n + DIS(locations)` and reports the realized ratio against the
/// online lower bound.
pub fn check_reduction<S: Scalar>(
    scheme: &PartitionScheme<S>,
    inst: &OnlineInstance<S>,
    limits: &EvalLimits,
) -> Result<ReductionReport<S>, SimError> {
    let online = run_doa(scheme, inst, limits)?;
    let locations = inst.locations();
    let dis = offline::dis_cost(scheme, &locations, OracleKind::Exact, limits)?;
    let servers = S::from_usize(inst.server_count()).expect("server count fits the scalar");
    let two = S::one() + S::one();
    let offline_bound = two * servers * inst.last_release() + dis.total;
    let lower_bound = opt_lower_bound(inst, limits)?;
    let realized_ratio = if lower_bound > S::zero() {
        online.total / lower_bound
    } else if online.total <= S::TOL {
        S::one()
    } else {
        S::infinity()
    };
    Ok(ReductionReport {
        online_total: online.total,
        offline_bound,
        lower_bound,
        realized_ratio,
        holds: online.total <= offline_bound + S::TOL,
    })
}
