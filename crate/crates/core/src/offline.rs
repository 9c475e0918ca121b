//! Offline cost evaluation: the distributed cost of a partition scheme,
//! the exact optimal assignment, and their ratio.
//!
//! The optimum enumerates every request-to-server assignment, so it is an
//! oracle for desk-scale instances, not a solver. Per-server tour costs
//! come from a subset dynamic program evaluated once per server, which
//! keeps the enumeration itself cheap; a running lower bound prunes
//! branches that are strictly worse than the incumbent and cannot change
//! the result.

use std::fmt;

use crate::instance::OfflineInstance;
use crate::metric::{MetricSpace, Point};
use crate::partition::{PartitionScheme, SchemeKind};
use crate::scalar::Scalar;
use crate::tsp::{self, TspError};

/// Which tour oracle scores the per-server request sets.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OracleKind {
    Exact,
    Heuristic,
}

impl fmt::Display for OracleKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OracleKind::Exact => write!(f, "exact"),
            OracleKind::Heuristic => write!(f, "heuristic"),
        }
    }
}

/// Resource caps for the exact oracles.
#[derive(Clone, Copy, Debug)]
pub struct EvalLimits {
    /// Largest request set the exact tour solver accepts.
    pub exact_cap: usize,
    /// Largest number of assignments `m^n` the optimum may enumerate.
    pub enumeration_budget: u64,
}

impl Default for EvalLimits {
    fn default() -> Self {
        EvalLimits {
            exact_cap: tsp::DEFAULT_EXACT_CAP,
            enumeration_budget: 10_000_000,
        }
    }
}

/// Per-server and total tour cost of a scheme on one instance.
#[derive(Clone, Debug)]
pub struct CostReport<S> {
    pub scheme: SchemeKind,
    pub oracle: OracleKind,
    pub per_server: Vec<S>,
    pub total: S,
}

/// The optimal assignment found by exhaustive enumeration.
#[derive(Clone, Debug)]
pub struct OptResult<S> {
    /// Server index (0-based) per request; lexicographically smallest
    /// among the optima.
    pub assignment: Vec<usize>,
    pub total: S,
    /// Complete assignments actually scored (pruning skips the rest).
    pub enumerated: u64,
}

/// Distributed cost, optimal cost, and their ratio.
#[derive(Clone, Copy, Debug)]
pub struct RatioReport<S> {
    pub dis: S,
    pub opt: S,
    /// `dis / opt`; 1 when both costs are zero, infinite when only the
    /// optimum is zero.
    pub ratio: S,
}

#[derive(Clone, Debug, PartialEq)]
pub enum EvalError {
    /// A request set exceeds the exact tour solver's cap.
    CapExceeded {
        count: usize,
        cap: usize,
    },
    /// `m^n` exceeds the enumeration budget.
    BudgetExceeded {
        servers: usize,
        requests: usize,
        budget: u64,
    },
    Tsp(TspError),
}

impl fmt::Display for EvalError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EvalError::CapExceeded { count, cap } => {
                write!(f, "{count} requests exceed the exact cap of {cap}")
            }
            EvalError::BudgetExceeded {
                servers,
                requests,
                budget,
            } => write!(
                f,
                "{servers}^{requests} assignments exceed the enumeration budget of {budget}"
            ),
            EvalError::Tsp(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for EvalError {}

impl From<TspError> for EvalError {
    fn from(e: TspError) -> Self {
        match e {
            TspError::CapExceeded { count, cap } => EvalError::CapExceeded { count, cap },
            other => EvalError::Tsp(other),
        }
    }
}

/// Total tour length when every server optimally tours the requests its
/// region caught: assign, then one tour per server.
pub fn dis_cost<S: Scalar>(
    scheme: &PartitionScheme<S>,
    inst: &OfflineInstance<S>,
    oracle: OracleKind,
    limits: &EvalLimits,
) -> Result<CostReport<S>, EvalError> {
    let space = inst.space();
    let mut per_server = Vec::with_capacity(inst.server_count());
    for (server, set) in scheme.assign_all(inst).into_iter().enumerate() {
        let points: Vec<Point<S>> = set.iter().map(|&j| inst.requests()[j].clone()).collect();
        let depot = scheme.depots().depot(server);
        let tour = match oracle {
            OracleKind::Exact => tsp::exact(space, depot, &points, limits.exact_cap)?,
            OracleKind::Heuristic => tsp::heuristic(space, depot, &points)?,
        };
        per_server.push(tour.length);
    }
    let total = per_server.iter().copied().sum();
    Ok(CostReport {
        scheme: scheme.kind(),
        oracle,
        per_server,
        total,
    })
}

/// Optimal closed-tour cost of every request subset for one server.
///
/// A forward subset dynamic program: `paths[mask ¦ e]` is the cheapest
/// walk from the depot through exactly `mask` ending at `e`; closing each
/// mask back to the depot yields the table. This is a separate algebraic
/// route from the solver in [`tsp`], so the two can cross-check each other.
fn subset_costs<S: Scalar>(
    space: &MetricSpace<S>,
    depot: &Point<S>,
    requests: &[Point<S>],
) -> Result<Vec<S>, EvalError> {
    let n = requests.len();
    let from_depot: Vec<S> = requests
        .iter()
        .map(|r| space.try_dist(depot, r))
        .collect::<Result<_, _>>()
        .map_err(TspError::Metric)?;
    let mut between = vec![S::zero(); n * n];
    for i in 0..n {
        for j in (i + 1)..n {
            let d = space
                .try_dist(&requests[i], &requests[j])
                .map_err(TspError::Metric)?;
            between[i * n + j] = d;
            between[j * n + i] = d;
        }
    }

    let size = 1usize << n;
    let mut paths = vec![S::infinity(); size * n];
    for e in 0..n {
        paths[(1 << e) * n + e] = from_depot[e];
    }
    for mask in 1..size {
        for e in 0..n {
            if mask & (1 << e) == 0 || mask == (1 << e) {
                continue;
            }
            let rest = mask ^ (1 << e);
            let mut best = S::infinity();
            for r in 0..n {
                if rest & (1 << r) == 0 {
                    continue;
                }
                let cand = paths[rest * n + r] + between[r * n + e];
                if cand < best {
                    best = cand;
                }
            }
            paths[mask * n + e] = best;
        }
    }

    let mut cost = vec![S::zero(); size];
    for mask in 1..size {
        let mut best = S::infinity();
        for e in 0..n {
            if mask & (1 << e) == 0 {
                continue;
            }
            let cand = paths[mask * n + e] + from_depot[e];
            if cand < best {
                best = cand;
            }
        }
        cost[mask] = best;
    }
    Ok(cost)
}

struct Enumeration<'a, S> {
    costs: &'a [Vec<S>],
    servers: usize,
    requests: usize,
    masks: Vec<usize>,
    assignment: Vec<usize>,
    best: S,
    best_assignment: Vec<usize>,
    enumerated: u64,
}

impl<S: Scalar> Enumeration<'_, S> {
    fn run(&mut self, next: usize, running: S) {
        if next == self.requests {
            self.enumerated += 1;
            if running < self.best {
                self.best = running;
                self.best_assignment.copy_from_slice(&self.assignment);
            }
            return;
        }
        for server in 0..self.servers {
            let old = self.masks[server];
            let new = old | (1 << next);
            let extended = running + (self.costs[server][new] - self.costs[server][old]);
            // Subset tour costs grow with the subset, so `extended` bounds
            // every completion of this branch from below; branches beyond
            // the incumbent plus tolerance cannot hold an optimum.
            if extended > self.best + S::TOL {
                continue;
            }
            self.masks[server] = new;
            self.assignment[next] = server;
            self.run(next + 1, extended);
            self.masks[server] = old;
        }
    }
}

/// Exact optimum over all `m^n` request-to-server assignments.
///
/// Ties break toward the lexicographically smallest assignment vector.
pub fn opt_offline<S: Scalar>(
    inst: &OfflineInstance<S>,
    limits: &EvalLimits,
) -> Result<OptResult<S>, EvalError> {
    let m = inst.server_count();
    let n = inst.request_count();
    if n == 0 {
        return Ok(OptResult {
            assignment: Vec::new(),
            total: S::zero(),
            enumerated: 1,
        });
    }
    if n > limits.exact_cap {
        return Err(EvalError::CapExceeded {
            count: n,
            cap: limits.exact_cap,
        });
    }
    if (m as f64).powi(n as i32) > limits.enumeration_budget as f64 {
        return Err(EvalError::BudgetExceeded {
            servers: m,
            requests: n,
            budget: limits.enumeration_budget,
        });
    }

    let space = inst.space();
    let costs = (0..m)
        .map(|i| subset_costs(space, inst.depots().depot(i), inst.requests()))
        .collect::<Result<Vec<_>, _>>()?;

    let mut search = Enumeration {
        costs: &costs,
        servers: m,
        requests: n,
        masks: vec![0; m],
        assignment: vec![0; n],
        best: S::infinity(),
        best_assignment: vec![0; n],
        enumerated: 0,
    };
    search.run(0, S::zero());

    Ok(OptResult {
        assignment: search.best_assignment,
        total: search.best,
        enumerated: search.enumerated,
    })
}

/// Cheap lower bound on the optimum: someone has to make the round trip
/// to the request farthest from every depot. Usable as a stand-in when
/// enumeration is over budget.
pub fn singleton_lower_bound<S: Scalar>(inst: &OfflineInstance<S>) -> S {
    let space = inst.space();
    let mut bound = S::zero();
    for request in inst.requests() {
        let nearest = inst
            .depots()
            .depots()
            .iter()
            .map(|depot| space.dist(request, depot))
            .fold(S::infinity(), S::min);
        bound = bound.max(nearest + nearest);
    }
    bound
}

/// `DIS / OPT` with the exact oracle on both sides.
pub fn approx_ratio<S: Scalar>(
    scheme: &PartitionScheme<S>,
    inst: &OfflineInstance<S>,
    limits: &EvalLimits,
) -> Result<RatioReport<S>, EvalError> {
    let dis = dis_cost(scheme, inst, OracleKind::Exact, limits)?.total;
    let opt = opt_offline(inst, limits)?.total;
    let ratio = if opt > S::zero() {
        dis / opt
    } else if dis <= S::TOL {
        S::one() // both algorithms are optimal on the empty-work instance
    } else {
        S::infinity()
    };
    Ok(RatioReport { dis, opt, ratio })
}
