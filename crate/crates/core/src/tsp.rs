//! Single-server tour oracles anchored at a depot.
//!
//! [`exact`] is a Held-Karp subset dynamic program, exponential but exact;
//! [`heuristic`] is nearest-neighbor construction followed by 2-opt, usable
//! when the request set exceeds the exact cap.

use std::fmt;

use crate::metric::{MetricError, MetricSpace, Point};
use crate::scalar::Scalar;

/// Default request-count cap for the exact solver. `2^16` subsets with
/// `16^2` transitions stay comfortably sub-second.
pub const DEFAULT_EXACT_CAP: usize = 16;

/// Number of 2-opt improvement sweeps after which the heuristic stops.
const MAX_SWEEPS: usize = 10_000;

/// A depot-anchored tour: leave the depot, visit the requests in `order`,
/// return to the depot.
#[derive(Clone, Debug, PartialEq)]
pub struct Tour<S> {
    pub depot: Point<S>,
    /// Visit order as indices into the request slice the tour was built from.
    pub order: Vec<usize>,
    /// Closed-tour length; zero for an empty order.
    pub length: S,
}

#[derive(Clone, Debug, PartialEq)]
pub enum TspError {
    /// Too many requests for the exact solver; the heuristic has no cap.
    CapExceeded {
        count: usize,
        cap: usize,
    },
    /// Tour order references a request index that does not exist.
    BadIndex {
        index: usize,
        count: usize,
    },
    Metric(MetricError),
}

impl fmt::Display for TspError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TspError::CapExceeded { count, cap } => write!(
                f,
                "{count} requests exceed the exact cap of {cap}; use the heuristic oracle"
            ),
            TspError::BadIndex { index, count } => {
                write!(f, "tour references request {index} of {count}")
            }
            TspError::Metric(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for TspError {}

impl From<MetricError> for TspError {
    fn from(e: MetricError) -> Self {
        TspError::Metric(e)
    }
}

/// Pairwise distances needed by both solvers: `depot[j] = d(x, l_j)` and
/// `between[i * n + j] = d(l_i, l_j)`.
struct DistTable<S> {
    n: usize,
    depot: Vec<S>,
    between: Vec<S>,
}

impl<S: Scalar> DistTable<S> {
    fn build(
        space: &MetricSpace<S>,
        depot: &Point<S>,
        requests: &[Point<S>],
    ) -> Result<Self, TspError> {
        let n = requests.len();
        let depot_dists = requests
            .iter()
            .map(|r| space.try_dist(depot, r))
            .collect::<Result<Vec<_>, _>>()?;
        let mut between = vec![S::zero(); n * n];
        for i in 0..n {
            for j in (i + 1)..n {
                let d = space.try_dist(&requests[i], &requests[j])?;
                between[i * n + j] = d;
                between[j * n + i] = d;
            }
        }
        Ok(DistTable {
            n,
            depot: depot_dists,
            between,
        })
    }

    fn leg(&self, from: Option<usize>, to: usize) -> S {
        match from {
            None => self.depot[to],
            Some(i) => self.between[i * self.n + to],
        }
    }

    fn order_length(&self, order: &[usize]) -> S {
        let mut total = S::zero();
        let mut prev = None;
        for &r in order {
            total = total + self.leg(prev, r);
            prev = Some(r);
        }
        if let Some(last) = prev {
            total = total + self.depot[last];
        }
        total
    }
}

/// Globally shortest depot-anchored tour over at most `cap` requests.
///
/// Held-Karp over subsets, `O(2^n n^2)` time and `O(2^n n)` space. Among
/// equal-length optima the lexicographically smallest visit order is
/// returned, so results are reproducible.
pub fn exact<S: Scalar>(
    space: &MetricSpace<S>,
    depot: &Point<S>,
    requests: &[Point<S>],
    cap: usize,
) -> Result<Tour<S>, TspError> {
    let n = requests.len();
    if n > cap {
        return Err(TspError::CapExceeded { count: n, cap });
    }
    if n == 0 {
        return Ok(Tour {
            depot: depot.clone(),
            order: Vec::new(),
            length: S::zero(),
        });
    }
    let dists = DistTable::build(space, depot, requests)?;
    let full: usize = (1 << n) - 1;

    // tail[mask * n + e] = length of the cheapest walk that starts at
    // request e (with e in mask), visits every request outside mask, and
    // returns to the depot.
    let mut tail = vec![S::infinity(); (full + 1) * n];
    for e in 0..n {
        tail[full * n + e] = dists.depot[e];
    }
    for mask in (1..full).rev() {
        for e in 0..n {
            if mask & (1 << e) == 0 {
                continue;
            }
            let mut best = S::infinity();
            for r in 0..n {
                if mask & (1 << r) != 0 {
                    continue;
                }
                let cand = dists.between[e * n + r] + tail[(mask | (1 << r)) * n + r];
                if cand < best {
                    best = cand;
                }
            }
            tail[mask * n + e] = best;
        }
    }

    // Greedy reconstruction: extending the prefix with the smallest
    // (remaining cost, index) pair at every step yields the
    // lexicographically smallest optimal order.
    let mut order = Vec::with_capacity(n);
    let mut mask = 0usize;
    let mut prev = None;
    for _ in 0..n {
        let mut best = S::infinity();
        let mut pick = usize::MAX;
        for r in 0..n {
            if mask & (1 << r) != 0 {
                continue;
            }
            let cand = dists.leg(prev, r) + tail[(mask | (1 << r)) * n + r];
            if cand < best {
                best = cand;
                pick = r;
            }
        }
        order.push(pick);
        mask |= 1 << pick;
        prev = Some(pick);
    }

    let length = dists.order_length(&order);
    Ok(Tour {
        depot: depot.clone(),
        order,
        length,
    })
}

/// Nearest-neighbor construction followed by first-improvement 2-opt.
///
/// No size cap; the result is a local optimum, never shorter than the
/// exact tour.
pub fn heuristic<S: Scalar>(
    space: &MetricSpace<S>,
    depot: &Point<S>,
    requests: &[Point<S>],
) -> Result<Tour<S>, TspError> {
    let n = requests.len();
    if n == 0 {
        return Ok(Tour {
            depot: depot.clone(),
            order: Vec::new(),
            length: S::zero(),
        });
    }
    let dists = DistTable::build(space, depot, requests)?;

    // Nearest neighbor from the depot, ties to the lowest index.
    let mut order = Vec::with_capacity(n);
    let mut visited = vec![false; n];
    let mut prev = None;
    for _ in 0..n {
        let mut best = S::infinity();
        let mut pick = usize::MAX;
        for r in 0..n {
            if visited[r] {
                continue;
            }
            let d = dists.leg(prev, r);
            if d < best {
                best = d;
                pick = r;
            }
        }
        visited[pick] = true;
        order.push(pick);
        prev = Some(pick);
    }

    // 2-opt: reverse order[i..=j] whenever it shortens the tour.
    for _ in 0..MAX_SWEEPS {
        let mut improved = false;
        for i in 0..n {
            for j in (i + 1)..n {
                if i == 0 && j == n - 1 {
                    continue; // reversing everything keeps the length
                }
                let before = if i == 0 { None } else { Some(order[i - 1]) };
                let after = if j == n - 1 { None } else { Some(order[j + 1]) };
                let old = dists.leg(before, order[i])
                    + match after {
                        None => dists.depot[order[j]],
                        Some(a) => dists.between[order[j] * n + a],
                    };
                let new = dists.leg(before, order[j])
                    + match after {
                        None => dists.depot[order[i]],
                        Some(a) => dists.between[order[i] * n + a],
                    };
                if new < old - S::TOL {
                    order[i..=j].reverse();
                    improved = true;
                }
            }
        }
        if !improved {
            break;
        }
    }

    let length = dists.order_length(&order);
    Ok(Tour {
        depot: depot.clone(),
        order,
        length,
    })
}

/// Recomputes a tour's length from scratch.
pub fn tour_length<S: Scalar>(
    space: &MetricSpace<S>,
    tour: &Tour<S>,
    requests: &[Point<S>],
) -> Result<S, TspError> {
    for &index in &tour.order {
        if index >= requests.len() {
            return Err(TspError::BadIndex {
                index,
                count: requests.len(),
            });
        }
    }
    let mut total = S::zero();
    let mut prev = &tour.depot;
    for &index in &tour.order {
        total = total + space.try_dist(prev, &requests[index])?;
        prev = &requests[index];
    }
    if !tour.order.is_empty() {
        total = total + space.try_dist(prev, &tour.depot)?;
    }
    Ok(total)
}
