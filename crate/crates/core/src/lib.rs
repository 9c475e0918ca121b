//! Static partition schemes for distributed multi-depot routing.
//!
//! A fleet of servers, one per depot, must collectively visit a set of
//! requests and return home, minimizing total travelled distance — with
//! no communication between servers. A static partition of the metric
//! space, fixed from the depot locations alone, makes that possible:
//! each server tours exactly the requests that fall in its region.
//!
//! The crate provides:
//!
//! * [`metric`] — Euclidean, line, and explicit-matrix metric spaces;
//! * [`instance`] — problem instances, generators for adversarial and
//!   random families;
//! * [`io`] — the instance file format;
//! * [`tsp`] — exact (Held-Karp) and 2-opt heuristic depot-anchored
//!   tour oracles;
//! * [`partition`] — the Voronoi, Level, and Local partition schemes;
//! * [`offline`] — distributed cost, brute-force optimal assignment,
//!   and approximation ratios;
//! * [`online`] — unit-speed simulation of the distributed online
//!   algorithm with release dates, and the online lower bound.
//!
//! All geometry is generic over the scalar type via [`scalar::Scalar`];
//! the aliases below fix `f64`, which the CLI and file formats use.

pub mod instance;
pub mod io;
pub mod metric;
pub mod offline;
pub mod online;
pub mod partition;
pub mod scalar;
pub mod tsp;

pub use scalar::Scalar;

/// Default scalar type used by the CLI and the instance file format.
pub type Real = f64;

pub type Point = metric::Point<Real>;
pub type MetricSpace = metric::MetricSpace<Real>;
pub type DepotConfig = instance::DepotConfig<Real>;
pub type OfflineInstance = instance::OfflineInstance<Real>;
pub type OnlineInstance = instance::OnlineInstance<Real>;
pub type FamilyParams = instance::FamilyParams<Real>;
pub type Tour = tsp::Tour<Real>;
pub type LevelTable = partition::LevelTable<Real>;
pub type PartitionScheme = partition::PartitionScheme<Real>;
pub type CostReport = offline::CostReport<Real>;
pub type OptResult = offline::OptResult<Real>;
pub type RatioReport = offline::RatioReport<Real>;
pub type OnlineReport = online::OnlineReport<Real>;
pub type ReductionReport = online::ReductionReport<Real>;
