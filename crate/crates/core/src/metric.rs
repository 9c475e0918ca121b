//! Metric-space abstraction: distances, geodesic interpolation, and
//! metric-axiom validation.
//!
//! Three families of spaces are supported: `d`-dimensional Euclidean
//! space, the real line, and finite spaces given by an explicit distance
//! matrix. Explicit spaces let tests exercise adversarial metrics that
//! no Euclidean embedding produces.

use std::fmt;

use crate::scalar::{approx_eq, Scalar};

/// Tag identifying the space family a [`MetricSpace`] or [`Point`] belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SpaceKind {
    Euclidean,
    Line,
    Explicit,
}

impl fmt::Display for SpaceKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpaceKind::Euclidean => write!(f, "euclidean"),
            SpaceKind::Line => write!(f, "line"),
            SpaceKind::Explicit => write!(f, "explicit"),
        }
    }
}

/// A point of a metric space.
#[derive(Clone, Debug, PartialEq)]
pub enum Point<S> {
    /// Coordinates in `d`-dimensional Euclidean space.
    Euclidean(Vec<S>),
    /// Position on the real line.
    Line(S),
    /// Index into the finite universe of an explicit distance matrix.
    Explicit(usize),
}

impl<S: Scalar> Point<S> {
    pub fn euclidean(coords: Vec<S>) -> Self {
        Point::Euclidean(coords)
    }

    pub fn line(x: S) -> Self {
        Point::Line(x)
    }

    pub fn index(i: usize) -> Self {
        Point::Explicit(i)
    }

    pub fn kind(&self) -> SpaceKind {
        match self {
            Point::Euclidean(_) => SpaceKind::Euclidean,
            Point::Line(_) => SpaceKind::Line,
            Point::Explicit(_) => SpaceKind::Explicit,
        }
    }

    /// True when every coordinate is a finite number.
    pub fn is_finite(&self) -> bool {
        match self {
            Point::Euclidean(coords) => coords.iter().all(|c| c.is_finite()),
            Point::Line(x) => x.is_finite(),
            Point::Explicit(_) => true,
        }
    }
}

/// A metric space over which depots, requests, and tours live.
#[derive(Clone, Debug, PartialEq)]
pub enum MetricSpace<S> {
    /// `R^dim` with the Euclidean distance.
    Euclidean { dim: usize },
    /// The real line with `d(p, q) = |p - q|`.
    Line,
    /// A finite point universe with distances read from a matrix.
    ///
    /// The matrix is expected to be symmetric and nonnegative with a zero
    /// diagonal and to satisfy the triangle inequality; [`MetricSpace::validate`]
    /// checks all of that exhaustively.
    Explicit { matrix: Vec<Vec<S>> },
}

/// Input errors raised by distance and interpolation queries.
#[derive(Clone, Debug, PartialEq)]
pub enum MetricError {
    /// Euclidean point with the wrong number of coordinates.
    DimensionMismatch { expected: usize, got: usize },
    /// Explicit point index outside the matrix universe.
    IndexOutOfRange { index: usize, universe: usize },
    /// Point from a different space family.
    KindMismatch { expected: SpaceKind, got: SpaceKind },
    /// Interpolation requested in a space with no canonical geodesic.
    NoGeodesic,
    /// Interpolation fraction outside `[0, 1]`.
    FractionOutOfRange { s: f64 },
    /// Coordinates must be finite.
    NonFiniteCoordinate,
}

impl fmt::Display for MetricError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MetricError::DimensionMismatch { expected, got } => {
                write!(
                    f,
                    "point has {got} coordinates, space has dimension {expected}"
                )
            }
            MetricError::IndexOutOfRange { index, universe } => {
                write!(f, "point index {index} outside universe of size {universe}")
            }
            MetricError::KindMismatch { expected, got } => {
                write!(f, "point of kind {got} used in {expected} space")
            }
            MetricError::NoGeodesic => {
                write!(f, "explicit-matrix spaces have no canonical geodesic")
            }
            MetricError::FractionOutOfRange { s } => {
                write!(f, "interpolation fraction {s} outside [0, 1]")
            }
            MetricError::NonFiniteCoordinate => write!(f, "coordinates must be finite"),
        }
    }
}

impl std::error::Error for MetricError {}

/// A single metric-axiom violation found by [`MetricSpace::validate`].
///
/// All indices are 0-based positions into the explicit matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MetricViolation {
    /// Row `row` has `len` entries but the matrix has `dim` rows.
    NonSquare { row: usize, len: usize, dim: usize },
    /// Entry `(i, j)` is negative or non-finite.
    BadEntry { i: usize, j: usize },
    /// Diagonal entry `(i, i)` is nonzero.
    NonzeroDiagonal { i: usize },
    /// Entries `(i, j)` and `(j, i)` differ.
    Asymmetric { i: usize, j: usize },
    /// `d(i, k) > d(i, j) + d(j, k)`.
    Triangle { i: usize, j: usize, k: usize },
    /// Euclidean dimension must be at least 1.
    ZeroDimension,
}

impl fmt::Display for MetricViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MetricViolation::NonSquare { row, len, dim } => {
                write!(f, "row {row} has {len} entries, expected {dim}")
            }
            MetricViolation::BadEntry { i, j } => {
                write!(f, "entry ({i}, {j}) is negative or not finite")
            }
            MetricViolation::NonzeroDiagonal { i } => {
                write!(f, "diagonal entry ({i}, {i}) is nonzero")
            }
            MetricViolation::Asymmetric { i, j } => {
                write!(f, "asymmetric entries at ({i}, {j})")
            }
            MetricViolation::Triangle { i, j, k } => {
                write!(f, "triangle inequality violated for ({i}, {j}, {k})")
            }
            MetricViolation::ZeroDimension => write!(f, "euclidean dimension must be >= 1"),
        }
    }
}

impl<S: Scalar> MetricSpace<S> {
    pub fn euclidean(dim: usize) -> Self {
        MetricSpace::Euclidean { dim }
    }

    pub fn line() -> Self {
        MetricSpace::Line
    }

    pub fn explicit(matrix: Vec<Vec<S>>) -> Self {
        MetricSpace::Explicit { matrix }
    }

    pub fn kind(&self) -> SpaceKind {
        match self {
            MetricSpace::Euclidean { .. } => SpaceKind::Euclidean,
            MetricSpace::Line => SpaceKind::Line,
            MetricSpace::Explicit { .. } => SpaceKind::Explicit,
        }
    }

    /// Dimension for Euclidean spaces, universe size for explicit ones,
    /// 1 for the line.
    pub fn dim(&self) -> usize {
        match self {
            MetricSpace::Euclidean { dim } => *dim,
            MetricSpace::Line => 1,
            MetricSpace::Explicit { matrix } => matrix.len(),
        }
    }

    /// Checks that `p` is a well-formed point of this space.
    pub fn contains(&self, p: &Point<S>) -> Result<(), MetricError> {
        if !p.is_finite() {
            return Err(MetricError::NonFiniteCoordinate);
        }
        match (self, p) {
            (MetricSpace::Euclidean { dim }, Point::Euclidean(coords)) => {
                if coords.len() == *dim {
                    Ok(())
                } else {
                    Err(MetricError::DimensionMismatch {
                        expected: *dim,
                        got: coords.len(),
                    })
                }
            }
            (MetricSpace::Line, Point::Line(_)) => Ok(()),
            (MetricSpace::Explicit { matrix }, Point::Explicit(i)) => {
                if *i < matrix.len() {
                    Ok(())
                } else {
                    Err(MetricError::IndexOutOfRange {
                        index: *i,
                        universe: matrix.len(),
                    })
                }
            }
            _ => Err(MetricError::KindMismatch {
                expected: self.kind(),
                got: p.kind(),
            }),
        }
    }

    /// Distance between two validated points of this space.
    ///
    /// Panics when a point does not belong to the space; use
    /// [`MetricSpace::try_dist`] for checked access.
    pub fn dist(&self, p: &Point<S>, q: &Point<S>) -> S {
        self.try_dist(p, q).expect("points belong to the space")
    }

    /// Distance between two points, checking that both belong to the space.
    pub fn try_dist(&self, p: &Point<S>, q: &Point<S>) -> Result<S, MetricError> {
        self.contains(p)?;
        self.contains(q)?;
        Ok(match (self, p, q) {
            (MetricSpace::Euclidean { .. }, Point::Euclidean(a), Point::Euclidean(b)) => a
                .iter()
                .zip(b.iter())
                .map(|(&x, &y)| (x - y) * (x - y))
                .sum::<S>()
                .sqrt(),
            (MetricSpace::Line, Point::Line(a), Point::Line(b)) => (*a - *b).abs(),
            (MetricSpace::Explicit { matrix }, Point::Explicit(i), Point::Explicit(j)) => {
                matrix[*i][*j]
            }
            _ => unreachable!("contains() already rejected mismatched kinds"),
        })
    }

    /// Point at fraction `s` along the straight segment from `p` to `q`.
    ///
    /// Defined for the geodesic spaces (Euclidean and line); explicit
    /// matrices have no canonical geodesic and report [`MetricError::NoGeodesic`].
    pub fn interpolate(&self, p: &Point<S>, q: &Point<S>, s: S) -> Result<Point<S>, MetricError> {
        self.contains(p)?;
        self.contains(q)?;
        if s < S::zero() || s > S::one() {
            return Err(MetricError::FractionOutOfRange {
                s: s.to_f64().unwrap_or(f64::NAN),
            });
        }
        match (self, p, q) {
            (MetricSpace::Euclidean { .. }, Point::Euclidean(a), Point::Euclidean(b)) => {
                let coords = a
                    .iter()
                    .zip(b.iter())
                    .map(|(&x, &y)| x + s * (y - x))
                    .collect();
                Ok(Point::Euclidean(coords))
            }
            (MetricSpace::Line, Point::Line(a), Point::Line(b)) => {
                Ok(Point::Line(*a + s * (*b - *a)))
            }
            (MetricSpace::Explicit { .. }, _, _) => Err(MetricError::NoGeodesic),
            _ => unreachable!("contains() already rejected mismatched kinds"),
        }
    }

    /// True when `mid` lies on a shortest path from `p` to `q`.
    pub fn between(&self, p: &Point<S>, mid: &Point<S>, q: &Point<S>) -> bool {
        approx_eq(self.dist(p, mid) + self.dist(mid, q), self.dist(p, q))
    }

    /// Checks the metric axioms and returns every violation found.
    ///
    /// Explicit matrices are checked exhaustively (shape, nonnegativity,
    /// zero diagonal, symmetry, triangle inequality over all triples).
    /// Euclidean and line spaces satisfy the axioms by construction, so
    /// only structure is checked. An empty report means the space is valid.
    pub fn validate(&self) -> Vec<MetricViolation> {
        let mut report = Vec::new();
        match self {
            MetricSpace::Euclidean { dim } => {
                if *dim == 0 {
                    report.push(MetricViolation::ZeroDimension);
                }
            }
            MetricSpace::Line => {}
            MetricSpace::Explicit { matrix } => {
                let n = matrix.len();
                for (i, row) in matrix.iter().enumerate() {
                    if row.len() != n {
                        report.push(MetricViolation::NonSquare {
                            row: i,
                            len: row.len(),
                            dim: n,
                        });
                    }
                }
                if !report.is_empty() {
                    // Entry checks below index with [i][j]; bail before that.
                    return report;
                }
                for i in 0..n {
                    for j in 0..n {
                        let d = matrix[i][j];
                        if !d.is_finite() || d < S::zero() {
                            report.push(MetricViolation::BadEntry { i, j });
                        }
                    }
                }
                for i in 0..n {
                    if matrix[i][i] != S::zero() {
                        report.push(MetricViolation::NonzeroDiagonal { i });
                    }
                }
                for i in 0..n {
                    for j in (i + 1)..n {
                        if matrix[i][j] != matrix[j][i] {
                            report.push(MetricViolation::Asymmetric { i, j });
                        }
                    }
                }
                for i in 0..n {
                    for k in (i + 1)..n {
                        for j in 0..n {
                            if j == i || j == k {
                                continue;
                            }
                            if matrix[i][k] > matrix[i][j] + matrix[j][k] + S::TOL {
                                report.push(MetricViolation::Triangle { i, j, k });
                            }
                        }
                    }
                }
            }
        }
        report
    }
}
