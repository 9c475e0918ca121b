//! Instance file format: load, save, and validation.
//!
//! The format is plain line-oriented text. `#` starts a comment and blank
//! lines are ignored. Sections appear in this order:
//!
//! ```text
//! space euclidean 2          # or `space line` / `space explicit N`
//! family line_voronoi        # optional metadata tag
//! matrix                     # explicit spaces only: N rows of N reals
//! 0 1
//! 1 0
//! depots 2                   # count, then one point per line
//! 0 1
//! 0 2
//! requests 1
//! 5 1
//! release_dates              # optional: one real per request
//! 0.5
//! ```
//!
//! Points are coordinate rows for Euclidean spaces, single reals for the
//! line, and 1-based universe indices for explicit spaces. Reals are
//! written with 17 significant digits, so `load(save(x))` reproduces `x`
//! bit-exactly. A file with a `release_dates` section is an online
//! instance; without one it is offline.

use std::fmt;
use std::fs;
use std::path::Path;

use crate::instance::{DepotConfig, InstanceError, OfflineInstance, OnlineInstance, OnlineRequest};
use crate::metric::{MetricSpace, MetricViolation, Point, SpaceKind};

/// Errors raised while reading or writing instance files.
#[derive(Debug)]
pub enum IoError {
    Io(std::io::Error),
    /// Malformed file; `line` is 1-based.
    Parse {
        line: usize,
        message: String,
    },
    /// The file parsed but the instance violates a structural invariant.
    Invalid(InstanceError),
    /// The file's explicit matrix violates the metric axioms.
    Metric(Vec<MetricViolation>),
}

impl fmt::Display for IoError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IoError::Io(e) => write!(f, "{e}"),
            IoError::Parse { line, message } => write!(f, "line {line}: {message}"),
            IoError::Invalid(e) => write!(f, "invalid instance: {e}"),
            IoError::Metric(violations) => {
                write!(f, "matrix is not a metric:")?;
                for v in violations {
                    write!(f, " {v};")?;
                }
                Ok(())
            }
        }
    }
}

impl std::error::Error for IoError {}

impl From<std::io::Error> for IoError {
    fn from(e: std::io::Error) -> Self {
        IoError::Io(e)
    }
}

impl From<InstanceError> for IoError {
    fn from(e: InstanceError) -> Self {
        IoError::Invalid(e)
    }
}

/// A parsed instance file.
#[derive(Clone, Debug, PartialEq)]
pub struct LoadedInstance {
    /// Optional family tag recorded by the generator.
    pub family: Option<String>,
    pub data: InstanceData,
}

/// Offline or online payload, decided by the presence of `release_dates`.
#[derive(Clone, Debug, PartialEq)]
pub enum InstanceData {
    Offline(OfflineInstance<f64>),
    Online(OnlineInstance<f64>),
}

impl LoadedInstance {
    pub fn server_count(&self) -> usize {
        match &self.data {
            InstanceData::Offline(i) => i.server_count(),
            InstanceData::Online(i) => i.server_count(),
        }
    }

    pub fn request_count(&self) -> usize {
        match &self.data {
            InstanceData::Offline(i) => i.request_count(),
            InstanceData::Online(i) => i.request_count(),
        }
    }

    pub fn depots(&self) -> &DepotConfig<f64> {
        match &self.data {
            InstanceData::Offline(i) => i.depots(),
            InstanceData::Online(i) => i.depots(),
        }
    }

    /// The offline view: online instances are projected to their request
    /// locations.
    pub fn to_offline(&self) -> OfflineInstance<f64> {
        match &self.data {
            InstanceData::Offline(i) => i.clone(),
            InstanceData::Online(i) => i.locations(),
        }
    }
}

/// A real with 17 significant digits; parses back to the same bits.
fn fmt_real(x: f64) -> String {
    format!("{x:.16e}")
}

fn write_point(out: &mut String, p: &Point<f64>) {
    match p {
        Point::Euclidean(coords) => {
            let row: Vec<String> = coords.iter().map(|&c| fmt_real(c)).collect();
            out.push_str(&row.join(" "));
        }
        Point::Line(x) => out.push_str(&fmt_real(*x)),
        Point::Explicit(i) => out.push_str(&(i + 1).to_string()),
    }
    out.push('\n');
}

fn write_header(out: &mut String, space: &MetricSpace<f64>, family: Option<&str>) {
    match space {
        MetricSpace::Euclidean { dim } => out.push_str(&format!("space euclidean {dim}\n")),
        MetricSpace::Line => out.push_str("space line\n"),
        MetricSpace::Explicit { matrix } => {
            out.push_str(&format!("space explicit {}\n", matrix.len()));
        }
    }
    if let Some(family) = family {
        out.push_str(&format!("family {family}\n"));
    }
    if let MetricSpace::Explicit { matrix } = space {
        out.push_str("matrix\n");
        for row in matrix {
            let cells: Vec<String> = row.iter().map(|&c| fmt_real(c)).collect();
            out.push_str(&cells.join(" "));
            out.push('\n');
        }
    }
}

/// Renders an offline instance in the file format.
pub fn format_offline(inst: &OfflineInstance<f64>, family: Option<&str>) -> String {
    let mut out = String::new();
    write_header(&mut out, inst.space(), family);
    out.push_str(&format!("depots {}\n", inst.server_count()));
    for depot in inst.depots().depots() {
        write_point(&mut out, depot);
    }
    out.push_str(&format!("requests {}\n", inst.request_count()));
    for request in inst.requests() {
        write_point(&mut out, request);
    }
    out
}

/// Renders an online instance in the file format.
pub fn format_online(inst: &OnlineInstance<f64>, family: Option<&str>) -> String {
    let mut out = String::new();
    write_header(&mut out, inst.space(), family);
    out.push_str(&format!("depots {}\n", inst.server_count()));
    for depot in inst.depots().depots() {
        write_point(&mut out, depot);
    }
    out.push_str(&format!("requests {}\n", inst.request_count()));
    for request in inst.requests() {
        write_point(&mut out, &request.location);
    }
    out.push_str("release_dates\n");
    for request in inst.requests() {
        out.push_str(&fmt_real(request.release));
        out.push('\n');
    }
    out
}

pub fn save_offline(
    inst: &OfflineInstance<f64>,
    family: Option<&str>,
    path: &Path,
) -> Result<(), IoError> {
    fs::write(path, format_offline(inst, family))?;
    Ok(())
}

pub fn save_online(
    inst: &OnlineInstance<f64>,
    family: Option<&str>,
    path: &Path,
) -> Result<(), IoError> {
    fs::write(path, format_online(inst, family))?;
    Ok(())
}

pub fn load(path: &Path) -> Result<LoadedInstance, IoError> {
    parse(&fs::read_to_string(path)?)
}

struct Lines<'a> {
    // (1-based line number, whitespace tokens)
    rows: Vec<(usize, Vec<&'a str>)>,
    next: usize,
}

impl<'a> Lines<'a> {
    fn new(text: &'a str) -> Self {
        let rows = text
            .lines()
            .enumerate()
            .filter_map(|(i, raw)| {
                let content = raw.split('#').next().unwrap_or("").trim();
                if content.is_empty() {
                    None
                } else {
                    Some((i + 1, content.split_whitespace().collect()))
                }
            })
            .collect();
        Lines { rows, next: 0 }
    }

    fn peek(&self) -> Option<&(usize, Vec<&'a str>)> {
        self.rows.get(self.next)
    }

    fn take(&mut self, expected: &str) -> Result<(usize, Vec<&'a str>), IoError> {
        match self.rows.get(self.next) {
            Some(row) => {
                self.next += 1;
                Ok((row.0, row.1.clone()))
            }
            None => Err(IoError::Parse {
                line: self.rows.last().map(|r| r.0 + 1).unwrap_or(1),
                message: format!("unexpected end of file, expected {expected}"),
            }),
        }
    }
}

fn parse_real(line: usize, token: &str, what: &str) -> Result<f64, IoError> {
    token.parse::<f64>().map_err(|_| IoError::Parse {
        line,
        message: format!("{what}: cannot parse `{token}` as a real"),
    })
}

fn parse_count(line: usize, token: &str, what: &str) -> Result<usize, IoError> {
    token.parse::<usize>().map_err(|_| IoError::Parse {
        line,
        message: format!("{what}: cannot parse `{token}` as a count"),
    })
}

fn parse_point(
    line: usize,
    tokens: &[&str],
    space: &MetricSpace<f64>,
    what: &str,
) -> Result<Point<f64>, IoError> {
    match space {
        MetricSpace::Euclidean { dim } => {
            if tokens.len() != *dim {
                return Err(IoError::Parse {
                    line,
                    message: format!("{what}: expected {dim} coordinates, found {}", tokens.len()),
                });
            }
            let coords = tokens
                .iter()
                .map(|t| parse_real(line, t, what))
                .collect::<Result<Vec<_>, _>>()?;
            Ok(Point::Euclidean(coords))
        }
        MetricSpace::Line => {
            if tokens.len() != 1 {
                return Err(IoError::Parse {
                    line,
                    message: format!("{what}: expected 1 coordinate, found {}", tokens.len()),
                });
            }
            Ok(Point::Line(parse_real(line, tokens[0], what)?))
        }
        MetricSpace::Explicit { matrix } => {
            if tokens.len() != 1 {
                return Err(IoError::Parse {
                    line,
                    message: format!("{what}: expected 1 index, found {}", tokens.len()),
                });
            }
            let index = parse_count(line, tokens[0], what)?;
            if index == 0 || index > matrix.len() {
                return Err(IoError::Parse {
                    line,
                    message: format!("{what}: index {index} outside 1..={}", matrix.len()),
                });
            }
            Ok(Point::Explicit(index - 1))
        }
    }
}

/// Parses the file format from a string. See the module docs for the
/// grammar.
pub fn parse(text: &str) -> Result<LoadedInstance, IoError> {
    let mut lines = Lines::new(text);

    // space <kind> [dim]
    let (line, tokens) = lines.take("`space` header")?;
    if tokens[0] != "space" {
        return Err(IoError::Parse {
            line,
            message: format!("expected `space`, found `{}`", tokens[0]),
        });
    }
    let kind = match tokens.get(1) {
        Some(&"euclidean") => SpaceKind::Euclidean,
        Some(&"line") => SpaceKind::Line,
        Some(&"explicit") => SpaceKind::Explicit,
        other => {
            return Err(IoError::Parse {
                line,
                message: format!(
                    "space kind must be euclidean, line, or explicit (found `{}`)",
                    other.unwrap_or(&"")
                ),
            })
        }
    };
    let dim = match kind {
        SpaceKind::Line => {
            if tokens.len() > 2 {
                return Err(IoError::Parse {
                    line,
                    message: "line spaces take no dimension".to_string(),
                });
            }
            1
        }
        _ => {
            let token = tokens.get(2).ok_or_else(|| IoError::Parse {
                line,
                message: "missing dimension".to_string(),
            })?;
            let dim = parse_count(line, token, "space dimension")?;
            if dim == 0 {
                return Err(IoError::Parse {
                    line,
                    message: "dimension must be at least 1".to_string(),
                });
            }
            dim
        }
    };

    // family <tag> (optional)
    let mut family = None;
    if let Some((_, tokens)) = lines.peek() {
        if tokens[0] == "family" {
            let (line, tokens) = lines.take("family")?;
            if tokens.len() != 2 {
                return Err(IoError::Parse {
                    line,
                    message: "family takes exactly one tag".to_string(),
                });
            }
            family = Some(tokens[1].to_string());
        }
    }

    // matrix rows (explicit only)
    let space = match kind {
        SpaceKind::Euclidean => MetricSpace::euclidean(dim),
        SpaceKind::Line => MetricSpace::line(),
        SpaceKind::Explicit => {
            let (line, tokens) = lines.take("`matrix`")?;
            if tokens != ["matrix"] {
                return Err(IoError::Parse {
                    line,
                    message: format!("expected `matrix`, found `{}`", tokens.join(" ")),
                });
            }
            let mut matrix = Vec::with_capacity(dim);
            for _ in 0..dim {
                let (line, tokens) = lines.take("matrix row")?;
                if tokens.len() != dim {
                    return Err(IoError::Parse {
                        line,
                        message: format!(
                            "matrix row: expected {dim} entries, found {}",
                            tokens.len()
                        ),
                    });
                }
                let row = tokens
                    .iter()
                    .map(|t| parse_real(line, t, "matrix entry"))
                    .collect::<Result<Vec<_>, _>>()?;
                matrix.push(row);
            }
            let space = MetricSpace::explicit(matrix);
            let violations = space.validate();
            if !violations.is_empty() {
                return Err(IoError::Metric(violations));
            }
            space
        }
    };

    // depots <count> + rows
    let (line, tokens) = lines.take("`depots` section")?;
    if tokens.len() != 2 || tokens[0] != "depots" {
        return Err(IoError::Parse {
            line,
            message: format!("expected `depots <count>`, found `{}`", tokens.join(" ")),
        });
    }
    let depot_count = parse_count(line, tokens[1], "depot count")?;
    let mut depots = Vec::with_capacity(depot_count);
    for _ in 0..depot_count {
        let (line, tokens) = lines.take("depot row")?;
        depots.push(parse_point(line, &tokens, &space, "depot")?);
    }

    // requests <count> + rows
    let (line, tokens) = lines.take("`requests` section")?;
    if tokens.len() != 2 || tokens[0] != "requests" {
        return Err(IoError::Parse {
            line,
            message: format!("expected `requests <count>`, found `{}`", tokens.join(" ")),
        });
    }
    let request_count = parse_count(line, tokens[1], "request count")?;
    let mut requests = Vec::with_capacity(request_count);
    for _ in 0..request_count {
        let (line, tokens) = lines.take("request row")?;
        requests.push(parse_point(line, &tokens, &space, "request")?);
    }

    // release_dates (optional) + one real per request
    let mut releases = None;
    if let Some((_, tokens)) = lines.peek() {
        if tokens[0] == "release_dates" {
            lines.take("release_dates")?;
            let mut dates = Vec::with_capacity(request_count);
            for _ in 0..request_count {
                let (line, tokens) = lines.take("release date")?;
                if tokens.len() != 1 {
                    return Err(IoError::Parse {
                        line,
                        message: "release date rows hold a single real".to_string(),
                    });
                }
                dates.push(parse_real(line, tokens[0], "release date")?);
            }
            releases = Some(dates);
        }
    }

    if let Some((line, tokens)) = lines.peek() {
        return Err(IoError::Parse {
            line: *line,
            message: format!("unexpected trailing content `{}`", tokens.join(" ")),
        });
    }

    let depots = DepotConfig::new(space, depots)?;
    let data = match releases {
        None => InstanceData::Offline(OfflineInstance::new(depots, requests)?),
        Some(dates) => {
            let requests = dates
                .into_iter()
                .zip(requests)
                .map(|(release, location)| OnlineRequest { release, location })
                .collect();
            InstanceData::Online(OnlineInstance::new(depots, requests)?)
        }
    };
    Ok(LoadedInstance { family, data })
}
