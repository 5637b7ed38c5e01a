// SPDX-License-Identifier: Apache-2.0

//! The subcommands. Each writes its report to `out` and returns an error
//! carrying the process exit code.

use std::fmt::{self, Write as _};
use std::io::Read;

use logforest::{
    convergence_report, log_forest_distance_matrix, matrix_forest_check, ordinary_forest_distance_matrix,
    parse_edge_list, resistance_matrix, resistance_via_forests, shortest_path_matrix, verify_geodetic,
    weighted_shortest_path_matrix, DistanceMatrix, Error, GeodeticReport, WeightedMultigraph,
};

use crate::args::{DistanceKind, Format, RunConfig, Target};
use crate::output::{matrix_csv, Entry, MatrixDocument, SweepDocument, SweepRow};

/// Input could not be read or parsed.
pub const EXIT_PARSE: i32 = 1;
/// A computation failed or a check did not pass.
pub const EXIT_NUMERICAL: i32 = 2;
/// Invalid flags, including asking for enumeration above the edge cap.
pub const EXIT_USAGE: i32 = 3;

/// Error ratio allowed between consecutive sweep points.
pub const SWEEP_SLACK: f64 = 1.05;
/// Tolerance of the forest-theorem check.
pub const FOREST_TOLERANCE: f64 = 1e-9;
/// Tolerance of the two resistance routes against each other.
pub const RESISTANCE_TOLERANCE: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    pub fn usage(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }

    pub fn numerical(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_NUMERICAL,
            message: message.into(),
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let code = match &e {
            Error::Parse { .. }
            | Error::TooFewVertices(_)
            | Error::LoopEdge(_)
            | Error::InvalidWeight { .. }
            | Error::VertexOutOfRange { .. } => EXIT_PARSE,
            Error::InvalidParameter(_) => EXIT_USAGE,
            Error::EnumerationCap { .. } => {
                return Self::usage(format!("{e}; rerun with --skip-oracle"));
            }
            _ => EXIT_NUMERICAL,
        };
        Self {
            code,
            message: e.to_string(),
        }
    }
}

pub fn load_graph(run: &RunConfig) -> Result<WeightedMultigraph, CliError> {
    let read_failed = |e: std::io::Error| CliError {
        code: EXIT_PARSE,
        message: format!("{}: {e}", run.input.display()),
    };
    let text = if run.input.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(read_failed)?;
        s
    } else {
        std::fs::read_to_string(&run.input).map_err(read_failed)?
    };
    Ok(parse_edge_list(&text)?)
}

/// Computes `kind` on `g` with the family and alpha of `run`.
pub fn compute(g: &WeightedMultigraph, run: &RunConfig, kind: DistanceKind) -> Result<DistanceMatrix, CliError> {
    Ok(match kind {
        DistanceKind::Logforest => log_forest_distance_matrix(g, &run.family_for_logforest()?, alpha_of(run, kind)?)?,
        DistanceKind::OrdinaryForest => ordinary_forest_distance_matrix(g, alpha_of(run, kind)?)?,
        DistanceKind::Shortest => shortest_path_matrix(g),
        DistanceKind::Wshortest => weighted_shortest_path_matrix(g),
        DistanceKind::Resistance => resistance_matrix(g)?,
    })
}

fn alpha_of(run: &RunConfig, kind: DistanceKind) -> Result<f64, CliError> {
    let run = RunConfig { kind, ..run.clone() };
    Ok(run.alpha()?.expect("forest kinds take alpha"))
}

/// Distance matrix as CSV or JSON.
pub fn cmd_distances(run: &RunConfig, out: &mut String) -> Result<(), CliError> {
    let g = load_graph(run)?;
    let alpha = run.alpha()?;
    let d = compute(&g, run, run.kind)?;
    match run.format {
        Format::Csv => out.push_str(&matrix_csv(&d)),
        Format::Json => {
            let family = (run.kind == DistanceKind::Logforest)
                .then(|| run.family_for_logforest())
                .transpose()?;
            out.push_str(&MatrixDocument::new(&d, run.kind.name(), alpha, family.map(|f| f.to_string())).to_json());
        }
    }
    Ok(())
}

/// Orders alphas so they approach the limit of `target`.
pub fn toward_limit(target: Target, alphas: &[f64]) -> Vec<f64> {
    let mut sorted = alphas.to_vec();
    sorted.sort_by(f64::total_cmp);
    sorted.dedup();
    if target != Target::Resistance {
        sorted.reverse();
    }
    sorted
}

/// Convergence table; fails when the errors grow by more than
/// [`SWEEP_SLACK`] between neighbouring alphas.
pub fn cmd_sweep(run: &RunConfig, out: &mut String) -> Result<(), CliError> {
    let target = run.target.ok_or_else(|| CliError::usage("sweep needs --target"))?;
    let cfg = run
        .family
        .ok_or_else(|| CliError::usage("sweep needs --family or --transform"))?;
    let g = load_graph(run)?;
    let reference = compute(&g, run, target.kind())?;
    let alphas = toward_limit(target, &run.alphas);
    let report = convergence_report(&g, &cfg, &alphas, &reference)?;
    let monotone = report.is_monotone_within(SWEEP_SLACK);
    let doc = SweepDocument {
        n: g.vertex_count(),
        target: target.kind().name().into(),
        family: cfg.to_string(),
        rows: report
            .rows
            .iter()
            .map(|&(alpha, e)| SweepRow {
                alpha,
                max_error: Entry::new(e),
            })
            .collect(),
        monotone,
    };
    out.push_str(&match run.format {
        Format::Csv => doc.to_csv(),
        Format::Json => doc.to_json(),
    });
    if !monotone {
        return Err(CliError::numerical(format!(
            "errors do not decrease toward the {} limit within a factor {SWEEP_SLACK}",
            target.kind().name()
        )));
    }
    Ok(())
}

fn status(ok: bool) -> &'static str {
    if ok {
        "pass"
    } else {
        "FAIL"
    }
}

fn write_geodetic(out: &mut String, report: &GeodeticReport) {
    let _ = writeln!(
        out,
        "geodetic: {} ({} triples, {} equalities, {} separations, {} mismatches, tol {:.3e})",
        status(report.passed()),
        report.triples_checked,
        report.equality_triples.len(),
        report.separation_triples.len(),
        report.mismatches.len(),
        report.tolerance
    );
    for (i, j, k) in &report.equality_triples {
        let _ = writeln!(out, "  equality {i}-{j}-{k}");
    }
    for m in &report.mismatches {
        let (i, j, k) = m.triple;
        let _ = writeln!(out, "  mismatch {i}-{j}-{k} {:?} residual {:.3e}", m.kind, m.residual);
    }
}

/// Oracle cross-checks plus metric and geodetic scans; fails unless every
/// check passes.
pub fn cmd_verify(run: &RunConfig, out: &mut String) -> Result<(), CliError> {
    let g = load_graph(run)?;
    let mut all = true;
    if run.skip_oracle {
        out.push_str("forest-theorem: skipped\nresistance-equivalence: skipped\n");
    } else {
        let check = matrix_forest_check(&g, FOREST_TOLERANCE)?;
        all &= check.passed();
        let _ = writeln!(
            out,
            "forest-theorem: {} (max relative error {:.3e}, tol {:.0e})",
            status(check.passed()),
            check.max_relative_error,
            check.tolerance
        );
        if g.is_connected() {
            let err = resistance_via_forests(&g)?.max_off_diagonal_error(&resistance_matrix(&g)?)?;
            let ok = err <= RESISTANCE_TOLERANCE;
            all &= ok;
            let _ = writeln!(
                out,
                "resistance-equivalence: {} (max error {err:.3e}, tol {RESISTANCE_TOLERANCE:.0e})",
                status(ok)
            );
        } else {
            out.push_str("resistance-equivalence: skipped (graph is disconnected)\n");
        }
    }

    let d = compute(&g, run, DistanceKind::Logforest)?;
    let tol = run.tolerance.unwrap_or_else(|| d.default_tolerance());
    let violations = d.metric_violations(tol);
    all &= violations.is_empty();
    let _ = writeln!(
        out,
        "metric-axioms: {} ({} violations, tol {tol:.3e})",
        status(violations.is_empty()),
        violations.len()
    );
    for v in &violations {
        let _ = writeln!(out, "  {v:?}");
    }
    let report = verify_geodetic(&g, &d, tol)?;
    all &= report.passed();
    write_geodetic(out, &report);

    if all {
        Ok(())
    } else {
        Err(CliError::numerical("verification failed"))
    }
}

/// Geodetic report for any distance kind; fails on a mismatch.
pub fn cmd_geodetic(run: &RunConfig, out: &mut String) -> Result<(), CliError> {
    let g = load_graph(run)?;
    let d = compute(&g, run, run.kind)?;
    let tol = run.tolerance.unwrap_or_else(|| d.default_tolerance());
    let report = verify_geodetic(&g, &d, tol)?;
    write_geodetic(out, &report);
    if report.passed() {
        Ok(())
    } else {
        Err(CliError::numerical(format!(
            "{} is not graph-geodetic on this input",
            run.kind.name()
        )))
    }
}
