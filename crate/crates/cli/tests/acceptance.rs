// SPDX-License-Identifier: Apache-2.0

//! Acceptance suite: one line per criterion, nonzero exit if any fails.
//!
//! Random graphs come from ChaCha8 seeded with the criterion number, weights
//! uniform in [0.1, 10].

use std::path::PathBuf;
use std::process::Command;

use logforest::{
    convergence_report, enumerate_rooted_forests, generate, log_forest_distance_matrix, matrix_forest_check,
    ordinary_forest_distance_matrix, resistance_matrix, resistance_via_forests, shortest_path_matrix, verify_geodetic,
    weighted_shortest_path_matrix, DistanceMatrix, EdgeTransform, FamilyConfig, GammaRule, HVariant, Result,
    WeightedMultigraph,
};
use logforest_cli::output::MatrixDocument;
use logforest_cli::{cmd_distances, format_sig, DistanceKind, Format, RunConfig};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const WEIGHTS: std::ops::RangeInclusive<f64> = 0.1..=10.0;
const GRID: [f64; 7] = [0.01, 0.1, 0.5, 1.0, 2.0, 10.0, 100.0];
const GAMMAS: [GammaRule; 3] = [GammaRule::Formula13, GammaRule::One, GammaRule::Interpolating(1.0)];

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(passed: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        passed,
        detail: detail.into(),
    }
}

fn rng(criterion: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(criterion)
}

fn random_connected(rng: &mut ChaCha8Rng, n: std::ops::RangeInclusive<usize>) -> WeightedMultigraph {
    let n = rng.random_range(n);
    generate::random_connected(rng, n, 0.3, WEIGHTS)
}

fn graph(n: usize, edges: &[(usize, usize, f64)]) -> WeightedMultigraph {
    WeightedMultigraph::new(n, edges.iter().copied()).unwrap()
}

fn weighted_triangle() -> WeightedMultigraph {
    graph(3, &[(1, 2, 1.0), (2, 3, 1.0), (1, 3, 0.25)])
}

fn all_configs() -> Vec<FamilyConfig> {
    let mut out = Vec::new();
    for t in EdgeTransform::ALL {
        for h in HVariant::ALL {
            for g in GAMMAS {
                out.push(FamilyConfig::new(t, h, g));
            }
        }
    }
    out
}

/// Tallies failures per `(config, alpha)` so the report shows where they cluster.
#[derive(Default)]
struct Cells {
    counts: std::collections::BTreeMap<String, usize>,
    total: usize,
}

impl Cells {
    fn add(&mut self, key: String, count: usize) {
        if count > 0 {
            *self.counts.entry(key).or_default() += count;
            self.total += count;
        }
    }

    fn summary(&self, limit: usize) -> String {
        let mut worst: Vec<_> = self.counts.iter().collect();
        worst.sort_by(|a, b| b.1.cmp(a.1).then(a.0.cmp(b.0)));
        worst
            .iter()
            .take(limit)
            .map(|(k, v)| format!("{k}: {v}"))
            .collect::<Vec<_>>()
            .join("; ")
    }
}

fn forest_theorem() -> Outcome {
    let mut rng = rng(1);
    let (mut worst, mut disconnected, mut parallel) = (0.0f64, 0, 0);
    for _ in 0..200 {
        let n = rng.random_range(2..=6);
        let g = generate::random_multigraph(&mut rng, n, 12, WEIGHTS);
        disconnected += usize::from(!g.is_connected());
        parallel += usize::from(g.edges().iter().any(|e| g.multiplicity(e.u, e.v) > 1));
        match matrix_forest_check(&g, 1e-9) {
            Ok(check) => worst = worst.max(check.max_relative_error),
            Err(e) => return outcome(false, format!("check failed: {e}")),
        }
    }
    outcome(
        worst <= 1e-9 && disconnected > 0 && parallel > 0,
        format!(
            "200 multigraphs ({disconnected} disconnected, {parallel} with parallel edges), max relative error {worst:.2e} (tol 1e-9)"
        ),
    )
}

fn resistance_routes() -> Outcome {
    let mut rng = rng(2);
    let mut worst = 0.0f64;
    for _ in 0..100 {
        let g = random_connected(&mut rng, 2..=6);
        let err = resistance_via_forests(&g)
            .and_then(|a| a.max_off_diagonal_error(&resistance_matrix(&g)?))
            .unwrap_or(f64::INFINITY);
        worst = worst.max(err);
    }
    let k3 = generate::complete(3);
    let tally = enumerate_rooted_forests(&k3).unwrap();
    let by_forests = resistance_via_forests(&k3).unwrap().get(0, 1);
    let by_pinv = resistance_matrix(&k3).unwrap().get(0, 1);
    let k3_ok = tally.by_edge_count[1][(0, 0)] == 4.0
        && tally.by_edge_count[1][(0, 1)] == 1.0
        && tally.t == 3.0
        && (by_forests - 2.0 / 3.0).abs() <= 1e-10
        && (by_pinv - 2.0 / 3.0).abs() <= 1e-10;
    outcome(
        worst <= 1e-8 && k3_ok,
        format!("100 connected graphs, max |forest - pseudoinverse| {worst:.2e} (tol 1e-8); K3 {by_pinv:.12}"),
    )
}

fn metric_axioms() -> Outcome {
    let mut rng = rng(3);
    let graphs: Vec<_> = (0..50).map(|_| random_connected(&mut rng, 2..=8)).collect();
    let (mut violations, mut failures, mut cells) = (Cells::default(), Cells::default(), 0);
    for g in &graphs {
        for cfg in all_configs() {
            for alpha in GRID {
                cells += 1;
                let key = format!("{cfg} a={alpha}");
                match log_forest_distance_matrix(g, &cfg, alpha) {
                    Ok(d) => violations.add(key, d.metric_violations(d.default_tolerance()).len()),
                    Err(e) => failures.add(format!("{key} {}", error_name(&e)), 1),
                }
            }
        }
    }
    let mut detail = format!(
        "{cells} cells, {} violations, {} cells not computable",
        violations.total, failures.total
    );
    if violations.total > 0 {
        detail += &format!(" | violations: {}", violations.summary(6));
    }
    if failures.total > 0 {
        detail += &format!(" | errors: {}", failures.summary(6));
    }
    outcome(violations.total == 0 && failures.total == 0, detail)
}

fn error_name(e: &logforest::Error) -> &'static str {
    match e {
        logforest::Error::TransformRange { .. } => "weight underflow",
        logforest::Error::NonPositiveEntry { .. } => "kernel underflow",
        logforest::Error::NotPositiveDefinite { .. } | logforest::Error::IllConditioned { .. } => "inversion",
        _ => "other",
    }
}

fn geodetic() -> Outcome {
    let mut suite = vec![
        generate::path(3),
        generate::path(4),
        generate::complete(3),
        generate::complete(4),
        generate::star(5),
        generate::bowtie(),
    ];
    let constructed = suite.len();
    let mut rng = rng(4);
    suite.extend((0..50).map(|_| random_connected(&mut rng, 3..=7)));
    let (mut mismatches, mut failures, mut constructed_mismatches) = (Cells::default(), Cells::default(), 0);
    for (index, g) in suite.iter().enumerate() {
        for cfg in all_configs() {
            for alpha in GRID {
                let key = format!("{cfg} a={alpha}");
                match log_forest_distance_matrix(g, &cfg, alpha)
                    .and_then(|d| verify_geodetic(g, &d, d.default_tolerance()))
                {
                    Ok(r) => {
                        if index < constructed {
                            constructed_mismatches += r.mismatches.len();
                        }
                        mismatches.add(key, r.mismatches.len());
                    }
                    Err(e) => failures.add(format!("{key} {}", error_name(&e)), 1),
                }
            }
        }
    }
    let mut detail = format!(
        "{} graphs x {} cells, {} mismatches ({constructed_mismatches} on the named graphs), {} cells not computable",
        suite.len(),
        all_configs().len() * GRID.len(),
        mismatches.total,
        failures.total
    );
    if mismatches.total > 0 {
        detail += &format!(" | mismatches: {}", mismatches.summary(6));
    }
    if failures.total > 0 {
        detail += &format!(" | errors: {}", failures.summary(4));
    }
    outcome(mismatches.total == 0 && failures.total == 0, detail)
}

/// Errors against `target` in the order given, plus the pass verdict.
fn limit(
    g: &WeightedMultigraph,
    cfg: &FamilyConfig,
    alphas: &[f64],
    target: &DistanceMatrix,
    bound: Option<f64>,
) -> (bool, String) {
    match convergence_report(g, cfg, alphas, target) {
        Ok(r) => {
            let ok = r.is_strictly_decreasing() && bound.is_none_or(|b| r.final_error().unwrap() <= b);
            let errors: Vec<String> = r.errors().iter().map(|e| format!("{e:.3e}")).collect();
            (ok, format!("[{}]", errors.join(", ")))
        }
        Err(e) => (false, format!("error: {e}")),
    }
}

fn shortest_path_limit() -> Outcome {
    let alphas = [1e-1, 1e-2, 1e-3];
    let cfg = FamilyConfig::SHORTEST_PATH;
    let (k2, p4) = (generate::path(2), generate::path(4));
    let (k2_ok, k2_detail) = limit(&k2, &cfg, &alphas, &shortest_path_matrix(&k2), Some(0.02));
    let (p4_ok, p4_detail) = limit(&p4, &cfg, &alphas, &shortest_path_matrix(&p4), Some(0.02));
    // closed form for a single unit edge
    let mut closed_form_err = 0.0f64;
    for a in alphas.into_iter().chain([0.5, 2.0, 10.0]) {
        let exact = (std::f64::consts::E + a).ln() * (a - 1.0) * ((1.0 + a) / a).ln() / a.ln();
        let got = log_forest_distance_matrix(&k2, &cfg, a).unwrap().get(0, 1);
        closed_form_err = closed_form_err.max((got - exact).abs() / exact);
    }
    outcome(
        k2_ok && p4_ok && closed_form_err <= 1e-12,
        format!("K2 {k2_detail}, P4 {p4_detail} (bound 0.02); K2 closed form rel err {closed_form_err:.1e}"),
    )
}

fn resistance_limit() -> Outcome {
    let alphas = [1e2, 1e3, 1e4];
    let cfg = FamilyConfig::SHORTEST_PATH;
    let k3 = generate::complete(3);
    let g = generate::random_connected(&mut rng(6), 5, 0.3, WEIGHTS);
    let (k3_ok, k3_detail) = limit(&k3, &cfg, &alphas, &resistance_matrix(&k3).unwrap(), Some(0.01));
    let target = resistance_matrix(&g).unwrap();
    let (g_ok, g_detail) = limit(&g, &cfg, &alphas, &target, Some(0.01));
    outcome(
        k3_ok && g_ok,
        format!(
            "K3 {k3_detail}, random n=5 {g_detail} (bound 0.01, max resistance {:.3})",
            target.max_finite()
        ),
    )
}

fn weighted_shortest_path_limit() -> Outcome {
    let g = weighted_triangle();
    let target = weighted_shortest_path_matrix(&g);
    let (ok, detail) = limit(
        &g,
        &FamilyConfig::WEIGHTED_SHORTEST_PATH,
        &[0.3, 0.1, 0.03],
        &target,
        Some(0.05),
    );
    let d13 = target.get(0, 2);
    outcome(
        ok && d13 == 2.0,
        format!("weighted triangle {detail} (bound 0.05); d_ws(1,3) = {d13}"),
    )
}

fn unified_limits() -> Outcome {
    let cfg = FamilyConfig::UNIFIED;
    let mut ok = true;
    let mut parts = Vec::new();
    for (name, g) in [
        ("triangle", weighted_triangle()),
        ("random n=5", generate::random_connected(&mut rng(8), 5, 0.3, WEIGHTS)),
    ] {
        let (down, down_detail) = limit(&g, &cfg, &[0.3, 0.1, 0.03], &weighted_shortest_path_matrix(&g), None);
        let (up, up_detail) = limit(&g, &cfg, &[1e2, 1e3, 1e4], &resistance_matrix(&g).unwrap(), None);
        ok &= down && up;
        parts.push(format!("{name}: to ws {down_detail}, to r {up_detail}"));
    }
    outcome(ok, parts.join("; "))
}

fn continuity_at_one() -> Outcome {
    let mut rng = rng(9);
    let mut graphs = vec![generate::complete(3)];
    graphs.extend((0..20).map(|_| random_connected(&mut rng, 2..=8)));
    let mut worst = 0.0f64;
    for g in &graphs {
        for t in EdgeTransform::ALL {
            for gamma in GAMMAS {
                let cfg = FamilyConfig::new(t, HVariant::Standard, gamma);
                let at = |a: f64| log_forest_distance_matrix(g, &cfg, a);
                let step = (|| -> Result<f64> {
                    let base = at(1.0)?;
                    Ok(at(1.0 - 1e-6)?
                        .max_off_diagonal_error(&base)?
                        .max(at(1.0 + 1e-6)?.max_off_diagonal_error(&base)?))
                })();
                worst = worst.max(step.unwrap_or(f64::INFINITY));
            }
        }
    }
    outcome(
        worst <= 1e-5,
        format!(
            "{} graphs x 12 configs, max |D(1 +- 1e-6) - D(1)| {worst:.2e} (tol 1e-5)",
            graphs.len()
        ),
    )
}

fn path_ordering() -> Outcome {
    let p4 = generate::path(4);
    let mut ok = true;
    let mut parts = Vec::new();
    for a in [0.1, 1.0, 10.0] {
        let d = log_forest_distance_matrix(&p4, &FamilyConfig::SHORTEST_PATH, a).unwrap();
        let o = ordinary_forest_distance_matrix(&p4, a).unwrap();
        ok &= d.get(0, 1) < d.get(1, 2) && o.get(0, 1) > o.get(1, 2);
        parts.push(format!(
            "a={a}: log {:.6} < {:.6}, ordinary {:.6} > {:.6}",
            d.get(0, 1),
            d.get(1, 2),
            o.get(0, 1),
            o.get(1, 2)
        ));
    }
    let (s, r) = (shortest_path_matrix(&p4), resistance_matrix(&p4).unwrap());
    for a in [0.0, 0.5, 1.0] {
        let mix = |i, j| (1.0 - a) * s.get(i, j) + a * r.get(i, j);
        ok &= (mix(0, 1) - mix(1, 2)).abs() <= 1e-12;
    }
    parts.push("mixture ties at a = 0, 0.5, 1".into());
    outcome(ok, parts.join("; "))
}

fn intercomponent() -> Outcome {
    let g = graph(3, &[(1, 2, 1.0)]);
    let mut results: Vec<(String, Result<DistanceMatrix>)> = vec![
        ("shortest".into(), Ok(shortest_path_matrix(&g))),
        ("wshortest".into(), Ok(weighted_shortest_path_matrix(&g))),
        ("resistance".into(), resistance_matrix(&g)),
        ("ordinary-forest".into(), ordinary_forest_distance_matrix(&g, 1.0)),
    ];
    for cfg in [
        FamilyConfig::SHORTEST_PATH,
        FamilyConfig::WEIGHTED_SHORTEST_PATH,
        FamilyConfig::UNIFIED,
    ] {
        results.push((format!("logforest {cfg}"), log_forest_distance_matrix(&g, &cfg, 0.5)));
    }
    let bad: Vec<&str> = results
        .iter()
        .filter(|(_, d)| !matches!(d, Ok(d) if d.get(0, 2) == f64::INFINITY && d.get(0, 1).is_finite()))
        .map(|(name, _)| name.as_str())
        .collect();
    outcome(
        bad.is_empty(),
        format!("{} kinds checked, failing: {bad:?}", results.len()),
    )
}

fn fixture(name: &str, text: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("logforest-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path
}

fn csv_of(rows: &[Vec<f64>]) -> String {
    let mut s = (1..=rows.len()).map(|i| format!("v{i}")).collect::<Vec<_>>().join(",") + "\n";
    for row in rows {
        s += &row.iter().map(|&x| format_sig(x, 9)).collect::<Vec<_>>().join(",");
        s.push('\n');
    }
    s
}

/// Forest distance of a unit-weight graph under the linear family, straight
/// from enumerated forest counts.
fn forest_oracle_rows(g: &WeightedMultigraph, alpha: f64) -> Vec<Vec<f64>> {
    let tally =
        enumerate_rooted_forests(&g.transform_weights(EdgeTransform::LinearScale, alpha).unwrap().graph).unwrap();
    let n = g.vertex_count();
    let scale = GammaRule::Formula13.gamma(alpha, n) * HVariant::Standard.log_scale(alpha);
    let f = &tally.f_ij;
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        0.0
                    } else {
                        scale * ((f[(i, i)] * f[(j, j)]).sqrt() / f[(i, j)]).ln()
                    }
                })
                .collect()
        })
        .collect()
}

fn cli_goldens() -> Outcome {
    let k2 = fixture("k2.txt", "2\n1 2\n");
    let k3 = fixture("k3.txt", "3\n1 2\n2 3\n1 3\n");
    let p4 = fixture("p4.txt", "4\n1 2\n2 3\n3 4\n");
    let logforest = |path: &PathBuf, alpha: f64| RunConfig {
        family: Some(FamilyConfig::SHORTEST_PATH),
        alphas: vec![alpha],
        ..RunConfig::new(path, DistanceKind::Logforest)
    };

    let mut cases = vec![(
        "K3 resistance".to_string(),
        RunConfig::new(&k3, DistanceKind::Resistance),
        csv_of(&[
            vec![0.0, 2.0 / 3.0, 2.0 / 3.0],
            vec![2.0 / 3.0, 0.0, 2.0 / 3.0],
            vec![2.0 / 3.0, 2.0 / 3.0, 0.0],
        ]),
    )];
    for a in [1.0, 1e-1, 1e-2, 1e-3] {
        let d = (std::f64::consts::E + a).ln() * (a - 1.0) * ((1.0 + a) / a).ln() / a.ln();
        let d = if a == 1.0 {
            (std::f64::consts::E + 1.0).ln() * 2f64.ln()
        } else {
            d
        };
        cases.push((
            format!("K2 a={a}"),
            logforest(&k2, a),
            csv_of(&[vec![0.0, d], vec![d, 0.0]]),
        ));
    }
    for a in [0.1, 1.0, 10.0] {
        let g = generate::path(4);
        cases.push((
            format!("P4 a={a}"),
            logforest(&p4, a),
            csv_of(&forest_oracle_rows(&g, a)),
        ));
        let o = ordinary_forest_distance_matrix(&g, a).unwrap();
        cases.push((
            format!("P4 ordinary a={a}"),
            RunConfig {
                alphas: vec![a],
                ..RunConfig::new(&p4, DistanceKind::OrdinaryForest)
            },
            csv_of(&o.rows()),
        ));
    }

    let mut failed = Vec::new();
    let mut worst_round_trip = 0.0f64;
    for (name, run, expected) in &cases {
        let mut csv = String::new();
        if cmd_distances(run, &mut csv).is_err() || &csv != expected {
            failed.push(format!("{name}: got {csv:?}, want {expected:?}"));
            continue;
        }
        let mut json = String::new();
        let _ = cmd_distances(
            &RunConfig {
                format: Format::Json,
                ..run.clone()
            },
            &mut json,
        );
        let from_csv: Vec<f64> = csv
            .lines()
            .skip(1)
            .flat_map(|l| l.split(',').map(|x| x.parse::<f64>().unwrap()).collect::<Vec<_>>())
            .collect();
        match serde_json::from_str::<MatrixDocument>(&json) {
            Ok(doc) => {
                for (a, b) in from_csv.iter().zip(doc.distances.iter().flatten()) {
                    worst_round_trip = worst_round_trip.max((a - b.value()).abs());
                }
            }
            Err(e) => failed.push(format!("{name}: bad json {e}")),
        }
    }

    // the binary writes the same bytes
    let out = Command::new(env!("CARGO_BIN_EXE_logforest"))
        .args(["distances", k3.to_str().unwrap(), "--kind", "resistance"])
        .output()
        .unwrap();
    if out.stdout != cases[0].2.as_bytes() {
        failed.push("binary output differs".into());
    }
    let _ = std::fs::remove_dir_all(k2.parent().unwrap());
    outcome(
        failed.is_empty() && worst_round_trip <= 1e-12,
        format!(
            "{} CSV goldens, JSON/CSV max difference {worst_round_trip:.1e} (tol 1e-12){}",
            cases.len(),
            if failed.is_empty() {
                String::new()
            } else {
                format!(" | {}", failed.join("; "))
            }
        ),
    )
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() {
    let criteria: [Criterion; 12] = [
        ("matrix forest theorem", forest_theorem),
        ("resistance from forests", resistance_routes),
        ("metric axioms over the grid", metric_axioms),
        ("graph-geodetic both ways", geodetic),
        ("shortest-path limit", shortest_path_limit),
        ("resistance limit", resistance_limit),
        ("weighted shortest-path limit", weighted_shortest_path_limit),
        ("unified family limits", unified_limits),
        ("continuity at alpha = 1", continuity_at_one),
        ("P4 ordering", path_ordering),
        ("components at infinity", intercomponent),
        ("CLI goldens", cli_goldens),
    ];
    let mut failures = 0;
    for (index, (name, check)) in criteria.iter().enumerate() {
        let started = std::time::Instant::now();
        let result = check();
        failures += usize::from(!result.passed);
        println!(
            "[{}] {:02} {name} ({:.2}s): {}",
            if result.passed { "PASS" } else { "FAIL" },
            index + 1,
            started.elapsed().as_secs_f64(),
            result.detail
        );
    }
    println!("acceptance: {} passed, {failures} failed", criteria.len() - failures);
    if failures > 0 {
        std::process::exit(1);
    }
}
