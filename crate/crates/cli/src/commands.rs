use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::time::Instant;

use clap::ValueEnum;
use horton_islands::constructions::separation_checks;
use horton_islands::islands::max_visible_clique;
use horton_islands::{
    blowup_triplets_with, find_k_hole, horton_generate, max_collinear, max_visible_island,
    neighborhood_island_measure, soundness_certificate, verify_lemma7, BlowupConfig, BlowupRecord,
    ConstructionError, HortonSet, Outcome, SearchLimits, SearchReport,
};
use num_bigint::BigInt;
use thiserror::Error;

use crate::format::{FormatError, PointSetFile};
use crate::report::{search_verdict, CheckResult, InputDigest, RunReport, SearchSummary, Verdict};
use crate::{svg, Check, Command, Common, Kind, SearchQuantity, EXIT_PASS};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Format { path: PathBuf, source: FormatError },
    #[error(transparent)]
    Construction(#[from] ConstructionError),
    #[error("{0}")]
    Usage(String),
}

pub fn dispatch(command: Command) -> Result<u8, CliError> {
    match command {
        Command::Generate {
            kind,
            n,
            out,
            soundness_max_level,
        } => generate(kind, n, out.as_deref(), soundness_max_level),
        Command::Verify {
            input,
            checks,
            cutoff,
            max_collinear,
            common,
        } => verify(&input, &checks, cutoff, max_collinear, &common),
        Command::Search {
            quantity,
            input,
            k,
            cutoff,
            common,
        } => search(quantity, &input, k, cutoff, &common),
        Command::Plot {
            input,
            out,
            highlight,
        } => plot(&input, &out, &highlight),
    }
}

fn write_file(path: &Path, contents: &str) -> Result<(), CliError> {
    fs::write(path, contents).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn read_input(path: &Path) -> Result<(Vec<u8>, PointSetFile), CliError> {
    let bytes = fs::read(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    let text = String::from_utf8_lossy(&bytes);
    let file = PointSetFile::from_str(&text).map_err(|source| CliError::Format {
        path: path.to_path_buf(),
        source,
    })?;
    Ok((bytes, file))
}

fn join<T: ToString>(items: &[T]) -> String {
    items.iter().map(T::to_string).collect::<Vec<_>>().join(",")
}

pub fn horton_file(h: &HortonSet) -> PointSetFile {
    PointSetFile::new(h.points().clone())
        .with_meta("kind", "horton")
        .with_meta("level", h.level())
        .with_meta("separation", join(h.separation_constants()))
}

pub fn blowup_file(rec: &BlowupRecord) -> PointSetFile {
    let offset = rec
        .schedule_offset
        .map_or_else(|| "none".to_string(), |o| o.to_string());
    PointSetFile::new(rec.blown.clone())
        .with_meta("kind", "blowup")
        .with_meta("level", rec.parent_set.level())
        .with_meta("separation", join(rec.parent_set.separation_constants()))
        .with_meta("scale", &rec.scale)
        .with_meta("schedule_offset", offset)
        .with_meta("soundness_certified", rec.soundness_certified)
}

fn generate(
    kind: Kind,
    n: usize,
    out: Option<&Path>,
    soundness_max_level: usize,
) -> Result<u8, CliError> {
    let h = horton_generate(n)?;
    let file = match kind {
        Kind::Horton => horton_file(&h),
        Kind::Blowup => {
            let config = BlowupConfig {
                soundness_max_level,
                ..BlowupConfig::default()
            };
            blowup_file(&blowup_triplets_with(&h, &config)?)
        }
    };
    let text = file.serialize();
    match out {
        Some(path) => write_file(path, &text)?,
        None => print!("{text}"),
    }
    Ok(EXIT_PASS)
}

/// The blowup record described by the file's metadata, if it claims one.
fn blowup_record(file: &PointSetFile) -> Result<Option<BlowupRecord>, CliError> {
    if file.meta("kind") != Some("blowup") {
        return Ok(None);
    }
    let scale = file
        .meta("scale")
        .and_then(|s| BigInt::from_str(s).ok())
        .ok_or_else(|| CliError::Usage("blowup file lacks a valid `scale` entry".into()))?;
    let rec = BlowupRecord::from_blown(file.points.points().to_vec(), scale)?;
    Ok(Some(rec))
}

fn check_result(name: &str, verdict: Verdict, started: Instant) -> CheckResult {
    CheckResult {
        name: name.to_string(),
        verdict,
        value: None,
        witness: Vec::new(),
        nodes_explored: 0,
        elapsed_ms: started.elapsed().as_millis() as u64,
        detail: String::new(),
    }
}

fn run_check(
    check: Check,
    file: &PointSetFile,
    blowup: Option<&BlowupRecord>,
    cutoff: usize,
    collinear_limit: usize,
    budget: Option<u64>,
) -> Result<CheckResult, CliError> {
    let set = &file.points;
    let t = Instant::now();
    Ok(match check {
        Check::CollinearMax => {
            let (m, line) = max_collinear(set);
            let pass = m <= collinear_limit;
            let mut r = check_result(
                "collinear-max",
                if pass { Verdict::Pass } else { Verdict::Fail },
                t,
            );
            r.value = Some(m as u64);
            if !pass {
                r.witness = line;
            }
            r.detail = format!("limit {collinear_limit}");
            r
        }
        Check::AboveBelow => {
            let pts = match blowup {
                Some(rec) => rec.parent_set.points().points().to_vec(),
                None => set.points().to_vec(),
            };
            let mut r = match separation_checks(&pts) {
                Ok(splits) => {
                    let failed: Vec<_> = splits.iter().filter(|s| !s.passed).collect();
                    let mut r = check_result(
                        "above-below",
                        if failed.is_empty() {
                            Verdict::Pass
                        } else {
                            Verdict::Fail
                        },
                        t,
                    );
                    r.value = Some(splits.len() as u64);
                    r.detail = match failed.first() {
                        None => format!("{} splits separated", splits.len()),
                        Some(s) => {
                            format!("block {} of size {} not separated", s.block, s.block_size)
                        }
                    };
                    r
                }
                Err(e) => {
                    let mut r = check_result("above-below", Verdict::Fail, t);
                    r.detail = e.to_string();
                    r
                }
            };
            if blowup.is_some() {
                r.detail.push_str(" (parent set)");
            }
            r
        }
        Check::Lemma7 => {
            let rep = verify_lemma7(set);
            let pass = rep.witness.is_empty();
            let mut r = check_result(
                "lemma7",
                if pass { Verdict::Pass } else { Verdict::Fail },
                t,
            );
            r.value = Some(rep.value);
            r.witness = rep.witness;
            r.nodes_explored = rep.nodes_explored;
            r.detail = "7-subsets with a point inside the hull".into();
            r
        }
        Check::Soundness => {
            let rec = blowup.ok_or_else(|| {
                CliError::Usage(
                    "the soundness check needs a blowup file (kind=blowup, scale)".into(),
                )
            })?;
            let rep = soundness_certificate(rec, 7);
            let mut r = check_result(
                "soundness",
                if rep.passed() {
                    Verdict::Pass
                } else {
                    Verdict::Fail
                },
                t,
            );
            r.value = Some(rep.subsets_checked);
            if let Some(w) = &rep.witness {
                // Report the middle point of each parent's triplet.
                r.witness = w.iter().map(|&p| rec.triplet_of[p][1]).collect();
                r.detail = format!("parents {} have no certifying triplet", join(w));
            } else {
                r.detail = "parent 7-subsets certified".into();
            }
            r
        }
        Check::IslandCutoff => {
            let limits = SearchLimits {
                cutoff: Some(cutoff),
                budget_nodes: budget,
            };
            let rep = max_visible_island(set, limits);
            let verdict = match rep.outcome {
                Outcome::Complete if (rep.value as usize) < cutoff => Verdict::Pass,
                Outcome::BudgetExceeded => Verdict::Inconclusive,
                _ => Verdict::Fail,
            };
            let mut r = check_result("island-cutoff", verdict, t);
            r.value = Some(rep.value);
            r.nodes_explored = rep.nodes_explored;
            r.detail = match verdict {
                Verdict::Pass => format!("no visible island of size {cutoff}"),
                Verdict::Fail => format!("visible island of size {}", rep.value),
                Verdict::Inconclusive => format!("budget exhausted, best found {}", rep.value),
            };
            if verdict == Verdict::Fail {
                r.witness = rep.witness;
            }
            r
        }
    })
}

fn finish_report(
    report: &mut RunReport,
    verdict: Verdict,
    common: &Common,
) -> Result<u8, CliError> {
    report.finish(verdict);
    print!("{}", report.to_text());
    if let Some(path) = &common.report {
        write_file(path, &report.to_json())?;
    }
    Ok(report.exit_status)
}

fn verify(
    input: &Path,
    checks: &[Check],
    cutoff: usize,
    collinear_limit: usize,
    common: &Common,
) -> Result<u8, CliError> {
    let (bytes, file) = read_input(input)?;
    let blowup = if checks.contains(&Check::Soundness) || checks.contains(&Check::AboveBelow) {
        blowup_record(&file)?
    } else {
        None
    };
    let mut params = BTreeMap::new();
    let names: Vec<String> = checks
        .iter()
        .filter_map(|c| c.to_possible_value().map(|v| v.get_name().to_string()))
        .collect();
    params.insert("checks".to_string(), names.join(","));
    params.insert("cutoff".to_string(), cutoff.to_string());
    params.insert("max_collinear".to_string(), collinear_limit.to_string());
    if let Some(b) = common.budget_nodes {
        params.insert("budget_nodes".to_string(), b.to_string());
    }
    let digest = InputDigest::new(&input.display().to_string(), &bytes, &file);
    let mut report = RunReport::new("verify", digest, params);
    for &c in checks {
        let r = run_check(
            c,
            &file,
            blowup.as_ref(),
            cutoff,
            collinear_limit,
            common.budget_nodes,
        )?;
        report.checks.push(r);
    }
    let verdict = Verdict::combine(report.checks.iter().map(|c| c.verdict));
    finish_report(&mut report, verdict, common)
}

fn search(
    quantity: SearchQuantity,
    input: &Path,
    k: Option<usize>,
    cutoff: Option<usize>,
    common: &Common,
) -> Result<u8, CliError> {
    let (bytes, file) = read_input(input)?;
    let set = &file.points;
    let limits = SearchLimits {
        cutoff,
        budget_nodes: common.budget_nodes,
    };
    let rep: SearchReport = match quantity {
        SearchQuantity::MaxVisibleIsland => max_visible_island(set, limits),
        SearchQuantity::MaxVisibleClique => max_visible_clique(set, limits),
        SearchQuantity::NeighborhoodIsland => neighborhood_island_measure(set, limits),
        SearchQuantity::KHole => {
            let k = k.ok_or_else(|| CliError::Usage("k-hole needs --k".into()))?;
            if k < 3 {
                return Err(CliError::Usage("--k must be at least 3".into()));
            }
            find_k_hole(set, k, limits)
        }
    };
    let mut params = BTreeMap::new();
    params.insert("quantity".to_string(), rep.quantity.name().to_string());
    if let Some(k) = k {
        params.insert("k".to_string(), k.to_string());
    }
    if let Some(c) = cutoff {
        params.insert("cutoff".to_string(), c.to_string());
    }
    if let Some(b) = common.budget_nodes {
        params.insert("budget_nodes".to_string(), b.to_string());
    }
    let digest = InputDigest::new(&input.display().to_string(), &bytes, &file);
    let mut report = RunReport::new("search", digest, params);
    report.search = Some(SearchSummary::from(&rep));
    finish_report(&mut report, search_verdict(&rep), common)
}

fn plot(input: &Path, out: &Path, highlight: &[usize]) -> Result<u8, CliError> {
    let (_, file) = read_input(input)?;
    if let Some(&bad) = highlight.iter().find(|&&i| i >= file.points.len()) {
        return Err(CliError::Usage(format!(
            "highlight index {bad} is out of range for {} points",
            file.points.len()
        )));
    }
    write_file(out, &svg::render(&file.points, highlight))?;
    Ok(EXIT_PASS)
}
