//! Seeded random patchwork sweeps emitting one JSON line per run.

use std::io::Write;
use std::sync::mpsc;

use patchwork_lab_core::patchwork::{
    build_patchwork, extract_scheme, random_convex_primitive_triangulation, SignDistribution,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::CliError;
use crate::formats::{sha256_hex, signs_json, triangulation_json};

/// Keeps the sign stream independent of the height stream for one seed.
const SIGN_STREAM: u64 = 0x51C4_D15E_A5E5_0001;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SweepRecord {
    pub d: u32,
    pub seed: u64,
    pub scheme: String,
    pub oval_count: usize,
    pub pseudoline: bool,
    pub triangulation_sha256: String,
    pub signs_sha256: String,
}

/// Random convex primitive triangulation and random signs from one seed.
pub fn sweep_one(d: u32, seed: u64) -> Result<SweepRecord, CliError> {
    let t = random_convex_primitive_triangulation(d, seed)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ SIGN_STREAM);
    let s = SignDistribution::random(t.vertices.len(), &mut rng);
    let curve = build_patchwork(&t, &s)?;
    let scheme = extract_scheme(&curve)?;
    Ok(SweepRecord {
        d,
        seed,
        scheme: scheme.to_string(),
        oval_count: scheme.oval_count(),
        pseudoline: scheme.pseudoline,
        triangulation_sha256: sha256_hex(&triangulation_json(&t)),
        signs_sha256: sha256_hex(&signs_json(&s)),
    })
}

/// Runs seeds `first..first + count` on `workers` threads. Lines are
/// written whole as runs finish; with `sorted` they are written in seed
/// order once all runs are done.
pub fn run_sweep(
    d: u32,
    first: u64,
    count: u64,
    workers: usize,
    sorted: bool,
    out: &mut dyn Write,
) -> Result<usize, CliError> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers.max(1))
        .build()
        .map_err(|e| CliError::Domain(format!("thread pool: {e}")))?;
    let seeds: Vec<u64> = (0..count).map(|i| first.wrapping_add(i)).collect();
    let io = |e: std::io::Error| CliError::Io(e.to_string());
    if sorted {
        let records: Result<Vec<SweepRecord>, CliError> =
            pool.install(|| seeds.par_iter().map(|&s| sweep_one(d, s)).collect());
        let records = records?;
        for r in &records {
            writeln!(out, "{}", serde_json::to_string(r).expect("serializable")).map_err(io)?;
        }
        return Ok(records.len());
    }
    let (tx, rx) = mpsc::channel::<Result<SweepRecord, CliError>>();
    let mut written = 0;
    let mut failure = None;
    std::thread::scope(|scope| {
        scope.spawn(|| {
            pool.install(|| {
                seeds.par_iter().for_each_with(tx, |tx, &s| {
                    let _ = tx.send(sweep_one(d, s));
                })
            })
        });
        for item in rx {
            match item {
                Ok(r) if failure.is_none() => {
                    if let Err(e) = writeln!(out, "{}", serde_json::to_string(&r).expect("serializable")) {
                        failure = Some(io(e));
                    } else {
                        written += 1;
                    }
                }
                Ok(_) => {}
                Err(e) => {
                    failure.get_or_insert(e);
                }
            }
        }
    });
    match failure {
        Some(e) => Err(e),
        None => Ok(written),
    }
}
