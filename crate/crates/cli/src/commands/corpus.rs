use std::fs;
use std::path::PathBuf;

use serde_json::json;
use sumset_core::corpus::{generate, CorpusParams, DEFAULT_SEED};

use crate::error::{CliError, Result};
use crate::instance::{to_text, write_instance, InstanceFile};

#[derive(clap::Args)]
pub struct Args {
    #[arg(long, default_value_t = 200)]
    count: usize,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    #[arg(long, default_value_t = 1)]
    h_min: usize,
    #[arg(long, default_value_t = 3)]
    h_max: usize,
    /// Moduli to draw from; 0 is Z.
    #[arg(long, value_delimiter = ',', default_value = "0,2,3,4,5,6,7,8,9,10,11,12")]
    moduli: Vec<u64>,
    #[arg(long, default_value_t = 2)]
    max_dim: usize,
    #[arg(long, default_value_t = 8)]
    max_a: usize,
    #[arg(long, default_value_t = 4)]
    max_b: usize,
    /// Coordinates on Z factors are drawn from 0..z-range.
    #[arg(long, default_value_t = 8)]
    z_range: i64,
    /// Directory for instance-NNN.json files; stdout otherwise.
    #[arg(long)]
    out: Option<PathBuf>,
}

pub fn run(a: Args) -> Result<bool> {
    let p = CorpusParams {
        count: a.count,
        h_min: a.h_min,
        h_max: a.h_max,
        moduli: a.moduli.clone(),
        max_dim: a.max_dim,
        max_a: a.max_a,
        max_b: a.max_b,
        z_range: a.z_range,
        seed: a.seed,
    };
    let instances = generate(&p).map_err(|e| CliError::Usage(e.to_string()))?;
    if let Some(dir) = &a.out {
        fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))?;
    }
    let width = a.count.saturating_sub(1).to_string().len().max(3);
    for (i, instance) in instances.into_iter().enumerate() {
        let f = InstanceFile { instance, meta: Some(json!({"corpus_seed": a.seed, "index": i})) };
        match &a.out {
            Some(dir) => write_instance(&dir.join(format!("instance-{i:0width$}.json")), &f)?,
            None => print!("{}", to_text(&f)),
        }
    }
    if let Some(dir) = &a.out {
        println!("wrote {} instances to {}", a.count, dir.display());
    }
    Ok(true)
}
