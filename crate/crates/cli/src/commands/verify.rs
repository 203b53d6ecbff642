use std::path::PathBuf;
use std::time::Instant;

use clap::ValueEnum;
use sumset_core::bounds::{
    check_balister_bollobas, check_cor518, check_lemma513, check_prop31, check_thm11, check_thm515, check_thm517,
    find_dense_subset_eps, find_ruzsa_subset, sample_removed_sets, BoundRecord, SubsetPolicy,
};
use sumset_core::corpus::DEFAULT_SEED;
use sumset_core::magnification::DEFAULT_CAP;
use sumset_core::rational::{DEFAULT_PRECISION_BITS, MAX_PRECISION_BITS};
use sumset_core::{HypercubeGraph, SumsetInstance};

use super::{fraction_arg, set_arg};
use crate::error::Result;
use crate::instance::read_instance;
use crate::report::{Report, Row};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, ValueEnum)]
pub enum Check {
    Thm11,
    Prop31,
    Thm21,
    Thm22,
    Eps,
    Cor518,
    Thm515,
    Thm517,
    Lemma513,
}

#[derive(clap::Args)]
pub struct Args {
    /// Instance file.
    instance: PathBuf,
    /// Comma-separated checks to run.
    #[arg(long, value_enum, value_delimiter = ',', default_value = "thm11,prop31,thm21,thm22,eps,cor518,thm515,thm517,lemma513")]
    checks: Vec<Check>,
    /// Largest |A| (or source layer) for subset enumeration.
    #[arg(long, default_value_t = DEFAULT_CAP)]
    cap: usize,
    /// Seed for sampled subsets.
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Interval precision in bits.
    #[arg(long, default_value_t = DEFAULT_PRECISION_BITS, value_parser = clap::value_parser!(u32).range(8..=MAX_PRECISION_BITS as i64))]
    precision: u32,
    /// Density parameter for the eps check.
    #[arg(long, default_value = "1/2")]
    eps: String,
    /// Common alpha for the partition chain; defaults to max alpha_i.
    #[arg(long)]
    alpha: Option<String>,
    /// Sampled subsets C when B_1 + ... + B_h is too large to enumerate.
    #[arg(long, default_value_t = 50)]
    samples: usize,
    /// E for cor518 as a JSON list of vectors; by default up to 10 sampled
    /// subsets of A of size at most 3.
    #[arg(long)]
    removed: Option<String>,
    /// Second instance for lemma513; defaults to the instance itself.
    #[arg(long)]
    product: Option<PathBuf>,
    /// JSON report path.
    #[arg(long)]
    out: Option<PathBuf>,
    /// CSV report path.
    #[arg(long)]
    csv: Option<PathBuf>,
    /// Fill the ms column. Reports are no longer reproducible byte for byte.
    #[arg(long)]
    timing: bool,
}

fn run_check(a: &Args, inst: &SumsetInstance, other: Option<&SumsetInstance>, check: Check) -> Result<Vec<BoundRecord>> {
    let bits = a.precision;
    let g = || HypercubeGraph::addition_graph(inst);
    Ok(match check {
        Check::Thm11 => vec![check_thm11(inst, bits)],
        Check::Prop31 => {
            let alpha = a.alpha.as_deref().map(|s| fraction_arg(s, "--alpha")).transpose()?;
            check_prop31(inst, alpha, a.cap, bits)?.1
        }
        Check::Thm21 => check_balister_bollobas(inst, SubsetPolicy::auto(inst, a.samples, a.seed), bits)?,
        Check::Thm22 => find_ruzsa_subset(inst, a.cap)?.1,
        Check::Eps => find_dense_subset_eps(inst, &fraction_arg(&a.eps, "--eps")?, a.cap)?.1,
        Check::Cor518 => {
            let es = match &a.removed {
                Some(s) => vec![set_arg(s, inst.spec(), "--removed")?],
                None => sample_removed_sets(inst, 3, 10, a.seed),
            };
            es.iter()
                .map(|e| {
                    let mut r = check_cor518(inst, e, a.cap)?;
                    r.name = format!("E={e:?}");
                    Ok(r)
                })
                .collect::<Result<_>>()?
        }
        Check::Thm515 => check_thm515(&g(), Some(inst.spec()), a.cap)?,
        Check::Thm517 => check_thm517(&g(), Some(inst.spec()), a.cap)?,
        Check::Lemma513 => {
            let g2 = HypercubeGraph::addition_graph(other.unwrap_or(inst));
            check_lemma513(&g(), &g2, a.cap)?
        }
    })
}

pub fn run(a: Args) -> Result<bool> {
    let file = read_instance(&a.instance)?;
    let inst = &file.instance;
    let other = a.product.as_deref().map(read_instance).transpose()?.map(|f| f.instance);
    let mut checks = a.checks.clone();
    checks.sort();
    checks.dedup();
    let mut report = Report::new(a.instance.display().to_string(), a.precision, a.cap, a.seed);
    for check in checks {
        let start = Instant::now();
        let records = run_check(&a, inst, other.as_ref(), check)?;
        let ms = a.timing.then(|| start.elapsed().as_millis() as u64);
        for r in &records {
            report.push(Row::from_record(r, a.precision), ms);
        }
    }
    print!("{}", report.summary());
    report.write(a.out.as_deref(), a.csv.as_deref())?;
    if let Some(bad) = report.first_failure() {
        eprintln!(
            "counterexample: {}/{}: {} <= {} fails; witness {}",
            bad.check, bad.name, bad.lhs, bad.rhs, bad.witness
        );
    }
    Ok(report.all_hold)
}
