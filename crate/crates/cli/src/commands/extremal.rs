use std::path::PathBuf;

use serde_json::json;
use sumset_core::extremal::{
    build_section4_example, enumerate_section4, equalizing_sizes, lift_with_generators, predicted_cardinalities,
    sharpness_ratio, ExtremalParams, DEFAULT_BUDGET,
};
use sumset_core::rational::{int, to_fraction_string, DEFAULT_PRECISION_BITS, MAX_PRECISION_BITS};
use sumset_core::Rational;

use crate::error::{CliError, Result};
use crate::instance::{write_instance, InstanceFile};
use crate::report::interval_string;

#[derive(clap::Args)]
pub struct Args {
    #[arg(long)]
    h: u32,
    /// Side length of the grid part; h - 1 must divide a^(h-1).
    #[arg(long)]
    a: u64,
    /// Spacing of the grid part.
    #[arg(long, default_value_t = 1)]
    l: u64,
    /// Lift with free generator blocks of these sizes, comma-separated.
    #[arg(long, value_delimiter = ',', conflicts_with = "equalize")]
    lift: Option<Vec<u64>>,
    /// Lift with the block sizes that make every alpha_i n_i equal.
    #[arg(long)]
    equalize: bool,
    /// Largest top sumset to enumerate.
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    budget: u128,
    #[arg(long, default_value_t = DEFAULT_PRECISION_BITS, value_parser = clap::value_parser!(u32).range(8..=MAX_PRECISION_BITS as i64))]
    precision: u32,
    /// Instance output path.
    #[arg(long)]
    out: Option<PathBuf>,
}

fn line(name: &str, predicted: &Rational, got: usize) -> bool {
    let ok = *predicted == int(got as u64);
    println!("{name:<14} predicted {:<12} enumerated {got:<10} {}", to_fraction_string(predicted), if ok { "ok" } else { "MISMATCH" });
    ok
}

pub fn run(a: Args) -> Result<bool> {
    let p = ExtremalParams::new(a.h, a.a, a.l)?;
    let inst = build_section4_example(&p, a.budget)?;
    let counts = enumerate_section4(&p, &inst)?;
    let pr = predicted_cardinalities(&p);
    println!("group          Z_{}^{}", p.b(), p.k());
    let mut ok = line("|A|", &pr.m, counts.m);
    for (i, &s) in counts.sums_with_bi.iter().enumerate() {
        ok &= line(&format!("|A+B_{}|", i + 1), &pr.sum_with_bi_upper, s);
    }
    ok &= line("|A+B_1+..+B_h|", &pr.top, counts.top);
    let lower = int(counts.top as u64) >= pr.lower_bound;
    println!("lower bound    {} <= {} {}", to_fraction_string(&pr.lower_bound), counts.top, if lower { "ok" } else { "FAILS" });
    ok &= lower;
    let disjoint = counts.a1_a2_disjoint && counts.a2_translates_disjoint;
    println!("disjointness   {}", if disjoint { "ok" } else { "FAILS" });
    ok &= disjoint;

    let top = counts.top as u64;
    let m = counts.m as u64;
    let h = p.h() as usize;
    let fixed = sharpness_ratio(top, &vec![pr.alpha.clone(); h], m, a.precision);
    let tight = sharpness_ratio(top, &inst.alphas(), m, a.precision);
    println!("target         {}", to_fraction_string(&pr.target_constant));
    println!("sharpness      {} (alpha = {})", interval_string(&fixed, a.precision), to_fraction_string(&pr.alpha));
    println!("sharpness      {} (alpha_i = |A+B_i|/|A|)", interval_string(&tight, a.precision));

    let sizes = match (&a.lift, a.equalize) {
        (Some(sizes), _) => Some(sizes.clone()),
        (None, true) => Some(equalizing_sizes(&inst.alphas())?),
        (None, false) => None,
    };
    let (out_inst, meta) = match &sizes {
        Some(sizes) => {
            if sizes.len() != h {
                return Err(CliError::Usage(format!("--lift needs {h} sizes, got {}", sizes.len())));
            }
            let lifted = lift_with_generators(&inst, sizes, a.budget)?;
            let alphas: Vec<String> = lifted.alphas().iter().map(to_fraction_string).collect();
            println!("lifted         sizes {sizes:?}, alphas [{}], top {}", alphas.join(", "), lifted.full_sumset().len());
            (lifted, json!({"construction": "extremal", "h": p.h(), "a": p.a(), "l": p.l(), "lift": sizes}))
        }
        None => (inst, json!({"construction": "extremal", "h": p.h(), "a": p.a(), "l": p.l()})),
    };
    if let Some(path) = &a.out {
        write_instance(path, &InstanceFile { instance: out_inst, meta: Some(meta) })?;
    }
    Ok(ok)
}
