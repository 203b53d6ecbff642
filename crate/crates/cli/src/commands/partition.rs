use std::path::PathBuf;

use serde_json::{json, Value};
use sumset_core::bounds::{partition_decompose, PartitionTrace};
use sumset_core::magnification::DEFAULT_CAP;
use sumset_core::rational::{to_fraction_string, DEFAULT_PRECISION_BITS, MAX_PRECISION_BITS};

use crate::error::Result;
use crate::instance::{read_instance, set_value, write_text};
use crate::report::interval_string;

#[derive(clap::Args)]
pub struct Args {
    /// Instance file.
    instance: PathBuf,
    /// JSON trace output path.
    #[arg(long)]
    trace: Option<PathBuf>,
    #[arg(long, default_value_t = DEFAULT_CAP)]
    cap: usize,
    #[arg(long, default_value_t = DEFAULT_PRECISION_BITS, value_parser = clap::value_parser!(u32).range(8..=MAX_PRECISION_BITS as i64))]
    precision: u32,
}

pub fn trace_json(t: &PartitionTrace, bits: u32) -> Value {
    let steps: Vec<Value> = t
        .steps
        .iter()
        .map(|s| {
            json!({
                "e_size": s.e_size,
                "part": set_value(&s.part),
                "mu": to_fraction_string(&s.mu),
                "new_top": s.new_top,
                "step_bound": to_fraction_string(&s.step_bound),
                "elementary_bound": to_fraction_string(&s.elementary_bound),
                "regime": s.regime.as_str(),
                "step_holds": s.step_holds(),
            })
        })
        .collect();
    let d = &t.diagnostics;
    json!({
        "h": t.h,
        "m": t.m,
        "sumset_sizes": t.sumset_sizes,
        "top": t.top,
        "k": t.k(),
        "steps": steps,
        "monotone": t.is_monotone(),
        "size_sum": t.size_sum(),
        "weighted_sum": to_fraction_string(&t.weighted_sum()),
        "weighted_target": to_fraction_string(&t.weighted_target()),
        "top_from_parts": t.top_from_parts(),
        "identities_hold": t.identities_hold(),
        "steps_hold": t.steps_hold(),
        "min_sum": to_fraction_string(&t.min_sum()),
        "min_chain_holds": t.min_chain_holds(),
        "diagnostics": {
            "precision_bits": d.bits,
            "mu_star": interval_string(&d.mu_star, bits),
            "slope": d.slope.as_ref().map(|s| interval_string(s, bits)),
            "slope_bound": interval_string(&d.slope_bound, bits),
            "slope_estimate": d.slope_estimate.as_str(),
        },
    })
}

fn mark(b: bool) -> &'static str {
    if b {
        "ok"
    } else {
        "FAILS"
    }
}

pub fn run(a: Args) -> Result<bool> {
    let file = read_instance(&a.instance)?;
    let t = partition_decompose(&file.instance, a.cap, a.precision)?;
    println!("h={} m={} k={} top={}", t.h, t.m, t.k(), t.top);
    for (j, s) in t.steps.iter().enumerate() {
        println!(
            "X_{} = {:?}  mu = {}  new = {} <= {}  [{}] {}",
            j + 1,
            s.part,
            to_fraction_string(&s.mu),
            s.new_top,
            to_fraction_string(&s.step_bound),
            s.regime.as_str(),
            mark(s.step_holds())
        );
    }
    println!("monotone        {}", mark(t.is_monotone()));
    println!("sizes           {} = {} {}", t.size_sum(), t.m, mark(t.size_sum() == t.m));
    println!(
        "weights         {} = {} {}",
        to_fraction_string(&t.weighted_sum()),
        to_fraction_string(&t.weighted_target()),
        mark(t.weighted_sum() == t.weighted_target())
    );
    println!("min chain       {} <= {} {}", t.top, to_fraction_string(&t.min_sum()), mark(t.min_chain_holds()));
    println!("mu_star         {}", interval_string(&t.diagnostics.mu_star, a.precision));
    println!("slope estimate  {}", t.diagnostics.slope_estimate.as_str());
    if let Some(path) = &a.trace {
        let mut text = serde_json::to_string_pretty(&trace_json(&t, a.precision))?;
        text.push('\n');
        write_text(path, &text)?;
    }
    Ok(t.is_monotone() && t.identities_hold() && t.steps_hold() && t.min_chain_holds())
}
