use std::path::PathBuf;

use clap::ValueEnum;
use sumset_core::hypergraph::VertexId;
use sumset_core::magnification::{mu_bruteforce, mu_matching, ratio_of, MagnificationResult, DEFAULT_CAP};
use sumset_core::rational::to_fraction_string;
use sumset_core::{GSet, HypercubeGraph};

use super::exactly_one;
use crate::error::Result;
use crate::instance::{read_graph, read_instance, GraphFile};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MuMethod {
    Brute,
    Matching,
    Both,
}

#[derive(clap::Args)]
pub struct Args {
    /// Instance file; its addition graph is used.
    instance: Option<PathBuf>,
    /// Graph file instead of an instance.
    #[arg(long)]
    graph: Option<PathBuf>,
    #[arg(long, default_value_t = 1)]
    level: usize,
    #[arg(long, value_enum, default_value_t = MuMethod::Both)]
    method: MuMethod,
    /// Largest source layer for brute force.
    #[arg(long, default_value_t = DEFAULT_CAP)]
    cap: usize,
}

/// Renders vertex sets as group elements or as file vertex ids.
pub enum Labels {
    Elements(sumset_core::GroupSpec),
    File(GraphFile),
}

impl Labels {
    pub fn render(&self, g: &HypercubeGraph, vs: &[VertexId]) -> String {
        match self {
            Labels::Elements(spec) => {
                let set = GSet::from_elements(spec.clone(), vs.iter().filter_map(|&v| g.payload(v).cloned()))
                    .expect("payloads share the spec");
                format!("{set:?}")
            }
            Labels::File(f) => format!("{:?}", f.file_ids(vs)),
        }
    }
}

pub fn load(instance: Option<&std::path::Path>, graph: Option<&std::path::Path>) -> Result<(HypercubeGraph, Labels)> {
    exactly_one(instance, graph)?;
    if let Some(path) = graph {
        let f = read_graph(path)?;
        Ok((f.graph.clone(), Labels::File(f)))
    } else {
        let inst = read_instance(instance.expect("checked above"))?.instance;
        Ok((HypercubeGraph::addition_graph(&inst), Labels::Elements(inst.spec().clone())))
    }
}

fn show(g: &HypercubeGraph, labels: &Labels, r: &MagnificationResult, level: usize) -> Result<bool> {
    let valid = ratio_of(g, &r.achiever, level)? == r.value;
    println!(
        "{:<8} mu_{level} = {}  achiever {}{}",
        r.method.as_str(),
        to_fraction_string(&r.value),
        labels.render(g, &r.achiever),
        if valid { "" } else { "  (INVALID)" }
    );
    Ok(valid)
}

pub fn run(a: Args) -> Result<bool> {
    let (g, labels) = load(a.instance.as_deref(), a.graph.as_deref())?;
    let brute = matches!(a.method, MuMethod::Brute | MuMethod::Both).then(|| mu_bruteforce(&g, a.level, a.cap)).transpose()?;
    let flow = matches!(a.method, MuMethod::Matching | MuMethod::Both).then(|| mu_matching(&g, a.level)).transpose()?;
    let mut ok = true;
    for r in brute.iter().chain(&flow) {
        ok &= show(&g, &labels, r, a.level)?;
    }
    if let (Some(b), Some(f)) = (&brute, &flow) {
        let agree = b.value == f.value;
        println!("methods {}", if agree { "agree" } else { "DISAGREE" });
        ok &= agree;
    }
    Ok(ok)
}
