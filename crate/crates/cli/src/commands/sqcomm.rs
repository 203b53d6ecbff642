use std::path::PathBuf;

use clap::ValueEnum;
use sumset_core::bounds::RemovedComponentGraph;
use sumset_core::hypergraph::{check_square_commutativity, Direction, Layered, SqCommMethod, SqCommVerdict, VertexId};
use sumset_core::{HypercubeGraph, IndexSet};

use super::{exactly_one, set_arg};
use crate::error::{CliError, Result};
use crate::instance::{read_graph, read_instance};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Matching,
    Exhaustive,
}

#[derive(clap::Args)]
pub struct Args {
    /// Instance file; its addition graph is checked.
    instance: Option<PathBuf>,
    /// Graph file instead of an instance.
    #[arg(long)]
    graph: Option<PathBuf>,
    /// Use the removed-component graph for this E (JSON list of vectors).
    #[arg(long, conflicts_with = "graph")]
    removed: Option<String>,
    /// Multiply by the graph of another file of the same kind.
    #[arg(long)]
    product: Option<PathBuf>,
    /// Restrict to the channel `I|X|J|Y`: index sets as 1-based members and
    /// X, Y as positions inside U_I and U_J, all comma-separated.
    #[arg(long)]
    channel: Option<String>,
    #[arg(long, value_enum, default_value_t = Method::Matching)]
    method: Method,
}

fn list(s: &str, what: &str) -> Result<Vec<usize>> {
    s.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| t.parse().map_err(|_| CliError::Usage(format!("--channel: bad {what} entry {t:?}"))))
        .collect()
}

fn positions(g: &HypercubeGraph, class: IndexSet, pos: &[usize]) -> Result<Vec<VertexId>> {
    let range = g.class(class);
    pos.iter()
        .map(|&p| {
            (p < range.len())
                .then(|| range.start + p)
                .ok_or_else(|| CliError::Usage(format!("--channel: position {p} outside a class of {}", range.len())))
        })
        .collect()
}

fn channel(g: &HypercubeGraph, spec: &str) -> Result<HypercubeGraph> {
    let parts: Vec<&str> = spec.split('|').collect();
    let [i, x, j, y] = parts[..] else {
        return Err(CliError::Usage("--channel expects I|X|J|Y".into()));
    };
    let index = |s: &str| -> Result<IndexSet> {
        IndexSet::new(g.h(), &list(s, "index")?).map_err(|e| CliError::Usage(format!("--channel: {e}")))
    };
    let (from, to) = (index(i)?, index(j)?);
    let xs = positions(g, from, &list(x, "X")?)?;
    let ys = positions(g, to, &list(y, "Y")?)?;
    Ok(g.channel(from, &xs, to, &ys)?)
}

fn members(i: IndexSet) -> Vec<usize> {
    i.members().collect()
}

pub fn run(a: Args) -> Result<bool> {
    exactly_one(a.instance.as_deref(), a.graph.as_deref())?;
    // witnesses use file numbering while the graph is the file's own
    let mut file_ids: Option<Vec<usize>> = None;
    let mut g = if let Some(path) = &a.graph {
        let f = read_graph(path)?;
        let mut g = f.graph;
        file_ids = Some(f.to_file);
        if let Some(other) = &a.product {
            g = g.product(&read_graph(other)?.graph)?;
            file_ids = None;
        }
        g
    } else {
        let inst = read_instance(a.instance.as_deref().expect("checked above"))?.instance;
        let mut g = match &a.removed {
            Some(s) => RemovedComponentGraph::new(&inst, &set_arg(s, inst.spec(), "--removed")?)?.graph().clone(),
            None => HypercubeGraph::addition_graph(&inst),
        };
        if let Some(other) = &a.product {
            g = g.product(&HypercubeGraph::addition_graph(&read_instance(other)?.instance))?;
        }
        g
    };
    if let Some(spec) = &a.channel {
        g = channel(&g, spec)?;
        file_ids = None;
    }
    let ids = |vs: &[VertexId]| -> Vec<usize> {
        match &file_ids {
            Some(map) => vs.iter().map(|&v| map[v]).collect(),
            None => vs.to_vec(),
        }
    };
    let method = match a.method {
        Method::Matching => SqCommMethod::Matching,
        Method::Exhaustive => SqCommMethod::Exhaustive,
    };
    println!("h={} vertices={} edges={}", g.h(), g.num_vertices(), g.num_edges());
    match check_square_commutativity(&g, method) {
        SqCommVerdict::Pass => {
            println!("square commutative: yes");
            Ok(true)
        }
        SqCommVerdict::Fail(w) => {
            let (i, i1, i2) = w.chain;
            println!("square commutative: no");
            println!("direction     {}", if w.direction == Direction::Upward { "upward" } else { "downward" });
            println!("chain         {:?} -> {:?} -> {:?}", members(i), members(i1), members(i2));
            println!("associate     {:?}", members(w.associate));
            println!("fixed         {:?}", ids(&[w.fixed.0, w.fixed.1]));
            println!("violator      {:?}", ids(&w.violator));
            println!("neighbourhood {:?}", ids(&w.neighbourhood));
            Ok(false)
        }
    }
}
