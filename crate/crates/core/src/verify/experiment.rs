//! Named pipelines and bound tables over instance lists.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use super::validate_partition;
use crate::config::Budgets;
use crate::constructions::{
    degree_partition, induced_p3_forest_partition, induced_star_forest_free_partition,
    induced_star_free_partition, induced_utw0_partition, k1t_partition, path_free_partition,
    spider_free_partition, InducedZeroMode,
};
use crate::coverings::Covering;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::oracles::{
    k2t_menger_oracle, minor_free_oracle, outer_k_planar_oracle, topo_minor_oracle,
    CircularDrawing, EpMode,
};
use crate::partition::CTreePartition;
use crate::partitioner::{
    compute_partition, compute_partition_cd, CheckMode, PartitionOptions, PartitionRun,
};
use crate::treewidth::best_td;

/// Version of the JSON table layout.
pub const SCHEMA_VERSION: u32 = 1;

/// A graph class together with the construction used for it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Pipeline {
    Degree,
    MinorFree(usize),
    Topo(usize),
    K2t,
    OuterK(usize),
    Spider(usize, usize),
    Path(usize),
    InducedStar(usize),
    InducedStarForest(usize, usize),
    InducedP3(usize),
    Cliques,
    SmallAlpha(usize),
    K1t(usize),
}

impl fmt::Display for Pipeline {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Pipeline::Degree => write!(f, "degree"),
            Pipeline::MinorFree(s) => write!(f, "minor-free:{s}"),
            Pipeline::Topo(p) => write!(f, "topo:{p}"),
            Pipeline::K2t => write!(f, "k2t"),
            Pipeline::OuterK(k) => write!(f, "outer-k:{k}"),
            Pipeline::Spider(s, t) => write!(f, "spider:{s},{t}"),
            Pipeline::Path(n) => write!(f, "path:{n}"),
            Pipeline::InducedStar(s) => write!(f, "induced-star:{s}"),
            Pipeline::InducedStarForest(s, l) => write!(f, "induced-star-forest:{s},{l}"),
            Pipeline::InducedP3(k) => write!(f, "induced-p3:{k}"),
            Pipeline::Cliques => write!(f, "cliques"),
            Pipeline::SmallAlpha(k) => write!(f, "small-alpha:{k}"),
            Pipeline::K1t(t) => write!(f, "k1t:{t}"),
        }
    }
}

impl FromStr for Pipeline {
    type Err = Error;

    fn from_str(s: &str) -> Result<Pipeline> {
        let (name, args) = s.trim().split_once(':').unwrap_or((s.trim(), ""));
        let nums: Vec<usize> = if args.is_empty() {
            Vec::new()
        } else {
            args.split(',')
                .map(|a| a.trim().parse::<usize>())
                .collect::<std::result::Result<_, _>>()
                .map_err(|_| Error::InvalidSpec(format!("bad arguments in `{s}`")))?
        };
        let arity = |k: usize| -> Result<()> {
            if nums.len() == k {
                Ok(())
            } else {
                Err(Error::InvalidSpec(format!(
                    "`{name}` takes {k} argument(s), got {}",
                    nums.len()
                )))
            }
        };
        let p = match name {
            "degree" => arity(0).map(|_| Pipeline::Degree),
            "minor-free" => arity(1).map(|_| Pipeline::MinorFree(nums[0])),
            "topo" => arity(1).map(|_| Pipeline::Topo(nums[0])),
            "k2t" => arity(0).map(|_| Pipeline::K2t),
            "outer-k" => arity(1).map(|_| Pipeline::OuterK(nums[0])),
            "spider" => arity(2).map(|_| Pipeline::Spider(nums[0], nums[1])),
            "path" => arity(1).map(|_| Pipeline::Path(nums[0])),
            "induced-star" => arity(1).map(|_| Pipeline::InducedStar(nums[0])),
            "induced-star-forest" => {
                arity(2).map(|_| Pipeline::InducedStarForest(nums[0], nums[1]))
            }
            "induced-p3" => arity(1).map(|_| Pipeline::InducedP3(nums[0])),
            "cliques" => arity(0).map(|_| Pipeline::Cliques),
            "small-alpha" => arity(1).map(|_| Pipeline::SmallAlpha(nums[0])),
            "k1t" => arity(1).map(|_| Pipeline::K1t(nums[0])),
            _ => Err(Error::InvalidSpec(format!("unknown class `{name}`"))),
        }?;
        if matches!(p, Pipeline::MinorFree(0) | Pipeline::Topo(0)) {
            return Err(Error::InvalidSpec(format!(
                "`{s}` needs a positive parameter"
            )));
        }
        Ok(p)
    }
}

impl Pipeline {
    /// The `c` of the partitions this pipeline produces, when it does not depend on the input.
    pub fn c(&self) -> usize {
        match *self {
            Pipeline::Degree
            | Pipeline::InducedStar(_)
            | Pipeline::InducedP3(_)
            | Pipeline::K1t(_) => 1,
            Pipeline::MinorFree(s) => s,
            Pipeline::Topo(p) => p,
            Pipeline::K2t | Pipeline::OuterK(_) | Pipeline::InducedStarForest(..) => 2,
            Pipeline::Spider(_, t) => t.max(1).ilog2() as usize + 1,
            Pipeline::Path(n) => (n.max(2).ilog2() as usize).saturating_sub(1),
            Pipeline::Cliques | Pipeline::SmallAlpha(_) => 0,
        }
    }
}

/// A pipeline's partition with the quantities of its bound.
#[derive(Debug, Clone)]
pub struct PipelineOutput {
    pub partition: CTreePartition,
    pub k: usize,
    pub ell: usize,
    /// The proven width bound, when the pipeline has one.
    pub bound: Option<usize>,
    pub flags: Vec<String>,
}

impl PipelineOutput {
    fn from_run(run: PartitionRun) -> Self {
        let mut out = PipelineOutput {
            k: run.k,
            ell: run.ell,
            bound: Some(run.bound),
            flags: Vec::new(),
            partition: run.partition,
        };
        if run.measured {
            out.flags.push("f measured".into());
        }
        out
    }

    fn from_partition(g: &Graph, p: CTreePartition, budgets: &Budgets) -> Self {
        let meta = |key: &str| p.meta.get(key).and_then(|v| v.parse::<usize>().ok());
        let k = meta("k").unwrap_or_else(|| best_td(g, budgets.tw).0.width() + 1);
        PipelineOutput {
            k,
            ell: meta("ell").unwrap_or(1),
            bound: meta("bound"),
            flags: Vec::new(),
            partition: p,
        }
    }
}

/// Runs `pipeline` on `g`; the outer k-planar pipeline needs a drawing
/// (the convex drawing in vertex order is used when none is given). `mode`
/// controls re-checking of oracle answers inside the partitioner; the final
/// partition is always validated.
pub fn run_pipeline(
    g: &Graph,
    pipeline: Pipeline,
    drawing: Option<&CircularDrawing>,
    budgets: &Budgets,
    mode: CheckMode,
) -> Result<PipelineOutput> {
    let opts = PartitionOptions { mode, k: None };
    let singletons = || Covering::singletons(g.n());
    let trivial_if_empty = |c: usize| -> Option<PipelineOutput> {
        (g.n() == 0).then(|| PipelineOutput {
            partition: CTreePartition::trivial(g, c),
            k: 1,
            ell: 1,
            bound: Some(0),
            flags: Vec::new(),
        })
    };
    if let Some(out) = trivial_if_empty(pipeline.c()) {
        return Ok(out);
    }
    let mut out = match pipeline {
        Pipeline::Degree => {
            PipelineOutput::from_run(degree_partition(g, &best_td(g, budgets.tw).0)?)
        }
        Pipeline::MinorFree(s) | Pipeline::Topo(s) => {
            let (td, _) = best_td(g, budgets.tw);
            let base = if let Pipeline::Topo(_) = pipeline {
                topo_minor_oracle(g, s)
            } else {
                minor_free_oracle(g, s)
            };
            let oracle = base
                .with_decomposition(td.clone())
                .with_mode(EpMode::Auto, budgets.ep);
            let run = compute_partition(g, &td, &singletons(), &oracle, s, opts)?;
            let mut o = PipelineOutput::from_run(run);
            if o.partition
                .meta
                .get("flags")
                .is_some_and(|f| f.contains("unverified"))
            {
                o.flags.push("greedy packing".into());
            }
            o
        }
        Pipeline::K2t => {
            let (td, _) = best_td(g, budgets.tw);
            PipelineOutput::from_run(compute_partition(
                g,
                &td,
                &singletons(),
                &k2t_menger_oracle(g),
                2,
                opts,
            )?)
        }
        Pipeline::OuterK(k) => {
            let convex;
            let d = match drawing {
                Some(d) => d,
                None => {
                    convex = CircularDrawing::convex(g.clone());
                    &convex
                }
            };
            if d.graph() != g {
                return Err(Error::InvalidSpec("drawing is of a different graph".into()));
            }
            let oracle = outer_k_planar_oracle(d, k)?;
            let (td, _) = best_td(g, budgets.tw);
            PipelineOutput::from_run(compute_partition_cd(
                g,
                &td,
                &singletons(),
                oracle,
                2,
                opts,
            )?)
        }
        Pipeline::Spider(s, t) => {
            PipelineOutput::from_partition(g, spider_free_partition(g, s, t, budgets)?, budgets)
        }
        Pipeline::Path(n) => {
            PipelineOutput::from_partition(g, path_free_partition(g, n, budgets)?, budgets)
        }
        Pipeline::InducedStar(s) => {
            PipelineOutput::from_partition(g, induced_star_free_partition(g, s, budgets)?, budgets)
        }
        Pipeline::InducedStarForest(s, l) => PipelineOutput::from_partition(
            g,
            induced_star_forest_free_partition(g, s, l, budgets)?,
            budgets,
        ),
        Pipeline::InducedP3(k) => {
            PipelineOutput::from_partition(g, induced_p3_forest_partition(g, k, budgets)?, budgets)
        }
        Pipeline::Cliques => PipelineOutput::from_partition(
            g,
            induced_utw0_partition(g, InducedZeroMode::ShortPath, budgets)?,
            budgets,
        ),
        Pipeline::SmallAlpha(k) => PipelineOutput::from_partition(
            g,
            induced_utw0_partition(g, InducedZeroMode::Edgeless(k), budgets)?,
            budgets,
        ),
        Pipeline::K1t(t) => PipelineOutput::from_partition(g, k1t_partition(g, t)?, budgets),
    };
    if matches!(pipeline, Pipeline::Spider(..) | Pipeline::Path(_)) {
        // The lift's bound is a measured quantity, not the proven one.
        out.flags.push("bound measured".into());
        out.bound = None;
    }
    if out
        .partition
        .meta
        .get("class_check")
        .is_some_and(|v| v.starts_with("unchecked"))
    {
        out.flags.push("class unchecked".into());
    }
    validate_partition(g, &out.partition).into_result()?;
    Ok(out)
}

/// A named graph to run a pipeline on.
#[derive(Debug, Clone)]
pub struct Instance {
    pub id: String,
    pub graph: Graph,
    pub drawing: Option<CircularDrawing>,
}

impl Instance {
    pub fn new(id: impl Into<String>, graph: Graph) -> Self {
        Instance {
            id: id.into(),
            graph,
            drawing: None,
        }
    }
}

/// One line of an experiment table. Failed runs keep the size columns and
/// put the error in `flags`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExperimentRow {
    pub instance: String,
    pub n: usize,
    pub k: Option<usize>,
    pub c: usize,
    pub ell: Option<usize>,
    pub width: Option<usize>,
    pub bound: Option<usize>,
    pub flags: String,
}

impl ExperimentRow {
    /// Width within bound, or no bound to check.
    pub fn within_bound(&self) -> bool {
        match (self.width, self.bound) {
            (Some(w), Some(b)) => w <= b,
            (Some(_), None) => true,
            _ => false,
        }
    }

    pub fn failed(&self) -> bool {
        self.width.is_none()
    }
}

/// Runs one pipeline on one instance; errors are recorded in the row.
pub fn run_row(pipeline: Pipeline, inst: &Instance, budgets: &Budgets) -> ExperimentRow {
    let base = ExperimentRow {
        instance: inst.id.clone(),
        n: inst.graph.n(),
        k: None,
        c: pipeline.c(),
        ell: None,
        width: None,
        bound: None,
        flags: String::new(),
    };
    match run_pipeline(
        &inst.graph,
        pipeline,
        inst.drawing.as_ref(),
        budgets,
        CheckMode::Checked,
    ) {
        Ok(out) => ExperimentRow {
            k: Some(out.k),
            c: out.partition.c,
            ell: Some(out.ell),
            width: Some(out.partition.width()),
            bound: out.bound,
            flags: out.flags.join(";"),
            ..base
        },
        Err(e) => ExperimentRow {
            flags: format!("error: {e}"),
            ..base
        },
    }
}

/// Runs the pipeline on every instance in parallel, rows in instance order.
pub fn run_experiment(
    pipeline: Pipeline,
    instances: &[Instance],
    budgets: &Budgets,
) -> Vec<ExperimentRow> {
    instances
        .par_iter()
        .map(|inst| run_row(pipeline, inst, budgets))
        .collect()
}

/// CSV with header `instance,n,k,c,ell,width,bound,flags`.
pub fn rows_to_csv(rows: &[ExperimentRow]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.serialize(r).expect("rows serialize");
    }
    if rows.is_empty() {
        w.write_record(["instance", "n", "k", "c", "ell", "width", "bound", "flags"])
            .expect("header");
    }
    String::from_utf8(w.into_inner().expect("flush to memory")).expect("csv is utf-8")
}

/// JSON object `{"schema": 1, "rows": [...]}` with the same fields as the CSV.
pub fn rows_to_json(rows: &[ExperimentRow]) -> String {
    #[derive(Serialize)]
    struct Table<'a> {
        schema: u32,
        rows: &'a [ExperimentRow],
    }
    serde_json::to_string_pretty(&Table {
        schema: SCHEMA_VERSION,
        rows,
    })
    .expect("rows serialize")
}
