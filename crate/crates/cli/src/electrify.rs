//! `electrify`: metric queries on a graph and on its electrification.
//!
//! Queries, one per `--query` flag or per line of `--queries`:
//!
//! ```text
//! distance v0 v4
//! delta
//! diameter v0,v1,v2
//! projection v0,v1,v2 v5
//! projection-scan v0,v1,v2,v3
//! quasiconvexity v0,v4 [radius_cap]
//! ```
//!
//! Every query is answered on the base graph and on the coned-off graph;
//! lengths are in half-units.

use std::path::PathBuf;

use clap::Args;
use curvegraph::graphcore::{
    delta_four_point, diameter, distance, electrify, nearest_point_projection, projection_diameter,
    quasiconvexity_constant, FamilyDoc, GraphDoc, GraphError, Quadruples, Reach, Space, VertexId,
};

use crate::output::read_input;
use crate::{CliError, ExperimentConfig, Global, Table};

#[derive(Clone, Debug, Args)]
pub struct ElectrifyArgs {
    /// Graph document (JSON); its `families` are used unless `--family` is given.
    #[arg(long)]
    pub graph: PathBuf,
    /// JSON list of `{"label": ..., "members": [...]}` replacing the inline families.
    #[arg(long)]
    pub family: Option<PathBuf>,
    #[arg(long = "query")]
    pub queries: Vec<String>,
    /// File with one query per line; `#` starts a comment.
    #[arg(long = "queries")]
    pub query_file: Option<PathBuf>,
}

pub const COLUMNS: [&str; 4] = ["query", "subject", "base", "electrified"];

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Query {
    Distance(String, String),
    Delta,
    Diameter(Vec<String>),
    Projection(Vec<String>, Vec<String>),
    ProjectionScan(Vec<String>),
    Quasiconvexity(Vec<String>, u32),
}

fn names(s: &str) -> Vec<String> {
    s.split(',')
        .map(|x| x.trim().to_string())
        .filter(|x| !x.is_empty())
        .collect()
}

impl Query {
    pub fn parse(line: &str) -> Result<Query, CliError> {
        let words: Vec<&str> = line.split_whitespace().collect();
        let bad = || CliError::Input(format!("cannot read query {line:?}"));
        let q = match words.as_slice() {
            ["distance", u, v] => Query::Distance(u.to_string(), v.to_string()),
            ["delta"] => Query::Delta,
            ["diameter", set] => Query::Diameter(names(set)),
            ["projection", target, source] => Query::Projection(names(target), names(source)),
            ["projection-scan", axis] => Query::ProjectionScan(names(axis)),
            ["quasiconvexity", set] => Query::Quasiconvexity(names(set), 64),
            ["quasiconvexity", set, cap] => Query::Quasiconvexity(names(set), cap.parse().map_err(|_| bad())?),
            _ => return Err(bad()),
        };
        Ok(q)
    }
}

fn reach(r: Reach) -> String {
    match r {
        Reach::At(d) => d.0.to_string(),
        Reach::Unreachable => "unreachable".into(),
        Reach::CapExceeded => "cap_exceeded".into(),
    }
}

fn ids<S: Space + ?Sized>(space: &S, names: &[String]) -> Result<Vec<VertexId>, GraphError> {
    names.iter().map(|n| space.id(n)).collect()
}

fn set_names<S: Space + ?Sized>(space: &S, set: &[VertexId]) -> String {
    set.iter().map(|&v| space.vertex_name(v)).collect::<Vec<_>>().join(";")
}

fn input(e: GraphError) -> CliError {
    CliError::Input(e.to_string())
}

/// One query on one space. Scans are handled by the caller.
fn answer<S: Space + ?Sized>(space: &S, q: &Query, seed: u64, samples: usize) -> Result<String, GraphError> {
    Ok(match q {
        Query::Distance(u, v) => reach(distance(space, space.id(u)?, space.id(v)?, None)?),
        Query::Delta => {
            let vs = (0..space.vertex_count()).map(VertexId).collect();
            delta_four_point(space, &Quadruples::auto(vs, samples, seed))?
                .half_units
                .to_string()
        }
        Query::Diameter(set) => diameter(space, &ids(space, set)?)?.0.to_string(),
        Query::Projection(target, source) => set_names(
            space,
            &nearest_point_projection(space, &ids(space, target)?, &ids(space, source)?)?,
        ),
        Query::Quasiconvexity(set, cap) => match quasiconvexity_constant(space, &ids(space, set)?, *cap) {
            Ok(k) => k.0.to_string(),
            Err(GraphError::CapExceeded(_)) => "cap_exceeded".into(),
            Err(e) => return Err(e),
        },
        Query::ProjectionScan(_) => unreachable!("scans are answered per member"),
    })
}

fn subject(q: &Query) -> String {
    match q {
        Query::Distance(u, v) => format!("{u} {v}"),
        Query::Delta => String::new(),
        Query::Diameter(s) | Query::ProjectionScan(s) => s.join(","),
        Query::Projection(t, s) => format!("{} {}", t.join(","), s.join(",")),
        Query::Quasiconvexity(s, cap) => format!("{} {cap}", s.join(",")),
    }
}

fn kind(q: &Query) -> &'static str {
    match q {
        Query::Distance(..) => "distance",
        Query::Delta => "delta",
        Query::Diameter(_) => "diameter",
        Query::Projection(..) => "projection",
        Query::ProjectionScan(_) => "projection-scan",
        Query::Quasiconvexity(..) => "quasiconvexity",
    }
}

/// Answers every query; a projection scan gives one row per family member.
pub fn table(doc: &GraphDoc, queries: &[Query], seed: u64, samples: usize) -> Result<Table, CliError> {
    let (g, fam) = doc.build().map_err(input)?;
    let z = electrify(&g, &fam).map_err(input)?;
    let mut t = Table::new(&COLUMNS);
    t.note(format!(
        "vertices={} edges={} members={}",
        g.vertex_count(),
        g.edges().len(),
        fam.len()
    ));
    for q in queries {
        if let Query::ProjectionScan(axis) = q {
            let axis_ids = ids(&g, axis).map_err(input)?;
            for (i, m) in fam.members().iter().enumerate() {
                let on_base = projection_diameter(&g, &axis_ids, &m.vertices).map_err(input)?;
                let on_z = projection_diameter(&z, &axis_ids, &m.vertices).map_err(input)?;
                t.push(vec![
                    kind(q).into(),
                    format!("{} {}", axis.join(","), fam.label(i)),
                    on_base.0.to_string(),
                    on_z.0.to_string(),
                ]);
            }
            continue;
        }
        t.push(vec![
            kind(q).into(),
            subject(q),
            answer(&g, q, seed, samples).map_err(input)?,
            answer(&z, q, seed, samples).map_err(input)?,
        ]);
    }
    Ok(t)
}

pub fn parse_graph(path: &str, text: &str) -> Result<GraphDoc, CliError> {
    GraphDoc::parse(text).map_err(|e| CliError::Input(format!("{path}: {e}")))
}

pub fn run(a: &ElectrifyArgs, g: &Global) -> Result<(Table, ExperimentConfig), CliError> {
    let mut cfg = g.config("electrify");
    let text = read_input(&a.graph)?;
    cfg.input("graph", &text);
    let mut doc = parse_graph(&a.graph.display().to_string(), &text)?;
    if let Some(p) = &a.family {
        let ftext = read_input(p)?;
        cfg.input("family", &ftext);
        doc.families = serde_json::from_str::<Vec<FamilyDoc>>(&ftext)
            .map_err(|e| CliError::Input(format!("{}: schema: {e}", p.display())))?;
    }
    let mut lines = a.queries.clone();
    if let Some(p) = &a.query_file {
        let qtext = read_input(p)?;
        cfg.input("queries", &qtext);
        lines.extend(
            qtext
                .lines()
                .map(|l| l.split('#').next().unwrap_or("").trim().to_string())
                .filter(|l| !l.is_empty()),
        );
    }
    cfg.set("query", lines.join("; "));
    let queries = lines.iter().map(|l| Query::parse(l)).collect::<Result<Vec<_>, _>>()?;
    Ok((table(&doc, &queries, g.seed, g.cap_samples)?, cfg))
}
