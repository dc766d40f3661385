//! `wpd`: counts `h` with `d(x, hx) < r` and `d(g^N x, h g^N x) < r`, one
//! row per `N`.
//!
//! Maps file:
//!
//! ```json
//! {"mover": {"label": "g", "images": {"v0": "v1", "v1": "v2"}},
//!  "candidates": [{"label": "id", "images": {"v0": "v0", "v1": "v1"}}]}
//! ```
//!
//! A vertex missing from `images` has left the graph. With `--farey` the
//! graph is a Farey ball and the candidates are the reduced words of bounded
//! length in `T, t, S, s`.

use std::collections::BTreeMap;
use std::path::PathBuf;

use clap::Args;
use curvegraph::farey::{farey_ball, FareyMapClass, Generator, Slope};
use curvegraph::graphcore::{wpd_census_prevalidated, Graph, GraphDoc, Space, VertexId, VertexMap};
use curvegraph::MapClass;
use serde::Deserialize;

use crate::electrify::parse_graph;
use crate::output::read_input;
use crate::{parse_range, CliError, ExperimentConfig, Global, Table};

#[derive(Clone, Debug, Args)]
pub struct WpdArgs {
    /// Graph document (JSON).
    #[arg(long, required_unless_present = "farey", conflicts_with = "farey")]
    pub graph: Option<PathBuf>,
    /// Mover and candidate maps (JSON).
    #[arg(long, required_unless_present = "farey")]
    pub maps: Option<PathBuf>,
    /// Use the Farey ball of radius `--cap-radius` around `--x`.
    #[arg(long)]
    pub farey: bool,
    /// Mover as a row-major matrix `a,b,c,d` (Farey mode).
    #[arg(long, default_value = "2,1,1,1")]
    pub matrix: String,
    /// Longest candidate word (Farey mode).
    #[arg(long, default_value_t = 4)]
    pub word_length: usize,
    #[arg(long, default_value_t = 256)]
    pub height_cap: i64,
    /// Base vertex: a vertex name, or a slope in Farey mode.
    #[arg(long)]
    pub x: String,
    /// Threshold in half-units.
    #[arg(long)]
    pub r: u32,
    /// Powers `lo..hi`.
    #[arg(long, default_value = "1..4")]
    pub powers: String,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MapDoc {
    pub label: String,
    pub images: BTreeMap<String, String>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MapsDoc {
    pub mover: MapDoc,
    pub candidates: Vec<MapDoc>,
}

impl MapDoc {
    pub fn build<S: Space + ?Sized>(&self, space: &S) -> Result<VertexMap, CliError> {
        let mut forward = vec![None; space.vertex_count()];
        for (a, b) in &self.images {
            let (a, b) = (id(space, a)?, id(space, b)?);
            forward[a.0] = Some(b);
        }
        Ok(VertexMap::from_images(self.label.clone(), forward))
    }
}

fn id<S: Space + ?Sized>(space: &S, name: &str) -> Result<VertexId, CliError> {
    space.id(name).map_err(|e| CliError::Input(e.to_string()))
}

/// Runs the census for every power after validating each map once.
pub fn census<S: Space + ?Sized>(
    space: &S,
    candidates: &[VertexMap],
    mover: &VertexMap,
    x: VertexId,
    r: u32,
    powers: (u32, u32),
) -> Result<Table, CliError> {
    let input = |e: curvegraph::graphcore::GraphError| CliError::Input(e.to_string());
    mover.validate(space).map_err(input)?;
    for h in candidates {
        h.validate(space).map_err(input)?;
    }
    let mut t = Table::new(&["power", "count", "witnesses"]);
    t.note(format!(
        "vertices={} candidates={} x={} r={r}",
        space.vertex_count(),
        candidates.len(),
        space.vertex_name(x)
    ));
    for n in powers.0..=powers.1 {
        let c = wpd_census_prevalidated(space, candidates, mover, x, r, n as usize).map_err(input)?;
        let w: Vec<&str> = c.witnesses.iter().map(|&i| candidates[i].label.as_str()).collect();
        t.push(vec![n.to_string(), c.count.to_string(), w.join(" ")]);
    }
    Ok(t)
}

/// Freely reduced words of length at most `max_len`, one per distinct map
/// class, shortest first.
pub fn reduced_words(max_len: usize) -> Vec<(String, MapClass)> {
    let inverse = |g: Generator| match g {
        Generator::T => Generator::TInv,
        Generator::TInv => Generator::T,
        Generator::S => Generator::SInv,
        Generator::SInv => Generator::S,
    };
    let mut out: Vec<(String, MapClass)> = vec![("e".into(), FareyMapClass::identity())];
    let mut layer: Vec<Vec<Generator>> = vec![vec![]];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &layer {
            for g in Generator::ALL {
                if w.last().is_some_and(|&l| inverse(l) == g) {
                    continue;
                }
                let mut v = w.clone();
                v.push(g);
                let m: MapClass = Generator::word(&v);
                if !out.iter().any(|(_, k)| *k == m) {
                    out.push((v.iter().map(|g| g.symbol()).collect(), m));
                }
                next.push(v);
            }
        }
        layer = next;
    }
    out
}

/// The census on a Farey ball around `x`.
pub fn farey_census(
    mover: &MapClass,
    x: Slope,
    radius: u32,
    height_cap: i64,
    word_length: usize,
    r: u32,
    powers: (u32, u32),
) -> Result<Table, CliError> {
    let ball = farey_ball(x, radius, height_cap).map_err(|e| CliError::Input(e.to_string()))?;
    let candidates: Vec<VertexMap> = reduced_words(word_length)
        .iter()
        .map(|(label, m)| ball.vertex_map(m, label.clone()))
        .collect();
    let g = ball.vertex_map(mover, "g");
    let x = ball.id(x).expect("the centre lies in its ball");
    census(ball.graph(), &candidates, &g, x, r, powers)
}

fn parse_matrix(s: &str) -> Result<MapClass, CliError> {
    let e: Vec<i64> = s
        .split(',')
        .map(|x| x.trim().parse())
        .collect::<Result<_, _>>()
        .map_err(|_| CliError::Input(format!("matrix must be a,b,c,d; got {s:?}")))?;
    let e: [i64; 4] = e
        .try_into()
        .map_err(|_| CliError::Input(format!("matrix must have four entries; got {s:?}")))?;
    FareyMapClass::from_row_major(e).map_err(|err| CliError::Input(err.to_string()))
}

pub fn run(a: &WpdArgs, g: &Global) -> Result<(Table, ExperimentConfig), CliError> {
    let mut cfg = g.config("wpd");
    let powers = parse_range(&a.powers, "powers")?;
    cfg.set("powers", &a.powers);
    cfg.set("x", &a.x);
    cfg.set("r", a.r);
    if a.farey {
        cfg.set("matrix", &a.matrix);
        cfg.set("word_length", a.word_length);
        cfg.set("height_cap", a.height_cap);
        let x: Slope = a.x.parse().map_err(|e| CliError::Input(format!("{e}")))?;
        let m = parse_matrix(&a.matrix)?;
        let t = farey_census(&m, x, g.cap_radius, a.height_cap, a.word_length, a.r, powers)?;
        return Ok((t, cfg));
    }
    let gpath = a.graph.as_ref().expect("clap requires a graph");
    let mpath = a.maps.as_ref().expect("clap requires maps");
    let gtext = read_input(gpath)?;
    let mtext = read_input(mpath)?;
    cfg.input("graph", &gtext);
    cfg.input("maps", &mtext);
    let doc: GraphDoc = parse_graph(&gpath.display().to_string(), &gtext)?;
    let (graph, _): (Graph, _) = doc.build().map_err(|e| CliError::Input(e.to_string()))?;
    let maps: MapsDoc =
        serde_json::from_str(&mtext).map_err(|e| CliError::Input(format!("{}: schema: {e}", mpath.display())))?;
    let mover = maps.mover.build(&graph)?;
    let candidates = maps
        .candidates
        .iter()
        .map(|m| m.build(&graph))
        .collect::<Result<Vec<_>, _>>()?;
    let x = id(&graph, &a.x)?;
    Ok((census(&graph, &candidates, &mover, x, a.r, powers)?, cfg))
}
