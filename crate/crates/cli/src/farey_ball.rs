//! `farey-ball`: the slopes of a height-capped Farey ball with their depths.

use clap::Args;
use curvegraph::farey::{farey_ball, Slope, DEFAULT_HEIGHT_CAP};
use curvegraph::graphcore::Space;

use crate::{CliError, ExperimentConfig, Global, Table};

#[derive(Clone, Debug, Args)]
pub struct FareyBallArgs {
    #[arg(long, default_value = "0/1")]
    pub center: String,
    /// Radius; `--cap-radius` when absent.
    #[arg(long)]
    pub radius: Option<u32>,
    #[arg(long, default_value_t = DEFAULT_HEIGHT_CAP)]
    pub height_cap: i64,
}

pub fn table(center: Slope, radius: u32, height_cap: i64) -> Result<Table, CliError> {
    let ball = farey_ball(center, radius, height_cap).map_err(|e| CliError::Input(e.to_string()))?;
    let mut t = Table::new(&["slope", "depth", "height", "degree"]);
    t.note(format!(
        "center={center} radius={radius} height_cap={height_cap} slopes={} edges={}",
        ball.len(),
        ball.graph().edges().len()
    ));
    for &s in ball.slopes() {
        let v = ball.id(s).expect("slope of the ball");
        t.push(vec![
            s.to_string(),
            ball.depth(s).expect("slope of the ball").to_string(),
            s.height().to_string(),
            ball.graph().arcs(v).len().to_string(),
        ]);
    }
    Ok(t)
}

pub fn run(a: &FareyBallArgs, g: &Global) -> Result<(Table, ExperimentConfig), CliError> {
    let center: Slope = a.center.parse().map_err(|e| CliError::Input(format!("{e}")))?;
    let radius = a.radius.unwrap_or(g.cap_radius);
    if radius > g.cap_radius {
        return Err(CliError::Input(format!(
            "radius {radius} exceeds --cap-radius {}",
            g.cap_radius
        )));
    }
    let mut cfg = g.config("farey-ball");
    cfg.set("center", center);
    cfg.set("radius", radius);
    cfg.set("height_cap", a.height_cap);
    Ok((table(center, radius, a.height_cap)?, cfg))
}
