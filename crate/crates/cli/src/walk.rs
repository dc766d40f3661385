//! `walk`: uniform random words in `T, t, S, s`, classified by trace.

use clap::Args;
use curvegraph::farey::{classify, farey_ball, Dynamics, FareyBall, Generator, Slope, DEFAULT_HEIGHT_CAP};
use curvegraph::BigMapClass;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::{CliError, ExperimentConfig, Global, Table};

#[derive(Clone, Debug, Args)]
pub struct WalkArgs {
    /// Letters per word.
    #[arg(long)]
    pub length: usize,
    #[arg(long, default_value_t = 1000)]
    pub samples: usize,
    /// Also measure `d(0/1, w·0/1)` inside the Farey ball of radius `--cap-radius`.
    #[arg(long)]
    pub measure: bool,
    /// Height cap of that ball.
    #[arg(long, default_value_t = DEFAULT_HEIGHT_CAP)]
    pub height_cap: i64,
}

/// One sampled word.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WalkRecord {
    pub word: String,
    pub trace: String,
    pub dynamics: Dynamics,
    /// Farey distance of `w·0/1` from `0/1`; `Err` when the image leaves the ball.
    pub distance: Option<Result<u32, ()>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WalkStats {
    pub samples: usize,
    pub length: usize,
    pub pseudo_anosov: usize,
    pub records: Vec<WalkRecord>,
}

impl WalkStats {
    pub fn fraction(&self) -> f64 {
        self.pseudo_anosov as f64 / self.samples as f64
    }
}

fn measure(ball: &FareyBall, m: &BigMapClass) -> Result<u32, ()> {
    let image = m.act(Slope::ZERO).map_err(|_| ())?;
    ball.depth(image).ok_or(())
}

/// Draws `samples` words of `length` letters from a ChaCha8 stream seeded by `seed`.
pub fn walk(length: usize, samples: usize, seed: u64, ball: Option<&FareyBall>) -> WalkStats {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut records = Vec::with_capacity(samples);
    let mut pa = 0;
    for _ in 0..samples {
        let word: Vec<Generator> = (0..length).map(|_| Generator::ALL[rng.gen_range(0..4)]).collect();
        let m: BigMapClass = Generator::word(&word);
        let dynamics = classify(&m);
        if dynamics == Dynamics::PseudoAnosov {
            pa += 1;
        }
        records.push(WalkRecord {
            word: word.iter().map(|g| g.symbol()).collect(),
            trace: m.trace().to_string(),
            dynamics,
            distance: ball.map(|b| measure(b, &m)),
        });
    }
    WalkStats {
        samples,
        length,
        pseudo_anosov: pa,
        records,
    }
}

pub fn table(stats: &WalkStats) -> Table {
    let mut t = Table::new(&["sample", "word", "trace", "dynamics", "distance"]);
    t.note(format!(
        "samples={} length={} pseudo_anosov={} fraction={:.4}",
        stats.samples,
        stats.length,
        stats.pseudo_anosov,
        stats.fraction()
    ));
    for (i, r) in stats.records.iter().enumerate() {
        let d = match r.distance {
            None => String::new(),
            Some(Ok(d)) => d.to_string(),
            Some(Err(())) => "cap_exceeded".into(),
        };
        t.push(vec![
            i.to_string(),
            r.word.clone(),
            r.trace.clone(),
            r.dynamics.to_string(),
            d,
        ]);
    }
    t
}

pub fn run(a: &WalkArgs, g: &Global) -> Result<(Table, ExperimentConfig), CliError> {
    if a.length == 0 || a.samples == 0 {
        return Err(CliError::Input("length and samples must be at least 1".into()));
    }
    if a.samples > g.cap_samples {
        return Err(CliError::Input(format!(
            "{} samples exceed --cap-samples {}",
            a.samples, g.cap_samples
        )));
    }
    let mut cfg = g.config("walk");
    cfg.set("length", a.length);
    cfg.set("samples", a.samples);
    let ball = if a.measure {
        cfg.set("height_cap", a.height_cap);
        Some(farey_ball(Slope::ZERO, g.cap_radius, a.height_cap).map_err(|e| CliError::Input(e.to_string()))?)
    } else {
        None
    };
    Ok((table(&walk(a.length, a.samples, g.seed, ball.as_ref())), cfg))
}
