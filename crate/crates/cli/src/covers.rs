//! `covers`: the hyperelliptic covers of the exceptional surfaces and the
//! irregular-cover case table beyond them.

use clap::Args;
use curvegraph::orbifolds::{
    euler_char, exceptional_cover, irregular_same_signature_search, is_exceptional, orb_euler_char, teich_dim,
    OrbifoldSig, SurfaceSig, MAX_SEARCH_DEGREE,
};
use curvegraph::scalar::format_rational;
use num_bigint::BigInt;
use num_rational::BigRational;

use crate::{parse_pair, parse_range, CliError, ExperimentConfig, Global, Table};

#[derive(Clone, Debug, Args)]
pub struct CoversArgs {
    /// Surface as `g,n`; the four exceptional surfaces when absent.
    #[arg(long)]
    pub surface: Option<String>,
    /// Degrees searched for non-exceptional surfaces, `lo..hi`.
    #[arg(long)]
    pub degrees: Option<String>,
}

pub const COLUMNS: [&str; 13] = [
    "surface",
    "kind",
    "degree",
    "base",
    "equation",
    "order_counts",
    "chi_total",
    "chi_base",
    "multiplicative",
    "teich_total",
    "teich_base",
    "feasible",
    "reason",
];

pub const EXCEPTIONAL: [SurfaceSig; 4] = [
    SurfaceSig::new(0, 4),
    SurfaceSig::new(1, 1),
    SurfaceSig::new(1, 2),
    SurfaceSig::new(2, 0),
];

pub fn parse_surface(s: &str) -> Result<SurfaceSig, CliError> {
    let (g, n) = parse_pair::<u32>(s, "surface")?;
    Ok(SurfaceSig::new(g, n))
}

fn counts(o: &OrbifoldSig) -> String {
    o.order_counts()
        .iter()
        .map(|(k, c)| format!("{k}:{c}"))
        .collect::<Vec<_>>()
        .join(";")
}

fn teich(o: &OrbifoldSig) -> String {
    teich_dim(o).map(|d| d.to_string()).unwrap_or_default()
}

fn exceptional_row(s: SurfaceSig) -> Vec<String> {
    let c = exceptional_cover(s).expect("caller checked the surface is exceptional");
    vec![
        s.to_string(),
        "exceptional".into(),
        c.degree.to_string(),
        c.base.to_string(),
        String::new(),
        counts(&c.base),
        format_rational(&euler_char(s)),
        format_rational(&orb_euler_char(&c.base)),
        c.is_multiplicative().to_string(),
        teich(&s.as_orbifold()),
        teich(&c.base),
        "true".into(),
        String::new(),
    ]
}

/// The case table for one surface, or the four exceptional covers.
pub fn table(surface: Option<SurfaceSig>, degrees: (u32, u32)) -> Table {
    let mut t = Table::new(&COLUMNS);
    let Some(s) = surface else {
        for s in EXCEPTIONAL {
            t.push(exceptional_row(s));
        }
        return t;
    };
    if !s.supports_pseudo_anosov() {
        t.note("no pseudo-Anosov support");
        return t;
    }
    if is_exceptional(s) {
        t.push(exceptional_row(s));
        return t;
    }
    let report = irregular_same_signature_search(s).expect("surface is beyond the exceptional list");
    for row in report
        .rows
        .iter()
        .filter(|r| (degrees.0..=degrees.1).contains(&r.degree))
    {
        let (base, mult, tb) = match &row.solution {
            Some(o) => {
                let d = BigRational::from_integer(BigInt::from(row.degree));
                (
                    o.to_string(),
                    (euler_char(s) == d * orb_euler_char(o)).to_string(),
                    teich(o),
                )
            }
            None => Default::default(),
        };
        t.push(vec![
            s.to_string(),
            "irregular".into(),
            row.degree.to_string(),
            base,
            row.equation.clone(),
            row.order_counts(),
            row.chi_total_str(),
            row.chi_base_str(),
            mult,
            teich(&s.as_orbifold()),
            tb,
            row.feasible.to_string(),
            row.rejection.as_ref().map(|r| r.to_string()).unwrap_or_default(),
        ]);
    }
    t
}

pub fn run(a: &CoversArgs, g: &Global) -> Result<(Table, ExperimentConfig), CliError> {
    let surface = a.surface.as_deref().map(parse_surface).transpose()?;
    let degrees = match &a.degrees {
        Some(d) => parse_range(d, "degrees")?,
        None => (3, MAX_SEARCH_DEGREE),
    };
    let mut cfg = g.config("covers");
    if let Some(s) = surface {
        cfg.set("surface", format!("{},{}", s.g, s.n));
    }
    cfg.set("degrees", format!("{}..{}", degrees.0, degrees.1));
    Ok((table(surface, degrees), cfg))
}
