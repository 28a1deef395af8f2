use std::io::Write;

use anyhow::{bail, Context};
use serde::Serialize;
use starcomp::catalog::{self, FIXTURE_NAMES};
use starcomp::engine::{dedupe_kind, make_context, multiplicity_cap, search_star_sets, verify_star_pair};
use starcomp::graph::decode_graph6;
use starcomp::kts::{analyze as analyze_kts, family_type0b, kss_analysis, make_kts};
use starcomp::{AlgebraicNumber, Certificate, IntPolynomial, SearchOptions, StarSolution};

use crate::{Format, SearchArgs};

pub const SCHEMA_VERSION: u32 = 1;

/// Exit status 0 or 2.
pub enum Outcome {
    Found,
    Empty,
}

impl Outcome {
    fn from_nonempty(found: bool) -> Self {
        if found {
            Outcome::Found
        } else {
            Outcome::Empty
        }
    }
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct Versioned<T: Serialize> {
    schema_version: u32,
    #[serde(flatten)]
    body: T,
}

pub struct Sink<W: Write> {
    out: W,
}

impl<W: Write> Sink<W> {
    pub fn new(out: W) -> Self {
        Sink { out }
    }

    /// One JSON object per line, tagged with the schema version.
    fn record<T: Serialize>(&mut self, body: T) -> anyhow::Result<()> {
        let v = Versioned {
            schema_version: SCHEMA_VERSION,
            body,
        };
        serde_json::to_writer(&mut self.out, &v)?;
        writeln!(self.out)?;
        Ok(())
    }

    fn line(&mut self, s: &str) -> anyhow::Result<()> {
        writeln!(self.out, "{s}")?;
        Ok(())
    }

    pub fn finish(mut self) -> anyhow::Result<()> {
        self.out.flush()?;
        Ok(())
    }
}

fn parse_mu(text: &str) -> anyhow::Result<AlgebraicNumber> {
    text.parse().with_context(|| format!("invalid mu `{text}`"))
}

fn check_ts(t: usize, s: usize) -> anyhow::Result<()> {
    if t == 0 || s < t {
        bail!("need s >= t >= 1, got t={t}, s={s}");
    }
    if t + s > 64 {
        bail!("K_{{{t},{s}}} has more than 64 vertices");
    }
    Ok(())
}

pub fn analyze<W: Write>(sink: &mut Sink<W>, t: usize, s: usize, mu: &str) -> anyhow::Result<Outcome> {
    #[derive(Serialize)]
    #[serde(rename_all = "camelCase")]
    struct Body {
        #[serde(flatten)]
        report: starcomp::kts::AnalysisReport,
        family_type0b: starcomp::kts::FamilyRecord,
        #[serde(skip_serializing_if = "Option::is_none")]
        kss: Option<starcomp::kts::KssReport>,
    }
    let mu = parse_mu(mu)?;
    check_ts(t, s)?;
    let report = analyze_kts(t, s, &mu)?;
    let found = !report.fixed_types.is_empty();
    sink.record(Body {
        report,
        family_type0b: family_type0b(t, &mu),
        kss: (t == s).then(|| kss_analysis(s, &mu, None)),
    })?;
    Ok(Outcome::from_nonempty(found))
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct SolutionRecord<'a> {
    graph6: String,
    order: usize,
    degree: Option<usize>,
    spectrum_integer_roots: Vec<(i64, usize)>,
    residual_factor: IntPolynomial,
    star_set: Vec<usize>,
    types: Vec<Option<(usize, usize)>>,
    canonical: Option<String>,
    certificate: &'a Certificate,
}

fn solution_record(sol: &StarSolution) -> SolutionRecord<'_> {
    let (roots, residual) = sol.certificate.char_poly.integer_roots();
    SolutionRecord {
        graph6: sol.graph.to_graph6(),
        order: sol.order(),
        degree: sol.graph.regular_degree(),
        spectrum_integer_roots: roots,
        residual_factor: residual,
        star_set: sol.star_vertices(),
        types: sol.types(),
        canonical: sol.canonical.as_ref().map(|c| c.graph6().to_string()),
        certificate: &sol.certificate,
    }
}

pub fn search<W: Write>(sink: &mut Sink<W>, a: &SearchArgs) -> anyhow::Result<Outcome> {
    #[derive(Serialize)]
    #[serde(rename_all = "camelCase")]
    struct Summary {
        count: usize,
        deduped_by: &'static str,
    }
    let mu = parse_mu(&a.mu)?;
    check_ts(a.t, a.s)?;
    let ctx = make_context(make_kts(a.t, a.s), mu, Some((a.t, a.s)))?;
    let mut opts = match (a.r, a.sweep) {
        (Some(r), _) => SearchOptions::regular(r),
        (None, true) => SearchOptions::sweep(),
        (None, false) => SearchOptions::default(),
    };
    opts.max_x = a.max_x;
    opts.max_solutions = a.max_solutions;
    opts.symmetry = !a.no_symmetry;
    opts.non_main = a.non_main;
    let sols = search_star_sets(&ctx, &opts)?;
    for sol in &sols {
        match a.format {
            Format::Json => sink.record(solution_record(sol))?,
            Format::Graph6 => sink.line(&sol.graph.to_graph6())?,
        }
    }
    if a.format == Format::Json {
        sink.record(Summary {
            count: sols.len(),
            deduped_by: dedupe_kind(&sols),
        })?;
    }
    Ok(Outcome::from_nonempty(!sols.is_empty()))
}

pub fn verify<W: Write>(
    sink: &mut Sink<W>,
    lines: &[String],
    star_set: &[usize],
    mu: &str,
) -> anyhow::Result<Outcome> {
    #[derive(Serialize)]
    struct Body<'a> {
        graph6: &'a str,
        certificate: Certificate,
    }
    let mu = parse_mu(mu)?;
    let mut all_pass = !lines.is_empty();
    for line in lines {
        let g = decode_graph6(line).with_context(|| format!("decoding `{line}`"))?;
        let certificate = verify_star_pair(&g, star_set, &mu);
        all_pass &= certificate.pass;
        sink.record(Body {
            graph6: line,
            certificate,
        })?;
    }
    Ok(Outcome::from_nonempty(all_pass))
}

pub fn catalog<W: Write>(sink: &mut Sink<W>, name: &str, graph6_only: bool) -> anyhow::Result<Outcome> {
    let entry = catalog::entry(name)?;
    if graph6_only {
        sink.line(&entry.graph6)?;
    } else {
        sink.record(&entry)?;
    }
    Ok(Outcome::Found)
}

pub fn catalog_list<W: Write>(sink: &mut Sink<W>) -> anyhow::Result<Outcome> {
    for name in FIXTURE_NAMES {
        sink.line(name)?;
    }
    Ok(Outcome::Found)
}

pub fn bound<W: Write>(sink: &mut Sink<W>, q: usize, sr: Option<(usize, usize)>) -> anyhow::Result<Outcome> {
    #[derive(Serialize)]
    #[serde(rename_all = "camelCase")]
    struct Body {
        q: usize,
        multiplicity_cap: usize,
        #[serde(skip_serializing_if = "Option::is_none")]
        s: Option<usize>,
        #[serde(skip_serializing_if = "Option::is_none")]
        r: Option<usize>,
        #[serde(skip_serializing_if = "Option::is_none")]
        kss_bound: Option<usize>,
    }
    if let Some((s, r)) = sr {
        if r < s {
            bail!("need r >= s, got s={s}, r={r}");
        }
    }
    sink.record(Body {
        q,
        multiplicity_cap: multiplicity_cap(q),
        s: sr.map(|p| p.0),
        r: sr.map(|p| p.1),
        kss_bound: sr.map(|(s, r)| s * (r - s)),
    })?;
    Ok(Outcome::Found)
}
