//! Subcommand implementations. Every command renders its full output into a
//! string so that results are deterministic and easy to test.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use anyhow::{anyhow, bail, Context, Result};
use genus_core::algebra::{KappaPolynomial, Rational};
use genus_core::combinatorics::{enumerate_genus_table, GenusTable, Kind};
use genus_core::cylinder::{m2_for_spec, w2, BivariateCumulantSpec};
use genus_core::genfun_part::{m_coefficient, specialize_partition_series};
use genus_core::genfun_perm::{alpha_coefficient, specialize_series};
use genus_core::records::{bivariate_dump, polynomial_rows, CylinderRecord, MomentRecord, SeriesRecord, SCHEMA_VERSION};
use genus_core::spec::{KappaSpec, ParamPoly};
use genus_core::verify::{run_checks, VerifyConfig, CHECK_NAMES};
use genus_core::Error;
use rayon::prelude::*;
use serde::Serialize;

use crate::cache::TableCache;
use crate::range::Span;
use crate::{Cli, Command, Format, Global, SpecArgs};

/// Runs the command; returns the rendered output and whether it succeeded
/// (only `verify` can produce a negative result without an error).
pub fn run(cli: &Cli) -> Result<(String, bool)> {
    if let Some(jobs) = cli.global.jobs {
        if jobs == 0 {
            bail!("--jobs must be at least 1");
        }
        rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global().context("cannot configure worker threads")?;
    }
    let g = &cli.global;
    match &cli.command {
        Command::Table { kind, n } => table(g, *kind, *n).map(|s| (s, true)),
        Command::Moments { kind, g: gs, n, spec } => moments(g, *kind, *gs, *n, spec).map(|s| (s, true)),
        Command::Series { kind, g: gs, n_max, spec } => series(g, *kind, *gs, *n_max, spec).map(|s| (s, true)),
        Command::Cylinder { kind, i, j, set_second_order_zero, dump } => {
            cylinder(g, *kind, *i, *j, *set_second_order_zero, *dump).map(|s| (s, true))
        }
        Command::Verify { checks, n } => verify(g, checks, *n),
    }
}

#[derive(Serialize)]
struct Doc<T: Serialize> {
    schema_version: u32,
    #[serde(flatten)]
    body: T,
}

fn json<T: Serialize>(body: T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(&Doc { schema_version: SCHEMA_VERSION, body })?;
    s.push('\n');
    Ok(s)
}

fn csv_rows<R: Serialize>(header: &[&str], rows: impl IntoIterator<Item = R>) -> Result<String> {
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(Vec::new());
    w.write_record(header)?;
    for r in rows {
        w.serialize(r)?;
    }
    Ok(String::from_utf8(w.into_inner().map_err(|e| anyhow!("{e}"))?)?)
}

fn check_genus(kind: Kind, g: Span) -> Result<()> {
    if kind == Kind::Partition && g.hi > 2 {
        return Err(Error::UnsupportedGenus {
            g: g.hi as u32,
            kind: "partition",
            reason: "closed generating functions for set partitions are available for g <= 2 only",
        }
        .into());
    }
    Ok(())
}

/// The cumulant cutoff for a moment of size `n`.
fn cutoff_for(global: &Global, n: usize) -> Result<u32> {
    match global.cutoff {
        Some(c) if (c as usize) < n => Err(Error::CutoffTooSmall { cutoff: c, required: n as u32 }.into()),
        Some(c) => Ok(c),
        None => Ok(n as u32),
    }
}

fn load_spec(args: &SpecArgs) -> Result<Option<KappaSpec>> {
    if let Some(text) = &args.custom {
        let mut values = BTreeMap::new();
        for item in text.split(',').filter(|s| !s.trim().is_empty()) {
            let (i, v) = item.split_once('=').ok_or_else(|| anyhow!("--custom entry {item:?} is not of the form i=value"))?;
            let i: u32 = i.trim().parse().map_err(|_| anyhow!("--custom index {i:?} is not a positive integer"))?;
            let v: Rational = v.trim().parse().map_err(|_| anyhow!("--custom value {v:?} is not a rational number"))?;
            values.insert(i, v);
        }
        return Ok(Some(KappaSpec::custom(values)?));
    }
    Ok(args.preset.map(KappaSpec::preset))
}

// ---------------------------------------------------------------------------

fn table(global: &Global, kind: Kind, n: Span) -> Result<String> {
    let limit = global.oracle_limit.unwrap_or(kind.default_limit());
    if n.lo == 0 {
        bail!("--n must be at least 1");
    }
    let cache = global.cache_dir.as_deref().map(TableCache::new).transpose()?;
    let tables: Vec<GenusTable> = n
        .iter()
        .map(|n| {
            if let Some(t) = cache.as_ref().and_then(|c| c.load(kind, n)) {
                return Ok(t);
            }
            let t = enumerate_genus_table(n, kind, limit)?;
            if let Some(c) = &cache {
                c.store(&t)?;
            }
            Ok(t)
        })
        .collect::<Result<_>>()?;
    match global.format {
        Format::Json => {
            #[derive(Serialize)]
            struct Body<'a> {
                tables: &'a [GenusTable],
            }
            json(Body { tables: &tables })
        }
        Format::Csv => csv_rows(
            &["n", "kind", "g", "type", "count"],
            tables.iter().flat_map(|t| {
                t.entries().map(move |(g, a, c)| {
                    let ty = a.parts().iter().map(|p| p.to_string()).collect::<Vec<_>>().join(" ");
                    (t.n(), t.kind().as_str(), g, ty, c)
                })
            }),
        ),
        Format::Text => {
            let mut s = String::new();
            for t in &tables {
                writeln!(s, "{} n={} total={}", t.kind(), t.n(), t.total())?;
                for (g, a, c) in t.entries() {
                    writeln!(s, "  g={g} type={a} count={c}")?;
                }
            }
            Ok(s)
        }
    }
}

fn moment(kind: Kind, g: u32, n: usize, cutoff: u32) -> Result<KappaPolynomial> {
    Ok(match kind {
        Kind::Permutation => alpha_coefficient(g, n, cutoff)?,
        Kind::Partition => m_coefficient(g, n, cutoff)?,
    })
}

fn moments(global: &Global, kind: Kind, gs: Span, ns: Span, spec: &SpecArgs) -> Result<String> {
    check_genus(kind, gs)?;
    let jobs: Vec<(u32, usize)> = gs.iter().flat_map(|g| ns.iter().map(move |n| (g as u32, n))).collect();
    let cutoffs: Vec<u32> = jobs.iter().map(|&(_, n)| cutoff_for(global, n)).collect::<Result<_>>()?;
    let polys: Vec<KappaPolynomial> = jobs
        .par_iter()
        .zip(&cutoffs)
        .map(|(&(g, n), &c)| moment(kind, g, n, c))
        .collect::<Result<_>>()?;
    match load_spec(spec)? {
        None => render_moments(global.format, kind, &jobs, &polys),
        Some(spec) => {
            let values: Vec<ParamPoly> = polys.iter().map(|p| spec.apply(p)).collect::<genus_core::Result<_>>()?;
            render_values(global.format, kind, spec.name(), &jobs, &values)
        }
    }
}

fn render_moments(format: Format, kind: Kind, jobs: &[(u32, usize)], polys: &[KappaPolynomial]) -> Result<String> {
    match format {
        Format::Json => {
            #[derive(Serialize)]
            struct Body {
                records: Vec<MomentRecord>,
            }
            json(Body { records: jobs.iter().zip(polys).map(|(&(g, n), p)| MomentRecord::new(kind, g, n, p)).collect() })
        }
        Format::Csv => csv_rows(
            &["kind", "g", "n", "monomial", "coefficient"],
            jobs.iter().zip(polys).flat_map(|(&(g, n), p)| {
                polynomial_rows(p).into_iter().map(move |(m, c)| (kind.as_str(), g, n, m, c))
            }),
        ),
        Format::Text => {
            let mut s = String::new();
            for (&(g, n), p) in jobs.iter().zip(polys) {
                writeln!(s, "g={g} n={n}: {p}")?;
            }
            Ok(s)
        }
    }
}

#[derive(Serialize)]
struct ValueRecord<'a> {
    kind: Kind,
    g: u32,
    n: usize,
    spec: &'a str,
    value: &'a ParamPoly,
}

fn render_values(format: Format, kind: Kind, spec: &str, jobs: &[(u32, usize)], values: &[ParamPoly]) -> Result<String> {
    let records =
        jobs.iter().zip(values).map(|(&(g, n), value)| ValueRecord { kind, g, n, spec, value }).collect::<Vec<_>>();
    match format {
        Format::Json => {
            #[derive(Serialize)]
            struct Body<'a> {
                records: Vec<ValueRecord<'a>>,
            }
            json(Body { records })
        }
        Format::Csv => csv_rows(
            &["kind", "g", "n", "spec", "value"],
            records.iter().map(|r| (r.kind.as_str(), r.g, r.n, r.spec, r.value.to_string())),
        ),
        Format::Text => {
            let mut s = String::new();
            for r in &records {
                writeln!(s, "g={} n={}: {}", r.g, r.n, r.value)?;
            }
            Ok(s)
        }
    }
}

fn series(global: &Global, kind: Kind, gs: Span, n_max: usize, spec: &SpecArgs) -> Result<String> {
    check_genus(kind, gs)?;
    let spec = load_spec(spec)?.ok_or_else(|| anyhow!("series needs --preset or --custom"))?;
    cutoff_for(global, n_max)?;
    let records: Vec<SeriesRecord> = gs
        .iter()
        .collect::<Vec<_>>()
        .par_iter()
        .map(|&g| {
            let g = g as u32;
            let coeffs = match kind {
                Kind::Permutation => specialize_series(g, &spec, n_max)?,
                Kind::Partition => specialize_partition_series(g, &spec, n_max)?,
            };
            Ok(SeriesRecord { kind, g, spec: spec.name().to_string(), n_min: 0, coeffs })
        })
        .collect::<Result<_>>()?;
    match global.format {
        Format::Json => {
            #[derive(Serialize)]
            struct Body {
                records: Vec<SeriesRecord>,
            }
            json(Body { records })
        }
        Format::Csv => csv_rows(
            &["kind", "g", "spec", "n", "coefficient"],
            records.iter().flat_map(|r| {
                r.coeffs.iter().enumerate().map(move |(k, c)| (r.kind.as_str(), r.g, r.spec.as_str(), r.n_min + k, c.to_string()))
            }),
        ),
        Format::Text => {
            let mut s = String::new();
            for r in &records {
                let cs: Vec<String> = r.coeffs.iter().map(|c| c.to_string()).collect();
                writeln!(s, "g={} {}: {}", r.g, r.spec, cs.join(", "))?;
            }
            Ok(s)
        }
    }
}

fn cylinder(global: &Global, kind: Kind, is: Span, js: Span, first_only: bool, dump: bool) -> Result<String> {
    if is.lo == 0 || js.lo == 0 {
        bail!("--i and --j must be at least 1");
    }
    let size = (is.hi + js.hi) as u32;
    if let Some(c) = global.cutoff {
        if c < size {
            return Err(Error::CutoffTooSmall { cutoff: c, required: size }.into());
        }
    }
    let spec = BivariateCumulantSpec::generic(size, size);
    let spec = if first_only { spec.without_second_order() } else { spec };
    let hint = "the truncation box is derived from --i/--j; request larger moments to widen it";
    if dump {
        let (t1, t2) = (is.hi as i64 + 2, js.hi as i64 + 2);
        let w = w2(kind, &spec, t1, t2).context(hint)?;
        let triples = bivariate_dump(&w);
        return match global.format {
            Format::Json => {
                #[derive(Serialize)]
                struct Body {
                    kind: Kind,
                    truncation: (i64, i64),
                    terms: Vec<(i64, i64, String)>,
                }
                json(Body { kind, truncation: (t1, t2), terms: triples })
            }
            Format::Csv => csv_rows(&["deg1", "deg2", "poly"], triples),
            Format::Text => {
                let mut s = String::new();
                for (a, b, p) in triples {
                    writeln!(s, "y1^{a} y2^{b}: {p}")?;
                }
                writeln!(s, "+ O(y1^{t1}) + O(y2^{t2})")?;
                Ok(s)
            }
        };
    }
    let jobs: Vec<(usize, usize)> = is.iter().flat_map(|i| js.iter().map(move |j| (i, j))).collect();
    let polys: Vec<KappaPolynomial> =
        jobs.par_iter().map(|&(i, j)| m2_for_spec(kind, &spec, i, j).context(hint)).collect::<Result<_>>()?;
    match global.format {
        Format::Json => {
            #[derive(Serialize)]
            struct Body {
                records: Vec<CylinderRecord>,
            }
            json(Body {
                records: jobs
                    .iter()
                    .zip(&polys)
                    .map(|(&(i, j), p)| CylinderRecord { kind, i, j, poly: p.to_string() })
                    .collect(),
            })
        }
        Format::Csv => csv_rows(
            &["kind", "i", "j", "monomial", "coefficient"],
            jobs.iter().zip(&polys).flat_map(|(&(i, j), p)| {
                polynomial_rows(p).into_iter().map(move |(m, c)| (kind.as_str(), i, j, m, c))
            }),
        ),
        Format::Text => {
            let mut s = String::new();
            for (&(i, j), p) in jobs.iter().zip(&polys) {
                writeln!(s, "i={i} j={j}: {p}")?;
            }
            Ok(s)
        }
    }
}

fn verify(global: &Global, checks: &[String], n: Option<usize>) -> Result<(String, bool)> {
    let names: Vec<&str> =
        if checks.is_empty() { CHECK_NAMES.to_vec() } else { checks.iter().map(|s| s.trim()).collect() };
    if let Some(bad) = names.iter().find(|n| !CHECK_NAMES.contains(n)) {
        bail!("unknown check {bad:?}; available: {}", CHECK_NAMES.join(", "));
    }
    let mut cfg = VerifyConfig::default();
    if let Some(n) = n {
        for name in &names {
            cfg = cfg.with_size(name, n);
        }
    }
    if let Some(limit) = global.oracle_limit {
        let over = |size: usize| size > limit;
        if (names.contains(&"permutation-oracle") && over(cfg.permutation_n))
            || (names.contains(&"partition-oracle") && over(cfg.partition_n))
        {
            return Err(Error::OracleLimitExceeded {
                what: "verification table",
                n: cfg.permutation_n.max(cfg.partition_n),
                limit,
            }
            .into());
        }
    }
    let reports = run_checks(&names, &cfg)?;
    let passed = reports.iter().all(|r| r.passed);
    let text = match global.format {
        Format::Json => {
            #[derive(Serialize)]
            struct Body<'a> {
                passed: bool,
                config: &'a VerifyConfig,
                reports: &'a [genus_core::verify::CheckReport],
            }
            json(Body { passed, config: &cfg, reports: &reports })?
        }
        Format::Csv => csv_rows(
            &["check", "passed", "cases", "detail"],
            reports.iter().flat_map(|r| {
                let mut rows = vec![(r.name.clone(), r.passed, r.cases, String::new())];
                rows.extend(r.values.iter().chain(&r.failures).map(|d| (r.name.clone(), r.passed, r.cases, d.clone())));
                rows
            }),
        )?,
        Format::Text => {
            let mut s = String::new();
            for r in &reports {
                writeln!(s, "{r}")?;
            }
            writeln!(s, "{}", if passed { "all checks passed" } else { "some checks failed" })?;
            s
        }
    };
    Ok((text, passed))
}
