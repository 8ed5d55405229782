use std::fmt::Write as _;

use rayon::prelude::*;
use serde::Serialize;

use dzeta_core::coaction::{oracle_entry, oracle_trace};
use dzeta_core::golden::{self, run_golden_with, sign_flipped_coeff, GoldenCheck};
use dzeta_core::index::index_len;
use dzeta_core::matrices::{depth1_coeff, entry, CoeffFn, Level};
use dzeta_core::period::{from_vector, w_space_basis, HomogPoly, RestrictedVector, Sign};
use dzeta_core::spectral::{conjecture_series_dim, newform_dims, ConjectureRow, SpectralReport};
use dzeta_core::{totally_odd_index, Error, IndexPair, MatrixBundle, RatMatrix, Rational};

use crate::args::{Fault, Format, OutputArgs, Part};
use crate::output::{csv, dir_target, json, Target};

/// Why a command did not succeed; selects the exit code.
#[derive(Debug)]
pub enum Failure {
    /// Bad arguments (exit 2).
    Usage(String),
    /// A mathematical check failed (exit 1).
    Mismatch(String),
    /// I/O or other runtime trouble (exit 2).
    Runtime(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::OddWeight(_)
            | Error::UnsupportedLevel(..)
            | Error::IndexOutOfSet { .. }
            | Error::Parse { .. } => Failure::Usage(e.to_string()),
            _ => Failure::Runtime(e.to_string()),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Runtime(e.to_string())
    }
}

pub type Outcome = Result<(), Failure>;

/// Maps `f` over `items` on a pool of `jobs` threads, keeping input order.
fn par_map<T, R, F>(jobs: Option<usize>, items: Vec<T>, f: F) -> Result<Vec<R>, Failure>
where
    T: Send,
    R: Send,
    F: Fn(T) -> dzeta_core::Result<R> + Sync + Send,
{
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.unwrap_or(0))
        .build()
        .map_err(|e| Failure::Runtime(e.to_string()))?;
    let results: Vec<dzeta_core::Result<R>> = pool.install(|| items.into_par_iter().map(f).collect());
    results.into_iter().collect::<dzeta_core::Result<Vec<R>>>().map_err(Failure::from)
}

fn format_or(out: &OutputArgs, default: Format, allowed: &[Format]) -> Result<Format, Failure> {
    let f = out.format.unwrap_or(default);
    if !allowed.contains(&f) {
        return Err(Failure::Usage(format!("format {f:?} is not available for this command").to_lowercase()));
    }
    Ok(f)
}

fn weight_tag(weights: &[u32]) -> String {
    match weights {
        [k] => format!("k{k}"),
        [first, .., last] => format!("k{first}-{last}"),
        [] => "empty".into(),
    }
}

fn one_or_many<T: Serialize>(items: &[T]) -> String {
    match items {
        [one] => json(one),
        _ => json(items),
    }
}

fn pair_label(p: &IndexPair) -> String {
    format!("{},{}", p.m1, p.m2)
}

// build

#[derive(Serialize)]
struct PartView<'a> {
    level: Level,
    weight: u32,
    part: &'static str,
    matrix: &'a RatMatrix,
    index: &'a [IndexPair],
}

fn parts_of(b: &MatrixBundle, part: Part) -> Vec<(&'static str, &RatMatrix)> {
    let mut out = Vec::new();
    if matches!(part, Part::C | Part::All) {
        out.push(("c", &b.c));
    }
    if matches!(part, Part::D | Part::All) {
        out.extend(b.d.as_ref().map(|m| ("d", m)));
    }
    if matches!(part, Part::Dc | Part::All) {
        out.extend(b.dc.as_ref().map(|m| ("dc", m)));
    }
    out
}

fn part_title(name: &str, level: Level, k: u32) -> String {
    let n = level.n();
    match name {
        "c" => format!("C^{n}_{{{k},2}}"),
        "d" => format!("D^{n}_{{{k},2}}"),
        _ => format!("(D C)^{n}_{{{k},2}}"),
    }
}

pub fn build(level: Level, weights: Vec<u32>, part: Part, out: &OutputArgs) -> Outcome {
    if level == Level::One && matches!(part, Part::D | Part::Dc) {
        return Err(Failure::Usage("D and D·C are defined only at levels 2 and 3".into()));
    }
    let format = format_or(out, Format::Json, &[Format::Json, Format::Csv, Format::Table])?;
    for &k in &weights {
        if index_len(k) == 0 {
            eprintln!("warning: weight {k} has an empty index set; matrices are 0x0");
        }
    }
    let bundles = par_map(out.jobs, weights.clone(), |k| MatrixBundle::build(level, k))?;

    let content = match format {
        Format::Json if part == Part::All => one_or_many(&bundles),
        Format::Json => {
            let views: Vec<PartView> = bundles
                .iter()
                .flat_map(|b| {
                    parts_of(b, part).into_iter().map(move |(name, m)| PartView {
                        level: b.level,
                        weight: b.weight,
                        part: name,
                        matrix: m,
                        index: &b.index,
                    })
                })
                .collect();
            one_or_many(&views)
        }
        Format::Csv => {
            let mut rows = Vec::new();
            for b in &bundles {
                for (name, m) in parts_of(b, part) {
                    let (rl, cl) = (m.row_labels().unwrap_or(&[]), m.col_labels().unwrap_or(&[]));
                    for (i, r) in rl.iter().enumerate() {
                        for (j, c) in cl.iter().enumerate() {
                            rows.push(vec![
                                b.level.n().to_string(),
                                b.weight.to_string(),
                                name.to_string(),
                                pair_label(r),
                                pair_label(c),
                                m.get(i, j).to_string(),
                            ]);
                        }
                    }
                }
            }
            csv(&["level", "weight", "part", "row", "col", "value"], rows)?
        }
        Format::Table => {
            let mut s = String::new();
            for b in &bundles {
                for (name, m) in parts_of(b, part) {
                    let _ = writeln!(s, "{} =\n{m}", part_title(name, b.level, b.weight));
                }
            }
            s
        }
    };
    let ext = if format == Format::Csv { "csv" } else { "json" };
    let name = format!("build_N{}_{}.{ext}", level.n(), weight_tag(&weights));
    Target::resolve(out, &name).write(&content)?;
    Ok(())
}

// oracle-check

#[derive(Serialize)]
struct EntryMismatch {
    m: IndexPair,
    n: IndexPair,
    #[serde(serialize_with = "as_str")]
    oracle: Rational,
    #[serde(serialize_with = "as_str")]
    formula: Rational,
}

fn as_str<S: serde::Serializer>(q: &Rational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&q.to_string())
}

#[derive(Serialize)]
struct OracleRow {
    level: Level,
    weight: u32,
    entries: usize,
    mismatches: Vec<EntryMismatch>,
}

fn oracle_row(level: Level, k: u32) -> dzeta_core::Result<OracleRow> {
    let idx = totally_odd_index(k)?;
    let mut mismatches = Vec::new();
    for &m in &idx {
        for &n in &idx {
            let (oracle, formula) = (oracle_entry(level, k, m, n)?, entry(level, k, m, n)?);
            if oracle != formula {
                mismatches.push(EntryMismatch { m, n, oracle, formula });
            }
        }
    }
    Ok(OracleRow {
        level,
        weight: k,
        entries: idx.len() * idx.len(),
        mismatches,
    })
}

pub fn oracle_check(level: Level, weights: Vec<u32>, trace: Option<(u32, u32, u32, u32)>, out: &OutputArgs) -> Outcome {
    if let Some((m1, m2, n1, n2)) = trace {
        let [k] = weights[..] else {
            return Err(Failure::Usage("--trace needs a single --weight".into()));
        };
        format_or(out, Format::Json, &[Format::Json])?;
        let (m, n) = (IndexPair::new(m1, m2)?, IndexPair::new(n1, n2)?);
        let t = oracle_trace(level, k, m, n)?;
        let formula = entry(level, k, m, n)?;
        Target::resolve(out, &format!("trace_N{}_k{k}.json", level.n())).write(&json(&t))?;
        if t.value != formula {
            return Err(Failure::Mismatch(format!(
                "oracle gives {} at {m},{n}, formula gives {formula}",
                t.value
            )));
        }
        return Ok(());
    }

    let format = format_or(out, Format::Json, &[Format::Json, Format::Csv])?;
    let rows = par_map(out.jobs, weights.clone(), |k| oracle_row(level, k))?;
    let content = match format {
        Format::Csv => csv(
            &["level", "weight", "entries", "mismatches"],
            rows.iter().map(|r| {
                vec![
                    r.level.n().to_string(),
                    r.weight.to_string(),
                    r.entries.to_string(),
                    r.mismatches.len().to_string(),
                ]
            }),
        )?,
        _ => json(&rows),
    };
    let ext = if format == Format::Csv { "csv" } else { "json" };
    Target::resolve(out, &format!("oracle_N{}_{}.{ext}", level.n(), weight_tag(&weights))).write(&content)?;

    let total: usize = rows.iter().map(|r| r.entries).sum();
    match rows.iter().find_map(|r| r.mismatches.first().map(|x| (r, x))) {
        Some((r, x)) => Err(Failure::Mismatch(format!(
            "first mismatch at level {}, k={}, m={}, n={}: oracle {}, formula {}",
            r.level, r.weight, x.m, x.n, x.oracle, x.formula
        ))),
        None => {
            eprintln!("{total} entries agree");
            Ok(())
        }
    }
}

// verify-paper

pub fn verify_paper(only: Option<&str>, fault: Option<Fault>, out: &OutputArgs) -> Outcome {
    let format = format_or(out, Format::Table, &[Format::Table, Format::Json, Format::Csv])?;
    let coeff: CoeffFn<'_> = match fault {
        None => &depth1_coeff,
        Some(Fault::Depth1Sign) => &sign_flipped_coeff,
    };
    let checks = run_golden_with(coeff, only)?;
    if checks.is_empty() {
        return Err(Failure::Usage(format!(
            "--only matched nothing; groups are {}; ids are {}",
            golden::GROUPS.join(", "),
            golden::check_ids().join(", ")
        )));
    }
    let content = match format {
        Format::Json => json(&checks),
        Format::Csv => csv(
            &["id", "group", "passed", "detail"],
            checks
                .iter()
                .map(|c| vec![c.id.clone(), c.group.to_string(), c.passed.to_string(), c.detail.clone()]),
        )?,
        Format::Table => table(&checks),
    };
    let ext = match format {
        Format::Json => "json",
        Format::Csv => "csv",
        Format::Table => "txt",
    };
    Target::resolve(out, &format!("verify_paper.{ext}")).write(&content)?;
    match checks.iter().find(|c| !c.passed) {
        Some(c) => Err(Failure::Mismatch(format!("{}: {}", c.id, c.detail))),
        None => Ok(()),
    }
}

fn table(checks: &[GoldenCheck]) -> String {
    let width = checks.iter().map(|c| c.id.len()).max().unwrap_or(0);
    let mut s = String::new();
    for c in checks {
        let tag = if c.passed { "PASS" } else { "FAIL" };
        let _ = writeln!(s, "{tag}  {:<width$}  {}", c.id, c.detail);
    }
    let passed = checks.iter().filter(|c| c.passed).count();
    let _ = writeln!(s, "{passed} of {} checks passed", checks.len());
    s
}

// spectral and conjectures

fn sweep_items(levels: &[Level], weights: &[u32]) -> Vec<(u32, Level)> {
    weights
        .iter()
        .flat_map(|&k| levels.iter().map(move |&l| (k, l)))
        .collect()
}

fn flag(b: bool) -> String {
    b.to_string()
}

const SPECTRAL_HEADER: [&str; 16] = [
    "level",
    "weight",
    "bs_dim",
    "dim_cusp",
    "invariance_ok",
    "integral_ok",
    "deligne_ok",
    "eigen_consistent",
    "cluster_count",
    "hecke_charpoly",
    "newform_plus",
    "newform_minus",
    "series_plus",
    "series_minus",
    "wspace_plus",
    "wspace_minus",
];

fn spectral_row(r: &SpectralReport) -> Vec<String> {
    vec![
        r.level.n().to_string(),
        r.weight.to_string(),
        r.bs_dim.to_string(),
        r.dim_cusp.to_string(),
        flag(r.invariance_ok),
        flag(r.integral_ok),
        flag(r.deligne_ok),
        r.eigen_consistent.map_or(String::new(), flag),
        r.cluster_count.to_string(),
        r.hecke_charpoly
            .as_ref()
            .map_or(String::new(), |p| p.display_in("t").to_string()),
        r.newform_dims.plus.to_string(),
        r.newform_dims.minus.to_string(),
        r.conjecture_dims.plus.to_string(),
        r.conjecture_dims.minus.to_string(),
        r.wspace_dims.plus.to_string(),
        r.wspace_dims.minus.to_string(),
    ]
}

pub fn spectral(levels: &[Level], weights: Vec<u32>, out: &OutputArgs) -> Outcome {
    let format = format_or(out, Format::Json, &[Format::Json, Format::Csv])?;
    let reports = par_map(out.jobs, sweep_items(levels, &weights), |(k, l)| SpectralReport::build(k, l))?;
    let summary = || csv(&SPECTRAL_HEADER, reports.iter().map(spectral_row));
    let tag = weight_tag(&weights);
    match (&out.output, &out.output_dir) {
        (None, Some(dir)) => {
            dir_target(dir, &format!("spectral_{tag}.json")).write(&json(&reports))?;
            dir_target(dir, &format!("spectral_{tag}_summary.csv")).write(&summary()?)?;
        }
        _ => {
            let content = if format == Format::Csv { summary()? } else { json(&reports) };
            Target::resolve(out, "").write(&content)?;
        }
    }
    if reports.is_empty() {
        eprintln!("empty sweep");
    }
    for r in &reports {
        if let Some(p) = r.spectral_violations().first() {
            return Err(Failure::Mismatch(format!("first failure at k={}, level {}: {p}", r.weight, r.level)));
        }
    }
    Ok(())
}

pub fn conjectures(levels: &[Level], weights: Vec<u32>, out: &OutputArgs) -> Outcome {
    let format = format_or(out, Format::Json, &[Format::Json, Format::Csv])?;
    let rows = par_map(out.jobs, sweep_items(levels, &weights), |(k, l)| ConjectureRow::build(k, l))?;
    let content = match format {
        Format::Csv => {
            let mut lines = Vec::new();
            for r in &rows {
                for sign in Sign::BOTH {
                    let (e, s, w) = (r.newform_dims.get(sign), r.conjecture_dims.get(sign), r.wspace_dims.get(sign));
                    lines.push(vec![
                        r.level.n().to_string(),
                        r.weight.to_string(),
                        sign.to_string(),
                        e.to_string(),
                        s.to_string(),
                        w.to_string(),
                        flag(e == s && e == w),
                    ]);
                }
            }
            csv(&["level", "weight", "sign", "eigenspace", "series", "wspace", "agree"], lines)?
        }
        _ => json(&rows),
    };
    let ext = if format == Format::Csv { "csv" } else { "json" };
    Target::resolve(out, &format!("conjectures_{}.{ext}", weight_tag(&weights))).write(&content)?;
    if rows.is_empty() {
        eprintln!("empty sweep");
    }
    let bad: Vec<String> = rows
        .iter()
        .flat_map(|r| {
            r.mismatches().into_iter().map(move |(sign, e, s, w)| {
                format!(
                    "(N={}, {sign}, k={}): eigenspace {e}, series {s}, W-space {w}",
                    r.level.n(),
                    r.weight
                )
            })
        })
        .collect();
    match bad.first() {
        Some(first) => Err(Failure::Mismatch(format!(
            "{} disagreement(s); first at {first}",
            bad.len()
        ))),
        None => Ok(()),
    }
}

// wspace

#[derive(Serialize)]
struct WspaceView {
    level: Level,
    weight: u32,
    sign: Sign,
    dim: usize,
    eigenspace_dim: usize,
    series_dim: usize,
    basis: Vec<RestrictedVector>,
    polynomials: Vec<HomogPoly>,
}

pub fn wspace(level: Level, k: u32, sign: Option<Sign>, out: &OutputArgs) -> Outcome {
    let format = format_or(out, Format::Json, &[Format::Json, Format::Csv])?;
    let signs: Vec<Sign> = sign.map_or(Sign::BOTH.to_vec(), |s| vec![s]);
    let eig = newform_dims(level, k)?;
    let mut views = Vec::new();
    for s in signs {
        let basis = w_space_basis(level, k, s)?;
        views.push(WspaceView {
            level,
            weight: k,
            sign: s,
            dim: basis.len(),
            eigenspace_dim: eig.get(s),
            series_dim: conjecture_series_dim(level, s, k)?,
            polynomials: basis.iter().map(from_vector).collect(),
            basis,
        });
    }
    let content = match format {
        Format::Csv => {
            let mut rows = Vec::new();
            for v in &views {
                for (i, b) in v.basis.iter().enumerate() {
                    for (p, c) in b.index.iter().zip(&b.entries) {
                        rows.push(vec![
                            level.n().to_string(),
                            k.to_string(),
                            v.sign.to_string(),
                            i.to_string(),
                            pair_label(p),
                            c.to_string(),
                        ]);
                    }
                }
            }
            csv(&["level", "weight", "sign", "vector", "pair", "value"], rows)?
        }
        _ => json(&views),
    };
    let ext = if format == Format::Csv { "csv" } else { "json" };
    Target::resolve(out, &format!("wspace_N{}_k{k}.{ext}", level.n())).write(&content)?;
    Ok(())
}
