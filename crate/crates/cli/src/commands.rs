use std::fmt::Write as _;

use permlab_core::class::{CountCache, Enumerator, ExportFormat, RefinedCountTable};
use permlab_core::series::{identity_spec, SeriesError, SeriesLab, IDENTITIES, NAMED_SERIES};
use permlab_core::verify::{self, Check, VerificationReport, VerifyError};
use permlab_core::{ClassError, PatternBasis, Permutation, Stat};
use serde_json::json;

use crate::args::{CountArgs, EnumOpts, Format, LevelArgs, SeriesArgs, StatArgs, VerifyArgs};

/// Command outcome: the text to print and whether everything checked passed.
pub struct Output {
    pub text: String,
    pub ok: bool,
}

impl Output {
    fn ok(text: String) -> Self {
        Output { text, ok: true }
    }
}

#[derive(Debug)]
pub enum CliError {
    /// Bad input; exit code 2.
    Usage(String),
    /// The computation could not finish; exit code 1.
    Failure(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Failure(_) => 1,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            CliError::Usage(m) | CliError::Failure(m) => m,
        }
    }
}

impl From<ClassError> for CliError {
    fn from(e: ClassError) -> Self {
        match e {
            ClassError::Capacity { .. } | ClassError::Cache(_) | ClassError::Export(_) => {
                CliError::Failure(e.to_string())
            }
            _ => CliError::Usage(e.to_string()),
        }
    }
}

impl From<SeriesError> for CliError {
    fn from(e: SeriesError) -> Self {
        match e {
            SeriesError::Class(c) => c.into(),
            SeriesError::UnknownSeries(_)
            | SeriesError::UnknownIdentity(_)
            | SeriesError::UnknownEquation(_)
            | SeriesError::Depth { .. } => CliError::Usage(e.to_string()),
            _ => CliError::Failure(e.to_string()),
        }
    }
}

impl From<VerifyError> for CliError {
    fn from(e: VerifyError) -> Self {
        match e {
            VerifyError::Class(c) => c.into(),
            VerifyError::Series(s) => s.into(),
            VerifyError::Perm(_) => CliError::Failure(e.to_string()),
            VerifyError::UnknownCheck(_) => CliError::Usage(e.to_string()),
        }
    }
}

fn enumerator(opts: &EnumOpts) -> Result<(PatternBasis, Enumerator), CliError> {
    let basis = PatternBasis::parse(&opts.basis)?;
    let threads = opts.parallelism.map_or(0, |k| k as usize);
    let e = Enumerator::new(&basis)
        .with_capacity(opts.capacity)
        .with_threads(threads);
    Ok((basis, e))
}

fn level(e: &Enumerator, n: usize) -> Result<Vec<Permutation>, CliError> {
    let mut level = vec![Permutation::empty()];
    for k in 1..=n {
        level = e.next_level(&level, k)?;
    }
    Ok(level)
}

fn pretty<T: serde::Serialize + ?Sized>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("plain data serializes");
    s.push('\n');
    s
}

pub fn count(args: &CountArgs) -> Result<Output, CliError> {
    let (basis, e) = enumerator(&args.opts)?;
    let counts = match &args.cache_dir {
        Some(dir) => CountCache::open(dir)?.count(&e, args.max_n)?,
        None => e.counts(args.max_n)?,
    };
    let mut out = String::new();
    match args.opts.format {
        Format::Table => {
            let width = counts
                .iter()
                .map(|c| c.to_string().len())
                .max()
                .unwrap_or(1)
                .max(5);
            writeln!(out, "{:>3}  {:>width$}", "n", "count").unwrap();
            for (n, c) in counts.iter().enumerate() {
                writeln!(out, "{n:>3}  {c:>width$}").unwrap();
            }
        }
        Format::Csv => {
            out.push_str("n,count\n");
            for (n, c) in counts.iter().enumerate() {
                writeln!(out, "{n},{c}").unwrap();
            }
        }
        Format::Json => {
            out =
                pretty(&json!({ "basis": basis.to_string(), "maxN": args.max_n, "counts": counts }))
        }
    }
    Ok(Output::ok(out))
}

fn list(perms: &[Permutation], basis: &PatternBasis, n: usize, format: Format) -> String {
    match format {
        Format::Table | Format::Csv => {
            let mut out = String::new();
            if format == Format::Csv {
                out.push_str("perm\n");
            }
            for p in perms {
                // ∅ prints as an empty line
                writeln!(out, "{p}").unwrap();
            }
            out
        }
        Format::Json => {
            let items: Vec<String> = perms.iter().map(|p| p.to_string()).collect();
            pretty(&json!({ "basis": basis.to_string(), "n": n, "perms": items }))
        }
    }
}

pub fn enumerate(args: &LevelArgs) -> Result<Output, CliError> {
    let (basis, e) = enumerator(&args.opts)?;
    let perms = level(&e, args.n)?;
    Ok(Output::ok(list(&perms, &basis, args.n, args.opts.format)))
}

pub fn simples(args: &LevelArgs) -> Result<Output, CliError> {
    let (basis, e) = enumerator(&args.opts)?;
    let perms: Vec<Permutation> = level(&e, args.n)?
        .into_iter()
        .filter(Permutation::is_simple)
        .collect();
    Ok(Output::ok(list(&perms, &basis, args.n, args.opts.format)))
}

fn table_text(table: &RefinedCountTable) -> String {
    let header = table.header();
    let rows: Vec<Vec<String>> = table
        .records()
        .map(|(n, s, c)| {
            std::iter::once(n.to_string())
                .chain(s.iter().map(|v| v.to_string()))
                .chain(std::iter::once(c.to_string()))
                .collect()
        })
        .collect();
    let widths: Vec<usize> = (0..header.len())
        .map(|i| {
            rows.iter()
                .map(|r| r[i].len())
                .chain([header[i].len()])
                .max()
                .unwrap_or(0)
        })
        .collect();
    let mut out = String::new();
    for row in std::iter::once(&header).chain(&rows) {
        let cells: Vec<String> = row
            .iter()
            .zip(&widths)
            .map(|(c, w)| format!("{c:>w$}"))
            .collect();
        writeln!(out, "{}", cells.join("  ")).unwrap();
    }
    out
}

pub fn stat(args: &StatArgs) -> Result<Output, CliError> {
    let (_, e) = enumerator(&args.opts)?;
    let stats = Stat::parse_list(&args.stats)?;
    let filter = args.filter.parse()?;
    let levels = e.levels(args.max_n)?;
    let table = RefinedCountTable::from_levels(&levels, args.max_n, &stats, filter);
    let text = match args.opts.format {
        Format::Table => table_text(&table),
        Format::Csv => table.to_csv()?,
        Format::Json => {
            let mut s =
                String::from_utf8(table.export(ExportFormat::Json)?).expect("json is utf-8");
            s.push('\n');
            s
        }
    };
    Ok(Output::ok(text))
}

pub fn series(args: &SeriesArgs) -> Result<Output, CliError> {
    if !NAMED_SERIES.contains(&args.name.as_str()) {
        return Err(CliError::Usage(format!(
            "unknown series {:?}; known: {}",
            args.name,
            NAMED_SERIES.join(", ")
        )));
    }
    let s = SeriesLab::new().named(&args.name, args.order)?;
    let text = match args.format {
        Format::Table if s.is_univariate_x() => {
            format!("{}\n", s.x_coefficient_strings().join(" "))
        }
        Format::Table => s.to_lines().into_iter().map(|l| l + "\n").collect(),
        Format::Csv => {
            let mut out = String::from("x,t,u,coeff\n");
            for ([x, t, u], c) in s.sorted_terms() {
                writeln!(out, "{x},{t},{u},{c}").unwrap();
            }
            out
        }
        Format::Json => format!("{}\n", s.to_json()),
    };
    Ok(Output::ok(text))
}

fn valid_ids() -> String {
    let checks = Check::ALL.iter().map(|c| c.id());
    let identities = IDENTITIES.iter().map(|s| s.id);
    checks.chain(identities).collect::<Vec<_>>().join(", ")
}

pub fn verify(args: &VerifyArgs) -> Result<Output, CliError> {
    let reports = match &args.id {
        Some(id) => vec![verify_one(id, args)?],
        None => verify::run_all(args.max_n.unwrap_or(8), args.order.unwrap_or(12))?,
    };
    let ok = reports.iter().all(VerificationReport::passed);
    let text = match args.format {
        Format::Table => reports_table(&reports),
        Format::Csv => reports_csv(&reports),
        Format::Json if args.id.is_some() => pretty(&reports[0]),
        Format::Json => pretty(&reports),
    };
    Ok(Output { text, ok })
}

fn verify_one(id: &str, args: &VerifyArgs) -> Result<VerificationReport, CliError> {
    if let Ok(check) = id.parse::<Check>() {
        return Ok(check.run(args.max_n.unwrap_or_else(|| check.default_max_n()))?);
    }
    let Some(spec) = identity_spec(id) else {
        return Err(CliError::Usage(format!(
            "unknown check {id:?}; valid ids: {}",
            valid_ids()
        )));
    };
    let order = args.order.unwrap_or_else(|| spec.kind.default_order());
    Ok(verify::identity_report(&SeriesLab::new(), id, order)?)
}

fn reports_table(reports: &[VerificationReport]) -> String {
    let width = reports.iter().map(|r| r.check_id.len()).max().unwrap_or(0);
    let mut out = String::new();
    for r in reports {
        let status = if r.passed() { "PASS" } else { "FAIL" };
        writeln!(
            out,
            "{status}  {:<width$}  maxN={:<3} {:>7}ms",
            r.check_id, r.max_n, r.elapsed_millis
        )
        .unwrap();
        for w in &r.witnesses {
            match &w.perm {
                Some(p) => writeln!(out, "      {p}: {}", w.reason).unwrap(),
                None => writeln!(out, "      {}", w.reason).unwrap(),
            }
        }
    }
    let passed = reports.iter().filter(|r| r.passed()).count();
    writeln!(out, "{passed}/{} passed", reports.len()).unwrap();
    out
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn reports_csv(reports: &[VerificationReport]) -> String {
    let mut out = String::from("checkId,maxN,status,witnesses,firstWitness,elapsedMillis\n");
    for r in reports {
        let status = if r.passed() { "pass" } else { "fail" };
        let first = r
            .witnesses
            .first()
            .map_or(String::new(), |w| match &w.perm {
                Some(p) => format!("{p}: {}", w.reason),
                None => w.reason.clone(),
            });
        writeln!(
            out,
            "{},{},{status},{},{},{}",
            csv_field(&r.check_id),
            r.max_n,
            r.witnesses.len(),
            csv_field(&first),
            r.elapsed_millis
        )
        .unwrap();
    }
    out
}
