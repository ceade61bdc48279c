//! Runners behind the `asmkit` command line. Each runner takes a
//! [`RunConfig`], does its work on a worker pool of the requested size and
//! returns a [`Report`] whose content does not depend on that size.

pub mod report;

use std::io::Write;
use std::time::Instant;

use asmkit::asm::{self, ClassTag};
use asmkit::chars::{class_count_formula, dim_principal, weyl_dim, Family, GroupSpec, Weight};
use asmkit::exact::{Rational, WireScalar};
use asmkit::identities::{table_rows, verify_identity, verify_table_row, IdentityId, Table};
use asmkit::kuperberg::{specialized_enumeration, verify_row, Case, Root};
use asmkit::{Error, Result};
use rayon::prelude::*;
use serde_json::{json, Value};

pub use report::{Format, Report};

/// Everything a run can be parameterized by. Runners read the fields they
/// need and echo them, normalized, in the report's `inputs`.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub classes: Vec<ClassTag>,
    pub order: Option<usize>,
    pub max_order: Option<usize>,
    pub cases: Vec<Case>,
    pub roots: Vec<Root>,
    pub ids: Vec<IdentityId>,
    pub tables: Vec<Table>,
    pub row: Option<String>,
    pub n: Option<usize>,
    pub max_size: Option<usize>,
    pub group: Option<String>,
    pub weight: Option<String>,
    pub seed: u64,
    pub seeds: Option<usize>,
    /// Worker threads; never part of a report.
    pub jobs: usize,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            classes: Vec::new(),
            order: None,
            max_order: None,
            cases: Vec::new(),
            roots: Vec::new(),
            ids: Vec::new(),
            tables: Vec::new(),
            row: None,
            n: None,
            max_size: None,
            group: None,
            weight: None,
            seed: 0,
            seeds: None,
            jobs: 1,
        }
    }
}

/// Whether an error is the caller's fault (bad selector, out-of-range
/// order) rather than a failed computation.
pub fn is_usage_error(e: &Error) -> bool {
    matches!(e, Error::InvalidInput(_) | Error::Parse(_) | Error::Unsupported(_))
}

/// Default largest order of the census per class. Each default order runs
/// in well under ten seconds; larger orders up to the enumeration limit
/// must be asked for with `--max-order` or `--order`.
pub fn census_default_max(class: ClassTag) -> usize {
    match class {
        ClassTag::Asm => 7,
        ClassTag::Qts => 8,
        ClassTag::Uasm => 6,
        ClassTag::Uuasm | ClassTag::Vhpasm => 10,
        ClassTag::Uosasm => 8,
        ClassTag::Vos => 11,
        _ => 7,
    }
}

fn pool<R: Send>(jobs: usize, f: impl FnOnce() -> R + Send) -> Result<R> {
    let p = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .map_err(|e| Error::InvalidInput(format!("cannot start {jobs} workers: {e}")))?;
    Ok(p.install(f))
}

fn finish(mut r: Report, start: Instant) -> Report {
    r.elapsed_ms = start.elapsed().as_millis() as u64;
    r
}

fn wire(r: &Rational) -> Value {
    r.to_wire_value()
}

fn count_wire(c: u64) -> Value {
    wire(&Rational::from(c as i64))
}

fn names<T: std::fmt::Display>(v: &[T]) -> Vec<String> {
    v.iter().map(|x| x.to_string()).collect()
}

fn seed_list(cfg: &RunConfig, default: usize) -> Vec<u64> {
    (0..cfg.seeds.unwrap_or(default) as u64).map(|k| cfg.seed + k).collect()
}

fn orders_for(class: ClassTag, cfg: &RunConfig) -> Result<Vec<usize>> {
    let limit = asm::order_limit(class);
    if let Some(o) = cfg.order {
        class.check_order(o)?;
        if o > limit {
            return Err(Error::InvalidInput(format!("{class} is enumerated up to order {limit}, got {o}")));
        }
        return Ok(vec![o]);
    }
    let max = cfg.max_order.unwrap_or_else(|| census_default_max(class));
    if max > limit {
        return Err(Error::InvalidInput(format!("{class} is enumerated up to order {limit}, got --max-order {max}")));
    }
    Ok((1..=max).filter(|&o| class.check_order(o).is_ok()).collect())
}

fn census_record(class: ClassTag, order: usize) -> Result<(Value, bool)> {
    let c = asm::census(class, order)?;
    let count = Rational::from(c.count as i64);
    let (formula, equal) = match class_count_formula(class, order) {
        Ok(f) => (wire(&f), Some(f == count)),
        Err(Error::Unsupported(_)) => (Value::Null, None),
        Err(e) => return Err(e),
    };
    let gf = c.generating_function();
    let mut passed = equal.unwrap_or(true);
    let mut specs = Vec::new();
    for x in [0u32, 2, 3] {
        let brute = gf.eval(&Rational::from(x as i64)).expect("polynomial");
        let (predicted, agree) = match specialized_enumeration(class, x, order) {
            Ok(p) => {
                let agree = p == brute;
                (wire(&p), Value::Bool(agree))
            }
            Err(Error::Unsupported(_)) => (Value::Null, Value::Null),
            Err(e) => return Err(e),
        };
        passed &= agree != Value::Bool(false);
        specs.push(json!({"x": x, "brute_force": wire(&brute), "predicted": predicted, "equal": agree}));
    }
    let record = json!({
        "class": class.name(),
        "order": order,
        "count": wire(&count),
        "formula": formula,
        "equal": equal,
        "x_enumeration": gf.to_wire_value(),
        "specializations": specs,
    });
    Ok((record, passed))
}

/// Brute-force counts against the closed formulas, with x-enumerations
/// and their specializations at x = 0, 2, 3 against the predictions.
pub fn run_census(cfg: &RunConfig) -> Result<Report> {
    let start = Instant::now();
    let classes = if cfg.classes.is_empty() { ClassTag::ALL.to_vec() } else { cfg.classes.clone() };
    let mut work = Vec::new();
    for &class in &classes {
        for order in orders_for(class, cfg)? {
            work.push((class, order));
        }
    }
    let records: Vec<Result<(Value, bool)>> =
        pool(cfg.jobs, || work.par_iter().map(|&(c, o)| census_record(c, o)).collect())?;
    let inputs = json!({
        "classes": names(&classes),
        "orders": work.iter().map(|(c, o)| json!([c.name(), o])).collect::<Vec<_>>(),
    });
    let mut r = Report::new("census", inputs, cfg.seed);
    for rec in records {
        let (v, passed) = rec?;
        r.push(v, passed);
    }
    Ok(finish(r, start))
}

fn one_class(cfg: &RunConfig) -> Result<(ClassTag, usize)> {
    let class = match cfg.classes.as_slice() {
        [c] => *c,
        _ => return Err(Error::InvalidInput("exactly one --class is required".into())),
    };
    let order = cfg.order.ok_or_else(|| Error::InvalidInput("--order is required".into()))?;
    let limit = asm::order_limit(class);
    class.check_order(order)?;
    if order > limit {
        return Err(Error::InvalidInput(format!("{class} is enumerated up to order {limit}, got {order}")));
    }
    Ok((class, order))
}

/// The x-enumeration of one class and order, with its values at
/// x = 0, 1, 2, 3 and the predicted values where a formula exists.
pub fn run_genfun(cfg: &RunConfig) -> Result<Report> {
    let start = Instant::now();
    let (class, order) = one_class(cfg)?;
    let gf = pool(cfg.jobs, || asm::x_enumeration(class, order))??;
    let mut r = Report::new("genfun", json!({"class": class.name(), "order": order}), cfg.seed);
    let values: Vec<Value> = (0..=3u32)
        .map(|x| {
            let v = gf.eval(&Rational::from(x as i64)).expect("polynomial");
            let predicted = specialized_enumeration(class, x, order).ok();
            json!({
                "x": x,
                "value": wire(&v),
                "predicted": predicted.as_ref().map(wire),
                "equal": predicted.map(|p| p == v),
            })
        })
        .collect();
    let passed = values.iter().all(|v| v["equal"] != Value::Bool(false));
    r.push(
        json!({
            "class": class.name(),
            "order": order,
            "polynomial": gf.to_string(),
            "x_enumeration": gf.to_wire_value(),
            "values": values,
        }),
        passed,
    );
    Ok(finish(r, start))
}

/// Streams every member of one class and order as JSON lines to `sink`, in
/// canonical order, and reports the count.
pub fn run_enumerate(cfg: &RunConfig, sink: Option<&mut dyn Write>) -> Result<Report> {
    let start = Instant::now();
    let (class, order) = one_class(cfg)?;
    let mut count: u64 = 0;
    let mut io_err = None;
    match sink {
        Some(out) => asm::visit(class, order, &mut |m| {
            count += 1;
            if io_err.is_none() {
                if let Err(e) = writeln!(out, "{}", m.to_json()) {
                    io_err = Some(e);
                }
            }
        })?,
        None => count = pool(cfg.jobs, || asm::census(class, order))??.count,
    }
    if let Some(e) = io_err {
        return Err(Error::InvalidInput(format!("cannot write matrices: {e}")));
    }
    let mut r = Report::new("enumerate", json!({"class": class.name(), "order": order}), cfg.seed);
    r.push(json!({"class": class.name(), "order": order, "count": count_wire(count)}), true);
    Ok(finish(r, start))
}

/// Parses `GL6`, `Sp8`, `O5`/`Pin5` (odd), `O4`/`Pin4` (even), naming the
/// group by the dimension it acts on.
pub fn parse_group(s: &str) -> Result<GroupSpec> {
    let t = s.trim();
    let split = t.find(|c: char| c.is_ascii_digit()).unwrap_or(t.len());
    let (tag, digits) = t.split_at(split);
    let degree: usize = digits
        .trim_start_matches(['_', '('])
        .trim_end_matches(')')
        .parse()
        .map_err(|_| Error::Parse(format!("group {s:?}: expected a name followed by a degree, e.g. Sp8")))?;
    let tag = tag.trim_end_matches(['_', '(']).to_ascii_lowercase();
    let family = match tag.as_str() {
        "gl" => Family::Gl,
        "sp" => Family::Sp,
        "o" | "pin" | "so" | "spin" if degree % 2 == 1 => Family::PinOdd,
        "o" | "pin" | "so" | "spin" => Family::PinEven,
        _ => return Err(Error::Parse(format!("unknown group {s:?}; use GL, Sp, O or Pin"))),
    };
    GroupSpec::from_degree(family, degree)
}

/// Weyl dimension and the independent principal-specialization value.
pub fn run_dim(cfg: &RunConfig) -> Result<Report> {
    let start = Instant::now();
    let g = parse_group(cfg.group.as_deref().ok_or_else(|| Error::InvalidInput("--group is required".into()))?)?;
    let w: Weight = cfg.weight.as_deref().unwrap_or("").parse()?;
    g.check_weight(&w)?;
    let a = weyl_dim(&g, &w)?;
    let b = dim_principal(&g, &w)?;
    let mut r = Report::new("dim", json!({"group": g.to_string(), "weight": w.to_string()}), cfg.seed);
    r.push(
        json!({"group": g.to_string(), "weight": w.to_string(), "weyl_dim": wire(&a), "dim_principal": wire(&b), "equal": a == b}),
        a == b,
    );
    Ok(finish(r, start))
}

fn run_trials<J: Sync, F>(cfg: &RunConfig, command: &str, inputs: Value, jobs: Vec<J>, f: F) -> Result<Report>
where
    F: Fn(&J) -> Result<(Value, bool)> + Sync,
{
    let start = Instant::now();
    let out: Vec<Result<(Value, bool)>> = pool(cfg.jobs, || jobs.par_iter().map(&f).collect())?;
    let mut r = Report::new(command, inputs, cfg.seed);
    for rec in out {
        let (v, passed) = rec?;
        r.push(v, passed);
    }
    Ok(finish(r, start))
}

fn to_value<T: serde::Serialize>(t: &T) -> Value {
    serde_json::to_value(t).expect("trials serialize")
}

/// Every selected identity at sizes `1..=max_size` (capped per identity)
/// for `seeds` consecutive seeds.
pub fn run_verify_identities(cfg: &RunConfig) -> Result<Report> {
    let ids = if cfg.ids.is_empty() { IdentityId::ALL.to_vec() } else { cfg.ids.clone() };
    let max = cfg.max_size.unwrap_or(3);
    if max == 0 || max > 4 {
        return Err(Error::InvalidInput(format!("--max-size must be in 1..=4, got {max}")));
    }
    let seeds = seed_list(cfg, 10);
    let mut jobs = Vec::new();
    for &id in &ids {
        for size in 1..=max.min(id.max_size()) {
            for &s in &seeds {
                jobs.push((id, size, s));
            }
        }
    }
    let inputs = json!({"ids": names(&ids), "max_size": max, "seeds": seeds});
    run_trials(cfg, "verify identities", inputs, jobs, |&(id, size, s)| {
        let t = verify_identity(id, size, s)?;
        Ok((to_value(&t), t.equal))
    })
}

/// Both sides of every selected (case, root) row at sizes `1..=n`.
pub fn run_verify_partition(cfg: &RunConfig) -> Result<Report> {
    let cases = if cfg.cases.is_empty() { Case::ALL.to_vec() } else { cfg.cases.clone() };
    let n = cfg.n.unwrap_or(2);
    if n == 0 || n > 3 {
        return Err(Error::InvalidInput(format!("--n must be in 1..=3, got {n}")));
    }
    let seeds = seed_list(cfg, 5);
    let mut jobs = Vec::new();
    for &case in &cases {
        let roots: Vec<Root> = if cfg.roots.is_empty() {
            case.roots().to_vec()
        } else {
            for r in &cfg.roots {
                if !case.roots().contains(r) && !cfg.cases.is_empty() {
                    return Err(Error::Unsupported(format!("no character-side formula for {case} at {r}")));
                }
            }
            cfg.roots.iter().copied().filter(|r| case.roots().contains(r)).collect()
        };
        for root in roots {
            for size in 1..=n {
                for &s in &seeds {
                    jobs.push((case, root, size, s));
                }
            }
        }
    }
    let inputs = json!({"cases": names(&cases), "roots": names(&cfg.roots), "n": n, "seeds": seeds});
    run_trials(cfg, "verify partition", inputs, jobs, |&(case, root, size, s)| {
        let t = verify_row(case, root, size, s)?;
        Ok((to_value(&t), t.equal))
    })
}

/// Every selected row of the specialization tables at sizes `1..=n`.
pub fn run_verify_tables(cfg: &RunConfig) -> Result<Report> {
    let tables = if cfg.tables.is_empty() { Table::ALL.to_vec() } else { cfg.tables.clone() };
    let n = cfg.n.unwrap_or(2);
    if n == 0 || n > 3 {
        return Err(Error::InvalidInput(format!("--n must be in 1..=3, got {n}")));
    }
    let seeds = seed_list(cfg, 5);
    let rows: Vec<_> = table_rows()
        .into_iter()
        .filter(|r| tables.contains(&r.table))
        .filter(|r| cfg.row.as_deref().is_none_or(|q| r.matches(q)))
        .collect();
    if rows.is_empty() {
        return Err(Error::InvalidInput(format!("no table row matches {:?}", cfg.row.as_deref().unwrap_or(""))));
    }
    let mut jobs = Vec::new();
    for r in &rows {
        for size in 1..=n {
            for &s in &seeds {
                jobs.push((r.table, r.label, size, s));
            }
        }
    }
    let inputs = json!({"tables": names(&tables), "row": cfg.row, "n": n, "seeds": seeds});
    run_trials(cfg, "verify tables", inputs, jobs, |&(t, label, size, s)| {
        let trial = verify_table_row(t, label, size, s)?;
        Ok((to_value(&trial), trial.equal))
    })
}

/// Brute-force counts of odd HTSASMs and odd DASASMs against the
/// conjectured formulas, with odd DSASM counts alongside. Agreement is
/// reported in `conjecture` and never fails the run.
pub fn run_conjecture(cfg: &RunConfig) -> Result<Report> {
    let start = Instant::now();
    let orders: Vec<usize> = match cfg.order {
        Some(o) => vec![o],
        None => (1..=cfg.max_order.unwrap_or(5)).step_by(2).collect(),
    };
    for &o in &orders {
        if o % 2 == 0 || o > 7 {
            return Err(Error::InvalidInput(format!("the conjecture check takes odd orders up to 7, got {o}")));
        }
    }
    let records: Vec<Result<(Value, bool)>> = pool(cfg.jobs, || {
        orders
            .par_iter()
            .map(|&o| {
                let count = |c: ClassTag| asm::census(c, o).map(|x| Rational::from(x.count as i64));
                let (hts, das, ds) = (count(ClassTag::Hts)?, count(ClassTag::Das)?, count(ClassTag::Ds)?);
                let (fh, fd) = (class_count_formula(ClassTag::Hts, o)?, class_count_formula(ClassTag::Das, o)?);
                let agree = hts == fh && das == fd;
                let v = json!({
                    "order": o,
                    "hts_count": wire(&hts),
                    "hts_formula": wire(&fh),
                    "hts_equal": hts == fh,
                    "das_count": wire(&das),
                    "das_formula": wire(&fd),
                    "das_equal": das == fd,
                    "ds_count": wire(&ds),
                });
                Ok((v, agree))
            })
            .collect()
    })?;
    let mut r = Report::new("conjecture", json!({"orders": orders}), cfg.seed);
    let mut agree = true;
    for rec in records {
        let (v, a) = rec?;
        agree &= a;
        r.push(v, true);
    }
    r.conjecture = Some(agree);
    Ok(finish(r, start))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn group_names() {
        assert_eq!(parse_group("Sp8").unwrap(), GroupSpec::sp(4));
        assert_eq!(parse_group("GL_6").unwrap(), GroupSpec::gl(6));
        assert_eq!(parse_group("O5").unwrap(), GroupSpec::pin_odd(2));
        assert_eq!(parse_group("pin(4)").unwrap(), GroupSpec::pin_even(2));
        assert!(parse_group("Sp7").is_err());
        assert!(parse_group("E8").is_err());
    }

    #[test]
    fn census_rejects_missing_orders() {
        let cfg = RunConfig { classes: vec![ClassTag::Vos], order: Some(13), ..RunConfig::default() };
        let e = run_census(&cfg).unwrap_err();
        assert!(is_usage_error(&e));
        assert!(e.to_string().contains("8n+5"));
    }

    #[test]
    fn small_census() {
        let cfg = RunConfig { classes: vec![ClassTag::Asm], max_order: Some(5), ..RunConfig::default() };
        let r = run_census(&cfg).unwrap();
        assert!(r.ok);
        let counts: Vec<&str> = r.results.iter().map(|v| v["count"].as_str().unwrap()).collect();
        assert_eq!(counts, ["1/1", "2/1", "7/1", "42/1", "429/1"]);
    }

    #[test]
    fn conjecture_small_orders() {
        let cfg = RunConfig { max_order: Some(3), ..RunConfig::default() };
        let r = run_conjecture(&cfg).unwrap();
        assert_eq!(r.conjecture, Some(true));
        assert_eq!(r.results[1]["hts_formula"], "3/1");
        assert!(run_conjecture(&RunConfig { order: Some(4), ..RunConfig::default() }).is_err());
    }
}
