//! The acceptance suite: twelve criteria, one PASS/FAIL line each.
//!
//! Runs without the libtest harness so the lines are always printed;
//! the process exits non-zero when any criterion fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use asmkit::asm::{census, x_enumeration, ClassTag};
use asmkit::chars::{
    asm_product_formula, class_count_formula, delta2, dim_principal, weyl_dim, GroupSpec, Weight,
};
use asmkit::exact::Rational;
use asmkit::identities::IdentityId;
use asmkit::kuperberg::{character_weights, specialized_enumeration, Case};
use asmkit_cli::{run_census, run_conjecture, run_verify_identities, run_verify_partition, run_verify_tables, RunConfig};

type Outcome = Result<String, String>;

/// Number, name, time budget in seconds, check.
type Criterion = (u32, &'static str, u64, fn() -> Outcome);

fn q(v: i64) -> Rational {
    Rational::from(v)
}

fn jobs() -> usize {
    std::thread::available_parallelism().map_or(1, |n| n.get())
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn count(class: ClassTag, order: usize) -> Result<Rational, String> {
    census(class, order).map(|c| q(c.count as i64)).map_err(|e| e.to_string())
}

/// Brute count equals the closed formula at each order; returns the counts.
fn counts_match(class: ClassTag, orders: &[usize]) -> Result<Vec<String>, String> {
    let mut out = Vec::new();
    for &o in orders {
        let brute = count(class, o)?;
        let formula = class_count_formula(class, o).map_err(|e| e.to_string())?;
        ensure(brute == formula, || format!("{class} order {o}: brute {brute} vs formula {formula}"))?;
        out.push(format!("{class}{o}={brute}"));
    }
    Ok(out)
}

fn c1_asm_counts() -> Outcome {
    let expected = [1, 2, 7, 42, 429, 7436, 218348];
    for (k, &e) in expected.iter().enumerate() {
        let n = k + 1;
        let brute = count(ClassTag::Asm, n)?;
        let product = Rational::from(asm_product_formula(n));
        ensure(brute == q(e) && product == q(e), || format!("n={n}: brute {brute}, product {product}, expected {e}"))?;
    }
    Ok("1, 2, 7, 42, 429, 7436, 218348".into())
}

fn c2_asm_dimension() -> Outcome {
    for n in 1..=6usize {
        let g = GroupSpec::gl(2 * n);
        let w = delta2(2 * n as i64 - 2, 2 * n as i64 - 2).fit_to_rank(g.rank).map_err(|e| e.to_string())?;
        let dim = weyl_dim(&g, &w).map_err(|e| e.to_string())?;
        let three = (0..n * (n - 1) / 2).fold(q(1), |acc, _| acc * q(3));
        let brute = count(ClassTag::Asm, n)?;
        ensure(&dim / &three == brute, || format!("n={n}: {dim}/{three} vs {brute}"))?;
    }
    Ok("n = 1..6".into())
}

fn c3_hts_qts() -> Outcome {
    let mut got = counts_match(ClassTag::Hts, &[2, 4, 6])?;
    got.extend(counts_match(ClassTag::Qts, &[4, 8])?);
    Ok(got.join(" "))
}

fn c4_vs_vhs() -> Outcome {
    let vs = counts_match(ClassTag::Vs, &[3, 5, 7])?;
    ensure(vs == ["VS3=1", "VS5=3", "VS7=26"], || format!("VS counts {vs:?}"))?;
    let vhs = counts_match(ClassTag::Vhs, &[5, 7])?;
    let w: Weight = "3/2,1/2".parse().map_err(|e: asmkit::Error| e.to_string())?;
    let d = weyl_dim(&GroupSpec::pin_even(2), &w).map_err(|e| e.to_string())?;
    ensure(d == q(12), || format!("dim of the 4-dimensional pin group at (3/2,1/2) is {d}, expected 12"))?;
    Ok(format!("{} {} pin4(3/2,1/2)=12", vs.join(" "), vhs.join(" ")))
}

fn c5_theorem_classes() -> Outcome {
    let mut got = Vec::new();
    for (class, orders) in [
        (ClassTag::Os, &[2, 4, 6][..]),
        (ClassTag::Uasm, &[2, 4, 6]),
        (ClassTag::Uuasm, &[4]),
        (ClassTag::Vhpasm, &[6]),
        (ClassTag::Uosasm, &[8]),
        (ClassTag::Vos, &[1, 3, 9, 11]),
    ] {
        got.extend(counts_match(class, orders)?);
    }
    Ok(got.join(" "))
}

fn c6_specializations() -> Outcome {
    let eval = |p: &asmkit::exact::IntPolynomial, x: i64| p.eval(&q(x)).expect("polynomial");
    for n in 1..=4usize {
        let gf = x_enumeration(ClassTag::Asm, n).map_err(|e| e.to_string())?;
        let fact = (1..=n as i64).fold(q(1), |a, k| a * q(k));
        let two = (0..n * (n - 1) / 2).fold(q(1), |a, _| a * q(2));
        ensure(eval(&gf, 0) == fact, || format!("A_{n}(0) = {} vs {fact}", eval(&gf, 0)))?;
        ensure(eval(&gf, 2) == two, || format!("A_{n}(2) = {} vs {two}", eval(&gf, 2)))?;
        let pred = specialized_enumeration(ClassTag::Asm, 3, n).map_err(|e| e.to_string())?;
        ensure(eval(&gf, 3) == pred, || format!("A_{n}(3) = {} vs {pred}", eval(&gf, 3)))?;
    }
    let mut checked = 12;
    for (class, order) in [(ClassTag::Vs, 5), (ClassTag::Vs, 7), (ClassTag::Hts, 4), (ClassTag::Hts, 6)] {
        let gf = x_enumeration(class, order).map_err(|e| e.to_string())?;
        for x in [0u32, 2] {
            let pred = specialized_enumeration(class, x, order).map_err(|e| e.to_string())?;
            let brute = eval(&gf, x as i64);
            ensure(brute == pred, || format!("{class}{order} at x={x}: {brute} vs {pred}"))?;
            checked += 1;
        }
    }
    Ok(format!("{checked} values"))
}

fn report_outcome(r: asmkit::Result<asmkit_cli::Report>) -> Outcome {
    let r = r.map_err(|e| e.to_string())?;
    let bad: Vec<String> = r
        .results
        .iter()
        .filter(|v| v["equal"] != true)
        .take(3)
        .map(|v| serde_json::to_string(v).unwrap_or_default())
        .collect();
    ensure(r.ok && bad.is_empty(), || format!("unequal trials: {}", bad.join("; ")))?;
    Ok(format!("{} trials", r.results.len()))
}

fn c7_identities() -> Outcome {
    ensure(IdentityId::ALL.len() == 17, || "expected 17 identities".into())?;
    let cfg = RunConfig { max_size: Some(3), seeds: Some(10), jobs: jobs(), ..RunConfig::default() };
    report_outcome(run_verify_identities(&cfg))
}

fn c8_partition() -> Outcome {
    let cfg = RunConfig { n: Some(2), seeds: Some(5), jobs: jobs(), ..RunConfig::default() };
    let rows: usize = Case::ALL.iter().map(|c| c.roots().len()).sum();
    report_outcome(run_verify_partition(&cfg)).map(|s| format!("{rows} rows, {s}"))
}

fn c9_tables() -> Outcome {
    let cfg = RunConfig { n: Some(2), seeds: Some(5), jobs: jobs(), ..RunConfig::default() };
    report_outcome(run_verify_tables(&cfg))
}

fn ssyt(shape: &[usize], max: usize) -> u64 {
    fn fill(cells: &[(usize, usize)], k: usize, grid: &mut Vec<Vec<usize>>, max: usize) -> u64 {
        if k == cells.len() {
            return 1;
        }
        let (r, c) = cells[k];
        let lo = if c > 0 { grid[r][c - 1] } else { 1 };
        let lo = if r > 0 { lo.max(grid[r - 1][c] + 1) } else { lo };
        let mut total = 0;
        for v in lo..=max {
            grid[r][c] = v;
            total += fill(cells, k + 1, grid, max);
        }
        total
    }
    let cells: Vec<(usize, usize)> = shape.iter().enumerate().flat_map(|(r, &l)| (0..l).map(move |c| (r, c))).collect();
    let mut grid: Vec<Vec<usize>> = shape.iter().map(|&l| vec![0; l]).collect();
    fill(&cells, 0, &mut grid, max)
}

fn partitions(total: usize, max_part: usize, max_len: usize) -> Vec<Vec<usize>> {
    if total == 0 {
        return vec![Vec::new()];
    }
    if max_len == 0 {
        return Vec::new();
    }
    let mut out = Vec::new();
    for first in (1..=max_part.min(total)).rev() {
        for mut rest in partitions(total - first, first, max_len - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

fn c10_dimensions() -> Outcome {
    let mut pairs: Vec<(GroupSpec, Weight)> = Vec::new();
    let fit = |g: GroupSpec, r2: i64, s2: i64| (g, delta2(r2, s2).fit_to_rank(g.rank).expect("fits"));
    // the factors of the counting formulas and of the conjecture
    for n in 1..=4i64 {
        let u = n as usize;
        pairs.push(fit(GroupSpec::gl(2 * u), 2 * n - 2, 2 * n - 2));
        pairs.push(fit(GroupSpec::gl(2 * u), 2 * n, 2 * n - 2));
        pairs.push(fit(GroupSpec::sp(2 * u), 2 * n - 2, 2 * n - 2));
        pairs.push(fit(GroupSpec::pin_even(2 * u), 2 * n + 1, 2 * n - 1));
        pairs.push(fit(GroupSpec::pin_odd(2 * u), 2 * n, 2 * n - 2));
        if 2 * u < 8 {
            pairs.push(fit(GroupSpec::sp(2 * u + 1), 2 * n, 2 * n - 2));
            pairs.push(fit(GroupSpec::gl(2 * u + 1), 2 * n, 2 * n - 2));
        }
    }
    // the characters of the partition-function formulas
    for case in Case::ALL {
        for &root in case.roots() {
            for n in 1..=4 {
                let ws = character_weights(case, root, n).map_err(|e| format!("{case} {root} n={n}: {e}"))?;
                pairs.extend(ws);
            }
        }
    }
    pairs.retain(|(g, _)| g.rank <= 8);
    pairs.sort_by_key(|(g, w)| (g.to_string(), w.to_string()));
    pairs.dedup();
    for (g, w) in &pairs {
        let a = weyl_dim(g, w).map_err(|e| format!("{g} {w}: {e}"))?;
        let b = dim_principal(g, w).map_err(|e| format!("{g} {w}: {e}"))?;
        ensure(a == b, || format!("{g} {w}: weyl {a} vs principal {b}"))?;
    }
    let mut shapes = 0;
    for rank in 1..=4usize {
        for size in 0..=6 {
            for p in partitions(size, size, rank) {
                let parts: Vec<i64> = p.iter().map(|&v| v as i64).collect();
                let w = Weight::partition(&parts).map_err(|e| e.to_string())?;
                let d = weyl_dim(&GroupSpec::gl(rank), &w).map_err(|e| e.to_string())?;
                let brute = ssyt(&p, rank);
                ensure(d == q(brute as i64), || format!("GL{rank} {w}: {d} vs {brute} tableaux"))?;
                shapes += 1;
            }
        }
    }
    Ok(format!("{} group/weight pairs, {shapes} GL shapes", pairs.len()))
}

fn c11_conjecture() -> Outcome {
    let r = run_conjecture(&RunConfig { max_order: Some(5), jobs: jobs(), ..RunConfig::default() })
        .map_err(|e| e.to_string())?;
    for v in &r.results {
        ensure(v["hts_equal"] == true && v["das_equal"] == true, || format!("disagreement: {v}"))?;
    }
    ensure(r.conjecture == Some(true), || "conjecture flag not set".into())?;
    let line: Vec<String> = r
        .results
        .iter()
        .map(|v| format!("order {}: HTS {} DAS {} (DS {})", v["order"], v["hts_count"], v["das_count"], v["ds_count"]))
        .collect();
    Ok(line.join(", ").replace('"', ""))
}

fn c12_determinism() -> Outcome {
    let run = |jobs| run_census(&RunConfig { seed: 7, jobs, ..RunConfig::default() }).map(|r| r.canonical_json());
    let one = run(1).map_err(|e| e.to_string())?;
    for jobs in [4, 8] {
        let other = run(jobs).map_err(|e| e.to_string())?;
        ensure(other == one, || format!("census JSON differs between 1 and {jobs} workers"))?;
    }
    Ok(format!("{} bytes identical for 1, 4, 8 workers", one.len()))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 12] = [
        (1, "ASM counts n = 1..7", 10, c1_asm_counts),
        (2, "ASM counts as GL dimensions", 10, c2_asm_dimension),
        (3, "HTS and QTS counts", 120, c3_hts_qts),
        (4, "VS and VHS counts", 30, c4_vs_vhs),
        (5, "OS, UASM, UUASM, VHPASM, UOSASM, VOSASM counts", 300, c5_theorem_classes),
        (6, "x-enumeration specializations", 60, c6_specializations),
        (7, "determinant and Pfaffian identities", 60, c7_identities),
        (8, "partition functions against characters", 300, c8_partition),
        (9, "specialization table rows", 60, c9_tables),
        (10, "dimension formulas agree", 30, c10_dimensions),
        (11, "odd HTSASM and DASASM conjecture", 30, c11_conjecture),
        (12, "census reproducible across worker counts", 300, c12_determinism),
    ];
    let filter: Vec<u32> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let mut failed = 0;
    for (k, name, budget, f) in criteria {
        if !filter.is_empty() && !filter.contains(&k) {
            continue;
        }
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(f).unwrap_or_else(|_| Err("panicked".into()));
        let took = start.elapsed();
        let outcome = match outcome {
            Ok(_) if took > Duration::from_secs(budget) => Err(format!("took {:.1} s, budget {budget} s", took.as_secs_f64())),
            o => o,
        };
        match outcome {
            Ok(detail) => println!("criterion {k:>2} PASS  {name} ({:.1} s): {detail}", took.as_secs_f64()),
            Err(why) => {
                failed += 1;
                println!("criterion {k:>2} FAIL  {name} ({:.1} s): {why}", took.as_secs_f64());
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}
