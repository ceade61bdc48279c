//! Enumeration of ASMs and their variants.
//!
//! Plain ASMs go through the row-transfer representation: the state after
//! `k` rows is the vector of column partial sums, a 0/1 vector with `k`
//! ones, and each row is the difference of consecutive states. Every
//! partial state can be completed, so the traversal never backtracks.
//!
//! The other classes use a backtracking search over cell orbits of the
//! symmetry group. After each assignment every line through the orbit is
//! checked by a two-state reachability pass (the partial sums live in
//! {0, 1}), which doubles as look-ahead for the unassigned cells.

use rayon::prelude::*;
use serde::Serialize;

use super::class::ClassTag;
use super::matrix::{
    cell_orbits, forced_zero, is_alternating_sign_vector, lines, statistic_unchecked, validate, SignMatrix,
};
use crate::error::{Error, Result};
use crate::exact::{IntPolynomial, Poly, Rational};

/// Largest order accepted for each class; the searches are exponential.
pub fn order_limit(class: ClassTag) -> usize {
    match class {
        ClassTag::Asm => 9,
        ClassTag::Uasm => 10,
        ClassTag::Uuasm | ClassTag::Vhpasm | ClassTag::Uosasm => 18,
        _ => 15,
    }
}

fn check(class: ClassTag, order: usize) -> Result<(usize, usize)> {
    let shape = class.shape(order)?;
    if order > order_limit(class) {
        return Err(Error::InvalidInput(format!(
            "{class} enumeration is limited to order {}, got {order}",
            order_limit(class)
        )));
    }
    Ok(shape)
}

/// Count and statistic distribution of one class at one order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Census {
    pub class: ClassTag,
    pub order: usize,
    pub count: u64,
    /// `by_statistic[k]` members have `minus_one_statistic = k`.
    pub by_statistic: Vec<u64>,
}

impl Census {
    fn empty(class: ClassTag, order: usize) -> Self {
        Census { class, order, count: 0, by_statistic: Vec::new() }
    }

    fn record(&mut self, stat: usize) {
        if self.by_statistic.len() <= stat {
            self.by_statistic.resize(stat + 1, 0);
        }
        self.by_statistic[stat] += 1;
        self.count += 1;
    }

    fn merge(mut self, other: Census) -> Census {
        if self.by_statistic.len() < other.by_statistic.len() {
            self.by_statistic.resize(other.by_statistic.len(), 0);
        }
        for (a, b) in self.by_statistic.iter_mut().zip(&other.by_statistic) {
            *a += b;
        }
        self.count += other.count;
        self
    }

    /// `Σ x^statistic` over the members.
    pub fn generating_function(&self) -> IntPolynomial {
        Poly::from_coeffs(0, self.by_statistic.iter().map(|&c| Rational::from(c as i64)).collect())
    }
}

// ---------------------------------------------------------------------------
// plain ASMs

struct RowTransfer<'a, F: FnMut(&[i8], usize)> {
    n: usize,
    state: Vec<i8>,
    matrix: Vec<i8>,
    visit: &'a mut F,
}

impl<F: FnMut(&[i8], usize)> RowTransfer<'_, F> {
    fn rows(&mut self, r: usize, minus: usize) {
        if r == self.n {
            (self.visit)(&self.matrix, minus);
            return;
        }
        self.cells(r, 0, 0, minus);
    }

    // column j of row r, with row prefix sum p
    fn cells(&mut self, r: usize, j: usize, p: i8, minus: usize) {
        let n = self.n;
        if j == n {
            if p == 1 {
                self.rows(r + 1, minus);
            }
            return;
        }
        let s = self.state[j];
        // the row can still reach total 1 only if enough columns remain
        for a in [0i8, 1, -1] {
            let (ns, np) = (s + a, p + a);
            if !(0..=1).contains(&ns) || !(0..=1).contains(&np) {
                continue;
            }
            if np == 0 && j + 1 == n {
                continue;
            }
            self.state[j] = ns;
            self.matrix[r * n + j] = a;
            self.cells(r, j + 1, np, minus + (a == -1) as usize);
            self.matrix[r * n + j] = 0;
            self.state[j] = s;
        }
    }
}

/// Visits all `n × n` ASMs whose first row has its 1 in column `first`,
/// passing the entries and the number of −1s.
fn asm_with_first_row(n: usize, first: usize, visit: &mut impl FnMut(&[i8], usize)) {
    let mut state = vec![0i8; n];
    let mut matrix = vec![0i8; n * n];
    state[first] = 1;
    matrix[first] = 1;
    let mut rt = RowTransfer { n, state, matrix, visit };
    rt.rows(1, 0);
}

// ---------------------------------------------------------------------------
// symmetric backtracking

const UNSET: i8 = 2;

struct Line {
    cells: Vec<usize>,
    // (number of cells, allowed partial sums as a mask over {0, 1})
    checkpoints: Vec<(usize, u8)>,
}

/// A constraint problem whose solutions are the members of one class.
struct Problem {
    class: ClassTag,
    rows: usize,
    cols: usize,
    /// cell → orbit index, `None` for cells forced to zero
    orbit_of: Vec<Option<usize>>,
    orbit_cells: Vec<Vec<usize>>,
    /// orbit → lines through any of its cells
    orbit_lines: Vec<Vec<usize>>,
    lines: Vec<Line>,
    /// geometric orbits, for the statistic
    stat_orbits: Vec<usize>,
}

impl Problem {
    fn new(class: ClassTag, rows: usize, cols: usize) -> Self {
        let stat_orbits = cell_orbits(class, rows, cols);
        let mut orbit_of = vec![None; rows * cols];
        let mut orbit_cells: Vec<Vec<usize>> = Vec::new();
        let mut index_of_root = std::collections::HashMap::new();
        // a forced zero forces its whole orbit
        let zero_roots: std::collections::HashSet<usize> = (0..rows * cols)
            .filter(|&k| forced_zero(class, rows, k / cols, k % cols))
            .map(|k| stat_orbits[k])
            .collect();
        for k in 0..rows * cols {
            let root = stat_orbits[k];
            if zero_roots.contains(&root) {
                continue;
            }
            let idx = *index_of_root.entry(root).or_insert_with(|| {
                orbit_cells.push(Vec::new());
                orbit_cells.len() - 1
            });
            orbit_cells[idx].push(k);
            orbit_of[k] = Some(idx);
        }
        let lines: Vec<Line> = lines(class, rows, cols)
            .into_iter()
            .map(|(cells, cps)| Line {
                cells: cells.iter().map(|&(i, j)| i * cols + j).collect(),
                checkpoints: cps.into_iter().map(|(len, want)| (len, 1u8 << want)).collect(),
            })
            .collect();
        let mut orbit_lines = vec![Vec::new(); orbit_cells.len()];
        for (li, line) in lines.iter().enumerate() {
            for &c in &line.cells {
                if let Some(o) = orbit_of[c] {
                    if !orbit_lines[o].contains(&li) {
                        orbit_lines[o].push(li);
                    }
                }
            }
        }
        Problem { class, rows, cols, orbit_of, orbit_cells, orbit_lines, lines, stat_orbits }
    }

    fn value(&self, vals: &[i8], cell: usize) -> i8 {
        match self.orbit_of[cell] {
            Some(o) => vals[o],
            None => 0,
        }
    }

    /// Whether some completion of the line is an alternating sign vector
    /// (ignoring ties between unassigned cells of one orbit).
    fn feasible(&self, vals: &[i8], line: &Line) -> bool {
        let mut reach: u8 = 0b01;
        let mut cp = line.checkpoints.iter().peekable();
        for (k, &c) in line.cells.iter().enumerate() {
            reach = match self.value(vals, c) {
                0 => reach,
                1 => (reach & 0b01) << 1,
                -1 => (reach & 0b10) >> 1,
                _ => reach | ((reach & 0b01) << 1) | ((reach & 0b10) >> 1),
            };
            while let Some(&&(len, mask)) = cp.peek() {
                if len != k + 1 {
                    break;
                }
                reach &= mask;
                cp.next();
            }
            if reach == 0 {
                return false;
            }
        }
        reach & 0b10 != 0
    }

    fn search(&self, vals: &mut Vec<i8>, next: usize, visit: &mut impl FnMut(&[i8])) {
        if next == self.orbit_cells.len() {
            // lines made only of forced zeros are never checked on the way down
            if self.lines.iter().all(|l| self.feasible(vals, l)) {
                visit(vals);
            }
            return;
        }
        for v in [0i8, 1, -1] {
            vals[next] = v;
            if self.orbit_lines[next].iter().all(|&l| self.feasible(vals, &self.lines[l])) {
                self.search(vals, next + 1, visit);
            }
        }
        vals[next] = UNSET;
    }

    /// Feasible assignments of the first `depth` orbits, in search order.
    fn prefixes(&self, depth: usize) -> Vec<Vec<i8>> {
        let depth = depth.min(self.orbit_cells.len());
        let mut out = Vec::new();
        let mut vals = vec![UNSET; self.orbit_cells.len()];
        fn go(p: &Problem, vals: &mut Vec<i8>, k: usize, depth: usize, out: &mut Vec<Vec<i8>>) {
            if k == depth {
                out.push(vals.clone());
                return;
            }
            for v in [0i8, 1, -1] {
                vals[k] = v;
                if p.orbit_lines[k].iter().all(|&l| p.feasible(vals, &p.lines[l])) {
                    go(p, vals, k + 1, depth, out);
                }
            }
            vals[k] = UNSET;
        }
        go(self, &mut vals, 0, depth, &mut out);
        out
    }

    fn run_from(&self, prefix: &[i8], depth: usize, visit: &mut impl FnMut(&[i8])) {
        let mut vals = prefix.to_vec();
        self.search(&mut vals, depth.min(self.orbit_cells.len()), visit);
    }

    fn entries(&self, vals: &[i8]) -> Vec<i8> {
        (0..self.rows * self.cols).map(|c| self.value(vals, c)).collect()
    }

    fn statistic(&self, entries: &[i8]) -> usize {
        statistic_unchecked(self.rows, self.cols, entries, self.class, &self.stat_orbits)
    }
}

/// Number of search-tree prefixes handed out as parallel work units.
const SPLIT_DEPTH: usize = 6;

// ---------------------------------------------------------------------------
// public entry points

/// Enumeration route for a class.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    /// Row transfer for plain ASMs, orbit backtracking otherwise.
    Default,
    /// Orbit backtracking for every class, including plain ASMs.
    Backtrack,
}

/// Calls `visit` on every member, sequentially, in canonical order.
pub fn visit(class: ClassTag, order: usize, visit: &mut dyn FnMut(&SignMatrix)) -> Result<()> {
    visit_with(class, order, Method::Default, visit)
}

pub fn visit_with(class: ClassTag, order: usize, method: Method, visit: &mut dyn FnMut(&SignMatrix)) -> Result<()> {
    let (rows, cols) = check(class, order)?;
    if class == ClassTag::Asm && method == Method::Default {
        for first in 0..order {
            asm_with_first_row(order, first, &mut |e: &[i8], _| {
                visit(&SignMatrix::from_raw(rows, cols, e.to_vec(), class))
            });
        }
        return Ok(());
    }
    let p = Problem::new(class, rows, cols);
    let mut vals = vec![UNSET; p.orbit_cells.len()];
    p.search(&mut vals, 0, &mut |v: &[i8]| visit(&SignMatrix::from_raw(rows, cols, p.entries(v), class)));
    Ok(())
}

/// All members, in canonical order (independent of the thread count).
pub fn enumerate(class: ClassTag, order: usize) -> Result<Vec<SignMatrix>> {
    enumerate_with(class, order, Method::Default)
}

pub fn enumerate_with(class: ClassTag, order: usize, method: Method) -> Result<Vec<SignMatrix>> {
    let (rows, cols) = check(class, order)?;
    if class == ClassTag::Asm && method == Method::Default {
        let parts: Vec<Vec<SignMatrix>> = (0..order)
            .into_par_iter()
            .map(|first| {
                let mut out = Vec::new();
                asm_with_first_row(order, first, &mut |e: &[i8], _| {
                    out.push(SignMatrix::from_raw(rows, cols, e.to_vec(), class))
                });
                out
            })
            .collect();
        return Ok(parts.concat());
    }
    let p = Problem::new(class, rows, cols);
    let parts: Vec<Vec<SignMatrix>> = p
        .prefixes(SPLIT_DEPTH)
        .par_iter()
        .map(|prefix| {
            let mut out = Vec::new();
            p.run_from(prefix, SPLIT_DEPTH, &mut |v: &[i8]| {
                out.push(SignMatrix::from_raw(rows, cols, p.entries(v), class))
            });
            out
        })
        .collect();
    Ok(parts.concat())
}

/// Count and −1-statistic distribution, computed in parallel on the
/// current rayon pool.
pub fn census(class: ClassTag, order: usize) -> Result<Census> {
    census_with(class, order, Method::Default)
}

pub fn census_with(class: ClassTag, order: usize, method: Method) -> Result<Census> {
    let (rows, cols) = check(class, order)?;
    let zero = || Census::empty(class, order);
    if class == ClassTag::Asm && method == Method::Default {
        let parts: Vec<Census> = (0..order)
            .into_par_iter()
            .map(|first| {
                let mut c = zero();
                asm_with_first_row(order, first, &mut |_: &[i8], minus| c.record(minus));
                c
            })
            .collect();
        return Ok(parts.into_iter().fold(zero(), Census::merge));
    }
    let p = Problem::new(class, rows, cols);
    let parts: Vec<Census> = p
        .prefixes(SPLIT_DEPTH)
        .par_iter()
        .map(|prefix| {
            let mut c = zero();
            p.run_from(prefix, SPLIT_DEPTH, &mut |v: &[i8]| c.record(p.statistic(&p.entries(v))));
            c
        })
        .collect();
    Ok(parts.into_iter().fold(zero(), Census::merge))
}

/// `Σ_A x^{statistic(A)}` over the class.
pub fn x_enumeration(class: ClassTag, order: usize) -> Result<IntPolynomial> {
    Ok(census(class, order)?.generating_function())
}

/// All alternating sign vectors of length `len`.
pub fn alternating_sign_vectors(len: usize) -> Vec<Vec<i8>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(len);
    fn go(len: usize, s: i8, cur: &mut Vec<i8>, out: &mut Vec<Vec<i8>>) {
        if cur.len() == len {
            if s == 1 {
                out.push(cur.clone());
            }
            return;
        }
        for a in [0i8, 1, -1] {
            if (0..=1).contains(&(s + a)) {
                cur.push(a);
                go(len, s + a, cur, out);
                cur.pop();
            }
        }
    }
    go(len, 0, &mut cur, &mut out);
    out
}

/// Members found by generating a superset and keeping what [`validate`]
/// accepts: all ASMs for square classes, and products of alternating
/// sign vectors along the columns (UASM) or column U-turns (the other
/// U-turn variants). Meant as an independent oracle at small orders.
pub fn enumerate_by_filter(class: ClassTag, order: usize) -> Result<Vec<SignMatrix>> {
    let (rows, cols) = class.shape(order)?;
    let mut out = Vec::new();
    let mut keep = |m: SignMatrix| {
        if validate(&m, class).valid {
            out.push(m.with_class(class));
        }
    };
    match class {
        ClassTag::Uasm => {
            let asvs = alternating_sign_vectors(rows);
            for_each_product(&asvs, cols, &mut |choice| {
                let entries = (0..rows)
                    .flat_map(|i| choice.iter().map(move |c| c[i]))
                    .collect();
                keep(SignMatrix::new(rows, cols, entries).expect("shape"));
            });
        }
        ClassTag::Uuasm | ClassTag::Vhpasm | ClassTag::Uosasm => {
            let asvs = alternating_sign_vectors(2 * rows);
            for_each_product(&asvs, cols / 2, &mut |choice| {
                let mut e = vec![0i8; rows * cols];
                for (k, v) in choice.iter().enumerate() {
                    for i in 0..rows {
                        e[i * cols + 2 * k] = v[i];
                        e[(rows - 1 - i) * cols + 2 * k + 1] = v[rows + i];
                    }
                }
                keep(SignMatrix::new(rows, cols, e).expect("shape"));
            });
        }
        _ => {
            if order > 8 {
                return Err(Error::InvalidInput("filtering is limited to order 8".into()));
            }
            for first in 0..order {
                asm_with_first_row(order, first, &mut |e: &[i8], _| {
                    keep(SignMatrix::new(rows, cols, e.to_vec()).expect("shape"))
                });
            }
        }
    }
    out.sort();
    Ok(out)
}

fn for_each_product<'a>(items: &'a [Vec<i8>], k: usize, f: &mut impl FnMut(&[&'a Vec<i8>])) {
    let mut cur: Vec<&Vec<i8>> = Vec::with_capacity(k);
    fn go<'a>(items: &'a [Vec<i8>], k: usize, cur: &mut Vec<&'a Vec<i8>>, f: &mut impl FnMut(&[&'a Vec<i8>])) {
        if cur.len() == k {
            f(cur);
            return;
        }
        for it in items {
            cur.push(it);
            go(items, k, cur, f);
            cur.pop();
        }
    }
    go(items, k, &mut cur, f);
}

/// Sanity check used by tests: every entry line of a square matrix is an
/// alternating sign vector.
pub fn is_asm(m: &SignMatrix) -> bool {
    m.rows() == m.cols()
        && (0..m.rows()).all(|i| is_alternating_sign_vector(&m.row_vec(i)))
        && (0..m.cols()).all(|j| is_alternating_sign_vector(&m.col_vec(j)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::asm::minus_one_statistic;
    use crate::chars::asm_product_formula;

    #[test]
    fn asm_counts_match_product_formula() {
        for n in 1..=7 {
            let c = census(ClassTag::Asm, n).unwrap();
            assert_eq!(num_bigint::BigInt::from(c.count), asm_product_formula(n));
        }
    }

    #[test]
    fn asm_three_has_one_minus_one_member() {
        let all = enumerate(ClassTag::Asm, 3).unwrap();
        assert_eq!(all.len(), 7);
        assert!(all.iter().all(is_asm));
        assert_eq!(x_enumeration(ClassTag::Asm, 3).unwrap().to_string(), "6 + x");
    }

    #[test]
    fn generating_function_at_zero_and_two() {
        let gf = x_enumeration(ClassTag::Asm, 4).unwrap();
        assert_eq!(gf.eval(&Rational::from(0)).unwrap(), Rational::from(24));
        assert_eq!(gf.eval(&Rational::from(2)).unwrap(), Rational::from(64));
        assert_eq!(gf.eval_at_one(), Rational::from(42));
    }

    #[test]
    fn backtracking_agrees_with_row_transfer() {
        for n in 1..=5 {
            let mut a = enumerate(ClassTag::Asm, n).unwrap();
            let mut b = enumerate_with(ClassTag::Asm, n, Method::Backtrack).unwrap();
            a.sort();
            b.sort();
            assert_eq!(a, b);
        }
    }

    #[test]
    fn small_class_examples() {
        assert_eq!(enumerate(ClassTag::Qts, 4).unwrap().len(), 2);
        let u = enumerate(ClassTag::Uasm, 2).unwrap();
        assert_eq!(u.len(), 2);
        assert!(enumerate(ClassTag::Vos, 13).is_err());
    }

    #[test]
    fn members_validate_and_match_filter() {
        for class in ClassTag::ALL {
            for order in 1..=6 {
                if class.check_order(order).is_err() {
                    continue;
                }
                let mut got = enumerate(class, order).unwrap();
                for m in &got {
                    assert!(validate(m, class).valid, "{class} {order}\n{m:?}");
                }
                got.sort();
                let want = enumerate_by_filter(class, order).unwrap();
                assert_eq!(got, want, "{class} order {order}");
            }
        }
    }

    #[test]
    fn hts_statistic_halves_minus_ones() {
        for order in [2, 4, 6] {
            for m in enumerate(ClassTag::Hts, order).unwrap() {
                assert_eq!(minus_one_statistic(&m, ClassTag::Hts).unwrap() * 2, m.minus_ones());
            }
        }
    }

    #[test]
    fn census_statistic_matches_direct_statistic() {
        for (class, order) in [(ClassTag::Vs, 5), (ClassTag::Vhs, 7), (ClassTag::Qts, 5), (ClassTag::Asm, 4)] {
            let c = census(class, order).unwrap();
            let mut direct = Census::empty(class, order);
            for m in enumerate(class, order).unwrap() {
                direct.record(minus_one_statistic(&m, class).unwrap());
            }
            assert_eq!(c, direct);
        }
    }
}
