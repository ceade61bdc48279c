use std::fmt;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::class::ClassTag;
use crate::error::{Error, Result};

/// A matrix with entries in {−1, 0, 1}, optionally tagged with its class.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SignMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<i8>,
    #[serde(skip)]
    class: Option<ClassTag>,
}

impl SignMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<i8>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::Shape(format!(
                "{rows}x{cols} sign matrix needs {} entries, got {}",
                rows * cols,
                entries.len()
            )));
        }
        if let Some(bad) = entries.iter().find(|e| !(-1..=1).contains(*e)) {
            return Err(Error::InvalidInput(format!("entry {bad} is not in {{-1, 0, 1}}")));
        }
        Ok(SignMatrix { rows, cols, entries, class: None })
    }

    pub fn from_rows(rows: &[Vec<i8>]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Shape("ragged rows".into()));
        }
        SignMatrix::new(r, c, rows.concat())
    }

    pub(crate) fn from_raw(rows: usize, cols: usize, entries: Vec<i8>, class: ClassTag) -> Self {
        SignMatrix { rows, cols, entries, class: Some(class) }
    }

    pub fn with_class(mut self, class: ClassTag) -> Self {
        self.class = Some(class);
        self
    }

    pub fn class(&self) -> Option<ClassTag> {
        self.class
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> i8 {
        self.entries[i * self.cols + j]
    }

    pub fn entries(&self) -> &[i8] {
        &self.entries
    }

    pub fn row_vec(&self, i: usize) -> Vec<i8> {
        self.entries[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn col_vec(&self, j: usize) -> Vec<i8> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn minus_ones(&self) -> usize {
        self.entries.iter().filter(|&&e| e == -1).count()
    }

    /// JSON array of rows of integers.
    pub fn to_json(&self) -> Value {
        Value::Array(
            (0..self.rows)
                .map(|i| Value::Array(self.row_vec(i).into_iter().map(Value::from).collect()))
                .collect(),
        )
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let rows = v
            .as_array()
            .ok_or_else(|| Error::Parse("sign matrix must be an array of rows".into()))?;
        let mut parsed = Vec::with_capacity(rows.len());
        for row in rows {
            let row = row
                .as_array()
                .ok_or_else(|| Error::Parse("sign matrix row must be an array".into()))?;
            let mut out = Vec::with_capacity(row.len());
            for e in row {
                let e = e
                    .as_i64()
                    .filter(|e| (-1..=1).contains(e))
                    .ok_or_else(|| Error::Parse(format!("bad sign matrix entry {e}")))?;
                out.push(e as i8);
            }
            parsed.push(out);
        }
        SignMatrix::from_rows(&parsed)
    }
}

impl fmt::Debug for SignMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row_vec(i).iter().map(|e| format!("{e:>2}")).collect();
            writeln!(f, "[{}]", row.join(" "))?;
        }
        Ok(())
    }
}

/// Partial sums stay in {0, 1} and the total is 1.
pub fn is_alternating_sign_vector(v: &[i8]) -> bool {
    let mut s = 0i32;
    for &e in v {
        if !(-1..=1).contains(&e) {
            return false;
        }
        s += e as i32;
        if !(0..=1).contains(&s) {
            return false;
        }
    }
    s == 1
}

/// Outcome of [`validate`]: the list of violated conditions.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub class: ClassTag,
    pub valid: bool,
    pub failures: Vec<String>,
}

/// The geometric symmetries of a class, as maps on cell coordinates of an
/// `n × n` square. U-turn variants other than UOSASM have none.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Sym {
    Rot90,
    Rot180,
    VFlip,
    HFlip,
    Transpose,
    AntiTranspose,
}

impl Sym {
    pub(crate) fn apply(self, n: usize, i: usize, j: usize) -> (usize, usize) {
        let m = n - 1;
        match self {
            Sym::Rot90 => (j, m - i),
            Sym::Rot180 => (m - i, m - j),
            Sym::VFlip => (i, m - j),
            Sym::HFlip => (m - i, j),
            Sym::Transpose => (j, i),
            Sym::AntiTranspose => (m - j, m - i),
        }
    }
}

pub(crate) fn generators(class: ClassTag) -> &'static [Sym] {
    match class {
        ClassTag::Asm | ClassTag::Uasm | ClassTag::Uuasm | ClassTag::Vhpasm => &[],
        ClassTag::Hts => &[Sym::Rot180],
        ClassTag::Qts => &[Sym::Rot90],
        ClassTag::Vs => &[Sym::VFlip],
        ClassTag::Vhs => &[Sym::VFlip, Sym::HFlip],
        ClassTag::Ds | ClassTag::Os | ClassTag::Uosasm => &[Sym::Transpose],
        ClassTag::Das | ClassTag::Oos => &[Sym::Transpose, Sym::AntiTranspose],
        ClassTag::Ts | ClassTag::Vos => &[Sym::VFlip, Sym::Transpose],
    }
}

/// Cells that must be zero in every member of the class.
pub(crate) fn forced_zero(class: ClassTag, n: usize, i: usize, j: usize) -> bool {
    match class {
        ClassTag::Os | ClassTag::Uosasm => i == j,
        ClassTag::Oos => i == j || i + j + 1 == n,
        ClassTag::Vos => i == j && 2 * i + 1 != n,
        _ => false,
    }
}

/// Cells whose −1 is forced by the symmetry: every other row of the
/// middle column (VS) and also of the middle row (VHS, VOS).
pub(crate) fn forced_minus_one(class: ClassTag, n: usize, i: usize, j: usize) -> bool {
    if n.is_multiple_of(2) {
        return false;
    }
    let mid = n / 2;
    let col = j == mid && i % 2 == 1;
    let row = i == mid && j % 2 == 1;
    match class {
        ClassTag::Vs => col,
        ClassTag::Vhs | ClassTag::Vos => col || row,
        _ => false,
    }
}

/// The ordered cell lists that must be alternating sign vectors, with
/// optional `(prefix length, required partial sum)` checkpoints.
pub(crate) fn lines(class: ClassTag, rows: usize, cols: usize) -> Vec<(Vec<(usize, usize)>, Vec<(usize, i32)>)> {
    let mut out = Vec::new();
    match class {
        ClassTag::Uasm => {
            for j in 0..cols {
                out.push(((0..rows).map(|i| (i, j)).collect(), vec![]));
            }
            for k in 0..rows / 2 {
                let mut cells: Vec<(usize, usize)> = (0..cols).map(|j| (2 * k, j)).collect();
                cells.extend((0..cols).rev().map(|j| (2 * k + 1, j)));
                out.push((cells, vec![]));
            }
        }
        ClassTag::Uuasm | ClassTag::Vhpasm | ClassTag::Uosasm => {
            let perverse = class == ClassTag::Vhpasm;
            for k in 0..rows / 2 {
                let mut cells: Vec<(usize, usize)> = (0..cols).map(|j| (2 * k, j)).collect();
                cells.extend((0..cols).rev().map(|j| (2 * k + 1, j)));
                out.push((cells, if perverse { vec![(cols, 0)] } else { vec![] }));
            }
            for k in 0..cols / 2 {
                let mut cells: Vec<(usize, usize)> = (0..rows).map(|i| (i, 2 * k)).collect();
                cells.extend((0..rows).rev().map(|i| (i, 2 * k + 1)));
                out.push((cells, if perverse { vec![(rows, 1)] } else { vec![] }));
            }
        }
        _ => {
            for i in 0..rows {
                out.push(((0..cols).map(|j| (i, j)).collect(), vec![]));
            }
            for j in 0..cols {
                out.push(((0..rows).map(|i| (i, j)).collect(), vec![]));
            }
        }
    }
    out
}

/// Checks the alternating-sign conditions, the class symmetries and the
/// class's forced zeros; never fails, the report carries the violations.
pub fn validate(m: &SignMatrix, class: ClassTag) -> ValidationReport {
    let mut failures = Vec::new();
    let (r, c) = (m.rows, m.cols);
    let shape_ok = match class {
        ClassTag::Uasm => r == 2 * c,
        _ => r == c,
    };
    let shape_ok = shape_ok
        && match class {
            ClassTag::Uuasm | ClassTag::Vhpasm | ClassTag::Uosasm => r % 2 == 0,
            _ => true,
        };
    if !shape_ok {
        failures.push(format!("shape {r}x{c} is not valid for {class}"));
        return ValidationReport { class, valid: false, failures };
    }
    let order = match class {
        ClassTag::Uasm => r,
        ClassTag::Uuasm | ClassTag::Uosasm => 2 * r,
        ClassTag::Vhpasm => 2 * r + 2,
        _ => r,
    };
    if let Err(e) = class.check_order(order) {
        failures.push(e.to_string());
    }
    for (cells, checkpoints) in lines(class, r, c) {
        let v: Vec<i8> = cells.iter().map(|&(i, j)| m.get(i, j)).collect();
        if !is_alternating_sign_vector(&v) {
            failures.push(format!("line through {:?} is not an alternating sign vector: {v:?}", cells[0]));
        }
        for (len, want) in checkpoints {
            let s: i32 = v[..len].iter().map(|&e| e as i32).sum();
            if s != want {
                failures.push(format!("partial sum {s} over the first {len} cells from {:?}, expected {want}", cells[0]));
            }
        }
    }
    for &g in generators(class) {
        let broken = (0..r).flat_map(|i| (0..c).map(move |j| (i, j))).find(|&(i, j)| {
            let (a, b) = g.apply(r, i, j);
            m.get(i, j) != m.get(a, b)
        });
        if let Some(cell) = broken {
            failures.push(format!("not invariant under {g:?} at {cell:?}"));
        }
    }
    for i in 0..r {
        for j in 0..c {
            if forced_zero(class, r, i, j) && m.get(i, j) != 0 {
                failures.push(format!("entry {:?} must be zero for {class}", (i, j)));
            }
        }
    }
    ValidationReport { class, valid: failures.is_empty(), failures }
}

/// Orbits of cells under the class's symmetry group, as a cell → orbit id map.
pub(crate) fn cell_orbits(class: ClassTag, rows: usize, cols: usize) -> Vec<usize> {
    let mut parent: Vec<usize> = (0..rows * cols).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        let mut y = x;
        while p[y] != r {
            let next = p[y];
            p[y] = r;
            y = next;
        }
        r
    }
    for &g in generators(class) {
        for i in 0..rows {
            for j in 0..cols {
                let (a, b) = g.apply(rows, i, j);
                let (x, y) = (find(&mut parent, i * cols + j), find(&mut parent, a * cols + b));
                if x != y {
                    parent[x.max(y)] = x.min(y);
                }
            }
        }
    }
    (0..rows * cols).map(|k| find(&mut parent, k)).collect()
}

/// Number of orbits of −1 entries under the class symmetry, not counting
/// orbits of −1s forced by the symmetry. Plain ASMs: the number of −1s.
pub fn minus_one_statistic(m: &SignMatrix, class: ClassTag) -> Result<usize> {
    let report = validate(m, class);
    if !report.valid {
        return Err(Error::InvalidInput(format!(
            "matrix is not a valid {class}: {}",
            report.failures.join("; ")
        )));
    }
    Ok(statistic_unchecked(m.rows, m.cols, &m.entries, class, &cell_orbits(class, m.rows, m.cols)))
}

pub(crate) fn statistic_unchecked(rows: usize, cols: usize, entries: &[i8], class: ClassTag, orbit: &[usize]) -> usize {
    let mut seen = Vec::new();
    for i in 0..rows {
        for j in 0..cols {
            let k = i * cols + j;
            if entries[k] == -1 && !forced_minus_one(class, rows, i, j) && !seen.contains(&orbit[k]) {
                seen.push(orbit[k]);
            }
        }
    }
    seen.len()
}
