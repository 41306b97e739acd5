//! Exact integer matrices with fraction-free elimination, used to compute
//! ranks and kernel bases over the rationals without leaving the integers.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

/// Dense row-major integer matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn from_rows(rows: Vec<Vec<BigInt>>, cols: usize) -> Self {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged matrix");
            data.extend(r);
        }
        Self {
            rows: n,
            cols,
            data,
        }
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| BigInt::from(v)).collect())
                .collect(),
            cols,
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &BigInt {
        &self.data[r * self.cols + c]
    }

    pub fn get_mut(&mut self, r: usize, c: usize) -> &mut BigInt {
        &mut self.data[r * self.cols + c]
    }

    pub fn row(&self, r: usize) -> &[BigInt] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    /// Appends the rows of `other`, which must have the same width.
    pub fn append_rows(&mut self, other: &IntMatrix) {
        assert_eq!(self.cols, other.cols, "column mismatch");
        self.data.extend_from_slice(&other.data);
        self.rows += other.rows;
    }

    /// Rank over the rationals by Bareiss elimination.
    pub fn rank(&self) -> usize {
        if let Some(small) = self.to_machine() {
            if let Some(r) = Elim::new(self.rows, self.cols, small.clone()).forward_unit() {
                return r;
            }
            if let Some(r) = Elim::new(self.rows, self.cols, small).forward() {
                return r;
            }
        }
        Elim::new(self.rows, self.cols, self.data.clone())
            .forward()
            .expect("big integers do not overflow")
    }

    /// Integer basis of the right kernel `{v : A v = 0}`, one vector per free
    /// column, by fraction-free Gauss-Jordan elimination.
    pub fn kernel_basis(&self) -> Vec<Vec<BigInt>> {
        if let Some(small) = self.to_machine() {
            let unit = Elim::new(self.rows, self.cols, small.clone()).kernel_unit();
            if let Some(k) = unit.or_else(|| Elim::new(self.rows, self.cols, small).kernel()) {
                return k
                    .into_iter()
                    .map(|v| normalize(v.into_iter().map(BigInt::from).collect()))
                    .collect();
            }
        }
        Elim::new(self.rows, self.cols, self.data.clone())
            .kernel()
            .expect("big integers do not overflow")
            .into_iter()
            .map(normalize)
            .collect()
    }

    /// The entries as `i128` when they are small enough to start a checked
    /// machine-word elimination.
    fn to_machine(&self) -> Option<Vec<i128>> {
        self.data
            .iter()
            .map(|x| i64::try_from(x).ok().map(i128::from))
            .collect()
    }

    /// `A v` for a column vector `v`.
    pub fn apply(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .map(|(a, b)| a * b)
                    .sum()
            })
            .collect()
    }
}

/// Divides a vector by the gcd of its entries.
fn normalize(v: Vec<BigInt>) -> Vec<BigInt> {
    let g = v.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() || g.is_one() {
        return v;
    }
    v.into_iter().map(|x| x / &g).collect()
}

/// Entry type for fraction-free elimination. Machine words report overflow
/// with `None` so the caller can retry with big integers.
trait Entry: Clone {
    fn null() -> Self;
    fn unit() -> Self;
    fn is_null(&self) -> bool;
    fn neg(&self) -> Self;
    /// `(piv * a - m * b) / prev`, where the division is known to be exact.
    fn step(piv: &Self, a: &Self, m: &Self, b: &Self, prev: &Self) -> Option<Self>;
}

impl Entry for i128 {
    fn null() -> Self {
        0
    }
    fn unit() -> Self {
        1
    }
    fn is_null(&self) -> bool {
        *self == 0
    }
    fn neg(&self) -> Self {
        -*self
    }
    fn step(piv: &Self, a: &Self, m: &Self, b: &Self, prev: &Self) -> Option<Self> {
        let v = piv.checked_mul(*a)?.checked_sub(m.checked_mul(*b)?)?;
        debug_assert_eq!(v % prev, 0, "fraction-free step was not exact");
        Some(v / prev)
    }
}

impl Entry for BigInt {
    fn null() -> Self {
        Zero::zero()
    }
    fn unit() -> Self {
        One::one()
    }
    fn is_null(&self) -> bool {
        Zero::is_zero(self)
    }
    fn neg(&self) -> Self {
        -self
    }
    fn step(piv: &Self, a: &Self, m: &Self, b: &Self, prev: &Self) -> Option<Self> {
        let mut v = piv * a;
        if !Zero::is_zero(m) && !Zero::is_zero(b) {
            v -= m * b;
        }
        if One::is_one(prev) {
            return Some(v);
        }
        let (q, rem) = v.div_rem(prev);
        debug_assert!(Zero::is_zero(&rem), "fraction-free step was not exact");
        Some(q)
    }
}

struct Elim<E> {
    rows: usize,
    cols: usize,
    data: Vec<E>,
}

impl<E: Entry> Elim<E> {
    fn new(rows: usize, cols: usize, data: Vec<E>) -> Self {
        Self { rows, cols, data }
    }

    fn at(&self, r: usize, c: usize) -> &E {
        &self.data[r * self.cols + c]
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        let (lo, hi) = (a.min(b), a.max(b));
        let (head, tail) = self.data.split_at_mut(hi * self.cols);
        head[lo * self.cols..(lo + 1) * self.cols].swap_with_slice(&mut tail[..self.cols]);
    }

    /// Row `i` becomes `(piv * row_i - m * row_r) / prev`; columns before
    /// `from` are already zero in both rows and are skipped.
    fn eliminate(&mut self, i: usize, r: usize, c: usize, from: usize, piv: &E, prev: &E) -> Option<()> {
        let cols = self.cols;
        let m = self.at(i, c).clone();
        let (row_i, row_r) = if i < r {
            let (head, tail) = self.data.split_at_mut(r * cols);
            (&mut head[i * cols..(i + 1) * cols], &tail[..cols])
        } else {
            let (head, tail) = self.data.split_at_mut(i * cols);
            (&mut tail[..cols], &head[r * cols..(r + 1) * cols])
        };
        for j in from..cols {
            if j == c {
                row_i[j] = E::null();
            } else {
                row_i[j] = E::step(piv, &row_i[j], &m, &row_r[j], prev)?;
            }
        }
        Some(())
    }

    fn find_pivot(&self, r: usize, c: usize) -> Option<usize> {
        (r..self.rows).find(|&i| !self.at(i, c).is_null())
    }

    fn forward(mut self) -> Option<usize> {
        let mut prev = E::unit();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = self.find_pivot(r, c) else {
                continue;
            };
            self.swap_rows(p, r);
            let piv = self.at(r, c).clone();
            for i in r + 1..self.rows {
                self.eliminate(i, r, c, c, &piv, &prev)?;
            }
            prev = piv;
            r += 1;
        }
        Some(r)
    }

    fn kernel(mut self) -> Option<Vec<Vec<E>>> {
        let mut prev = E::unit();
        let mut pivots: Vec<usize> = Vec::new();
        for c in 0..self.cols {
            let r = pivots.len();
            if r == self.rows {
                break;
            }
            let Some(p) = self.find_pivot(r, c) else {
                continue;
            };
            self.swap_rows(p, r);
            let piv = self.at(r, c).clone();
            for i in 0..self.rows {
                if i != r {
                    // Rows above hold nonzero pivot entries in earlier columns,
                    // so they are updated in full.
                    let from = if i < r { 0 } else { c };
                    self.eliminate(i, r, c, from, &piv, &prev)?;
                }
            }
            prev = piv;
            pivots.push(c);
        }
        // Every pivot entry now equals `prev`, and pivot columns are zero elsewhere.
        let mut is_pivot = vec![false; self.cols];
        for &c in &pivots {
            is_pivot[c] = true;
        }
        Some(
            (0..self.cols)
                .filter(|&f| !is_pivot[f])
                .map(|f| {
                    let mut v = vec![E::null(); self.cols];
                    v[f] = prev.clone();
                    for (row, &pc) in pivots.iter().enumerate() {
                        v[pc] = self.at(row, f).neg();
                    }
                    v
                })
                .collect(),
        )
    }
}

/// Elimination that only pivots on entries `1` or `-1`, so rows change by
/// unimodular steps and stay integral without any division. Rows whose entry
/// in the pivot column is already zero are left alone, which keeps sparse
/// matrices cheap. Gives up (`None`) on a column with nonzero entries but no
/// unit, or on overflow.
impl Elim<i128> {
    fn unit_pivot(&self, r: usize, c: usize) -> Result<Option<usize>, ()> {
        let mut nonzero = false;
        for i in r..self.rows {
            match *self.at(i, c) {
                0 => {}
                1 | -1 => return Ok(Some(i)),
                _ => nonzero = true,
            }
        }
        if nonzero {
            Err(())
        } else {
            Ok(None)
        }
    }

    /// `row_i -= m * row_r` over columns `from..`, with `m = a[i][c] * a[r][c]`
    /// so the entry at `c` cancels.
    fn subtract(&mut self, i: usize, r: usize, c: usize, from: usize) -> Option<()> {
        let cols = self.cols;
        let m = self.at(i, c) * self.at(r, c);
        let (row_i, row_r) = if i < r {
            let (head, tail) = self.data.split_at_mut(r * cols);
            (&mut head[i * cols..(i + 1) * cols], &tail[..cols])
        } else {
            let (head, tail) = self.data.split_at_mut(i * cols);
            (&mut tail[..cols], &head[r * cols..(r + 1) * cols])
        };
        for j in from..cols {
            if row_r[j] != 0 {
                row_i[j] = row_i[j].checked_sub(m.checked_mul(row_r[j])?)?;
            }
        }
        Some(())
    }

    fn reduce_unit(&mut self, full: bool) -> Option<Vec<usize>> {
        let mut pivots = Vec::new();
        for c in 0..self.cols {
            let r = pivots.len();
            if r == self.rows {
                break;
            }
            let Some(p) = self.unit_pivot(r, c).ok()? else {
                continue;
            };
            self.swap_rows(p, r);
            let start = if full { 0 } else { r + 1 };
            for i in start..self.rows {
                if i != r && *self.at(i, c) != 0 {
                    let from = if i < r { 0 } else { c };
                    self.subtract(i, r, c, from)?;
                }
            }
            pivots.push(c);
        }
        Some(pivots)
    }

    fn forward_unit(mut self) -> Option<usize> {
        self.reduce_unit(false).map(|p| p.len())
    }

    fn kernel_unit(mut self) -> Option<Vec<Vec<i128>>> {
        let pivots = self.reduce_unit(true)?;
        let mut is_pivot = vec![false; self.cols];
        for &c in &pivots {
            is_pivot[c] = true;
        }
        // Pivot row `k` reads `s x_{pc} + sum_f a_f x_f = 0` with `s = +-1`.
        Some(
            (0..self.cols)
                .filter(|&f| !is_pivot[f])
                .map(|f| {
                    let mut v = vec![0i128; self.cols];
                    v[f] = 1;
                    for (row, &pc) in pivots.iter().enumerate() {
                        v[pc] = -self.at(row, f) * self.at(row, pc);
                    }
                    v
                })
                .collect(),
        )
    }
}
