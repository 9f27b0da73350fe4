//! Dense integer matrices and Smith normal form with transform tracking.
//!
//! Convention used throughout the crate: module elements are *row* vectors
//! and matrices act by right multiplication, so a matrix presents a module
//! through its row span and a homomorphism matrix has one row per source
//! generator.

use std::fmt;
use std::ops::Mul;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMat {
    rows: usize,
    cols: usize,
    data: Vec<i64>,
}

impl IntMat {
    pub fn zero(rows: usize, cols: usize) -> Self {
        IntMat { rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMat::zero(n, n);
        for i in 0..n {
            m[(i, i)] = 1;
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<i64>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        IntMat { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn row_count(&self) -> usize {
        self.rows
    }

    pub fn col_count(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[i64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn rows_vec(&self) -> Vec<Vec<i64>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
    }

    pub fn push_row(&mut self, row: &[i64]) {
        assert_eq!(row.len(), self.cols, "row length mismatch");
        self.data.extend_from_slice(row);
        self.rows += 1;
    }

    /// Stack `other` below `self`.
    pub fn vstack(&self, other: &IntMat) -> IntMat {
        assert_eq!(self.cols, other.cols, "column mismatch in vstack");
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        IntMat { rows: self.rows + other.rows, cols: self.cols, data }
    }

    /// Keep columns `lo..hi`.
    pub fn col_slice(&self, lo: usize, hi: usize) -> IntMat {
        assert!(lo <= hi && hi <= self.cols);
        let mut out = IntMat::zero(self.rows, hi - lo);
        for i in 0..self.rows {
            for j in lo..hi {
                out[(i, j - lo)] = self[(i, j)];
            }
        }
        out
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

}

impl std::ops::Index<(usize, usize)> for IntMat {
    type Output = i64;
    fn index(&self, (i, j): (usize, usize)) -> &i64 {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut i64 {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl Mul for &IntMat {
    type Output = IntMat;
    fn mul(self, rhs: &IntMat) -> IntMat {
        assert_eq!(self.cols, rhs.rows, "shape mismatch in matrix product");
        // accumulate wide so only a result outside the 64-bit range can fail
        let mut out = IntMat::zero(self.rows, rhs.cols);
        for i in 0..self.rows {
            for j in 0..rhs.cols {
                let mut acc = 0i128;
                for k in 0..self.cols {
                    acc += self[(i, k)] as i128 * rhs[(k, j)] as i128;
                }
                out[(i, j)] = i64::try_from(acc).unwrap_or_else(|_| {
                    panic!("matrix product entry {acc} exceeds the 64-bit range")
                });
            }
        }
        out
    }
}

impl fmt::Debug for IntMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[")?;
        for i in 0..self.rows {
            writeln!(f, "  {:?}", self.row(i))?;
        }
        write!(f, "]")
    }
}

/// Row vector times matrix: `x * a` with `x` of length `a.row_count()`.
pub fn vec_mul(x: &[i64], a: &IntMat) -> Vec<i64> {
    assert_eq!(x.len(), a.row_count(), "shape mismatch in vector product");
    // accumulate wide so only a result outside the 64-bit range can fail
    (0..a.col_count())
        .map(|j| {
            let mut acc = 0i128;
            for (i, &c) in x.iter().enumerate() {
                acc += c as i128 * a[(i, j)] as i128;
            }
            i64::try_from(acc)
                .unwrap_or_else(|_| panic!("vector product entry {acc} exceeds the 64-bit range"))
        })
        .collect()
}

/// Smith normal form `d = p * a * q` with `p`, `q` unimodular, the diagonal
/// of `d` nonnegative and forming a divisibility chain.
pub struct Smith {
    pub d: IntMat,
    pub p: IntMat,
    pub q: IntMat,
    pub qinv: IntMat,
    pub rank: usize,
}

/// Wide-entry matrix used only inside `smith`: intermediate values during the
/// elimination routinely outgrow the inputs, so the worker accumulates in
/// `i128` and narrows back to `i64` once the factorization settles.
struct WideMat {
    rows: usize,
    cols: usize,
    data: Vec<i128>,
}

impl WideMat {
    fn from_int(a: &IntMat) -> Self {
        WideMat {
            rows: a.rows,
            cols: a.cols,
            data: a.data.iter().map(|&v| v as i128).collect(),
        }
    }

    fn identity(n: usize) -> Self {
        let mut m = WideMat { rows: n, cols: n, data: vec![0; n * n] };
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    fn at(&self, i: usize, j: usize) -> i128 {
        self.data[i * self.cols + j]
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    fn addmul_row(&mut self, i: usize, j: usize, c: i128) {
        for col in 0..self.cols {
            self.data[i * self.cols + col] += c * self.data[j * self.cols + col];
        }
    }

    fn addmul_col(&mut self, i: usize, j: usize, c: i128) {
        for row in 0..self.rows {
            self.data[row * self.cols + i] += c * self.data[row * self.cols + j];
        }
    }

    fn neg_row(&mut self, i: usize) {
        for col in 0..self.cols {
            self.data[i * self.cols + col] *= -1;
        }
    }

    fn neg_col(&mut self, j: usize) {
        for row in 0..self.rows {
            self.data[row * self.cols + j] *= -1;
        }
    }

    fn narrow(&self, what: &str) -> IntMat {
        let data = self
            .data
            .iter()
            .map(|&v| {
                i64::try_from(v)
                    .unwrap_or_else(|_| panic!("{what} entry {v} exceeds the 64-bit range"))
            })
            .collect();
        IntMat { rows: self.rows, cols: self.cols, data }
    }

    fn mul_int(&self, rhs: &IntMat) -> WideMat {
        assert_eq!(self.cols, rhs.rows, "shape mismatch in matrix product");
        let mut out = WideMat { rows: self.rows, cols: rhs.cols, data: vec![0; self.rows * rhs.cols] };
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..rhs.cols {
                    out.data[i * rhs.cols + j] += a * rhs[(k, j)] as i128;
                }
            }
        }
        out
    }

    fn equals_int(&self, m: &IntMat) -> bool {
        self.rows == m.rows
            && self.cols == m.cols
            && self.data.iter().zip(&m.data).all(|(&w, &v)| w == v as i128)
    }
}

struct Worker {
    m: WideMat,
    p: WideMat,
    q: WideMat,
    qinv: WideMat,
}

impl Worker {
    fn new(a: &IntMat) -> Self {
        Worker {
            m: WideMat::from_int(a),
            p: WideMat::identity(a.row_count()),
            q: WideMat::identity(a.col_count()),
            qinv: WideMat::identity(a.col_count()),
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        self.m.swap_rows(a, b);
        self.p.swap_rows(a, b);
    }

    fn addmul_row(&mut self, i: usize, j: usize, c: i128) {
        self.m.addmul_row(i, j, c);
        self.p.addmul_row(i, j, c);
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        self.m.swap_cols(a, b);
        self.q.swap_cols(a, b);
        self.qinv.swap_rows(a, b);
    }

    fn addmul_col(&mut self, i: usize, j: usize, c: i128) {
        self.m.addmul_col(i, j, c);
        self.q.addmul_col(i, j, c);
        // (I + c e_{ji})^{-1} = I - c e_{ji} acting on the left of qinv
        self.qinv.addmul_row(j, i, -c);
    }

    fn neg_col(&mut self, j: usize) {
        self.m.neg_col(j);
        self.q.neg_col(j);
        self.qinv.neg_row(j);
    }

    /// Nonzero entry of minimal absolute value in the submatrix `[k.., k..]`,
    /// ties broken by lowest `(row, column)`.
    fn find_pivot(&self, k: usize) -> Option<(usize, usize)> {
        let mut best: Option<(i128, usize, usize)> = None;
        for i in k..self.m.rows {
            for j in k..self.m.cols {
                let v = self.m.at(i, j).abs();
                if v != 0 && best.map_or(true, |(bv, _, _)| v < bv) {
                    best = Some((v, i, j));
                    if v == 1 {
                        return Some((i, j));
                    }
                }
            }
        }
        best.map(|(_, i, j)| (i, j))
    }

    fn find_nondivisible(&self, k: usize) -> Option<usize> {
        let d = self.m.at(k, k);
        for i in k + 1..self.m.rows {
            for j in k + 1..self.m.cols {
                if self.m.at(i, j) % d != 0 {
                    return Some(i);
                }
            }
        }
        None
    }

    fn reduce(&mut self) -> usize {
        let steps = self.m.rows.min(self.m.cols);
        let mut k = 0;
        while k < steps {
            let Some((pi, pj)) = self.find_pivot(k) else { break };
            self.swap_rows(k, pi);
            self.swap_cols(k, pj);
            loop {
                let mut dirty = false;
                for i in 0..self.m.rows {
                    if i == k || self.m.at(i, k) == 0 {
                        continue;
                    }
                    let q = self.m.at(i, k) / self.m.at(k, k);
                    self.addmul_row(i, k, -q);
                    if self.m.at(i, k) != 0 {
                        // remainder is strictly smaller: promote it to pivot
                        self.swap_rows(k, i);
                        dirty = true;
                        break;
                    }
                }
                if dirty {
                    continue;
                }
                for j in 0..self.m.cols {
                    if j == k || self.m.at(k, j) == 0 {
                        continue;
                    }
                    let q = self.m.at(k, j) / self.m.at(k, k);
                    self.addmul_col(j, k, -q);
                    if self.m.at(k, j) != 0 {
                        self.swap_cols(k, j);
                        dirty = true;
                        break;
                    }
                }
                if dirty {
                    continue;
                }
                // pivot row and column are clear; force the pivot to divide
                // the rest of the submatrix so the diagonal forms a chain
                if let Some(i) = self.find_nondivisible(k) {
                    self.addmul_row(k, i, 1);
                    continue;
                }
                break;
            }
            if self.m.at(k, k) < 0 {
                self.neg_col(k);
            }
            k += 1;
        }
        k
    }
}

/// Computes the Smith normal form with unimodular transforms.  Intermediate
/// arithmetic runs in 128 bits; panics only if a finished transform entry
/// falls outside the 64-bit range.
pub fn smith(a: &IntMat) -> Smith {
    let mut w = Worker::new(a);
    let rank = w.reduce();
    let s = Smith {
        d: w.m.narrow("smith diagonal"),
        p: w.p.narrow("smith row transform"),
        q: w.q.narrow("smith column transform"),
        qinv: w.qinv.narrow("smith column transform inverse"),
        rank,
    };
    debug_assert!(
        WideMat::from_int(&s.p).mul_int(a).mul_int(&s.q).equals_int(&s.d),
        "transform bookkeeping broke"
    );
    debug_assert!(
        WideMat::from_int(&s.q).mul_int(&s.qinv).equals_int(&IntMat::identity(a.col_count())),
        "q inverse bookkeeping broke"
    );
    debug_assert!((0..rank.saturating_sub(1)).all(|i| s.d[(i + 1, i + 1)] % s.d[(i, i)] == 0));
    s
}

/// Diagonal of the Smith form only (no transforms); fast path for bulk runs.
pub fn smith_diagonal(a: &IntMat) -> Vec<i64> {
    // 64-bit elimination with overflow checks first; the occasional matrix
    // whose intermediate values outgrow that range redoes the work in wide
    // arithmetic.
    smith_diagonal_checked(a).unwrap_or_else(|| smith_diagonal_wide(a))
}

/// The same elimination as `smith_diagonal_wide` in plain 64-bit arithmetic,
/// bailing out with `None` on any overflow.
fn smith_diagonal_checked(a: &IntMat) -> Option<Vec<i64>> {
    fn addmul_row(m: &mut IntMat, i: usize, j: usize, c: i64) -> Option<()> {
        for col in 0..m.col_count() {
            let t = c.checked_mul(m[(j, col)])?;
            m[(i, col)] = m[(i, col)].checked_add(t)?;
        }
        Some(())
    }
    fn addmul_col(m: &mut IntMat, i: usize, j: usize, c: i64) -> Option<()> {
        for row in 0..m.row_count() {
            let t = c.checked_mul(m[(row, j)])?;
            m[(row, i)] = m[(row, i)].checked_add(t)?;
        }
        Some(())
    }
    let mut m = a.clone();
    let steps = m.row_count().min(m.col_count());
    let mut k = 0;
    'outer: while k < steps {
        let mut best: Option<(i64, usize, usize)> = None;
        for i in k..m.row_count() {
            for j in k..m.col_count() {
                let v = m[(i, j)].checked_abs()?;
                if v != 0 && best.map_or(true, |(bv, _, _)| v < bv) {
                    best = Some((v, i, j));
                }
            }
        }
        let Some((_, pi, pj)) = best else { break 'outer };
        m.swap_rows(k, pi);
        m.swap_cols(k, pj);
        loop {
            let mut dirty = false;
            for i in 0..m.row_count() {
                if i == k || m[(i, k)] == 0 {
                    continue;
                }
                let q = m[(i, k)].checked_div(m[(k, k)])?;
                addmul_row(&mut m, i, k, q.checked_neg()?)?;
                if m[(i, k)] != 0 {
                    m.swap_rows(k, i);
                    dirty = true;
                    break;
                }
            }
            if dirty {
                continue;
            }
            for j in 0..m.col_count() {
                if j == k || m[(k, j)] == 0 {
                    continue;
                }
                let q = m[(k, j)].checked_div(m[(k, k)])?;
                addmul_col(&mut m, j, k, q.checked_neg()?)?;
                if m[(k, j)] != 0 {
                    m.swap_cols(k, j);
                    dirty = true;
                    break;
                }
            }
            if dirty {
                continue;
            }
            let d = m[(k, k)];
            let mut fixed = false;
            'scan: for i in k + 1..m.row_count() {
                for j in k + 1..m.col_count() {
                    if m[(i, j)].checked_rem(d)? != 0 {
                        addmul_row(&mut m, k, i, 1)?;
                        fixed = true;
                        break 'scan;
                    }
                }
            }
            if !fixed {
                break;
            }
        }
        k += 1;
    }
    Some((0..steps).map(|i| m[(i, i)].abs()).collect())
}

fn smith_diagonal_wide(a: &IntMat) -> Vec<i64> {
    // Same elimination, but on a bare wide matrix without transform upkeep.
    let mut m = WideMat::from_int(a);
    let steps = m.rows.min(m.cols);
    let mut k = 0;
    'outer: while k < steps {
        let mut best: Option<(i128, usize, usize)> = None;
        for i in k..m.rows {
            for j in k..m.cols {
                let v = m.at(i, j).abs();
                if v != 0 && best.map_or(true, |(bv, _, _)| v < bv) {
                    best = Some((v, i, j));
                }
            }
        }
        let Some((_, pi, pj)) = best else { break 'outer };
        m.swap_rows(k, pi);
        m.swap_cols(k, pj);
        loop {
            let mut dirty = false;
            for i in 0..m.rows {
                if i == k || m.at(i, k) == 0 {
                    continue;
                }
                let q = m.at(i, k) / m.at(k, k);
                m.addmul_row(i, k, -q);
                if m.at(i, k) != 0 {
                    m.swap_rows(k, i);
                    dirty = true;
                    break;
                }
            }
            if dirty {
                continue;
            }
            for j in 0..m.cols {
                if j == k || m.at(k, j) == 0 {
                    continue;
                }
                let q = m.at(k, j) / m.at(k, k);
                m.addmul_col(j, k, -q);
                if m.at(k, j) != 0 {
                    m.swap_cols(k, j);
                    dirty = true;
                    break;
                }
            }
            if dirty {
                continue;
            }
            let d = m.at(k, k);
            let mut fixed = false;
            'scan: for i in k + 1..m.rows {
                for j in k + 1..m.cols {
                    if m.at(i, j) % d != 0 {
                        m.addmul_row(k, i, 1);
                        fixed = true;
                        break 'scan;
                    }
                }
            }
            if !fixed {
                break;
            }
        }
        k += 1;
    }
    (0..steps)
        .map(|i| {
            let v = m.at(i, i).abs();
            i64::try_from(v)
                .unwrap_or_else(|_| panic!("smith diagonal entry {v} exceeds the 64-bit range"))
        })
        .collect()
}

/// Basis of the left null lattice `{x : x * a = 0}`, one basis vector per row.
pub fn left_nullspace(a: &IntMat) -> IntMat {
    let s = smith(a);
    let mut out = IntMat::zero(0, a.row_count());
    for i in s.rank..a.row_count() {
        out.push_row(s.p.row(i));
    }
    out
}

/// Basis of the row lattice of `a` (the set of integer combinations of its
/// rows), one basis vector per row; `rank` rows total.  The output is the row
/// Hermite form: pivots positive, entries above each pivot reduced below it.
/// Reducing as the elimination goes keeps entries far smaller than a
/// transform-based basis would, so the result is safe to feed back into
/// `smith`.
pub fn row_basis(a: &IntMat) -> IntMat {
    let mut m = WideMat::from_int(a);
    let (rows, cols) = (m.rows, m.cols);
    let mut next = 0;
    for col in 0..cols {
        if next == rows {
            break;
        }
        // Euclidean elimination below the pivot position: repeatedly move the
        // smallest nonzero entry of the column up and take remainders until a
        // single nonzero entry is left.
        loop {
            let mut best = None;
            for i in next..rows {
                let v = m.at(i, col).abs();
                if v != 0 && best.map_or(true, |(_, bv)| v < bv) {
                    best = Some((i, v));
                }
            }
            let Some((b, _)) = best else { break };
            m.swap_rows(next, b);
            let p = m.at(next, col);
            let mut cleared = true;
            for i in next + 1..rows {
                let v = m.at(i, col);
                if v != 0 {
                    m.addmul_row(i, next, -(v / p));
                    cleared &= m.at(i, col) == 0;
                }
            }
            if cleared {
                if m.at(next, col) < 0 {
                    m.neg_row(next);
                }
                let p = m.at(next, col);
                for i in 0..next {
                    m.addmul_row(i, next, -m.at(i, col).div_euclid(p));
                }
                next += 1;
                break;
            }
        }
    }
    let mut out = IntMat::zero(0, cols);
    let narrowed = m.narrow("row basis");
    for i in 0..next {
        out.push_row(narrowed.row(i));
    }
    out
}

/// Solves `y * a = b` over the integers, reusing one Smith decomposition for
/// many right-hand sides.
pub struct LatticeSolver {
    s: Smith,
}

impl LatticeSolver {
    pub fn new(a: &IntMat) -> Self {
        LatticeSolver { s: smith(a) }
    }

    pub fn solve(&self, b: &[i64]) -> Option<Vec<i64>> {
        let w = vec_mul(b, &self.s.q);
        let mut z = vec![0i64; self.s.d.row_count()];
        for (j, &wj) in w.iter().enumerate() {
            if j < self.s.rank {
                let d = self.s.d[(j, j)];
                if wj % d != 0 {
                    return None;
                }
                z[j] = wj / d;
            } else if wj != 0 {
                return None;
            }
        }
        Some(vec_mul(&z, &self.s.p))
    }

    pub fn contains(&self, b: &[i64]) -> bool {
        self.solve(b).is_some()
    }
}
