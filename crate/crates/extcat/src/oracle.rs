//! Independent reference implementations used to cross-check the main
//! algorithms.
//!
//! Everything here is deliberately written against *different*
//! characterizations than the production code paths: invariant factors via
//! determinantal divisors, diagonalization via a recorded elementary-operation
//! log that can be replayed, and extension middles via literal subgroup search
//! in small finite groups.  Slow but simple; the test suites diff the fast
//! implementations against these.

use crate::arith::{factorize, pow};
use crate::fpmod::{FpModule, ModuleError};
use crate::hom::{cokernel, kernel, ModuleHom};
use crate::matrix::IntMat;
use crate::rings::{RingError, RingSpec};
use std::collections::{BTreeMap, BTreeSet};

/// Strips trailing zeros from a full diagonal, leaving the invariant-factor
/// chain.
pub fn nonzero_chain(diag: &[i64]) -> Vec<i64> {
    diag.iter().copied().filter(|&d| d != 0).collect()
}

fn det_bareiss(m: &mut Vec<Vec<i128>>) -> i128 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if m[k][k] == 0 {
            let Some(swap) = (k + 1..n).find(|&i| m[i][k] != 0) else {
                return 0;
            };
            m.swap(k, swap);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
            }
            m[i][k] = 0;
        }
        prev = m[k][k];
    }
    sign * m[n - 1][n - 1]
}

fn minor(a: &IntMat, rows: &[usize], cols: &[usize]) -> i128 {
    let mut m: Vec<Vec<i128>> = rows
        .iter()
        .map(|&i| cols.iter().map(|&j| a[(i, j)] as i128).collect())
        .collect();
    det_bareiss(&mut m)
}

fn for_each_combination(n: usize, k: usize, f: &mut impl FnMut(&[usize]) -> bool) {
    let mut idx: Vec<usize> = (0..k).collect();
    if k > n {
        return;
    }
    loop {
        if f(&idx) {
            return;
        }
        // advance the rightmost index that can still move
        let mut i = k;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            if idx[i] + (k - i) < n {
                idx[i] += 1;
                for j in i + 1..k {
                    idx[j] = idx[j - 1] + 1;
                }
                break;
            }
        }
    }
}

/// Invariant factors via determinantal divisors: `d_k` = gcd of all `k × k`
/// minors and the `k`-th invariant factor is `d_k / d_{k−1}`.  Exhausts every
/// minor, so use only on small matrices.
pub fn minors_invariant_factors(a: &IntMat) -> Vec<i64> {
    let r = a.row_count().min(a.col_count());
    let mut chain = Vec::new();
    let mut prev = 1i128;
    for k in 1..=r {
        let mut g = 0i128;
        for_each_combination(a.row_count(), k, &mut |rows| {
            let rows = rows.to_vec();
            let mut done = false;
            for_each_combination(a.col_count(), k, &mut |cols| {
                g = gcd_i128(g, minor(a, &rows, cols));
                // gcd can never drop below the previous divisor
                done = g == prev;
                done
            });
            done
        });
        if g == 0 {
            break;
        }
        chain.push(i64::try_from(g / prev).expect("invariant factor fits i64"));
        prev = g;
    }
    chain
}

fn gcd_i128(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// One invertible row or column operation.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ElementaryOp {
    SwapRows(usize, usize),
    SwapCols(usize, usize),
    NegateRow(usize),
    NegateCol(usize),
    /// row[dst] += factor * row[src]
    AddRowMultiple { src: usize, dst: usize, factor: i64 },
    /// col[dst] += factor * col[src]
    AddColMultiple { src: usize, dst: usize, factor: i64 },
}

pub fn apply_op(m: &mut IntMat, op: ElementaryOp) {
    match op {
        ElementaryOp::SwapRows(a, b) => {
            for j in 0..m.col_count() {
                let t = m[(a, j)];
                m[(a, j)] = m[(b, j)];
                m[(b, j)] = t;
            }
        }
        ElementaryOp::SwapCols(a, b) => {
            for i in 0..m.row_count() {
                let t = m[(i, a)];
                m[(i, a)] = m[(i, b)];
                m[(i, b)] = t;
            }
        }
        ElementaryOp::NegateRow(r) => {
            for j in 0..m.col_count() {
                m[(r, j)] = -m[(r, j)];
            }
        }
        ElementaryOp::NegateCol(c) => {
            for i in 0..m.row_count() {
                m[(i, c)] = -m[(i, c)];
            }
        }
        ElementaryOp::AddRowMultiple { src, dst, factor } => {
            for j in 0..m.col_count() {
                m[(dst, j)] += factor * m[(src, j)];
            }
        }
        ElementaryOp::AddColMultiple { src, dst, factor } => {
            for i in 0..m.row_count() {
                m[(i, dst)] += factor * m[(i, src)];
            }
        }
    }
}

pub fn replay_ops(a: &IntMat, ops: &[ElementaryOp]) -> IntMat {
    let mut m = a.clone();
    for &op in ops {
        apply_op(&mut m, op);
    }
    m
}

fn reduce_elementary(m: &mut IntMat, mut sink: impl FnMut(ElementaryOp)) -> Vec<i64> {
    let steps = m.row_count().min(m.col_count());
    let mut emit = |m: &mut IntMat, op: ElementaryOp| {
        apply_op(m, op);
        sink(op);
    };
    for t in 0..steps {
        // first nonzero entry of the trailing block, scanning row-major —
        // deliberately not the minimal-pivot rule of the production code
        let Some((pi, pj)) = (t..m.row_count())
            .flat_map(|i| (t..m.col_count()).map(move |j| (i, j)))
            .find(|&(i, j)| m[(i, j)] != 0)
        else {
            break;
        };
        if pi != t {
            emit(m, ElementaryOp::SwapRows(t, pi));
        }
        if pj != t {
            emit(m, ElementaryOp::SwapCols(t, pj));
        }
        loop {
            let mut dirty = false;
            for i in t + 1..m.row_count() {
                if m[(i, t)] == 0 {
                    continue;
                }
                let q = m[(i, t)] / m[(t, t)];
                if q != 0 {
                    emit(m, ElementaryOp::AddRowMultiple { src: t, dst: i, factor: -q });
                }
                if m[(i, t)] != 0 {
                    // Euclidean step: the remainder becomes the new pivot
                    emit(m, ElementaryOp::SwapRows(t, i));
                    dirty = true;
                    break;
                }
            }
            if dirty {
                continue;
            }
            for j in t + 1..m.col_count() {
                if m[(t, j)] == 0 {
                    continue;
                }
                let q = m[(t, j)] / m[(t, t)];
                if q != 0 {
                    emit(m, ElementaryOp::AddColMultiple { src: t, dst: j, factor: -q });
                }
                if m[(t, j)] != 0 {
                    emit(m, ElementaryOp::SwapCols(t, j));
                    dirty = true;
                    break;
                }
            }
            if dirty {
                continue;
            }
            let d = m[(t, t)];
            let offender = (t + 1..m.row_count())
                .flat_map(|i| (t + 1..m.col_count()).map(move |j| (i, j)))
                .find(|&(i, j)| m[(i, j)] % d != 0);
            match offender {
                Some((i, _)) => {
                    emit(m, ElementaryOp::AddRowMultiple { src: i, dst: t, factor: 1 })
                }
                None => break,
            }
        }
        if m[(t, t)] < 0 {
            emit(m, ElementaryOp::NegateRow(t));
        }
    }
    (0..steps).map(|i| m[(i, i)]).filter(|&d| d != 0).collect()
}

/// Diagonalization by explicit elementary operations, with the operation log
/// returned so callers can replay it from the original matrix and confirm
/// the claimed equivalence.
pub fn elementary_reduction(a: &IntMat) -> (Vec<ElementaryOp>, Vec<i64>) {
    let mut m = a.clone();
    let mut ops = Vec::new();
    let chain = reduce_elementary(&mut m, |op| ops.push(op));
    (ops, chain)
}

/// Invariant-factor chain from the elementary-operation reduction, without
/// keeping the log.
pub fn elementary_invariant_factors(a: &IntMat) -> Vec<i64> {
    let mut m = a.clone();
    reduce_elementary(&mut m, |_| {})
}

fn partitions(n: u32) -> Vec<Vec<u32>> {
    fn go(n: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if n == 0 {
            out.push(cur.clone());
            return;
        }
        for part in (1..=n.min(max)).rev() {
            cur.push(part);
            go(n - part, part, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

/// Every isomorphism type of finite module of the given order, in a fixed
/// deterministic order.
pub fn finite_modules_of_order(ring: RingSpec, n: u64) -> Result<Vec<FpModule>, ModuleError> {
    if n == 0 {
        return Ok(Vec::new());
    }
    let fac = factorize(n as i64);
    if let Some(p) = ring.local_prime() {
        if let Some(&(q, _)) = fac.iter().find(|&&(q, _)| q != p) {
            return Err(ModuleError::Ring(RingError::InadmissiblePrime { p: q, ring }));
        }
    }
    let per_prime: Vec<(u64, Vec<Vec<u32>>)> =
        fac.iter().map(|&(p, e)| (p, partitions(e))).collect();
    let mut out = vec![Vec::new()];
    for (p, parts) in &per_prime {
        let mut next = Vec::new();
        for base in &out {
            for lambda in parts {
                let mut orders: Vec<i64> = base.clone();
                orders.extend(lambda.iter().map(|&e| pow(*p, e)));
                next.push(orders);
            }
        }
        out = next;
    }
    Ok(out
        .into_iter()
        .map(|orders| FpModule::from_parts(ring, 0, orders))
        .collect())
}

/// Multiset of element orders — a complete isomorphism invariant for finite
/// modules over these rings.
fn order_census(m: &FpModule) -> Result<BTreeMap<i64, usize>, ModuleError> {
    let mut census = BTreeMap::new();
    for el in m.elements()? {
        *census.entry(m.annihilator_of(&el)?).or_insert(0) += 1;
    }
    Ok(census)
}

const BRUTE_FORCE_CAP: u128 = 24;

/// Middle modules of `0 → left → E → right → 0` found by literal subgroup
/// search: for every candidate `E` of order `|left|·|right|`, look for a
/// subgroup isomorphic to `left` with quotient isomorphic to `right`.
/// Exponential in the order; capped at order 24.
pub fn brute_force_middles(
    right: &FpModule,
    left: &FpModule,
) -> Result<BTreeSet<FpModule>, ModuleError> {
    left.ring().same_as(&right.ring())?;
    let (Some(nl), Some(nr)) = (left.order(), right.order()) else {
        return Err(ModuleError::InfiniteModule(left.rank().max(right.rank())));
    };
    let n = nl * nr;
    if n > BRUTE_FORCE_CAP {
        return Err(ModuleError::ShapeMismatch(format!(
            "brute-force middle search capped at order {BRUTE_FORCE_CAP}, got {n}"
        )));
    }
    let left_census = order_census(left)?;
    let right_census = order_census(right)?;

    let mut middles = BTreeSet::new();
    'candidates: for cand in finite_modules_of_order(left.ring(), n as u64)? {
        let elements: Vec<Vec<i64>> = cand.elements()?.collect();
        let index: BTreeMap<Vec<i64>, usize> =
            elements.iter().cloned().zip(0..).collect();
        let sub = |a: &[i64], b: &[i64]| -> usize {
            let diff: Vec<i64> = a.iter().zip(b).map(|(x, y)| x - y).collect();
            index[&cand.reduce(&diff).unwrap()]
        };
        let zero_at = index[&cand.zero_element()];

        let k = nl as usize;
        let mut found = false;
        let mut choose: Vec<usize> = Vec::new();
        // subsets of size k containing the zero element
        let others: Vec<usize> = (0..elements.len()).filter(|&i| i != zero_at).collect();
        for_each_combination(others.len(), k - 1, &mut |picked| {
            choose.clear();
            choose.push(zero_at);
            choose.extend(picked.iter().map(|&i| others[i]));
            if is_matching_subgroup(&cand, &elements, &choose, sub, &left_census)
                && quotient_matches(&cand, &elements, &choose, sub, &right_census)
            {
                found = true;
            }
            found
        });
        if found {
            middles.insert(cand);
            continue 'candidates;
        }
    }
    Ok(middles)
}

fn is_matching_subgroup(
    cand: &FpModule,
    elements: &[Vec<i64>],
    subset: &[usize],
    sub: impl Fn(&[i64], &[i64]) -> usize,
    want: &BTreeMap<i64, usize>,
) -> bool {
    let inside: BTreeSet<usize> = subset.iter().copied().collect();
    for &a in subset {
        for &b in subset {
            if !inside.contains(&sub(&elements[a], &elements[b])) {
                return false;
            }
        }
    }
    let mut census = BTreeMap::new();
    for &i in subset {
        *census.entry(cand.annihilator_of(&elements[i]).unwrap()).or_insert(0) += 1;
    }
    census == *want
}

fn quotient_matches(
    cand: &FpModule,
    elements: &[Vec<i64>],
    subset: &[usize],
    sub: impl Fn(&[i64], &[i64]) -> usize,
    want: &BTreeMap<i64, usize>,
) -> bool {
    let inside: BTreeSet<usize> = subset.iter().copied().collect();
    let mut seen: BTreeSet<usize> = BTreeSet::new();
    let mut census: BTreeMap<i64, usize> = BTreeMap::new();
    for (i, el) in elements.iter().enumerate() {
        // pick one representative per coset: the smallest index
        let rep = (0..elements.len())
            .filter(|&j| inside.contains(&sub(&elements[j], el)))
            .min()
            .unwrap_or(i);
        if !seen.insert(rep) {
            continue;
        }
        let exponent = cand.annihilator_of(&elements[rep]).unwrap();
        let coset_order = (1..=exponent)
            .find(|&k| {
                if exponent % k != 0 {
                    return false;
                }
                let mult: Vec<i64> = elements[rep].iter().map(|&v| k * v).collect();
                inside.contains(&sub(&mult, &cand.zero_element()))
            })
            .unwrap_or(exponent);
        *census.entry(coset_order).or_insert(0) += 1;
    }
    census == *want
}

/// Kernel and cokernel of multiplication by `x`, for truncation cross-checks
/// of limit constructions.
pub fn multiplication_profile(
    m: &FpModule,
    x: i64,
) -> Result<(FpModule, FpModule), ModuleError> {
    let rows: Vec<Vec<i64>> = (0..m.gen_count())
        .map(|i| {
            let mut row = m.zero_element();
            row[i] = x;
            row
        })
        .collect();
    let f = ModuleHom::new(m.clone(), m.clone(), rows)?;
    Ok((kernel(&f)?.module, cokernel(&f)?.module))
}

/// Enumerates every `rows × cols` matrix with entries in `[-bound, bound]`,
/// in odometer order.
pub fn for_each_matrix(
    rows: usize,
    cols: usize,
    bound: i64,
    mut f: impl FnMut(&IntMat),
) {
    let cells = rows * cols;
    let radix = 2 * bound + 1;
    let mut digits = vec![0i64; cells];
    let mut m = IntMat::zero(rows, cols);
    loop {
        for (i, &d) in digits.iter().enumerate() {
            m[(i / cols, i % cols)] = d - bound;
        }
        f(&m);
        let mut pos = 0;
        loop {
            if pos == cells {
                return;
            }
            digits[pos] += 1;
            if digits[pos] < radix {
                break;
            }
            digits[pos] = 0;
            pos += 1;
        }
    }
}
