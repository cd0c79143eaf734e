//! Exact integer matrices and Smith normal form.
//!
//! All arithmetic is arbitrary precision; elimination pivots on the entry
//! of least absolute value to keep coefficient growth down.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

/// A dense rows × cols matrix of big integers.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct IntegerMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntegerMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntegerMatrix { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let mut m = IntegerMatrix::zeros(r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged row in integer matrix");
            for (j, &v) in row.iter().enumerate() {
                m.set(i, j, BigInt::from(v));
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.data[i * self.cols + j] = v;
    }

    /// Appends a row; the matrix must have matching width.
    pub fn stack_row(&self, row: &[BigInt]) -> IntegerMatrix {
        assert_eq!(row.len(), self.cols);
        let mut m = self.clone();
        m.rows += 1;
        m.data.extend_from_slice(row);
        m
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

    /// row[a] -= q * row[b]
    fn row_sub(&mut self, a: usize, b: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let v = self.get(b, j) * q;
            let cur = self.get(a, j).clone();
            self.set(a, j, cur - v);
        }
    }

    fn col_sub(&mut self, a: usize, b: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let v = self.get(i, b) * q;
            let cur = self.get(i, a).clone();
            self.set(i, a, cur - v);
        }
    }
}

/// Diagonal of the Smith normal form: non-negative entries
/// `d_1 | d_2 | …` of length `min(rows, cols)`, zeros trailing.
///
/// Every reduction round re-selects the entry of least absolute value in
/// the remaining block as the pivot; remainders stay in place rather than
/// being promoted immediately, which keeps coefficients from exploding.
pub fn smith_normal_form(m: &IntegerMatrix) -> Vec<BigInt> {
    let mut a = m.clone();
    let k = a.rows.min(a.cols);
    let mut t = 0;
    'stage: while t < k {
        loop {
            let Some((pi, pj)) = least_nonzero_pivot(&a, t) else {
                break 'stage;
            };
            a.swap_rows(t, pi);
            a.swap_cols(t, pj);
            // One remainder pass down the column and along the row.
            let mut clean = true;
            for i in (t + 1)..a.rows {
                if !a.get(i, t).is_zero() {
                    let q = a.get(i, t).div_floor(a.get(t, t));
                    a.row_sub(i, t, &q);
                    clean &= a.get(i, t).is_zero();
                }
            }
            for j in (t + 1)..a.cols {
                if !a.get(t, j).is_zero() {
                    let q = a.get(t, j).div_floor(a.get(t, t));
                    a.col_sub(j, t, &q);
                    clean &= a.get(t, j).is_zero();
                }
            }
            if !clean {
                continue;
            }
            // The pivot must divide the remaining block; if not, fold an
            // offending row in and keep reducing with a smaller pivot.
            let mut divides = true;
            'scan: for i in (t + 1)..a.rows {
                for j in (t + 1)..a.cols {
                    if !(a.get(i, j) % a.get(t, t)).is_zero() {
                        let minus_one = BigInt::from(-1);
                        a.row_sub(t, i, &minus_one);
                        divides = false;
                        break 'scan;
                    }
                }
            }
            if divides {
                break;
            }
        }
        t += 1;
    }
    let mut diag: Vec<BigInt> = (0..k).map(|i| a.get(i, i).abs()).collect();
    // The block-divisibility fix above already yields a chain, but make it
    // canonical in case of sign or ordering slack.
    enforce_divisibility_chain(&mut diag);
    diag
}

fn least_nonzero_pivot(a: &IntegerMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in t..a.rows {
        for j in t..a.cols {
            let v = a.get(i, j);
            if v.is_zero() {
                continue;
            }
            match best {
                None => best = Some((i, j)),
                Some((bi, bj)) => {
                    if v.abs() < a.get(bi, bj).abs() {
                        best = Some((i, j));
                    }
                }
            }
        }
    }
    best
}

fn enforce_divisibility_chain(diag: &mut [BigInt]) {
    let n = diag.len();
    loop {
        let mut changed = false;
        for i in 0..n.saturating_sub(1) {
            for j in (i + 1)..n {
                let (a, b) = (diag[i].clone(), diag[j].clone());
                if a.is_zero() && b.is_zero() {
                    continue;
                }
                if a.is_zero() || (!b.is_zero() && !(b.clone() % &a).is_zero()) {
                    // Replace (a, b) with (gcd, lcm); a unimodular move on
                    // the corresponding 2x2 diagonal block.
                    let g = a.gcd(&b);
                    let l = if g.is_zero() { BigInt::zero() } else { &a * &b / &g };
                    diag[i] = g;
                    diag[j] = l.abs();
                    changed = true;
                }
            }
        }
        if !changed {
            return;
        }
    }
}

/// Invariant factors of `ℤ^cols` modulo the row lattice: the SNF diagonal
/// with unit factors dropped and one zero per free rank.
pub fn invariant_factors(m: &IntegerMatrix) -> Vec<BigInt> {
    let diag = smith_normal_form(m);
    let nonzero: Vec<BigInt> = diag.iter().filter(|d| !d.is_zero()).cloned().collect();
    let rank = nonzero.len();
    let mut factors: Vec<BigInt> =
        nonzero.into_iter().filter(|d| *d != BigInt::from(1)).collect();
    factors.extend(std::iter::repeat(BigInt::zero()).take(m.cols - rank));
    factors
}

/// Number of trailing zeros, i.e. the free rank of the quotient.
pub fn free_rank(factors: &[BigInt]) -> usize {
    factors.iter().filter(|d| d.is_zero()).count()
}

/// Renders factors as `Z^k x Z/d1 x Z/d2 …` (or `1` for the trivial group).
pub fn factors_display(factors: &[BigInt]) -> String {
    let free = free_rank(factors);
    let mut parts: Vec<String> = Vec::new();
    match free {
        0 => {}
        1 => parts.push("Z".to_string()),
        k => parts.push(format!("Z^{k}")),
    }
    for d in factors.iter().filter(|d| !d.is_zero()) {
        parts.push(format!("Z/{d}"));
    }
    if parts.is_empty() {
        "1".to_string()
    } else {
        parts.join(" x ")
    }
}

/// Membership of `v` in the row lattice of `m`.
///
/// Uses the fact that finitely generated abelian groups are Hopfian: the
/// lattice spanned by the rows together with `v` equals the row lattice
/// exactly when both quotients of `ℤ^cols` have the same invariant
/// factors.
pub fn lattice_contains(m: &IntegerMatrix, v: &[BigInt]) -> bool {
    let full = full_factor_list(&smith_normal_form(m), m.cols);
    let stacked = m.stack_row(v);
    let full_stacked = full_factor_list(&smith_normal_form(&stacked), m.cols);
    full == full_stacked
}

fn full_factor_list(diag: &[BigInt], cols: usize) -> Vec<BigInt> {
    let mut out: Vec<BigInt> = diag.iter().filter(|d| !d.is_zero()).cloned().collect();
    let rank = out.len();
    out.extend(std::iter::repeat(BigInt::zero()).take(cols - rank));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn big(values: &[i64]) -> Vec<BigInt> {
        values.iter().map(|&v| BigInt::from(v)).collect()
    }

    /// Independent oracle: plain Gaussian-style diagonalization with
    /// first-nonzero pivoting, clearing entries in one shot through
    /// Bezout row/column combinations, followed by a pairwise gcd/lcm
    /// divisibility fix-up. Self-contained on purpose.
    pub(crate) fn snf_oracle(m: &IntegerMatrix) -> Vec<BigInt> {
        let rows = m.rows();
        let cols = m.cols();
        let mut a: Vec<Vec<BigInt>> = (0..rows)
            .map(|i| (0..cols).map(|j| m.get(i, j).clone()).collect())
            .collect();
        let k = rows.min(cols);
        let mut t = 0;
        while t < k {
            let mut pivot = None;
            'find: for i in t..rows {
                for j in t..cols {
                    if !a[i][j].is_zero() {
                        pivot = Some((i, j));
                        break 'find;
                    }
                }
            }
            let Some((pi, pj)) = pivot else { break };
            a.swap(t, pi);
            for row in a.iter_mut() {
                row.swap(t, pj);
            }
            loop {
                for i in (t + 1)..rows {
                    if !a[i][t].is_zero() {
                        let (p, x) = (a[t][t].clone(), a[i][t].clone());
                        if (&x % &p).is_zero() {
                            // Plain elimination keeps the pivot row intact.
                            let q = &x / &p;
                            for j in 0..cols {
                                let v = &q * &a[t][j];
                                a[i][j] -= v;
                            }
                        } else {
                            // Unimodular combination sending (p, x) to (g, 0);
                            // strictly shrinks the pivot.
                            let eg = p.extended_gcd(&x);
                            for j in 0..cols {
                                let top = &eg.x * &a[t][j] + &eg.y * &a[i][j];
                                let bot = (&p / &eg.gcd) * &a[i][j] - (&x / &eg.gcd) * &a[t][j];
                                a[t][j] = top;
                                a[i][j] = bot;
                            }
                        }
                    }
                }
                for j in (t + 1)..cols {
                    if !a[t][j].is_zero() {
                        let (p, x) = (a[t][t].clone(), a[t][j].clone());
                        if (&x % &p).is_zero() {
                            let q = &x / &p;
                            for row in a.iter_mut() {
                                let v = &q * &row[t];
                                row[j] -= v;
                            }
                        } else {
                            let eg = p.extended_gcd(&x);
                            for row in a.iter_mut() {
                                let left = &eg.x * &row[t] + &eg.y * &row[j];
                                let right = (&p / &eg.gcd) * &row[j] - (&x / &eg.gcd) * &row[t];
                                row[t] = left;
                                row[j] = right;
                            }
                        }
                    }
                }
                let col_clear = ((t + 1)..rows).all(|i| a[i][t].is_zero());
                let row_clear = ((t + 1)..cols).all(|j| a[t][j].is_zero());
                if col_clear && row_clear {
                    break;
                }
            }
            t += 1;
        }
        let mut diag: Vec<BigInt> = (0..k).map(|i| a[i][i].abs()).collect();
        // Pairwise gcd/lcm normalization into a divisibility chain.
        loop {
            let mut changed = false;
            for i in 0..k.saturating_sub(1) {
                for j in (i + 1)..k {
                    let (x, y) = (diag[i].clone(), diag[j].clone());
                    if x.is_zero() && y.is_zero() {
                        continue;
                    }
                    if x.is_zero() || (!y.is_zero() && !(&y % &x).is_zero()) {
                        let g = x.gcd(&y);
                        let l = if g.is_zero() { BigInt::zero() } else { (&x * &y / &g).abs() };
                        diag[i] = g;
                        diag[j] = l;
                        changed = true;
                    }
                }
            }
            if !changed {
                break;
            }
        }
        diag
    }

    /// Second oracle: determinantal divisors. The k-th invariant factor is
    /// gcd(k-minors) / gcd((k-1)-minors).
    pub(crate) fn snf_minor_oracle(m: &IntegerMatrix) -> Vec<BigInt> {
        let k = m.rows().min(m.cols());
        let mut out = Vec::with_capacity(k);
        let mut prev = BigInt::from(1);
        for size in 1..=k {
            let mut g = BigInt::zero();
            for rows in combinations(m.rows(), size) {
                for cols in combinations(m.cols(), size) {
                    let d = minor_det(m, &rows, &cols);
                    g = g.gcd(&d);
                }
            }
            if g.is_zero() {
                // Rank reached: all further factors are zero.
                out.extend(std::iter::repeat(BigInt::zero()).take(k - size + 1));
                return out;
            }
            out.push(&g / &prev);
            prev = g;
        }
        out
    }

    fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let mut cur = Vec::new();
        fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if cur.len() == k {
                out.push(cur.clone());
                return;
            }
            for i in start..n {
                cur.push(i);
                rec(i + 1, n, k, cur, out);
                cur.pop();
            }
        }
        rec(0, n, k, &mut cur, &mut out);
        out
    }

    fn minor_det(m: &IntegerMatrix, rows: &[usize], cols: &[usize]) -> BigInt {
        // Cofactor expansion; minors here are at most 8x8.
        let k = rows.len();
        if k == 1 {
            return m.get(rows[0], cols[0]).clone();
        }
        let mut det = BigInt::zero();
        for (idx, &c) in cols.iter().enumerate() {
            let sub_cols: Vec<usize> =
                cols.iter().copied().filter(|&x| x != c).collect();
            let sub = minor_det(m, &rows[1..], &sub_cols);
            let term = m.get(rows[0], c) * sub;
            if idx % 2 == 0 {
                det += term;
            } else {
                det -= term;
            }
        }
        det
    }

    #[test]
    fn diag_example() {
        let m = IntegerMatrix::from_rows(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, 4, 16]]);
        assert_eq!(smith_normal_form(&m), big(&[2, 2, 156]));
    }

    #[test]
    fn single_relator_squared() {
        let m = IntegerMatrix::from_rows(&[vec![2]]);
        assert_eq!(invariant_factors(&m), big(&[2]));
        assert_eq!(factors_display(&big(&[2])), "Z/2");
    }

    #[test]
    fn zero_matrix_gives_free_group() {
        let m = IntegerMatrix::zeros(2, 3);
        assert_eq!(invariant_factors(&m), big(&[0, 0, 0]));
        assert_eq!(factors_display(&big(&[0, 0, 0])), "Z^3");
    }

    #[test]
    fn divisibility_chain_holds_on_random_matrices() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..100 {
            let r = rng.gen_range(1..=8);
            let c = rng.gen_range(1..=8);
            let rows: Vec<Vec<i64>> =
                (0..r).map(|_| (0..c).map(|_| rng.gen_range(-5..=5)).collect()).collect();
            let m = IntegerMatrix::from_rows(&rows);
            let d = smith_normal_form(&m);
            for w in d.windows(2) {
                if w[0].is_zero() {
                    assert!(w[1].is_zero(), "zero before nonzero in {d:?}");
                } else {
                    assert!((w[1].clone() % &w[0]).is_zero(), "chain broken in {d:?}");
                }
            }
        }
    }

    #[test]
    fn matches_elimination_oracle_on_random_matrices() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..100 {
            let r = rng.gen_range(1..=8);
            let c = rng.gen_range(1..=8);
            let rows: Vec<Vec<i64>> =
                (0..r).map(|_| (0..c).map(|_| rng.gen_range(-5..=5)).collect()).collect();
            let m = IntegerMatrix::from_rows(&rows);
            assert_eq!(smith_normal_form(&m), snf_oracle(&m), "input {rows:?}");
        }
    }

    #[test]
    fn matches_minor_oracle_on_small_matrices() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        for _ in 0..60 {
            let r = rng.gen_range(1..=5);
            let c = rng.gen_range(1..=5);
            let rows: Vec<Vec<i64>> =
                (0..r).map(|_| (0..c).map(|_| rng.gen_range(-5..=5)).collect()).collect();
            let m = IntegerMatrix::from_rows(&rows);
            assert_eq!(smith_normal_form(&m), snf_minor_oracle(&m), "input {rows:?}");
        }
    }

    #[test]
    fn lattice_membership_detects_spans() {
        let m = IntegerMatrix::from_rows(&[vec![2, 0], vec![0, 3]]);
        assert!(lattice_contains(&m, &big(&[2, 3])));
        assert!(lattice_contains(&m, &big(&[4, -3])));
        assert!(!lattice_contains(&m, &big(&[1, 0])));
        assert!(!lattice_contains(&m, &big(&[2, 1])));
        let line = IntegerMatrix::from_rows(&[vec![2, 0]]);
        assert!(!lattice_contains(&line, &big(&[2, 1])));
        assert!(lattice_contains(&line, &big(&[-6, 0])));
    }
}
