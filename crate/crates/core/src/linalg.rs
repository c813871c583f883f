//! Exact linear algebra over `Z_N` and `Z` used by the stabilizer engine and
//! the anyon-group computations.
//!
//! Stabilizer exponent vectors live in a product of cyclic groups of mixed
//! orders. Scaling coordinate `i` by `N / d_i` embeds `Z_{d_i}` into `Z_N`
//! (`N` a common multiple), so every subgroup computation reduces to row
//! reduction over a single ring `Z_N`. The canonical presentation used for
//! group equality is the Howell form, which (unlike Hermite form taken mod N)
//! is unique for submodules of `Z_N^k`.

use std::cmp::min;

/// Extended gcd: returns `(g, x, y)` with `a*x + b*y = g`, `g >= 0`.
pub fn ext_gcd(a: i128, b: i128) -> (i128, i128, i128) {
    if b == 0 {
        if a < 0 {
            (-a, -1, 0)
        } else {
            (a, 1, 0)
        }
    } else {
        let (g, x, y) = ext_gcd(b, a.rem_euclid(b));
        (g, y, x - (a.div_euclid(b)) * y)
    }
}

pub fn gcd_u64(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd_u64(b, a % b)
    }
}

pub fn lcm_u64(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        0
    } else {
        a / gcd_u64(a, b) * b
    }
}

fn mulmod(a: u64, b: u64, n: u64) -> u64 {
    ((a as u128 * b as u128) % n as u128) as u64
}

/// Multiplicative unit `u` of `Z_N` with `u * a ≡ gcd(a, N) (mod N)`.
fn normalizing_unit(a: u64, n: u64) -> u64 {
    let a = a % n;
    if a == 0 {
        return 1;
    }
    let g = gcd_u64(a, n);
    // a/g is invertible mod n/g; lift it to a unit of Z_n.
    let ag = a / g;
    let ng = n / g;
    let mut lift = ag % n;
    if lift == 0 {
        lift = 1;
    }
    while gcd_u64(lift, n) != 1 {
        lift = (lift + ng) % n;
        if lift == 0 {
            lift = ng;
        }
    }
    let (_, inv, _) = ext_gcd(lift as i128, n as i128);
    let u = inv.rem_euclid(n as i128) as u64;
    debug_assert_eq!(mulmod(u, a, n), g % n);
    u
}

/// A row of the working matrix: the vector plus the combination of input
/// generators that produced it.
#[derive(Clone, Debug)]
struct Row {
    v: Vec<u64>,
    combo: Vec<u64>,
}

impl Row {
    fn leading(&self) -> Option<usize> {
        self.v.iter().position(|&x| x != 0)
    }
    fn scale(&mut self, c: u64, n: u64) {
        for x in self.v.iter_mut() {
            *x = mulmod(*x, c, n);
        }
        for x in self.combo.iter_mut() {
            *x = mulmod(*x, c, n);
        }
    }
    fn sub_mul(&mut self, src: &Row, c: u64, n: u64) {
        for (d, &s) in self.v.iter_mut().zip(src.v.iter()) {
            *d = (*d + n - mulmod(c, s, n)) % n;
        }
        for (d, &s) in self.combo.iter_mut().zip(src.combo.iter()) {
            *d = (*d + n - mulmod(c, s, n)) % n;
        }
    }
    fn linear(x: u64, a: &Row, y: u64, b: &Row, n: u64) -> Row {
        let v = a
            .v
            .iter()
            .zip(b.v.iter())
            .map(|(&p, &q)| (mulmod(x, p, n) + mulmod(y, q, n)) % n)
            .collect();
        let combo = a
            .combo
            .iter()
            .zip(b.combo.iter())
            .map(|(&p, &q)| (mulmod(x, p, n) + mulmod(y, q, n)) % n)
            .collect();
        Row { v, combo }
    }
}

/// Row-style Howell form of a submodule of `Z_N^cols`, with the combination of
/// input generators recorded for every canonical row.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HowellForm {
    pub modulus: u64,
    pub cols: usize,
    /// Canonical rows: pivot columns strictly increasing, pivot entries divide
    /// the modulus, entries above each pivot reduced modulo it.
    pub rows: Vec<Vec<u64>>,
    pub pivots: Vec<usize>,
    /// `combos[r][g]`: coefficient of input generator `g` in row `r`.
    pub combos: Vec<Vec<u64>>,
}

impl HowellForm {
    pub fn from_generators(gens: &[Vec<u64>], modulus: u64, cols: usize) -> Self {
        assert!(modulus >= 1, "modulus must be positive");
        let n = modulus;
        let ngen = gens.len();
        let mut pool: Vec<Row> = gens
            .iter()
            .enumerate()
            .map(|(gi, g)| {
                assert_eq!(g.len(), cols, "generator length mismatch");
                let mut combo = vec![0u64; ngen];
                combo[gi] = 1;
                Row {
                    v: g.iter().map(|&x| x % n).collect(),
                    combo,
                }
            })
            .collect();

        // echelon[c] = row with leading column c.
        let mut echelon: Vec<Option<Row>> = (0..cols).map(|_| None).collect();
        while let Some(mut row) = pool.pop() {
            loop {
                let c = match row.leading() {
                    None => break,
                    Some(c) => c,
                };
                match &echelon[c] {
                    None => {
                        // Normalize pivot to its canonical divisor of n.
                        let u = normalizing_unit(row.v[c], n);
                        row.scale(u, n);
                        let h = row.v[c];
                        debug_assert_eq!(n % h, 0);
                        // Howell closure: (n/h)·row has leading column > c.
                        let k = n / h;
                        if k > 1 {
                            let mut closure = row.clone();
                            closure.scale(k % n, n);
                            if closure.leading().is_some() {
                                pool.push(closure);
                            }
                        }
                        echelon[c] = Some(row);
                        break;
                    }
                    Some(prow) => {
                        let h = prow.v[c];
                        let a = row.v[c];
                        if a % h == 0 {
                            let coeff = (a / h) % n;
                            let prow = prow.clone();
                            row.sub_mul(&prow, coeff, n);
                            debug_assert_eq!(row.v[c], 0);
                        } else {
                            // Combine to the gcd and keep that as the pivot row;
                            // the complementary unimodular row goes to the pool.
                            let prow = prow.clone();
                            let (g, x, y) = ext_gcd(h as i128, a as i128);
                            let xu = x.rem_euclid(n as i128) as u64;
                            let yu = y.rem_euclid(n as i128) as u64;
                            let alpha = (h as i128 / g).rem_euclid(n as i128) as u64;
                            let beta = (a as i128 / g).rem_euclid(n as i128) as u64;
                            let newpivot = Row::linear(xu, &prow, yu, &row, n);
                            // complement = alpha·row − beta·prow (pivot col -> 0).
                            let complement =
                                Row::linear(alpha, &row, (n - beta % n) % n, &prow, n);
                            debug_assert_eq!(complement.v[c], 0);
                            echelon[c] = None;
                            pool.push(newpivot);
                            pool.push(complement);
                            break;
                        }
                    }
                }
            }
        }

        let mut rows = Vec::new();
        let mut pivots = Vec::new();
        let mut combos = Vec::new();
        for (c, slot) in echelon.into_iter().enumerate() {
            if let Some(row) = slot {
                rows.push(row.v);
                combos.push(row.combo);
                pivots.push(c);
            }
        }
        let mut form = HowellForm {
            modulus: n,
            cols,
            rows,
            pivots,
            combos,
        };
        form.reduce_above_pivots();
        form
    }

    fn reduce_above_pivots(&mut self) {
        let n = self.modulus;
        for r in 0..self.rows.len() {
            let pc = self.pivots[r];
            let h = self.rows[r][pc];
            for s in 0..r {
                let e = self.rows[s][pc];
                let q = e / h;
                if q > 0 {
                    let src_v = self.rows[r].clone();
                    let src_c = self.combos[r].clone();
                    for j in 0..self.cols {
                        let sub = mulmod(q % n, src_v[j], n);
                        self.rows[s][j] = (self.rows[s][j] + n - sub) % n;
                    }
                    for g in 0..src_c.len() {
                        let sub = mulmod(q % n, src_c[g], n);
                        self.combos[s][g] = (self.combos[s][g] + n - sub) % n;
                    }
                }
            }
        }
    }

    /// Reduce `v` by the canonical rows; returns the residual and the
    /// per-canonical-row coefficients subtracted.
    pub fn reduce_vector(&self, v: &[u64]) -> (Vec<u64>, Vec<u64>) {
        let n = self.modulus;
        let mut res: Vec<u64> = v.iter().map(|&x| x % n).collect();
        let mut coeffs = vec![0u64; self.rows.len()];
        for (r, row) in self.rows.iter().enumerate() {
            let pc = self.pivots[r];
            let h = row[pc];
            let e = res[pc];
            if e == 0 {
                continue;
            }
            if e % h == 0 {
                let c = (e / h) % n;
                coeffs[r] = c;
                for j in 0..self.cols {
                    let sub = mulmod(c, row[j], n);
                    res[j] = (res[j] + n - sub) % n;
                }
            }
        }
        (res, coeffs)
    }

    /// If `v` lies in the span, return exponents of the input generators for
    /// one expression of `v`.
    pub fn express(&self, v: &[u64]) -> Option<Vec<u64>> {
        let (res, coeffs) = self.reduce_vector(v);
        if res.iter().any(|&x| x != 0) {
            return None;
        }
        let ngen = self.combos.first().map_or(0, |c| c.len());
        let n = self.modulus;
        let mut combo = vec![0u64; ngen];
        for (r, &c) in coeffs.iter().enumerate() {
            for g in 0..ngen {
                combo[g] = (combo[g] + mulmod(c, self.combos[r][g], n)) % n;
            }
        }
        Some(combo)
    }

    pub fn contains_vector(&self, v: &[u64]) -> bool {
        self.reduce_vector(v).0.iter().all(|&x| x == 0)
    }

    /// Number of elements in the spanned submodule.
    pub fn span_size(&self) -> u128 {
        let n = self.modulus as u128;
        self.rows
            .iter()
            .zip(self.pivots.iter())
            .map(|(row, &pc)| n / row[pc] as u128)
            .product()
    }
}

/// Smith normal form of an integer matrix: `U * A * V = D` with `D` diagonal,
/// each diagonal entry non-negative and dividing the next. Returns `(diag, U, V)`.
pub fn smith_normal_form(a: &[Vec<i128>]) -> (Vec<i128>, Vec<Vec<i128>>, Vec<Vec<i128>>) {
    let m = a.len();
    let n = if m == 0 { 0 } else { a[0].len() };
    let mut d: Vec<Vec<i128>> = a.to_vec();
    let mut u = identity(m);
    let mut v = identity(n);

    // Make the pivot divide every entry of its row and column (each gcd
    // combination strictly decreases the pivot, so this terminates), then
    // clear with exact divisions, which cannot reintroduce entries.
    fn fix_pivot(
        d: &mut [Vec<i128>],
        u: &mut [Vec<i128>],
        v: &mut [Vec<i128>],
        t: usize,
    ) {
        let m = d.len();
        let n = d[0].len();
        loop {
            debug_assert!(d[t][t] != 0);
            let bad_row = (t + 1..m).find(|&i| d[i][t] % d[t][t] != 0);
            if let Some(i) = bad_row {
                let (g, x, y) = ext_gcd(d[t][t], d[i][t]);
                let (alpha, beta) = (d[t][t] / g, d[i][t] / g);
                for j in 0..n {
                    let (p, q) = (d[t][j], d[i][j]);
                    d[t][j] = x * p + y * q;
                    d[i][j] = -beta * p + alpha * q;
                }
                let k = u[0].len();
                for j in 0..k {
                    let (p, q) = (u[t][j], u[i][j]);
                    u[t][j] = x * p + y * q;
                    u[i][j] = -beta * p + alpha * q;
                }
                continue;
            }
            let bad_col = (t + 1..n).find(|&j| d[t][j] % d[t][t] != 0);
            if let Some(j) = bad_col {
                let (g, x, y) = ext_gcd(d[t][t], d[t][j]);
                let (alpha, beta) = (d[t][t] / g, d[t][j] / g);
                for i in 0..m {
                    let (p, q) = (d[i][t], d[i][j]);
                    d[i][t] = x * p + y * q;
                    d[i][j] = -beta * p + alpha * q;
                }
                for row in v.iter_mut() {
                    let (p, q) = (row[t], row[j]);
                    row[t] = x * p + y * q;
                    row[j] = -beta * p + alpha * q;
                }
                continue;
            }
            // Exact eliminations: rows first (clears the column), then
            // columns (the cleared column prevents refill).
            for i in t + 1..m {
                if d[i][t] != 0 {
                    let q = d[i][t] / d[t][t];
                    for j in 0..n {
                        d[i][j] -= q * d[t][j];
                    }
                    let k = u[0].len();
                    for j in 0..k {
                        u[i][j] -= q * u[t][j];
                    }
                }
            }
            for j in t + 1..n {
                if d[t][j] != 0 {
                    let q = d[t][j] / d[t][t];
                    for i in 0..m {
                        d[i][j] -= q * d[i][t];
                    }
                    for row in v.iter_mut() {
                        let s = row[t];
                        row[j] -= q * s;
                    }
                }
            }
            let col_ok = (t + 1..m).all(|i| d[i][t] == 0);
            let row_ok = (t + 1..n).all(|j| d[t][j] == 0);
            if col_ok && row_ok {
                return;
            }
            // A row elimination may have disturbed divisibility in the row;
            // loop around (pivot unchanged, eliminations shrink the rest).
        }
    }

    let r = min(m, n);
    for t in 0..r {
        let found = (t..m)
            .flat_map(|i| (t..n).map(move |j| (i, j)))
            .find(|&(i, j)| d[i][j] != 0);
        let (pi, pj) = match found {
            None => break,
            Some(p) => p,
        };
        if pi != t {
            d.swap(t, pi);
            u.swap(t, pi);
        }
        if pj != t {
            for row in d.iter_mut() {
                row.swap(t, pj);
            }
            for row in v.iter_mut() {
                row.swap(t, pj);
            }
        }
        fix_pivot(&mut d, &mut u, &mut v, t);
    }

    // Divisibility chain: fold the successor into the pivot's column and
    // re-fix; the pivot becomes the gcd and the successor the lcm, so the
    // pivot strictly divides properly and the process terminates.
    loop {
        let mut changed = false;
        for i in 0..r.saturating_sub(1) {
            let (a_, b_) = (d[i][i], d[i + 1][i + 1]);
            if a_ != 0 && b_ != 0 && b_ % a_ != 0 {
                for row in d.iter_mut() {
                    let add = row[i + 1];
                    row[i] += add;
                }
                for row in v.iter_mut() {
                    let add = row[i + 1];
                    row[i] += add;
                }
                fix_pivot(&mut d, &mut u, &mut v, i);
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }

    for i in 0..r {
        if d[i][i] < 0 {
            for j in 0..n {
                d[i][j] = -d[i][j];
            }
            for j in 0..u[0].len() {
                u[i][j] = -u[i][j];
            }
        }
    }
    let diag: Vec<i128> = (0..r).map(|i| d[i][i]).collect();
    (diag, u, v)
}

fn identity(k: usize) -> Vec<Vec<i128>> {
    (0..k)
        .map(|i| (0..k).map(|j| i128::from(i == j)).collect())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ext_gcd_basics() {
        let (g, x, y) = ext_gcd(12, 18);
        assert_eq!(g, 6);
        assert_eq!(12 * x + 18 * y, 6);
        let (g, x, y) = ext_gcd(-4, 6);
        assert_eq!(g, 2);
        assert_eq!(-4 * x + 6 * y, 2);
    }

    #[test]
    fn howell_canonical_for_permuted_generators() {
        let n = 4;
        let gens1 = vec![vec![2, 0, 2], vec![0, 1, 3], vec![2, 1, 1]];
        let gens2 = vec![vec![0, 1, 3], vec![2, 1, 1], vec![2, 0, 2]];
        let h1 = HowellForm::from_generators(&gens1, n, 3);
        let h2 = HowellForm::from_generators(&gens2, n, 3);
        assert_eq!(h1.rows, h2.rows);
        assert_eq!(h1.span_size(), h2.span_size());
    }

    #[test]
    fn howell_closure_captures_tail() {
        // Over Z_4 the row (2, 1) spans {(0,0),(2,1),(0,2),(2,3)}; the Howell
        // form must expose (0, 2) so reduction of (0, 2) succeeds.
        let h = HowellForm::from_generators(&[vec![2, 1]], 4, 2);
        assert!(h.contains_vector(&[0, 2]));
        assert_eq!(h.span_size(), 4);
    }

    #[test]
    fn howell_express_combination() {
        let n = 6;
        let gens = vec![vec![2, 0], vec![0, 3]];
        let h = HowellForm::from_generators(&gens, n, 2);
        let combo = h.express(&[4, 3]).unwrap();
        let rebuilt = [(combo[0] * 2) % n, (combo[1] * 3) % n];
        assert_eq!(rebuilt, [4, 3]);
        assert!(h.express(&[1, 0]).is_none());
    }

    #[test]
    fn howell_span_enumeration_matches() {
        for gens in [
            vec![vec![2, 3], vec![3, 3]],
            vec![vec![4, 2], vec![0, 2]],
            vec![vec![1, 5], vec![2, 4], vec![3, 3]],
        ] {
            let n = 6u64;
            let h = HowellForm::from_generators(&gens, n, 2);
            let mut members = std::collections::HashSet::new();
            for a in 0..n {
                for b in 0..n {
                    let v = [
                        gens.iter()
                            .zip([a, b, 0].iter())
                            .map(|(g, &c)| c * g[0])
                            .sum::<u64>()
                            % n,
                        gens.iter()
                            .zip([a, b, 0].iter())
                            .map(|(g, &c)| c * g[1])
                            .sum::<u64>()
                            % n,
                    ];
                    let _ = v;
                }
            }
            // Enumerate the full span by iterating all coefficient tuples.
            let k = gens.len();
            let mut stack = vec![0u64; k];
            loop {
                let mut v = [0u64; 2];
                for (g, &c) in gens.iter().zip(stack.iter()) {
                    v[0] = (v[0] + c * g[0]) % n;
                    v[1] = (v[1] + c * g[1]) % n;
                }
                members.insert(v);
                let mut i = 0;
                loop {
                    if i == k {
                        break;
                    }
                    stack[i] += 1;
                    if stack[i] < n {
                        break;
                    }
                    stack[i] = 0;
                    i += 1;
                }
                if i == k {
                    break;
                }
            }
            assert_eq!(members.len() as u128, h.span_size());
            for a in 0..n {
                for b in 0..n {
                    assert_eq!(
                        members.contains(&[a, b]),
                        h.contains_vector(&[a, b]),
                        "membership mismatch at ({}, {}) for {:?}",
                        a,
                        b,
                        gens
                    );
                }
            }
        }
    }

    #[test]
    fn howell_express_round_trip_random() {
        // Pseudo-random small cases; rebuild each expressed vector.
        let n = 12u64;
        let cols = 4usize;
        let mut state = 0x9e3779b97f4a7c15u64;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            state
        };
        for _ in 0..50 {
            let k = 1 + (next() % 4) as usize;
            let gens: Vec<Vec<u64>> = (0..k)
                .map(|_| (0..cols).map(|_| next() % n).collect())
                .collect();
            let h = HowellForm::from_generators(&gens, n, cols);
            // Random combination must be contained and re-expressible.
            let coeffs: Vec<u64> = (0..k).map(|_| next() % n).collect();
            let mut v = vec![0u64; cols];
            for (g, &c) in gens.iter().zip(coeffs.iter()) {
                for j in 0..cols {
                    v[j] = (v[j] + c * g[j]) % n;
                }
            }
            let combo = h.express(&v).expect("combination must be in span");
            let mut rebuilt = vec![0u64; cols];
            for (g, &c) in gens.iter().zip(combo.iter()) {
                for j in 0..cols {
                    rebuilt[j] = (rebuilt[j] + c * g[j]) % n;
                }
            }
            assert_eq!(rebuilt, v);
        }
    }

    #[test]
    fn snf_small() {
        let a = vec![vec![2, 4, 4], vec![-6, 6, 12], vec![10, 4, 16]];
        let (d, u, v) = smith_normal_form(&a);
        assert_eq!(d, vec![2, 2, 156]);
        let m = 3;
        let mut uav = vec![vec![0i128; m]; m];
        for i in 0..m {
            for j in 0..m {
                let mut s = 0;
                for k in 0..m {
                    for l in 0..m {
                        s += u[i][k] * a[k][l] * v[l][j];
                    }
                }
                uav[i][j] = s;
            }
        }
        for i in 0..m {
            for j in 0..m {
                assert_eq!(uav[i][j], if i == j { d[i] } else { 0 });
            }
        }
    }

    #[test]
    fn snf_rectangular_and_zero() {
        let a = vec![vec![0, 0], vec![0, 0], vec![0, 0]];
        let (d, _, _) = smith_normal_form(&a);
        assert_eq!(d, vec![0, 0]);
        let a = vec![vec![6, 4]];
        let (d, u, v) = smith_normal_form(&a);
        assert_eq!(d, vec![2]);
        let mut uav = 0;
        for k in 0..1 {
            for l in 0..2 {
                uav += u[0][k] * a[k][l] * v[l][0];
            }
        }
        assert_eq!(uav, 2);
    }
}

