//! Abelian anyon theories, their automorphisms, invariant subgroups and
//! quotients, induced topological orders, defect dimensions, and the
//! measurement-reduction scheme.
//!
//! A theory is a finite abelian group (cyclic orders `n₁,…,n_k`) with a
//! symmetric rational braiding form `Θ` (fractions of 2π): the mutual
//! statistics of `a` and `b` is `aᵀΘb mod 1`. Topological spins, when
//! defined, are carried as a quadratic refinement via generator spins.

use crate::chiral::SqrtRational;
use crate::error::{Error, Result};
use crate::linalg::smith_normal_form;
use num::rational::Ratio;
use num::{One, Zero};
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;
use std::fmt;

pub type Frac = Ratio<i64>;

fn frac_mod1(r: Frac) -> Frac {
    let mut r = r;
    let one = Frac::one();
    while r < Frac::zero() {
        r += one;
    }
    while r >= one {
        r -= one;
    }
    r
}

/// An anyon as an exponent vector over the theory's generators.
pub type Anyon = Vec<i64>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AnyonTheory {
    orders: Vec<u64>,
    theta: Vec<Vec<Frac>>,
    /// Topological spins of the generators (None when ill-defined, e.g. the
    /// odd Laughlin layers).
    spins: Option<Vec<Frac>>,
}

impl AnyonTheory {
    pub fn new(orders: Vec<u64>, theta: Vec<Vec<Frac>>, spins: Option<Vec<Frac>>) -> Result<Self> {
        let k = orders.len();
        if theta.len() != k || theta.iter().any(|row| row.len() != k) {
            return Err(Error::AnyonTheory("braiding form has wrong shape".into()));
        }
        if orders.iter().any(|&n| n == 0) {
            return Err(Error::AnyonTheory("cyclic orders must be positive".into()));
        }
        if let Some(s) = &spins {
            if s.len() != k {
                return Err(Error::AnyonTheory("spin vector has wrong length".into()));
            }
        }
        let t = AnyonTheory {
            orders,
            theta,
            spins,
        };
        for i in 0..k {
            for j in 0..k {
                if frac_mod1(t.theta[i][j] - t.theta[j][i]) != Frac::zero() {
                    return Err(Error::AnyonTheory("braiding form is not symmetric".into()));
                }
                let scaled = t.theta[i][j] * Frac::from_integer(t.orders[i] as i64);
                if !scaled.is_integer() {
                    return Err(Error::AnyonTheory(format!(
                        "braiding form is not defined on the group: n_{i}·Θ[{i}][{j}] = {scaled}"
                    )));
                }
            }
        }
        if !t.is_nondegenerate() {
            return Err(Error::AnyonTheory(
                "braiding form is degenerate (theory is not modular)".into(),
            ));
        }
        Ok(t)
    }

    /// `Z_N` toric code: anyons e^j m^k, θ_{e,m} = 1/N, bosonic generators.
    pub fn toric_code(n: u64) -> Self {
        let inv = Frac::new(1, n as i64);
        AnyonTheory::new(
            vec![n, n],
            vec![vec![Frac::zero(), inv], vec![inv, Frac::zero()]],
            Some(vec![Frac::zero(), Frac::zero()]),
        )
        .expect("toric code data is valid")
    }

    /// Two decoupled `1/N` Laughlin layers (θ_{ε,ε} = 1/N per layer). Spins
    /// `1/(2N)` are only defined on the group for even `N`.
    pub fn laughlin_bilayer(n: u64) -> Self {
        let d = Frac::new(1, n as i64);
        let spins = if n % 2 == 0 {
            Some(vec![Frac::new(1, 2 * n as i64); 2])
        } else {
            None
        };
        AnyonTheory::new(
            vec![n, n],
            vec![vec![d, Frac::zero()], vec![Frac::zero(), d]],
            spins,
        )
        .expect("bilayer data is valid")
    }

    /// The trivial theory (vacuum only).
    pub fn trivial() -> Self {
        AnyonTheory {
            orders: Vec::new(),
            theta: Vec::new(),
            spins: Some(Vec::new()),
        }
    }

    pub fn rank(&self) -> usize {
        self.orders.len()
    }

    pub fn orders(&self) -> &[u64] {
        &self.orders
    }

    pub fn theta_matrix(&self) -> &[Vec<Frac>] {
        &self.theta
    }

    pub fn generator_spins(&self) -> Option<&[Frac]> {
        self.spins.as_deref()
    }

    pub fn group_order(&self) -> u128 {
        self.orders.iter().map(|&n| n as u128).product()
    }

    pub fn reduce(&self, a: &[i64]) -> Anyon {
        a.iter()
            .zip(self.orders.iter())
            .map(|(&x, &n)| x.rem_euclid(n as i64))
            .collect()
    }

    pub fn vacuum(&self) -> Anyon {
        vec![0; self.rank()]
    }

    pub fn fuse(&self, a: &[i64], b: &[i64]) -> Anyon {
        self.reduce(&a.iter().zip(b.iter()).map(|(x, y)| x + y).collect::<Vec<_>>())
    }

    pub fn conjugate(&self, a: &[i64]) -> Anyon {
        self.reduce(&a.iter().map(|&x| -x).collect::<Vec<_>>())
    }

    pub fn is_vacuum(&self, a: &[i64]) -> bool {
        self.reduce(a).iter().all(|&x| x == 0)
    }

    /// Mutual braiding statistics θ_{a,b} as a fraction of 2π in [0, 1).
    pub fn braiding(&self, a: &[i64], b: &[i64]) -> Frac {
        let mut acc = Frac::zero();
        for i in 0..self.rank() {
            for j in 0..self.rank() {
                acc += self.theta[i][j] * Frac::from_integer(a[i]) * Frac::from_integer(b[j]);
            }
        }
        frac_mod1(acc)
    }

    /// Topological spin θ_a (fraction of 2π), when defined.
    pub fn spin(&self, a: &[i64]) -> Option<Frac> {
        let spins = self.spins.as_ref()?;
        let mut acc = Frac::zero();
        for i in 0..self.rank() {
            acc += spins[i] * Frac::from_integer(a[i] * a[i]);
            for j in (i + 1)..self.rank() {
                acc += self.theta[i][j] * Frac::from_integer(a[i] * a[j]);
            }
        }
        Some(frac_mod1(acc))
    }

    /// Order of an anyon under fusion.
    pub fn anyon_order(&self, a: &[i64]) -> u64 {
        let mut ord = 1u64;
        for (x, &n) in a.iter().zip(self.orders.iter()) {
            let x = x.rem_euclid(n as i64) as u64;
            let g = crate::linalg::gcd_u64(x, n);
            ord = crate::linalg::lcm_u64(ord, n / g);
        }
        ord
    }

    /// All anyons in odometer order; sizes here are small by construction.
    pub fn enumerate(&self) -> Vec<Anyon> {
        let total = self.group_order();
        assert!(total <= 1 << 20, "theory too large to enumerate");
        let mut out = Vec::with_capacity(total as usize);
        let mut cur = self.vacuum();
        loop {
            out.push(cur.clone());
            let mut i = 0;
            loop {
                if i == self.rank() {
                    return out;
                }
                cur[i] += 1;
                if cur[i] < self.orders[i] as i64 {
                    break;
                }
                cur[i] = 0;
                i += 1;
            }
        }
    }

    /// Modularity: `a ↦ θ_{a,·}` is injective.
    pub fn is_nondegenerate(&self) -> bool {
        if self.rank() == 0 {
            return true;
        }
        self.enumerate()
            .iter()
            .filter(|a| {
                (0..self.rank()).all(|j| {
                    let mut gen = self.vacuum();
                    gen[j] = 1;
                    self.braiding(a, &gen) == Frac::zero()
                })
            })
            .count()
            == 1
    }

    pub fn generators(&self) -> Vec<Anyon> {
        (0..self.rank())
            .map(|i| {
                let mut g = self.vacuum();
                g[i] = 1;
                g
            })
            .collect()
    }
}

impl fmt::Display for AnyonTheory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "abelian theory Z_{}",
            self.orders
                .iter()
                .map(|n| n.to_string())
                .collect::<Vec<_>>()
                .join(" x Z_")
        )
    }
}

/// An automorphism candidate: integer matrix acting on exponent vectors.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnyonAutomorphism {
    pub matrix: Vec<Vec<i64>>,
}

impl AnyonAutomorphism {
    pub fn identity(rank: usize) -> Self {
        AnyonAutomorphism {
            matrix: (0..rank)
                .map(|i| (0..rank).map(|j| i64::from(i == j)).collect())
                .collect(),
        }
    }

    /// Layer swap on a rank-2k theory.
    pub fn swap(rank: usize) -> Self {
        assert!(rank % 2 == 0);
        let k = rank / 2;
        AnyonAutomorphism {
            matrix: (0..rank)
                .map(|i| {
                    (0..rank)
                        .map(|j| i64::from(j == (i + k) % rank))
                        .collect()
                })
                .collect(),
        }
    }

    /// Charge conjugation a → ā.
    pub fn conjugation(rank: usize) -> Self {
        AnyonAutomorphism {
            matrix: (0..rank)
                .map(|i| (0..rank).map(|j| if i == j { -1 } else { 0 }).collect())
                .collect(),
        }
    }

    /// `e → m^q, m → e^p` on a rank-2 theory with generators (e, m); columns
    /// of the matrix are the images of the generators.
    pub fn em_exchange(p: i64, q: i64) -> Self {
        AnyonAutomorphism {
            matrix: vec![vec![0, p], vec![q, 0]],
        }
    }

    pub fn apply(&self, t: &AnyonTheory, a: &[i64]) -> Anyon {
        let k = t.rank();
        let mut out = vec![0i64; k];
        for i in 0..k {
            for j in 0..k {
                out[i] += self.matrix[i][j] * a[j];
            }
        }
        t.reduce(&out)
    }

    pub fn compose(&self, other: &AnyonAutomorphism) -> AnyonAutomorphism {
        let k = self.matrix.len();
        let mut m = vec![vec![0i64; k]; k];
        for i in 0..k {
            for j in 0..k {
                for l in 0..k {
                    m[i][j] += self.matrix[i][l] * other.matrix[l][j];
                }
            }
        }
        AnyonAutomorphism { matrix: m }
    }

    /// Order of the induced permutation of the group.
    pub fn order_on(&self, t: &AnyonTheory) -> u64 {
        let mut k = 1u64;
        let mut cur = self.clone();
        let id = AnyonAutomorphism::identity(t.rank());
        while !cur.acts_as(t, &id) {
            cur = cur.compose(self);
            k += 1;
            assert!(k <= 4096, "automorphism order runaway");
        }
        k
    }

    fn acts_as(&self, t: &AnyonTheory, other: &AnyonAutomorphism) -> bool {
        t.generators()
            .iter()
            .all(|g| self.apply(t, g) == other.apply(t, g))
    }
}

/// True iff `m` is a well-defined bijection of the fusion group preserving
/// mutual statistics (and spins when the theory defines them).
pub fn is_automorphism(t: &AnyonTheory, m: &AnyonAutomorphism) -> bool {
    let k = t.rank();
    if m.matrix.len() != k || m.matrix.iter().any(|r| r.len() != k) {
        return false;
    }
    // Well-defined: n_j · column_j ≡ 0 in the group.
    for j in 0..k {
        for i in 0..k {
            let v = m.matrix[i][j] * t.orders[j] as i64;
            if v.rem_euclid(t.orders[i] as i64) != 0 {
                return false;
            }
        }
    }
    // Injective (hence bijective) on the finite group.
    let mut seen = BTreeSet::new();
    for a in t.enumerate() {
        if !seen.insert(m.apply(t, &a)) {
            return false;
        }
    }
    // Preserves mutual statistics: bilinear, so generators suffice.
    let gens = t.generators();
    for a in &gens {
        for b in &gens {
            if t.braiding(a, b) != t.braiding(&m.apply(t, a), &m.apply(t, b)) {
                return false;
            }
        }
    }
    // Preserves spins when defined (quadratic: generators suffice given the
    // bilinear part above).
    if t.spins.is_some() {
        for a in &gens {
            if t.spin(a) != t.spin(&m.apply(t, a)) {
                return false;
            }
        }
    }
    true
}

/// A subgroup presented by its elements and a generating set.
#[derive(Debug, Clone)]
pub struct Subgroup {
    pub elements: Vec<Anyon>,
    pub generators: Vec<Anyon>,
}

impl Subgroup {
    pub fn order(&self) -> u128 {
        self.elements.len() as u128
    }
}

/// `{a : σ(a) = a}` — the subgroup fixed pointwise by σ.
pub fn invariant_subgroup(t: &AnyonTheory, sigma: &AnyonAutomorphism) -> Subgroup {
    let elements: Vec<Anyon> = t
        .enumerate()
        .into_iter()
        .filter(|a| sigma.apply(t, a) == *a)
        .collect();
    // Greedy generating set.
    let mut generators: Vec<Anyon> = Vec::new();
    let mut span: BTreeSet<Anyon> = BTreeSet::new();
    span.insert(t.vacuum());
    for a in &elements {
        if span.contains(a) {
            continue;
        }
        generators.push(a.clone());
        // Close the span.
        let mut frontier: Vec<Anyon> = span.iter().cloned().collect();
        for base in frontier.drain(..) {
            let mut cur = base;
            loop {
                cur = t.fuse(&cur, a);
                if !span.insert(cur.clone()) {
                    break;
                }
            }
        }
        // Re-close under all generators (small groups; simple fixpoint).
        loop {
            let mut grew = false;
            let snapshot: Vec<Anyon> = span.iter().cloned().collect();
            for x in &snapshot {
                for g in &generators {
                    let y = t.fuse(x, g);
                    if span.insert(y) {
                        grew = true;
                    }
                }
            }
            if !grew {
                break;
            }
        }
    }
    Subgroup {
        elements,
        generators,
    }
}

/// Presentation of `TO₀ / Inv` as a product of cyclic groups, with coset
/// representatives and the projection map.
#[derive(Debug, Clone)]
pub struct QuotientGroup {
    /// Orders of the nontrivial cyclic factors.
    pub orders: Vec<u64>,
    /// A representative anyon of each factor generator.
    pub representatives: Vec<Anyon>,
    /// Projection data: class(x) = (U·x) mod diag, kept on the nontrivial rows.
    u_rows: Vec<Vec<i64>>,
    pub order: u128,
}

impl QuotientGroup {
    pub fn class_of(&self, a: &[i64]) -> Vec<i64> {
        self.u_rows
            .iter()
            .zip(self.orders.iter())
            .map(|(row, &n)| {
                let mut acc = 0i64;
                for (c, &x) in row.iter().zip(a.iter()) {
                    acc += c * x;
                }
                acc.rem_euclid(n as i64)
            })
            .collect()
    }

    pub fn is_trivial_class(&self, a: &[i64]) -> bool {
        self.class_of(a).iter().all(|&c| c == 0)
    }
}

/// Quotient of the fusion group by a subgroup, via Smith normal form of the
/// relation matrix (group orders plus subgroup generators).
pub fn quotient_group(t: &AnyonTheory, inv: &Subgroup) -> QuotientGroup {
    let k = t.rank();
    if k == 0 {
        return QuotientGroup {
            orders: Vec::new(),
            representatives: Vec::new(),
            u_rows: Vec::new(),
            order: 1,
        };
    }
    // Relation columns: n_i e_i and the subgroup generators.
    let mut cols: Vec<Vec<i128>> = Vec::new();
    for i in 0..k {
        let mut c = vec![0i128; k];
        c[i] = t.orders[i] as i128;
        cols.push(c);
    }
    for g in &inv.generators {
        cols.push(g.iter().map(|&x| x as i128).collect());
    }
    // Matrix with relations as columns: k × m.
    let m = cols.len();
    let a: Vec<Vec<i128>> = (0..k)
        .map(|i| (0..m).map(|j| cols[j][i]).collect())
        .collect();
    let (diag, u, _v) = smith_normal_form(&a);
    // Quotient = ⊕ Z_{d_i} in coordinates y = U x; keep nontrivial factors.
    let uinv = invert_unimodular(&u);
    let mut orders = Vec::new();
    let mut representatives = Vec::new();
    let mut u_rows = Vec::new();
    for (i, &d) in diag.iter().enumerate() {
        let d = d.unsigned_abs() as u64;
        assert!(d != 0, "quotient of a finite group must be finite");
        if d == 1 {
            continue;
        }
        orders.push(d);
        u_rows.push(u[i].iter().map(|&x| x as i64).collect());
        // Representative: x with Ux = e_i, i.e. column i of U^{-1}.
        let rep: Anyon = t.reduce(
            &(0..k)
                .map(|r| uinv[r][i] as i64)
                .collect::<Vec<_>>(),
        );
        representatives.push(rep);
    }
    let order: u128 = orders.iter().map(|&n| n as u128).product();
    debug_assert_eq!(order * inv.order(), t.group_order());
    QuotientGroup {
        orders,
        representatives,
        u_rows,
        order,
    }
}

fn invert_unimodular(u: &[Vec<i128>]) -> Vec<Vec<i128>> {
    // Gauss-Jordan over the rationals with exact integer pivots (det = ±1).
    let n = u.len();
    let mut a: Vec<Vec<Frac>> = u
        .iter()
        .map(|row| row.iter().map(|&x| Frac::from_integer(x as i64)).collect())
        .collect();
    let mut inv: Vec<Vec<Frac>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| Frac::from_integer(i64::from(i == j)))
                .collect()
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n)
            .find(|&r| a[r][col] != Frac::zero())
            .expect("unimodular matrix is invertible");
        a.swap(col, pivot);
        inv.swap(col, pivot);
        let p = a[col][col];
        for j in 0..n {
            a[col][j] /= p;
            inv[col][j] /= p;
        }
        for r in 0..n {
            if r != col && a[r][col] != Frac::zero() {
                let f = a[r][col];
                for j in 0..n {
                    let ac = a[col][j];
                    let ic = inv[col][j];
                    a[r][j] -= f * ac;
                    inv[r][j] -= f * ic;
                }
            }
        }
    }
    inv.iter()
        .map(|row| {
            row.iter()
                .map(|x| {
                    assert!(x.is_integer(), "inverse of unimodular must be integral");
                    x.to_integer() as i128
                })
                .collect()
        })
        .collect()
}

/// Quantum dimension `√(|TO₀| / |Inv(σ)|)` of an order-two twist defect.
pub fn defect_dimension(t: &AnyonTheory, sigma: &AnyonAutomorphism) -> Result<SqrtRational> {
    let ord = sigma.order_on(t);
    if ord > 2 {
        return Err(Error::AnyonTheory(format!(
            "defect dimension formula is valid for order-two defects only (got order {ord})"
        )));
    }
    let inv = invariant_subgroup(t, sigma);
    let ratio = t.group_order() / inv.order();
    Ok(SqrtRational::from_squared(Frac::from_integer(ratio as i64)))
}

/// The induced topological order on `(TO₀^σ)²` with generators F₁(a), F₂(a):
/// fusion is inherited from the quotient, the only nontrivial statistics are
/// `θ_{F₁(a),F₂(b)} = θ_{a, b̄σ(b)}`, and invariant anyons map to vacuum.
pub fn induced_topological_order(
    t: &AnyonTheory,
    sigma: &AnyonAutomorphism,
) -> Result<(AnyonTheory, QuotientGroup)> {
    let ord = sigma.order_on(t);
    if ord > 2 {
        return Err(Error::AnyonTheory(
            "induced order is defined for order-two automorphisms only".into(),
        ));
    }
    let inv = invariant_subgroup(t, sigma);
    let q = quotient_group(t, &inv);
    let k = q.orders.len();
    let mut orders = Vec::with_capacity(2 * k);
    orders.extend(q.orders.iter().cloned());
    orders.extend(q.orders.iter().cloned());
    let mut theta = vec![vec![Frac::zero(); 2 * k]; 2 * k];
    for f in 0..k {
        for g in 0..k {
            // θ_{a, b̄ σ(b)} with a = rep_f, b = rep_g.
            let b = &q.representatives[g];
            let moved = t.fuse(&t.conjugate(b), &sigma.apply(t, b));
            let val = t.braiding(&q.representatives[f], &moved);
            theta[f][k + g] = val;
            theta[k + g][f] = val;
        }
    }
    let spins = Some(vec![Frac::zero(); 2 * k]);
    let induced = AnyonTheory::new(orders, theta, spins).map_err(|e| {
        Error::AnyonTheory(format!("induced form is degenerate or ill-defined: {e}"))
    })?;
    debug_assert_eq!(induced.group_order(), q.order * q.order);
    Ok((induced, q))
}

/// The order-two permutation `F₁(a) ↔ F₂(a)` of the induced theory.
pub fn induced_automorphism(induced: &AnyonTheory) -> AnyonAutomorphism {
    AnyonAutomorphism::swap(induced.rank())
}

/// Brute-force search for a fusion-group isomorphism `A → B` preserving the
/// braiding form (and spins when both theories define them). Returns the
/// images of A's generators.
pub fn find_isomorphism(a: &AnyonTheory, b: &AnyonTheory) -> Result<Option<Vec<Anyon>>> {
    if a.group_order() != b.group_order() {
        return Ok(None);
    }
    if a.group_order() > 10_000 {
        return Err(Error::AnyonTheory(
            "isomorphism search capped at group order 10^4".into(),
        ));
    }
    let b_elements = b.enumerate();
    let gens = a.generators();
    let compare_spins = a.spins.is_some() && b.spins.is_some();
    let mut assignment: Vec<Anyon> = Vec::new();

    fn consistent(
        a: &AnyonTheory,
        b: &AnyonTheory,
        gens: &[Anyon],
        assignment: &[Anyon],
        candidate: &Anyon,
        compare_spins: bool,
    ) -> bool {
        let i = assignment.len();
        if a.anyon_order(&gens[i]) != b.anyon_order(candidate) {
            return false;
        }
        if a.braiding(&gens[i], &gens[i]) != b.braiding(candidate, candidate) {
            return false;
        }
        if compare_spins && a.spin(&gens[i]) != b.spin(candidate) {
            return false;
        }
        for (j, img) in assignment.iter().enumerate() {
            if a.braiding(&gens[i], &gens[j]) != b.braiding(candidate, img) {
                return false;
            }
        }
        true
    }

    fn search(
        a: &AnyonTheory,
        b: &AnyonTheory,
        gens: &[Anyon],
        b_elements: &[Anyon],
        assignment: &mut Vec<Anyon>,
        compare_spins: bool,
    ) -> bool {
        if assignment.len() == gens.len() {
            // Verify bijectivity by imaging the whole group.
            let mut seen = BTreeSet::new();
            for x in a.enumerate() {
                let mut img = b.vacuum();
                for (g, image) in assignment.iter().enumerate() {
                    let scaled: Vec<i64> = image.iter().map(|&v| v * x[g]).collect();
                    img = b.fuse(&img, &scaled);
                }
                if !seen.insert(img) {
                    return false;
                }
            }
            return true;
        }
        for cand in b_elements {
            if consistent(a, b, gens, assignment, cand, compare_spins) {
                assignment.push(cand.clone());
                if search(a, b, gens, b_elements, assignment, compare_spins) {
                    return true;
                }
                assignment.pop();
            }
        }
        false
    }

    if search(a, b, &gens, &b_elements, &mut assignment, compare_spins) {
        Ok(Some(assignment))
    } else {
        Ok(None)
    }
}

/// Appendix-style measurement reduction: walk the generators, and for each
/// one whose class is not yet movable append its σ-orbit minus the last
/// element. Returns the reduced check set and the number of orbits used.
pub fn minimal_check_set(
    t: &AnyonTheory,
    sigma: &AnyonAutomorphism,
    generators: &[Anyon],
) -> (Vec<Anyon>, usize) {
    let inv = invariant_subgroup(t, sigma);
    let q = quotient_group(t, &inv);
    let mut measured: Vec<Anyon> = Vec::new();
    let mut movable: BTreeSet<Vec<i64>> = BTreeSet::new();
    movable.insert(q.class_of(&t.vacuum()));
    let mut orbits_used = 0usize;
    let close = |movable: &mut BTreeSet<Vec<i64>>, measured: &[Anyon], q: &QuotientGroup| {
        // Subgroup of the quotient generated by measured classes.
        let mut grew = true;
        while grew {
            grew = false;
            let snapshot: Vec<Vec<i64>> = movable.iter().cloned().collect();
            for x in &snapshot {
                for m in measured {
                    let cm = q.class_of(m);
                    let sum: Vec<i64> = x
                        .iter()
                        .zip(cm.iter())
                        .zip(q.orders.iter())
                        .map(|((&a, &b), &n)| (a + b).rem_euclid(n as i64))
                        .collect();
                    if movable.insert(sum) {
                        grew = true;
                    }
                }
            }
        }
    };
    for gen in generators {
        if movable.contains(&q.class_of(gen)) {
            continue;
        }
        // σ-orbit of the generator.
        let mut orbit = vec![gen.clone()];
        let mut cur = sigma.apply(t, gen);
        while cur != *gen {
            orbit.push(cur.clone());
            cur = sigma.apply(t, &cur);
        }
        // Measure all but the last orbit element (its braiding follows from
        // the invariance of the orbit product).
        let keep = if orbit.len() == 1 { 1 } else { orbit.len() - 1 };
        for a in orbit.into_iter().take(keep) {
            measured.push(a);
        }
        orbits_used += 1;
        close(&mut movable, &measured, &q);
    }
    (measured, orbits_used)
}

/// A set of anyons whose braiding against the invariant-subgroup generators
/// is full rank: the supplemental contractible-loop measurements that detect
/// invariant anyons.
pub fn supplemental_flux_set(
    t: &AnyonTheory,
    sigma: &AnyonAutomorphism,
) -> Result<Vec<Anyon>> {
    let inv = invariant_subgroup(t, sigma);
    if inv.generators.is_empty() {
        return Ok(Vec::new());
    }
    // Kernel of the character map Inv → U(1)^chosen.
    let mut chosen: Vec<Anyon> = Vec::new();
    let kernel = |chosen: &[Anyon]| -> Vec<Anyon> {
        inv.elements
            .iter()
            .filter(|f| chosen.iter().all(|a| t.braiding(f, a) == Frac::zero()))
            .cloned()
            .collect()
    };
    let mut current = kernel(&chosen);
    while current.len() > 1 {
        let mut best: Option<(usize, Anyon)> = None;
        for cand in t.enumerate() {
            if t.is_vacuum(&cand) {
                continue;
            }
            let mut trial = chosen.clone();
            trial.push(cand.clone());
            let k = kernel(&trial).len();
            if k < current.len() && (best.is_none() || k < best.as_ref().unwrap().0) {
                best = Some((k, cand));
                if k == 1 {
                    break;
                }
            }
        }
        match best {
            Some((_, cand)) => {
                chosen.push(cand);
                current = kernel(&chosen);
            }
            None => {
                return Err(Error::AnyonTheory(
                    "no anyon separates the invariant subgroup (degenerate theory)".into(),
                ))
            }
        }
    }
    Ok(chosen)
}

/// JSON configuration mirror for anyon theories.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AnyonTheoryConfig {
    pub orders: Vec<u64>,
    /// Entries as fraction strings like "1/3" (or integers like "0").
    pub theta: Vec<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub spins: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub automorphism: Option<Vec<Vec<i64>>>,
}

pub fn parse_fraction(s: &str) -> Result<Frac> {
    let s = s.trim();
    if let Some((n, d)) = s.split_once('/') {
        let n: i64 = n
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad fraction numerator {n}")))?;
        let d: i64 = d
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad fraction denominator {d}")))?;
        if d == 0 {
            return Err(Error::Parse("fraction denominator is zero".into()));
        }
        Ok(Frac::new(n, d))
    } else {
        let n: i64 = s
            .parse()
            .map_err(|_| Error::Parse(format!("bad fraction {s}")))?;
        Ok(Frac::from_integer(n))
    }
}

impl AnyonTheoryConfig {
    pub fn build(&self) -> Result<(AnyonTheory, Option<AnyonAutomorphism>)> {
        let theta: Vec<Vec<Frac>> = self
            .theta
            .iter()
            .map(|row| row.iter().map(|s| parse_fraction(s)).collect::<Result<_>>())
            .collect::<Result<_>>()?;
        let spins: Option<Vec<Frac>> = match &self.spins {
            None => None,
            Some(s) => Some(s.iter().map(|x| parse_fraction(x)).collect::<Result<_>>()?),
        };
        let theory = AnyonTheory::new(self.orders.clone(), theta, spins)?;
        let auto = self
            .automorphism
            .as_ref()
            .map(|m| AnyonAutomorphism { matrix: m.clone() });
        Ok((theory, auto))
    }
}
