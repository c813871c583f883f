//! Dense state-vector oracle for mixed-dimension qudit registers.
//!
//! Everything here is built directly from clock/shift matrices and basis-state
//! arithmetic, independent of the stabilizer engine's symplectic path, so it
//! can serve as an oracle for engine behavior.

#![allow(dead_code)]

use floquet_forge::pauli::{PauliString, QuditRegister};
use num::rational::Ratio;
use num_complex::Complex64 as C64;
use rand::Rng;
use std::sync::Arc;

pub struct DenseState {
    pub dims: Vec<u32>,
    pub amps: Vec<C64>,
}

fn strides(dims: &[u32]) -> Vec<usize> {
    // Site 0 is the slowest-varying digit.
    let mut s = vec![0usize; dims.len()];
    let mut acc = 1usize;
    for i in (0..dims.len()).rev() {
        s[i] = acc;
        acc *= dims[i] as usize;
    }
    s
}

impl DenseState {
    pub fn total_dim(dims: &[u32]) -> usize {
        dims.iter().map(|&d| d as usize).product()
    }

    pub fn basis(dims: &[u32], index: usize) -> Self {
        let n = Self::total_dim(dims);
        let mut amps = vec![C64::new(0.0, 0.0); n];
        amps[index] = C64::new(1.0, 0.0);
        DenseState {
            dims: dims.to_vec(),
            amps,
        }
    }

    pub fn norm2(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    pub fn normalize(&mut self) {
        let n = self.norm2().sqrt();
        if n > 0.0 {
            for a in self.amps.iter_mut() {
                *a /= n;
            }
        }
    }

    /// Apply a generalized Pauli: `P|j> = phase · Π ω_d^{z_i j_i} |j + x>`.
    pub fn apply_pauli(&self, p: &PauliString) -> DenseState {
        let dims = &self.dims;
        let st = strides(dims);
        let n = self.amps.len();
        let mut out = vec![C64::new(0.0, 0.0); n];
        let ph = p.phase_fraction();
        let global = phase_to_c64(*ph.numer() as f64 / *ph.denom() as f64);
        let nsites = dims.len();
        for (idx, &amp) in self.amps.iter().enumerate() {
            if amp.norm_sqr() == 0.0 {
                continue;
            }
            let mut digits = vec![0u32; nsites];
            let mut rem = idx;
            for i in 0..nsites {
                digits[i] = (rem / st[i]) as u32 % dims[i];
                rem %= st[i];
            }
            let mut phase = 0.0f64;
            let mut target = 0usize;
            for i in 0..nsites {
                let d = dims[i] as f64;
                phase += p.z_exponent(i) as f64 * digits[i] as f64 / d;
                let nd = (digits[i] + p.x_exponent(i)) % dims[i];
                target += nd as usize * st[i];
            }
            out[target] += amp * global * phase_to_c64(phase);
        }
        DenseState {
            dims: dims.clone(),
            amps: out,
        }
    }

    pub fn inner(&self, other: &DenseState) -> C64 {
        self.amps
            .iter()
            .zip(other.amps.iter())
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    /// ⟨ψ|P|ψ⟩ for a normalized state.
    pub fn expectation(&self, p: &PauliString) -> C64 {
        self.inner(&self.apply_pauli(p))
    }

    /// Eigenvalues of `m` as phases (fractions of a turn): the order-many
    /// roots determined from the dense action of `m^order` on `|0>`.
    pub fn eigenphases(dims: &[u32], m: &PauliString) -> Vec<f64> {
        let ord = m.order() as i64;
        let mut s = DenseState::basis(dims, 0);
        for _ in 0..ord {
            s = s.apply_pauli(m);
        }
        // m^ord = e^{2πiφ}·I; read φ off the surviving amplitude.
        let amp = s.amps[0];
        assert!(
            (amp.norm() - 1.0).abs() < 1e-9,
            "operator power is not proportional to the identity"
        );
        let phi = amp.arg() / (2.0 * std::f64::consts::PI);
        (0..ord)
            .map(|k| {
                let mut f = (phi + k as f64) / ord as f64;
                f = f.rem_euclid(1.0);
                f
            })
            .collect()
    }

    /// Probability of outcome `e^{2πi·phase}` when measuring `m`.
    pub fn outcome_probability(&self, m: &PauliString, phase: f64) -> f64 {
        let ord = m.order() as i64;
        // ⟨P_λ⟩ = (1/ord) Σ_t λ^{-t} ⟨m^t⟩.
        let mut acc = C64::new(0.0, 0.0);
        let mut cur = DenseState {
            dims: self.dims.clone(),
            amps: self.amps.clone(),
        };
        for t in 0..ord {
            let lam = phase_to_c64(-phase * t as f64);
            acc += lam * self.inner(&cur);
            cur = cur.apply_pauli(m);
        }
        (acc / C64::new(ord as f64, 0.0)).re.max(0.0)
    }

    /// Project onto the `e^{2πi·phase}` eigenspace of `m` and normalize.
    /// Returns the pre-projection probability.
    pub fn project_outcome(&mut self, m: &PauliString, phase: f64) -> f64 {
        let ord = m.order() as i64;
        let mut acc = vec![C64::new(0.0, 0.0); self.amps.len()];
        let mut cur = DenseState {
            dims: self.dims.clone(),
            amps: self.amps.clone(),
        };
        for t in 0..ord {
            let lam = phase_to_c64(-phase * t as f64);
            for (o, &a) in acc.iter_mut().zip(cur.amps.iter()) {
                *o += lam * a;
            }
            cur = cur.apply_pauli(m);
        }
        for a in acc.iter_mut() {
            *a /= C64::new(ord as f64, 0.0);
        }
        let p: f64 = acc.iter().map(|a| a.norm_sqr()).sum();
        self.amps = acc;
        self.normalize();
        p
    }

    /// Sample a measurement of `m` with the provided RNG; returns the outcome
    /// phase (fraction of a turn) after projecting the state.
    pub fn measure_sampled<R: Rng>(&mut self, m: &PauliString, rng: &mut R) -> f64 {
        let phases = Self::eigenphases(&self.dims, m);
        let probs: Vec<f64> = phases
            .iter()
            .map(|&f| self.outcome_probability(m, f))
            .collect();
        let total: f64 = probs.iter().sum();
        assert!((total - 1.0).abs() < 1e-8, "probabilities must sum to 1");
        let mut draw = rng.gen::<f64>() * total;
        let mut pick = phases.len() - 1;
        for (i, &p) in probs.iter().enumerate() {
            if draw < p {
                pick = i;
                break;
            }
            draw -= p;
        }
        self.project_outcome(m, phases[pick]);
        phases[pick]
    }
}

pub fn phase_to_c64(turns: f64) -> C64 {
    let a = 2.0 * std::f64::consts::PI * turns;
    C64::new(a.cos(), a.sin())
}

pub fn ratio_to_f64(r: Ratio<i64>) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

/// Dense matrix of a Pauli string, built by applying it to every basis state.
pub fn dense_matrix(reg: &Arc<QuditRegister>, p: &PauliString) -> Vec<Vec<C64>> {
    let dims = reg.dims().to_vec();
    let n = DenseState::total_dim(&dims);
    let mut cols = Vec::with_capacity(n);
    for j in 0..n {
        let out = DenseState::basis(&dims, j).apply_pauli(p);
        cols.push(out.amps);
    }
    // cols[j][i] = <i|P|j>; transpose into row-major.
    let mut mat = vec![vec![C64::new(0.0, 0.0); n]; n];
    for (j, col) in cols.iter().enumerate() {
        for (i, &a) in col.iter().enumerate() {
            mat[i][j] = a;
        }
    }
    mat
}

/// Dense matrix from clock/shift construction, without using `apply_pauli`:
/// an independent route for multiply/commutation oracles.
pub fn dense_matrix_clock_shift(reg: &Arc<QuditRegister>, p: &PauliString) -> Vec<Vec<C64>> {
    fn kron(a: &[Vec<C64>], b: &[Vec<C64>]) -> Vec<Vec<C64>> {
        let (ra, ca) = (a.len(), a[0].len());
        let (rb, cb) = (b.len(), b[0].len());
        let mut out = vec![vec![C64::new(0.0, 0.0); ca * cb]; ra * rb];
        for i in 0..ra {
            for j in 0..ca {
                for k in 0..rb {
                    for l in 0..cb {
                        out[i * rb + k][j * cb + l] = a[i][j] * b[k][l];
                    }
                }
            }
        }
        out
    }
    let mut mat = vec![vec![C64::new(1.0, 0.0)]];
    for site in 0..reg.len() {
        let d = reg.dim(site) as usize;
        // shift X: X|j> = |j+1>, clock Z: Z|j> = ω^j |j>.
        let mut x = vec![vec![C64::new(0.0, 0.0); d]; d];
        for j in 0..d {
            x[(j + 1) % d][j] = C64::new(1.0, 0.0);
        }
        let mut z = vec![vec![C64::new(0.0, 0.0); d]; d];
        for j in 0..d {
            z[j][j] = phase_to_c64(j as f64 / d as f64);
        }
        let mut site_mat = identity_mat(d);
        for _ in 0..p.x_exponent(site) {
            site_mat = matmul(&x, &site_mat);
        }
        for _ in 0..p.z_exponent(site) {
            site_mat = matmul(&site_mat, &z);
        }
        mat = kron(&mat, &site_mat);
    }
    let ph = p.phase_fraction();
    let g = phase_to_c64(ratio_to_f64(ph));
    for row in mat.iter_mut() {
        for v in row.iter_mut() {
            *v *= g;
        }
    }
    mat
}

pub fn identity_mat(n: usize) -> Vec<Vec<C64>> {
    let mut m = vec![vec![C64::new(0.0, 0.0); n]; n];
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = C64::new(1.0, 0.0);
    }
    m
}

pub fn matmul(a: &[Vec<C64>], b: &[Vec<C64>]) -> Vec<Vec<C64>> {
    let n = a.len();
    let m = b[0].len();
    let k = b.len();
    let mut out = vec![vec![C64::new(0.0, 0.0); m]; n];
    for i in 0..n {
        for t in 0..k {
            let av = a[i][t];
            if av.norm_sqr() == 0.0 {
                continue;
            }
            for j in 0..m {
                out[i][j] += av * b[t][j];
            }
        }
    }
    out
}

pub fn mat_close(a: &[Vec<C64>], b: &[Vec<C64>], tol: f64) -> bool {
    a.iter()
        .zip(b.iter())
        .all(|(ra, rb)| ra.iter().zip(rb.iter()).all(|(x, y)| (x - y).norm() < tol))
}
