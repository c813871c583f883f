//! Generalized Pauli operators on registers of qudits with mixed dimensions.
//!
//! A site of dimension `d` carries the clock and shift operators
//! `Z|j> = ω^j |j>` and `X|j> = |j+1 mod d>` with `ω = e^{2πi/d}`, obeying
//! `Z X = ω X Z`. Operators are kept in the normal form `X^x Z^z` per site
//! with a global phase. Phases are tracked as an integer exponent of
//! `e^{2πi/(2L)}` where `L = lcm(dims)`: products of clock/shift operators
//! only ever produce exponents of `ω_L`, but projective measurement of an
//! operator whose square is `-1` (e.g. `XZ` on a qubit) forces quarter
//! phases into the stabilizer group, so the modulus is doubled once.

use crate::error::{Error, Result};
use crate::linalg::{gcd_u64, lcm_u64};
use num::rational::Ratio;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

/// An immutable register of qudits; site `i` has dimension `dims[i] >= 2`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QuditRegister {
    dims: Vec<u32>,
    lcm: u64,
}

impl QuditRegister {
    pub fn new(dims: Vec<u32>) -> Arc<Self> {
        assert!(!dims.is_empty(), "register must have at least one site");
        assert!(dims.iter().all(|&d| d >= 2), "every dimension must be >= 2");
        let lcm = dims.iter().fold(1u64, |acc, &d| lcm_u64(acc, d as u64));
        Arc::new(QuditRegister { dims, lcm })
    }

    /// Register with `n` sites all of dimension `d`.
    pub fn uniform(n: usize, d: u32) -> Arc<Self> {
        Self::new(vec![d; n])
    }

    pub fn len(&self) -> usize {
        self.dims.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dims.is_empty()
    }

    pub fn dim(&self, site: usize) -> u32 {
        self.dims[site]
    }

    pub fn dims(&self) -> &[u32] {
        &self.dims
    }

    /// Least common multiple of all site dimensions (the phase modulus of the
    /// commutator subgroup).
    pub fn phase_lcm(&self) -> u64 {
        self.lcm
    }

    /// Modulus of stored phase exponents: `2 * lcm(dims)`.
    pub fn phase_modulus(&self) -> u64 {
        2 * self.lcm
    }

    /// Total Hilbert-space dimension.
    pub fn total_dimension(&self) -> u128 {
        self.dims.iter().map(|&d| d as u128).product()
    }
}

/// A generalized Pauli operator `e^{2πi·phase/(2L)} · Π_i X_i^{x_i} Z_i^{z_i}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PauliString {
    register: Arc<QuditRegister>,
    xs: Vec<u32>,
    zs: Vec<u32>,
    phase: u64,
}

impl PauliString {
    pub fn identity(register: &Arc<QuditRegister>) -> Self {
        PauliString {
            register: register.clone(),
            xs: vec![0; register.len()],
            zs: vec![0; register.len()],
            phase: 0,
        }
    }

    /// Single-site operator `X^x Z^z` with phase 0.
    pub fn single(register: &Arc<QuditRegister>, site: usize, x: i64, z: i64) -> Self {
        let mut p = Self::identity(register);
        let d = register.dim(site) as i64;
        p.xs[site] = x.rem_euclid(d) as u32;
        p.zs[site] = z.rem_euclid(d) as u32;
        p
    }

    pub fn x_op(register: &Arc<QuditRegister>, site: usize) -> Self {
        Self::single(register, site, 1, 0)
    }

    pub fn z_op(register: &Arc<QuditRegister>, site: usize) -> Self {
        Self::single(register, site, 0, 1)
    }

    /// `Y = X† Z† = X^{d-1} Z^{d-1}` with phase 0 (the product convention, not
    /// the Hermitian qubit Y).
    pub fn y_op(register: &Arc<QuditRegister>, site: usize) -> Self {
        Self::single(register, site, -1, -1)
    }

    /// Build from per-site exponent slices (reduced mod the site dimensions).
    pub fn from_exponents(register: &Arc<QuditRegister>, xs: &[i64], zs: &[i64]) -> Self {
        assert_eq!(xs.len(), register.len());
        assert_eq!(zs.len(), register.len());
        let mut p = Self::identity(register);
        for i in 0..register.len() {
            let d = register.dim(i) as i64;
            p.xs[i] = xs[i].rem_euclid(d) as u32;
            p.zs[i] = zs[i].rem_euclid(d) as u32;
        }
        p
    }

    pub fn register(&self) -> &Arc<QuditRegister> {
        &self.register
    }

    pub fn x_exponent(&self, site: usize) -> u32 {
        self.xs[site]
    }

    pub fn z_exponent(&self, site: usize) -> u32 {
        self.zs[site]
    }

    /// Phase as a reduced fraction of a full turn, in `[0, 1)`.
    pub fn phase_fraction(&self) -> Ratio<i64> {
        reduce_fraction(self.phase as i64, self.register.phase_modulus() as i64)
    }

    /// Raw phase exponent modulo `2L`.
    pub fn phase_exponent(&self) -> u64 {
        self.phase
    }

    /// Replace the phase by `e^{2πi·f}` times the current phase.
    pub fn mul_phase(&self, f: Ratio<i64>) -> Result<Self> {
        let modulus = self.register.phase_modulus() as i64;
        let scaled = f * Ratio::from_integer(modulus);
        if !scaled.is_integer() {
            return Err(Error::InvalidGroup(format!(
                "phase {} has denominator incompatible with register modulus {}",
                f, modulus
            )));
        }
        let mut p = self.clone();
        p.phase = (p.phase as i64 + scaled.to_integer()).rem_euclid(modulus) as u64;
        Ok(p)
    }

    pub fn same_register(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.register, &other.register) || self.register == other.register
    }

    fn check_register(&self, other: &Self) -> Result<()> {
        if self.same_register(other) {
            Ok(())
        } else {
            Err(Error::RegisterMismatch(format!(
                "{:?} vs {:?}",
                self.register.dims(),
                other.register.dims()
            )))
        }
    }

    /// Sites with a non-identity factor.
    pub fn support(&self) -> Vec<usize> {
        (0..self.register.len())
            .filter(|&i| self.xs[i] != 0 || self.zs[i] != 0)
            .collect()
    }

    /// True when all exponents vanish (the phase may still be nonzero).
    pub fn is_identity_exponents(&self) -> bool {
        self.xs.iter().all(|&x| x == 0) && self.zs.iter().all(|&z| z == 0)
    }

    /// True for the exact identity operator (+1 phase).
    pub fn is_identity(&self) -> bool {
        self.is_identity_exponents() && self.phase == 0
    }

    /// Operator product `self · other` in normal form with exact phase.
    ///
    /// Moving `Z^{z_self}` of each site past `X^{x_other}` contributes
    /// `ω_d^{x_other · z_self}` per site.
    pub fn multiply(&self, other: &Self) -> Result<Self> {
        self.check_register(other)?;
        let reg = &self.register;
        let modulus = reg.phase_modulus();
        let mut phase = (self.phase + other.phase) % modulus;
        let mut xs = vec![0u32; reg.len()];
        let mut zs = vec![0u32; reg.len()];
        for i in 0..reg.len() {
            let d = reg.dim(i) as u64;
            let cross = (other.xs[i] as u64 * self.zs[i] as u64) % d;
            phase = (phase + (modulus / d) * cross) % modulus;
            xs[i] = ((self.xs[i] as u64 + other.xs[i] as u64) % d) as u32;
            zs[i] = ((self.zs[i] as u64 + other.zs[i] as u64) % d) as u32;
        }
        Ok(PauliString {
            register: reg.clone(),
            xs,
            zs,
            phase,
        })
    }

    /// `r ∈ [0, 1)` with `self · other = e^{2πi r} · other · self`.
    ///
    /// Per site this is `(x_other · z_self − x_self · z_other) / d`, which
    /// reproduces the defining relation `commutation_phase(Z, X) = 1/d`.
    pub fn commutation_phase(&self, other: &Self) -> Result<Ratio<i64>> {
        self.check_register(other)?;
        let reg = &self.register;
        let l = reg.phase_lcm() as i64;
        let mut num: i64 = 0;
        for i in 0..reg.len() {
            let d = reg.dim(i) as i64;
            let t = other.xs[i] as i64 * self.zs[i] as i64
                - self.xs[i] as i64 * other.zs[i] as i64;
            num += (l / d) * t.rem_euclid(d);
        }
        Ok(reduce_fraction(num.rem_euclid(l), l))
    }

    pub fn commutes_with(&self, other: &Self) -> Result<bool> {
        Ok(self.commutation_phase(other)? == Ratio::from_integer(0))
    }

    /// Exact inverse: `self · inverse() = identity` with phase 0.
    pub fn inverse(&self) -> Self {
        let reg = &self.register;
        let modulus = reg.phase_modulus();
        let mut xs = vec![0u32; reg.len()];
        let mut zs = vec![0u32; reg.len()];
        let mut phase = (modulus - self.phase) % modulus;
        for i in 0..reg.len() {
            let d = reg.dim(i) as u64;
            xs[i] = ((d - self.xs[i] as u64) % d) as u32;
            zs[i] = ((d - self.zs[i] as u64) % d) as u32;
            // self · inv picks up ω_d^{x_inv · z_self}; cancel it up front.
            let cross = (xs[i] as u64 * self.zs[i] as u64) % d;
            phase = (phase + modulus - (modulus / d) * cross % modulus) % modulus;
        }
        PauliString {
            register: reg.clone(),
            xs,
            zs,
            phase,
        }
    }

    /// `self^k` for any integer `k`, with exact phase.
    pub fn power(&self, k: i64) -> Self {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut e = k.unsigned_abs();
        let mut acc = Self::identity(&self.register);
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.multiply(&sq).expect("same register");
            }
            sq = sq.multiply(&sq).expect("same register");
            e >>= 1;
        }
        acc
    }

    /// Order of the exponent part: smallest `k >= 1` with `self^k` having all
    /// exponents zero. Equals `lcm_i d_i / gcd(d_i, x_i, z_i)`. The phase of
    /// `self^order` may be nonzero (e.g. `(XZ)^2 = -I` on a qubit).
    pub fn order(&self) -> u64 {
        let mut ord = 1u64;
        for i in 0..self.register.len() {
            let d = self.register.dim(i) as u64;
            let g = gcd_u64(d, gcd_u64(self.xs[i] as u64, self.zs[i] as u64));
            ord = lcm_u64(ord, d / g);
        }
        ord
    }

    /// Hermitian-normalize: scale by a phase so that `self^order` is exactly
    /// `+I`. Returns an error when no such scaling exists in the phase group.
    pub fn normalized_phase(&self) -> Result<Self> {
        let ord = self.order() as i64;
        let residual = self.power(ord).phase_fraction();
        // Want phase f with ord*f ≡ -residual (mod 1).
        let modulus = self.register.phase_modulus() as i64;
        let target = (-(residual * Ratio::from_integer(modulus)).to_integer()).rem_euclid(modulus);
        // Solve ord * t ≡ target mod modulus.
        let g = gcd_u64(ord as u64, modulus as u64) as i64;
        if target % g != 0 {
            return Err(Error::InvalidGroup(
                "operator cannot be phase-normalized within the register phase group".into(),
            ));
        }
        let (_, inv, _) = crate::linalg::ext_gcd((ord / g) as i128, (modulus / g) as i128);
        let t = ((target / g) as i128 * inv).rem_euclid((modulus / g) as i128) as i64;
        self.mul_phase(reduce_fraction(t, modulus))
    }

    /// Exponent vector embedded in `Z_L^{2n}`: site `i` scaled by `L / d_i`,
    /// X block first then Z block. Used by the group linear algebra.
    pub fn scaled_vector(&self) -> Vec<u64> {
        let reg = &self.register;
        let l = reg.phase_lcm();
        let n = reg.len();
        let mut v = vec![0u64; 2 * n];
        for i in 0..n {
            let s = l / reg.dim(i) as u64;
            v[i] = self.xs[i] as u64 * s % l;
            v[n + i] = self.zs[i] as u64 * s % l;
        }
        v
    }

    /// Inverse of [`scaled_vector`]: build the phase-0 operator with the given
    /// scaled exponent vector.
    pub fn from_scaled_vector(register: &Arc<QuditRegister>, v: &[u64]) -> Self {
        let n = register.len();
        assert_eq!(v.len(), 2 * n);
        let l = register.phase_lcm();
        let mut p = Self::identity(register);
        for i in 0..n {
            let s = l / register.dim(i) as u64;
            debug_assert_eq!(v[i] % s, 0);
            debug_assert_eq!(v[n + i] % s, 0);
            p.xs[i] = ((v[i] / s) % register.dim(i) as u64) as u32;
            p.zs[i] = ((v[n + i] / s) % register.dim(i) as u64) as u32;
        }
        p
    }

    /// Same exponents with phase reset to 0.
    pub fn without_phase(&self) -> Self {
        let mut p = self.clone();
        p.phase = 0;
        p
    }
}

fn reduce_fraction(num: i64, den: i64) -> Ratio<i64> {
    Ratio::new(num.rem_euclid(den), den)
}

impl fmt::Display for PauliString {
    /// `phase_num/phase_den ; site:X^a Z^b , ...` with `I` for empty support.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ph = self.phase_fraction();
        write!(f, "{}/{} ;", ph.numer(), ph.denom())?;
        let support = self.support();
        if support.is_empty() {
            return write!(f, " I");
        }
        let mut first = true;
        for i in support {
            if !first {
                write!(f, " ,")?;
            }
            first = false;
            write!(f, " {}:X^{} Z^{}", i, self.xs[i], self.zs[i])?;
        }
        Ok(())
    }
}

/// Parses the [`fmt::Display`] format back, against a given register.
pub fn parse_pauli(register: &Arc<QuditRegister>, s: &str) -> Result<PauliString> {
    let (phase_part, sites_part) = s
        .split_once(';')
        .ok_or_else(|| Error::Parse(format!("missing ';' in pauli string: {s}")))?;
    let phase_part = phase_part.trim();
    let (pn, pd) = phase_part
        .split_once('/')
        .ok_or_else(|| Error::Parse(format!("bad phase fraction: {phase_part}")))?;
    let pn: i64 = pn
        .trim()
        .parse()
        .map_err(|_| Error::Parse(format!("bad phase numerator: {pn}")))?;
    let pd: i64 = pd
        .trim()
        .parse()
        .map_err(|_| Error::Parse(format!("bad phase denominator: {pd}")))?;
    if pd <= 0 {
        return Err(Error::Parse("phase denominator must be positive".into()));
    }
    let mut p = PauliString::identity(register);
    let sites_part = sites_part.trim();
    if !(sites_part.is_empty() || sites_part == "I") {
        for term in sites_part.split(',') {
            let term = term.trim();
            let (site, ops) = term
                .split_once(':')
                .ok_or_else(|| Error::Parse(format!("bad site term: {term}")))?;
            let site: usize = site
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad site index: {site}")))?;
            if site >= register.len() {
                return Err(Error::Parse(format!("site {site} out of range")));
            }
            let ops = ops.trim();
            let (xpart, zpart) = ops
                .split_once("Z^")
                .ok_or_else(|| Error::Parse(format!("bad operator term: {ops}")))?;
            let x: i64 = xpart
                .trim()
                .strip_prefix("X^")
                .ok_or_else(|| Error::Parse(format!("bad operator term: {ops}")))?
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad X exponent in {ops}")))?;
            let z: i64 = zpart
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad Z exponent in {ops}")))?;
            let d = register.dim(site) as i64;
            p.xs[site] = x.rem_euclid(d) as u32;
            p.zs[site] = z.rem_euclid(d) as u32;
        }
    }
    p.mul_phase(Ratio::new(pn, pd))
}

impl FromStr for PauliString {
    type Err = Error;
    /// Parsing without a register is not supported; use [`parse_pauli`].
    fn from_str(_: &str) -> Result<Self> {
        Err(Error::Parse(
            "PauliString parsing requires a register; use parse_pauli".into(),
        ))
    }
}
