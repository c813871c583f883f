//! Stabilizer groups over mixed-dimension qudit registers.
//!
//! A group is a set of mutually commuting generalized Paulis with exact
//! phases, acting on the maximally mixed state of its non-stabilized sector.
//! Measurement follows the gcd-pivot update rule: the generators are
//! recombined so a single generator carries all failure-to-commute with the
//! measured operator, that generator is traded for the measured operator with
//! a sampled outcome, and the power of it that still commutes is retained
//! (for composite dimensions this retained power is not redundant).
//!
//! Generators are kept in Howell canonical form over `Z_L` (exponents of site
//! `i` scaled by `L / d_i`), which makes group equality a vector comparison
//! and keeps the generating set reduced after every measurement.

use crate::error::{Error, Result};
use crate::linalg::{ext_gcd, gcd_u64, HowellForm};
use crate::pauli::{PauliString, QuditRegister};
use num::rational::Ratio;
use num::Zero;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;
use std::fmt;
use std::sync::Arc;

/// Result of measuring a generalized Pauli operator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MeasurementOutcome {
    /// Observed eigenvalue `e^{2πi·phase}` as a reduced fraction in `[0, 1)`.
    pub phase: Ratio<i64>,
    /// True when the pre-measurement group forced the outcome.
    pub determined: bool,
    /// Number of outcomes the sampler chose among.
    pub num_outcomes: u64,
    /// Set when the consistent outcome set was a strict coset of the full
    /// eigenvalue set of the operator (possible for composite dimensions in
    /// degenerate groups); flagged so reports can surface it.
    pub coset: bool,
}

/// A stabilizer group with a seed-carrying RNG for outcome sampling.
#[derive(Debug, Clone)]
pub struct StabilizerGroup {
    register: Arc<QuditRegister>,
    generators: Vec<PauliString>,
    rng: ChaCha12Rng,
}

impl PartialEq for StabilizerGroup {
    fn eq(&self, other: &Self) -> bool {
        self.register == other.register && self.generators == other.generators
    }
}
impl Eq for StabilizerGroup {}

impl StabilizerGroup {
    /// The trivial group (maximally mixed state) on a register.
    pub fn new(register: &Arc<QuditRegister>, seed: u64) -> Self {
        StabilizerGroup {
            register: register.clone(),
            generators: Vec::new(),
            rng: ChaCha12Rng::seed_from_u64(seed),
        }
    }

    /// Group generated by `gens`; validates commutativity and consistency.
    pub fn from_generators(
        register: &Arc<QuditRegister>,
        gens: Vec<PauliString>,
        seed: u64,
    ) -> Result<Self> {
        for (i, a) in gens.iter().enumerate() {
            if a.is_identity_exponents() {
                if a.phase_exponent() != 0 {
                    return Err(Error::InvalidGroup(
                        "generator is a nontrivial phase times the identity".into(),
                    ));
                }
                continue;
            }
            for b in gens.iter().skip(i + 1) {
                if !a.commutes_with(b)? {
                    return Err(Error::InvalidGroup(format!(
                        "generators do not commute: {a} vs {b}"
                    )));
                }
            }
        }
        let generators = canonicalize(register, &gens)?;
        Ok(StabilizerGroup {
            register: register.clone(),
            generators,
            rng: ChaCha12Rng::seed_from_u64(seed),
        })
    }

    pub fn register(&self) -> &Arc<QuditRegister> {
        &self.register
    }

    /// Canonical generating set (Howell form, fixed site ordering).
    pub fn generators(&self) -> &[PauliString] {
        &self.generators
    }

    /// Number of elements of the group (phases counted once per element).
    pub fn order(&self) -> u128 {
        self.howell().span_size()
    }

    fn howell(&self) -> HowellForm {
        let l = self.register.phase_lcm();
        let vecs: Vec<Vec<u64>> = self.generators.iter().map(|g| g.scaled_vector()).collect();
        HowellForm::from_generators(&vecs, l, 2 * self.register.len())
    }

    /// `(Π d_i) / |group|`; errors when the division is not exact.
    pub fn code_dimension(&self) -> Result<u128> {
        let total = self.register.total_dimension();
        let ord = self.order();
        if total % ord != 0 {
            return Err(Error::InvalidGroup(format!(
                "group order {ord} does not divide the Hilbert dimension {total}"
            )));
        }
        Ok(total / ord)
    }

    /// Unique phase `r` with `e^{2πi r}·P` in the group, or `None`.
    pub fn contains(&self, p: &PauliString) -> Option<Ratio<i64>> {
        let howell = self.howell();
        let combo = howell.express(&p.scaled_vector())?;
        let member = self.product_of_generators(&combo);
        debug_assert_eq!(member.without_phase(), p.without_phase());
        let r = member.phase_fraction() - p.phase_fraction();
        Some(positive_fraction(r))
    }

    /// Canonical coset representative of `p` modulo the group: the exponent
    /// vector is Howell-reduced and the phase adjusted by the group element
    /// divided out.
    pub fn reduce_modulo(&self, p: &PauliString) -> PauliString {
        let howell = self.howell();
        let (_, coeffs) = howell.reduce_vector(&p.scaled_vector());
        let l = self.register.phase_lcm();
        let ngen = self.generators.len();
        let mut combo = vec![0u64; ngen];
        for (r, &c) in coeffs.iter().enumerate() {
            for g in 0..ngen {
                combo[g] =
                    (combo[g] + (c as u128 * howell.combos[r][g] as u128 % l as u128) as u64) % l;
            }
        }
        let member = self.product_of_generators(&combo);
        p.multiply(&member.inverse()).expect("same register")
    }

    fn product_of_generators(&self, combo: &[u64]) -> PauliString {
        let mut acc = PauliString::identity(&self.register);
        for (g, &c) in self.generators.iter().zip(combo.iter()) {
            if c != 0 {
                acc = acc.multiply(&g.power(c as i64)).expect("same register");
            }
        }
        acc
    }

    /// Measure `m`, returning the sampled outcome and the post-measurement
    /// group. Deterministic given the group's RNG state.
    pub fn measure(&self, m: &PauliString) -> Result<(MeasurementOutcome, StabilizerGroup)> {
        if m.is_identity_exponents() {
            return Err(Error::IdentityMeasurement);
        }
        if !m.same_register(&self.register_probe()) {
            return Err(Error::RegisterMismatch(
                "measured operator lives on a different register".into(),
            ));
        }
        let l = self.register.phase_lcm() as i64;
        // Commutation defects of every generator with M, in units of 1/L.
        let mut defects: Vec<i64> = Vec::with_capacity(self.generators.len());
        for g in &self.generators {
            let r = g.commutation_phase(m)?;
            let s = (r * Ratio::from_integer(l)).to_integer();
            defects.push(s.rem_euclid(l));
        }
        let g0 = defects.iter().fold(l as u64, |acc, &s| {
            if s == 0 {
                acc
            } else {
                gcd_u64(acc, s as u64)
            }
        }) as i64;
        let k_free = (l / g0) as u64;

        // Split generators into a commuting set plus one pivot carrying the
        // full defect gcd.
        let mut commuting: Vec<PauliString> = Vec::new();
        let mut rng = self.rng.clone();
        if k_free > 1 {
            let mut pivot: Option<(PauliString, i64)> = None;
            let mut pending: Vec<(PauliString, i64)> = Vec::new();
            for (gen, &s) in self.generators.iter().zip(defects.iter()) {
                if s == 0 {
                    commuting.push(gen.clone());
                    continue;
                }
                pivot = Some(match pivot {
                    None => (gen.clone(), s),
                    Some((h, sh)) => {
                        let (g, a, b) = ext_gcd(sh as i128, s as i128);
                        let combined = h
                            .power(a.rem_euclid(l as i128) as i64)
                            .multiply(&gen.power(b.rem_euclid(l as i128) as i64))?;
                        pending.push((gen.clone(), s));
                        pending.push((h, sh));
                        (combined, (g as i64).rem_euclid(l))
                    }
                });
            }
            let (h, sh) = pivot.expect("k_free > 1 implies a defect");
            let sh = sh.rem_euclid(l);
            debug_assert_eq!(gcd_u64(sh as u64, l as u64) as i64, g0);
            // t·sh ≡ s (mod L) is solved by t = (s/g0)·inv(sh/g0) mod (L/g0).
            let (_, inv, _) = ext_gcd((sh / g0) as i128, (l / g0) as i128);
            let inv = inv.rem_euclid((l / g0) as i128) as i64;
            // Strip the pivot from every pending generator.
            for (gen, s) in pending {
                let t = ((s / g0) * inv).rem_euclid(l / g0);
                let fixed = gen.multiply(&h.power(-t))?;
                debug_assert!(fixed.commutes_with(m)?);
                if !fixed.is_identity_exponents() {
                    commuting.push(fixed);
                } else if fixed.phase_exponent() != 0 {
                    return Err(Error::CorruptedState(
                        "phase times identity derived during elimination".into(),
                    ));
                }
            }
            // The smallest commuting power of the pivot stays in the group.
            let retained = h.power(k_free as i64);
            debug_assert!(retained.commutes_with(m)?);
            if !retained.is_identity_exponents() {
                commuting.push(retained);
            } else if retained.phase_exponent() != 0 {
                return Err(Error::CorruptedState(
                    "phase times identity derived from retained pivot power".into(),
                ));
            }
        } else {
            commuting = self.generators.clone();
        }

        // Smallest k with M^k in the commuting span (up to phase): it fixes
        // the outcome coset. k = order(M) always succeeds.
        let commuting_group = StabilizerGroup {
            register: self.register.clone(),
            generators: canonicalize(&self.register, &commuting)?,
            rng: rng.clone(),
        };
        let ord = m.order();
        let mut k_det = ord;
        let mut forced_phase = Ratio::zero();
        for k in 1..=ord {
            if ord % k != 0 || k % k_free != 0 {
                continue;
            }
            if let Some(r) = commuting_group.contains(&m.power(k as i64)) {
                k_det = k;
                forced_phase = r;
                break;
            }
        }

        let j = if k_det == 1 { 0 } else { rng.gen_range(0..k_det) };
        // λ^{k_det} = e^{-2πi·forced_phase}; sample the j-th root.
        let lambda = positive_fraction(
            (Ratio::from_integer(j as i64) - forced_phase) / Ratio::from_integer(k_det as i64),
        );
        let outcome = MeasurementOutcome {
            phase: lambda,
            determined: k_det == 1,
            num_outcomes: k_det,
            coset: k_det != ord,
        };

        let new_group = if k_det == 1 {
            StabilizerGroup {
                register: self.register.clone(),
                generators: self.generators.clone(),
                rng,
            }
        } else {
            let stabilizer = m.mul_phase(-lambda).map_err(|_| {
                Error::CorruptedState(format!(
                    "sampled outcome {lambda} is not representable in the phase group"
                ))
            })?;
            debug_assert!(stabilizer.power(stabilizer.order() as i64).is_identity());
            let mut gens = commuting_group.generators.clone();
            gens.push(stabilizer);
            StabilizerGroup {
                register: self.register.clone(),
                generators: canonicalize(&self.register, &gens)?,
                rng,
            }
        };
        Ok((outcome, new_group))
    }

    fn register_probe(&self) -> PauliString {
        PauliString::identity(&self.register)
    }

    /// Canonical form: same group, generators in the unique Howell
    /// presentation. Groups built by this module are already canonical; this
    /// re-canonicalizes defensively and is idempotent.
    pub fn canonical_form(&self) -> Result<Self> {
        Ok(StabilizerGroup {
            register: self.register.clone(),
            generators: canonicalize(&self.register, &self.generators)?,
            rng: self.rng.clone(),
        })
    }

    /// Group dump: register header, then one canonical generator per line.
    pub fn dump(&self) -> String {
        let mut out = format!(
            "register {}\n",
            self.register
                .dims()
                .iter()
                .map(|d| d.to_string())
                .collect::<Vec<_>>()
                .join(",")
        );
        for g in &self.generators {
            out.push_str(&g.to_string());
            out.push('\n');
        }
        out
    }
}

impl fmt::Display for StabilizerGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.dump())
    }
}

fn positive_fraction(r: Ratio<i64>) -> Ratio<i64> {
    let mut r = r;
    while r < Ratio::zero() {
        r += Ratio::from_integer(1);
    }
    while r >= Ratio::from_integer(1) {
        r -= Ratio::from_integer(1);
    }
    r
}

/// Howell-canonical generating set with exact phases.
///
/// Every canonical generator is rebuilt as a product of the input generators
/// (phases included), then the closure relations `C_r^{L/h_r} = (later rows)`
/// are verified as exact operator identities; together with uniqueness of
/// reduced Howell coefficients this rules out a hidden `phase · identity`.
fn canonicalize(register: &Arc<QuditRegister>, gens: &[PauliString]) -> Result<Vec<PauliString>> {
    let l = register.phase_lcm();
    for g in gens {
        if g.is_identity_exponents() && g.phase_exponent() != 0 {
            return Err(Error::CorruptedState(
                "generating set contains a nontrivial phase times the identity".into(),
            ));
        }
    }
    let kept: Vec<&PauliString> = gens.iter().filter(|g| !g.is_identity_exponents()).collect();
    let vecs: Vec<Vec<u64>> = kept.iter().map(|g| g.scaled_vector()).collect();
    let howell = HowellForm::from_generators(&vecs, l, 2 * register.len());
    let mut canonical = Vec::with_capacity(howell.rows.len());
    for combo in &howell.combos {
        let mut acc = PauliString::identity(register);
        for (g, &c) in kept.iter().zip(combo.iter()) {
            if c != 0 {
                acc = acc.multiply(&g.power(c as i64)).expect("same register");
            }
        }
        canonical.push(acc);
    }
    // Consistency of phases across the presentation.
    for (r, gen) in canonical.iter().enumerate() {
        let h = howell.rows[r][howell.pivots[r]];
        let m = (l / h) as i64;
        let power = gen.power(m);
        let (residual, coeffs) = howell.reduce_vector(&power.scaled_vector());
        if residual.iter().any(|&x| x != 0) {
            return Err(Error::CorruptedState(
                "Howell closure failed to absorb a generator power".into(),
            ));
        }
        let mut acc = PauliString::identity(register);
        for (s, &c) in coeffs.iter().enumerate() {
            if c != 0 {
                acc = acc
                    .multiply(&canonical[s].power(c as i64))
                    .expect("same register");
            }
        }
        if acc != power {
            return Err(Error::CorruptedState(format!(
                "phase-inconsistent presentation: {power} vs {acc}"
            )));
        }
    }
    Ok(canonical)
}
