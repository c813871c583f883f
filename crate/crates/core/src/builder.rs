//! Materialize Floquet codes as concrete check schedules: on-site operator
//! representations from an anyon theory and an order-two automorphism, bond
//! check tables, persistent plaquette stabilizers, logical string operators,
//! and the period-six boundary schedule of the cylinder patch.
//!
//! The on-site Hilbert space is the group algebra of `TO₀/Inv(σ)` factored
//! into cyclic qudits; `T^a_x` shifts by the class of `a`, `T^a_z` is the
//! diagonal character `|[g]⟩ ↦ e^{2πi·θ_{a, ḡσ(g)}}|[g]⟩`, and
//! `T^a_y = (T^a_x)†(T^a_z)†` closes the gauge constraint.

use crate::anyon::{
    invariant_subgroup, minimal_check_set, quotient_group, supplemental_flux_set, Anyon,
    AnyonAutomorphism, AnyonTheory, Frac, QuotientGroup,
};
use crate::cover::{round_dimer_cover, RoundLabel};
use crate::error::{Error, Result};
use crate::lattice::{
    FluxConfig, HoneycombLattice, LatticeKind, Orientation, PlaquetteKind, Sublattice,
};
use crate::linalg::HowellForm;
use crate::pauli::{PauliString, QuditRegister};
use num::Zero;
use serde::{Deserialize, Serialize};
use std::sync::Arc;

/// On-site representation of the twist-defect operator algebra.
#[derive(Debug, Clone)]
pub struct OnsiteRep {
    pub theory: AnyonTheory,
    pub sigma: AnyonAutomorphism,
    pub quotient: QuotientGroup,
    /// One qudit per cyclic factor of the quotient.
    pub site_dims: Vec<u32>,
    site_register: Arc<QuditRegister>,
}

impl OnsiteRep {
    pub fn build(theory: &AnyonTheory, sigma: &AnyonAutomorphism) -> Result<Self> {
        if !crate::anyon::is_automorphism(theory, sigma) {
            return Err(Error::AnyonTheory(
                "σ is not an automorphism of the theory".into(),
            ));
        }
        if sigma.order_on(theory) > 2 {
            return Err(Error::AnyonTheory(
                "the parton construction implements order-two automorphisms only".into(),
            ));
        }
        let inv = invariant_subgroup(theory, sigma);
        let quotient = quotient_group(theory, &inv);
        if quotient.orders.is_empty() {
            return Err(Error::AnyonTheory(
                "quotient is trivial: no on-site degrees of freedom".into(),
            ));
        }
        let site_dims: Vec<u32> = quotient.orders.iter().map(|&n| n as u32).collect();
        let site_register = QuditRegister::new(site_dims.clone());
        let rep = OnsiteRep {
            theory: theory.clone(),
            sigma: sigma.clone(),
            quotient,
            site_dims,
            site_register,
        };
        // Integrality of every generator's diagonal character.
        for a in rep.theory.generators() {
            rep.t_z(&a)?;
        }
        Ok(rep)
    }

    /// Hilbert-space dimension of one site.
    pub fn dimension(&self) -> u128 {
        self.quotient.order
    }

    pub fn site_register(&self) -> &Arc<QuditRegister> {
        &self.site_register
    }

    /// Shift by the class of `a`: a monomial in the per-factor X operators.
    pub fn t_x(&self, a: &Anyon) -> PauliString {
        let class = self.quotient.class_of(a);
        let zeros = vec![0i64; self.site_dims.len()];
        PauliString::from_exponents(&self.site_register, &class, &zeros)
    }

    /// Diagonal character `|[g]⟩ ↦ e^{2πi·θ_{a, ḡσ(g)}}|[g]⟩` as a monomial in
    /// the per-factor Z operators (exponents solved per factor).
    pub fn t_z(&self, a: &Anyon) -> Result<PauliString> {
        let k = self.site_dims.len();
        let mut z = vec![0i64; k];
        for f in 0..k {
            let rep = &self.quotient.representatives[f];
            let moved = self
                .theory
                .fuse(&self.theory.conjugate(rep), &self.sigma.apply(&self.theory, rep));
            let val = self.theory.braiding(a, &moved);
            let scaled = val * Frac::from_integer(self.site_dims[f] as i64);
            if !scaled.is_integer() {
                return Err(Error::AnyonTheory(format!(
                    "diagonal character is not integral on factor {f}: {val}"
                )));
            }
            z[f] = scaled.to_integer().rem_euclid(self.site_dims[f] as i64);
        }
        let zeros = vec![0i64; k];
        Ok(PauliString::from_exponents(&self.site_register, &zeros, &z))
    }

    /// `T^a_y = (T^a_x)† (T^a_z)†` (the gauge constraint `T_x T_y T_z = 1`).
    pub fn t_y(&self, a: &Anyon) -> Result<PauliString> {
        let tx = self.t_x(a);
        let tz = self.t_z(a)?;
        tx.inverse().multiply(&tz.inverse())
    }

    pub fn t_op(&self, a: &Anyon, leg: Orientation) -> Result<PauliString> {
        match leg {
            Orientation::X => Ok(self.t_x(a)),
            Orientation::Y => self.t_y(a),
            Orientation::Z => self.t_z(a),
            Orientation::Arc => Err(Error::Schedule("arc bonds carry no leg operator".into())),
        }
    }

    /// On-site representation of the qubit honeycomb code: two Laughlin-1/2
    /// layers with the layer swap.
    pub fn qubit_hfc() -> Self {
        let theory = AnyonTheory::laughlin_bilayer(2);
        let sigma = AnyonAutomorphism::swap(2);
        Self::build(&theory, &sigma).expect("qubit HFC rep is valid")
    }

    pub fn is_qubit(&self) -> bool {
        self.site_dims == vec![2]
    }
}

/// An on-site rep embedded on a lattice: the full register has one block of
/// site qudits per lattice site, site-major.
#[derive(Debug, Clone)]
pub struct LatticeModel {
    pub lattice: Arc<HoneycombLattice>,
    pub rep: OnsiteRep,
    pub register: Arc<QuditRegister>,
}

impl LatticeModel {
    pub fn new(lattice: Arc<HoneycombLattice>, rep: OnsiteRep) -> Self {
        let per_site = rep.site_dims.clone();
        let mut dims = Vec::with_capacity(lattice.num_sites() * per_site.len());
        for _ in 0..lattice.num_sites() {
            dims.extend(per_site.iter().cloned());
        }
        let register = QuditRegister::new(dims);
        LatticeModel {
            lattice,
            rep,
            register,
        }
    }

    /// Embed a single-site operator at a lattice site.
    pub fn site_op(&self, site: usize, op: &PauliString) -> PauliString {
        let k = self.rep.site_dims.len();
        let n = self.register.len();
        let mut xs = vec![0i64; n];
        let mut zs = vec![0i64; n];
        for f in 0..k {
            xs[site * k + f] = op.x_exponent(f) as i64;
            zs[site * k + f] = op.z_exponent(f) as i64;
        }
        PauliString::from_exponents(&self.register, &xs, &zs)
            .mul_phase(op.phase_fraction())
            .expect("phase moduli agree")
    }

    pub fn t_at(&self, site: usize, a: &Anyon, leg: Orientation) -> Result<PauliString> {
        Ok(self.site_op(site, &self.rep.t_op(a, leg)?))
    }

    /// Check operator `T^a_{i,α} T^a_{j,α}` on a lattice bond, phase-normalized
    /// so its order-th power is exactly +1.
    pub fn bond_check(&self, a: &Anyon, bond: usize) -> Result<PauliString> {
        let b = &self.lattice.bonds()[bond];
        if b.orientation == Orientation::Arc {
            return Err(Error::Schedule(
                "arc bonds are measured through their path strings".into(),
            ));
        }
        let ta = self.t_at(b.a, a, b.orientation)?;
        let tb = self.t_at(b.b, a, b.orientation)?;
        ta.multiply(&tb)?.normalized_phase()
    }

    /// Persistent plaquette stabilizer: the product of the six `a`-checks
    /// around the hexagon. The adjacent leg factors merge through the gauge
    /// constraint into one radial-leg `T^{ā}` per site, so the operator
    /// depends only on the class `[a]`, commutes with every round, and is
    /// manifestly generated by the measured checks.
    pub fn plaquette_stabilizer(&self, plaquette: usize, a: &Anyon) -> Result<PauliString> {
        let p = &self.lattice.plaquettes()[plaquette];
        if p.kind != PlaquetteKind::Hexagon {
            return Err(Error::Schedule(
                "persistent stabilizers live on hexagons".into(),
            ));
        }
        let mut acc = PauliString::identity(&self.register);
        for &bi in &p.bonds {
            acc = acc.multiply(&self.bond_check(a, bi)?)?;
        }
        acc.normalized_phase()
    }

    /// Flux string through a non-contractible cycle: the product of the bond
    /// checks along a closed zig-zag walk winding the cycle. Each visited
    /// site carries two leg factors which merge into its third leg, so the
    /// string commutes with every round's checks (a persistent logical).
    pub fn flux_string(&self, a: &Anyon, cycle: (i64, i64)) -> Result<PauliString> {
        let walk = closed_walk_bonds(&self.lattice, cycle)?;
        let mut acc = PauliString::identity(&self.register);
        for &bi in &walk {
            acc = acc.multiply(&self.bond_check(a, bi)?)?;
        }
        acc.normalized_phase()
    }

    /// `L₁(a)`: anyon string along a curve through G and B plaquettes; each
    /// crossed bond contributes half of its check (the factor at the
    /// A-sublattice endpoint, on the bond's leg).
    pub fn logical_l1(&self, a: &Anyon, cycle: (i64, i64)) -> Result<PauliString> {
        let crossings = winding_curve(&self.lattice, cycle)?;
        let mut acc = PauliString::identity(&self.register);
        for c in &crossings {
            let bond = &self.lattice.bonds()[c.bond];
            acc = acc.multiply(&self.t_at(bond.a, a, bond.orientation)?)?;
        }
        Ok(acc)
    }

    /// `L₂(a)`: along a closed chain of R bonds; each R bond of leg α₁ carries
    /// `T^a_{i,α₂} T^a_{j,α₃}` with α₂ = next(α₁) on the A end and
    /// α₃ = prev(α₁) on the B end. The chain is chosen (deterministically)
    /// so that the crossing with the dual `L₁` string is a single positive
    /// intersection and the crossing with the same-class `L₁` vanishes.
    pub fn logical_l2(&self, a: &Anyon, cycle: (i64, i64)) -> Result<PauliString> {
        let (path, chirality, conjugate) = self.l2_path(cycle)?;
        let anyon = if conjugate {
            self.rep.theory.conjugate(a)
        } else {
            a.clone()
        };
        self.l2_from_path(&anyon, &path, chirality)
    }

    fn l2_from_path(
        &self,
        a: &Anyon,
        path: &[(usize, usize)],
        chirality: bool,
    ) -> Result<PauliString> {
        let mut acc = PauliString::identity(&self.register);
        for &(bi, entry) in path {
            let bond = &self.lattice.bonds()[bi];
            let exit = if bond.a == entry { bond.b } else { bond.a };
            let (next, prev) = leg_partners(bond.orientation);
            let (entry_leg, exit_leg) = if chirality { (next, prev) } else { (prev, next) };
            acc = acc.multiply(&self.t_at(entry, a, entry_leg)?)?;
            acc = acc.multiply(&self.t_at(exit, a, exit_leg)?)?;
        }
        Ok(acc)
    }

    /// Find an R-bond chain for the requested cycle whose string algebra
    /// against the L₁ templates has unit intersection. Returns the oriented
    /// chain, the leg chirality, and whether the anyon label must be
    /// conjugated (negative crossing).
    fn l2_path(&self, cycle: (i64, i64)) -> Result<(Vec<(usize, usize)>, bool, bool)> {
        let dual = match cycle {
            (1, 0) => (0, 1),
            (0, 1) => (1, 0),
            _ => {
                return Err(Error::Geometry(format!(
                    "unsupported cycle {:?} for L₂",
                    cycle
                )))
            }
        };
        // Probe pair with nonzero cross statistics.
        let theory = &self.rep.theory;
        let gens = theory.generators();
        let probe = gens
            .iter()
            .flat_map(|x| gens.iter().map(move |y| (x.clone(), y.clone())))
            .find(|(x, y)| self.cross_statistics(x, y) != Frac::zero())
            .ok_or_else(|| Error::AnyonTheory("degenerate cross statistics".into()))?;
        let w = self.cross_statistics(&probe.0, &probe.1);
        let l1_dual = self.logical_l1(&probe.0, dual)?;
        let l1_same = self.logical_l1(&probe.0, cycle)?;
        for path in r_bond_cycles(&self.lattice, cycle, 512)? {
            for chirality in [true, false] {
                let cand = self.l2_from_path(&probe.1, &path, chirality)?;
                let with_dual = l1_dual.commutation_phase(&cand)?;
                let with_same = l1_same.commutation_phase(&cand)?;
                if with_same != Frac::zero() {
                    continue;
                }
                if with_dual == w {
                    return Ok((path, chirality, false));
                }
                if (w + with_dual).is_integer() && with_dual != Frac::zero() {
                    return Ok((path, chirality, true));
                }
            }
        }
        Err(Error::Geometry(format!(
            "no R-bond chain with unit crossing for cycle {:?}",
            cycle
        )))
    }

    fn cross_statistics(&self, a: &Anyon, b: &Anyon) -> Frac {
        let theory = &self.rep.theory;
        let moved = theory.fuse(&theory.conjugate(b), &self.rep.sigma.apply(theory, b));
        theory.braiding(a, &moved)
    }
}

fn leg_partners(leg: Orientation) -> (Orientation, Orientation) {
    match leg {
        Orientation::X => (Orientation::Y, Orientation::Z),
        Orientation::Y => (Orientation::Z, Orientation::X),
        Orientation::Z => (Orientation::X, Orientation::Y),
        Orientation::Arc => unreachable!(),
    }
}

/// One crossing of a transversal curve: the crossed bond.
struct Crossing {
    bond: usize,
}

/// A closed curve through G and B plaquettes with the requested winding,
/// listed as the sequence of crossed (R-colored) bonds. Curves are built from
/// fixed 4-step motifs starting at the G plaquette (1,0):
/// winding (1,0): steps (+1,0),(0,+1),(+1,0),(+1,−1);
/// winding (0,1): steps (+1,0),(0,+1),(−1,+1),(0,+1).
fn winding_curve(lat: &HoneycombLattice, cycle: (i64, i64)) -> Result<Vec<Crossing>> {
    let (l1, l2) = match lat.kind {
        LatticeKind::Torus { l1, l2 } => (l1, l2),
        _ => {
            return Err(Error::Geometry(
                "winding curves are defined on torus lattices".into(),
            ))
        }
    };
    let (motif, reps): (&[(i64, i64)], i64) = match cycle {
        (1, 0) => (&[(1, 0), (0, 1), (1, 0), (1, -1)], l1 / 3),
        (0, 1) => (&[(1, 0), (0, 1), (-1, 1), (0, 1)], l2 / 3),
        _ => {
            return Err(Error::Geometry(format!(
                "unsupported winding class {:?} (templates cover (1,0) and (0,1))",
                cycle
            )))
        }
    };
    let mut cell = (1i64, 0i64);
    let mut crossings = Vec::new();
    for _ in 0..reps {
        for &(di, dj) in motif {
            let bond = step_crossed_bond(lat, cell, (di, dj))?;
            crossings.push(Crossing { bond });
            cell = (cell.0 + di, cell.1 + dj);
        }
    }
    Ok(crossings)
}

/// The bond shared by hexagons `(i,j)` and `(i+di, j+dj)`.
fn step_crossed_bond(lat: &HoneycombLattice, cell: (i64, i64), step: (i64, i64)) -> Result<usize> {
    let (i, j) = cell;
    let (a_site, b_site) = match step {
        (1, 0) => (
            lat.site(Sublattice::A, i + 1, j),
            lat.site(Sublattice::B, i + 1, j),
        ),
        (-1, 0) => (lat.site(Sublattice::A, i, j), lat.site(Sublattice::B, i, j)),
        (0, 1) => (
            lat.site(Sublattice::A, i, j + 1),
            lat.site(Sublattice::B, i + 1, j),
        ),
        (0, -1) => (
            lat.site(Sublattice::A, i, j),
            lat.site(Sublattice::B, i + 1, j - 1),
        ),
        (1, -1) => (
            lat.site(Sublattice::A, i + 1, j),
            lat.site(Sublattice::B, i + 1, j - 1),
        ),
        (-1, 1) => (
            lat.site(Sublattice::A, i, j + 1),
            lat.site(Sublattice::B, i, j),
        ),
        _ => return Err(Error::Geometry(format!("non-adjacent step {:?}", step))),
    };
    lat.bond_between(a_site, b_site)
}

/// Closed chains of R bonds realizing the requested winding, found by a
/// deterministic depth-first search over (R bond, hop) alternations; up to
/// `limit` chains in search order.
fn r_bond_cycles(
    lat: &HoneycombLattice,
    cycle: (i64, i64),
    limit: usize,
) -> Result<Vec<Vec<(usize, usize)>>> {
    let (l1, l2) = match lat.kind {
        LatticeKind::Torus { l1, l2 } => (l1, l2),
        _ => {
            return Err(Error::Geometry(
                "R-bond cycles are defined on torus lattices".into(),
            ))
        }
    };
    let target = (cycle.0 * l1, cycle.1 * l2);
    let r_bond_at: Vec<Option<usize>> = {
        let mut v = vec![None; lat.num_sites()];
        for (bi, b) in lat.bonds().iter().enumerate() {
            if b.color == 0 && b.orientation != Orientation::Arc {
                v[b.a] = Some(bi);
                v[b.b] = Some(bi);
            }
        }
        v
    };
    let start_bonds: Vec<usize> = lat
        .bonds()
        .iter()
        .enumerate()
        .filter(|(_, b)| b.color == 0 && b.orientation != Orientation::Arc)
        .map(|(i, _)| i)
        .collect();
    if start_bonds.is_empty() {
        return Err(Error::Geometry("lattice has no R bonds".into()));
    }
    struct Dfs<'a> {
        lat: &'a HoneycombLattice,
        r_bond_at: &'a [Option<usize>],
        target: (i64, i64),
        start_bond: usize,
        start_site: usize,
        max_depth: usize,
        limit: usize,
        found: Vec<Vec<(usize, usize)>>,
    }
    impl<'a> Dfs<'a> {
        fn run(&mut self, site: usize, disp: (i64, i64), used: &mut Vec<(usize, usize)>) {
            if self.found.len() >= self.limit || used.len() > self.max_depth {
                return;
            }
            let mut hops: Vec<usize> = self
                .lat
                .bonds_at(site)
                .into_iter()
                .filter(|&bi| {
                    let b = &self.lat.bonds()[bi];
                    b.color != 0 && b.orientation != Orientation::Arc
                })
                .collect();
            hops.sort_unstable();
            for hop in hops {
                if self.found.len() >= self.limit {
                    return;
                }
                let hb = &self.lat.bonds()[hop];
                let (next_site, hop_disp) = if hb.a == site {
                    (hb.b, hb.displacement)
                } else {
                    (hb.a, (-hb.displacement.0, -hb.displacement.1))
                };
                let rb = match self.r_bond_at[next_site] {
                    Some(rb) => rb,
                    None => continue,
                };
                if rb == self.start_bond {
                    // Closing: the hop lands on the entry site of the initial
                    // traversal with the target displacement (the start
                    // bond's displacement is already counted).
                    let closed = (disp.0 + hop_disp.0, disp.1 + hop_disp.1);
                    if next_site == self.start_site && closed == self.target && used.len() > 1 {
                        self.found.push(used.clone());
                    }
                    continue;
                }
                if used.iter().any(|&(u, _)| u == rb) {
                    continue;
                }
                let b = &self.lat.bonds()[rb];
                let (exit_site, r_disp) = if b.a == next_site {
                    (b.b, b.displacement)
                } else {
                    (b.a, (-b.displacement.0, -b.displacement.1))
                };
                let disp2 = (
                    disp.0 + hop_disp.0 + r_disp.0,
                    disp.1 + hop_disp.1 + r_disp.1,
                );
                used.push((rb, next_site));
                self.run(exit_site, disp2, used);
                used.pop();
            }
        }
    }
    let mut all = Vec::new();
    for start_bond in start_bonds {
        if all.len() >= limit {
            break;
        }
        let b0 = lat.bonds()[start_bond].clone();
        // Both traversal directions of the start bond.
        for (start_site, first_exit, d0) in [
            (b0.a, b0.b, b0.displacement),
            (b0.b, b0.a, (-b0.displacement.0, -b0.displacement.1)),
        ] {
            let mut dfs = Dfs {
                lat,
                r_bond_at: &r_bond_at,
                target,
                start_bond,
                start_site,
                max_depth: (2 * (l1 + l2)) as usize,
                limit: limit - all.len(),
                found: Vec::new(),
            };
            let mut used = vec![(start_bond, start_site)];
            dfs.run(first_exit, d0, &mut used);
            all.extend(dfs.found);
            if all.len() >= limit {
                break;
            }
        }
    }
    if all.is_empty() {
        return Err(Error::Geometry(format!(
            "no R-bond cycle with winding {:?}",
            cycle
        )));
    }
    Ok(all)
}

/// Bond sequence of a closed zig-zag walk winding the requested cycle:
/// (1,0) alternates x and y bonds along one row; (0,1) alternates z and y
/// bonds up one column.
fn closed_walk_bonds(lat: &HoneycombLattice, cycle: (i64, i64)) -> Result<Vec<usize>> {
    let (l1, l2) = match lat.kind {
        LatticeKind::Torus { l1, l2 } => (l1, l2),
        _ => {
            return Err(Error::Geometry(
                "closed winding walks are defined on torus lattices".into(),
            ))
        }
    };
    let mut bonds = Vec::new();
    match cycle {
        (1, 0) => {
            let j = 0i64;
            for i in 0..l1 {
                bonds.push(lat.bond_between(
                    lat.site(Sublattice::A, i, j),
                    lat.site(Sublattice::B, i + 1, j - 1),
                )?);
                bonds.push(lat.bond_between(
                    lat.site(Sublattice::A, i + 1, j),
                    lat.site(Sublattice::B, i + 1, j - 1),
                )?);
            }
        }
        (0, 1) => {
            let i = 0i64;
            for j in 0..l2 {
                bonds.push(lat.bond_between(
                    lat.site(Sublattice::A, i, j),
                    lat.site(Sublattice::B, i, j),
                )?);
                bonds.push(lat.bond_between(
                    lat.site(Sublattice::A, i, j + 1),
                    lat.site(Sublattice::B, i, j),
                )?);
            }
        }
        _ => {
            return Err(Error::Geometry(format!(
                "unsupported winding class {:?}",
                cycle
            )))
        }
    }
    Ok(bonds)
}

/// A single measured check.
#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub label: String,
    #[serde(serialize_with = "serialize_pauli")]
    pub pauli: PauliString,
}

fn serialize_pauli<S: serde::Serializer>(p: &PauliString, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&p.to_string())
}

#[derive(Debug, Clone, Serialize)]
pub struct ScheduleRound {
    pub label: String,
    pub checks: Vec<Check>,
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct ScheduleMetadata {
    pub reduced: bool,
    /// Set when a reduced check set was requested but the full set was used.
    pub reduced_fallback: bool,
    pub supplemental_round: Option<String>,
    pub boundary_period: Option<usize>,
}

#[derive(Debug, Clone)]
pub struct CheckSchedule {
    pub rounds: Vec<ScheduleRound>,
    pub register: Arc<QuditRegister>,
    pub metadata: ScheduleMetadata,
}

impl CheckSchedule {
    pub fn period(&self) -> usize {
        self.rounds.len()
    }
}

#[derive(Debug, Clone, Default)]
pub struct ScheduleOptions {
    pub reduced: bool,
    /// Round label carrying the supplemental flux checks (default "B").
    pub supplemental: Option<String>,
}

fn anyon_name(a: &Anyon) -> String {
    let terms: Vec<String> = a
        .iter()
        .enumerate()
        .filter(|(_, &e)| e != 0)
        .map(|(i, &e)| {
            if e == 1 {
                format!("g{i}")
            } else {
                format!("g{i}^{e}")
            }
        })
        .collect();
    if terms.is_empty() {
        "1".into()
    } else {
        terms.join("·")
    }
}

/// Build the color-round schedule (three bulk rounds on a torus; six rounds
/// with the solid/dashed boundary arcs on a cylinder patch).
pub fn build_schedule(model: &LatticeModel, options: &ScheduleOptions) -> Result<CheckSchedule> {
    match model.lattice.kind {
        LatticeKind::Torus { .. } => build_torus_schedule(model, options),
        LatticeKind::Cylinder { .. } => build_boundary_schedule(model, options),
        LatticeKind::Region { .. } => Err(Error::Schedule(
            "open regions carry the unitary dynamics, not a measurement schedule".into(),
        )),
    }
}

fn check_anyons(model: &LatticeModel, options: &ScheduleOptions) -> (Vec<Anyon>, bool) {
    let generators = model.rep.theory.generators();
    if !options.reduced {
        return (generators, false);
    }
    let (set, _orbits) =
        minimal_check_set(&model.rep.theory, &model.rep.sigma, &generators);
    if set.is_empty() {
        // Degenerate request (identity-like σ): fall back to the full set.
        (generators, true)
    } else {
        (set, false)
    }
}

fn build_torus_schedule(model: &LatticeModel, options: &ScheduleOptions) -> Result<CheckSchedule> {
    let (anyons, fallback) = check_anyons(model, options);
    let supplemental_label = options.supplemental.clone().unwrap_or_else(|| "B".into());
    let supplemental = supplemental_anyons(model)?;
    let mut rounds = Vec::new();
    for color in 0..3u8 {
        let label = crate::lattice::COLOR_NAMES[color as usize].to_string();
        let mut checks = Vec::new();
        for (bi, b) in model.lattice.bonds().iter().enumerate() {
            if b.color != color || b.orientation == Orientation::Arc {
                continue;
            }
            for a in &anyons {
                checks.push(Check {
                    label: format!("bond{bi}[{}]", anyon_name(a)),
                    pauli: model.bond_check(a, bi)?,
                });
            }
        }
        if label == supplemental_label {
            for (pi, p) in model.lattice.plaquettes().iter().enumerate() {
                if p.kind != PlaquetteKind::Hexagon {
                    continue;
                }
                for a in &supplemental {
                    let op = model.plaquette_stabilizer(pi, a)?;
                    if op.is_identity_exponents() {
                        continue;
                    }
                    checks.push(Check {
                        label: format!("flux{pi}[{}]", anyon_name(a)),
                        pauli: op,
                    });
                }
            }
        }
        rounds.push(ScheduleRound { label, checks });
    }
    Ok(CheckSchedule {
        rounds,
        register: model.register.clone(),
        metadata: ScheduleMetadata {
            reduced: options.reduced && !fallback,
            reduced_fallback: fallback,
            supplemental_round: Some(supplemental_label),
            boundary_period: None,
        },
    })
}

fn supplemental_anyons(model: &LatticeModel) -> Result<Vec<Anyon>> {
    let set = supplemental_flux_set(&model.rep.theory, &model.rep.sigma)?;
    Ok(set
        .into_iter()
        .filter(|a| !model.rep.quotient.is_trivial_class(a))
        .collect())
}

/// Orientation-round schedule (x→y→z and the primed six-round variant): each
/// cover edge becomes a parity check; next-nearest edges become the product
/// of the two path checks through the shared neighbor (three-body in the
/// Pauli picture).
pub fn build_orientation_schedule(
    model: &LatticeModel,
    labels: &[RoundLabel],
) -> Result<CheckSchedule> {
    let mut rounds = Vec::new();
    for &label in labels {
        let cover = round_dimer_cover(&model.lattice, label)?;
        let mut checks = Vec::new();
        let anyons = model.rep.theory.generators();
        for e in &cover.edges {
            for a in &anyons {
                let pauli = match model.lattice.bond_between(e.a, e.b) {
                    Ok(bond) => model.bond_check(a, bond)?,
                    Err(_) => {
                        // Next-nearest pair: route through the shared neighbor.
                        let shared = shared_neighbor(&model.lattice, e.a, e.b)?;
                        let b1 = model.lattice.bond_between(e.a, shared)?;
                        let b2 = model.lattice.bond_between(shared, e.b)?;
                        model
                            .bond_check(a, b1)?
                            .multiply(&model.bond_check(a, b2)?)?
                            .normalized_phase()?
                    }
                };
                checks.push(Check {
                    label: format!("{}:{}-{}[{}]", label.name(), e.a, e.b, anyon_name(a)),
                    pauli,
                });
            }
        }
        rounds.push(ScheduleRound {
            label: label.name(),
            checks,
        });
    }
    Ok(CheckSchedule {
        rounds,
        register: model.register.clone(),
        metadata: ScheduleMetadata::default(),
    })
}

fn shared_neighbor(lat: &HoneycombLattice, a: usize, b: usize) -> Result<usize> {
    for bi in lat.bonds_at(a) {
        let bond = &lat.bonds()[bi];
        if bond.orientation == Orientation::Arc {
            continue;
        }
        let mid = if bond.a == a { bond.b } else { bond.a };
        if lat.bond_between(mid, b).is_ok() {
            return Ok(mid);
        }
    }
    Err(Error::Geometry(format!(
        "sites {a} and {b} share no neighbor"
    )))
}

// ---------------------------------------------------------------------------
// Boundary (cylinder) schedule: period six.
// ---------------------------------------------------------------------------

/// Solid arcs use pairing class 0, dashed arcs class 1. In round of color `c`
/// the bottom tips `i ≡ c+2 (mod 3)` need arc coverage; class-k arcs anchor
/// at `i ≡ c+2+3k (mod 6)` and pair each anchor with the tip three columns
/// to its right. Top tips mirror with the row offset `w`.
fn boundary_arcs(lat: &HoneycombLattice, color: u8, class: u8) -> Vec<(bool, i64)> {
    let (l1, w) = match lat.kind {
        LatticeKind::Cylinder { l1, w } => (l1, w),
        _ => unreachable!(),
    };
    let mut arcs = Vec::new();
    let c = color as i64;
    let bottom_anchor = (c + 2 + 3 * class as i64).rem_euclid(6);
    let mut a = bottom_anchor;
    while a < l1 + bottom_anchor {
        if a.rem_euclid(6) == bottom_anchor {
            arcs.push((true, a.rem_euclid(l1)));
        }
        a += 6;
    }
    let top_anchor = (c + w + 2 + 3 * class as i64).rem_euclid(6);
    let mut a = top_anchor;
    while a < l1 + top_anchor {
        if a.rem_euclid(6) == top_anchor {
            arcs.push((false, a.rem_euclid(l1)));
        }
        a += 6;
    }
    arcs
}

/// The boundary path sites of a long arc anchored at column `a`: the zig-zag
/// from the tip at `a` to the tip at `a+3`.
fn arc_path_sites(lat: &HoneycombLattice, bottom: bool, anchor: i64) -> Vec<usize> {
    let w = match lat.kind {
        LatticeKind::Cylinder { w, .. } => w,
        _ => unreachable!(),
    };
    let mut sites = Vec::with_capacity(7);
    for k in 0..=3i64 {
        if bottom {
            sites.push(lat.site(Sublattice::B, anchor + k, 0));
            if k < 3 {
                sites.push(lat.site(Sublattice::A, anchor + k, 1));
            }
        } else {
            sites.push(lat.site(Sublattice::A, anchor + k, w));
            if k < 3 {
                sites.push(lat.site(Sublattice::B, anchor + k + 1, w - 1));
            }
        }
    }
    sites
}

/// The long-arc check: the product of the bond checks along the boundary
/// path between the paired tips (a seven-site Pauli string).
pub fn arc_check(model: &LatticeModel, bottom: bool, anchor: i64) -> Result<PauliString> {
    let sites = arc_path_sites(&model.lattice, bottom, anchor);
    let a = epsilon_anyon(model)?;
    let mut acc = PauliString::identity(&model.register);
    for pair in sites.windows(2) {
        let bond = model.lattice.bond_between(pair[0], pair[1])?;
        acc = acc.multiply(&model.bond_check(&a, bond)?)?;
    }
    acc.normalized_phase()
}

/// Triangle flux: the two lattice-edge checks of the triangle times the
/// tip-tip parity (σ^z ⊗ σ^z across the arc), phase-normalized.
pub fn triangle_flux(model: &LatticeModel, plaquette: usize) -> Result<PauliString> {
    let p = &model.lattice.plaquettes()[plaquette];
    if p.kind == PlaquetteKind::Hexagon {
        return Err(Error::Schedule("not a triangle plaquette".into()));
    }
    let a = epsilon_anyon(model)?;
    let mut acc = PauliString::identity(&model.register);
    for &bi in &p.bonds {
        let bond = &model.lattice.bonds()[bi];
        if bond.orientation == Orientation::Arc {
            let tz = model.rep.t_z(&a)?;
            acc = acc.multiply(&model.site_op(bond.a, &tz))?;
            acc = acc.multiply(&model.site_op(bond.b, &tz))?;
        } else {
            acc = acc.multiply(&model.bond_check(&a, bi)?)?;
        }
    }
    acc.normalized_phase()
}

fn epsilon_anyon(model: &LatticeModel) -> Result<Anyon> {
    if !model.rep.is_qubit() {
        return Err(Error::Schedule(
            "boundary schedules are defined for the qubit honeycomb code".into(),
        ));
    }
    Ok(model.rep.theory.generators()[0].clone())
}

/// The period-six boundary schedule: bulk color rounds with solid-class arcs
/// for the first three rounds and dashed-class arcs for the next three;
/// every boundary round bundle carries all triangle fluxes explicitly.
/// `solid_only` repeats the solid arcs with period three instead.
pub fn build_boundary_schedule_variant(
    model: &LatticeModel,
    solid_only: bool,
) -> Result<CheckSchedule> {
    let a = epsilon_anyon(model)?;
    let period: usize = if solid_only { 3 } else { 6 };
    let mut rounds = Vec::new();
    for r in 0..period {
        let color = (r % 3) as u8;
        let class = if solid_only { 0 } else { (r / 3) as u8 };
        let style = if class == 0 { "solid" } else { "dashed" };
        let label = format!(
            "{}{}",
            style,
            crate::lattice::COLOR_NAMES[color as usize]
        );
        let mut checks = Vec::new();
        for (bi, b) in model.lattice.bonds().iter().enumerate() {
            if b.color != color || b.orientation == Orientation::Arc {
                continue;
            }
            checks.push(Check {
                label: format!("bond{bi}"),
                pauli: model.bond_check(&a, bi)?,
            });
        }
        for (bottom, anchor) in boundary_arcs(&model.lattice, color, class) {
            let side = if bottom { "bot" } else { "top" };
            checks.push(Check {
                label: format!("arc-{side}-{anchor}"),
                pauli: arc_check(model, bottom, anchor)?,
            });
        }
        for (pi, p) in model.lattice.plaquettes().iter().enumerate() {
            if p.kind == PlaquetteKind::Hexagon {
                continue;
            }
            checks.push(Check {
                label: format!("triangle{pi}"),
                pauli: triangle_flux(model, pi)?,
            });
        }
        rounds.push(ScheduleRound { label, checks });
    }
    Ok(CheckSchedule {
        rounds,
        register: model.register.clone(),
        metadata: ScheduleMetadata {
            reduced: false,
            reduced_fallback: false,
            supplemental_round: None,
            boundary_period: Some(period),
        },
    })
}

fn build_boundary_schedule(
    model: &LatticeModel,
    _options: &ScheduleOptions,
) -> Result<CheckSchedule> {
    build_boundary_schedule_variant(model, false)
}

/// The dimer cover measured by one boundary round (tips paired by the round's
/// arcs), used by the loop criterion on cylinder patches.
pub fn boundary_round_cover(
    lat: &HoneycombLattice,
    color: u8,
    class: u8,
) -> Result<crate::cover::DimerCover> {
    let mut edges = Vec::new();
    for b in lat.bonds() {
        if b.color == color && b.orientation != Orientation::Arc {
            edges.push(crate::cover::CoverEdge {
                a: b.a,
                b: b.b,
                displacement: b.displacement,
            });
        }
    }
    let w = match lat.kind {
        LatticeKind::Cylinder { w, .. } => w,
        _ => return Err(Error::Geometry("boundary covers need a cylinder".into())),
    };
    for (bottom, anchor) in boundary_arcs(lat, color, class) {
        let (a, b) = if bottom {
            (
                lat.site(Sublattice::B, anchor, 0),
                lat.site(Sublattice::B, anchor + 3, 0),
            )
        } else {
            (
                lat.site(Sublattice::A, anchor, w),
                lat.site(Sublattice::A, anchor + 3, w),
            )
        };
        edges.push(crate::cover::CoverEdge {
            a,
            b,
            displacement: (3, 0),
        });
    }
    let style = if class == 0 { "solid" } else { "dashed" };
    crate::cover::DimerCover::new(
        format!("{}{}", style, crate::lattice::COLOR_NAMES[color as usize]),
        lat.num_sites(),
        lat.periods(),
        edges,
    )
}

/// Boundary-terminating anyon string for the cylinder: a vertical curve of
/// half-checks from the bottom boundary to the top, with tip factors solved
/// over GF(2) so the string commutes with every check of the first round.
pub fn boundary_e_string(model: &LatticeModel, schedule: &CheckSchedule) -> Result<PauliString> {
    let lat = &model.lattice;
    let (l1, w) = match lat.kind {
        LatticeKind::Cylinder { l1, w } => (l1, w),
        _ => return Err(Error::Geometry("needs a cylinder".into())),
    };
    let a = epsilon_anyon(model)?;
    // Bulk curve: start inside the bottom triangle column 1 (color G) and walk
    // upward through plaquettes, crossing one bond per step.
    let mut acc = PauliString::identity(&model.register);
    // Crossing into the bulk through the bottom triangle's x edge.
    let entry_col = 1i64;
    let tri_x = lat.bond_between(
        lat.site(Sublattice::A, entry_col, 1),
        lat.site(Sublattice::B, entry_col + 1, 0),
    )?;
    let mut crossed: Vec<usize> = vec![tri_x];
    // Upward zig-zag: cross the z bond then the x bond of each hexagon row.
    let mut col = entry_col;
    for row in 1..w {
        let z = lat.bond_between(
            lat.site(Sublattice::A, col, row),
            lat.site(Sublattice::B, col, row),
        )?;
        crossed.push(z);
        let x = lat.bond_between(
            lat.site(Sublattice::A, col, row + 1),
            lat.site(Sublattice::B, col + 1, row),
        )?;
        crossed.push(x);
        col = col; // columns stay aligned for this template
        let _ = row;
    }
    for &bi in &crossed {
        let bond = &lat.bonds()[bi];
        acc = acc.multiply(&model.t_at(bond.a, &a, bond.orientation)?)?;
    }
    // Tip factors: unknown σ^z on every tip, solved so the string commutes
    // with all round-1 checks.
    let tips: Vec<usize> = lat.bottom_tips().into_iter().chain(lat.top_tips()).collect();
    let tz = model.rep.t_z(&a)?;
    let tip_ops: Vec<PauliString> = tips.iter().map(|&t| model.site_op(t, &tz)).collect();
    let checks = &schedule.rounds[0].checks;
    let l = model.register.phase_lcm() as i64;
    let mut generators: Vec<Vec<u64>> = Vec::new();
    for op in &tip_ops {
        let row: Vec<u64> = checks
            .iter()
            .map(|c| {
                let r = op.commutation_phase(&c.pauli).unwrap();
                ((r * Frac::from_integer(l)).to_integer()).rem_euclid(l) as u64
            })
            .collect();
        generators.push(row);
    }
    let target: Vec<u64> = checks
        .iter()
        .map(|c| {
            let r = acc.commutation_phase(&c.pauli).unwrap();
            ((-(r * Frac::from_integer(l)).to_integer()).rem_euclid(l)) as u64
        })
        .collect();
    let howell = HowellForm::from_generators(&generators, l as u64, checks.len());
    let combo = howell.express(&target).ok_or_else(|| {
        Error::Schedule("boundary string cannot be completed at the tips".into())
    })?;
    for (op, &c) in tip_ops.iter().zip(combo.iter()) {
        if c != 0 {
            acc = acc.multiply(&op.power(c as i64))?;
        }
    }
    // Defensive: the result must commute with every round-1 check.
    for c in checks {
        if !acc.commutes_with(&c.pauli)? {
            return Err(Error::Schedule(
                "boundary string construction failed commutation".into(),
            ));
        }
    }
    let _ = l1;
    Ok(acc)
}

/// The persistent flux loop around the cylinder core: the product of bond
/// checks along a closed zig-zag walk through an interior row.
pub fn core_flux_loop(model: &LatticeModel) -> Result<PauliString> {
    let lat = &model.lattice;
    let l1 = match lat.kind {
        LatticeKind::Cylinder { l1, .. } => l1,
        _ => return Err(Error::Geometry("needs a cylinder".into())),
    };
    let a = epsilon_anyon(model)?;
    // Walk A(i,2) –x– B(i+1,1) –y– A(i+1,2) around the cylinder.
    let mut acc = PauliString::identity(&model.register);
    for i in 0..l1 {
        let x = lat.bond_between(
            lat.site(Sublattice::A, i, 2),
            lat.site(Sublattice::B, i + 1, 1),
        )?;
        let y = lat.bond_between(
            lat.site(Sublattice::A, i + 1, 2),
            lat.site(Sublattice::B, i + 1, 1),
        )?;
        for bi in [x, y] {
            acc = acc.multiply(&model.bond_check(&a, bi)?)?;
        }
    }
    acc.normalized_phase()
}

/// All persistent plaquette stabilizers: one per hexagon per nontrivial
/// quotient class.
pub fn persistent_stabilizer_set(model: &LatticeModel) -> Result<Vec<(usize, String, PauliString)>> {
    let mut out = Vec::new();
    let classes = nontrivial_class_reps(&model.rep);
    for (pi, p) in model.lattice.plaquettes().iter().enumerate() {
        if p.kind != PlaquetteKind::Hexagon {
            continue;
        }
        for a in &classes {
            let op = model.plaquette_stabilizer(pi, a)?;
            if !op.is_identity_exponents() {
                out.push((pi, anyon_name(a), op));
            }
        }
    }
    Ok(out)
}

/// One representative per nontrivial class of the quotient.
pub fn nontrivial_class_reps(rep: &OnsiteRep) -> Vec<Anyon> {
    let q = &rep.quotient;
    let mut reps = Vec::new();
    let mut seen = std::collections::BTreeSet::new();
    seen.insert(q.class_of(&rep.theory.vacuum()));
    // Enumerate class coordinates via products of the factor representatives.
    let mut coords = vec![0i64; q.orders.len()];
    loop {
        let mut i = 0;
        loop {
            if i == coords.len() {
                return reps;
            }
            coords[i] += 1;
            if coords[i] < q.orders[i] as i64 {
                break;
            }
            coords[i] = 0;
            i += 1;
        }
        let mut a = rep.theory.vacuum();
        for (f, &c) in coords.iter().enumerate() {
            let scaled: Anyon = q.representatives[f].iter().map(|&x| x * c).collect();
            a = rep.theory.fuse(&a, &scaled);
        }
        if seen.insert(q.class_of(&a)) {
            reps.push(a);
        }
    }
}
