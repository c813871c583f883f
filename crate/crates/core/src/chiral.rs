//! Gauge-decorated Majorana-mode flow of the unitarized honeycomb dynamics
//! and the exact GNVW chiral index.
//!
//! In the gauge-fixed picture each site carries one Majorana mode. The
//! counterclockwise plaquette rotation advances the six modes of a hexagon
//! one step, attaching the gauge link of the traversed bond; the mode closing
//! the ring carries the remaining links, so acting on bond parities the six
//! checks cyclically permute and the wrap picks up `−Φ_p`. Composing the
//! rotations of all plaquettes color by color yields the period map: bulk
//! modes swap across one bond orientation while boundary modes of an open
//! region advance along one long chiral orbit.
//!
//! The chiral index is evaluated from the operator-algebra overlap
//! `⟨A,B⟩ = √(#monomials shared)`, which for algebras generated by Majorana
//! subsets counts common modes: `⟨A,B⟩ = 2^{|A∩B|/2}`. All values are exact
//! square roots of rationals.

use crate::error::{Error, Result};
use crate::lattice::{FluxConfig, HoneycombLattice, PlaquetteKind};
use num::rational::Ratio;
use num::One;
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;
use std::fmt;

/// An exact value `√(num/den)`, stored and compared as its square.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SqrtRational {
    pub squared: Ratio<i64>,
}

impl SqrtRational {
    pub fn one() -> Self {
        SqrtRational {
            squared: Ratio::one(),
        }
    }

    pub fn from_squared(squared: Ratio<i64>) -> Self {
        assert!(squared > Ratio::new(0, 1), "square must be positive");
        SqrtRational { squared }
    }

    /// `√(2^k)` for any integer `k`.
    pub fn power_of_two(k: i64) -> Self {
        let squared = if k >= 0 {
            Ratio::from_integer(1i64 << k)
        } else {
            Ratio::new(1, 1i64 << (-k))
        };
        SqrtRational { squared }
    }

    pub fn mul(self, other: SqrtRational) -> Self {
        SqrtRational {
            squared: self.squared * other.squared,
        }
    }
}

impl fmt::Display for SqrtRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = *self.squared.numer();
        let d = *self.squared.denom();
        let root = |v: i64| -> Option<i64> {
            let r = (v as f64).sqrt().round() as i64;
            (r * r == v).then_some(r)
        };
        match (root(n), root(d)) {
            (Some(rn), Some(rd)) if rd == 1 => write!(f, "{rn}"),
            (Some(rn), Some(rd)) => write!(f, "{rn}/{rd}"),
            _ => write!(f, "sqrt({n}/{d})"),
        }
    }
}

/// A gauge-decorated signed permutation of Majorana modes:
/// `c_v ↦ sign_v · (Π_{b ∈ gauge_v} u_b) · c_{target_v}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MajoranaMap {
    target: Vec<usize>,
    sign: Vec<i8>,
    gauge: Vec<BTreeSet<usize>>,
}

impl MajoranaMap {
    pub fn identity(n: usize) -> Self {
        MajoranaMap {
            target: (0..n).collect(),
            sign: vec![1; n],
            gauge: vec![BTreeSet::new(); n],
        }
    }

    pub fn len(&self) -> usize {
        self.target.len()
    }

    pub fn is_empty(&self) -> bool {
        self.target.is_empty()
    }

    pub fn target(&self, v: usize) -> usize {
        self.target[v]
    }

    pub fn sign(&self, v: usize) -> i8 {
        self.sign[v]
    }

    pub fn gauge_string(&self, v: usize) -> &BTreeSet<usize> {
        &self.gauge[v]
    }

    /// `self` followed by `other` (conjugation order).
    pub fn then(&self, other: &MajoranaMap) -> Self {
        assert_eq!(self.len(), other.len());
        let n = self.len();
        let mut target = vec![0; n];
        let mut sign = vec![1i8; n];
        let mut gauge = vec![BTreeSet::new(); n];
        for v in 0..n {
            let mid = self.target[v];
            target[v] = other.target[mid];
            sign[v] = self.sign[v] * other.sign[mid];
            let mut g = self.gauge[v].clone();
            for b in &other.gauge[mid] {
                if !g.remove(b) {
                    g.insert(*b);
                }
            }
            gauge[v] = g;
        }
        MajoranaMap {
            target,
            sign,
            gauge,
        }
    }

    pub fn inverse(&self) -> Self {
        let n = self.len();
        let mut target = vec![0; n];
        let mut sign = vec![1i8; n];
        let mut gauge = vec![BTreeSet::new(); n];
        for v in 0..n {
            let w = self.target[v];
            target[w] = v;
            sign[w] = self.sign[v];
            gauge[w] = self.gauge[v].clone();
        }
        MajoranaMap {
            target,
            sign,
            gauge,
        }
    }

    pub fn is_identity(&self) -> bool {
        (0..self.len())
            .all(|v| self.target[v] == v && self.sign[v] == 1 && self.gauge[v].is_empty())
    }

    /// Identity as a physical map in a gauge background: targets fixed and
    /// every coefficient +1 (leftover gauge strings are closed loops that
    /// evaluate to flux products).
    pub fn is_identity_under(&self, flux: &FluxConfig) -> bool {
        (0..self.len()).all(|v| self.target[v] == v && self.coefficient(v, flux) == 1)
    }

    /// Numeric coefficient of mode `v` under a concrete gauge background.
    pub fn coefficient(&self, v: usize, flux: &FluxConfig) -> i8 {
        let mut s = self.sign[v];
        for &b in &self.gauge[v] {
            s *= flux.link_sign(b);
        }
        s
    }

    /// Image of the bond parity `P_ab = i c_a u_ab c_b`: the target bond (when
    /// the images of the endpoints are again connected by a bond of `lat`)
    /// and the coefficient under the gauge background.
    pub fn parity_image(
        &self,
        lat: &HoneycombLattice,
        bond: usize,
        flux: &FluxConfig,
    ) -> Option<(usize, i8)> {
        let b = &lat.bonds()[bond];
        let (ta, tb) = (self.target[b.a], self.target[b.b]);
        let image_bond = lat.bond_between(ta, tb).ok()?;
        let mut coeff = self.coefficient(b.a, flux) * self.coefficient(b.b, flux);
        coeff *= flux.link_sign(bond) * flux.link_sign(image_bond);
        // Orientation: P_ab vs P_ba differ by a sign; align the image with the
        // stored bond direction.
        let stored = &lat.bonds()[image_bond];
        if (stored.a, stored.b) == (tb, ta) {
            coeff = -coeff;
        } else {
            debug_assert_eq!((stored.a, stored.b), (ta, tb));
        }
        Some((image_bond, coeff))
    }

    /// Permutation cycles, shortest first.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.len();
        let mut seen = vec![false; n];
        let mut cycles = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut v = self.target[start];
            while v != start {
                seen[v] = true;
                cycle.push(v);
                v = self.target[v];
            }
            cycles.push(cycle);
        }
        cycles.sort_by_key(|c| c.len());
        cycles
    }
}

/// Counterclockwise rotation of the six Majorana modes of hexagon `p`:
/// site k advances to site k+1 carrying `−u_{k,k+1}`, and the ring is closed
/// by the last mode carrying the product of the five traversed links.
pub fn plaquette_rotation(lat: &HoneycombLattice, plaquette: usize) -> Result<MajoranaMap> {
    let p = &lat.plaquettes()[plaquette];
    if p.kind != PlaquetteKind::Hexagon {
        return Err(Error::Geometry(format!(
            "plaquette {plaquette} is not a full hexagon"
        )));
    }
    let mut map = MajoranaMap::identity(lat.num_sites());
    for k in 0..5 {
        let v = p.sites[k];
        map.target[v] = p.sites[k + 1];
        map.sign[v] = -1;
        map.gauge[v] = BTreeSet::from([p.bonds[k]]);
    }
    let last = p.sites[5];
    map.target[last] = p.sites[0];
    map.sign[last] = 1;
    map.gauge[last] = p.bonds[..5].iter().cloned().collect();
    Ok(map)
}

/// One Floquet period: all plaquette rotations of color B, then R, then G.
/// Hexagons of one color are site-disjoint, so the order within a color is
/// immaterial. On open regions only the complete hexagons rotate, which is
/// the restricted dynamics with its chiral edge orbit.
pub fn period_map(lat: &HoneycombLattice) -> Result<MajoranaMap> {
    let mut map = MajoranaMap::identity(lat.num_sites());
    for color in [2u8, 0, 1] {
        let mut step = MajoranaMap::identity(lat.num_sites());
        for (pi, p) in lat.plaquettes().iter().enumerate() {
            if p.kind == PlaquetteKind::Hexagon && p.color == color {
                step = step.then(&plaquette_rotation(lat, pi)?);
            }
        }
        map = map.then(&step);
    }
    Ok(map)
}

/// Period map with reversed orientation (clockwise rotations): the inverse
/// dynamics, carrying the inverse chiral index.
pub fn period_map_reversed(lat: &HoneycombLattice) -> Result<MajoranaMap> {
    Ok(period_map(lat)?.inverse())
}

/// Restriction of the period map to an open region: provided for clarity of
/// intent; on region lattices `period_map` already rotates only the complete
/// hexagons.
pub fn restricted_period_map(lat: &HoneycombLattice) -> Result<MajoranaMap> {
    period_map(lat)
}

/// Sites at graph distance at least `depth` from every boundary site, where
/// boundary sites are those not surrounded by three complete hexagons. The
/// restricted dynamics matches the torus dynamics at depth ≥ 2.
pub fn interior_sites(lat: &HoneycombLattice, depth: usize) -> BTreeSet<usize> {
    let mut hex_count = vec![0usize; lat.num_sites()];
    for p in lat.plaquettes() {
        if p.kind == PlaquetteKind::Hexagon {
            for &s in &p.sites {
                hex_count[s] += 1;
            }
        }
    }
    let mut dist: Vec<usize> = hex_count
        .iter()
        .map(|&c| if c < 3 { 0 } else { usize::MAX })
        .collect();
    let mut frontier: Vec<usize> = (0..lat.num_sites()).filter(|&v| dist[v] == 0).collect();
    let mut d = 0usize;
    while !frontier.is_empty() {
        d += 1;
        let mut next = Vec::new();
        for &v in &frontier {
            for b in lat.bonds_at(v) {
                let bond = &lat.bonds()[b];
                let w = if bond.a == v { bond.b } else { bond.a };
                if dist[w] == usize::MAX {
                    dist[w] = d;
                    next.push(w);
                }
            }
        }
        frontier = next;
    }
    (0..lat.num_sites())
        .filter(|&v| dist[v] == usize::MAX || dist[v] >= depth)
        .collect()
}

/// Number of map gauge strings that traverse each bond ("a Majorana is
/// translated across the bond").
pub fn crossing_counts(lat: &HoneycombLattice, map: &MajoranaMap) -> Vec<usize> {
    let mut counts = vec![0usize; lat.bonds().len()];
    for v in 0..map.len() {
        for &b in map.gauge_string(v) {
            counts[b] += 1;
        }
    }
    counts
}

/// Overlap `⟨U†𝒜U, ℬ⟩` per the operator-algebra formula: the algebras are
/// generated by Majorana subsets, so the overlap is `√(#common monomials)`
/// where common monomials are counted from the intersection of the supports.
///
/// `images` are the supports of the conjugated generators of A (single modes
/// for the maps produced here); every image must lie in `A ∪ B`.
pub fn algebra_overlap(
    images: &[BTreeSet<usize>],
    region_a: &BTreeSet<usize>,
    region_b: &BTreeSet<usize>,
) -> Result<SqrtRational> {
    let union: BTreeSet<usize> = region_a.union(region_b).cloned().collect();
    for img in images {
        if !img.is_subset(&union) {
            return Err(Error::RegionTooSmall(
                "a conjugated operator escapes A ∪ B".into(),
            ));
        }
    }
    // Count monomials of the image algebra supported inside B: the supports
    // form an F2 space; common monomials = kernel of the projection onto the
    // complement of B.
    let modes: Vec<usize> = union.iter().cloned().collect();
    let index_of = |m: usize| modes.binary_search(&m).unwrap();
    let complement: Vec<usize> = modes
        .iter()
        .cloned()
        .filter(|m| !region_b.contains(m))
        .collect();
    let full_vectors: Vec<Vec<u64>> = images
        .iter()
        .map(|img| {
            let mut v = vec![0u64; modes.len()];
            for &m in img {
                v[index_of(m)] ^= 1;
            }
            v
        })
        .collect();
    let proj_vectors: Vec<Vec<u64>> = images
        .iter()
        .map(|img| {
            let mut v = vec![0u64; complement.len()];
            for &m in img {
                if let Ok(i) = complement.binary_search(&m) {
                    v[i] ^= 1;
                }
            }
            v
        })
        .collect();
    let full = crate::linalg::HowellForm::from_generators(&full_vectors, 2, modes.len());
    let proj = crate::linalg::HowellForm::from_generators(&proj_vectors, 2, complement.len());
    let common_log2 = full.rows.len() as i64 - proj.rows.len() as i64;
    // ⟨·,·⟩ = √(2^{common}).
    Ok(SqrtRational::power_of_two(common_log2))
}

/// The GNVW index of a locality-preserving Majorana map, as the exact `ν²`.
///
/// `A` and `B` are abutting, non-overlapping mode intervals along the edge
/// orbit; they must be long enough that modes near the interface cannot leave
/// `A ∪ B` within one period.
pub fn gnvw_index(
    map: &MajoranaMap,
    region_a: &BTreeSet<usize>,
    region_b: &BTreeSet<usize>,
) -> Result<SqrtRational> {
    if !region_a.is_disjoint(region_b) {
        return Err(Error::RegionTooSmall("regions overlap".into()));
    }
    // Maximum displacement along the orbit bounds how far operators move.
    let displacement = max_orbit_displacement(map, region_a, region_b);
    if region_a.len() < 2 * displacement || region_b.len() < 2 * displacement {
        return Err(Error::RegionTooSmall(format!(
            "regions of {} and {} modes cannot absorb displacement {}",
            region_a.len(),
            region_b.len(),
            displacement
        )));
    }
    let a_into_b = region_a
        .iter()
        .filter(|&&v| region_b.contains(&map.target(v)))
        .count() as i64;
    let b_into_a = region_b
        .iter()
        .filter(|&&v| region_a.contains(&map.target(v)))
        .count() as i64;
    Ok(SqrtRational::power_of_two(a_into_b - b_into_a))
}

fn max_orbit_displacement(
    map: &MajoranaMap,
    region_a: &BTreeSet<usize>,
    region_b: &BTreeSet<usize>,
) -> usize {
    // Displacement measured along the cycle containing the regions.
    let mut best = 1usize;
    for cycle in map.cycles() {
        if cycle.len() <= 2 {
            continue;
        }
        let pos: std::collections::HashMap<usize, usize> =
            cycle.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        for &v in cycle.iter() {
            if !(region_a.contains(&v) || region_b.contains(&v)) {
                continue;
            }
            let w = map.target(v);
            if let (Some(&pv), Some(&pw)) = (pos.get(&v), pos.get(&w)) {
                let n = cycle.len();
                let fwd = (pw + n - pv) % n;
                let step = fwd.min(n - fwd);
                best = best.max(step);
            }
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::HoneycombLattice;

    #[test]
    fn rotation_cycles_hexagon_parities() {
        let lat = HoneycombLattice::torus(3, 3).unwrap();
        let flux = FluxConfig::flux_free(&lat);
        let rot = plaquette_rotation(&lat, 0).unwrap();
        let p = &lat.plaquettes()[0];
        // Each of the six bond parities maps to the next bond around the
        // hexagon, and the flux through the hexagon is preserved.
        let mut sign_product = 1i8;
        for k in 0..6 {
            let (img, coeff) = rot.parity_image(&lat, p.bonds[k], &flux).unwrap();
            assert_eq!(img, p.bonds[(k + 1) % 6]);
            sign_product *= coeff;
        }
        assert_eq!(sign_product, 1, "flux through the hexagon is preserved");
        // Exactly one of the three alternating round checks is flux-sensitive:
        // flipping one link of the hexagon (Φ_p → −Φ_p) flips exactly one of
        // their image coefficients.
        let mut links = vec![false; lat.bonds().len()];
        links[p.bonds[0]] = true;
        let flipped = FluxConfig::from_links(&lat, links);
        assert_eq!(flipped.flux_sign(0), -1);
        let sensitive = [0usize, 2, 4]
            .iter()
            .filter(|&&k| {
                let before = rot.parity_image(&lat, p.bonds[k], &flux).unwrap().1;
                let after = rot.parity_image(&lat, p.bonds[k], &flipped).unwrap().1;
                before != after
            })
            .count();
        assert_eq!(
            sensitive, 1,
            "exactly one of the three round checks picks up the plaquette flux"
        );
    }

    #[test]
    fn sixfold_rotation_is_identity_on_parities() {
        let lat = HoneycombLattice::torus(3, 3).unwrap();
        let mut fluxes = vec![false; 9];
        fluxes[1] = true;
        fluxes[5] = true;
        let flux = FluxConfig::realize(&lat, &fluxes).unwrap();
        let rot = plaquette_rotation(&lat, 1).unwrap();
        let mut six = MajoranaMap::identity(lat.num_sites());
        for _ in 0..6 {
            six = six.then(&rot);
        }
        for &b in &lat.plaquettes()[1].bonds {
            let (img, coeff) = six.parity_image(&lat, b, &flux).unwrap();
            assert_eq!(img, b);
            assert_eq!(coeff, 1);
        }
    }

    #[test]
    fn map_composed_with_inverse_is_identity() {
        let lat = HoneycombLattice::torus(3, 3).unwrap();
        let map = period_map(&lat).unwrap();
        assert!(map.then(&map.inverse()).is_identity());
        assert!(map.inverse().then(&map).is_identity());
    }

    #[test]
    fn torus_period_map_swaps_along_r_bonds() {
        let lat = HoneycombLattice::torus(3, 3).unwrap();
        let map = period_map(&lat).unwrap();
        // Every cycle is a transposition across an R bond.
        for cycle in map.cycles() {
            assert_eq!(cycle.len(), 2);
            let bond = lat.bond_between(cycle[0], cycle[1]).unwrap();
            assert_eq!(lat.bonds()[bond].color, 0, "swap must cross an R bond");
        }
        // Flux-free: the square fixes every mode and acts as the identity on
        // every bond parity. (The mode coefficients themselves form a global
        // sign — a fermion-parity factor — so the map is the identity on the
        // full parity algebra, which is the loop property.)
        let sq = map.then(&map);
        let flux = FluxConfig::flux_free(&lat);
        let coeffs: Vec<i8> = (0..lat.num_sites())
            .map(|v| {
                assert_eq!(sq.target(v), v);
                sq.coefficient(v, &flux)
            })
            .collect();
        assert!(
            coeffs.windows(2).all(|w| w[0] == w[1]),
            "square must be a global sign: {coeffs:?}"
        );
        for bi in 0..lat.bonds().len() {
            let (img, c) = sq.parity_image(&lat, bi, &flux).unwrap();
            assert_eq!((img, c), (bi, 1));
        }
    }

    #[test]
    fn flux_free_period_preserves_all_r_parities() {
        let lat = HoneycombLattice::torus(3, 3).unwrap();
        let flux = FluxConfig::flux_free(&lat);
        let map = period_map(&lat).unwrap();
        for (bi, b) in lat.bonds().iter().enumerate() {
            if b.color != 0 {
                continue;
            }
            let (img, coeff) = map.parity_image(&lat, bi, &flux).unwrap();
            assert_eq!(img, bi);
            assert_eq!(coeff, 1, "bond {bi}");
        }
    }

    #[test]
    fn flux_pair_flips_exactly_two_reference_parities() {
        let lat = HoneycombLattice::torus(3, 3).unwrap();
        let map = period_map(&lat).unwrap();
        let mut fluxes = vec![false; 9];
        fluxes[0] = true;
        fluxes[4] = true;
        let flux = FluxConfig::realize(&lat, &fluxes).unwrap();
        let flipped: Vec<usize> = lat
            .bonds()
            .iter()
            .enumerate()
            .filter(|(_, b)| b.color == 0)
            .filter(|(bi, _)| map.parity_image(&lat, *bi, &flux).unwrap().1 == -1)
            .map(|(bi, _)| bi)
            .collect();
        assert_eq!(flipped.len(), 2, "each flux binds one fermion");
    }

    #[test]
    fn restricted_map_has_single_edge_orbit() {
        let lat = HoneycombLattice::region(5, 6).unwrap();
        let map = restricted_period_map(&lat).unwrap();
        let deep = interior_sites(&lat, 2);
        assert!(!deep.is_empty(), "test region must have a deep bulk");
        let cycles = map.cycles();
        let long: Vec<_> = cycles.iter().filter(|c| c.len() > 2).collect();
        assert_eq!(long.len(), 1, "one chiral edge orbit");
        let orbit: BTreeSet<usize> = long[0].iter().cloned().collect();
        for &v in &deep {
            assert!(!orbit.contains(&v), "deep site {v} in the edge orbit");
        }
        // Deep sites behave exactly as on the torus: swapped across R bonds.
        for &v in &deep {
            let w = map.target(v);
            assert_ne!(v, w);
            let bond = lat.bond_between(v, w).unwrap();
            assert_eq!(lat.bonds()[bond].color, 0);
            assert_eq!(map.target(w), v);
        }
    }

    #[test]
    fn overlap_anchor_identities() {
        // ⟨A,A⟩ = 2^{|A|} for |A| = 1,2,3 fermion sites (2,4,6 modes).
        for sites in 1..=3i64 {
            let modes: BTreeSet<usize> = (0..(2 * sites) as usize).collect();
            let images: Vec<BTreeSet<usize>> =
                modes.iter().map(|&m| BTreeSet::from([m])).collect();
            let overlap = algebra_overlap(&images, &modes, &modes).unwrap();
            assert_eq!(
                overlap.squared,
                Ratio::from_integer(1 << (2 * sites)),
                "⟨A,A⟩ must be 2^{sites}"
            );
        }
        // Commuting disjoint algebras overlap to 1.
        let a: BTreeSet<usize> = [0, 1].into();
        let b: BTreeSet<usize> = [2, 3].into();
        let images: Vec<BTreeSet<usize>> = a.iter().map(|&m| BTreeSet::from([m])).collect();
        let overlap = algebra_overlap(&images, &a, &b).unwrap();
        assert_eq!(overlap.squared, Ratio::from_integer(1));
    }

    #[test]
    fn translation_overlap_matches_counting() {
        // A = {c1, c2}, B = {c3, c4}, translation by one: the only nontrivial
        // overlap is c2 → c3, giving ⟨U†AU, B⟩ = √2.
        let a: BTreeSet<usize> = [1, 2].into();
        let b: BTreeSet<usize> = [3, 4].into();
        let images = vec![BTreeSet::from([2]), BTreeSet::from([3])];
        let overlap = algebra_overlap(&images, &a, &b).unwrap();
        assert_eq!(overlap.squared, Ratio::from_integer(2));
    }

    #[test]
    fn gnvw_of_translations() {
        // A ring of 12 modes; translation by k has ν² = 2^k.
        let n = 12;
        let mut shift = MajoranaMap::identity(n);
        for v in 0..n {
            shift.target[v] = (v + 1) % n;
        }
        let a: BTreeSet<usize> = (0..4).collect();
        let b: BTreeSet<usize> = (4..8).collect();
        assert_eq!(
            gnvw_index(&MajoranaMap::identity(n), &a, &b).unwrap().squared,
            Ratio::from_integer(1)
        );
        assert_eq!(
            gnvw_index(&shift, &a, &b).unwrap().squared,
            Ratio::from_integer(2)
        );
        let two = shift.then(&shift);
        assert_eq!(
            gnvw_index(&two, &a, &b).unwrap().squared,
            Ratio::from_integer(4)
        );
        let three = two.then(&shift);
        assert_eq!(
            gnvw_index(&three, &a, &b).unwrap().squared,
            Ratio::from_integer(8)
        );
        // Reversed orientation inverts the index.
        assert_eq!(
            gnvw_index(&shift.inverse(), &a, &b).unwrap().squared,
            Ratio::new(1, 2)
        );
        // Region-size precondition.
        let tiny: BTreeSet<usize> = [0].into();
        let rest: BTreeSet<usize> = [1].into();
        assert!(gnvw_index(&three, &tiny, &rest).is_err());
    }

    #[test]
    fn sqrt_rational_display() {
        assert_eq!(SqrtRational::power_of_two(2).to_string(), "2");
        assert_eq!(SqrtRational::power_of_two(1).to_string(), "sqrt(2/1)");
        assert_eq!(SqrtRational::power_of_two(-2).to_string(), "1/2");
    }
}
