//! Three-colored honeycomb geometry: torus, open region, and the cylinder
//! patch with modified zig-zag boundaries; gauge/flux bookkeeping.
//!
//! Cell conventions (cell = (i, j), sublattices A and B):
//! - z-bond: `A(i,j) — B(i,j)`
//! - x-bond: `A(i,j) — B(i+1,j-1)`
//! - y-bond: `A(i,j) — B(i,j-1)`
//!
//! Hexagon `h(i,j)` has counter-clockwise sites
//! `1=B(i,j), 2=A(i,j), 3=B(i+1,j-1), 4=A(i+1,j), 5=B(i+1,j), 6=A(i,j+1)`
//! and bond sequence z,x,y,z,x,y. Plaquette color is `(i−j) mod 3`; a bond's
//! color is the third color distinct from its two bordering plaquettes, which
//! makes it the color of the two plaquettes it points between.

use crate::error::{Error, Result};
use crate::linalg::HowellForm;
use serde::{Deserialize, Serialize};
use std::collections::HashMap;

pub const COLOR_NAMES: [&str; 3] = ["R", "G", "B"];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Sublattice {
    A,
    B,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Orientation {
    X,
    Y,
    Z,
    /// Boundary arc bond closing a triangle (cylinder patches only).
    Arc,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SiteInfo {
    pub sublattice: Sublattice,
    pub cell: (i64, i64),
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Bond {
    /// Endpoint on the A sublattice for lattice bonds; smaller tip for arcs.
    pub a: usize,
    pub b: usize,
    pub orientation: Orientation,
    /// 0 = R, 1 = G, 2 = B.
    pub color: u8,
    /// Cell displacement when traversing a → b (used for winding numbers).
    pub displacement: (i64, i64),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum PlaquetteKind {
    Hexagon,
    TriangleBottom,
    TriangleTop,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Plaquette {
    pub kind: PlaquetteKind,
    pub color: u8,
    /// Counter-clockwise site list (6 for hexagons, 3 for triangles).
    pub sites: Vec<usize>,
    /// Bond ids around the face, aligned with consecutive site pairs.
    pub bonds: Vec<usize>,
    pub cell: (i64, i64),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum LatticeKind {
    /// Periodic in both directions; `l1`, `l2` are multiples of 3.
    Torus { l1: i64, l2: i64 },
    /// Periodic in `i` (circumference `l1`, a multiple of 6), open in `j`
    /// with `w` rows of cells and two modified zig-zag boundaries.
    Cylinder { l1: i64, w: i64 },
    /// Open rectangular region of `cx × cy` cells (no boundary modification).
    Region { cx: i64, cy: i64 },
}

#[derive(Debug, Clone)]
pub struct HoneycombLattice {
    pub kind: LatticeKind,
    sites: Vec<SiteInfo>,
    bonds: Vec<Bond>,
    plaquettes: Vec<Plaquette>,
    site_index: HashMap<(Sublattice, i64, i64), usize>,
    bond_index: HashMap<(usize, usize), usize>,
}

impl HoneycombLattice {
    /// Torus with both dimensions multiples of 3 (the plaquette 3-coloring has
    /// √3×√3 periodicity, so other sizes are inconsistent with the wrapping).
    pub fn torus(l1: i64, l2: i64) -> Result<Self> {
        if l1 < 3 || l2 < 3 || l1 % 3 != 0 || l2 % 3 != 0 {
            return Err(Error::Geometry(format!(
                "torus dimensions must be multiples of 3 and at least 3, got {l1}x{l2}"
            )));
        }
        let mut lat = HoneycombLattice {
            kind: LatticeKind::Torus { l1, l2 },
            sites: Vec::new(),
            bonds: Vec::new(),
            plaquettes: Vec::new(),
            site_index: HashMap::new(),
            bond_index: HashMap::new(),
        };
        for j in 0..l2 {
            for i in 0..l1 {
                lat.push_site(Sublattice::A, i, j);
                lat.push_site(Sublattice::B, i, j);
            }
        }
        for j in 0..l2 {
            for i in 0..l1 {
                lat.push_lattice_bond(Orientation::Z, i, j);
                lat.push_lattice_bond(Orientation::X, i, j);
                lat.push_lattice_bond(Orientation::Y, i, j);
            }
        }
        for j in 0..l2 {
            for i in 0..l1 {
                lat.push_hexagon(i, j)?;
            }
        }
        Ok(lat)
    }

    /// Cylinder patch with two modified zig-zag boundaries. Bottom tips are
    /// `B(i,0)`, top tips are `A(i,w)`; each boundary gains nearest-tip arc
    /// bonds which close the triangle plaquettes that replace the cut row of
    /// hexagons. Requires `l1` a multiple of 6 (boundary pairings live on a
    /// period-6 sublattice) and at least three cell rows.
    pub fn cylinder(l1: i64, w: i64) -> Result<Self> {
        if l1 < 6 || l1 % 6 != 0 {
            return Err(Error::Geometry(format!(
                "cylinder circumference must be a positive multiple of 6, got {l1}"
            )));
        }
        if w < 3 {
            return Err(Error::Geometry(format!(
                "cylinder needs at least 3 cell rows for a hexagonal bulk, got {w}"
            )));
        }
        let mut lat = HoneycombLattice {
            kind: LatticeKind::Cylinder { l1, w },
            sites: Vec::new(),
            bonds: Vec::new(),
            plaquettes: Vec::new(),
            site_index: HashMap::new(),
            bond_index: HashMap::new(),
        };
        // A rows 1..=w, B rows 0..w.
        for j in 1..=w {
            for i in 0..l1 {
                lat.push_site(Sublattice::A, i, j);
            }
        }
        for j in 0..w {
            for i in 0..l1 {
                lat.push_site(Sublattice::B, i, j);
            }
        }
        for j in 1..=w {
            for i in 0..l1 {
                if j < w {
                    lat.push_lattice_bond(Orientation::Z, i, j);
                }
                lat.push_lattice_bond(Orientation::X, i, j);
                lat.push_lattice_bond(Orientation::Y, i, j);
            }
        }
        // Boundary arcs join alternating tip pairs, keeping every tip
        // trivalent: bottom B(2k,0)—B(2k+1,0), top A(2k,w)—A(2k+1,w).
        for k in 0..l1 / 2 {
            let i = 2 * k;
            let a = lat.site(Sublattice::B, i, 0);
            let b = lat.site(Sublattice::B, i + 1, 0);
            let color = i.rem_euclid(3) as u8; // color of the triangle it closes
            lat.push_bond(a, b, Orientation::Arc, color, (1, 0));
        }
        for k in 0..l1 / 2 {
            let i = 2 * k;
            let a = lat.site(Sublattice::A, i, w);
            let b = lat.site(Sublattice::A, i + 1, w);
            let color = (i - w).rem_euclid(3) as u8;
            lat.push_bond(a, b, Orientation::Arc, color, (1, 0));
        }
        // Hexagons rows 1..w-1.
        for j in 1..w {
            for i in 0..l1 {
                lat.push_hexagon(i, j)?;
            }
        }
        // Bottom triangles {B(2k,0), A(2k,1), B(2k+1,0)} close the arc-paired
        // remnants of the cut hexagon row.
        for k in 0..l1 / 2 {
            let i = 2 * k;
            let s1 = lat.site(Sublattice::B, i, 0);
            let s2 = lat.site(Sublattice::A, i, 1);
            let s3 = lat.site(Sublattice::B, i + 1, 0);
            let b1 = lat.bond_between(s1, s2)?; // y-edge
            let b2 = lat.bond_between(s2, s3)?; // x-edge
            let b3 = lat.bond_between(s1, s3)?; // arc
            lat.plaquettes.push(Plaquette {
                kind: PlaquetteKind::TriangleBottom,
                color: i.rem_euclid(3) as u8,
                sites: vec![s1, s2, s3],
                bonds: vec![b1, b2, b3],
                cell: (i, 0),
            });
        }
        // Top triangles {A(2k,w), B(2k+1,w-1), A(2k+1,w)}.
        for k in 0..l1 / 2 {
            let i = 2 * k;
            let s1 = lat.site(Sublattice::A, i, w);
            let s2 = lat.site(Sublattice::B, i + 1, w - 1);
            let s3 = lat.site(Sublattice::A, i + 1, w);
            let b1 = lat.bond_between(s1, s2)?; // x-edge
            let b2 = lat.bond_between(s2, s3)?; // y-edge
            let b3 = lat.bond_between(s1, s3)?; // arc
            lat.plaquettes.push(Plaquette {
                kind: PlaquetteKind::TriangleTop,
                color: (i - w).rem_euclid(3) as u8,
                sites: vec![s1, s2, s3],
                bonds: vec![b1, b2, b3],
                cell: (i, w),
            });
        }
        Ok(lat)
    }

    /// Open rectangular region of `cx × cy` full cells (both sublattice sites
    /// per cell, no boundary modification); hexagons are kept only when all
    /// six sites lie inside. Used for the restricted unitary dynamics.
    pub fn region(cx: i64, cy: i64) -> Result<Self> {
        if cx < 2 || cy < 3 {
            return Err(Error::Geometry(format!(
                "region must contain at least one full hexagon, got {cx}x{cy} cells"
            )));
        }
        let mut lat = HoneycombLattice {
            kind: LatticeKind::Region { cx, cy },
            sites: Vec::new(),
            bonds: Vec::new(),
            plaquettes: Vec::new(),
            site_index: HashMap::new(),
            bond_index: HashMap::new(),
        };
        for j in 0..cy {
            for i in 0..cx {
                lat.push_site(Sublattice::A, i, j);
                lat.push_site(Sublattice::B, i, j);
            }
        }
        for j in 0..cy {
            for i in 0..cx {
                for o in [Orientation::Z, Orientation::X, Orientation::Y] {
                    let (bi, bj) = partner_cell(o, i, j);
                    if lat.site_index.contains_key(&(Sublattice::B, bi, bj)) {
                        lat.push_lattice_bond(o, i, j);
                    }
                }
            }
        }
        for j in 0..cy {
            for i in 0..cx {
                if lat.hexagon_sites(i, j).is_some() {
                    lat.push_hexagon(i, j)?;
                }
            }
        }
        if lat.plaquettes.is_empty() {
            return Err(Error::Geometry("region contains no full hexagon".into()));
        }
        Ok(lat)
    }

    fn wrap(&self, i: i64, j: i64) -> (i64, i64) {
        match self.kind {
            LatticeKind::Torus { l1, l2 } => (i.rem_euclid(l1), j.rem_euclid(l2)),
            LatticeKind::Cylinder { l1, .. } => (i.rem_euclid(l1), j),
            LatticeKind::Region { .. } => (i, j),
        }
    }

    fn push_site(&mut self, sub: Sublattice, i: i64, j: i64) {
        let id = self.sites.len();
        self.sites.push(SiteInfo {
            sublattice: sub,
            cell: (i, j),
        });
        self.site_index.insert((sub, i, j), id);
    }

    /// Site id; coordinates are wrapped on periodic directions. Panics when
    /// the site does not exist (construction code passes valid coordinates).
    pub fn site(&self, sub: Sublattice, i: i64, j: i64) -> usize {
        let (wi, wj) = self.wrap(i, j);
        self.site_index[&(sub, wi, wj)]
    }

    pub fn try_site(&self, sub: Sublattice, i: i64, j: i64) -> Option<usize> {
        let (wi, wj) = self.wrap(i, j);
        self.site_index.get(&(sub, wi, wj)).copied()
    }

    fn push_lattice_bond(&mut self, o: Orientation, i: i64, j: i64) {
        let (bi, bj) = partner_cell(o, i, j);
        let a = self.site(Sublattice::A, i, j);
        let b = self.site(Sublattice::B, bi, bj);
        let color = bond_color(o, i, j);
        let displacement = (bi - i, bj - j);
        self.push_bond(a, b, o, color, displacement);
    }

    fn push_bond(
        &mut self,
        a: usize,
        b: usize,
        orientation: Orientation,
        color: u8,
        displacement: (i64, i64),
    ) {
        let id = self.bonds.len();
        self.bonds.push(Bond {
            a,
            b,
            orientation,
            color,
            displacement,
        });
        self.bond_index.insert((a, b), id);
        self.bond_index.insert((b, a), id);
    }

    fn hexagon_sites(&self, i: i64, j: i64) -> Option<[usize; 6]> {
        Some([
            self.try_site(Sublattice::B, i, j)?,
            self.try_site(Sublattice::A, i, j)?,
            self.try_site(Sublattice::B, i + 1, j - 1)?,
            self.try_site(Sublattice::A, i + 1, j)?,
            self.try_site(Sublattice::B, i + 1, j)?,
            self.try_site(Sublattice::A, i, j + 1)?,
        ])
    }

    fn push_hexagon(&mut self, i: i64, j: i64) -> Result<()> {
        let s = self
            .hexagon_sites(i, j)
            .ok_or_else(|| Error::Geometry(format!("hexagon ({i},{j}) is not fully contained")))?;
        let mut bonds = Vec::with_capacity(6);
        for k in 0..6 {
            bonds.push(self.bond_between(s[k], s[(k + 1) % 6])?);
        }
        self.plaquettes.push(Plaquette {
            kind: PlaquetteKind::Hexagon,
            color: (i - j).rem_euclid(3) as u8,
            sites: s.to_vec(),
            bonds,
            cell: (i, j),
        });
        Ok(())
    }

    pub fn bond_between(&self, a: usize, b: usize) -> Result<usize> {
        self.bond_index
            .get(&(a, b))
            .copied()
            .ok_or_else(|| Error::Geometry(format!("no bond between sites {a} and {b}")))
    }

    pub fn sites(&self) -> &[SiteInfo] {
        &self.sites
    }

    pub fn bonds(&self) -> &[Bond] {
        &self.bonds
    }

    pub fn plaquettes(&self) -> &[Plaquette] {
        &self.plaquettes
    }

    pub fn num_sites(&self) -> usize {
        self.sites.len()
    }

    /// Bond ids incident to a site.
    pub fn bonds_at(&self, site: usize) -> Vec<usize> {
        self.bonds
            .iter()
            .enumerate()
            .filter(|(_, b)| b.a == site || b.b == site)
            .map(|(i, _)| i)
            .collect()
    }

    /// Torus winding normalization; `0` marks an open direction.
    pub fn periods(&self) -> (i64, i64) {
        match self.kind {
            LatticeKind::Torus { l1, l2 } => (l1, l2),
            LatticeKind::Cylinder { l1, .. } => (l1, 0),
            LatticeKind::Region { .. } => (0, 0),
        }
    }

    /// Bottom boundary tips (cylinder only), indexed by column.
    pub fn bottom_tips(&self) -> Vec<usize> {
        match self.kind {
            LatticeKind::Cylinder { l1, .. } => {
                (0..l1).map(|i| self.site(Sublattice::B, i, 0)).collect()
            }
            _ => Vec::new(),
        }
    }

    pub fn top_tips(&self) -> Vec<usize> {
        match self.kind {
            LatticeKind::Cylinder { l1, w } => {
                (0..l1).map(|i| self.site(Sublattice::A, i, w)).collect()
            }
            _ => Vec::new(),
        }
    }

    /// Triangle plaquettes of a boundary patch, with their plaquette index.
    pub fn triangles(&self) -> Vec<(usize, &Plaquette)> {
        self.plaquettes
            .iter()
            .enumerate()
            .filter(|(_, p)| p.kind != PlaquetteKind::Hexagon)
            .collect()
    }

    pub fn serializable(&self) -> LatticeDump {
        LatticeDump {
            kind: self.kind,
            sites: self.sites.clone(),
            bonds: self.bonds.clone(),
            plaquettes: self.plaquettes.clone(),
        }
    }
}

fn partner_cell(o: Orientation, i: i64, j: i64) -> (i64, i64) {
    match o {
        Orientation::Z => (i, j),
        Orientation::X => (i + 1, j - 1),
        Orientation::Y => (i, j - 1),
        Orientation::Arc => unreachable!("arcs are not cell-indexed"),
    }
}

/// Color of the lattice bond anchored at `A(i,j)`: the third color relative
/// to its two bordering plaquettes.
fn bond_color(o: Orientation, i: i64, j: i64) -> u8 {
    let c = match o {
        Orientation::Z => i - j + 1,
        Orientation::X => i - j + 2,
        Orientation::Y => i - j,
        Orientation::Arc => unreachable!(),
    };
    c.rem_euclid(3) as u8
}

/// JSON-friendly structural dump.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LatticeDump {
    pub kind: LatticeKind,
    pub sites: Vec<SiteInfo>,
    pub bonds: Vec<Bond>,
    pub plaquettes: Vec<Plaquette>,
}

/// A flux assignment Φ_p per plaquette together with gauge links u_ij ∈ ±1
/// realizing it (`Π_{b ∈ p} u_b = Φ_p`).
#[derive(Debug, Clone)]
pub struct FluxConfig {
    /// Φ per plaquette: false = +1, true = −1.
    pub fluxes: Vec<bool>,
    /// u per bond: false = +1, true = −1.
    pub links: Vec<bool>,
}

impl FluxConfig {
    /// Solve for gauge links realizing the requested fluxes. On a torus the
    /// total flux must be +1.
    pub fn realize(lat: &HoneycombLattice, fluxes: &[bool]) -> Result<Self> {
        if fluxes.len() != lat.plaquettes().len() {
            return Err(Error::Geometry(format!(
                "flux vector has {} entries for {} plaquettes",
                fluxes.len(),
                lat.plaquettes().len()
            )));
        }
        let np = lat.plaquettes().len();
        let nb = lat.bonds().len();
        // One GF(2) generator per bond: its plaquette incidence vector.
        let mut cols: Vec<Vec<u64>> = vec![vec![0; np]; nb];
        for (pi, p) in lat.plaquettes().iter().enumerate() {
            for &b in &p.bonds {
                cols[b][pi] ^= 1;
            }
        }
        let target: Vec<u64> = fluxes.iter().map(|&f| u64::from(f)).collect();
        let howell = HowellForm::from_generators(&cols, 2, np);
        let combo = howell.express(&target).ok_or_else(|| {
            Error::Geometry(
                "flux configuration is not realizable (total flux must be +1 on a torus)".into(),
            )
        })?;
        let links: Vec<bool> = combo.iter().map(|&c| c % 2 == 1).collect();
        for (pi, p) in lat.plaquettes().iter().enumerate() {
            let mut acc = false;
            for &b in &p.bonds {
                acc ^= links[b];
            }
            if acc != fluxes[pi] {
                return Err(Error::Geometry("gauge link solve failed".into()));
            }
        }
        Ok(FluxConfig {
            fluxes: fluxes.to_vec(),
            links,
        })
    }

    /// Flux configuration induced by an explicit link assignment.
    pub fn from_links(lat: &HoneycombLattice, links: Vec<bool>) -> Self {
        assert_eq!(links.len(), lat.bonds().len());
        let fluxes = lat
            .plaquettes()
            .iter()
            .map(|p| p.bonds.iter().fold(false, |acc, &b| acc ^ links[b]))
            .collect();
        FluxConfig { fluxes, links }
    }

    pub fn flux_free(lat: &HoneycombLattice) -> Self {
        FluxConfig {
            fluxes: vec![false; lat.plaquettes().len()],
            links: vec![false; lat.bonds().len()],
        }
    }

    pub fn link_sign(&self, bond: usize) -> i8 {
        if self.links[bond] {
            -1
        } else {
            1
        }
    }

    pub fn flux_sign(&self, plaquette: usize) -> i8 {
        if self.fluxes[plaquette] {
            -1
        } else {
            1
        }
    }
}
