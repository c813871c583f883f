//! Dimer covers, loop decompositions with homology tags, the no-long-loops
//! criterion and the loop-breaking constructions.
//!
//! Each ICS of a paired Majorana network is a perfect matching of the mode
//! graph. The symmetric difference of consecutive covers decomposes into
//! vertex-disjoint cycles; a schedule is sound exactly when every such cycle
//! is homologically trivial. Winding numbers are computed from per-edge cell
//! displacements (equivalently, signed crossings of two fundamental cuts).

use crate::error::{Error, Result};
use crate::lattice::{HoneycombLattice, LatticeKind, Orientation, Sublattice};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

/// An edge of a dimer cover; `displacement` is the cell displacement when
/// traversing `a → b` (ancilla and next-nearest edges carry their own).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverEdge {
    pub a: usize,
    pub b: usize,
    pub displacement: (i64, i64),
}

impl CoverEdge {
    fn key(&self) -> (usize, usize) {
        (self.a.min(self.b), self.a.max(self.b))
    }
}

/// A perfect matching on an explicit vertex set.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DimerCover {
    pub label: String,
    /// Number of vertices; every vertex in `0..vertex_count` is covered once.
    pub vertex_count: usize,
    /// Winding normalization `(p1, p2)`; `0` marks an open direction.
    pub periods: (i64, i64),
    pub edges: Vec<CoverEdge>,
}

impl DimerCover {
    pub fn new(
        label: impl Into<String>,
        vertex_count: usize,
        periods: (i64, i64),
        edges: Vec<CoverEdge>,
    ) -> Result<Self> {
        let cover = DimerCover {
            label: label.into(),
            vertex_count,
            periods,
            edges,
        };
        cover.validate()?;
        Ok(cover)
    }

    pub fn validate(&self) -> Result<()> {
        let mut seen = vec![false; self.vertex_count];
        for e in &self.edges {
            for v in [e.a, e.b] {
                if v >= self.vertex_count {
                    return Err(Error::Geometry(format!(
                        "cover edge touches vertex {v} outside 0..{}",
                        self.vertex_count
                    )));
                }
                if seen[v] {
                    return Err(Error::Geometry(format!(
                        "vertex {v} covered twice in '{}'",
                        self.label
                    )));
                }
                seen[v] = true;
            }
        }
        if let Some(v) = seen.iter().position(|&s| !s) {
            return Err(Error::Geometry(format!(
                "vertex {v} not covered in '{}'",
                self.label
            )));
        }
        Ok(())
    }

    pub fn is_perfect_matching(&self) -> bool {
        self.validate().is_ok()
    }
}

/// One cycle of a loop decomposition.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LoopCycle {
    /// Vertices in traversal order.
    pub vertices: Vec<usize>,
    pub length: usize,
    /// Winding numbers around the two fundamental cycles.
    pub winding: (i64, i64),
}

impl LoopCycle {
    pub fn is_contractible(&self) -> bool {
        self.winding == (0, 0)
    }
}

impl fmt::Display for LoopCycle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "cycle(len={}, winding=({},{}))",
            self.length, self.winding.0, self.winding.1
        )
    }
}

/// Decompose `D1 ⊕ D2` into vertex-disjoint cycles with homology tags.
pub fn loop_decomposition(d1: &DimerCover, d2: &DimerCover) -> Result<Vec<LoopCycle>> {
    if d1.vertex_count != d2.vertex_count {
        return Err(Error::VertexSetMismatch);
    }
    let periods = if d1.periods == d2.periods {
        d1.periods
    } else {
        return Err(Error::VertexSetMismatch);
    };
    // Symmetric difference on canonical edge keys.
    let e1: BTreeMap<(usize, usize), CoverEdge> =
        d1.edges.iter().map(|e| (e.key(), *e)).collect();
    let e2: BTreeMap<(usize, usize), CoverEdge> =
        d2.edges.iter().map(|e| (e.key(), *e)).collect();
    let keys: BTreeSet<(usize, usize)> = e1
        .keys()
        .chain(e2.keys())
        .filter(|k| e1.contains_key(*k) != e2.contains_key(*k))
        .cloned()
        .collect();
    let mut adjacency: BTreeMap<usize, Vec<CoverEdge>> = BTreeMap::new();
    for k in &keys {
        let e = e1.get(k).or_else(|| e2.get(k)).unwrap();
        adjacency.entry(e.a).or_default().push(*e);
        adjacency.entry(e.b).or_default().push(*e);
    }
    for (v, edges) in &adjacency {
        if edges.len() != 2 {
            return Err(Error::Geometry(format!(
                "symmetric difference is not a disjoint union of cycles at vertex {v}"
            )));
        }
    }
    let mut used: BTreeSet<(usize, usize)> = BTreeSet::new();
    let mut cycles = Vec::new();
    let starts: Vec<usize> = adjacency.keys().cloned().collect();
    for start in starts {
        if adjacency[&start].iter().all(|e| used.contains(&e.key())) {
            continue;
        }
        let mut vertices = vec![start];
        let mut disp = (0i64, 0i64);
        let mut current = start;
        loop {
            let next_edge = *adjacency[&current]
                .iter()
                .find(|e| !used.contains(&e.key()))
                .expect("open path in symmetric difference");
            used.insert(next_edge.key());
            let (next, step) = if next_edge.a == current {
                (next_edge.b, next_edge.displacement)
            } else {
                (next_edge.a, (-next_edge.displacement.0, -next_edge.displacement.1))
            };
            disp.0 += step.0;
            disp.1 += step.1;
            if next == start {
                break;
            }
            vertices.push(next);
            current = next;
        }
        let winding = normalize_winding(disp, periods)?;
        cycles.push(LoopCycle {
            length: vertices.len(),
            vertices,
            winding,
        });
    }
    Ok(cycles)
}

fn normalize_winding(disp: (i64, i64), periods: (i64, i64)) -> Result<(i64, i64)> {
    let w = |d: i64, p: i64| -> Result<i64> {
        if p == 0 {
            if d != 0 {
                return Err(Error::Geometry(format!(
                    "cycle has net displacement {d} along an open direction"
                )));
            }
            Ok(0)
        } else {
            if d % p != 0 {
                return Err(Error::Geometry(format!(
                    "cycle displacement {d} is not a multiple of the period {p}"
                )));
            }
            Ok(d / p)
        }
    };
    Ok((w(disp.0, periods.0)?, w(disp.1, periods.1)?))
}

/// Round labels accepted by [`round_dimer_cover`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum RoundLabel {
    Color(u8),
    OrientationX,
    OrientationY,
    OrientationZ,
    /// Next-nearest covers breaking the long loops of the x→y, y→z, z→x
    /// transitions respectively.
    PrimedX,
    PrimedY,
    PrimedZ,
}

impl RoundLabel {
    pub fn parse(s: &str) -> Result<Self> {
        Ok(match s {
            "R" | "r" => RoundLabel::Color(0),
            "G" | "g" => RoundLabel::Color(1),
            "B" | "b" => RoundLabel::Color(2),
            "x" => RoundLabel::OrientationX,
            "y" => RoundLabel::OrientationY,
            "z" => RoundLabel::OrientationZ,
            "x'" | "xp" => RoundLabel::PrimedX,
            "y'" | "yp" => RoundLabel::PrimedY,
            "z'" | "zp" => RoundLabel::PrimedZ,
            other => return Err(Error::Parse(format!("unknown round label '{other}'"))),
        })
    }

    pub fn name(&self) -> String {
        match self {
            RoundLabel::Color(c) => crate::lattice::COLOR_NAMES[*c as usize].to_string(),
            RoundLabel::OrientationX => "x".into(),
            RoundLabel::OrientationY => "y".into(),
            RoundLabel::OrientationZ => "z".into(),
            RoundLabel::PrimedX => "x'".into(),
            RoundLabel::PrimedY => "y'".into(),
            RoundLabel::PrimedZ => "z'".into(),
        }
    }
}

/// The dimer cover measured in one round of a named schedule on a torus.
///
/// Color rounds select the bonds of that color (a Kekulé perfect matching);
/// orientation rounds select one bond direction; primed rounds are the
/// next-nearest-neighbor matchings that interpolate between orientation
/// rounds (three-body parity measurements in the Pauli picture).
pub fn round_dimer_cover(lat: &HoneycombLattice, label: RoundLabel) -> Result<DimerCover> {
    let periods = lat.periods();
    let n = lat.num_sites();
    match label {
        RoundLabel::Color(c) => {
            let edges: Vec<CoverEdge> = lat
                .bonds()
                .iter()
                .filter(|b| b.color == c && b.orientation != Orientation::Arc)
                .map(|b| CoverEdge {
                    a: b.a,
                    b: b.b,
                    displacement: b.displacement,
                })
                .collect();
            DimerCover::new(label.name(), n, periods, edges)
        }
        RoundLabel::OrientationX | RoundLabel::OrientationY | RoundLabel::OrientationZ => {
            let want = match label {
                RoundLabel::OrientationX => Orientation::X,
                RoundLabel::OrientationY => Orientation::Y,
                _ => Orientation::Z,
            };
            let edges: Vec<CoverEdge> = lat
                .bonds()
                .iter()
                .filter(|b| b.orientation == want)
                .map(|b| CoverEdge {
                    a: b.a,
                    b: b.b,
                    displacement: b.displacement,
                })
                .collect();
            DimerCover::new(label.name(), n, periods, edges)
        }
        RoundLabel::PrimedX | RoundLabel::PrimedY | RoundLabel::PrimedZ => {
            primed_cover(lat, label)
        }
    }
}

/// Next-nearest matchings. Verified patterns (4-cycles against both flanking
/// orientation covers):
/// - x′: `A(i,j)–A(i,j+1)` for even `j`; `B(i,j)–B(i,j+1)` for odd `j`.
/// - y′: `A(i,j)–A(i+1,j)` and `B(i,j)–B(i+1,j)` for even `i`.
/// - z′: `A(i,j)–A(i+1,j)` and `B(i,j)–B(i+1,j)` for `i ≡ j (mod 2)`.
fn primed_cover(lat: &HoneycombLattice, label: RoundLabel) -> Result<DimerCover> {
    let (l1, l2) = match lat.kind {
        LatticeKind::Torus { l1, l2 } => (l1, l2),
        _ => {
            return Err(Error::Geometry(
                "primed rounds are defined on torus lattices only".into(),
            ))
        }
    };
    let needs_even = match label {
        RoundLabel::PrimedX => l2 % 2 == 0,
        RoundLabel::PrimedY => l1 % 2 == 0,
        RoundLabel::PrimedZ => l1 % 2 == 0 && l2 % 2 == 0,
        _ => unreachable!(),
    };
    if !needs_even {
        return Err(Error::Geometry(format!(
            "round {} needs even torus dimensions in the paired direction, got {l1}x{l2}",
            label.name()
        )));
    }
    let mut edges = Vec::new();
    match label {
        RoundLabel::PrimedX => {
            for i in 0..l1 {
                for j in (0..l2).step_by(2) {
                    edges.push(CoverEdge {
                        a: lat.site(Sublattice::A, i, j),
                        b: lat.site(Sublattice::A, i, j + 1),
                        displacement: (0, 1),
                    });
                    edges.push(CoverEdge {
                        a: lat.site(Sublattice::B, i, (j - 1).rem_euclid(l2)),
                        b: lat.site(Sublattice::B, i, j),
                        displacement: (0, 1),
                    });
                }
            }
        }
        RoundLabel::PrimedY => {
            for j in 0..l2 {
                for i in (0..l1).step_by(2) {
                    for sub in [Sublattice::A, Sublattice::B] {
                        edges.push(CoverEdge {
                            a: lat.site(sub, i, j),
                            b: lat.site(sub, i + 1, j),
                            displacement: (1, 0),
                        });
                    }
                }
            }
        }
        RoundLabel::PrimedZ => {
            for j in 0..l2 {
                let anchor = j.rem_euclid(2);
                for k in 0..(l1 / 2) {
                    let i = anchor + 2 * k;
                    for sub in [Sublattice::A, Sublattice::B] {
                        edges.push(CoverEdge {
                            a: lat.site(sub, i, j),
                            b: lat.site(sub, i + 1, j),
                            displacement: (1, 0),
                        });
                    }
                }
            }
        }
        _ => unreachable!(),
    }
    DimerCover::new(label.name(), lat.num_sites(), lat.periods(), edges)
}

/// Report of a no-long-loops check over a cyclic schedule of covers.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LoopsReport {
    pub pass: bool,
    /// (transition index, from-label, to-label, offending cycles)
    pub offending: Vec<(usize, String, String, Vec<LoopCycle>)>,
    pub transitions: usize,
}

/// Pass iff every adjacent pair of covers (cyclically, including last→first)
/// decomposes into homologically trivial cycles only.
pub fn no_long_loops_check(covers: &[DimerCover]) -> Result<LoopsReport> {
    if covers.len() < 2 {
        return Err(Error::Geometry(
            "no-long-loops check needs at least two covers".into(),
        ));
    }
    let mut offending = Vec::new();
    let n = covers.len();
    for t in 0..n {
        let d1 = &covers[t];
        let d2 = &covers[(t + 1) % n];
        let cycles = loop_decomposition(d1, d2)?;
        let bad: Vec<LoopCycle> = cycles
            .into_iter()
            .filter(|c| !c.is_contractible())
            .collect();
        if !bad.is_empty() {
            offending.push((t, d1.label.clone(), d2.label.clone(), bad));
        }
    }
    Ok(LoopsReport {
        pass: offending.is_empty(),
        offending,
        transitions: n,
    })
}

/// Result of breaking the long loops between two covers.
#[derive(Debug, Clone)]
pub struct LoopBreakResult {
    /// The intermediate cover to measure between the two rounds.
    pub intermediate: DimerCover,
    /// The original covers, extended to the ancilla vertex set when ancillas
    /// were added (unchanged otherwise).
    pub extended_first: DimerCover,
    pub extended_second: DimerCover,
    /// Ancilla vertex ids (empty when a next-nearest matching sufficed).
    pub ancillas: Vec<usize>,
}

/// Break the non-contractible loops of `d1 ⊕ d2`.
///
/// For the honeycomb orientation pairs (x,y), (y,z), (z,x) the corresponding
/// primed next-nearest matching is returned with no ancillas. Otherwise each
/// offending loop gets ancilla copies of its modes: the ancillas mirror the
/// loop's pairing pattern in both flanking rounds, and the intermediate round
/// pairs every loop mode with its ancilla copy.
pub fn break_long_loops(
    lat: Option<&HoneycombLattice>,
    d1: &DimerCover,
    d2: &DimerCover,
) -> Result<LoopBreakResult> {
    let cycles = loop_decomposition(d1, d2)?;
    if cycles.iter().all(|c| c.is_contractible()) {
        return Err(Error::NoLongLoops);
    }
    // Recognized honeycomb orientation pair: return the primed cover.
    if let Some(lat) = lat {
        let primed = match (d1.label.as_str(), d2.label.as_str()) {
            ("x", "y") | ("y", "x") => Some(RoundLabel::PrimedX),
            ("y", "z") | ("z", "y") => Some(RoundLabel::PrimedY),
            ("z", "x") | ("x", "z") => Some(RoundLabel::PrimedZ),
            _ => None,
        };
        if let Some(p) = primed {
            if let Ok(cover) = round_dimer_cover(lat, p) {
                return Ok(LoopBreakResult {
                    intermediate: cover,
                    extended_first: d1.clone(),
                    extended_second: d2.clone(),
                    ancillas: Vec::new(),
                });
            }
        }
    }
    // Generic ancilla construction on the offending loops.
    let mut next_vertex = d1.vertex_count;
    let mut ancilla_of: BTreeMap<usize, usize> = BTreeMap::new();
    let mut ancillas = Vec::new();
    for cycle in cycles.iter().filter(|c| !c.is_contractible()) {
        for &v in &cycle.vertices {
            ancilla_of.entry(v).or_insert_with(|| {
                let id = next_vertex;
                next_vertex += 1;
                ancillas.push(id);
                id
            });
        }
    }
    let mirror = |cover: &DimerCover, label: &str| -> Result<DimerCover> {
        let mut edges = cover.edges.clone();
        for e in &cover.edges {
            if let (Some(&a), Some(&b)) = (ancilla_of.get(&e.a), ancilla_of.get(&e.b)) {
                edges.push(CoverEdge {
                    a,
                    b,
                    displacement: e.displacement,
                });
            }
        }
        DimerCover::new(label, next_vertex, cover.periods, edges)
    };
    let extended_first = mirror(d1, &format!("{}+anc", d1.label))?;
    let extended_second = mirror(d2, &format!("{}+anc", d2.label))?;
    // Intermediate: pair every loop mode with its ancilla; keep the first
    // cover's pairing off the loops.
    let mut edges = Vec::new();
    for e in &d1.edges {
        if !ancilla_of.contains_key(&e.a) && !ancilla_of.contains_key(&e.b) {
            edges.push(*e);
        }
    }
    for (&v, &a) in &ancilla_of {
        edges.push(CoverEdge {
            a: v,
            b: a,
            displacement: (0, 0),
        });
    }
    let intermediate = DimerCover::new(
        format!("{}~{}", d1.label, d2.label),
        next_vertex,
        d1.periods,
        edges,
    )?;
    Ok(LoopBreakResult {
        intermediate,
        extended_first,
        extended_second,
        ancillas,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn torus(l1: i64, l2: i64) -> HoneycombLattice {
        HoneycombLattice::torus(l1, l2).unwrap()
    }

    #[test]
    fn color_and_orientation_covers_are_perfect_matchings() {
        for lat in [torus(3, 3), torus(3, 6), torus(6, 6)] {
            for label in [
                RoundLabel::Color(0),
                RoundLabel::Color(1),
                RoundLabel::Color(2),
                RoundLabel::OrientationX,
                RoundLabel::OrientationY,
                RoundLabel::OrientationZ,
            ] {
                let cover = round_dimer_cover(&lat, label).unwrap();
                assert!(cover.is_perfect_matching(), "{:?}", label);
                assert_eq!(cover.edges.len(), lat.num_sites() / 2);
            }
        }
    }

    #[test]
    fn primed_covers_are_perfect_matchings_on_even_tori() {
        let lat = torus(6, 6);
        for label in [RoundLabel::PrimedX, RoundLabel::PrimedY, RoundLabel::PrimedZ] {
            let cover = round_dimer_cover(&lat, label).unwrap();
            assert!(cover.is_perfect_matching(), "{:?}", label);
        }
        // Odd torus: primed rounds are undefined.
        let lat = torus(3, 3);
        assert!(round_dimer_cover(&lat, RoundLabel::PrimedX).is_err());
    }

    #[test]
    fn self_difference_is_empty() {
        let lat = torus(3, 3);
        let d = round_dimer_cover(&lat, RoundLabel::Color(0)).unwrap();
        assert!(loop_decomposition(&d, &d).unwrap().is_empty());
    }

    #[test]
    fn rg_difference_gives_hexagons_around_blue_plaquettes() {
        let lat = torus(3, 3);
        let r = round_dimer_cover(&lat, RoundLabel::Color(0)).unwrap();
        let g = round_dimer_cover(&lat, RoundLabel::Color(1)).unwrap();
        let cycles = loop_decomposition(&r, &g).unwrap();
        // 18 R ∪ G bonds partition into cycles of length 6 around B hexagons.
        assert_eq!(cycles.len(), 3);
        for c in &cycles {
            assert_eq!(c.length, 6);
            assert_eq!(c.winding, (0, 0));
        }
        // Total edge count is conserved.
        let total: usize = cycles.iter().map(|c| c.length).sum();
        assert_eq!(total, 18);
    }

    #[test]
    fn xy_difference_has_winding_chains() {
        let lat = torus(3, 3);
        let x = round_dimer_cover(&lat, RoundLabel::OrientationX).unwrap();
        let y = round_dimer_cover(&lat, RoundLabel::OrientationY).unwrap();
        let cycles = loop_decomposition(&x, &y).unwrap();
        assert!(
            cycles.iter().any(|c| !c.is_contractible()),
            "x ⊕ y must contain a non-contractible chain"
        );
    }

    #[test]
    fn rgb_schedule_passes_and_xyz_fails() {
        let lat = torus(3, 3);
        let rgb: Vec<DimerCover> = [0u8, 1, 2]
            .iter()
            .map(|&c| round_dimer_cover(&lat, RoundLabel::Color(c)).unwrap())
            .collect();
        assert!(no_long_loops_check(&rgb).unwrap().pass);
        let xyz: Vec<DimerCover> = [
            RoundLabel::OrientationX,
            RoundLabel::OrientationY,
            RoundLabel::OrientationZ,
        ]
        .iter()
        .map(|&l| round_dimer_cover(&lat, l).unwrap())
        .collect();
        let report = no_long_loops_check(&xyz).unwrap();
        assert!(!report.pass);
        assert!(!report.offending.is_empty());
    }

    #[test]
    fn primed_six_round_schedule_passes() {
        let lat = torus(6, 6);
        let labels = [
            RoundLabel::OrientationX,
            RoundLabel::PrimedX,
            RoundLabel::OrientationY,
            RoundLabel::PrimedY,
            RoundLabel::OrientationZ,
            RoundLabel::PrimedZ,
        ];
        let covers: Vec<DimerCover> = labels
            .iter()
            .map(|&l| round_dimer_cover(&lat, l).unwrap())
            .collect();
        let report = no_long_loops_check(&covers).unwrap();
        assert!(report.pass, "offending: {:?}", report.offending);
    }

    #[test]
    fn homology_of_composed_cycles_adds() {
        // Concatenating two cycles sums windings: verified on disjoint unions
        // of known cycles by summing windings of the full decomposition.
        let lat = torus(3, 3);
        let x = round_dimer_cover(&lat, RoundLabel::OrientationX).unwrap();
        let y = round_dimer_cover(&lat, RoundLabel::OrientationY).unwrap();
        let z = round_dimer_cover(&lat, RoundLabel::OrientationZ).unwrap();
        let xy: (i64, i64) = loop_decomposition(&x, &y)
            .unwrap()
            .iter()
            .fold((0, 0), |acc, c| (acc.0 + c.winding.0, acc.1 + c.winding.1));
        let yz: (i64, i64) = loop_decomposition(&y, &z)
            .unwrap()
            .iter()
            .fold((0, 0), |acc, c| (acc.0 + c.winding.0, acc.1 + c.winding.1));
        let xz: (i64, i64) = loop_decomposition(&x, &z)
            .unwrap()
            .iter()
            .fold((0, 0), |acc, c| (acc.0 + c.winding.0, acc.1 + c.winding.1));
        // [x ⊕ z] = [x ⊕ y] + [y ⊕ z] in homology (mod 2 orientation freedom
        // of unoriented cycles: compare modulo 2).
        assert_eq!(
            ((xy.0 + yz.0 - xz.0).rem_euclid(2), (xy.1 + yz.1 - xz.1).rem_euclid(2)),
            (0, 0)
        );
    }

    #[test]
    fn break_xy_long_loops_with_primed_cover() {
        let lat = torus(6, 6);
        let x = round_dimer_cover(&lat, RoundLabel::OrientationX).unwrap();
        let y = round_dimer_cover(&lat, RoundLabel::OrientationY).unwrap();
        let result = break_long_loops(Some(&lat), &x, &y).unwrap();
        assert!(result.ancillas.is_empty());
        assert!(no_long_loops_check(&[x.clone(), result.intermediate.clone()])
            .unwrap()
            .pass);
        assert!(no_long_loops_check(&[result.intermediate, y]).unwrap().pass);
    }

    #[test]
    fn breaking_short_loops_is_an_error() {
        let lat = torus(3, 3);
        let r = round_dimer_cover(&lat, RoundLabel::Color(0)).unwrap();
        let g = round_dimer_cover(&lat, RoundLabel::Color(1)).unwrap();
        assert!(matches!(
            break_long_loops(Some(&lat), &r, &g),
            Err(Error::NoLongLoops)
        ));
    }

    #[test]
    fn ancilla_construction_breaks_synthetic_square_lattice_loop() {
        // A 4-vertex ring with periods (4, 0): two covers whose difference is
        // one long loop winding the ring.
        let n = 4;
        let mk = |label: &str, pairs: Vec<(usize, usize, (i64, i64))>| {
            DimerCover::new(
                label,
                n,
                (4, 0),
                pairs
                    .into_iter()
                    .map(|(a, b, d)| CoverEdge {
                        a,
                        b,
                        displacement: d,
                    })
                    .collect(),
            )
            .unwrap()
        };
        let d1 = mk("even", vec![(0, 1, (1, 0)), (2, 3, (1, 0))]);
        let d2 = mk("odd", vec![(1, 2, (1, 0)), (3, 0, (1, 0))]);
        let cycles = loop_decomposition(&d1, &d2).unwrap();
        assert_eq!(cycles.len(), 1);
        assert_eq!(cycles[0].winding, (1, 0));
        let result = break_long_loops(None, &d1, &d2).unwrap();
        assert_eq!(result.ancillas.len(), 4);
        assert!(no_long_loops_check(&[
            result.extended_first.clone(),
            result.intermediate.clone()
        ])
        .unwrap()
        .pass);
        assert!(no_long_loops_check(&[result.intermediate, result.extended_second])
            .unwrap()
            .pass);
    }
}
