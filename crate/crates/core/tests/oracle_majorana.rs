//! Dense oracle for the Majorana flow: plaquette rotations and their
//! compositions are conjugations by explicit products of braid matrices
//! `exp((π/4)·c_j u c_i) = (1 + u·c_j c_i)/√2` on a Jordan-Wigner
//! representation, checked against the symbolic gauge-decorated maps.

mod common;

use common::{identity_mat, mat_close, matmul};
use floquet_forge::chiral::{period_map, plaquette_rotation, MajoranaMap};
use floquet_forge::lattice::{FluxConfig, HoneycombLattice};
use num_complex::Complex64 as C64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;
use std::collections::BTreeMap;

/// Jordan-Wigner Majorana matrices for `n` modes (n even) on n/2 qubits.
fn majorana_matrices(n: usize) -> Vec<Vec<Vec<C64>>> {
    assert!(n % 2 == 0);
    let nq = n / 2;
    let dim = 1usize << nq;
    let x = |q: usize, b: usize| -> usize { b ^ (1 << q) };
    let mut out = Vec::with_capacity(n);
    for m in 0..n {
        let q = m / 2;
        let odd = m % 2 == 1;
        let mut mat = vec![vec![C64::new(0.0, 0.0); dim]; dim];
        for b in 0..dim {
            // Z string on qubits < q.
            let mut sign = C64::new(1.0, 0.0);
            for l in 0..q {
                if (b >> l) & 1 == 1 {
                    sign = -sign;
                }
            }
            let target = x(q, b);
            // X: |b> -> |b^1>; Y: |b> -> i(-1)^{b_q}|b^1> (Y = [[0,-i],[i,0]]).
            let amp = if odd {
                let yq = if (b >> q) & 1 == 1 {
                    C64::new(0.0, -1.0)
                } else {
                    C64::new(0.0, 1.0)
                };
                sign * yq
            } else {
                sign
            };
            mat[target][b] = amp;
        }
        out.push(mat);
    }
    out
}

fn dagger(m: &[Vec<C64>]) -> Vec<Vec<C64>> {
    let n = m.len();
    let mut out = vec![vec![C64::new(0.0, 0.0); n]; n];
    for i in 0..n {
        for j in 0..n {
            out[j][i] = m[i][j].conj();
        }
    }
    out
}

fn scale_add(a: &[Vec<C64>], b: &[Vec<C64>], fa: C64, fb: C64) -> Vec<Vec<C64>> {
    a.iter()
        .zip(b.iter())
        .map(|(ra, rb)| {
            ra.iter()
                .zip(rb.iter())
                .map(|(&x, &y)| fa * x + fb * y)
                .collect()
        })
        .collect()
}

/// Dense conjugation map built from the counterclockwise rotation product of
/// braids around one hexagon: `C = B(s0,s1)·B(s1,s2)·…·B(s4,s5)` applied as
/// `c ↦ C c C†` (rightmost braid conjugates first).
fn dense_rotation(
    majoranas: &[Vec<Vec<C64>>],
    ring: &[usize],          // Majorana indices of the hexagon sites, in order
    links: &[f64],           // u value of bond (ring[k], ring[k+1]), k = 0..5
) -> Vec<Vec<C64>> {
    let dim = majoranas[0].len();
    let mut c = identity_mat(dim);
    let inv_sqrt2 = C64::new(1.0 / 2.0f64.sqrt(), 0.0);
    for k in 0..5 {
        let cj = &majoranas[ring[k]];
        let ci = &majoranas[ring[k + 1]];
        let cjci = matmul(cj, ci);
        let b = scale_add(
            &identity_mat(dim),
            &cjci,
            inv_sqrt2,
            inv_sqrt2 * C64::new(links[k], 0.0),
        );
        c = matmul(&c, &b);
    }
    c
}

fn conjugate(c: &[Vec<C64>], m: &[Vec<C64>]) -> Vec<Vec<C64>> {
    matmul(&matmul(c, m), &dagger(c))
}

/// Check the symbolic map against a dense conjugation on an index subset.
fn assert_map_matches_dense(
    lat: &HoneycombLattice,
    map: &MajoranaMap,
    dense: &[Vec<C64>],
    index_of: &BTreeMap<usize, usize>,
    majoranas: &[Vec<Vec<C64>>],
    flux: &FluxConfig,
) {
    for (&site, &mi) in index_of {
        let image_site = map.target(site);
        let coeff = map.coefficient(site, flux) as f64;
        let got = conjugate(dense, &majoranas[mi]);
        let want: Vec<Vec<C64>> = majoranas[index_of[&image_site]]
            .iter()
            .map(|row| row.iter().map(|&v| v * C64::new(coeff, 0.0)).collect())
            .collect();
        assert!(
            mat_close(&got, &want, 1e-9),
            "site {site}: dense conjugation disagrees with the symbolic map"
        );
    }
}

#[test]
fn single_rotation_matches_braid_product() {
    let lat = HoneycombLattice::torus(3, 3).unwrap();
    let mut rng = ChaCha12Rng::seed_from_u64(21);
    for plaquette in [0usize, 4, 8] {
        let p = lat.plaquettes()[plaquette].clone();
        let ring_sites = p.sites.clone();
        let index_of: BTreeMap<usize, usize> = ring_sites
            .iter()
            .enumerate()
            .map(|(k, &s)| (s, k))
            .collect();
        let majoranas = majorana_matrices(6);
        for _ in 0..4 {
            // Random gauge links on the hexagon bonds.
            let mut links = vec![false; lat.bonds().len()];
            for &b in &p.bonds {
                links[b] = rng.gen::<bool>();
            }
            let flux = FluxConfig::from_links(&lat, links.clone());
            let ring: Vec<usize> = (0..6).collect();
            let u: Vec<f64> = (0..6)
                .map(|k| flux.link_sign(p.bonds[k]) as f64)
                .collect();
            let dense = dense_rotation(&majoranas, &ring, &u);
            let map = plaquette_rotation(&lat, plaquette).unwrap();
            assert_map_matches_dense(&lat, &map, &dense, &index_of, &majoranas, &flux);
        }
    }
}

#[test]
fn composed_rotations_match_braid_products() {
    // Two adjacent hexagons of different colors: 10 shared Majorana modes.
    // The composition rule (then = conjugate first by the first map) must
    // match the matrix product with the first rotation rightmost.
    let lat = HoneycombLattice::torus(3, 3).unwrap();
    let (p1, p2) = {
        let mut found = None;
        'outer: for (i, a) in lat.plaquettes().iter().enumerate() {
            for (j, b) in lat.plaquettes().iter().enumerate() {
                if i != j && a.sites.iter().filter(|s| b.sites.contains(s)).count() == 2 {
                    found = Some((i, j));
                    break 'outer;
                }
            }
        }
        found.unwrap()
    };
    let mut sites: Vec<usize> = lat.plaquettes()[p1]
        .sites
        .iter()
        .chain(lat.plaquettes()[p2].sites.iter())
        .cloned()
        .collect();
    sites.sort_unstable();
    sites.dedup();
    assert_eq!(sites.len(), 10);
    let index_of: BTreeMap<usize, usize> =
        sites.iter().enumerate().map(|(k, &s)| (s, k)).collect();
    let majoranas = majorana_matrices(10);
    let mut rng = ChaCha12Rng::seed_from_u64(5150);
    for _ in 0..3 {
        let mut links = vec![false; lat.bonds().len()];
        for b in lat.plaquettes()[p1]
            .bonds
            .iter()
            .chain(lat.plaquettes()[p2].bonds.iter())
        {
            links[*b] = rng.gen::<bool>();
        }
        let flux = FluxConfig::from_links(&lat, links);
        let dense_of = |pi: usize| {
            let p = &lat.plaquettes()[pi];
            let ring: Vec<usize> = p.sites.iter().map(|s| index_of[s]).collect();
            let u: Vec<f64> = (0..6)
                .map(|k| flux.link_sign(p.bonds[k]) as f64)
                .collect();
            dense_rotation(&majoranas, &ring, &u)
        };
        let c1 = dense_of(p1);
        let c2 = dense_of(p2);
        let composed_dense = matmul(&c2, &c1); // c ↦ C2 C1 c C1† C2†
        let map = plaquette_rotation(&lat, p1)
            .unwrap()
            .then(&plaquette_rotation(&lat, p2).unwrap());
        // Restrict the check to sites whose full orbit stays inside the pair.
        for (&site, &mi) in &index_of {
            let image = map.target(site);
            if !index_of.contains_key(&image) {
                continue;
            }
            let gauge_inside = map
                .gauge_string(site)
                .iter()
                .all(|&b| {
                    let bd = &lat.bonds()[b];
                    index_of.contains_key(&bd.a) && index_of.contains_key(&bd.b)
                });
            if !gauge_inside {
                continue;
            }
            let coeff = map.coefficient(site, &flux) as f64;
            let got = conjugate(&composed_dense, &majoranas[mi]);
            let want: Vec<Vec<C64>> = majoranas[index_of[&image]]
                .iter()
                .map(|row| row.iter().map(|&v| v * C64::new(coeff, 0.0)).collect())
                .collect();
            assert!(
                mat_close(&got, &want, 1e-9),
                "site {site} disagrees under composition"
            );
        }
    }
}

#[test]
fn period_map_parities_match_dense_on_small_patch() {
    // On the full (3,3) torus the dense space is 2^9 — feasible: verify the
    // bond-parity action of the full period map against dense conjugation.
    let lat = HoneycombLattice::torus(3, 3).unwrap();
    let n = lat.num_sites();
    let majoranas = majorana_matrices(n);
    let mut rng = ChaCha12Rng::seed_from_u64(99);
    let mut links = vec![false; lat.bonds().len()];
    for l in links.iter_mut() {
        *l = rng.gen::<bool>();
    }
    let flux = FluxConfig::from_links(&lat, links);
    // Dense period operator: colors B, R, G; within a color the hexagons are
    // site-disjoint so the order is immaterial.
    let dim = majoranas[0].len();
    let mut period = identity_mat(dim);
    for color in [2u8, 0, 1] {
        for p in lat.plaquettes() {
            if p.color != color {
                continue;
            }
            let ring: Vec<usize> = p.sites.clone();
            let u: Vec<f64> = (0..6)
                .map(|k| flux.link_sign(p.bonds[k]) as f64)
                .collect();
            let c = dense_rotation(&majoranas, &ring, &u);
            period = matmul(&c, &period);
        }
    }
    let map = period_map(&lat).unwrap();
    // Compare the action on every R-bond parity operator i·c_a·u·c_b.
    for (bi, bond) in lat.bonds().iter().enumerate() {
        if bond.color != 0 {
            continue;
        }
        let parity = {
            let m = matmul(&majoranas[bond.a], &majoranas[bond.b]);
            let f = C64::new(0.0, flux.link_sign(bi) as f64);
            m.iter()
                .map(|row| row.iter().map(|&v| v * f).collect::<Vec<_>>())
                .collect::<Vec<_>>()
        };
        let evolved = conjugate(&period, &parity);
        let (img, coeff) = map.parity_image(&lat, bi, &flux).unwrap();
        assert_eq!(img, bi, "period map must fix R bonds");
        let want: Vec<Vec<C64>> = parity
            .iter()
            .map(|row| {
                row.iter()
                    .map(|&v| v * C64::new(coeff as f64, 0.0))
                    .collect()
            })
            .collect();
        assert!(
            mat_close(&evolved, &want, 1e-8),
            "R-bond {bi} parity evolution disagrees with dense oracle"
        );
    }
}
