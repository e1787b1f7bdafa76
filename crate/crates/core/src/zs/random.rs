//! Seeded generators for small acyclic graphs and for category systems
//! over them that are valid by construction.
//!
//! A system is assembled orbit by orbit. Each vertex orbit is `G/K` for a
//! subgroup `K`; each edge orbit is `G/K'` for `K'` inside the stabilizers
//! of its two endpoints. The cocycle on an edge orbit comes from a
//! homomorphism `ρ : K' → Stab(source)` through the coset representatives,
//! which makes the cocycle identity and the source condition hold
//! automatically.

use super::{CategorySystem, GroupTable};
use crate::category::{FiniteCategory, Graph, MorphismId};
use crate::error::Result;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeMap;

/// Largest base category the generators emit.
pub const MAX_MORPHISMS: usize = 8;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A random acyclic graph whose path category has at most
/// [`MAX_MORPHISMS`] morphisms.
pub fn random_graph(rng: &mut ChaCha8Rng) -> Graph {
    loop {
        let nv = rng.gen_range(1..=4usize);
        let vertices: Vec<String> = (0..nv).map(|i| format!("v{i}")).collect();
        let mut edges = Vec::new();
        let ne = rng.gen_range(0..=4usize);
        for k in 0..ne {
            // Edges run from a higher index to a lower one.
            if nv < 2 {
                break;
            }
            let s = rng.gen_range(1..nv);
            let r = rng.gen_range(0..s);
            edges.push((format!("e{k}"), vertices[r].clone(), vertices[s].clone()));
        }
        let g = Graph::from_owned(vertices, edges).expect("generated names are distinct");
        if g.path_category(None).is_ok_and(|c| c.num_morphisms() <= MAX_MORPHISMS) {
            return g;
        }
    }
}

pub fn random_group(rng: &mut ChaCha8Rng) -> GroupTable {
    match rng.gen_range(0..5) {
        0 => GroupTable::trivial(),
        1 => GroupTable::cyclic(2),
        2 => GroupTable::cyclic(3),
        3 => GroupTable::cyclic(4),
        _ => GroupTable::klein(),
    }
}

struct Orbit {
    /// Cosets `gK`, ordered by least element.
    cosets: Vec<Vec<usize>>,
}

impl Orbit {
    fn new(grp: &GroupTable, sub: &[usize]) -> Orbit {
        let mut cosets: Vec<Vec<usize>> = Vec::new();
        for g in grp.elements() {
            if cosets.iter().any(|c| c.contains(&g)) {
                continue;
            }
            let mut c: Vec<usize> = sub.iter().map(|&k| grp.mul(g, k)).collect();
            c.sort();
            cosets.push(c);
        }
        Orbit { cosets }
    }

    fn coset_of(&self, g: usize) -> usize {
        self.cosets.iter().position(|c| c.contains(&g)).expect("cosets partition the group")
    }

    fn rep(&self, i: usize) -> usize {
        self.cosets[i][0]
    }
}

/// A random valid system over a random acyclic graph. With `pseudo_free`
/// set, every edge cocycle uses the inclusion `ρ`, so no group element
/// fixes an edge with trivial cocycle.
pub fn random_system(rng: &mut ChaCha8Rng, pseudo_free: bool) -> Result<(Graph, CategorySystem)> {
    loop {
        if let Some(found) = try_system(rng, pseudo_free)? {
            return Ok(found);
        }
    }
}

fn try_system(rng: &mut ChaCha8Rng, pseudo_free: bool) -> Result<Option<(Graph, CategorySystem)>> {
    let grp = random_group(rng);
    let subs = grp.subgroups();
    let levels = rng.gen_range(1..=3usize);
    // (orbit, level)
    let mut vorbits: Vec<(Orbit, usize)> = Vec::new();
    for level in 0..levels {
        for _ in 0..rng.gen_range(1..=2usize) {
            let k = if !pseudo_free && rng.gen_bool(0.5) {
                subs.iter().max_by_key(|s| s.len()).expect("the whole group is a subgroup")
            } else {
                subs.choose(rng).expect("the trivial subgroup exists")
            };
            let o = Orbit::new(&grp, k);
            vorbits.push((o, level));
        }
    }
    let vname = |o: usize, i: usize| format!("{}{}", (b'A' + o as u8) as char, i);
    let mut vertices = Vec::new();
    let mut vertex_id: Vec<(usize, usize)> = Vec::new();
    for (o, (orb, _)) in vorbits.iter().enumerate() {
        for i in 0..orb.cosets.len() {
            vertices.push(vname(o, i));
            vertex_id.push((o, i));
        }
    }
    // Edge orbits: (orbit of edges, range orbit, h, source orbit, ρ on K').
    struct EdgeOrbit {
        orbit: Orbit,
        sub: Vec<usize>,
        range: (usize, usize),
        source: usize,
        rho: Vec<usize>,
    }
    let mut eorbits: Vec<EdgeOrbit> = Vec::new();
    for _ in 0..rng.gen_range(0..=3usize) {
        let src = rng.gen_range(0..vorbits.len());
        let lower: Vec<usize> = (0..vorbits.len()).filter(|&o| vorbits[o].1 < vorbits[src].1).collect();
        let Some(&rng_orbit) = lower.choose(rng) else { continue };
        let h = rng.gen_range(0..grp.len());
        let ka = &vorbits[rng_orbit].0.cosets[0];
        let kb = &vorbits[src].0.cosets[0];
        // Stabilizer of h·a0 is h K_a h⁻¹.
        let stab_a: Vec<usize> = ka.iter().map(|&k| grp.mul(grp.mul(h, k), grp.inv(h))).collect();
        let candidates: Vec<&Vec<usize>> =
            subs.iter().filter(|s| s.iter().all(|x| stab_a.contains(x) && kb.contains(x))).collect();
        // Without the pseudo-freeness constraint, half the edge orbits take
        // the largest stabilizer and the trivial homomorphism, which plants
        // fixed edges with trivial cocycle whenever that stabilizer is
        // nontrivial.
        let plant = !pseudo_free && rng.gen_bool(0.5);
        let sub = if plant {
            (*candidates.iter().max_by_key(|s| s.len()).expect("the trivial subgroup qualifies")).clone()
        } else {
            (*candidates.choose(rng).expect("the trivial subgroup qualifies")).clone()
        };
        let rho = if pseudo_free {
            sub.clone()
        } else if plant {
            vec![grp.unit(); sub.len()]
        } else {
            let homs: Vec<Vec<usize>> =
                grp.homomorphisms_from(&sub).into_iter().filter(|m| m.iter().all(|x| kb.contains(x))).collect();
            homs.choose(rng).expect("the trivial homomorphism qualifies").clone()
        };
        let orbit = Orbit::new(&grp, &sub);
        eorbits.push(EdgeOrbit { orbit, sub, range: (rng_orbit, h), source: src, rho });
    }
    let ename = |o: usize, i: usize| format!("{}{}", (b'a' + o as u8) as char, i);
    let vertex_name = |o: usize, g: usize| vname(o, vorbits[o].0.coset_of(g));
    let mut edges = Vec::new();
    for (o, eo) in eorbits.iter().enumerate() {
        let (ro, h) = eo.range;
        let ka0 = vorbits[ro].0.rep(0);
        let kb0 = vorbits[eo.source].0.rep(0);
        for i in 0..eo.orbit.cosets.len() {
            let c = eo.orbit.rep(i);
            let r = vertex_name(ro, grp.mul(grp.mul(c, h), ka0));
            let s = vertex_name(eo.source, grp.mul(c, kb0));
            edges.push((ename(o, i), r, s));
        }
    }
    let graph = Graph::from_owned(vertices.clone(), edges)?;
    let cat = graph.path_category(None)?;
    if cat.num_morphisms() > MAX_MORPHISMS {
        return Ok(None);
    }
    let lookup = |cat: &FiniteCategory, name: &str| -> MorphismId { cat.lookup(name).expect("generated name") };
    let mut action = BTreeMap::new();
    let mut cocycle = BTreeMap::new();
    for g in grp.elements() {
        for &(o, i) in &vertex_id {
            let orb = &vorbits[o].0;
            let target = orb.coset_of(grp.mul(g, orb.rep(i)));
            action.insert((g, lookup(&cat, &vname(o, i))), lookup(&cat, &vname(o, target)));
        }
        for (o, eo) in eorbits.iter().enumerate() {
            for i in 0..eo.orbit.cosets.len() {
                let tx = eo.orbit.rep(i);
                let j = eo.orbit.coset_of(grp.mul(g, tx));
                let tgx = eo.orbit.rep(j);
                let k = grp.mul(grp.mul(grp.inv(tgx), g), tx);
                let pos = eo.sub.iter().position(|&x| x == k).expect("k lies in the edge stabilizer");
                let phi = grp.mul(grp.mul(tgx, eo.rho[pos]), grp.inv(tx));
                let e = lookup(&cat, &ename(o, i));
                action.insert((g, e), lookup(&cat, &ename(o, j)));
                cocycle.insert((g, e), phi);
            }
        }
    }
    let sys = CategorySystem::from_partial(cat, grp, &action, &cocycle)?;
    Ok(Some((graph, sys)))
}
