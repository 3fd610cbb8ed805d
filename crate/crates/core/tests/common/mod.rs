//! Generators and independent oracles shared by the integration suites.
#![allow(dead_code)]

use composition_machine::{validate_machine, Configuration, Machine, MachineSpec, Quiver, RuleSet};
use rand::seq::SliceRandom;
use rand::Rng;

/// A random acyclic quiver: arrows only go forward along a hidden random
/// vertex order, so cycles are impossible while declaration order is
/// arbitrary. Parallel arrows may occur.
pub fn random_acyclic_quiver(rng: &mut impl Rng, max_arrows: usize) -> Quiver {
    let n = rng.gen_range(1..=8);
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let vertices: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
    let arrows = if n < 2 {
        0
    } else {
        rng.gen_range(0..=max_arrows)
    };
    let mut triples = Vec::new();
    for k in 0..arrows {
        let i = rng.gen_range(0..n - 1);
        let j = rng.gen_range(i + 1..n);
        triples.push((
            format!("e{k}"),
            vertices[order[i]].clone(),
            vertices[order[j]].clone(),
        ));
    }
    let vs: Vec<&str> = vertices.iter().map(String::as_str).collect();
    let ts: Vec<(&str, &str, &str)> = triples
        .iter()
        .map(|(a, s, t)| (a.as_str(), s.as_str(), t.as_str()))
        .collect();
    Quiver::from_strs(&vs, &ts).unwrap()
}

/// Brute-force path oracle: starting from every arrow, extend depth-first
/// by scanning the whole arrow list. Returns arrow-id sequences in
/// application order, unsorted.
pub fn brute_force_paths(q: &Quiver) -> Vec<Vec<String>> {
    fn extend(q: &Quiver, path: &mut Vec<usize>, out: &mut Vec<Vec<String>>) {
        out.push(path.iter().map(|&a| q.arrows()[a].to_string()).collect());
        let end = q.target_index(*path.last().unwrap());
        for b in 0..q.arrow_count() {
            if q.source_index(b) == end {
                path.push(b);
                extend(q, path, out);
                path.pop();
            }
        }
    }
    let mut out = Vec::new();
    for a in 0..q.arrow_count() {
        extend(q, &mut vec![a], &mut out);
    }
    out
}

/// A random machine with at most `max_arrows` organisms: disjoint chains,
/// some of which share their (incoming-free) start vertex.
pub fn random_machine(rng: &mut impl Rng, max_arrows: usize) -> Machine {
    let total = rng.gen_range(1..=max_arrows);
    let mut vertices: Vec<String> = Vec::new();
    let mut arrows: Vec<(String, String, String)> = Vec::new();
    let mut roots: Vec<String> = Vec::new();
    let mut left = total;
    while left > 0 {
        let len = rng.gen_range(1..=left);
        left -= len;
        let start = if !roots.is_empty() && rng.gen_bool(0.3) {
            roots.choose(rng).unwrap().clone()
        } else {
            let v = format!("v{}", vertices.len());
            vertices.push(v.clone());
            roots.push(v.clone());
            v
        };
        let mut prev = start;
        for _ in 0..len {
            let v = format!("v{}", vertices.len());
            vertices.push(v.clone());
            arrows.push((format!("e{}", arrows.len()), prev, v.clone()));
            prev = v;
        }
    }
    let vs: Vec<&str> = vertices.iter().map(String::as_str).collect();
    let ts: Vec<(&str, &str, &str)> = arrows
        .iter()
        .map(|(a, s, t)| (a.as_str(), s.as_str(), t.as_str()))
        .collect();
    let q = Quiver::from_strs(&vs, &ts).unwrap();
    let rules = RuleSet::new(
        rng.gen_range(0..4),
        rng.gen_range(0..16),
        rng.gen_range(0..16),
        rng.gen(),
    )
    .unwrap();
    let c0 = Configuration::new((0..q.arrow_count()).map(|_| rng.gen()).collect());
    validate_machine(&MachineSpec::for_quiver(&q, rules, &c0)).unwrap()
}

/// A chain `v0 -> v1 -> .. -> vk` whose computons carry random affine
/// bodies `a*x + b`.
pub fn random_expression_chain(rng: &mut impl Rng, k: usize) -> Machine {
    let names: Vec<String> = (0..=k).map(|i| format!("v{i}")).collect();
    let vs: Vec<&str> = names.iter().map(String::as_str).collect();
    let arrows: Vec<(String, String, String)> = (0..k)
        .map(|i| (format!("e{i}"), names[i].clone(), names[i + 1].clone()))
        .collect();
    let ts: Vec<(&str, &str, &str)> = arrows
        .iter()
        .map(|(a, s, t)| (a.as_str(), s.as_str(), t.as_str()))
        .collect();
    let q = Quiver::from_strs(&vs, &ts).unwrap();
    let mut spec = MachineSpec::for_quiver(
        &q,
        RuleSet::new(0, 0, 0, 0).unwrap(),
        &Configuration::all(k, true),
    );
    for f in &mut spec.computons {
        let a: i64 = rng.gen_range(-5..=5);
        let b: i64 = rng.gen_range(-20..=20);
        f.expr = Some(format!("{a} * x + ({b})"));
    }
    validate_machine(&spec).unwrap()
}
