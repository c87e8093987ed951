//! Brute-force oracles shared by the integration tests.
#![allow(dead_code)]

use std::collections::HashMap;

use catsq_core::fincat::{CatFunctor, ObjId};
use catsq_core::presheaf::Presheaf;

/// Compatible families over `A/b`, counted by enumerating every assignment.
pub fn cone_count(u: &CatFunctor, f: &Presheaf, b: ObjId) -> usize {
    let (ca, cb) = (u.src(), u.dst());
    let slots: Vec<(ObjId, _)> = ca
        .objects()
        .flat_map(|a| cb.hom(u.ob(a), b).iter().map(move |&g| (a, g)))
        .collect();
    let pos: HashMap<_, usize> = slots.iter().enumerate().map(|(i, &s)| (s, i)).collect();
    let mut count = 0;
    let mut cur = vec![0usize; slots.len()];
    let total: usize = slots.iter().map(|&(a, _)| f.size(a)).product();
    for mut code in 0..total {
        for (i, &(a, _)) in slots.iter().enumerate() {
            cur[i] = code % f.size(a);
            code /= f.size(a);
        }
        let ok = ca.arrows().all(|h| {
            cb.hom(u.ob(ca.cod(h)), b).iter().all(|&g2| {
                let g1 = cb.compose(g2, u.ar(h));
                cur[pos[&(ca.dom(h), g1)]] == f.act(h, cur[pos[&(ca.cod(h), g2)]])
            })
        });
        count += ok as usize;
    }
    count
}

/// Classes of `sum_a Hom(b, u a) x F(a)`, by repeated relabelling.
pub fn cocone_count(u: &CatFunctor, f: &Presheaf, b: ObjId) -> usize {
    let (ca, cb) = (u.src(), u.dst());
    let elems: Vec<_> = ca
        .objects()
        .flat_map(|a| {
            cb.hom(b, u.ob(a))
                .iter()
                .flat_map(move |&g| (0..f.size(a)).map(move |x| (a, g, x)))
        })
        .collect();
    let pos: HashMap<_, usize> = elems.iter().enumerate().map(|(i, &e)| (e, i)).collect();
    let mut label: Vec<usize> = (0..elems.len()).collect();
    loop {
        let mut changed = false;
        for h in ca.arrows() {
            let (a, a2) = (ca.dom(h), ca.cod(h));
            for &g in cb.hom(b, u.ob(a)) {
                for x2 in 0..f.size(a2) {
                    let i = pos[&(a2, cb.compose(u.ar(h), g), x2)];
                    let j = pos[&(a, g, f.act(h, x2))];
                    let m = label[i].min(label[j]);
                    if label[i] != m || label[j] != m {
                        label[i] = m;
                        label[j] = m;
                        changed = true;
                    }
                }
            }
        }
        if !changed {
            break;
        }
    }
    let mut roots = label.clone();
    roots.sort();
    roots.dedup();
    roots.len()
}

