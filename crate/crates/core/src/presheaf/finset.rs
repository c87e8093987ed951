use std::collections::HashMap;

use petgraph::unionfind::UnionFind;

use super::sheaf::Presheaf;
use crate::error::Result;
use crate::fincat::{naming::tuple, ObjId};
use crate::limits::Limits;

/// The limit of a presheaf `P` on `I`, i.e. the set of compatible families
/// `(x_i)` with `P(f)(x_j) = x_i` for every `f : i -> j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinLimit {
    /// Families in lexicographic order; `families[k][i]` indexes `P(i)`.
    pub families: Vec<Vec<usize>>,
    /// `(x_1,...,x_n)` rendered from element names in index order.
    pub tokens: Vec<String>,
    index: HashMap<Vec<usize>, usize>,
}

impl FinLimit {
    pub fn len(&self) -> usize {
        self.families.len()
    }

    pub fn is_empty(&self) -> bool {
        self.families.is_empty()
    }

    pub fn position(&self, family: &[usize]) -> Option<usize> {
        self.index.get(family).copied()
    }

    /// Projection to the `i`-th factor.
    pub fn project(&self, k: usize, i: ObjId) -> usize {
        self.families[k][i.0]
    }
}

pub fn finset_limit(p: &Presheaf, limits: &Limits) -> Result<FinLimit> {
    let c = p.base();
    let n = c.num_objects();
    // Arrows to check once object `x` is assigned: those whose other
    // endpoint is already assigned.
    let checks: Vec<Vec<_>> = c
        .objects()
        .map(|x| {
            c.arrows_from(x)
                .iter()
                .chain(c.arrows_into(x))
                .copied()
                .filter(|&f| c.dom(f).0 <= x.0 && c.cod(f).0 <= x.0)
                .collect()
        })
        .collect();
    let mut families = Vec::new();
    let mut cur = vec![0usize; n];
    fn go(
        x: usize,
        p: &Presheaf,
        checks: &[Vec<crate::fincat::ArrowId>],
        cur: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
        limits: &Limits,
    ) -> Result<()> {
        if x == cur.len() {
            limits.check_elements("limit", out.len() + 1)?;
            out.push(cur.clone());
            return Ok(());
        }
        let c = p.base();
        for e in 0..p.size(ObjId(x)) {
            cur[x] = e;
            let ok = checks[x]
                .iter()
                .all(|&f| p.act(f, cur[c.cod(f).0]) == cur[c.dom(f).0]);
            if ok {
                go(x + 1, p, checks, cur, out, limits)?;
            }
        }
        Ok(())
    }
    go(0, p, &checks, &mut cur, &mut families, limits)?;
    let tokens = families
        .iter()
        .map(|fam| {
            let parts: Vec<&str> = fam
                .iter()
                .enumerate()
                .map(|(i, &e)| p.element(ObjId(i), e))
                .collect();
            tuple(&parts)
        })
        .collect();
    let index = families
        .iter()
        .enumerate()
        .map(|(k, f)| (f.clone(), k))
        .collect();
    Ok(FinLimit {
        families,
        tokens,
        index,
    })
}

/// The colimit of a presheaf `P` on `I`: the disjoint union of the `P(i)`
/// modulo `x ~ P(f)(x)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinColimit {
    /// Class of every element, per object.
    pub class_of: Vec<Vec<usize>>,
    /// Least `(object, element)` of each class; classes are ordered by it.
    pub reps: Vec<(ObjId, usize)>,
    /// `element@object` of the representative.
    pub tokens: Vec<String>,
}

impl FinColimit {
    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    /// Injection of `P(i)`.
    pub fn inject(&self, i: ObjId, e: usize) -> usize {
        self.class_of[i.0][e]
    }
}

pub fn finset_colimit(p: &Presheaf, limits: &Limits) -> Result<FinColimit> {
    let c = p.base();
    let mut offset = Vec::with_capacity(c.num_objects());
    let mut total = 0;
    for x in c.objects() {
        offset.push(total);
        total += p.size(x);
    }
    limits.check_elements("colimit", total)?;
    let mut uf = UnionFind::<usize>::new(total);
    for f in c.arrows() {
        let (i, j) = (c.dom(f), c.cod(f));
        for e in 0..p.size(j) {
            uf.union(offset[j.0] + e, offset[i.0] + p.act(f, e));
        }
    }
    let mut class_of_root: HashMap<usize, usize> = HashMap::new();
    let mut class_of = Vec::with_capacity(c.num_objects());
    let mut reps = Vec::new();
    for x in c.objects() {
        let mut row = Vec::with_capacity(p.size(x));
        for e in 0..p.size(x) {
            let r = uf.find(offset[x.0] + e);
            let k = *class_of_root.entry(r).or_insert_with(|| {
                reps.push((x, e));
                reps.len() - 1
            });
            row.push(k);
        }
        class_of.push(row);
    }
    let tokens = reps
        .iter()
        .map(|&(x, e)| format!("{}@{}", p.element(x, e), c.obj_name(x)))
        .collect();
    Ok(FinColimit {
        class_of,
        reps,
        tokens,
    })
}
