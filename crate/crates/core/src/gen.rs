//! Seeded pseudo-random categories, functors, 2-cells and squares.
//!
//! Every draw is a pure function of the seed and the sequence of calls.

use std::collections::HashMap;
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::fincat::{
    coproduct_cat, enumerate_functor_tables, enumerate_nat_components, find_right_adjoint,
    first_functor_table, library, product_cat, ArrowId, CatFunctor, FinCat, NatTransform, ObjId,
    RawCategory,
};
use crate::limits::Limits;
use crate::presheaf::{representable, Presheaf};
use crate::squares::{comma_category, TwoSquare};

/// Size caps for generated categories.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    pub max_objects: usize,
    pub max_arrows: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_objects: 4,
            max_arrows: 12,
        }
    }
}

impl Budget {
    fn fits(&self, c: &FinCat) -> bool {
        c.num_objects() <= self.max_objects && c.num_arrows() <= self.max_arrows
    }
}

/// Functor enumeration cap before falling back to a randomized search.
const ENUM_CAP: usize = 4096;

pub struct Generator {
    rng: ChaCha8Rng,
    pub budget: Budget,
}

impl Generator {
    pub fn new(seed: u64, budget: Budget) -> Self {
        Generator {
            rng: ChaCha8Rng::seed_from_u64(seed),
            budget,
        }
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    /// A random category within the budget: a poset, a free category on a
    /// small acyclic graph, a named block, or a sum or product of blocks.
    pub fn category(&mut self) -> FinCat {
        for _ in 0..64 {
            let c = match self.rng.gen_range(0..100) {
                0..=2 => FinCat::empty(),
                3..=34 => self.poset(),
                35..=54 => match self.free_dag() {
                    Some(c) => c,
                    None => continue,
                },
                55..=79 => self.block(),
                _ => self.combined(),
            };
            if self.budget.fits(&c) {
                return c;
            }
        }
        FinCat::point()
    }

    /// Like [`Generator::category`] but never empty.
    pub fn nonempty_category(&mut self) -> FinCat {
        loop {
            let c = self.category();
            if !c.is_empty() {
                return c;
            }
        }
    }

    fn size(&mut self) -> usize {
        let hi = self.budget.max_objects.max(1);
        self.rng.gen_range(1..=hi)
    }

    /// Random strict order on `0..n` (closed transitively).
    pub fn poset(&mut self) -> FinCat {
        let n = self.size();
        let p: f64 = self.rng.gen_range(0.2..0.8);
        let mut rel = vec![vec![false; n]; n];
        for i in 0..n {
            for j in i + 1..n {
                rel[i][j] = self.rng.gen_bool(p);
            }
        }
        for k in 0..n {
            for i in 0..n {
                for j in 0..n {
                    if rel[i][k] && rel[k][j] {
                        rel[i][j] = true;
                    }
                }
            }
        }
        let names: Vec<String> = (0..n).map(|i| i.to_string()).collect();
        let mut raw = RawCategory::new().objects(&names);
        for i in 0..n {
            for j in 0..n {
                if rel[i][j] {
                    raw = raw.arrow(&format!("{i}<{j}"), &names[i], &names[j]);
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    if rel[i][j] && rel[j][k] {
                        raw = raw.comp(
                            &format!("{j}<{k}"),
                            &format!("{i}<{j}"),
                            &format!("{i}<{k}"),
                        );
                    }
                }
            }
        }
        raw.validate().expect("posets are categories")
    }

    /// Free category on a random acyclic multigraph; arrows are paths.
    /// `None` when the path set outgrows the budget.
    pub fn free_dag(&mut self) -> Option<FinCat> {
        let n = self.size();
        let mut edges: Vec<(usize, usize)> = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                let k = match self.rng.gen_range(0..10) {
                    0..=5 => 0,
                    6..=8 => 1,
                    _ => 2,
                };
                for _ in 0..k {
                    edges.push((i, j));
                }
            }
        }
        // Paths as edge lists, listed outermost last.
        let mut paths: Vec<Vec<usize>> = edges.iter().enumerate().map(|(e, _)| vec![e]).collect();
        let mut frontier = paths.clone();
        while !frontier.is_empty() && paths.len() + n <= self.budget.max_arrows {
            let mut next = Vec::new();
            for p in &frontier {
                let end = edges[*p.last().unwrap()].1;
                for (e, &(s, _)) in edges.iter().enumerate() {
                    if s == end {
                        let mut q = p.clone();
                        q.push(e);
                        next.push(q);
                    }
                }
            }
            paths.extend(next.iter().cloned());
            frontier = next;
        }
        let name = |p: &[usize]| {
            p.iter()
                .rev()
                .map(|e| format!("e{e}"))
                .collect::<Vec<_>>()
                .join(".")
        };
        let names: Vec<String> = (0..n).map(|i| i.to_string()).collect();
        let mut raw = RawCategory::new().objects(&names);
        let index: HashMap<Vec<usize>, usize> = paths
            .iter()
            .enumerate()
            .map(|(i, p)| (p.clone(), i))
            .collect();
        for p in &paths {
            let (s, t) = (edges[p[0]].0, edges[*p.last().unwrap()].1);
            raw = raw.arrow(&name(p), &names[s], &names[t]);
        }
        for f in &paths {
            for g in &paths {
                if edges[*f.last().unwrap()].1 == edges[g[0]].0 {
                    let mut h = f.clone();
                    h.extend(g);
                    if index.contains_key(&h) {
                        raw = raw.comp(&name(g), &name(f), &name(&h));
                    }
                }
            }
        }
        // A truncated path set is not closed under composition and fails
        // validation.
        raw.validate().ok()
    }

    fn block(&mut self) -> FinCat {
        match self.rng.gen_range(0..9) {
            0 => library::point(),
            1 => library::interval(),
            2 => library::parallel("a", "b"),
            3 => library::z2(),
            4 => library::idempotent(),
            5 => library::iso_groupoid(),
            6 => {
                let k = self.size().min(3);
                let names: Vec<String> = (0..k).map(|i| format!("d{i}")).collect();
                library::discrete(&names)
            }
            7 => library::chain(self.size().min(3)),
            _ => library::bipartite_2x2(),
        }
    }

    fn combined(&mut self) -> FinCat {
        let a = Arc::new(self.block());
        let b = Arc::new(self.block());
        let limits = Limits {
            max_objects: self.budget.max_objects,
            max_arrows: self.budget.max_arrows,
            ..Limits::default()
        };
        let r = if self.rng.gen_bool(0.5) {
            coproduct_cat(&a, &b, &limits).map(|c| (*c.cat).clone())
        } else {
            product_cat(&a, &b, &limits).map(|p| (*p.cat).clone())
        };
        r.unwrap_or_else(|_| (*a).clone())
    }

    /// A random functor `A -> B`: uniform when the functors can be
    /// enumerated, otherwise the first hit of a randomized search. `None`
    /// only when no functor exists.
    pub fn functor(&mut self, a: &Arc<FinCat>, b: &Arc<FinCat>) -> Option<CatFunctor> {
        let table = match enumerate_functor_tables(a, b, ENUM_CAP) {
            Ok(all) => all.choose(&mut self.rng).cloned(),
            Err(_) => {
                let rng = &mut self.rng;
                let mut order = |n: usize| {
                    let mut v: Vec<usize> = (0..n).collect();
                    v.shuffle(rng);
                    v
                };
                first_functor_table(a, b, &mut order)
            }
        }?;
        Some(CatFunctor::new(a.clone(), b.clone(), table.0, table.1).expect("enumerated functor"))
    }

    /// A uniformly chosen natural transformation `f => g`, if any exists.
    pub fn nat(&mut self, f: &CatFunctor, g: &CatFunctor) -> Option<NatTransform> {
        let ft = (f.ob_map().to_vec(), f.ar_map().to_vec());
        let gt = (g.ob_map().to_vec(), g.ar_map().to_vec());
        let all = enumerate_nat_components(f.src(), f.dst(), &ft, &gt);
        let comps = all.choose(&mut self.rng)?.clone();
        Some(NatTransform::new(f.clone(), g.clone(), comps).expect("enumerated 2-cell"))
    }

    /// The comma square of two random functors into a common random target.
    pub fn comma_square(&mut self) -> TwoSquare {
        loop {
            let b = Arc::new(self.category());
            let a = Arc::new(self.category());
            let bp = Arc::new(self.category());
            let (Some(u), Some(w)) = (self.functor(&a, &b), self.functor(&bp, &b)) else {
                continue;
            };
            if let Ok(c) = comma_category(&u, &w, &Limits::default()) {
                return c.square();
            }
        }
    }

    /// A random square with a random 2-cell. Falls back to a comma square when
    /// repeated draws admit no 2-cell.
    pub fn square(&mut self) -> TwoSquare {
        if self.rng.gen_ratio(1, 5) {
            return self.comma_square();
        }
        for _ in 0..32 {
            if let Some(d) = self.try_square() {
                return d;
            }
        }
        self.comma_square()
    }

    fn try_square(&mut self) -> Option<TwoSquare> {
        let b = Arc::new(self.category());
        let a = Arc::new(self.category());
        let bp = Arc::new(self.category());
        let ap = Arc::new(self.category());
        self.square_on(ap, a, bp, b)
    }

    /// A random square on the given corners, if the draws admit a 2-cell.
    pub fn square_on(
        &mut self,
        ap: Arc<FinCat>,
        a: Arc<FinCat>,
        bp: Arc<FinCat>,
        b: Arc<FinCat>,
    ) -> Option<TwoSquare> {
        let u = self.functor(&a, &b)?;
        let w = self.functor(&bp, &b)?;
        for _ in 0..4 {
            let v = self.functor(&ap, &a)?;
            let up = self.functor(&ap, &bp)?;
            let uv = CatFunctor::compose(&u, &v).ok()?;
            let wu = CatFunctor::compose(&w, &up).ok()?;
            if let Some(alpha) = self.nat(&uv, &wu) {
                return TwoSquare::new(v, u, up, w, alpha).ok();
            }
        }
        None
    }

    /// A random square whose right vertical is `u`, for pasting on the left
    /// of a square with `u' = u`.
    pub fn square_with_right_vertical(&mut self, u: &CatFunctor) -> Option<TwoSquare> {
        let ap = Arc::new(self.category());
        let bp = Arc::new(self.category());
        let w = self.functor(&bp, u.dst())?;
        for _ in 0..4 {
            let v = self.functor(&ap, u.src())?;
            let up = self.functor(&ap, &bp)?;
            let uv = CatFunctor::compose(u, &v).ok()?;
            let wu = CatFunctor::compose(&w, &up).ok()?;
            if let Some(alpha) = self.nat(&uv, &wu) {
                return TwoSquare::new(v, u.clone(), up, w, alpha).ok();
            }
        }
        None
    }

    /// A random square whose top row is `v`, for pasting below a square with
    /// `w = v`.
    pub fn square_with_top(&mut self, v: &CatFunctor) -> Option<TwoSquare> {
        let bp = Arc::new(self.category());
        let b = Arc::new(self.category());
        let u = self.functor(v.dst(), &b)?;
        for _ in 0..4 {
            let w = self.functor(&bp, &b)?;
            let up = self.functor(v.src(), &bp)?;
            let uv = CatFunctor::compose(&u, v).ok()?;
            let wu = CatFunctor::compose(&w, &up).ok()?;
            if let Some(alpha) = self.nat(&uv, &wu) {
                return TwoSquare::new(v.clone(), u, up, w, alpha).ok();
            }
        }
        None
    }

    /// A random square whose verticals `u` and `u'` both have right adjoints.
    pub fn square_with_right_adjoints(&mut self) -> TwoSquare {
        loop {
            let d = if self.rng.gen_ratio(1, 3) {
                self.comma_square()
            } else {
                match self.try_square() {
                    Some(d) => d,
                    None => continue,
                }
            };
            if find_right_adjoint(d.u()).is_some() && find_right_adjoint(d.u_prime()).is_some() {
                return d;
            }
        }
    }

    /// A random presheaf on `base` with sets of at most `max_size` elements,
    /// found by a randomized backtracking search over the arrow actions.
    /// Falls back to a representable or constant presheaf when the search
    /// gives up.
    pub fn presheaf(&mut self, base: &Arc<FinCat>, max_size: usize) -> Presheaf {
        for _ in 0..8 {
            let sizes: Vec<usize> = base
                .objects()
                .map(|_| self.rng.gen_range(0..=max_size))
                .collect();
            let mut budget = 20_000usize;
            let mut act: Vec<Option<Vec<usize>>> = base
                .arrows()
                .map(|f| {
                    base.is_identity(f)
                        .then(|| (0..sizes[base.dom(f).0]).collect())
                })
                .collect();
            let todo: Vec<ArrowId> = base.non_identity_arrows().collect();
            if self.fill_actions(base, &sizes, &todo, &mut act, &mut budget) {
                let sets = sizes
                    .iter()
                    .map(|&n| (0..n).map(|i| format!("p{i}")).collect())
                    .collect();
                let act = act.into_iter().map(|m| m.expect("filled")).collect();
                return Presheaf::new(base.clone(), sets, act).expect("search checks every law");
            }
        }
        if base.is_empty() || self.rng.gen_ratio(1, 3) {
            let n = self.rng.gen_range(0..=max_size);
            Presheaf::constant_n(base.clone(), n)
        } else {
            let x = ObjId(self.rng.gen_range(0..base.num_objects()));
            representable(base, x)
        }
    }

    fn fill_actions(
        &mut self,
        base: &FinCat,
        sizes: &[usize],
        todo: &[ArrowId],
        act: &mut Vec<Option<Vec<usize>>>,
        budget: &mut usize,
    ) -> bool {
        let Some((&f, rest)) = todo.split_first() else {
            return true;
        };
        let (n, m) = (sizes[base.cod(f).0], sizes[base.dom(f).0]);
        if n > 0 && m == 0 {
            return false;
        }
        let total = m.pow(n as u32);
        let mut codes: Vec<usize> = (0..total.max(1)).collect();
        codes.shuffle(&mut self.rng);
        for code in codes {
            if *budget == 0 {
                return false;
            }
            *budget -= 1;
            let map: Vec<usize> = (0..n)
                .map(|j| (code / m.pow(j as u32)) % m.max(1))
                .collect();
            act[f.0] = Some(map);
            if actions_consistent(base, act) && self.fill_actions(base, sizes, rest, act, budget) {
                return true;
            }
        }
        act[f.0] = None;
        false
    }
}

/// Every composite whose three actions are known acts as the composite map.
fn actions_consistent(base: &FinCat, act: &[Option<Vec<usize>>]) -> bool {
    base.arrows().all(|g| {
        base.arrows_into(base.dom(g)).iter().all(|&f| {
            let gf = base.compose(g, f);
            match (&act[g.0], &act[f.0], &act[gf.0]) {
                (Some(ag), Some(af), Some(agf)) => ag.iter().zip(agf).all(|(&z, &w)| af[z] == w),
                _ => true,
            }
        })
    })
}
