use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::error::CategoryError;

/// Dense index of an object inside one [`FinCat`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ObjId(pub usize);

/// Dense index of an arrow inside one [`FinCat`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ArrowId(pub usize);

impl ObjId {
    pub fn index(self) -> usize {
        self.0
    }
}

impl ArrowId {
    pub fn index(self) -> usize {
        self.0
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArrowData {
    pub name: String,
    pub dom: ObjId,
    pub cod: ObjId,
}

/// A finite category given by explicit object and arrow lists and a total
/// composition table.
///
/// Objects and arrows carry opaque string names; internally everything is a
/// dense index and iteration always follows declaration order. Composition is
/// stored densely over composable pairs: `comp[g][k]` is `g.f` where `f` is the
/// `k`-th arrow into `dom(g)`.
#[derive(Clone)]
pub struct FinCat {
    objects: Vec<String>,
    arrows: Vec<ArrowData>,
    identity: Vec<ArrowId>,
    into: Vec<Vec<ArrowId>>,
    in_pos: Vec<usize>,
    /// Arrows out of each object, sorted by (codomain, id).
    out: Vec<Vec<ArrowId>>,
    comp: Vec<Vec<ArrowId>>,
    obj_index: HashMap<String, ObjId>,
    arrow_index: HashMap<String, ArrowId>,
}

impl PartialEq for FinCat {
    fn eq(&self, other: &Self) -> bool {
        self.objects == other.objects
            && self.arrows == other.arrows
            && self.identity == other.identity
            && self.comp == other.comp
    }
}

impl Eq for FinCat {}

impl fmt::Debug for FinCat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FinCat")
            .field("objects", &self.objects)
            .field(
                "arrows",
                &self
                    .arrows
                    .iter()
                    .map(|a| {
                        format!(
                            "{}: {} -> {}",
                            a.name, self.objects[a.dom.0], self.objects[a.cod.0]
                        )
                    })
                    .collect::<Vec<_>>(),
            )
            .finish()
    }
}

/// Structural equality with a pointer fast path.
pub fn same_cat(a: &Arc<FinCat>, b: &Arc<FinCat>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl FinCat {
    /// Builds the derived indexes and fills the composition table from
    /// `compose`. Missing composites are returned as `(g, f)` pairs.
    pub(crate) fn try_assemble(
        objects: Vec<String>,
        arrows: Vec<ArrowData>,
        identity: Vec<ArrowId>,
        mut compose: impl FnMut(ArrowId, ArrowId) -> Option<ArrowId>,
    ) -> Result<FinCat, Vec<(ArrowId, ArrowId)>> {
        let n = objects.len();
        let mut into = vec![Vec::new(); n];
        let mut out = vec![Vec::new(); n];
        let mut in_pos = vec![0; arrows.len()];
        for (i, a) in arrows.iter().enumerate() {
            in_pos[i] = into[a.cod.0].len();
            into[a.cod.0].push(ArrowId(i));
            out[a.dom.0].push(ArrowId(i));
        }
        for list in &mut out {
            list.sort_by_key(|f| (arrows[f.0].cod, *f));
        }
        let mut missing = Vec::new();
        let mut comp = Vec::with_capacity(arrows.len());
        for (gi, g) in arrows.iter().enumerate() {
            let row: Vec<ArrowId> = into[g.dom.0]
                .iter()
                .map(|&f| match compose(ArrowId(gi), f) {
                    Some(h) => h,
                    None => {
                        missing.push((ArrowId(gi), f));
                        ArrowId(usize::MAX)
                    }
                })
                .collect();
            comp.push(row);
        }
        if !missing.is_empty() {
            return Err(missing);
        }
        let obj_index = objects
            .iter()
            .enumerate()
            .map(|(i, s)| (s.clone(), ObjId(i)))
            .collect();
        let arrow_index = arrows
            .iter()
            .enumerate()
            .map(|(i, a)| (a.name.clone(), ArrowId(i)))
            .collect();
        Ok(FinCat {
            objects,
            arrows,
            identity,
            into,
            in_pos,
            out,
            comp,
            obj_index,
            arrow_index,
        })
    }

    /// Assembles a category from a total composition function. Used by
    /// constructions whose laws hold by construction.
    pub(crate) fn assemble(
        objects: Vec<String>,
        arrows: Vec<ArrowData>,
        identity: Vec<ArrowId>,
        mut compose: impl FnMut(ArrowId, ArrowId) -> ArrowId,
    ) -> FinCat {
        let cat = Self::try_assemble(objects, arrows, identity, |g, f| Some(compose(g, f)))
            .expect("total composition");
        debug_assert!(
            cat.arrows.len() > 2000 || cat.check_laws().is_empty(),
            "constructed category violates laws: {:?}",
            cat.check_laws()
        );
        cat
    }

    /// The point category `e`: one object `•` and its identity.
    pub fn point() -> FinCat {
        FinCat::assemble(
            vec!["•".to_string()],
            vec![ArrowData {
                name: "id_•".to_string(),
                dom: ObjId(0),
                cod: ObjId(0),
            }],
            vec![ArrowId(0)],
            |_, _| ArrowId(0),
        )
    }

    pub fn empty() -> FinCat {
        FinCat::assemble(Vec::new(), Vec::new(), Vec::new(), |_, _| unreachable!())
    }

    /// Discrete category on the given object names, identities `id_<x>`.
    pub fn discrete<S: AsRef<str>>(names: &[S]) -> FinCat {
        let objects: Vec<String> = names.iter().map(|s| s.as_ref().to_string()).collect();
        let arrows = objects
            .iter()
            .enumerate()
            .map(|(i, o)| ArrowData {
                name: format!("id_{o}"),
                dom: ObjId(i),
                cod: ObjId(i),
            })
            .collect();
        let identity = (0..objects.len()).map(ArrowId).collect();
        FinCat::assemble(objects, arrows, identity, |g, _| g)
    }

    pub fn num_objects(&self) -> usize {
        self.objects.len()
    }

    pub fn num_arrows(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.objects.is_empty()
    }

    pub fn objects(&self) -> impl ExactSizeIterator<Item = ObjId> + Clone {
        (0..self.objects.len()).map(ObjId)
    }

    pub fn arrows(&self) -> impl ExactSizeIterator<Item = ArrowId> + Clone {
        (0..self.arrows.len()).map(ArrowId)
    }

    pub fn non_identity_arrows(&self) -> impl Iterator<Item = ArrowId> + '_ {
        self.arrows().filter(move |&f| !self.is_identity(f))
    }

    pub fn obj_name(&self, x: ObjId) -> &str {
        &self.objects[x.0]
    }

    pub fn arrow_name(&self, f: ArrowId) -> &str {
        &self.arrows[f.0].name
    }

    pub fn object_names(&self) -> &[String] {
        &self.objects
    }

    pub fn arrow_data(&self) -> &[ArrowData] {
        &self.arrows
    }

    pub fn obj(&self, name: &str) -> Option<ObjId> {
        self.obj_index.get(name).copied()
    }

    pub fn arrow(&self, name: &str) -> Option<ArrowId> {
        self.arrow_index.get(name).copied()
    }

    pub fn dom(&self, f: ArrowId) -> ObjId {
        self.arrows[f.0].dom
    }

    pub fn cod(&self, f: ArrowId) -> ObjId {
        self.arrows[f.0].cod
    }

    pub fn id(&self, x: ObjId) -> ArrowId {
        self.identity[x.0]
    }

    pub fn is_identity(&self, f: ArrowId) -> bool {
        let d = self.dom(f);
        d == self.cod(f) && self.identity[d.0] == f
    }

    pub fn composable(&self, g: ArrowId, f: ArrowId) -> bool {
        self.cod(f) == self.dom(g)
    }

    /// `g.f`, i.e. first `f` then `g`. Panics if `cod(f) != dom(g)`.
    pub fn compose(&self, g: ArrowId, f: ArrowId) -> ArrowId {
        assert!(
            self.composable(g, f),
            "compose: {} . {} not composable",
            self.arrow_name(g),
            self.arrow_name(f)
        );
        self.comp[g.0][self.in_pos[f.0]]
    }

    pub fn try_compose(&self, g: ArrowId, f: ArrowId) -> Option<ArrowId> {
        self.composable(g, f)
            .then(|| self.comp[g.0][self.in_pos[f.0]])
    }

    /// Composes a path listed outermost first: `[h, g, f]` gives `h.g.f`.
    pub fn compose_path(&self, path: &[ArrowId]) -> ArrowId {
        let (last, rest) = path.split_last().expect("non-empty path");
        rest.iter()
            .rev()
            .fold(*last, |acc, &g| self.compose(g, acc))
    }

    /// Arrows `x -> y` in declaration order.
    pub fn hom(&self, x: ObjId, y: ObjId) -> &[ArrowId] {
        let list = &self.out[x.0];
        let lo = list.partition_point(|f| self.arrows[f.0].cod < y);
        let hi = list.partition_point(|f| self.arrows[f.0].cod <= y);
        &list[lo..hi]
    }

    pub fn arrows_from(&self, x: ObjId) -> &[ArrowId] {
        &self.out[x.0]
    }

    pub fn arrows_into(&self, x: ObjId) -> &[ArrowId] {
        &self.into[x.0]
    }

    /// Every Hom set has at most one element.
    pub fn is_thin(&self) -> bool {
        self.objects().all(|x| {
            self.out[x.0]
                .windows(2)
                .all(|w| self.cod(w[0]) != self.cod(w[1]))
        })
    }

    /// Re-checks every category law on the stored tables.
    ///
    /// Reports every typing and unit-law violation, and the first failing
    /// triple for associativity.
    pub fn check_laws(&self) -> Vec<CategoryError> {
        let mut errors = Vec::new();
        let name = |f: ArrowId| self.arrow_name(f).to_string();
        for x in self.objects() {
            let i = self.id(x);
            if self.dom(i) != x || self.cod(i) != x {
                errors.push(CategoryError::BadIdentity {
                    arrow: name(i),
                    detail: format!("not an endomorphism of {}", self.obj_name(x)),
                });
            }
        }
        for g in self.arrows() {
            for &f in self.arrows_into(self.dom(g)) {
                let h = self.compose(g, f);
                if h.0 >= self.arrows.len()
                    || self.dom(h) != self.dom(f)
                    || self.cod(h) != self.cod(g)
                {
                    errors.push(CategoryError::BadComposite {
                        g: name(g),
                        f: name(f),
                        h: if h.0 < self.arrows.len() {
                            name(h)
                        } else {
                            "?".into()
                        },
                    });
                }
            }
        }
        if !errors.is_empty() {
            return errors;
        }
        for f in self.arrows() {
            let l = self.compose(self.id(self.cod(f)), f);
            let r = self.compose(f, self.id(self.dom(f)));
            if l != f || r != f {
                errors.push(CategoryError::BadIdentity {
                    arrow: name(if l != f {
                        self.id(self.cod(f))
                    } else {
                        self.id(self.dom(f))
                    }),
                    detail: format!("unit law fails for {}", name(f)),
                });
            }
        }
        if !errors.is_empty() {
            return errors;
        }
        for f in self.arrows() {
            for &g in self.arrows_from(self.cod(f)) {
                let gf = self.compose(g, f);
                for &h in self.arrows_from(self.cod(g)) {
                    if self.compose(h, gf) != self.compose(self.compose(h, g), f) {
                        errors.push(CategoryError::NonAssociative {
                            h: name(h),
                            g: name(g),
                            f: name(f),
                        });
                        return errors;
                    }
                }
            }
        }
        errors
    }
}
