use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use petgraph::unionfind::UnionFind;
use serde::Serialize;

use super::kan::{lan, ran, ran_unit};
use super::sheaf::{hom_set, representable, restrict, Presheaf, PresheafMorphism};
use crate::error::{Error, Result};
use crate::exactness::{check_triangle, CheckOptions, CheckReport, Witness};
use crate::fincat::{coproduct_cat, same_cat, ArrowId, CatFunctor, FinCat, ObjId};
use crate::limits::Limits;

/// Sample set sizes used for the "for every set X" criteria.
pub const SAMPLE_SIZES: [usize; 4] = [0, 1, 2, 3];

/// The localizer of `D_C`-equivalences for presheaves valued in `C`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum PresheafLocalizer {
    W0,
    Wgr,
    /// The trivial localizer: every functor.
    Wtr,
}

impl PresheafLocalizer {
    pub fn as_str(self) -> &'static str {
        match self {
            PresheafLocalizer::W0 => "w0",
            PresheafLocalizer::Wgr => "wgr",
            PresheafLocalizer::Wtr => "wtr",
        }
    }
}

impl fmt::Display for PresheafLocalizer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for PresheafLocalizer {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "w0" => Ok(PresheafLocalizer::W0),
            "wgr" => Ok(PresheafLocalizer::Wgr),
            "wtr" => Ok(PresheafLocalizer::Wtr),
            _ => Err(format!("unknown localizer {s}")),
        }
    }
}

/// `Wtr` when `C` is empty or every Hom set is a singleton, `Wgr` when `C` is
/// a preorder, `W0` otherwise.
pub fn classify_presheaf_localizer(c: &FinCat) -> PresheafLocalizer {
    let all_singletons = c
        .objects()
        .all(|x| c.objects().all(|y| c.hom(x, y).len() == 1));
    if c.is_empty() || all_singletons {
        PresheafLocalizer::Wtr
    } else if c.is_thin() {
        PresheafLocalizer::Wgr
    } else {
        PresheafLocalizer::W0
    }
}

fn first_only(mut w: Vec<Witness>, opts: &CheckOptions) -> CheckReport {
    if !opts.all_witnesses {
        w.sort();
        w.truncate(1);
    }
    CheckReport::from_witnesses(w)
}

/// Asphericity of `u : A -> B` through presheaves: the unit
/// `X -> u_* u^* X` is invertible for the constant presheaf at every sample
/// set `X`.
pub fn check_aspheric_via_presheaves(
    u: &CatFunctor,
    sizes: &[usize],
    opts: &CheckOptions,
) -> Result<CheckReport> {
    let cb = u.dst();
    let mut witnesses = Vec::new();
    for &n in sizes {
        let x = Presheaf::constant_n(cb.clone(), n);
        let ext = ran(u, &restrict(u, &x)?, &opts.limits)?;
        let unit = ran_unit(&x, &ext)?;
        for b in unit.non_iso_objects() {
            witnesses.push(Witness {
                key: vec![b.0, n],
                location: cb.obj_name(b).to_string(),
                reason: format!(
                    "unit at |X|={n} maps {} elements to {}",
                    n,
                    ext.presheaf.size(b)
                ),
            });
        }
    }
    Ok(first_only(witnesses, opts))
}

/// Local equivalence of `u` over `C` (with `v = w.u`) through presheaves: the
/// canonical map `w_* X -> v_* X` is invertible for constant presheaves at
/// every sample set `X`.
pub fn check_local_equiv_via_presheaves(
    u: &CatFunctor,
    v: &CatFunctor,
    w: &CatFunctor,
    sizes: &[usize],
    opts: &CheckOptions,
) -> Result<CheckReport> {
    check_triangle(u, v, w)?;
    let cc = v.dst();
    let pt = ObjId(0);
    let mut witnesses = Vec::new();
    for &n in sizes {
        let over_b = ran(w, &Presheaf::constant_n(u.dst().clone(), n), &opts.limits)?;
        let over_a = ran(v, &Presheaf::constant_n(u.src().clone(), n), &opts.limits)?;
        let comps: Vec<Vec<usize>> = cc
            .objects()
            .map(|c| {
                let (sb, sa) = (&over_b.slices[c.0], &over_a.slices[c.0]);
                let reindex: Vec<usize> = sa
                    .triples()
                    .iter()
                    .map(|&(a, _, g)| sb.object_of(u.ob(a), pt, g).expect("(u a, g) in B/c").0)
                    .collect();
                over_b.limits[c.0]
                    .families
                    .iter()
                    .map(|x| {
                        let y: Vec<usize> = reindex.iter().map(|&k| x[k]).collect();
                        over_a.limits[c.0].position(&y).expect("restricted family")
                    })
                    .collect()
            })
            .collect();
        let m = PresheafMorphism::new_unchecked(
            over_b.presheaf.clone(),
            over_a.presheaf.clone(),
            comps,
        );
        for c in m.non_iso_objects() {
            witnesses.push(Witness {
                key: vec![c.0, n],
                location: cc.obj_name(c).to_string(),
                reason: format!(
                    "canonical map at |X|={n} has {} -> {} elements",
                    over_b.presheaf.size(c),
                    over_a.presheaf.size(c)
                ),
            });
        }
    }
    Ok(first_only(witnesses, opts))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DerCheck {
    pub axiom: &'static str,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct DerReport {
    pub checks: Vec<DerCheck>,
}

impl DerReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    fn record(&mut self, axiom: &'static str, failure: Option<String>, ok_detail: String) {
        self.checks.push(DerCheck {
            axiom,
            passed: failure.is_none(),
            detail: failure.unwrap_or(ok_detail),
        });
    }
}

/// Presheaf on `A + B` from one presheaf on each summand.
fn glue(
    sum: &Arc<FinCat>,
    in1: &CatFunctor,
    in2: &CatFunctor,
    p: &Presheaf,
    q: &Presheaf,
) -> Presheaf {
    let mut sets = vec![Vec::new(); sum.num_objects()];
    let mut act = vec![Vec::new(); sum.num_arrows()];
    for (inj, part) in [(in1, p), (in2, q)] {
        for x in inj.src().objects() {
            sets[inj.ob(x).0] = part.set(x).to_vec();
        }
        for f in inj.src().arrows() {
            act[inj.ar(f).0] = part.action(f).to_vec();
        }
    }
    Presheaf::new_unchecked(sum.clone(), sets, act)
}

fn der1(u: &CatFunctor, samples: &[Presheaf], limits: &Limits) -> Result<Option<String>> {
    let (a, b) = (u.src(), u.dst());
    let sum = coproduct_cat(a, b, limits)?;
    for f in samples {
        for g in [ran(u, f, limits)?.presheaf, lan(u, f, limits)?.presheaf] {
            let h = glue(&sum.cat, &sum.in1, &sum.in2, f, &g);
            let (h1, h2) = (restrict(&sum.in1, &h)?, restrict(&sum.in2, &h)?);
            if h1 != *f || h2 != g {
                return Ok(Some(
                    "restricting a glued presheaf does not recover its parts".into(),
                ));
            }
            if glue(&sum.cat, &sum.in1, &sum.in2, &h1, &h2) != h {
                return Ok(Some(
                    "gluing the restrictions does not recover the presheaf".into(),
                ));
            }
        }
    }
    Ok(None)
}

fn der2(samples: &[Presheaf]) -> Result<Option<String>> {
    for f in samples {
        let ends = match hom_set(f, f, 256) {
            Ok(ends) => ends,
            Err(e) if e.is_size_guard() => continue,
            Err(e) => return Err(e),
        };
        for m in ends {
            let pointwise = f.base().objects().all(|x| {
                let at = CatFunctor::from_point(f.base().clone(), x);
                let (s, t) = (
                    restrict(&at, m.src()).unwrap(),
                    restrict(&at, m.dst()).unwrap(),
                );
                let mx = PresheafMorphism::new_unchecked(s, t, vec![m.component(x).to_vec()]);
                mx.is_iso()
            });
            let invertible = match m.inverse() {
                Some(inv) => {
                    PresheafMorphism::compose(&inv, &m)? == PresheafMorphism::identity(f)
                        && PresheafMorphism::compose(&m, &inv)? == PresheafMorphism::identity(f)
                }
                None => false,
            };
            if pointwise != invertible {
                return Ok(Some(format!(
                    "endomorphism {:?} is pointwise {} but {} invertible",
                    m.components(),
                    if pointwise {
                        "bijective"
                    } else {
                        "not bijective"
                    },
                    if invertible { "is" } else { "is not" }
                )));
            }
        }
    }
    Ok(None)
}

/// `(u_* F)(b)` against `Hom(u^* h_b, F)`, matched family by family.
fn der4g(u: &CatFunctor, samples: &[Presheaf], limits: &Limits) -> Result<Option<String>> {
    let cb = u.dst();
    let pt = ObjId(0);
    for f in samples {
        let ext = ran(u, f, limits)?;
        for b in cb.objects() {
            let hb = restrict(u, &representable(cb, b))?;
            let homs = hom_set(&hb, f, limits.max_elements)?;
            let s = &ext.slices[b.0];
            let mut seen = HashSet::new();
            for x in &ext.limits[b.0].families {
                let comps: Vec<Vec<usize>> = u
                    .src()
                    .objects()
                    .map(|a| {
                        cb.hom(u.ob(a), b)
                            .iter()
                            .map(|&g| x[s.object_of(a, pt, g).expect("(a, g) in A/b").0])
                            .collect()
                    })
                    .collect();
                let Ok(m) = PresheafMorphism::new(hb.clone(), f.clone(), comps) else {
                    return Ok(Some(format!(
                        "family at {} is not a natural map",
                        cb.obj_name(b)
                    )));
                };
                seen.insert(m.components().to_vec());
            }
            if seen.len() != ext.limits[b.0].len() || seen.len() != homs.len() {
                return Ok(Some(format!(
                    "at {}: {} families, {} natural maps",
                    cb.obj_name(b),
                    ext.limits[b.0].len(),
                    homs.len()
                )));
            }
        }
    }
    Ok(None)
}

/// `(u_! F)(b)` against the quotient of `sum_a Hom(b, u a) x F(a)` by
/// `(a', u(f).g, x') ~ (a, g, F(f)(x'))`.
fn der4d(u: &CatFunctor, samples: &[Presheaf], limits: &Limits) -> Result<Option<String>> {
    let (ca, cb) = (u.src(), u.dst());
    for f in samples {
        let ext = lan(u, f, limits)?;
        for b in cb.objects() {
            let mut index = std::collections::HashMap::new();
            for a in ca.objects() {
                for &g in cb.hom(b, u.ob(a)) {
                    for x in 0..f.size(a) {
                        let n = index.len();
                        index.insert((a, g, x), n);
                    }
                }
            }
            limits.check_elements("coend", index.len())?;
            let mut uf = UnionFind::<usize>::new(index.len());
            for h in ca.arrows() {
                let (a, a2) = (ca.dom(h), ca.cod(h));
                for &g in cb.hom(b, u.ob(a)) {
                    for x2 in 0..f.size(a2) {
                        let lhs: ArrowId = cb.compose(u.ar(h), g);
                        uf.union(index[&(a2, lhs, x2)], index[&(a, g, f.act(h, x2))]);
                    }
                }
            }
            let roots: HashSet<usize> = (0..index.len()).map(|i| uf.find(i)).collect();
            let colim = &ext.colimits[b.0];
            let cos = &ext.coslices[b.0];
            let images: HashSet<usize> = colim
                .reps
                .iter()
                .map(|&(o, e)| {
                    let (_, a, g) = cos.triple(o);
                    uf.find(index[&(a, g, e)])
                })
                .collect();
            if images.len() != colim.len() || images.len() != roots.len() {
                return Ok(Some(format!(
                    "at {}: {} classes, {} coend classes",
                    cb.obj_name(b),
                    colim.len(),
                    roots.len()
                )));
            }
        }
    }
    Ok(None)
}

/// Checks gluing over `A + B`, conservativity of evaluation, and both
/// pointwise Kan formulas against independent computations.
pub fn der_axiom_suite(u: &CatFunctor, samples: &[Presheaf], limits: &Limits) -> Result<DerReport> {
    if samples.iter().any(|p| !same_cat(p.base(), u.src())) {
        return Err(Error::BaseMismatch(
            "samples must live on the source of u".into(),
        ));
    }
    let n = samples.len();
    let mut report = DerReport::default();
    report.record(
        "Der1",
        der1(u, samples, limits)?,
        format!("{n} samples glued and split"),
    );
    report.record(
        "Der2",
        der2(samples)?,
        format!("endomorphisms of {n} samples"),
    );
    report.record(
        "Der4g",
        der4g(u, samples, limits)?,
        format!("{n} samples, every object"),
    );
    report.record(
        "Der4d",
        der4d(u, samples, limits)?,
        format!("{n} samples, every object"),
    );
    Ok(report)
}
