use std::collections::{HashMap, HashSet};

use super::category::{ArrowData, ArrowId, FinCat, ObjId};
use crate::error::{CategoryError, ValidationReport};

/// Unvalidated category tables, as read from text or assembled by hand.
///
/// Identity arrows are implicit: every object `x` without an entry in
/// `identities` receives an arrow `id_<x>` ahead of the declared arrows.
/// Composites involving an identity are filled in unless listed explicitly.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RawCategory {
    pub objects: Vec<String>,
    /// `(name, dom, cod)` for every declared arrow.
    pub arrows: Vec<(String, String, String)>,
    /// Explicit `(object, arrow)` identity assignments; the arrow must be declared.
    pub identities: Vec<(String, String)>,
    /// `(g, f, h)` meaning `g.f = h`.
    pub compose: Vec<(String, String, String)>,
}

impl RawCategory {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn object(mut self, name: &str) -> Self {
        self.objects.push(name.to_string());
        self
    }

    pub fn objects<S: AsRef<str>>(mut self, names: &[S]) -> Self {
        self.objects
            .extend(names.iter().map(|s| s.as_ref().to_string()));
        self
    }

    pub fn arrow(mut self, name: &str, dom: &str, cod: &str) -> Self {
        self.arrows
            .push((name.to_string(), dom.to_string(), cod.to_string()));
        self
    }

    pub fn comp(mut self, g: &str, f: &str, h: &str) -> Self {
        self.compose
            .push((g.to_string(), f.to_string(), h.to_string()));
        self
    }

    pub fn validate(&self) -> Result<FinCat, ValidationReport> {
        validate_category(self)
    }
}

/// Validates raw tables into a [`FinCat`], or reports every violated law.
pub fn validate_category(raw: &RawCategory) -> Result<FinCat, ValidationReport> {
    let mut errors = Vec::new();

    let mut obj_index: HashMap<&str, ObjId> = HashMap::new();
    for (i, o) in raw.objects.iter().enumerate() {
        if obj_index.insert(o.as_str(), ObjId(i)).is_some() {
            errors.push(CategoryError::DuplicateId { id: o.clone() });
        }
    }

    let explicit_ids: HashMap<&str, &str> = raw
        .identities
        .iter()
        .map(|(o, a)| (o.as_str(), a.as_str()))
        .collect();
    for (o, a) in &raw.identities {
        if !obj_index.contains_key(o.as_str()) {
            errors.push(CategoryError::DanglingId {
                id: o.clone(),
                context: format!("identity assignment {o} = {a}"),
            });
        }
    }

    let mut arrows: Vec<ArrowData> = Vec::new();
    let mut identity = vec![ArrowId(usize::MAX); raw.objects.len()];
    for (i, o) in raw.objects.iter().enumerate() {
        if !explicit_ids.contains_key(o.as_str()) {
            identity[i] = ArrowId(arrows.len());
            arrows.push(ArrowData {
                name: format!("id_{o}"),
                dom: ObjId(i),
                cod: ObjId(i),
            });
        }
    }
    for (name, d, c) in &raw.arrows {
        let dom = obj_index.get(d.as_str()).copied();
        let cod = obj_index.get(c.as_str()).copied();
        for (end, found) in [(d, dom), (c, cod)] {
            if found.is_none() {
                errors.push(CategoryError::DanglingId {
                    id: end.clone(),
                    context: format!("arrow {name}"),
                });
            }
        }
        arrows.push(ArrowData {
            name: name.clone(),
            dom: dom.unwrap_or(ObjId(0)),
            cod: cod.unwrap_or(ObjId(0)),
        });
    }

    let mut arrow_index: HashMap<&str, ArrowId> = HashMap::new();
    for (i, a) in arrows.iter().enumerate() {
        if arrow_index.insert(a.name.as_str(), ArrowId(i)).is_some() {
            errors.push(CategoryError::DuplicateId { id: a.name.clone() });
        }
    }
    for (o, a) in &raw.identities {
        let (Some(&x), Some(&f)) = (obj_index.get(o.as_str()), arrow_index.get(a.as_str())) else {
            if !arrow_index.contains_key(a.as_str()) {
                errors.push(CategoryError::DanglingId {
                    id: a.clone(),
                    context: format!("identity of {o}"),
                });
            }
            continue;
        };
        if arrows[f.0].dom != x || arrows[f.0].cod != x {
            errors.push(CategoryError::BadIdentity {
                arrow: a.clone(),
                detail: format!("identity of {o} must be an endomorphism of {o}"),
            });
        }
        identity[x.0] = f;
    }
    if !errors.is_empty() {
        return Err(ValidationReport { errors });
    }

    let is_id: HashSet<ArrowId> = identity.iter().copied().collect();
    let mut table: HashMap<(ArrowId, ArrowId), ArrowId> = HashMap::new();
    for (g, f, h) in &raw.compose {
        let mut lookup = |n: &String| {
            let r = arrow_index.get(n.as_str()).copied();
            if r.is_none() {
                errors.push(CategoryError::DanglingId {
                    id: n.clone(),
                    context: format!("composite {g}.{f} = {h}"),
                });
            }
            r
        };
        let (Some(gi), Some(fi), Some(hi)) = (lookup(g), lookup(f), lookup(h)) else {
            continue;
        };
        if arrows[fi.0].cod != arrows[gi.0].dom {
            errors.push(CategoryError::NotComposable {
                g: g.clone(),
                f: f.clone(),
            });
            continue;
        }
        if is_id.contains(&gi) && hi != fi {
            errors.push(CategoryError::BadIdentity {
                arrow: g.clone(),
                detail: format!("{g}.{f} must equal {f}, got {h}"),
            });
            continue;
        }
        if is_id.contains(&fi) && hi != gi {
            errors.push(CategoryError::BadIdentity {
                arrow: f.clone(),
                detail: format!("{g}.{f} must equal {g}, got {h}"),
            });
            continue;
        }
        if arrows[hi.0].dom != arrows[fi.0].dom || arrows[hi.0].cod != arrows[gi.0].cod {
            errors.push(CategoryError::BadComposite {
                g: g.clone(),
                f: f.clone(),
                h: h.clone(),
            });
            continue;
        }
        if let Some(prev) = table.insert((gi, fi), hi) {
            if prev != hi {
                errors.push(CategoryError::ConflictingComposite {
                    g: g.clone(),
                    f: f.clone(),
                    h1: arrows[prev.0].name.clone(),
                    h2: h.clone(),
                });
            }
        }
    }
    if !errors.is_empty() {
        return Err(ValidationReport { errors });
    }

    let names: Vec<String> = arrows.iter().map(|a| a.name.clone()).collect();
    let result = FinCat::try_assemble(raw.objects.clone(), arrows, identity, |g, f| {
        if let Some(&h) = table.get(&(g, f)) {
            return Some(h);
        }
        if is_id.contains(&g) {
            Some(f)
        } else if is_id.contains(&f) {
            Some(g)
        } else {
            None
        }
    });
    let cat = match result {
        Ok(cat) => cat,
        Err(missing) => {
            let errors = missing
                .into_iter()
                .map(|(g, f)| CategoryError::MissingComposite {
                    g: names[g.0].clone(),
                    f: names[f.0].clone(),
                })
                .collect();
            return Err(ValidationReport { errors });
        }
    };
    let errors = cat.check_laws();
    if errors.is_empty() {
        Ok(cat)
    } else {
        Err(ValidationReport { errors })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn interval() -> RawCategory {
        RawCategory::new().objects(&["0", "1"]).arrow("t", "0", "1")
    }

    #[test]
    fn point_is_valid() {
        let c = RawCategory::new().object("x").validate().unwrap();
        assert_eq!(c.num_objects(), 1);
        assert_eq!(c.num_arrows(), 1);
        assert_eq!(c.arrow_name(c.id(ObjId(0))), "id_x");
    }

    #[test]
    fn interval_composites_are_forced() {
        let c = interval().validate().unwrap();
        assert_eq!(c.num_arrows(), 3);
        let t = c.arrow("t").unwrap();
        assert_eq!(c.compose(c.id(ObjId(1)), t), t);
    }

    #[test]
    fn wrong_unit_composite_is_bad_identity() {
        let err = interval().comp("t", "id_0", "id_1").validate().unwrap_err();
        assert!(
            matches!(err.errors[0], CategoryError::BadIdentity { .. }),
            "{err}"
        );
    }

    #[test]
    fn missing_composite_is_named() {
        let err = RawCategory::new()
            .objects(&["a", "b", "c"])
            .arrow("f", "a", "b")
            .arrow("g", "b", "c")
            .validate()
            .unwrap_err();
        assert_eq!(
            err.errors,
            vec![CategoryError::MissingComposite {
                g: "g".into(),
                f: "f".into()
            }]
        );
    }

    #[test]
    fn dangling_and_duplicate_ids() {
        let err = RawCategory::new()
            .objects(&["a", "a"])
            .arrow("f", "a", "zz")
            .validate()
            .unwrap_err();
        assert!(err
            .errors
            .iter()
            .any(|e| matches!(e, CategoryError::DuplicateId { id } if id == "a")));
        assert!(err
            .errors
            .iter()
            .any(|e| matches!(e, CategoryError::DanglingId { id, .. } if id == "zz")));
    }

    #[test]
    fn non_composable_entry() {
        let err = interval().comp("t", "t", "t").validate().unwrap_err();
        assert!(matches!(err.errors[0], CategoryError::NotComposable { .. }));
    }

    #[test]
    fn non_associative_monoid_is_rejected() {
        // (e.z).e = e.e = z but e.(z.e) = e.z = e
        let err = RawCategory::new()
            .object("x")
            .arrow("e", "x", "x")
            .arrow("z", "x", "x")
            .comp("e", "e", "z")
            .comp("e", "z", "e")
            .comp("z", "e", "z")
            .comp("z", "z", "z")
            .validate()
            .unwrap_err();
        assert!(
            matches!(err.errors[0], CategoryError::NonAssociative { .. }),
            "{err}"
        );
    }

    #[test]
    fn explicit_identity_assignment() {
        let raw = RawCategory {
            objects: vec!["x".into()],
            arrows: vec![("one".into(), "x".into(), "x".into())],
            identities: vec![("x".into(), "one".into())],
            compose: vec![],
        };
        let c = raw.validate().unwrap();
        assert_eq!(c.num_arrows(), 1);
        assert!(c.is_identity(c.arrow("one").unwrap()));
    }
}
