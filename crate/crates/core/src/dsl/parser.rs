use std::collections::{HashMap, HashSet};
use std::sync::Arc;

use super::error::{DslError, Pos};
use super::lexer::{tokenize, Tok};
use super::workspace::{FunctorDecl, NatDecl, PresheafDecl, SquareDecl, Workspace};
use crate::error::{CategoryError, Error, ValidationReport};
use crate::fincat::{library, ArrowId, CatFunctor, FinCat, NatTransform, RawCategory};
use crate::presheaf::Presheaf;
use crate::squares::TwoSquare;

type Named = (String, Pos);

struct Parser<'w> {
    toks: Vec<(Tok, Pos)>,
    i: usize,
    end: Pos,
    ws: &'w mut Workspace,
}

/// Parses `src` and adds its declarations to `ws`. Names may refer to
/// anything declared earlier, in `ws` or in `src`.
pub(crate) fn parse_into(ws: &mut Workspace, src: &str) -> Result<(), DslError> {
    let toks = tokenize(src)?;
    let end = end_pos(src);
    let mut p = Parser { toks, i: 0, end, ws };
    while p.i < p.toks.len() {
        p.block()?;
    }
    Ok(())
}

fn end_pos(src: &str) -> Pos {
    let line = src.lines().count().max(1) + usize::from(src.ends_with('\n'));
    let col = if src.ends_with('\n') {
        1
    } else {
        src.lines().last().map_or(0, |l| l.chars().count()) + 1
    };
    Pos { line, col }
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.i).map(|(t, _)| t)
    }

    fn pos(&self) -> Pos {
        self.toks.get(self.i).map_or(self.end, |(_, p)| *p)
    }

    fn found(&self) -> String {
        self.peek().map_or("end of input".into(), Tok::describe)
    }

    fn eat(&mut self, tok: &Tok) -> bool {
        if self.peek() == Some(tok) {
            self.i += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, tok: Tok) -> Result<Pos, DslError> {
        let pos = self.pos();
        if self.eat(&tok) {
            Ok(pos)
        } else {
            Err(DslError::syntax(
                pos,
                format!("expected {}, found {}", tok.describe(), self.found()),
            ))
        }
    }

    fn ident(&mut self, what: &str) -> Result<Named, DslError> {
        let pos = self.pos();
        match self.peek() {
            Some(Tok::Ident(s)) => {
                let s = s.clone();
                self.i += 1;
                Ok((s, pos))
            }
            _ => Err(DslError::syntax(
                pos,
                format!("expected {what}, found {}", self.found()),
            )),
        }
    }

    fn at_list_end(&self) -> bool {
        matches!(self.peek(), None | Some(Tok::Semi) | Some(Tok::RBrace))
    }

    /// Comma-separated items, possibly none, ending before `;` or `}`.
    fn list<T>(
        &mut self,
        mut item: impl FnMut(&mut Self) -> Result<T, DslError>,
    ) -> Result<Vec<T>, DslError> {
        let mut out = Vec::new();
        if self.at_list_end() {
            return Ok(out);
        }
        loop {
            out.push(item(self)?);
            if !self.eat(&Tok::Comma) {
                return Ok(out);
            }
        }
    }

    /// `key: ...` entries up to the closing brace, separated by `;`.
    fn entries(
        &mut self,
        keys: &[&str],
        mut body: impl FnMut(&mut Self, Named) -> Result<(), DslError>,
    ) -> Result<(), DslError> {
        self.expect(Tok::LBrace)?;
        loop {
            if self.eat(&Tok::RBrace) {
                return Ok(());
            }
            let key = self.ident("an entry name")?;
            if !keys.contains(&key.0.as_str()) {
                return Err(DslError::syntax(
                    key.1,
                    format!("unknown entry `{}` (expected one of {})", key.0, keys.join(", ")),
                ));
            }
            self.expect(Tok::Colon)?;
            body(self, key)?;
            if !self.eat(&Tok::Semi) && self.peek() != Some(&Tok::RBrace) {
                return Err(DslError::syntax(
                    self.pos(),
                    format!("expected `;` or `}}`, found {}", self.found()),
                ));
            }
        }
    }

    fn block(&mut self) -> Result<(), DslError> {
        let (kw, pos) = self.ident("a block keyword")?;
        match kw.as_str() {
            "category" => self.category(),
            "functor" => self.functor(),
            "nat" => self.nat(),
            "square" => self.square(),
            "presheaf" => self.presheaf(),
            _ => Err(DslError::syntax(
                pos,
                format!(
                    "expected `category`, `functor`, `nat`, `square` or `presheaf`, found name `{kw}`"
                ),
            )),
        }
    }

    fn fresh<T>(map: &indexmap::IndexMap<String, T>, what: &str, name: &Named) -> Result<(), DslError> {
        if map.contains_key(&name.0) {
            return Err(DslError::invalid(
                name.1,
                format!("{what} `{}` declared twice", name.0),
            ));
        }
        Ok(())
    }

    fn lookup_cat(&self, name: &Named) -> Result<Arc<FinCat>, DslError> {
        self.ws
            .categories
            .get(&name.0)
            .cloned()
            .ok_or_else(|| DslError::unresolved(name.1, "category", &name.0))
    }

    fn category(&mut self) -> Result<(), DslError> {
        let name = self.ident("a category name")?;
        Self::fresh(&self.ws.categories, "category", &name)?;
        let mut src = CatSource::default();
        self.entries(
            &["objects", "arrows", "identities", "compose", "shape"],
            |p, (key, kpos)| {
                match key.as_str() {
                    "objects" => {
                        let obs = p.list(|p| p.ident("an object name"))?;
                        src.objects.extend(obs);
                    }
                    "arrows" => {
                        let ars = p.list(|p| {
                            let f = p.ident("an arrow name")?;
                            p.expect(Tok::Colon)?;
                            let d = p.ident("a domain")?;
                            p.expect(Tok::Arrow)?;
                            let c = p.ident("a codomain")?;
                            Ok((f, d.0, c.0))
                        })?;
                        src.arrows.extend(ars);
                    }
                    "identities" => {
                        let ids = p.list(|p| {
                            let x = p.ident("an object name")?;
                            p.expect(Tok::Eq)?;
                            let f = p.ident("an arrow name")?;
                            Ok((x, f.0))
                        })?;
                        src.identities.extend(ids);
                    }
                    "compose" => {
                        let comps = p.list(|p| {
                            let g = p.ident("an arrow name")?;
                            p.expect(Tok::Dot)?;
                            let f = p.ident("an arrow name")?;
                            p.expect(Tok::Eq)?;
                            let h = p.ident("an arrow name")?;
                            Ok((g.1, g.0, f.0, h.0))
                        })?;
                        src.compose.extend(comps);
                    }
                    _ => {
                        if src.shape.is_some() {
                            return Err(DslError::syntax(kpos, "shape given twice"));
                        }
                        src.shape = Some(p.ident("a shape")?);
                    }
                }
                Ok(())
            },
        )?;
        let cat = src.build(name.1)?;
        self.ws.categories.insert(name.0, Arc::new(cat));
        Ok(())
    }

    fn functor(&mut self) -> Result<(), DslError> {
        let name = self.ident("a functor name")?;
        Self::fresh(&self.ws.functors, "functor", &name)?;
        self.expect(Tok::Colon)?;
        let a_name = self.ident("a category name")?;
        self.expect(Tok::Arrow)?;
        let b_name = self.ident("a category name")?;
        let (a, b) = (self.lookup_cat(&a_name)?, self.lookup_cat(&b_name)?);
        let mut ob = vec![None; a.num_objects()];
        let mut ar = vec![None; a.num_arrows()];
        self.entries(&["ob", "ar"], |p, (key, _)| {
            let pairs = p.list(|p| {
                let x = p.ident("a name")?;
                p.expect(Tok::MapsTo)?;
                let y = p.ident("a name")?;
                Ok((x, y))
            })?;
            for (x, y) in pairs {
                if key == "ob" {
                    let i = a
                        .obj(&x.0)
                        .ok_or_else(|| DslError::unresolved(x.1, "object", &x.0))?;
                    let j = b
                        .obj(&y.0)
                        .ok_or_else(|| DslError::unresolved(y.1, "object", &y.0))?;
                    ob[i.0] = Some(j);
                } else {
                    let i = a
                        .arrow(&x.0)
                        .ok_or_else(|| DslError::unresolved(x.1, "arrow", &x.0))?;
                    let j = b
                        .arrow(&y.0)
                        .ok_or_else(|| DslError::unresolved(y.1, "arrow", &y.0))?;
                    ar[i.0] = Some(j);
                }
            }
            Ok(())
        })?;
        let ob = ob
            .into_iter()
            .enumerate()
            .map(|(i, y)| {
                y.ok_or_else(|| {
                    DslError::invalid(
                        name.1,
                        format!("object `{}` has no image", a.obj_name(crate::fincat::ObjId(i))),
                    )
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        // An unlisted arrow goes to the only arrow between the images, if unique.
        let ar = a
            .arrows()
            .map(|f| {
                if let Some(g) = ar[f.0] {
                    return Ok(g);
                }
                let hom = b.hom(ob[a.dom(f).0], ob[a.cod(f).0]);
                if a.is_identity(f) {
                    return Ok(b.id(ob[a.dom(f).0]));
                }
                match hom {
                    [g] => Ok(*g),
                    _ => Err(DslError::invalid(
                        name.1,
                        format!("arrow `{}` has no image", a.arrow_name(f)),
                    )),
                }
            })
            .collect::<Result<Vec<ArrowId>, _>>()?;
        let functor = CatFunctor::new(a, b, ob, ar)
            .map_err(|e| DslError::wrap(name.1, &format!("functor `{}`", name.0), e))?;
        self.ws.functors.insert(
            name.0,
            FunctorDecl {
                src: a_name.0,
                dst: b_name.0,
                functor,
            },
        );
        Ok(())
    }

    /// `u.v.w`, outermost first. A category name stands for its identity.
    fn composite(&mut self) -> Result<(Vec<String>, CatFunctor), DslError> {
        let mut parts = vec![self.ident("a functor name")?];
        while self.eat(&Tok::Dot) {
            parts.push(self.ident("a functor name")?);
        }
        let mut acc: Option<CatFunctor> = None;
        for part in parts.iter().rev() {
            let f = match self.ws.functors.get(&part.0) {
                Some(d) => d.functor.clone(),
                None => match self.ws.categories.get(&part.0) {
                    Some(c) => CatFunctor::identity(c.clone()),
                    None => return Err(DslError::unresolved(part.1, "functor", &part.0)),
                },
            };
            acc = Some(match acc {
                None => f,
                Some(inner) => CatFunctor::compose(&f, &inner)
                    .map_err(|e| DslError::wrap(part.1, &format!("composite at `{}`", part.0), e))?,
            });
        }
        let names = parts.into_iter().map(|(n, _)| n).collect();
        Ok((names, acc.expect("nonempty composite")))
    }

    fn nat(&mut self) -> Result<(), DslError> {
        let name = self.ident("a 2-cell name")?;
        Self::fresh(&self.ws.nats, "2-cell", &name)?;
        self.expect(Tok::Colon)?;
        let (src_names, f) = self.composite()?;
        self.expect(Tok::DoubleArrow)?;
        let (dst_names, g) = self.composite()?;
        let (a, c) = (f.src().clone(), f.dst().clone());
        self.expect(Tok::LBrace)?;
        let pairs = self.list(|p| {
            let x = p.ident("an object name")?;
            p.expect(Tok::MapsTo)?;
            let h = p.ident("an arrow name")?;
            Ok((x, h))
        })?;
        self.eat(&Tok::Semi);
        self.expect(Tok::RBrace)?;
        let mut comps = vec![None; a.num_objects()];
        for (x, h) in pairs {
            let i = a
                .obj(&x.0)
                .ok_or_else(|| DslError::unresolved(x.1, "object", &x.0))?;
            let j = c
                .arrow(&h.0)
                .ok_or_else(|| DslError::unresolved(h.1, "arrow", &h.0))?;
            comps[i.0] = Some(j);
        }
        let comps = a
            .objects()
            .map(|x| match comps[x.0] {
                Some(h) => Ok(h),
                None => match c.hom(f.ob(x), g.ob(x)) {
                    [h] => Ok(*h),
                    _ => Err(DslError::invalid(
                        name.1,
                        format!("no component given at `{}`", a.obj_name(x)),
                    )),
                },
            })
            .collect::<Result<Vec<_>, _>>()?;
        let nat = NatTransform::new(f, g, comps)
            .map_err(|e| DslError::wrap(name.1, &format!("2-cell `{}`", name.0), e))?;
        self.ws.nats.insert(
            name.0,
            NatDecl {
                src: src_names,
                dst: dst_names,
                nat,
            },
        );
        Ok(())
    }

    fn square(&mut self) -> Result<(), DslError> {
        let name = self.ident("a square name")?;
        Self::fresh(&self.ws.squares, "square", &name)?;
        self.expect(Tok::LBrace)?;
        let mut legs: HashMap<String, (Vec<String>, CatFunctor)> = HashMap::new();
        let mut alpha: Option<Named> = None;
        loop {
            if self.eat(&Tok::RBrace) {
                break;
            }
            let key = self.ident("a square entry")?;
            self.expect(Tok::Colon)?;
            match key.0.as_str() {
                "v" | "u" | "uprime" | "w" => {
                    let c = self.composite()?;
                    if legs.insert(key.0.clone(), c).is_some() {
                        return Err(DslError::syntax(key.1, format!("`{}` given twice", key.0)));
                    }
                }
                "alpha" => alpha = Some(self.ident("a 2-cell name")?),
                other => {
                    return Err(DslError::syntax(
                        key.1,
                        format!("unknown entry `{other}` (expected v, u, uprime, w, alpha)"),
                    ))
                }
            }
            if !self.eat(&Tok::Comma) && !self.eat(&Tok::Semi) && self.peek() != Some(&Tok::RBrace)
            {
                return Err(DslError::syntax(
                    self.pos(),
                    format!("expected `,`, `;` or `}}`, found {}", self.found()),
                ));
            }
        }
        let mut take = |k: &str| {
            legs.remove(k)
                .ok_or_else(|| DslError::invalid(name.1, format!("square has no `{k}` entry")))
        };
        let (v_names, v) = take("v")?;
        let (u_names, u) = take("u")?;
        let (up_names, up) = take("uprime")?;
        let (w_names, w) = take("w")?;
        let alpha = alpha.ok_or_else(|| DslError::invalid(name.1, "square has no `alpha` entry"))?;
        let nat = self
            .ws
            .nats
            .get(&alpha.0)
            .ok_or_else(|| DslError::unresolved(alpha.1, "2-cell", &alpha.0))?
            .nat
            .clone();
        let square = TwoSquare::new(v, u, up, w, nat)
            .map_err(|e| DslError::wrap(name.1, &format!("square `{}`", name.0), e))?;
        self.ws.squares.insert(
            name.0,
            SquareDecl {
                v: v_names,
                u: u_names,
                u_prime: up_names,
                w: w_names,
                alpha: alpha.0,
                square,
            },
        );
        Ok(())
    }

    fn presheaf(&mut self) -> Result<(), DslError> {
        let name = self.ident("a presheaf name")?;
        Self::fresh(&self.ws.presheaves, "presheaf", &name)?;
        let on = self.ident("`on`")?;
        if on.0 != "on" {
            return Err(DslError::syntax(on.1, format!("expected `on`, found name `{}`", on.0)));
        }
        let base_name = self.ident("a category name")?;
        let a = self.lookup_cat(&base_name)?;
        self.expect(Tok::LBrace)?;
        let mut sets: Vec<Option<Vec<String>>> = vec![None; a.num_objects()];
        let mut acts: Vec<(Named, Vec<(Named, Named)>)> = Vec::new();
        loop {
            if self.eat(&Tok::RBrace) {
                break;
            }
            let key = self.ident("an object or arrow name")?;
            self.expect(Tok::Colon)?;
            if self.eat(&Tok::LBrace) {
                let x = a
                    .obj(&key.0)
                    .ok_or_else(|| DslError::unresolved(key.1, "object", &key.0))?;
                let elems = self.list(|p| p.ident("an element"))?;
                self.expect(Tok::RBrace)?;
                let mut seen = HashSet::new();
                for e in &elems {
                    if !seen.insert(e.0.as_str()) {
                        return Err(DslError::invalid(
                            e.1,
                            format!("element `{}` listed twice at `{}`", e.0, key.0),
                        ));
                    }
                }
                if sets[x.0].is_some() {
                    return Err(DslError::invalid(key.1, format!("set at `{}` given twice", key.0)));
                }
                sets[x.0] = Some(elems.into_iter().map(|e| e.0).collect());
            } else {
                let pairs = self.list(|p| {
                    let img = p.ident("an element")?;
                    p.expect(Tok::BackArrow)?;
                    let src = p.ident("an element")?;
                    Ok((img, src))
                })?;
                acts.push((key, pairs));
            }
            if !self.eat(&Tok::Semi) && self.peek() != Some(&Tok::RBrace) {
                return Err(DslError::syntax(
                    self.pos(),
                    format!("expected `;` or `}}`, found {}", self.found()),
                ));
            }
        }
        let sets = a
            .objects()
            .map(|x| {
                sets[x.0].clone().ok_or_else(|| {
                    DslError::invalid(name.1, format!("no set given at `{}`", a.obj_name(x)))
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        let index: Vec<HashMap<&str, usize>> = sets
            .iter()
            .map(|s| s.iter().enumerate().map(|(i, e)| (e.as_str(), i)).collect())
            .collect();
        let mut maps: Vec<Option<Vec<usize>>> = vec![None; a.num_arrows()];
        for (f, pairs) in &acts {
            let fi = a
                .arrow(&f.0)
                .ok_or_else(|| DslError::unresolved(f.1, "arrow", &f.0))?;
            let (x, y) = (a.dom(fi), a.cod(fi));
            let mut m = vec![None; sets[y.0].len()];
            for (img, src) in pairs {
                let j = *index[y.0].get(src.0.as_str()).ok_or_else(|| {
                    DslError::unresolved(src.1, &format!("element at `{}`", a.obj_name(y)), &src.0)
                })?;
                let i = *index[x.0].get(img.0.as_str()).ok_or_else(|| {
                    DslError::unresolved(img.1, &format!("element at `{}`", a.obj_name(x)), &img.0)
                })?;
                if m[j].is_some_and(|k| k != i) {
                    return Err(DslError::invalid(
                        src.1,
                        format!("`{}` mapped twice by `{}`", src.0, f.0),
                    ));
                }
                m[j] = Some(i);
            }
            let m = m
                .into_iter()
                .enumerate()
                .map(|(j, i)| {
                    i.ok_or_else(|| {
                        DslError::invalid(
                            f.1,
                            format!("action of `{}` undefined on `{}`", f.0, sets[y.0][j]),
                        )
                    })
                })
                .collect::<Result<Vec<_>, _>>()?;
            maps[fi.0] = Some(m);
        }
        // Identities, maps out of the empty set and maps into a singleton are forced.
        let act = a
            .arrows()
            .map(|f| {
                if let Some(m) = maps[f.0].take() {
                    return Ok(m);
                }
                let (x, y) = (a.dom(f), a.cod(f));
                if a.is_identity(f) {
                    Ok((0..sets[x.0].len()).collect())
                } else if sets[y.0].is_empty() || sets[x.0].len() == 1 {
                    Ok(vec![0; sets[y.0].len()])
                } else {
                    Err(DslError::invalid(
                        name.1,
                        format!("no action given for `{}`", a.arrow_name(f)),
                    ))
                }
            })
            .collect::<Result<Vec<_>, _>>()?;
        let presheaf = Presheaf::new(a, sets, act)
            .map_err(|e| DslError::wrap(name.1, &format!("presheaf `{}`", name.0), e))?;
        self.ws.presheaves.insert(
            name.0,
            PresheafDecl {
                base: base_name.0,
                presheaf,
            },
        );
        Ok(())
    }
}

#[derive(Default)]
struct CatSource {
    objects: Vec<Named>,
    arrows: Vec<(Named, String, String)>,
    identities: Vec<(Named, String)>,
    /// `(pos, g, f, h)` for `g.f = h`.
    compose: Vec<(Pos, String, String, String)>,
    shape: Option<Named>,
}

impl CatSource {
    fn raw(&self) -> RawCategory {
        RawCategory {
            objects: self.objects.iter().map(|o| o.0.clone()).collect(),
            arrows: self
                .arrows
                .iter()
                .map(|(f, d, c)| (f.0.clone(), d.clone(), c.clone()))
                .collect(),
            identities: self
                .identities
                .iter()
                .map(|(x, f)| (x.0.clone(), f.clone()))
                .collect(),
            compose: self
                .compose
                .iter()
                .map(|(_, g, f, h)| (g.clone(), f.clone(), h.clone()))
                .collect(),
        }
    }

    fn build(mut self, block: Pos) -> Result<FinCat, DslError> {
        let shape = self.shape.clone();
        let violation = |detail: String| {
            let (s, pos) = shape.clone().expect("shape set");
            let report = ValidationReport {
                errors: vec![CategoryError::ShapeViolation { shape: s, detail }],
            };
            DslError::wrap(pos, "category", Error::InvalidCategory(report))
        };
        let empty = self.objects.is_empty() && self.arrows.is_empty();
        match shape.as_ref().map(|s| s.0.as_str()) {
            None => {}
            Some("poset") => self.fill_poset().map_err(violation)?,
            Some("discrete") => {
                if !self.arrows.is_empty() || !self.compose.is_empty() {
                    return Err(violation("a discrete category has no declared arrows".into()));
                }
            }
            Some("interval") if empty => return Ok(library::interval()),
            Some("parallel") if empty => return Ok(library::parallel("a", "b")),
            Some("interval") | Some("parallel") => {}
            Some(other) => {
                return Err(DslError::syntax(
                    shape.as_ref().unwrap().1,
                    format!("unknown shape `{other}` (expected poset, discrete, interval or parallel)"),
                ))
            }
        }
        let cat = self.raw().validate().map_err(|report| {
            let pos = self.locate(&report.errors[0]).unwrap_or(block);
            DslError::wrap(pos, "category", Error::InvalidCategory(report))
        })?;
        match shape.as_ref().map(|s| s.0.as_str()) {
            Some("poset") => {
                let antisymmetric = cat.objects().all(|x| {
                    cat.objects()
                        .all(|y| x == y || cat.hom(x, y).is_empty() || cat.hom(y, x).is_empty())
                });
                if !cat.is_thin() || !antisymmetric {
                    return Err(violation("not a partial order".into()));
                }
            }
            Some("interval") => {
                let ok = cat.num_objects() == 2
                    && cat.num_arrows() == 3
                    && cat.non_identity_arrows().all(|f| cat.dom(f) != cat.cod(f));
                if !ok {
                    return Err(violation("expected two objects and one arrow between them".into()));
                }
            }
            Some("parallel") => {
                let non_id: Vec<_> = cat.non_identity_arrows().collect();
                let ok = cat.num_objects() == 2
                    && non_id.len() == 2
                    && cat.dom(non_id[0]) == cat.dom(non_id[1])
                    && cat.cod(non_id[0]) == cat.cod(non_id[1])
                    && cat.dom(non_id[0]) != cat.cod(non_id[0]);
                if !ok {
                    return Err(violation("expected two objects and two parallel arrows".into()));
                }
            }
            _ => {}
        }
        Ok(cat)
    }

    /// Adds `g.f = h` for every composable pair without an entry, where `h`
    /// is the only arrow from dom f to cod g.
    fn fill_poset(&mut self) -> Result<(), String> {
        let ends: Vec<(&str, (&str, &str))> = self
            .arrows
            .iter()
            .map(|(f, d, c)| (f.0.as_str(), (d.as_str(), c.as_str())))
            .collect();
        let ids: HashMap<&str, &str> = self
            .identities
            .iter()
            .map(|(x, f)| (x.0.as_str(), f.as_str()))
            .collect();
        let is_id = |f: &str| ids.values().any(|&i| i == f);
        let given: HashSet<(&str, &str)> = self
            .compose
            .iter()
            .map(|(_, g, f, _)| (g.as_str(), f.as_str()))
            .collect();
        let mut extra = Vec::new();
        for (g, (gd, gc)) in &ends {
            for (f, (fd, fc)) in &ends {
                if fc != gd || is_id(g) || is_id(f) || given.contains(&(*g, *f)) {
                    continue;
                }
                let h = if fd == gc {
                    ids.get(fd).map_or(format!("id_{fd}"), |s| s.to_string())
                } else {
                    let cands: Vec<&&str> = ends
                        .iter()
                        .filter(|(_, (d, c))| d == fd && c == gc)
                        .map(|(h, _)| h)
                        .collect();
                    match cands.as_slice() {
                        [h] => h.to_string(),
                        [] => return Err(format!("no arrow {fd} -> {gc} for the composite {g}.{f}")),
                        _ => return Err(format!("several arrows {fd} -> {gc}")),
                    }
                };
                extra.push((g.to_string(), f.to_string(), h));
            }
        }
        extra.sort();
        let pos = self.shape.as_ref().map(|s| s.1).unwrap_or_default();
        self.compose
            .extend(extra.into_iter().map(|(g, f, h)| (pos, g, f, h)));
        Ok(())
    }

    fn arrow_pos(&self, name: &str, nth: usize) -> Option<Pos> {
        self.arrows
            .iter()
            .filter(|(f, _, _)| f.0 == name)
            .nth(nth)
            .map(|(f, _, _)| f.1)
    }

    fn compose_pos(&self, g: &str, f: &str, nth: usize) -> Option<Pos> {
        self.compose
            .iter()
            .filter(|(_, cg, cf, _)| cg == g && cf == f)
            .nth(nth)
            .map(|(p, ..)| *p)
    }

    fn locate(&self, err: &CategoryError) -> Option<Pos> {
        match err {
            CategoryError::DuplicateId { id } => self
                .objects
                .iter()
                .filter(|o| &o.0 == id)
                .nth(1)
                .map(|o| o.1)
                .or_else(|| self.arrow_pos(id, 1))
                .or_else(|| self.arrow_pos(id, 0)),
            CategoryError::DanglingId { id, .. } => self
                .arrows
                .iter()
                .find(|(_, d, c)| d == id || c == id)
                .map(|(f, ..)| f.1)
                .or_else(|| {
                    self.compose
                        .iter()
                        .find(|(_, g, f, h)| g == id || f == id || h == id)
                        .map(|(p, ..)| *p)
                })
                .or_else(|| {
                    self.identities
                        .iter()
                        .find(|(x, f)| &x.0 == id || f == id)
                        .map(|(x, _)| x.1)
                }),
            CategoryError::NotComposable { g, f } | CategoryError::BadComposite { g, f, .. } => {
                self.compose_pos(g, f, 0)
            }
            CategoryError::ConflictingComposite { g, f, .. } => self
                .compose_pos(g, f, 1)
                .or_else(|| self.compose_pos(g, f, 0)),
            CategoryError::BadIdentity { arrow, .. } => self
                .compose
                .iter()
                .find(|(_, g, f, _)| g == arrow || f == arrow)
                .map(|(p, ..)| *p)
                .or_else(|| {
                    self.identities
                        .iter()
                        .find(|(_, f)| f == arrow)
                        .map(|(x, _)| x.1)
                }),
            CategoryError::MissingComposite { f, .. } => self.arrow_pos(f, 0),
            CategoryError::NonAssociative { .. } => self.compose.first().map(|(p, ..)| *p),
            CategoryError::ShapeViolation { .. } => self.shape.as_ref().map(|s| s.1),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(src: &str) -> Result<Workspace, DslError> {
        let mut ws = Workspace::new();
        parse_into(&mut ws, src)?;
        Ok(ws)
    }

    #[test]
    fn point_category() {
        let ws = parse("category e { objects: x }").unwrap();
        let e = &ws.categories["e"];
        assert_eq!((e.num_objects(), e.num_arrows()), (1, 1));
    }

    #[test]
    fn poset_shape_fills_composites() {
        let ws = parse(
            "category c { objects: 0, 1, 2; arrows: a: 0 -> 1, b: 1 -> 2, ab: 0 -> 2; shape: poset }",
        )
        .unwrap();
        let c = &ws.categories["c"];
        let (a, b) = (c.arrow("a").unwrap(), c.arrow("b").unwrap());
        assert_eq!(c.arrow_name(c.compose(b, a)), "ab");
    }

    #[test]
    fn missing_composite_without_shape_is_positioned() {
        let err = parse("category c {\n objects: 0, 1, 2;\n arrows: a: 0 -> 1, b: 1 -> 2, ab: 0 -> 2\n}")
            .unwrap_err();
        assert_eq!(err.kind, super::super::DslErrorKind::ValidationFailed);
        assert_eq!(err.pos, Pos { line: 3, col: 10 });
    }

    #[test]
    fn default_shapes() {
        let ws = parse("category i { shape: interval } category p { shape: parallel }").unwrap();
        assert_eq!(ws.categories["i"].num_arrows(), 3);
        assert_eq!(ws.categories["p"].num_arrows(), 4);
    }

    #[test]
    fn shape_violations() {
        for src in [
            "category c { objects: x; arrows: f: x -> x; compose: f.f = f; shape: poset }",
            "category c { objects: x, y; arrows: f: x -> y; shape: discrete }",
            "category c { objects: x, y, z; shape: interval }",
        ] {
            let err = parse(src).unwrap_err();
            assert!(err.message.contains("shape"), "{err}");
        }
    }

    #[test]
    fn end_of_input_position() {
        let err = parse("category c {\n objects: x").unwrap_err();
        assert_eq!(err.pos, Pos { line: 2, col: 12 });
    }
}
