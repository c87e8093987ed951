use std::fmt::Write;
use std::sync::Arc;

use indexmap::IndexMap;

use super::lexer::is_bare;
use crate::fincat::{CatFunctor, FinCat, NatTransform};
use crate::presheaf::Presheaf;
use crate::squares::TwoSquare;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FunctorDecl {
    pub src: String,
    pub dst: String,
    pub functor: CatFunctor,
}

/// A 2-cell between composites; each composite is listed outermost first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NatDecl {
    pub src: Vec<String>,
    pub dst: Vec<String>,
    pub nat: NatTransform,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SquareDecl {
    pub v: Vec<String>,
    pub u: Vec<String>,
    pub u_prime: Vec<String>,
    pub w: Vec<String>,
    pub alpha: String,
    pub square: TwoSquare,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PresheafDecl {
    pub base: String,
    pub presheaf: Presheaf,
}

/// Named, validated declarations in declaration order.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Workspace {
    pub categories: IndexMap<String, Arc<FinCat>>,
    pub functors: IndexMap<String, FunctorDecl>,
    pub nats: IndexMap<String, NatDecl>,
    pub squares: IndexMap<String, SquareDecl>,
    pub presheaves: IndexMap<String, PresheafDecl>,
}

pub(crate) fn quote(name: &str) -> String {
    if is_bare(name) {
        return name.to_string();
    }
    let mut s = String::from("\"");
    for c in name.chars() {
        match c {
            '"' => s.push_str("\\\""),
            '\\' => s.push_str("\\\\"),
            '\n' => s.push_str("\\n"),
            _ => s.push(c),
        }
    }
    s.push('"');
    s
}

fn composite(names: &[String]) -> String {
    names.iter().map(|n| quote(n)).collect::<Vec<_>>().join(".")
}

fn list<I: IntoIterator<Item = String>>(items: I) -> String {
    items.into_iter().collect::<Vec<_>>().join(", ")
}

impl Workspace {
    pub fn new() -> Self {
        Self::default()
    }

    /// The text form; parsing it gives back an equal workspace.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (name, c) in &self.categories {
            write_category(&mut out, name, c);
        }
        for (name, d) in &self.functors {
            let f = &d.functor;
            let (s, t) = (f.src(), f.dst());
            let ob = list(
                s.objects()
                    .map(|x| format!("{} |-> {}", quote(s.obj_name(x)), quote(t.obj_name(f.ob(x))))),
            );
            let ar = list(s.non_identity_arrows().map(|a| {
                format!("{} |-> {}", quote(s.arrow_name(a)), quote(t.arrow_name(f.ar(a))))
            }));
            let _ = writeln!(
                out,
                "functor {}: {} -> {} {{ ob: {ob}; ar: {ar}; }}",
                quote(name),
                quote(&d.src),
                quote(&d.dst)
            );
        }
        for (name, d) in &self.nats {
            let (a, c) = (d.nat.base(), d.nat.target_cat());
            let comps = list(a.objects().map(|x| {
                format!("{} |-> {}", quote(a.obj_name(x)), quote(c.arrow_name(d.nat.component(x))))
            }));
            let _ = writeln!(
                out,
                "nat {}: {} => {} {{ {comps} }}",
                quote(name),
                composite(&d.src),
                composite(&d.dst)
            );
        }
        for (name, d) in &self.squares {
            let _ = writeln!(
                out,
                "square {} {{ v: {}, u: {}, uprime: {}, w: {}, alpha: {} }}",
                quote(name),
                composite(&d.v),
                composite(&d.u),
                composite(&d.u_prime),
                composite(&d.w),
                quote(&d.alpha)
            );
        }
        for (name, d) in &self.presheaves {
            let p = &d.presheaf;
            let a = p.base();
            let _ = write!(out, "presheaf {} on {} {{", quote(name), quote(&d.base));
            for x in a.objects() {
                let elems = list(p.set(x).iter().map(|e| quote(e)));
                let _ = write!(out, " {}: {{{elems}}};", quote(a.obj_name(x)));
            }
            for f in a.non_identity_arrows() {
                let y = a.cod(f);
                if p.size(y) == 0 {
                    continue;
                }
                let pairs = list((0..p.size(y)).map(|j| {
                    format!(
                        "{} <- {}",
                        quote(p.element(a.dom(f), p.act(f, j))),
                        quote(p.element(y, j))
                    )
                }));
                let _ = write!(out, " {}: {pairs};", quote(a.arrow_name(f)));
            }
            out.push_str(" }\n");
        }
        out
    }
}

fn write_category(out: &mut String, name: &str, c: &FinCat) {
    let objects = list(c.object_names().iter().map(|o| quote(o)));
    // Identities stay implicit when they are named `id_x` and come first.
    let implicit = c
        .objects()
        .all(|x| c.id(x).0 == x.0 && c.arrow_name(c.id(x)) == format!("id_{}", c.obj_name(x)));
    let shown: Vec<_> = if implicit {
        c.non_identity_arrows().collect()
    } else {
        c.arrows().collect()
    };
    let arrows = list(shown.iter().map(|&f| {
        format!(
            "{}: {} -> {}",
            quote(c.arrow_name(f)),
            quote(c.obj_name(c.dom(f))),
            quote(c.obj_name(c.cod(f)))
        )
    }));
    let mut compose = Vec::new();
    for g in c.non_identity_arrows() {
        for &f in c.arrows_into(c.dom(g)) {
            if !c.is_identity(f) {
                compose.push(format!(
                    "{}.{} = {}",
                    quote(c.arrow_name(g)),
                    quote(c.arrow_name(f)),
                    quote(c.arrow_name(c.compose(g, f)))
                ));
            }
        }
    }
    let _ = write!(out, "category {} {{ objects: {objects}; arrows: {arrows};", quote(name));
    if !implicit {
        let ids = list(
            c.objects()
                .map(|x| format!("{} = {}", quote(c.obj_name(x)), quote(c.arrow_name(c.id(x))))),
        );
        let _ = write!(out, " identities: {ids};");
    }
    if !compose.is_empty() {
        let _ = write!(out, " compose: {};", compose.join(", "));
    }
    out.push_str(" }\n");
}
