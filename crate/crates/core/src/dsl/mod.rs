//! The `.catsq` text format: parsing, serialization, random workspaces and
//! the command layer shared by the CLI and the C interface.

mod error;
mod lexer;
mod parser;
pub mod run;
mod workspace;

use std::sync::Arc;

pub use error::{DslError, DslErrorKind, Pos};
pub use workspace::{FunctorDecl, NatDecl, PresheafDecl, SquareDecl, Workspace};

use crate::gen::{Budget, Generator};

/// Parses one `.catsq` text into a validated workspace.
pub fn parse_workspace(text: &str) -> Result<Workspace, DslError> {
    let mut ws = Workspace::new();
    parser::parse_into(&mut ws, text)?;
    Ok(ws)
}

/// Parses several files into one workspace; later files may refer to names
/// declared in earlier ones. Errors carry the file name.
pub fn parse_files<N: AsRef<str>, T: AsRef<str>>(files: &[(N, T)]) -> Result<Workspace, DslError> {
    let mut ws = Workspace::new();
    for (name, text) in files {
        parser::parse_into(&mut ws, text.as_ref()).map_err(|e| e.with_file(name.as_ref()))?;
    }
    Ok(ws)
}

/// A random square `D` with corners `A'`, `A`, `B'`, `B`, its functors
/// `v`, `u`, `uprime`, `w`, the 2-cell `alpha`, and a presheaf `F` on `A`.
pub fn generate_random(seed: u64, budget: Budget) -> Workspace {
    let mut g = Generator::new(seed, budget);
    let d = g.square();
    let f = g.presheaf(d.a(), 3);
    let mut ws = Workspace::new();
    let corners = [
        ("A'", d.a_prime()),
        ("A", d.a()),
        ("B'", d.b_prime()),
        ("B", d.b()),
    ];
    for (name, c) in corners {
        ws.categories.insert(name.into(), Arc::clone(c));
    }
    let legs = [
        ("v", d.v(), "A'", "A"),
        ("u", d.u(), "A", "B"),
        ("uprime", d.u_prime(), "A'", "B'"),
        ("w", d.w(), "B'", "B"),
    ];
    for (name, functor, src, dst) in legs {
        ws.functors.insert(
            name.into(),
            FunctorDecl {
                src: src.into(),
                dst: dst.into(),
                functor: functor.clone(),
            },
        );
    }
    let names = |s: &[&str]| s.iter().map(|x| x.to_string()).collect::<Vec<_>>();
    ws.nats.insert(
        "alpha".into(),
        NatDecl {
            src: names(&["u", "v"]),
            dst: names(&["w", "uprime"]),
            nat: d.alpha().clone(),
        },
    );
    ws.squares.insert(
        "D".into(),
        SquareDecl {
            v: names(&["v"]),
            u: names(&["u"]),
            u_prime: names(&["uprime"]),
            w: names(&["w"]),
            alpha: "alpha".into(),
            square: d,
        },
    );
    ws.presheaves.insert(
        "F".into(),
        PresheafDecl {
            base: "A".into(),
            presheaf: f,
        },
    );
    ws
}
