//! Small named categories used throughout fixtures and tests.

use super::category::FinCat;
use super::raw::RawCategory;

pub fn point() -> FinCat {
    FinCat::point()
}

/// The interval `{0 -t-> 1}`.
pub fn interval() -> FinCat {
    RawCategory::new()
        .objects(&["0", "1"])
        .arrow("t", "0", "1")
        .validate()
        .expect("interval")
}

/// Two parallel arrows `a, b : 0 -> 1`.
pub fn parallel(a: &str, b: &str) -> FinCat {
    RawCategory::new()
        .objects(&["0", "1"])
        .arrow(a, "0", "1")
        .arrow(b, "0", "1")
        .validate()
        .expect("parallel pair")
}

pub fn discrete<S: AsRef<str>>(names: &[S]) -> FinCat {
    FinCat::discrete(names)
}

/// Two objects `x`, `y` with inverse isomorphisms `i : x -> y`, `j : y -> x`.
pub fn iso_groupoid() -> FinCat {
    RawCategory::new()
        .objects(&["x", "y"])
        .arrow("i", "x", "y")
        .arrow("j", "y", "x")
        .comp("j", "i", "id_x")
        .comp("i", "j", "id_y")
        .validate()
        .expect("iso groupoid")
}

/// The cyclic group of order 2 as a one-object category.
pub fn z2() -> FinCat {
    RawCategory::new()
        .object("*")
        .arrow("s", "*", "*")
        .comp("s", "s", "id_*")
        .validate()
        .expect("Z/2")
}

/// The monoid `{1, e}` with `e.e = e`, as a one-object category.
pub fn idempotent() -> FinCat {
    RawCategory::new()
        .object("*")
        .arrow("e", "*", "*")
        .comp("e", "e", "e")
        .validate()
        .expect("idempotent monoid")
}

/// Linear order `0 < 1 < ... < n-1`; arrows `i<j` named `"i<j"`.
pub fn chain(n: usize) -> FinCat {
    let names: Vec<String> = (0..n).map(|i| i.to_string()).collect();
    let mut raw = RawCategory::new().objects(&names);
    for i in 0..n {
        for j in i + 1..n {
            raw = raw.arrow(&format!("{i}<{j}"), &names[i], &names[j]);
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                raw = raw.comp(
                    &format!("{j}<{k}"),
                    &format!("{i}<{j}"),
                    &format!("{i}<{k}"),
                );
            }
        }
    }
    raw.validate().expect("chain")
}

/// `a0, a1 -> b0, b1` with all four cross arrows and nothing else.
pub fn bipartite_2x2() -> FinCat {
    let mut raw = RawCategory::new().objects(&["a0", "a1", "b0", "b1"]);
    for i in 0..2 {
        for j in 0..2 {
            raw = raw.arrow(&format!("a{i}b{j}"), &format!("a{i}"), &format!("b{j}"));
        }
    }
    raw.validate().expect("2x2 bipartite")
}
