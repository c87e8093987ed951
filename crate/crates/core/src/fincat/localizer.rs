use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::category::FinCat;
use super::constructions::component_labels;
use super::functor::CatFunctor;

/// The decidable fundamental localizers.
///
/// `W0` is the class of functors inducing a bijection on connected
/// components; `Wgr` only asks that source and target be both empty or both
/// nonempty. Every `W0`-equivalence is a `Wgr`-equivalence.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Localizer {
    W0,
    Wgr,
}

impl Localizer {
    pub const ALL: [Localizer; 2] = [Localizer::W0, Localizer::Wgr];

    pub fn as_str(self) -> &'static str {
        match self {
            Localizer::W0 => "w0",
            Localizer::Wgr => "wgr",
        }
    }
}

impl fmt::Display for Localizer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Localizer {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "w0" => Ok(Localizer::W0),
            "wgr" => Ok(Localizer::Wgr),
            _ => Err(format!("unknown localizer `{s}` (expected w0 or wgr)")),
        }
    }
}

/// Whether `C -> e` is a `W`-equivalence.
pub fn is_aspherical_cat(c: &FinCat, l: Localizer) -> bool {
    match l {
        Localizer::W0 => component_labels(c).0 == 1,
        Localizer::Wgr => !c.is_empty(),
    }
}

/// The map `pi0(A) -> pi0(B)` induced by `u`, as component labels.
pub fn pi0_map(u: &CatFunctor) -> (usize, usize, Vec<usize>) {
    let (na, la) = component_labels(u.src());
    let (nb, lb) = component_labels(u.dst());
    let mut map = vec![usize::MAX; na];
    for x in u.src().objects() {
        map[la[x.0]] = lb[u.ob(x).0];
    }
    (na, nb, map)
}

pub fn is_w_equivalence(u: &CatFunctor, l: Localizer) -> bool {
    match l {
        Localizer::W0 => {
            let (na, nb, map) = pi0_map(u);
            if na != nb {
                return false;
            }
            let mut hit = vec![false; nb];
            map.iter().all(|&c| !std::mem::replace(&mut hit[c], true))
        }
        Localizer::Wgr => u.src().is_empty() == u.dst().is_empty(),
    }
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::fincat::{library, ObjId};

    #[test]
    fn aspherical_categories() {
        let e = FinCat::point();
        let pq = library::discrete(&["p", "q"]);
        for l in Localizer::ALL {
            assert!(is_aspherical_cat(&e, l));
            assert!(!is_aspherical_cat(&FinCat::empty(), l));
        }
        assert!(!is_aspherical_cat(&pq, Localizer::W0));
        assert!(is_aspherical_cat(&pq, Localizer::Wgr));
    }

    #[test]
    fn w_equivalences() {
        let pq = Arc::new(library::discrete(&["p", "q"]));
        let to_e = CatFunctor::to_point(pq.clone());
        assert!(!is_w_equivalence(&to_e, Localizer::W0));
        assert!(is_w_equivalence(&to_e, Localizer::Wgr));
        let two = Arc::new(library::interval());
        let zero = CatFunctor::from_point(two.clone(), ObjId(0));
        assert!(is_w_equivalence(&zero, Localizer::W0));
        for l in Localizer::ALL {
            assert!(is_w_equivalence(&CatFunctor::identity(pq.clone()), l));
        }
    }

    #[test]
    fn parse_and_display() {
        assert_eq!("W0".parse::<Localizer>().unwrap(), Localizer::W0);
        assert_eq!("wgr".parse::<Localizer>().unwrap(), Localizer::Wgr);
        assert!("winf".parse::<Localizer>().is_err());
        assert_eq!(Localizer::Wgr.to_string(), "wgr");
    }
}
