use std::collections::HashMap;

use super::category::ArrowData;

pub(crate) fn tuple<S: AsRef<str>>(parts: &[S]) -> String {
    let inner: Vec<&str> = parts.iter().map(|s| s.as_ref()).collect();
    format!("({})", inner.join(","))
}

/// Renames arrows whose tuple names collide to `name:dom->cod`.
pub(crate) fn uniquify(arrows: &mut [ArrowData], objects: &[String]) {
    let mut counts: HashMap<&str, usize> = HashMap::new();
    for a in arrows.iter() {
        *counts.entry(a.name.as_str()).or_default() += 1;
    }
    let clashing: Vec<bool> = arrows.iter().map(|a| counts[a.name.as_str()] > 1).collect();
    for (a, clash) in arrows.iter_mut().zip(clashing) {
        if clash {
            a.name = format!("{}:{}->{}", a.name, objects[a.dom.0], objects[a.cod.0]);
        }
    }
}
