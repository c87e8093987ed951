use super::report::{CheckOptions, CheckReport, Witness};
use crate::error::Result;
use crate::fincat::{find_right_adjoint_with, is_invertible, ArrowId, FinCat};
use crate::squares::{opposite_square, TwoSquare};

/// The mate `c : v.r' => r.w` of a square whose verticals have right
/// adjoints, as components indexed by `B'`. `None` when an adjoint is missing.
pub fn bc_mate(d: &TwoSquare, opts: &CheckOptions) -> Option<Vec<ArrowId>> {
    let adj = find_right_adjoint_with(d.u(), opts.tie_break)?;
    let adj_p = find_right_adjoint_with(d.u_prime(), opts.tie_break)?;
    let (r, rp) = (&adj.right, &adj_p.right);
    let a: &FinCat = d.a();
    let comps = d
        .b_prime()
        .objects()
        .map(|bp| {
            let x = rp.ob(bp);
            let eta = adj.unit.component(d.v().ob(x));
            let r_alpha = r.ar(d.alpha().component(x));
            let r_w_eps = r.ar(d.w().ar(adj_p.counit.component(bp)));
            a.compose_path(&[r_w_eps, r_alpha, eta])
        })
        .collect();
    Some(comps)
}

/// Left Beck-Chevalley: the mate `v.r' => r.w` is invertible. Not applicable
/// when `u` or `u'` lacks a right adjoint.
pub fn is_bc_left(d: &TwoSquare, opts: &CheckOptions) -> Result<CheckReport> {
    let mut missing = Vec::new();
    if find_right_adjoint_with(d.u(), opts.tie_break).is_none() {
        missing.push("u has no right adjoint".to_string());
    }
    if find_right_adjoint_with(d.u_prime(), opts.tie_break).is_none() {
        missing.push("u' has no right adjoint".to_string());
    }
    let Some(comps) = (missing.is_empty()).then(|| bc_mate(d, opts)).flatten() else {
        return Ok(CheckReport::not_applicable(missing));
    };
    let a = d.a();
    let mut witnesses = Vec::new();
    for bp in d.b_prime().objects() {
        let c = comps[bp.0];
        if !is_invertible(a, c)? {
            witnesses.push(Witness {
                key: vec![bp.0],
                location: d.b_prime().obj_name(bp).to_string(),
                reason: format!("mate component {} is not invertible", a.arrow_name(c)),
            });
            if !opts.all_witnesses {
                break;
            }
        }
    }
    let mut report = CheckReport::from_witnesses(witnesses);
    report
        .notes
        .push(format!("tie-break: {:?}", opts.tie_break));
    Ok(report)
}

/// Right Beck-Chevalley: left Beck-Chevalley for the opposite square.
pub fn is_bc_right(d: &TwoSquare, opts: &CheckOptions) -> Result<CheckReport> {
    is_bc_left(&opposite_square(d), opts)
}
